#include "vekua/formal_power.hpp"

#include <memory>
#include <string>
#include <tuple>

namespace vekua {

FormalPowerEngine::FormalPowerEngine(GeneratingSequence seq, Point2 z0, int n_max,
                                     std::vector<Bicomplex> seeds, int m0, FormalPowerOptions opt)
    : seq_(std::move(seq)), z0_(z0), n_max_(n_max), seeds_(std::move(seeds)), m0_(m0), opt_(opt) {
  if (n_max_ < 0) throw std::invalid_argument("formal power exponent must be nonnegative");
  if (m0_ < 0) throw std::invalid_argument("generating-sequence index must be nonnegative");
  if (seeds_.empty()) throw std::invalid_argument("at least one coefficient is required");
  std::vector<Bicomplex> F;
  std::vector<Bicomplex> G;
  seq_.pairs_at(to_complex<2>(z0_), m0_, n_max_ + 1, F, G);
  lambda_.assign(seeds_.size(), std::vector<cplx>(F.size()));
  mu_.assign(seeds_.size(), std::vector<cplx>(F.size()));
  for (std::size_t j = 0; j < F.size(); ++j) {
    const cplx det = F[j].sc * G[j].vec - F[j].vec * G[j].sc;
    const double norm = (std::abs(F[j].sc) + std::abs(F[j].vec)) * (std::abs(G[j].sc) + std::abs(G[j].vec));
    if (!(std::abs(det) >= opt_.det_tol * norm) || norm == 0.0) {
      throw DegeneratePairError("generators are linearly dependent at the center (index m = " +
                                std::to_string(m0_ + static_cast<int>(j)) + ")");
    }
    for (std::size_t s = 0; s < seeds_.size(); ++s) {
      const Bicomplex& a = seeds_[s];
      lambda_[s][j] = (a.sc * G[j].vec - a.vec * G[j].sc) / det;
      mu_[s][j] = (F[j].sc * a.vec - F[j].vec * a.sc) / det;
    }
  }
}

template <class T>
std::vector<BicomplexT<T>> FormalPowerEngine::run(const std::array<T, 2>& z, int panels) const {
  using B = BicomplexT<T>;
  const GaussRule& rule = gauss_legendre(opt_.quad.nodes);
  const int n = rule.n;
  const int N = n_max_;
  const std::size_t M = static_cast<std::size_t>(N) + 1;
  const std::size_t nseeds = seeds_.size();
  const std::size_t Q = static_cast<std::size_t>(panels) * n + 1;
  const double h = 1.0 / panels;

  const T dx = z[0] - cplx(z0_[0]);
  const T dy = z[1] - cplx(z0_[1]);
  const B dz{dx, dy};

  std::vector<B> Fm(Q * M);
  std::vector<B> Gm(Q * M);
  std::vector<B> Fs(Q * M);
  std::vector<B> Gs(Q * M);
  {
    std::vector<B> F;
    std::vector<B> G;
    for (std::size_t q = 0; q < Q; ++q) {
      const double s = q + 1 == Q ? 1.0 : h * (static_cast<int>(q) / n + rule.nodes[q % n]);
      const std::array<T, 2> node{dx * s + cplx(z0_[0]), dy * s + cplx(z0_[1])};
      seq_.pairs_at(node, m0_, N + 1, F, G);
      for (std::size_t j = 0; j < M; ++j) {
        Fm[q * M + j] = F[j];
        Gm[q * M + j] = G[j];
        if (j + 1 < M) std::tie(Fs[q * M + j], Gs[q * M + j]) = adjoint_values(F[j], G[j]);
      }
    }
  }

  // Level 0: lambda F_m + mu G_m.
  std::vector<B> Z(nseeds * Q * M);
  for (std::size_t s = 0; s < nseeds; ++s) {
    for (std::size_t q = 0; q < Q; ++q) {
      for (std::size_t j = 0; j < M; ++j) {
        Z[(s * Q + q) * M + j] = Fm[q * M + j] * T(lambda_[s][j]) + Gm[q * M + j] * T(mu_[s][j]);
      }
    }
  }
  std::vector<B> out(nseeds * M);
  for (std::size_t s = 0; s < nseeds; ++s) out[s * M] = Z[(s * Q + Q - 1) * M];

  std::vector<B> next(Z.size());
  std::vector<T> gG(Q);
  std::vector<T> gF(Q);
  for (int level = 1; level <= N; ++level) {
    const std::size_t jcount = static_cast<std::size_t>(N - level) + 1;
    for (std::size_t s = 0; s < nseeds; ++s) {
      for (std::size_t j = 0; j < jcount; ++j) {
        for (std::size_t q = 0; q + 1 < Q; ++q) {
          const B wdz = Z[(s * Q + q) * M + j + 1] * dz;
          gG[q] = (Gs[q * M + j] * wdz).sc;
          gF[q] = (Fs[q * M + j] * wdz).sc;
        }
        T prefG(0.0);
        T prefF(0.0);
        for (int p = 0; p < panels; ++p) {
          const std::size_t base = static_cast<std::size_t>(p) * n;
          for (int i = 0; i < n; ++i) {
            T IG = prefG;
            T IF = prefF;
            const double* row = &rule.cumulative[static_cast<std::size_t>(i) * n];
            for (int k = 0; k < n; ++k) {
              IG += gG[base + k] * (h * row[k]);
              IF += gF[base + k] * (h * row[k]);
            }
            const std::size_t q = base + i;
            next[(s * Q + q) * M + j] =
                (Fm[q * M + j] * IG + Gm[q * M + j] * IF) * T(static_cast<double>(level));
          }
          for (int k = 0; k < n; ++k) {
            prefG += gG[base + k] * (h * rule.weights[k]);
            prefF += gF[base + k] * (h * rule.weights[k]);
          }
        }
        const std::size_t q = Q - 1;
        next[(s * Q + q) * M + j] =
            (Fm[q * M + j] * prefG + Gm[q * M + j] * prefF) * T(static_cast<double>(level));
      }
      out[s * M + static_cast<std::size_t>(level)] = next[(s * Q + Q - 1) * M];
    }
    std::swap(Z, next);
  }
  return out;
}

int FormalPowerEngine::choose_panels(const Point2& z, std::vector<Bicomplex>* result) const {
  const std::array<cplx, 2> zc = to_complex<2>(z);
  std::vector<Bicomplex> prev = run(zc, 1);
  const std::size_t M = static_cast<std::size_t>(n_max_) + 1;
  for (int panels = 2; panels <= opt_.quad.max_panels; panels *= 2) {
    std::vector<Bicomplex> cur = run(zc, panels);
    bool ok = true;
    for (std::size_t s = 0; s < seeds_.size() && ok; ++s) {
      double scale = 0.0;
      for (std::size_t j = 0; j < M; ++j) scale = std::max(scale, magnitude(cur[s * M + j]));
      for (std::size_t j = 0; j < M && ok; ++j) {
        const double diff = magnitude(cur[s * M + j] - prev[s * M + j]);
        ok = diff <= opt_.quad.rel_tol * magnitude(cur[s * M + j]) ||
             diff <= opt_.quad.abs_tol * (1.0 + scale);
      }
    }
    if (ok) {
      if (result) *result = std::move(cur);
      return panels;
    }
    prev = std::move(cur);
  }
  throw QuadratureError("formal power quadrature did not converge within " +
                        std::to_string(opt_.quad.max_panels) + " panels");
}

std::vector<Bicomplex> FormalPowerEngine::evaluate(const Point2& z, int* panels_used) const {
  std::vector<Bicomplex> out;
  const int panels = choose_panels(z, &out);
  if (panels_used) *panels_used = panels;
  return out;
}

std::vector<BicomplexT<Jet>> FormalPowerEngine::evaluate(const std::array<Jet, 2>& z) const {
  const Point2 at = real_point<Jet, 2>(z);
  const int panels = choose_panels(at, nullptr);
  return run(z, panels);
}

std::vector<BicomplexT<Jet>> FormalPowerEngine::evaluate_jet(const Point2& z, int order) const {
  return evaluate(coordinate_jets<2>(z, order));
}

namespace {

struct FormalPowerImpl final : BicomplexField::Impl {
  FormalPowerImpl(std::shared_ptr<const FormalPowerEngine> e, std::size_t i)
      : engine(std::move(e)), index(i) {}
  Bicomplex value(const Point2& p) const override { return engine->evaluate(p)[index]; }
  BicomplexT<Jet> jet(const Point2& p, int order) const override {
    return engine->evaluate_jet(p, order)[index];
  }
  std::shared_ptr<const FormalPowerEngine> engine;
  std::size_t index;
};

}  // namespace

BicomplexField FormalPowerEngine::field(int n, std::size_t seed_index) const {
  if (n < 0 || n > n_max_ || seed_index >= seeds_.size()) {
    throw std::out_of_range("formal power index out of range");
  }
  return BicomplexField(std::make_shared<FormalPowerImpl>(
      std::make_shared<const FormalPowerEngine>(*this),
      seed_index * (static_cast<std::size_t>(n_max_) + 1) + static_cast<std::size_t>(n)));
}

Bicomplex formal_power(const GeneratingSequence& seq, int m, int n, const Bicomplex& a,
                       const Point2& z0, const Point2& z, const FormalPowerOptions& opt) {
  const FormalPowerEngine engine(seq, z0, n, {a}, m, opt);
  return engine.evaluate(z).back();
}

BicomplexField formal_power_field(const GeneratingSequence& seq, int m, int n, const Bicomplex& a,
                                  const Point2& z0, const FormalPowerOptions& opt) {
  return FormalPowerEngine(seq, z0, n, {a}, m, opt).field(n, 0);
}

}  // namespace vekua

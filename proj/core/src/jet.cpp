#include "vekua/jet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "vekua/error.hpp"

namespace vekua {

namespace {

constexpr int kMaxDim = 3;

struct Triple {
  std::uint32_t a, b, out;
};

struct DerivEntry {
  std::uint32_t src, dst;
  double factor;
};

// Monomial bookkeeping for one dimension, up to kMaxJetOrder.
struct Basis {
  int dim = 0;
  std::vector<std::array<int, kMaxDim>> exps;
  std::vector<int> degree;
  std::array<std::size_t, kMaxJetOrder + 2> size_upto{};
  std::vector<Triple> products;  // sorted by degree of `out`
  std::array<std::size_t, kMaxJetOrder + 1> products_upto{};
  std::array<std::vector<DerivEntry>, kMaxDim> deriv;  // sorted by degree of `src`
  std::array<std::array<std::size_t, kMaxJetOrder + 1>, kMaxDim> deriv_upto{};

  std::size_t index_of(const std::array<int, kMaxDim>& e) const {
    // Linear search is fine: tables are built once and lookups are rare.
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] == e) return i;
    }
    throw std::out_of_range("monomial beyond kMaxJetOrder");
  }
};

void enumerate(int dim, int deg, int var, std::array<int, kMaxDim>& cur,
               std::vector<std::array<int, kMaxDim>>& out) {
  if (var == dim - 1) {
    cur[var] = deg;
    out.push_back(cur);
    cur[var] = 0;
    return;
  }
  for (int e = deg; e >= 0; --e) {
    cur[var] = e;
    enumerate(dim, deg - e, var + 1, cur, out);
  }
  cur[var] = 0;
}

Basis build_basis(int dim) {
  Basis b;
  b.dim = dim;
  if (dim == 0) {
    b.exps.push_back({0, 0, 0});
    b.degree.push_back(0);
    b.size_upto.fill(1);
    return b;
  }
  for (int d = 0; d <= kMaxJetOrder; ++d) {
    std::array<int, kMaxDim> cur{};
    enumerate(dim, d, 0, cur, b.exps);
    b.size_upto[d] = b.exps.size();
  }
  b.size_upto[kMaxJetOrder + 1] = b.exps.size();
  for (const auto& e : b.exps) b.degree.push_back(e[0] + e[1] + e[2]);

  const std::size_t n = b.exps.size();
  for (int d = 0; d <= kMaxJetOrder; ++d) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (b.degree[i] + b.degree[j] != d) continue;
        std::array<int, kMaxDim> e{};
        for (int v = 0; v < kMaxDim; ++v) e[v] = b.exps[i][v] + b.exps[j][v];
        b.products.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                              static_cast<std::uint32_t>(b.index_of(e))});
      }
    }
    b.products_upto[d] = b.products.size();
  }
  for (int v = 0; v < dim; ++v) {
    for (int d = 0; d <= kMaxJetOrder; ++d) {
      for (std::size_t i = 0; i < n; ++i) {
        if (b.degree[i] != d || b.exps[i][v] == 0) continue;
        auto e = b.exps[i];
        const double factor = e[v];
        e[v] -= 1;
        b.deriv[v].push_back({static_cast<std::uint32_t>(i),
                              static_cast<std::uint32_t>(b.index_of(e)), factor});
      }
      b.deriv_upto[v][d] = b.deriv[v].size();
    }
  }
  return b;
}

const Basis& basis(int dim) {
  static const std::array<Basis, kMaxDim + 1> all = {build_basis(0), build_basis(1),
                                                      build_basis(2), build_basis(3)};
  return all.at(static_cast<std::size_t>(dim));
}

void check_shape(int dim, int order) {
  if (dim < 0 || dim > kMaxDim) throw std::invalid_argument("jet dimension must be 0..3");
  if (order < 0 || order > kMaxJetOrder) {
    throw std::invalid_argument("jet order must be 0.." + std::to_string(kMaxJetOrder));
  }
}

double factorial(int k) {
  double f = 1.0;
  for (int j = 2; j <= k; ++j) f *= j;
  return f;
}

}  // namespace

std::size_t jet_size(int dim, int order) {
  check_shape(dim, order);
  return basis(dim).size_upto[order];
}

Jet::Jet(int dim, int order, cplx value) : dim_(dim), order_(order) {
  check_shape(dim, order);
  if (dim == 0) order_ = 0;
  c_.assign(basis(dim).size_upto[order_], cplx{});
  c_[0] = value;
}

Jet Jet::variable(int dim, int order, int var, cplx at) {
  if (var < 0 || var >= dim) throw std::invalid_argument("jet variable index out of range");
  Jet j(dim, order, at);
  if (order >= 1) j.c_[1 + var] = 1.0;
  return j;
}

cplx Jet::coeff(std::span<const int> exps) const {
  std::array<int, kMaxDim> e{};
  int deg = 0;
  for (std::size_t v = 0; v < exps.size(); ++v) {
    if (exps[v] == 0) continue;
    if (static_cast<int>(v) >= dim_) return {};
    e[v] = exps[v];
    deg += exps[v];
  }
  if (deg == 0) return c_[0];
  if (dim_ == 0) return {};
  if (deg > order_) throw std::out_of_range("coefficient beyond jet order");
  return c_[basis(dim_).index_of(e)];
}

cplx Jet::partial(int var) const {
  if (dim_ == 0) return {};
  if (order_ < 1) throw std::logic_error("first partial of an order-0 jet");
  return c_[1 + var];
}

cplx Jet::partial(int var_a, int var_b) const {
  if (dim_ == 0) return {};
  if (order_ < 2) throw std::logic_error("second partial of a jet of order < 2");
  std::array<int, kMaxDim> e{};
  e[var_a] += 1;
  e[var_b] += 1;
  const cplx c = c_[basis(dim_).index_of(e)];
  return var_a == var_b ? 2.0 * c : c;
}

Jet Jet::derivative(int var) const {
  if (dim_ == 0) return Jet(0.0);
  if (order_ < 1) throw std::logic_error("derivative of an order-0 jet");
  const Basis& b = basis(dim_);
  Jet out(dim_, order_ - 1);
  const auto& table = b.deriv[var];
  for (std::size_t t = 0; t < b.deriv_upto[var][order_]; ++t) {
    out.c_[table[t].dst] += table[t].factor * c_[table[t].src];
  }
  return out;
}

Jet Jet::truncated(int order) const {
  if (dim_ == 0 || order >= order_) return *this;
  Jet out = *this;
  out.order_ = order;
  out.c_.resize(basis(dim_).size_upto[order]);
  return out;
}

Jet Jet::scaled(double s) const {
  if (dim_ == 0) return *this;
  Jet out = *this;
  const Basis& b = basis(dim_);
  double pw = 1.0;
  int deg = 0;
  for (std::size_t i = 1; i < out.c_.size(); ++i) {
    while (deg < b.degree[i]) {
      pw *= s;
      ++deg;
    }
    out.c_[i] *= pw;
  }
  return out;
}

Jet& Jet::operator+=(const Jet& o) {
  if (o.dim_ == 0) {
    c_[0] += o.c_[0];
    return *this;
  }
  if (dim_ == 0) {
    const cplx v = c_[0];
    *this = o;
    c_[0] += v;
    return *this;
  }
  if (dim_ != o.dim_) throw std::invalid_argument("jet dimension mismatch");
  if (o.order_ < order_) *this = truncated(o.order_);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) { return *this += -o; }

Jet& Jet::operator*=(cplx s) {
  for (auto& c : c_) c *= s;
  return *this;
}

Jet& Jet::operator*=(const Jet& o) { return *this = *this * o; }
Jet& Jet::operator/=(const Jet& o) { return *this = *this / o; }

Jet operator*(const Jet& a, const Jet& b) {
  if (a.dim_ == 0) return b * a.c_[0];
  if (b.dim_ == 0) return a * b.c_[0];
  if (a.dim_ != b.dim_) throw std::invalid_argument("jet dimension mismatch");
  const int order = std::min(a.order_, b.order_);
  const Basis& bs = basis(a.dim_);
  Jet out(a.dim_, order);
  for (std::size_t t = 0; t < bs.products_upto[order]; ++t) {
    const Triple& p = bs.products[t];
    out.c_[p.out] += a.c_[p.a] * b.c_[p.b];
  }
  return out;
}

Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

Jet compose_series(const Jet& u, std::span<const cplx> taylor) {
  if (u.dim_ == 0 || u.order_ == 0) {
    Jet out = u;
    out.c_[0] = taylor[0];
    return out;
  }
  Jet delta = u;
  delta.c_[0] = 0.0;
  Jet out(u.dim_, u.order_, taylor[static_cast<std::size_t>(u.order_)]);
  for (int k = u.order_ - 1; k >= 0; --k) {
    out = out * delta;
    out.c_[0] += taylor[static_cast<std::size_t>(k)];
  }
  return out;
}

Jet from_gradient(cplx value, std::span<const Jet> gradient) {
  const int dim = static_cast<int>(gradient.size());
  int order = kMaxJetOrder;
  bool any_variable = false;
  for (const Jet& g : gradient) {
    if (g.dim_ == 0) continue;
    if (g.dim_ != dim) throw std::invalid_argument("gradient jets must match the dimension");
    order = std::min(order, g.order_ + 1);
    any_variable = true;
  }
  if (!any_variable) order = 1;
  Jet out(dim, order, value);
  const Basis& b = basis(dim);
  std::array<int, kMaxDim> lower{};
  for (std::size_t i = 1; i < out.c_.size(); ++i) {
    const auto& e = b.exps[i];
    int v = 0;
    while (e[v] == 0) ++v;
    lower = e;
    lower[v] -= 1;
    out.c_[i] = gradient[v].coeff(std::span<const int>(lower.data(), kMaxDim)) /
                static_cast<double>(e[v]);
  }
  return out;
}

Jet compose(const Jet& local, std::span<const Jet> inputs) {
  const int dim_in = static_cast<int>(inputs.size());
  int dim = 0;
  int order = kMaxJetOrder;
  for (const Jet& in : inputs) {
    if (in.dim_ == 0) continue;
    if (dim != 0 && in.dim_ != dim) throw std::invalid_argument("jet dimension mismatch");
    dim = in.dim_;
    order = std::min(order, in.order_);
  }
  if (dim == 0 || local.dim_ == 0) return Jet(local.c_[0]);
  if (local.dim_ != dim_in) throw std::invalid_argument("compose: local jet dimension mismatch");
  order = std::min(order, local.order_);

  bool identity = dim == dim_in;
  for (int v = 0; identity && v < dim_in; ++v) {
    const Jet& in = inputs[v];
    if (in.dim_ != dim) {
      identity = false;
      break;
    }
    for (std::size_t i = 1; i < in.c_.size() && i < basis(dim).size_upto[order]; ++i) {
      const cplx want = (i == static_cast<std::size_t>(1 + v)) ? cplx(1.0) : cplx();
      if (in.c_[i] != want) {
        identity = false;
        break;
      }
    }
  }
  if (identity) return local.truncated(order);

  std::vector<std::vector<Jet>> pw(static_cast<std::size_t>(dim_in));
  for (int v = 0; v < dim_in; ++v) {
    Jet u = inputs[v].dim_ == 0 ? Jet(dim, order) : inputs[v].truncated(order);
    u.c_[0] = 0.0;
    auto& row = pw[static_cast<std::size_t>(v)];
    row.reserve(static_cast<std::size_t>(order) + 1);
    row.emplace_back(dim, order, 1.0);
    for (int e = 1; e <= order; ++e) row.push_back(row.back() * u);
  }
  const Basis& lb = basis(dim_in);
  Jet out(dim, order, local.c_[0]);
  for (std::size_t i = 1; i < lb.size_upto[order]; ++i) {
    if (local.c_[i] == cplx{}) continue;
    const auto& e = lb.exps[i];
    Jet term = pw[0][static_cast<std::size_t>(e[0])];
    for (int v = 1; v < dim_in; ++v) term = term * pw[static_cast<std::size_t>(v)][static_cast<std::size_t>(e[v])];
    out += term * local.c_[i];
  }
  return out;
}

namespace {

template <class Fill>
Jet apply_series(const Jet& u, Fill fill) {
  const int k = u.is_constant() ? 0 : u.order();
  std::array<cplx, kMaxJetOrder + 1> t{};
  fill(u.value(), k, t);
  return compose_series(u, std::span<const cplx>(t.data(), static_cast<std::size_t>(k) + 1));
}

}  // namespace

Jet exp(const Jet& u) {
  return apply_series(u, [](cplx u0, int k, auto& t) {
    const cplx e = std::exp(u0);
    for (int j = 0; j <= k; ++j) t[j] = e / factorial(j);
  });
}

Jet log(const Jet& u) {
  return apply_series(u, [](cplx u0, int k, auto& t) {
    if (u0 == cplx{}) throw DomainError("log of zero");
    t[0] = std::log(u0);
    cplx p = 1.0;
    for (int j = 1; j <= k; ++j) {
      p *= u0;
      t[j] = ((j % 2 == 1) ? 1.0 : -1.0) / (static_cast<double>(j) * p);
    }
  });
}

Jet sqrt(const Jet& u) {
  return apply_series(u, [](cplx u0, int k, auto& t) {
    if (u0 == cplx{}) {
      if (k > 0) throw DomainError("sqrt branch point at zero");
      t[0] = 0.0;
      return;
    }
    const cplx s = std::sqrt(u0);
    double binom = 1.0;
    cplx p = 1.0;
    t[0] = s;
    for (int j = 1; j <= k; ++j) {
      binom *= (0.5 - (j - 1)) / j;
      p *= u0;
      t[j] = binom * s / p;
    }
  });
}

Jet sin(const Jet& u) {
  return apply_series(u, [](cplx u0, int k, auto& t) {
    const cplx cyc[4] = {std::sin(u0), std::cos(u0), -std::sin(u0), -std::cos(u0)};
    for (int j = 0; j <= k; ++j) t[j] = cyc[j % 4] / factorial(j);
  });
}

Jet cos(const Jet& u) {
  return apply_series(u, [](cplx u0, int k, auto& t) {
    const cplx cyc[4] = {std::cos(u0), -std::sin(u0), -std::cos(u0), std::sin(u0)};
    for (int j = 0; j <= k; ++j) t[j] = cyc[j % 4] / factorial(j);
  });
}

Jet sinh(const Jet& u) {
  return apply_series(u, [](cplx u0, int k, auto& t) {
    const cplx cyc[2] = {std::sinh(u0), std::cosh(u0)};
    for (int j = 0; j <= k; ++j) t[j] = cyc[j % 2] / factorial(j);
  });
}

Jet cosh(const Jet& u) {
  return apply_series(u, [](cplx u0, int k, auto& t) {
    const cplx cyc[2] = {std::cosh(u0), std::sinh(u0)};
    for (int j = 0; j <= k; ++j) t[j] = cyc[j % 2] / factorial(j);
  });
}

Jet reciprocal(const Jet& u) {
  return apply_series(u, [](cplx u0, int k, auto& t) {
    if (u0 == cplx{}) throw DomainError("division by zero");
    cplx p = 1.0 / u0;
    for (int j = 0; j <= k; ++j) {
      t[j] = (j % 2 == 0) ? p : -p;
      p /= u0;
    }
  });
}

Jet ipow(const Jet& u, int n) {
  return apply_series(u, [n](cplx u0, int k, auto& t) {
    if (n < 0 && u0 == cplx{}) throw DomainError("negative power of zero");
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
      if (j > 0) binom *= static_cast<double>(n - (j - 1)) / j;
      t[j] = (n >= 0 && j > n) ? cplx{} : binom * ipow(u0, n - j);
    }
  });
}

Jet atan2(const Jet& y, const Jet& x) {
  const cplx y0 = y.value();
  const cplx x0 = x.value();
  const cplx theta0 = atan2(y0, x0);
  if (y.is_constant() && x.is_constant()) return Jet(theta0);
  if (x0 * x0 + y0 * y0 == cplx{}) throw DomainError("atan2 at the origin");
  // theta - theta0 = atan(u) with u(0) = 0.
  Jet u = (y * x0 - x * y0) / (x * x0 + y * y0);
  u.coeff(0) = 0.0;
  std::array<cplx, kMaxJetOrder + 1> t{};
  for (int j = 1; j <= kMaxJetOrder; j += 2) t[j] = ((j / 2) % 2 == 0 ? 1.0 : -1.0) / j;
  Jet out = compose_series(u, std::span<const cplx>(t.data(), static_cast<std::size_t>(u.order()) + 1));
  out.coeff(0) = theta0;
  return out;
}

cplx reciprocal(cplx u) {
  if (u == cplx{}) throw DomainError("division by zero");
  return 1.0 / u;
}

cplx ipow(cplx u, int n) {
  if (n < 0) return reciprocal(ipow(u, -n));
  cplx result = 1.0;
  cplx base = u;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

cplx atan2(cplx y, cplx x) {
  if (y.imag() == 0.0 && x.imag() == 0.0) return std::atan2(y.real(), x.real());
  const cplx r2 = x * x + y * y;
  if (r2 == cplx{}) throw DomainError("atan2 at the origin");
  const cplx i(0.0, 1.0);
  return -i * std::log((x + i * y) / std::sqrt(r2));
}

cplx checked_log(cplx u) {
  if (u == cplx{}) throw DomainError("log of zero");
  return std::log(u);
}

cplx checked_div(cplx a, cplx b) {
  if (b == cplx{}) throw DomainError("division by zero");
  return a / b;
}

Jet checked_log(const Jet& u) { return log(u); }
Jet checked_div(const Jet& a, const Jet& b) { return a / b; }

Jet2 Jet2::from(const Jet& j) {
  if (j.is_constant()) return {j.value(), {}, {}, {}, {}, {}};
  if (j.dim() != 2 || j.order() < 2) throw std::invalid_argument("Jet2 needs a 2D jet of order >= 2");
  return {j.value(), j.partial(0), j.partial(1), j.partial(0, 0), j.partial(0, 1), j.partial(1, 1)};
}

Jet3 Jet3::from(const Jet& j) {
  if (j.is_constant()) return {j.value(), {}, {}};
  if (j.dim() != 3 || j.order() < 2) throw std::invalid_argument("Jet3 needs a 3D jet of order >= 2");
  return {j.value(),
          {j.partial(0), j.partial(1), j.partial(2)},
          {j.partial(0, 0), j.partial(0, 1), j.partial(0, 2), j.partial(1, 1), j.partial(1, 2),
           j.partial(2, 2)}};
}

}  // namespace vekua

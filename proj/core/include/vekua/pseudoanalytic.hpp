#pragma once

// Generating pairs, characteristic coefficients, (F,G)-derivative and
// (F,G)-integral, Condition-S generating sequences and Taylor coefficients.

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "vekua/calculus.hpp"
#include "vekua/expr.hpp"
#include "vekua/field.hpp"

namespace vekua {

struct GeneratingPair {
  BicomplexField F;
  BicomplexField G;
};

/// (f, k/f), the pair of the main Vekua equation W_zbar = (f_zbar / f) conj(W).
GeneratingPair main_pair(const ScalarField2& f);

template <class T>
struct CharacteristicT {
  BicomplexT<T> a, b, A, B;
};
using CharacteristicCoefficients = CharacteristicT<cplx>;

inline constexpr double kDegeneracyTol = 1e-12;

/// Throws DegeneratePairError when Vec(conj(F) G) is negligible relative to |F||G|.
void check_nondegenerate(const Bicomplex& F, const Bicomplex& G, double tol = kDegeneracyTol);

/// F conj(G) - conj(F) G, always a multiple of k.
template <class T>
BicomplexT<T> pair_denominator(const BicomplexT<T>& F, const BicomplexT<T>& G) {
  return F * conj(G) - conj(F) * G;
}

/// Characteristic coefficients from jets of F and G (result order drops by one).
CharacteristicT<Jet> characteristic_jets(const BicomplexT<Jet>& F, const BicomplexT<Jet>& G);

CharacteristicCoefficients characteristic_coefficients(const GeneratingPair& pair, const Point2& p);

/// (F*, G*) = (-2 conj(F) / den, 2 conj(G) / den).
template <class T>
std::pair<BicomplexT<T>, BicomplexT<T>> adjoint_values(const BicomplexT<T>& F,
                                                       const BicomplexT<T>& G) {
  check_nondegenerate(value_of(F), value_of(G));
  const BicomplexT<T> inv = inverse(pair_denominator(F, G));
  return {conj(F) * inv * BicomplexT<T>(T(-2.0)), conj(G) * inv * BicomplexT<T>(T(2.0))};
}

GeneratingPair adjoint_pair(const GeneratingPair& pair);

/// W_z - A W - B conj(W) on jets.
BicomplexT<Jet> fg_derivative_jet(const BicomplexT<Jet>& W, const BicomplexT<Jet>& F,
                                  const BicomplexT<Jet>& G);

Bicomplex fg_derivative(const BicomplexField& W, const GeneratingPair& pair, const Point2& p);
BicomplexField fg_derivative(const BicomplexField& W, const GeneratingPair& pair);

/// F(z1) Sc int G* W dz + G(z1) Sc int F* W dz along the segment z0 -> z1.
Bicomplex fg_integral(const BicomplexField& W, const GeneratingPair& pair, const Segment& seg);

// ---------------------------------------------------------------------------
// Condition S

/// rho(x, y) with Laplacian(rho) = s(rho) |grad rho|^2. `s`, `S` (an
/// antiderivative of s) and `f_of_rho` are expressions in the variable rho.
/// When f_of_rho is empty, `f` (an expression in x, y) is used directly.
struct ConditionSData {
  Expr rho;
  Expr s;
  Expr S;
  Expr f_of_rho;
  Expr f;
  Bindings params;
};

enum class ConditionSPreset { CartesianX, CartesianY, Polar, Radial, Parabolic };

/// The (rho, s, S) triple of a preset; f_of_rho is left for the caller.
ConditionSData condition_s_preset(ConditionSPreset preset);
std::optional<ConditionSPreset> condition_s_preset_from_name(std::string_view name);

struct ConditionSOptions {
  double residual_tol = 1e-8;  // relative to 1 + |Laplacian rho| + |s| |grad rho|^2
  double phi_floor = 1e-12;    // bounds on |phi conj(phi)|
  double phi_bound = 1e12;
};

/// A generating sequence (F_m, G_m) = (phi^m F, phi^m G).
class GeneratingSequence {
 public:
  GeneratingSequence(GeneratingPair base, BicomplexField phi, std::optional<ScalarField2> f = {})
      : base_(std::move(base)), phi_(std::move(phi)), f_(std::move(f)) {}

  const GeneratingPair& base() const { return base_; }
  const BicomplexField& phi() const { return phi_; }
  /// The scalar f of the main pair (f, k/f), when the sequence was built from one.
  const std::optional<ScalarField2>& f() const { return f_; }

  GeneratingPair pair(int m) const;

  /// F_m, G_m for m = m0 .. m0 + count - 1 at one point.
  template <class T>
  void pairs_at(const std::array<T, 2>& p, int m0, int count, std::vector<BicomplexT<T>>& F,
                std::vector<BicomplexT<T>>& G) const {
    const BicomplexT<T> ph = phi_.eval(p);
    BicomplexT<T> pw{T(1.0), T(0.0)};
    for (int j = 0; j < m0; ++j) pw = pw * ph;
    const BicomplexT<T> F0 = base_.F.eval(p);
    const BicomplexT<T> G0 = base_.G.eval(p);
    F.resize(static_cast<std::size_t>(count));
    G.resize(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
      F[static_cast<std::size_t>(j)] = pw * F0;
      G[static_cast<std::size_t>(j)] = pw * G0;
      pw = pw * ph;
    }
  }

 private:
  GeneratingPair base_;
  BicomplexField phi_;
  std::optional<ScalarField2> f_;
};

/// phi = k e^{-S(rho)} rho_z as a field.
BicomplexField condition_s_phi(const ConditionSData& data);

/// Validates Condition S, S' = s and the bounds on phi at every grid point,
/// then returns the sequence embedding (f, k/f).
GeneratingSequence build_sequence_condition_s(const ConditionSData& data,
                                              std::span<const Point2> grid,
                                              const ConditionSOptions& opt = {});

// ---------------------------------------------------------------------------
// Residuals of the main Vekua equation

/// W_zbar - (f_zbar / f) conj(W).
Bicomplex vekua_residual(const BicomplexField& W, const ScalarField2& f, const Point2& p);

/// With phi = Sc(W) / f, psi = Vec(W) f and w = phi + psi k:
/// w_zbar - ((1 - f^2) / (1 + f^2)) conj(w)_zbar.
Bicomplex second_kind_residual(const BicomplexField& W, const ScalarField2& f, const Point2& p);

struct TaylorOptions {
  double residual_tol = 1e-6;
  double probe_radius = 0.05;  // extra residual checks at z0 +- radius
};

/// a_n = W^[n](z0) / n! for n = 0..N with W^[m+1] the (F_m, G_m)-derivative
/// of W^[m]. Throws NotPseudoanalyticError when W fails the Vekua equation of
/// (F_0, G_0) near z0.
std::vector<Bicomplex> taylor_coefficients(const BicomplexField& W, const GeneratingSequence& seq,
                                           const Point2& z0, int N,
                                           const TaylorOptions& opt = {});

}  // namespace vekua

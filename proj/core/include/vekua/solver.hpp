#pragma once

// Complete systems of exact solutions of (div p grad + q) u = 0 built from
// formal powers, and boundary-collocation least squares for the Dirichlet
// problem on star-shaped domains.

#include <memory>
#include <vector>

#include "vekua/formal_power.hpp"
#include "vekua/transforms.hpp"

namespace vekua {

/// Boundary theta -> center + offset(theta), theta in [0, 2 pi).
struct Domain {
  enum class Kind { Disk, Ellipse, Radial };
  Kind kind = Kind::Disk;
  Point2 center{0.0, 0.0};
  double radius = 1.0;  // Disk
  double a = 1.0;       // Ellipse semi-axes
  double b = 1.0;
  Expr r_of_t;          // Radial: r(t), t the polar angle
  Bindings params;

  static Domain disk(double radius, Point2 center = {0.0, 0.0});
  static Domain ellipse(double a, double b, Point2 center = {0.0, 0.0});
  static Domain radial(Expr r_of_t, Bindings params = {}, Point2 center = {0.0, 0.0});

  Point2 offset(double theta) const;
  Point2 boundary(double theta) const;
};

/// M equally spaced boundary points, theta_j = 2 pi j / M.
std::vector<Point2> boundary_points(const Domain& d, int M);

/// center + (i / radii) offset(theta_j), i = 1..radii, j = 0..angles-1.
std::vector<Point2> interior_grid(const Domain& d, int radii = 40, int angles = 64);

/// Throws Error unless z0 sees the sampled boundary at strictly increasing
/// angles that wind once around it.
void check_star_shaped(const Domain& d, const Point2& z0, int samples = 256);

struct DirichletProblem {
  DirichletProblem(EllipticCoefficients c, GeneratingSequence s)
      : coeffs(std::move(c)), sequence(std::move(s)) {}

  EllipticCoefficients coeffs;
  GeneratingSequence sequence;
  Point2 z0{0.0, 0.0};
  Domain domain;
  ScalarField2 boundary_data;
  int N = 21;
  int M = 0;  // 0 selects 4 N
  unsigned threads = 0;
  FormalPowerOptions powers{};
  double rank_threshold = 1e14;
};

struct BasisTerm {
  int n;
  bool seed_k;  // seed k instead of 1
};

/// The ordered complete system p^{-1/2} Sc Z^(n)(1), p^{-1/2} Sc Z^(n)(k)
/// for n = 0, 1, ... with members vanishing on the boundary samples dropped.
class Basis {
 public:
  Basis(const DirichletProblem& problem, int N);

  int size() const { return static_cast<int>(terms_.size()); }
  const std::vector<BasisTerm>& terms() const { return terms_; }
  const std::vector<std::string>& notes() const { return notes_; }

  std::vector<cplx> values(const Point2& p) const;
  /// The m-th basis function as a field (jets through the formal powers).
  ScalarField2 field(int m) const;

 private:
  std::vector<cplx> all_values(const Point2& p) const;

  std::shared_ptr<const FormalPowerEngine> engine_;
  ScalarField2 inv_sqrt_p_;
  std::vector<BasisTerm> terms_;
  std::vector<std::string> notes_;
};

std::shared_ptr<const Basis> build_basis(const DirichletProblem& problem, int N);

struct SolutionExpansion {
  std::shared_ptr<const Basis> basis;
  std::vector<cplx> coefficients;  // real unless the basis or the data is complex
  double condition_number = 0.0;   // after column equilibration
  bool rank_deficient = false;
  double boundary_max_residual = 0.0;
  double boundary_rms_residual = 0.0;
  std::vector<std::string> warnings;
};

SolutionExpansion solve_collocation(const DirichletProblem& problem);

cplx evaluate_expansion(const SolutionExpansion& s, const Point2& p);

struct ErrorRow {
  Point2 p;
  cplx approx;
  cplx exact;
  double error;
};

struct ErrorReport {
  double max_error = 0.0;
  double rms_error = 0.0;
  std::vector<ErrorRow> rows;
};

ErrorReport error_report(const SolutionExpansion& s, const ScalarField2& exact,
                         std::span<const Point2> grid, unsigned threads = 0);

}  // namespace vekua

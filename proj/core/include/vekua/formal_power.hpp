#pragma once

// Formal powers Z^(n)_m(a, z0; z) of a generating sequence.
//
// For a target z all exponents 0..n_max are built together on one straight
// ray z0 -> z: the ray carries composite Gauss-Legendre panels, every level
// n is tabulated at the shared nodes from level n - 1 with the cumulative
// integration matrix, and the value at the end of the ray is read off. With
// Jet coordinates the same computation yields exact derivatives of the
// discretised formal power with respect to the target.

#include <vector>

#include "vekua/pseudoanalytic.hpp"
#include "vekua/quadrature.hpp"

namespace vekua {

struct FormalPowerOptions {
  QuadratureOptions quad{};
  double det_tol = 1e-12;  // singularity threshold of the lambda/mu system at z0
};

class FormalPowerEngine {
 public:
  /// Powers Z^(n)_{m0}(a, z0; .) for n = 0..n_max and every a in `seeds`.
  FormalPowerEngine(GeneratingSequence seq, Point2 z0, int n_max, std::vector<Bicomplex> seeds,
                    int m0 = 0, FormalPowerOptions opt = {});

  int n_max() const { return n_max_; }
  std::size_t seed_count() const { return seeds_.size(); }
  const Point2& center() const { return z0_; }
  const GeneratingSequence& sequence() const { return seq_; }

  /// out[s * (n_max + 1) + n] = Z^(n)_{m0}(seeds[s], z0; z).
  std::vector<Bicomplex> evaluate(const Point2& z, int* panels_used = nullptr) const;

  /// Local jets of the same table at z.
  std::vector<BicomplexT<Jet>> evaluate_jet(const Point2& z, int order) const;

  /// The table with coordinate jets as input (chain rule through the ray).
  std::vector<BicomplexT<Jet>> evaluate(const std::array<Jet, 2>& z) const;

  /// One entry of the table as a lazily evaluated field.
  BicomplexField field(int n, std::size_t seed_index) const;

 private:
  template <class T>
  std::vector<BicomplexT<T>> run(const std::array<T, 2>& z, int panels) const;
  int choose_panels(const Point2& z, std::vector<Bicomplex>* result) const;

  GeneratingSequence seq_;
  Point2 z0_;
  int n_max_;
  std::vector<Bicomplex> seeds_;
  int m0_;
  FormalPowerOptions opt_;
  // lambda_[s][m - m0], mu_[s][m - m0] for m = m0..m0 + n_max.
  std::vector<std::vector<cplx>> lambda_, mu_;
};

/// Z^(n)_m(a, z0; z) by a single-purpose engine.
Bicomplex formal_power(const GeneratingSequence& seq, int m, int n, const Bicomplex& a,
                       const Point2& z0, const Point2& z, const FormalPowerOptions& opt = {});

BicomplexField formal_power_field(const GeneratingSequence& seq, int m, int n, const Bicomplex& a,
                                  const Point2& z0, const FormalPowerOptions& opt = {});

}  // namespace vekua

#pragma once

#include <cstdint>
#include <vector>

#include "cmsba/numeric/quadrature.hpp"
#include "cmsba/report.hpp"
#include "cmsba/symcore/multipoly.hpp"

namespace cmsba {

// Central second differences D(h) and, with Richardson, (4 D(h/2) - D(h)) / 3.
struct FDConfig {
  double h = 5e-4;
  bool richardson = true;
};

// Deformed CMS operator L^{a,b}_m applied to f at `point`, acting on the
// coordinates point[offset .. offset+a) (mass 1) and the next b (mass 1/m).
// trig selects the sinh^-2 potentials.
Complex apply_deformed_fd(const PointFn& f, std::span<const Complex> point, std::size_t offset, int a, int b, double m,
                          bool trig, const FDConfig& fd);

// Kernel of the intertwining identity L^{k,l} K = L^{p,q} K + C_0 K, in the
// coordinates x_1..x_k, y_1..y_l, z_1..z_p, w_1..w_q.
struct KernelParams {
  BACase kind = BACase::rational;  // rational or trig
  int k = 1, l = 0, p = 1, q = 0;
  double m = 1;
  Complex mu = 0.7;

  // Throws MalformedExpression for m = 0, negative block sizes, or a deformed case.
  void validate() const;
  int dimension() const { return k + l + p + q; }
};

// Fractional powers use the principal branch factor by factor; throws
// BranchCutCrossing when a factor with non-integer exponent sits within
// 1e-2 of the negative real axis.
PointFn kernel_K(const KernelParams& kp);

// The direct closed form (cubic term with 1/4 m^2) or as it follows from the
// mass-1, 1/m, -1, -1/m Sen eigenvalue (-m^2/3 times the same bracket). They
// agree when the bracket vanishes and in the rational case.
enum class C0Formula { direct, sen };
Complex kernel_c0(const KernelParams& kp, C0Formula f);

// Max over `trials` seeded random points of |L^{k,l}K - L^{p,q}K - C_0 K| / |K|.
// Points are complex with unit-box parts and pairwise distances >= 0.1.
VerifyReport identity_check(const KernelParams& kp, int trials, std::uint64_t seed, C0Formula f = C0Formula::sen,
                            const FDConfig& fd = {}, double tolerance = 1e-6);

// Sen's eigenfunction Φ_0 = prod sinh^{β m_i m_j}(x_i - x_j) of the
// multi-mass operator; compares H Φ_0 / Φ_0 with E_0 at real points.
double sen_eigenvalue(const std::vector<Rational>& masses, const Rational& beta);
VerifyReport sen_check(const std::vector<Rational>& masses, const Rational& beta, int trials, std::uint64_t seed,
                       const FDConfig& fd = {}, double tolerance = 1e-6);

// |L f - E f| / |f| for a numeric BA evaluator at given points. Trig
// evaluators take u = e^{2x}; the operator acts in x.
VerifyReport numeric_eigen_check(const PointFn& f, BACase c, int n, double m, Complex eigenvalue,
                                 const std::vector<std::vector<Complex>>& points, const FDConfig& fd = {},
                                 double tolerance = 1e-6);

}  // namespace cmsba

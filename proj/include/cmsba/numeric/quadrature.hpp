#pragma once

#include <string>
#include <vector>

#include "cmsba/ba/ba_result.hpp"
#include "cmsba/numeric/eval.hpp"

namespace cmsba {

struct QuadConfig {
  int nodes = 64;           // per dimension, first level
  double tolerance = 1e-8;  // relative agreement between successive levels
  int max_levels = 3;       // node count doubles per level
  double circle_eps = 1e-2;
  double clearance = 0.05;  // required distance to singular points
  double decay = 0.1;       // required exponential decay rate on rays

  // Throws MalformedExpression for nodes < 4 or tolerance outside (0, 1).
  void validate() const;
};

// ∫ g ≈ sum_j w_j g(x_j). The weight function of the underlying Gauss rule
// is already divided out of w, so g is the full integrand.
struct Rule {
  std::vector<double> x, w;
  double rate = 0;  // exponential decay the rule is built for (rays), else 0
};
// For g(s) ~ exp(-rate s) on [0, ∞).
Rule gauss_laguerre(int n, double rate);
// For g(τ) ~ τ^beta near 0 on [0, 1]; beta > -1.
Rule gauss_jacobi_unit(int n, double beta);
Rule gauss_legendre(int n, double a, double b);

// ∫_0^∞ s^m e^{-c s} ds by Gauss–Laguerre (exact value m!/c^(m+1)).
double gamma_integral(int m, double c, int nodes);

enum class ContourKind { ray, segment, circle_product };
std::string contour_name(ContourKind k);

// Per-variable geometry: ray z_i = base_i + τ, segment w_i = τ base_i,
// circle |z_i - base_i| = radius_i.
struct ContourSpec {
  ContourKind kind = ContourKind::ray;
  std::vector<Complex> base;
  std::vector<double> radius;
  std::vector<double> rate;  // decay rate (rays) or endpoint exponent (segments)
  double clearance = 0;      // measured distance to the nearest singular point
  double decay = 0;          // measured minimal decay rate
  std::string detail;

  // Throws CertificateViolation when the measured values miss the declared bounds.
  void certify(double min_clearance, double min_decay) const;
};

// Evaluates a BA function at the given positions; spectral values are bound in.
using PointFn = std::function<Complex(std::span<const Complex>)>;

// Numeric Selberg-type representations. `spectral` lists λ_1..λ_{k+1}
// (rational), ν_1..ν_{k+1} (trig), or λ_1..λ_n, μ (deformed cases, with k = n).
struct SelbergSetup {
  BACase kind = BACase::rational;
  int m = 1;
  int k = 1;
  std::vector<Complex> spectral;
  QuadConfig quad;
  // Added to each w_i exponent in the deformed trig integrand: -1 is the
  // dw/w measure, 0 the literal exponents.
  int trig_w_shift = -1;
};

// The contour the representation uses at a given point, with measured certificates.
ContourSpec selberg_contour(const SelbergSetup& s, std::span<const Complex> point);

// prev evaluates the k-point function Ψ^(k) (or Φ^(k)); the result evaluates
// Ψ^(k+1) (or the deformed n+1-point function at (x, y)).
PointFn selberg_raise_rank_numeric(PointFn prev, const SelbergSetup& s);

// Symbolic k-point function as a PointFn.
PointFn symbolic_point_fn(const BAResult& r, std::span<const Complex> spectral);

// Two explicit examples: the single ray integral for Ψ^(2)_m and the triple
// integral for Ψ^(3)_m with its constant.
Complex psi2_integral(int m, std::span<const Complex> x, std::span<const Complex> lambda, const QuadConfig& q);
Complex psi3_integral(int m, std::span<const Complex> x, std::span<const Complex> lambda, const QuadConfig& q);

// Ψ^(n) (or Φ^(n)) from the residue formula with every residue taken
// numerically on nested circles of radius q.circle_eps (rational or trig).
// Throws CertificateViolation when two centers are closer than 3 eps.
Complex residue_raise_rank_numeric(BACase c, int n, int m, std::span<const Complex> point,
                                   std::span<const Complex> spectral, const QuadConfig& q);

}  // namespace cmsba

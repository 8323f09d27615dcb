#include "cmsba/numeric/identity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cmsba/error.hpp"

namespace cmsba {

namespace {

Complex pair_potential(Complex a, Complex b, bool trig) {
  Complex s = trig ? std::sinh(a - b) : a - b;
  return 1.0 / (s * s);
}

// Second derivative of f along coordinate i.
Complex second_difference(const PointFn& f, std::vector<Complex>& p, std::size_t i, Complex f0, double h) {
  Complex c = p[i];
  p[i] = c + h;
  Complex fp = f(p);
  p[i] = c - h;
  Complex fm = f(p);
  p[i] = c;
  return (fp - 2.0 * f0 + fm) / (h * h);
}

Complex second_derivative(const PointFn& f, std::vector<Complex>& p, std::size_t i, Complex f0, const FDConfig& fd) {
  Complex d1 = second_difference(f, p, i, f0, fd.h);
  if (!fd.richardson) return d1;
  Complex d2 = second_difference(f, p, i, f0, fd.h / 2);
  return (4.0 * d2 - d1) / 3.0;
}

// Power p^e on the principal branch, guarded when e is not an integer.
Complex guarded_pow(Complex base, double e, bool& near_cut) {
  if (e == std::round(e)) return std::pow(base, static_cast<int>(std::round(e)));
  if (base.real() < 0 && std::abs(base.imag()) < 1e-2 * std::abs(base)) near_cut = true;
  return std::exp(e * std::log(base));
}

std::vector<Complex> random_point(std::mt19937_64& rng, int dim, double min_gap) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> p(static_cast<std::size_t>(dim));
  for (int attempt = 0; attempt < 10000; ++attempt) {
    for (auto& v : p) v = {u(rng), u(rng)};
    bool ok = true;
    for (std::size_t i = 0; i < p.size() && ok; ++i)
      for (std::size_t j = i + 1; j < p.size() && ok; ++j) ok = std::abs(p[i] - p[j]) >= min_gap;
    if (ok) return p;
  }
  throw MalformedExpression("could not place random points with the required separation");
}

}  // namespace

Complex apply_deformed_fd(const PointFn& f, std::span<const Complex> point, std::size_t offset, int a, int b, double m,
                          bool trig, const FDConfig& fd) {
  std::vector<Complex> p(point.begin(), point.end());
  const std::size_t A = static_cast<std::size_t>(a), B = static_cast<std::size_t>(b);
  if (offset + A + B > p.size()) throw MalformedExpression("operator block exceeds the point dimension");
  Complex f0 = f(p);
  Complex kinetic = 0, potential = 0;
  for (std::size_t i = 0; i < A; ++i) kinetic -= second_derivative(f, p, offset + i, f0, fd);
  for (std::size_t i = 0; i < B; ++i) kinetic -= m * second_derivative(f, p, offset + A + i, f0, fd);
  auto x = [&](std::size_t i) { return p[offset + i]; };
  auto y = [&](std::size_t i) { return p[offset + A + i]; };
  for (std::size_t i = 0; i < A; ++i)
    for (std::size_t j = i + 1; j < A; ++j) potential += 2 * m * (m + 1) * pair_potential(x(i), x(j), trig);
  for (std::size_t i = 0; i < B; ++i)
    for (std::size_t j = i + 1; j < B; ++j) potential += 2 * (1 / m + 1) * pair_potential(y(i), y(j), trig);
  for (std::size_t i = 0; i < A; ++i)
    for (std::size_t j = 0; j < B; ++j) potential += 2 * (m + 1) * pair_potential(x(i), y(j), trig);
  return kinetic + potential * f0;
}

void KernelParams::validate() const {
  if (m == 0) throw MalformedExpression("kernel needs m != 0");
  if (k < 0 || l < 0 || p < 0 || q < 0) throw MalformedExpression("negative block size");
  if (kind != BACase::rational && kind != BACase::trig) throw MalformedExpression("kernel case must be rational or trig");
}

PointFn kernel_K(const KernelParams& kp) {
  kp.validate();
  // K is Sen's ground state for masses 1, 1/m, -1, -1/m at β = -m times
  // exp(μ sum mass_j x_j); every pairwise exponent β m_i m_j matches the
  // kernel's B-factors.
  std::vector<double> mass;
  for (int i = 0; i < kp.k; ++i) mass.push_back(1);
  for (int i = 0; i < kp.l; ++i) mass.push_back(1 / kp.m);
  for (int i = 0; i < kp.p; ++i) mass.push_back(-1);
  for (int i = 0; i < kp.q; ++i) mass.push_back(-1 / kp.m);
  const bool trig = kp.kind == BACase::trig;
  return [mass, trig, beta = -kp.m, mu = kp.mu](std::span<const Complex> pt) {
    if (pt.size() != mass.size()) throw MalformedExpression("kernel point has the wrong dimension");
    Complex v = 1, expo = 0;
    bool near_cut = false;
    for (std::size_t i = 0; i < pt.size(); ++i) {
      expo += mu * mass[i] * pt[i];
      for (std::size_t j = i + 1; j < pt.size(); ++j) {
        Complex d = pt[i] - pt[j];
        v *= guarded_pow(trig ? std::sinh(d) : d, beta * mass[i] * mass[j], near_cut);
      }
    }
    if (near_cut) throw BranchCutCrossing("kernel factor with fractional exponent on the branch cut");
    return v * std::exp(expo);
  };
}

Complex kernel_c0(const KernelParams& kp, C0Formula f) {
  kp.validate();
  const double m = kp.m, a = kp.k - kp.p, b = kp.l - kp.q;
  Complex quad = kp.mu * kp.mu * (kp.p + kp.q / m - kp.k - kp.l / m);
  if (kp.kind == BACase::rational) return quad;
  double bracket = std::pow(a + b / m, 3) - (a + b / (m * m * m));
  double cubic = f == C0Formula::direct ? 0.25 * m * m * bracket : -m * m / 3 * bracket;
  return cubic + quad;
}

VerifyReport identity_check(const KernelParams& kp, int trials, std::uint64_t seed, C0Formula f, const FDConfig& fd,
                            double tolerance) {
  Stopwatch sw;
  PointFn K = kernel_K(kp);
  Complex c0 = kernel_c0(kp, f);
  const bool trig = kp.kind == BACase::trig;
  std::mt19937_64 rng(seed);
  double worst = 0;
  int done = 0, resampled = 0;
  while (done < trials) {
    std::vector<Complex> pt = random_point(rng, kp.dimension(), 0.1);
    try {
      Complex k0 = K(pt);
      Complex left = apply_deformed_fd(K, pt, 0, kp.k, kp.l, kp.m, trig, fd);
      Complex right = apply_deformed_fd(K, pt, static_cast<std::size_t>(kp.k + kp.l), kp.p, kp.q, kp.m, trig, fd);
      worst = std::max(worst, std::abs(left - right - c0 * k0) / std::abs(k0));
      ++done;
    } catch (const BranchCutCrossing&) {
      if (++resampled > 100 * trials) throw;
    }
  }
  VerifyReport r;
  r.check_id = "kernel-identity";
  r.parameters = {{"case", case_tag(kp.kind)}, {"k", kp.k},   {"l", kp.l},
                  {"p", kp.p},                 {"q", kp.q},   {"m", kp.m},
                  {"mu", {kp.mu.real(), kp.mu.imag()}},       {"c0", {c0.real(), c0.imag()}},
                  {"c0-formula", f == C0Formula::direct ? "direct" : "sen"},
                  {"trials", trials},          {"h", fd.h},   {"richardson", fd.richardson}};
  r.seed = seed;
  r.residual = worst;
  r.tolerance = tolerance;
  r.pass = worst <= tolerance;
  r.detail = "max relative residual of L^{k,l}K - L^{p,q}K - C0 K";
  if (resampled) r.detail += "; " + std::to_string(resampled) + " points resampled off branch cuts";
  sw.stamp(r);
  return r;
}

double sen_eigenvalue(const std::vector<Rational>& masses, const Rational& beta) {
  Rational s = 0, s3 = 0;
  for (const Rational& mj : masses) {
    s += mj;
    s3 += mj * mj * mj;
  }
  Rational e = -beta * beta / 3 * (s * s * s - s3);
  return e.get_d();
}

VerifyReport sen_check(const std::vector<Rational>& masses, const Rational& beta, int trials, std::uint64_t seed,
                       const FDConfig& fd, double tolerance) {
  Stopwatch sw;
  for (const Rational& mj : masses)
    if (mj == 0) throw MalformedExpression("Sen masses must be nonzero");
  const std::size_t N = masses.size();
  std::vector<double> m(N);
  for (std::size_t j = 0; j < N; ++j) m[j] = masses[j].get_d();
  const double b = beta.get_d();
  const double e0 = sen_eigenvalue(masses, beta);
  // S = log Φ_0 at real points sorted decreasingly, so every sinh is positive.
  auto S = [&](std::span<const double> x) {
    double s = 0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i + 1; j < N; ++j) s += b * m[i] * m[j] * std::log(std::sinh(x[i] - x[j]));
    return s;
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  double worst = 0;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> x(N);
    bool ok = false;
    while (!ok) {
      for (auto& v : x) v = u(rng);
      std::sort(x.begin(), x.end(), std::greater<>());
      ok = true;
      for (std::size_t i = 0; i + 1 < N; ++i) ok = ok && x[i] - x[i + 1] >= 0.1;
    }
    double s0 = S(x), value = 0;
    for (std::size_t j = 0; j < N; ++j) {
      auto diffs = [&](double h) {
        double c = x[j];
        x[j] = c + h;
        double sp = S(x);
        x[j] = c - h;
        double sm = S(x);
        x[j] = c;
        return std::pair{(sp - sm) / (2 * h), (sp - 2 * s0 + sm) / (h * h)};
      };
      auto [d1, dd1] = diffs(fd.h);
      if (fd.richardson) {
        auto [d2, dd2] = diffs(fd.h / 2);
        d1 = (4 * d2 - d1) / 3;
        dd1 = (4 * dd2 - dd1) / 3;
      }
      value -= (dd1 + d1 * d1) / m[j];
    }
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i + 1; j < N; ++j) {
        double gamma = (m[i] + m[j]) * b * (m[i] * m[j] * b - 1);
        value += gamma / std::pow(std::sinh(x[i] - x[j]), 2);
      }
    worst = std::max(worst, std::abs(value - e0) / std::max(std::abs(e0), 1.0));
  }
  VerifyReport r;
  r.check_id = "sen-eigen";
  std::vector<std::string> ms;
  for (const Rational& mj : masses) ms.push_back(mj.get_str());
  r.parameters = {{"masses", ms}, {"beta", beta.get_str()}, {"E0", e0}, {"trials", trials}, {"h", fd.h},
                  {"richardson", fd.richardson}};
  r.seed = seed;
  r.residual = worst;
  r.tolerance = tolerance;
  r.pass = worst <= tolerance;
  r.detail = "max |H Phi0/Phi0 - E0| / max(|E0|, 1) at real points";
  sw.stamp(r);
  return r;
}

VerifyReport numeric_eigen_check(const PointFn& f, BACase c, int n, double m, Complex eigenvalue,
                                 const std::vector<std::vector<Complex>>& points, const FDConfig& fd,
                                 double tolerance) {
  Stopwatch sw;
  const bool trig = c == BACase::trig || c == BACase::deformed_trig;
  const bool deformed = c == BACase::deformed_rational || c == BACase::deformed_trig;
  PointFn g = f;
  if (trig)
    g = [f](std::span<const Complex> x) {
      std::vector<Complex> u(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) u[i] = std::exp(2.0 * x[i]);
      return f(u);
    };
  double worst = 0;
  for (const auto& pt : points) {
    std::vector<Complex> x = pt;
    if (trig)
      for (auto& v : x) v = 0.5 * std::log(v);
    Complex v0 = g(x);
    Complex lv = apply_deformed_fd(g, x, 0, n, deformed ? 1 : 0, m, trig, fd);
    worst = std::max(worst, std::abs(lv - eigenvalue * v0) / std::abs(v0));
  }
  VerifyReport r;
  r.check_id = "numeric-eigen";
  r.parameters = {{"case", case_tag(c)},
                  {"n", n},
                  {"m", m},
                  {"eigenvalue", {eigenvalue.real(), eigenvalue.imag()}},
                  {"points", points.size()},
                  {"h", fd.h}};
  r.residual = worst;
  r.tolerance = tolerance;
  r.pass = worst <= tolerance;
  r.detail = "max |L f - E f| / |f| by finite differences";
  sw.stamp(r);
  return r;
}

}  // namespace cmsba

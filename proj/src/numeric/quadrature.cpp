#include "cmsba/numeric/quadrature.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include <gsl/gsl_integration.h>

#include "cmsba/ba/rational.hpp"
#include "cmsba/ba/trig.hpp"
#include "cmsba/error.hpp"

namespace cmsba {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Rule from_gsl(const gsl_integration_fixed_type* type, int n, double a, double b, double alpha, double beta) {
  gsl_integration_fixed_workspace* ws = gsl_integration_fixed_alloc(type, static_cast<std::size_t>(n), a, b, alpha, beta);
  if (!ws) throw QuadratureNonConvergence("GSL could not build a " + std::to_string(n) + "-node rule");
  Rule r;
  const double* x = gsl_integration_fixed_nodes(ws);
  const double* w = gsl_integration_fixed_weights(ws);
  r.x.assign(x, x + n);
  r.w.assign(w, w + n);
  gsl_integration_fixed_free(ws);
  return r;
}

std::mutex cache_mu;

const Rule& unit_laguerre(int n) {
  static std::map<int, Rule> cache;
  std::lock_guard lock(cache_mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Rule r = from_gsl(gsl_integration_fixed_laguerre, n, 0, 1, 0, 0);
  // Fold e^{x} into the weights in log space; far nodes underflow to 0.
  for (std::size_t j = 0; j < r.w.size(); ++j) r.w[j] = r.w[j] > 0 ? std::exp(std::log(r.w[j]) + r.x[j]) : 0;
  return cache.emplace(n, std::move(r)).first->second;
}

double check_node_count(int n) {
  if (n < 4) throw MalformedExpression("quadrature needs at least 4 nodes");
  return n;
}

Complex tensor_sum(const std::vector<Rule>& rules, const std::function<Complex(std::span<const double>)>& g) {
  const std::size_t d = rules.size();
  if (d == 0) return g({});
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> t(d);
  Complex sum = 0;
  while (true) {
    double w = 1, decay = 0;
    for (std::size_t i = 0; i < d; ++i) {
      t[i] = rules[i].x[idx[i]];
      w *= rules[i].w[idx[i]];
      decay += rules[i].rate * t[i];
    }
    // Beyond e^-600 a node cannot contribute; skipping it avoids inf * 0.
    if (w != 0 && decay < 600) sum += w * g(t);
    std::size_t i = 0;
    while (i < d && ++idx[i] == rules[i].x.size()) idx[i++] = 0;
    if (i == d) break;
  }
  return sum;
}

std::string fmt_g(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

Complex integrate_refined(const std::function<std::vector<Rule>(int)>& make_rules,
                          const std::function<Complex(std::span<const double>)>& g, const QuadConfig& q,
                          const std::string& what) {
  q.validate();
  int n = q.nodes;
  Complex prev = tensor_sum(make_rules(n), g);
  for (int level = 1; level <= q.max_levels; ++level) {
    n *= 2;
    Complex cur = tensor_sum(make_rules(n), g);
    if (std::abs(cur - prev) <= q.tolerance * std::abs(cur)) return cur;
    prev = cur;
  }
  throw QuadratureNonConvergence(what + ": no agreement to " + fmt_g(q.tolerance) + " with " +
                                 std::to_string(n) + " nodes per dimension");
}

Complex ipow(Complex v, int e) {
  Complex r = 1;
  for (int i = 0; i < e; ++i) r *= v;
  return r;
}

Complex vandermonde(std::span<const Complex> a) {
  Complex p = 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) p *= a[i] - a[j];
  return p;
}

Complex cross(std::span<const Complex> a, std::span<const Complex> b) {
  Complex p = 1;
  for (Complex s : a)
    for (Complex t : b) p *= s - t;
  return p;
}

double factorial(int m) { return std::tgamma(m + 1.0); }

double min_imag_gap(std::span<const Complex> p) {
  double g = kInf;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) g = std::min(g, std::abs((p[i] - p[j]).imag()));
  return g;
}

double min_angle_gap(std::span<const Complex> p) {
  double g = kInf;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      double d = std::abs(std::arg(p[i]) - std::arg(p[j]));
      g = std::min(g, std::min(d, 2 * std::numbers::pi - d));
    }
  return g;
}

bool is_trig(BACase c) { return c == BACase::trig || c == BACase::deformed_trig; }
bool is_deformed(BACase c) { return c == BACase::deformed_rational || c == BACase::deformed_trig; }

std::size_t expected_points(const SelbergSetup& s) { return static_cast<std::size_t>(s.k + 1); }

std::vector<Rule> rules_for(const ContourSpec& c, int n) {
  std::vector<Rule> out;
  for (double r : c.rate) out.push_back(c.kind == ContourKind::ray ? gauss_laguerre(n, r) : gauss_jacobi_unit(n, r));
  return out;
}

}  // namespace

void QuadConfig::validate() const {
  check_node_count(nodes);
  if (!(tolerance > 0 && tolerance < 1)) throw MalformedExpression("quadrature tolerance must lie in (0, 1)");
  if (max_levels < 0) throw MalformedExpression("max_levels must be non-negative");
  if (!(circle_eps > 0)) throw MalformedExpression("circle radius must be positive");
}

Rule gauss_laguerre(int n, double rate) {
  check_node_count(n);
  if (!(rate > 0)) throw CertificateViolation("ray integral without exponential decay");
  Rule r = unit_laguerre(n);
  for (std::size_t j = 0; j < r.x.size(); ++j) {
    r.x[j] /= rate;
    r.w[j] /= rate;
  }
  r.rate = rate;
  return r;
}

Rule gauss_jacobi_unit(int n, double beta) {
  check_node_count(n);
  if (!(beta > -1)) throw CertificateViolation("segment integral diverges at the endpoint 0");
  static std::map<std::pair<int, double>, Rule> cache;
  {
    std::lock_guard lock(cache_mu);
    auto it = cache.find({n, beta});
    if (it != cache.end()) return it->second;
  }
  Rule r = from_gsl(gsl_integration_fixed_jacobi, n, 0, 1, 0, beta);
  for (std::size_t j = 0; j < r.w.size(); ++j) r.w[j] /= std::pow(r.x[j], beta);
  std::lock_guard lock(cache_mu);
  return cache.emplace(std::pair{n, beta}, std::move(r)).first->second;
}

Rule gauss_legendre(int n, double a, double b) {
  check_node_count(n);
  return from_gsl(gsl_integration_fixed_legendre, n, a, b, 0, 0);
}

double gamma_integral(int m, double c, int nodes) {
  check_node_count(nodes);
  if (!(c > 0)) throw CertificateViolation("ray integral without exponential decay");
  // The plain Laguerre weight e^{-t} is exact here; no rescaled weights.
  Rule r = from_gsl(gsl_integration_fixed_laguerre, nodes, 0, 1, 0, 0);
  double s = 0;
  for (std::size_t j = 0; j < r.x.size(); ++j) s += r.w[j] * std::pow(r.x[j], m);
  return s / std::pow(c, m + 1);
}

std::string contour_name(ContourKind k) {
  switch (k) {
    case ContourKind::ray:
      return "ray";
    case ContourKind::segment:
      return "segment";
    case ContourKind::circle_product:
      return "circle-product";
  }
  return "?";
}

void ContourSpec::certify(double min_clearance, double min_decay) const {
  if (clearance < min_clearance)
    throw CertificateViolation(contour_name(kind) + " contour: clearance " + std::to_string(clearance) +
                               " below the required " + std::to_string(min_clearance) + detail);
  if (kind != ContourKind::circle_product && decay < min_decay)
    throw CertificateViolation(contour_name(kind) + " contour: convergence margin " + std::to_string(decay) +
                               " below the required " + std::to_string(min_decay) + detail);
}

ContourSpec selberg_contour(const SelbergSetup& s, std::span<const Complex> point) {
  const int k = s.k;
  if (point.size() != expected_points(s) || s.spectral.size() != expected_points(s))
    throw MalformedExpression("Selberg evaluation expects " + std::to_string(k + 1) + " positions and spectral values");
  if (s.m < 1) throw CertificateViolation("Selberg-type integrals need m >= 1");
  ContourSpec c;
  Complex last = s.spectral[static_cast<std::size_t>(k)];
  auto main = point.first(static_cast<std::size_t>(k) + (is_deformed(s.kind) ? 0 : 1));
  c.base.assign(point.begin(), point.begin() + k);
  if (!is_trig(s.kind)) {
    c.kind = ContourKind::ray;
    c.clearance = min_imag_gap(main);
    c.decay = kInf;
    for (int i = 0; i < k; ++i) {
      c.rate.push_back(-(s.spectral[static_cast<std::size_t>(i)] - last).real());
      c.decay = std::min(c.decay, c.rate.back());
    }
    c.detail = " (rays need distinct Im x_i and Re(λ_i - λ_last) < 0)";
  } else {
    c.kind = ContourKind::segment;
    c.clearance = min_angle_gap(point);
    c.decay = kInf;
    for (int i = 0; i < k; ++i) {
      double re = (s.spectral[static_cast<std::size_t>(i)] - last).real();
      double beta = s.kind == BACase::trig ? re - s.m - 1 : re - (1.0 + s.m) / 2 + s.trig_w_shift;
      c.rate.push_back(beta);
      c.decay = std::min(c.decay, beta + 1);
    }
    for (Complex p : point)
      if (p == Complex(0)) c.clearance = 0;
    c.detail = " (segments need distinct arg u_i and a large enough Re(ν_i - ν_last))";
  }
  return c;
}

PointFn selberg_raise_rank_numeric(PointFn prev, const SelbergSetup& s) {
  s.quad.validate();
  return [prev = std::move(prev), s](std::span<const Complex> point) -> Complex {
    ContourSpec c = selberg_contour(s, point);
    c.certify(s.quad.clearance, s.quad.decay);
    const int k = s.k, m = s.m;
    const std::size_t K = static_cast<std::size_t>(k);
    std::vector<Complex> pos(point.begin(), point.end());
    std::span<const Complex> lam(s.spectral);
    Complex last = lam[K];
    std::vector<Complex> z(K);
    std::function<Complex(std::span<const double>)> g;
    Complex front;

    switch (s.kind) {
      case BACase::rational: {
        // ∫ A(z,x)^m / (A(x)^m A(z)^m) e^{λ_{k+1}(x̄ - z̄)} Ψ^(k)(z) dz = C_2 Ψ^(k+1)(x).
        g = [&](std::span<const double> t) {
          Complex ssum = 0;
          for (std::size_t i = 0; i < K; ++i) {
            z[i] = pos[i] + t[i];
            ssum += t[i];
          }
          return ipow(cross(z, pos), m) / ipow(vandermonde(z), m) * std::exp(-last * ssum) * prev(z);
        };
        // A*(z,x) orientation, as in the residue construction.
        Complex c2inv = (m * k * (k - 1) / 2) % 2 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < K; ++i) c2inv *= ipow(last - lam[i], m + 1) / factorial(m);
        front = c2inv * std::exp(last * pos[K]) / ipow(vandermonde(pos), m);
        break;
      }
      case BACase::trig: {
        // prod u_i^{ν_{k+1}} ∫ A*(w,u)^m / (A(u)^m A(w)^m) prod w_i^{-m-1-ν_{k+1}} Φ^(k)(w) dw = C_3 Φ^(k+1)(u).
        g = [&](std::span<const double> t) {
          Complex jac = 1, pw = 1, astar = 1;
          for (std::size_t i = 0; i < K; ++i) {
            z[i] = t[i] * pos[i];
            jac *= pos[i];
            pw *= std::exp((-static_cast<double>(m) - 1.0 - last) * std::log(z[i]));
          }
          for (std::size_t i = 0; i < K; ++i)
            for (std::size_t j = 0; j <= K; ++j) astar *= i <= j ? z[i] - pos[j] : pos[j] - z[i];
          return ipow(astar, m) / ipow(vandermonde(z), m) * pw * jac * prev(z);
        };
        Complex c3 = (k * m) % 2 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < K; ++i)
          c3 *= factorial(m) * complex_gamma(lam[i] - last) / complex_gamma(lam[i] - last + static_cast<double>(m) + 1.0);
        Complex pre = 1;
        for (Complex u : pos) pre *= std::exp(last * std::log(u));
        front = pre / (ipow(vandermonde(pos), m) * c3);
        break;
      }
      case BACase::deformed_rational: {
        // C_5 / (A(x)^m A(x,y)) ∫ A(z,x)^m A(z,y) / A(z)^m e^{μ(x̄ - z̄ + y/m)} Ψ^(n)(z) dz.
        std::span<const Complex> x(pos.data(), K);
        Complex y = pos[K], mu = last;
        g = [&, x, y, mu](std::span<const double> t) {
          Complex ssum = 0, zy = 1;
          for (std::size_t i = 0; i < K; ++i) {
            z[i] = x[i] + t[i];
            ssum += t[i];
            zy *= z[i] - y;
          }
          return ipow(cross(z, x), m) * zy / ipow(vandermonde(z), m) * std::exp(-mu * ssum) * prev(z);
        };
        Complex c5 = (m * k * (k - 1) / 2) % 2 ? -1.0 : 1.0, xy = 1;
        for (std::size_t i = 0; i < K; ++i) {
          c5 *= ipow(mu - lam[i], m + 1) / factorial(m);
          xy *= x[i] - y;
        }
        front = c5 * std::exp(mu * y / static_cast<double>(m)) / (ipow(vandermonde(x), m) * xy);
        break;
      }
      case BACase::deformed_trig: {
        // C_7 prod u_i^{μ+(1-m)/2} v^{μ/m} / (A(u)^m A(u,v)) ∫ A(w,u)^m A(w,v) / A(w)^m prod w_i^{-μ-(1+m)/2} Φ^(n)(w) dw.
        std::span<const Complex> u(pos.data(), K);
        Complex v = pos[K], mu = last;
        Complex wexp = -mu - (1.0 + m) / 2 + static_cast<double>(s.trig_w_shift);
        g = [&, u, v, wexp](std::span<const double> t) {
          Complex jac = 1, pw = 1, wv = 1;
          for (std::size_t i = 0; i < K; ++i) {
            z[i] = t[i] * u[i];
            jac *= u[i];
            pw *= std::exp(wexp * std::log(z[i]));
            wv *= z[i] - v;
          }
          return ipow(cross(z, u), m) * wv / ipow(vandermonde(z), m) * pw * jac * prev(z);
        };
        Complex c7 = 1, pre = std::exp(mu / static_cast<double>(m) * std::log(v)), uv = 1;
        for (std::size_t i = 0; i < K; ++i) {
          c7 *= factorial(m) * complex_gamma(lam[i] - mu + (1.0 - m) / 2) / complex_gamma(lam[i] - mu + (m + 3.0) / 2);
          pre *= std::exp((mu + (1.0 - m) / 2) * std::log(u[i]));
          uv *= u[i] - v;
        }
        // The constant divides, with the orientation sign of A*(w,u) and of
        // each (w_i - u_i)^m on the segment.
        Complex sign = (m * k * (k + 1) / 2) % 2 ? -1.0 : 1.0;
        front = sign * pre / (c7 * ipow(vandermonde(u), m) * uv);
        break;
      }
    }
    Complex integral = integrate_refined([&](int n) { return rules_for(c, n); }, g, s.quad,
                                         "Selberg integral (" + case_tag(s.kind) + ")");
    return front * integral;
  };
}

PointFn symbolic_point_fn(const BAResult& r, std::span<const Complex> spectral) {
  if (spectral.size() != r.spectral.size()) throw MalformedExpression("spectral assignment has the wrong size");
  Assignment base;
  for (std::size_t i = 0; i < spectral.size(); ++i) base.set(r.spectral[i], spectral[i]);
  return [expr = r.expr, positions = r.positions, base](std::span<const Complex> point) {
    if (point.size() != positions.size()) throw MalformedExpression("point has the wrong number of coordinates");
    Assignment a = base;
    for (std::size_t i = 0; i < point.size(); ++i) a.set(positions[i], point[i]);
    return eval(expr, a);
  };
}

Complex psi2_integral(int m, std::span<const Complex> x, std::span<const Complex> lambda, const QuadConfig& q) {
  if (x.size() != 2 || lambda.size() != 2) throw MalformedExpression("two positions and two spectral values expected");
  Complex d = lambda[0] - lambda[1];
  ContourSpec c;
  c.kind = ContourKind::ray;
  c.base = {x[0]};
  c.rate = {-d.real()};
  c.decay = -d.real();
  c.clearance = kInf;
  c.detail = " (the ray from x1 needs Re(λ1 - λ2) < 0)";
  c.certify(q.clearance, q.decay);
  // (z - x1)^m (z - x2)^m e^{(λ1-λ2) z} with z = x1 + s, e^{(λ1-λ2) x1} pulled out.
  auto g = [&](std::span<const double> t) { return ipow(Complex(t[0]), m) * ipow(x[0] + t[0] - x[1], m) * std::exp(d * t[0]); };
  Complex integral = integrate_refined([&](int n) { return rules_for(c, n); }, g, q, "psi2 integral");
  return ipow(-d, m + 1) / (factorial(m) * ipow(x[0] - x[1], m)) * std::exp(lambda[1] * x[1] + lambda[0] * x[0]) *
         integral;
}

Complex psi3_integral(int m, std::span<const Complex> x, std::span<const Complex> lambda, const QuadConfig& q) {
  if (x.size() != 3 || lambda.size() != 3) throw MalformedExpression("three positions and three spectral values expected");
  const Complex l1 = lambda[0], l2 = lambda[1], l3 = lambda[2];
  // Tilt the z1 ray away from z2 and the z2 ray away from z1: no pole is
  // swept and |z1 - z2| grows along the rays instead of staying at the gap.
  const Complex a1 = l1 - l3, a2 = l2 - l3;
  const double side = (x[0] - x[1]).imag() >= 0 ? 1 : -1;
  auto tilted_rate = [](Complex a, double th) { return -(a * std::polar(1.0, th)).real(); };
  double theta = 0.5;
  while (theta > 1e-3 && (tilted_rate(a1, side * theta) < 0.5 * -a1.real() ||
                          tilted_rate(a2, -side * theta) < 0.5 * -a2.real()))
    theta /= 2;
  if (theta <= 1e-3) theta = 0;
  const Complex d1 = std::polar(1.0, side * theta), d2 = std::polar(1.0, -side * theta);
  ContourSpec c;
  c.kind = ContourKind::ray;
  c.base = {x[0], x[1], x[0]};
  c.rate = {tilted_rate(a1, side * theta), tilted_rate(a2, -side * theta), -(l1 - l2).real()};
  c.decay = std::min({c.rate[0], c.rate[1], c.rate[2]});
  c.clearance = std::abs((x[0] - x[1]).imag());
  c.detail = " (needs Im x1 != Im x2 and Re(λ_i - λ_j) < 0 for i < j)";
  c.certify(q.clearance, q.decay);
  // z1 = x1 + s1 d1, z2 = x2 + s2 d2, w = z1 + t; the exponential is taken
  // relative to its value at s = t = 0.
  auto g = [&](std::span<const double> t) {
    Complex z1 = x[0] + t[0] * d1, z2 = x[1] + t[1] * d2, w = z1 + t[2];
    Complex num = ipow((w - z1) * (w - z2), m);
    for (Complex zi : {z1, z2})
      for (std::size_t j = 0; j < 3; ++j) num *= ipow(zi - x[j], m);
    return d1 * d2 * num / ipow(z1 - z2, 2 * m) * std::exp(a1 * t[0] * d1 + a2 * t[1] * d2 + (l1 - l2) * t[2]);
  };
  Complex integral = integrate_refined([&](int n) { return rules_for(c, n); }, g, q, "psi3 integral");
  Complex xbar = x[0] + x[1] + x[2];
  Complex e0 = (l2 - l3) * (x[0] + x[1]) + (l1 - l2) * x[0] + l3 * xbar;
  // The A* orientation contributes (-1)^m on top of (-1)^(m+1).
  Complex D = -ipow(vandermonde(lambda), m + 1) /
              (std::pow(factorial(m), 3) * ipow(vandermonde(x), m));
  return D * std::exp(e0) * integral;
}

Complex residue_raise_rank_numeric(BACase c, int n, int m, std::span<const Complex> point,
                                   std::span<const Complex> spectral, const QuadConfig& q) {
  q.validate();
  if (c != BACase::rational && c != BACase::trig) throw MalformedExpression("numeric residues cover rational and trig");
  if (n < 2 || m < 1) throw MalformedExpression("numeric residues need n >= 2 and m >= 1");
  if (point.size() != static_cast<std::size_t>(n) || spectral.size() != point.size())
    throw MalformedExpression("point and spectral values must have n entries");
  double gap = kInf;
  for (std::size_t i = 0; i < point.size(); ++i)
    for (std::size_t j = i + 1; j < point.size(); ++j) gap = std::min(gap, std::abs(point[i] - point[j]));
  ContourSpec cs;
  cs.kind = ContourKind::circle_product;
  cs.base.assign(point.begin(), point.end() - 1);
  cs.radius.assign(cs.base.size(), q.circle_eps);
  cs.clearance = gap - 2 * q.circle_eps;
  cs.detail = " (circles of radius eps around distinct centers)";
  cs.certify(std::max(q.clearance, q.circle_eps), 0);

  SymExpr integrand;
  ResiduePlan plan;
  Assignment a;
  Complex factor;
  if (c == BACase::rational) {
    RankIntegrand in = raise_rank_integrand(ba_rational(n - 1, m), m);
    integrand = in.integrand;
    plan = in.plan;
    for (int i = 0; i < n; ++i) a.set(x_sym(i + 1), point[i]).set(lambda_sym(i + 1), spectral[i]);
    factor = eval(in.outside, a) * eval(in.inverse_constant, a);
  } else {
    TrigRankIntegrand in = raise_rank_trig_integrand(ba_trig(n - 1, m), m);
    integrand = in.integrand;
    plan = in.plan;
    for (int i = 0; i < n; ++i) a.set(u_sym(i + 1), point[i]).set(nu_sym(i + 1), spectral[i]);
    factor = eval(in.outside, a) * eval(in.inverse_binomials, a) * static_cast<double>(in.sign);
  }
  std::function<Complex(std::size_t)> nested = [&](std::size_t level) -> Complex {
    if (level == plan.size()) return eval(integrand, a);
    const ResidueStep& step = plan[level];
    Complex center = eval(step.center, a);
    return contour_residue_numeric(
               [&](Complex z) {
                 a.set(step.var, z);
                 return nested(level + 1);
               },
               center, q.circle_eps, q.tolerance)
        .value;
  };
  return factor * nested(0);
}

}  // namespace cmsba

#include "gmc/bpz_verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "gmc/errors.hpp"
#include "gmc/exact_laws.hpp"
#include "gmc/quadrature.hpp"

namespace gmc::bpz {

namespace {

using special::HypParams;
using special::kPi;
using special::kTwoPi;

double rel_deviation(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

void check_not_sqrt2(double gamma) {
  if (std::abs(gamma * gamma - 2.0) < 1e-12) {
    throw PoleError("gamma = sqrt(2): the expansion exponents collide "
                    "(Gamma(-1 - gamma^2/2) at pole -2)");
  }
}

// Breakpoints 0, eps, 4 eps, 16 eps, ..., pi for integrands with structure
// on the scale eps near u = 0.
std::vector<double> geometric_breaks(double eps) {
  std::vector<double> b{0.0};
  for (double x = eps; x < kPi; x *= 4.0) b.push_back(x);
  b.push_back(kPi);
  return b;
}

}  // namespace

double g_closed_form(double gamma, double p, double t) {
  if (!(p <= 0.0)) {
    throw DomainError("g_closed_form: requires p <= 0, got " + std::to_string(p));
  }
  if (!(t >= 0.0 && t <= 1.0)) {
    throw DomainError("g_closed_form: t = " + std::to_string(t) + " outside [0, 1]");
  }
  return exact::u_function(gamma, p) *
         special::hyp2f1(HypParams::from_gamma_p(gamma, p), t * t);
}

double ode_residual(const std::function<double(double)>& g, const HypParams& params,
                    double t, double h) {
  if (!(h >= 1e-5 && h <= 1e-2)) {
    throw DomainError("ode_residual: step size h = " + std::to_string(h) +
                      " outside [1e-5, 1e-2]");
  }
  if (!(t > 0.05 && t < 0.95)) {
    throw DomainError("ode_residual: t = " + std::to_string(t) + " outside (0.05, 0.95)");
  }
  const double gm2 = g(t - 2.0 * h);
  const double gm1 = g(t - h);
  const double g0 = g(t);
  const double gp1 = g(t + h);
  const double gp2 = g(t + 2.0 * h);
  const double d1 = (gm2 - 8.0 * gm1 + 8.0 * gp1 - gp2) / (12.0 * h);
  const double d2 = (-gm2 + 16.0 * gm1 - 30.0 * g0 + 16.0 * gp1 - gp2) / (12.0 * h * h);
  const auto& [a, b, c] = params;
  const double t2 = t * t;
  const double r = t * (1.0 - t2) * d2 + (t2 - 1.0) * d1 +
                   2.0 * (c - (a + b + 1.0) * t2) * d1 - 4.0 * a * b * t * g0;
  return r / std::max(std::abs(g0), 1.0);
}

double ode_residual(double gamma, double p, double t, double h) {
  auto g = [gamma, p](double x) { return g_closed_form(gamma, p, x); };
  return ode_residual(g, HypParams::from_gamma_p(gamma, p), t, h);
}

CoefficientReport coefficient_identities(double gamma, double p) {
  if (!(p < 0.0)) {
    throw DomainError("coefficient_identities: requires p < 0, got " + std::to_string(p));
  }
  const auto m = special::connection_matrix(gamma, p);
  const double q = 0.25 * gamma * gamma;
  CoefficientReport r;
  r.u = exact::u_function(gamma, p);
  const double u_prev = exact::u_function(gamma, p - 1.0);
  r.m21_u = m.m21 * r.u;
  const double g_minus = special::gamma(-q);
  r.b2 = kTwoPi * p * special::gamma(-2.0 * q - 1.0) / (g_minus * g_minus) * u_prev;
  r.b1 = m.apply(r.u, 0.0).first;
  r.g_at_one = g_closed_form(gamma, p, 1.0);
  r.shift_lhs = r.u / u_prev;
  r.shift_rhs = exact::shift_ratio(gamma, p);
  r.b2_deviation = rel_deviation(r.m21_u, r.b2);
  r.b1_deviation = rel_deviation(r.b1, r.g_at_one);
  r.shift_deviation = rel_deviation(r.shift_lhs, r.shift_rhs);
  r.max_deviation = std::max({r.b2_deviation, r.b1_deviation, r.shift_deviation});
  return r;
}

FitReport fit_t1_expansion(double gamma, double p, const FitOptions& options) {
  check_not_sqrt2(gamma);
  if (!(p < 0.0)) {
    throw DomainError("fit_t1_expansion: requires p < 0, got " + std::to_string(p));
  }
  if (!(options.t_lo > 0.0 && options.t_lo < options.t_hi && options.t_hi < 1.0)) {
    throw DomainError("fit_t1_expansion: window must satisfy 0 < t_lo < t_hi < 1");
  }
  constexpr int kCols = 6;
  const auto n = static_cast<Eigen::Index>(options.points);
  if (n < kCols) {
    throw IllConditionedFitError("fit_t1_expansion: need at least 6 sample points");
  }
  const double s = 1.0 + 0.5 * gamma * gamma;
  const double mid = 0.5 * (options.t_lo + options.t_hi);
  const double half = 0.5 * (options.t_hi - options.t_lo);

  Eigen::MatrixXd design(n, kCols);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = mid + half * std::cos(kPi * (2.0 * static_cast<double>(i) + 1.0) /
                                           (2.0 * static_cast<double>(n)));
    const double w = (1.0 - t) * (1.0 + t);
    design(i, 0) = 1.0;
    design(i, 1) = w;
    design(i, 2) = w * w;
    design(i, 3) = w * w * w;
    design(i, 4) = std::pow(w, s);
    design(i, 5) = std::pow(w, s + 1.0);
    rhs(i) = g_closed_form(gamma, p, t);
  }
  Eigen::VectorXd scale = design.cwiseAbs().colwise().maxCoeff().transpose();
  const Eigen::MatrixXd scaled = design * scale.cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  FitReport r;
  r.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                        : std::numeric_limits<double>::infinity();
  if (!(r.condition <= options.max_condition)) {
    throw IllConditionedFitError("fit_t1_expansion: condition number " +
                                 std::to_string(r.condition) +
                                 " exceeds limit; widen the sample window");
  }
  const Eigen::VectorXd coef = svd.solve(rhs).cwiseQuotient(scale);
  const auto m = special::connection_matrix(gamma, p);
  const double u = exact::u_function(gamma, p);
  r.b0 = coef(0);
  r.c = coef(4);
  r.b0_expected = g_closed_form(gamma, p, 1.0);
  r.c_expected = m.m21 * u;
  r.b0_rel_error = rel_deviation(r.b0, r.b0_expected);
  r.c_rel_error = rel_deviation(r.c, r.c_expected);
  return r;
}

Int1Report int1_check(double gamma, double t) {
  if (!(gamma > 0.0 && gamma < 2.0)) throw DomainError("int1_check: gamma outside (0, 2)");
  check_not_sqrt2(gamma);
  if (!(t >= 0.0 && t < 1.0)) throw DomainError("int1_check: t outside [0, 1)");
  const double q = 0.25 * gamma * gamma;
  const double a = -q;

  auto f = [q, t](double, double da, double) {
    const double sn = std::sin(0.5 * da);
    const double r_t = (1.0 - t) * (1.0 - t) + 4.0 * t * sn * sn;
    return std::pow(r_t, q) - std::pow(4.0 * sn * sn, q);
  };
  Int1Report r;
  r.quadrature = quad::integrate_singular(f, 0.0, kPi, 1e-13).value / kPi;

  const HypParams base{a, a, 1.0};
  const double f_one = special::hyp2f1_at_one(base);
  r.series = special::hyp2f1_series(base, t * t) - f_one;

  const double w = (1.0 - t) * (1.0 + t);
  const double c1 = std::exp(special::log_gamma(1.0 + 2.0 * q) -
                             2.0 * special::log_gamma(1.0 + q));
  const double g_minus = special::gamma(-q);
  const double c2 = special::gamma(-2.0 * q - 1.0) / (g_minus * g_minus);
  r.connection = c1 * special::hyp2f1_series({a, a, -2.0 * q}, w) - f_one +
                 c2 * std::pow(w, 1.0 + 2.0 * q) *
                     special::hyp2f1_series({1.0 + q, 1.0 + q, 2.0 + 2.0 * q}, w);

  r.max_deviation = std::max({std::abs(r.quadrature - r.series),
                              std::abs(r.quadrature - r.connection),
                              std::abs(r.series - r.connection)});
  return r;
}

Dl1Report dl1_limit(double gamma, const Dl1Options& options) {
  if (!(gamma > 0.0 && gamma < 2.0)) throw DomainError("dl1_limit: gamma outside (0, 2)");
  check_not_sqrt2(gamma);
  if (options.levels < 3) throw DomainError("dl1_limit: need at least 3 levels");
  if (!(options.eps0 > 0.0 && options.eps0 < 0.5)) {
    throw DomainError("dl1_limit: eps0 outside (0, 0.5)");
  }
  const double k = 0.25 * gamma * gamma;
  const double s = 1.0 + 2.0 * k;
  const int m = gamma * gamma < 2.0 ? 1 : 2;

  Dl1Report r;
  const double g_minus = special::gamma(-k);
  r.expected = special::gamma(-2.0 * k - 1.0) / (g_minus * g_minus);

  for (std::size_t i = 0; i < options.levels; ++i) {
    const double eps = options.eps0 / std::ldexp(1.0, static_cast<int>(i));
    // With r1 = |1 - e^{iu}|^2 and |t - e^{iu}|^2 = r1 (1 + delta), the
    // Taylor remainder is r1^k times
    //   m = 1: (1 + delta)^k - 1 + k eps
    //   m = 2: the same minus eps^2 (k (k - 1) + 2 k / r1) / 2.
    // For small delta both are expanded so the O(eps) and O(eps^2) pieces
    // cancel analytically: with T3 = sum_{j>=3} binom(k, j) delta^j,
    //   m = 1: k (k - 1) delta^2 / 2 + k eps^2 / r1 + T3
    //   m = 2: k (k - 1) (delta^2 - eps^2) / 2 + T3,
    // and delta^2 - eps^2 = (eps^2/r1) (eps^2/r1 - 2 eps).
    auto integrand = [=](double u) {
      const double sn = std::sin(0.5 * u);
      const double r1 = 4.0 * sn * sn;
      if (r1 == 0.0) return 0.0;
      const double a = eps * eps / r1;
      const double delta = a - eps;
      const double r1k = std::pow(r1, k);
      if (std::abs(delta) > 0.5) {
        double v = std::pow(eps * eps + (1.0 - eps) * r1, k) - r1k * (1.0 - k * eps);
        if (m == 2) {
          v -= 0.5 * eps * eps * (k * (k - 1.0) * r1k + 2.0 * k * std::pow(r1, k - 1.0));
        }
        return v;
      }
      double coef = 0.5 * k * (k - 1.0);
      double power = delta * delta;
      double t3 = 0.0;
      for (int j = 2; j < 80; ++j) {
        coef *= (k - j) / (j + 1.0);
        power *= delta;
        const double term = coef * power;
        t3 += term;
        if (std::abs(term) <= 1e-18 * std::abs(t3)) break;
      }
      const double head = m == 1 ? 0.5 * k * (k - 1.0) * delta * delta + k * a
                                 : 0.5 * k * (k - 1.0) * a * (a - 2.0 * eps);
      return r1k * (head + t3);
    };
    const auto breaks = geometric_breaks(eps);
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
      const double lo = breaks[j];
      auto f = [&](double x, double da, double) {
        return integrand(lo == 0.0 ? da : x);
      };
      total += quad::integrate_singular(f, lo, breaks[j + 1], 1e-10).value;
    }
    const double w = eps * (2.0 - eps);
    r.eps.push_back(eps);
    r.ratios.push_back(total / kPi / std::pow(w, s));
  }

  // Correction exponents: integers from the smooth part, m + 1 - s + j from
  // the first unsubtracted Taylor term.
  std::vector<double> exps;
  for (std::size_t j = 0; j < options.levels; ++j) {
    exps.push_back(static_cast<double>(j + 1));
    exps.push_back(static_cast<double>(m) + 1.0 - s + static_cast<double>(j));
  }
  std::sort(exps.begin(), exps.end());
  exps.erase(std::unique(exps.begin(), exps.end(),
                         [](double x, double y) { return std::abs(x - y) < 1e-9; }),
             exps.end());

  auto extrapolate = [&](std::size_t first, std::size_t count) {
    Eigen::MatrixXd a(count, count);
    Eigen::VectorXd b(count);
    for (std::size_t row = 0; row < count; ++row) {
      const double eps = r.eps[first + row];
      a(row, 0) = 1.0;
      for (std::size_t col = 1; col < count; ++col) a(row, col) = std::pow(eps, exps[col - 1]);
      b(row) = r.ratios[first + row];
    }
    return Eigen::VectorXd(a.colPivHouseholderQr().solve(b))(0);
  };
  r.estimate = extrapolate(0, options.levels);
  r.coarser_estimate = extrapolate(0, options.levels - 1);
  r.rel_error = rel_deviation(r.estimate, r.expected);
  return r;
}

ExpansionReport t1_expansion_check(double gamma, double p) {
  ExpansionReport r;
  r.fit = fit_t1_expansion(gamma, p);
  r.int1 = int1_check(gamma, 0.9);
  r.dl1 = dl1_limit(gamma);
  return r;
}

SmallTReport small_t_check(double gamma, double p, double t_max, std::size_t points) {
  if (!(t_max > 0.0 && t_max <= 1.0) || points == 0) {
    throw DomainError("small_t_check: bad window");
  }
  const double g0 = g_closed_form(gamma, p, 0.0);
  const auto hp = HypParams::from_gamma_p(gamma, p);
  SmallTReport r;
  r.k_expected = g0 * hp.A * hp.B / hp.C;
  r.k_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i <= points; ++i) {
    const double t = t_max * static_cast<double>(i) / static_cast<double>(points);
    const double k = std::abs(g_closed_form(gamma, p, t) - g0) / (t * t);
    r.k_max = std::max(r.k_max, k);
    r.k_min = std::min(r.k_min, k);
  }
  return r;
}

}  // namespace gmc::bpz

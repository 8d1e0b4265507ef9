#include "gmc/special_fn.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "gmc/errors.hpp"

namespace gmc::special {

namespace {

constexpr int kMaxSeriesTerms = 10000;
constexpr double kSeriesRelTol = 1e-16;

// Near-integer tolerance for the excess C - A - B and for pole detection on
// arguments assembled from floating-point gamma^2.
constexpr double kIntegerTol = 1e-12;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

bool near_integer(double x) {
  return std::abs(x - std::round(x)) < kIntegerTol;
}

void check_c(const HypParams& params) {
  if (is_nonpositive_integer(params.C)) {
    throw ParameterError("hyp2f1: C = " + fmt(params.C) +
                         " is a non-positive integer");
  }
}

void check_x(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("hyp2f1: x = " + fmt(x) + " outside [0, 1]");
  }
}

// Gamma in a numerator: a pole is an error naming the argument.
double numerator_gamma(const char* label, double arg) {
  if (arg <= 0.5 && near_integer(arg)) {
    throw PoleError(std::string("connection_matrix: ") + label +
                    " evaluated at pole " + fmt(arg));
  }
  return gamma(arg);
}

// Gamma in a denominator: 1/Gamma vanishes on poles.
double denominator_rgamma(double arg) {
  if (arg <= 0.5 && near_integer(arg)) return 0.0;
  return rgamma(arg);
}

}  // namespace

double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r > 1.0) {
    r -= 2.0;
  } else if (r <= -1.0) {
    r += 2.0;
  }
  if (r > 0.5) {
    r = 1.0 - r;
  } else if (r < -0.5) {
    r = -1.0 - r;
  }
  return std::sin(kPi * r);
}

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

double gamma(double x) {
  if (std::isnan(x)) return x;
  if (is_nonpositive_integer(x)) {
    throw PoleError("gamma: pole at x = " + fmt(x));
  }
  if (x < 0.5) {
    // Reflection.
    return kPi / (sin_pi(x) * gamma(1.0 - x));
  }
  if (x > 171.6) return std::numeric_limits<double>::infinity();
  return boost::math::tgamma(x);
}

double rgamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  return 1.0 / gamma(x);
}

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError("log_gamma: requires x > 0, got " + fmt(x));
  }
  return boost::math::lgamma(x);
}

// log G(1 + z) for z in [0, 1) from the Weierstrass product
//   G(1+z) = (2 pi)^(z/2) exp(-(z + (1 + euler) z^2) / 2)
//            prod_k (1 + z/k)^k exp(z^2 / (2k) - z),
// truncated after K factors. The remainder sum_{k>K} of
//   k log(1 + z/k) - z + z^2/(2k) = sum_{m>=3} (-1)^(m+1) z^m / (m k^(m-1))
// is added through Euler-Maclaurin tails of sum_{k>K} k^-s; with K = 100
// and z < 1 the neglected pieces are below 1e-18.
static double log_barnes_g_reduced(double z) {
  constexpr int kFactors = 100;
  constexpr int kTailOrders = 12;
  double sum = 0.0;
  for (int k = 1; k <= kFactors; ++k) {
    const double kd = static_cast<double>(k);
    sum += kd * std::log1p(z / kd) - z + z * z / (2.0 * kd);
  }
  const double kk = static_cast<double>(kFactors);
  double tail = 0.0;
  double zm = z * z;
  for (int m = 3; m <= kTailOrders; ++m) {
    zm *= z;
    const double s = static_cast<double>(m - 1);
    const double ks = std::pow(kk, -s);
    const double hurwitz = kk * ks / (s - 1.0) - 0.5 * ks +
                           s * ks / (12.0 * kk) -
                           s * (s + 1.0) * (s + 2.0) * ks / (720.0 * kk * kk * kk);
    const double sign = (m % 2 == 1) ? 1.0 : -1.0;
    tail += sign * zm / static_cast<double>(m) * hurwitz;
  }
  return 0.5 * z * std::log(kTwoPi) - 0.5 * (z + (1.0 + kEulerGamma) * z * z) +
         sum + tail;
}

double log_barnes_g(double x) {
  if (!(x > 0.0)) {
    throw DomainError("barnes_g: requires x > 0, got " + fmt(x));
  }
  // Write x = 1 + z and walk z into [0, 1) with G(1 + z) = Gamma(z) G(z).
  double z = x - 1.0;
  double acc = 0.0;
  while (z >= 1.0) {
    acc += log_gamma(z);
    z -= 1.0;
  }
  while (z < 0.0) {
    z += 1.0;
    acc -= log_gamma(z);
  }
  return acc + log_barnes_g_reduced(z);
}

double barnes_g(double x) { return std::exp(log_barnes_g(x)); }

HypParams HypParams::from_gamma_p(double gamma, double p) {
  const double g2 = gamma * gamma;
  return HypParams{-g2 * p / 4.0, -g2 / 4.0, g2 * (1.0 - p) / 4.0 + 1.0};
}

double hyp2f1_series(const HypParams& params, double x) {
  check_c(params);
  if (!(x >= 0.0 && x < 1.0)) {
    throw DomainError("hyp2f1_series: x = " + fmt(x) + " outside [0, 1)");
  }
  double sum = 1.0;
  double term = 1.0;
  for (int n = 0; n < kMaxSeriesTerms; ++n) {
    const double nd = static_cast<double>(n);
    term *= (params.A + nd) * (params.B + nd) / ((nd + 1.0) * (params.C + nd)) * x;
    sum += term;
    if (term == 0.0 || std::abs(term) < kSeriesRelTol * std::abs(sum)) {
      return sum;
    }
  }
  throw ConvergenceError("hyp2f1_series: no convergence within " +
                         std::to_string(kMaxSeriesTerms) + " terms at x = " +
                         fmt(x));
}

double hyp2f1_at_one(const HypParams& params) {
  check_c(params);
  const double s = params.excess();
  if (!(s > 0.0)) {
    throw DivergenceError("hyp2f1: series diverges at x = 1 (C - A - B = " +
                          fmt(s) + " <= 0)");
  }
  return gamma(params.C) * gamma(s) * rgamma(params.C - params.A) *
         rgamma(params.C - params.B);
}

double hyp2f1_connection(const HypParams& params, double x) {
  check_c(params);
  if (!(x > 0.0 && x <= 1.0)) {
    throw DomainError("hyp2f1_connection: x = " + fmt(x) + " outside (0, 1]");
  }
  const double s = params.excess();
  if (near_integer(s)) {
    throw PoleError("hyp2f1_connection: C - A - B = " + fmt(s) +
                    " is an integer; the two-term connection degenerates");
  }
  if (x == 1.0) return hyp2f1_at_one(params);
  const double y = 1.0 - x;
  const double gc = gamma(params.C);
  const double first = gc * gamma(s) * rgamma(params.C - params.A) *
                       rgamma(params.C - params.B) *
                       hyp2f1_series({params.A, params.B, 1.0 - s}, y);
  const double second_coeff =
      gc * gamma(-s) * rgamma(params.A) * rgamma(params.B);
  if (second_coeff == 0.0) return first;
  const double second =
      std::pow(y, s) * second_coeff *
      hyp2f1_series({params.C - params.A, params.C - params.B, 1.0 + s}, y);
  return first + second;
}

double hyp2f1(const HypParams& params, double x) {
  check_c(params);
  check_x(x);
  if (x == 0.0) return 1.0;
  if (x == 1.0) return hyp2f1_at_one(params);
  if (x <= 0.5) return hyp2f1_series(params, x);
  if (near_integer(params.excess())) {
    // Degenerate connection; the direct series still converges for x < 1.
    return hyp2f1_series(params, x);
  }
  return hyp2f1_connection(params, x);
}

ConnectionMatrix connection_matrix(double gamma_param, double p) {
  if (!(gamma_param > 0.0 && gamma_param < 2.0)) {
    throw DomainError("connection_matrix: gamma = " + fmt(gamma_param) +
                      " outside (0, 2)");
  }
  if (!(p <= 0.0)) {
    throw DomainError("connection_matrix: requires p <= 0, got " + fmt(p));
  }
  const double g2 = gamma_param * gamma_param;
  if (std::abs(g2 - 2.0) < kIntegerTol) {
    throw PoleError(
        "connection_matrix: Gamma(-1 - gamma^2/2) evaluated at pole -2 "
        "(gamma = sqrt(2))");
  }
  const double q = g2 / 4.0;

  const double g_1_2q = numerator_gamma("Gamma(1 + gamma^2/2)", 1.0 + 2.0 * q);
  const double g_c = numerator_gamma("Gamma(gamma^2 (1 - p)/4 + 1)",
                                     q * (1.0 - p) + 1.0);
  const double g_c2 = numerator_gamma("Gamma(gamma^2 (p - 1)/4 + 1)",
                                      q * (p - 1.0) + 1.0);
  const double g_m1 =
      numerator_gamma("Gamma(-1 - gamma^2/2)", -1.0 - 2.0 * q);

  ConnectionMatrix m;
  m.m11 = g_1_2q * g_c * denominator_rgamma(1.0 + q) *
          denominator_rgamma(q * (2.0 - p) + 1.0);
  m.m12 = g_1_2q * g_c2 * denominator_rgamma(1.0 + q) *
          denominator_rgamma(q * p + 1.0);
  m.m21 = g_m1 * g_c * denominator_rgamma(-q) * denominator_rgamma(-q * p);
  m.m22 = g_m1 * g_c2 * denominator_rgamma(-q) *
          denominator_rgamma(q * (p - 2.0));
  return m;
}

}  // namespace gmc::special

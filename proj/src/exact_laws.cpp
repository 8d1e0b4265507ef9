#include "gmc/exact_laws.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/bessel.hpp>

#include "gmc/errors.hpp"
#include "gmc/quadrature.hpp"
#include "gmc/special_fn.hpp"

namespace gmc::exact {

namespace {

using special::kPi;
using special::kTwoPi;
using special::log_gamma;

const double kLogTwoPi = std::log(kTwoPi);

void check_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 2.0)) {
    throw DomainError("gamma = " + std::to_string(gamma) + " outside (0, 2)");
  }
}

void check_moment(double gamma, double p) {
  check_gamma(gamma);
  if (!(p < 4.0 / (gamma * gamma))) {
    throw MomentBlowupError("moment of order p = " + std::to_string(p) +
                            " is infinite for gamma = " + std::to_string(gamma) +
                            " (requires p < 4/gamma^2)");
  }
}

double log_exact_moment(double gamma, double p) {
  const double q = 0.25 * gamma * gamma;
  return log_gamma(1.0 - p * q) - p * log_gamma(1.0 - q);
}

// 2 sin(x/2), the chord subtending an arc x in [0, pi].
double chord(double x) { return 2.0 * std::sin(0.5 * x); }

}  // namespace

double exact_moment(double gamma, double p) {
  check_moment(gamma, p);
  return std::exp(log_exact_moment(gamma, p));
}

double u_function(double gamma, double p) {
  check_moment(gamma, p);
  return std::exp(p * kLogTwoPi + log_exact_moment(gamma, p));
}

FbLaw::FbLaw(double gamma) : gamma_(gamma) {
  check_gamma(gamma);
  const double q = 0.25 * gamma * gamma;
  beta_ = special::gamma(1.0 - q);
  shape_ = 1.0 / q;
}

double FbLaw::density(double y) const {
  if (!(y > 0.0)) return 0.0;
  const double ly = std::log(beta_ * y);
  const double x = std::exp(-shape_ * ly);
  if (std::isinf(x)) return 0.0;
  return std::exp(std::log(shape_ * beta_) - (shape_ + 1.0) * ly - x);
}

double FbLaw::cdf(double y) const {
  if (!(y > 0.0)) return 0.0;
  return std::exp(-std::pow(beta_ * y, -shape_));
}

double FbLaw::ccdf(double y) const {
  if (!(y > 0.0)) return 1.0;
  return -std::expm1(-std::pow(beta_ * y, -shape_));
}

double FbLaw::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw DomainError("FbLaw::quantile: u outside [0, 1]");
  }
  if (u == 0.0) return 0.0;
  if (u == 1.0) return std::numeric_limits<double>::infinity();
  return std::pow(-std::log(u), -1.0 / shape_) / beta_;
}

double FbLaw::median() const { return quantile(0.5); }

double FbLaw::transform(double z) const { return std::pow(z, -1.0 / shape_) / beta_; }

double FbLaw::sample(mc::RngStream& stream) const { return transform(stream.exponential()); }

double shift_ratio(double gamma, double p) {
  check_gamma(gamma);
  if (!(p <= 0.0)) {
    throw DomainError("shift_ratio: requires p <= 0, got " + std::to_string(p));
  }
  const double q = 0.25 * gamma * gamma;
  return kTwoPi * std::exp(log_gamma(1.0 - p * q) - log_gamma(1.0 - q) -
                           log_gamma(1.0 - (p - 1.0) * q));
}

double morris_oracle(double gamma, int p) {
  if (p != 2 && p != 3) {
    throw DomainError("morris_oracle: p must be 2 or 3, got " + std::to_string(p));
  }
  check_moment(gamma, p);
  const double k = 0.5 * gamma * gamma;

  if (p == 2) {
    // (1/pi) int_0^pi (2 sin(phi/2))^{-k} d phi
    auto f = [k](double, double da, double) {
      const double c = chord(da);
      return c > 0.0 ? std::pow(c, -k) : 0.0;
    };
    return quad::integrate_singular(f, 0.0, kPi, 1e-13).value / kPi;
  }

  // Fix theta_3 = 0 and write the configuration through its three arcs
  // a1 + a2 + a3 = 2 pi. The integrand is symmetric in the arcs, so it is
  // enough to integrate over a1 <= a2 <= a3 (one of six orderings, and each
  // arc configuration arises from two point orderings). With a1 = r x,
  // a2 = r (1 - x), x in (0, 1/2), that region is 0 < r < 2 pi / (2 - x),
  // and chord(a3) = 2 sin(r / 2). All singular behaviour, including the
  // triple collision r -> 0, then sits on an integration endpoint.
  auto sinc_power = [k](double d) {
    const double h = 0.5 * d;
    return h == 0.0 ? 1.0 : std::pow(std::sin(h) / h, -k);
  };
  auto outer = [&](double x, double dx, double) {
    const double r_max = kTwoPi / (2.0 - x);
    // r^{alpha - 1} g(r) with g(0) = 1: the pure power is integrated exactly,
    // which keeps the quadrature well conditioned as alpha -> 0.
    const double alpha = 2.0 - 3.0 * k;
    auto inner = [&](double r, double dr, double) {
      const double g = sinc_power(r * x) * sinc_power(r * (1.0 - x)) * sinc_power(r);
      return std::pow(dr, alpha - 1.0) * (g - 1.0);
    };
    const double radial = std::pow(r_max, alpha) / alpha +
                          quad::integrate_singular(inner, 0.0, r_max, 1e-12).value;
    return std::pow(dx, -k) * std::pow(1.0 - x, -k) * radial;
  };
  const double integral = quad::integrate_singular(outer, 0.0, 0.5, 1e-11).value;
  return 12.0 * integral / (kTwoPi * kTwoPi);
}

double beta_moment(double a, double b, double s) {
  if (!(a > 0.0 && b > 0.0)) throw DomainError("beta_moment: requires a, b > 0");
  if (!(a + s > 0.0)) {
    throw MomentBlowupError("beta_moment: E[X^s] infinite for a + s <= 0");
  }
  return std::exp(log_gamma(a + s) + log_gamma(a + b) - log_gamma(a) -
                  log_gamma(a + b + s));
}

LawPair corollary_law_pair(double gamma, double p) {
  check_moment(gamma, p);
  const double q = 0.25 * gamma * gamma;
  LawPair r;
  r.moment = std::exp(log_gamma(1.0 - p * q) + log_gamma(1.0 + 2.0 * q) +
                      log_gamma(1.0 + (1.0 - p) * q) - p * log_gamma(1.0 - q) -
                      log_gamma(1.0 + q) - log_gamma(1.0 + (2.0 - p) * q));
  r.beta = {1.0 + q, q, -q};
  r.status = mc::Status::ProvedIdentity;
  return r;
}

LawPair conjecture_law_pair(double gamma, double p) {
  check_moment(gamma, p);
  const double q = 0.25 * gamma * gamma;
  const double a = 1.0 + 1.0 / q;
  const double b = 1.0 / q;
  LawPair r;
  r.moment = std::exp(log_exact_moment(gamma, p) + log_gamma(a - p) +
                      log_gamma(a + b) - log_gamma(a) - log_gamma(a + b - p));
  r.beta = {a, b, -1.0};
  r.status = mc::Status::Conjecture;
  return r;
}

double sample_product(const FbLaw& law, const BetaDecomposition& beta,
                      mc::RngStream& stream) {
  const double y = law.sample(stream);
  const double x = stream.beta_variate(beta.a, beta.b);
  return y * std::pow(x, beta.exponent);
}

double tail_constant(double gamma) {
  check_gamma(gamma);
  const double q = 0.25 * gamma * gamma;
  const double log_beta = std::log(special::gamma(1.0 - q));
  return std::exp((1.0 / q - 1.0) * kLogTwoPi - std::log(1.0 - q) - log_beta / q);
}

double tail_probability(double gamma, double t) {
  if (!(t > 0.0)) throw DomainError("tail_probability: requires t > 0");
  return FbLaw(gamma).ccdf(t / kTwoPi);
}

double critical_density(double y) {
  if (!(y > 0.0)) return 0.0;
  return std::exp(-1.0 / y) / (y * y);
}

double rescaled_density(double gamma, double y) {
  const double scale = 2.0 - gamma;
  return scale * FbLaw(gamma).density(scale * y);
}

double gumbel_cdf(double x) { return std::exp(-std::exp(-x)); }

double gumbel_sum_cdf(double x) {
  const double z = 2.0 * std::exp(-0.5 * x);
  if (z == 0.0) return 1.0;
  if (z > 700.0) return 0.0;
  return z * boost::math::cyl_bessel_k(1, z);
}

double gumbel_sum_median() {
  static const double median = [] {
    double lo = -10.0;
    double hi = 10.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
      const double mid = 0.5 * (lo + hi);
      (gumbel_sum_cdf(mid) < 0.5 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }();
  return median;
}

double gumbel_sum_variance() { return kPi * kPi / 3.0; }

}  // namespace gmc::exact

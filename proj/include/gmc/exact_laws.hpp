#ifndef GMC_EXACT_LAWS_HPP_
#define GMC_EXACT_LAWS_HPP_

#include "gmc/mc_engine.hpp"
#include "gmc/rng.hpp"

namespace gmc::exact {

/// E[Y_gamma^p] = Gamma(1 - p gamma^2/4) / Gamma(1 - gamma^2/4)^p.
/// Throws MomentBlowupError when p >= 4 / gamma^2.
double exact_moment(double gamma, double p);

/// U(gamma, p) = E[(int e^{gamma X/2} d theta)^p] = (2 pi)^p E[Y^p].
double u_function(double gamma, double p);

/// Law of the total mass Y_gamma: CDF(y) = exp(-(beta y)^{-4/gamma^2}),
/// beta = Gamma(1 - gamma^2/4).
class FbLaw {
 public:
  explicit FbLaw(double gamma);

  double gamma() const { return gamma_; }
  double beta() const { return beta_; }

  double density(double y) const;
  double cdf(double y) const;
  /// 1 - cdf(y), accurate in the upper tail.
  double ccdf(double y) const;
  double quantile(double u) const;
  double median() const;
  /// beta^{-1} z^{-gamma^2/4}; maps a standard exponential to Y.
  double transform(double z) const;
  double sample(mc::RngStream& stream) const;

 private:
  double gamma_;
  double beta_;
  double shape_;  // 4 / gamma^2
};

/// U(gamma, p) / U(gamma, p - 1)
///   = 2 pi Gamma(1 - p gamma^2/4) / (Gamma(1 - gamma^2/4) Gamma(1 - (p-1) gamma^2/4)).
/// Requires p <= 0.
double shift_ratio(double gamma, double p);

/// (1/2 pi)^p times the p-fold circular integral of
/// prod_{i<j} |e^{i theta_i} - e^{i theta_j}|^{-gamma^2/2}, by tanh-sinh
/// quadrature after removing the rotation. p in {2, 3}.
double morris_oracle(double gamma, int p);

/// Parameters of X ~ Beta(a, b) and the exponent applied to it.
struct BetaDecomposition {
  double a = 0.0;
  double b = 0.0;
  double exponent = 0.0;
};

/// Moment of Y * X^exponent with the decomposition parameters.
struct LawPair {
  double moment = 0.0;
  BetaDecomposition beta;
  mc::Status status = mc::Status::ProvedIdentity;
};

/// Weighted measure with |1 - e^{i theta}|^{gamma^2/2}: X ~ Beta(1 + g^2/4, g^2/4),
/// exponent -g^2/4. The moment is the closed form
///   Gamma(1-pg^2/4) Gamma(1+g^2/2) Gamma(1+(1-p)g^2/4)
///   / (Gamma(1-g^2/4)^p Gamma(1+g^2/4) Gamma(1+(2-p)g^2/4)).
LawPair corollary_law_pair(double gamma, double p);

/// Weighted measure with |1 - e^{i theta}|^2: X ~ Beta(1 + 4/g^2, 4/g^2),
/// exponent -1. Always carries Status::Conjecture.
LawPair conjecture_law_pair(double gamma, double p);

/// E[X^s] for X ~ Beta(a, b); requires a + s > 0.
double beta_moment(double a, double b, double s);

/// One draw of Y * X^exponent with independent Y ~ law, X ~ Beta(a, b).
double sample_product(const FbLaw& law, const BetaDecomposition& beta,
                      mc::RngStream& stream);

/// R_1(gamma) = (2 pi)^{4/g^2 - 1} / ((1 - g^2/4) Gamma(1 - g^2/4)^{4/g^2}).
double tail_constant(double gamma);

/// P(int e^{gamma X/2} d theta > t) = 1 - CDF(t / 2 pi).
double tail_probability(double gamma, double t);

/// Density of 2Y' in the critical limit: y^{-2} e^{-1/y}.
double critical_density(double y);

/// Density of Y_gamma / (2 - gamma).
double rescaled_density(double gamma, double y);

/// Standard Gumbel CDF exp(-e^{-x}).
double gumbel_cdf(double x);

/// CDF of the sum of two independent standard Gumbel variables,
/// 2 xi K_1(2 xi) with xi = e^{-x/2}.
double gumbel_sum_cdf(double x);

/// Median of the Gumbel sum law.
double gumbel_sum_median();

/// Variance of the Gumbel sum law, pi^2 / 3.
double gumbel_sum_variance();

}  // namespace gmc::exact

#endif  // GMC_EXACT_LAWS_HPP_

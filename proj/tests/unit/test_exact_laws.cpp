#include <cmath>
#include <functional>
#include <vector>

#include <gtest/gtest.h>

#include "gmc/errors.hpp"
#include "gmc/exact_laws.hpp"
#include "gmc/mc_engine.hpp"

namespace ex = gmc::exact;
namespace mc = gmc::mc;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

double tg_moment(double g, double p) {
  const double q = 0.25 * g * g;
  return std::tgamma(1.0 - p * q) / std::pow(std::tgamma(1.0 - q), p);
}

// int y^p f(y) dy in the variable x = ln y.
double density_moment(const ex::FbLaw& law, double p) {
  return simpson([&](double x) {
    const double y = std::exp(x);
    return std::pow(y, p + 1.0) * law.density(y);
  }, -12.0, 60.0, 400000);
}

double gumbel_pdf(double x) { return std::exp(-x - std::exp(-x)); }

// P(G1 + G2 <= x) by direct convolution.
double gumbel_sum_cdf_oracle(double x) {
  return simpson([x](double u) { return gumbel_pdf(u) * std::exp(-std::exp(-(x - u))); },
                 -8.0, 50.0, 200000);
}

}  // namespace

TEST(ExactMoment, TrivialOrders) {
  for (double g : {0.3, 1.0, 1.9}) {
    EXPECT_NEAR(ex::exact_moment(g, 0.0), 1.0, 1e-15);
    EXPECT_NEAR(ex::exact_moment(g, 1.0), 1.0, 1e-14);
  }
}

TEST(ExactMoment, MatchesLibmGamma) {
  for (double g : {0.5, 1.0, 1.5}) {
    for (double p : {-2.0, -1.0, 0.5, 1.0, 1.7}) {
      if (!(p < 4.0 / (g * g))) continue;
      EXPECT_LT(rel(ex::exact_moment(g, p), tg_moment(g, p)), 1e-12) << g << " " << p;
    }
  }
  EXPECT_LT(rel(ex::exact_moment(1.0, -1.0), std::tgamma(1.25) * std::tgamma(0.75)), 1e-13);
  EXPECT_LT(rel(ex::u_function(1.2, -1.5), std::pow(2.0 * M_PI, -1.5) * tg_moment(1.2, -1.5)),
            1e-12);
}

TEST(ExactMoment, SecondMomentAtOneIsReducedChordIntegral) {
  // (1/2 pi) int |1 - e^{i phi}|^{-1/2} d phi with phi = pi u^2 removing the
  // endpoint singularity.
  const double integral = simpson([](double u) {
    if (u == 0.0) return 2.0 * std::sqrt(M_PI);
    return std::pow(2.0 * std::sin(0.5 * M_PI * u * u), -0.5) * 2.0 * M_PI * u;
  }, 0.0, 1.0, 20000) / M_PI;
  EXPECT_LT(rel(ex::exact_moment(1.0, 2.0), integral), 1e-10);
  EXPECT_LT(rel(integral, std::tgamma(0.5) / std::pow(std::tgamma(0.75), 2)), 1e-10);
}

TEST(ExactMoment, BlowupThrows) {
  EXPECT_THROW(ex::exact_moment(1.0, 4.0), gmc::MomentBlowupError);
  EXPECT_THROW(ex::exact_moment(1.5, 2.0), gmc::MomentBlowupError);
  EXPECT_THROW(ex::exact_moment(2.0, 0.5), gmc::DomainError);
}

TEST(FbLaw, DensityNormalizedAndMoments) {
  for (double g : {0.5, 1.0, 1.5}) {
    const ex::FbLaw law(g);
    EXPECT_NEAR(density_moment(law, 0.0), 1.0, 1e-10) << g;
  }
  const ex::FbLaw law(1.0);
  for (double p : {-1.0, 0.5, 2.0}) {
    EXPECT_LT(rel(density_moment(law, p), ex::exact_moment(1.0, p)), 1e-8) << p;
  }
  EXPECT_EQ(law.density(0.0), 0.0);
  EXPECT_EQ(law.density(-1.0), 0.0);
}

TEST(FbLaw, CdfMedianQuantile) {
  for (double g : {0.4, 1.0, 1.8}) {
    const ex::FbLaw law(g);
    EXPECT_NEAR(law.beta(), std::tgamma(1.0 - 0.25 * g * g), 1e-13 * law.beta());
    const double median = std::pow(std::log(2.0), -0.25 * g * g) / law.beta();
    EXPECT_NEAR(law.median(), median, 1e-13 * median);
    EXPECT_NEAR(law.cdf(median), 0.5, 1e-14);
    for (double u : {1e-6, 0.1, 0.5, 0.9, 1.0 - 1e-9}) {
      EXPECT_NEAR(law.cdf(law.quantile(u)), u, 1e-12);
    }
    for (double y : {0.1, 1.0, 5.0, 1e3}) EXPECT_NEAR(law.cdf(y) + law.ccdf(y), 1.0, 1e-15);
    // Density is the derivative of the CDF.
    const double y = 1.3, h = 1e-5;
    EXPECT_NEAR((law.cdf(y + h) - law.cdf(y - h)) / (2 * h), law.density(y), 1e-8);
  }
}

TEST(FbLaw, SamplerTransform) {
  const ex::FbLaw law(1.3);
  EXPECT_DOUBLE_EQ(law.transform(1.0), 1.0 / law.beta());
}

TEST(FbLaw, SamplerKsAndMean) {
  const ex::FbLaw law(1.0);
  const auto draws = mc::run_replicas([&](mc::RngStream& s, std::size_t) { return law.sample(s); },
                                      1000000, 2024);
  const auto ks = mc::ks_one_sample(draws, [&](double y) { return law.cdf(y); });
  EXPECT_TRUE(ks.pass) << ks.statistic;
  const auto s = mc::summarize(draws);
  EXPECT_NEAR(s.mean, 1.0, 3.0 * s.std_error);
}

TEST(ShiftRatio, ClosedForm) {
  for (double g : {0.5, 1.0, 1.5}) {
    for (double p : {0.0, -0.5, -1.0, -2.0}) {
      const double lhs = ex::u_function(g, p) / ex::u_function(g, p - 1.0);
      EXPECT_LT(rel(lhs, ex::shift_ratio(g, p)), 1e-12);
      const double q = 0.25 * g * g;
      EXPECT_LT(rel(ex::shift_ratio(g, p),
                    2.0 * M_PI * std::tgamma(1.0 - p * q) /
                        (std::tgamma(1.0 - q) * std::tgamma(1.0 - (p - 1.0) * q))),
                1e-12);
    }
    const double q = 0.25 * g * g;
    EXPECT_LT(rel(ex::shift_ratio(g, 0.0), 2.0 * M_PI / (std::tgamma(1.0 - q) * std::tgamma(1.0 + q))),
              1e-13);
  }
  EXPECT_THROW(ex::shift_ratio(1.0, 0.5), gmc::DomainError);
}

TEST(ShiftRatio, RecursionClosure) {
  const double g = 1.1;
  double u = ex::u_function(g, -0.3);
  for (int k = 1; k <= 5; ++k) {
    u /= ex::shift_ratio(g, -0.3 - (k - 1));
    EXPECT_LT(rel(u / std::pow(2.0 * M_PI, -0.3 - k), ex::exact_moment(g, -0.3 - k)), 1e-10);
  }
}

TEST(Morris, TwoPoint) {
  for (double g : {0.6, 1.0, 1.3}) {
    EXPECT_LT(rel(ex::morris_oracle(g, 2), tg_moment(g, 2.0)), 1e-6) << g;
  }
  EXPECT_NEAR(ex::morris_oracle(1e-3, 2), 1.0, 1e-6);
}

TEST(Morris, ThreePoint) {
  EXPECT_LT(rel(ex::morris_oracle(0.8, 3), tg_moment(0.8, 3.0)), 1e-5);
  for (double g : {0.3, 1.0, 1.15}) {
    EXPECT_LT(rel(ex::morris_oracle(g, 3), tg_moment(g, 3.0)), 1e-8) << g;
  }
  EXPECT_THROW(ex::morris_oracle(1.0, 4), gmc::DomainError);
  EXPECT_THROW(ex::morris_oracle(1.2, 3), gmc::MomentBlowupError);
}

TEST(LawPairs, Corollary) {
  for (double g : {0.5, 1.0, 1.6}) {
    const double q = 0.25 * g * g;
    EXPECT_NEAR(ex::corollary_law_pair(g, 0.0).moment, 1.0, 1e-14);
    EXPECT_LT(rel(ex::corollary_law_pair(g, 1.0).moment,
                  std::tgamma(1.0 + 2.0 * q) / std::pow(std::tgamma(1.0 + q), 2)),
              1e-12);
    for (double p : {-1.5, 0.5, 1.0}) {
      const auto pair = ex::corollary_law_pair(g, p);
      EXPECT_EQ(pair.status, mc::Status::ProvedIdentity);
      EXPECT_DOUBLE_EQ(pair.beta.a, 1.0 + q);
      EXPECT_DOUBLE_EQ(pair.beta.b, q);
      EXPECT_DOUBLE_EQ(pair.beta.exponent, -q);
      const double s = -p * q;
      const double beta_moment = std::tgamma(1.0 + q + s) * std::tgamma(1.0 + 2.0 * q) /
                                 (std::tgamma(1.0 + q) * std::tgamma(1.0 + 2.0 * q + s));
      EXPECT_LT(rel(tg_moment(g, p) * beta_moment, pair.moment), 1e-10);
    }
  }
}

TEST(LawPairs, Conjecture) {
  for (double g : {0.8, 1.2, 1.7}) {
    const double r = 4.0 / (g * g);
    const double p1 = std::tgamma(1.0 + 2.0 * r) * std::tgamma(r) /
                      (std::tgamma(1.0 + r) * std::tgamma(2.0 * r));
    EXPECT_NEAR(p1, 2.0, 1e-12);
    EXPECT_NEAR(ex::conjecture_law_pair(g, 1.0).moment, 2.0, 1e-12);
    EXPECT_NEAR(ex::conjecture_law_pair(g, 0.0).moment, 1.0, 1e-14);
    const auto pair = ex::conjecture_law_pair(g, 0.5);
    EXPECT_EQ(pair.status, mc::Status::Conjecture);
    EXPECT_DOUBLE_EQ(pair.beta.exponent, -1.0);
  }
}

TEST(LawPairs, BetaMoment) {
  EXPECT_LT(rel(ex::beta_moment(2.0, 3.0, 1.0), 0.4), 1e-14);
  EXPECT_LT(rel(ex::beta_moment(1.25, 0.25, -0.5),
                std::tgamma(0.75) * std::tgamma(1.5) / (std::tgamma(1.25) * std::tgamma(1.0))),
            1e-13);
  EXPECT_THROW(ex::beta_moment(1.0, 1.0, -1.0), gmc::MomentBlowupError);
}

TEST(LawPairs, ProductSamplerMean) {
  const ex::FbLaw law(1.0);
  const auto pair = ex::corollary_law_pair(1.0, 1.0);
  const auto draws = mc::run_replicas(
      [&](mc::RngStream& s, std::size_t) { return ex::sample_product(law, pair.beta, s); }, 200000, 3);
  const auto s = mc::summarize(draws);
  EXPECT_NEAR(s.mean, pair.moment, 3.0 * s.std_error);
}

TEST(Tail, ConstantIdentity) {
  for (double g = 0.3; g < 1.95; g += 0.1) {
    const double q = 0.25 * g * g;
    const double r1 = ex::tail_constant(g);
    EXPECT_GT(r1, 0.0);
    const double lhs = 2.0 * M_PI * (1.0 - q) * r1;
    const double rhs = std::pow(2.0 * M_PI / std::tgamma(1.0 - q), 1.0 / q);
    EXPECT_LT(rel(lhs, rhs), 1e-12) << g;
  }
}

TEST(Tail, LeadingBehaviour) {
  for (double g : {0.8, 1.0, 1.6}) {
    const double q = 0.25 * g * g;
    const double beta = std::tgamma(1.0 - q);
    const double leading = 2.0 * M_PI * (1.0 - q) * ex::tail_constant(g);
    for (double t : {1e3, 1e4}) {
      const double x = std::pow(beta * t / (2.0 * M_PI), -1.0 / q);
      const double scaled = ex::tail_probability(g, t) * std::pow(t, 1.0 / q);
      EXPECT_LT(rel(scaled, leading), 2.0 * x + 1e-13 * (1.0 + 1.0 / q)) << g << " " << t;
    }
  }
}

TEST(Critical, DensityShape) {
  const double mass = simpson([](double x) {
    const double y = std::exp(x);
    return y * ex::critical_density(y);
  }, -6.0, 40.0, 200000);
  EXPECT_NEAR(mass, 1.0, 1e-9);
  EXPECT_GT(ex::critical_density(0.5), ex::critical_density(0.49));
  EXPECT_GT(ex::critical_density(0.5), ex::critical_density(0.51));
}

TEST(Critical, RescaledDensityApproachesLimit) {
  double previous = 1e300;
  for (double g : {1.9, 1.98, 1.998}) {
    double worst = 0.0;
    for (int j = 0; j < 200; ++j) {
      const double y = 0.2 + 4.8 * j / 199.0;
      worst = std::max(worst, rel(ex::rescaled_density(g, y), ex::critical_density(y)));
    }
    EXPECT_LT(worst, previous) << g;
    previous = worst;
  }
  // Change of variables on the density of Y.
  const ex::FbLaw law(1.95);
  EXPECT_NEAR(ex::rescaled_density(1.95, 0.7), 0.05 * law.density(0.05 * 0.7), 1e-14);
}

TEST(Gumbel, SumLaw) {
  EXPECT_NEAR(ex::gumbel_cdf(0.0), std::exp(-1.0), 1e-16);
  for (double x : {-2.0, 0.0, 0.9, 3.0, 7.0}) {
    EXPECT_NEAR(ex::gumbel_sum_cdf(x), gumbel_sum_cdf_oracle(x), 1e-10) << x;
  }
  EXPECT_NEAR(gumbel_sum_cdf_oracle(ex::gumbel_sum_median()), 0.5, 1e-10);
  EXPECT_NEAR(ex::gumbel_sum_variance(), M_PI * M_PI / 3.0, 1e-15);
}

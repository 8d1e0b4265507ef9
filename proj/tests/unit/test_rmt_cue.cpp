#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "gmc/errors.hpp"
#include "gmc/mc_engine.hpp"
#include "gmc/rmt_cue.hpp"

namespace mc = gmc::mc;
namespace rmt = gmc::rmt;
using cd = std::complex<double>;

namespace {

// Monic coefficients (lowest degree first) of Phi_N from the recursion.
std::vector<cd> monic_coefficients(const rmt::SzegoPolynomial& poly) {
  std::vector<cd> phi{1.0}, star{1.0};
  for (const cd a : poly.verblunsky) {
    std::vector<cd> next(phi.size() + 1, 0.0), next_star(phi.size() + 1, 0.0);
    for (std::size_t i = 0; i < phi.size(); ++i) {
      next[i + 1] += phi[i];
      next[i] -= a * star[i];
      next_star[i] += star[i];
      next_star[i + 1] -= std::conj(a) * phi[i];
    }
    phi = std::move(next);
    star = std::move(next_star);
  }
  return phi;
}

Eigen::VectorXcd roots(const std::vector<cd>& monic) {
  const int n = static_cast<int>(monic.size()) - 1;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -monic[i];
  return companion.eigenvalues();
}

double finite_n_moment(double alpha, std::size_t n) {
  double log_value = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    log_value += std::lgamma(j) + std::lgamma(j + alpha) - 2.0 * std::lgamma(j + 0.5 * alpha);
  }
  return std::exp(log_value);
}

}  // namespace

TEST(SampleCue, CoefficientShape) {
  mc::RngStream s(1, 0);
  const auto poly = rmt::sample_cue(7, s);
  ASSERT_EQ(poly.verblunsky.size(), 7u);
  for (std::size_t k = 0; k + 1 < 7; ++k) EXPECT_LT(std::abs(poly.verblunsky[k]), 1.0);
  EXPECT_NEAR(std::abs(poly.verblunsky.back()), 1.0, 1e-15);
  EXPECT_THROW(rmt::sample_cue(0, s), gmc::DomainError);
}

TEST(ModulusGrid, SizeOne) {
  mc::RngStream s(2, 0);
  const auto poly = rmt::sample_cue(1, s);
  const auto grid = rmt::char_poly_modulus_grid(poly, 16);
  for (std::size_t j = 0; j < 16; ++j) {
    EXPECT_NEAR(grid[j], std::abs(std::polar(1.0, 2.0 * M_PI * j / 16.0) - poly.verblunsky[0]),
                1e-15);
  }
  EXPECT_THROW(rmt::char_poly_modulus_grid(poly, 7), gmc::DomainError);
}

TEST(ModulusGrid, MatchesRootProduct) {
  mc::RngStream s(3, 0);
  for (std::size_t n : {2u, 4u, 6u}) {
    const auto poly = rmt::sample_cue(n, s);
    const auto z = roots(monic_coefficients(poly));
    for (int k = 0; k < z.size(); ++k) EXPECT_NEAR(std::abs(z[k]), 1.0, 1e-10);
    const std::size_t m = 8 * n;
    const auto grid = rmt::char_poly_modulus_grid(poly, m);
    for (std::size_t j = 0; j < m; ++j) {
      const cd e = std::polar(1.0, 2.0 * M_PI * j / static_cast<double>(m));
      double prod = 1.0;
      for (int k = 0; k < z.size(); ++k) prod *= std::abs(e - z[k]);
      EXPECT_NEAR(grid[j], prod, 1e-8) << n << " " << j;
    }
  }
}

TEST(SampleCue, TraceMomentsAreHaar) {
  constexpr std::size_t reps = 40000;
  const auto stats = mc::run_replicas(
      [](mc::RngStream& s, std::size_t) {
        const auto z = roots(monic_coefficients(rmt::sample_cue(5, s)));
        cd t1 = 0.0, t2 = 0.0;
        for (int k = 0; k < z.size(); ++k) {
          const cd u = z[k] / std::abs(z[k]);
          t1 += u;
          t2 += u * u;
        }
        return std::vector<double>{std::norm(t1), std::norm(t2), std::real(t1)};
      },
      reps, 4);
  std::vector<double> a(reps), b(reps), c(reps);
  for (std::size_t i = 0; i < reps; ++i) {
    a[i] = stats[i][0];
    b[i] = stats[i][1];
    c[i] = stats[i][2];
  }
  const auto sa = mc::summarize(a), sb = mc::summarize(b), sc = mc::summarize(c);
  EXPECT_NEAR(sa.mean, 1.0, 4.0 * sa.std_error);
  EXPECT_NEAR(sb.mean, 2.0, 4.0 * sb.std_error);
  EXPECT_NEAR(sc.mean, 0.0, 4.0 * sc.std_error);
}

TEST(SampleCue, SecondMomentOfModulus) {
  for (std::size_t n : {2u, 5u}) {
    const auto x = mc::run_replicas(
        [n](mc::RngStream& s, std::size_t) {
          const double v = rmt::char_poly_modulus_grid(rmt::sample_cue(n, s), 8 * n)[0];
          return v * v;
        },
        100000, 5 + n);
    const auto sx = mc::summarize(x);
    EXPECT_NEAR(sx.mean, n + 1.0, 4.0 * sx.std_error) << n;
  }
}

TEST(SampleCue, RotationInvariance) {
  constexpr std::size_t n = 8, m = 64;
  const auto pairs = mc::run_replicas(
      [](mc::RngStream& s, std::size_t) {
        const auto g = rmt::char_poly_modulus_grid(rmt::sample_cue(n, s), m);
        return std::vector<double>{g[0], g[m / 2]};
      },
      20000, 6);
  std::vector<double> a, b;
  for (std::size_t i = 0; i < pairs.size(); ++i) (i % 2 ? b : a).push_back(pairs[i][i % 2]);
  EXPECT_TRUE(mc::ks_two_sample(a, b).pass);
}

TEST(MomentExperiment, NormalizerMatchesFiniteProduct) {
  const auto r = rmt::moment_experiment(1.0, 1.5, 16, 128, 20000, 7);
  EXPECT_NEAR(r.normalizer, finite_n_moment(1.0, 16), 3.0 * r.normalizer_se);
  EXPECT_NEAR(r.scaled_normalizer, r.normalizer / std::pow(16.0, 0.25), 1e-12);
  EXPECT_NEAR(r.exact, std::tgamma(0.625) / std::pow(std::tgamma(0.75), 1.5), 1e-13);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(MomentExperiment, FirstMomentIsOne) {
  const auto r = rmt::moment_experiment(0.8, 1.0, 8, 64, 500, 8);
  EXPECT_NEAR(r.report.estimate, 1.0, 1e-12);
  EXPECT_NEAR(r.exact, 1.0, 1e-14);
}

TEST(MomentExperiment, BarnesLimitOfProduct) {
  // At alpha = 1 the limit is G(3/2)^2 / G(2) with G(3/2) = G(1/2) Gamma(1/2)
  // and G(1/2) = 2^{1/24} e^{1/8} pi^{-1/4} A^{-3/2}, A the Glaisher constant.
  const double glaisher = 1.28242712910062263687;
  const double g_half =
      std::pow(2.0, 1.0 / 24.0) * std::exp(0.125) * std::pow(M_PI, -0.25) * std::pow(glaisher, -1.5);
  const double limit = std::pow(g_half * std::sqrt(M_PI), 2);
  const double scaled = finite_n_moment(1.0, 1 << 16) / std::pow(65536.0, 0.25);
  EXPECT_NEAR(scaled / limit, 1.0, 1e-5);
}

TEST(MomentExperiment, WarningsAndErrors) {
  EXPECT_FALSE(rmt::moment_experiment(1.6, 0.5, 8, 64, 50, 1).warnings.empty());
  EXPECT_FALSE(rmt::moment_experiment(1.0, 2.5, 8, 64, 50, 1).warnings.empty());
  EXPECT_THROW(rmt::moment_experiment(1.0, 4.0, 8, 64, 50, 1), gmc::MomentBlowupError);
  EXPECT_THROW(rmt::moment_experiment(1.0, 2.0, 8, 64, 1, 1), gmc::DomainError);
  EXPECT_THROW(rmt::moment_experiment(1.0, 2.0, 8, 63, 10, 1), gmc::DomainError);
}

TEST(MaxExperiment, RecenteringAndShape) {
  EXPECT_NEAR(rmt::max_recentering(64), -std::log(64.0) + 0.75 * std::log(std::log(64.0)), 1e-15);
  const auto r = rmt::max_experiment(8, 64, 200, 9);
  ASSERT_EQ(r.samples.size(), 200u);
  EXPECT_NEAR(r.doubled_variance, 4.0 * r.variance, 1e-12);
  EXPECT_NEAR(r.report.estimate, r.doubled_variance, 1e-12);
  EXPECT_DOUBLE_EQ(r.median, mc::median(r.samples));
  EXPECT_THROW(rmt::max_experiment(4, 64, 10, 1), gmc::DomainError);
  EXPECT_THROW(rmt::max_experiment(8, 63, 10, 1), gmc::DomainError);
}

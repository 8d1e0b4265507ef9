#include <cmath>
#include <cstring>
#include <vector>

#include <gtest/gtest.h>

#include "gmc/errors.hpp"
#include "gmc/gff_circle.hpp"
#include "gmc/gmc_measure.hpp"
#include "gmc/mc_engine.hpp"

namespace chaos = gmc::chaos;
namespace field = gmc::field;
namespace mc = gmc::mc;
using Spec = chaos::ObservableSpec;

namespace {

field::FieldGrid constant_grid(std::size_t n, std::size_t m, double value) {
  return {n, m, std::vector<double>(m, value)};
}

// E[Y_{gamma,N}^2] on the M-point grid: the mean-one integrand makes the
// double sum collapse to (1/M) sum_k exp(gamma^2/4 C_N(2 pi k / M)).
double grid_second_moment(double gamma, std::size_t n, std::size_t m) {
  double sum = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    sum += std::exp(0.25 * gamma * gamma *
                    field::truncated_covariance(n, 2.0 * M_PI * k / static_cast<double>(m)));
  }
  return sum / static_cast<double>(m);
}

double grid_weight_mean(std::size_t m, double w) {
  double sum = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    sum += std::pow(2.0 * std::abs(std::sin(M_PI * j / static_cast<double>(m))), w);
  }
  return sum / static_cast<double>(m);
}

}  // namespace

TEST(TotalMass, ZeroField) {
  for (double g : {0.3, 1.0, 1.9}) {
    const auto s = chaos::total_mass(constant_grid(50, 200, 0.0), g);
    const double expected = std::exp(-0.25 * g * g * field::harmonic_number(50));
    EXPECT_NEAR(s.total_mass / expected, 1.0, 1e-13);
    EXPECT_NEAR(s.raw_integral / (2.0 * M_PI * expected), 1.0, 1e-13);
  }
}

TEST(TotalMass, ConstantShiftScalesExactly) {
  mc::RngStream s(2, 0);
  auto grid = field::evaluate_on_grid(field::sample_field(64, s), 512);
  const double base = chaos::total_mass(grid, 1.3).total_mass;
  for (double& v : grid.values) v += 0.7;
  EXPECT_NEAR(chaos::total_mass(grid, 1.3).total_mass / base, std::exp(0.65 * 0.7), 1e-14);
}

TEST(TotalMass, LogSumExpBranchStaysFinite) {
  auto grid = constant_grid(10, 64, 0.0);
  grid.values[5] = 1300.0;
  const auto s = chaos::total_mass(grid, 1.0);
  ASSERT_TRUE(std::isfinite(s.total_mass));
  EXPECT_NEAR(std::log(s.total_mass), 650.0 - 0.25 * field::harmonic_number(10) - std::log(64.0),
              1e-12);
  EXPECT_THROW(chaos::total_mass(grid, 2.0), gmc::DomainError);
}

TEST(TotalMass, MeanOneAndSecondMoment) {
  const std::vector<Spec> specs{Spec::total_mass(1.0)};
  const auto y = chaos::simulate(specs, 256, 2048, 100000, 31)[0];
  const auto s1 = mc::summarize(y);
  EXPECT_NEAR(s1.mean, 1.0, 3.0 * s1.std_error);
  std::vector<double> sq(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) sq[i] = y[i] * y[i];
  const auto s2 = mc::summarize(sq);
  EXPECT_NEAR(s2.mean, grid_second_moment(1.0, 256, 2048), 3.0 * s2.std_error);
}

TEST(TotalMass, SecondMomentGrowsWithModes) {
  double previous = 0.0;
  for (std::size_t n : {64u, 256u, 1024u}) {
    const double m2 = grid_second_moment(1.0, n, 8 * n);
    EXPECT_GT(m2, previous);
    EXPECT_LT(m2, std::tgamma(0.5) / std::pow(std::tgamma(0.75), 2));
    previous = m2;

    const std::vector<Spec> specs{Spec::total_mass(1.0)};
    const auto y = chaos::simulate(specs, n, 8 * n, 20000, 40 + n)[0];
    std::vector<double> sq(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) sq[i] = y[i] * y[i];
    const auto s = mc::summarize(sq);
    EXPECT_NEAR(s.mean, m2, 3.0 * s.std_error) << "n = " << n;
  }
}

TEST(Insertion, OriginIsBitIdenticalToTotalMass) {
  mc::RngStream s(3, 0);
  const auto grid = field::evaluate_on_grid(field::sample_field(100, s), 800);
  for (double g : {0.5, 1.5}) {
    const double a = chaos::insertion_observable(grid, g, 0.0, 0.5 * g * g);
    const double b = chaos::total_mass(grid, g).raw_integral;
    EXPECT_EQ(std::memcmp(&a, &b, sizeof a), 0);
  }
}

TEST(Insertion, ZeroFieldAtOne) {
  const double g = 1.2;
  const double w = 0.5 * g * g;
  const auto grid = constant_grid(100, 4096, 0.0);
  const double damp = std::exp(-0.25 * g * g * field::harmonic_number(100));
  const double value = chaos::insertion_observable(grid, g, 1.0, w);
  // (1/2 pi) int |1 - e^{i theta}|^w d theta = Gamma(1 + w) / Gamma(1 + w/2)^2
  const double continuum = 2.0 * M_PI * std::tgamma(1.0 + w) / std::pow(std::tgamma(1.0 + 0.5 * w), 2);
  EXPECT_NEAR(value / (damp * continuum), 1.0, 1e-4);
  EXPECT_NEAR(value, 2.0 * M_PI * damp * grid_weight_mean(4096, w), 1e-12);
}

TEST(Insertion, WeightsAccurateNearContact) {
  const auto w = chaos::insertion_weights(1 << 20, 1.0, 2.0);
  const double theta = 2.0 * M_PI / (1 << 20);
  EXPECT_NEAR(w[1] / (4.0 * std::pow(std::sin(0.5 * theta), 2)), 1.0, 1e-14);
  EXPECT_EQ(w[0], 0.0);
}

TEST(Insertion, MeanMatchesWeightAverage) {
  const double g = 1.0;
  const std::vector<Spec> specs{Spec::insertion(g, 1.0, 0.5 * g * g)};
  const auto x = chaos::simulate(specs, 256, 2048, 50000, 8)[0];
  const auto s = mc::summarize(x);
  EXPECT_NEAR(s.mean, grid_weight_mean(2048, 0.5), 3.0 * s.std_error);
  EXPECT_NEAR(grid_weight_mean(2048, 0.5), std::tgamma(1.5) / std::pow(std::tgamma(1.25), 2), 1e-4);
}

TEST(CriticalMass, ZeroField) {
  const auto c = chaos::critical_mass(constant_grid(30, 120, 0.0));
  const double h = field::harmonic_number(30);
  EXPECT_NEAR(c.raw, 2.0 * M_PI * h * std::exp(-h), 1e-14);
  EXPECT_NEAR(c.normalized, h * std::exp(-h), 1e-15);
}

TEST(CriticalMass, NegativeFractionShrinks) {
  const std::vector<Spec> specs{Spec::critical()};
  double previous = 1.0;
  for (std::size_t n : {16u, 256u, 4096u}) {
    const auto y = chaos::simulate(specs, n, 4 * n, 4000, 5)[0];
    const double frac =
        std::count_if(y.begin(), y.end(), [](double v) { return v <= 0.0; }) / 4000.0;
    EXPECT_LT(frac, previous) << "n = " << n;
    previous = frac;
  }
}

TEST(MaxField, ZeroFieldRecentering) {
  const double expected = -2.0 * std::log(8.0) + 1.5 * std::log(std::log(8.0));
  EXPECT_NEAR(chaos::max_field_statistic(constant_grid(8, 64, 0.0)), expected, 1e-15);
  EXPECT_THROW(chaos::max_field_statistic(constant_grid(2, 64, 0.0)), gmc::DomainError);
  EXPECT_THROW(chaos::max_field_statistic(constant_grid(8, 63, 0.0)), gmc::DomainError);
}

TEST(Simulate, WorkerInvariant) {
  const std::vector<Spec> specs{Spec::total_mass(0.8), Spec::insertion(1.1, 0.4, 0.605),
                                Spec::critical(), Spec::max_field()};
  const auto a = chaos::simulate(specs, 32, 256, 300, 17, 1);
  const auto b = chaos::simulate(specs, 32, 256, 300, 17, 5);
  for (std::size_t k = 0; k < specs.size(); ++k) {
    EXPECT_EQ(std::memcmp(a[k].data(), b[k].data(), 300 * sizeof(double)), 0) << k;
  }
}

#include "gmc/gmc_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gmc/errors.hpp"
#include "gmc/mc_engine.hpp"
#include "gmc/special_fn.hpp"

namespace gmc::chaos {

namespace {

using special::kTwoPi;

void check_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 2.0)) {
    throw DomainError("gamma = " + std::to_string(gamma) + " outside (0, 2)");
  }
}

// sum_j w_j exp(slope * v_j + offset), with w_j = 1 when weights is empty.
// Both total_mass and insertion_observable go through here so that unit
// weights reproduce the unweighted sum bit for bit.
double weighted_exp_sum(std::span<const double> values, double slope, double offset,
                        std::span<const double> weights) {
  double max_exponent = -std::numeric_limits<double>::infinity();
  for (double v : values) max_exponent = std::max(max_exponent, slope * v + offset);
  const double shift = max_exponent > kLogSumExpThreshold ? max_exponent : 0.0;
  double sum = 0.0;
  if (weights.empty()) {
    for (double v : values) sum += std::exp(slope * v + offset - shift);
  } else {
    for (std::size_t j = 0; j < values.size(); ++j) {
      sum += weights[j] * std::exp(slope * values[j] + offset - shift);
    }
  }
  return shift == 0.0 ? sum : sum * std::exp(shift);
}

}  // namespace

ChaosSample total_mass(const field::FieldGrid& grid, double gamma) {
  check_gamma(gamma);
  const double h = field::harmonic_number(grid.n_modes);
  const double sum = weighted_exp_sum(grid.values, 0.5 * gamma,
                                      -0.25 * gamma * gamma * h, {});
  ChaosSample s;
  s.gamma = gamma;
  s.n_modes = grid.n_modes;
  s.m_points = grid.m_points;
  s.raw_integral = kTwoPi / static_cast<double>(grid.m_points) * sum;
  s.total_mass = s.raw_integral / kTwoPi;
  return s;
}

std::vector<double> insertion_weights(std::size_t m_points, double t,
                                      double weight_power) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw DomainError("insertion_weights: t = " + std::to_string(t) + " outside [0, 1]");
  }
  if (!(weight_power >= 0.0)) {
    throw DomainError("insertion_weights: weight_power must be >= 0");
  }
  std::vector<double> w(m_points);
  const double half = 0.5 * weight_power;
  for (std::size_t j = 0; j < m_points; ++j) {
    const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(m_points);
    const double s = std::sin(0.5 * theta);
    const double r2 = (1.0 - t) * (1.0 - t) + 4.0 * t * s * s;
    w[j] = std::pow(r2, half);
  }
  return w;
}

double insertion_observable(const field::FieldGrid& grid, double gamma,
                            std::span<const double> weights) {
  check_gamma(gamma);
  if (weights.size() != grid.values.size()) {
    throw DomainError("insertion_observable: weight count does not match the grid");
  }
  const double h = field::harmonic_number(grid.n_modes);
  const double sum = weighted_exp_sum(grid.values, 0.5 * gamma,
                                      -0.25 * gamma * gamma * h, weights);
  return kTwoPi / static_cast<double>(grid.m_points) * sum;
}

double insertion_observable(const field::FieldGrid& grid, double gamma, double t,
                            double weight_power) {
  const auto w = insertion_weights(grid.m_points, t, weight_power);
  return insertion_observable(grid, gamma, w);
}

CriticalMass critical_mass(const field::FieldGrid& grid) {
  const double h = field::harmonic_number(grid.n_modes);
  double sum = 0.0;
  for (double v : grid.values) sum += (v - 2.0 * h) * std::exp(v - h);
  CriticalMass c;
  c.raw = -0.5 * kTwoPi / static_cast<double>(grid.m_points) * sum;
  c.normalized = c.raw / kTwoPi;
  return c;
}

double max_field_statistic(const field::FieldGrid& grid) {
  if (grid.n_modes < 3) {
    throw DomainError("max_field_statistic: requires n_modes >= 3");
  }
  if (grid.m_points < 8 * grid.n_modes) {
    throw DomainError("max_field_statistic: requires m_points >= 8 * n_modes");
  }
  const double log_n = std::log(static_cast<double>(grid.n_modes));
  const double vmax = *std::max_element(grid.values.begin(), grid.values.end());
  return vmax - 2.0 * log_n + 1.5 * std::log(log_n);
}

std::vector<std::vector<double>> simulate(std::span<const ObservableSpec> observables,
                                          std::size_t n_modes, std::size_t m_points,
                                          std::size_t replicas, std::uint64_t seed,
                                          unsigned workers) {
  using Kind = ObservableSpec::Kind;
  std::vector<std::vector<double>> weights(observables.size());
  for (std::size_t k = 0; k < observables.size(); ++k) {
    const auto& o = observables[k];
    if (o.kind == Kind::TotalMass || o.kind == Kind::Insertion) check_gamma(o.gamma);
    if (o.kind == Kind::Insertion) {
      weights[k] = insertion_weights(m_points, o.t, o.weight_power);
    }
  }

  auto task = [&](mc::RngStream& stream, std::size_t) {
    const auto f = field::sample_field(n_modes, stream);
    const auto grid = field::evaluate_on_grid(f, m_points);
    std::vector<double> out(observables.size());
    for (std::size_t k = 0; k < observables.size(); ++k) {
      const auto& o = observables[k];
      switch (o.kind) {
        case Kind::TotalMass:
          out[k] = total_mass(grid, o.gamma).total_mass;
          break;
        case Kind::Insertion:
          out[k] = insertion_observable(grid, o.gamma, weights[k]) / kTwoPi;
          break;
        case Kind::CriticalMass:
          out[k] = critical_mass(grid).normalized;
          break;
        case Kind::MaxField:
          out[k] = max_field_statistic(grid);
          break;
      }
    }
    return out;
  };
  const auto rows = mc::run_replicas(task, replicas, seed, workers);

  std::vector<std::vector<double>> result(observables.size(),
                                          std::vector<double>(replicas));
  for (std::size_t i = 0; i < replicas; ++i) {
    for (std::size_t k = 0; k < observables.size(); ++k) result[k][i] = rows[i][k];
  }
  return result;
}

}  // namespace gmc::chaos

#ifndef GMC_GMC_MEASURE_HPP_
#define GMC_GMC_MEASURE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gmc/gff_circle.hpp"

namespace gmc::chaos {

/// Exponents above this switch the quadrature sums to log-sum-exp form.
inline constexpr double kLogSumExpThreshold = 600.0;

/// One realization of the total mass Y_{gamma,N}.
struct ChaosSample {
  double gamma = 0.0;
  std::size_t n_modes = 0;
  std::size_t m_points = 0;
  double total_mass = 0.0;    // raw_integral / (2 pi)
  double raw_integral = 0.0;  // int e^{gamma X/2 - gamma^2 E[X^2]/8} d theta
};

/// Rectangle-rule total mass with the exact counterterm (gamma^2/4) H_N.
/// Requires gamma in (0, 2).
ChaosSample total_mass(const field::FieldGrid& grid, double gamma);

/// Grid weights |t - e^{i theta_j}|^weight_power, computed from
/// (1 - t)^2 + 4 t sin^2(theta/2) so they stay accurate near theta = 0.
std::vector<double> insertion_weights(std::size_t m_points, double t,
                                      double weight_power);

/// Unnormalized int |t - e^{i theta}|^w e^{gamma X/2 - gamma^2 E[X^2]/8} d theta.
/// At t = 0 the result is bit-identical to total_mass(grid, gamma).raw_integral.
double insertion_observable(const field::FieldGrid& grid, double gamma, double t,
                            double weight_power);

/// Same, with weights from insertion_weights(grid.m_points, t, w).
double insertion_observable(const field::FieldGrid& grid, double gamma,
                            std::span<const double> weights);

/// Derivative-martingale mass at gamma = 2:
///   raw = -(1/2) (2 pi / M) sum_j (X_j - 2 H_N) e^{X_j - H_N},
///   normalized = raw / (2 pi).
/// Either may be negative at finite N.
struct CriticalMass {
  double raw = 0.0;
  double normalized = 0.0;
};

CriticalMass critical_mass(const field::FieldGrid& grid);

/// max_j X_j - 2 ln N + (3/2) ln ln N. Requires N >= 3 and M >= 8 N.
double max_field_statistic(const field::FieldGrid& grid);

/// One scalar to extract from every simulated field.
struct ObservableSpec {
  enum class Kind { TotalMass, Insertion, CriticalMass, MaxField };
  Kind kind = Kind::TotalMass;
  double gamma = 1.0;
  double t = 0.0;
  double weight_power = 0.0;

  static ObservableSpec total_mass(double gamma) {
    return {Kind::TotalMass, gamma, 0.0, 0.0};
  }
  /// Normalized by 1/(2 pi).
  static ObservableSpec insertion(double gamma, double t, double weight_power) {
    return {Kind::Insertion, gamma, t, weight_power};
  }
  /// Normalized derivative-martingale mass.
  static ObservableSpec critical() { return {Kind::CriticalMass, 2.0, 0.0, 0.0}; }
  static ObservableSpec max_field() { return {Kind::MaxField, 0.0, 0.0, 0.0}; }
};

/// Simulates `replicas` independent fields (replica i on stream (seed, i)) and
/// evaluates every observable on each. Result[k][i] is observable k on
/// replica i. Output is independent of `workers`.
std::vector<std::vector<double>> simulate(std::span<const ObservableSpec> observables,
                                          std::size_t n_modes, std::size_t m_points,
                                          std::size_t replicas, std::uint64_t seed,
                                          unsigned workers = 0);

}  // namespace gmc::chaos

#endif  // GMC_GMC_MEASURE_HPP_

#ifndef GMC_RMT_CUE_HPP_
#define GMC_RMT_CUE_HPP_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gmc/mc_engine.hpp"
#include "gmc/rng.hpp"

namespace gmc::rmt {

/// Characteristic polynomial of an N x N CUE matrix through its recursion
/// coefficients: Phi_0 = Phi*_0 = 1,
///   Phi_{k+1}(z)  = z Phi_k(z) - alpha_k Phi*_k(z),
///   Phi*_{k+1}(z) = Phi*_k(z) - conj(alpha_k) z Phi_k(z),
/// and |p_N(theta)| = |Phi_N(e^{i theta})|.
struct SzegoPolynomial {
  std::size_t matrix_size = 0;
  std::vector<std::complex<double>> verblunsky;
};

/// |alpha_k|^2 ~ Beta(1, N - k - 1) with uniform phase for k < N - 1;
/// alpha_{N-1} uniform on the unit circle. Requires matrix_size >= 1.
SzegoPolynomial sample_cue(std::size_t matrix_size, mc::RngStream& stream);

/// |Phi_N| at theta_j = 2 pi j / M, j < M. Requires M >= 8 N.
std::vector<double> char_poly_modulus_grid(const SzegoPolynomial& poly,
                                           std::size_t m_points);

struct MomentExperiment {
  /// Estimate of E[(I / E I)^p] with I = (1/M) sum_j |p_N(theta_j)|^alpha.
  mc::McReport report;
  double exact = 0.0;              // Gamma(1 - p a^2/4) / Gamma(1 - a^2/4)^p
  double normalizer = 0.0;         // MC estimate of E|p_N|^alpha
  double normalizer_se = 0.0;
  double scaled_normalizer = 0.0;  // normalizer / N^{alpha^2/4}
  double scaled_normalizer_se = 0.0;
  std::vector<std::string> warnings;
};

/// Self-normalized moment of the |p_N|^alpha measure. The normalizer is the
/// replica mean of I, so p = 1 gives exactly 1. Warns when alpha leaves
/// (-1/2, sqrt 2) or when p alpha^2 >= 2 (infinite variance of I^p).
/// Throws MomentBlowupError when p >= 4 / alpha^2.
MomentExperiment moment_experiment(double alpha, double p, std::size_t matrix_size,
                                   std::size_t m_points, std::size_t replicas,
                                   std::uint64_t seed, unsigned workers = 0);

/// -ln N + (3/4) ln ln N.
double max_recentering(std::size_t matrix_size);

struct MaxExperiment {
  /// estimate = variance of 2 * statistic; KS of the median-aligned doubled
  /// statistic against the Gumbel sum law.
  mc::McReport report;
  std::vector<double> samples;  // max_j ln|p_N(theta_j)| + max_recentering(N)
  double median = 0.0;
  double variance = 0.0;          // of samples
  double doubled_variance = 0.0;  // of 2 * samples
};

/// Requires matrix_size >= 8 and m_points >= 8 N.
MaxExperiment max_experiment(std::size_t matrix_size, std::size_t m_points,
                             std::size_t replicas, std::uint64_t seed,
                             unsigned workers = 0);

}  // namespace gmc::rmt

#endif  // GMC_RMT_CUE_HPP_

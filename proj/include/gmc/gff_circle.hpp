#ifndef GMC_GFF_CIRCLE_HPP_
#define GMC_GFF_CIRCLE_HPP_

#include <cstddef>
#include <vector>

#include "gmc/rng.hpp"

namespace gmc::field {

/// Truncated Fourier realization of the circle GFF,
///   X_N(theta) = sum_{n=1..N} sqrt(2/n) (a_n cos n theta + b_n sin n theta),
/// stored through the standard-normal coefficients a_n, b_n (index n - 1).
struct FourierField {
  std::size_t n_modes = 0;
  std::vector<double> cos_coeffs;
  std::vector<double> sin_coeffs;
};

/// Field values on the uniform grid theta_j = 2 pi j / M.
struct FieldGrid {
  std::size_t n_modes = 0;
  std::size_t m_points = 0;
  std::vector<double> values;
};

/// H_N = sum_{n=1..N} 1/n. Pointwise variance of X_N is 2 H_N.
double harmonic_number(std::size_t n);

/// C_N(phi) = sum_{n=1..N} (2/n) cos(n phi).
double truncated_covariance(std::size_t n_modes, double phi);

/// Draws a_1, b_1, a_2, b_2, ... from the stream. Requires n_modes >= 1.
FourierField sample_field(std::size_t n_modes, mc::RngStream& stream);

/// Evaluates the field on M grid points with a real inverse FFT. Throws
/// AliasingError when M < 2 N. The result depends only on the coefficients.
FieldGrid evaluate_on_grid(const FourierField& field, std::size_t m_points);

}  // namespace gmc::field

#endif  // GMC_GFF_CIRCLE_HPP_

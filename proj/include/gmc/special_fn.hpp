#ifndef GMC_SPECIAL_FN_HPP_
#define GMC_SPECIAL_FN_HPP_

#include <utility>

namespace gmc::special {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 6.283185307179586476925286766559005768;
inline constexpr double kEulerGamma = 0.577215664901532860606512090082402431;

/// sin(pi x) with exact argument reduction, so zeros at integers are exact.
double sin_pi(double x);

/// True when x is 0, -1, -2, ...
bool is_nonpositive_integer(double x);

/// Gamma function. Throws PoleError at non-positive integers.
double gamma(double x);

/// 1 / Gamma(x); zero at the poles of Gamma.
double rgamma(double x);

/// log Gamma(x) for x > 0. Throws DomainError otherwise.
double log_gamma(double x);

/// log of the Barnes G-function for x > 0.
double log_barnes_g(double x);

/// Barnes G-function, G(1) = 1, G(x + 1) = Gamma(x) G(x). Defined for x > 0.
double barnes_g(double x);

/// Parameter triple of the Gauss hypergeometric series F(A, B; C; x).
struct HypParams {
  double A = 0.0;
  double B = 0.0;
  double C = 1.0;

  /// Parameters of the degenerate-insertion ODE:
  /// A = -gamma^2 p / 4, B = -gamma^2 / 4, C = gamma^2 (1 - p) / 4 + 1.
  static HypParams from_gamma_p(double gamma, double p);

  /// C - A - B, the exponent of (1 - x) in the second basis near x = 1.
  double excess() const { return C - A - B; }
};

/// F(A, B; C; x) for x in [0, 1]. Direct series for x <= 1/2, the two-term
/// connection formula around x = 1 for x > 1/2, Gauss summation at x = 1.
double hyp2f1(const HypParams& params, double x);

/// Direct power series, valid on [0, 1). Stops once a term falls below
/// 1e-16 of the partial sum; at most 10000 terms.
double hyp2f1_series(const HypParams& params, double x);

/// Connection-formula route for x in (0, 1]:
///   F(A,B;C;x) = G(C)G(C-A-B)/(G(C-A)G(C-B)) F(A,B;A+B-C+1;1-x)
///              + (1-x)^(C-A-B) G(C)G(A+B-C)/(G(A)G(B)) F(C-A,C-B;C-A-B+1;1-x).
/// Throws PoleError when C - A - B is an integer.
double hyp2f1_connection(const HypParams& params, double x);

/// F(A, B; C; 1) = G(C) G(C-A-B) / (G(C-A) G(C-B)); requires C - A - B > 0.
double hyp2f1_at_one(const HypParams& params);

/// Change of basis (C1, C2) -> (B1, B2) between the expansions of the
/// degenerate-insertion observable around t = 0 and around t = 1.
struct ConnectionMatrix {
  double m11 = 0.0;
  double m12 = 0.0;
  double m21 = 0.0;
  double m22 = 0.0;

  std::pair<double, double> apply(double c1, double c2) const {
    return {m11 * c1 + m12 * c2, m21 * c1 + m22 * c2};
  }
  double determinant() const { return m11 * m22 - m12 * m21; }
};

/// Entries of the basis change for gamma in (0, 2), p <= 0. A gamma function
/// in a numerator that hits a pole (gamma = sqrt(2), or an unlucky p) raises
/// PoleError naming the argument; a pole in a denominator makes the entry 0.
ConnectionMatrix connection_matrix(double gamma, double p);

}  // namespace gmc::special

#endif  // GMC_SPECIAL_FN_HPP_

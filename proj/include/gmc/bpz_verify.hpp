#ifndef GMC_BPZ_VERIFY_HPP_
#define GMC_BPZ_VERIFY_HPP_

#include <cstddef>
#include <functional>
#include <vector>

#include "gmc/special_fn.hpp"

namespace gmc::bpz {

/// G(gamma, p, t) = U(gamma, p) F(A, B; C; t^2) with the (gamma, p) map of
/// special::HypParams. Requires p <= 0 and t in [0, 1].
double g_closed_form(double gamma, double p, double t);

/// t(1 - t^2) G'' + (t^2 - 1) G' + 2(C - (A + B + 1) t^2) G' - 4 A B t G,
/// with 5-point central differences of step h, divided by max(|G(t)|, 1).
/// Requires t in (0.05, 0.95) and h in [1e-5, 1e-2].
double ode_residual(const std::function<double(double)>& g,
                    const special::HypParams& params, double t, double h);

/// Residual of the closed form itself.
double ode_residual(double gamma, double p, double t, double h = 1e-4);

struct CoefficientReport {
  double u = 0.0;           // U(gamma, p)
  double m21_u = 0.0;       // m21 U(gamma, p)
  double b2 = 0.0;          // 2 pi p Gamma(-g^2/2 - 1) / Gamma(-g^2/4)^2 U(gamma, p - 1)
  double b1 = 0.0;          // m11 U(gamma, p)
  double g_at_one = 0.0;    // g_closed_form(gamma, p, 1)
  double shift_lhs = 0.0;   // U(gamma, p) / U(gamma, p - 1)
  double shift_rhs = 0.0;   // exact::shift_ratio(gamma, p)
  double b2_deviation = 0.0;
  double b1_deviation = 0.0;
  double shift_deviation = 0.0;
  double max_deviation = 0.0;
};

/// Checks m21 U = B2, row 1 of the basis change against G(1), and the shift
/// relation. Deviations are relative. Requires p < 0.
CoefficientReport coefficient_identities(double gamma, double p);

struct FitOptions {
  double t_lo = 0.95;
  double t_hi = 0.999;
  std::size_t points = 40;
  /// Reject the fit when the scaled design matrix has a larger condition number.
  double max_condition = 1e12;
};

/// Least-squares fit of G near t = 1 in the variable w = 1 - t^2:
///   G = b0 + b1 w + b2 w^2 + b3 w^3 + c w^s + d w^{s+1},  s = 1 + gamma^2/2,
/// on Chebyshev nodes of [t_lo, t_hi].
struct FitReport {
  double b0 = 0.0;
  double c = 0.0;
  double b0_expected = 0.0;  // G(1)
  double c_expected = 0.0;   // m21 U
  double b0_rel_error = 0.0;
  double c_rel_error = 0.0;
  double condition = 0.0;
};

FitReport fit_t1_expansion(double gamma, double p, const FitOptions& options = {});

/// (1/2 pi) int_0^{2 pi} (h_u(t) - h_u(1)) du with h_u(t) = |t - e^{iu}|^{gamma^2/2},
/// evaluated three ways.
struct Int1Report {
  double quadrature = 0.0;
  double series = 0.0;      // F(a, a; 1; t^2) - F(a, a; 1; 1) by the direct series
  double connection = 0.0;  // expansion around t = 1
  double max_deviation = 0.0;
};

Int1Report int1_check(double gamma, double t);

struct Dl1Options {
  double eps0 = 0.02;
  std::size_t levels = 6;  // eps_i = eps0 / 2^i
};

/// Limit as t -> 1 of (1 - t^2)^{-s} (1/2 pi) int (h_u(t) - Taylor_m h_u(1)) du,
/// with m = 1 for gamma < sqrt 2 and m = 2 above, by generalized Richardson
/// extrapolation over the known correction exponents.
struct Dl1Report {
  double estimate = 0.0;
  double coarser_estimate = 0.0;  // same scheme with one level fewer
  double expected = 0.0;          // Gamma(-g^2/2 - 1) / Gamma(-g^2/4)^2
  double rel_error = 0.0;
  std::vector<double> eps;
  std::vector<double> ratios;
};

Dl1Report dl1_limit(double gamma, const Dl1Options& options = {});

struct ExpansionReport {
  FitReport fit;
  Int1Report int1;
  Dl1Report dl1;
};

/// The fit at (gamma, p), int1 at t = 0.9, and the DL1 limit.
/// Requires gamma in (0, 2) with gamma != sqrt 2, and p < 0.
ExpansionReport t1_expansion_check(double gamma, double p);

/// Behaviour near t = 0: K = max over t in (0, t_max] of |G(t) - G(0)| / t^2,
/// compared with the t^2 coefficient U A B / C of the closed form.
struct SmallTReport {
  double k_max = 0.0;
  double k_min = 0.0;
  double k_expected = 0.0;
};

SmallTReport small_t_check(double gamma, double p, double t_max = 0.1,
                           std::size_t points = 50);

}  // namespace gmc::bpz

#endif  // GMC_BPZ_VERIFY_HPP_

#include "gmc/rmt_cue.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gmc/errors.hpp"
#include "gmc/exact_laws.hpp"
#include "gmc/special_fn.hpp"

namespace gmc::rmt {

namespace {

using special::kTwoPi;

// Standard error of the unbiased sample variance, from the fourth central moment.
double variance_std_error(std::span<const double> x) {
  const auto m = mc::shape_moments(x);
  const double n = static_cast<double>(x.size());
  const double m4 = (m.excess_kurtosis + 3.0) * m.variance * m.variance;
  return std::sqrt(std::max(m4 - m.variance * m.variance, 0.0) / n);
}

}  // namespace

SzegoPolynomial sample_cue(std::size_t matrix_size, mc::RngStream& stream) {
  if (matrix_size < 1) throw DomainError("sample_cue: matrix_size must be >= 1");
  SzegoPolynomial poly;
  poly.matrix_size = matrix_size;
  poly.verblunsky.resize(matrix_size);
  for (std::size_t k = 0; k + 1 < matrix_size; ++k) {
    const double b = static_cast<double>(matrix_size - k - 1);
    const double rho2 = -std::expm1(std::log(stream.uniform()) / b);
    const double phase = kTwoPi * stream.uniform();
    poly.verblunsky[k] = std::polar(std::sqrt(rho2), phase);
  }
  poly.verblunsky[matrix_size - 1] = std::polar(1.0, kTwoPi * stream.uniform());
  return poly;
}

std::vector<double> char_poly_modulus_grid(const SzegoPolynomial& poly,
                                           std::size_t m_points) {
  const std::size_t n = poly.matrix_size;
  if (poly.verblunsky.size() != n) {
    throw DomainError("char_poly_modulus_grid: coefficient count does not match size");
  }
  if (m_points < 8 * n) {
    throw DomainError("char_poly_modulus_grid: requires m_points >= 8 * matrix_size");
  }
  // Split real/imaginary arrays with the grid as the inner loop so the
  // recursion step vectorizes.
  std::vector<double> zr(m_points), zi(m_points);
  std::vector<double> pr(m_points, 1.0), pi(m_points, 0.0);
  std::vector<double> sr(m_points, 1.0), si(m_points, 0.0);
  for (std::size_t j = 0; j < m_points; ++j) {
    const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(m_points);
    zr[j] = std::cos(theta);
    zi[j] = std::sin(theta);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double ar = poly.verblunsky[k].real();
    const double ai = poly.verblunsky[k].imag();
    for (std::size_t j = 0; j < m_points; ++j) {
      const double qr = zr[j] * pr[j] - zi[j] * pi[j];  // z Phi_k
      const double qi = zr[j] * pi[j] + zi[j] * pr[j];
      const double s_r = sr[j];
      const double s_i = si[j];
      pr[j] = qr - (ar * s_r - ai * s_i);
      pi[j] = qi - (ar * s_i + ai * s_r);
      sr[j] = s_r - (ar * qr + ai * qi);  // conj(alpha) z Phi_k
      si[j] = s_i - (ar * qi - ai * qr);
    }
  }
  std::vector<double> modulus(m_points);
  for (std::size_t j = 0; j < m_points; ++j) modulus[j] = std::hypot(pr[j], pi[j]);
  return modulus;
}

MomentExperiment moment_experiment(double alpha, double p, std::size_t matrix_size,
                                   std::size_t m_points, std::size_t replicas,
                                   std::uint64_t seed, unsigned workers) {
  const double a2 = alpha * alpha;
  if (a2 > 0.0 && !(p < 4.0 / a2)) {
    throw MomentBlowupError("moment_experiment: requires p < 4/alpha^2");
  }
  if (replicas < 2) throw DomainError("moment_experiment: needs at least 2 replicas");
  if (m_points < 8 * matrix_size) {
    throw DomainError("moment_experiment: requires m_points >= 8 * matrix_size");
  }
  MomentExperiment r;
  if (!(alpha > -0.5 && alpha < std::sqrt(2.0))) {
    r.warnings.push_back("alpha outside (-1/2, sqrt 2): the limit law is not expected to apply");
  }
  if (p * a2 >= 2.0) {
    r.warnings.push_back("heavy tail: p alpha^2 >= 2, so I^p has infinite variance and "
                         "the standard error is unreliable");
  }

  auto task = [&](mc::RngStream& stream, std::size_t) {
    const auto poly = sample_cue(matrix_size, stream);
    const auto mod = char_poly_modulus_grid(poly, m_points);
    double sum = 0.0;
    for (double v : mod) sum += std::pow(v, alpha);
    return sum / static_cast<double>(m_points);
  };
  const auto samples = mc::run_replicas(task, replicas, seed, workers);

  const auto s1 = mc::summarize(samples);
  std::vector<double> powered(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) powered[i] = std::pow(samples[i], p);
  const auto sp = mc::summarize(powered);
  const double ratio = sp.mean / std::pow(s1.mean, p);

  // Delta method for mean(I^p) / mean(I)^p.
  std::vector<double> influence(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    influence[i] = powered[i] / sp.mean - p * samples[i] / s1.mean;
  }
  const auto si = mc::summarize(influence);

  r.report.estimate = ratio;
  r.report.std_error = std::abs(ratio) * si.std_error;
  r.report.n_samples = replicas;
  r.report.seed = seed;
  r.report.status = mc::Status::Conjecture;
  r.exact = a2 > 0.0 ? exact::exact_moment(std::abs(alpha), p) : 1.0;
  r.normalizer = s1.mean;
  r.normalizer_se = s1.std_error;
  const double scale = std::pow(static_cast<double>(matrix_size), 0.25 * a2);
  r.scaled_normalizer = s1.mean / scale;
  r.scaled_normalizer_se = s1.std_error / scale;
  return r;
}

double max_recentering(std::size_t matrix_size) {
  const double log_n = std::log(static_cast<double>(matrix_size));
  return -log_n + 0.75 * std::log(log_n);
}

MaxExperiment max_experiment(std::size_t matrix_size, std::size_t m_points,
                             std::size_t replicas, std::uint64_t seed, unsigned workers) {
  if (matrix_size < 8) throw DomainError("max_experiment: requires matrix_size >= 8");
  if (m_points < 8 * matrix_size) {
    throw DomainError("max_experiment: requires m_points >= 8 * matrix_size");
  }
  const double shift = max_recentering(matrix_size);
  auto task = [&](mc::RngStream& stream, std::size_t) {
    const auto poly = sample_cue(matrix_size, stream);
    const auto mod = char_poly_modulus_grid(poly, m_points);
    return std::log(*std::max_element(mod.begin(), mod.end())) + shift;
  };
  MaxExperiment r;
  r.samples = mc::run_replicas(task, replicas, seed, workers);
  r.median = mc::median(r.samples);
  r.variance = mc::summarize(r.samples).variance;

  std::vector<double> doubled(r.samples.size());
  for (std::size_t i = 0; i < doubled.size(); ++i) doubled[i] = 2.0 * r.samples[i];
  r.doubled_variance = mc::summarize(doubled).variance;

  const double offset = exact::gumbel_sum_median() - 2.0 * r.median;
  std::vector<double> aligned(doubled.size());
  for (std::size_t i = 0; i < doubled.size(); ++i) aligned[i] = doubled[i] + offset;

  r.report.estimate = r.doubled_variance;
  r.report.std_error = variance_std_error(doubled);
  r.report.n_samples = replicas;
  r.report.seed = seed;
  r.report.status = mc::Status::Conjecture;
  if (aligned.size() >= 50) {
    const auto ks = mc::ks_one_sample(aligned, exact::gumbel_sum_cdf);
    r.report.ks_statistic = ks.statistic;
    r.report.ks_pass = ks.pass;
  }
  return r;
}

}  // namespace gmc::rmt

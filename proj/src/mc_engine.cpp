#include "gmc/mc_engine.hpp"

#include <cmath>

namespace gmc::mc {

std::string_view to_string(Status status) {
  switch (status) {
    case Status::ProvedIdentity:
      return "PROVED-IDENTITY";
    case Status::DerivedOracle:
      return "DERIVED-ORACLE";
    case Status::Conjecture:
      return "CONJECTURE";
  }
  return "UNKNOWN";
}

void McReport::set_ladder(std::vector<LadderRung> rungs) {
  for (std::size_t i = 1; i < rungs.size(); ++i) {
    if (!(rungs[i].resolution > rungs[i - 1].resolution)) {
      throw DomainError("McReport: ladder resolutions must strictly increase");
    }
  }
  ladder = std::move(rungs);
}

Summary summarize(std::span<const double> samples) {
  Summary s;
  s.n = samples.size();
  if (s.n == 0) return s;
  // Two-pass for accuracy; sample sizes here are at most a few million.
  double sum = 0.0;
  for (double x : samples) sum += x;
  s.mean = sum / static_cast<double>(s.n);
  if (s.n < 2) return s;
  double ss = 0.0;
  for (double x : samples) ss += (x - s.mean) * (x - s.mean);
  s.variance = ss / static_cast<double>(s.n - 1);
  s.std_error = std::sqrt(s.variance / static_cast<double>(s.n));
  return s;
}

ShapeMoments shape_moments(std::span<const double> samples) {
  ShapeMoments m;
  const auto n = static_cast<double>(samples.size());
  if (samples.empty()) return m;
  double sum = 0.0;
  for (double x : samples) sum += x;
  m.mean = sum / n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : samples) {
    const double d = x - m.mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  m.variance = m2;
  if (m2 > 0.0) {
    m.skewness = m3 / std::pow(m2, 1.5);
    m.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  }
  return m;
}

double quantile(std::span<const double> samples, double q) {
  if (samples.empty()) throw DomainError("quantile: empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("quantile: q outside [0, 1]");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double median(std::span<const double> samples) { return quantile(samples, 0.5); }

KsResult ks_one_sample(std::span<const double> samples,
                       const std::function<double(double)>& cdf) {
  if (samples.size() < 50) {
    throw DomainError("ks_one_sample: requires at least 50 samples");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max(d, std::max(above, below));
  }
  KsResult r;
  r.statistic = d;
  r.critical = kKsCoefficient / std::sqrt(n);
  r.pass = d <= r.critical;
  return r;
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw DomainError("ks_two_sample: empty sample");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const auto m = static_cast<double>(x.size());
  const auto n = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / m - static_cast<double>(j) / n));
  }
  KsResult r;
  r.statistic = d;
  r.critical = kKsCoefficient * std::sqrt((m + n) / (m * n));
  r.pass = d <= r.critical;
  return r;
}

Histogram histogram(std::span<const double> samples, double lo, double hi,
                    std::size_t bins) {
  if (!(hi > lo) || bins == 0) throw DomainError("histogram: bad range or bins");
  Histogram h;
  h.lo = lo;
  h.hi = hi;
  h.counts.assign(bins, 0);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (double x : samples) {
    if (x < lo) {
      ++h.underflow;
    } else if (x >= hi) {
      ++h.overflow;
    } else {
      auto k = static_cast<std::size_t>((x - lo) / width);
      if (k >= bins) k = bins - 1;
      ++h.counts[k];
    }
  }
  return h;
}

unsigned default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

}  // namespace gmc::mc

#ifndef GMC_MC_ENGINE_HPP_
#define GMC_MC_ENGINE_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "gmc/errors.hpp"
#include "gmc/rng.hpp"

namespace gmc::mc {

/// What kind of statement a report row checks.
enum class Status { ProvedIdentity, DerivedOracle, Conjecture };

std::string_view to_string(Status status);

struct LadderRung {
  double resolution = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
};

struct McReport {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  std::optional<double> ks_statistic;
  std::optional<bool> ks_pass;
  std::vector<LadderRung> ladder;
  Status status = Status::DerivedOracle;

  /// Throws DomainError unless resolutions are strictly increasing.
  void set_ladder(std::vector<LadderRung> rungs);
};

struct Summary {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double std_error = 0.0;  // sqrt(variance / n)
  std::size_t n = 0;
};

Summary summarize(std::span<const double> samples);

struct ShapeMoments {
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

ShapeMoments shape_moments(std::span<const double> samples);

/// Linear-interpolated empirical quantile, q in [0, 1].
double quantile(std::span<const double> samples, double q);
double median(std::span<const double> samples);

/// Asymptotic Kolmogorov coefficient for the 1% level.
inline constexpr double kKsCoefficient = 1.628;

struct KsResult {
  double statistic = 0.0;
  double critical = 0.0;
  bool pass = false;
};

/// sup |F_n - F| against a continuous CDF; critical value 1.628 / sqrt(n).
/// Requires n >= 50.
KsResult ks_one_sample(std::span<const double> samples,
                       const std::function<double(double)>& cdf);

/// Two-sample statistic; critical value 1.628 sqrt((m + n) / (m n)).
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::size_t> counts;
  std::size_t underflow = 0;
  std::size_t overflow = 0;
};

Histogram histogram(std::span<const double> samples, double lo, double hi,
                    std::size_t bins);

/// Hardware concurrency, at least 1.
unsigned default_workers();

/// Runs task(stream, i) for i in [0, n) on `workers` threads. Replica i always
/// draws from RngStream(seed, i) and its result lands at index i, so the
/// output depends only on (task, n, seed). A throwing replica aborts the run
/// with ReplicaError carrying the lowest failing index observed.
template <class Task>
auto run_replicas(Task&& task, std::size_t n, std::uint64_t seed,
                  unsigned workers = 0)
    -> std::vector<std::invoke_result_t<Task&, RngStream&, std::size_t>> {
  using T = std::invoke_result_t<Task&, RngStream&, std::size_t>;
  if (n == 0) throw DomainError("run_replicas: n must be >= 1");
  if (workers == 0) workers = default_workers();
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));

  std::vector<T> results(n);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::mutex failure_mutex;
  std::size_t failed_index = std::numeric_limits<std::size_t>::max();
  std::string failure_message;

  auto worker = [&]() {
    while (!abort.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      try {
        RngStream stream(seed, i);
        results[i] = task(stream, i);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (i < failed_index) {
          failed_index = i;
          failure_message = e.what();
        }
        abort.store(true, std::memory_order_relaxed);
      }
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failed_index != std::numeric_limits<std::size_t>::max()) {
    throw ReplicaError(failed_index, failure_message);
  }
  return results;
}

}  // namespace gmc::mc

#endif  // GMC_MC_ENGINE_HPP_

#ifndef GMC_RNG_HPP_
#define GMC_RNG_HPP_

#include <array>
#include <cstdint>
#include <limits>
#include <random>

namespace gmc::mc {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds: a keyed bijection on
/// 128-bit counters.
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

/// SplitMix64 finalizer; used to derive keys and child seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Counter-based random stream keyed by (seed, stream_id). Output block b is
/// philox(counter = {b, stream_id}, key = seed), so any (seed, stream_id)
/// pair reproduces the same sequence regardless of which thread draws it.
/// Satisfies UniformRandomBitGenerator.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    if (index_ == 2) refill();
    return buffer_[index_++];
  }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }
  double normal() { return normal_(*this); }
  double exponential();
  double gamma_variate(double shape);
  /// Beta(a, b) as X / (X + Y) with independent gamma variates.
  double beta_variate(double a, double b);

  /// Independent child stream with the same stream id and a derived key.
  RngStream substream(std::uint64_t tag) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  /// Number of 128-bit blocks consumed so far.
  std::uint64_t blocks() const { return block_; }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  PhiloxKey key_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int index_ = 2;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Deterministic child seed for a named sub-experiment.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

}  // namespace gmc::mc

#endif  // GMC_RNG_HPP_

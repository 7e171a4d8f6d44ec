#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace monospec {

namespace detail {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t rotl64(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace detail

// Deterministic random stream with value semantics: a copy replays the
// original sequence. The state is a xoshiro256++ generator seeded through
// splitmix64 from (master_seed, stream_index), so any (seed, index) pair
// names the same sequence on every platform and thread schedule.
class RngStream {
 public:
  explicit RngStream(std::uint64_t master_seed, std::uint64_t stream_index = 0)
      : master_seed_(master_seed), stream_index_(stream_index) {
    std::uint64_t sm = master_seed ^ detail::mix64(stream_index ^ 0xA3C59AC2ED9E86D4ULL);
    for (auto& word : state_) word = detail::splitmix64_next(sm);
  }

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  // Derived stream for sub-tasks (sum components, replications, walks).
  // Depends only on (master_seed, stream_index, key), never on how much of
  // this stream has been consumed.
  RngStream child(std::uint64_t key) const {
    std::uint64_t h = detail::mix64(stream_index_ ^ 0x8BADF00DDEADBEEFULL);
    h = detail::mix64(h + 0x9E3779B97F4A7C15ULL * (key + 1));
    return RngStream(master_seed_, h);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = detail::rotl64(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = detail::rotl64(state_[3], 45);
    return result;
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via the Marsaglia polar method; pairs are generated and
  // one value is cached, so draw counts stay deterministic per stream.
  double gaussian() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    cached_ = v * scale;
    has_cached_ = true;
    return u * scale;
  }

 private:
  std::array<std::uint64_t, 4> state_{};
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace monospec

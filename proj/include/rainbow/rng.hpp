#pragma once
#include <cstdint>
#include <vector>

namespace rainbow {

// Stream labels: (root, experiment, trial, object) fully determine every draw,
// so trials can run on any worker in any order and still reproduce bit-for-bit.
struct RandomSeed {
  std::uint64_t root = 0;
  std::uint64_t experiment = 0;
  std::uint64_t trial = 0;
  std::uint64_t object = 0;

  RandomSeed with_trial(std::uint64_t t) const {
    return {root, experiment, t, object};
  }
  RandomSeed with_object(std::uint64_t o) const {
    return {root, experiment, trial, o};
  }
};

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based generator: state is a keyed counter, each output is one mix.
class Stream {
public:
  explicit Stream(const RandomSeed& s) {
    std::uint64_t k = mix64(s.root);
    k = mix64(k ^ mix64(s.experiment + 0x1ULL));
    k = mix64(k ^ mix64(s.trial + 0x2ULL));
    k = mix64(k ^ mix64(s.object + 0x3ULL));
    state_ = k;
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  // [0, 1), 53 random bits
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // exactly uniform over {0..n-1} (rejection on the multiply-shift scheme)
  std::uint64_t next_below(std::uint64_t n) {
    if (n <= 1) return 0;
    #if defined(__SIZEOF_INT128__)
    std::uint64_t x = next_u64();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
    std::uint64_t lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      std::uint64_t thresh = (0 - n) % n;
      while (lo < thresh) {
        x = next_u64();
        m = static_cast<unsigned __int128>(x) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
    #else
    std::uint64_t lim = ~std::uint64_t{0} - (~std::uint64_t{0} % n) - 1;
    std::uint64_t x;
    do { x = next_u64(); } while (x > lim);
    return x % n;
    #endif
  }

  bool bernoulli(double p) {
    if (p <= 0.0) { next_u64(); return false; }
    if (p >= 1.0) { next_u64(); return true; }
    return next_u64() < static_cast<std::uint64_t>(p * 0x1.0p64);
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

private:
  std::uint64_t state_ = 0;
};

// Object labels used by the pipelines; fixed disjoint ranges so the
// seed->output map is a stable contract.
namespace object_id {
inline constexpr std::uint64_t partition = 1;
inline constexpr std::uint64_t permutation = 2;
inline constexpr std::uint64_t color_base = 1'000;              // + color index
inline constexpr std::uint64_t adversary_base = 2'000'000;      // + color index
inline constexpr std::uint64_t perm_stream_base = 1'000'000'000; // + draw index
inline constexpr std::uint64_t solver_restart_base = 3'000'000'000; // + restart
} // namespace object_id

} // namespace rainbow

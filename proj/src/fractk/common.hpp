#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace fractk {

// Geometry kernel scalar. All constructions carry irrational data (sqrt(3),
// sqrt(xi - 1/4), ...), so the kernel is plain binary floating point with at
// least a 53-bit mantissa; predicates take explicit tolerances.
#ifdef FRACTK_EXTENDED_PRECISION
using real = long double;
#else
using real = double;
#endif

inline constexpr real kDefaultEps = real(1e-9);

// Thrown when an iteration would exceed the configured object-count cap.
class cap_exceeded : public std::runtime_error {
public:
  explicit cap_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// splitmix64: the generator named in run configs so sample points are
// reproducible across implementations.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1) with 53 random bits.
  double uniform01() { return double(next() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

inline unsigned thread_budget() {
  static const unsigned budget = [] {
    if (const char* env = std::getenv("FRACTK_THREADS")) {
      long v = std::strtol(env, nullptr, 10);
      if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1u;
  }();
  return budget;
}

// Data-parallel loop over [0, n). The body must only write state owned by
// index i; results are merged by index, so the outcome is independent of the
// thread count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  unsigned threads = thread_budget();
  if (threads <= 1 || n < 256) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  if (threads > n) threads = static_cast<unsigned>(n);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace fractk

#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace rainbow {

// Bad arguments or violated preconditions.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A generator gave up (retry budget exhausted).
struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rational threshold num/den with den > 0, compared against integer counts.
struct Threshold {
  long long num = 0;
  long long den = 1;
};

inline bool meets(long long count, Threshold t) { return count * t.den >= t.num; }

// Least integer >= num/den (num >= 0).
inline long long ceil_value(Threshold t) { return (t.num + t.den - 1) / t.den; }

inline std::string to_string(Threshold t) {
  return t.den == 1 ? std::to_string(t.num) : std::to_string(t.num) + "/" + std::to_string(t.den);
}

// Accepts "p" or "p/q".
inline Threshold parse_threshold(const std::string& text) {
  Threshold t;
  size_t slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      t.num = std::stoll(text);
    } else {
      t.num = std::stoll(text.substr(0, slash));
      t.den = std::stoll(text.substr(slash + 1));
    }
  } catch (const std::exception&) {
    throw InputError("bad threshold '" + text + "' (want p or p/q)");
  }
  if (t.den <= 0) throw InputError("threshold denominator must be positive");
  if (t.num < 0) throw InputError("threshold must be non-negative");
  return t;
}

// d <= sqrt(n), as integers.
inline bool sq_at_most(long long d, long long n) { return d * d <= n; }

// x <= 2*sqrt(n), as integers (x >= 0).
inline bool at_most_two_sqrt(long long x, long long n) { return x * x <= 4 * n; }

// Least x >= 0 with x*x >= 4n, i.e. ceil(2*sqrt(n)).
inline int ceil_two_sqrt(long long n) {
  if (n <= 0) return 0;
  long long x = static_cast<long long>(std::ceil(2.0 * std::sqrt(static_cast<double>(n))));
  while (x * x < 4 * n) ++x;
  while (x > 0 && (x - 1) * (x - 1) >= 4 * n) --x;
  return static_cast<int>(x);
}

// deg > n/2 - sqrt(n), as integers.
inline bool exceeds_half_minus_sqrt(long long deg, long long n) {
  long long r = n - 2 * deg;  // condition <=> r < 2*sqrt(n)
  return r <= 0 || r * r < 4 * n;
}

// Deterministic RNG. Bounded draws use rejection sampling so the stream does
// not depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next() { return eng_(); }

  // Uniform in [0, n), n >= 1.
  uint64_t below(uint64_t n) {
    uint64_t limit = ~uint64_t{0} - ~uint64_t{0} % n;
    uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % n;
  }

  int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1))); }

  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& xs) {
    for (size_t i = xs.size(); i > 1; --i) std::swap(xs[i - 1], xs[below(i)]);
  }

 private:
  std::mt19937_64 eng_;
};

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream-splitting helper: one base seed, many independent substreams.
inline uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b = 0) {
  uint64_t s = splitmix64(base ^ 0x517cc1b727220a95ULL);
  s = splitmix64(s ^ a);
  s = splitmix64(s ^ b);
  return s;
}

inline int worker_count() {
  if (const char* env = std::getenv("RAINBOW_WORKERS")) {
    int w = std::atoi(env);
    if (w >= 1) return w;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

// Runs body(0..count-1) on a small thread pool. Tasks must be independent;
// callers keep determinism by writing into preallocated slots.
inline void parallel_for(int count, const std::function<void(int)>& body) {
  int workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace rainbow

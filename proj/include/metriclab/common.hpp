#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace metriclab {

using Vec = std::vector<double>;

// Error taxonomy. Structural errors mean the data cannot be interpreted at
// all (ragged matrix, NaN); argument errors mean a bad call; validation
// errors mean semantically invalid values; resource errors mean a configured
// budget was exceeded; usage errors are reserved for config/CLI input.
struct structural_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct argument_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace tol {
inline constexpr double metric = 1e-9;      // metric axioms, shortness
inline constexpr double weight = 1e-12;     // probability mass bookkeeping
inline constexpr double duality = 1e-7;     // primal/dual agreement
inline constexpr double nearest = 1e-9;     // min-norm-point certificate
}  // namespace tol

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// splitmix64. Used everywhere randomness is needed so that seeded runs are
// reproducible independent of the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  // independent stream for (seed, index) pairs, e.g. per-trial generators
  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    Rng mixer(seed ^ (0x632be59bd9b4e019ull * (index + 1)));
    return Rng(mixer.next_u64());
  }

 private:
  std::uint64_t state_;
};

// FNV-1a, used for byte-stable input digests in reports.
inline std::uint64_t fnv1a(const void* data, std::size_t len,
                           std::uint64_t h = 0xcbf29ce484222325ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t fnv1a(const std::string& s,
                           std::uint64_t h = 0xcbf29ce484222325ull) {
  return fnv1a(s.data(), s.size(), h);
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a) { return dot(a, a); }

inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }

// Euclidean distance with zero-padding of the shorter vector.
inline double euclidean(const Vec& a, const Vec& b) {
  const std::size_t n = std::max(a.size(), b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ai = i < a.size() ? a[i] : 0.0;
    const double bi = i < b.size() ? b[i] : 0.0;
    s += (ai - bi) * (ai - bi);
  }
  return std::sqrt(s);
}

// max-norm distance, zero-padded like euclidean()
inline double linf(const Vec& a, const Vec& b) {
  const std::size_t n = std::max(a.size(), b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ai = i < a.size() ? a[i] : 0.0;
    const double bi = i < b.size() ? b[i] : 0.0;
    m = std::max(m, std::fabs(ai - bi));
  }
  return m;
}

inline Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec scale(const Vec& a, double t) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * t;
  return r;
}

}  // namespace metriclab

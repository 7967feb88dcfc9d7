#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pureres {

/* Error taxonomy.  Every failure mode surfaced by the engine derives from
   EngineError so the CLI can map it to a JSON error object and exit 1. */
struct EngineError : std::runtime_error {
  std::string kind;
  EngineError(std::string k, const std::string& msg)
      : std::runtime_error(msg), kind(std::move(k)) {}
};

struct DimensionMismatch : EngineError {
  explicit DimensionMismatch(const std::string& m) : EngineError("DimensionMismatch", m) {}
};
struct SchemaViolation : EngineError {
  explicit SchemaViolation(const std::string& m) : EngineError("SchemaViolation", m) {}
};
struct PreconditionViolated : EngineError {
  explicit PreconditionViolated(const std::string& m) : EngineError("PreconditionViolated", m) {}
};
struct RetriesExhausted : EngineError {
  explicit RetriesExhausted(const std::string& m) : EngineError("RetriesExhausted", m) {}
};
struct PurityViolation : EngineError {
  explicit PurityViolation(const std::string& m) : EngineError("PurityViolation", m) {}
};
struct BettiMismatch : EngineError {
  explicit BettiMismatch(const std::string& m) : EngineError("BettiMismatch", m) {}
};
struct ScheduleTooTight : EngineError {
  int minimal_admissible;
  ScheduleTooTight(const std::string& m, int d) : EngineError("ScheduleTooTight", m), minimal_admissible(d) {}
};
struct FiberInjectivityFailed : EngineError {
  explicit FiberInjectivityFailed(const std::string& m) : EngineError("FiberInjectivityFailed", m) {}
};
struct IndeterminateEntry : EngineError {
  explicit IndeterminateEntry(const std::string& m) : EngineError("IndeterminateEntry", m) {}
};
struct NotInjective : EngineError {
  explicit NotInjective(const std::string& m) : EngineError("NotInjective", m) {}
};
struct RankTooSmall : EngineError {
  explicit RankTooSmall(const std::string& m) : EngineError("RankTooSmall", m) {}
};

/* Deterministic RNG: splitmix64.  std engines/distributions are
   implementation-defined, so all sampling goes through this to keep results
   bit-identical across platforms. */
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ULL) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, m).  Modulo bias over 64 bits is < 2^-32 for our m; we
  // care about determinism, not cryptographic uniformity.
  uint64_t next_below(uint64_t m) { return next_u64() % m; }

  // Derived stream: deterministic function of (parent seed, tag).
  Rng fork(uint64_t tag) const {
    uint64_t z = state_ ^ (0x632be59bd9b4e019ULL * (tag + 1));
    return Rng(z);
  }

 private:
  uint64_t state_;
};

// Exact binomial coefficient; the desk-scale values fit comfortably in
// int64, guarded anyway.
inline long long binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) {
    long long num = n - k + i;
    // r * num always divisible by i at this point
    if (r > (long long)4e18 / (num > 0 ? num : 1))
      throw EngineError("Overflow", "binomial overflow");
    r = r * num / i;
  }
  return r;
}

inline bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; (uint64_t)d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace pureres

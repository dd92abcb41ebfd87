// Shared helpers: error reporting and overflow-checked 64-bit arithmetic.
//
// Every computation in this library is exact. Entries stay tiny in practice
// (|a| <= 4 in the inputs, denominators <= 24), but normal-form reductions
// multiply entries, so all arithmetic that can grow goes through the checked
// helpers below and throws instead of wrapping.

#ifndef SMOOTHQUOT_COMMON_HPP_
#define SMOOTHQUOT_COMMON_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace smoothquot {

[[noreturn]] inline void fail(const std::string& msg) {
  throw std::runtime_error(msg);
}

[[noreturn]] inline void domain_fail(const std::string& msg) {
  throw std::invalid_argument(msg);
}

inline long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("exact integer overflow (add)");
  return r;
}

inline long long checked_sub(long long a, long long b) {
  long long r;
  if (__builtin_sub_overflow(a, b, &r))
    throw std::overflow_error("exact integer overflow (sub)");
  return r;
}

inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("exact integer overflow (mul)");
  return r;
}

inline long long gcd_ll(long long a, long long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline long long lcm_ll(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(a / gcd_ll(a, b), b < 0 ? -b : b);
}

// Euclidean remainder in [0, m).
inline long long mod_ll(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

// Deterministic 64-bit generator for the sampling checks (splitmix64).
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform value in [0, n).
  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

}  // namespace smoothquot

#endif

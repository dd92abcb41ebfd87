// Exact arithmetic in Z[zeta_m] for m in {1,2,3,4,6}, the only cyclotomic
// integer rings that occur as endomorphism rings of elliptic curves.
//
// An element is stored as a + b*zeta_m on the basis {1, zeta_m}. For m = 1, 2
// the root of unity is rational (1 resp. -1) and the canonical form keeps
// b = 0. Products are reduced with the minimal polynomial of zeta_m:
//   m=3: z^2 = -1 - z      m=4: z^2 = -1      m=6: z^2 = z - 1

#ifndef SMOOTHQUOT_CYCLOTOMIC_HPP_
#define SMOOTHQUOT_CYCLOTOMIC_HPP_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"

namespace smoothquot {

inline bool supported_cyclotomic_order(int m) {
  return m == 1 || m == 2 || m == 3 || m == 4 || m == 6;
}

struct Cyc {
  int m = 1;
  long long a = 0;  // coefficient of 1
  long long b = 0;  // coefficient of zeta_m

  Cyc() = default;
  Cyc(int m_, long long a_, long long b_ = 0) : m(m_), a(a_), b(b_) {
    if (!supported_cyclotomic_order(m))
      domain_fail("unsupported cyclotomic order m=" + std::to_string(m));
    normalize();
  }

  void normalize() {
    if (m == 1) {
      a = checked_add(a, b);
      b = 0;
    } else if (m == 2) {
      a = checked_sub(a, b);
      b = 0;
    }
  }

  static Cyc zero(int m) { return Cyc(m, 0); }
  static Cyc one(int m) { return Cyc(m, 1); }
  static Cyc zeta(int m) {
    if (m == 1) return Cyc(1, 1);
    if (m == 2) return Cyc(2, -1);
    return Cyc(m, 0, 1);
  }

  bool is_zero() const { return a == 0 && b == 0; }
  bool is_one() const { return a == 1 && b == 0; }

  bool operator==(const Cyc& o) const { return m == o.m && a == o.a && b == o.b; }
  bool operator!=(const Cyc& o) const { return !(*this == o); }
  // Total order used for canonical element sorting.
  bool operator<(const Cyc& o) const {
    if (a != o.a) return a < o.a;
    return b < o.b;
  }

  std::string str() const;
};

inline void require_same_ring(const Cyc& x, const Cyc& y) {
  if (x.m != y.m)
    domain_fail("mixed cyclotomic orders: m=" + std::to_string(x.m) +
                " vs m=" + std::to_string(y.m));
}

inline Cyc operator+(const Cyc& x, const Cyc& y) {
  require_same_ring(x, y);
  return Cyc(x.m, checked_add(x.a, y.a), checked_add(x.b, y.b));
}

inline Cyc operator-(const Cyc& x, const Cyc& y) {
  require_same_ring(x, y);
  return Cyc(x.m, checked_sub(x.a, y.a), checked_sub(x.b, y.b));
}

inline Cyc operator-(const Cyc& x) { return Cyc(x.m, -x.a, -x.b); }

inline Cyc operator*(const Cyc& x, const Cyc& y) {
  require_same_ring(x, y);
  long long ac = checked_mul(x.a, y.a);
  long long cross = checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.a));
  long long bd = checked_mul(x.b, y.b);
  switch (x.m) {
    case 1:
      // zeta = 1
      return Cyc(1, checked_add(checked_add(ac, cross), bd));
    case 2:
      // zeta = -1
      return Cyc(2, checked_add(checked_sub(ac, cross), bd));
    case 3:
      // z^2 = -1 - z
      return Cyc(3, checked_sub(ac, bd), checked_sub(cross, bd));
    case 4:
      // z^2 = -1
      return Cyc(4, checked_sub(ac, bd), cross);
    case 6:
      // z^2 = z - 1
      return Cyc(6, checked_sub(ac, bd), checked_add(cross, bd));
  }
  fail("unreachable cyclotomic order");
}

inline Cyc cyc_pow(Cyc x, long long k) {
  Cyc r = Cyc::one(x.m);
  while (k > 0) {
    if (k & 1) r = r * x;
    x = x * x;
    k >>= 1;
  }
  return r;
}

// zeta_m + zeta_m^{-1} = 2cos(2*pi/m), for any m >= 1. This is a rational
// integer exactly when m is one of 1, 2, 3, 4, 6 (degree phi(m)/2 over Q for
// m > 2), so the value is decided from that list; other m return nullopt.
inline std::optional<long long> real_trace_of_root(long long m) {
  switch (m) {
    case 1: return 2;
    case 2: return -2;
    case 3: return -1;
    case 4: return 0;
    case 6: return 1;
    default: return std::nullopt;
  }
}

// mu_m = {zeta_m^k : 0 <= k < m}, in exponent order.
inline std::vector<Cyc> roots_of_unity(int m) {
  if (!supported_cyclotomic_order(m))
    domain_fail("unsupported cyclotomic order m=" + std::to_string(m));
  std::vector<Cyc> out;
  Cyc z = Cyc::one(m);
  for (int k = 0; k < m; ++k) {
    out.push_back(z);
    z = z * Cyc::zeta(m);
  }
  return out;
}

// Z[zeta_3] and Z[zeta_6] are the same ring: zeta_6 = 1 + zeta_3 and
// zeta_3 = zeta_6 - 1. Rebasing keeps every element exact.
inline Cyc rebase(const Cyc& x, int target_m) {
  if (x.m == target_m) return x;
  if (x.m == 3 && target_m == 6)
    return Cyc(6, checked_sub(x.a, x.b), x.b);
  if (x.m == 6 && target_m == 3)
    return Cyc(3, checked_add(x.a, x.b), x.b);
  if ((x.m == 1 || x.m == 2) && x.b == 0 && supported_cyclotomic_order(target_m))
    return Cyc(target_m, x.a);
  domain_fail("no exact rebase from m=" + std::to_string(x.m) + " to m=" +
              std::to_string(target_m));
}

inline std::string Cyc::str() const {
  const char* sym = (m == 4) ? "i" : (m == 3) ? "w" : "z";
  if (b == 0) return std::to_string(a);
  std::string s;
  if (a != 0) s = std::to_string(a);
  if (b == 1) s += (a != 0 ? "+" : "");
  else if (b == -1) s += "-";
  else s += (a != 0 && b > 0 ? "+" : "") + std::to_string(b);
  s += sym;
  return s;
}

}  // namespace smoothquot

#endif

// Torsion points of a real torus R^n/Z^n with exact rational coordinates.
//
// A point is num/den with den >= 1 and num reduced into [0, den). Canonical
// form divides out gcd(den, num...), so den equals the exact order of the
// point and equal points compare equal componentwise.

#ifndef SMOOTHQUOT_TORSION_HPP_
#define SMOOTHQUOT_TORSION_HPP_

#include <string>
#include <vector>

#include "common.hpp"
#include "intmat.hpp"

namespace smoothquot {

struct TorsionVector {
  long long den = 1;
  std::vector<long long> num;

  TorsionVector() = default;
  explicit TorsionVector(int n) : den(1), num(n, 0) {}
  TorsionVector(long long den_, std::vector<long long> num_)
      : den(den_), num(std::move(num_)) {
    if (den <= 0) domain_fail("torsion denominator must be positive");
    canonicalize();
  }

  int dim() const { return static_cast<int>(num.size()); }
  bool is_zero() const {
    for (long long v : num)
      if (v != 0) return false;
    return true;
  }
  // Exact order in the torus (den of the canonical form).
  long long order() const { return den; }

  void canonicalize() {
    long long g = den;
    for (auto& v : num) {
      v = mod_ll(v, den);
      g = gcd_ll(g, v);
    }
    if (g > 1) {
      den /= g;
      for (auto& v : num) v /= g;
    }
  }

  TorsionVector rescaled(long long new_den) const {
    if (new_den % den != 0) domain_fail("incompatible torsion rescale");
    long long f = new_den / den;
    TorsionVector r;
    r.den = new_den;
    r.num.reserve(num.size());
    for (long long v : num) r.num.push_back(checked_mul(v, f));
    return r;
  }

  bool operator==(const TorsionVector& o) const { return den == o.den && num == o.num; }
  bool operator!=(const TorsionVector& o) const { return !(*this == o); }

  // Lexicographic order on the rational coordinates in [0,1)^n.
  bool operator<(const TorsionVector& o) const {
    int n = dim();
    for (int i = 0; i < n; ++i) {
      long long lhs = checked_mul(num[i], o.den);
      long long rhs = checked_mul(o.num[i], den);
      if (lhs != rhs) return lhs < rhs;
    }
    return false;
  }

  std::string str() const {
    std::string s = "(";
    for (int i = 0; i < dim(); ++i) {
      if (i) s += ",";
      if (num[i] == 0) s += "0";
      else s += std::to_string(num[i]) + "/" + std::to_string(den);
    }
    return s + ")";
  }
};

inline TorsionVector operator+(const TorsionVector& x, const TorsionVector& y) {
  if (x.dim() != y.dim()) domain_fail("torsion dimension mismatch");
  long long d = lcm_ll(x.den, y.den);
  TorsionVector a = x.rescaled(d), b = y.rescaled(d);
  std::vector<long long> n(x.dim());
  for (int i = 0; i < x.dim(); ++i) n[i] = checked_add(a.num[i], b.num[i]);
  return TorsionVector(d, std::move(n));
}

inline TorsionVector operator-(const TorsionVector& x) {
  std::vector<long long> n(x.num);
  for (auto& v : n) v = -v;
  return TorsionVector(x.den, std::move(n));
}

inline TorsionVector operator-(const TorsionVector& x, const TorsionVector& y) {
  return x + (-y);
}

inline TorsionVector operator*(long long k, const TorsionVector& x) {
  std::vector<long long> n(x.num);
  for (auto& v : n) v = checked_mul(k, v);
  return TorsionVector(x.den, std::move(n));
}

// Image of a torsion point under an integer matrix (an endomorphism of the
// torus), still a torsion point over the same denominator.
inline TorsionVector operator*(const IntMat& g, const TorsionVector& x) {
  if (g.cols != x.dim()) domain_fail("matrix/torsion shape mismatch");
  std::vector<long long> n = g * x.num;
  return TorsionVector(x.den, std::move(n));
}

}  // namespace smoothquot

#endif

// Dense integer matrices with exact (overflow-checked) arithmetic.
// Everything in this project is at most 8x8, so cofactor expansion is fine
// for determinants and adjugates.

#ifndef SMOOTHQUOT_INTMAT_HPP_
#define SMOOTHQUOT_INTMAT_HPP_

#include <initializer_list>
#include <string>
#include <vector>

#include "common.hpp"

namespace smoothquot {

struct IntMat {
  int rows = 0;
  int cols = 0;
  std::vector<long long> a;

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
  IntMat(int r, int c, std::initializer_list<long long> vals)
      : rows(r), cols(c), a(vals) {
    if (static_cast<int>(a.size()) != r * c) domain_fail("bad initializer size");
  }

  long long& operator()(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  long long operator()(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static IntMat identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMat zero(int r, int c) { return IntMat(r, c); }

  bool operator==(const IntMat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
  bool operator!=(const IntMat& o) const { return !(*this == o); }

  bool is_zero() const {
    for (long long v : a)
      if (v != 0) return false;
    return true;
  }

  IntMat transposed() const {
    IntMat t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::string str() const {
    std::string s = "[";
    for (int i = 0; i < rows; ++i) {
      s += (i ? "; " : "");
      for (int j = 0; j < cols; ++j)
        s += (j ? "," : "") + std::to_string((*this)(i, j));
    }
    return s + "]";
  }
};

inline IntMat operator*(const IntMat& x, const IntMat& y) {
  if (x.cols != y.rows) domain_fail("matrix shape mismatch in product");
  IntMat r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      long long v = x(i, k);
      if (v == 0) continue;
      for (int j = 0; j < y.cols; ++j)
        r(i, j) = checked_add(r(i, j), checked_mul(v, y(k, j)));
    }
  return r;
}

inline IntMat operator+(const IntMat& x, const IntMat& y) {
  if (x.rows != y.rows || x.cols != y.cols) domain_fail("matrix shape mismatch in sum");
  IntMat r(x.rows, x.cols);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = checked_add(x.a[i], y.a[i]);
  return r;
}

inline IntMat operator-(const IntMat& x, const IntMat& y) {
  if (x.rows != y.rows || x.cols != y.cols) domain_fail("matrix shape mismatch in diff");
  IntMat r(x.rows, x.cols);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = checked_sub(x.a[i], y.a[i]);
  return r;
}

inline IntMat operator*(long long s, const IntMat& x) {
  IntMat r(x.rows, x.cols);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = checked_mul(s, x.a[i]);
  return r;
}

inline std::vector<long long> operator*(const IntMat& x, const std::vector<long long>& v) {
  if (x.cols != static_cast<int>(v.size())) domain_fail("matrix/vector shape mismatch");
  std::vector<long long> r(x.rows, 0);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j)
      r[i] = checked_add(r[i], checked_mul(x(i, j), v[j]));
  return r;
}

inline IntMat mat_pow(IntMat x, long long k) {
  if (x.rows != x.cols) domain_fail("matrix power needs a square matrix");
  IntMat r = IntMat::identity(x.rows);
  while (k > 0) {
    if (k & 1) r = r * x;
    x = x * x;
    k >>= 1;
  }
  return r;
}

inline long long det(const IntMat& m) {
  if (m.rows != m.cols) domain_fail("determinant of non-square matrix");
  int n = m.rows;
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  if (n == 2)
    return checked_sub(checked_mul(m(0, 0), m(1, 1)), checked_mul(m(0, 1), m(1, 0)));
  long long d = 0;
  for (int j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    IntMat sub(n - 1, n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c)
        if (c != j) sub(r - 1, cc++) = m(r, c);
    }
    long long term = checked_mul(m(0, j), det(sub));
    d = (j % 2 == 0) ? checked_add(d, term) : checked_sub(d, term);
  }
  return d;
}

// adj(M) * M = det(M) * I.
inline IntMat adjugate(const IntMat& m) {
  if (m.rows != m.cols) domain_fail("adjugate of non-square matrix");
  int n = m.rows;
  IntMat adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      IntMat sub(n - 1, n - 1);
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (int c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          sub(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      long long cof = det(sub);
      adj(j, i) = ((i + j) % 2 == 0) ? cof : -cof;
    }
  return adj;
}

// Inverse of a matrix with determinant +-1.
inline IntMat unimodular_inverse(const IntMat& m) {
  long long d = det(m);
  if (d != 1 && d != -1) domain_fail("matrix is not unimodular");
  IntMat inv = adjugate(m);
  if (d == -1)
    for (auto& v : inv.a) v = -v;
  return inv;
}

}  // namespace smoothquot

#endif

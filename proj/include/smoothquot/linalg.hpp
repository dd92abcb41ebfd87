// Exact lattice linear algebra: Smith and Hermite normal forms, saturated
// sublattices of Z^n, and complete solution of A*x = t (mod Z^n) on the
// torus. This is the machinery behind images/kernels of 1-g and behind
// fixed-locus computations.

#ifndef SMOOTHQUOT_LINALG_HPP_
#define SMOOTHQUOT_LINALG_HPP_

#include <algorithm>
#include <optional>
#include <vector>

#include "intmat.hpp"
#include "torsion.hpp"

namespace smoothquot {

// ---------------------------------------------------------------------------
// Smith normal form: U*A*V = D, U and V unimodular, D diagonal with
// d1 | d2 | ... and nonnegative entries. Pivoting always selects the
// smallest-magnitude nonzero entry (ties by lowest row, then column), which
// makes the decomposition deterministic.

struct Smith {
  IntMat U, D, V;
  int rank() const {
    int r = 0, n = std::min(D.rows, D.cols);
    while (r < n && D(r, r) != 0) ++r;
    return r;
  }
  std::vector<long long> divisors() const {
    std::vector<long long> d;
    for (int i = 0; i < rank(); ++i) d.push_back(D(i, i));
    return d;
  }
};

namespace detail {

inline void swap_rows(IntMat& m, int i, int j) {
  if (i == j) return;
  for (int c = 0; c < m.cols; ++c) std::swap(m(i, c), m(j, c));
}
inline void swap_cols(IntMat& m, int i, int j) {
  if (i == j) return;
  for (int r = 0; r < m.rows; ++r) std::swap(m(r, i), m(r, j));
}
inline void add_row(IntMat& m, int dst, int src, long long f) {
  if (f == 0) return;
  for (int c = 0; c < m.cols; ++c)
    m(dst, c) = checked_add(m(dst, c), checked_mul(f, m(src, c)));
}
inline void add_col(IntMat& m, int dst, int src, long long f) {
  if (f == 0) return;
  for (int r = 0; r < m.rows; ++r)
    m(r, dst) = checked_add(m(r, dst), checked_mul(f, m(r, src)));
}
inline void negate_row(IntMat& m, int i) {
  for (int c = 0; c < m.cols; ++c) m(i, c) = -m(i, c);
}

// Smallest-magnitude nonzero entry of A[k.., k..]; false if that block is 0.
inline bool find_pivot(const IntMat& m, int k, int& pi, int& pj) {
  long long best = 0;
  bool found = false;
  for (int i = k; i < m.rows; ++i)
    for (int j = k; j < m.cols; ++j) {
      long long v = m(i, j) < 0 ? -m(i, j) : m(i, j);
      if (v != 0 && (!found || v < best)) {
        best = v;
        pi = i;
        pj = j;
        found = true;
      }
    }
  return found;
}

}  // namespace detail

inline Smith smith_normal_form(const IntMat& A) {
  Smith s{IntMat::identity(A.rows), A, IntMat::identity(A.cols)};
  IntMat& D = s.D;
  int n = std::min(A.rows, A.cols);
  for (int k = 0; k < n; ++k) {
    for (;;) {
      int pi, pj;
      if (!detail::find_pivot(D, k, pi, pj)) { k = n; break; }
      detail::swap_rows(D, k, pi);
      detail::swap_rows(s.U, k, pi);
      detail::swap_cols(D, k, pj);
      detail::swap_cols(s.V, k, pj);
      bool clean = true;
      for (int i = k + 1; i < D.rows; ++i)
        if (D(i, k) != 0) {
          long long q = D(i, k) / D(k, k);
          detail::add_row(D, i, k, -q);
          detail::add_row(s.U, i, k, -q);
          if (D(i, k) != 0) clean = false;
        }
      for (int j = k + 1; j < D.cols; ++j)
        if (D(k, j) != 0) {
          long long q = D(k, j) / D(k, k);
          detail::add_col(D, j, k, -q);
          detail::add_col(s.V, j, k, -q);
          if (D(k, j) != 0) clean = false;
        }
      if (!clean) continue;
      // Entire remaining block must be divisible by the pivot.
      int bi = -1, bj = -1;
      for (int i = k + 1; i < D.rows && bi < 0; ++i)
        for (int j = k + 1; j < D.cols; ++j)
          if (D(i, j) % D(k, k) != 0) { bi = i; bj = j; break; }
      if (bi < 0) break;
      detail::add_row(D, k, bi, 1);
      detail::add_row(s.U, k, bi, 1);
      (void)bj;
    }
    if (k >= n) break;
    if (D(k, k) < 0) {
      detail::negate_row(D, k);
      detail::negate_row(s.U, k);
    }
  }
  for (int k = 0; k < n; ++k)
    if (D(k, k) < 0) {
      detail::negate_row(D, k);
      detail::negate_row(s.U, k);
    }
  return s;
}

// ---------------------------------------------------------------------------
// Row-style Hermite normal form: the canonical basis of the lattice spanned
// by the rows. Pivots are positive, entries above a pivot are reduced into
// [0, pivot), zero rows are dropped.

inline IntMat hermite_rows(const IntMat& A) {
  IntMat m = A;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    for (;;) {
      int best = -1;
      long long bv = 0;
      for (int i = r; i < m.rows; ++i) {
        long long v = m(i, c) < 0 ? -m(i, c) : m(i, c);
        if (v != 0 && (best < 0 || v < bv)) { best = i; bv = v; }
      }
      if (best < 0) break;
      detail::swap_rows(m, r, best);
      bool done = true;
      for (int i = r + 1; i < m.rows; ++i)
        if (m(i, c) != 0) {
          detail::add_row(m, i, r, -(m(i, c) / m(r, c)));
          if (m(i, c) != 0) done = false;
        }
      if (done) break;
    }
    if (m(r, c) == 0) continue;
    if (m(r, c) < 0) detail::negate_row(m, r);
    for (int i = 0; i < r; ++i) {
      long long q = m(i, c) >= 0 ? m(i, c) / m(r, c)
                                 : -((-m(i, c) + m(r, c) - 1) / m(r, c));
      detail::add_row(m, i, r, -q);
    }
    ++r;
  }
  IntMat out(r, m.cols);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < m.cols; ++j) out(i, j) = m(i, j);
  return out;
}

// ---------------------------------------------------------------------------
// Sublattices of Z^n, stored as a Hermite-normal basis in the rows.

struct Sublattice {
  int ambient = 0;
  IntMat basis;  // rank x ambient, Hermite normal form

  Sublattice() = default;
  explicit Sublattice(int n) : ambient(n), basis(0, n) {}

  static Sublattice from_rows(const IntMat& rows) {
    Sublattice s;
    s.ambient = rows.cols;
    s.basis = hermite_rows(rows);
    return s;
  }

  static Sublattice full(int n) {
    Sublattice s;
    s.ambient = n;
    s.basis = IntMat::identity(n);
    return s;
  }

  int rank() const { return basis.rows; }
  bool operator==(const Sublattice& o) const {
    return ambient == o.ambient && basis == o.basis;
  }
  bool operator<(const Sublattice& o) const {
    if (basis.rows != o.basis.rows) return basis.rows < o.basis.rows;
    return basis.a < o.basis.a;
  }

  // Smallest saturated sublattice containing this one (same rational span,
  // torsion-free quotient). Rows i < rank of V^{-1} from the SNF of the
  // basis span the saturation.
  Sublattice saturation() const {
    if (rank() == 0) return *this;
    Smith s = smith_normal_form(basis);
    IntMat vinv = unimodular_inverse(s.V);
    IntMat rows(s.rank(), ambient);
    for (int i = 0; i < s.rank(); ++i)
      for (int j = 0; j < ambient; ++j) rows(i, j) = vinv(i, j);
    return from_rows(rows);
  }

  // Integer vectors orthogonal to every basis row; saturated by construction.
  Sublattice perp() const {
    if (rank() == 0) return full(ambient);
    Smith s = smith_normal_form(basis);
    int k = s.rank();
    IntMat rows(ambient - k, ambient);
    for (int j = k; j < ambient; ++j)
      for (int i = 0; i < ambient; ++i) rows(j - k, i) = s.V(i, j);
    return from_rows(rows);
  }

  bool contains_vector(const std::vector<long long>& v) const {
    // Reduce v by the HNF rows; lands in the lattice iff remainder is zero.
    std::vector<long long> w = v;
    int row = 0;
    for (int c = 0; c < ambient && row < rank(); ++c) {
      if (basis(row, c) == 0) continue;
      if (w[c] % basis(row, c) == 0) {
        long long q = w[c] / basis(row, c);
        for (int j = 0; j < ambient; ++j)
          w[j] = checked_sub(w[j], checked_mul(q, basis(row, j)));
      }
      ++row;
    }
    for (long long x : w)
      if (x != 0) return false;
    return true;
  }
};

// Is the torsion point on the subtorus (span of S tensor R + Z^n)/Z^n?
// Exactly when every perp row pairs integrally with it. S must be saturated.
inline bool on_subtorus(const TorsionVector& x, const Sublattice& perp_of_span) {
  for (int i = 0; i < perp_of_span.rank(); ++i) {
    long long acc = 0;
    for (int j = 0; j < x.dim(); ++j)
      acc = checked_add(acc, checked_mul(perp_of_span.basis(i, j), x.num[j]));
    if (acc % x.den != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Image lattice A*Z^n inside Z^m, plus its saturation.

struct ImageLattice {
  Sublattice lattice;
  Sublattice saturated;
};

inline ImageLattice image_lattice(const IntMat& A) {
  Sublattice img = Sublattice::from_rows(A.transposed());
  return {img, img.saturation()};
}

// ---------------------------------------------------------------------------
// Full solution set of A*x = t (mod Z^n) on the torus R^n/Z^n: finitely many
// torsion translates of one saturated kernel sublattice, or empty. Substitute
// x = V*y; then D*y = U*t (mod Z^m) splits into one congruence per
// coordinate. Representatives are emitted in lexicographic order.

struct CongruenceSolution {
  bool solvable = false;
  std::vector<TorsionVector> reps;  // nonempty iff solvable, sorted
  Sublattice kernel;                // saturated span of the solution set

  long long finite_count() const { return static_cast<long long>(reps.size()); }
};

inline CongruenceSolution solve_lattice_congruence(const IntMat& A,
                                                   const TorsionVector& t) {
  if (A.rows != t.dim()) domain_fail("congruence shape mismatch");
  int n = A.cols;
  Smith s = smith_normal_form(A);
  int r = s.rank();

  CongruenceSolution out;
  out.kernel = Sublattice(n);

  std::vector<long long> ut = s.U * t.num;  // numerators over t.den
  // Rows past the rank force integrality of (U*t)_i.
  for (int i = r; i < A.rows; ++i)
    if (ut[i] % t.den != 0) return out;

  // Kernel: columns of V past the rank.
  {
    IntMat rows(n - r, n);
    for (int j = r; j < n; ++j)
      for (int i = 0; i < n; ++i) rows(j - r, i) = s.V(i, j);
    out.kernel = Sublattice::from_rows(rows);
  }

  long long L = 1, count = 1;
  for (int i = 0; i < r; ++i) {
    L = lcm_ll(L, s.D(i, i));
    count = checked_mul(count, s.D(i, i));
    if (count > 200000) fail("congruence solution set too large");
  }
  long long big = checked_mul(t.den, L);

  std::vector<long long> idx(r, 0);
  std::vector<long long> y(n, 0);
  for (long long step = 0; step < count; ++step) {
    for (int i = 0; i < r; ++i) {
      long long d = s.D(i, i);
      // y_i = (ut_i/den + j)/d, expressed over the common denominator big
      y[i] = checked_mul(checked_add(ut[i], checked_mul(idx[i], t.den)), L / d);
    }
    std::vector<long long> x(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < r; ++j)
        x[i] = checked_add(x[i], checked_mul(s.V(i, j), y[j]));
    out.reps.emplace_back(big, std::move(x));
    for (int i = r - 1; i >= 0; --i) {
      if (++idx[i] < s.D(i, i)) break;
      idx[i] = 0;
    }
  }
  std::sort(out.reps.begin(), out.reps.end());
  out.reps.erase(std::unique(out.reps.begin(), out.reps.end()), out.reps.end());
  out.solvable = true;
  return out;
}

// ---------------------------------------------------------------------------
// Intersection of the subtori induced by two saturated sublattices. The
// intersection is an extension of a finite group by a subtorus; both parts
// come out of one Smith normal form of the stacked perp conditions.

struct SubtorusMeet {
  Sublattice span;                   // tangent span of the intersection
  std::vector<long long> divisors;   // elementary divisors > 1 of the finite part
  long long finite_order() const {
    long long o = 1;
    for (long long d : divisors) o = checked_mul(o, d);
    return o;
  }
  // The finite part is annihilated by k iff every divisor divides k.
  bool annihilated_by(long long k) const {
    for (long long d : divisors)
      if (k % d != 0) return false;
    return true;
  }
};

inline SubtorusMeet subtorus_meet(const Sublattice& s1, const Sublattice& s2) {
  if (s1.ambient != s2.ambient) domain_fail("subtorus ambient mismatch");
  int n = s1.ambient;
  Sublattice p1 = s1.perp(), p2 = s2.perp();
  IntMat stacked(p1.rank() + p2.rank(), n);
  for (int i = 0; i < p1.rank(); ++i)
    for (int j = 0; j < n; ++j) stacked(i, j) = p1.basis(i, j);
  for (int i = 0; i < p2.rank(); ++i)
    for (int j = 0; j < n; ++j) stacked(p1.rank() + i, j) = p2.basis(i, j);

  Smith s = smith_normal_form(stacked);
  int r = s.rank();
  SubtorusMeet out;
  IntMat rows(n - r, n);
  for (int j = r; j < n; ++j)
    for (int i = 0; i < n; ++i) rows(j - r, i) = s.V(i, j);
  out.span = Sublattice::from_rows(rows);
  for (long long d : s.divisors())
    if (d > 1) out.divisors.push_back(d);
  return out;
}

}  // namespace smoothquot

#endif

// Abelian surfaces as rank-4 integer lattices with multiplication structure.
//
// Two models cover every case:
//  - E2Standard: B = E x E. For m in {3,4,6} the curve is C/Z[zeta_m] and the
//    lattice basis is (e1, zeta*e1, e2, zeta*e2); a matrix entry a + b*zeta
//    acts on a coordinate block as a*I + b*C with C the companion matrix of
//    the minimal polynomial of zeta_m. For m = 2 the curve is arbitrary, the
//    basis is (f1, tau*f1, f2, tau*f2), and integer entries act as scalar
//    blocks, so the modulus tau never enters any matrix.
//  - SumZeroE3: B = {x in E^3 : x1+x2+x3 = 0} with basis vectors
//    f1 = (1,0,-1), f2 = (0,1,-1); only integer-entry groups act, again as
//    scalar blocks on an arbitrary curve E.

#ifndef SMOOTHQUOT_SURFACE_HPP_
#define SMOOTHQUOT_SURFACE_HPP_

#include <array>
#include <string>
#include <vector>

#include "cyclotomic.hpp"
#include "linalg.hpp"

namespace smoothquot {

// ---------------------------------------------------------------------------
// 2x2 matrices over Z[zeta_m]: the analytic representations.

struct Mat2c {
  std::array<Cyc, 4> e;  // row-major

  Mat2c() = default;
  Mat2c(Cyc e00, Cyc e01, Cyc e10, Cyc e11) : e{e00, e01, e10, e11} {
    require_same_ring(e[0], e[1]);
    require_same_ring(e[0], e[2]);
    require_same_ring(e[0], e[3]);
  }

  int ring() const { return e[0].m; }

  static Mat2c identity(int m) {
    return Mat2c(Cyc::one(m), Cyc::zero(m), Cyc::zero(m), Cyc::one(m));
  }
  static Mat2c diag(const Cyc& x, const Cyc& y) {
    return Mat2c(x, Cyc::zero(x.m), Cyc::zero(x.m), y);
  }
  static Mat2c scalar(const Cyc& x) { return diag(x, x); }
  // The coordinate swap (1 2).
  static Mat2c swap(int m) {
    return Mat2c(Cyc::zero(m), Cyc::one(m), Cyc::one(m), Cyc::zero(m));
  }
  static Mat2c from_ints(int m, long long a, long long b, long long c, long long d) {
    return Mat2c(Cyc(m, a), Cyc(m, b), Cyc(m, c), Cyc(m, d));
  }

  Cyc det() const { return e[0] * e[3] - e[1] * e[2]; }
  Mat2c adjugate() const { return Mat2c(e[3], -e[1], -e[2], e[0]); }

  bool operator==(const Mat2c& o) const { return e == o.e; }
  bool operator!=(const Mat2c& o) const { return !(*this == o); }
  // Lexicographic on the (a,b) coefficient pairs; canonical group order.
  bool operator<(const Mat2c& o) const {
    for (int i = 0; i < 4; ++i)
      if (e[i] != o.e[i]) return e[i] < o.e[i];
    return false;
  }

  bool is_diagonal() const { return e[1].is_zero() && e[2].is_zero(); }
  bool is_antidiagonal() const { return e[0].is_zero() && e[3].is_zero(); }

  std::string str() const {
    return "[" + e[0].str() + "," + e[1].str() + ";" + e[2].str() + "," +
           e[3].str() + "]";
  }
};

inline Mat2c operator*(const Mat2c& x, const Mat2c& y) {
  return Mat2c(x.e[0] * y.e[0] + x.e[1] * y.e[2],
               x.e[0] * y.e[1] + x.e[1] * y.e[3],
               x.e[2] * y.e[0] + x.e[3] * y.e[2],
               x.e[2] * y.e[1] + x.e[3] * y.e[3]);
}

inline Mat2c operator-(const Mat2c& x) {
  return Mat2c(-x.e[0], -x.e[1], -x.e[2], -x.e[3]);
}

inline Mat2c mat2_pow(Mat2c x, long long k) {
  Mat2c r = Mat2c::identity(x.ring());
  while (k > 0) {
    if (k & 1) r = r * x;
    x = x * x;
    k >>= 1;
  }
  return r;
}

// ---------------------------------------------------------------------------

enum class Model { E2Standard, SumZeroE3 };

inline std::string model_name(Model m) {
  return m == Model::E2Standard ? "E^2" : "sum-zero E^3";
}

struct Surface {
  int m = 2;
  Model model = Model::E2Standard;

  // Companion matrix of the minimal polynomial of zeta_m (m in {3,4,6}).
  IntMat companion() const {
    switch (m) {
      case 3: return IntMat(2, 2, {0, -1, 1, -1});
      case 4: return IntMat(2, 2, {0, -1, 1, 0});
      case 6: return IntMat(2, 2, {0, -1, 1, 1});
    }
    domain_fail("no complex multiplication for m=" + std::to_string(m));
  }

  bool has_cm() const { return m == 3 || m == 4 || m == 6; }

  // 2x2 integer block realizing one matrix entry on a coordinate's lattice.
  IntMat entry_block(const Cyc& x) const {
    if (x.m != m)
      domain_fail("entry ring m=" + std::to_string(x.m) +
                  " does not match surface ring m=" + std::to_string(m));
    if (!has_cm()) {
      // b is always 0 after canonicalization for m in {1,2}
      IntMat blk(2, 2);
      blk(0, 0) = blk(1, 1) = x.a;
      return blk;
    }
    IntMat blk = companion();
    for (auto& v : blk.a) v = checked_mul(x.b, v);
    blk(0, 0) = checked_add(blk(0, 0), x.a);
    blk(1, 1) = checked_add(blk(1, 1), x.a);
    return blk;
  }

  // The rational representation: 2x2 matrices over Z[zeta_m] to 4x4 integer
  // matrices, block by block. A ring homomorphism on the matrix algebra.
  IntMat rho4(const Mat2c& g) const {
    IntMat out(4, 4);
    for (int bi = 0; bi < 2; ++bi)
      for (int bj = 0; bj < 2; ++bj) {
        IntMat blk = entry_block(g.e[bi * 2 + bj]);
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) out(2 * bi + i, 2 * bj + j) = blk(i, j);
      }
    return out;
  }

  // Multiplication by zeta_m on the whole lattice.
  IntMat cm_mult() const { return rho4(Mat2c::scalar(Cyc::zeta(m))); }
};

inline Surface make_surface(int m, Model model) {
  if (model == Model::E2Standard) {
    if (m != 2 && m != 3 && m != 4 && m != 6)
      domain_fail("E^2 model needs m in {2,3,4,6}, got m=" + std::to_string(m));
  } else {
    if (m != 2)
      domain_fail("sum-zero model carries only integer-entry groups");
  }
  Surface s;
  s.m = m;
  s.model = model;
  return s;
}

inline Surface make_sumzero_surface() { return make_surface(2, Model::SumZeroE3); }

// ---------------------------------------------------------------------------
// Subtorus: the connected subgroup attached to a saturated sublattice.

struct Subtorus {
  Sublattice span;   // saturated
  Sublattice perp;   // cached orthogonal complement

  Subtorus() = default;
  explicit Subtorus(const Sublattice& s) : span(s.saturation()), perp(span.perp()) {}

  int rank() const { return span.rank(); }
  bool contains(const TorsionVector& x) const { return on_subtorus(x, perp); }
  bool operator==(const Subtorus& o) const { return span == o.span; }
  bool operator<(const Subtorus& o) const { return span < o.span; }
};

// ---------------------------------------------------------------------------
// Fixed locus of an affine map x -> g*x + t: all solutions of (1-g)x = t
// (mod Z^4), a finite disjoint union of parallel translates of one subtorus.

struct FixedLocus {
  bool empty = true;
  Subtorus direction;                     // shared tangent span
  std::vector<TorsionVector> translates;  // sorted coset representatives

  int component_rank() const { return direction.rank(); }
  size_t component_count() const { return translates.size(); }

  bool contains(const TorsionVector& x) const {
    if (empty) return false;
    for (const auto& t : translates)
      if (direction.contains(x - t)) return true;
    return false;
  }
};

inline FixedLocus fixed_locus(const IntMat& g4, const TorsionVector& t) {
  if (g4.rows != 4 || g4.cols != 4 || t.dim() != 4)
    domain_fail("fixed locus expects a 4x4 action");
  CongruenceSolution sol = solve_lattice_congruence(IntMat::identity(4) - g4, t);
  FixedLocus out;
  if (!sol.solvable) return out;
  out.empty = false;
  out.direction = Subtorus(sol.kernel);
  out.translates = std::move(sol.reps);
  return out;
}

// ---------------------------------------------------------------------------
// Curve pair of a pseudoreflection g of order r:
//   fixed_curve = im(1 + g + ... + g^{r-1})  (the pointwise-fixed curve)
//   moved_curve = im(1 - g)                  (its complement)
// and their finite intersection group.

inline int rank_q(const IntMat& m) { return smith_normal_form(m).rank(); }

// A pseudoreflection fixes a line of C^2 pointwise: rationally, 1-g has
// rank exactly 2.
inline bool is_pseudoreflection_mat4(const IntMat& g4) {
  IntMat d = IntMat::identity(4) - g4;
  return !d.is_zero() && rank_q(d) == 2;
}

struct ReflectionCurves {
  Subtorus fixed_curve;
  Subtorus moved_curve;
  SubtorusMeet meet;
};

inline ReflectionCurves reflection_curves(const IntMat& g4, long long order) {
  if (!is_pseudoreflection_mat4(g4))
    domain_fail("curve decomposition needs a pseudoreflection");
  IntMat norm(4, 4), power = IntMat::identity(4);
  for (long long k = 0; k < order; ++k) {
    norm = norm + power;
    power = power * g4;
  }
  if (power != IntMat::identity(4))
    domain_fail("element order mismatch in curve decomposition");
  ReflectionCurves out;
  out.fixed_curve = Subtorus(image_lattice(norm).saturated);
  out.moved_curve = Subtorus(image_lattice(IntMat::identity(4) - g4).saturated);
  out.meet = subtorus_meet(out.fixed_curve.span, out.moved_curve.span);
  return out;
}

// ---------------------------------------------------------------------------
// Quotient isogeny B -> A = B/Delta. Lambda_A = Z^4 + lifts(Delta) is stored
// as an integer matrix over a common denominator; group matrices transport to
// the new basis and must stay integral (that is exactly G-invariance of the
// lattice).

struct QuotientIsogeny {
  long long scale = 1;   // N with Lambda_A = (1/N) * row lattice of basis_num
  IntMat basis_num;      // 4x4 Hermite rows; columns of basis_num^T / N span Lambda_A
  long long index = 1;   // [Lambda_A : Z^4]
  std::vector<IntMat> transported;

  // Coordinates of a B-point in the Lambda_A basis.
  TorsionVector to_quotient(const TorsionVector& x) const {
    IntMat bt = basis_num.transposed();
    long long d = det(bt);
    IntMat adj = adjugate(bt);
    long long sign = d < 0 ? -1 : 1;
    std::vector<long long> n = adj * x.num;
    for (auto& v : n) v = checked_mul(checked_mul(sign, scale), v);
    return TorsionVector(checked_mul(x.den, d < 0 ? -d : d), std::move(n));
  }

  // Back from Lambda_A coordinates to B coordinates.
  TorsionVector to_source(const TorsionVector& x) const {
    std::vector<long long> n = basis_num.transposed() * x.num;
    return TorsionVector(checked_mul(x.den, scale), std::move(n));
  }
};

// delta_elements must be the full closed subgroup (including zero).
inline QuotientIsogeny quotient_by_delta(const std::vector<IntMat>& group_generators,
                                         const std::vector<TorsionVector>& delta_elements,
                                         bool forbid_axis_elements) {
  auto in_delta = [&](const TorsionVector& v) {
    for (const auto& d : delta_elements)
      if (d == v) return true;
    return false;
  };
  for (const auto& d : delta_elements) {
    if (d.dim() != 4) domain_fail("delta element of wrong dimension");
    if (forbid_axis_elements && !d.is_zero()) {
      bool first_zero = d.num[0] == 0 && d.num[1] == 0;
      bool second_zero = d.num[2] == 0 && d.num[3] == 0;
      if (first_zero || second_zero)
        fail("delta contains a nonzero element with a zero coordinate");
    }
    for (const auto& g : group_generators)
      if (!in_delta(g * d)) fail("delta is not invariant under the group");
  }

  long long N = 1;
  for (const auto& d : delta_elements) N = lcm_ll(N, d.den);

  IntMat rows(4 + static_cast<int>(delta_elements.size()), 4);
  for (int i = 0; i < 4; ++i) rows(i, i) = N;
  for (size_t k = 0; k < delta_elements.size(); ++k) {
    TorsionVector r = delta_elements[k].rescaled(N);
    for (int j = 0; j < 4; ++j) rows(4 + static_cast<int>(k), j) = r.num[j];
  }

  QuotientIsogeny out;
  out.scale = N;
  out.basis_num = hermite_rows(rows);
  if (out.basis_num.rows != 4) fail("quotient lattice is not full rank");
  long long dv = det(out.basis_num);
  if (dv < 0) dv = -dv;
  long long n4 = checked_mul(checked_mul(N, N), checked_mul(N, N));
  if (n4 % dv != 0) fail("quotient lattice index is not integral");
  out.index = n4 / dv;
  if (out.index != static_cast<long long>(delta_elements.size()))
    fail("lattice index does not match the kernel order");

  IntMat bt = out.basis_num.transposed();
  long long d = det(bt);
  IntMat adj = adjugate(bt);
  for (const auto& g : group_generators) {
    IntMat num = adj * g * bt;
    IntMat tr(4, 4);
    for (size_t i = 0; i < num.a.size(); ++i) {
      if (num.a[i] % d != 0) fail("group does not preserve the quotient lattice");
      tr.a[i] = num.a[i] / d;
    }
    out.transported.push_back(tr);
  }
  return out;
}

}  // namespace smoothquot

#endif

// Finite groups acting on a realized surface: the imprimitive reflection
// groups G(m,p) = H(m,p) x| S2 generated by
//   rho = diag(zeta, zeta^-1),  tau = diag(zeta^p, 1),  sigma = (1 2),
// the permutation groups of the sum-zero model, pseudoreflection detection,
// the affine group Delta x| G, and enumeration of admissible Delta kernels.

#ifndef SMOOTHQUOT_GROUP_HPP_
#define SMOOTHQUOT_GROUP_HPP_

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "surface.hpp"

namespace smoothquot {

// ---------------------------------------------------------------------------

struct GroupElement {
  std::optional<Mat2c> mat2;  // absent for transported (rebased) groups
  IntMat mat4;
  long long order = 1;
  std::string name;
};

namespace detail {

inline std::string sumzero_name(const Mat2c& g) {
  struct Entry { long long v[4]; const char* name; };
  static const Entry table[] = {
      {{1, 0, 0, 1}, "e"},          {{0, 1, 1, 0}, "(12)"},
      {{-1, -1, 0, 1}, "(13)"},     {{1, 0, -1, -1}, "(23)"},
      {{-1, -1, 1, 0}, "(123)"},    {{0, 1, -1, -1}, "(132)"},
  };
  for (int sign = 0; sign < 2; ++sign)
    for (const auto& ent : table) {
      bool match = true;
      for (int i = 0; i < 4; ++i) {
        long long want = sign ? -ent.v[i] : ent.v[i];
        if (g.e[i].a != want || g.e[i].b != 0) { match = false; break; }
      }
      if (match) return sign ? std::string("-") + ent.name : ent.name;
    }
  return g.str();
}

inline std::string element_name(const Surface& surf, const Mat2c& g) {
  if (surf.model == Model::SumZeroE3) return sumzero_name(g);
  if (g.is_diagonal()) return "(" + g.e[0].str() + "," + g.e[3].str() + ")";
  if (g.is_antidiagonal())
    return "(" + g.e[1].str() + "," + g.e[2].str() + ")s";
  return g.str();
}

}  // namespace detail

struct MatrixGroup {
  Surface surface;
  std::vector<GroupElement> elems;  // canonical order
  std::vector<int> generators;      // indices into elems
  std::vector<int> mul_table;       // size*size, filled by finalize()
  std::vector<int> inv_table;

  int size() const { return static_cast<int>(elems.size()); }

  int find_mat2(const Mat2c& m) const {
    for (int i = 0; i < size(); ++i)
      if (elems[i].mat2 && *elems[i].mat2 == m) return i;
    return -1;
  }
  int find_mat4(const IntMat& m) const {
    for (int i = 0; i < size(); ++i)
      if (elems[i].mat4 == m) return i;
    return -1;
  }
  int identity_index() const {
    int i = find_mat4(IntMat::identity(4));
    if (i < 0) fail("group without identity");
    return i;
  }
  int mul(int i, int j) const { return mul_table[static_cast<size_t>(i) * size() + j]; }
  int inverse(int i) const { return inv_table[i]; }

  void finalize() {
    int n = size();
    mul_table.assign(static_cast<size_t>(n) * n, -1);
    inv_table.assign(n, -1);
    int id = identity_index();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int k = find_mat4(elems[i].mat4 * elems[j].mat4);
        if (k < 0) fail("group is not closed under multiplication");
        mul_table[static_cast<size_t>(i) * n + j] = k;
        if (k == id) inv_table[i] = j;
      }
  }

  std::vector<int> pseudoreflections() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
      if (is_pseudoreflection_mat4(elems[i].mat4)) out.push_back(i);
    return out;
  }
};

inline long long element_order_2c(const Mat2c& g) {
  Mat2c p = g;
  for (long long k = 1; k <= 24; ++k) {
    if (p == Mat2c::identity(g.ring())) return k;
    p = p * g;
  }
  fail("element of unexpected order (not a finite torsion matrix?)");
}

// Worklist closure of a generating set; elements are deduplicated by exact
// 2x2 entries and sorted lexicographically on the (a,b) coefficients.
inline MatrixGroup close_group(const Surface& surf, const std::vector<Mat2c>& gens) {
  std::vector<Mat2c> work;
  auto seen = [&](const Mat2c& m) {
    for (const auto& w : work)
      if (w == m) return true;
    return false;
  };
  work.push_back(Mat2c::identity(surf.m));
  for (const auto& g : gens)
    if (!seen(g)) work.push_back(g);
  for (size_t i = 0; i < work.size(); ++i) {
    for (size_t j = 0; j < work.size(); ++j) {
      Mat2c p = work[i] * work[j];
      if (!seen(p)) work.push_back(p);
      if (work.size() > 4096) fail("group closure did not terminate");
    }
  }
  std::sort(work.begin(), work.end());

  MatrixGroup g;
  g.surface = surf;
  for (const auto& m : work) {
    GroupElement e;
    e.mat2 = m;
    e.mat4 = surf.rho4(m);
    e.order = element_order_2c(m);
    e.name = detail::element_name(surf, m);
    g.elems.push_back(std::move(e));
  }
  for (const auto& gen : gens) g.generators.push_back(g.find_mat2(gen));
  g.finalize();
  return g;
}

// G(m,p) on the standard E^2 surface. Requires p | m, m in {2,3,4,6}; the
// pair (2,2) is rejected because its representation splits.
inline MatrixGroup build_gmp(int m, int p) {
  if (m != 2 && m != 3 && m != 4 && m != 6)
    domain_fail("G(m,p) needs m in {2,3,4,6}");
  if (p <= 0 || m % p != 0) domain_fail("G(m,p) needs p | m");
  if (m == 2 && p == 2)
    domain_fail("G(2,2) excluded: the representation is not irreducible");
  Surface surf = make_surface(m, Model::E2Standard);
  Cyc z = Cyc::zeta(m);
  std::vector<Mat2c> gens = {
      Mat2c::diag(z, cyc_pow(z, m - 1)),      // rho
      Mat2c::diag(cyc_pow(z, p), Cyc::one(m)),  // tau (identity when p = m)
      Mat2c::swap(m),                           // sigma
  };
  return close_group(surf, gens);
}

// S3 (order 6) or S3 x {+-1} (order 12) on the sum-zero surface.
inline MatrixGroup build_sumzero_group(bool with_minus_one) {
  Surface surf = make_sumzero_surface();
  std::vector<Mat2c> gens = {
      Mat2c::swap(2),                      // (1 2)
      Mat2c::from_ints(2, -1, -1, 1, 0),   // (1 2 3)
  };
  if (with_minus_one) gens.push_back(Mat2c::from_ints(2, -1, 0, 0, -1));
  return close_group(surf, gens);
}

// The order-16 subgroup of GL2(Z[i]) acting on the Gaussian E^2.
inline MatrixGroup example_c_group() {
  Surface surf = make_surface(4, Model::E2Standard);
  Cyc one(4, 1), i(4, 0, 1);
  std::vector<Mat2c> gens = {
      Mat2c(-one, one + i, Cyc::zero(4), one),
      Mat2c(-i, i - one, Cyc::zero(4), i),
      Mat2c(-one, Cyc::zero(4), i - one, one),
  };
  return close_group(surf, gens);
}

// The isogeny matrix used to identify the order-16 group with a conjugate
// of G(4,2).
inline Mat2c example_c_isogeny_matrix() {
  Cyc one(4, 1), i(4, 0, 1);
  return Mat2c(one, -one, Cyc::zero(4), i - one);
}

// ---------------------------------------------------------------------------
// Does conjugation by M map the realized group back into itself?
// Checked without division: M * g * adj(M) must equal det(M) * h elementwise
// for some h in G, for every generator g.

inline bool conjugate_pair_check(const Mat2c& M, const MatrixGroup& G) {
  Cyc d = M.det();
  if (d.is_zero()) domain_fail("conjugation matrix is singular");
  Mat2c adj = M.adjugate();
  for (int gi : G.generators) {
    if (!G.elems[gi].mat2) fail("conjugate_pair_check needs 2x2 data");
    Mat2c lhs = M * (*G.elems[gi].mat2) * adj;
    bool found = false;
    for (const auto& h : G.elems) {
      if (!h.mat2) continue;
      Mat2c rhs = *h.mat2;
      bool eq = true;
      for (int k = 0; k < 4; ++k)
        if (lhs.e[k] != d * rhs.e[k]) { eq = false; break; }
      if (eq) { found = true; break; }
    }
    if (!found) return false;
  }
  return true;
}

// Does M * source * M^{-1} equal target as a set? Division-free: an element
// g lands on h iff M*g*adj(M) == det(M)*h entrywise. Injectivity of
// conjugation plus equal orders makes the elementwise check a bijection.
inline bool conjugate_maps_onto(const Mat2c& M, const MatrixGroup& source,
                                const MatrixGroup& target) {
  if (source.size() != target.size()) return false;
  Cyc d = M.det();
  if (d.is_zero()) domain_fail("conjugation matrix is singular");
  Mat2c adj = M.adjugate();
  for (const auto& ge : source.elems) {
    if (!ge.mat2) fail("conjugation check needs 2x2 data");
    Mat2c lhs = M * (*ge.mat2) * adj;
    bool found = false;
    for (const auto& he : target.elems) {
      if (!he.mat2) continue;
      bool eq = true;
      for (int k = 0; k < 4; ++k)
        if (lhs.e[k] != d * he.mat2->e[k]) { eq = false; break; }
      if (eq) { found = true; break; }
    }
    if (!found) return false;
  }
  return true;
}

// Some tau in G with 1-tau invertible over Q, so that 1-tau is surjective
// on the torus; used to shift any prescribed kernel element into a
// stabilizer.
inline int find_fixed_point_free_shift(const MatrixGroup& G) {
  for (int i = 0; i < G.size(); ++i)
    if (det(IntMat::identity(4) - G.elems[i].mat4) != 0) return i;
  fail("no fixed-point-free shift exists in this group");
}

// Transport a group to the Lambda_A basis of a quotient isogeny. Elements
// keep their source order and names; the 2x2 data no longer applies.
inline MatrixGroup transported_group(const MatrixGroup& G, const QuotientIsogeny& q) {
  if (static_cast<int>(q.transported.size()) != G.size())
    domain_fail("transport needs one matrix per group element");
  MatrixGroup out;
  out.surface = G.surface;
  out.generators = G.generators;
  for (int i = 0; i < G.size(); ++i) {
    GroupElement e;
    e.mat4 = q.transported[i];
    e.order = G.elems[i].order;
    e.name = G.elems[i].name + "@A";
    out.elems.push_back(std::move(e));
  }
  out.finalize();
  return out;
}

// ---------------------------------------------------------------------------
// Delta kernels: finite G-stable subgroups of torsion points.

struct DeltaGroup {
  std::vector<TorsionVector> elements;    // closed subgroup, sorted, 0 first
  std::vector<TorsionVector> generators;  // greedy canonical generating set
  // invariance certificate: images[i][j] = index in elements of
  // (group generator j) * (generators[i])
  std::vector<std::vector<int>> images;

  long long order() const { return static_cast<long long>(elements.size()); }
  bool contains(const TorsionVector& v) const {
    return std::binary_search(elements.begin(), elements.end(), v);
  }
  std::string descriptor() const {
    if (order() == 1) return "0";
    std::string s = "<";
    for (size_t i = 0; i < generators.size(); ++i)
      s += (i ? "," : "") + generators[i].str();
    return s + ">";
  }
  bool operator<(const DeltaGroup& o) const {
    if (elements.size() != o.elements.size())
      return elements.size() < o.elements.size();
    return std::lexicographical_compare(elements.begin(), elements.end(),
                                        o.elements.begin(), o.elements.end());
  }
  bool operator==(const DeltaGroup& o) const { return elements == o.elements; }
};

namespace detail {

struct DeltaEnumerator {
  long long N;
  std::vector<IntMat> gens;  // generator matrices
  bool axis_filter;
  std::vector<std::uint32_t> powN{1, 0, 0, 0, 0};

  DeltaEnumerator(long long n, std::vector<IntMat> g, bool axis)
      : N(n), gens(std::move(g)), axis_filter(axis) {
    for (int i = 1; i <= 4; ++i) powN[i] = powN[i - 1] * static_cast<std::uint32_t>(N);
  }

  std::uint32_t encode(const std::array<long long, 4>& v) const {
    std::uint32_t c = 0;
    for (int i = 0; i < 4; ++i) c = c * static_cast<std::uint32_t>(N) + static_cast<std::uint32_t>(v[i]);
    return c;
  }
  std::array<long long, 4> decode(std::uint32_t c) const {
    std::array<long long, 4> v;
    for (int i = 3; i >= 0; --i) {
      v[i] = c % N;
      c /= static_cast<std::uint32_t>(N);
    }
    return v;
  }

  bool violates_axis(const std::array<long long, 4>& v) const {
    if (!axis_filter) return false;
    bool zero = v[0] == 0 && v[1] == 0 && v[2] == 0 && v[3] == 0;
    if (zero) return false;
    return (v[0] == 0 && v[1] == 0) || (v[2] == 0 && v[3] == 0);
  }

  // Smallest G-stable subgroup containing the seeds, or nullopt as soon as
  // an axis element shows up.
  std::optional<std::vector<std::uint32_t>> closure(const std::vector<std::uint32_t>& seeds) const {
    std::vector<char> in(powN[4], 0);
    std::vector<std::uint32_t> all;
    auto push = [&](std::uint32_t c) -> bool {
      if (in[c]) return true;
      if (violates_axis(decode(c))) return false;
      in[c] = 1;
      all.push_back(c);
      return true;
    };
    if (!push(0)) return std::nullopt;
    for (std::uint32_t s : seeds)
      if (!push(s)) return std::nullopt;
    for (size_t i = 0; i < all.size(); ++i) {
      std::array<long long, 4> e = decode(all[i]);
      for (const auto& g : gens) {
        std::array<long long, 4> y{};
        for (int r = 0; r < 4; ++r) {
          long long acc = 0;
          for (int c = 0; c < 4; ++c) acc += g(r, c) * e[c];
          y[r] = mod_ll(acc, N);
        }
        if (!push(encode(y))) return std::nullopt;
      }
      for (size_t j = 0; j <= i; ++j) {
        std::array<long long, 4> f = decode(all[j]);
        std::array<long long, 4> s;
        for (int k = 0; k < 4; ++k) s[k] = mod_ll(e[k] + f[k], N);
        if (!push(encode(s))) return std::nullopt;
      }
    }
    std::sort(all.begin(), all.end());
    return all;
  }
};

}  // namespace detail

// All G-stable subgroups of B[N] compatible with the model:
//  - E^2 model: no nonzero element may have a zero coordinate (such elements
//    cannot lie in the kernel of an isogeny that embeds each factor);
//  - sum-zero model: candidates live in the diagonal 3-torsion
//    {(x,x,x) : 3x = 0}, the fixed locus of every conjugate of a
//    transposition.
// Results are deduplicated and sorted by (order, elements).
inline std::vector<DeltaGroup> enumerate_invariant_deltas(const Surface& surf,
                                                          const MatrixGroup& G,
                                                          long long N = 6) {
  if (N < 1 || N > 12) domain_fail("torsion bound out of supported range");
  std::vector<IntMat> gen_mats;
  for (int gi : G.generators) gen_mats.push_back(G.elems[gi].mat4);

  bool axis = surf.model == Model::E2Standard;
  detail::DeltaEnumerator en(N, gen_mats, axis);

  // Seed pool: every candidate torsion point.
  std::vector<std::uint32_t> pool;
  if (surf.model == Model::SumZeroE3) {
    if (N % 3 == 0) {
      long long step = N / 3;
      for (long long j = 0; j < 3; ++j)
        for (long long k = 0; k < 3; ++k)
          if (j || k)
            pool.push_back(en.encode({j * step, k * step, j * step, k * step}));
    }
  } else {
    for (std::uint32_t c = 1; c < en.powN[4]; ++c) pool.push_back(c);
  }

  // Viability: a seed whose own stable closure already violates the axis
  // condition can never appear in any admissible subgroup.
  std::vector<std::uint32_t> viable;
  for (std::uint32_t c : pool)
    if (en.closure({c})) viable.push_back(c);

  std::set<std::vector<std::uint32_t>> found;
  std::vector<std::vector<std::uint32_t>> queue;
  auto add = [&](std::vector<std::uint32_t> s) {
    if (found.insert(s).second) queue.push_back(std::move(s));
  };
  add(*en.closure({}));
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    std::vector<std::uint32_t> base = queue[qi];
    for (std::uint32_t x : viable) {
      if (std::binary_search(base.begin(), base.end(), x)) continue;
      std::vector<std::uint32_t> seeds = base;
      seeds.push_back(x);
      if (auto cl = en.closure(seeds)) add(std::move(*cl));
    }
  }

  std::vector<DeltaGroup> out;
  for (const auto& enc : found) {
    DeltaGroup d;
    for (std::uint32_t c : enc) {
      auto v = en.decode(c);
      d.elements.push_back(TorsionVector(N, {v[0], v[1], v[2], v[3]}));
    }
    std::sort(d.elements.begin(), d.elements.end());
    // Greedy canonical generators.
    for (const auto& e : d.elements) {
      if (e.is_zero()) continue;
      detail::DeltaEnumerator sub(N, gen_mats, false);
      std::vector<std::uint32_t> seeds;
      for (const auto& g : d.generators) {
        TorsionVector r = g.rescaled(N);
        seeds.push_back(sub.encode({r.num[0], r.num[1], r.num[2], r.num[3]}));
      }
      auto before = sub.closure(seeds);
      TorsionVector er = e.rescaled(N);
      std::uint32_t ec = sub.encode({er.num[0], er.num[1], er.num[2], er.num[3]});
      if (!std::binary_search(before->begin(), before->end(), ec))
        d.generators.push_back(e);
    }
    // Invariance certificate on the generators.
    for (const auto& g : d.generators) {
      std::vector<int> row;
      for (const auto& gm : gen_mats) {
        TorsionVector img = gm * g;
        auto it = std::lower_bound(d.elements.begin(), d.elements.end(), img);
        if (it == d.elements.end() || *it != img) fail("delta invariance certificate failed");
        row.push_back(static_cast<int>(it - d.elements.begin()));
      }
      d.images.push_back(std::move(row));
    }
    out.push_back(std::move(d));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// The affine group Delta x| G acting on B by x -> g*x + t.

struct AffineElement {
  TorsionVector t;
  int g = 0;  // index into the group
};

struct AffineGroup {
  Surface surface;
  MatrixGroup group;
  DeltaGroup delta;

  long long order() const { return delta.order() * group.size(); }

  const IntMat& mat(const AffineElement& s) const { return group.elems[s.g].mat4; }

  TorsionVector apply(const AffineElement& s, const TorsionVector& x) const {
    return mat(s) * x + s.t;
  }
  AffineElement compose(const AffineElement& a, const AffineElement& b) const {
    return {a.t + mat(a) * b.t, group.mul(a.g, b.g)};
  }
  AffineElement inverse(const AffineElement& a) const {
    int gi = group.inverse(a.g);
    return {-(group.elems[gi].mat4 * a.t), gi};
  }
  AffineElement identity() const {
    return {TorsionVector(4), group.identity_index()};
  }
  bool contains(const AffineElement& s) const {
    return s.g >= 0 && s.g < group.size() && delta.contains(s.t);
  }

  std::vector<AffineElement> all_elements() const {
    std::vector<AffineElement> out;
    for (const auto& t : delta.elements)
      for (int gi = 0; gi < group.size(); ++gi) out.push_back({t, gi});
    return out;
  }

  FixedLocus fixed_locus_of(const AffineElement& s) const {
    return fixed_locus(mat(s), s.t);
  }

  // Geometric affine pseudoreflection test: the fixed locus must contain a
  // curve (a rank-2 component).
  bool is_affine_pseudoreflection(const AffineElement& s) const {
    FixedLocus f = fixed_locus_of(s);
    return !f.empty && f.component_rank() == 2;
  }

  std::string element_name(const AffineElement& s) const {
    if (s.t.is_zero()) return group.elems[s.g].name;
    return "(" + s.t.str() + ", " + group.elems[s.g].name + ")";
  }
};

inline bool affine_equal(const AffineElement& a, const AffineElement& b) {
  return a.g == b.g && a.t == b.t;
}

inline bool affine_less(const AffineElement& a, const AffineElement& b) {
  if (a.g != b.g) return a.g < b.g;
  return a.t < b.t;
}

// Subgroup generated by a set of affine elements. Left multiplication by the
// generators starting from the identity reaches every word, and in a finite
// group that is already the generated subgroup.
inline std::vector<AffineElement> subgroup_generated_by(
    const AffineGroup& ambient, const std::vector<AffineElement>& gens) {
  for (const auto& g : gens)
    if (!ambient.contains(g)) domain_fail("generator outside the ambient affine group");
  std::vector<AffineElement> all{ambient.identity()};
  auto insert = [&](const AffineElement& e) {
    auto it = std::lower_bound(all.begin(), all.end(), e, affine_less);
    if (it != all.end() && affine_equal(*it, e)) return false;
    all.insert(it, e);
    return true;
  };
  std::vector<AffineElement> frontier = all;
  while (!frontier.empty()) {
    std::vector<AffineElement> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        AffineElement p = ambient.compose(g, x);
        if (insert(p)) next.push_back(p);
      }
    frontier = std::move(next);
  }
  return all;
}

}  // namespace smoothquot

#endif

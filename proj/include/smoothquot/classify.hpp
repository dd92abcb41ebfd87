// The case sweep: every admissible G(m,p) with every admissible kernel
// Delta, each decided independently and compared against the expected
// classification. The expectation table is the only place expected verdicts
// are written down; the decision procedure never reads it.

#ifndef SMOOTHQUOT_CLASSIFY_HPP_
#define SMOOTHQUOT_CLASSIFY_HPP_

#include <optional>
#include <string>
#include <vector>

#include "smoothness.hpp"

namespace smoothquot {

// ---------------------------------------------------------------------------

enum class Expectation {
  SmoothProduct,     // coordinatewise mu_m x| S2 on E^2 (smooth, quotient P^2)
  SmoothPermutation, // S3 on the sum-zero surface (smooth, quotient P^2)
  SmoothExceptional, // the order-16 Gaussian example (smooth, quotient P^2)
  SmoothIsoTrivial,  // pair isomorphic to a kernel-free smooth pair
  NotSmooth,
  NoExpectation,
};

inline bool expects_smooth(Expectation e) {
  return e == Expectation::SmoothProduct || e == Expectation::SmoothPermutation ||
         e == Expectation::SmoothExceptional || e == Expectation::SmoothIsoTrivial;
}

inline std::string expectation_name(Expectation e) {
  switch (e) {
    case Expectation::SmoothProduct: return "smooth (product example)";
    case Expectation::SmoothPermutation: return "smooth (permutation example)";
    case Expectation::SmoothExceptional: return "smooth (exceptional order-16 example)";
    case Expectation::SmoothIsoTrivial: return "smooth (isomorphic to kernel-free pair)";
    case Expectation::NotSmooth: return "not smooth";
    case Expectation::NoExpectation: return "no pinned expectation";
  }
  return "?";
}

struct CaseExpectation {
  Expectation exp;
  std::string label;   // human name of the Delta shape
  std::string source;  // why this verdict is expected
};

namespace detail {

// E-coordinate pairs of a rank-4 torsion vector.
inline bool delta_all_diagonal(const DeltaGroup& d) {
  for (const auto& e : d.elements)
    if (e.num[0] != e.num[2] || e.num[1] != e.num[3]) return false;
  return true;
}

inline bool delta_all_antidiagonal(const DeltaGroup& d) {
  for (const auto& e : d.elements) {
    if (mod_ll(e.num[0] + e.num[2], e.den) != 0) return false;
    if (mod_ll(e.num[1] + e.num[3], e.den) != 0) return false;
  }
  return true;
}

}  // namespace detail

inline CaseExpectation expectation_for(int m, int p, Model model, const DeltaGroup& d) {
  long long n = d.order();
  bool diag = detail::delta_all_diagonal(d);
  bool anti = detail::delta_all_antidiagonal(d);
  auto unexpected = [&]() -> CaseExpectation {
    fail("no expectation entry for G(" + std::to_string(m) + "," + std::to_string(p) +
         ") with kernel " + d.descriptor());
  };

  if (model == Model::SumZeroE3) {
    if (m == 3) {
      if (n == 1)
        return {Expectation::SmoothPermutation, "Delta = 0",
                "standard S3 action on the sum-zero surface is a smooth quotient"};
      return {Expectation::NoExpectation,
              n == 9 ? "Delta = diagonal E[3]" : "Delta = <(x,x,x)>, 3x=0",
              "verdict reported as computed; no pinned expectation for S3 with kernel"};
    }
    if (m == 6) {
      if (n == 1)
        return {Expectation::NotSmooth, "Delta = 0",
                "-1 descends to a nontrivial involution of the plane; its quotient is singular"};
      if (n == 3)
        return {Expectation::NotSmooth, "Delta = <(x,x,x)>, 3x=0",
                "a point of shape (x, x+t, x-t) is stabilized only by a "
                "translation-twisted 3-cycle, which is no pseudoreflection"};
      if (n == 9)
        return {Expectation::NotSmooth, "Delta = diagonal E[3]",
                "pair isomorphic (via [[-1,-2],[2,1]]) to the kernel-free pair, "
                "which is not smooth"};
    }
    return unexpected();
  }

  switch (m * 10 + p) {
    case 21:
      if (n == 1)
        return {Expectation::SmoothProduct, "Delta = 0",
                "coordinatewise {+-1}^2 x| S2 product action; smooth"};
      if (n == 2 && diag)
        return {Expectation::NotSmooth, "Delta = <(t,t)>, t in E[2]",
                "an order-2 diagonal kernel forces a stabilizer that is not "
                "generated by pseudoreflections"};
      if (n == 4 && diag)
        return {Expectation::SmoothIsoTrivial, "Delta = diagonal E[2]",
                "pair isomorphic (via [[1,1],[1,-1]]) to the kernel-free pair; smooth"};
      if (n == 4)
        return {Expectation::NotSmooth, "Delta = {0,(t1,t2),(t2,t1),(t1+t2,t1+t2)}",
                "the half-period point (t1',t2') is stabilized exactly by the "
                "translation-twisted -1, which is no pseudoreflection"};
      return unexpected();
    case 31:
      if (n == 1)
        return {Expectation::SmoothProduct, "Delta = 0",
                "coordinatewise mu_3^2 x| S2 product action; smooth"};
      if (n == 3 && diag)
        return {Expectation::NotSmooth, "Delta = <(s0,s0)>",
                "a surjective 1-tau shifts the kernel generator into a stabilizer; "
                "that element is no pseudoreflection"};
      if (n == 3 && anti)
        return {Expectation::NotSmooth, "Delta = <(s0,-s0)>",
                "(s,-s) for non-invariant 3-torsion s is stabilized by the "
                "translation-twisted scalar of order 3 only"};
      return unexpected();
    case 41:
      if (n == 1)
        return {Expectation::SmoothProduct, "Delta = 0",
                "coordinatewise mu_4^2 x| S2 product action; smooth"};
      if (n == 2 && diag)
        return {Expectation::NotSmooth, "Delta = <(t0,t0)>",
                "(s,t) with 2t = t0 and s not i-invariant is stabilized by the "
                "order-4 translation-twisted (i,-1) with too few reflections"};
      return unexpected();
    case 61:
      if (n == 1)
        return {Expectation::SmoothProduct, "Delta = 0",
                "coordinatewise mu_6^2 x| S2 product action; smooth; no other "
                "kernel is admissible"};
      return unexpected();
    case 42:
      if (n == 1)
        return {Expectation::NotSmooth, "Delta = 0",
                "(t0,0) is stabilized by all diagonal elements but only the "
                "sign changes among them are reflections"};
      if (n == 2 && diag)
        return {Expectation::SmoothExceptional, "Delta = <(t0,t0)>",
                "the exceptional order-16 Gaussian example; smooth"};
      if (n == 4 && diag)
        return {Expectation::NotSmooth, "Delta = diagonal E[2]",
                "pair isomorphic (via [[1,1],[1,-1]]) to the kernel-free pair, "
                "which is not smooth"};
      if (n == 4)
        return {Expectation::NotSmooth, "Delta = {0,(t,t+t0),(t+t0,t),(t0,t0)}",
                "pair isomorphic (via [[1,i],[i,1]]) to the kernel-free pair, "
                "which is not smooth"};
      return unexpected();
    case 62:
      return {Expectation::NotSmooth,
              n == 1 ? "Delta = 0" : (diag ? "Delta = <(s0,s0)>" : "Delta = <(s0,-s0)>"),
              "the 2-torsion point (t,0) has 3-torsion-free stabilizer inside G, "
              "not reflection-generated, for every admissible kernel"};
    case 63:
      return {Expectation::NotSmooth,
              n == 1 ? "Delta = 0" : "Delta = swap-pair shape in E[2]^2",
              "the invariant 3-torsion point (s0,0) has stabilizer inside G that "
              "is not reflection-generated, for every admissible kernel"};
    default:
      return unexpected();
  }
}

// ---------------------------------------------------------------------------

struct CaseResult {
  int m = 0, p = 0;
  Model model = Model::E2Standard;
  int delta_index = 0;
  DeltaGroup delta;
  CaseExpectation expectation;
  SmoothnessVerdict verdict;
  bool match = false;
  bool spot_check_ok = true;
  std::string note;
};

struct ExcludedCase {
  int m, p;
  std::string reason;
};

struct ClassifyReport {
  long long torsion_bound = 6;
  std::vector<CaseResult> results;
  std::vector<ExcludedCase> excluded;
  std::vector<std::string> notes;
  bool alias_checks_ok = true;
  bool all_match = true;       // pinned expectations all reproduced
  bool invariants_ok = true;   // spot checks and alias structure checks
};

struct ClassifyOptions {
  long long torsion_bound = 6;
  bool spot_check = true;
  int spot_count = 200;
  std::uint64_t seed = 1;
  bool explore_cm_pm = false;
};

inline AffineGroup make_standard_case(int m, int p, const DeltaGroup& delta) {
  MatrixGroup g = build_gmp(m, p);
  return AffineGroup{g.surface, std::move(g), delta};
}

inline AffineGroup make_sumzero_case(bool with_minus_one, const DeltaGroup& delta) {
  MatrixGroup g = build_sumzero_group(with_minus_one);
  return AffineGroup{g.surface, std::move(g), delta};
}

inline DeltaGroup trivial_delta() {
  DeltaGroup d;
  d.elements.push_back(TorsionVector(4));
  return d;
}

// Enumerate the admissible kernels of one case.
inline std::vector<DeltaGroup> case_deltas(int m, int p, long long torsion_bound) {
  if (m == p && (m == 3 || m == 6)) {
    MatrixGroup g = build_sumzero_group(m == 6);
    return enumerate_invariant_deltas(g.surface, g, torsion_bound);
  }
  MatrixGroup g = build_gmp(m, p);
  return enumerate_invariant_deltas(g.surface, g, torsion_bound);
}

namespace detail {

inline void sweep_case(int m, int p, const ClassifyOptions& opt, ClassifyReport& rep,
                       const std::string& note = "", bool sumzero_cm_label = false) {
  bool sumzero = (m == p && (m == 3 || m == 6));
  std::vector<DeltaGroup> deltas = case_deltas(m, p, opt.torsion_bound);
  for (size_t di = 0; di < deltas.size(); ++di) {
    CaseResult r;
    r.m = m;
    r.p = p;
    r.model = sumzero ? Model::SumZeroE3 : Model::E2Standard;
    r.delta_index = static_cast<int>(di);
    r.delta = deltas[di];
    r.expectation = expectation_for(m, p, r.model, r.delta);
    AffineGroup ag = sumzero ? make_sumzero_case(m == 6, r.delta)
                             : make_standard_case(m, p, r.delta);
    r.verdict = check_smooth(ag);
    r.match = (r.expectation.exp == Expectation::NoExpectation)
                  ? true
                  : (r.verdict.smooth == expects_smooth(r.expectation.exp));
    if (opt.spot_check)
      r.spot_check_ok = spot_check_noncandidates(ag, r.verdict.candidates,
                                                 opt.spot_count, opt.seed);
    r.note = note;
    if (sumzero_cm_label) r.note += (r.note.empty() ? "" : "; ") + std::string("CM curve");
    rep.all_match = rep.all_match && r.match;
    rep.invariants_ok = rep.invariants_ok && r.spot_check_ok;
    rep.results.push_back(std::move(r));
  }
}

// Multiset of element orders; equal profiles plus matching reflection counts
// certify the exceptional isomorphism at the level this harness needs.
inline std::vector<long long> order_profile(const MatrixGroup& g) {
  std::vector<long long> orders;
  for (const auto& e : g.elems) orders.push_back(e.order);
  std::sort(orders.begin(), orders.end());
  return orders;
}

}  // namespace detail

inline ClassifyReport run_classification(const ClassifyOptions& opt = {}) {
  ClassifyReport rep;
  rep.torsion_bound = opt.torsion_bound;

  rep.excluded.push_back({2, 2, "G(2,2) is a Klein group; its representation is "
                                "reducible and the case is excluded"});

  detail::sweep_case(2, 1, opt, rep);
  detail::sweep_case(3, 1, opt, rep);
  detail::sweep_case(4, 1, opt, rep);
  detail::sweep_case(6, 1, opt, rep);
  detail::sweep_case(4, 2, opt, rep);
  detail::sweep_case(6, 2, opt, rep);
  detail::sweep_case(6, 3, opt, rep);
  detail::sweep_case(3, 3, opt, rep);
  detail::sweep_case(6, 6, opt, rep);

  // G(4,4) is handled through the exceptional isomorphism with G(2,1): the
  // sweep is delegated, because the isomorphism does not preserve lattices
  // and a fixed numeric kernel is not transported to itself. Structural
  // facts about the matrix group itself are still checked.
  {
    MatrixGroup g44 = build_gmp(4, 4);
    MatrixGroup g21 = build_gmp(2, 1);
    bool ok = g44.size() == 8 && g21.size() == 8 &&
              detail::order_profile(g44) == detail::order_profile(g21) &&
              g44.pseudoreflections().size() == g21.pseudoreflections().size();
    rep.alias_checks_ok = ok;
    rep.invariants_ok = rep.invariants_ok && ok;
    size_t before = rep.results.size();
    for (const auto& r : rep.results)
      if (r.m == 2 && r.p == 1) {
        CaseResult alias = r;
        alias.m = 4;
        alias.p = 4;
        alias.note = "alias of G(2,1) via the exceptional isomorphism";
        rep.results.push_back(std::move(alias));
      }
    (void)before;
    rep.notes.push_back("G(4,4) is isomorphic to G(2,1) as a complex reflection "
                        "group; its rows replay the G(2,1) sweep");
  }

  if (opt.explore_cm_pm) {
    detail::sweep_case(3, 3, opt, rep, "exploratory CM run", true);
    detail::sweep_case(6, 6, opt, rep, "exploratory CM run", true);
    rep.notes.push_back("sum-zero actions are integral in the (f, tau f) basis, "
                        "so verdicts are independent of the modulus of E; the CM "
                        "rows must repeat the generic rows");
  }

  return rep;
}

// ---------------------------------------------------------------------------
// Entrywise conjugation identities between the standard generators under the
// three isogeny matrices, and the kernel computation for the sum-zero one.

struct IdentityCheck {
  std::string name;
  bool pass;
};

namespace detail {

inline bool conj_equals(const Mat2c& M, const Mat2c& g, const Mat2c& want) {
  // M g M^-1 == want  <=>  M g adj(M) == det(M) * want
  Mat2c lhs = M * g * M.adjugate();
  Cyc d = M.det();
  for (int k = 0; k < 4; ++k)
    if (lhs.e[k] != d * want.e[k]) return false;
  return true;
}

inline bool conj_inv_equals(const Mat2c& M, const Mat2c& g, const Mat2c& want) {
  // M^-1 g M == want  <=>  adj(M) g M == det(M) * want
  Mat2c lhs = M.adjugate() * g * M;
  Cyc d = M.det();
  for (int k = 0; k < 4; ++k)
    if (lhs.e[k] != d * want.e[k]) return false;
  return true;
}

}  // namespace detail

inline std::vector<IdentityCheck> verify_matrix_identities() {
  std::vector<IdentityCheck> out;
  auto push = [&](const std::string& n, bool ok) { out.push_back({n, ok}); };

  {  // M = [[1,1],[1,-1]] against G(2,1) and the extra G(4,2) generator
    Cyc one2(2, 1);
    Mat2c M(one2, one2, one2, -one2);
    Mat2c diag1m1 = Mat2c::diag(one2, -one2);
    Mat2c swap2 = Mat2c::swap(2);
    push("[[1,1],[1,-1]]: (1,-1) -> (1 2)", detail::conj_equals(M, diag1m1, swap2));
    push("[[1,1],[1,-1]]: (1 2) -> (1,-1)", detail::conj_equals(M, swap2, diag1m1));
    push("[[1,1],[1,-1]] normalizes G(2,1)",
         conjugate_pair_check(M, build_gmp(2, 1)));

    Cyc one4(4, 1), i4(4, 0, 1);
    Mat2c M4(one4, one4, one4, -one4);
    Mat2c diag_i = Mat2c::diag(i4, -i4);
    push("[[1,1],[1,-1]]: (i,-i) -> (i,i)(1 2)",
         detail::conj_equals(M4, diag_i, Mat2c::scalar(i4) * Mat2c::swap(4)));
  }

  {  // N = [[1,i],[i,1]] against G(4,2). The displayed products arise from
     // the transport direction N^-1 (.) N; conjugation by N itself yields
     // the negatives, which also lie in the group.
    Cyc one(4, 1), i(4, 0, 1), zero(4, 0);
    Mat2c N(one, i, i, one);
    Mat2c diag_i = Mat2c::diag(i, -i);
    Mat2c diag_m1 = Mat2c::diag(-one, one);
    Mat2c swap = Mat2c::swap(4);
    push("[[1,i],[i,1]] transports (i,-i) -> (-1,1)(1 2)",
         detail::conj_inv_equals(N, diag_i, Mat2c(zero, -one, one, zero)));
    push("[[1,i],[i,1]] transports (-1,1) -> (1 2)(i,-i)",
         detail::conj_inv_equals(N, diag_m1, Mat2c(zero, -i, i, zero)));
    push("[[1,i],[i,1]] transports (1 2) -> (1 2)",
         detail::conj_inv_equals(N, swap, swap));
    push("[[1,i],[i,1]] normalizes G(4,2)",
         conjugate_pair_check(N, build_gmp(4, 2)));
  }

  {  // M = [[-1,-2],[2,1]] against S3 x {+-1} on the sum-zero surface
    Mat2c M = Mat2c::from_ints(2, -1, -2, 2, 1);
    Mat2c swap = Mat2c::swap(2);
    Mat2c cyc = Mat2c::from_ints(2, -1, -1, 1, 0);
    Mat2c minus = Mat2c::from_ints(2, -1, 0, 0, -1);
    push("[[-1,-2],[2,1]]: -1 -> -1", detail::conj_equals(M, minus, minus));
    push("[[-1,-2],[2,1]]: (1 2 3) -> (1 2 3)", detail::conj_equals(M, cyc, cyc));
    push("[[-1,-2],[2,1]]: (1 2) -> -(1 2)",
         detail::conj_equals(M, swap, minus * swap));
    push("[[-1,-2],[2,1]] normalizes S3 x {+-1}",
         conjugate_pair_check(M, build_sumzero_group(true)));

    // Kernel of the dual map (the adjugate): exactly the diagonal E[3].
    Surface surf = make_sumzero_surface();
    IntMat q4 = surf.rho4(M.adjugate());
    CongruenceSolution sol = solve_lattice_congruence(q4, TorsionVector(4));
    bool ok = sol.solvable && sol.kernel.rank() == 0 && sol.reps.size() == 9;
    if (ok)
      for (const auto& r : sol.reps)
        ok = ok && r.den <= 3 && r.num[0] == r.num[2] && r.num[1] == r.num[3];
    push("[[-1,-2],[2,1]] dual kernel = diagonal E[3]", ok);
  }

  return out;
}

// ---------------------------------------------------------------------------

struct ExampleCReport {
  bool order_16 = false;
  bool conjugate_of_g42 = false;
  bool generators_match = false;
  bool reflection_count_matches = false;
  bool smooth = false;
  bool all() const {
    return order_16 && conjugate_of_g42 && generators_match &&
           reflection_count_matches && smooth;
  }
};

inline ExampleCReport verify_example_c() {
  ExampleCReport rep;
  MatrixGroup ec = example_c_group();
  MatrixGroup g42 = build_gmp(4, 2);
  rep.order_16 = ec.size() == 16 && g42.size() == 16;

  Mat2c C = example_c_isogeny_matrix();
  rep.conjugate_of_g42 = conjugate_maps_onto(C, g42, ec);

  {  // the three stated generators are the C-conjugates of the plain ones
    Cyc one(4, 1), i(4, 0, 1), zero(4, 0);
    Mat2c plain[3] = {Mat2c::diag(-one, one), Mat2c::diag(-i, i), Mat2c::swap(4)};
    Mat2c stated[3] = {Mat2c(-one, one + i, zero, one),
                       Mat2c(-i, i - one, zero, i),
                       Mat2c(-one, zero, i - one, one)};
    rep.generators_match = true;
    for (int k = 0; k < 3; ++k)
      rep.generators_match =
          rep.generators_match && detail::conj_equals(C, plain[k], stated[k]);
  }

  rep.reflection_count_matches =
      ec.pseudoreflections().size() == g42.pseudoreflections().size();

  AffineGroup ag{ec.surface, ec, trivial_delta()};
  rep.smooth = check_smooth(ag).smooth;
  return rep;
}

}  // namespace smoothquot

#endif

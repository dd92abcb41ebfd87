// Branch data of the exceptional configuration: B the Gaussian E^2,
// G = G(4,2), Delta = <(t0,t0)> with t0 = (1+i)/2, inside G1 = G(4,1).
//
// The quotient A/G is a (Z/2)^2-cover of B/G1 through the residual
// involution s (multiply the first coordinate by i) and the residual
// translation t0*. The fixed sets of s, t0* and s*t0* in A pull back to B as
// solution sets of
//   tau*x = S*x + u + delta        (tau in G, delta in Delta)
// with S the matrix of (a,b) -> (ia,b) and u in {0, (t0,0)}; pushing through
// q0 x q0 (multiplication by 1-i on both coordinates) lands the picture back
// in B, where the curve components can be listed exactly.

#ifndef SMOOTHQUOT_BRANCH_HPP_
#define SMOOTHQUOT_BRANCH_HPP_

#include <map>
#include <string>
#include <vector>

#include "classify.hpp"

namespace smoothquot {

struct BranchComponent {
  Subtorus span;
  TorsionVector translate;  // least representative on the coset
};

struct BranchSet {
  std::string label;
  std::vector<BranchComponent> curves;        // sorted by coset key
  std::vector<TorsionVector> residue_points;  // isolated images off the curves
};

struct BranchReport {
  std::vector<BranchSet> sets;  // order: s, t0*, s t0*
  bool curves_as_expected = false;
  bool pairwise_zero_dimensional = false;
  bool triple_intersection_empty = false;
  bool four_components_transitive = false;
  bool all() const {
    return curves_as_expected && pairwise_zero_dimensional &&
           triple_intersection_empty && four_components_transitive;
  }
};

namespace detail {

inline TorsionVector canonical_translate(const Subtorus& span, const TorsionVector& t) {
  if (span.rank() == 0) return t;
  CongruenceSolution sol =
      solve_lattice_congruence(span.perp.basis, perp_image(span, t));
  if (!sol.solvable || sol.reps.empty()) fail("coset has no representative");
  return sol.reps.front();
}

inline BranchComponent push_component(const IntMat& Q, const Subtorus& span,
                                      const TorsionVector& t) {
  IntMat rows = span.span.basis * Q.transposed();
  Subtorus image_span(Sublattice::from_rows(rows));
  TorsionVector image_t = Q * t;
  return {image_span, canonical_translate(image_span, image_t)};
}

}  // namespace detail

inline BranchReport branch_locus_report() {
  Surface surf = make_surface(4, Model::E2Standard);
  MatrixGroup g42 = build_gmp(4, 2);
  TorsionVector t0_pair(2, {1, 1, 1, 1});   // (t0, t0)
  TorsionVector t0_first(2, {1, 1, 0, 0});  // (t0, 0)
  std::vector<TorsionVector> delta = {TorsionVector(4), t0_pair};

  Cyc one(4, 1), i(4, 0, 1);
  IntMat S = surf.rho4(Mat2c::diag(i, one));
  IntMat Q = surf.rho4(Mat2c::scalar(one - i));  // q0 x q0

  struct Condition {
    std::string label;
    IntMat twist;
    TorsionVector shift;
  };
  std::vector<Condition> conds = {
      {"s", S, TorsionVector(4)},
      {"t0*", IntMat::identity(4), t0_first},
      {"s t0*", S, t0_first},
  };

  BranchReport rep;
  for (const auto& cond : conds) {
    BranchSet set;
    set.label = cond.label;
    std::map<CosetKey, BranchComponent> curves;
    std::vector<TorsionVector> raw_points;
    for (const auto& tau : g42.elems)
      for (const auto& d : delta) {
        IntMat A = tau.mat4 - cond.twist;
        CongruenceSolution sol = solve_lattice_congruence(A, cond.shift + d);
        if (!sol.solvable) continue;
        if (sol.kernel.rank() == 4) fail("branch condition degenerates");
        if (sol.kernel.rank() == 0) {
          for (const auto& ptv : sol.reps) raw_points.push_back(Q * ptv);
        } else {
          Subtorus dir(sol.kernel);
          for (const auto& t : sol.reps) {
            BranchComponent c = detail::push_component(Q, dir, t);
            curves.emplace(coset_key(c.span, c.translate), c);
          }
        }
      }
    for (auto& [k, c] : curves) set.curves.push_back(c);
    std::sort(raw_points.begin(), raw_points.end());
    raw_points.erase(std::unique(raw_points.begin(), raw_points.end()),
                     raw_points.end());
    for (const auto& ptv : raw_points) {
      bool on_curve = false;
      for (const auto& c : set.curves)
        if (c.span.contains(ptv - c.translate)) { on_curve = true; break; }
      if (!on_curve) set.residue_points.push_back(ptv);
    }
    rep.sets.push_back(std::move(set));
  }

  // Expected one-dimensional parts, with E[2] = {0, t0, t1, t2}:
  //   s    : E x {0},  {0} x E
  //   t0*  : E x {t1}, E x {t2}, {t1} x E, {t2} x E
  //   s t0*: E x {t0}, {t0} x E
  Subtorus first_axis(Sublattice::from_rows(IntMat(2, 4, {1, 0, 0, 0, 0, 1, 0, 0})));
  Subtorus second_axis(Sublattice::from_rows(IntMat(2, 4, {0, 0, 1, 0, 0, 0, 0, 1})));
  auto horizontal = [&](long long a, long long b) {  // E x {point (a+bi)/2}
    return coset_key(first_axis, TorsionVector(2, {0, 0, a, b}));
  };
  auto vertical = [&](long long a, long long b) {  // {point} x E
    return coset_key(second_axis, TorsionVector(2, {a, b, 0, 0}));
  };
  std::vector<std::vector<CosetKey>> expected = {
      {horizontal(0, 0), vertical(0, 0)},
      {horizontal(1, 0), horizontal(0, 1), vertical(1, 0), vertical(0, 1)},
      {horizontal(1, 1), vertical(1, 1)},
  };
  rep.curves_as_expected = true;
  for (int k = 0; k < 3; ++k) {
    std::vector<CosetKey> got;
    for (const auto& c : rep.sets[k].curves) got.push_back(coset_key(c.span, c.translate));
    std::sort(got.begin(), got.end());
    std::sort(expected[k].begin(), expected[k].end());
    rep.curves_as_expected = rep.curves_as_expected && got == expected[k];
  }

  // No two of the three divisors may share a curve: crossing spans meet in
  // finitely many points, parallel distinct cosets not at all.
  rep.pairwise_zero_dimensional = true;
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      for (const auto& ca : rep.sets[a].curves)
        for (const auto& cb : rep.sets[b].curves)
          if (coset_key(ca.span, ca.translate) == coset_key(cb.span, cb.translate))
            rep.pairwise_zero_dimensional = false;

  // The three 1-dimensional parts have no common point.
  rep.triple_intersection_empty = true;
  for (const auto& ca : rep.sets[0].curves)
    for (const auto& cb : rep.sets[1].curves) {
      if (ca.span.span == cb.span.span) continue;
      CurveComponent x{ca.span, ca.translate}, y{cb.span, cb.translate};
      for (const auto& ptv : curve_intersection_points(x, y))
        for (const auto& cc : rep.sets[2].curves)
          if (cc.span.contains(ptv - cc.translate))
            rep.triple_intersection_empty = false;
    }

  // G(4,1) permutes the four curves of the t0* divisor transitively.
  {
    MatrixGroup g41 = build_gmp(4, 1);
    std::vector<CosetKey> keys;
    for (const auto& c : rep.sets[1].curves) keys.push_back(coset_key(c.span, c.translate));
    std::sort(keys.begin(), keys.end());
    std::vector<CosetKey> orbit{keys.front()};
    const BranchComponent& seed = rep.sets[1].curves.front();
    for (const auto& ge : g41.elems) {
      IntMat rows = seed.span.span.basis * ge.mat4.transposed();
      Subtorus sp(Sublattice::from_rows(rows));
      TorsionVector tr = ge.mat4 * seed.translate;
      CosetKey k = coset_key(sp, detail::canonical_translate(sp, tr));
      if (std::find(orbit.begin(), orbit.end(), k) == orbit.end()) orbit.push_back(k);
    }
    std::sort(orbit.begin(), orbit.end());
    rep.four_components_transitive = orbit == keys && keys.size() == 4;
  }

  return rep;
}

}  // namespace smoothquot

#endif

// Smoothness of B/(Delta x| G) via the Chevalley-Shephard-Todd criterion:
// the quotient is smooth iff every point's stabilizer is generated by
// pseudoreflections.
//
// Only finitely many points can fail, and they are all found here. For a
// point x with stabilizer S:
//  - if some s in S has nonsingular 1-g, then x is an isolated fixed point
//    of s and is enumerated from s directly;
//  - otherwise every non-identity s in S fixes a curve through x. If two of
//    those curves differ they have different tangent spans (complex lines),
//    so x lies on the intersection of two rank-2 components, which is
//    enumerated from the component pairs;
//  - if all of them fix one and the same curve through x, every non-identity
//    element of S is a pseudoreflection along that curve, so S is generated
//    by pseudoreflections and x cannot fail.
// Isolated fixed points and pairwise component intersections therefore
// contain every potentially singular image point. A seeded sampler
// cross-checks this completeness claim empirically.

#ifndef SMOOTHQUOT_SMOOTHNESS_HPP_
#define SMOOTHQUOT_SMOOTHNESS_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "group.hpp"

namespace smoothquot {

struct CandidatePoint {
  TorsionVector point;
  std::string provenance;  // "fix of <elt>" or "meet of curves"
  bool operator<(const CandidatePoint& o) const { return point < o.point; }
};

// Canonical key of a coset translate + span: the perp image determines the
// coset of the subtorus uniquely.
struct CosetKey {
  std::vector<long long> span;  // flattened HNF basis
  TorsionVector perp_image;
  bool operator<(const CosetKey& o) const {
    if (span != o.span) return span < o.span;
    if (perp_image.den != o.perp_image.den) return perp_image.den < o.perp_image.den;
    return perp_image.num < o.perp_image.num;
  }
  bool operator==(const CosetKey& o) const {
    return span == o.span && perp_image == o.perp_image;
  }
};

inline TorsionVector perp_image(const Subtorus& st, const TorsionVector& t) {
  std::vector<long long> n(st.perp.rank(), 0);
  for (int i = 0; i < st.perp.rank(); ++i)
    for (int j = 0; j < t.dim(); ++j)
      n[i] = checked_add(n[i], checked_mul(st.perp.basis(i, j), t.num[j]));
  return TorsionVector(t.den, std::move(n));
}

inline CosetKey coset_key(const Subtorus& st, const TorsionVector& t) {
  CosetKey k;
  k.span = st.span.basis.a;
  k.span.insert(k.span.begin(), st.span.rank());
  k.perp_image = perp_image(st, t);
  return k;
}

struct CurveComponent {
  Subtorus span;
  TorsionVector translate;
};

// Isolated intersection points of two non-parallel rank-2 cosets, computed
// from the stacked perp congruences.
inline std::vector<TorsionVector> curve_intersection_points(const CurveComponent& a,
                                                            const CurveComponent& b) {
  int n = 4;
  const Sublattice& p1 = a.span.perp;
  const Sublattice& p2 = b.span.perp;
  IntMat W(p1.rank() + p2.rank(), n);
  for (int i = 0; i < p1.rank(); ++i)
    for (int j = 0; j < n; ++j) W(i, j) = p1.basis(i, j);
  for (int i = 0; i < p2.rank(); ++i)
    for (int j = 0; j < n; ++j) W(p1.rank() + i, j) = p2.basis(i, j);

  TorsionVector r1 = perp_image(a.span, a.translate);
  TorsionVector r2 = perp_image(b.span, b.translate);
  long long den = lcm_ll(r1.den, r2.den);
  std::vector<long long> rhs;
  for (long long v : r1.rescaled(den).num) rhs.push_back(v);
  for (long long v : r2.rescaled(den).num) rhs.push_back(v);

  CongruenceSolution sol = solve_lattice_congruence(W, TorsionVector(den, rhs));
  if (!sol.solvable) return {};
  if (sol.kernel.rank() != 0)
    fail("curves with distinct spans must meet in isolated points");
  return sol.reps;
}

// ---------------------------------------------------------------------------

inline std::vector<CandidatePoint> candidate_points(const AffineGroup& ag) {
  std::vector<CurveComponent> comps;
  std::map<CosetKey, bool> comp_seen;
  std::map<TorsionVector, std::string> points;

  int id = ag.group.identity_index();
  for (const auto& s : ag.all_elements()) {
    if (s.g == id && s.t.is_zero()) continue;
    FixedLocus loc = ag.fixed_locus_of(s);
    if (loc.empty) continue;
    if (loc.component_rank() == 0) {
      for (const auto& p : loc.translates)
        points.emplace(p, "fix of " + ag.element_name(s));
    } else if (loc.component_rank() == 2) {
      for (const auto& t : loc.translates) {
        CosetKey key = coset_key(loc.direction, t);
        if (!comp_seen.emplace(key, true).second) continue;
        comps.push_back({loc.direction, t});
      }
    }
    // rank 4 would mean the identity; excluded above
  }

  for (size_t i = 0; i < comps.size(); ++i)
    for (size_t j = i + 1; j < comps.size(); ++j) {
      if (comps[i].span.span == comps[j].span.span) continue;  // parallel
      for (const auto& p : curve_intersection_points(comps[i], comps[j]))
        points.emplace(p, "meet of curves");
    }

  // Deduplicate along the group action: stabilizers along an orbit are
  // conjugate, so one representative (the least) per orbit suffices.
  std::vector<AffineElement> all = ag.all_elements();
  std::map<TorsionVector, bool> orbit_rep_seen;
  std::vector<CandidatePoint> out;
  for (const auto& [x, why] : points) {
    TorsionVector rep = x;
    for (const auto& s : all) {
      TorsionVector y = ag.apply(s, x);
      if (y < rep) rep = y;
    }
    if (!orbit_rep_seen.emplace(rep, true).second) continue;
    auto it = points.find(rep);
    out.push_back({rep, it != points.end() ? it->second : why});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// All (t, g) with g*x + t = x.
inline std::vector<AffineElement> stabilizer(const AffineGroup& ag,
                                             const TorsionVector& x) {
  std::vector<AffineElement> out;
  for (const auto& s : ag.all_elements())
    if (ag.apply(s, x) == x) out.push_back(s);
  return out;
}

struct StabilizerReport {
  TorsionVector point;
  std::vector<AffineElement> stab;
  std::vector<std::string> stab_names;
  std::vector<AffineElement> reflections;          // pseudoreflections in stab
  std::vector<AffineElement> reflection_subgroup;  // what they generate
  bool passes = false;

  long long stab_order() const { return static_cast<long long>(stab.size()); }
  long long reflection_subgroup_order() const {
    return static_cast<long long>(reflection_subgroup.size());
  }
};

inline StabilizerReport cst_check(const AffineGroup& ag, const TorsionVector& x) {
  StabilizerReport r;
  r.point = x;
  r.stab = stabilizer(ag, x);
  for (const auto& s : r.stab) {
    r.stab_names.push_back(ag.element_name(s));
    // Inside a stabilizer the fixed locus is nonempty, so the geometric
    // pseudoreflection test reduces to the rank of 1-g.
    if (is_pseudoreflection_mat4(ag.mat(s))) r.reflections.push_back(s);
  }
  r.reflection_subgroup = subgroup_generated_by(ag, r.reflections);
  r.passes = r.reflection_subgroup.size() == r.stab.size();
  return r;
}

struct SmoothnessVerdict {
  bool smooth = false;
  std::optional<StabilizerReport> witness;  // least failing candidate
  std::vector<CandidatePoint> candidates;
};

inline SmoothnessVerdict check_smooth(const AffineGroup& ag) {
  SmoothnessVerdict v;
  v.candidates = candidate_points(ag);
  v.smooth = true;
  for (const auto& c : v.candidates) {
    StabilizerReport r = cst_check(ag, c.point);
    if (!r.passes) {
      v.smooth = false;
      v.witness = std::move(r);
      break;
    }
  }
  return v;
}

// Empirical completeness check: sampled torsion points whose orbit meets no
// candidate must have trivial or reflection-generated stabilizers. Candidates
// are stored as least orbit representatives, so the sample is canonicalized
// the same way before the exclusion test.
inline bool spot_check_noncandidates(const AffineGroup& ag,
                                     const std::vector<CandidatePoint>& candidates,
                                     int count, std::uint64_t seed,
                                     long long torsion = 12) {
  SplitMix64 rng(seed);
  std::vector<AffineElement> all = ag.all_elements();
  auto orbit_min = [&](const TorsionVector& x) {
    TorsionVector rep = x;
    for (const auto& s : all) {
      TorsionVector y = ag.apply(s, x);
      if (y < rep) rep = y;
    }
    return rep;
  };
  auto is_candidate = [&](const TorsionVector& rep) {
    for (const auto& c : candidates)
      if (c.point == rep) return true;
    return false;
  };
  int done = 0;
  while (done < count) {
    std::vector<long long> num(4);
    for (auto& v : num) v = static_cast<long long>(rng.below(torsion));
    TorsionVector x(torsion, num);
    if (is_candidate(orbit_min(x))) continue;
    StabilizerReport r = cst_check(ag, x);
    if (!r.passes) return false;
    ++done;
  }
  return true;
}

}  // namespace smoothquot

#endif

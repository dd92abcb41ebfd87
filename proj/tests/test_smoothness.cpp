#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "smoothquot/classify.hpp"

using namespace smoothquot;

namespace {

DeltaGroup delta_from(const MatrixGroup& g, std::initializer_list<TorsionVector> gens) {
  auto deltas = enumerate_invariant_deltas(g.surface, g);
  for (const auto& d : deltas) {
    bool all_in = true;
    for (const auto& t : gens) all_in = all_in && d.contains(t);
    if (!all_in) continue;
    // smallest enumerated kernel containing the generators
    bool minimal = true;
    for (const auto& d2 : deltas) {
      if (d2.order() >= d.order() || d2.elements == d.elements) continue;
      bool in2 = true;
      for (const auto& t : gens) in2 = in2 && d2.contains(t);
      if (in2) minimal = false;
    }
    if (minimal) return d;
  }
  fail("no enumerated kernel contains the requested generators");
}

}  // namespace

TEST_CASE("stabilizer of the origin is the linear group") {
  MatrixGroup g = build_gmp(4, 2);
  DeltaGroup d = delta_from(g, {TorsionVector(2, {1, 1, 1, 1})});
  AffineGroup ag{g.surface, g, d};
  auto stab = stabilizer(ag, TorsionVector(4));
  CHECK(stab.size() == 16);
  for (const auto& s : stab) CHECK(s.t.is_zero());
}

TEST_CASE("stabilizer of the half-period pair in the swap-pair case") {
  MatrixGroup g = build_gmp(2, 1);
  // Delta = {0,(t1,t2),(t2,t1),(t1+t2,t1+t2)} with t1 = 1/2, t2 = tau/2
  TorsionVector t1t2(2, {1, 0, 0, 1});
  DeltaGroup d = delta_from(g, {t1t2});
  REQUIRE(d.order() == 4);
  AffineGroup ag{g.surface, g, d};

  // the point (t1', t2') with 2ti' = ti
  TorsionVector x(4, {1, 0, 0, 1});
  auto stab = stabilizer(ag, x);
  REQUIRE(stab.size() == 2);
  int minus = g.find_mat2(Mat2c::scalar(Cyc(2, -1)));
  bool found = false;
  for (const auto& s : stab)
    if (s.g == minus && s.t == t1t2) found = true;
  CHECK(found);

  StabilizerReport r = cst_check(ag, x);
  CHECK(!r.passes);
  CHECK(r.reflections.empty());
  CHECK(r.reflection_subgroup_order() == 1);
}

TEST_CASE("stabilizer of (s,-s) in the antidiagonal 3-torsion case") {
  MatrixGroup g = build_gmp(3, 1);
  // s0 = the nontrivial zeta_3-invariant point (1+2w)/3
  TorsionVector s0_anti(3, {1, 2, 2, 1});  // (s0, -s0)
  DeltaGroup d = delta_from(g, {s0_anti});
  REQUIRE(d.order() == 3);
  AffineGroup ag{g.surface, g, d};

  // s = 1/3 is not zeta_3-invariant; the point (s, -s)
  TorsionVector x(3, {1, 0, 2, 0});
  auto stab = stabilizer(ag, x);
  REQUIRE(stab.size() == 3);
  for (const auto& s : stab) {
    if (s.t.is_zero()) continue;
    // nontrivial elements: translation +-(s0,-s0) with a scalar cube root
    CHECK(!s.t.is_zero());
    CHECK((s.t == s0_anti || s.t == -s0_anti));
    const Mat2c& m2 = *g.elems[s.g].mat2;
    CHECK(m2.is_diagonal());
    CHECK(m2.e[0] == m2.e[3]);
  }
  StabilizerReport r = cst_check(ag, x);
  CHECK(!r.passes);
  CHECK(r.reflection_subgroup_order() == 1);
}

TEST_CASE("reflection-generated stabilizers pass") {
  MatrixGroup g = build_gmp(4, 1);
  AffineGroup ag{g.surface, g, trivial_delta()};
  StabilizerReport origin = cst_check(ag, TorsionVector(4));
  CHECK(origin.passes);
  CHECK(origin.stab_order() == 32);
}

TEST_CASE("two-torsion axis point fails in G(6,2)") {
  MatrixGroup g = build_gmp(6, 2);
  AffineGroup ag{g.surface, g, trivial_delta()};
  StabilizerReport r = cst_check(ag, TorsionVector(2, {1, 0, 0, 0}));
  CHECK(!r.passes);
  CHECK(r.stab_order() == 6);
  CHECK(r.reflection_subgroup_order() == 3);
}

TEST_CASE("candidate points include the failing witnesses") {
  MatrixGroup g = build_gmp(2, 1);
  DeltaGroup d = delta_from(g, {TorsionVector(2, {1, 0, 0, 1})});
  AffineGroup ag{g.surface, g, d};
  auto candidates = candidate_points(ag);
  CHECK(!candidates.empty());
  // the origin's orbit representative is the origin itself
  bool has_origin = false;
  for (const auto& c : candidates) has_origin = has_origin || c.point.is_zero();
  CHECK(has_origin);
  // candidates are sorted and unique
  for (size_t i = 0; i + 1 < candidates.size(); ++i)
    CHECK(candidates[i].point < candidates[i + 1].point);

  auto covers = [&](const TorsionVector& x) {
    TorsionVector rep = x;
    for (const auto& s : ag.all_elements()) {
      TorsionVector y = ag.apply(s, x);
      if (y < rep) rep = y;
    }
    for (const auto& c : candidates)
      if (c.point == rep) return true;
    return false;
  };
  // the half-period pair lies in the candidate set, up to the action
  CHECK(covers(TorsionVector(4, {1, 0, 0, 1})));
}

TEST_CASE("candidate points include (s,-s) in the antidiagonal case") {
  MatrixGroup g = build_gmp(3, 1);
  DeltaGroup d = delta_from(g, {TorsionVector(3, {1, 2, 2, 1})});
  AffineGroup ag{g.surface, g, d};
  auto candidates = candidate_points(ag);
  TorsionVector x(3, {1, 0, 2, 0});
  TorsionVector rep = x;
  for (const auto& s : ag.all_elements()) {
    TorsionVector y = ag.apply(s, x);
    if (y < rep) rep = y;
  }
  bool found = false;
  for (const auto& c : candidates) found = found || c.point == rep;
  CHECK(found);
}

TEST_CASE("verdict examples") {
  SUBCASE("G(4,2) with the invariant diagonal kernel is smooth") {
    MatrixGroup g = build_gmp(4, 2);
    DeltaGroup d = delta_from(g, {TorsionVector(2, {1, 1, 1, 1})});
    AffineGroup ag{g.surface, g, d};
    CHECK(check_smooth(ag).smooth);
  }
  SUBCASE("G(4,2) with trivial kernel is not smooth") {
    MatrixGroup g = build_gmp(4, 2);
    AffineGroup ag{g.surface, g, trivial_delta()};
    SmoothnessVerdict v = check_smooth(ag);
    CHECK(!v.smooth);
    REQUIRE(v.witness.has_value());
    CHECK(!v.witness->passes);
    // witness is the least failing candidate
    for (const auto& c : v.candidates) {
      if (c.point == v.witness->point) break;
      CHECK(cst_check(ag, c.point).passes);
    }
  }
  SUBCASE("sum-zero S3 x {+-1} with trivial kernel is not smooth") {
    MatrixGroup g = build_sumzero_group(true);
    AffineGroup ag{g.surface, g, trivial_delta()};
    CHECK(!check_smooth(ag).smooth);
  }
  SUBCASE("sum-zero S3 with trivial kernel is smooth") {
    MatrixGroup g = build_sumzero_group(false);
    AffineGroup ag{g.surface, g, trivial_delta()};
    CHECK(check_smooth(ag).smooth);
  }
}

TEST_CASE("stabilizers are conjugate along orbits") {
  SUBCASE("exhaustive on a small case") {
    MatrixGroup g = build_gmp(2, 1);
    DeltaGroup d = delta_from(g, {TorsionVector(2, {1, 0, 0, 1})});
    AffineGroup ag{g.surface, g, d};
    std::vector<AffineElement> all = ag.all_elements();
    for (const auto& c : candidate_points(ag)) {
      auto stab = stabilizer(ag, c.point);
      for (const auto& u : all) {
        TorsionVector y = ag.apply(u, c.point);
        auto stab_y = stabilizer(ag, y);
        REQUIRE(stab.size() == stab_y.size());
        AffineElement uinv = ag.inverse(u);
        for (const auto& s : stab) {
          AffineElement conj = ag.compose(u, ag.compose(s, uinv));
          bool found = false;
          for (const auto& t : stab_y) found = found || affine_equal(t, conj);
          CHECK(found);
        }
      }
    }
  }
  SUBCASE("sampled on the exceptional case") {
    MatrixGroup g = build_gmp(4, 2);
    DeltaGroup d = delta_from(g, {TorsionVector(2, {1, 1, 1, 1})});
    AffineGroup ag{g.surface, g, d};
    auto candidates = candidate_points(ag);
    std::vector<AffineElement> all = ag.all_elements();
    SplitMix64 rng(5);
    for (const auto& c : candidates) {
      auto stab = stabilizer(ag, c.point);
      const AffineElement& u = all[rng.below(all.size())];
      TorsionVector y = ag.apply(u, c.point);
      auto stab_y = stabilizer(ag, y);
      REQUIRE(stab.size() == stab_y.size());
      AffineElement uinv = ag.inverse(u);
      for (const auto& s : stab) {
        AffineElement conj = ag.compose(u, ag.compose(s, uinv));
        bool found = false;
        for (const auto& t : stab_y) found = found || affine_equal(t, conj);
        CHECK(found);
      }
    }
  }
}

// Verdicts agree across the two realizations of the same quotient: the
// affine picture on B and the linear picture on the quotient lattice.
TEST_CASE("verdicts transport through quotient isogenies") {
  struct Probe { int m, p; TorsionVector gen; };
  std::vector<Probe> probes = {
      {2, 1, TorsionVector(2, {1, 0, 1, 0})},   // the order-2 diagonal kernel
      {4, 2, TorsionVector(2, {1, 1, 1, 1})},
  };
  for (const auto& pr : probes) {
    MatrixGroup g = build_gmp(pr.m, pr.p);
    DeltaGroup d = delta_from(g, {pr.gen});
    AffineGroup affine{g.surface, g, d};
    bool smooth_b = check_smooth(affine).smooth;

    std::vector<IntMat> mats;
    for (const auto& e : g.elems) mats.push_back(e.mat4);
    QuotientIsogeny q = quotient_by_delta(mats, d.elements, true);
    MatrixGroup ga = transported_group(g, q);
    AffineGroup linear{g.surface, ga, trivial_delta()};
    CHECK(check_smooth(linear).smooth == smooth_b);
  }
}

// When an isogeny matrix normalizes the group, the kernel case and the
// kernel-free case are isomorphic pairs, so their verdicts agree.
TEST_CASE("conjugation invariance of verdicts") {
  SUBCASE("G(2,1), full diagonal kernel vs none") {
    MatrixGroup g = build_gmp(2, 1);
    DeltaGroup full = delta_from(g, {TorsionVector(2, {1, 0, 1, 0}),
                                     TorsionVector(2, {0, 1, 0, 1})});
    REQUIRE(full.order() == 4);
    AffineGroup with{g.surface, g, full}, without{g.surface, g, trivial_delta()};
    CHECK(check_smooth(with).smooth == check_smooth(without).smooth);
  }
  SUBCASE("G(4,2), both order-4 kernels vs none") {
    MatrixGroup g = build_gmp(4, 2);
    auto deltas = enumerate_invariant_deltas(g.surface, g);
    AffineGroup without{g.surface, g, trivial_delta()};
    bool base = check_smooth(without).smooth;
    for (const auto& d : deltas)
      if (d.order() == 4) {
        AffineGroup with{g.surface, g, d};
        CHECK(check_smooth(with).smooth == base);
      }
  }
  SUBCASE("sum-zero S3 x {+-1}, order-9 kernel vs none") {
    MatrixGroup g = build_sumzero_group(true);
    auto deltas = enumerate_invariant_deltas(g.surface, g);
    AffineGroup without{g.surface, g, trivial_delta()};
    bool base = check_smooth(without).smooth;
    for (const auto& d : deltas)
      if (d.order() == 9) {
        AffineGroup with{g.surface, g, d};
        CHECK(check_smooth(with).smooth == base);
      }
  }
}

// For kernel-free smooth cases every stabilizer is itself generated by its
// pseudoreflections (it acts as a reflection group on the tangent space).
TEST_CASE("smooth kernel-free cases have reflection-group stabilizers") {
  for (int m : {2, 3, 4, 6}) {
    MatrixGroup g = build_gmp(m, 1);
    AffineGroup ag{g.surface, g, trivial_delta()};
    SmoothnessVerdict v = check_smooth(ag);
    REQUIRE(v.smooth);
    for (const auto& c : v.candidates) {
      StabilizerReport r = cst_check(ag, c.point);
      CHECK(r.passes);
      for (const auto& s : r.stab) CHECK(s.t.is_zero());
    }
  }
}

TEST_CASE("sampling cross-check on a smooth and a singular case") {
  MatrixGroup g = build_gmp(4, 2);
  DeltaGroup d = delta_from(g, {TorsionVector(2, {1, 1, 1, 1})});
  AffineGroup smooth_case{g.surface, g, d};
  auto cands = candidate_points(smooth_case);
  CHECK(spot_check_noncandidates(smooth_case, cands, 100, 7));

  AffineGroup singular_case{g.surface, g, trivial_delta()};
  auto cands2 = candidate_points(singular_case);
  CHECK(spot_check_noncandidates(singular_case, cands2, 100, 7));
}

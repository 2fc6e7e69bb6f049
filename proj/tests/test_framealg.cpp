#include <doctest.h>

#include <random>

#include "geomodal/coalgfun.hpp"
#include "geomodal/framealg.hpp"
#include "test_util.hpp"

using namespace geomodal;
using geomodal::testutil::all_small_frames;

namespace {

FinFrame boolean4() { return opn_frame(FinSpace::discrete({"x", "y"})); }

}  // namespace

TEST_CASE("negation") {
  FinFrame B = boolean4();
  int ax = *B.element_index("{x}");
  int ay = *B.element_index("{y}");
  CHECK(negation(B, ax) == ay);
  for (const auto& F : all_small_frames(6)) CHECK(negation(F, F.bot()) == F.top());

  FinFrame OS = opn_frame(FinSpace::sierpinski());
  int one = *OS.element_index("{1}");
  CHECK(negation(OS, one) == OS.bot());
}

TEST_CASE("well-inside and its Lemma characterization") {
  FinFrame B = boolean4();
  for (int a = 0; a < B.size(); ++a) CHECK(well_inside(B, a, a));

  FinFrame OS = opn_frame(FinSpace::sierpinski());
  int one = *OS.element_index("{1}");
  CHECK_FALSE(well_inside(OS, one, one));

  // ⊥ ⋖ b always; the ∃c-criterion and ∼a ∨ b = ⊤ agree on every instance
  // (well_inside raises InternalError on disagreement, so this sweep is the
  // Lemma check)
  for (const auto& F : all_small_frames(6)) {
    for (int b = 0; b < F.size(); ++b) CHECK(well_inside(F, F.bot(), b));
    for (int a = 0; a < F.size(); ++a)
      for (int b = 0; b < F.size(); ++b) CHECK_NOTHROW(well_inside(F, a, b));
  }
}

TEST_CASE("regularity") {
  CHECK(is_regular_frame(FinFrame::two()));
  CHECK(is_regular_frame(boolean4()));
  FinFrame OS = opn_frame(FinSpace::sierpinski());
  CHECK_FALSE(is_regular_frame(OS));
  CHECK_FALSE(is_regular_element(OS, *OS.element_index("{1}")));

  // meets and joins of regular elements are regular, exhaustively
  for (const auto& F : all_small_frames(6))
    for (int a = 0; a < F.size(); ++a)
      for (int b = 0; b < F.size(); ++b)
        if (is_regular_element(F, a) && is_regular_element(F, b)) {
          CHECK(is_regular_element(F, F.meet(a, b)));
          CHECK(is_regular_element(F, F.join(a, b)));
        }
}

TEST_CASE("present_M instantiates the box/diamond relations over F^2") {
  FinFrame two = FinFrame::two();
  Presentation P = present_M(two);
  CHECK(P.generators.size() == 4);

  // M2 fires exactly at the pairs with a ∧ b = ⊥, M5 at those with a ∨ b = ⊤
  int m2 = 0, m5 = 0;
  for (const auto& r : P.relations) {
    if (r.kind == RelKind::Eq && r.lhs.kind == LatticeTerm::Kind::Meet &&
        r.lhs.children.size() == 2)
      ++m2;
    if (r.kind == RelKind::Leq && r.lhs.kind == LatticeTerm::Kind::Meet &&
        r.lhs.children.empty())
      ++m5;
  }
  CHECK(m2 == 3);
  CHECK(m5 == 3);

  // the trivial one-element frame degenerates to two generators with both
  // instances at (⊤,⊤)
  FinFrame one = FinFrame::from_leq({"t"}, {{true}});
  Presentation P1 = present_M(one);
  CHECK(P1.generators.size() == 2);
  int m2_1 = 0, m5_1 = 0;
  for (const auto& r : P1.relations) {
    if (r.kind == RelKind::Eq && r.lhs.kind == LatticeTerm::Kind::Meet) ++m2_1;
    if (r.kind == RelKind::Leq && r.lhs.kind == LatticeTerm::Kind::Meet &&
        r.lhs.children.empty())
      ++m5_1;
  }
  CHECK(m2_1 == 1);
  CHECK(m5_1 == 1);
}

TEST_CASE("presentation_points solves the M presentation of the two-element frame") {
  PresentationPoints pts = presentation_points(present_M(FinFrame::two()));
  CHECK(pts.space.size() == 3);
  CHECK(pts.space.opens().size() == 8);  // discrete on three points
  // the constraints force dia values to be negated box values
  FinFrame two = FinFrame::two();
  int b0 = 0, b1 = 1, d0 = 2, d1 = 3;  // generator order: box(bot),box(top),dia(bot),dia(top)
  CHECK(present_M(two).generators[b0] == m_box_name(two, two.bot()));
  for (const auto& h : pts.assignments) {
    CHECK(h[d0] == (h[b1] ? 0 : 1));
    CHECK(h[d1] == (h[b0] ? 0 : 1));
    CHECK(h[b0] <= h[b1]);
  }
}

TEST_CASE("presentation_points edge cases") {
  Presentation free1;
  free1.generators = {"g"};
  PresentationPoints p = presentation_points(free1);
  CHECK(p.space.size() == 2);
  CHECK(p.space.opens().size() == 3);  // Sierpinski

  Presentation top1;
  top1.generators = {"g"};
  top1.relations.push_back({LatticeTerm::generator("g"), RelKind::Eq, LatticeTerm::top()});
  CHECK(presentation_points(top1).space.size() == 1);

  Presentation big;
  for (int i = 0; i < 25; ++i) big.generators.push_back("g" + std::to_string(i));
  CHECK_THROWS_AS(presentation_points(big), ResourceError);

  Presentation unknown;
  unknown.generators = {"g"};
  unknown.relations.push_back(
      {LatticeTerm::generator("h"), RelKind::Leq, LatticeTerm::generator("g")});
  CHECK_THROWS_AS(presentation_points(unknown), ValidationError);
}

TEST_CASE("present_Mprime carries the join-semilattice of pairs") {
  FinFrame two = FinFrame::two();
  Presentation P = present_Mprime(two);
  CHECK(P.generators.size() == 16);  // 4 subsets x 4 subsets

  // (∅,∅) is the bottom generator: every point sends it to 0
  PresentationPoints pts = presentation_points(P);
  auto bot_idx = P.generator_index(mprime_gen_name(two, 0, 0));
  REQUIRE(bot_idx.has_value());
  for (const auto& h : pts.assignments) CHECK(h[*bot_idx] == 0);
  // M'5 forces the (⊤,⊤) pair generator to 1
  auto toppair = P.generator_index(
      mprime_gen_name(two, Mask{1} << two.top(), Mask{1} << two.top()));
  REQUIRE(toppair.has_value());
  for (const auto& h : pts.assignments) CHECK(h[*toppair] == 1);
}

TEST_CASE("M and M' present the same point space on the two-element frame") {
  FinFrame two = FinFrame::two();
  IsoReport rep = compare_presentations(present_M(two), present_Mprime(two));
  CHECK(rep.homeomorphic);
}

TEST_CASE("presented_frame_small") {
  SUBCASE("M(2) presents the 8-element Boolean frame") {
    PresentedFrame pf = presented_frame_small(present_M(FinFrame::two()));
    CHECK(pf.frame.size() == 8);
    CHECK(pf.frame.is_boolean());
    FinFrame viaPoints = opn_frame(presentation_points(present_M(FinFrame::two())).space);
    CHECK(frames_isomorphic(pf.frame, viaPoints));
  }
  SUBCASE("free frame on one generator is the 3-chain") {
    Presentation P;
    P.generators = {"g"};
    CHECK(presented_frame_small(P).frame.size() == 3);
  }
  SUBCASE("identifying two generators collapses to the 3-chain") {
    Presentation P;
    P.generators = {"g1", "g2"};
    P.relations.push_back(
        {LatticeTerm::generator("g1"), RelKind::Eq, LatticeTerm::generator("g2")});
    CHECK(presented_frame_small(P).frame.size() == 3);
  }
  SUBCASE("generator bound") {
    Presentation P;
    for (int i = 0; i < 6; ++i) P.generators.push_back("g" + std::to_string(i));
    CHECK_THROWS_AS(presented_frame_small(P), ResourceError);
  }
}

TEST_CASE("presented frame and presentation points commute with opn/pt") {
  std::vector<Presentation> ps;
  {
    Presentation f1;
    f1.generators = {"g"};
    ps.push_back(f1);
    Presentation f2;
    f2.generators = {"g", "h"};
    ps.push_back(f2);
    Presentation leq;
    leq.generators = {"g", "h"};
    leq.relations.push_back(
        {LatticeTerm::generator("g"), RelKind::Leq, LatticeTerm::generator("h")});
    ps.push_back(leq);
    ps.push_back(present_M(FinFrame::two()));
  }
  for (const auto& P : ps) {
    FinFrame F = presented_frame_small(P).frame;
    FinFrame G = opn_frame(presentation_points(P).space);
    CHECK(frames_isomorphic(F, G));
  }
}

TEST_CASE("the directed-instance relations are redundant") {
  // chains of 1..4 elements plus the 4-element Boolean frame cover all
  // bounded distributive lattices with at most 4 elements up to isomorphism
  std::vector<FinFrame> frames;
  for (int n = 1; n <= 4; ++n) {
    std::vector<std::string> es;
    for (int i = 0; i < n; ++i) es.push_back("e" + std::to_string(i));
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) leq[a][b] = true;
    frames.push_back(FinFrame::from_leq(std::move(es), std::move(leq)));
  }
  frames.push_back(boolean4());
  for (const auto& F : frames) {
    PresentationPoints without = presentation_points(present_M(F, false), 32);
    PresentationPoints with = presentation_points(present_M(F, true), 32);
    CHECK(without.space == with.space);
    CHECK(without.assignments == with.assignments);
  }
}

TEST_CASE("frames_isomorphic distinguishes the 4-element lattices") {
  FinFrame b4 = boolean4();
  // the 4-chain
  std::vector<std::vector<bool>> leq(4, std::vector<bool>(4, false));
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b) leq[a][b] = true;
  FinFrame c4 = FinFrame::from_leq({"0", "1", "2", "3"}, std::move(leq));
  CHECK(frames_isomorphic(b4, b4));
  CHECK_FALSE(frames_isomorphic(b4, c4));
}

TEST_CASE("find_homeomorphism rejects non-homeomorphic same-size spaces") {
  auto S = FinSpace::sierpinski();
  auto T = FinSpace::two_trivial();
  CHECK_FALSE(find_homeomorphism(S, T).has_value());
  CHECK_FALSE(find_homeomorphism(S, FinSpace::discrete({"a", "b"})).has_value());
  auto h = find_homeomorphism(S, FinSpace::from_subbase({"u", "v"}, {Mask{1}}));
  REQUIRE(h.has_value());
  CHECK(is_homeomorphism(*h));
}

TEST_CASE("homeomorphism search agrees with brute-force bijection enumeration") {
  auto brute = [](const FinSpace& X, const FinSpace& Y) {
    if (X.size() != Y.size()) return false;
    std::vector<int> perm(X.size());
    for (int i = 0; i < X.size(); ++i) perm[i] = i;
    do {
      if (is_homeomorphism(ContMap(X, Y, perm))) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
  };
  auto spaces = all_topologies({"x", "y", "z"});
  for (const auto& X : spaces)
    for (const auto& Y : spaces) {
      bool fast = find_homeomorphism(X, Y).has_value();
      CHECK(fast == brute(X, Y));
    }
}

TEST_CASE("the duality verifier fails on a wrong hyperspace") {
  // a corrupted carrier: one collection's content replaced, so some prime
  // filter's W_p has no counterpart
  auto X = FinSpace::one_point("x");
  Presentation PM = present_M(opn_frame(X));
  auto D = dkh_functor();
  const Carrier& car = D->carrier(X);
  DkhComparison wrong{X, car.space, car.collections};
  wrong.dkh_collections[1] = wrong.dkh_collections[2];
  IsoReport rep = verify_dkh_duality(PM, wrong);
  bool wrong_passes = rep.zeta_is_homeo && rep.eta_is_frame_iso;
  CHECK_FALSE(wrong_passes);
  CHECK_FALSE(rep.detail.empty());

  // and on the honest data it passes
  DkhComparison right{X, car.space, car.collections};
  IsoReport ok = verify_dkh_duality(PM, right);
  CHECK(ok.zeta_is_homeo);
  CHECK(ok.eta_is_frame_iso);
}

TEST_CASE("random presentations are spatial: both solving routes agree") {
  std::mt19937 rng(314);
  auto random_term = [&](auto&& self, const std::vector<std::string>& gens,
                         int depth) -> LatticeTerm {
    std::uniform_int_distribution<int> kind(0, depth == 0 ? 0 : 2);
    std::uniform_int_distribution<int> gi(0, static_cast<int>(gens.size()) - 1);
    switch (kind(rng)) {
      case 0:
        return LatticeTerm::generator(gens[gi(rng)]);
      case 1: {
        std::uniform_int_distribution<int> w(0, 2);
        std::vector<LatticeTerm> ts;
        for (int i = w(rng); i > 0; --i) ts.push_back(self(self, gens, depth - 1));
        return LatticeTerm::meet(std::move(ts));
      }
      default: {
        std::uniform_int_distribution<int> w(0, 2);
        std::vector<LatticeTerm> ts;
        for (int i = w(rng); i > 0; --i) ts.push_back(self(self, gens, depth - 1));
        return LatticeTerm::join(std::move(ts));
      }
    }
  };
  for (int t = 0; t < 60; ++t) {
    Presentation P;
    std::uniform_int_distribution<int> ng(1, 3), nr(0, 3), rk(0, 1);
    int n = ng(rng);
    for (int i = 0; i < n; ++i) P.generators.push_back("g" + std::to_string(i));
    for (int i = nr(rng); i > 0; --i)
      P.relations.push_back({random_term(random_term, P.generators, 2),
                             rk(rng) ? RelKind::Leq : RelKind::Eq,
                             random_term(random_term, P.generators, 2)});
    FinFrame via_congruence = presented_frame_small(P).frame;
    FinFrame via_points = opn_frame(presentation_points(P).space);
    CHECK(frames_isomorphic(via_congruence, via_points));
  }
}

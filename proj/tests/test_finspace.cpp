#include <doctest.h>

#include <random>

#include "geomodal/finspace.hpp"
#include "geomodal/framealg.hpp"
#include "test_util.hpp"

using namespace geomodal;
using geomodal::testutil::all_small_frames;

TEST_CASE("make_space closes a subbase") {
  auto single = FinSpace::from_subbase({"x"}, {});
  CHECK(single.opens() == std::vector<Mask>{0, 1});

  auto sier = FinSpace::from_subbase({"0", "1"}, {Mask{2}});
  CHECK(sier.opens() == std::vector<Mask>{0, 2, 3});
  CHECK(sier == FinSpace::sierpinski());

  // hand closure of {{a},{b}} on three points
  auto abc = FinSpace::from_subbase({"a", "b", "c"}, {Mask{1}, Mask{2}});
  CHECK(abc.opens() == std::vector<Mask>{0, 1, 2, 3, 7});
}

TEST_CASE("make_space rejects duplicate points naming the offender") {
  CHECK_THROWS_WITH_AS(FinSpace::from_subbase({"x", "x"}, {}),
                       "duplicate point identifier: x", ValidationError);
}

TEST_CASE("space loader closure validation") {
  CHECK_THROWS_AS(FinSpace::from_opens({"a", "b"}, {0, 1, 2}),  // missing union
                  ValidationError);
  CHECK_THROWS_AS(FinSpace::from_opens({"a", "b"}, {1, 3}),  // missing empty
                  ValidationError);
  CHECK_NOTHROW(FinSpace::from_opens({"a", "b"}, {0, 1, 3}));
}

TEST_CASE("continuity checks") {
  auto S = FinSpace::sierpinski();
  CHECK(check_continuous(ContMap::identity(S)));

  auto D2 = FinSpace::discrete({"0", "1"});
  CHECK(check_continuous(ContMap(D2, S, {1, 1})));  // constant into the open point

  // swap on Sierpinski: preimage of {1} is {0}, not open
  CHECK_FALSE(check_continuous(ContMap(S, S, {1, 0})));

  CHECK_THROWS_AS(ContMap(S, S, {0, 5}), ValidationError);  // non-point target
  CHECK_THROWS_AS(ContMap(S, S, {0}), ValidationError);     // not total
}

TEST_CASE("opn gives the frame of opens") {
  CHECK(opn_frame(FinSpace::one_point()).size() == 2);

  FinFrame chain3 = opn_frame(FinSpace::sierpinski());
  CHECK(chain3.size() == 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(chain3.leq(a, b) == (a <= b));

  FrameHom id = opn_map(ContMap::identity(FinSpace::sierpinski()));
  for (int i = 0; i < id.source.size(); ++i) CHECK(id(i) == i);

  // non-continuous maps are rejected
  CHECK_THROWS_AS(opn_map(ContMap(FinSpace::sierpinski(), FinSpace::sierpinski(), {1, 0})),
                  ValidationError);
}

TEST_CASE("opn_map respects composition and identity") {
  std::vector<FinSpace> spaces;
  for (int n = 1; n <= 3; ++n) {
    std::vector<std::string> pts;
    for (int i = 0; i < n; ++i) pts.push_back(std::to_string(i));
    for (auto& X : all_topologies(pts)) spaces.push_back(std::move(X));
  }
  int checked = 0;
  for (const auto& X : spaces)
    for (const auto& Y : spaces) {
      if (X.size() > 2 && Y.size() > 2) continue;  // keep the sweep quick
      for (const auto& f : all_continuous_maps(X, Y))
        for (const auto& g : all_continuous_maps(Y, X)) {
          FrameHom hf = opn_map(f), hg = opn_map(g);
          FrameHom hgf = opn_map(g.compose_after(f));
          // opn(g ∘ f) = opn f ∘ opn g (contravariance)
          for (int i = 0; i < hgf.source.size(); ++i)
            CHECK(hgf(i) == hf.assignment[hg.assignment[i]]);
          ++checked;
        }
    }
  CHECK(checked > 0);
}

TEST_CASE("frame_points on the textbook frames") {
  CHECK(frame_points(FinFrame::two()).space.size() == 1);

  FinFrame chain3 = opn_frame(FinSpace::sierpinski());
  FramePoints p3 = frame_points(chain3);
  CHECK(p3.space.size() == 2);
  CHECK(p3.space.opens().size() == 3);  // the Sierpinski space again

  FinFrame bool4 = opn_frame(FinSpace::discrete({"x", "y"}));
  FramePoints p4 = frame_points(bool4);
  CHECK(p4.space.size() == 2);
  CHECK(p4.space.is_discrete());
}

TEST_CASE("brute-force point enumeration is the oracle for the fast path") {
  for (const auto& F : all_small_frames(12, 4)) {
    FramePoints fast = frame_points(F, false);
    FramePoints brute = frame_points(F, true);
    CHECK(fast.homs == brute.homs);
    CHECK(fast.space == brute.space);
  }
}

TEST_CASE("opens of the point space are exactly the ~a images") {
  for (const auto& F : all_small_frames(6)) {
    FramePoints pts = frame_points(F);
    std::vector<Mask> tildes(pts.elem_open);
    std::sort(tildes.begin(), tildes.end());
    tildes.erase(std::unique(tildes.begin(), tildes.end()), tildes.end());
    CHECK(tildes == pts.space.opens());
  }
}

TEST_CASE("sobrification and the T0 property") {
  SUBCASE("Sierpinski is sober") {
    auto r = sobrify(FinSpace::sierpinski());
    CHECK(r.is_sober);
    CHECK(is_homeomorphism(r.unit));
  }
  SUBCASE("the trivial two-point space collapses") {
    auto r = sobrify(FinSpace::two_trivial());
    CHECK_FALSE(r.is_sober);
    CHECK(r.sober_space.size() == 1);
    CHECK(r.unit(0) == r.unit(1));
  }
  SUBCASE("discrete spaces are sober") {
    auto r = sobrify(FinSpace::discrete({"a", "b", "c"}));
    CHECK(r.is_sober);
  }
  SUBCASE("sober iff T0, exhaustively on three points") {
    for (const auto& X : all_topologies({"x", "y", "z"}))
      CHECK(sobrify(X).is_sober == X.is_t0());
  }
}

TEST_CASE("round trip opn(pt(F)) recovers F for spatial frames") {
  for (int n = 1; n <= 3; ++n) {
    std::vector<std::string> pts;
    for (int i = 0; i < n; ++i) pts.push_back(std::to_string(i));
    for (const auto& X : all_topologies(pts)) {
      if (!X.is_t0()) continue;  // sober case
      FinFrame F = opn_frame(X);
      if (F.size() > 8) continue;
      FinFrame back = opn_frame(frame_points(F).space);
      CHECK(frames_isomorphic(F, back));
    }
  }
}

TEST_CASE("directed joins require directedness") {
  FinFrame bool4 = opn_frame(FinSpace::discrete({"x", "y"}));
  int x = *bool4.element_index("{x}");
  int y = *bool4.element_index("{y}");
  CHECK_THROWS_AS(bool4.directed_join({x, y}), ValidationError);
  CHECK(bool4.directed_join({x, bool4.top()}) == bool4.top());
  CHECK(bool4.is_directed({x, bool4.top()}));
  CHECK_FALSE(bool4.is_directed({x, y}));
}

TEST_CASE("frame loader guards") {
  // not antisymmetric
  CHECK_THROWS_AS(FinFrame::from_leq({"a", "b"}, {{true, true}, {true, true}}),
                  ValidationError);
  // no bounds: two incomparable elements
  CHECK_THROWS_AS(FinFrame::from_leq({"a", "b"}, {{true, false}, {false, true}}),
                  ValidationError);
}

TEST_CASE("opn_map functoriality on random 4-point subbase topologies") {
  std::mt19937 rng(271828);
  std::uniform_int_distribution<int> dsub(0, 15), dn(0, 3), dcount(0, 4);
  for (int t = 0; t < 30; ++t) {
    std::vector<Mask> sub;
    for (int i = dcount(rng); i > 0; --i) sub.push_back(static_cast<Mask>(dsub(rng)));
    FinSpace X = FinSpace::from_subbase({"a", "b", "c", "d"}, sub);
    std::vector<Mask> sub2;
    for (int i = dcount(rng); i > 0; --i) sub2.push_back(static_cast<Mask>(dsub(rng)));
    FinSpace Y = FinSpace::from_subbase({"a", "b", "c", "d"}, sub2);
    FrameHom idh = opn_map(ContMap::identity(X));
    for (int i = 0; i < idh.source.size(); ++i) CHECK(idh(i) == i);
    // contravariant composition over sampled continuous pairs; the constant
    // pairs guarantee at least some coverage on every topology
    auto check_pair = [&](const ContMap& f, const ContMap& g) {
      FrameHom hf = opn_map(f), hg = opn_map(g);
      FrameHom hgf = opn_map(g.compose_after(f));
      for (int i = 0; i < hgf.source.size(); ++i)
        CHECK(hgf(i) == hf.assignment[hg.assignment[i]]);
    };
    check_pair(ContMap(X, Y, {0, 0, 0, 0}), ContMap(Y, X, {1, 1, 1, 1}));
    for (int k = 0; k < 100; ++k) {
      std::vector<int> fa(4), ga(4);
      for (int i = 0; i < 4; ++i) {
        fa[i] = dn(rng);
        ga[i] = dn(rng);
      }
      ContMap f(X, Y, fa), g(Y, X, ga);
      if (check_continuous(f) && check_continuous(g)) check_pair(f, g);
    }
  }
}

#include <doctest.h>

#include "geomodal/kkplift.hpp"

using namespace geomodal;

TEST_CASE("fdot frames of lifting images") {
  auto P = set_functor("powerset");
  auto D = set_functor("monotone");
  auto X1 = FinSpace::one_point("x");

  FdotFrame a = fdot_frame(P, {"box", "dia"}, X1);
  CHECK(a.frame.size() == 4);
  CHECK(a.frame.is_boolean());

  FdotFrame b = fdot_frame(D, {"box", "dia"}, X1);
  CHECK(b.frame.size() == 8);
  CHECK(b.frame.is_boolean());

  FdotFrame c = fdot_frame(P, {}, X1);
  CHECK(c.frame.size() == 2);
}

TEST_CASE("the directed-join congruence is the identity") {
  auto P = set_functor("powerset");
  auto D = set_functor("monotone");
  for (int n = 1; n <= 2; ++n) {
    std::vector<std::string> pts;
    for (int i = 0; i < n; ++i) pts.push_back("s" + std::to_string(i));
    for (const auto& X : all_topologies(pts)) {
      FhatFrame fp = fhat_frame(P, {"box", "dia"}, X);
      CHECK(fp.congruence.trivial);
      CHECK(fp.congruence.instances_checked > 0);
      FhatFrame fd = fhat_frame(D, {"box", "dia"}, X);
      CHECK(fd.congruence.trivial);
    }
  }
}

TEST_CASE("lifted spaces at the expected sizes") {
  auto KP = kkp_functor("powerset", {"box", "dia"});
  auto KD = kkp_functor("monotone", {"box", "dia"});
  auto X1 = FinSpace::one_point("x");
  auto X2 = FinSpace::discrete({"x", "y"});
  auto X3 = FinSpace::discrete({"x", "y", "z"});

  CHECK(kkp_space(KP, X2).size() == 4);
  CHECK(kkp_space(KP, X2).is_discrete());
  CHECK(kkp_space(KP, X3).size() == 8);
  CHECK(kkp_space(KD, X1).size() == 3);
  CHECK(kkp_space(KD, X2).size() == 6);
  // empty signature: one-point lifted space
  CHECK(kkp_space(kkp_functor("powerset", {}), X2).size() == 1);
}

TEST_CASE("agreement with the concrete functors, actions included") {
  struct Case {
    FunctorPtr kkp, concrete;
    int max_n;
  };
  for (const auto& c : {Case{kkp_functor("powerset", {"box", "dia"}),
                             vietoris_functor(), 3},
                        Case{kkp_functor("monotone", {"box", "dia"}),
                             dkh_functor(), 2}}) {
    std::vector<FinSpace> spaces;
    std::vector<std::string> names;
    for (int n = 1; n <= c.max_n; ++n) {
      names.push_back("s" + std::to_string(n - 1));
      spaces.push_back(FinSpace::discrete(names));
    }
    std::vector<ContMap> isos;
    for (const auto& X : spaces) {
      auto h = kkp_agreement_iso(c.kkp, c.concrete, X);
      REQUIRE(h.has_value());
      CHECK(is_homeomorphism(*h));
      isos.push_back(std::move(*h));
    }
    for (std::size_t i = 0; i < spaces.size(); ++i)
      for (std::size_t j = 0; j < spaces.size(); ++j)
        for (const auto& f : all_continuous_maps(spaces[i], spaces[j])) {
          ContMap lhs = isos[j].compose_after(c.kkp->on_map(f));
          ContMap rhs = c.concrete->on_map(f).compose_after(isos[i]);
          CHECK(lhs.assignment == rhs.assignment);
        }
  }
}

TEST_CASE("lift functoriality") {
  auto K = kkp_functor("powerset", {"box", "dia"});
  auto X = FinSpace::discrete({"x", "y"});
  ContMap idm = kkp_map(K, ContMap::identity(X));
  for (int i = 0; i < idm.source.size(); ++i) CHECK(idm(i) == i);
  for (const auto& f : all_continuous_maps(X, X))
    for (const auto& g : all_continuous_maps(X, X)) {
      ContMap lhs = kkp_map(K, g.compose_after(f));
      ContMap rhs = kkp_map(K, g).compose_after(kkp_map(K, f));
      CHECK(lhs.assignment == rhs.assignment);
    }
}

TEST_CASE("lifted liftings") {
  auto KD = kkp_functor("monotone", {"box", "dia"});
  auto X1 = FinSpace::one_point("x");
  // lifted monotone box on the point selects 2 of the 3 lifted points,
  // matching the ⊡̄ cell through the agreement homeomorphism
  Mask lifted = lift_lifting(KD, "box")(X1, {Mask{1}});
  CHECK(mask_count(lifted) == 2);
  auto h = kkp_agreement_iso(KD, dkh_functor(), X1);
  REQUIRE(h.has_value());
  CHECK(h->image(lifted) == dkh_functor()->eval_lifting("box", X1, {Mask{1}}));
  // at the full open with λ(⊤) the whole carrier, the lifted image is full
  auto KP = kkp_functor("powerset", {"box", "dia"});
  CHECK(lift_lifting(KP, "box")(X1, {X1.full()}) ==
        full_mask(kkp_space(KP, X1).size()));
  CHECK_THROWS_AS(lift_lifting(KP, "triv"), ValidationError);
}

TEST_CASE("lift theorems hold on topological inputs too") {
  auto KP = kkp_functor("powerset", {"box", "dia"});
  for (const auto& X :
       {FinSpace::one_point("x"), FinSpace::sierpinski(), FinSpace::two_trivial(),
        FinSpace::discrete({"x", "y", "z"})}) {
    LiftTheoremReport rep = check_lift_theorems(KP, X);
    CHECK(rep.characteristic);
    CHECK(rep.lifted_scott);
    CHECK(rep.congruence_trivial);
    CHECK(rep.output_t0);
  }
  // the empty signature is characteristic vacuously (one-point output)
  LiftTheoremReport rep0 =
      check_lift_theorems(kkp_functor("powerset", {}), FinSpace::sierpinski());
  CHECK(rep0.characteristic);
}

TEST_CASE("functor id parsing") {
  CHECK(make_functor("vietoris")->name() == "vietoris");
  CHECK(make_functor("dkh")->name() == "dkh");
  CHECK(make_functor("trivial")->name() == "trivial");
  CHECK(make_functor("kkp:powerset:box,dia")->name() == "kkp:powerset:box,dia");
  CHECK(make_functor("kkp:monotone:box")->name() == "kkp:monotone:box");
  CHECK_THROWS_AS(make_functor("kkp:powerset"), ValidationError);
  CHECK_THROWS_AS(make_functor("kkp:powerset:nope"), ValidationError);
  CHECK_THROWS_AS(make_functor("spam"), ValidationError);
}

TEST_CASE("lifts over non-discrete spaces compute without a comparison verdict") {
  // no concrete functor to compare against off the discrete fragment; the
  // sizes are recorded as observations
  auto KP = kkp_functor("powerset", {"box", "dia"});
  FinSpace S = FinSpace::sierpinski();
  FinSpace lifted = kkp_space(KP, S);
  CHECK(lifted.is_t0());
  MESSAGE("kkp(powerset) of the Sierpinski space: ", lifted.size(), " points");
  auto KD = kkp_functor("monotone", {"box", "dia"});
  MESSAGE("kkp(monotone) of the Sierpinski space: ", kkp_space(KD, S).size(),
          " points");
}

TEST_CASE("lift bounds surface as resource errors") {
  // the generated subframe over a 4-point discrete base outgrows the frame
  // bound; the error names the bound rather than crashing
  auto KP = kkp_functor("powerset", {"box", "dia"});
  CHECK_THROWS_AS(kkp_space(KP, FinSpace::discrete({"a", "b", "c", "d"})),
                  ResourceError);
  auto KD = kkp_functor("monotone", {"box", "dia"});
  CHECK_THROWS_AS(KD->carrier(FinSpace::discrete({"a", "b", "c", "d"})),
                  ResourceError);
}

TEST_CASE("the lifted powerset box transports to the Vietoris cell") {
  auto KP = kkp_functor("powerset", {"box", "dia"});
  auto V = vietoris_functor();
  auto X = FinSpace::discrete({"x", "y"});
  auto h = kkp_agreement_iso(KP, V, X);
  REQUIRE(h.has_value());
  Mask lifted = lift_lifting(KP, "box")(X, {Mask{1}});
  CHECK(h->image(lifted) == V->eval_lifting("box", X, {Mask{1}}));
}

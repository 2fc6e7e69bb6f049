#include <doctest.h>

#include "geomodal/liftings.hpp"

using namespace geomodal;

TEST_CASE("builtin liftings") {
  auto D = dkh_functor();
  auto X1 = FinSpace::one_point("x");
  // D_kh box at a = {x} selects 2 of the 3 carrier collections
  CHECK(mask_count(D->eval_lifting("box", X1, {Mask{1}})) == 2);

  auto V = vietoris_functor();
  auto X2 = FinSpace::discrete({"x", "y"});
  CHECK(builtin_lifting(V, "dia")(X2, {Mask{0}}) == 0);

  auto T = trivial_functor();
  CHECK(builtin_lifting(T, "triv")(X2, {Mask{1}}) == Mask{3});

  CHECK_THROWS_AS(builtin_lifting(V, "nope"), ValidationError);
}

TEST_CASE("lifting eval guards") {
  auto V = vietoris_functor();
  OpenLifting box = builtin_lifting(V, "box");
  auto S = FinSpace::sierpinski();
  CHECK_THROWS_AS(box(S, {Mask{1}}), ValidationError);  // {0} is not open
  CHECK_THROWS_AS(box(S, {Mask{2}, Mask{2}}), ValidationError);  // arity
}

TEST_CASE("naturality of the builtins inside each functor's scope") {
  for (const auto& T : {vietoris_functor(), dkh_functor(), trivial_functor()}) {
    auto uni = test_universe(T, 2);
    for (const auto& name : T->builtin_lifting_names()) {
      OpenLifting lam = builtin_lifting(T, name);
      for (const auto& X : uni)
        for (const auto& Y : uni)
          for (const auto& f : all_continuous_maps(X, Y))
            CHECK(check_naturality(lam, f));
    }
  }
}

TEST_CASE("a deliberately broken lifting fails naturality somewhere") {
  auto V = vietoris_functor();
  OpenLifting strict;
  strict.id = "strict-box";
  strict.functor = V;
  strict.arity = 1;
  strict.eval = [V](const FinSpace& X, const std::vector<Mask>& args) {
    // box with strict subset: drops the closed set equal to the argument
    const Carrier& c = V->carrier(X);
    Mask out = 0;
    for (std::size_t i = 0; i < c.closed_sets.size(); ++i)
      if ((c.closed_sets[i] & ~args[0]) == 0 && c.closed_sets[i] != args[0])
        out |= Mask{1} << i;
    return out;
  };
  bool all_natural = true;
  auto uni = test_universe(V, 2);
  for (const auto& X : uni)
    for (const auto& Y : uni)
      for (const auto& f : all_continuous_maps(X, Y)) {
        bool nat = true;
        try {
          nat = check_naturality(strict, f);
        } catch (const InternalError&) {
          nat = false;  // non-open image also disqualifies it
        }
        all_natural = all_natural && nat;
      }
  CHECK_FALSE(all_natural);
}

TEST_CASE("monotonicity coincides with Scott-continuity on finite spaces") {
  for (const auto& T : {vietoris_functor(), dkh_functor(), trivial_functor()}) {
    auto uni = test_universe(T, 2);
    for (const auto& name : T->builtin_lifting_names()) {
      OpenLifting lam = builtin_lifting(T, name);
      for (const auto& X : uni) {
        CHECK(check_monotone(lam, X));
        CHECK(check_monotone(lam, X) == check_scott(lam, X));
      }
    }
  }
  // an antitone lifting fails both
  auto V = vietoris_functor();
  OpenLifting anti;
  anti.id = "anti";
  anti.functor = V;
  anti.arity = 1;
  anti.eval = [V](const FinSpace& X, const std::vector<Mask>& args) {
    return V->eval_lifting_any("box", X, {X.full() & ~args[0]});
  };
  auto X2 = FinSpace::discrete({"x", "y"});
  CHECK(check_monotone(anti, X2) == check_scott(anti, X2));
  CHECK_FALSE(check_monotone(anti, X2));
}

TEST_CASE("characteristic signatures") {
  auto V = vietoris_functor();
  auto X2 = FinSpace::discrete({"x", "y"});
  CHECK(check_characteristic(builtin_signature(V), X2));
  CHECK(check_characteristic(builtin_signature(dkh_functor()), X2));
  // the trivial lifting is characteristic on the trivial topology
  CHECK(check_characteristic(builtin_signature(trivial_functor()),
                             FinSpace::two_trivial()));
  // box alone does not generate the Vietoris topology
  CHECK_FALSE(check_characteristic({builtin_lifting(V, "box")}, X2));
}

TEST_CASE("classification codes") {
  SUBCASE("trivial lifting codes to the full carrier of F(S)") {
    SierpinskiCode c = sierpinski_code(builtin_lifting(trivial_functor(), "triv"));
    CHECK(c.code == full_mask(trivial_functor()->carrier(c.power).space.size()));
  }
  SUBCASE("round trips for every builtin") {
    for (const auto& T : {vietoris_functor(), dkh_functor(), trivial_functor()}) {
      auto uni = test_universe(T, 3);
      for (const auto& name : T->builtin_lifting_names()) {
        OpenLifting lam = builtin_lifting(T, name);
        SierpinskiCode code = sierpinski_code(lam);
        OpenLifting back = lifting_from_code(code, name + "'");
        CHECK(extensionally_equal(lam, back, uni));
        CHECK(sierpinski_code(back).code == code.code);
      }
    }
  }
  SUBCASE("Kripke diamond code over the two-element set") {
    auto P = set_functor("powerset");
    // carrier of P over 2 = {∅,{0},{1},{0,1}}; the diamond selects the
    // subsets meeting {1}
    std::vector<int> code = P->eval_lifting("dia", 2, {Mask{2}});
    CHECK(code == std::vector<int>{2, 3});
  }
  SUBCASE("non-open codes are rejected") {
    // F(S) = 𝟚 carries the trivial topology, so a singleton code is not open
    auto T = trivial_functor();
    SierpinskiCode c{T, 1, T->classifier(), Mask{1}};
    CHECK_THROWS_AS(lifting_from_code(c, "bad"), ValidationError);
  }
}

TEST_CASE("strong liftings") {
  auto V = vietoris_functor();
  auto uni = test_universe(V, 3);
  SUBCASE("the intersection-formula extension restricts to the lifting") {
    for (const auto& T : {vietoris_functor(), dkh_functor(), trivial_functor()}) {
      auto u = test_universe(T, 3);
      for (const auto& name : T->builtin_lifting_names()) {
        OpenLifting lam = builtin_lifting(T, name);
        StrongLifting mu = strong_extension(lam, u);
        for (const auto& X : u)
          for (Mask a : X.opens())
            CHECK(mu.eval_any(X, {a}) == lam(X, {a}));
      }
    }
  }
  SUBCASE("on discrete spaces the extension is the set-level box") {
    StrongLifting mu = strong_extension(builtin_lifting(V, "box"), uni);
    StrongLifting declared = builtin_strong_lifting(V, "box");
    auto X = FinSpace::discrete({"x", "y", "z"});
    for (Mask u = 0; u <= X.full(); ++u)
      CHECK(mu.eval_any(X, {u}) == declared.eval_any(X, {u}));
  }
  SUBCASE("non-monotone liftings are rejected") {
    OpenLifting anti;
    anti.id = "anti";
    anti.functor = V;
    anti.arity = 1;
    anti.eval = [V](const FinSpace& X, const std::vector<Mask>& args) {
      return V->eval_lifting("box", X, {args[0] == 0 ? X.full() : Mask{0}});
    };
    CHECK_THROWS_AS(strong_extension(anti, {FinSpace::discrete({"x", "y"})}),
                    ValidationError);
  }
  SUBCASE("disagreements on non-discrete spaces are recorded, not judged") {
    // the D_kh box on the Sierpinski space: both routes computed, mismatches
    // surface in the report; no verdict either way
    auto D = dkh_functor();
    auto report = strong_extension_report(builtin_lifting(D, "box"),
                                          builtin_strong_lifting(D, "box"),
                                          FinSpace::sierpinski());
    for (const auto& d : report) {
      CHECK(d.by_intersection != d.by_formula);
      CHECK_FALSE(d.space.is_open(d.args.at(0)));
    }
    MESSAGE("dkh box intersection-vs-formula disagreements on S: ", report.size());
  }
}

TEST_CASE("strong-openness of codes over the indiscrete pair") {
  CHECK(check_strong_openness(strong_code(builtin_strong_lifting(vietoris_functor(), "box"))));
  CHECK(check_strong_openness(strong_code(builtin_strong_lifting(dkh_functor(), "box"))));
  CHECK(check_strong_openness(strong_code(builtin_strong_lifting(dkh_functor(), "dia"))));
  // the empty code is trivially open
  StrongCode empty{trivial_functor(), 1, FinSpace::two_trivial(), 0};
  CHECK(check_strong_openness(empty));
  // a singleton through the trivial functor pulls back to a non-open
  StrongCode bad{trivial_functor(), 1, FinSpace::two_trivial(), Mask{1}};
  CHECK_FALSE(check_strong_openness(bad));
}

TEST_CASE("binary liftings classify through the squared classifier") {
  auto V = vietoris_functor();
  // λ(a,b) = ⊡(a ∩ b), a binary box
  OpenLifting box2;
  box2.id = "box2";
  box2.functor = V;
  box2.arity = 2;
  box2.eval = [V](const FinSpace& X, const std::vector<Mask>& args) {
    return V->eval_lifting("box", X, {args[0] & args[1]});
  };
  auto uni = test_universe(V, 2);
  for (const auto& X : uni) {
    CHECK(check_monotone(box2, X));
    CHECK(check_scott(box2, X));
  }
  for (const auto& X : uni)
    for (const auto& Y : uni)
      for (const auto& f : all_continuous_maps(X, Y))
        CHECK(check_naturality(box2, f));
  SierpinskiCode code = sierpinski_code(box2);
  CHECK(code.power.size() == 4);  // discrete classifier squared
  OpenLifting back = lifting_from_code(code, "box2'");
  CHECK(extensionally_equal(box2, back, uni));
  CHECK(sierpinski_code(back).code == code.code);
}

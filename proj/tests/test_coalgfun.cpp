#include <doctest.h>

#include "geomodal/coalgfun.hpp"

using namespace geomodal;

namespace {

std::vector<FinSpace> discrete_spaces(int max_n) {
  std::vector<FinSpace> out;
  std::vector<std::string> names;
  for (int n = 1; n <= max_n; ++n) {
    names.push_back("q" + std::to_string(n - 1));
    out.push_back(FinSpace::discrete(names));
  }
  return out;
}

int closed_index(const FunctorPtr& V, const FinSpace& X, Mask c) {
  auto i = V->payload_index(X, TElem::closed(c));
  REQUIRE(i.has_value());
  return *i;
}

}  // namespace

TEST_CASE("Vietoris carriers") {
  auto V = vietoris_functor();
  auto X2 = FinSpace::discrete({"x", "y"});
  const Carrier& c = V->carrier(X2);
  CHECK(c.space.size() == 4);
  CHECK(c.space.is_discrete());

  auto S = FinSpace::sierpinski();
  const Carrier& cs = V->carrier(S);
  CHECK(cs.closed_sets == std::vector<Mask>{0, 1, 3});  // ∅, {0}, {0,1}
  // ⊡{1} picks out only the empty closed set
  CHECK(V->eval_lifting("box", S, {Mask{2}}) == Mask{1});
  // nothing meets the empty open
  CHECK(V->eval_lifting("dia", X2, {Mask{0}}) == 0);
}

TEST_CASE("Vietoris action is closure-of-image, plain image on discrete") {
  auto V = vietoris_functor();
  for (const auto& X : discrete_spaces(3))
    for (const auto& Y : discrete_spaces(3))
      for (const auto& f : all_continuous_maps(X, Y))
        for (Mask cl : V->carrier(X).closed_sets) {
          auto img = V->payload_apply(f, TElem::closed(cl));
          REQUIRE(img.has_value());
          CHECK(std::get<Mask>(img->v) == f.image(cl));  // already closed
        }
  // identity action
  auto X = FinSpace::discrete({"x", "y"});
  ContMap idm = V->on_map(ContMap::identity(X));
  for (int i = 0; i < 4; ++i) CHECK(idm(i) == i);
}

TEST_CASE("functor laws on the KH fragment") {
  for (const auto& T : {vietoris_functor(), dkh_functor()}) {
    auto spaces = discrete_spaces(T->name() == "dkh" ? 3 : 3);
    for (const auto& X : spaces)
      for (const auto& Y : spaces)
        for (const auto& f : all_continuous_maps(X, Y)) {
          ContMap Tf = T->on_map(f);
          CHECK(check_continuous(Tf));
          for (const auto& Z : spaces) {
            if (Z.size() > 2) continue;
            for (const auto& g : all_continuous_maps(Y, Z)) {
              ContMap lhs = T->on_map(g.compose_after(f));
              ContMap rhs = T->on_map(g).compose_after(Tf);
              CHECK(lhs.assignment == rhs.assignment);
            }
          }
        }
  }
}

TEST_CASE("monotone neighbourhood carriers") {
  CHECK(dkh_collections(FinSpace::discrete({"a"})).size() == 3);
  CHECK(dkh_collections(FinSpace::discrete({"a", "b"})).size() == 6);
  CHECK(dkh_collections(FinSpace::discrete({"a", "b", "c"})).size() == 20);
  // the hard cap really enumerates at 4 points, but the space cannot exist
  CHECK(dkh_collections(FinSpace::discrete({"a", "b", "c", "d"})).size() == 168);
  CHECK_THROWS_AS(dkh_functor()->carrier(FinSpace::discrete({"a", "b", "c", "d"})),
                  ResourceError);

  auto X1 = FinSpace::one_point("x");
  const Carrier& c = dkh_functor()->carrier(X1);
  CHECK(c.space.size() == 3);
  CHECK(c.space.opens().size() == 8);
}

TEST_CASE("D_kh on discrete spaces is the monotone set functor") {
  auto D = set_functor("monotone");
  for (const auto& X : discrete_spaces(3)) {
    auto top = dkh_collections(X);
    auto set_car = D->carrier(X.size());
    REQUIRE(top.size() == set_car.size());
    for (std::size_t i = 0; i < top.size(); ++i) {
      std::uint64_t code = 0;
      for (Mask u : top[i]) code |= std::uint64_t{1} << u;
      CHECK(std::find(set_car.begin(), set_car.end(), code) != set_car.end());
    }
  }
}

TEST_CASE("D_kh subbase preimages match the Lemma's proof") {
  auto D = dkh_functor();
  for (const auto& X : discrete_spaces(2))
    for (const auto& Y : discrete_spaces(2))
      for (const auto& f : all_continuous_maps(X, Y))
        for (Mask a : Y.opens()) {
          CHECK(D->preimage(f, D->eval_lifting("box", Y, {a})) ==
                D->eval_lifting("box", X, {f.preimage(a)}));
          CHECK(D->preimage(f, D->eval_lifting("dia", Y, {a})) ==
                D->eval_lifting("dia", X, {f.preimage(a)}));
        }
}

TEST_CASE("set functors") {
  auto P = set_functor("powerset");
  auto D = set_functor("monotone");
  CHECK(D->carrier(1).size() == 3);
  CHECK(P->carrier(0).size() == 1);  // P(∅) = {∅}
  // direct image: f : {x,y} -> {z} sends {x} to {z}
  CHECK(P->apply({0, 0}, 2, 1, Mask{1}) == Mask{1});
  CHECK_THROWS_AS(set_functor("unknown"), ValidationError);
}

TEST_CASE("trivial functor") {
  auto T = trivial_functor();
  auto X = FinSpace::discrete({"x", "y"});
  CHECK(T->carrier(X).space == FinSpace::two_trivial());
  CHECK(T->carrier(X).space.opens().size() == 2);
  // F f = id
  auto f = ContMap(X, FinSpace::one_point(), {0, 0});
  ContMap Tf = T->on_map(f);
  CHECK(Tf.assignment == std::vector<int>{0, 1});
  // ♥ = ⊤
  CHECK(T->eval_lifting("triv", X, {Mask{1}}) == Mask{3});
}

TEST_CASE("coalgebra morphisms") {
  auto V = vietoris_functor();
  auto X = FinSpace::discrete({"x", "y"});
  Coalgebra A = coalgebra_from_indices(
      X, V, {closed_index(V, X, 3), closed_index(V, X, 0)});
  CHECK(is_coalg_morphism(ContMap::identity(X), A, A));

  // collapse both points onto a loop state whose image respects images
  auto Y = FinSpace::one_point("z");
  Coalgebra B = coalgebra_from_indices(Y, V, {closed_index(V, Y, 1)});
  Coalgebra A2 = coalgebra_from_indices(
      X, V, {closed_index(V, X, 3), closed_index(V, X, 3)});
  ContMap collapse(X, Y, {0, 0});
  CHECK(is_coalg_morphism(collapse, A2, B));

  // perturbing gamma breaks the square
  Coalgebra A3 = coalgebra_from_indices(
      X, V, {closed_index(V, X, 3), closed_index(V, X, 0)});
  CHECK_FALSE(is_coalg_morphism(collapse, A3, B));

  Coalgebra Bd = coalgebra_from_indices(Y, dkh_functor(), {0});
  CHECK_THROWS_AS(is_coalg_morphism(collapse, A2, Bd), ValidationError);
}

TEST_CASE("model validation errors") {
  auto V = vietoris_functor();
  auto S = FinSpace::sierpinski();
  GeomModel M;
  M.coalg = coalgebra_from_indices(S, V, {0, 0});
  M.valuation["p"] = Mask{1};  // {0} is not open in the Sierpinski space
  CHECK_THROWS_AS(validate_model(M), ValidationError);

  GeomModel N;
  N.coalg.space = S;
  N.coalg.functor = V;
  N.coalg.gamma = {TElem::closed(Mask{2}), TElem::closed(Mask{2})};  // {1} not closed
  CHECK_THROWS_AS(validate_coalgebra(N.coalg), ValidationError);
}

TEST_CASE("gamma continuity is checked") {
  // on the Sierpinski space a non-monotone transition into V is rejected
  auto V = vietoris_functor();
  auto S = FinSpace::sierpinski();
  const Carrier& c = V->carrier(S);
  // γ(0) = ∅, γ(1) = {0,1}: preimage of ⊡∅ = {0}, not open
  Coalgebra A = coalgebra_from_indices(
      S, V, {closed_index(V, S, 0), closed_index(V, S, 3)});
  CHECK_FALSE(gamma_continuous(A));
  CHECK_THROWS_AS(validate_coalgebra(A), ValidationError);
  (void)c;
}

TEST_CASE("disjoint unions glue models") {
  auto V = vietoris_functor();
  auto X = FinSpace::discrete({"x", "y"});
  GeomModel M;
  M.coalg = coalgebra_from_indices(X, V, {closed_index(V, X, 3), closed_index(V, X, 0)});
  M.valuation["p"] = 1;
  DisjointUnion du = disjoint_union({M, M});
  CHECK(du.model.space().size() == 4);
  CHECK(du.model.valuation.at("p") == (Mask{1} | Mask{1} << 2));
  for (const auto& incl : du.inclusions)
    CHECK(is_model_morphism(incl, M, du.model));
}

TEST_CASE("products and subspaces") {
  auto S = FinSpace::sierpinski();
  ProductSpace p = product_space(S, S);
  CHECK(p.space.size() == 4);
  CHECK(check_continuous(p.pi1));
  CHECK(check_continuous(p.pi2));
  Subspace sub = subspace(p.space, Mask{0b0110});
  CHECK(sub.space.size() == 2);
  CHECK(check_continuous(sub.inclusion));
}

TEST_CASE("finite compact Hausdorff means discrete") {
  CHECK(is_finite_kh(FinSpace::discrete({"a", "b"})));
  CHECK_FALSE(is_finite_kh(FinSpace::sierpinski()));
  CHECK_FALSE(is_finite_kh(FinSpace::two_trivial()));
}

TEST_CASE("D_kh over the Sierpinski space has three collections") {
  // hand enumeration: the empty collection, the up-set of the closed point,
  // and the full powerset
  auto S = FinSpace::sierpinski();
  auto cols = dkh_collections(S);
  REQUIRE(cols.size() == 3);
  CHECK(cols[0] == std::vector<Mask>{});
  CHECK(cols[1] == std::vector<Mask>{1, 3});        // ↑{0}
  CHECK(cols[2] == std::vector<Mask>{0, 1, 2, 3});  // everything
  for (const auto& W : cols) CHECK(dkh_collection_valid(S, W));
  CHECK_FALSE(dkh_collection_valid(S, {Mask{2}, Mask{3}}));  // ↑{1} fails
}

TEST_CASE("Vietoris subbase preimages on the KH fragment") {
  auto V = vietoris_functor();
  for (const auto& X : discrete_spaces(2))
    for (const auto& Y : discrete_spaces(2))
      for (const auto& f : all_continuous_maps(X, Y))
        for (Mask a : Y.opens()) {
          CHECK(V->preimage(f, V->eval_lifting("box", Y, {a})) ==
                V->eval_lifting("box", X, {f.preimage(a)}));
          CHECK(V->preimage(f, V->eval_lifting("dia", Y, {a})) ==
                V->eval_lifting("dia", X, {f.preimage(a)}));
        }
}

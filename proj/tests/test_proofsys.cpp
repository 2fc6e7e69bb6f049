#include <doctest.h>

#include "geomodal/proofsys.hpp"

using namespace geomodal;

namespace {

RuleInstance node(int id, const std::string& rule, std::vector<int> premises,
                  const std::string& lhs, const std::string& rhs) {
  RuleInstance r;
  r.id = id;
  r.rule = rule;
  r.premises = std::move(premises);
  r.conclusion = {parse_formula(lhs), parse_formula(rhs)};
  return r;
}

}  // namespace

TEST_CASE("geometric rules") {
  Derivation d;
  d.nodes.push_back(node(0, "identity", {}, "p:p", "p:p"));
  d.nodes.push_back(node(1, "conj-top", {}, "p:q", "top"));
  d.nodes.push_back(node(2, "conj-left", {}, "(p:p & p:q)", "p:p"));
  d.nodes.push_back(node(3, "conj-right", {}, "(p:p & p:q)", "p:q"));
  d.nodes.push_back(node(4, "disj-inj", {}, "p:p", "\\/[p:q, p:p]"));
  d.nodes.push_back(node(5, "frame-dist", {}, "(p:p & \\/[p:q, p:r])",
                         "\\/[(p:p & p:q), (p:p & p:r)]"));
  // cut: p ◁ (p & q) would be wrong; chain the projections instead
  d.nodes.push_back(node(6, "identity", {}, "(p:p & p:q)", "(p:p & p:q)"));
  d.nodes.push_back(node(7, "cut", {6, 2}, "(p:p & p:q)", "p:p"));
  // conj-intro
  d.nodes.push_back(node(8, "conj-intro", {2, 3}, "(p:p & p:q)", "(p:p & p:q)"));
  // disj-elim: from p ◁ r and q ◁ r conclude p∨q ◁ r
  d.nodes.push_back(node(9, "conj-top", {}, "p:p", "top"));
  d.nodes.push_back(node(10, "conj-top", {}, "p:q", "top"));
  d.nodes.push_back(node(11, "disj-elim", {9, 10}, "\\/[p:p, p:q]", "top"));
  CHECK(check_derivation(d).ok);
}

TEST_CASE("derivation failures are reported with the node and reason") {
  SUBCASE("dangling premise") {
    Derivation d;
    d.nodes.push_back(node(0, "cut", {5, 6}, "p:p", "p:q"));
    DerivationCheck r = check_derivation(d);
    CHECK_FALSE(r.ok);
    CHECK(r.failed_node == 0);
    CHECK(r.reason.find("dangling") != std::string::npos);
  }
  SUBCASE("schema mismatch reports expected vs found") {
    Derivation d;
    d.nodes.push_back(node(0, "identity", {}, "p:p", "p:q"));
    DerivationCheck r = check_derivation(d);
    CHECK_FALSE(r.ok);
    CHECK(r.reason.find("expected") != std::string::npos);
    CHECK(r.reason.find("found") != std::string::npos);
  }
  SUBCASE("Or-list order does not matter, width does") {
    Derivation ok;
    ok.nodes.push_back(node(0, "identity", {}, "\\/[p:p, p:q]", "\\/[p:q, p:p]"));
    CHECK(check_derivation(ok).ok);
    Derivation bad;
    bad.nodes.push_back(node(0, "identity", {}, "\\/[p:p, p:q]", "\\/[p:p]"));
    CHECK_FALSE(check_derivation(bad).ok);
  }
}

TEST_CASE("one-step instances of the monotone system") {
  SUBCASE("m2 with its side-condition premise") {
    Derivation d;
    d.nodes.push_back(node(0, "conj-right", {}, "(p:a & bot)", "bot"));
    RuleInstance m2 = node(1, "onestep", {0}, "(<box>(p:a) & <dia>(bot))", "bot");
    m2.system = "monotone";
    m2.onestep_rule = "m2";
    m2.subst["a"] = parse_formula("p:a");
    m2.subst["b"] = parse_formula("bot");
    d.nodes.push_back(m2);
    auto r = check_derivation(d);
    INFO(r.reason);
    CHECK(r.ok);
  }
  SUBCASE("m5") {
    Derivation d;
    d.nodes.push_back(node(0, "disj-inj", {}, "top", "\\/[top, p:b]"));
    RuleInstance m5 = node(1, "onestep", {0}, "top", "\\/[<box>(top), <dia>(p:b)]");
    m5.system = "monotone";
    m5.onestep_rule = "m5";
    m5.subst["a"] = parse_formula("top");
    m5.subst["b"] = parse_formula("p:b");
    d.nodes.push_back(m5);
    auto r = check_derivation(d);
    INFO(r.reason);
    CHECK(r.ok);
  }
  SUBCASE("m3 at a singleton directed family needs no premises") {
    Derivation d;
    RuleInstance m3 = node(0, "onestep", {}, "<box>(p:a)", "<box>(p:a)");
    m3.system = "monotone";
    m3.onestep_rule = "m3";
    m3.family_subst["A"] = {parse_formula("p:a")};
    d.nodes.push_back(m3);
    CHECK(check_derivation(d).ok);
  }
  SUBCASE("m3 with two members requires directedness witnesses") {
    Derivation d;
    RuleInstance m3 = node(0, "onestep", {},
                           "<box>(\\/[p:a, p:b])", "\\/[<box>(p:a), <box>(p:b)]");
    m3.system = "monotone";
    m3.onestep_rule = "m3";
    m3.family_subst["A"] = {parse_formula("p:a"), parse_formula("p:b")};
    d.nodes.push_back(m3);
    DerivationCheck r = check_derivation(d);
    CHECK_FALSE(r.ok);
    CHECK(r.reason.find("directed") != std::string::npos);

    // with an upper-bound member and its witnesses it goes through
    Derivation d2;
    d2.nodes.push_back(node(0, "disj-inj", {}, "p:a", "\\/[p:a, p:b]"));
    d2.nodes.push_back(node(1, "disj-inj", {}, "p:b", "\\/[p:a, p:b]"));
    d2.nodes.push_back(node(2, "identity", {}, "\\/[p:a, p:b]", "\\/[p:a, p:b]"));
    RuleInstance m3b =
        node(3, "onestep", {0, 1, 2},
             "<box>(\\/[p:a, p:b, \\/[p:a, p:b]])",
             "\\/[<box>(p:a), <box>(p:b), <box>(\\/[p:a, p:b])]");
    m3b.system = "monotone";
    m3b.onestep_rule = "m3";
    m3b.family_subst["A"] = {parse_formula("p:a"), parse_formula("p:b"),
                             parse_formula("\\/[p:a, p:b]")};
    d2.nodes.push_back(m3b);
    DerivationCheck r2 = check_derivation(d2);
    INFO(r2.reason);
    CHECK(r2.ok);
  }
  SUBCASE("instantiating a schema and checking is idempotent") {
    // build the m1 instance from the schema itself, then check it
    AxiomSystem sys = axiom_system("monotone");
    const OneStepSchema* m1 = sys.find("m1");
    REQUIRE(m1);
    Derivation d;
    d.nodes.push_back(node(0, "conj-left", {}, "(p:u & p:v)", "p:u"));
    RuleInstance inst =
        node(1, "onestep", {0}, "<box>((p:u & p:v))", "<box>(p:u)");
    inst.system = "monotone";
    inst.onestep_rule = "m1";
    inst.subst["a"] = parse_formula("(p:u & p:v)");
    inst.subst["b"] = parse_formula("p:u");
    d.nodes.push_back(inst);
    CHECK(check_derivation(d).ok);
  }
}

TEST_CASE("unknown systems and rules") {
  CHECK_THROWS_AS(axiom_system("nope"), ValidationError);
  Derivation d;
  RuleInstance r = node(0, "onestep", {}, "top", "top");
  r.system = "monotone";
  r.onestep_rule = "m99";
  d.nodes.push_back(r);
  CHECK_FALSE(check_derivation(d).ok);
}

TEST_CASE("validity") {
  auto V = vietoris_functor();
  GeomModel M;
  M.coalg.space = FinSpace::discrete({"x", "y"});
  M.coalg.functor = V;
  M.coalg.gamma = {TElem::closed(Mask{3}), TElem::closed(Mask{0})};
  M.valuation["p"] = 1;
  Signature sig = default_signature(V);
  CHECK(validity({parse_formula("<box>(p:p)"), Formula::top()}, M, sig));
  CHECK_FALSE(validity({parse_formula("<dia>(p:p)"), parse_formula("<box>(p:p)")},
                       M, sig));
}

TEST_CASE("soundness sweeps are clean for the registered systems") {
  SoundnessReport m = soundness_sweep(axiom_system("monotone"), dkh_functor(), 2);
  CHECK(m.violations.empty());
  CHECK(m.coalgebras > 0);
  CHECK(m.instances > 0);

  SoundnessReport v =
      soundness_sweep(axiom_system("positive-vietoris"), vietoris_functor(), 2);
  CHECK(v.violations.empty());
}

TEST_CASE("a corrupted schema produces violations with witnesses") {
  AxiomSystem corrupt;
  corrupt.name = "corrupt";
  Formula a = Formula::prop("a"), b = Formula::prop("b");
  // m2 without the a∧b ◁ ⊥ side-condition premise
  corrupt.schemata.push_back(
      {"m2-without-side-condition",
       {},
       {Formula::conj(Formula::modal("box", {a}), Formula::modal("dia", {b})),
        Formula::bottom()},
       false,
       {}});
  SoundnessReport rep = soundness_sweep(corrupt, dkh_functor(), 2);
  CHECK_FALSE(rep.violations.empty());
  CHECK_FALSE(rep.violations[0].substitution.empty());
}

TEST_CASE("derivable implies valid on the enumerated D_kh models") {
  // machine-checked monotone derivations; every node's conclusion must be
  // valid in every small D_kh model once the letters are valued
  Derivation d;
  d.nodes.push_back(node(0, "disj-inj", {}, "top", "\\/[top, p:b]"));
  RuleInstance m5 = node(1, "onestep", {0}, "top", "\\/[<box>(top), <dia>(p:b)]");
  m5.system = "monotone";
  m5.onestep_rule = "m5";
  m5.subst["a"] = parse_formula("top");
  m5.subst["b"] = parse_formula("p:b");
  d.nodes.push_back(m5);
  REQUIRE(check_derivation(d).ok);

  auto D = dkh_functor();
  Signature sig = default_signature(D);
  std::vector<std::string> pts = {"x", "y"};
  for (int n = 1; n <= 2; ++n) {
    std::vector<std::string> ps(pts.begin(), pts.begin() + n);
    for (const auto& X : all_topologies(ps)) {
      const Carrier& car = D->carrier(X);
      std::vector<int> gamma(n, 0);
      while (true) {
        Coalgebra A = coalgebra_from_indices(X, D, gamma);
        if (gamma_continuous(A)) {
          for (Mask vb : X.opens()) {
            GeomModel M;
            M.coalg = A;
            M.valuation["b"] = vb;
            for (const auto& nd : d.nodes) CHECK(validity(nd.conclusion, M, sig));
          }
        }
        int i = 0;
        for (; i < n; ++i) {
          if (++gamma[i] < car.space.size()) break;
          gamma[i] = 0;
        }
        if (i == n) break;
      }
    }
  }
}

TEST_CASE("the m3 inclusion holds on the three-point discrete carrier") {
  // ⊡̄(∪A) ⊆ ∪{⊡̄a | a ∈ A} for directed open families, checked exhaustively
  // where the carrier is largest
  auto D = dkh_functor();
  auto X = FinSpace::discrete({"x", "y", "z"});
  const auto& opens = X.opens();
  const int no = static_cast<int>(opens.size());
  int families = 0;
  for (Mask sub = 1; sub < (Mask{1} << no); ++sub) {
    std::vector<Mask> fam;
    for (int i = 0; i < no; ++i)
      if (mask_has(sub, i)) fam.push_back(opens[i]);
    bool directed = true;
    for (std::size_t i = 0; i < fam.size() && directed; ++i)
      for (std::size_t j = i; j < fam.size(); ++j) {
        Mask ub = fam[i] | fam[j];
        bool has = false;
        for (Mask c : fam)
          if ((ub & ~c) == 0) { has = true; break; }
        if (!has) { directed = false; break; }
      }
    if (!directed) continue;
    ++families;
    Mask un = 0, rhs = 0;
    for (Mask a : fam) {
      un |= a;
      rhs |= D->eval_lifting("box", X, {a});
    }
    Mask lhs = D->eval_lifting("box", X, {un});
    CHECK((lhs & ~rhs) == 0);
    CHECK(lhs == rhs);  // finitely the family carries its maximum
  }
  CHECK(families > 0);
}

TEST_CASE("positive-vietoris one-step instances") {
  Derivation d;
  RuleInstance meet = node(0, "onestep", {}, "(<box>(p:a) & <box>(p:b))",
                           "<box>((p:a & p:b))");
  meet.system = "positive-vietoris";
  meet.onestep_rule = "pv-box-meet";
  meet.subst["a"] = parse_formula("p:a");
  meet.subst["b"] = parse_formula("p:b");
  d.nodes.push_back(meet);
  RuleInstance inter = node(1, "onestep", {}, "(<box>(p:a) & <dia>(p:b))",
                            "<dia>((p:a & p:b))");
  inter.system = "positive-vietoris";
  inter.onestep_rule = "pv-interact-meet";
  inter.subst["a"] = parse_formula("p:a");
  inter.subst["b"] = parse_formula("p:b");
  d.nodes.push_back(inter);
  auto r = check_derivation(d);
  INFO(r.reason);
  CHECK(r.ok);
}

TEST_CASE("countermodel search for non-derivable pairs") {
  auto V = vietoris_functor();
  ConsequencePair bad{parse_formula("<dia>(p:p)"), parse_formula("<box>(p:p)")};
  auto cm = find_countermodel(bad, V, 2);
  REQUIRE(cm.has_value());
  CHECK_FALSE(validity(bad, *cm, default_signature(V)));

  // derivable pairs have no countermodel within the bound
  ConsequencePair ok{parse_formula("<box>((p:p & p:q))"), parse_formula("<box>(p:p)")};
  CHECK_FALSE(find_countermodel(ok, V, 2).has_value());
  ConsequencePair triv{parse_formula("p:p"), Formula::top()};
  CHECK_FALSE(find_countermodel(triv, V, 1).has_value());
}

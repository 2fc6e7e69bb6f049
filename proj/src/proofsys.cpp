#include "geomodal/proofsys.hpp"

#include <algorithm>

namespace geomodal {

const OneStepSchema* AxiomSystem::find(const std::string& rule) const {
  for (const auto& s : schemata)
    if (s.name == rule) return &s;
  return nullptr;
}

namespace {

Formula mv(const std::string& m) { return Formula::prop(m); }
Formula box(Formula f) { return Formula::modal("box", {std::move(f)}); }
Formula dia(Formula f) { return Formula::modal("dia", {std::move(f)}); }

}  // namespace

AxiomSystem axiom_system(const std::string& name) {
  AxiomSystem sys;
  sys.name = name;
  if (name == "monotone") {
    sys.schemata.push_back({"m1", {{mv("a"), mv("b")}}, {box(mv("a")), box(mv("b"))}, false, {}});
    sys.schemata.push_back({"m2",
                            {{Formula::conj(mv("a"), mv("b")), Formula::bottom()}},
                            {Formula::conj(box(mv("a")), dia(mv("b"))), Formula::bottom()},
                            false,
                            {}});
    sys.schemata.push_back({"m3", {}, {}, true, "box"});
    sys.schemata.push_back({"m4", {{mv("a"), mv("b")}}, {dia(mv("a")), dia(mv("b"))}, false, {}});
    sys.schemata.push_back({"m5",
                            {{Formula::top(), Formula::disj({mv("a"), mv("b")})}},
                            {Formula::top(), Formula::disj({box(mv("a")), dia(mv("b"))})},
                            false,
                            {}});
    sys.schemata.push_back({"m6", {}, {}, true, "dia"});
    return sys;
  }
  if (name == "positive-vietoris") {
    sys.schemata.push_back({"pv-mono-box", {{mv("a"), mv("b")}}, {box(mv("a")), box(mv("b"))}, false, {}});
    sys.schemata.push_back({"pv-mono-dia", {{mv("a"), mv("b")}}, {dia(mv("a")), dia(mv("b"))}, false, {}});
    sys.schemata.push_back({"pv-box-meet",
                            {},
                            {Formula::conj(box(mv("a")), box(mv("b"))),
                             box(Formula::conj(mv("a"), mv("b")))},
                            false,
                            {}});
    sys.schemata.push_back({"pv-box-top", {}, {Formula::top(), box(Formula::top())}, false, {}});
    sys.schemata.push_back({"pv-dia-join",
                            {},
                            {dia(Formula::disj({mv("a"), mv("b")})),
                             Formula::disj({dia(mv("a")), dia(mv("b"))})},
                            false,
                            {}});
    sys.schemata.push_back({"pv-dia-bot", {}, {dia(Formula::bottom()), Formula::bottom()}, false, {}});
    sys.schemata.push_back({"pv-interact-meet",
                            {},
                            {Formula::conj(box(mv("a")), dia(mv("b"))),
                             dia(Formula::conj(mv("a"), mv("b")))},
                            false,
                            {}});
    sys.schemata.push_back({"pv-interact-join",
                            {},
                            {box(Formula::disj({mv("a"), mv("b")})),
                             Formula::disj({box(mv("a")), dia(mv("b"))})},
                            false,
                            {}});
    sys.schemata.push_back({"pv-box-scott", {}, {}, true, "box"});
    sys.schemata.push_back({"pv-dia-scott", {}, {}, true, "dia"});
    return sys;
  }
  throw ValidationError("unknown axiom system '" + name + "'");
}

// ---------------------------------------------------------------------------
// derivation checking

namespace {

Formula instantiate(const Formula& tmpl, const std::map<std::string, Formula>& subst) {
  switch (tmpl.kind) {
    case Formula::Kind::Top:
      return tmpl;
    case Formula::Kind::Prop: {
      auto it = subst.find(tmpl.name);
      if (it == subst.end())
        throw ValidationError("substitution missing metavariable '" + tmpl.name + "'");
      return it->second;
    }
    case Formula::Kind::And:
      return Formula::conj(instantiate(tmpl.args[0], subst),
                           instantiate(tmpl.args[1], subst));
    case Formula::Kind::Or: {
      std::vector<Formula> fs;
      for (const auto& a : tmpl.args) fs.push_back(instantiate(a, subst));
      return Formula::disj(std::move(fs));
    }
    case Formula::Kind::Modal: {
      std::vector<Formula> fs;
      for (const auto& a : tmpl.args) fs.push_back(instantiate(a, subst));
      return Formula::modal(tmpl.name, std::move(fs));
    }
  }
  return tmpl;
}

bool eq(const Formula& a, const Formula& b) { return syntactically_equal(a, b); }

std::string mismatch(const std::string& what, const Formula& expected,
                     const Formula& found) {
  return what + ": expected " + print_formula(expected) + ", found " +
         print_formula(found);
}

// family schema instance: conclusion ♥(⋁A) ◁ ⋁{♥a | a ∈ A}, premises
// witnessing directedness of A
std::string check_family_instance(const RuleInstance& node,
                                  const std::vector<ConsequencePair>& premise_pairs,
                                  const std::string& lifting) {
  auto it = node.family_subst.find("A");
  if (it == node.family_subst.end()) return "family substitution 'A' missing";
  const auto& fam = it->second;
  if (fam.empty()) return "family substitution 'A' must be nonempty";
  Formula lhs = Formula::modal(lifting, {Formula::disj(fam)});
  std::vector<Formula> parts;
  for (const auto& a : fam) parts.push_back(Formula::modal(lifting, {a}));
  Formula rhs = Formula::disj(std::move(parts));
  if (!eq(node.conclusion.lhs, lhs))
    return mismatch("conclusion lhs", lhs, node.conclusion.lhs);
  if (!eq(node.conclusion.rhs, rhs))
    return mismatch("conclusion rhs", rhs, node.conclusion.rhs);
  // directedness: every pair of members needs a cited common upper bound
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = i + 1; j < fam.size(); ++j) {
      bool ok = false;
      for (std::size_t k = 0; k < fam.size() && !ok; ++k) {
        bool have_i = false, have_j = false;
        for (const auto& pp : premise_pairs) {
          if (eq(pp.lhs, fam[i]) && eq(pp.rhs, fam[k])) have_i = true;
          if (eq(pp.lhs, fam[j]) && eq(pp.rhs, fam[k])) have_j = true;
        }
        if (have_i && have_j) ok = true;
      }
      if (!ok)
        return "family is not witnessed directed at members " +
               print_formula(fam[i]) + ", " + print_formula(fam[j]);
    }
  return {};
}

std::string check_node(const RuleInstance& node,
                       const std::vector<ConsequencePair>& premise_pairs) {
  const Formula& L = node.conclusion.lhs;
  const Formula& R = node.conclusion.rhs;
  auto need_premises = [&](std::size_t n) -> std::string {
    if (premise_pairs.size() != n)
      return "rule '" + node.rule + "' needs " + std::to_string(n) +
             " premises, got " + std::to_string(premise_pairs.size());
    return {};
  };
  if (node.rule == "identity") {
    if (auto e = need_premises(0); !e.empty()) return e;
    if (!eq(L, R)) return mismatch("identity conclusion rhs", L, R);
    return {};
  }
  if (node.rule == "cut") {
    if (auto e = need_premises(2); !e.empty()) return e;
    if (!eq(premise_pairs[0].lhs, L))
      return mismatch("cut lhs", L, premise_pairs[0].lhs);
    if (!eq(premise_pairs[0].rhs, premise_pairs[1].lhs))
      return mismatch("cut link", premise_pairs[0].rhs, premise_pairs[1].lhs);
    if (!eq(premise_pairs[1].rhs, R))
      return mismatch("cut rhs", R, premise_pairs[1].rhs);
    return {};
  }
  if (node.rule == "conj-top") {
    if (auto e = need_premises(0); !e.empty()) return e;
    if (!eq(R, Formula::top())) return mismatch("conj-top rhs", Formula::top(), R);
    return {};
  }
  if (node.rule == "conj-left" || node.rule == "conj-right") {
    if (auto e = need_premises(0); !e.empty()) return e;
    if (L.kind != Formula::Kind::And) return "conclusion lhs is not a conjunction";
    const Formula& pick = node.rule == "conj-left" ? L.args[0] : L.args[1];
    if (!eq(pick, R)) return mismatch("projected conjunct", pick, R);
    return {};
  }
  if (node.rule == "conj-intro") {
    if (auto e = need_premises(2); !e.empty()) return e;
    if (R.kind != Formula::Kind::And) return "conclusion rhs is not a conjunction";
    if (!eq(premise_pairs[0].lhs, L) || !eq(premise_pairs[1].lhs, L))
      return "conj-intro premises must share the conclusion lhs";
    if (!eq(premise_pairs[0].rhs, R.args[0]) || !eq(premise_pairs[1].rhs, R.args[1]))
      return "conj-intro premises do not match the conjuncts";
    return {};
  }
  if (node.rule == "disj-inj") {
    if (auto e = need_premises(0); !e.empty()) return e;
    Formula canon = canonical(R);
    if (canon.kind != Formula::Kind::Or) {
      // a singleton disjunction collapses; membership is then equality
      if (eq(L, R)) return {};
      return "conclusion rhs is not a disjunction containing the lhs";
    }
    for (const auto& m : canon.args)
      if (eq(L, m)) return {};
    return "conclusion lhs is not a member of the disjunction";
  }
  if (node.rule == "disj-elim") {
    Formula canonL = canonical(L);
    std::vector<Formula> members;
    if (canonL.kind == Formula::Kind::Or)
      members = canonL.args;
    else
      members = {canonL};
    for (const auto& pp : premise_pairs) {
      if (!eq(pp.rhs, R)) return mismatch("disj-elim premise rhs", R, pp.rhs);
      bool found = false;
      for (const auto& m : members)
        if (eq(pp.lhs, m)) { found = true; break; }
      if (!found) return "premise lhs is not a disjunct of the conclusion lhs";
    }
    for (const auto& m : members) {
      bool found = false;
      for (const auto& pp : premise_pairs)
        if (eq(pp.lhs, m)) { found = true; break; }
      if (!found) return "disjunct " + print_formula(m) + " has no premise";
    }
    return {};
  }
  if (node.rule == "frame-dist") {
    if (auto e = need_premises(0); !e.empty()) return e;
    if (L.kind != Formula::Kind::And) return "conclusion lhs is not a conjunction";
    Formula disj = canonical(L.args[1]);
    std::vector<Formula> members =
        disj.kind == Formula::Kind::Or ? disj.args : std::vector<Formula>{disj};
    std::vector<Formula> expected;
    for (const auto& m : members) expected.push_back(Formula::conj(L.args[0], m));
    if (!eq(R, Formula::disj(std::move(expected))))
      return "conclusion rhs is not the distributed disjunction";
    return {};
  }
  if (node.rule == "onestep") {
    AxiomSystem sys = axiom_system(node.system);
    const OneStepSchema* schema = sys.find(node.onestep_rule);
    if (!schema)
      return "unknown one-step rule '" + node.onestep_rule + "' in system '" +
             node.system + "'";
    if (schema->family)
      return check_family_instance(node, premise_pairs, schema->family_lifting);
    if (auto e = need_premises(schema->premises.size()); !e.empty()) return e;
    for (std::size_t i = 0; i < schema->premises.size(); ++i) {
      Formula el = instantiate(schema->premises[i].lhs, node.subst);
      Formula er = instantiate(schema->premises[i].rhs, node.subst);
      if (!eq(premise_pairs[i].lhs, el))
        return mismatch("one-step premise lhs", el, premise_pairs[i].lhs);
      if (!eq(premise_pairs[i].rhs, er))
        return mismatch("one-step premise rhs", er, premise_pairs[i].rhs);
    }
    Formula el = instantiate(schema->conclusion.lhs, node.subst);
    Formula er = instantiate(schema->conclusion.rhs, node.subst);
    if (!eq(L, el)) return mismatch("one-step conclusion lhs", el, L);
    if (!eq(R, er)) return mismatch("one-step conclusion rhs", er, R);
    return {};
  }
  return "unknown rule '" + node.rule + "'";
}

}  // namespace

DerivationCheck check_derivation(const Derivation& d) {
  DerivationCheck out;
  std::map<int, const RuleInstance*> seen;
  for (const auto& node : d.nodes) {
    std::vector<ConsequencePair> premise_pairs;
    for (int pid : node.premises) {
      auto it = seen.find(pid);
      if (it == seen.end()) {
        out.ok = false;
        out.failed_node = node.id;
        out.reason = "dangling premise reference " + std::to_string(pid);
        return out;
      }
      premise_pairs.push_back(it->second->conclusion);
    }
    std::string err = check_node(node, premise_pairs);
    if (!err.empty()) {
      out.ok = false;
      out.failed_node = node.id;
      out.reason = err;
      return out;
    }
    if (seen.count(node.id)) {
      out.ok = false;
      out.failed_node = node.id;
      out.reason = "duplicate node id";
      return out;
    }
    seen[node.id] = &node;
  }
  return out;
}

// ---------------------------------------------------------------------------
// semantic soundness

bool validity(const ConsequencePair& pair, const GeomModel& M, const Signature& sig) {
  Mask l = truth_set(M, pair.lhs, sig);
  Mask r = truth_set(M, pair.rhs, sig);
  return (l & ~r) == 0;
}

namespace {

std::vector<Coalgebra> all_coalgebras(const FunctorPtr& T, const FinSpace& X) {
  const FinSpace& TX = T->carrier(X).space;
  std::vector<Coalgebra> out;
  const int n = X.size(), m = TX.size();
  std::vector<int> gamma(n, 0);
  while (true) {
    Coalgebra A = coalgebra_from_indices(X, T, gamma);
    if (gamma_continuous(A)) out.push_back(std::move(A));
    int i = 0;
    for (; i < n; ++i) {
      if (++gamma[i] < m) break;
      gamma[i] = 0;
    }
    if (i == n) break;
  }
  return out;
}

std::string open_names(const GeomModel& M, const std::map<std::string, Mask>& vals) {
  std::string s;
  for (const auto& [k, v] : vals) {
    if (!s.empty()) s += " ";
    s += k + "=" + M.space().subset_name(v);
  }
  return s;
}

}  // namespace

std::optional<GeomModel> find_countermodel(const ConsequencePair& pair,
                                           const FunctorPtr& T, int max_points) {
  std::set<std::string> letters;
  auto collect = [&](const Formula& f, auto&& self) -> void {
    if (f.kind == Formula::Kind::Prop) letters.insert(f.name);
    for (const auto& a : f.args) self(a, self);
  };
  collect(pair.lhs, collect);
  collect(pair.rhs, collect);
  std::vector<std::string> ls(letters.begin(), letters.end());
  Signature sig = default_signature(T);
  std::vector<std::string> pool = {"x", "y", "z", "w"};
  for (int n = 1; n <= max_points; ++n) {
    std::vector<std::string> pts(pool.begin(), pool.begin() + n);
    for (const auto& X : all_topologies(pts))
      for (const auto& A : all_coalgebras(T, X)) {
        const auto& opens = X.opens();
        std::vector<std::size_t> ix(ls.size(), 0);
        while (true) {
          GeomModel M;
          M.coalg = A;
          for (std::size_t i = 0; i < ls.size(); ++i) M.valuation[ls[i]] = opens[ix[i]];
          if (!validity(pair, M, sig)) return M;
          std::size_t i = 0;
          for (; i < ix.size(); ++i) {
            if (++ix[i] < opens.size()) break;
            ix[i] = 0;
          }
          if (i == ix.size()) break;
        }
      }
  }
  return std::nullopt;
}

SoundnessReport soundness_sweep(const AxiomSystem& system, const FunctorPtr& T,
                                int max_points) {
  SoundnessReport rep;
  Signature sig = default_signature(T);
  std::vector<std::string> pool = {"x", "y", "z", "w"};
  for (int n = 1; n <= max_points; ++n) {
    std::vector<std::string> pts(pool.begin(), pool.begin() + n);
    for (const auto& X : all_topologies(pts)) {
      for (const auto& A : all_coalgebras(T, X)) {
        ++rep.coalgebras;
        GeomModel M;
        M.coalg = A;
        const auto& opens = X.opens();
        for (const auto& schema : system.schemata) {
          if (schema.family) {
            // directed open families: conclusion ♥(⋃A) ◁ ⋁♥a must be valid
            const int no = static_cast<int>(opens.size());
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
              GeomModel MM = M;
              std::vector<Formula> parts;
              for (std::size_t i = 0; i < fam.size(); ++i) {
                std::string letter = "a" + std::to_string(i);
                MM.valuation[letter] = fam[i];
                parts.push_back(Formula::prop(letter));
              }
              ConsequencePair concl{
                  Formula::modal(schema.family_lifting, {Formula::disj(parts)}),
                  Formula::disj([&] {
                    std::vector<Formula> ms;
                    for (const auto& p : parts)
                      ms.push_back(Formula::modal(schema.family_lifting, {p}));
                    return ms;
                  }())};
              ++rep.instances;
              if (!validity(concl, MM, sig)) {
                SoundnessViolation v;
                v.schema = schema.name;
                v.space_desc = std::to_string(X.size()) + " points, " +
                               std::to_string(opens.size()) + " opens";
                v.gamma_desc = open_names(MM, MM.valuation);
                v.premise_or_conclusion = print_formula(concl.lhs) + " ◁ " +
                                          print_formula(concl.rhs);
                rep.violations.push_back(std::move(v));
              }
            }
            continue;
          }
          // plain schema: substitute opens for the metavariables a, b
          for (Mask va : opens)
            for (Mask vb : opens) {
              GeomModel MM = M;
              MM.valuation["a"] = va;
              MM.valuation["b"] = vb;
              bool premises_ok = true;
              for (const auto& pp : schema.premises)
                if (!validity(pp, MM, sig)) { premises_ok = false; break; }
              if (!premises_ok) continue;
              ++rep.instances;
              if (!validity(schema.conclusion, MM, sig)) {
                SoundnessViolation v;
                v.schema = schema.name;
                v.space_desc = std::to_string(X.size()) + " points, " +
                               std::to_string(opens.size()) + " opens";
                v.gamma_desc = open_names(MM, MM.valuation);
                v.substitution = {"a=" + X.subset_name(va), "b=" + X.subset_name(vb)};
                v.premise_or_conclusion = print_formula(schema.conclusion.lhs) +
                                          " ◁ " + print_formula(schema.conclusion.rhs);
                rep.violations.push_back(std::move(v));
              }
            }
        }
      }
    }
  }
  return rep;
}

}  // namespace geomodal

#include "geomodal/io.hpp"

#include <fstream>

namespace geomodal {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
  throw ValidationError(path + ": " + msg);
}

std::vector<std::string> string_list(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) bad(path, "expected an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

Mask subset_mask(const FinSpace& X, const Json& j, const std::string& path) {
  Mask m = 0;
  for (const auto& e : string_list(j, path)) {
    auto i = X.point_index(e);
    if (!i) bad(path, "unknown point '" + e + "'");
    m |= Mask{1} << *i;
  }
  return m;
}

Json subset_to_json(const FinSpace& X, Mask m) {
  Json a = Json::array();
  for (int i = 0; i < X.size(); ++i)
    if (mask_has(m, i)) a.push_back(X.point_name(i));
  return a;
}

}  // namespace

FinSpace space_from_json(const Json& j) {
  if (!j.is_object()) bad("space", "expected an object");
  if (!j.contains("points")) bad("space", "missing 'points'");
  if (!j.contains("opens")) bad("space", "missing 'opens'");
  auto points = string_list(j["points"], "space.points");
  // build a skeleton for name lookup, then validate closure via from_opens
  FinSpace discrete;
  try {
    discrete = FinSpace::discrete(points);
  } catch (const ValidationError& e) {
    bad("space.points", e.what());
  }
  std::vector<Mask> opens;
  int k = 0;
  for (const auto& o : j["opens"]) {
    opens.push_back(subset_mask(discrete, o, "space.opens[" + std::to_string(k) + "]"));
    ++k;
  }
  try {
    return FinSpace::from_opens(points, std::move(opens));
  } catch (const ValidationError& e) {
    bad("space.opens", e.what());
  }
}

Json space_to_json(const FinSpace& X) {
  Json j;
  j["points"] = X.points();
  Json opens = Json::array();
  for (Mask o : X.opens()) opens.push_back(subset_to_json(X, o));
  j["opens"] = std::move(opens);
  return j;
}

FinFrame frame_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("elements") || !j.contains("leq"))
    bad("frame", "expected {\"elements\": [...], \"leq\": [[a,b],...]}");
  auto elems = string_list(j["elements"], "frame.elements");
  const int n = static_cast<int>(elems.size());
  auto index = [&](const std::string& s, const std::string& path) {
    for (int i = 0; i < n; ++i)
      if (elems[i] == s) return i;
    bad(path, "unknown element '" + s + "'");
  };
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) leq[i][i] = true;
  int k = 0;
  for (const auto& pr : j["leq"]) {
    std::string path = "frame.leq[" + std::to_string(k++) + "]";
    auto pair = string_list(pr, path);
    if (pair.size() != 2) bad(path, "expected a pair");
    leq[index(pair[0], path)][index(pair[1], path)] = true;
  }
  // transitive closure; antisymmetry and lattice laws are validated below
  for (int m = 0; m < n; ++m)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (leq[a][m] && leq[m][b]) leq[a][b] = true;
  try {
    return FinFrame::from_leq(std::move(elems), std::move(leq));
  } catch (const ValidationError& e) {
    bad("frame", e.what());
  }
}

Json frame_to_json(const FinFrame& F) {
  Json j;
  j["elements"] = F.elements();
  Json leq = Json::array();
  for (int a = 0; a < F.size(); ++a)
    for (int b = 0; b < F.size(); ++b)
      if (a != b && F.leq(a, b))
        leq.push_back(Json::array({F.element_name(a), F.element_name(b)}));
  j["leq"] = std::move(leq);
  return j;
}

LatticeTerm term_from_json(const Json& j) {
  if (!j.is_object()) bad("term", "expected an object");
  if (j.contains("gen")) {
    if (!j["gen"].is_string()) bad("term.gen", "expected a string");
    return LatticeTerm::generator(j["gen"].get<std::string>());
  }
  if (j.contains("meet")) {
    std::vector<LatticeTerm> ts;
    for (const auto& c : j["meet"]) ts.push_back(term_from_json(c));
    return LatticeTerm::meet(std::move(ts));
  }
  if (j.contains("join")) {
    std::vector<LatticeTerm> ts;
    for (const auto& c : j["join"]) ts.push_back(term_from_json(c));
    return LatticeTerm::join(std::move(ts));
  }
  bad("term", "expected one of 'gen', 'meet', 'join'");
}

Json term_to_json(const LatticeTerm& t) {
  Json j;
  switch (t.kind) {
    case LatticeTerm::Kind::Gen:
      j["gen"] = t.gen;
      break;
    case LatticeTerm::Kind::Meet: {
      Json a = Json::array();
      for (const auto& c : t.children) a.push_back(term_to_json(c));
      j["meet"] = std::move(a);
      break;
    }
    case LatticeTerm::Kind::Join: {
      Json a = Json::array();
      for (const auto& c : t.children) a.push_back(term_to_json(c));
      j["join"] = std::move(a);
      break;
    }
  }
  return j;
}

Presentation presentation_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("generators") || !j.contains("relations"))
    bad("presentation", "expected {\"generators\": [...], \"relations\": [...]}");
  Presentation P;
  P.generators = string_list(j["generators"], "presentation.generators");
  int k = 0;
  for (const auto& r : j["relations"]) {
    std::string path = "presentation.relations[" + std::to_string(k++) + "]";
    if (!r.is_object() || !r.contains("lhs") || !r.contains("rel") || !r.contains("rhs"))
      bad(path, "expected {\"lhs\": term, \"rel\": \"leq\"|\"eq\", \"rhs\": term}");
    std::string rel = r["rel"].get<std::string>();
    if (rel != "leq" && rel != "eq") bad(path + ".rel", "expected 'leq' or 'eq'");
    P.relations.push_back({term_from_json(r["lhs"]),
                           rel == "leq" ? RelKind::Leq : RelKind::Eq,
                           term_from_json(r["rhs"])});
  }
  try {
    P.validate();
  } catch (const ValidationError& e) {
    bad("presentation", e.what());
  }
  return P;
}

Json presentation_to_json(const Presentation& P) {
  Json j;
  j["generators"] = P.generators;
  Json rels = Json::array();
  for (const auto& r : P.relations) {
    Json rr;
    rr["lhs"] = term_to_json(r.lhs);
    rr["rel"] = r.kind == RelKind::Leq ? "leq" : "eq";
    rr["rhs"] = term_to_json(r.rhs);
    rels.push_back(std::move(rr));
  }
  j["relations"] = std::move(rels);
  return j;
}

Json gamma_elem_to_json(const FunctorPtr& T, const FinSpace& X, const TElem& e) {
  if (const Mask* m = std::get_if<Mask>(&e.v)) return subset_to_json(X, *m);
  if (const auto* W = std::get_if<std::vector<Mask>>(&e.v)) {
    Json a = Json::array();
    for (Mask u : *W) a.push_back(subset_to_json(X, u));
    return a;
  }
  int i = std::get<int>(e.v);
  if (T->name() == "trivial") return Json(i);
  return Json(T->carrier(X).space.point_name(i));
}

TElem gamma_elem_from_json(const FunctorPtr& T, const FinSpace& X, const Json& j,
                           const std::string& path) {
  const std::string& n = T->name();
  if (n == "vietoris") {
    return TElem::closed(subset_mask(X, j, path));
  }
  if (n == "dkh") {
    if (!j.is_array()) bad(path, "expected an array of arrays of point names");
    std::vector<Mask> W;
    int k = 0;
    for (const auto& u : j)
      W.push_back(subset_mask(X, u, path + "[" + std::to_string(k++) + "]"));
    std::sort(W.begin(), W.end());
    W.erase(std::unique(W.begin(), W.end()), W.end());
    return TElem::collection(std::move(W));
  }
  if (n == "trivial") {
    if (!j.is_number_integer()) bad(path, "expected 0 or 1");
    return TElem::index(j.get<int>());
  }
  // KKP lifts: carrier point name
  if (!j.is_string()) bad(path, "expected a carrier point name");
  auto i = T->carrier(X).space.point_index(j.get<std::string>());
  if (!i) bad(path, "unknown carrier element '" + j.get<std::string>() + "'");
  return T->elem_payload(X, *i);
}

GeomModel model_from_json(const Json& j) {
  if (!j.is_object()) bad("model", "expected an object");
  for (const char* key : {"space", "functor", "gamma", "valuation"})
    if (!j.contains(key)) bad("model", std::string("missing '") + key + "'");
  GeomModel M;
  FinSpace X = space_from_json(j["space"]);
  if (!j["functor"].is_string()) bad("model.functor", "expected a functor id");
  FunctorPtr T = make_functor(j["functor"].get<std::string>());
  std::vector<TElem> gamma;
  if (!j["gamma"].is_object()) bad("model.gamma", "expected an object point -> element");
  for (int x = 0; x < X.size(); ++x) {
    const std::string& p = X.point_name(x);
    if (!j["gamma"].contains(p)) bad("model.gamma", "missing point '" + p + "'");
    gamma.push_back(gamma_elem_from_json(T, X, j["gamma"][p], "model.gamma." + p));
  }
  M.coalg = Coalgebra{std::move(X), std::move(T), std::move(gamma)};
  if (!j["valuation"].is_object())
    bad("model.valuation", "expected an object letter -> array of points");
  for (const auto& [p, v] : j["valuation"].items())
    M.valuation[p] = subset_mask(M.space(), v, "model.valuation." + p);
  try {
    validate_model(M);
  } catch (const ValidationError& e) {
    bad("model", e.what());
  }
  return M;
}

Json model_to_json(const GeomModel& M) {
  Json j;
  j["space"] = space_to_json(M.space());
  j["functor"] = M.coalg.functor->name();
  Json g = Json::object();
  for (int x = 0; x < M.space().size(); ++x)
    g[M.space().point_name(x)] =
        gamma_elem_to_json(M.coalg.functor, M.space(), M.coalg.gamma[x]);
  j["gamma"] = std::move(g);
  Json v = Json::object();
  for (const auto& [p, u] : M.valuation) v[p] = subset_to_json(M.space(), u);
  j["valuation"] = std::move(v);
  return j;
}

Derivation derivation_from_json(const Json& j) {
  if (!j.is_array()) bad("derivation", "expected an array of rule instances");
  Derivation d;
  int k = 0;
  for (const auto& n : j) {
    std::string path = "derivation[" + std::to_string(k++) + "]";
    if (!n.is_object()) bad(path, "expected an object");
    RuleInstance ri;
    if (!n.contains("id") || !n["id"].is_number_integer()) bad(path, "missing 'id'");
    ri.id = n["id"].get<int>();
    if (!n.contains("rule") || !n["rule"].is_string()) bad(path, "missing 'rule'");
    ri.rule = n["rule"].get<std::string>();
    if (ri.rule == "onestep") {
      if (!n.contains("system") || !n.contains("name"))
        bad(path, "one-step instances need 'system' and 'name'");
      ri.system = n["system"].get<std::string>();
      ri.onestep_rule = n["name"].get<std::string>();
    }
    if (n.contains("premises"))
      for (const auto& p : n["premises"]) ri.premises.push_back(p.get<int>());
    if (!n.contains("conclusion") || !n["conclusion"].contains("lhs") ||
        !n["conclusion"].contains("rhs"))
      bad(path, "missing conclusion {\"lhs\",\"rhs\"}");
    try {
      ri.conclusion.lhs = parse_formula(n["conclusion"]["lhs"].get<std::string>());
      ri.conclusion.rhs = parse_formula(n["conclusion"]["rhs"].get<std::string>());
      if (n.contains("subst"))
        for (const auto& [mv, f] : n["subst"].items()) {
          if (f.is_array()) {
            std::vector<Formula> fs;
            for (const auto& g : f) fs.push_back(parse_formula(g.get<std::string>()));
            ri.family_subst[mv] = std::move(fs);
          } else {
            ri.subst[mv] = parse_formula(f.get<std::string>());
          }
        }
    } catch (const ValidationError& e) {
      bad(path, e.what());
    }
    d.nodes.push_back(std::move(ri));
  }
  return d;
}

CustomCode code_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("functor") || !j.contains("arity") ||
      !j.contains("code"))
    bad("code", "expected {\"functor\": id, \"arity\": n, \"code\": [elements]}");
  CustomCode out;
  out.id = j.contains("id") ? j["id"].get<std::string>() : "custom";
  out.code.functor = make_functor(j["functor"].get<std::string>());
  out.code.arity = j["arity"].get<int>();
  if (out.code.arity < 1 || out.code.arity > 2)
    bad("code.arity", "supported arities are 1 and 2");
  FinSpace base = out.code.functor->classifier();
  out.code.power = out.code.arity == 1 ? base : product_space(base, base).space;
  const FinSpace& TS = out.code.functor->carrier(out.code.power).space;
  int k = 0;
  for (const auto& e : j["code"]) {
    std::string path = "code.code[" + std::to_string(k++) + "]";
    if (!e.is_string()) bad(path, "expected a carrier point name");
    auto i = TS.point_index(e.get<std::string>());
    if (!i) bad(path, "unknown carrier element '" + e.get<std::string>() + "'");
    out.code.code |= Mask{1} << *i;
  }
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ValidationError("parse error in '" + path + "': " + e.what());
  }
  return j;
}

}  // namespace geomodal

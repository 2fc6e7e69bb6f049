#include "geomodal/logic.hpp"

#include <algorithm>

namespace geomodal {

Formula Formula::top() { return Formula{}; }

Formula Formula::bottom() { return disj({}); }

Formula Formula::prop(std::string p) {
  Formula f;
  f.kind = Kind::Prop;
  f.name = std::move(p);
  return f;
}

Formula Formula::conj(Formula a, Formula b) {
  Formula f;
  f.kind = Kind::And;
  f.args.push_back(std::move(a));
  f.args.push_back(std::move(b));
  return f;
}

Formula Formula::disj(std::vector<Formula> fs) {
  Formula f;
  f.kind = Kind::Or;
  f.args = std::move(fs);
  return f;
}

Formula Formula::modal(std::string lifting, std::vector<Formula> args) {
  Formula f;
  f.kind = Kind::Modal;
  f.name = std::move(lifting);
  f.args = std::move(args);
  return f;
}

bool Formula::operator==(const Formula& o) const {
  return kind == o.kind && name == o.name && args == o.args;
}

// ---------------------------------------------------------------------------
// parser / printer

namespace {

struct Parser {
  const std::string& src;
  std::size_t pos = 0;
  int line = 1, col = 1;

  explicit Parser(const std::string& s) : src(s) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ValidationError("syntax error at " + std::to_string(line) + ":" +
                          std::to_string(col) + ": " + msg);
  }

  void advance() {
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_ws() {
    while (pos < src.size() && (src[pos] == ' ' || src[pos] == '\t' ||
                                src[pos] == '\n' || src[pos] == '\r'))
      advance();
  }

  bool eat(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) {
      advance();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  static bool name_char(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
           (c >= '0' && c <= '9') || c == '_';
  }

  std::string name() {
    skip_ws();
    std::size_t start = pos;
    while (pos < src.size() && name_char(src[pos])) advance();
    if (pos == start) fail("expected a name");
    return src.substr(start, pos - start);
  }

  std::vector<Formula> list_until(char close) {
    std::vector<Formula> out;
    skip_ws();
    if (eat(close)) return out;
    out.push_back(formula());
    while (eat(',')) out.push_back(formula());
    expect(close);
    return out;
  }

  Formula primary() {
    skip_ws();
    if (pos >= src.size()) fail("unexpected end of input");
    char c = src[pos];
    if (c == '(') {
      advance();
      Formula f = formula();
      expect(')');
      return f;
    }
    if (c == '\\') {
      advance();
      if (pos >= src.size() || src[pos] != '/') fail("expected '/' after '\\'");
      advance();
      expect('[');
      return Formula::disj(list_until(']'));
    }
    if (c == '<') {
      advance();
      std::string id = name();
      expect('>');
      expect('(');
      return Formula::modal(id, list_until(')'));
    }
    if (name_char(c)) {
      std::string id = name();
      if (id == "top") return Formula::top();
      if (id == "bot") return Formula::bottom();
      if (id == "p" && eat(':')) return Formula::prop(name());
      fail("unknown token '" + id + "' (expected top, bot, p:NAME, \\/[...], <LIFT>(...))");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Formula formula() {
    Formula f = primary();
    while (eat('&')) f = Formula::conj(std::move(f), primary());
    return f;
  }
};

}  // namespace

Formula parse_formula(const std::string& text) {
  Parser p(text);
  Formula f = p.formula();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return f;
}

std::string print_formula(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Top:
      return "top";
    case Formula::Kind::Prop:
      return "p:" + f.name;
    case Formula::Kind::And:
      return "(" + print_formula(f.args[0]) + " & " + print_formula(f.args[1]) + ")";
    case Formula::Kind::Or: {
      if (f.args.empty()) return "bot";
      std::string s = "\\/[";
      for (std::size_t i = 0; i < f.args.size(); ++i) {
        if (i) s += ", ";
        s += print_formula(f.args[i]);
      }
      return s + "]";
    }
    case Formula::Kind::Modal: {
      std::string s = "<" + f.name + ">(";
      for (std::size_t i = 0; i < f.args.size(); ++i) {
        if (i) s += ", ";
        s += print_formula(f.args[i]);
      }
      return s + ")";
    }
  }
  return {};
}

Formula canonical(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Top:
    case Formula::Kind::Prop:
      return f;
    case Formula::Kind::And:
      return Formula::conj(canonical(f.args[0]), canonical(f.args[1]));
    case Formula::Kind::Modal: {
      std::vector<Formula> args;
      for (const auto& a : f.args) args.push_back(canonical(a));
      return Formula::modal(f.name, std::move(args));
    }
    case Formula::Kind::Or: {
      std::vector<Formula> flat;
      for (const auto& a : f.args) {
        Formula c = canonical(a);
        if (c.kind == Formula::Kind::Or)
          for (auto& g : c.args) flat.push_back(std::move(g));
        else
          flat.push_back(std::move(c));
      }
      if (flat.size() == 1) return flat[0];
      std::sort(flat.begin(), flat.end(), [](const Formula& a, const Formula& b) {
        return print_formula(a) < print_formula(b);
      });
      return Formula::disj(std::move(flat));
    }
  }
  return f;
}

bool syntactically_equal(const Formula& a, const Formula& b) {
  return canonical(a) == canonical(b);
}

// ---------------------------------------------------------------------------
// semantics

Signature default_signature(const FunctorPtr& T) { return builtin_signature(T); }

const OpenLifting* find_lifting(const Signature& sig, const std::string& id) {
  for (const auto& lam : sig)
    if (lam.id == id) return &lam;
  return nullptr;
}

void check_formula(const Formula& f, const Signature& sig) {
  if (f.kind == Formula::Kind::Modal) {
    const OpenLifting* lam = find_lifting(sig, f.name);
    if (!lam) throw ValidationError("unknown lifting id '" + f.name + "'");
    if (static_cast<int>(f.args.size()) != lam->arity)
      throw ValidationError("lifting '" + f.name + "' expects " +
                            std::to_string(lam->arity) + " arguments, got " +
                            std::to_string(f.args.size()));
  }
  for (const auto& a : f.args) check_formula(a, sig);
}

namespace {

// γ⁻¹(λ_X(args)): payload route for the functor's own builtins (no carrier
// enumeration), carrier-index route for custom liftings.
Mask modal_preimage(const GeomModel& M, const OpenLifting& lam,
                    const std::vector<Mask>& args) {
  const FinSpace& X = M.space();
  const FunctorPtr& T = M.coalg.functor;
  auto builtins = T->builtin_lifting_names();
  Mask out = 0;
  if (lam.functor->name() == T->name() &&
      std::find(builtins.begin(), builtins.end(), lam.id) != builtins.end()) {
    for (Mask a : args)
      if (!X.is_open(a))
        throw ValidationError("lifting '" + lam.id + "' applied to a non-open");
    for (int x = 0; x < X.size(); ++x)
      if (T->payload_in_lifting(lam.id, X, args, M.coalg.gamma[x]))
        out |= Mask{1} << x;
  } else {
    Mask img = lam(X, args);
    for (int x = 0; x < X.size(); ++x) {
      auto i = T->payload_index(X, M.coalg.gamma[x]);
      if (!i)
        throw InternalError("gamma payload has no carrier index");
      if (mask_has(img, *i)) out |= Mask{1} << x;
    }
  }
  if (!X.is_open(out))
    throw InternalError("truth set of a modal step is not open");
  return out;
}

}  // namespace

Mask truth_set(const GeomModel& M, const Formula& f, const Signature& sig) {
  const FinSpace& X = M.space();
  switch (f.kind) {
    case Formula::Kind::Top:
      return X.full();
    case Formula::Kind::Prop: {
      auto it = M.valuation.find(f.name);
      if (it == M.valuation.end())
        throw ValidationError("unknown proposition letter '" + f.name + "'");
      return it->second;
    }
    case Formula::Kind::And:
      return truth_set(M, f.args[0], sig) & truth_set(M, f.args[1], sig);
    case Formula::Kind::Or: {
      Mask u = 0;
      for (const auto& a : f.args) u |= truth_set(M, a, sig);
      return u;
    }
    case Formula::Kind::Modal: {
      const OpenLifting* lam = find_lifting(sig, f.name);
      if (!lam) throw ValidationError("unknown lifting id '" + f.name + "'");
      if (static_cast<int>(f.args.size()) != lam->arity)
        throw ValidationError("arity mismatch for lifting '" + f.name + "'");
      std::vector<Mask> args;
      for (const auto& a : f.args) args.push_back(truth_set(M, a, sig));
      return modal_preimage(M, *lam, args);
    }
  }
  return 0;
}

Mask truth_set(const GeomModel& M, const Formula& f) {
  return truth_set(M, f, default_signature(M.coalg.functor));
}

// ---------------------------------------------------------------------------
// normal form

namespace {

void collect_lifting_ids(const Formula& f, std::set<std::string>& out) {
  if (f.kind == Formula::Kind::Modal) out.insert(f.name);
  for (const auto& a : f.args) collect_lifting_ids(a, out);
}

std::vector<Formula> nf_clauses(const Formula& f, std::size_t max_clauses) {
  auto guard = [&](std::size_t n) {
    if (n > max_clauses)
      throw ResourceError("normal form exceeds the clause bound (" +
                          std::to_string(max_clauses) + ")");
  };
  switch (f.kind) {
    case Formula::Kind::Top:
    case Formula::Kind::Prop:
      return {f};
    case Formula::Kind::Or: {
      std::vector<Formula> out;
      for (const auto& a : f.args) {
        auto cs = nf_clauses(a, max_clauses);
        out.insert(out.end(), cs.begin(), cs.end());
        guard(out.size());
      }
      return out;
    }
    case Formula::Kind::And: {
      auto ls = nf_clauses(f.args[0], max_clauses);
      auto rs = nf_clauses(f.args[1], max_clauses);
      guard(ls.size() * rs.size());
      std::vector<Formula> out;
      for (const auto& l : ls)
        for (const auto& r : rs) out.push_back(Formula::conj(l, r));
      return out;
    }
    case Formula::Kind::Modal: {
      // ♥(⋁C₁, …) ≡ ⋁ over finite sub-disjunctions, by Scott-continuity
      std::vector<std::vector<Formula>> arg_clauses;
      for (const auto& a : f.args) arg_clauses.push_back(nf_clauses(a, max_clauses));
      std::size_t total = 1;
      for (const auto& cs : arg_clauses) {
        total *= (std::size_t{1} << std::min<std::size_t>(cs.size(), 40));
        guard(total);
      }
      std::vector<Formula> out;
      std::vector<Mask> subsets(arg_clauses.size(), 0);
      auto emit = [&]() {
        std::vector<Formula> margs;
        for (std::size_t i = 0; i < arg_clauses.size(); ++i) {
          std::vector<Formula> part;
          for (std::size_t k = 0; k < arg_clauses[i].size(); ++k)
            if (subsets[i] >> k & 1) part.push_back(arg_clauses[i][k]);
          margs.push_back(part.size() == 1 ? part[0] : Formula::disj(std::move(part)));
        }
        out.push_back(Formula::modal(f.name, std::move(margs)));
      };
      while (true) {
        emit();
        guard(out.size());
        std::size_t i = 0;
        for (; i < subsets.size(); ++i) {
          if (++subsets[i] < (Mask{1} << arg_clauses[i].size())) break;
          subsets[i] = 0;
        }
        if (i == subsets.size()) break;
      }
      return out;
    }
  }
  return {};
}

}  // namespace

Formula normal_form(const Formula& f, const std::set<std::string>& scott_liftings,
                    std::size_t max_clauses) {
  std::set<std::string> used;
  collect_lifting_ids(f, used);
  for (const auto& id : used)
    if (!scott_liftings.count(id))
      throw ValidationError("normal form requires Scott-continuous liftings; '" +
                            id + "' is not flagged Scott-continuous");
  auto cs = nf_clauses(f, max_clauses);
  if (cs.size() == 1) return cs[0];
  return Formula::disj(std::move(cs));
}

// ---------------------------------------------------------------------------
// definable opens and modal equivalence

std::vector<Mask> definable_opens(const GeomModel& M, const Signature& sig) {
  const FinSpace& X = M.space();
  std::set<Mask> fam{Mask{0}, X.full()};
  for (const auto& [p, v] : M.valuation) fam.insert(v);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Mask> cur(fam.begin(), fam.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        if (fam.insert(cur[i] & cur[j]).second) grew = true;
        if (fam.insert(cur[i] | cur[j]).second) grew = true;
      }
    cur.assign(fam.begin(), fam.end());
    for (const auto& lam : sig) {
      std::vector<std::size_t> ix(lam.arity, 0);
      do {
        std::vector<Mask> args(lam.arity);
        for (int i = 0; i < lam.arity; ++i) args[i] = cur[ix[i]];
        Mask u = modal_preimage(M, lam, args);
        if (fam.insert(u).second) grew = true;
      } while ([&] {
        for (auto& i : ix) {
          if (++i < cur.size()) return true;
          i = 0;
        }
        return false;
      }());
    }
  }
  return std::vector<Mask>(fam.begin(), fam.end());
}

std::vector<WitnessedOpen> definable_opens_witnessed(const GeomModel& M,
                                                     const Signature& sig,
                                                     int max_depth) {
  const FinSpace& X = M.space();
  std::map<Mask, Formula> fam;
  fam.emplace(Mask{0}, Formula::bottom());
  fam.emplace(X.full(), Formula::top());
  for (const auto& [p, v] : M.valuation) fam.emplace(v, Formula::prop(p));
  for (int depth = 0; depth < max_depth; ++depth) {
    std::vector<std::pair<Mask, Formula>> cur(fam.begin(), fam.end());
    bool grew = false;
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        if (!fam.count(cur[i].first & cur[j].first)) {
          fam.emplace(cur[i].first & cur[j].first,
                      Formula::conj(cur[i].second, cur[j].second));
          grew = true;
        }
        if (!fam.count(cur[i].first | cur[j].first)) {
          fam.emplace(cur[i].first | cur[j].first,
                      Formula::disj({cur[i].second, cur[j].second}));
          grew = true;
        }
      }
    cur.assign(fam.begin(), fam.end());
    for (const auto& lam : sig) {
      std::vector<std::size_t> ix(lam.arity, 0);
      do {
        std::vector<Mask> args(lam.arity);
        std::vector<Formula> wargs;
        for (int i = 0; i < lam.arity; ++i) {
          args[i] = cur[ix[i]].first;
          wargs.push_back(cur[ix[i]].second);
        }
        Mask u = modal_preimage(M, lam, args);
        if (!fam.count(u)) {
          fam.emplace(u, Formula::modal(lam.id, std::move(wargs)));
          grew = true;
        }
      } while ([&] {
        for (auto& i : ix) {
          if (++i < cur.size()) return true;
          i = 0;
        }
        return false;
      }());
    }
    if (!grew) break;
  }
  std::vector<WitnessedOpen> out;
  for (auto& [u, w] : fam) out.push_back(WitnessedOpen{u, w});
  return out;
}

bool modal_equiv(const GeomModel& M, int x, int y, const Signature& sig) {
  for (Mask u : definable_opens(M, sig))
    if (mask_has(u, x) != mask_has(u, y)) return false;
  return true;
}

bool modal_equiv(const GeomModel& M, int x, const GeomModel& N, int y,
                 const Signature& sig) {
  if (M.coalg.functor->name() != N.coalg.functor->name())
    throw ValidationError("modal equivalence across different functors");
  DisjointUnion du = disjoint_union({M, N});
  return modal_equiv(du.model, du.inclusions[0](x), du.inclusions[1](y), sig);
}

// ---------------------------------------------------------------------------
// theory quotient

TheoryQuotient theory_quotient(const std::vector<GeomModel>& models,
                               const Signature& sig) {
  TheoryQuotient out;
  DisjointUnion du = disjoint_union(models);
  const GeomModel& U = du.model;
  const FinSpace& UX = U.space();
  std::vector<Mask> fam = definable_opens(U, sig);

  // classes by membership profile, ordered by first representative
  std::vector<int> cls(UX.size(), -1);
  std::vector<int> rep;
  for (int x = 0; x < UX.size(); ++x) {
    for (std::size_t c = 0; c < rep.size(); ++c) {
      bool same = true;
      for (Mask u : fam)
        if (mask_has(u, x) != mask_has(u, rep[c])) { same = false; break; }
      if (same) { cls[x] = static_cast<int>(c); break; }
    }
    if (cls[x] < 0) {
      cls[x] = static_cast<int>(rep.size());
      rep.push_back(x);
    }
  }
  const int nq = static_cast<int>(rep.size());
  std::vector<std::string> names;
  for (int c = 0; c < nq; ++c) names.push_back("c" + std::to_string(c));
  std::vector<Mask> qopens;
  for (Mask u : fam) {
    Mask m = 0;
    for (int x = 0; x < UX.size(); ++x)
      if (mask_has(u, x)) m |= Mask{1} << cls[x];
    qopens.push_back(m);
  }
  FinSpace Z = FinSpace::from_opens(names, qopens);
  ContMap th(UX, Z, cls);

  // ζ([x]) = (T th)(γ(x)); must agree across representatives of a class
  FunctorPtr T = U.coalg.functor;
  std::vector<std::optional<TElem>> zeta(nq);
  for (int x = 0; x < UX.size(); ++x) {
    auto img = T->payload_apply(th, U.coalg.gamma[x]);
    if (!img) {
      out.failure = "transition image of " + UX.point_name(x) +
                    " is not in the functor carrier of the quotient space";
      return out;
    }
    if (!zeta[cls[x]]) {
      zeta[cls[x]] = std::move(*img);
    } else if (!(*zeta[cls[x]] == *img)) {
      out.failure = "equivalent points " + UX.point_name(rep[cls[x]]) + " and " +
                    UX.point_name(x) + " have different transition images";
      return out;
    }
  }
  GeomModel Q;
  std::vector<TElem> zgamma;
  for (auto& z : zeta) zgamma.push_back(std::move(*z));
  Q.coalg = Coalgebra{Z, T, std::move(zgamma)};
  for (const auto& [p, v] : U.valuation) {
    Mask m = 0;
    for (int x = 0; x < UX.size(); ++x)
      if (mask_has(v, x)) m |= Mask{1} << cls[x];
    Q.valuation[p] = m;
  }
  try {
    validate_model(Q);
  } catch (const Error& e) {
    out.failure = std::string("quotient model invalid: ") + e.what();
    return out;
  }
  if (!is_model_morphism(th, U, Q)) {
    out.failure = "theory map on the disjoint union is not a model morphism";
    return out;
  }
  // the signature must intertwine with the theory map at every state, i.e.
  // γ⁻¹(λ(th⁻¹ a⃗)) = th⁻¹(γ_Z⁻¹(λ(a⃗))) over all open tuples of the quotient;
  // this is what makes the theory maps truth-preserving witnesses, and it can
  // fail when the quotient leaves a KH-scoped functor's lawful fragment
  for (const auto& lam : sig) {
    const auto& zopens = Z.opens();
    std::vector<std::size_t> ix(lam.arity, 0);
    do {
      std::vector<Mask> zargs(lam.arity), uargs(lam.arity);
      for (int i = 0; i < lam.arity; ++i) {
        zargs[i] = zopens[ix[i]];
        uargs[i] = th.preimage(zargs[i]);
      }
      Mask lhs = modal_preimage(U, lam, uargs);
      Mask rhs = modal_preimage(Q, lam, zargs);
      for (int x = 0; x < UX.size(); ++x)
        if (mask_has(lhs, x) != mask_has(rhs, cls[x])) {
          out.failure = "lifting '" + lam.id +
                        "' does not intertwine with the theory map at " +
                        UX.point_name(x) +
                        " (quotient outside the functor's lawful scope)";
          return out;
        }
    } while ([&] {
      for (auto& i : ix) {
        if (++i < zopens.size()) return true;
        i = 0;
      }
      return false;
    }());
  }
  out.ok = true;
  out.quotient = std::move(Q);
  out.union_class = cls;
  for (std::size_t k = 0; k < models.size(); ++k) {
    std::vector<int> asg(models[k].space().size());
    for (int i = 0; i < models[k].space().size(); ++i)
      asg[i] = cls[du.inclusions[k](i)];
    ContMap tk(models[k].space(), out.quotient.space(), std::move(asg));
    if (!is_model_morphism(tk, models[k], out.quotient)) {
      out.ok = false;
      out.failure = "theory map of model " + std::to_string(k) +
                    " is not a model morphism";
      return out;
    }
    out.theory_maps.push_back(std::move(tk));
  }
  return out;
}

// ---------------------------------------------------------------------------
// random formulas

Formula random_formula(std::mt19937& rng, const std::vector<std::string>& props,
                       const std::vector<std::pair<std::string, int>>& modalities,
                       int depth, int or_width) {
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  int choices = depth == 0 ? 3 : 5;
  switch (pick(choices)) {
    case 0:
      return Formula::top();
    case 1:
      return Formula::bottom();
    case 2:
      if (!props.empty()) return Formula::prop(props[pick(static_cast<int>(props.size()))]);
      return Formula::top();
    case 3: {
      if (pick(2) == 0)
        return Formula::conj(random_formula(rng, props, modalities, depth - 1, or_width),
                             random_formula(rng, props, modalities, depth - 1, or_width));
      std::vector<Formula> fs;
      int w = pick(or_width + 1);
      for (int i = 0; i < w; ++i)
        fs.push_back(random_formula(rng, props, modalities, depth - 1, or_width));
      return Formula::disj(std::move(fs));
    }
    default: {
      if (modalities.empty()) return Formula::top();
      auto& [id, ar] = modalities[pick(static_cast<int>(modalities.size()))];
      std::vector<Formula> args;
      for (int i = 0; i < ar; ++i)
        args.push_back(random_formula(rng, props, modalities, depth - 1, or_width));
      return Formula::modal(id, std::move(args));
    }
  }
}

}  // namespace geomodal

#include "geomodal/framealg.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace geomodal {

std::optional<int> Presentation::generator_index(const std::string& name) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

namespace {

void collect_gens(const LatticeTerm& t, std::set<std::string>& out) {
  if (t.kind == LatticeTerm::Kind::Gen) {
    out.insert(t.gen);
    return;
  }
  for (const auto& c : t.children) collect_gens(c, out);
}

}  // namespace

void Presentation::validate() const {
  std::set<std::string> declared(generators.begin(), generators.end());
  if (declared.size() != generators.size())
    throw ValidationError("duplicate generator name in presentation");
  for (const auto& r : relations) {
    std::set<std::string> used;
    collect_gens(r.lhs, used);
    collect_gens(r.rhs, used);
    for (const auto& g : used)
      if (!declared.count(g))
        throw ValidationError("relation mentions unknown generator: " + g);
  }
}

// ---------------------------------------------------------------------------
// well-inside, regularity, negation

int negation(const FinFrame& F, int a) {
  int acc = F.bot();
  for (int b = 0; b < F.size(); ++b)
    if (F.meet(a, b) == F.bot()) acc = F.join(acc, b);
  return acc;
}

bool well_inside(const FinFrame& F, int a, int b) {
  bool witness = false;
  for (int c = 0; c < F.size(); ++c)
    if (F.meet(c, a) == F.bot() && F.join(c, b) == F.top()) {
      witness = true;
      break;
    }
  bool lemma = F.join(negation(F, a), b) == F.top();
  if (witness != lemma)
    throw InternalError("well-inside criteria disagree at " + F.element_name(a) +
                        " ⋖ " + F.element_name(b));
  return witness;
}

bool is_regular_element(const FinFrame& F, int a) {
  int acc = F.bot();
  for (int b = 0; b < F.size(); ++b)
    if (well_inside(F, b, a)) acc = F.join(acc, b);
  return acc == a;
}

bool is_regular_frame(const FinFrame& F) {
  for (int a = 0; a < F.size(); ++a)
    if (!is_regular_element(F, a)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// the M and M' presentations

std::string m_box_name(const FinFrame& F, int a) {
  return "box(" + F.element_name(a) + ")";
}
std::string m_dia_name(const FinFrame& F, int a) {
  return "dia(" + F.element_name(a) + ")";
}

Presentation present_M(const FinFrame& F, bool include_directed) {
  Presentation P;
  const int n = F.size();
  for (int a = 0; a < n; ++a) P.generators.push_back(m_box_name(F, a));
  for (int a = 0; a < n; ++a) P.generators.push_back(m_dia_name(F, a));
  auto box = [&](int a) { return LatticeTerm::generator(m_box_name(F, a)); };
  auto dia = [&](int a) { return LatticeTerm::generator(m_dia_name(F, a)); };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      // M1: box(a∧b) ≤ box a
      P.relations.push_back({box(F.meet(a, b)), RelKind::Leq, box(a)});
      // M2: box a ∧ dia b = ⊥ whenever a∧b = ⊥
      if (F.meet(a, b) == F.bot())
        P.relations.push_back(
            {LatticeTerm::meet({box(a), dia(b)}), RelKind::Eq, LatticeTerm::bot()});
      // M4: dia a ≤ dia(a∨b)
      P.relations.push_back({dia(a), RelKind::Leq, dia(F.join(a, b))});
      // M5: ⊤ ≤ box a ∨ dia b whenever a∨b = ⊤
      if (F.join(a, b) == F.top())
        P.relations.push_back(
            {LatticeTerm::top(), RelKind::Leq, LatticeTerm::join({box(a), dia(b)})});
    }
  if (include_directed) {
    // M3/M6 over directed subsets (finitely: sets carrying their maximum)
    for (Mask sub = 1; sub < (Mask{1} << n); ++sub) {
      std::vector<int> xs;
      for (int i = 0; i < n; ++i)
        if (mask_has(sub, i)) xs.push_back(i);
      if (!F.is_directed(xs)) continue;
      int j = F.join_all(xs);
      std::vector<LatticeTerm> boxes, dias;
      for (int x : xs) {
        boxes.push_back(box(x));
        dias.push_back(dia(x));
      }
      P.relations.push_back({box(j), RelKind::Eq, LatticeTerm::join(boxes)});
      P.relations.push_back({dia(j), RelKind::Eq, LatticeTerm::join(dias)});
    }
  }
  P.validate();
  return P;
}

std::string mprime_gen_name(const FinFrame& F, Mask gamma, Mask delta) {
  auto part = [&](Mask m) {
    std::string s = "{";
    bool first = true;
    for (int i = 0; i < F.size(); ++i)
      if (mask_has(m, i)) {
        if (!first) s += ",";
        s += F.element_name(i);
        first = false;
      }
    return s + "}";
  };
  return "(" + part(gamma) + ";" + part(delta) + ")";
}

Presentation present_Mprime(const FinFrame& F, bool include_directed) {
  const int n = F.size();
  if (n > 6)
    throw ResourceError("M' presentation capped at 6-element frames");
  Presentation P;
  // atomic pairs first, so the join-law equalities force everything else
  std::vector<std::pair<Mask, Mask>> order;
  for (int a = 0; a < n; ++a) order.emplace_back(Mask{1} << a, Mask{0});
  for (int a = 0; a < n; ++a) order.emplace_back(Mask{0}, Mask{1} << a);
  for (Mask g = 0; g < (Mask{1} << n); ++g)
    for (Mask d = 0; d < (Mask{1} << n); ++d)
      if (mask_count(g) + mask_count(d) != 1) order.emplace_back(g, d);
  for (auto& [g, d] : order) P.generators.push_back(mprime_gen_name(F, g, d));
  auto gen = [&](Mask g, Mask d) {
    return LatticeTerm::generator(mprime_gen_name(F, g, d));
  };
  // join-semilattice structure: every non-atomic pair is the join of its atoms
  for (auto& [g, d] : order) {
    if (mask_count(g) + mask_count(d) == 1) continue;
    std::vector<LatticeTerm> atoms;
    for (int a = 0; a < n; ++a)
      if (mask_has(g, a)) atoms.push_back(gen(Mask{1} << a, 0));
    for (int a = 0; a < n; ++a)
      if (mask_has(d, a)) atoms.push_back(gen(0, Mask{1} << a));
    P.relations.push_back({gen(g, d), RelKind::Eq, LatticeTerm::join(atoms)});
  }
  for (Mask g = 0; g < (Mask{1} << n); ++g)
    for (Mask d = 0; d < (Mask{1} << n); ++d)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          Mask ga = g | (Mask{1} << a);
          // M'1: (γ∪{a∧b}, δ) ≤ (γ∪{a}, δ)
          P.relations.push_back(
              {gen(g | (Mask{1} << F.meet(a, b)), d), RelKind::Leq, gen(ga, d)});
          // M'2: (γ∪{a},δ) ∧ (γ,δ∪{b}) ≤ (γ,δ) if a∧b = ⊥
          if (F.meet(a, b) == F.bot())
            P.relations.push_back(
                {LatticeTerm::meet({gen(ga, d), gen(g, d | (Mask{1} << b))}),
                 RelKind::Leq, gen(g, d)});
          // M'4: (γ, δ∪{a}) ≤ (γ, δ∪{a∨b})
          P.relations.push_back({gen(g, d | (Mask{1} << a)), RelKind::Leq,
                                 gen(g, d | (Mask{1} << F.join(a, b)))});
          // M'5: ⊤ ≤ (γ∪{a}, δ∪{b}) if a∨b = ⊤
          if (F.join(a, b) == F.top())
            P.relations.push_back({LatticeTerm::top(), RelKind::Leq,
                                   gen(ga, d | (Mask{1} << b))});
        }
  if (include_directed) {
    for (Mask sub = 1; sub < (Mask{1} << n); ++sub) {
      std::vector<int> xs;
      for (int i = 0; i < n; ++i)
        if (mask_has(sub, i)) xs.push_back(i);
      if (!F.is_directed(xs)) continue;
      Mask jbit = Mask{1} << F.join_all(xs);
      for (Mask g = 0; g < (Mask{1} << n); ++g)
        for (Mask d = 0; d < (Mask{1} << n); ++d) {
          std::vector<LatticeTerm> bs, ds;
          for (int x : xs) {
            bs.push_back(gen(g | (Mask{1} << x), d));
            ds.push_back(gen(g, d | (Mask{1} << x)));
          }
          // M'3 / M'6
          P.relations.push_back(
              {gen(g | jbit, d), RelKind::Leq, LatticeTerm::join(bs)});
          P.relations.push_back(
              {gen(g, d | jbit), RelKind::Leq, LatticeTerm::join(ds)});
        }
    }
  }
  P.validate();
  return P;
}

// ---------------------------------------------------------------------------
// presentation solving by point enumeration

namespace {

bool eval_term(const LatticeTerm& t, const std::vector<std::uint8_t>& val,
               const std::map<std::string, int>& idx) {
  switch (t.kind) {
    case LatticeTerm::Kind::Gen:
      return val[idx.at(t.gen)];
    case LatticeTerm::Kind::Meet:
      for (const auto& c : t.children)
        if (!eval_term(c, val, idx)) return false;
      return true;
    case LatticeTerm::Kind::Join:
      for (const auto& c : t.children)
        if (eval_term(c, val, idx)) return true;
      return false;
  }
  return false;
}

bool holds(const TermRelation& r, const std::vector<std::uint8_t>& val,
           const std::map<std::string, int>& idx) {
  bool l = eval_term(r.lhs, val, idx);
  bool rr = eval_term(r.rhs, val, idx);
  return r.kind == RelKind::Leq ? (!l || rr) : (l == rr);
}

int max_gen_index(const LatticeTerm& t, const std::map<std::string, int>& idx) {
  if (t.kind == LatticeTerm::Kind::Gen) return idx.at(t.gen);
  int m = -1;
  for (const auto& c : t.children) m = std::max(m, max_gen_index(c, idx));
  return m;
}

}  // namespace

PresentationPoints presentation_points(const Presentation& P, int max_generators) {
  P.validate();
  const int n = static_cast<int>(P.generators.size());
  if (n > max_generators)
    throw ResourceError("presentation has " + std::to_string(n) +
                        " generators; enumeration bound is " +
                        std::to_string(max_generators));
  std::map<std::string, int> idx;
  for (int i = 0; i < n; ++i) idx[P.generators[i]] = i;
  // check relations as soon as their last-mentioned generator is assigned
  std::vector<std::vector<const TermRelation*>> by_last(n);
  std::vector<const TermRelation*> constant;
  for (const auto& r : P.relations) {
    int m = std::max(max_gen_index(r.lhs, idx), max_gen_index(r.rhs, idx));
    if (m < 0)
      constant.push_back(&r);
    else
      by_last[m].push_back(&r);
  }
  std::vector<std::vector<std::uint8_t>> solutions;
  std::vector<std::uint8_t> val(n, 0);
  {
    std::vector<std::uint8_t> empty;
    for (const TermRelation* r : constant)
      if (!holds(*r, empty, idx)) return PresentationPoints{FinSpace(), {}, {}};
  }
  auto rec = [&](auto&& self, int k) -> void {
    if (k == n) {
      if (solutions.size() > static_cast<std::size_t>(kMaxPoints))
        throw ResourceError("presented frame has more than 64 points");
      solutions.push_back(val);
      return;
    }
    for (std::uint8_t v : {std::uint8_t{0}, std::uint8_t{1}}) {
      val[k] = v;
      bool ok = true;
      for (const TermRelation* r : by_last[k])
        if (!holds(*r, val, idx)) {
          ok = false;
          break;
        }
      if (ok) self(self, k + 1);
    }
    val[k] = 0;
  };
  rec(rec, 0);
  if (solutions.size() > static_cast<std::size_t>(kMaxPoints))
    throw ResourceError("presented frame has more than 64 points");
  std::sort(solutions.begin(), solutions.end());
  const int np = static_cast<int>(solutions.size());
  std::vector<std::string> names;
  for (int i = 0; i < np; ++i) names.push_back("p" + std::to_string(i));
  std::vector<Mask> gen_open(n, 0);
  for (int g = 0; g < n; ++g)
    for (int p = 0; p < np; ++p)
      if (solutions[p][g]) gen_open[g] |= Mask{1} << p;
  FinSpace space = FinSpace::from_subbase(names, gen_open);
  return PresentationPoints{std::move(space), std::move(solutions),
                            std::move(gen_open)};
}

// ---------------------------------------------------------------------------
// small presented frames via the free distributive lattice

namespace {

// canonical monotone DNF: antichain of ⊆-minimal generator subsets
using Dnf = std::vector<Mask>;

Dnf reduce(std::vector<Mask> monos) {
  std::sort(monos.begin(), monos.end());
  monos.erase(std::unique(monos.begin(), monos.end()), monos.end());
  Dnf out;
  for (Mask m : monos) {
    bool minimal = true;
    for (Mask o : monos)
      if (o != m && (o & ~m) == 0) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(m);
  }
  return out;
}

Dnf dnf_join(const Dnf& a, const Dnf& b) {
  std::vector<Mask> u(a);
  u.insert(u.end(), b.begin(), b.end());
  return reduce(std::move(u));
}

Dnf dnf_meet(const Dnf& a, const Dnf& b) {
  std::vector<Mask> u;
  for (Mask m : a)
    for (Mask o : b) u.push_back(m | o);
  return reduce(std::move(u));
}

std::string dnf_name(const Dnf& d, const std::vector<std::string>& gens) {
  if (d.empty()) return "0";
  if (d.size() == 1 && d[0] == 0) return "1";
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += "|";
    bool first = true;
    for (std::size_t g = 0; g < gens.size(); ++g)
      if (mask_has(d[i], static_cast<int>(g))) {
        if (!first) s += "&";
        s += gens[g];
        first = false;
      }
    if (first) s += "1";
  }
  return s;
}

struct Fdl {
  std::vector<Dnf> elems;
  std::map<Dnf, int> index;
  int add(const Dnf& d) {
    auto it = index.find(d);
    if (it != index.end()) return it->second;
    int i = static_cast<int>(elems.size());
    elems.push_back(d);
    index[d] = i;
    return i;
  }
};

int eval_in_fdl(const LatticeTerm& t, Fdl& L,
                const std::map<std::string, int>& gidx) {
  switch (t.kind) {
    case LatticeTerm::Kind::Gen:
      return L.add(Dnf{Mask{1} << gidx.at(t.gen)});
    case LatticeTerm::Kind::Meet: {
      Dnf acc{Mask{0}};  // top
      for (const auto& c : t.children)
        acc = dnf_meet(acc, L.elems[eval_in_fdl(c, L, gidx)]);
      return L.add(acc);
    }
    case LatticeTerm::Kind::Join: {
      Dnf acc;  // bot
      for (const auto& c : t.children)
        acc = dnf_join(acc, L.elems[eval_in_fdl(c, L, gidx)]);
      return L.add(acc);
    }
  }
  return 0;
}

struct UnionFind {
  std::vector<int> up;
  explicit UnionFind(int n) : up(n) {
    for (int i = 0; i < n; ++i) up[i] = i;
  }
  int find(int x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    up[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

}  // namespace

PresentedFrame presented_frame_small(const Presentation& P, int max_generators) {
  P.validate();
  const int ng = static_cast<int>(P.generators.size());
  if (ng > max_generators)
    throw ResourceError("presented_frame_small bound is " +
                        std::to_string(max_generators) + " generators, got " +
                        std::to_string(ng));
  std::map<std::string, int> gidx;
  for (int i = 0; i < ng; ++i) gidx[P.generators[i]] = i;

  // build the free bounded distributive lattice by closing under meet/join
  Fdl L;
  L.add(Dnf{});          // bot
  L.add(Dnf{Mask{0}});   // top
  for (int g = 0; g < ng; ++g) L.add(Dnf{Mask{1} << g});
  for (std::size_t frontier = 0; frontier < L.elems.size();) {
    std::size_t end = L.elems.size();
    for (std::size_t i = frontier; i < end; ++i)
      for (std::size_t j = 0; j < end; ++j) {
        L.add(dnf_meet(L.elems[i], L.elems[j]));
        L.add(dnf_join(L.elems[i], L.elems[j]));
      }
    frontier = end;
    if (L.elems.size() == end) break;
  }
  const int n = static_cast<int>(L.elems.size());
  // meet/join index tables
  std::vector<int> meet(static_cast<std::size_t>(n) * n), join(meet.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      meet[static_cast<std::size_t>(i) * n + j] = L.index.at(dnf_meet(L.elems[i], L.elems[j]));
      join[static_cast<std::size_t>(i) * n + j] = L.index.at(dnf_join(L.elems[i], L.elems[j]));
    }

  // congruence closure: seed from relations, saturate under ∧c / ∨c
  UnionFind uf(n);
  std::vector<std::pair<int, int>> work;
  for (const auto& r : P.relations) {
    int l = eval_in_fdl(r.lhs, L, gidx);
    int rr = eval_in_fdl(r.rhs, L, gidx);
    if (r.kind == RelKind::Leq)
      work.emplace_back(l, meet[static_cast<std::size_t>(l) * n + rr]);
    else
      work.emplace_back(l, rr);
  }
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    if (!uf.unite(a, b)) continue;
    for (int c = 0; c < n; ++c) {
      int am = meet[static_cast<std::size_t>(a) * n + c];
      int bm = meet[static_cast<std::size_t>(b) * n + c];
      if (uf.find(am) != uf.find(bm)) work.emplace_back(am, bm);
      int aj = join[static_cast<std::size_t>(a) * n + c];
      int bj = join[static_cast<std::size_t>(b) * n + c];
      if (uf.find(aj) != uf.find(bj)) work.emplace_back(aj, bj);
    }
  }

  // quotient
  std::vector<int> cls(n, -1);
  std::vector<int> reps;
  for (int i = 0; i < n; ++i)
    if (uf.find(i) == i) {
      cls[i] = static_cast<int>(reps.size());
      reps.push_back(i);
    }
  for (int i = 0; i < n; ++i) cls[i] = cls[uf.find(i)];
  const int q = static_cast<int>(reps.size());
  std::vector<std::vector<bool>> leq(q, std::vector<bool>(q, false));
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      leq[i][j] = cls[meet[static_cast<std::size_t>(reps[i]) * n + reps[j]]] == i;
  std::vector<std::string> names;
  for (int r : reps) names.push_back(dnf_name(L.elems[r], P.generators));
  FinFrame Q = FinFrame::from_leq(std::move(names), std::move(leq));
  std::vector<int> gen_elem(ng);
  for (int g = 0; g < ng; ++g) gen_elem[g] = cls[L.index.at(Dnf{Mask{1} << g})];
  // quotient must satisfy all relations
  for (const auto& r : P.relations) {
    auto evalq = [&](const LatticeTerm& t, auto&& self) -> int {
      switch (t.kind) {
        case LatticeTerm::Kind::Gen:
          return gen_elem[gidx.at(t.gen)];
        case LatticeTerm::Kind::Meet: {
          int acc = Q.top();
          for (const auto& c : t.children) acc = Q.meet(acc, self(c, self));
          return acc;
        }
        case LatticeTerm::Kind::Join: {
          int acc = Q.bot();
          for (const auto& c : t.children) acc = Q.join(acc, self(c, self));
          return acc;
        }
      }
      return 0;
    };
    int l = evalq(r.lhs, evalq), rr = evalq(r.rhs, evalq);
    bool ok = r.kind == RelKind::Leq ? Q.leq(l, rr) : l == rr;
    if (!ok) throw InternalError("presented frame quotient violates a relation");
  }
  return PresentedFrame{std::move(Q), std::move(gen_elem)};
}

// ---------------------------------------------------------------------------
// homeomorphism search and presentation comparison

namespace {

// specialization-preorder colors refined jointly over both spaces, so the
// color labels are comparable across them
std::pair<std::vector<int>, std::vector<int>> refine_colors(const FinSpace& X,
                                                            const FinSpace& Y) {
  const int n = X.size(), m = Y.size();
  std::vector<int> cx(n, 0), cy(m, 0);
  auto signature = [](const FinSpace& S, const std::vector<int>& c, int x) {
    std::vector<int> up, down;
    for (int y = 0; y < S.size(); ++y) {
      if (mask_has(S.min_nbhd(x), y)) up.push_back(c[y]);
      if (mask_has(S.min_nbhd(y), x)) down.push_back(c[y]);
    }
    std::sort(up.begin(), up.end());
    std::sort(down.begin(), down.end());
    std::vector<int> sig{c[x]};
    sig.insert(sig.end(), up.begin(), up.end());
    sig.push_back(-1);
    sig.insert(sig.end(), down.begin(), down.end());
    return sig;
  };
  for (int round = 0; round < n + m + 1; ++round) {
    std::map<std::vector<int>, int> canon;
    std::vector<std::vector<int>> sx(n), sy(m);
    for (int x = 0; x < n; ++x) {
      sx[x] = signature(X, cx, x);
      canon.emplace(sx[x], 0);
    }
    for (int y = 0; y < m; ++y) {
      sy[y] = signature(Y, cy, y);
      canon.emplace(sy[y], 0);
    }
    int id = 0;
    for (auto& [sig, c] : canon) c = id++;
    std::vector<int> nx(n), ny(m);
    for (int x = 0; x < n; ++x) nx[x] = canon.at(sx[x]);
    for (int y = 0; y < m; ++y) ny[y] = canon.at(sy[y]);
    if (nx == cx && ny == cy) break;
    cx = std::move(nx);
    cy = std::move(ny);
  }
  return {std::move(cx), std::move(cy)};
}

}  // namespace

std::optional<ContMap> find_homeomorphism(const FinSpace& X, const FinSpace& Y) {
  const int n = X.size();
  if (n != Y.size() || X.opens().size() != Y.opens().size()) return std::nullopt;
  auto [cx, cy] = refine_colors(X, Y);
  {
    auto sx = cx, sy = cy;
    std::sort(sx.begin(), sx.end());
    std::sort(sy.begin(), sy.end());
    if (sx != sy) return std::nullopt;
  }
  std::vector<int> asg(n, -1);
  std::vector<bool> used(n, false);
  // homeomorphisms of finite spaces = isomorphisms of specialization preorders
  auto compatible = [&](int x, int y) {
    if (cx[x] != cy[y]) return false;
    for (int x2 = 0; x2 < n; ++x2) {
      if (asg[x2] < 0) continue;
      bool a = mask_has(X.min_nbhd(x), x2), b = mask_has(Y.min_nbhd(y), asg[x2]);
      if (a != b) return false;
      a = mask_has(X.min_nbhd(x2), x);
      b = mask_has(Y.min_nbhd(asg[x2]), y);
      if (a != b) return false;
    }
    return true;
  };
  std::optional<ContMap> found;
  auto rec = [&](auto&& self, int x) -> bool {
    if (x == n) {
      ContMap f(X, Y, asg);
      if (is_homeomorphism(f)) {
        found = std::move(f);
        return true;
      }
      return false;
    }
    for (int y = 0; y < n; ++y) {
      if (used[y] || !compatible(x, y)) continue;
      asg[x] = y;
      used[y] = true;
      if (self(self, x + 1)) return true;
      asg[x] = -1;
      used[y] = false;
    }
    return false;
  };
  rec(rec, 0);
  return found;
}

bool frames_isomorphic(const FinFrame& F, const FinFrame& G) {
  const int n = F.size();
  if (n != G.size()) return false;
  if (n > 24) throw ResourceError("frame isomorphism search capped at 24 elements");
  // invariant: (#below, #above) must match
  auto profile = [](const FinFrame& H, int x) {
    int lo = 0, hi = 0;
    for (int y = 0; y < H.size(); ++y) {
      if (H.leq(y, x)) ++lo;
      if (H.leq(x, y)) ++hi;
    }
    return std::make_pair(lo, hi);
  };
  std::vector<int> asg(n, -1);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, int x) -> bool {
    if (x == n) return true;
    for (int y = 0; y < n; ++y) {
      if (used[y] || profile(F, x) != profile(G, y)) continue;
      bool ok = true;
      for (int x2 = 0; x2 < x && ok; ++x2)
        if (F.leq(x, x2) != G.leq(y, asg[x2]) || F.leq(x2, x) != G.leq(asg[x2], y))
          ok = false;
      if (!ok) continue;
      asg[x] = y;
      used[y] = true;
      if (self(self, x + 1)) return true;
      asg[x] = -1;
      used[y] = false;
    }
    return false;
  };
  return rec(rec, 0);
}

IsoReport compare_presentations(const Presentation& P, const Presentation& Q,
                                int max_generators, const DkhComparison* ctx) {
  IsoReport rep;
  PresentationPoints pp = presentation_points(P, max_generators);
  PresentationPoints qq = presentation_points(Q, max_generators);
  auto h = find_homeomorphism(pp.space, qq.space);
  rep.homeomorphic = h.has_value();
  rep.homeo = h;
  if (!rep.homeomorphic) rep.detail = "no homeomorphism between the point spaces";
  if (!ctx) return rep;
  IsoReport dual = verify_dkh_duality(Q, *ctx, max_generators);
  dual.homeomorphic = rep.homeomorphic;
  dual.homeo = rep.homeo;
  if (dual.detail.empty()) dual.detail = rep.detail;
  return dual;
}

IsoReport verify_dkh_duality(const Presentation& Q, const DkhComparison& ctx_ref,
                             int max_generators) {
  IsoReport rep;
  const DkhComparison* ctx = &ctx_ref;
  PresentationPoints qq = presentation_points(Q, max_generators);

  // explicit map ζ: p ↦ W_p = ↑{ X∖a | p(dia a) = ⊥ }, against the supplied
  // D_kh space, plus the generator map η on the open-set frames.
  rep.zeta_checked = true;
  const FinSpace& X = ctx->base_space;
  const auto& xopens = X.opens();
  FinFrame OX = opn_frame(X);
  const int nop = static_cast<int>(xopens.size());
  std::vector<int> box_gen(nop), dia_gen(nop);
  for (int a = 0; a < nop; ++a) {
    auto bi = Q.generator_index(m_box_name(OX, a));
    auto di = Q.generator_index(m_dia_name(OX, a));
    if (!bi || !di) {
      rep.detail = "Q is not the M-presentation of opn(X)";
      return rep;
    }
    box_gen[a] = *bi;
    dia_gen[a] = *di;
  }
  if (X.size() > 20)
    throw ResourceError("D_kh comparison context capped at 20 base points");
  const int np = qq.space.size();
  std::vector<int> zeta(np, -1);
  for (int p = 0; p < np; ++p) {
    std::vector<Mask> base;
    for (int a = 0; a < nop; ++a)
      if (!qq.assignments[p][dia_gen[a]]) base.push_back(X.full() & ~xopens[a]);
    std::vector<Mask> wp;
    for (Mask u = 0; u <= X.full(); ++u)
      for (Mask b : base)
        if ((b & ~u) == 0) {
          wp.push_back(u);
          break;
        }
    for (std::size_t i = 0; i < ctx->dkh_collections.size(); ++i)
      if (ctx->dkh_collections[i] == wp) {
        zeta[p] = static_cast<int>(i);
        break;
      }
    if (zeta[p] < 0) {
      rep.detail = "ζ image of a point is not in the D_kh carrier";
      return rep;
    }
  }
  ContMap z(qq.space, ctx->dkh_space, zeta);
  rep.zeta_is_homeo = is_homeomorphism(z);
  if (!rep.zeta_is_homeo) {
    rep.detail = "ζ is not a homeomorphism";
    return rep;
  }

  // η: □a ↦ ⊡̄a and ◇a ↦ ⟋a must match ζ on the subbases, and the induced
  // bijection of topologies must map opens onto opens.
  rep.eta_checked = true;
  rep.eta_is_frame_iso = true;
  for (int a = 0; a < nop; ++a) {
    Mask boxbar = 0, slash = 0;
    for (std::size_t w = 0; w < ctx->dkh_collections.size(); ++w) {
      const auto& W = ctx->dkh_collections[w];
      bool has_a = std::binary_search(W.begin(), W.end(), xopens[a]);
      bool has_compl = std::binary_search(W.begin(), W.end(), X.full() & ~xopens[a]);
      if (has_a) boxbar |= Mask{1} << w;
      if (!has_compl) slash |= Mask{1} << w;
    }
    if (z.preimage(boxbar) != qq.gen_open[box_gen[a]] ||
        z.preimage(slash) != qq.gen_open[dia_gen[a]]) {
      rep.eta_is_frame_iso = false;
      rep.detail = "η generator correspondence failed at open " + X.subset_name(xopens[a]);
      return rep;
    }
  }
  if (qq.space.opens().size() != ctx->dkh_space.opens().size())
    rep.eta_is_frame_iso = false;
  else
    for (Mask u : qq.space.opens())
      if (!ctx->dkh_space.is_open(z.image(u))) {
        rep.eta_is_frame_iso = false;
        rep.detail = "ζ image of an open is not open";
        break;
      }
  return rep;
}

}  // namespace geomodal

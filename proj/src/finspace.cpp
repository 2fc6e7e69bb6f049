#include "geomodal/finspace.hpp"

#include <algorithm>
#include <set>

namespace geomodal {

namespace {

std::vector<Mask> minimal_nbhds(int n, const std::vector<Mask>& subbase) {
  std::vector<Mask> u(n, 0);
  const Mask full = full_mask(n);
  for (int x = 0; x < n; ++x) {
    Mask m = full;
    for (Mask s : subbase)
      if (mask_has(s, x)) m &= s;
    u[x] = m;
  }
  return u;
}

// All unions of minimal neighbourhoods, i.e. sets u with x ∈ u ⇒ U(x) ⊆ u.
// Recursive include/exclude with forced-point propagation; aborts past cap.
void enumerate_opens(int n, const std::vector<Mask>& nbhd, std::size_t cap,
                     std::vector<Mask>& out) {
  std::vector<Mask> needs(n);  // points whose nbhd contains x must be out if x is out
  for (int x = 0; x < n; ++x) {
    Mask m = 0;
    for (int y = 0; y < n; ++y)
      if (mask_has(nbhd[y], x)) m |= Mask{1} << y;
    needs[x] = m;
  }
  struct Rec {
    int n;
    const std::vector<Mask>& nbhd;
    const std::vector<Mask>& needs;
    std::size_t cap;
    std::vector<Mask>& out;
    void go(int i, Mask in, Mask out_m) {
      if (i == n) {
        if (out.size() >= cap)
          throw ResourceError("topology exceeds the opens bound (" +
                              std::to_string(cap) + ")");
        out.push_back(in);
        return;
      }
      Mask bit = Mask{1} << i;
      if (in & bit) { go(i + 1, in, out_m); return; }
      if (out_m & bit) { go(i + 1, in, out_m); return; }
      // exclude i: every point whose nbhd contains i is forced out
      if ((needs[i] & in) == 0) go(i + 1, in, out_m | needs[i] | bit);
      // include i: all of U(i) is forced in
      if ((nbhd[i] & out_m) == 0) go(i + 1, in | nbhd[i] | bit, out_m);
    }
  };
  Rec{n, nbhd, needs, cap, out}.go(0, 0, 0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

}  // namespace

FinSpace::FinSpace(std::vector<std::string> pts, std::vector<Mask> opens) {
  auto d = std::make_shared<Data>();
  d->points = std::move(pts);
  d->opens = std::move(opens);
  d->min_nbhd.assign(d->points.size(), 0);
  const int n = static_cast<int>(d->points.size());
  for (int x = 0; x < n; ++x) {
    Mask m = full_mask(n);
    for (Mask o : d->opens)
      if (mask_has(o, x)) m &= o;
    d->min_nbhd[x] = m;
  }
  d_ = std::move(d);
}

FinSpace FinSpace::from_subbase(std::vector<std::string> points,
                                const std::vector<Mask>& subbase,
                                std::size_t max_opens) {
  const int n = static_cast<int>(points.size());
  if (n > kMaxPoints)
    throw ResourceError("space has " + std::to_string(n) +
                        " points; the representable bound is 64");
  {
    std::set<std::string> seen;
    for (const auto& p : points)
      if (!seen.insert(p).second)
        throw ValidationError("duplicate point identifier: " + p);
  }
  const Mask full = full_mask(n);
  for (Mask s : subbase)
    if ((s & ~full) != 0)
      throw ValidationError("subbase member is not a subset of the points");
  auto nbhd = minimal_nbhds(n, subbase);
  std::vector<Mask> opens;
  enumerate_opens(n, nbhd, max_opens, opens);
  return FinSpace(std::move(points), std::move(opens));
}

FinSpace FinSpace::from_opens(std::vector<std::string> points,
                              std::vector<Mask> opens) {
  const int n = static_cast<int>(points.size());
  {
    std::set<std::string> seen;
    for (const auto& p : points)
      if (!seen.insert(p).second)
        throw ValidationError("duplicate point identifier: " + p);
  }
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  const Mask full = full_mask(n);
  auto contains = [&](Mask m) {
    return std::binary_search(opens.begin(), opens.end(), m);
  };
  if (!contains(0)) throw ValidationError("opens must contain the empty set");
  if (!contains(full)) throw ValidationError("opens must contain the full point set");
  for (Mask a : opens) {
    if ((a & ~full) != 0)
      throw ValidationError("open is not a subset of the points");
    for (Mask b : opens) {
      if (!contains(a & b))
        throw ValidationError("opens not closed under intersection: " +
                              std::to_string(a) + " ∩ " + std::to_string(b));
      if (!contains(a | b))
        throw ValidationError("opens not closed under union: " +
                              std::to_string(a) + " ∪ " + std::to_string(b));
    }
  }
  return FinSpace(std::move(points), std::move(opens));
}

FinSpace FinSpace::discrete(std::vector<std::string> points) {
  std::vector<Mask> sub;
  for (std::size_t i = 0; i < points.size(); ++i) sub.push_back(Mask{1} << i);
  return from_subbase(std::move(points), sub);
}

FinSpace FinSpace::sierpinski() {
  return from_subbase({"0", "1"}, {Mask{2}});
}

FinSpace FinSpace::two_trivial() {
  return from_subbase({"0", "1"}, {});
}

FinSpace FinSpace::one_point(const std::string& name) {
  return from_subbase({name}, {});
}

std::optional<int> FinSpace::point_index(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (d_->points[i] == name) return i;
  return std::nullopt;
}

bool FinSpace::is_open(Mask u) const {
  return std::binary_search(d_->opens.begin(), d_->opens.end(), u);
}

Mask FinSpace::closure(Mask u) const {
  // smallest closed superset: complement of the union of opens disjoint from u
  Mask keep_out = 0;
  for (Mask o : d_->opens)
    if ((o & u) == 0) keep_out |= o;
  return full() & ~keep_out;
}

bool FinSpace::is_discrete() const {
  return d_->opens.size() == (std::size_t{1} << size());
}

bool FinSpace::is_t0() const {
  for (int x = 0; x < size(); ++x)
    for (int y = x + 1; y < size(); ++y)
      if (d_->min_nbhd[x] == d_->min_nbhd[y]) return false;
  return true;
}

std::string FinSpace::subset_name(Mask u) const {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < size(); ++i)
    if (mask_has(u, i)) {
      if (!first) s += ",";
      s += d_->points[i];
      first = false;
    }
  return s + "}";
}

ContMap::ContMap(FinSpace src, FinSpace tgt, std::vector<int> asg)
    : source(std::move(src)), target(std::move(tgt)), assignment(std::move(asg)) {
  if (static_cast<int>(assignment.size()) != source.size())
    throw ValidationError("map assignment is not total on the source points");
  for (int v : assignment)
    if (v < 0 || v >= target.size())
      throw ValidationError("map assignment hits a non-point of the target");
}

ContMap ContMap::identity(const FinSpace& X) {
  std::vector<int> asg(X.size());
  for (int i = 0; i < X.size(); ++i) asg[i] = i;
  return ContMap(X, X, std::move(asg));
}

Mask ContMap::image(Mask u) const {
  Mask v = 0;
  for (int i = 0; i < source.size(); ++i)
    if (mask_has(u, i)) v |= Mask{1} << assignment[i];
  return v;
}

Mask ContMap::preimage(Mask v) const {
  Mask u = 0;
  for (int i = 0; i < source.size(); ++i)
    if (mask_has(v, assignment[i])) u |= Mask{1} << i;
  return u;
}

bool ContMap::is_bijective() const {
  if (source.size() != target.size()) return false;
  Mask seen = 0;
  for (int v : assignment) seen |= Mask{1} << v;
  return mask_count(seen) == source.size();
}

ContMap ContMap::compose_after(const ContMap& first) const {
  if (first.target != source)
    throw ValidationError("composition mismatch: codomain differs from domain");
  std::vector<int> asg(first.source.size());
  for (int i = 0; i < first.source.size(); ++i) asg[i] = assignment[first.assignment[i]];
  return ContMap(first.source, target, std::move(asg));
}

bool check_continuous(const ContMap& f) {
  for (Mask v : f.target.opens())
    if (!f.source.is_open(f.preimage(v))) return false;
  return true;
}

bool is_homeomorphism(const ContMap& f) {
  if (!f.is_bijective()) return false;
  if (f.source.opens().size() != f.target.opens().size()) return false;
  for (Mask u : f.source.opens())
    if (!f.target.is_open(f.image(u))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// FinFrame

FinFrame FinFrame::build(std::vector<std::string> elems,
                         std::vector<std::vector<bool>> leq, bool trusted) {
  const int n = static_cast<int>(elems.size());
  if (n == 0) throw ValidationError("a frame needs at least one element");
  if (n > kMaxElements)
    throw ResourceError("frame has " + std::to_string(n) +
                        " elements; bound is " + std::to_string(kMaxElements));
  {
    std::set<std::string> seen;
    for (const auto& e : elems)
      if (!seen.insert(e).second)
        throw ValidationError("duplicate element identifier: " + e);
  }
  if (!trusted) {
    for (int a = 0; a < n; ++a) {
      if (!leq[a][a]) throw ValidationError("order not reflexive at " + elems[a]);
      for (int b = 0; b < n; ++b) {
        if (a != b && leq[a][b] && leq[b][a])
          throw ValidationError("order not antisymmetric at " + elems[a] + "," + elems[b]);
        for (int c = 0; c < n; ++c)
          if (leq[a][b] && leq[b][c] && !leq[a][c])
            throw ValidationError("order not transitive at " + elems[a]);
      }
    }
  }
  auto d = std::make_shared<Data>();
  d->elems = std::move(elems);
  d->leq = std::move(leq);
  d->meet.assign(static_cast<std::size_t>(n) * n, -1);
  d->join.assign(static_cast<std::size_t>(n) * n, -1);
  auto& L = d->leq;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      int m = -1, j = -1;
      for (int c = 0; c < n; ++c) {
        if (L[c][a] && L[c][b] && (m == -1 || L[m][c])) m = c;
        if (L[a][c] && L[b][c] && (j == -1 || L[c][j])) j = c;
      }
      // verify the greedy candidates really are glb/lub
      if (m == -1) throw ValidationError("no meet for a pair of elements");
      if (j == -1) throw ValidationError("no join for a pair of elements");
      for (int c = 0; c < n; ++c) {
        if (L[c][a] && L[c][b] && !L[c][m])
          throw ValidationError("no meet for " + d->elems[a] + "," + d->elems[b]);
        if (L[a][c] && L[b][c] && !L[j][c])
          throw ValidationError("no join for " + d->elems[a] + "," + d->elems[b]);
      }
      d->meet[static_cast<std::size_t>(a) * n + b] = m;
      d->meet[static_cast<std::size_t>(b) * n + a] = m;
      d->join[static_cast<std::size_t>(a) * n + b] = j;
      d->join[static_cast<std::size_t>(b) * n + a] = j;
    }
  d->bot = 0;
  d->top = 0;
  for (int a = 0; a < n; ++a) {
    if (L[a][d->bot]) d->bot = a;
    if (L[d->top][a]) d->top = a;
  }
  for (int a = 0; a < n; ++a)
    if (!L[d->bot][a] || !L[a][d->top])
      throw ValidationError("lattice is not bounded");
  if (!trusted) {
    auto M = [&](int a, int b) { return d->meet[static_cast<std::size_t>(a) * n + b]; };
    auto J = [&](int a, int b) { return d->join[static_cast<std::size_t>(a) * n + b]; };
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (M(a, J(b, c)) != J(M(a, b), M(a, c)))
            throw ValidationError("lattice is not distributive at " + d->elems[a]);
  }
  return FinFrame(std::move(d));
}

FinFrame FinFrame::from_leq(std::vector<std::string> elems,
                            std::vector<std::vector<bool>> leq) {
  return build(std::move(elems), std::move(leq), false);
}

FinFrame FinFrame::two() {
  return from_leq({"bot", "top"}, {{true, true}, {false, true}});
}

std::optional<int> FinFrame::element_index(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (d_->elems[i] == name) return i;
  return std::nullopt;
}

int FinFrame::meet_all(const std::vector<int>& xs) const {
  int acc = top();
  for (int x : xs) acc = meet(acc, x);
  return acc;
}

int FinFrame::join_all(const std::vector<int>& xs) const {
  int acc = bot();
  for (int x : xs) acc = join(acc, x);
  return acc;
}

bool FinFrame::is_directed(const std::vector<int>& xs) const {
  if (xs.empty()) return false;
  for (int a : xs)
    for (int b : xs) {
      bool ok = false;
      for (int c : xs)
        if (leq(a, c) && leq(b, c)) { ok = true; break; }
      if (!ok) return false;
    }
  return true;
}

int FinFrame::directed_join(const std::vector<int>& xs) const {
  if (!is_directed(xs))
    throw ValidationError("directed join applied to a non-directed set");
  return join_all(xs);
}

bool FinFrame::is_boolean() const {
  for (int a = 0; a < size(); ++a) {
    bool has = false;
    for (int b = 0; b < size(); ++b)
      if (meet(a, b) == bot() && join(a, b) == top()) { has = true; break; }
    if (!has) return false;
  }
  return true;
}

bool check_frame_hom(const FrameHom& h) {
  const auto& F = h.source;
  const auto& G = h.target;
  if (static_cast<int>(h.assignment.size()) != F.size()) return false;
  if (h.assignment[F.bot()] != G.bot()) return false;
  if (h.assignment[F.top()] != G.top()) return false;
  for (int a = 0; a < F.size(); ++a)
    for (int b = 0; b < F.size(); ++b) {
      if (h.assignment[F.meet(a, b)] != G.meet(h.assignment[a], h.assignment[b]))
        return false;
      if (h.assignment[F.join(a, b)] != G.join(h.assignment[a], h.assignment[b]))
        return false;
    }
  return true;
}

FinFrame opn_frame(const FinSpace& X) {
  const auto& opens = X.opens();
  const int n = static_cast<int>(opens.size());
  if (n > FinFrame::kMaxElements)
    throw ResourceError("open-set frame has " + std::to_string(n) +
                        " elements; bound is " + std::to_string(FinFrame::kMaxElements));
  std::vector<std::string> names;
  names.reserve(opens.size());
  for (Mask o : opens) names.push_back(X.subset_name(o));
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) leq[a][b] = (opens[a] & ~opens[b]) == 0;
  return FinFrame::build(std::move(names), std::move(leq), true);
}

FrameHom opn_map(const ContMap& f) {
  if (!check_continuous(f))
    throw ValidationError("opn_map applied to a non-continuous map");
  FinFrame src = opn_frame(f.target);  // contravariant
  FinFrame tgt = opn_frame(f.source);
  std::vector<int> asg(src.size());
  const auto& topens = f.target.opens();
  const auto& sopens = f.source.opens();
  for (int i = 0; i < src.size(); ++i) {
    Mask pre = f.preimage(topens[i]);
    auto it = std::lower_bound(sopens.begin(), sopens.end(), pre);
    asg[i] = static_cast<int>(it - sopens.begin());
  }
  FrameHom h{std::move(src), std::move(tgt), std::move(asg)};
  if (!check_frame_hom(h))
    throw InternalError("preimage of a continuous map failed the frame hom laws");
  return h;
}

namespace {

FramePoints points_from_homs(const FinFrame& F,
                             std::vector<std::vector<std::uint8_t>> homs) {
  // canonical point order: lexicographic on the assignment vectors
  std::sort(homs.begin(), homs.end());
  homs.erase(std::unique(homs.begin(), homs.end()), homs.end());
  const int np = static_cast<int>(homs.size());
  if (np > kMaxPoints)
    throw ResourceError("frame has " + std::to_string(np) + " points; bound is 64");
  std::vector<std::string> names;
  for (int i = 0; i < np; ++i) names.push_back("p" + std::to_string(i));
  std::vector<Mask> elem_open(F.size(), 0);
  for (int e = 0; e < F.size(); ++e)
    for (int p = 0; p < np; ++p)
      if (homs[p][e]) elem_open[e] |= Mask{1} << p;
  FinSpace space = FinSpace::from_subbase(names, elem_open);
  return FramePoints{std::move(space), std::move(elem_open), std::move(homs)};
}

}  // namespace

FramePoints frame_points(const FinFrame& F, bool brute_force) {
  const int n = F.size();
  std::vector<std::vector<std::uint8_t>> homs;
  if (brute_force) {
    if (n > 22)
      throw ResourceError("brute-force point enumeration capped at 22 elements");
    for (Mask cand = 0; cand < (Mask{1} << n); ++cand) {
      std::vector<std::uint8_t> h(n);
      for (int i = 0; i < n; ++i) h[i] = mask_has(cand, i);
      if (h[F.bot()] || !h[F.top()]) continue;
      bool ok = true;
      for (int a = 0; a < n && ok; ++a)
        for (int b = a; b < n && ok; ++b) {
          if (h[F.meet(a, b)] != (h[a] && h[b])) ok = false;
          if (h[F.join(a, b)] != (h[a] || h[b])) ok = false;
        }
      if (ok) homs.push_back(std::move(h));
    }
  } else {
    // points ↔ join-prime elements x ≠ ⊥, via p_x(a) = [x ≤ a]
    for (int x = 0; x < n; ++x) {
      if (x == F.bot()) continue;
      bool prime = true;
      for (int a = 0; a < n && prime; ++a)
        for (int b = a; b < n && prime; ++b)
          if (F.leq(x, F.join(a, b)) && !F.leq(x, a) && !F.leq(x, b)) prime = false;
      if (!prime) continue;
      std::vector<std::uint8_t> h(n);
      for (int a = 0; a < n; ++a) h[a] = F.leq(x, a);
      homs.push_back(std::move(h));
    }
  }
  return points_from_homs(F, std::move(homs));
}

SobrifyResult sobrify(const FinSpace& X) {
  FinFrame F = opn_frame(X);
  FramePoints pts = frame_points(F);
  const auto& opens = X.opens();
  std::vector<int> asg(X.size());
  for (int x = 0; x < X.size(); ++x) {
    std::vector<std::uint8_t> px(F.size());
    for (int e = 0; e < F.size(); ++e) px[e] = mask_has(opens[e], x);
    auto it = std::lower_bound(pts.homs.begin(), pts.homs.end(), px);
    if (it == pts.homs.end() || *it != px)
      throw InternalError("point evaluation p_x is not a frame point");
    asg[x] = static_cast<int>(it - pts.homs.begin());
  }
  ContMap unit(X, pts.space, std::move(asg));
  bool sober = is_homeomorphism(unit) && check_continuous(unit);
  return SobrifyResult{std::move(pts.space), std::move(unit), sober};
}

std::vector<FinSpace> all_topologies(const std::vector<std::string>& points) {
  const int n = static_cast<int>(points.size());
  if (n > 5) throw ResourceError("topology enumeration capped at 5 points");
  std::vector<FinSpace> out;
  const int bits = n * n - n;  // off-diagonal entries of the relation
  for (Mask rel = 0; rel < (Mask{1} << bits); ++rel) {
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    int k = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (a == b) { r[a][b] = true; continue; }
        r[a][b] = mask_has(rel, k++);
      }
    bool trans = true;
    for (int a = 0; a < n && trans; ++a)
      for (int b = 0; b < n && trans; ++b)
        for (int c = 0; c < n; ++c)
          if (r[a][b] && r[b][c] && !r[a][c]) { trans = false; break; }
    if (!trans) continue;
    // opens = up-sets: subbase of principal up-sets ↑a = {b | a R b}
    std::vector<Mask> sub;
    for (int a = 0; a < n; ++a) {
      Mask m = 0;
      for (int b = 0; b < n; ++b)
        if (r[a][b]) m |= Mask{1} << b;
      sub.push_back(m);
    }
    out.push_back(FinSpace::from_subbase(points, sub));
  }
  std::sort(out.begin(), out.end(), [](const FinSpace& a, const FinSpace& b) {
    return a.opens() < b.opens();
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ContMap> all_continuous_maps(const FinSpace& X, const FinSpace& Y) {
  std::vector<ContMap> out;
  const int n = X.size(), m = Y.size();
  if (n == 0) {
    out.push_back(ContMap(X, Y, {}));
    return out;
  }
  std::vector<int> asg(n, 0);
  while (true) {
    ContMap f(X, Y, asg);
    if (check_continuous(f)) out.push_back(std::move(f));
    int i = 0;
    for (; i < n; ++i) {
      if (++asg[i] < m) break;
      asg[i] = 0;
    }
    if (i == n) break;
  }
  return out;
}

}  // namespace geomodal

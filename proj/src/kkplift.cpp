#include "geomodal/kkplift.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "geomodal/framealg.hpp"

namespace geomodal {

namespace {

Mask lifting_image_mask(const SetFunctor& base, const std::string& name, int n,
                        const std::vector<Mask>& args, std::size_t carrier_size) {
  if (carrier_size > 64)
    throw ResourceError("KKP lift needs a base carrier of at most 64 elements");
  Mask m = 0;
  for (int i : base.eval_lifting(name, n, args)) m |= Mask{1} << i;
  return m;
}

std::vector<Mask> close_sublattice(std::vector<Mask> gens, Mask full) {
  std::set<Mask> elems{Mask{0}, full};
  for (Mask g : gens) elems.insert(g);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Mask> cur(elems.begin(), elems.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        if (elems.insert(cur[i] & cur[j]).second) grew = true;
        if (elems.insert(cur[i] | cur[j]).second) grew = true;
        if (elems.size() > static_cast<std::size_t>(FinFrame::kMaxElements))
          throw ResourceError("generated subframe exceeds the frame bound");
      }
  }
  return std::vector<Mask>(elems.begin(), elems.end());
}

FinFrame frame_of_masks(const std::vector<Mask>& elems) {
  const int n = static_cast<int>(elems.size());
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("u" + std::to_string(i));
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) leq[a][b] = (elems[a] & ~elems[b]) == 0;
  return FinFrame::from_leq(std::move(names), std::move(leq));
}

std::vector<Mask> all_open_tuples_images(const SetFunctor& base,
                                         const std::vector<std::string>& liftings,
                                         const FinSpace& X,
                                         std::size_t carrier_size) {
  std::vector<Mask> gens;
  for (const auto& name : liftings)
    for (Mask a : X.opens())
      gens.push_back(lifting_image_mask(base, name, X.size(), {a}, carrier_size));
  return gens;
}

}  // namespace

FdotFrame fdot_frame(const SetFunctorPtr& base,
                     const std::vector<std::string>& liftings, const FinSpace& X) {
  auto carrier = base->carrier(X.size());
  auto gens = all_open_tuples_images(*base, liftings, X, carrier.size());
  auto elems = close_sublattice(std::move(gens), full_mask(static_cast<int>(carrier.size())));
  FinFrame F = frame_of_masks(elems);
  return FdotFrame{std::move(F), std::move(elems)};
}

namespace {

bool set_lifting_monotone(const SetFunctor& base, const std::string& name, int n) {
  const Mask full = full_mask(n);
  for (Mask a = 0; a <= full; ++a)
    for (Mask b = a; b <= full; ++b) {
      if ((a & ~b) != 0) continue;
      auto ia = base.eval_lifting(name, n, {a});
      auto ib = base.eval_lifting(name, n, {b});
      if (!std::includes(ib.begin(), ib.end(), ia.begin(), ia.end())) return false;
    }
  return true;
}

CongruenceReport check_congruence(const SetFunctor& base,
                                  const std::vector<std::string>& liftings,
                                  const FinSpace& X, std::size_t carrier_size) {
  CongruenceReport rep;
  const auto& opens = X.opens();
  const int no = static_cast<int>(opens.size());
  // directed open families: exhaustive for small open lattices, else size ≤ 4
  std::vector<std::vector<Mask>> families;
  if (no <= 10) {
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
      if (directed) families.push_back(std::move(fam));
    }
  } else {
    std::vector<int> sel;
    auto rec = [&](auto&& self, int from, int left) -> void {
      if (!sel.empty()) {
        std::vector<Mask> fam;
        for (int k : sel) fam.push_back(opens[k]);
        bool directed = true;
        for (std::size_t i = 0; i < fam.size() && directed; ++i)
          for (std::size_t j = i; j < fam.size(); ++j) {
            Mask ub = fam[i] | fam[j];
            bool has = false;
            for (Mask c : fam)
              if ((ub & ~c) == 0) { has = true; break; }
            if (!has) directed = false;
          }
        if (directed) families.push_back(std::move(fam));
      }
      if (left == 0) return;
      for (int k = from; k < no; ++k) {
        sel.push_back(k);
        self(self, k + 1, left - 1);
        sel.pop_back();
      }
    };
    rec(rec, 0, 4);
  }
  for (const auto& name : liftings) {
    // congruence instances are generated only for liftings monotone in the
    // argument
    if (!set_lifting_monotone(base, name, X.size())) continue;
    for (const auto& fam : families) {
      Mask un = 0;
      for (Mask b : fam) un |= b;
      Mask lhs = lifting_image_mask(base, name, X.size(), {un}, carrier_size);
      Mask rhs = 0;
      for (Mask b : fam)
        rhs |= lifting_image_mask(base, name, X.size(), {b}, carrier_size);
      ++rep.instances_checked;
      if (lhs != rhs) {
        rep.trivial = false;
        throw InternalError(
            "nontrivial directed-join congruence instance in the KKP lift "
            "(contradicts the finiteness analysis)");
      }
    }
  }
  return rep;
}

}  // namespace

FhatFrame fhat_frame(const SetFunctorPtr& base,
                     const std::vector<std::string>& liftings, const FinSpace& X) {
  FdotFrame dot = fdot_frame(base, liftings, X);
  auto carrier = base->carrier(X.size());
  CongruenceReport rep = check_congruence(*base, liftings, X, carrier.size());
  return FhatFrame{std::move(dot.frame), std::move(dot.elements), rep};
}

// ---------------------------------------------------------------------------
// the lifted functor

namespace {

class KkpFunctor final : public TopFunctor {
 public:
  KkpFunctor(SetFunctorPtr base, std::vector<std::string> liftings, std::string id)
      : TopFunctor(std::move(id), /*kh_scoped=*/false,
                   base->name() == "monotone" ? 3 : 4),
        base_(std::move(base)),
        liftings_(std::move(liftings)) {}

  struct Data {
    FhatFrame fhat;
    FramePoints pts;
    std::vector<std::uint64_t> base_carrier;
  };

  const Data& data(const FinSpace& X) const {
    auto key = std::make_pair(X.points(), X.opens());
    auto it = dcache_.find(key);
    if (it != dcache_.end()) return it->second;
    Data d;
    d.fhat = fhat_frame(base_, liftings_, X);
    d.pts = frame_points(d.fhat.frame);
    d.base_carrier = base_->carrier(X.size());
    return dcache_.emplace(std::move(key), std::move(d)).first->second;
  }

  Carrier make_carrier(const FinSpace& X) const override {
    Carrier c;
    c.space = data(X).pts.space;
    return c;
  }

  std::optional<int> apply_elem(const ContMap& f, int elem) const override {
    const Data& dx = data(f.source);
    const Data& dy = data(f.target);
    // F̂f : fhat(Y) → fhat(X), restriction of the preimage under T(Uf)
    const int ny = static_cast<int>(dy.fhat.elements.size());
    std::vector<int> hom(ny);
    for (int e = 0; e < ny; ++e) {
      Mask pre = 0;
      for (std::size_t i = 0; i < dx.base_carrier.size(); ++i) {
        std::uint64_t img = base_->apply(f.assignment, f.source.size(),
                                         f.target.size(), dx.base_carrier[i]);
        auto it = std::find(dy.base_carrier.begin(), dy.base_carrier.end(), img);
        if (it == dy.base_carrier.end())
          throw InternalError("base functor action left its carrier");
        int idx = static_cast<int>(it - dy.base_carrier.begin());
        if (mask_has(dy.fhat.elements[e], idx)) pre |= Mask{1} << i;
      }
      auto it = std::lower_bound(dx.fhat.elements.begin(), dx.fhat.elements.end(), pre);
      if (it == dx.fhat.elements.end() || *it != pre)
        throw InternalError("preimage of a lifted-frame element is not in the "
                            "lifted frame (naturality violation)");
      hom[e] = static_cast<int>(it - dx.fhat.elements.begin());
    }
    // p ↦ p ∘ F̂f
    const auto& p = dx.pts.homs[elem];
    std::vector<std::uint8_t> q(ny);
    for (int e = 0; e < ny; ++e) q[e] = p[hom[e]];
    auto it = std::lower_bound(dy.pts.homs.begin(), dy.pts.homs.end(), q);
    if (it == dy.pts.homs.end() || *it != q) return std::nullopt;
    return static_cast<int>(it - dy.pts.homs.begin());
  }

  std::vector<std::string> builtin_lifting_names() const override { return liftings_; }

  Mask eval_lifting(const std::string& lifting, const FinSpace& X,
                    const std::vector<Mask>& args) const override {
    if (std::find(liftings_.begin(), liftings_.end(), lifting) == liftings_.end())
      throw ValidationError("lifting '" + lifting + "' is not part of this lift");
    if (args.size() != 1) throw ValidationError("lifted liftings are unary");
    const Data& d = data(X);
    Mask img = lifting_image_mask(*base_, lifting, X.size(), args,
                                  d.base_carrier.size());
    auto it = std::lower_bound(d.fhat.elements.begin(), d.fhat.elements.end(), img);
    if (it == d.fhat.elements.end() || *it != img)
      throw InternalError("lifting image is not a generator of the lifted frame");
    int e = static_cast<int>(it - d.fhat.elements.begin());
    return d.pts.elem_open[e];
  }

  const SetFunctorPtr& base() const { return base_; }

 private:
  SetFunctorPtr base_;
  std::vector<std::string> liftings_;
  mutable std::map<std::pair<std::vector<std::string>, std::vector<Mask>>, Data>
      dcache_;
};

std::string kkp_id(const std::string& base, const std::vector<std::string>& ls) {
  std::string id = "kkp:" + base + ":";
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (i) id += ",";
    id += ls[i];
  }
  return id;
}

}  // namespace

FunctorPtr kkp_functor(const std::string& base_name,
                       std::vector<std::string> liftings) {
  SetFunctorPtr base = set_functor(base_name);
  for (const auto& l : liftings) {
    auto names = base->lifting_names();
    if (std::find(names.begin(), names.end(), l) == names.end())
      throw ValidationError("unknown base lifting '" + l + "' for " + base_name);
  }
  static std::map<std::string, FunctorPtr> cache;
  std::string id = kkp_id(base_name, liftings);
  auto it = cache.find(id);
  if (it == cache.end())
    it = cache.emplace(id, std::make_shared<KkpFunctor>(base, std::move(liftings), id))
             .first;
  return it->second;
}

FinSpace kkp_space(const FunctorPtr& kkp, const FinSpace& X) {
  return kkp->carrier(X).space;
}

ContMap kkp_map(const FunctorPtr& kkp, const ContMap& f) { return kkp->on_map(f); }

OpenLifting lift_lifting(const FunctorPtr& kkp, const std::string& name) {
  return builtin_lifting(kkp, name);
}

LiftTheoremReport check_lift_theorems(const FunctorPtr& kkp, const FinSpace& X) {
  const auto* K = dynamic_cast<const KkpFunctor*>(kkp.get());
  if (!K) throw ValidationError("check_lift_theorems needs a KKP-lifted functor");
  LiftTheoremReport rep;
  const FinSpace& TX = kkp->carrier(X).space;
  auto sig = builtin_signature(kkp);
  if (sig.empty()) {
    // empty signature: the lifted space is pt of the two-element frame
    rep.characteristic = true;
    for (int x = 0; x < TX.size(); ++x)
      if (TX.min_nbhd(x) != full_mask(TX.size())) rep.characteristic = false;
    rep.lifted_scott = true;
  } else {
    rep.characteristic = check_characteristic(sig, X);
    rep.lifted_scott = true;
    for (const auto& lam : sig) {
      if (!set_lifting_monotone(*K->base(), lam.id, X.size())) continue;
      if (!check_scott(lam, X)) rep.lifted_scott = false;
    }
  }
  rep.congruence_trivial = K->data(X).fhat.congruence.trivial;
  rep.output_t0 = TX.is_t0();
  return rep;
}

std::optional<ContMap> kkp_agreement_iso(const FunctorPtr& kkp,
                                         const FunctorPtr& concrete,
                                         const FinSpace& X) {
  const FinSpace& A = kkp->carrier(X).space;
  const FinSpace& B = concrete->carrier(X).space;
  if (A.size() != B.size()) return std::nullopt;
  // canonical correspondence: identical membership profiles over the shared
  // (lifting, open) subbase indexing
  auto names = kkp->builtin_lifting_names();
  std::vector<std::pair<Mask, Mask>> cells;  // per (lifting, open): (in A, in B)
  for (const auto& name : names)
    for (Mask a : X.opens())
      cells.emplace_back(kkp->eval_lifting(name, X, {a}),
                         concrete->eval_lifting(name, X, {a}));
  std::vector<int> asg(A.size(), -1);
  bool unique = true;
  for (int p = 0; p < A.size() && unique; ++p) {
    int found = -1;
    for (int w = 0; w < B.size(); ++w) {
      bool match = true;
      for (const auto& [u, v] : cells)
        if (mask_has(u, p) != mask_has(v, w)) { match = false; break; }
      if (match) {
        if (found >= 0) { unique = false; break; }
        found = w;
      }
    }
    if (found < 0) unique = false;
    asg[p] = found;
  }
  if (unique) {
    ContMap h(A, B, asg);
    if (is_homeomorphism(h) && check_continuous(h)) return h;
  }
  return find_homeomorphism(A, B);
}

FunctorPtr make_functor(const std::string& id) {
  if (id == "vietoris") return vietoris_functor();
  if (id == "dkh") return dkh_functor();
  if (id == "trivial") return trivial_functor();
  if (id.rfind("kkp:", 0) == 0) {
    std::string rest = id.substr(4);
    auto colon = rest.find(':');
    if (colon == std::string::npos)
      throw ValidationError("malformed functor id '" + id +
                            "' (expected kkp:<base>:<liftings>)");
    std::string base = rest.substr(0, colon);
    std::string ls = rest.substr(colon + 1);
    std::vector<std::string> names;
    std::size_t pos = 0;
    while (pos <= ls.size() && !ls.empty()) {
      auto comma = ls.find(',', pos);
      if (comma == std::string::npos) {
        names.push_back(ls.substr(pos));
        break;
      }
      names.push_back(ls.substr(pos, comma - pos));
      pos = comma + 1;
    }
    return kkp_functor(base, std::move(names));
  }
  throw ValidationError("unknown functor id '" + id + "'");
}

}  // namespace geomodal

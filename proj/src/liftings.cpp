#include "geomodal/liftings.hpp"

#include <algorithm>

namespace geomodal {

Mask OpenLifting::operator()(const FinSpace& X, const std::vector<Mask>& args) const {
  if (static_cast<int>(args.size()) != arity)
    throw ValidationError("lifting '" + id + "' expects " + std::to_string(arity) +
                          " arguments");
  for (Mask a : args)
    if (!X.is_open(a))
      throw ValidationError("lifting '" + id + "' applied to a non-open argument");
  Mask out = eval(X, args);
  if (!functor->carrier(X).space.is_open(out))
    throw InternalError("lifting '" + id + "' produced a non-open image");
  return out;
}

OpenLifting builtin_lifting(const FunctorPtr& T, const std::string& name) {
  int ar = T->builtin_arity(name);  // throws on unknown pairs
  OpenLifting lam;
  lam.id = name;
  lam.functor = T;
  lam.arity = ar;
  lam.eval = [T, name](const FinSpace& X, const std::vector<Mask>& args) {
    return T->eval_lifting(name, X, args);
  };
  return lam;
}

StrongLifting builtin_strong_lifting(const FunctorPtr& T, const std::string& name) {
  StrongLifting mu;
  mu.open_part = builtin_lifting(T, name);
  mu.eval_any = [T, name](const FinSpace& X, const std::vector<Mask>& args) {
    return T->eval_lifting_any(name, X, args);
  };
  return mu;
}

std::vector<OpenLifting> builtin_signature(const FunctorPtr& T) {
  std::vector<OpenLifting> out;
  for (const auto& n : T->builtin_lifting_names()) out.push_back(builtin_lifting(T, n));
  return out;
}

std::vector<FinSpace> test_universe(const FunctorPtr& T, int max_points) {
  std::vector<FinSpace> out;
  std::vector<std::string> names;
  for (int n = 1; n <= max_points; ++n) {
    names.push_back("q" + std::to_string(n - 1));
    if (T->kh_scoped()) {
      out.push_back(FinSpace::discrete(names));
    } else {
      for (auto& X : all_topologies(names)) out.push_back(std::move(X));
    }
  }
  return out;
}

namespace {

// all tuples over a set of opens
bool next_tuple(std::vector<std::size_t>& ix, std::size_t bound) {
  for (auto& i : ix) {
    if (++i < bound) return true;
    i = 0;
  }
  return false;
}

}  // namespace

bool check_naturality(const OpenLifting& lam, const ContMap& f) {
  const auto& topens = f.target.opens();
  std::vector<std::size_t> ix(lam.arity, 0);
  do {
    std::vector<Mask> targs(lam.arity), sargs(lam.arity);
    for (int i = 0; i < lam.arity; ++i) {
      targs[i] = topens[ix[i]];
      sargs[i] = f.preimage(targs[i]);
    }
    Mask lhs = lam(f.source, sargs);
    Mask rhs = lam.functor->preimage(f, lam(f.target, targs));
    if (lhs != rhs) return false;
  } while (next_tuple(ix, topens.size()));
  return true;
}

bool check_monotone(const OpenLifting& lam, const FinSpace& X) {
  const auto& opens = X.opens();
  std::vector<std::size_t> ix(lam.arity, 0);
  do {
    std::vector<Mask> args(lam.arity);
    for (int i = 0; i < lam.arity; ++i) args[i] = opens[ix[i]];
    Mask base = lam(X, args);
    for (int pos = 0; pos < lam.arity; ++pos)
      for (Mask b : opens) {
        auto grown = args;
        grown[pos] = args[pos] | b;
        if ((base & ~lam(X, grown)) != 0) return false;
      }
  } while (next_tuple(ix, opens.size()));
  return true;
}

bool check_monotone(const OpenLifting& lam, const std::vector<FinSpace>& universe) {
  return std::all_of(universe.begin(), universe.end(),
                     [&](const FinSpace& X) { return check_monotone(lam, X); });
}

bool check_scott(const OpenLifting& lam, const FinSpace& X) {
  const auto& opens = X.opens();
  const int no = static_cast<int>(opens.size());
  if (no > 32)
    throw ResourceError("Scott-continuity check capped at 32 opens");
  // directed subfamilies up to size 4 (finite directed families carry maxima)
  std::vector<std::vector<Mask>> families;
  std::vector<int> sel;
  auto rec = [&](auto&& self, int from, int left) -> void {
    if (!sel.empty()) {
      bool directed = true;
      for (std::size_t i = 0; i < sel.size() && directed; ++i)
        for (std::size_t j = i; j < sel.size(); ++j) {
          Mask ub = opens[sel[i]] | opens[sel[j]];
          bool has = false;
          for (int k : sel)
            if ((ub & ~opens[k]) == 0) { has = true; break; }
          if (!has) { directed = false; break; }
        }
      if (directed) {
        std::vector<Mask> fam;
        for (int k : sel) fam.push_back(opens[k]);
        families.push_back(std::move(fam));
      }
    }
    if (left == 0) return;
    for (int k = from; k < no; ++k) {
      sel.push_back(k);
      self(self, k + 1, left - 1);
      sel.pop_back();
    }
  };
  rec(rec, 0, 4);
  std::vector<std::size_t> ix(lam.arity, 0);
  do {
    std::vector<Mask> args(lam.arity);
    for (int i = 0; i < lam.arity; ++i) args[i] = opens[ix[i]];
    for (int pos = 0; pos < lam.arity; ++pos)
      for (const auto& fam : families) {
        Mask un = 0;
        for (Mask b : fam) un |= b;
        auto withUnion = args;
        withUnion[pos] = un;
        Mask lhs = lam(X, withUnion);
        Mask rhs = 0;
        for (Mask b : fam) {
          auto withB = args;
          withB[pos] = b;
          rhs |= lam(X, withB);
        }
        if (lhs != rhs) return false;
      }
  } while (next_tuple(ix, opens.size()));
  return true;
}

bool check_scott(const OpenLifting& lam, const std::vector<FinSpace>& universe) {
  return std::all_of(universe.begin(), universe.end(),
                     [&](const FinSpace& X) { return check_scott(lam, X); });
}

bool check_characteristic(const std::vector<OpenLifting>& sig, const FinSpace& X) {
  if (sig.empty()) throw ValidationError("empty signature");
  const FinSpace& TX = sig[0].functor->carrier(X).space;
  std::vector<Mask> images;
  for (const auto& lam : sig) {
    const auto& opens = X.opens();
    std::vector<std::size_t> ix(lam.arity, 0);
    do {
      std::vector<Mask> args(lam.arity);
      for (int i = 0; i < lam.arity; ++i) args[i] = opens[ix[i]];
      images.push_back(lam(X, args));
    } while (next_tuple(ix, opens.size()));
  }
  // the generated topology equals the carrier topology iff the minimal
  // neighbourhoods agree (images are opens, so generated ⊆ carrier)
  for (int x = 0; x < TX.size(); ++x) {
    Mask gen = full_mask(TX.size());
    for (Mask img : images)
      if (mask_has(img, x)) gen &= img;
    if (gen != TX.min_nbhd(x)) return false;
  }
  return true;
}

bool extensionally_equal(const OpenLifting& a, const OpenLifting& b,
                         const std::vector<FinSpace>& universe) {
  if (a.arity != b.arity) return false;
  for (const auto& X : universe) {
    const auto& opens = X.opens();
    std::vector<std::size_t> ix(a.arity, 0);
    do {
      std::vector<Mask> args(a.arity);
      for (int i = 0; i < a.arity; ++i) args[i] = opens[ix[i]];
      if (a(X, args) != b(X, args)) return false;
    } while (next_tuple(ix, opens.size()));
  }
  return true;
}

// ---------------------------------------------------------------------------
// classification codes

namespace {

// n-fold power of the base object, with the tuple map builder
struct Power {
  FinSpace space;
  std::vector<std::vector<int>> coords;  // point -> tuple of base indices
};

Power classifier_power(const FinSpace& base, int n) {
  if (n < 1 || n > 2)
    throw ResourceError("classifier powers supported for arity 1 and 2 only");
  if (n == 1) {
    Power p;
    p.space = base;
    for (int i = 0; i < base.size(); ++i) p.coords.push_back({i});
    return p;
  }
  ProductSpace pr = product_space(base, base);
  Power p;
  p.space = pr.space;
  for (int k = 0; k < pr.space.size(); ++k)
    p.coords.push_back({pr.pi1(k), pr.pi2(k)});
  return p;
}

// ⟨χ_{a₁}, …, χ_{aₙ}⟩ : X → baseⁿ, where "1" is the point named "1"
ContMap tuple_characteristic(const FinSpace& X, const Power& pw,
                             const FinSpace& base, const std::vector<Mask>& args) {
  int one = *base.point_index("1");
  int zero = *base.point_index("0");
  std::vector<int> asg(X.size());
  for (int x = 0; x < X.size(); ++x) {
    std::vector<int> want(args.size());
    for (std::size_t i = 0; i < args.size(); ++i)
      want[i] = mask_has(args[i], x) ? one : zero;
    int found = -1;
    for (int k = 0; k < pw.space.size(); ++k)
      if (pw.coords[k] == want) { found = k; break; }
    asg[x] = found;
  }
  return ContMap(X, pw.space, asg);
}

}  // namespace

SierpinskiCode sierpinski_code(const OpenLifting& lam) {
  FinSpace base = lam.functor->classifier();
  Power pw = classifier_power(base, lam.arity);
  int one = *base.point_index("1");
  std::vector<Mask> args(lam.arity);
  for (int i = 0; i < lam.arity; ++i) {
    Mask pre = 0;
    for (int k = 0; k < pw.space.size(); ++k)
      if (pw.coords[k][i] == one) pre |= Mask{1} << k;
    args[i] = pre;
  }
  SierpinskiCode c;
  c.functor = lam.functor;
  c.arity = lam.arity;
  c.power = pw.space;
  c.code = lam(pw.space, args);
  return c;
}

OpenLifting lifting_from_code(const SierpinskiCode& c, const std::string& id) {
  FinSpace base = c.functor->classifier();
  auto pw = std::make_shared<Power>(classifier_power(base, c.arity));
  if (pw->space != c.power)
    throw ValidationError("code space does not match the functor's classifier power");
  if (!c.functor->carrier(c.power).space.is_open(c.code))
    throw ValidationError("code is not open in the lifted classifier power");
  OpenLifting lam;
  lam.id = id;
  lam.functor = c.functor;
  lam.arity = c.arity;
  Mask code = c.code;
  FunctorPtr T = c.functor;
  lam.eval = [T, pw, base, code](const FinSpace& X, const std::vector<Mask>& args) {
    ContMap chi = tuple_characteristic(X, *pw, base, args);
    if (!check_continuous(chi))
      throw ValidationError(
          "characteristic tuple map is not continuous into the classifier "
          "power (argument outside the functor's scope)");
    return T->preimage(chi, code);
  };
  return lam;
}

StrongCode strong_code(const StrongLifting& mu) {
  FinSpace base = FinSpace::two_trivial();
  Power pw = classifier_power(base, mu.open_part.arity);
  int one = *base.point_index("1");
  std::vector<Mask> args(mu.open_part.arity);
  for (int i = 0; i < mu.open_part.arity; ++i) {
    Mask pre = 0;
    for (int k = 0; k < pw.space.size(); ++k)
      if (pw.coords[k][i] == one) pre |= Mask{1} << k;
    args[i] = pre;
  }
  StrongCode c;
  c.functor = mu.open_part.functor;
  c.arity = mu.open_part.arity;
  c.power = pw.space;
  c.code = mu.eval_any(pw.space, args);
  return c;
}

bool check_strong_openness(const StrongCode& c) {
  // s : S → 𝟚 is the identity on points; sⁿ accordingly
  FinSpace Sb = FinSpace::sierpinski();
  Power sp = classifier_power(Sb, c.arity);
  Power tp = classifier_power(FinSpace::two_trivial(), c.arity);
  if (tp.space != c.power)
    throw ValidationError("strong code is not over the trivial-topology power");
  std::vector<int> asg(sp.space.size());
  for (int k = 0; k < sp.space.size(); ++k) {
    int found = -1;
    for (int j = 0; j < tp.space.size(); ++j)
      if (tp.coords[j] == sp.coords[k]) { found = j; break; }
    asg[k] = found;
  }
  ContMap s_n(sp.space, tp.space, asg);
  Mask pre = c.functor->preimage(s_n, c.code);
  return c.functor->carrier(sp.space).space.is_open(pre);
}

StrongLifting strong_extension(const OpenLifting& lam,
                               const std::vector<FinSpace>& universe) {
  if (!check_monotone(lam, universe))
    throw ValidationError("strong extension requires a monotone lifting");
  StrongLifting mu;
  mu.open_part = lam;
  OpenLifting inner = lam;
  mu.eval_any = [inner](const FinSpace& X, const std::vector<Mask>& args) {
    const auto& opens = X.opens();
    // per-argument open supersets
    std::vector<std::vector<Mask>> sup(args.size());
    for (std::size_t i = 0; i < args.size(); ++i)
      for (Mask a : opens)
        if ((args[i] & ~a) == 0) sup[i].push_back(a);
    Mask acc = full_mask(inner.functor->carrier(X).space.size());
    std::vector<std::size_t> ix(args.size(), 0);
    do {
      std::vector<Mask> tup(args.size());
      for (std::size_t i = 0; i < args.size(); ++i) tup[i] = sup[i][ix[i]];
      acc &= inner(X, tup);
    } while ([&] {
      for (std::size_t i = 0; i < ix.size(); ++i) {
        if (++ix[i] < sup[i].size()) return true;
        ix[i] = 0;
      }
      return false;
    }());
    bool all_open = true;
    for (Mask a : args)
      if (!X.is_open(a)) { all_open = false; break; }
    if (all_open && acc != inner(X, args))
      throw InternalError("strong extension of '" + inner.id +
                          "' does not restrict to the lifting on opens");
    return acc;
  };
  return mu;
}

std::vector<StrongDisagreement> strong_extension_report(
    const OpenLifting& lam, const StrongLifting& declared, const FinSpace& X) {
  std::vector<StrongDisagreement> out;
  StrongLifting ext = strong_extension(lam, {X});
  std::vector<std::size_t> ix(lam.arity, 0);
  const std::size_t nsub = std::size_t{1} << X.size();
  do {
    std::vector<Mask> args(lam.arity);
    for (int i = 0; i < lam.arity; ++i) args[i] = static_cast<Mask>(ix[i]);
    Mask a = ext.eval_any(X, args);
    Mask b = declared.eval_any(X, args);
    if (a != b) out.push_back(StrongDisagreement{X, args, a, b});
  } while (next_tuple(ix, nsub));
  return out;
}

}  // namespace geomodal

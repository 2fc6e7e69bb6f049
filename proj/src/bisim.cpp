#include "geomodal/bisim.hpp"

#include <algorithm>

namespace geomodal {

Mask Relation::left_image(Mask a) const {
  Mask out = 0;
  for (const auto& [x, y] : pairs)
    if (mask_has(a, x)) out |= Mask{1} << y;
  return out;
}

Mask Relation::right_preimage(Mask a2) const {
  Mask out = 0;
  for (const auto& [x, y] : pairs)
    if (mask_has(a2, y)) out |= Mask{1} << x;
  return out;
}

bool Relation::contains(int x, int y) const {
  return std::find(pairs.begin(), pairs.end(), std::make_pair(x, y)) != pairs.end();
}

std::vector<CoherentPair> coherent_pairs(const Relation& B, std::size_t max_products) {
  const auto& lo = B.left.space().opens();
  const auto& ro = B.right.space().opens();
  if (lo.size() * ro.size() > max_products)
    throw ResourceError("coherent-pair enumeration exceeds the bound");
  std::vector<CoherentPair> out;
  for (Mask a : lo)
    for (Mask a2 : ro)
      if ((B.left_image(a) & ~a2) == 0 && (B.right_preimage(a2) & ~a) == 0)
        out.emplace_back(a, a2);
  return out;
}

namespace {

Mask prop_value(const GeomModel& M, const std::string& p) {
  auto it = M.valuation.find(p);
  return it == M.valuation.end() ? 0 : it->second;
}

std::vector<std::string> all_letters(const GeomModel& M, const GeomModel& N) {
  std::vector<std::string> out;
  for (const auto& [p, v] : M.valuation) out.push_back(p);
  for (const auto& [p, v] : N.valuation)
    if (!M.valuation.count(p)) out.push_back(p);
  return out;
}

}  // namespace

BisimCheck is_lambda_bisim(const Relation& B, const Signature& sig) {
  BisimCheck out;
  if (B.left.coalg.functor->name() != B.right.coalg.functor->name())
    throw ValidationError("Λ-bisimulation across different functors");
  auto letters = all_letters(B.left, B.right);
  for (const auto& [x, y] : B.pairs)
    for (const auto& p : letters)
      if (mask_has(prop_value(B.left, p), x) != mask_has(prop_value(B.right, p), y)) {
        out.ok = false;
        out.counterexample = "pair (" + B.left.space().point_name(x) + "," +
                             B.right.space().point_name(y) +
                             ") disagrees on letter '" + p + "'";
        return out;
      }
  auto coh = coherent_pairs(B);  // never empty: (∅,∅) is always coherent
  for (const auto& lam : sig) {
    std::vector<std::size_t> ix(lam.arity, 0);
    do {
      std::vector<Mask> largs(lam.arity), rargs(lam.arity);
      for (int i = 0; i < lam.arity; ++i) {
        largs[i] = coh[ix[i]].first;
        rargs[i] = coh[ix[i]].second;
      }
      const FunctorPtr& T = B.left.coalg.functor;
      for (const auto& [x, y] : B.pairs) {
        bool inl = T->payload_in_lifting(lam.id, B.left.space(), largs,
                                         B.left.coalg.gamma[x]);
        bool inr = T->payload_in_lifting(lam.id, B.right.space(), rargs,
                                         B.right.coalg.gamma[y]);
        if (inl != inr) {
          out.ok = false;
          out.counterexample = "pair (" + B.left.space().point_name(x) + "," +
                               B.right.space().point_name(y) +
                               ") breaks the biconditional for '" + lam.id + "'";
          return out;
        }
      }
    } while ([&] {
      for (auto& i : ix) {
        if (++i < coh.size()) return true;
        i = 0;
      }
      return false;
    }());
  }
  return out;
}

Relation greatest_lambda_bisim(const GeomModel& M, const GeomModel& N,
                               const Signature& sig) {
  Relation B{M, N, {}};
  auto letters = all_letters(M, N);
  for (int x = 0; x < M.space().size(); ++x)
    for (int y = 0; y < N.space().size(); ++y) {
      bool agree = true;
      for (const auto& p : letters)
        if (mask_has(prop_value(M, p), x) != mask_has(prop_value(N, p), y)) {
          agree = false;
          break;
        }
      if (agree) B.pairs.emplace_back(x, y);
    }
  // refine: drop pairs violating a biconditional over the current coherent set
  while (true) {
    auto coh = coherent_pairs(B);
    std::vector<std::pair<int, int>> keep;
    for (const auto& [x, y] : B.pairs) {
      bool ok = true;
      for (const auto& lam : sig) {
        std::vector<std::size_t> ix(lam.arity, 0);
        do {
          std::vector<Mask> largs(lam.arity), rargs(lam.arity);
          for (int i = 0; i < lam.arity; ++i) {
            largs[i] = coh[ix[i]].first;
            rargs[i] = coh[ix[i]].second;
          }
          if (M.coalg.functor->payload_in_lifting(lam.id, M.space(), largs,
                                                  M.coalg.gamma[x]) !=
              N.coalg.functor->payload_in_lifting(lam.id, N.space(), rargs,
                                                  N.coalg.gamma[y])) {
            ok = false;
            break;
          }
        } while ([&] {
          for (auto& i : ix) {
            if (++i < coh.size()) return true;
            i = 0;
          }
          return false;
        }());
        if (!ok) break;
      }
      if (ok) keep.emplace_back(x, y);
    }
    if (keep.size() == B.pairs.size()) break;
    B.pairs = std::move(keep);
  }
  BisimCheck chk = is_lambda_bisim(B, sig);
  if (!chk.ok)
    throw InternalError("greatest-bisimulation fixpoint is not a Λ-bisimulation: " +
                        chk.counterexample);
  return B;
}

// ---------------------------------------------------------------------------
// Aczel-Mendler bisimulations

AmData am_data(const Relation& B) {
  ProductSpace prod = product_space(B.left.space(), B.right.space());
  Mask pts = 0;
  for (const auto& [x, y] : B.pairs)
    pts |= Mask{1} << (x * B.right.space().size() + y);
  Subspace sub = subspace(prod.space, pts);
  std::vector<int> pl, pr;
  for (int k = 0; k < sub.space.size(); ++k) {
    int amb = sub.ambient_index[k];
    pl.push_back(prod.pi1(amb));
    pr.push_back(prod.pi2(amb));
  }
  return AmData{sub.space, ContMap(sub.space, B.left.space(), pl),
                ContMap(sub.space, B.right.space(), pr)};
}

bool is_am_bisim(const Relation& B, const std::vector<int>& beta) {
  auto letters = all_letters(B.left, B.right);
  for (const auto& [x, y] : B.pairs)
    for (const auto& p : letters)
      if (mask_has(prop_value(B.left, p), x) != mask_has(prop_value(B.right, p), y))
        return false;
  AmData d = am_data(B);
  const FunctorPtr& T = B.left.coalg.functor;
  const FinSpace& TB = T->carrier(d.b_space).space;
  if (static_cast<int>(beta.size()) != d.b_space.size()) return false;
  for (int v : beta)
    if (v < 0 || v >= TB.size()) return false;
  if (!check_continuous(ContMap(d.b_space, TB, beta))) return false;
  for (int k = 0; k < d.b_space.size(); ++k) {
    TElem be = T->elem_payload(d.b_space, beta[k]);
    auto tl = T->payload_apply(d.proj_left, be);
    if (!tl || !(*tl == B.left.coalg.gamma[d.proj_left(k)])) return false;
    auto tr = T->payload_apply(d.proj_right, be);
    if (!tr || !(*tr == B.right.coalg.gamma[d.proj_right(k)])) return false;
  }
  return true;
}

AmSearch search_am_transition(const Relation& B, std::size_t max_combinations) {
  AmSearch out;
  AmData d = am_data(B);
  const FunctorPtr& T = B.left.coalg.functor;
  const Carrier* tb = nullptr;
  try {
    tb = &T->carrier(d.b_space);
  } catch (const ResourceError&) {
    out.status = AmSearch::Status::BoundHit;
    return out;
  }
  const FinSpace& TB = tb->space;
  const int nb = d.b_space.size();
  if (nb == 0) {
    out.status = AmSearch::Status::Found;
    return out;
  }
  std::vector<std::vector<int>> cands(nb);
  for (int k = 0; k < nb; ++k)
    for (int e = 0; e < TB.size(); ++e) {
      TElem be = T->elem_payload(d.b_space, e);
      auto tl = T->payload_apply(d.proj_left, be);
      auto tr = T->payload_apply(d.proj_right, be);
      if (tl && tr && *tl == B.left.coalg.gamma[d.proj_left(k)] &&
          *tr == B.right.coalg.gamma[d.proj_right(k)])
        cands[k].push_back(e);
    }
  std::size_t combos = 1;
  for (const auto& c : cands) {
    if (c.empty()) {
      out.status = AmSearch::Status::NoneExists;
      return out;
    }
    if (combos > max_combinations / c.size()) {
      out.status = AmSearch::Status::BoundHit;
      return out;
    }
    combos *= c.size();
  }
  std::vector<int> beta(nb, -1);
  auto rec = [&](auto&& self, int k) -> bool {
    if (k == nb)
      return check_continuous(ContMap(d.b_space, TB, beta));
    for (int e : cands[k]) {
      beta[k] = e;
      if (self(self, k + 1)) return true;
    }
    beta[k] = -1;
    return false;
  };
  if (rec(rec, 0)) {
    out.status = AmSearch::Status::Found;
    out.beta = beta;
  } else {
    out.status = AmSearch::Status::NoneExists;
  }
  return out;
}

// ---------------------------------------------------------------------------
// behavioural equivalence and the comparison harness

BehEquiv behavioural_equiv(const GeomModel& M, int x, const GeomModel& N, int y,
                           const Signature& sig) {
  BehEquiv out;
  TheoryQuotient tq = theory_quotient({M, N}, sig);
  if (!tq.ok) {
    out.verdict = BehEquiv::Verdict::Indeterminate;
    out.detail = tq.failure;
    return out;
  }
  out.verdict = tq.theory_maps[0](x) == tq.theory_maps[1](y)
                    ? BehEquiv::Verdict::True
                    : BehEquiv::Verdict::False;
  return out;
}

EquivComparison compare_equivalences(const GeomModel& M, const GeomModel& N,
                                     const Signature& sig) {
  EquivComparison out;
  out.lambda_bisim = greatest_lambda_bisim(M, N, sig);

  // modal equivalence across the disjoint union
  DisjointUnion du = disjoint_union({M, N});
  auto fam = definable_opens(du.model, sig);
  auto profile_eq = [&](int ux, int uy) {
    for (Mask u : fam)
      if (mask_has(u, ux) != mask_has(u, uy)) return false;
    return true;
  };
  for (int x = 0; x < M.space().size(); ++x)
    for (int y = 0; y < N.space().size(); ++y)
      if (profile_eq(du.inclusions[0](x), du.inclusions[1](y)))
        out.modal.emplace_back(x, y);

  // behavioural equivalence via the theory quotient
  TheoryQuotient tq = theory_quotient({M, N}, sig);
  out.behavioural_determinate = tq.ok;
  if (tq.ok) {
    for (int x = 0; x < M.space().size(); ++x)
      for (int y = 0; y < N.space().size(); ++y)
        if (tq.theory_maps[0](x) == tq.theory_maps[1](y))
          out.behavioural.emplace_back(x, y);
  } else {
    out.detail = tq.failure;
  }

  // theorem-hypothesis flags, computed on the two carriers at hand
  std::vector<FinSpace> universe{M.space(), N.space()};
  out.monotone = true;
  out.scott = true;
  out.strong = true;
  for (const auto& lam : sig) {
    if (!check_monotone(lam, universe)) out.monotone = false;
    if (!check_scott(lam, universe)) out.scott = false;
  }
  if (out.monotone) {
    try {
      for (const auto& lam : sig) {
        StrongLifting mu = strong_extension(lam, universe);
        for (const auto& X : universe) {
          // restriction equality on opens is asserted inside eval_any
          for (Mask a : X.opens()) mu.eval_any(X, std::vector<Mask>(lam.arity, a));
        }
      }
    } catch (const Error&) {
      out.strong = false;
    }
  } else {
    out.strong = false;
  }
  out.characteristic =
      check_characteristic(sig, M.space()) && check_characteristic(sig, N.space());

  out.lambda_subset_modal = true;
  for (const auto& pr : out.lambda_bisim.pairs)
    if (std::find(out.modal.begin(), out.modal.end(), pr) == out.modal.end())
      out.lambda_subset_modal = false;
  out.three_way_coincidence =
      out.behavioural_determinate && out.lambda_bisim.pairs.size() == out.modal.size() &&
      out.modal == out.behavioural &&
      [&] {
        auto a = out.lambda_bisim.pairs;
        auto b = out.modal;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
      }();
  return out;
}

}  // namespace geomodal

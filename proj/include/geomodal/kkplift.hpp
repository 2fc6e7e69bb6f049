#pragma once

#include "geomodal/liftings.hpp"

namespace geomodal {

/// Frame of lifting images over the opens, as a sublattice of the powerset of
/// the base functor's carrier. element[i] is the subset of carrier indices.
struct FdotFrame {
  FinFrame frame;
  std::vector<Mask> elements;
};

FdotFrame fdot_frame(const SetFunctorPtr& base,
                     const std::vector<std::string>& liftings, const FinSpace& X);

struct CongruenceReport {
  bool trivial = true;
  int instances_checked = 0;
};

/// Quotient by the directed-join congruence; finitely the congruence is the
/// identity (directed families carry their maxima), which is checked per
/// instance, so the frame below equals the fdot frame. InternalError if a
/// nontrivial instance shows up.
struct FhatFrame {
  FinFrame frame;
  std::vector<Mask> elements;
  CongruenceReport congruence;
};

FhatFrame fhat_frame(const SetFunctorPtr& base,
                     const std::vector<std::string>& liftings, const FinSpace& X);

// The topological Kupke-Kurz-Pattinson lift of the base set functor with the
// named predicate liftings; its carrier at X is pt(fhat_frame(X)).
FunctorPtr kkp_functor(const std::string& base_name,
                       std::vector<std::string> liftings);

FinSpace kkp_space(const FunctorPtr& kkp, const FinSpace& X);
ContMap kkp_map(const FunctorPtr& kkp, const ContMap& f);
// λ̂_X(a⃗) = { p | p([λ(a⃗)]) = 1 }, registered for the lifted functor.
OpenLifting lift_lifting(const FunctorPtr& kkp, const std::string& name);

struct LiftTheoremReport {
  bool characteristic = false;
  bool lifted_scott = false;        // monotone base liftings lift Scott-continuously
  bool congruence_trivial = false;
  bool output_t0 = false;
};

LiftTheoremReport check_lift_theorems(const FunctorPtr& kkp, const FinSpace& X);

// Homeomorphism kkp_space(X) → carrier of the concrete functor, constructed
// from the canonical generator correspondences (subbase profiles), falling
// back to exhaustive search.
std::optional<ContMap> kkp_agreement_iso(const FunctorPtr& kkp,
                                         const FunctorPtr& concrete,
                                         const FinSpace& X);

// "vietoris" | "dkh" | "trivial" | "kkp:<base>:<l1>,<l2>,…"
FunctorPtr make_functor(const std::string& id);

}  // namespace geomodal

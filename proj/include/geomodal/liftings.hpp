#pragma once

#include <functional>
#include <string>
#include <vector>

#include "geomodal/coalgfun.hpp"

namespace geomodal {

/// An open predicate lifting: per space, a map from open tuples to an open
/// subset of the functor carrier. Liftings are registered semantic functions;
/// equality is extensional over a test universe.
struct OpenLifting {
  std::string id;
  FunctorPtr functor;
  int arity = 1;
  std::function<Mask(const FinSpace&, const std::vector<Mask>&)> eval;

  // Validates that the arguments are opens and the result is open in the
  // carrier space (InternalError otherwise).
  Mask operator()(const FinSpace& X, const std::vector<Mask>& args) const;
};

/// Extension of an open lifting to arbitrary subsets.
struct StrongLifting {
  OpenLifting open_part;
  std::function<Mask(const FinSpace&, const std::vector<Mask>&)> eval_any;
};

OpenLifting builtin_lifting(const FunctorPtr& T, const std::string& name);
// The builtin's set-level formula on arbitrary subsets.
StrongLifting builtin_strong_lifting(const FunctorPtr& T, const std::string& name);
std::vector<OpenLifting> builtin_signature(const FunctorPtr& T);  // all builtins

// Enumerated spaces within the functor's scope (discrete only when
// KH-scoped), up to max_points points.
std::vector<FinSpace> test_universe(const FunctorPtr& T, int max_points);

// λ_X(f⁻¹ a'₁, …) = (Tf)⁻¹(λ_X'(a'₁, …)) over all open tuples of the target.
bool check_naturality(const OpenLifting& lam, const ContMap& f);

// Argumentwise ⊆-monotonicity over all open tuples of X.
bool check_monotone(const OpenLifting& lam, const FinSpace& X);
bool check_monotone(const OpenLifting& lam, const std::vector<FinSpace>& universe);

// Commutation with unions of directed open families (enumerated up to size 4).
bool check_scott(const OpenLifting& lam, const FinSpace& X);
bool check_scott(const OpenLifting& lam, const std::vector<FinSpace>& universe);

// The lifting images form a subbase of the carrier topology.
bool check_characteristic(const std::vector<OpenLifting>& sig, const FinSpace& X);

bool extensionally_equal(const OpenLifting& a, const OpenLifting& b,
                         const std::vector<FinSpace>& universe);

/// Classification of a lifting as a subset of T applied to a power of the
/// functor's classifier object.
struct SierpinskiCode {
  FunctorPtr functor;
  int arity = 1;
  FinSpace power;    // classifierⁿ
  Mask code = 0;     // subset of carrier(power).space
};

SierpinskiCode sierpinski_code(const OpenLifting& lam);
// ValidationError when the code is not open in T(classifierⁿ).
OpenLifting lifting_from_code(const SierpinskiCode& c, const std::string& id);

/// Strong (set-level) code over 𝟚ⁿ.
struct StrongCode {
  FunctorPtr functor;
  int arity = 1;
  FinSpace power;  // 𝟚ⁿ
  Mask code = 0;   // subset of carrier(power).space, not necessarily open
};

StrongCode strong_code(const StrongLifting& mu);
// (T sⁿ)⁻¹(c) is open in T(Sⁿ), with s : S → 𝟚 the identity.
bool check_strong_openness(const StrongCode& c);

// λ̃(b⃗) = ⋂{ λ(a⃗) | aᵢ open ⊇ bᵢ }. Monotonicity of λ is checked on the
// given universe first (ValidationError); the restriction to opens is
// asserted equal to λ at every call (InternalError).
StrongLifting strong_extension(const OpenLifting& lam,
                               const std::vector<FinSpace>& universe);

/// Where the intersection-formula extension and a declared set-level formula
/// disagree on non-open inputs (recorded, not judged).
struct StrongDisagreement {
  FinSpace space;
  std::vector<Mask> args;
  Mask by_intersection;
  Mask by_formula;
};

std::vector<StrongDisagreement> strong_extension_report(
    const OpenLifting& lam, const StrongLifting& declared, const FinSpace& X);

}  // namespace geomodal

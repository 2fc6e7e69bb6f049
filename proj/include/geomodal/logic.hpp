#pragma once

#include <random>
#include <set>

#include "geomodal/liftings.hpp"

namespace geomodal {

/// Geometric modal formula. Bot is the empty disjunction.
struct Formula {
  enum class Kind { Top, Prop, And, Or, Modal };
  Kind kind = Kind::Top;
  std::string name;            // proposition letter / lifting id
  std::vector<Formula> args;   // And: exactly 2; Or: any width; Modal: arity

  static Formula top();
  static Formula bottom();
  static Formula prop(std::string p);
  static Formula conj(Formula a, Formula b);
  static Formula disj(std::vector<Formula> fs);
  static Formula modal(std::string lifting, std::vector<Formula> args);

  bool operator==(const Formula& o) const;
};

// Grammar: φ ::= top | p:NAME | (φ & φ) | \/[φ, …, φ] | <LIFT>(φ, …, φ)
// with `bot` sugar for \/[], `&` also accepted unparenthesized inside
// delimiters, whitespace insignificant. Syntax errors carry line:column.
Formula parse_formula(const std::string& text);
std::string print_formula(const Formula& f);

// Canonical form for syntactic matching: Or-lists flattened, sorted, and
// singleton-collapsed; nothing else is normalized.
Formula canonical(const Formula& f);
bool syntactically_equal(const Formula& a, const Formula& b);

using Signature = std::vector<OpenLifting>;

Signature default_signature(const FunctorPtr& T);
const OpenLifting* find_lifting(const Signature& sig, const std::string& id);

// Lifting ids known and arities matching; ValidationError otherwise.
void check_formula(const Formula& f, const Signature& sig);

// ⟦φ⟧ per the recursive semantics; modal clause γ⁻¹(λ_X(⟦φ₁⟧, …)).
// Unknown proposition letters are an error, not ∅.
Mask truth_set(const GeomModel& M, const Formula& f, const Signature& sig);
Mask truth_set(const GeomModel& M, const Formula& f);  // builtin signature

// Disjunction of modal-conjunctive clauses (disjunctions only at the top
// level, and at the top of modal arguments). Requires every lifting in f to
// be in scott_liftings; ValidationError otherwise.
Formula normal_form(const Formula& f, const std::set<std::string>& scott_liftings,
                    std::size_t max_clauses = 4096);

// The least family of opens containing the valuation images, ∅ and the full
// set, closed under ∩, ∪ and γ⁻¹(λ(…)) over the signature; a fixpoint.
std::vector<Mask> definable_opens(const GeomModel& M, const Signature& sig);

/// definable_opens where every member carries a constructing formula
/// (truth_set(witness) is the member); the bounded-depth oracle.
struct WitnessedOpen {
  Mask open;
  Formula witness;
};
std::vector<WitnessedOpen> definable_opens_witnessed(const GeomModel& M,
                                                     const Signature& sig,
                                                     int max_depth);

// Equal membership profiles over the definable opens.
bool modal_equiv(const GeomModel& M, int x, int y, const Signature& sig);
// Cross-model via the disjoint union; functor mismatch is an error.
bool modal_equiv(const GeomModel& M, int x, const GeomModel& N, int y,
                 const Signature& sig);

/// Finite theory quotient of a model family: the disjoint union quotiented by
/// modal equivalence, with verified theory maps.
struct TheoryQuotient {
  bool ok = false;
  GeomModel quotient;
  std::vector<ContMap> theory_maps;       // one per input model
  std::vector<int> union_class;           // union point -> quotient point
  std::string failure;                    // counterexample description
};

TheoryQuotient theory_quotient(const std::vector<GeomModel>& models,
                               const Signature& sig);

// Random formula over the given letters and (id, arity) modalities.
Formula random_formula(std::mt19937& rng, const std::vector<std::string>& props,
                       const std::vector<std::pair<std::string, int>>& modalities,
                       int depth, int or_width);

}  // namespace geomodal

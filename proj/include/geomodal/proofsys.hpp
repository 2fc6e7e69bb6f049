#pragma once

#include "geomodal/logic.hpp"

namespace geomodal {

struct ConsequencePair {
  Formula lhs, rhs;
};

/// One-step schema over formula metavariables (written as proposition
/// letters). Family schemata quantify a modality over a directed family A;
/// their derivation instances must cite directedness witnesses.
struct OneStepSchema {
  std::string name;
  std::vector<ConsequencePair> premises;  // over metavariable letters
  ConsequencePair conclusion;
  bool family = false;
  std::string family_lifting;  // for family schemata
};

struct AxiomSystem {
  std::string name;
  std::vector<OneStepSchema> schemata;

  const OneStepSchema* find(const std::string& rule) const;
};

// builtin: "monotone" (m1–m6), "positive-vietoris"
AxiomSystem axiom_system(const std::string& name);

struct RuleInstance {
  int id = 0;
  std::string rule;  // identity | cut | conj-top | conj-left | conj-right |
                     // conj-intro | disj-inj | disj-elim | frame-dist | onestep
  std::string system, onestep_rule;              // when rule == "onestep"
  std::vector<int> premises;                     // ids of earlier nodes
  ConsequencePair conclusion;
  std::map<std::string, Formula> subst;                      // metavar -> formula
  std::map<std::string, std::vector<Formula>> family_subst;  // family metavars
};

struct Derivation {
  std::vector<RuleInstance> nodes;
};

struct DerivationCheck {
  bool ok = true;
  int failed_node = -1;  // node id
  std::string reason;
};

// Every node's premises must appear earlier and each node must match its
// schema syntactically (formula equality modulo Or-list order/flattening).
DerivationCheck check_derivation(const Derivation& d);

// ⟦lhs⟧ ⊆ ⟦rhs⟧ in M.
bool validity(const ConsequencePair& pair, const GeomModel& M, const Signature& sig);

struct SoundnessViolation {
  std::string schema;
  std::string space_desc;
  std::string gamma_desc;
  std::vector<std::string> substitution;  // metavar=open pairs
  std::string premise_or_conclusion;
};

struct SoundnessReport {
  int coalgebras = 0;
  int instances = 0;
  std::vector<SoundnessViolation> violations;
};

// Enumerates coalgebras over all topologies with at most max_points points
// and all open substitutions; axioms must be valid, rules must preserve
// validity. Violations are report content, not errors.
SoundnessReport soundness_sweep(const AxiomSystem& system, const FunctorPtr& T,
                                int max_points);

// Completeness is out of scope; for a pair that resists derivation this
// bounded enumeration looks for a refuting model instead. Nullopt means no
// countermodel within the bound, not validity.
std::optional<GeomModel> find_countermodel(const ConsequencePair& pair,
                                           const FunctorPtr& T, int max_points);

}  // namespace geomodal

#pragma once

#include "geomodal/logic.hpp"

namespace geomodal {

struct Relation {
  GeomModel left, right;
  std::vector<std::pair<int, int>> pairs;

  Mask left_image(Mask a) const;      // B[a]
  Mask right_preimage(Mask a2) const; // B⁻¹[a']
  bool contains(int x, int y) const;
};

using CoherentPair = std::pair<Mask, Mask>;

// All open pairs (a, a') with B[a] ⊆ a' and B⁻¹[a'] ⊆ a.
std::vector<CoherentPair> coherent_pairs(const Relation& B,
                                         std::size_t max_products = 1u << 20);

struct BisimCheck {
  bool ok = true;
  std::string counterexample;
};

// Proposition agreement on every pair plus the γ-membership biconditional for
// every lifting and every coherent tuple.
BisimCheck is_lambda_bisim(const Relation& B, const Signature& sig);

// Greatest Λ-bisimulation: gfp of the refinement operator from the
// proposition-agreeing pairs. Output verified by is_lambda_bisim.
Relation greatest_lambda_bisim(const GeomModel& M, const GeomModel& N,
                               const Signature& sig);

/// B topologized as a subspace of the product; β maps B into the functor
/// applied to B.
struct AmData {
  FinSpace b_space;
  ContMap proj_left, proj_right;
};

AmData am_data(const Relation& B);

// Both coalgebra-morphism squares commute for the given β (indices into the
// functor carrier of the B-subspace), β is continuous, and paired points
// agree on propositions.
bool is_am_bisim(const Relation& B, const std::vector<int>& beta);

struct AmSearch {
  enum class Status { Found, NoneExists, BoundHit };
  Status status = Status::NoneExists;
  std::vector<int> beta;
};

// Pointwise candidate filtering plus backtracking over the continuity
// constraint; NoneExists only after exhaustion.
AmSearch search_am_transition(const Relation& B,
                              std::size_t max_combinations = 1u << 20);

struct BehEquiv {
  enum class Verdict { True, False, Indeterminate };
  Verdict verdict = Verdict::Indeterminate;
  std::string detail;  // quotient failure report when indeterminate
};

// Decided via the finite theory quotient of {M, N}; the verified theory maps
// are the witness cospan.
BehEquiv behavioural_equiv(const GeomModel& M, int x, const GeomModel& N, int y,
                           const Signature& sig);

struct EquivComparison {
  Relation lambda_bisim;                       // ↔_Λ as the gfp
  std::vector<std::pair<int, int>> modal;      // ≡_Λ
  std::vector<std::pair<int, int>> behavioural;// ≃ (when determinate)
  bool behavioural_determinate = false;
  // programmatic theorem-hypothesis flags
  bool monotone = false, scott = false, characteristic = false, strong = false;
  bool lambda_subset_modal = false;
  bool three_way_coincidence = false;  // meaningful when all flags hold
  std::string detail;
};

EquivComparison compare_equivalences(const GeomModel& M, const GeomModel& N,
                                     const Signature& sig);

}  // namespace geomodal

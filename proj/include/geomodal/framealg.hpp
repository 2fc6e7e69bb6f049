#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geomodal/finspace.hpp"

namespace geomodal {

/// Lattice term over named generators, built with finite meets and joins.
/// Meet of nothing is top, join of nothing is bottom.
struct LatticeTerm {
  enum class Kind { Gen, Meet, Join };
  Kind kind = Kind::Gen;
  std::string gen;
  std::vector<LatticeTerm> children;

  static LatticeTerm generator(std::string name) {
    LatticeTerm t;
    t.kind = Kind::Gen;
    t.gen = std::move(name);
    return t;
  }
  static LatticeTerm meet(std::vector<LatticeTerm> ts) {
    LatticeTerm t;
    t.kind = Kind::Meet;
    t.children = std::move(ts);
    return t;
  }
  static LatticeTerm join(std::vector<LatticeTerm> ts) {
    LatticeTerm t;
    t.kind = Kind::Join;
    t.children = std::move(ts);
    return t;
  }
  static LatticeTerm top() { return meet({}); }
  static LatticeTerm bot() { return join({}); }
};

enum class RelKind { Leq, Eq };

struct TermRelation {
  LatticeTerm lhs;
  RelKind kind;
  LatticeTerm rhs;
};

struct Presentation {
  std::vector<std::string> generators;
  std::vector<TermRelation> relations;

  std::optional<int> generator_index(const std::string& name) const;
  // Every generator mentioned in relations must be declared.
  void validate() const;
};

// --- frame-algebraic predicates: well-inside, regularity, negation

// ⋁{ b | a ∧ b = ⊥ }
int negation(const FinFrame& F, int a);
// ∃c. c∧a=⊥ and c∨b=⊤. Also evaluates ∼a ∨ b = ⊤ and raises InternalError if
// the two criteria disagree.
bool well_inside(const FinFrame& F, int a, int b);
bool is_regular_element(const FinFrame& F, int a);
bool is_regular_frame(const FinFrame& F);

// --- the monotone-neighbourhood presentations

// Generators box(a), dia(a) for a in F; relation instances of the box/diamond
// laws fully instantiated over F². Directed-join instances (over directed
// subsets, which finitely carry their maximum) only when include_directed.
Presentation present_M(const FinFrame& F, bool include_directed = false);
std::string m_box_name(const FinFrame& F, int a);
std::string m_dia_name(const FinFrame& F, int a);

// Generators: all pairs (γ,δ) of subsets of F, join-semilattice structure
// encoded as defining equalities against the atomic pairs.
Presentation present_Mprime(const FinFrame& F, bool include_directed = false);
std::string mprime_gen_name(const FinFrame& F, Mask gamma, Mask delta);

// --- presentation solving

struct PresentationPoints {
  FinSpace space;                       // one point per satisfying assignment
  std::vector<std::vector<std::uint8_t>> assignments;  // per point, gen -> 0/1
  std::vector<Mask> gen_open;           // g̃ per generator
};

// Enumerates assignments generators -> 2 under which every relation holds,
// i.e. the points of the presented frame, without constructing it.
// DFS with definite-relation checks; max_generators guards the search width.
PresentationPoints presentation_points(const Presentation& P,
                                       int max_generators = 24);

struct PresentedFrame {
  FinFrame frame;
  std::vector<int> gen_elem;  // generator -> element of the quotient
};

// Free bounded distributive lattice on the generators (canonical monotone-DNF
// antichains), quotiented by the smallest lattice congruence containing the
// relations. Bound: 5 generators.
PresentedFrame presented_frame_small(const Presentation& P,
                                     int max_generators = 5);

// --- presentation comparison and the explicit duality maps

struct IsoReport {
  bool homeomorphic = false;
  std::optional<ContMap> homeo;       // pt(P) -> pt(Q) when found
  // Filled when a D_kh comparison context is supplied:
  bool zeta_checked = false;
  bool zeta_is_homeo = false;         // p ↦ W_p against the supplied space
  bool eta_checked = false;
  bool eta_is_frame_iso = false;      // □a ↦ ⊡̄a, ◇a ↦ ⟋a on the open-set frames
  std::string detail;
};

/// Context for verifying the explicit monotone-duality maps: Q must be
/// present_M(opn X) and dkh_space the candidate D_kh X. dkh_collections[i]
/// is the collection of subsets of X encoded by point i of dkh_space.
struct DkhComparison {
  FinSpace base_space;                       // X
  FinSpace dkh_space;                        // candidate D_kh X
  std::vector<std::vector<Mask>> dkh_collections;
};

IsoReport compare_presentations(const Presentation& P, const Presentation& Q,
                                int max_generators = 24,
                                const DkhComparison* ctx = nullptr);

// The ζ/η leg alone: Q must be the M-presentation of opn(ctx.base_space).
IsoReport verify_dkh_duality(const Presentation& Q, const DkhComparison& ctx,
                             int max_generators = 24);

// Homeomorphism search between small spaces: subbase-profile matching first,
// exhaustive search as fallback.
std::optional<ContMap> find_homeomorphism(const FinSpace& X, const FinSpace& Y);

// Explicit isomorphism search on small frames (order-preserving bijection).
bool frames_isomorphic(const FinFrame& F, const FinFrame& G);

}  // namespace geomodal

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "geomodal/finspace.hpp"

namespace geomodal {

/// Value of a topological functor at a space: the carrier space plus the
/// payload decoding each carrier point. Which payload is filled depends on
/// the functor (closed subset for the Vietoris functor, collection of
/// subsets for the monotone-neighbourhood functor).
struct Carrier {
  FinSpace space;
  std::vector<Mask> closed_sets;
  std::vector<std::vector<Mask>> collections;  // sorted subset masks
};

/// One element of a functor carrier, carrier-free: a closed subset (Vietoris),
/// a collection of subsets (monotone neighbourhood), or a small integer
/// (trivial functor's 0/1, KKP carrier point index). Model semantics works on
/// payloads so that big carriers (e.g. the monotone functor over a 6-point
/// disjoint union) never need enumeration.
struct TElem {
  std::variant<Mask, std::vector<Mask>, int> v;

  bool operator==(const TElem& o) const { return v == o.v; }
  bool operator<(const TElem& o) const { return v < o.v; }
  static TElem closed(Mask m) { return TElem{m}; }
  static TElem collection(std::vector<Mask> c) { return TElem{std::move(c)}; }
  static TElem index(int i) { return TElem{i}; }
};

/// A concrete endofunctor on finite spaces. Carriers are cached per space;
/// the action on maps is computed through the ambient set-level action, so
/// preimages of carrier subsets are available even where the action leaves
/// the carrier (needed by the classification machinery).
class TopFunctor {
 public:
  virtual ~TopFunctor() = default;
  const std::string& name() const { return name_; }
  /// Theorem sweeps for a KH-scoped functor quantify over discrete spaces.
  bool kh_scoped() const { return kh_scoped_; }
  int max_space_points() const { return max_points_; }

  const Carrier& carrier(const FinSpace& X) const;

  /// Ambient action on one carrier element; nullopt when the image is not a
  /// carrier element of the target.
  virtual std::optional<int> apply_elem(const ContMap& f, int elem) const = 0;

  /// Carrier-to-carrier map. InternalError when the action leaves the target
  /// carrier or fails continuity (outside the functor's scope this signals a
  /// misuse, within it a bug).
  ContMap on_map(const ContMap& f) const;

  /// (T f)^{-1}(c) for c a subset of carrier(f.target).space.
  Mask preimage(const ContMap& f, Mask c) const;

  /// The object classifying opens for this functor's scope: the Sierpinski
  /// space, or the discrete two-point space when KH-scoped.
  FinSpace classifier() const;

  virtual std::vector<std::string> builtin_lifting_names() const = 0;
  virtual int builtin_arity(const std::string& lifting) const;
  /// Image of the builtin lifting at an open tuple, as a subset of
  /// carrier(X).space.
  virtual Mask eval_lifting(const std::string& lifting, const FinSpace& X,
                            const std::vector<Mask>& args) const = 0;
  /// Set-level formula of the builtin on arbitrary subsets (strong version).
  virtual Mask eval_lifting_any(const std::string& lifting, const FinSpace& X,
                                const std::vector<Mask>& args) const;

  // --- payload-level interface (no carrier enumeration) ---

  virtual TElem elem_payload(const FinSpace& X, int carrier_index) const;
  virtual std::optional<int> payload_index(const FinSpace& X, const TElem& e) const;
  /// e is a carrier element of T X.
  virtual bool payload_valid(const FinSpace& X, const TElem& e) const;
  /// Ambient action; nullopt when the image is not in the target carrier.
  virtual std::optional<TElem> payload_apply(const ContMap& f, const TElem& e) const;
  /// e ∈ λ_X(args) for a builtin lifting.
  virtual bool payload_in_lifting(const std::string& lifting, const FinSpace& X,
                                  const std::vector<Mask>& args,
                                  const TElem& e) const;
  virtual std::string payload_name(const FinSpace& X, const TElem& e) const;

  std::string element_name(const FinSpace& X, int elem) const {
    return carrier(X).space.point_name(elem);
  }

 protected:
  TopFunctor(std::string name, bool kh_scoped, int max_points)
      : name_(std::move(name)), kh_scoped_(kh_scoped), max_points_(max_points) {}
  virtual Carrier make_carrier(const FinSpace& X) const = 0;

 private:
  std::string name_;
  bool kh_scoped_;
  int max_points_;
  mutable std::map<std::pair<std::vector<std::string>, std::vector<Mask>>, Carrier>
      cache_;
};

using FunctorPtr = std::shared_ptr<const TopFunctor>;

FunctorPtr vietoris_functor();
FunctorPtr dkh_functor();
FunctorPtr trivial_functor();

/// X is a compact Hausdorff space at finite scale iff it is discrete.
bool is_finite_kh(const FinSpace& X);

// Carrier of the monotone-neighbourhood functor without the space (the
// collections satisfying the closed-core/open-superset condition).
std::vector<std::vector<Mask>> dkh_collections(const FinSpace& X);
// The condition for a single collection, carrier-free.
bool dkh_collection_valid(const FinSpace& X, const std::vector<Mask>& W);

// --- Set functors (powerset, monotone) -------------------------------------

/// Elements are canonical codes: a subset mask for the powerset functor, a
/// mask over subset positions (bit u set iff the subset with mask u is in the
/// collection) for the monotone functor.
class SetFunctor {
 public:
  virtual ~SetFunctor() = default;
  const std::string& name() const { return name_; }
  virtual std::vector<std::uint64_t> carrier(int n) const = 0;
  virtual std::uint64_t apply(const std::vector<int>& f, int n_src, int n_tgt,
                              std::uint64_t elem) const = 0;
  virtual std::vector<std::string> lifting_names() const = 0;
  /// Indices (into carrier(n)) selected by the lifting at a subset tuple.
  virtual std::vector<int> eval_lifting(const std::string& lifting, int n,
                                        const std::vector<Mask>& args) const = 0;
  virtual std::string element_name(int n, std::uint64_t elem,
                                   const std::vector<std::string>& points) const = 0;

 protected:
  explicit SetFunctor(std::string name) : name_(std::move(name)) {}

 private:
  std::string name_;
};

using SetFunctorPtr = std::shared_ptr<const SetFunctor>;

// name ∈ {powerset, monotone}; ValidationError otherwise.
SetFunctorPtr set_functor(const std::string& name);

// --- coalgebras and models --------------------------------------------------

struct Coalgebra {
  FinSpace space;
  FunctorPtr functor;
  std::vector<TElem> gamma;  // point -> functor element payload
};

Coalgebra coalgebra_from_indices(FinSpace space, FunctorPtr functor,
                                 const std::vector<int>& gamma_indices);

// gamma total, carrier-valued (payload_valid) and continuous (preimages of
// the builtin subbase cells are open).
void validate_coalgebra(const Coalgebra& A);
bool gamma_continuous(const Coalgebra& A);

struct GeomModel {
  Coalgebra coalg;
  std::map<std::string, Mask> valuation;  // proposition letter -> open

  const FinSpace& space() const { return coalg.space; }
};

// coalgebra valid and every valuation image open.
void validate_model(const GeomModel& M);

// γ' ∘ f = Tf ∘ γ under the element payloads. ValidationError on functor
// mismatch.
bool is_coalg_morphism(const ContMap& f, const Coalgebra& A, const Coalgebra& B);

// coalgebra morphism + f⁻¹ ∘ V' = V.
bool is_model_morphism(const ContMap& f, const GeomModel& M, const GeomModel& N);

struct DisjointUnion {
  GeomModel model;
  std::vector<ContMap> inclusions;  // one per input model, into model.space
};

// Point names are prefixed "k:" with k the model index. Props missing from a
// part are empty there.
DisjointUnion disjoint_union(const std::vector<GeomModel>& models);

// --- product/subspace helpers ----------------------------------------------

struct ProductSpace {
  FinSpace space;  // point (i,j) at index i*|Y|+j, named "(x,y)"
  ContMap pi1, pi2;
};

ProductSpace product_space(const FinSpace& X, const FinSpace& Y);

struct Subspace {
  FinSpace space;
  ContMap inclusion;
  std::vector<int> ambient_index;  // subspace point -> ambient point
};

Subspace subspace(const FinSpace& X, Mask points);

}  // namespace geomodal

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "geomodal/common.hpp"

namespace geomodal {

/// A finite topological space: named points plus the full lattice of opens,
/// each open a canonical bitmask over the point order. Immutable after
/// construction; copies share the payload.
class FinSpace {
 public:
  // the empty space; its one open is ∅ = the full set
  FinSpace() : FinSpace(std::vector<std::string>{}, std::vector<Mask>{0}) {}

  // Closure of the subbase under finite intersections and arbitrary unions
  // (computed via minimal open neighbourhoods, not pairwise closure).
  // Throws ValidationError on duplicate point names, ResourceError when the
  // topology would exceed max_opens.
  static FinSpace from_subbase(std::vector<std::string> points,
                               const std::vector<Mask>& subbase,
                               std::size_t max_opens = kDefaultMaxOpens);

  // Validates that the given family is already a topology (contains ∅ and the
  // full set, closed under pairwise ∩ and ∪); used by the file loader.
  static FinSpace from_opens(std::vector<std::string> points,
                             std::vector<Mask> opens);

  static FinSpace discrete(std::vector<std::string> points);
  static FinSpace sierpinski();        // points 0,1; opens ∅,{1},all
  static FinSpace two_trivial();       // 2 points, trivial topology
  static FinSpace one_point(const std::string& name = "*");

  int size() const { return static_cast<int>(d_->points.size()); }
  Mask full() const { return full_mask(size()); }
  const std::vector<std::string>& points() const { return d_->points; }
  const std::string& point_name(int i) const { return d_->points[i]; }
  std::optional<int> point_index(const std::string& name) const;

  const std::vector<Mask>& opens() const { return d_->opens; }
  bool is_open(Mask u) const;
  bool is_closed(Mask u) const { return is_open(full() & ~u); }
  Mask closure(Mask u) const;
  /// Minimal open neighbourhood of point i.
  Mask min_nbhd(int i) const { return d_->min_nbhd[i]; }

  bool is_discrete() const;
  bool is_t0() const;

  std::string subset_name(Mask u) const;  // "{x,y}" in point order

  bool operator==(const FinSpace& o) const {
    return d_->points == o.d_->points && d_->opens == o.d_->opens;
  }
  bool operator!=(const FinSpace& o) const { return !(*this == o); }

  static constexpr std::size_t kDefaultMaxOpens = std::size_t{1} << 20;

 private:
  struct Data {
    std::vector<std::string> points;
    std::vector<Mask> opens;     // sorted, unique
    std::vector<Mask> min_nbhd;  // U(x) per point
  };
  explicit FinSpace(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  FinSpace(std::vector<std::string> pts, std::vector<Mask> opens);
  std::shared_ptr<const Data> d_;
};

/// A total map between finite spaces; continuity is a separate check.
struct ContMap {
  FinSpace source;
  FinSpace target;
  std::vector<int> assignment;  // source point index -> target point index

  ContMap() = default;
  ContMap(FinSpace src, FinSpace tgt, std::vector<int> asg);
  static ContMap identity(const FinSpace& X);

  int operator()(int i) const { return assignment[i]; }
  Mask image(Mask u) const;
  Mask preimage(Mask v) const;
  bool is_bijective() const;
  ContMap compose_after(const ContMap& first) const;  // this ∘ first
};

bool check_continuous(const ContMap& f);
bool is_homeomorphism(const ContMap& f);

/// A finite bounded distributive lattice standing in for a frame.
/// Stores the order plus precomputed meet/join tables.
class FinFrame {
 public:
  FinFrame() = default;

  // leq given as a full reflexive-transitive-antisymmetric matrix.
  // Validates poset + lattice + distributivity laws.
  static FinFrame from_leq(std::vector<std::string> elems,
                           std::vector<std::vector<bool>> leq);
  static FinFrame two();  // {bot, top}

  int size() const { return static_cast<int>(d_->elems.size()); }
  const std::vector<std::string>& elements() const { return d_->elems; }
  const std::string& element_name(int i) const { return d_->elems[i]; }
  std::optional<int> element_index(const std::string& name) const;

  bool leq(int a, int b) const { return d_->leq[a][b]; }
  int meet(int a, int b) const { return d_->meet[static_cast<std::size_t>(a) * size() + b]; }
  int join(int a, int b) const { return d_->join[static_cast<std::size_t>(a) * size() + b]; }
  int bot() const { return d_->bot; }
  int top() const { return d_->top; }
  int meet_all(const std::vector<int>& xs) const;
  int join_all(const std::vector<int>& xs) const;

  bool is_directed(const std::vector<int>& xs) const;
  // Maximum of a verified-directed set; ValidationError on non-directed input.
  int directed_join(const std::vector<int>& xs) const;

  bool is_boolean() const;  // every element complemented

  static constexpr int kMaxElements = 4096;

 private:
  struct Data {
    std::vector<std::string> elems;
    std::vector<std::vector<bool>> leq;
    std::vector<int> meet, join;  // n*n tables
    int bot = 0, top = 0;
  };
  explicit FinFrame(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  static FinFrame build(std::vector<std::string> elems,
                        std::vector<std::vector<bool>> leq, bool trusted);
  std::shared_ptr<const Data> d_;
  friend FinFrame opn_frame(const FinSpace&);
};

/// An element mapping between frames; the hom laws are a separate check.
struct FrameHom {
  FinFrame source;
  FinFrame target;
  std::vector<int> assignment;

  int operator()(int i) const { return assignment[i]; }
};

// Preserves bot, top, binary meet and binary join (finitely: all finite meets
// and arbitrary joins).
bool check_frame_hom(const FrameHom& h);

FinFrame opn_frame(const FinSpace& X);
// opn f = f^{-1}, from opens of the target to opens of the source.
// ValidationError if f is not continuous.
FrameHom opn_map(const ContMap& f);

/// Points of a frame (homs into 2) together with the spatialization data.
struct FramePoints {
  FinSpace space;                           // the point space
  std::vector<Mask> elem_open;              // ã per frame element
  std::vector<std::vector<std::uint8_t>> homs;  // per point: element -> 0/1
};

// Default path enumerates join-prime elements (exact for any finite lattice);
// brute_force enumerates all 2^|F| candidate assignments, the oracle of
// record, and is capped at |F| <= 22.
FramePoints frame_points(const FinFrame& F, bool brute_force = false);

struct SobrifyResult {
  FinSpace sober_space;  // pt(opn X)
  ContMap unit;          // x ↦ p_x
  bool is_sober;         // unit is a homeomorphism
};

SobrifyResult sobrify(const FinSpace& X);

// --- exhaustive enumeration helpers (finite topologies ↔ preorders) ---

// All topologies on the given points, one per reflexive-transitive relation.
std::vector<FinSpace> all_topologies(const std::vector<std::string>& points);
// All continuous maps X -> Y.
std::vector<ContMap> all_continuous_maps(const FinSpace& X, const FinSpace& Y);

}  // namespace geomodal

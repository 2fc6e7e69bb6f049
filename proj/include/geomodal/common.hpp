#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace geomodal {

// Subsets of a space's point list (or of a frame's element list), as bitmasks
// over the declared order. Everything in this library lives below 64 points;
// constructions that would outgrow this raise ResourceError instead.
using Mask = std::uint64_t;

constexpr int kMaxPoints = 64;

inline Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }
inline bool mask_has(Mask m, int i) { return (m >> i) & 1u; }
inline int mask_count(Mask m) { return __builtin_popcountll(m); }

struct Error : std::runtime_error {
  enum class Kind { Validation, Resource, Internal };
  Kind kind;
  Error(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

// Bad input: malformed files, unknown names, violated preconditions.
struct ValidationError : Error {
  explicit ValidationError(const std::string& msg) : Error(Kind::Validation, msg) {}
};

// Input is well-formed but exceeds a declared enumeration bound.
struct ResourceError : Error {
  explicit ResourceError(const std::string& msg) : Error(Kind::Resource, msg) {}
};

// A theorem-backed internal check failed; signals a bug, not bad input.
struct InternalError : Error {
  explicit InternalError(const std::string& msg) : Error(Kind::Internal, msg) {}
};

}  // namespace geomodal

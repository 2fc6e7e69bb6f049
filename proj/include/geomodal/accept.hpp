#pragma once

#include <iosfwd>

#include "geomodal/bisim.hpp"

namespace geomodal {

struct AcceptanceItem {
  std::string id;
  std::string title;
  bool pass = false;
  std::string detail;
};

/// Runs the acceptance criteria. suite = "all" or a single criterion number.
/// max_points <= 0 keeps every criterion at its pinned size; a smaller cap
/// shrinks the exhaustive sweeps (reported in the detail), for smoke runs
/// only. The seed drives the randomized criteria.
std::vector<AcceptanceItem> run_acceptance(const std::string& suite,
                                           int max_points, unsigned seed);

// Prints "PASS/FAIL <id>: <title>" lines; returns true when everything passed.
bool print_acceptance(const std::vector<AcceptanceItem>& items, std::ostream& out);

}  // namespace geomodal

#pragma once

#include <map>
#include <string>
#include <vector>

#include "geomodal/finspace.hpp"

namespace geomodal::testutil {

// Every finite distributive lattice is the up-set lattice of its poset of
// join-irreducibles (Birkhoff), so the open-set frames of topologies on up
// to 5 points exhaust the bounded distributive lattices with at most 6
// elements. Deduplicated by the order matrix to keep the sweeps lean.
inline const std::vector<FinFrame>& all_small_frames(int max_elems,
                                                     int max_points = 5) {
  static std::map<std::pair<int, int>, std::vector<FinFrame>> cache;
  auto it = cache.find({max_elems, max_points});
  if (it != cache.end()) return it->second;
  std::vector<FinFrame> out;
  std::map<std::string, bool> seen;
  std::vector<std::string> pool = {"a", "b", "c", "d", "e"};
  for (int n = 0; n <= max_points; ++n) {
    std::vector<std::string> pts(pool.begin(), pool.begin() + n);
    for (const auto& X : all_topologies(pts)) {
      if (static_cast<int>(X.opens().size()) > max_elems) continue;
      FinFrame F = opn_frame(X);
      std::string key;
      key += static_cast<char>('0' + F.size());
      for (int a = 0; a < F.size(); ++a)
        for (int b = 0; b < F.size(); ++b) key += F.leq(a, b) ? '1' : '0';
      if (seen.emplace(std::move(key), true).second) out.push_back(std::move(F));
    }
  }
  return cache.emplace(std::make_pair(max_elems, max_points), std::move(out))
      .first->second;
}

}  // namespace geomodal::testutil

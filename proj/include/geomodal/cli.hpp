#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace geomodal {

// Exit codes: 0 verdict true / success, 1 verdict false (with witness),
// 2 usage or validation error, 3 resource bound. Errors carry a
// machine-readable {"error": {...}} payload.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace geomodal

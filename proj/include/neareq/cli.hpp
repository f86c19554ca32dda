// Command-line front end. Exit codes: 0 success / within bound, 1 semantic
// negative (bound exceeded or hypothesis fails), 2 input error, 3 unsupported
// input (e.g. a point set with dim != 2).
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace neareq::cli {

inline constexpr const char* kToolVersion = "0.1.0";

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace neareq::cli

#pragma once

#include <ostream>
#include <string>
#include <vector>

// Command-line front end. Exit codes: 0 = success / property verified,
// 1 = mathematical failure (invalid cocycle, refuted property, no witness),
// 2 = usage, parse or capacity error.

namespace centext::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace centext::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace greenrel::cli {

/// Runs one CLI command. Exit code 0 for success / true verdicts, 1 for
/// false verdicts (witness printed), 2 for usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace greenrel::cli

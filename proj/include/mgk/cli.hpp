#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mgk/synthetic.hpp"

namespace mgk {

inline constexpr const char* kVersion = "mgk 0.3.0";

// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure,
// 4 identifiability failure (boundary tie under the error policy). Failures
// print a one-line JSON object on `err`.
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);
int cli_main(int argc, char** argv);

// Scenario sections in a key=value config file look like
//
//   [scenario.banded40]
//   pattern = banded
//   d = 40
//   t = 10
//
// Unknown keys are rejected.
SyntheticScenario load_scenario(const std::filesystem::path& path,
                                const std::string& name);

}  // namespace mgk

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dynpair {

// Full command-line front end, callable in-process (the corpus runner and
// the tests reuse it). Exit codes: 0 for computed verdicts (refutations
// included), 1 for usage/parse/semantic errors, 2 for resource-budget
// overruns.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dynpair

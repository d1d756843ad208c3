#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "coxaut/coxeter.hpp"

namespace coxaut {

enum ExitCode { kExitOk = 0, kExitUsage = 1, kExitIndeterminate = 2, kExitInternal = 3 };

/// Entry point of the command-line tool; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Number of reduced words of each length 0..k, by exhaustive search.
std::vector<unsigned long long> brute_force_reduced_counts(const CoxeterSystem& sys, int k);

}  // namespace coxaut

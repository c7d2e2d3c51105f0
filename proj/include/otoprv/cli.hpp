#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "otoprv/alns.hpp"
#include "otoprv/exact.hpp"
#include "otoprv/model.hpp"

namespace otoprv::cli {

enum ExitCode : int { kOk = 0, kValidationFailure = 1, kUsageError = 2, kIoError = 3 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline const std::vector<std::string> kAlgorithms{"greedy", "seqop", "alns", "exact"};

struct SolveOutput {
    Solution solution;
    std::vector<TraceRow> trace;
    double wall_time_s = 0.0;
};

/// Runs one of kAlgorithms; the sequential-OP and ALNS runs use `config.seed` and
/// `config.initial`. Throws UsageError for an unknown algorithm name.
SolveOutput solve_with(const Instance& instance, const std::string& algorithm,
                       const SearchConfig& config, const ExactLimits& limits = {});

/// Entry point shared by the executable and the tests; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace otoprv::cli

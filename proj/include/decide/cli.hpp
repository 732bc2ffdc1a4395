#pragma once

// File formats and command implementations behind the `decide` tool.
// Everything here works on double precision.

#include "decide/decide.hpp"

#include "json.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace decide::cli {

using json = nlohmann::json;

enum ExitCode : int { kSuccess = 0, kUsage = 2, kParse = 3, kSolver = 4 };

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Unreadable, syntactically malformed or semantically invalid input file.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

/// Diagnostics sink for stderr, filtered by DECIDE_LOG.
class Log {
  public:
    Log(std::ostream& err, LogLevel level) : err_(err), level_(level) {}
    static LogLevel level_from_env();

    void error(const std::string& msg) const;
    void warn(const std::string& msg) const;
    void debug(const std::string& msg) const;

  private:
    std::ostream& err_;
    LogLevel level_;
};

struct ProblemFile {
    DecisionProblem<double> problem;
    std::optional<Prior<double>> prior;
    std::optional<SamplingModel<double>> sampling;
    std::optional<IdentificationPartition> regions;
    double tolerance = tol::equivalence;
    std::vector<std::string> warnings;

    /// Explicit regions if given, otherwise the partition computed from a
    /// finite sampling model, otherwise nothing.
    std::optional<IdentificationPartition> partition() const;
    std::string partition_source() const;
};

ProblemFile parse_problem(const std::string& text);
ProblemFile load_problem(const std::string& path);

StatisticalDecisionFunction<double> parse_sdf(const std::string& text, const ProblemFile& file);
StatisticalDecisionFunction<double> load_sdf(const std::string& path, const ProblemFile& file);

enum class Mode { Pure, Mixed };

/// --scope value: full, block:<state label> or exante.
struct ScopeSpec {
    enum Kind { Full, Block, ExAnte } kind = Full;
    std::string state;

    static ScopeSpec parse(const std::string& text);
};

json regions_report(const ProblemFile& file);
json solve_report(const ProblemFile& file, Criterion criterion, Mode mode, const ScopeSpec& scope);
json binary_report(const ProblemFile& file, const ScopeSpec& scope, std::vector<std::string>& warnings);
json simulate_report(const ProblemFile& file, const StatisticalDecisionFunction<double>& sdf,
                     std::int64_t reps, std::uint64_t seed, int workers);

/// Serializes a choice distribution as a threshold sdf-file document.
json device_document(const ChoiceDistribution<double>& delta);

/// Runs the tool with `args` (program name excluded), writing the JSON
/// report to `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace decide::cli

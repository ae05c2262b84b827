#pragma once

// The bellmax command-line harness: argument parsing, evaluation records,
// CSV/JSON reports and the parallel sweep engine. `run` is the whole
// program; main() only forwards argv to it.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "bellmax/bellman.hpp"

namespace bellmax::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitDomain = 1,
  kExitNumerical = 2,
  kExitUsage = 64,
  kExitIo = 74,
};

/// Malformed flag value or sweep configuration.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input could not be read or an output could not be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs the program. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// ---------------------------------------------------------------- parsing

double parse_number(std::string_view text);
/// "p1:F1,p2:F2,..."
std::vector<WeakConstraint> parse_weak(std::string_view text);
/// "pow:R" or "maxpow:R:L"
OuterFunction parse_outer(std::string_view text);
/// "pow:S", the exponent of h(t) = t^S
double parse_weight(std::string_view text);
/// "b1:v1,b2:v2,..." with right endpoints b_i ending at 1.
StepFunction parse_step(std::string_view text);

/// %.17g
std::string format_number(double x);

// ---------------------------------------------------------------- records

/// One evaluated query as it appears in CSV and JSON reports.
struct Record {
  BellmanQuery query;
  std::optional<BellmanResult> result;
  std::string error_kind;  // "domain", "unsupported", "numerical", "precondition"
  std::string error;
  std::optional<double> oracle;
  std::optional<double> rel_err;
  std::optional<bool> pass;
  nlohmann::json checks = nlohmann::json::object();
  bool check_failed = false;
  std::optional<double> wall_time;
};

/// The exact CSV header line, without a trailing newline.
std::string_view csv_header();
std::string csv_row(const Record& rec);
nlohmann::json to_json(const Record& rec);

Record evaluate_record(const BellmanQuery& query);

// ---------------------------------------------------------------- sweep

struct SweepConfig {
  QueryKind kind = QueryKind::Thm4;
  // Axes in lexicographic order; an unused axis holds no values.
  std::vector<double> p, q, r, F, f, L, k;
  std::vector<WeakConstraint> weak;
  OuterFunction G = OuterFunction::power(1.0);
  double weight_exponent = 0.0;
  bool oracle = false;
  bool continuity = false;
  bool squeeze = false;
  int squeeze_trials = 200;
  double tolerance = 1e-8;
  double continuity_tolerance = 1e-10;
  std::optional<std::string> out;
  std::uint64_t seed = 0;
  nlohmann::json source;
};

/// Throws UsageError on a malformed or incomplete configuration.
SweepConfig parse_sweep_config(const nlohmann::json& doc);

/// Grid points in lexicographic order over (p, q, r, F, f, L, k).
std::vector<BellmanQuery> expand_grid(const SweepConfig& config);

/// Evaluates every grid point on `jobs` workers; the result order is the
/// grid order.
std::vector<Record> run_sweep(const SweepConfig& config, unsigned jobs, bool timing = false);

struct SweepSummary {
  std::size_t rows = 0;
  std::size_t pass_count = 0;
  std::size_t fail_count = 0;
  std::size_t unchecked_count = 0;
  std::size_t skipped_count = 0;  // outside the domain of the query kind
  std::size_t error_count = 0;    // numerical failures
  std::size_t check_fail_count = 0;
};

SweepSummary summarize(const std::vector<Record>& records);

nlohmann::json sweep_report(const SweepConfig& config, const std::vector<Record>& records,
                            std::optional<double> wall_time = std::nullopt);

}  // namespace bellmax::cli

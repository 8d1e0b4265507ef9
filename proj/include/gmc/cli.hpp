#ifndef GMC_CLI_HPP_
#define GMC_CLI_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gmc/mc_engine.hpp"

namespace gmc::cli {

inline constexpr std::string_view kToolkitVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kCsvHeader =
    "suite,gamma,p,t,n_modes,m_points,replicas,seed,estimate,std_error,exact,zscore,ks,status";
inline constexpr std::uint64_t kDefaultSeed = 1;

enum class Format { Csv, Json };

/// Run parameters. List-valued fields are unset until given; an explicitly
/// empty list is a validation error.
struct RunConfig {
  std::optional<std::vector<double>> gamma;
  std::optional<std::vector<double>> p;
  std::optional<std::vector<double>> t;
  std::size_t n_modes = 1024;
  std::size_t m_points = 8192;
  std::size_t replicas = 10000;
  std::optional<std::uint64_t> seed;
  unsigned workers = 0;
  std::string output_path;
  Format format = Format::Csv;
  bool timing = false;
};

/// Sets one field from its textual value. Keys: gamma, p, t, n_modes,
/// m_points, replicas, seed, workers, out, format (dashes accepted for
/// underscores). Throws ConfigError naming the field.
void set_field(RunConfig& config, std::string_view key, std::string_view value);

/// Flat key=value text; '#' starts a comment; lists are comma separated.
RunConfig parse_config_text(std::string_view text);
RunConfig load_config_file(const std::string& path);

enum class Suite {
  VerifyMoments,
  VerifyDensity,
  VerifyShift,
  VerifyBpz,
  VerifyCorollary,
  VerifyConjecture,
  Critical,
  MaxGff,
  Rmt,
  Tail,
};

std::optional<Suite> suite_from_name(std::string_view name);
std::string_view suite_name(Suite suite);
std::vector<Suite> all_suites();

/// Suite-specific checks on top of the field parsers. Throws ConfigError.
void validate(const RunConfig& config, Suite suite);

/// Seed from the config, else GMC_CIRCLE_SEED, else kDefaultSeed.
std::uint64_t resolve_seed(const RunConfig& config);

struct ReportRow {
  std::string suite;  // "<subcommand>.<check>"
  std::optional<double> gamma;
  std::optional<double> p;
  std::optional<double> t;
  std::optional<std::size_t> n_modes;
  std::optional<std::size_t> m_points;
  std::optional<std::size_t> replicas;
  std::uint64_t seed = 0;
  std::optional<double> estimate;
  std::optional<double> std_error;
  std::optional<double> exact;
  std::optional<double> zscore;
  std::optional<double> ks;
  mc::Status status = mc::Status::DerivedOracle;
  /// Unset for informational rows (e.g. coarse ladder rungs).
  std::optional<bool> pass;
};

struct SuiteResult {
  std::string suite;
  std::vector<ReportRow> rows;
  std::vector<std::string> warnings;
};

/// Runs a validated suite. Deterministic in (config, resolved seed).
SuiteResult run_suite(Suite suite, const RunConfig& config, std::uint64_t seed);

std::string render_csv(const SuiteResult& result);
std::string render_json(const SuiteResult& result, std::uint64_t seed,
                        std::optional<double> wall_seconds);

/// Rows with pass == false that are not conjecture-level.
std::vector<const ReportRow*> hard_failures(const SuiteResult& result);
/// Conjecture-level rows with pass == false.
std::vector<const ReportRow*> soft_failures(const SuiteResult& result);

/// 0: all non-conjecture checks passed; 1: a hard failure.
int exit_code(const SuiteResult& result);

/// Full command-line entry point. Returns 0 / 1 as exit_code, 2 on usage or
/// configuration errors. Reports go to --out or to `out`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gmc::cli

#endif  // GMC_CLI_HPP_

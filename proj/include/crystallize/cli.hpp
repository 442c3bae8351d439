#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace crystallize::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class Command { sample, roots, fraction, paircorr, spacing, vp_table, demo_triple_zero, figure };
enum class Mode { empirical, analytic, asymptotic, all };

std::string to_string(Command c);
std::string to_string(Mode m);

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Usage or configuration problem; exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Command command = Command::vp_table;
  int N = 64;
  int p = 0;
  std::int64_t realizations = 1000;
  std::uint64_t seed = 1;
  double bin_width = 0.05;
  double x_max = 6.0;
  double x_step = 0.01;
  Mode mode = Mode::empirical;
  std::string out_dir = "crystallize-out";
  int threads = 1;
  int which = 1;
  int p_max = 10;
  double a = 0.92;
  int oversample = 16;
  std::string method = "sampled";  // roots: sampled | companion | both
  std::string input;               // roots: polynomial JSON; empty -> sample
  std::int64_t index = 0;          // sample / roots: realization index

  /// Range checks; throws ConfigError naming the offending flag.
  void validate() const;
  nlohmann::json to_json() const;
};

/// Flags override values from --config (a JSON object keyed by flag name
/// without dashes, e.g. {"p": 3, "x-max": 6}). Unknown keys are rejected.
/// Returns nullopt when only help/version was requested (already printed).
std::optional<RunConfig> parse_config(int argc, const char* const* argv);

/// Executes the command. All files are produced in memory first and written
/// to config.out_dir at the end together with manifest.json; on failure
/// nothing is left behind. Returns an exit code.
int run(const RunConfig& config);

/// The in-memory product of a command: file name -> contents, plus the text
/// echoed to stdout. Exposed for tests.
struct Outputs {
  std::map<std::string, std::string> files;
  std::string stdout_text;
};

Outputs compute(const RunConfig& config);

}  // namespace crystallize::cli

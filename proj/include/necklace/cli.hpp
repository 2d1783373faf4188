#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace necklace::cli {

enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 1,
  kIoError = 2,
  kOracleFailure = 3,
};

enum class Format { csv, json };

/// Parsed command line for one subcommand.
struct RunConfig {
  std::string command;
  bool cycle = false;
  std::optional<int> comb_d;
  std::optional<std::string> pearl_file;
  std::string k_spec;
  std::optional<bool> log_spacing;  // unset: log for gap-scan, linear elsewhere
  int range_points = 0;             // 0: about two log points per octave
  std::string d_spec;
  std::string start = "0";
  double horizon_lo = 1.0;
  double horizon_hi = 1e5;
  double ratio = 1.05;
  double eps = 0.1;
  double tau = 0.0;  // <= 0: 1e-8 * max|lambda|
  std::optional<double> bound_c;
  int bound_pairs = 1;
  bool closed_form = false;
  std::string output;
  std::string vectors_out;
  Format format = Format::csv;
  int threads = 0;
};

/// Expands "8", "4,8,16", "a..b". Ranges are log-spaced when log is true
/// (points per range given by `points`, or two per octave when 0), otherwise
/// every integer.
std::vector<int> parse_int_list(const std::string& text, bool log, int points = 0);

/// %.15g formatting used for every CSV number.
std::string format_number(double v);

/// Parses argv-style arguments (without the program name), runs the
/// subcommand and returns the process exit code. Results go to the --output
/// file or to `out`; diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace necklace::cli

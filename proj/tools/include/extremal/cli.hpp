#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include "extremal/modular.hpp"
#include "extremal/st_approx.hpp"

namespace extremal::cli {

enum class Command { Scan, Predict, StHist, ApproxVerify, FourierDump, SympowDump, SmoothedSum };
enum class Format { Csv, Json };

std::string_view to_string(Command c) noexcept;
Command command_from_string(std::string_view name);

struct RunConfig {
  Command command = Command::Scan;
  std::filesystem::path curve_file;
  std::optional<std::pair<u64, u64>> range;
  std::optional<int> M;
  std::optional<int> n_max;
  std::filesystem::path out = "-";  // "-" is stdout
  Format format = Format::Json;
  unsigned threads = 1;

  bool records = false;
  std::optional<double> x;
  std::optional<bool> cm;
  std::size_t bins = 64;
  std::optional<double> alpha;
  std::optional<double> beta;
  Side side = Side::Majorant;

  // Throws ConfigError naming the first missing or invalid field.
  void validate() const;
};

// Keys match the long flag names: curves, lo, hi, M, n, out, format, threads,
// records, x, cm, bins, alpha, beta, side. Only keys present are applied.
void apply_config_file(RunConfig& config, const std::filesystem::path& path,
                       const std::function<bool(std::string_view)>& flag_given);

/// Runs one subcommand. Returns 0 on success, 1 when approx-verify finds a
/// failing bound; library errors propagate as extremal::Error.
int run(const RunConfig& config);

/// run() with errors caught and printed to `err`; the process exit status.
int run_guarded(const RunConfig& config, std::ostream& err);

}  // namespace extremal::cli

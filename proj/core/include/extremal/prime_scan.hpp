#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "extremal/curves.hpp"
#include "extremal/format.hpp"

namespace extremal {

inline constexpr u64 kMaxSieveBound = u64{1} << 40;
inline constexpr u64 kDefaultChunk = u64{1} << 16;

/// Primes in [lo, hi), ascending, by a segmented sieve. hi <= 2^40.
std::vector<u64> primes_in_range(u64 lo, u64 hi);

// Maximal/Minimal name the trace a_p = +[2 sqrt p] / -[2 sqrt p].
enum class Extremal { Maximal, Minimal, NotExtremal };

std::string_view to_string(Extremal e) noexcept;

Extremal classify_extremal(u64 p, i64 a_p);

/// theta in [0, pi] with a_p = 2 sqrt(p) cos(theta).
double theta_of(u64 p, i64 a_p);

struct TraceRecord {
  u64 p;
  i64 a_p;
  double theta;
  Extremal extremal;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

enum class SkipReason { BadReduction, Small };

struct SkippedPrime {
  u64 p;
  SkipReason reason;

  friend bool operator==(const SkippedPrime&, const SkippedPrime&) = default;
};

struct ScanReport {
  u64 x_lo = 0;
  u64 x_hi = 0;
  std::string curve_label;
  u64 n_primes = 0;
  u64 n_maximal = 0;
  u64 n_minimal = 0;
  std::vector<SkippedPrime> skipped_primes;
  std::optional<std::vector<TraceRecord>> records;

  friend bool operator==(const ScanReport&, const ScanReport&) = default;
};

struct ScanOptions {
  bool keep_records = false;
  unsigned threads = 1;
  u64 chunk = kDefaultChunk;
};

/// Every prime in [x_lo, x_hi): good primes p > 3 produce a record, the rest
/// are listed as skipped. Output is identical for any thread count.
ScanReport scan(const CurveQ& curve, u64 x_lo, u64 x_hi, const ScanOptions& options = {});

/// Conjectured count of p <= x with a_p = [2 sqrt p].
double predict_extremal(double x, bool cm);

struct HistogramBin {
  double lo;
  double hi;
  double empirical;
  double mu_st;
};

/// Bins split [0, pi] evenly; bins are (a, b] except the first, [0, b], so
/// an angle on a shared edge is counted in the lower-indexed bin.
std::vector<HistogramBin> st_histogram(const std::vector<TraceRecord>& records, std::size_t bins);

double total_variation(const std::vector<HistogramBin>& hist);

/// Data for the interval-sandwich step over a window [x, 2x):
/// n_maximal <= #{theta_p in [0, 1/M]} whenever cos(1/M) <= 1 - x^{-1/2}.
struct SandwichCheck {
  u64 M;
  bool epsilon_condition;
  u64 n_maximal;
  u64 n_in_interval;

  bool holds() const { return !epsilon_condition || n_maximal <= n_in_interval; }
};

/// M = ceil(x^{1/4} / sqrt(log x)).
u64 sandwich_degree(double x);

SandwichCheck sandwich_check(const std::vector<TraceRecord>& records, double x);

// Output formats; doubles go through format.hpp.
void write_records_csv(std::ostream& out, const std::vector<TraceRecord>& records);
std::string report_to_json(const ScanReport& report);

}  // namespace extremal

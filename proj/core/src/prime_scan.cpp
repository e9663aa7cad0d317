#include "extremal/prime_scan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include <nlohmann/json.hpp>

#include "extremal/errors.hpp"
#include "extremal/parallel.hpp"
#include "extremal/point_count.hpp"
#include "extremal/st_approx.hpp"

namespace extremal {

namespace {

constexpr u64 kSegment = u64{1} << 18;

std::vector<u64> small_primes_upto(u64 n) {
  std::vector<std::uint8_t> composite(n + 1, 0);
  std::vector<u64> primes;
  for (u64 i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (u64 j = i * i; j <= n; j += i) composite[j] = 1;
  }
  return primes;
}

struct ChunkResult {
  std::vector<TraceRecord> records;
  std::vector<SkippedPrime> skipped;
};

}  // namespace

std::vector<u64> primes_in_range(u64 lo, u64 hi) {
  if (hi > kMaxSieveBound) throw Error(ErrorKind::RangeTooLarge, "sieve bound above 2^40");
  if (lo > hi) throw Error(ErrorKind::DomainError, "primes_in_range needs lo <= hi");
  lo = std::max<u64>(lo, 2);
  std::vector<u64> out;
  if (lo >= hi) return out;

  const auto base = small_primes_upto(isqrt(hi - 1));
  std::vector<std::uint8_t> sieve;
  for (u64 seg_lo = lo; seg_lo < hi; seg_lo += kSegment) {
    const u64 seg_hi = std::min(hi, seg_lo + kSegment);
    sieve.assign(seg_hi - seg_lo, 1);
    for (u64 q : base) {
      if (q * q >= seg_hi) break;
      u64 start = std::max(q * q, (seg_lo + q - 1) / q * q);
      for (u64 m = start; m < seg_hi; m += q) sieve[m - seg_lo] = 0;
    }
    for (u64 n = seg_lo; n < seg_hi; ++n)
      if (sieve[n - seg_lo]) out.push_back(n);
  }
  return out;
}

std::string_view to_string(Extremal e) noexcept {
  switch (e) {
    case Extremal::Maximal: return "max";
    case Extremal::Minimal: return "min";
    case Extremal::NotExtremal: return "none";
  }
  return "none";
}

Extremal classify_extremal(u64 p, i64 a_p) {
  const u64 mag = static_cast<u64>(a_p < 0 ? -a_p : a_p);
  if (static_cast<u128>(mag) * mag > static_cast<u128>(4) * p)
    throw Error(ErrorKind::HasseViolation, "a_p = " + std::to_string(a_p) + " at p = " + std::to_string(p));
  const i64 w = static_cast<i64>(hasse_width(p));
  if (a_p == w) return Extremal::Maximal;
  if (a_p == -w) return Extremal::Minimal;
  return Extremal::NotExtremal;
}

double theta_of(u64 p, i64 a_p) {
  const u64 mag = static_cast<u64>(a_p < 0 ? -a_p : a_p);
  if (static_cast<u128>(mag) * mag > static_cast<u128>(4) * p)
    throw Error(ErrorKind::HasseViolation, "a_p = " + std::to_string(a_p) + " at p = " + std::to_string(p));
  const double c = static_cast<double>(a_p) / (2.0 * std::sqrt(static_cast<double>(p)));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

ScanReport scan(const CurveQ& curve, u64 x_lo, u64 x_hi, const ScanOptions& options) {
  if (x_lo >= x_hi) throw Error(ErrorKind::DomainError, "scan needs x_lo < x_hi");
  if (x_hi > kMaxSieveBound) throw Error(ErrorKind::RangeTooLarge, "scan bound above 2^40");
  const u64 chunk = std::max<u64>(options.chunk, 1);
  const u64 n_chunks = (x_hi - x_lo + chunk - 1) / chunk;
  std::vector<ChunkResult> results(n_chunks);

  parallel_for_index(n_chunks, options.threads, [&](std::size_t i) {
    const u64 lo = x_lo + i * chunk;
    const u64 hi = std::min(x_hi, lo + chunk);
    auto& out = results[i];
    for (u64 p : primes_in_range(lo, hi)) {
      if (curve.divides_disc(p)) {
        out.skipped.push_back({p, SkipReason::BadReduction});
        continue;
      }
      if (p <= 3) {
        out.skipped.push_back({p, SkipReason::Small});
        continue;
      }
      i64 a;
      try {
        a = trace_of_frobenius(curve, p).a_p;
      } catch (const Error& e) {
        throw Error(e.kind(), "curve '" + curve.label() + "' at p = " + std::to_string(p) + ": " + e.what());
      }
      // 4p is never a square, so [2 sqrt p] is attained by at most one sign.
      if (hasse_width(p) * hasse_width(p) == 4 * p)
        throw Error(ErrorKind::HasseViolation, "4p is a perfect square at p = " + std::to_string(p));
      out.records.push_back({p, a, theta_of(p, a), classify_extremal(p, a)});
    }
  });

  ScanReport report;
  report.x_lo = x_lo;
  report.x_hi = x_hi;
  report.curve_label = curve.label();
  std::vector<TraceRecord> records;
  for (auto& r : results) {
    for (const auto& rec : r.records) {
      ++report.n_primes;
      if (rec.extremal == Extremal::Maximal) ++report.n_maximal;
      if (rec.extremal == Extremal::Minimal) ++report.n_minimal;
    }
    report.skipped_primes.insert(report.skipped_primes.end(), r.skipped.begin(), r.skipped.end());
    if (options.keep_records) records.insert(records.end(), r.records.begin(), r.records.end());
  }
  if (options.keep_records) report.records = std::move(records);
  return report;
}

double predict_extremal(double x, bool cm) {
  if (!(x > std::numbers::e)) throw Error(ErrorKind::DomainError, "predict_extremal needs x > e");
  const double pi = std::numbers::pi;
  return cm ? (2.0 / (3.0 * pi)) * std::pow(x, 0.75) / std::log(x)
            : (8.0 / (3.0 * pi)) * std::pow(x, 0.25) / std::log(x);
}

std::vector<HistogramBin> st_histogram(const std::vector<TraceRecord>& records, std::size_t bins) {
  if (bins == 0) throw Error(ErrorKind::DomainError, "st_histogram needs at least one bin");
  const double pi = std::numbers::pi;
  std::vector<HistogramBin> hist(bins);
  for (std::size_t i = 0; i < bins; ++i) {
    hist[i].lo = pi * static_cast<double>(i) / static_cast<double>(bins);
    hist[i].hi = i + 1 == bins ? pi : pi * static_cast<double>(i + 1) / static_cast<double>(bins);
    hist[i].empirical = 0.0;
    hist[i].mu_st = mu_st(Interval(hist[i].lo, hist[i].hi));
  }
  if (records.empty()) return hist;
  std::vector<u64> counts(bins, 0);
  for (const auto& r : records) {
    // Bins are (lo, hi] with the first closed at 0: a point on a shared edge
    // counts toward the lower-indexed bin.
    std::size_t idx = 0;
    const double scaled = std::ceil(r.theta / pi * static_cast<double>(bins));
    if (scaled > 1.0) idx = std::min(bins - 1, static_cast<std::size_t>(scaled) - 1);
    while (idx > 0 && r.theta <= hist[idx].lo) --idx;
    while (idx + 1 < bins && r.theta > hist[idx].hi) ++idx;
    ++counts[idx];
  }
  for (std::size_t i = 0; i < bins; ++i)
    hist[i].empirical = static_cast<double>(counts[i]) / static_cast<double>(records.size());
  return hist;
}

double total_variation(const std::vector<HistogramBin>& hist) {
  double tv = 0.0;
  for (const auto& b : hist) tv += std::abs(b.empirical - b.mu_st);
  return 0.5 * tv;
}

u64 sandwich_degree(double x) {
  return static_cast<u64>(std::ceil(std::pow(x, 0.25) / std::sqrt(std::log(x))));
}

SandwichCheck sandwich_check(const std::vector<TraceRecord>& records, double x) {
  SandwichCheck check{};
  check.M = sandwich_degree(x);
  check.epsilon_condition = std::cos(1.0 / static_cast<double>(check.M)) <= 1.0 - 1.0 / std::sqrt(x);
  const double eps = 1.0 / static_cast<double>(check.M);
  for (const auto& r : records) {
    if (r.extremal == Extremal::Maximal) ++check.n_maximal;
    if (r.theta <= eps) ++check.n_in_interval;
  }
  return check;
}

void write_records_csv(std::ostream& out, const std::vector<TraceRecord>& records) {
  out << "p,a_p,theta,extremal\n";
  for (const auto& r : records)
    out << r.p << ',' << r.a_p << ',' << format_double(r.theta) << ',' << to_string(r.extremal) << '\n';
}

std::string report_to_json(const ScanReport& report) {
  using json = nlohmann::ordered_json;
  json j;
  j["x_lo"] = report.x_lo;
  j["x_hi"] = report.x_hi;
  j["curve_label"] = report.curve_label;
  j["n_primes"] = report.n_primes;
  j["n_maximal"] = report.n_maximal;
  j["n_minimal"] = report.n_minimal;
  json skipped = json::array();
  for (const auto& s : report.skipped_primes)
    skipped.push_back({{"p", s.p}, {"reason", s.reason == SkipReason::BadReduction ? "bad" : "small"}});
  j["skipped_primes"] = std::move(skipped);
  if (report.records) {
    json recs = json::array();
    for (const auto& r : *report.records)
      recs.push_back({{"p", r.p}, {"a_p", r.a_p}, {"theta", round_sig12(r.theta)}, {"extremal", to_string(r.extremal)}});
    j["records"] = std::move(recs);
  }
  return j.dump(2);
}

}  // namespace extremal

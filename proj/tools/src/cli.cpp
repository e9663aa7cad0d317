#include "extremal/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "extremal/curves.hpp"
#include "extremal/errors.hpp"
#include "extremal/format.hpp"
#include "extremal/prime_scan.hpp"
#include "extremal/sympow.hpp"

namespace extremal::cli {

namespace {

using json = nlohmann::ordered_json;

Error config_error(const std::string& what) { return Error(ErrorKind::ConfigError, what); }

void write_output(const std::filesystem::path& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw Error(ErrorKind::IoError, "write to '" + path.string() + "' failed");
}

// out.csv -> out.<label>.csv, used when several curves share one --out.
std::filesystem::path per_curve_path(const std::filesystem::path& out, const std::string& label, std::size_t index) {
  if (out == "-") return out;
  const std::string tag = label.empty() ? std::to_string(index) : label;
  auto p = out;
  p.replace_filename(out.stem().string() + "." + tag + out.extension().string());
  return p;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

template <typename F>
auto with_curve_context(const CurveQ& curve, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (std::string(e.what()).find("curve '") != std::string::npos) throw;
    throw Error(e.kind(), "curve '" + curve.label() + "': " + e.what());
  }
}

json checks_to_json(const std::vector<BoundCheck>& checks) {
  json j = json::object();
  for (const auto& c : checks)
    j[c.name] = {{"value", round_sig12(c.value)}, {"bound", round_sig12(c.bound)}, {"pass", c.pass}};
  return j;
}

Interval interval_of(const RunConfig& c) {
  const int M = *c.M;
  return Interval(c.alpha.value_or(0.0), c.beta.value_or(1.0 / M));
}

int run_scan(const RunConfig& c, const std::vector<CurveQ>& curves) {
  ScanOptions opts;
  opts.threads = c.threads;
  opts.keep_records = c.records || c.format == Format::Csv;
  std::vector<ScanReport> reports;
  for (const auto& curve : curves) reports.push_back(scan(curve, c.range->first, c.range->second, opts));

  if (c.format == Format::Csv) {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      std::ostringstream os;
      write_records_csv(os, *reports[i].records);
      write_output(reports.size() == 1 ? c.out : per_curve_path(c.out, reports[i].curve_label, i), os.str());
    }
    return 0;
  }
  if (reports.size() == 1) {
    write_output(c.out, report_to_json(reports[0]) + "\n");
    return 0;
  }
  json all = json::array();
  for (const auto& r : reports) all.push_back(json::parse(report_to_json(r)));
  write_output(c.out, dump(all));
  return 0;
}

int run_predict(const RunConfig& c) {
  json j;
  j["x"] = round_sig12(*c.x);
  j["cm"] = *c.cm;
  j["predicted"] = round_sig12(predict_extremal(*c.x, *c.cm));
  write_output(c.out, dump(j));
  return 0;
}

int run_st_hist(const RunConfig& c, const std::vector<CurveQ>& curves) {
  ScanOptions opts;
  opts.threads = c.threads;
  opts.keep_records = true;
  std::ostringstream csv;
  json all = json::array();
  if (c.format == Format::Csv) csv << "curve,bin,lo,hi,empirical,mu_st\n";
  for (const auto& curve : curves) {
    const auto report = scan(curve, c.range->first, c.range->second, opts);
    const auto hist = st_histogram(*report.records, c.bins);
    if (c.format == Format::Csv) {
      for (std::size_t i = 0; i < hist.size(); ++i)
        csv << curve.label() << ',' << i << ',' << format_double(hist[i].lo) << ',' << format_double(hist[i].hi)
            << ',' << format_double(hist[i].empirical) << ',' << format_double(hist[i].mu_st) << '\n';
      continue;
    }
    json bins = json::array();
    for (const auto& b : hist)
      bins.push_back({{"lo", round_sig12(b.lo)},
                      {"hi", round_sig12(b.hi)},
                      {"empirical", round_sig12(b.empirical)},
                      {"mu_st", round_sig12(b.mu_st)}});
    all.push_back({{"curve_label", curve.label()},
                   {"n_primes", report.n_primes},
                   {"total_variation", round_sig12(total_variation(hist))},
                   {"bins", std::move(bins)}});
  }
  write_output(c.out, c.format == Format::Csv ? csv.str() : dump(all));
  return 0;
}

int run_approx_verify(const RunConfig& c) {
  const Interval I = interval_of(c);
  const auto checks = verify_approximation(I, *c.M);
  bool pass = true;
  for (const auto& ch : checks) pass = pass && ch.pass;
  json j;
  j["M"] = *c.M;
  j["interval"] = {round_sig12(I.alpha), round_sig12(I.beta)};
  j["bounds_check"] = checks_to_json(checks);
  j["pass"] = pass;
  write_output(c.out, dump(j));
  return pass ? 0 : 1;
}

int run_fourier_dump(const RunConfig& c) {
  const Interval I = interval_of(c);
  const auto poly = c.side == Side::Majorant ? majorant(I, *c.M) : minorant(I, *c.M);
  json coeffs = json::array();
  for (double v : poly.coeffs()) coeffs.push_back(round_sig12(v));
  json j;
  j["M"] = *c.M;
  j["interval"] = {round_sig12(I.alpha), round_sig12(I.beta)};
  j["side"] = c.side == Side::Majorant ? "majorant" : "minorant";
  j["coeffs"] = std::move(coeffs);
  j["bounds_check"] = checks_to_json(coefficient_checks(poly));
  write_output(c.out, dump(j));
  return 0;
}

int run_sympow_dump(const RunConfig& c, const std::vector<CurveQ>& curves) {
  const int n = *c.n_max;
  json all = json::array();
  for (const auto& curve : curves) {
    json primes = json::array();
    for (const auto& spec : curve.bad_primes()) {
      const auto ce = conductor_exponent(spec, n);
      json entry;
      entry["p"] = spec.p;
      entry["kind"] = to_string(spec.kind);
      entry["n"] = n;
      entry["eps_n"] = ce.eps_n;
      entry["delta_n"] = ce.delta_n;
      entry["exact"] = ce.exact;
      try {
        entry["lambda_m1"] = round_sig12(lambda_sym_bad(SymPowLocalData::from_spec(spec, n), 1));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::UnsupportedCase && e.kind() != ErrorKind::InconsistentLocalData) throw;
        entry["lambda_m1"] = nullptr;
        entry["note"] = e.what();
      }
      primes.push_back(std::move(entry));
    }
    const auto bound = conductor_bound(curve, n);
    json j;
    j["curve_label"] = curve.label();
    j["n"] = n;
    j["conductor_bound"] = bound.bound.str();
    j["conductor_exact"] = bound.exact ? json(bound.exact->str()) : json(nullptr);
    j["bad_primes"] = std::move(primes);
    all.push_back(std::move(j));
  }
  write_output(c.out, dump(all));
  return 0;
}

int run_smoothed_sum(const RunConfig& c, const std::vector<CurveQ>& curves) {
  const int n = *c.n_max;
  const double x = *c.x;
  const double main_term = n == 0 ? x * bump_integral() : 0.0;
  json all = json::array();
  for (const auto& curve : curves) {
    const double value = with_curve_context(curve, [&] { return smoothed_sum(curve, n, x, c.threads); });
    json j;
    j["curve_label"] = curve.label();
    j["n"] = n;
    j["x"] = round_sig12(x);
    j["value"] = round_sig12(value);
    j["main_term"] = round_sig12(main_term);
    j["normalized_error"] = round_sig12((value - main_term) / std::sqrt(x));
    all.push_back(std::move(j));
  }
  write_output(c.out, dump(all));
  return 0;
}

bool needs_curves(Command cmd) {
  return cmd == Command::Scan || cmd == Command::StHist || cmd == Command::SympowDump ||
         cmd == Command::SmoothedSum;
}

}  // namespace

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::Scan: return "scan";
    case Command::Predict: return "predict";
    case Command::StHist: return "st-hist";
    case Command::ApproxVerify: return "approx-verify";
    case Command::FourierDump: return "fourier-dump";
    case Command::SympowDump: return "sympow-dump";
    case Command::SmoothedSum: return "smoothed-sum";
  }
  return "scan";
}

Command command_from_string(std::string_view name) {
  for (auto c : {Command::Scan, Command::Predict, Command::StHist, Command::ApproxVerify, Command::FourierDump,
                 Command::SympowDump, Command::SmoothedSum})
    if (to_string(c) == name) return c;
  throw config_error("unknown command '" + std::string(name) + "'");
}

void RunConfig::validate() const {
  if (threads == 0) throw config_error("threads must be positive");
  if (needs_curves(command) && curve_file.empty()) throw config_error("--curves is required");
  const bool csv_ok = command == Command::Scan || command == Command::StHist;
  if (format == Format::Csv && !csv_ok) throw config_error(std::string(to_string(command)) + " writes JSON only");
  switch (command) {
    case Command::Scan:
    case Command::StHist:
      if (!range) throw config_error("--lo and --hi are required");
      if (range->first >= range->second) throw config_error("range needs lo < hi");
      if (command == Command::StHist && bins == 0) throw config_error("bins must be positive");
      break;
    case Command::Predict:
      if (!x) throw config_error("--x is required");
      if (!cm) throw config_error("one of --cm / --no-cm is required");
      break;
    case Command::ApproxVerify:
    case Command::FourierDump:
      if (!M) throw config_error("--M is required");
      if (*M < 1) throw config_error("M must be >= 1");
      if (command == Command::FourierDump && (!alpha || !beta))
        throw config_error("--alpha and --beta are required");
      if (alpha.has_value() != beta.has_value()) throw config_error("--alpha and --beta go together");
      break;
    case Command::SympowDump:
    case Command::SmoothedSum:
      if (!n_max) throw config_error("--n is required");
      if (*n_max < 0) throw config_error("n must be >= 0");
      if (command == Command::SmoothedSum && !x) throw config_error("--x is required");
      if (command == Command::SmoothedSum && !(*x > 0.0)) throw config_error("x must be positive");
      break;
  }
}

void apply_config_file(RunConfig& c, const std::filesystem::path& path,
                       const std::function<bool(std::string_view)>& flag_given) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot read config '" + path.string() + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw config_error("config '" + path.string() + "': " + e.what());
  }
  if (!j.is_object()) throw config_error("config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (flag_given(key)) continue;
      if (key == "curves") c.curve_file = v.get<std::string>();
      else if (key == "lo") c.range = std::pair<u64, u64>{v.get<u64>(), c.range ? c.range->second : 0};
      else if (key == "hi") c.range = std::pair<u64, u64>{c.range ? c.range->first : 0, v.get<u64>()};
      else if (key == "M") c.M = v.get<int>();
      else if (key == "n") c.n_max = v.get<int>();
      else if (key == "out") c.out = v.get<std::string>();
      else if (key == "format") {
        const auto f = v.get<std::string>();
        if (f != "csv" && f != "json") throw config_error("format must be csv or json");
        c.format = f == "csv" ? Format::Csv : Format::Json;
      } else if (key == "threads") c.threads = v.get<unsigned>();
      else if (key == "records") c.records = v.get<bool>();
      else if (key == "x") c.x = v.get<double>();
      else if (key == "cm") c.cm = v.get<bool>();
      else if (key == "bins") c.bins = v.get<std::size_t>();
      else if (key == "alpha") c.alpha = v.get<double>();
      else if (key == "beta") c.beta = v.get<double>();
      else if (key == "side") {
        const auto s = v.get<std::string>();
        if (s != "maj" && s != "min") throw config_error("side must be maj or min");
        c.side = s == "maj" ? Side::Majorant : Side::Minorant;
      } else {
        throw config_error("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw config_error("config '" + path.string() + "': " + e.what());
  }
}

int run(const RunConfig& c) {
  c.validate();
  std::vector<CurveQ> curves;
  if (needs_curves(c.command)) curves = read_curve_file(c.curve_file);
  switch (c.command) {
    case Command::Scan: return run_scan(c, curves);
    case Command::Predict: return run_predict(c);
    case Command::StHist: return run_st_hist(c, curves);
    case Command::ApproxVerify: return run_approx_verify(c);
    case Command::FourierDump: return run_fourier_dump(c);
    case Command::SympowDump: return run_sympow_dump(c, curves);
    case Command::SmoothedSum: return run_smoothed_sum(c, curves);
  }
  return 0;
}

int run_guarded(const RunConfig& c, std::ostream& err) {
  try {
    return run(c);
  } catch (const Error& e) {
    err << "extremal " << to_string(c.command) << ": " << e.what() << '\n';
    return e.kind() == ErrorKind::ConfigError ? 2 : 3;
  } catch (const std::exception& e) {
    err << "extremal " << to_string(c.command) << ": " << e.what() << '\n';
    return 3;
  }
}

}  // namespace extremal::cli

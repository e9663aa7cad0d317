#include <iostream>
#include <map>
#include <thread>

#include <CLI11.hpp>

#include "extremal/cli.hpp"
#include "extremal/errors.hpp"

using extremal::cli::Command;
using extremal::cli::Format;
using extremal::cli::RunConfig;

namespace {

struct Flags {
  std::string curves;
  extremal::u64 lo = 0, hi = 0;
  int M = 0, n = 0;
  std::string out = "-";
  std::string format = "json";
  unsigned threads = 1;
  double x = 0.0, alpha = 0.0, beta = 0.0;
  std::size_t bins = 64;
  std::string side = "maj";
  std::string config;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extremal primes, Sato-Tate approximations and symmetric-power local data"};
  app.require_subcommand(1);
  Flags f;
  f.threads = std::max(1u, std::thread::hardware_concurrency());
  auto common = [&](CLI::App* sub) {
    sub->add_option("--threads", f.threads, "Worker threads (output does not depend on it)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--config", f.config, "JSON config; flags override its keys")->check(CLI::ExistingFile);
  };

  auto curves = [&](CLI::App* sub) {
    sub->add_option("--curves", f.curves, "Curve file, one JSON object per line")
                          ->check(CLI::ExistingFile);
  };
  auto range = [&](CLI::App* sub) {
    sub->add_option("--lo", f.lo, "Range start (inclusive)");
    sub->add_option("--hi", f.hi, "Range end (exclusive)");
  };
  auto out = [&](CLI::App* sub) { sub->add_option("--out", f.out, "Output path, - for stdout"); };

  auto* scan = app.add_subcommand("scan", "Trace of Frobenius and extremal counts over a prime range");
  common(scan);
  curves(scan);
  range(scan);
  scan->add_flag("--records", "Include per-prime records in JSON output");
  out(scan);
  scan->add_option("--format", f.format, "csv (records) or json (report)")
                        ->check(CLI::IsMember({"csv", "json"}));

  auto* predict = app.add_subcommand("predict", "Conjectured number of extremal primes up to x");
  common(predict);
  predict->add_option("--x", f.x, "Bound x > e");
  auto* cm_flag = predict->add_flag("--cm,!--no-cm", "Curve has complex multiplication");
  out(predict);

  auto* hist = app.add_subcommand("st-hist", "Histogram of angles against the Sato-Tate measure");
  common(hist);
  curves(hist);
  range(hist);
  hist->add_option("--bins", f.bins, "Number of equal bins on [0, pi]")->check(CLI::PositiveNumber);
  out(hist);
  hist->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* verify = app.add_subcommand("approx-verify", "Check majorant/minorant coefficient and sandwich bounds");
  common(verify);
  verify->add_option("--M", f.M, "Degree M >= 1");
  verify->add_option("--alpha", f.alpha, "Interval start (default 0)");
  verify->add_option("--beta", f.beta, "Interval end (default 1/M)");
  out(verify);

  auto* fourier = app.add_subcommand("fourier-dump", "U-basis coefficients of a majorant or minorant");
  common(fourier);
  fourier->add_option("--M", f.M, "Degree M >= 1");
  fourier->add_option("--alpha", f.alpha, "Interval start");
  fourier->add_option("--beta", f.beta, "Interval end");
  fourier->add_option("--side", f.side, "maj or min")->check(CLI::IsMember({"maj", "min"}));
  out(fourier);

  auto* sympow = app.add_subcommand("sympow-dump", "Conductor exponents and bad-prime coefficients of Sym^n");
  common(sympow);
  curves(sympow);
  sympow->add_option("--n", f.n, "Symmetric power n >= 0");
  out(sympow);

  auto* smoothed = app.add_subcommand("smoothed-sum", "Bump-weighted sum of U_n(cos theta_p) log p");
  common(smoothed);
  curves(smoothed);
  smoothed->add_option("--n", f.n, "Symmetric power n >= 0");
  smoothed->add_option("--x", f.x, "Scale x");
  out(smoothed);

  CLI11_PARSE(app, argc, argv);

  // The same flag name may be registered on several subcommands; only the
  // selected subcommand's options count as given.
  CLI::App* selected = app.get_subcommands().front();
  std::map<std::string, bool> was_given;
  for (auto* opt : selected->get_options()) {
    const auto& names = opt->get_lnames();
    if (!names.empty()) was_given[names.front()] = opt->count() > 0;
  }

  RunConfig config;
  try {
    config.command = extremal::cli::command_from_string(selected->get_name());
    auto flag_given = [&](std::string_view key) {
      auto it = was_given.find(std::string(key));
      return it != was_given.end() && it->second;
    };
    config.threads = f.threads;
    if (!f.config.empty()) extremal::cli::apply_config_file(config, f.config, flag_given);

    if (flag_given("curves")) config.curve_file = f.curves;
    if (flag_given("lo") || flag_given("hi")) {
      auto r = config.range.value_or(std::pair<extremal::u64, extremal::u64>{0, 0});
      if (flag_given("lo")) r.first = f.lo;
      if (flag_given("hi")) r.second = f.hi;
      config.range = r;
    }
    if (flag_given("M")) config.M = f.M;
    if (flag_given("n")) config.n_max = f.n;
    if (flag_given("out")) config.out = f.out;
    if (flag_given("format")) config.format = f.format == "csv" ? Format::Csv : Format::Json;
    if (flag_given("threads")) config.threads = f.threads;
    if (flag_given("records")) config.records = true;
    if (flag_given("x")) config.x = f.x;
    if (flag_given("cm")) config.cm = cm_flag->as<bool>();
    if (flag_given("bins")) config.bins = f.bins;
    if (flag_given("alpha")) config.alpha = f.alpha;
    if (flag_given("beta")) config.beta = f.beta;
    if (flag_given("side")) config.side = f.side == "maj" ? extremal::Side::Majorant : extremal::Side::Minorant;
  } catch (const extremal::Error& e) {
    std::cerr << "extremal: " << e.what() << '\n';
    return 2;
  }
  return extremal::cli::run_guarded(config, std::cerr);
}

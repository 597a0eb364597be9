// kloost: command-line front end for the Kloosterman sum library.
//
// Exit status: 0 success, 1 an identity or bound check failed, 2 bad
// configuration, bad arguments or I/O failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "kloost/kloost.hpp"
#include "kloost/harness/bench.hpp"
#include "kloost/harness/config.hpp"
#include "kloost/harness/emit.hpp"
#include "kloost/harness/sweep.hpp"
#include "kloost/harness/verify.hpp"

namespace {

using kloost::harness::format_int;
using kloost::harness::format_real;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

int cmd_complete(kloost::u64 p, kloost::i64 a, kloost::i64 b) {
  const kloost::SumValue s = kloost::complete_kloosterman(kloost::SumParams(a, b, p));
  std::cout << "re,im,abs,term_count\n"
            << format_real(s.re) << ',' << format_real(s.im) << ',' << format_real(s.abs()) << ','
            << format_int(s.term_count) << '\n';
  return kExitOk;
}

int cmd_incomplete(kloost::u64 p, kloost::i64 a, kloost::i64 b, kloost::i64 start, kloost::u64 len,
                   int r_max, double epsilon) {
  const kloost::SumParams params(a, b, p);
  const kloost::IntervalSpec interval{start, len};
  const kloost::SumValue s = kloost::incomplete_kloosterman(params, interval);
  const kloost::BoundReport rep = kloost::make_report(params, interval, s.abs(), r_max, epsilon);
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << "p,a,b,M,L,re,im,abs_S,trivial,weil,weil_completed,best_r,thm1_best,conj1,conj_in_range,"
               "ratio_weil,ratio_thm1,ratio_conj\n"
            << format_int(p) << ',' << format_int(a) << ',' << format_int(b) << ',' << format_int(start) << ','
            << format_int(len) << ',' << format_real(s.re) << ',' << format_real(s.im) << ','
            << format_real(rep.abs_S) << ',' << format_real(rep.trivial) << ',' << format_real(rep.weil) << ','
            << format_real(rep.weil_completed) << ',' << rep.best_r << ',' << format_real(rep.best_thm1) << ','
            << format_real(rep.conj1) << ',' << (rep.conj_in_range ? 1 : 0) << ','
            << format_real(rep.ratio_weil) << ',' << format_real(rep.ratio_thm1) << ','
            << format_real(rep.ratio_conj) << '\n';
  return kExitOk;
}

int cmd_allsums(kloost::u64 p, kloost::i64 b, const std::string& out_path) {
  const kloost::SpectrumVector spec = kloost::all_complete_sums(b, kloost::require_prime(p));
  auto write = [&](std::ostream& out) {
    out << "a,re,im\n";
    for (kloost::u64 a = 0; a < p; ++a) {
      out << format_int(a) << ',' << format_real(spec[a].real()) << ',' << format_real(spec[a].imag()) << '\n';
    }
  };
  if (out_path.empty() || out_path == "-") {
    write(std::cout);
    return kExitOk;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw kloost::OutputIoError("cannot open '" + out_path + "' for writing");
  write(out);
  if (!out) throw kloost::OutputIoError("failed writing '" + out_path + "'");
  return kExitOk;
}

int cmd_verify(kloost::u64 p_limit, kloost::u64 seed) {
  const auto summary = kloost::harness::verify_identities(p_limit, seed);
  for (const auto& s : summary.suites) {
    std::cout << (s.passed() ? "PASS " : "FAIL ") << s.name << " cases=" << s.cases
              << " max_defect=" << format_real(s.max_defect) << " allowed=" << format_real(s.allowed)
              << " worst_ratio=" << format_real(s.worst_ratio) << " at [" << s.worst_case << "]\n";
  }
  std::cout << (summary.passed() ? "all identity suites passed\n" : "identity suites FAILED\n");
  return summary.passed() ? kExitOk : kExitCheckFailed;
}

int cmd_sweep(const std::string& config_path, unsigned threads) {
  const auto cfg = kloost::harness::load_sweep_config(config_path);
  const auto records = kloost::harness::run_sweep(cfg, threads);
  kloost::harness::emit(records, cfg.output_path, cfg.output_format);
  std::size_t violations = 0;
  double max_ratio = 0.0;
  for (const auto& r : records) {
    if (r.abs_S > static_cast<double>(r.unit_count) + 1e-6) ++violations;
    max_ratio = std::max(max_ratio, r.ratio_thm1);
  }
  std::cerr << "records=" << records.size() << " max_ratio_thm1=" << format_real(max_ratio)
            << " triangle_violations=" << violations << '\n';
  return violations == 0 ? kExitOk : kExitCheckFailed;
}

int cmd_window_check(double n, double delta, int order) {
  const auto wc = kloost::harness::window_check(n, delta, order);
  std::cout << "N=" << format_real(wc.n) << " delta=" << format_real(wc.delta) << " A=" << wc.order << '\n'
            << "phihat(0)=" << format_real(wc.phihat0) << " expected=" << format_real(wc.mass)
            << " error=" << format_real(wc.mass_error()) << '\n'
            << "decay_constant(|lambda|N<=1e2)=" << format_real(wc.constant_short) << '\n'
            << "decay_constant(|lambda|N<=1e3)=" << format_real(wc.constant_long) << '\n';
  return kExitOk;
}

int cmd_bench(kloost::u64 p, kloost::u64 reps) {
  const auto rep = kloost::harness::bench_allsums(p, reps);
  std::cout << "p=" << rep.p << " reps=" << rep.repetitions << " median_s=" << format_real(rep.median_seconds)
            << " min_s=" << format_real(rep.min_seconds) << " max_s=" << format_real(rep.max_seconds)
            << " sums_per_s=" << format_real(rep.sums_per_second)
            << " crosscheck_err=" << format_real(rep.max_crosscheck_error)
            << " crosscheck=" << (rep.crosscheck_passed() ? "ok" : "FAILED") << '\n';
  return rep.crosscheck_passed() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kloosterman sum evaluation, identity checks and bound experiments"};
  app.require_subcommand(1);

  kloost::u64 p = 0, p_limit = 0, seed = 0, reps = 5, len = 0;
  kloost::i64 a = 0, b = 1, start = 0;
  int r_max = 10, order = 2;
  double epsilon = 0.0, n = 0.0, delta = 0.0;
  std::string out_path, config_path;
  unsigned threads = 0;

  auto* complete = app.add_subcommand("complete", "Evaluate S(a,b;p)");
  complete->add_option("--p", p, "Modulus")->required();
  complete->add_option("--a", a, "First frequency")->required();
  complete->add_option("--b", b, "Second frequency")->required();

  auto* incomplete = app.add_subcommand("incomplete", "Evaluate S(a,b;p,(M,M+L]) with a bound report");
  incomplete->add_option("--p", p, "Odd prime modulus")->required();
  incomplete->add_option("--a", a, "First frequency")->required();
  incomplete->add_option("--b", b, "Second frequency")->required();
  incomplete->add_option("--start", start, "Exclusive left endpoint M")->required();
  incomplete->add_option("--len", len, "Interval length L")->required();
  incomplete->add_option("--r-max", r_max, "Largest r scanned for the best bound")->capture_default_str();
  incomplete->add_option("--epsilon", epsilon, "Exponent slack of the conjectural curve")->capture_default_str();

  auto* allsums = app.add_subcommand("allsums", "All S(a,b;p), a mod p, as CSV");
  allsums->add_option("--p", p, "Prime modulus")->required();
  allsums->add_option("--b", b, "Second frequency")->required();
  allsums->add_option("--out", out_path, "Output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Run the identity suites");
  verify->add_option("--p-limit", p_limit, "Largest prime checked")->required();
  verify->add_option("--seed", seed, "Sampling seed")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Run a sweep configuration file");
  sweep->add_option("--config", config_path, "key=value config file")->required();
  sweep->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();

  auto* window = app.add_subcommand("window-check", "Fourier decay report for a smooth window");
  window->add_option("--n", n, "Window scale N")->required();
  window->add_option("--delta", delta, "Transition half-width")->required();
  window->add_option("--a-order", order, "Decay order A")->required();

  auto* bench = app.add_subcommand("bench", "Time the all-frequency transform");
  bench->add_option("--p", p, "Prime modulus")->required();
  bench->add_option("--reps", reps, "Repetitions")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*complete) return cmd_complete(p, a, b);
    if (*incomplete) return cmd_incomplete(p, a, b, start, len, r_max, epsilon);
    if (*allsums) return cmd_allsums(p, b, out_path);
    if (*verify) return cmd_verify(p_limit, seed);
    if (*sweep) return cmd_sweep(config_path, threads);
    if (*window) return cmd_window_check(n, delta, order);
    if (*bench) return cmd_bench(p, reps);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

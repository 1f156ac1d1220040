// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Optional argv[1] is the path of the `cooling` binary, used
// to repeat the determinism check end to end through the CLI.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cooling/flips.hpp"
#include "cooling/harness.hpp"
#include "cooling/oracle.hpp"

using namespace cooling;

namespace {

const std::vector<double> kAlphas{0.25, 0.5, 0.75};

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int precision = 4) {
  std::ostringstream s;
  s.precision(precision);
  s << v;
  return s.str();
}

Outcome drift_lemma() {
  std::size_t violations = 0;
  bool strictly_negative = true;
  double min_ratio = 1e300;  // drift / threshold; below 1 is a violation
  for (std::size_t len = 4; len <= 14; len += 2) {
    for (double a : kAlphas) {
      const DriftReport r = verify_drift_lemma(len, VariantParams(a));
      violations += r.violations.size();
      strictly_negative = strictly_negative && r.strictly_negative;
      min_ratio = std::min(min_ratio, r.worst_drift / r.threshold);
    }
  }
  if (violations == 0) {
    return {true, "drift <= threshold on every mismatched word, L=4..14 (min drift/threshold " +
                      fmt(min_ratio) + ")"};
  }
  bool bound_ok = true;
  for (std::size_t len = 4; len <= 12; len += 2) {
    const auto table = expected_convergence_exact(len);
    for (double a : kAlphas) bound_ok = bound_ok && verify_hitting_bound(table, VariantParams(a)).holds();
  }
  return {strictly_negative && bound_ok,
          std::to_string(violations) + " threshold violations; fallback: strictly negative " +
              (strictly_negative ? "yes" : "no") + ", hitting bound " + (bound_ok ? "holds" : "fails")};
}

Outcome variant_bounds() {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::string first;
  for (std::size_t len = 2; len <= 16; len += 2) {
    for (double a : kAlphas) {
      const BoundsReport r = verify_variant_bounds(len, VariantParams(a));
      checked += r.checked;
      violations += r.violations.size();
      if (first.empty() && !r.violations.empty()) {
        first = r.violations.front().word.str() + ": " + r.violations.front().what;
      }
    }
  }
  return {violations == 0, std::to_string(checked) + " (word, alpha) pairs, L=2..16, " +
                               std::to_string(violations) + " violations" +
                               (first.empty() ? "" : " (first " + first + ")")};
}

Outcome volume_domination() {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::size_t doubled_violations = 0;
  std::string example;
  for (std::size_t len = 2; len <= 14; len += 2) {
    for (double a : kAlphas) {
      const BoundsReport r = verify_volume_domination(len, VariantParams(a), 1.0);
      checked += r.checked;
      violations += r.violations.size();
      doubled_violations += verify_volume_domination(len, VariantParams(a), 2.0).violations.size();
      if (example.empty() && !r.violations.empty()) {
        example = r.violations.front().word.str() + ": " + r.violations.front().what;
      }
    }
  }
  return {violations == 0,
          std::to_string(violations) + " of " + std::to_string(checked) +
              " (word, alpha) pairs have phi > V, L=2..14" +
              (example.empty() ? "" : " (e.g. " + example + ")") + "; phi <= 2V violations: " +
              std::to_string(doubled_violations)};
}

Outcome hitting_bound() {
  std::size_t checked = 0;
  std::size_t violations = 0;
  double tightest = 0.0;
  for (std::size_t len = 2; len <= 12; len += 2) {
    const auto table = expected_convergence_exact(len);
    for (double a : kAlphas) {
      const VariantParams p(a);
      const BoundsReport r = verify_hitting_bound(table, p);
      checked += r.checked;
      violations += r.violations.size();
      for (std::size_t i = 0; i < table.size(); ++i) {
        tightest = std::max(tightest, table.times()[i] / variant_bound(table.words()[i], p));
      }
    }
  }
  return {violations == 0, std::to_string(checked) + " (word, alpha) pairs, L<=12, " +
                               std::to_string(violations) + " violations, max E(T)/bound " +
                               fmt(tightest)};
}

Outcome coefficient_identities() {
  bool ok = true;
  std::string failures;
  for (unsigned n = 1; n <= 10; ++n) {
    for (int which = 0; which < 2; ++which) {
      try {
        const CoefficientPair c = which == 0 ? flip_count_identity(n) : flip_volume_identity(n);
        ok = ok && c.agrees();
      } catch (const OracleError& e) {
        ok = false;
        failures += std::string(" ") + e.what();
      }
    }
  }
  const bool anchors = flip_count_coefficient(2) == 12 && flip_volume_coefficient(2) == 28;
  return {ok && anchors, "n=1..10 exact, sum flips(n=10) = " + flip_count_coefficient(10).str() +
                             ", sum flips*V(n=10) = " + flip_volume_coefficient(10).str() +
                             ", anchors 12/28 " + (anchors ? "ok" : "wrong") + failures};
}

Outcome natural_volume() {
  std::string detail = "relative deviation";
  double previous = 1e300;
  bool decreasing = true;
  double last = 0.0;
  for (unsigned n : {10u, 50u, 100u, 200u}) {
    const VolumeAsymptotic v = natural_volume_asymptotic(n);
    decreasing = decreasing && v.relative_deviation < previous;
    previous = v.relative_deviation;
    last = v.relative_deviation;
    detail += " n=" + std::to_string(n) + ": " + fmt(v.relative_deviation);
  }
  return {decreasing && last < 0.10, detail};
}

Outcome oracle_vs_simulation() {
  const auto table = expected_convergence_exact(8);
  const int runs = 100000;
  Rng rng(20240601);
  double worst_z = 0.0;
  std::string worst_word;
  std::size_t outside = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Configuration& w = table.words()[i];
    double sum = 0;
    double sum_sq = 0;
    for (int r = 0; r < runs; ++r) {
      const double t = static_cast<double>(run_cooling(w, rng).steps);
      sum += t;
      sum_sq += t * t;
    }
    const double mean = sum / runs;
    const double var = std::max(0.0, (sum_sq - runs * mean * mean) / (runs - 1));
    const double se = std::sqrt(var / runs);
    const double diff = std::abs(mean - table.times()[i]);
    double z = 0.0;
    if (se > 0) {
      z = diff / se;
    } else if (diff > 1e-12) {
      z = 1e300;
    }
    if (z > 3.0) ++outside;
    if (z > worst_z) {
      worst_z = z;
      worst_word = w.str();
    }
  }
  return {outside == 0, std::to_string(table.size()) + " words x " + std::to_string(runs) +
                            " runs, " + std::to_string(outside) + " outside 3 SE, max |z| " +
                            fmt(worst_z, 3) + " at " + worst_word};
}

std::vector<RunRecord> run(Mode mode, std::vector<std::size_t> lengths, std::size_t reps,
                           unsigned threads, std::uint64_t seed) {
  SimulateConfig c;
  c.mode = mode;
  c.n_list = std::move(lengths);
  c.reps = reps;
  c.threads = threads;
  c.master_seed = seed;
  return simulate(c);
}

unsigned worker_count() { return std::max(2u, std::thread::hardware_concurrency()); }

Outcome worst_case_scaling() {
  const auto records = run(Mode::Worst, {20, 40, 60, 80, 120, 160}, 10, worker_count(), 1);
  const ScalingFit fit = fit_scaling(records, FitModel::Cubic, SizeVariable::HalfLength);
  const bool ok = fit.c >= 0.12 && fit.c <= 0.22 && std::abs(fit.loglog_slope - 3.0) <= 0.15;
  return {ok, "c = " + fmt(fit.c) + " (n = L/2), log-log slope " + fmt(fit.loglog_slope) +
                  ", relative RMS " + fmt(fit.residual, 3)};
}

Outcome uniform_scaling() {
  const auto records = run(Mode::Uniform, {16, 32, 64, 128}, 200, worker_count(), 1);
  const ScalingFit fit = fit_scaling(records, FitModel::N52Log, SizeVariable::HalfLength);
  const ScalingFit full = fit_scaling(records, FitModel::N52Log, SizeVariable::Length);
  const bool ok = fit.c >= 0.156 && fit.c <= 0.324 && fit.residual < 0.10;
  std::string no_log;
  for (const auto& [len, mean] : fit.points) no_log += " " + fmt(mean / std::pow(len / 2, 2.5), 3);
  return {ok, "c = " + fmt(fit.c) + ", relative RMS " + fmt(fit.residual, 3) +
                  " (n = L/2; with n = L: c = " + fmt(full.c) + ", RMS " + fmt(full.residual, 3) +
                  "); log-log slope " + fmt(fit.loglog_slope) + "; mean T/(L/2)^2.5 =" + no_log};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(const std::string& cli) {
  bool ok = true;
  std::size_t compared = 0;
  for (Mode m : {Mode::Worst, Mode::Uniform, Mode::Natural}) {
    const std::string base = to_csv(run(m, {10, 30, 64}, 24, 1, 77));
    for (unsigned threads : {2u, 5u, worker_count()}) {
      ok = ok && to_csv(run(m, {10, 30, 64}, 24, threads, 77)) == base;
      ++compared;
    }
  }
  std::string detail = std::to_string(compared) + " library reruns byte-identical: " + (ok ? "yes" : "no");
  if (!cli.empty()) {
    const auto dir = std::filesystem::temp_directory_path() / "cooling_acceptance";
    std::filesystem::create_directories(dir);
    std::vector<std::string> outputs;
    for (unsigned threads : {1u, 3u, 8u}) {
      const auto out = dir / ("run_" + std::to_string(threads) + ".csv");
      const std::string cmd = "\"" + cli + "\" simulate --mode natural --n-list 12,40,80 --reps 16 --seed 5 --threads " +
                              std::to_string(threads) + " --out \"" + out.string() + "\" 2> /dev/null";
      if (std::system(cmd.c_str()) != 0) {
        ok = false;
        detail += "; CLI run failed";
        break;
      }
      outputs.push_back(read_file(out));
    }
    const bool cli_ok = outputs.size() == 3 && !outputs[0].empty() && outputs[0] == outputs[1] &&
                        outputs[0] == outputs[2];
    ok = ok && cli_ok;
    detail += std::string("; CLI at 1/3/8 threads byte-identical: ") + (cli_ok ? "yes" : "no");
    std::filesystem::remove_all(dir);
  }
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"drift of the variant, exhaustive L=4..14", drift_lemma},
      {"variant bounds, exhaustive L<=16", variant_bounds},
      {"variant dominated by volume, exhaustive L<=14", volume_domination},
      {"expected time below the variant bound, L<=12", hitting_bound},
      {"flip-count and flip-volume coefficient identities, n=1..10", coefficient_identities},
      {"natural-law mean volume asymptotic", natural_volume},
      {"exact solver vs Monte Carlo on W_8", oracle_vs_simulation},
      {"worst-case cubic scaling", worst_case_scaling},
      {"uniform-start n^{5/2} ln n scaling", uniform_scaling},
      {"determinism across worker counts", [&] { return determinism(cli); }},
  };

  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << (k + 1) << "] " << criteria[k].first << ": "
              << o.detail << " (" << fmt(secs, 3) << " s)" << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}

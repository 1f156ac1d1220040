#include "cooling/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cooling/flips.hpp"
#include "cooling/oracle.hpp"
#include "cooling/samplers.hpp"

namespace cooling {

using nlohmann::json;

const char* to_string(Mode mode) noexcept {
  switch (mode) {
    case Mode::Worst: return "worst";
    case Mode::Uniform: return "uniform";
    case Mode::Natural: return "natural";
    case Mode::Word: return "word";
  }
  return "?";
}

Mode mode_from_string(const std::string& name) {
  for (Mode m : {Mode::Worst, Mode::Uniform, Mode::Natural, Mode::Word}) {
    if (name == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown mode '" + name + "'");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Job {
  std::size_t n;
  std::size_t replicate;
};

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t n, std::uint64_t replicate) {
  return splitmix64(splitmix64(splitmix64(master) ^ n) ^ replicate);
}

std::vector<RunRecord> simulate(const SimulateConfig& config) {
  if (config.reps < 1) throw std::invalid_argument("reps must be >= 1");
  std::vector<std::size_t> lengths = config.n_list;
  if (config.mode == Mode::Word) {
    if (!config.word) throw std::invalid_argument("word mode needs a word");
    lengths = {config.word->size()};
  }
  if (lengths.empty()) throw std::invalid_argument("empty n list");
  for (std::size_t n : lengths) {
    if (n % 2 != 0) throw std::invalid_argument("n must be even, got " + std::to_string(n));
    if (n < 2 && config.mode != Mode::Word) {
      throw std::invalid_argument("n must be >= 2, got " + std::to_string(n));
    }
  }

  std::vector<Job> jobs;
  for (std::size_t n : lengths) {
    for (std::size_t r = 0; r < config.reps; ++r) jobs.push_back({n, r});
  }
  std::vector<RunRecord> records(jobs.size());

  RunOptions options;
  options.step_cap = config.step_cap;

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::string error;

  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= jobs.size()) return;
      const Job job = jobs[k];
      RunRecord& rec = records[k];
      rec.n = job.n;
      rec.mode = config.mode;
      rec.replicate = job.replicate;
      rec.seed = derive_seed(config.master_seed, job.n, job.replicate);
      try {
        Rng rng(rec.seed);
        const auto start = std::chrono::steady_clock::now();
        Configuration w0;
        switch (config.mode) {
          case Mode::Worst: w0 = worst_case_config(job.n); break;
          case Mode::Uniform: w0 = sample_uniform_bridge(job.n, rng); break;
          case Mode::Natural: w0 = sample_natural(job.n, rng); break;
          case Mode::Word: w0 = *config.word; break;
        }
        const CoolingRun run = run_cooling(w0, rng, options);
        if (!run.converged()) {
          throw std::runtime_error("step cap " + std::to_string(config.step_cap) +
                                   " exceeded at n=" + std::to_string(job.n) + ", replicate " +
                                   std::to_string(job.replicate));
        }
        rec.steps = run.steps;
        if (config.record_wall_time) {
          rec.wall_time_s =
              std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (error.empty()) error = e.what();
        next.store(jobs.size());
        return;
      }
    }
  };

  const unsigned threads = std::max(1u, config.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (!error.empty()) throw std::runtime_error(error);
  // Jobs were laid out in emission order, so no sort is needed.
  return records;
}

void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kCsvHeader << '\n';
  for (const RunRecord& r : records) {
    out << r.n << ',' << to_string(r.mode) << ',' << r.replicate << ',' << r.seed << ','
        << r.steps << ',';
    if (r.wall_time_s == 0.0) {
      out << '0';
    } else {
      out << std::fixed << std::setprecision(6) << r.wall_time_s << std::defaultfloat;
    }
    out << '\n';
  }
}

std::string to_csv(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  write_csv(out, records);
  return out.str();
}

std::vector<RunRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) {
    throw std::runtime_error("unexpected CSV header '" + line + "', expected '" + kCsvHeader +
                             "'");
  }
  std::vector<RunRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 6) {
      throw std::runtime_error("CSV line " + std::to_string(line_no) + ": expected 6 fields");
    }
    try {
      RunRecord r;
      r.n = std::stoull(fields[0]);
      r.mode = mode_from_string(fields[1]);
      r.replicate = std::stoull(fields[2]);
      r.seed = std::stoull(fields[3]);
      r.steps = std::stoull(fields[4]);
      r.wall_time_s = std::stod(fields[5]);
      records.push_back(r);
    } catch (const std::exception& e) {
      throw std::runtime_error("CSV line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
  std::map<std::size_t, std::vector<double>> by_n;
  for (const RunRecord& r : records) by_n[r.n].push_back(static_cast<double>(r.steps));
  std::vector<SummaryRow> rows;
  for (const auto& [n, values] : by_n) {
    SummaryRow row;
    row.n = n;
    row.reps = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    row.mean_T = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
      double ss = 0.0;
      for (double v : values) ss += (v - row.mean_T) * (v - row.mean_T);
      row.std_T = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    row.stderr_T = row.std_T / std::sqrt(static_cast<double>(values.size()));
    rows.push_back(row);
  }
  return rows;
}

json summary_json(const std::vector<SummaryRow>& rows) {
  json out = json::array();
  for (const SummaryRow& r : rows) {
    out.push_back({{"n", r.n},
                   {"reps", r.reps},
                   {"mean_T", r.mean_T},
                   {"std_T", r.std_T},
                   {"stderr_T", r.stderr_T}});
  }
  return out;
}

const char* to_string(FitModel model) noexcept {
  return model == FitModel::Cubic ? "cubic" : "n52log";
}

FitModel fit_model_from_string(const std::string& name) {
  if (name == "cubic") return FitModel::Cubic;
  if (name == "n52log") return FitModel::N52Log;
  throw std::invalid_argument("unknown model '" + name + "' (expected cubic or n52log)");
}

double model_predictor(FitModel model, double n) {
  return model == FitModel::Cubic ? n * n * n : std::pow(n, 2.5) * std::log(n);
}

const char* to_string(SizeVariable size) noexcept {
  return size == SizeVariable::HalfLength ? "half" : "length";
}

SizeVariable size_variable_from_string(const std::string& name) {
  if (name == "half") return SizeVariable::HalfLength;
  if (name == "length") return SizeVariable::Length;
  throw std::invalid_argument("unknown size variable '" + name + "' (expected half or length)");
}

ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& points, FitModel model,
                       SizeVariable size) {
  if (points.size() < 3) {
    throw std::invalid_argument("fit needs at least 3 distinct n values, got " +
                                std::to_string(points.size()));
  }
  ScalingFit fit;
  fit.model = model;
  fit.size = size;
  fit.points = points;
  const double scale = size == SizeVariable::HalfLength ? 0.5 : 1.0;
  auto predictor = [&](double length) { return model_predictor(model, scale * length); };
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& [n, t] : points) {
    if (!(t > 0.0) || !(scale * n > 1.0)) {
      throw std::invalid_argument("fit needs a size above 1 and positive mean T at every point");
    }
    const double x = predictor(n);
    sxy += x * t;
    sxx += x * x;
  }
  fit.c = sxy / sxx;

  double rel2 = 0.0;
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [n, t] : points) {
    const double rel = (t - fit.c * predictor(n)) / t;
    rel2 += rel * rel;
    mx += std::log(n);
    my += std::log(t);
  }
  const auto k = static_cast<double>(points.size());
  fit.residual = std::sqrt(rel2 / k);
  mx /= k;
  my /= k;
  double num = 0.0;
  double den = 0.0;
  for (const auto& [n, t] : points) {
    num += (std::log(n) - mx) * (std::log(t) - my);
    den += (std::log(n) - mx) * (std::log(n) - mx);
  }
  fit.loglog_slope = num / den;
  return fit;
}

ScalingFit fit_scaling(const std::vector<RunRecord>& records, FitModel model,
                       SizeVariable size) {
  std::vector<std::pair<double, double>> points;
  for (const SummaryRow& row : summarize(records)) {
    points.emplace_back(static_cast<double>(row.n), row.mean_T);
  }
  return fit_scaling(points, model, size);
}

json to_json(const ScalingFit& fit) {
  json pts = json::array();
  for (const auto& [n, t] : fit.points) pts.push_back({{"L", n}, {"mean_T", t}});
  return {{"model", to_string(fit.model)},
          {"size", to_string(fit.size)},
          {"c", fit.c},
          {"residual", fit.residual},
          {"loglog_slope", fit.loglog_slope},
          {"points", pts}};
}

const char* to_string(CheckStatus status) noexcept {
  switch (status) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Discrepancy: return "DISCREPANCY";
  }
  return "?";
}

bool VerifyReport::passed() const noexcept {
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckResult& c) { return c.status == CheckStatus::Fail; });
}

namespace {

std::string fmt(double x, int precision = 6) {
  std::ostringstream out;
  out << std::setprecision(precision) << x;
  return out.str();
}

std::string at(std::size_t length, double alpha) {
  return "L=" + std::to_string(length) + " alpha=" + fmt(alpha, 4);
}

CheckResult bounds_check(std::string name, const BoundsReport& report) {
  CheckResult c{std::move(name), CheckStatus::Pass, ""};
  if (report.holds()) {
    c.detail = std::to_string(report.checked) + " configurations";
  } else {
    c.status = CheckStatus::Fail;
    c.detail = std::to_string(report.violations.size()) + " violation(s), first " +
               report.violations.front().word.str() + ": " + report.violations.front().what;
  }
  return c;
}

}  // namespace

VerifyReport run_verification(std::size_t max_length, const std::vector<double>& alphas) {
  if (max_length > kVerifyMaxLength) {
    throw std::invalid_argument("verify supports max length <= " +
                                std::to_string(kVerifyMaxLength));
  }
  if (alphas.empty()) throw std::invalid_argument("alpha grid is empty");
  std::vector<VariantParams> grid;
  for (double a : alphas) grid.emplace_back(a);

  VerifyReport report;
  report.max_length = max_length;
  report.alphas = alphas;
  auto& checks = report.checks;

  std::map<std::size_t, HittingTimeTable> tables;
  for (std::size_t len = 2; len <= std::min<std::size_t>(max_length, 12); len += 2) {
    tables.emplace(len, expected_convergence_exact(len));
  }

  for (std::size_t len = 2; len <= max_length; len += 2) {
    checks.push_back({"level-ordering " + std::to_string(len),
                      verify_level_ordering(len) ? CheckStatus::Pass : CheckStatus::Fail,
                      "cooling transitions never raise the energy"});
  }

  if (max_length < 4) {
    checks.push_back({"drift", CheckStatus::Pass, "vacuous: no mismatched word with L <= 2"});
  }
  for (std::size_t len = 4; len <= max_length; len += 2) {
    for (const VariantParams& p : grid) {
      const DriftReport d = verify_drift_lemma(len, p);
      CheckResult c{"drift " + at(len, p.alpha()), CheckStatus::Pass, ""};
      c.detail = "worst drift " + fmt(d.worst_drift, 10) + " at " +
                 (d.worst_word ? d.worst_word->str() : std::string("-")) + ", threshold " +
                 fmt(d.threshold, 10);
      if (!d.holds()) {
        const auto it = tables.find(len);
        const bool bound_ok = it == tables.end() || verify_hitting_bound(it->second, p).holds();
        c.status = (d.strictly_negative && bound_ok) ? CheckStatus::Discrepancy
                                                     : CheckStatus::Fail;
        c.detail += "; " + std::to_string(d.violations.size()) +
                    " word(s) above the threshold, first " + d.violations.front().word.str();
      } else if (!d.strictly_negative) {
        c.status = CheckStatus::Fail;
      }
      checks.push_back(std::move(c));
    }
  }

  for (std::size_t len = 2; len <= max_length; len += 2) {
    for (const VariantParams& p : grid) {
      checks.push_back(bounds_check("variant-bounds " + at(len, p.alpha()),
                                    verify_variant_bounds(len, p)));
      CheckResult below = bounds_check("variant-below-volume " + at(len, p.alpha()),
                                       verify_volume_domination(len, p));
      if (below.status == CheckStatus::Fail && verify_volume_domination(len, p, 2.0).holds()) {
        below.status = CheckStatus::Discrepancy;
        below.detail += "; phi <= 2V holds";
      }
      checks.push_back(std::move(below));
    }
  }

  for (const auto& [len, table] : tables) {
    for (const VariantParams& p : grid) {
      checks.push_back(bounds_check("hitting-bound " + at(len, p.alpha()),
                                    verify_hitting_bound(table, p)));
    }
    const ArgmaxResult arg = worst_case_argmax(table);
    const Configuration candidate = worst_case_config(len);
    const bool found =
        std::find(arg.words.begin(), arg.words.end(), candidate) != arg.words.end();
    checks.push_back({"worst-case-argmax " + std::to_string(len),
                      found ? CheckStatus::Pass : CheckStatus::Fail,
                      "max E(T) = " + fmt(arg.value, 10) + " over " +
                          std::to_string(arg.words.size()) + " word(s)"});
  }

  for (unsigned n = 1; n <= 10; ++n) {
    for (int which = 0; which < 2; ++which) {
      CheckResult c{std::string(which == 0 ? "flip-count-identity" : "flip-volume-identity") +
                        " n=" + std::to_string(n),
                    CheckStatus::Pass, ""};
      try {
        const CoefficientPair pair = which == 0 ? flip_count_identity(n) : flip_volume_identity(n);
        c.detail = pair.brute.str();
      } catch (const OracleError& e) {
        c.status = CheckStatus::Fail;
        c.detail = e.what();
      }
      checks.push_back(std::move(c));
    }
  }

  {
    CheckResult c{"natural-volume-asymptotic", CheckStatus::Pass, ""};
    double previous = std::numeric_limits<double>::infinity();
    bool shrinking = true;
    double last = 0.0;
    for (unsigned n : {10u, 50u, 100u, 200u}) {
      const VolumeAsymptotic v = natural_volume_asymptotic(n);
      shrinking = shrinking && v.relative_deviation < previous;
      previous = v.relative_deviation;
      last = v.relative_deviation;
      c.detail += "n=" + std::to_string(n) + ":" + fmt(v.relative_deviation, 4) + " ";
    }
    if (!shrinking || !(last < 0.10)) c.status = CheckStatus::Fail;
    checks.push_back(std::move(c));
  }
  return report;
}

json to_json(const VerifyReport& report) {
  json checks = json::array();
  for (const CheckResult& c : report.checks) {
    checks.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
  }
  return {{"max_n", report.max_length},
          {"alphas", report.alphas},
          {"passed", report.passed()},
          {"checks", checks}};
}

void print(std::ostream& out, const VerifyReport& report) {
  std::size_t counts[3] = {0, 0, 0};
  for (const CheckResult& c : report.checks) {
    out << std::left << std::setw(12) << to_string(c.status) << c.name << "  (" << c.detail
        << ")\n";
    ++counts[static_cast<int>(c.status)];
  }
  out << counts[0] << " passed, " << counts[1] << " failed, " << counts[2]
      << " discrepancies\n";
}

json inspect_word(const Configuration& w, const std::vector<double>& alphas) {
  json out;
  out["word"] = w.str();
  out["length"] = w.size();
  out["energy"] = energy(w);
  out["volume"] = volume(w);
  out["path"] = path_profile(w);

  json flips = json::array();
  for (const FlipMove& m : enumerate_flips(w)) {
    flips.push_back({{"position", m.position + 1},
                     {"height", m.height},
                     {"delta_e", m.delta_e},
                     {"class", to_string(m.flip_class())}});
  }
  out["flips"] = flips;

  json factors = json::array();
  for (const DyckFactor& v : dyck_decompose(w)) {
    factors.push_back({{"start", v.start + 1},
                       {"end", v.end},
                       {"height", v.height},
                       {"sign", v.sign == Sign::Positive ? "+" : "-"},
                       {"ones", v.ones},
                       {"factor", w.str().substr(v.start, v.length())}});
  }
  out["dyck_factors"] = factors;

  json variant = json::array();
  if (!w.empty()) {
    for (double a : alphas) {
      const VariantParams p(a);
      variant.push_back({{"alpha", a}, {"phi", variant_phi(w, p)}, {"bound", variant_bound(w, p)}});
    }
  }
  out["variant"] = variant;

  if (w.size() <= kHittingTimeMaxLength) {
    out["exact_T"] = w.empty() ? 0.0 : expected_convergence_exact(w.size()).at(w);
  } else {
    out["exact_T"] = nullptr;
    out["notice"] = "exact E(T) omitted: length " + std::to_string(w.size()) +
                    " exceeds the exact-solver limit " + std::to_string(kHittingTimeMaxLength);
  }
  return out;
}

void print_inspection(std::ostream& out, const json& r) {
  out << "word      " << r["word"].get<std::string>() << '\n'
      << "length    " << r["length"] << '\n'
      << "energy    " << r["energy"] << '\n'
      << "volume    " << r["volume"] << '\n';
  if (r["exact_T"].is_null()) {
    out << "E(T)      (" << r["notice"].get<std::string>() << ")\n";
  } else {
    out << "E(T)      " << std::setprecision(12) << r["exact_T"].get<double>() << '\n';
  }
  out << "flips     " << r["flips"].size() << '\n';
  for (const auto& f : r["flips"]) {
    out << "  i=" << f["position"] << " height=" << f["height"] << " dE=" << f["delta_e"]
        << " " << f["class"].get<std::string>() << '\n';
  }
  out << "dyck factors " << r["dyck_factors"].size() << '\n';
  for (const auto& v : r["dyck_factors"]) {
    out << "  [" << v["start"] << ".." << v["end"] << "] h=" << v["height"] << " "
        << v["sign"].get<std::string>() << " ones=" << v["ones"] << " "
        << v["factor"].get<std::string>() << '\n';
  }
  for (const auto& p : r["variant"]) {
    out << "alpha=" << p["alpha"].get<double>() << "  phi=" << std::setprecision(10)
        << p["phi"].get<double>() << "  bound=" << p["bound"].get<double>() << '\n';
  }
}

}  // namespace cooling

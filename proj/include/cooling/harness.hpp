#pragma once

// Experiment orchestration behind the `cooling` command-line tool: batch
// Monte Carlo with schedule-independent seeding, CSV/JSON emission, scaling
// fits, and the exact verification bundle.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cooling/word.hpp"

namespace cooling {

enum class Mode { Worst, Uniform, Natural, Word };

const char* to_string(Mode mode) noexcept;
Mode mode_from_string(const std::string& name);

/// Seed of replicate `replicate` at length `n`: splitmix64 finalizer over
/// the three inputs, so any schedule reproduces the same streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t n, std::uint64_t replicate);

struct RunRecord {
  std::size_t n = 0;
  Mode mode = Mode::Worst;
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  std::uint64_t steps = 0;  // convergence time T
  double wall_time_s = 0.0;
};

struct SimulateConfig {
  Mode mode = Mode::Worst;
  std::vector<std::size_t> n_list;
  std::optional<Configuration> word;  // Mode::Word only
  std::size_t reps = 1;
  std::uint64_t master_seed = 0;
  unsigned threads = 1;
  bool record_wall_time = false;  // off keeps the CSV byte-reproducible
  std::uint64_t step_cap = 10'000'000'000ULL;
};

/// Runs every (n, replicate) job; records sorted by (n order, replicate).
/// Throws std::runtime_error if a run exceeds the step cap.
std::vector<RunRecord> simulate(const SimulateConfig& config);

inline constexpr const char* kCsvHeader = "n,mode,replicate,seed,T,wall_time_s";

void write_csv(std::ostream& out, const std::vector<RunRecord>& records);
std::string to_csv(const std::vector<RunRecord>& records);
std::vector<RunRecord> read_csv(std::istream& in);

struct SummaryRow {
  std::size_t n = 0;
  std::size_t reps = 0;
  double mean_T = 0.0;
  double std_T = 0.0;  // sample standard deviation
  double stderr_T = 0.0;
};

/// Per-n statistics, in increasing n.
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);
nlohmann::json summary_json(const std::vector<SummaryRow>& rows);

enum class FitModel { Cubic, N52Log };

const char* to_string(FitModel model) noexcept;
FitModel fit_model_from_string(const std::string& name);

/// n^3 or n^{5/2} ln n.
double model_predictor(FitModel model, double n);

/// Which size enters the model: the half-length L/2 (letters of each kind,
/// the scale of the worst-case and uniform-start constants) or
/// the full word length L.
enum class SizeVariable { HalfLength, Length };

const char* to_string(SizeVariable size) noexcept;
SizeVariable size_variable_from_string(const std::string& name);

struct ScalingFit {
  FitModel model = FitModel::Cubic;
  SizeVariable size = SizeVariable::HalfLength;
  double c = 0.0;
  std::vector<std::pair<double, double>> points;  // (L, mean T)
  double residual = 0.0;       // relative RMS of mean T - c x
  double loglog_slope = 0.0;   // unconstrained least squares of ln T on ln n
};

/// Least squares through the origin of mean T against the model predictor,
/// points given as (L, mean T). Needs at least three distinct lengths with
/// positive mean T.
ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& points, FitModel model,
                       SizeVariable size = SizeVariable::HalfLength);
ScalingFit fit_scaling(const std::vector<RunRecord>& records, FitModel model,
                       SizeVariable size = SizeVariable::HalfLength);
nlohmann::json to_json(const ScalingFit& fit);

enum class CheckStatus { Pass, Fail, Discrepancy };

const char* to_string(CheckStatus status) noexcept;

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
};

struct VerifyReport {
  std::size_t max_length = 0;
  std::vector<double> alphas;
  std::vector<CheckResult> checks;

  bool passed() const noexcept;  // discrepancies do not fail the bundle
};

constexpr std::size_t kVerifyMaxLength = 14;

/// Runs every exact verifier for lengths up to max_length (<= 14).
VerifyReport run_verification(std::size_t max_length, const std::vector<double>& alphas);
nlohmann::json to_json(const VerifyReport& report);
void print(std::ostream& out, const VerifyReport& report);

/// Single-word inspection: energy, volume, flips, Dyck factors, the variant
/// and its bound on an alpha grid, and the exact E(T) when L <= 14.
nlohmann::json inspect_word(const Configuration& w, const std::vector<double>& alphas);
void print_inspection(std::ostream& out, const nlohmann::json& report);

}  // namespace cooling

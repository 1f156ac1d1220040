#pragma once

// Exact small-instance ground truth: enumeration of W_L, expected hitting
// times by level-wise linear solves, exhaustive checks of the variant's
// drift and bounds, and exact generating-function coefficients.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cooling/word.hpp"

namespace cooling {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

constexpr std::size_t kEnumerationMaxLength = 20;
constexpr std::size_t kHittingTimeMaxLength = 14;
constexpr double kResidualTolerance = 1e-10;

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All of W_L in lexicographic order ('1' < '2'). L must be even and <= 20.
std::vector<Configuration> enumerate_configurations(std::size_t length);

/// Packs a word of length <= 64 into bits (bit k set iff letter k is 2).
std::uint64_t pack(const Configuration& w);

class HittingTimeTable {
 public:
  HittingTimeTable(std::vector<Configuration> words, std::vector<double> times,
                   double residual);

  std::size_t length() const noexcept { return length_; }
  std::size_t size() const noexcept { return words_.size(); }
  const std::vector<Configuration>& words() const noexcept { return words_; }
  const std::vector<double>& times() const noexcept { return times_; }

  /// Largest max-norm residual over the per-level solves.
  double residual() const noexcept { return residual_; }

  double at(const Configuration& w) const;
  std::optional<std::size_t> index_of(const Configuration& w) const;

 private:
  std::size_t length_ = 0;
  std::vector<Configuration> words_;
  std::vector<double> times_;
  double residual_ = 0.0;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// E(T | w0 = w) for every w in W_L, L <= 14. Energy levels are solved in
/// increasing order since the chain never raises the energy.
HittingTimeTable expected_convergence_exact(std::size_t length);

struct DriftViolation {
  Configuration word;
  double drift = 0.0;
};

struct DriftReport {
  std::size_t length = 0;
  double alpha = 0.0;
  double threshold = 0.0;  // -alpha(1-alpha)/2 (L/2)^(alpha-2)
  std::size_t checked = 0;
  double worst_drift = 0.0;  // largest (least negative) expected change
  std::optional<Configuration> worst_word;
  std::vector<DriftViolation> violations;  // drift > threshold + tolerance
  bool strictly_negative = true;

  bool holds() const noexcept { return violations.empty(); }
};

/// Exact one-step expected change of the variant under the cooling chain.
double expected_variant_drift(const Configuration& w, VariantParams params);

/// Compares the drift of every mismatched word of W_L to the guaranteed
/// decrease. Violations are reported, never thrown.
DriftReport verify_drift_lemma(std::size_t length, VariantParams params,
                               double tolerance = 1e-9);

struct BoundViolation {
  Configuration word;
  std::string what;
};

struct BoundsReport {
  std::size_t length = 0;
  double alpha = 0.0;
  std::size_t checked = 0;
  std::vector<BoundViolation> violations;

  bool holds() const noexcept { return violations.empty(); }
};

/// (1+L/2)^a <= phi <= L^(a+1), with equality on the left iff E(w) = 0.
BoundsReport verify_variant_bounds(std::size_t length, VariantParams params,
                                   double tolerance = 1e-12);

/// phi(w) <= factor * V(w) over W_L. With factor 1 this fails on every word
/// with an isolated bump ("12" has V = 1 < 2^alpha); factor 2 always holds.
BoundsReport verify_volume_domination(std::size_t length, VariantParams params,
                                      double factor = 1.0);

/// E(T | w) <= variant_bound(w) over W_L, against the exact table.
BoundsReport verify_hitting_bound(const HittingTimeTable& table, VariantParams params);

/// Transitions of the cooling chain never leave to a higher energy level.
bool verify_level_ordering(std::size_t length);

struct CoefficientPair {
  unsigned n = 0;
  BigInt brute;
  BigInt closed;

  bool agrees() const { return brute == closed; }
};

/// [z^n] 2z (1-4z)^{-3/2} = 2(2n-1) C(2n-2, n-1).
BigInt flip_count_coefficient(unsigned n);

/// [z^n] (16z^3 + 4z^2 + 2z)(1-4z)^{-3}.
BigInt flip_volume_coefficient(unsigned n);

/// Sum over W_{2n} of flips(w), by enumeration and in closed form. n <= 10.
/// Throws OracleError when the two disagree.
CoefficientPair flip_count_identity(unsigned n);

/// Sum over W_{2n} of flips(w) V(w), likewise.
CoefficientPair flip_volume_identity(unsigned n);

struct VolumeAsymptotic {
  unsigned n = 0;
  BigRational exact;           // sum of nu(w) V(w) over W_{2n}
  double exact_value = 0.0;
  double asymptotic = 0.0;     // (sqrt(pi)/2) n^{3/2}
  double relative_deviation = 0.0;
  bool enumerated = false;     // cross-checked against W_{2n} directly
};

/// Natural-law mean volume as a ratio of exact coefficients. For n <= 10
/// the ratio is also recomputed by enumeration (OracleError on mismatch).
VolumeAsymptotic natural_volume_asymptotic(unsigned n);

struct ArgmaxResult {
  std::vector<Configuration> words;
  double value = 0.0;
};

/// Configurations maximizing E(T | w) over W_L, L <= 12.
ArgmaxResult worst_case_argmax(std::size_t length, double rel_tolerance = 1e-9);
ArgmaxResult worst_case_argmax(const HittingTimeTable& table, double rel_tolerance = 1e-9);

}  // namespace cooling

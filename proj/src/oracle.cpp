#include "cooling/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "cooling/flips.hpp"

namespace cooling {

namespace {

void require_enumerable(std::size_t length, std::size_t max_length) {
  if (length % 2 != 0) {
    throw std::invalid_argument("length must be even, got " + std::to_string(length));
  }
  if (length > max_length) {
    throw std::invalid_argument("length " + std::to_string(length) +
                                " exceeds the enumeration bound " + std::to_string(max_length));
  }
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// [z^k] (1-4z)^{-3} = C(k+2, 2) 4^k.
BigInt inverse_cube_coefficient(int k) {
  if (k < 0) return 0;
  BigInt four_pow = 1;
  four_pow <<= 2 * k;
  return binomial(static_cast<unsigned>(k) + 2, 2) * four_pow;
}

}  // namespace

std::vector<Configuration> enumerate_configurations(std::size_t length) {
  require_enumerable(length, kEnumerationMaxLength);
  std::vector<Letter> letters(length, Letter::Two);
  std::fill(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(length / 2),
            Letter::One);
  std::vector<Configuration> out;
  do {
    out.emplace_back(letters);
  } while (std::next_permutation(letters.begin(), letters.end()));
  return out;
}

std::uint64_t pack(const Configuration& w) {
  if (w.size() > 64) throw std::invalid_argument("pack supports words of length <= 64");
  std::uint64_t bits = 0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] == Letter::Two) bits |= std::uint64_t{1} << k;
  }
  return bits;
}

HittingTimeTable::HittingTimeTable(std::vector<Configuration> words, std::vector<double> times,
                                   double residual)
    : length_(words.empty() ? 0 : words.front().size()),
      words_(std::move(words)),
      times_(std::move(times)),
      residual_(residual) {
  for (std::size_t i = 0; i < words_.size(); ++i) index_.emplace(pack(words_[i]), i);
}

std::optional<std::size_t> HittingTimeTable::index_of(const Configuration& w) const {
  if (w.size() != length_) return std::nullopt;
  const auto it = index_.find(pack(w));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double HittingTimeTable::at(const Configuration& w) const {
  const auto i = index_of(w);
  if (!i) throw std::out_of_range("configuration " + w.str() + " is not in the table");
  return times_[*i];
}

HittingTimeTable expected_convergence_exact(std::size_t length) {
  require_enumerable(length, kHittingTimeMaxLength);
  std::vector<Configuration> words = enumerate_configurations(length);
  std::unordered_map<std::uint64_t, std::size_t> index;
  std::map<int, std::vector<std::size_t>> levels;
  std::vector<int> energies(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    index.emplace(pack(words[i]), i);
    energies[i] = energy(words[i]);
    levels[energies[i]].push_back(i);
  }

  std::vector<double> times(words.size(), 0.0);
  std::vector<std::ptrdiff_t> local(words.size(), -1);
  double worst_residual = 0.0;

  for (const auto& [level, members] : levels) {
    if (level == 0) continue;
    const auto m = static_cast<Eigen::Index>(members.size());
    for (Eigen::Index r = 0; r < m; ++r) local[members[static_cast<std::size_t>(r)]] = r;

    // t(w) - (1/k) sum_{same level} t(w') = 1 + (1/k) sum_{lower} t(w')
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m);
    Eigen::VectorXd b = Eigen::VectorXd::Ones(m);
    for (Eigen::Index r = 0; r < m; ++r) {
      const Configuration& w = words[members[static_cast<std::size_t>(r)]];
      const std::vector<std::size_t> moves = allowed_flips(w);
      if (moves.empty()) {
        throw OracleError("configuration " + w.str() + " has mismatches but no allowed flip");
      }
      const double p = 1.0 / static_cast<double>(moves.size());
      for (std::size_t i : moves) {
        const std::size_t j = index.at(pack(apply_flip(w, i)));
        if (energies[j] > level) {
          throw OracleError("flip at " + std::to_string(i + 1) + " raises the energy of " +
                            w.str());
        }
        if (energies[j] == level) {
          a(r, local[j]) -= p;
        } else {
          b(r) += p * times[j];
        }
      }
    }

    const Eigen::VectorXd x = a.partialPivLu().solve(b);
    const double residual = (a * x - b).cwiseAbs().maxCoeff();
    if (!(residual <= kResidualTolerance)) {
      std::ostringstream msg;
      msg << "hitting-time solve at L=" << length << ", energy level " << level << " (" << m
          << " states): residual " << residual << " exceeds " << kResidualTolerance;
      throw OracleError(msg.str());
    }
    worst_residual = std::max(worst_residual, residual);
    for (Eigen::Index r = 0; r < m; ++r) times[members[static_cast<std::size_t>(r)]] = x(r);
  }
  return HittingTimeTable(std::move(words), std::move(times), worst_residual);
}

double expected_variant_drift(const Configuration& w, VariantParams params) {
  if (energy(w) == 0) return 0.0;
  const std::vector<std::size_t> moves = allowed_flips(w);
  const double here = variant_phi(w, params);
  double sum = 0.0;
  for (std::size_t i : moves) sum += variant_phi(apply_flip(w, i), params) - here;
  return sum / static_cast<double>(moves.size());
}

DriftReport verify_drift_lemma(std::size_t length, VariantParams params, double tolerance) {
  require_enumerable(length, kHittingTimeMaxLength);
  DriftReport report;
  report.length = length;
  report.alpha = params.alpha();
  report.threshold = length >= 2 ? -variant_drift_epsilon(length, params) : 0.0;
  report.worst_drift = -std::numeric_limits<double>::infinity();
  for (const Configuration& w : enumerate_configurations(length)) {
    if (energy(w) == 0) continue;
    ++report.checked;
    const double drift = expected_variant_drift(w, params);
    if (drift > report.worst_drift) {
      report.worst_drift = drift;
      report.worst_word = w;
    }
    if (!(drift < 0.0)) report.strictly_negative = false;
    if (drift > report.threshold + tolerance) report.violations.push_back({w, drift});
  }
  if (report.checked == 0) report.worst_drift = 0.0;
  return report;
}

BoundsReport verify_variant_bounds(std::size_t length, VariantParams params, double tolerance) {
  require_enumerable(length, kEnumerationMaxLength);
  if (length == 0) throw std::invalid_argument("variant bounds need L >= 2");
  BoundsReport report;
  report.length = length;
  report.alpha = params.alpha();
  const double a = params.alpha();
  const double lower = std::pow(1.0 + static_cast<double>(length / 2), a);
  const double upper = std::pow(static_cast<double>(length), a + 1.0);
  for (const Configuration& w : enumerate_configurations(length)) {
    ++report.checked;
    const double phi = variant_phi(w, params);
    std::ostringstream what;
    what.precision(17);
    if (phi < lower - tolerance) what << "phi " << phi << " below lower bound " << lower;
    if (phi > upper + tolerance) what << "phi " << phi << " above upper bound " << upper;
    const bool at_lower = std::abs(phi - lower) <= tolerance * std::max(1.0, lower);
    const bool ground = energy(w) == 0;
    if (at_lower != ground) {
      what << (ground ? "ground state misses the lower bound" : "lower bound reached with E > 0");
    }
    if (!what.str().empty()) report.violations.push_back({w, what.str()});
  }
  return report;
}

BoundsReport verify_volume_domination(std::size_t length, VariantParams params,
                                      double factor) {
  require_enumerable(length, kEnumerationMaxLength);
  if (length == 0) throw std::invalid_argument("volume domination needs L >= 2");
  BoundsReport report;
  report.length = length;
  report.alpha = params.alpha();
  for (const Configuration& w : enumerate_configurations(length)) {
    ++report.checked;
    const double phi = variant_phi(w, params);
    const double v = factor * static_cast<double>(volume(w));
    if (phi > v + 1e-12) {
      std::ostringstream what;
      what.precision(17);
      what << "phi " << phi << " exceeds " << factor << " * volume = " << v;
      report.violations.push_back({w, what.str()});
    }
  }
  return report;
}

BoundsReport verify_hitting_bound(const HittingTimeTable& table, VariantParams params) {
  BoundsReport report;
  report.length = table.length();
  report.alpha = params.alpha();
  for (std::size_t i = 0; i < table.size(); ++i) {
    ++report.checked;
    const double t = table.times()[i];
    const double bound = variant_bound(table.words()[i], params);
    if (t > bound * (1.0 + 1e-12)) {
      std::ostringstream what;
      what.precision(17);
      what << "E(T) " << t << " exceeds the variant bound " << bound;
      report.violations.push_back({table.words()[i], what.str()});
    }
  }
  return report;
}

bool verify_level_ordering(std::size_t length) {
  for (const Configuration& w : enumerate_configurations(length)) {
    const int e = energy(w);
    for (std::size_t i : allowed_flips(w)) {
      if (energy(apply_flip(w, i)) > e) return false;
    }
  }
  return true;
}

BigInt flip_count_coefficient(unsigned n) {
  if (n == 0) return 0;
  return 2 * BigInt(2 * n - 1) * binomial(2 * n - 2, n - 1);
}

BigInt flip_volume_coefficient(unsigned n) {
  const int k = static_cast<int>(n);
  return 2 * inverse_cube_coefficient(k - 1) + 4 * inverse_cube_coefficient(k - 2) +
         16 * inverse_cube_coefficient(k - 3);
}

namespace {

struct Sums {
  BigInt flips;
  BigInt flips_times_volume;
};

Sums enumerate_sums(unsigned n) {
  if (n < 1 || n > kEnumerationMaxLength / 2) {
    throw std::invalid_argument("coefficient identities enumerate W_{2n}, 1 <= n <= 10");
  }
  std::uint64_t flips = 0;
  std::uint64_t weighted = 0;
  for (const Configuration& w : enumerate_configurations(2 * n)) {
    const std::uint64_t f = flip_count(w);
    flips += f;
    weighted += f * static_cast<std::uint64_t>(volume(w));
  }
  return {BigInt(flips), BigInt(weighted)};
}

CoefficientPair checked(unsigned n, BigInt brute, BigInt closed, const char* name) {
  CoefficientPair pair{n, std::move(brute), std::move(closed)};
  if (!pair.agrees()) {
    throw OracleError(std::string(name) + " identity fails at n=" + std::to_string(n) +
                      ": enumeration " + pair.brute.str() + " vs closed form " +
                      pair.closed.str());
  }
  return pair;
}

}  // namespace

CoefficientPair flip_count_identity(unsigned n) {
  return checked(n, enumerate_sums(n).flips, flip_count_coefficient(n), "flip-count");
}

CoefficientPair flip_volume_identity(unsigned n) {
  return checked(n, enumerate_sums(n).flips_times_volume, flip_volume_coefficient(n),
                 "flip-volume");
}

VolumeAsymptotic natural_volume_asymptotic(unsigned n) {
  if (n < 1) throw std::invalid_argument("natural_volume_asymptotic needs n >= 1");
  VolumeAsymptotic out;
  out.n = n;
  out.exact = BigRational(flip_volume_coefficient(n), flip_count_coefficient(n));
  if (n <= kEnumerationMaxLength / 2) {
    const Sums sums = enumerate_sums(n);
    const BigRational direct(sums.flips_times_volume, sums.flips);
    if (direct != out.exact) {
      throw OracleError("natural mean volume at n=" + std::to_string(n) + ": enumeration " +
                        direct.str() + " vs coefficient ratio " + out.exact.str());
    }
    out.enumerated = true;
  }
  out.exact_value = out.exact.convert_to<double>();
  out.asymptotic = std::sqrt(std::numbers::pi) / 2.0 * std::pow(static_cast<double>(n), 1.5);
  out.relative_deviation = std::abs(out.exact_value / out.asymptotic - 1.0);
  return out;
}

ArgmaxResult worst_case_argmax(const HittingTimeTable& table, double rel_tolerance) {
  ArgmaxResult result;
  if (table.size() == 0) return result;
  result.value = *std::max_element(table.times().begin(), table.times().end());
  const double slack = rel_tolerance * std::max(1.0, result.value);
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table.times()[i] >= result.value - slack) result.words.push_back(table.words()[i]);
  }
  return result;
}

ArgmaxResult worst_case_argmax(std::size_t length, double rel_tolerance) {
  if (length > 12) throw std::invalid_argument("worst_case_argmax limited to L <= 12");
  return worst_case_argmax(expected_convergence_exact(length), rel_tolerance);
}

}  // namespace cooling

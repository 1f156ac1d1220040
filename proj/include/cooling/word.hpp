#pragma once

// Balanced two-letter words ("configurations") and the quantities defined on
// them: mismatch energy, lattice-path profile, volume, maximal Dyck factors
// and the Dyck-factor variant.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cooling {

enum class Letter : std::uint8_t { One = 1, Two = 2 };

constexpr Letter other(Letter a) noexcept {
  return a == Letter::One ? Letter::Two : Letter::One;
}

constexpr int step_of(Letter a) noexcept { return a == Letter::One ? +1 : -1; }

class ParseError : public std::invalid_argument {
 public:
  // An odd length always implies unequal counts and reports as Unbalanced.
  enum class Kind { BadCharacter, Unbalanced };

  ParseError(Kind kind, const std::string& what)
      : std::invalid_argument(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// A word over {1,2} with as many 1s as 2s. Immutable once built.
class Configuration {
 public:
  Configuration() = default;

  /// Throws ParseError if `letters` is not balanced.
  explicit Configuration(std::vector<Letter> letters);

  static Configuration parse(std::string_view text);

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  /// L/2, the number of occurrences of each letter.
  std::size_t half() const noexcept { return letters_.size() / 2; }

  Letter operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Letter>& letters() const noexcept { return letters_; }

  std::string str() const;

  /// Exchanges every 1 with a 2 and vice versa.
  Configuration swapped() const;

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration& a, const Configuration& b) {
    return a.letters_ <=> b.letters_;
  }

 private:
  std::vector<Letter> letters_;
};

/// Free-function alias of Configuration::parse.
Configuration parse_configuration(std::string_view text);
std::string format_configuration(const Configuration& w);

/// Number of positions i with w_i = w_{i+1}.
int energy(const Configuration& w);

/// Prefix heights h_0..h_L, with a 1 stepping up and a 2 stepping down.
std::vector<int> path_profile(const Configuration& w);

/// Sum over steps of |h_{k-1} + h_k|; twice the area between path and axis.
std::int64_t doubled_volume(const Configuration& w);

/// Area between the path and the horizontal axis. Always an integer: every
/// step contributes an odd doubled area and there is an even number of steps.
std::int64_t volume(const Configuration& w);

enum class Sign : std::int8_t { Positive = 1, Negative = -1 };

struct DyckFactor {
  std::size_t start = 0;  // first letter, 0-based
  std::size_t end = 0;    // one past the last letter
  int height = 0;
  Sign sign = Sign::Positive;
  std::size_t ones = 0;

  std::size_t length() const noexcept { return end - start; }
  friend bool operator==(const DyckFactor&, const DyckFactor&) = default;
};

/// All maximal Dyck factors, over every height and both signs, sorted by
/// (start, height). Linear time.
std::vector<DyckFactor> dyck_decompose(const Configuration& w);

/// Strictly inside (0,1).
class VariantParams {
 public:
  explicit VariantParams(double alpha);
  double alpha() const noexcept { return alpha_; }

 private:
  double alpha_;
};

/// Sum over maximal Dyck factors v of (1 + |v|_1)^alpha. Rejects the empty word.
double variant_phi(const Configuration& w, VariantParams params);

/// Upper bound on E(T | w0) from the drift of the variant:
/// phi(w0) * 2 (L/2)^(2-alpha) / (alpha (1-alpha)).
double variant_bound(const Configuration& w0, VariantParams params);

/// The per-step drift guaranteed by the variant, alpha(1-alpha)/2 (L/2)^(alpha-2).
double variant_drift_epsilon(std::size_t length, VariantParams params);

/// alpha = 1 - 1/ln(n), minimizer of the averaged bound; requires n >= 3.
VariantParams optimal_average_alpha(double n);

}  // namespace cooling

#include "cooling/word.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace cooling {

namespace {

void check_balanced(const std::vector<Letter>& letters) {
  const auto ones = std::count(letters.begin(), letters.end(), Letter::One);
  const auto twos = static_cast<std::ptrdiff_t>(letters.size()) - ones;
  if (ones != twos) {
    throw ParseError(ParseError::Kind::Unbalanced,
                     "configuration is unbalanced: " + std::to_string(ones) + " letter(s) 1 vs " +
                         std::to_string(twos) + " letter(s) 2" +
                         (letters.size() % 2 != 0 ? " (odd length)" : ""));
  }
}

constexpr std::size_t kClosed = std::numeric_limits<std::size_t>::max();

}  // namespace

Configuration::Configuration(std::vector<Letter> letters) : letters_(std::move(letters)) {
  check_balanced(letters_);
}

Configuration Configuration::parse(std::string_view text) {
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case '1': letters.push_back(Letter::One); break;
      case '2': letters.push_back(Letter::Two); break;
      default:
        throw ParseError(ParseError::Kind::BadCharacter,
                         "invalid character '" + std::string(1, text[i]) + "' at position " +
                             std::to_string(i + 1) + " (expected '1' or '2')");
    }
  }
  return Configuration(std::move(letters));
}

std::string Configuration::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (Letter a : letters_) s.push_back(a == Letter::One ? '1' : '2');
  return s;
}

Configuration Configuration::swapped() const {
  std::vector<Letter> out(letters_.size());
  std::transform(letters_.begin(), letters_.end(), out.begin(), other);
  Configuration w;
  w.letters_ = std::move(out);
  return w;
}

Configuration parse_configuration(std::string_view text) { return Configuration::parse(text); }

std::string format_configuration(const Configuration& w) { return w.str(); }

int energy(const Configuration& w) {
  int e = 0;
  for (std::size_t i = 1; i < w.size(); ++i) e += (w[i - 1] == w[i]) ? 1 : 0;
  return e;
}

std::vector<int> path_profile(const Configuration& w) {
  std::vector<int> h(w.size() + 1, 0);
  for (std::size_t k = 0; k < w.size(); ++k) h[k + 1] = h[k] + step_of(w[k]);
  return h;
}

std::int64_t doubled_volume(const Configuration& w) {
  std::int64_t twice = 0;
  int h = 0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const int next = h + step_of(w[k]);
    twice += std::abs(h + next);
    h = next;
  }
  return twice;
}

std::int64_t volume(const Configuration& w) { return doubled_volume(w) / 2; }

std::vector<DyckFactor> dyck_decompose(const Configuration& w) {
  const std::size_t len = w.size();
  // Open factor start per |height|, one table for each side of the axis.
  std::vector<std::size_t> open_pos(len / 2 + 1, kClosed);
  std::vector<std::size_t> open_neg(len / 2 + 1, kClosed);
  std::vector<DyckFactor> out;

  auto close = [&](std::vector<std::size_t>& table, int height, std::size_t end, Sign sign) {
    const auto slot = static_cast<std::size_t>(std::abs(height));
    if (table[slot] == kClosed) return;
    const std::size_t start = table[slot];
    out.push_back({start, end, height, sign, (end - start) / 2});
    table[slot] = kClosed;
  };

  int h = 0;
  for (std::size_t k = 0; k < len; ++k) {
    const int s = step_of(w[k]);
    if (h >= 0) {
      const auto slot = static_cast<std::size_t>(h);
      if (s > 0) {
        if (open_pos[slot] == kClosed) open_pos[slot] = k;
      } else {
        close(open_pos, h, k, Sign::Positive);
      }
    }
    if (h <= 0) {
      const auto slot = static_cast<std::size_t>(-h);
      if (s < 0) {
        if (open_neg[slot] == kClosed) open_neg[slot] = k;
      } else {
        close(open_neg, h, k, Sign::Negative);
      }
    }
    h += s;
  }
  if (len > 0) {
    close(open_pos, 0, len, Sign::Positive);
    close(open_neg, 0, len, Sign::Negative);
  }
  std::sort(out.begin(), out.end(),
            [](const DyckFactor& a, const DyckFactor& b) { return a.start < b.start; });
  return out;
}

VariantParams::VariantParams(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie strictly inside (0,1), got " +
                                std::to_string(alpha));
  }
}

double variant_phi(const Configuration& w, VariantParams params) {
  if (w.empty()) throw std::invalid_argument("variant is undefined on the empty configuration");
  double phi = 0.0;
  for (const DyckFactor& v : dyck_decompose(w)) {
    phi += std::pow(1.0 + static_cast<double>(v.ones), params.alpha());
  }
  return phi;
}

double variant_drift_epsilon(std::size_t length, VariantParams params) {
  const double a = params.alpha();
  const double n = static_cast<double>(length) / 2.0;
  return a * (1.0 - a) / 2.0 * std::pow(n, a - 2.0);
}

double variant_bound(const Configuration& w0, VariantParams params) {
  return variant_phi(w0, params) / variant_drift_epsilon(w0.size(), params);
}

VariantParams optimal_average_alpha(double n) {
  if (!(n >= 3.0)) {
    throw std::invalid_argument("alpha = 1 - 1/ln(n) needs n >= 3");
  }
  return VariantParams(1.0 - 1.0 / std::log(n));
}

}  // namespace cooling

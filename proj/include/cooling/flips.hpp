#pragma once

// Flips on configurations and the cooling Markov chain.
//
// Positions are 0-based in this API: a flip at `i` exchanges letters i and
// i+1. User-facing output adds one.

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "cooling/word.hpp"

namespace cooling {

using Rng = std::mt19937_64;

enum class FlipClass { Irreversible, Reversible, Forbidden };

const char* to_string(FlipClass c) noexcept;

constexpr FlipClass classify_delta(int delta_e) noexcept {
  return delta_e < 0 ? FlipClass::Irreversible
                     : (delta_e == 0 ? FlipClass::Reversible : FlipClass::Forbidden);
}

struct FlipMove {
  std::size_t position = 0;
  int height = 0;  // path height just before letter i
  int delta_e = 0;

  FlipClass flip_class() const noexcept { return classify_delta(delta_e); }
  friend bool operator==(const FlipMove&, const FlipMove&) = default;
};

class InvalidFlip : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Every position whose two letters differ, in increasing order.
std::vector<FlipMove> enumerate_flips(const Configuration& w);

/// (L-1) - E(w), the number of performable flips.
std::size_t flip_count(const Configuration& w);

Configuration apply_flip(const Configuration& w, std::size_t i);

/// Energy change of the flip at i, read off the two neighbouring adjacencies.
int flip_delta(const Configuration& w, std::size_t i);

FlipClass classify_flip(const Configuration& w, std::size_t i);

/// Positions of flips with delta_e <= 0, increasing.
std::vector<std::size_t> allowed_flips(const Configuration& w);

/// Mutable state of one cooling run. Keeps the energy and the set of
/// non-increasing flips current under single flips, so one step costs O(1).
class CoolingState {
 public:
  explicit CoolingState(const Configuration& w);

  int energy() const noexcept { return energy_; }
  std::size_t size() const noexcept { return letters_.size(); }

  Configuration config() const;

  /// Allowed positions in unspecified order.
  const std::vector<std::size_t>& allowed() const noexcept { return dense_; }
  bool is_allowed(std::size_t i) const noexcept;

  /// Applies the (differing-letter) flip at i and repairs the cached fields
  /// for positions i-2..i+2. The flip need not be allowed.
  void flip(std::size_t i);

  /// One transition of the cooling chain; no-op on ground states.
  /// Returns the position flipped, or -1 when nothing moved.
  std::ptrdiff_t step(Rng& rng);

 private:
  bool eligible(std::size_t i) const noexcept;
  void refresh(std::size_t i);
  void insert(std::size_t i);
  void remove(std::size_t i);

  std::vector<Letter> letters_;
  int energy_ = 0;
  std::vector<std::size_t> dense_;
  std::vector<std::ptrdiff_t> slot_;  // index into dense_ or -1
};

/// Advances the chain by one step in place (see CoolingState::step).
void cooling_step(CoolingState& state, Rng& rng);

struct TracePoint {
  int energy = 0;
  double phi = 0.0;
};

struct RunOptions {
  std::uint64_t step_cap = 10'000'000'000ULL;
  bool trace = false;
  double trace_alpha = 0.5;
};

struct CoolingRun {
  enum class Status { Converged, CapExceeded };

  Status status = Status::Converged;
  std::uint64_t steps = 0;
  Configuration final_config;
  std::vector<TracePoint> trace;  // one entry per visited state, w_0 included

  bool converged() const noexcept { return status == Status::Converged; }
};

/// Runs the cooling chain from w0 until E = 0 (or until the step cap).
CoolingRun run_cooling(const Configuration& w0, Rng& rng, const RunOptions& options = {});

/// One step of the unrestricted walk: any differing pair, forbidden included.
Configuration melt_step(const Configuration& w, Rng& rng);

}  // namespace cooling

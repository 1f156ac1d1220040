#include "cooling/flips.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>

namespace cooling {

namespace {

// Energy change of exchanging letters[i] and letters[i+1], assumed different.
// Each existing neighbouring adjacency toggles between match and mismatch.
int local_delta(const std::vector<Letter>& letters, std::size_t i) noexcept {
  int delta = 0;
  if (i > 0) delta += (letters[i - 1] == letters[i]) ? -1 : +1;
  if (i + 2 < letters.size()) delta += (letters[i + 2] == letters[i + 1]) ? -1 : +1;
  return delta;
}

void require_flippable(const Configuration& w, std::size_t i) {
  if (i + 1 >= w.size()) {
    throw InvalidFlip("flip position " + std::to_string(i + 1) + " out of range for length " +
                      std::to_string(w.size()));
  }
  if (w[i] == w[i + 1]) {
    throw InvalidFlip("no flip at position " + std::to_string(i + 1) + ": letters are equal");
  }
}

}  // namespace

const char* to_string(FlipClass c) noexcept {
  switch (c) {
    case FlipClass::Irreversible: return "irreversible";
    case FlipClass::Reversible: return "reversible";
    case FlipClass::Forbidden: return "forbidden";
  }
  return "?";
}

std::vector<FlipMove> enumerate_flips(const Configuration& w) {
  std::vector<FlipMove> moves;
  int h = 0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] != w[i + 1]) moves.push_back({i, h, local_delta(w.letters(), i)});
    h += step_of(w[i]);
  }
  return moves;
}

std::size_t flip_count(const Configuration& w) {
  if (w.size() < 2) return 0;
  return w.size() - 1 - static_cast<std::size_t>(energy(w));
}

Configuration apply_flip(const Configuration& w, std::size_t i) {
  require_flippable(w, i);
  std::vector<Letter> letters = w.letters();
  std::swap(letters[i], letters[i + 1]);
  return Configuration(std::move(letters));
}

int flip_delta(const Configuration& w, std::size_t i) {
  require_flippable(w, i);
  return local_delta(w.letters(), i);
}

FlipClass classify_flip(const Configuration& w, std::size_t i) {
  return classify_delta(flip_delta(w, i));
}

std::vector<std::size_t> allowed_flips(const Configuration& w) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] != w[i + 1] && local_delta(w.letters(), i) <= 0) out.push_back(i);
  }
  return out;
}

CoolingState::CoolingState(const Configuration& w)
    : letters_(w.letters()),
      energy_(cooling::energy(w)),
      slot_(w.size() > 0 ? w.size() - 1 : 0, -1) {
  dense_.reserve(slot_.size());
  for (std::size_t i = 0; i < slot_.size(); ++i) {
    if (eligible(i)) insert(i);
  }
}

Configuration CoolingState::config() const { return Configuration(letters_); }

bool CoolingState::is_allowed(std::size_t i) const noexcept {
  return i < slot_.size() && slot_[i] >= 0;
}

bool CoolingState::eligible(std::size_t i) const noexcept {
  return letters_[i] != letters_[i + 1] && local_delta(letters_, i) <= 0;
}

void CoolingState::insert(std::size_t i) {
  slot_[i] = static_cast<std::ptrdiff_t>(dense_.size());
  dense_.push_back(i);
}

void CoolingState::remove(std::size_t i) {
  const auto at = static_cast<std::size_t>(slot_[i]);
  const std::size_t last = dense_.back();
  dense_[at] = last;
  slot_[last] = static_cast<std::ptrdiff_t>(at);
  dense_.pop_back();
  slot_[i] = -1;
}

void CoolingState::refresh(std::size_t i) {
  const bool want = eligible(i);
  const bool have = slot_[i] >= 0;
  if (want && !have) insert(i);
  if (!want && have) remove(i);
}

void CoolingState::flip(std::size_t i) {
  if (i + 1 >= letters_.size() || letters_[i] == letters_[i + 1]) {
    throw InvalidFlip("no flip at position " + std::to_string(i + 1));
  }
  energy_ += local_delta(letters_, i);
  std::swap(letters_[i], letters_[i + 1]);
  const std::size_t lo = i >= 2 ? i - 2 : 0;
  const std::size_t hi = std::min(i + 2, slot_.size() - 1);
  for (std::size_t j = lo; j <= hi; ++j) refresh(j);
}

std::ptrdiff_t CoolingState::step(Rng& rng) {
  if (energy_ == 0) return -1;
  if (dense_.empty()) {
    // Unreachable: every word with a mismatch admits a non-increasing flip.
    throw std::logic_error("cooling state with positive energy has no allowed flip");
  }
  std::uniform_int_distribution<std::size_t> pick(0, dense_.size() - 1);
  const std::size_t i = dense_[pick(rng)];
  flip(i);
  return static_cast<std::ptrdiff_t>(i);
}

void cooling_step(CoolingState& state, Rng& rng) { state.step(rng); }

CoolingRun run_cooling(const Configuration& w0, Rng& rng, const RunOptions& options) {
  CoolingRun run;
  CoolingState state(w0);
  std::optional<VariantParams> params;
  auto record = [&] {
    if (!options.trace) return;
    const Configuration w = state.config();
    run.trace.push_back({state.energy(), w.empty() ? 0.0 : variant_phi(w, *params)});
  };
  if (options.trace) params.emplace(options.trace_alpha);

  record();
  while (state.energy() > 0) {
    if (run.steps >= options.step_cap) {
      run.status = CoolingRun::Status::CapExceeded;
      break;
    }
    state.step(rng);
    ++run.steps;
    record();
  }
  run.final_config = state.config();
  return run;
}

Configuration melt_step(const Configuration& w, Rng& rng) {
  if (w.size() < 2) throw std::invalid_argument("melt_step needs a configuration of length >= 2");
  std::vector<std::size_t> positions;
  positions.reserve(w.size() - 1);
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] != w[i + 1]) positions.push_back(i);
  }
  std::uniform_int_distribution<std::size_t> pick(0, positions.size() - 1);
  return apply_flip(w, positions[pick(rng)]);
}

}  // namespace cooling

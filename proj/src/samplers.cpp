#include "cooling/samplers.hpp"

#include <algorithm>
#include <stdexcept>

#include "cooling/oracle.hpp"

namespace cooling {

namespace {

void require_even_length(std::size_t length) {
  if (length < 2 || length % 2 != 0) {
    throw std::invalid_argument("length must be even and >= 2, got " + std::to_string(length));
  }
}

std::vector<Letter> repeated(std::size_t length, Letter first, Letter second) {
  std::vector<Letter> letters(length, second);
  std::fill(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(length / 2), first);
  return letters;
}

}  // namespace

const char* to_string(SamplerKind kind) noexcept {
  switch (kind) {
    case SamplerKind::WorstCase: return "worst";
    case SamplerKind::GroundState: return "ground";
    case SamplerKind::Uniform: return "uniform";
    case SamplerKind::Natural: return "natural";
    case SamplerKind::NaturalExactTable: return "natural-table";
  }
  return "?";
}

SamplerKind sampler_kind_from_string(const std::string& name) {
  for (auto kind : {SamplerKind::WorstCase, SamplerKind::GroundState, SamplerKind::Uniform,
                    SamplerKind::Natural, SamplerKind::NaturalExactTable}) {
    if (name == to_string(kind)) return kind;
  }
  throw std::invalid_argument("unknown sampler '" + name + "'");
}

Configuration worst_case_config(std::size_t length) {
  require_even_length(length);
  return Configuration(repeated(length, Letter::One, Letter::Two));
}

Configuration ground_state_config(std::size_t length) {
  require_even_length(length);
  std::vector<Letter> letters(length);
  for (std::size_t k = 0; k < length; ++k) letters[k] = (k % 2 == 0) ? Letter::One : Letter::Two;
  return Configuration(std::move(letters));
}

Configuration sample_uniform_bridge(std::size_t length, Rng& rng) {
  require_even_length(length);
  std::vector<Letter> letters = repeated(length, Letter::One, Letter::Two);
  std::shuffle(letters.begin(), letters.end(), rng);
  return Configuration(std::move(letters));
}

Configuration sample_natural(std::size_t length, Rng& rng, std::size_t& rounds) {
  require_even_length(length);
  std::uniform_int_distribution<std::size_t> coin(0, length - 2);
  rounds = 0;
  for (;;) {
    ++rounds;
    Configuration w = sample_uniform_bridge(length, rng);
    // Accept with probability flips(w) / (L-1).
    if (coin(rng) < flip_count(w)) return w;
  }
}

Configuration sample_natural(std::size_t length, Rng& rng) {
  std::size_t rounds = 0;
  return sample_natural(length, rng, rounds);
}

NaturalTable exact_natural_distribution(std::size_t length) {
  require_even_length(length);
  if (length > kExactTableMaxLength) {
    throw std::invalid_argument("exact natural table limited to L <= " +
                                std::to_string(kExactTableMaxLength));
  }
  NaturalTable table;
  for (Configuration& w : enumerate_configurations(length)) {
    const auto weight = static_cast<std::uint64_t>(flip_count(w));
    table.total += weight;
    table.entries.push_back({std::move(w), weight});
  }
  return table;
}

Configuration sample_from_table(const NaturalTable& table, Rng& rng) {
  std::uniform_int_distribution<std::uint64_t> pick(0, table.total - 1);
  std::uint64_t r = pick(rng);
  for (const NaturalEntry& e : table.entries) {
    if (r < e.weight) return e.word;
    r -= e.weight;
  }
  return table.entries.back().word;
}

Sampler::Sampler(SamplerSpec spec) : spec_(spec) {
  require_even_length(spec_.length);
  if (spec_.kind == SamplerKind::NaturalExactTable) {
    table_ = exact_natural_distribution(spec_.length);
  }
}

Configuration Sampler::draw(Rng& rng) const {
  switch (spec_.kind) {
    case SamplerKind::WorstCase: return worst_case_config(spec_.length);
    case SamplerKind::GroundState: return ground_state_config(spec_.length);
    case SamplerKind::Uniform: return sample_uniform_bridge(spec_.length, rng);
    case SamplerKind::Natural: return sample_natural(spec_.length, rng);
    case SamplerKind::NaturalExactTable: return sample_from_table(table_, rng);
  }
  throw std::logic_error("unhandled sampler kind");
}

}  // namespace cooling

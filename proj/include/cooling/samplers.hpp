#pragma once

// Distributions over initial configurations.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cooling/flips.hpp"
#include "cooling/word.hpp"

namespace cooling {

enum class SamplerKind { WorstCase, GroundState, Uniform, Natural, NaturalExactTable };

const char* to_string(SamplerKind kind) noexcept;
SamplerKind sampler_kind_from_string(const std::string& name);

struct SamplerSpec {
  SamplerKind kind = SamplerKind::Uniform;
  std::size_t length = 2;
  std::uint64_t seed = 0;
};

constexpr std::size_t kExactTableMaxLength = 20;

/// 1^{L/2} 2^{L/2}: maximal energy, presumed slowest to cool.
Configuration worst_case_config(std::size_t length);

/// (12)^{L/2}.
Configuration ground_state_config(std::size_t length);

/// Uniform over W_L, by shuffling the multiset {1^{L/2}, 2^{L/2}}.
Configuration sample_uniform_bridge(std::size_t length, Rng& rng);

/// P(w) proportional to the number of flips of w. Exact rejection from the
/// uniform law: accept with probability flips(w)/(L-1).
Configuration sample_natural(std::size_t length, Rng& rng);

/// As sample_natural, also reporting the number of uniform draws used.
Configuration sample_natural(std::size_t length, Rng& rng, std::size_t& rounds);

struct NaturalEntry {
  Configuration word;
  std::uint64_t weight = 0;  // flips(word)
};

/// The natural law on W_L as exact weights over a common denominator.
struct NaturalTable {
  std::vector<NaturalEntry> entries;  // enumeration order
  std::uint64_t total = 0;

  double probability(std::size_t index) const {
    return static_cast<double>(entries[index].weight) / static_cast<double>(total);
  }
};

NaturalTable exact_natural_distribution(std::size_t length);

/// Draws from a precomputed table. Used for the NaturalExactTable kind.
Configuration sample_from_table(const NaturalTable& table, Rng& rng);

/// Draws configurations according to spec.kind and spec.length from the
/// caller's stream; spec.seed is left to callers that derive streams.
class Sampler {
 public:
  explicit Sampler(SamplerSpec spec);

  const SamplerSpec& spec() const noexcept { return spec_; }
  Configuration draw(Rng& rng) const;

 private:
  SamplerSpec spec_;
  NaturalTable table_;  // filled for NaturalExactTable only
};

}  // namespace cooling

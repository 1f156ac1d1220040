#include <doctest.h>

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "cooling/flips.hpp"
#include "cooling/oracle.hpp"
#include "oracles.hpp"

using namespace cooling;
using namespace cooling::testing;

namespace {

std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("enumerate flips") {
  const auto m = enumerate_flips(word("1122"));
  REQUIRE(m.size() == 1);
  CHECK(m[0] == FlipMove{1, 1, -2});
  CHECK(m[0].flip_class() == FlipClass::Irreversible);

  const auto g = enumerate_flips(word("1212"));
  REQUIRE(g.size() == 3);
  CHECK(g[0].position == 0);
  CHECK(g[1].position == 1);
  CHECK(g[2].position == 2);

  const std::map<std::string, std::size_t> expected{{"1122", 1}, {"1212", 3}, {"1221", 2},
                                                    {"2112", 2}, {"2121", 3}, {"2211", 1}};
  std::size_t total = 0;
  for (const Configuration& w : enumerate_configurations(4)) {
    CHECK(enumerate_flips(w).size() == expected.at(w.str()));
    CHECK(flip_count(w) == expected.at(w.str()));
    total += flip_count(w);
  }
  CHECK(total == 12);
}

TEST_CASE("flip moves carry the path height and a bounded energy change") {
  for (std::size_t len = 2; len <= 12; len += 2) {
    for (const Configuration& w : enumerate_configurations(len)) {
      const auto h = path_profile(w);
      const auto moves = enumerate_flips(w);
      CHECK(moves.size() == len - 1 - static_cast<std::size_t>(energy(w)));
      for (const FlipMove& m : moves) {
        CHECK(m.height == h[m.position]);
        CHECK(m.delta_e == energy(apply_flip(w, m.position)) - energy(w));
        const bool boundary = m.position == 0 || m.position + 2 == len;
        if (len == 2) {
          CHECK(m.delta_e == 0);
        } else if (boundary) {
          CHECK(std::abs(m.delta_e) == 1);
        } else {
          CHECK((m.delta_e == -2 || m.delta_e == 0 || m.delta_e == 2));
        }
        // The flip moves exactly one vertex of the path, by two.
        const auto h2 = path_profile(apply_flip(w, m.position));
        for (std::size_t k = 0; k < h.size(); ++k) {
          CHECK(std::abs(h2[k] - h[k]) == (k == m.position + 1 ? 2 : 0));
        }
      }
    }
  }
}

TEST_CASE("apply flip") {
  CHECK(apply_flip(word("1122"), 1) == word("1212"));
  CHECK(apply_flip(word("1212"), 0) == word("2112"));
  CHECK(apply_flip(apply_flip(word("1212"), 0), 0) == word("1212"));
  CHECK(apply_flip(word("111222"), 2) == word("112122"));
  CHECK_THROWS_AS(apply_flip(word("1122"), 0), InvalidFlip);
  CHECK_THROWS_AS(apply_flip(word("1122"), 3), InvalidFlip);
}

TEST_CASE("classify flip") {
  CHECK(classify_flip(word("1122"), 1) == FlipClass::Irreversible);
  CHECK(classify_flip(word("112122"), 1) == FlipClass::Reversible);
  CHECK(classify_flip(word("112122"), 2) == FlipClass::Forbidden);
  CHECK(classify_flip(word("1221"), 0) == FlipClass::Irreversible);
  CHECK(flip_delta(word("1221"), 0) == -1);
  CHECK_THROWS_AS(classify_flip(word("1221"), 1), InvalidFlip);
}

TEST_CASE("reversible flips are involutive") {
  for (std::size_t len = 4; len <= 10; len += 2) {
    for (const Configuration& w : enumerate_configurations(len)) {
      for (const FlipMove& m : enumerate_flips(w)) {
        if (m.flip_class() != FlipClass::Reversible) continue;
        const Configuration once = apply_flip(w, m.position);
        CHECK(classify_flip(once, m.position) == FlipClass::Reversible);
        CHECK(apply_flip(once, m.position) == w);
      }
    }
  }
}

TEST_CASE("every mismatched word has an allowed flip") {
  for (std::size_t len = 2; len <= 14; len += 2) {
    for (const Configuration& w : enumerate_configurations(len)) {
      if (energy(w) > 0) CHECK_FALSE(allowed_flips(w).empty());
    }
  }
}

TEST_CASE("flip graph is connected") {
  for (std::size_t len = 2; len <= 10; len += 2) {
    const auto all = enumerate_configurations(len);
    std::set<std::string> seen{all.front().str()};
    std::queue<Configuration> frontier;
    frontier.push(all.front());
    while (!frontier.empty()) {
      const Configuration w = frontier.front();
      frontier.pop();
      for (const FlipMove& m : enumerate_flips(w)) {
        const Configuration next = apply_flip(w, m.position);
        if (seen.insert(next.str()).second) frontier.push(next);
      }
    }
    CHECK(seen.size() == all.size());
  }
}

TEST_CASE("cooling state matches a fresh recomputation after every step") {
  std::mt19937_64 gen(17);
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const Configuration w0 = random_word(2 + 2 * (trial % 30), gen);
    CoolingState state(w0);
    for (int step = 0; step < 400; ++step) {
      const Configuration now = state.config();
      REQUIRE(state.energy() == energy(now));
      REQUIRE(sorted(state.allowed()) == allowed_flips(now));
      if (step % 3 == 0 && now.size() >= 2) {
        // Also exercise arbitrary (possibly forbidden) flips.
        const auto moves = enumerate_flips(now);
        std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
        state.flip(moves[pick(gen)].position);
      } else {
        cooling_step(state, rng);
      }
    }
  }
}

TEST_CASE("cooling step") {
  Rng rng(1);
  SUBCASE("ground state is a fixed point") {
    CoolingState s(word("1212"));
    for (int i = 0; i < 10; ++i) cooling_step(s, rng);
    CHECK(s.config() == word("1212"));
  }
  SUBCASE("1122 goes to 1212") {
    for (int i = 0; i < 20; ++i) {
      CoolingState s(word("1122"));
      cooling_step(s, rng);
      CHECK(s.config() == word("1212"));
      CHECK(s.energy() == 0);
    }
  }
  SUBCASE("112122 splits evenly between its two reversible flips") {
    std::map<std::string, double> counts;
    const int draws = 20000;
    for (int i = 0; i < draws; ++i) {
      CoolingState s(word("112122"));
      cooling_step(s, rng);
      counts[s.config().str()] += 1;
    }
    REQUIRE(counts.size() == 2);
    CHECK(counts.count("121122") == 1);
    CHECK(counts.count("112212") == 1);
    CHECK(chi_square_p_value({counts["121122"], counts["112212"]}, {draws / 2.0, draws / 2.0}) >
          1e-3);
  }
}

TEST_CASE("cooling step chooses uniformly among allowed flips") {
  const Configuration w = word("11211121222112212222211222112111211212");
  CoolingState base(w);
  const auto allowed = sorted(base.allowed());
  REQUIRE(allowed.size() > 3);
  std::map<std::ptrdiff_t, double> counts;
  Rng rng(4242);
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) {
    CoolingState s = base;
    counts[s.step(rng)] += 1;
  }
  std::vector<double> observed;
  std::vector<double> expected;
  for (std::size_t i : allowed) {
    observed.push_back(counts[static_cast<std::ptrdiff_t>(i)]);
    expected.push_back(static_cast<double>(draws) / static_cast<double>(allowed.size()));
  }
  CHECK(counts.size() == allowed.size());
  CHECK(chi_square_p_value(observed, expected) > 1e-3);
}

TEST_CASE("run cooling") {
  Rng rng(8);
  CHECK(run_cooling(word("1212"), rng).steps == 0);
  CHECK(run_cooling(word("12"), rng).steps == 0);
  CHECK(run_cooling(word("21"), rng).steps == 0);
  CHECK(run_cooling(word(""), rng).steps == 0);
  for (int i = 0; i < 50; ++i) {
    CHECK(run_cooling(word("1122"), rng).steps == 1);
    CHECK(run_cooling(word("1221"), rng).steps == 1);
  }
}

TEST_CASE("energy is non-increasing along traced runs") {
  std::mt19937_64 gen(23);
  Rng rng(77);
  RunOptions options;
  options.trace = true;
  for (int trial = 0; trial < 50; ++trial) {
    const Configuration w0 = random_word(10 + 2 * (trial % 20), gen);
    const CoolingRun run = run_cooling(w0, rng, options);
    REQUIRE(run.converged());
    REQUIRE(run.trace.size() == run.steps + 1);
    CHECK(run.trace.front().energy == energy(w0));
    CHECK(run.trace.back().energy == 0);
    CHECK(energy(run.final_config) == 0);
    for (std::size_t k = 1; k < run.trace.size(); ++k) {
      const int d = run.trace[k].energy - run.trace[k - 1].energy;
      CHECK(d <= 0);
      CHECK((d == 0 || d == -1 || d == -2));
    }
    CHECK(run.trace.back().phi ==
          doctest::Approx(std::pow(1.0 + w0.half(), 0.5)));  // ground-state variant
  }
}

TEST_CASE("step cap is reported distinctly") {
  Rng rng(5);
  RunOptions options;
  options.step_cap = 3;
  const CoolingRun run = run_cooling(word(ones_then_twos(20)), rng, options);
  CHECK(run.status == CoolingRun::Status::CapExceeded);
  CHECK_FALSE(run.converged());
  CHECK(run.steps == 3);
}

TEST_CASE("melt step") {
  Rng rng(31);
  CHECK(melt_step(word("1122"), rng) == word("1212"));
  CHECK(melt_step(word("12"), rng) == word("21"));
  std::map<std::string, double> counts;
  const int draws = 30000;
  for (int i = 0; i < draws; ++i) counts[melt_step(word("1212"), rng).str()] += 1;
  REQUIRE(counts.size() == 3);
  CHECK(chi_square_p_value({counts["2112"], counts["1122"], counts["1221"]},
                           {draws / 3.0, draws / 3.0, draws / 3.0}) > 1e-3);
  CHECK_THROWS_AS(melt_step(word(""), rng), std::invalid_argument);
}

TEST_CASE("melt walk visits words in proportion to their flip counts") {
  // Long-run occupation of the unrestricted walk on W_6 against flips(w)/sum.
  Rng rng(12);
  std::map<std::string, double> visits;
  Configuration w = word("111222");
  const int steps = 400000;
  for (int i = 0; i < steps; ++i) {
    w = melt_step(w, rng);
    visits[w.str()] += 1;
  }
  double total_flips = 0;
  const auto all = enumerate_configurations(6);
  for (const auto& v : all) total_flips += static_cast<double>(flip_count(v));
  for (const auto& v : all) {
    const double expected = static_cast<double>(flip_count(v)) / total_flips;
    CHECK(visits[v.str()] / steps == doctest::Approx(expected).epsilon(0.1));
  }
}

// cooling: simulate, fit, and verify the flip-based cooling process on
// balanced two-letter words.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

#include "cooling/harness.hpp"

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write to '" + path + "'");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cooling process on balanced two-letter words"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte Carlo convergence times");
  std::string mode_name = "worst";
  std::string word_text;
  std::vector<std::size_t> n_list;
  std::size_t reps = 10;
  std::uint64_t seed = 1;
  std::string out_path;
  std::string summary_path;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  bool wall_time = false;
  std::uint64_t step_cap = 10'000'000'000ULL;
  sim->add_option("--mode", mode_name, "worst | uniform | natural | word")
      ->check(CLI::IsMember({"worst", "uniform", "natural", "word"}));
  sim->add_option("--word", word_text, "initial word for --mode word");
  sim->add_option("--n-list", n_list, "comma-separated even lengths")->delimiter(',');
  sim->add_option("--reps", reps, "replicates per length")->check(CLI::PositiveNumber);
  sim->add_option("--seed", seed, "master seed");
  sim->add_option("--out", out_path, "CSV output file")->required();
  sim->add_option("--summary", summary_path, "JSON summary output file");
  sim->add_option("--threads", threads, "worker threads");
  sim->add_flag("--record-wall-time", wall_time,
                "fill wall_time_s (otherwise 0, keeping the CSV reproducible)");
  sim->add_option("--step-cap", step_cap, "abort a run after this many steps");

  // fit
  auto* fit = app.add_subcommand("fit", "Fit c * model(n) to per-n mean T");
  std::string fit_in;
  std::string model_name = "cubic";
  fit->add_option("--in", fit_in, "CSV from simulate")->required()->check(CLI::ExistingFile);
  std::string size_name = "half";
  fit->add_option("--model", model_name, "cubic | n52log")
      ->check(CLI::IsMember({"cubic", "n52log"}));
  fit->add_option("--size", size_name, "model variable: half (L/2, default) | length (L)")
      ->check(CLI::IsMember({"half", "length"}));

  // verify
  auto* ver = app.add_subcommand("verify", "Exhaustive exact checks on small lengths");
  std::size_t max_n = 10;
  std::vector<double> alphas{0.25, 0.5, 0.75};
  std::string json_path;
  ver->add_option("--max-n", max_n, "largest word length (<= 14)");
  ver->add_option("--alphas", alphas, "comma-separated alpha grid")->delimiter(',');
  ver->add_option("--json", json_path, "machine-readable report file");

  // oracle
  auto* orc = app.add_subcommand("oracle", "Inspect a single word");
  std::string oracle_word;
  bool oracle_json = false;
  orc->add_option("--word", oracle_word, "word over {1,2}")->required();
  orc->add_option("--alphas", alphas, "comma-separated alpha grid")->delimiter(',');
  orc->add_flag("--json", oracle_json, "print JSON instead of text");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      cooling::SimulateConfig config;
      config.mode = cooling::mode_from_string(mode_name);
      config.n_list = n_list;
      if (config.mode == cooling::Mode::Word) {
        if (word_text.empty()) throw std::invalid_argument("--mode word needs --word");
        config.word = cooling::parse_configuration(word_text);
      }
      config.reps = reps;
      config.master_seed = seed;
      config.threads = threads;
      config.record_wall_time = wall_time;
      config.step_cap = step_cap;
      // Open outputs first so an unwritable path fails before the runs.
      std::ofstream csv = open_output(out_path);
      std::ofstream summary;
      if (!summary_path.empty()) summary = open_output(summary_path);

      const auto records = cooling::simulate(config);
      cooling::write_csv(csv, records);
      const auto rows = cooling::summarize(records);
      if (summary.is_open()) summary << cooling::summary_json(rows).dump(2) << '\n';
      for (const auto& r : rows) {
        std::cerr << "n=" << r.n << " reps=" << r.reps << " mean_T=" << r.mean_T
                  << " stderr=" << r.stderr_T << '\n';
      }
      return 0;
    }
    if (fit->parsed()) {
      std::ifstream in(fit_in);
      const auto records = cooling::read_csv(in);
      const auto result =
          cooling::fit_scaling(records, cooling::fit_model_from_string(model_name),
                               cooling::size_variable_from_string(size_name));
      std::cout << cooling::to_json(result).dump(2) << '\n';
      return 0;
    }
    if (ver->parsed()) {
      const auto report = cooling::run_verification(max_n, alphas);
      cooling::print(std::cout, report);
      if (!json_path.empty()) open_output(json_path) << cooling::to_json(report).dump(2) << '\n';
      return report.passed() ? 0 : 1;
    }
    if (orc->parsed()) {
      const auto w = cooling::parse_configuration(oracle_word);
      const auto report = cooling::inspect_word(w, alphas);
      if (oracle_json) {
        std::cout << report.dump(2) << '\n';
      } else {
        cooling::print_inspection(std::cout, report);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

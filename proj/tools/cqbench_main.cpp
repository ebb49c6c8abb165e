#include <iostream>

#include <CLI11.hpp>

#include "cqbench/errors.hpp"
#include "cqbench/pipeline.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"black-box competency-question benchmark toolchain for first-order ontologies"};
  app.require_subcommand(1);

  bool show_version = false;
  app.add_flag("--version", show_version, "print tool and file-format versions");

  CommonArgs args;
  int jobs = 1;
  double fraction = 0.01;
  uint64_t seed_override = 0;
  bool seed_set = false;

  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("-c,--config", args.config_path, "JSON configuration file")->required();
  };

  CLI::App* ingest = app.add_subcommand("ingest", "parse inputs into the knowledge snapshot");
  add_config(ingest);
  CLI::App* project = app.add_subcommand("project", "rewrite the mapping onto the ontology core");
  add_config(project);
  CLI::App* generate = app.add_subcommand("generate", "instantiate question patterns into problems");
  add_config(generate);
  CLI::App* emit = app.add_subcommand("emit", "write per-conjecture prover problem files");
  add_config(emit);
  CLI::App* run = app.add_subcommand("run", "execute provers over pending conjectures");
  add_config(run);
  run->add_option("-j,--jobs", jobs, "worker pool size")->check(CLI::PositiveNumber);
  CLI::App* classify = app.add_subcommand("classify", "decide per-problem verdicts from records");
  add_config(classify);
  CLI::App* report = app.add_subcommand("report", "render the metric tables");
  add_config(report);
  CLI::App* sample = app.add_subcommand("sample", "draw a uniform audit sample of problems");
  add_config(sample);
  sample->add_option("--fraction", fraction, "sample fraction in [0,1]");
  sample->add_option("--seed", seed_override, "sampling seed (defaults to the config seed)")
      ->each([&](const std::string&) { seed_set = true; });

  // `--version` short-circuits subcommand requirements.
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--version") {
      std::cout << "cqbench " << cqb::kToolVersion << " (snapshot v" << cqb::kSnapshotVersion
                << ", corpus v" << cqb::kCorpusVersion << ", records v" << cqb::kRecordsVersion
                << ")\n";
      return 0;
    }
  }

  CLI11_PARSE(app, argc, argv);

  try {
    cqb::RunConfig cfg = cqb::load_config(args.config_path);
    if (ingest->parsed()) cqb::pipeline::run_ingest(cfg);
    else if (project->parsed()) cqb::pipeline::run_project(cfg);
    else if (generate->parsed()) cqb::pipeline::run_generate(cfg);
    else if (emit->parsed()) cqb::pipeline::run_emit(cfg);
    else if (run->parsed()) cqb::pipeline::run_run(cfg, jobs);
    else if (classify->parsed()) cqb::pipeline::run_classify(cfg);
    else if (report->parsed()) cqb::pipeline::run_report(cfg);
    else if (sample->parsed())
      cqb::pipeline::run_sample(cfg, fraction, seed_set ? seed_override : cfg.seed);
  } catch (const cqb::Error& e) {
    std::cerr << "error [" << cqb::category_name(e.category()) << "]: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error [internal]: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

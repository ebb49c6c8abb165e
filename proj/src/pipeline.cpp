#include "cqbench/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>

#include "cqbench/analysis.hpp"
#include "cqbench/errors.hpp"
#include "cqbench/patterns.hpp"
#include "cqbench/projection.hpp"

namespace cqb::pipeline {

namespace fs = std::filesystem;

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("failed writing " + path);
}

void require_artifact(const std::string& path, const std::string& stage) {
  if (!fs::exists(path))
    throw StateError("missing " + path + "; run the '" + stage + "' stage first");
}

}  // namespace

void run_ingest(const RunConfig& cfg) {
  fs::create_directories(cfg.output_dir);

  // Parsers are independent per input family; run them concurrently.
  auto wordnet_f = std::async(std::launch::async,
                              [&] { return kb::parse_wordnet_data(cfg.wordnet_data); });
  auto morpho_f = std::async(std::launch::async, [&] {
    std::map<std::string, kb::SynsetId> sense_index;
    if (cfg.sense_index) sense_index = kb::parse_sense_index(*cfg.sense_index);
    if (cfg.morphosemantic_links.empty()) return kb::MorphosemanticParseResult{};
    return kb::parse_morphosemantic_links(cfg.morphosemantic_links, sense_index);
  });
  auto mapping_f = std::async(std::launch::async, [&] {
    return kb::parse_mapping_files(cfg.mapping_files, cfg.mapping_suffixes);
  });
  auto taxonomy_f = std::async(std::launch::async, [&] {
    auto core_paths = read_core_manifest(cfg.core_manifest);
    return kb::parse_suo_kif_taxonomy(cfg.taxonomy_files, core_paths, cfg.kind_roots);
  });

  kb::SnapshotInputs inputs;
  inputs.wordnet = wordnet_f.get();
  inputs.morpho = morpho_f.get();
  inputs.mapping = mapping_f.get();
  inputs.taxonomy = taxonomy_f.get();
  if (cfg.corrections) inputs.corrections = read_corrections(*cfg.corrections);

  kb::KnowledgeSnapshot snapshot = kb::build_snapshot(std::move(inputs));
  kb::save_snapshot(snapshot, cfg.snapshot_path());

  std::cout << "ingest: " << snapshot.synsets.size() << " synsets";
  for (const auto& [pos, n] : snapshot.stats.synsets_per_pos) std::cout << ", " << n << " " << pos;
  std::cout << "; " << snapshot.stats.antonym_links << " antonym / "
            << snapshot.stats.similar_links << " similar links; " << snapshot.stats.morpho_links
            << " morphosemantic links; " << snapshot.taxonomy.size() << " taxonomy facts; "
            << snapshot.core_concepts.size() << " core concepts; "
            << snapshot.stats.dangling_concepts.size() << " dangling concepts\n";
}

void run_project(const RunConfig& cfg) {
  require_artifact(cfg.snapshot_path(), "ingest");
  kb::KnowledgeSnapshot snapshot = kb::load_snapshot(cfg.snapshot_path());
  projection::Options options;
  options.top_concept = cfg.top_concept;
  projection::project_mapping(snapshot, options);
  kb::save_snapshot(snapshot, cfg.projected_snapshot_path());
  write_file(cfg.projection_report_path(), projection::projection_report_text(snapshot));
  write_file(cfg.projection_stats_path(), projection::projection_stats_tsv(snapshot));
  std::cout << projection::projection_report_text(snapshot);
}

void run_generate(const RunConfig& cfg) {
  require_artifact(cfg.projected_snapshot_path(), "project");
  kb::KnowledgeSnapshot snapshot = kb::load_snapshot(cfg.projected_snapshot_path());
  patterns::Corpus corpus = patterns::build_corpus(snapshot, cfg.attribute_overrides);
  patterns::save_corpus(corpus, cfg.corpus_path());
  write_file(cfg.generation_report_path(), patterns::generation_report_text(corpus.stats));
  std::cout << patterns::generation_report_text(corpus.stats);
}

void run_emit(const RunConfig& cfg) {
  require_artifact(cfg.corpus_path(), "generate");
  if (cfg.ontology.empty()) throw ConfigError("emit needs inputs.ontology in the config");
  patterns::Corpus corpus = patterns::load_corpus(cfg.corpus_path());
  fol::SymbolMap map = load_symbol_map(cfg.symbol_map);
  fs::create_directories(cfg.problems_dir());
  std::string ontology_abs = fs::absolute(cfg.ontology).lexically_normal().string();
  size_t files = 0;
  for (const patterns::Problem& p : corpus.problems) {
    for (harness::Polarity polarity : {harness::Polarity::Truth, harness::Polarity::Falsity}) {
      std::string name = harness::problem_file_name(p.id, polarity);
      write_file(cfg.problems_dir() + "/" + name,
                 harness::render_problem_file(p, polarity, ontology_abs, map));
      ++files;
    }
  }
  std::cout << "emit: " << files << " problem files under " << cfg.problems_dir() << "\n";
}

void run_run(const RunConfig& cfg, int jobs) {
  require_artifact(cfg.corpus_path(), "generate");
  require_artifact(cfg.problems_dir(), "emit");
  if (cfg.provers.empty()) throw ConfigError("no provers configured");
  patterns::Corpus corpus = patterns::load_corpus(cfg.corpus_path());
  auto existing = harness::load_records(cfg.records_path());
  harness::validate_records(existing, corpus, nullptr);
  auto plan = harness::plan_jobs(corpus, cfg.provers, existing, cfg.problems_dir());
  std::cout << "run: " << plan.size() << " jobs pending (" << existing.size()
            << " records already present)\n";
  if (plan.empty()) return;
  std::map<std::string, harness::ProverConfig> provers;
  for (const auto& p : cfg.provers) provers.emplace(p.id, p);
  std::string ontology_abs = fs::absolute(cfg.ontology).lexically_normal().string();
  auto records = harness::run_all(plan, provers, ontology_abs, jobs, cfg.records_path());
  size_t proved = 0;
  for (const auto& r : records)
    if (r.status == harness::SzsStatus::Theorem) ++proved;
  std::cout << "run: " << records.size() << " jobs executed, " << proved << " proofs\n";
}

void run_classify(const RunConfig& cfg) {
  require_artifact(cfg.corpus_path(), "generate");
  require_artifact(cfg.records_path(), "run");
  patterns::Corpus corpus = patterns::load_corpus(cfg.corpus_path());
  auto records = harness::load_records(cfg.records_path());

  std::set<std::string> axiom_names;
  const std::set<std::string>* axiom_names_ptr = nullptr;
  if (!cfg.ontology.empty() && fs::exists(cfg.ontology)) {
    auto index = analysis::load_axiom_index(cfg.ontology);
    for (const auto& [name, atomic] : index.axioms) axiom_names.insert(name);
    axiom_names_ptr = &axiom_names;
  }
  harness::validate_records(records, corpus, axiom_names_ptr);

  auto verdicts = analysis::classify_all(corpus, records);
  analysis::save_verdicts(verdicts, cfg.verdicts_path());
  std::map<std::string, size_t> counts;
  for (const auto& v : verdicts) counts[analysis::problem_class_name(v.problem_class)]++;
  std::cout << "classify: " << verdicts.size() << " problems";
  for (const auto& [name, n] : counts) std::cout << ", " << n << " " << name;
  std::cout << "\n";
}

void run_report(const RunConfig& cfg) {
  require_artifact(cfg.corpus_path(), "generate");
  patterns::Corpus corpus = patterns::load_corpus(cfg.corpus_path());
  std::vector<harness::RunRecord> records = harness::load_records(cfg.records_path());

  std::optional<analysis::OntologyAxiomIndex> index;
  if (!cfg.ontology.empty() && fs::exists(cfg.ontology))
    index = analysis::load_axiom_index(cfg.ontology);
  harness::validate_records(records, corpus, nullptr);

  analysis::AnalysisOptions options;
  options.attempted_denominator = cfg.efficiency_attempted_denominator;
  auto result = analysis::analyze(corpus, records, index ? &*index : nullptr, options);

  fs::create_directories(cfg.report_dir());
  auto files = analysis::render_report(result);
  write_file(cfg.report_dir() + "/table_run.tsv", files.run_table_tsv);
  write_file(cfg.report_dir() + "/table_provers.tsv", files.prover_table_tsv);
  write_file(cfg.report_dir() + "/table_analysis.tsv", files.analysis_table_tsv);
  write_file(cfg.report_dir() + "/report.txt", files.text);
  analysis::save_verdicts(result.verdicts, cfg.verdicts_path());
  std::cout << files.text;
}

void run_sample(const RunConfig& cfg, double fraction, uint64_t seed) {
  require_artifact(cfg.corpus_path(), "generate");
  patterns::Corpus corpus = patterns::load_corpus(cfg.corpus_path());
  auto sample = analysis::sample_uniform(corpus, fraction, seed);
  patterns::Corpus subset;
  subset.problems = sample;
  patterns::save_corpus(subset, cfg.sample_path());
  write_file(cfg.judgments_path(), analysis::judgment_template_tsv(sample));
  std::cout << "sample: " << sample.size() << " of " << corpus.problems.size()
            << " problems -> " << cfg.sample_path() << "\n";
}

}  // namespace cqb::pipeline

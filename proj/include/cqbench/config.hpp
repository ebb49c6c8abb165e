#ifndef CQBENCH_CONFIG_HPP
#define CQBENCH_CONFIG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cqbench/harness.hpp"
#include "cqbench/kb/parsers.hpp"
#include "cqbench/statements.hpp"

namespace cqb {

struct RunConfig {
  // Inputs
  std::map<kb::PosFile, std::string> wordnet_data;  // data.<pos> paths
  std::optional<std::string> sense_index;
  std::string morphosemantic_links;
  std::vector<std::string> mapping_files;
  std::vector<std::string> taxonomy_files;
  std::string core_manifest;  // file listing the fact files forming the core
  std::string ontology;       // first-order-form axiom file
  std::optional<std::string> symbol_map;   // JSON symbol table
  std::optional<std::string> corrections;  // optional concept correction table

  // Behavior
  kb::MappingSuffixes mapping_suffixes;
  kb::KindRoots kind_roots;
  std::string top_concept = "Entity";
  statements::AttributeOverrides attribute_overrides;
  std::vector<harness::ProverConfig> provers;
  bool efficiency_attempted_denominator = false;

  std::string output_dir = "out";
  uint64_t seed = 0;

  // Derived artifact paths.
  std::string snapshot_path() const { return output_dir + "/snapshot.json"; }
  std::string projected_snapshot_path() const { return output_dir + "/snapshot.projected.json"; }
  std::string projection_report_path() const { return output_dir + "/projection_report.txt"; }
  std::string projection_stats_path() const { return output_dir + "/projection_stats.tsv"; }
  std::string corpus_path() const { return output_dir + "/corpus.jsonl"; }
  std::string generation_report_path() const { return output_dir + "/generation_report.txt"; }
  std::string problems_dir() const { return output_dir + "/problems"; }
  std::string records_path() const { return output_dir + "/records.jsonl"; }
  std::string verdicts_path() const { return output_dir + "/verdicts.jsonl"; }
  std::string report_dir() const { return output_dir + "/report"; }
  std::string sample_path() const { return output_dir + "/sample.jsonl"; }
  std::string judgments_path() const { return output_dir + "/sample_judgments.tsv"; }
};

// Parses the JSON configuration file; `require_inputs` also checks that the
// referenced input paths exist.
RunConfig load_config(const std::string& path, bool require_inputs = true);

// Core manifest: one fact-file path per line, relative to the manifest.
std::vector<std::string> read_core_manifest(const std::string& path);

// Two-column (tab) concept correction table.
std::map<std::string, std::string> read_corrections(const std::string& path);

// Symbol map file: {"onto_prefix": ..., "meta_prefix": ..., "entries": {...}}
fol::SymbolMap load_symbol_map(const std::optional<std::string>& path);

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSnapshotVersion = 1;
inline constexpr int kCorpusVersion = 1;
inline constexpr int kRecordsVersion = 1;

}  // namespace cqb

#endif

#include "cqbench/config.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "cqbench/errors.hpp"
#include "cqbench/fol/text.hpp"

namespace cqb {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string resolve_relative(const std::string& base_file, const std::string& path) {
  fs::path p(path);
  if (p.is_absolute()) return path;
  return (fs::path(base_file).parent_path() / p).lexically_normal().string();
}

void check_exists(const std::string& path, const std::string& what) {
  if (!fs::exists(path))
    throw ConfigError(what + " path does not exist: " + path);
}

}  // namespace

RunConfig load_config(const std::string& path, bool require_inputs) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }

  RunConfig cfg;
  auto rel = [&](const std::string& p) { return resolve_relative(path, p); };

  const json& inputs = j.at("inputs");
  if (inputs.contains("wordnet_data")) {
    for (auto it = inputs.at("wordnet_data").begin(); it != inputs.at("wordnet_data").end();
         ++it) {
      kb::PosFile pf;
      if (it.key() == "noun") pf = kb::PosFile::Noun;
      else if (it.key() == "verb") pf = kb::PosFile::Verb;
      else if (it.key() == "adjective") pf = kb::PosFile::Adjective;
      else if (it.key() == "adverb") pf = kb::PosFile::Adverb;
      else throw ConfigError("unknown wordnet_data key '" + it.key() + "'");
      cfg.wordnet_data[pf] = rel(it.value().get<std::string>());
    }
  }
  if (inputs.contains("sense_index") && !inputs.at("sense_index").is_null())
    cfg.sense_index = rel(inputs.at("sense_index").get<std::string>());
  if (inputs.contains("morphosemantic_links"))
    cfg.morphosemantic_links = rel(inputs.at("morphosemantic_links").get<std::string>());
  if (inputs.contains("mapping_files"))
    for (const auto& p : inputs.at("mapping_files"))
      cfg.mapping_files.push_back(rel(p.get<std::string>()));
  if (inputs.contains("taxonomy_files"))
    for (const auto& p : inputs.at("taxonomy_files"))
      cfg.taxonomy_files.push_back(rel(p.get<std::string>()));
  if (inputs.contains("core_manifest"))
    cfg.core_manifest = rel(inputs.at("core_manifest").get<std::string>());
  if (inputs.contains("ontology")) cfg.ontology = rel(inputs.at("ontology").get<std::string>());
  if (inputs.contains("symbol_map") && !inputs.at("symbol_map").is_null())
    cfg.symbol_map = rel(inputs.at("symbol_map").get<std::string>());
  if (inputs.contains("corrections") && !inputs.at("corrections").is_null())
    cfg.corrections = rel(inputs.at("corrections").get<std::string>());

  if (j.contains("mapping_suffixes")) {
    cfg.mapping_suffixes.table.clear();
    for (auto it = j.at("mapping_suffixes").begin(); it != j.at("mapping_suffixes").end(); ++it) {
      if (it.key().size() != 1)
        throw ConfigError("mapping suffix must be a single character, got '" + it.key() + "'");
      cfg.mapping_suffixes.table[it.key()[0]] =
          kb::mapping_relation_from_name(it.value().get<std::string>());
    }
  }
  if (j.contains("kind_roots")) {
    const json& roots = j.at("kind_roots");
    if (roots.contains("relation")) cfg.kind_roots.relation = roots.at("relation");
    if (roots.contains("attribute")) cfg.kind_roots.attribute = roots.at("attribute");
    if (roots.contains("class")) cfg.kind_roots.class_root = roots.at("class");
  }
  if (j.contains("top_concept")) cfg.top_concept = j.at("top_concept").get<std::string>();
  if (j.contains("attribute_predicate_overrides"))
    for (auto it = j.at("attribute_predicate_overrides").begin();
         it != j.at("attribute_predicate_overrides").end(); ++it)
      cfg.attribute_overrides[it.key()] = it.value().get<std::string>();

  int default_time = 60;
  int default_mem = 2048;
  if (j.contains("limits")) {
    const json& limits = j.at("limits");
    if (limits.contains("time_s")) default_time = limits.at("time_s").get<int>();
    if (limits.contains("memory_mib")) default_mem = limits.at("memory_mib").get<int>();
  }
  if (j.contains("provers")) {
    for (const auto& p : j.at("provers")) {
      harness::ProverConfig prover;
      prover.id = p.at("id").get<std::string>();
      prover.executable = p.at("exec").get<std::string>();
      prover.args_template = p.at("args").get<std::string>();
      prover.time_limit_s = p.value("time_limit_s", default_time);
      prover.memory_limit_mib = p.value("memory_limit_mib", default_mem);
      prover.validate();
      cfg.provers.push_back(std::move(prover));
    }
  }
  if (j.contains("efficiency_attempted_denominator"))
    cfg.efficiency_attempted_denominator = j.at("efficiency_attempted_denominator").get<bool>();

  if (j.contains("output_dir")) cfg.output_dir = rel(j.at("output_dir").get<std::string>());
  if (j.contains("seed")) cfg.seed = j.at("seed").get<uint64_t>();

  if (require_inputs) {
    for (const auto& [pf, p] : cfg.wordnet_data) check_exists(p, "wordnet data");
    if (cfg.sense_index) check_exists(*cfg.sense_index, "sense index");
    if (!cfg.morphosemantic_links.empty())
      check_exists(cfg.morphosemantic_links, "morphosemantic links");
    for (const auto& p : cfg.mapping_files) check_exists(p, "mapping file");
    for (const auto& p : cfg.taxonomy_files) check_exists(p, "taxonomy file");
    if (!cfg.core_manifest.empty()) check_exists(cfg.core_manifest, "core manifest");
    if (!cfg.ontology.empty()) check_exists(cfg.ontology, "ontology");
    if (cfg.symbol_map) check_exists(*cfg.symbol_map, "symbol map");
    if (cfg.corrections) check_exists(*cfg.corrections, "corrections table");
  }
  return cfg;
}

std::vector<std::string> read_core_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open core manifest " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    out.push_back(resolve_relative(path, line));
  }
  if (out.empty()) throw ConfigError("core manifest " + path + " lists no files");
  return out;
}

std::map<std::string, std::string> read_corrections(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corrections table " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected two tab-separated columns");
    out[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return out;
}

fol::SymbolMap load_symbol_map(const std::optional<std::string>& path) {
  if (!path) return fol::SymbolMap();
  std::ifstream in(*path);
  if (!in) throw IoError("cannot open symbol map " + *path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(*path + ": " + e.what());
  }
  fol::SymbolMap map(j.value("onto_prefix", "s__"), j.value("meta_prefix", "d__"));
  if (j.contains("entries"))
    for (auto it = j.at("entries").begin(); it != j.at("entries").end(); ++it)
      map.add(it.key(), it.value().get<std::string>());
  return map;
}

}  // namespace cqb

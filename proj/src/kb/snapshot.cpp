#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "cqbench/errors.hpp"
#include "cqbench/kb/parsers.hpp"

namespace cqb::kb {

using nlohmann::json;

namespace {
constexpr int kSnapshotFormatVersion = 1;
}

KnowledgeSnapshot build_snapshot(SnapshotInputs inputs) {
  KnowledgeSnapshot snap;
  snap.synsets = std::move(inputs.wordnet.synsets);

  std::set<LexicalLink> links(inputs.wordnet.antonym_links.begin(),
                              inputs.wordnet.antonym_links.end());
  links.insert(inputs.wordnet.similar_links.begin(), inputs.wordnet.similar_links.end());
  links.insert(inputs.morpho.links.begin(), inputs.morpho.links.end());
  // Links to synsets outside the loaded database are warnings, not data.
  std::set<SynsetId> known_ids;
  for (const Synset& s : snap.synsets) known_ids.insert(s.id);
  for (auto it = links.begin(); it != links.end();) {
    if (!known_ids.count(it->source) || !known_ids.count(it->target)) {
      inputs.morpho.unresolved.push_back(std::string(link_kind_name(it->kind)) + " link " +
                                         it->source.to_string() + " -> " +
                                         it->target.to_string() +
                                         " references an unknown synset; dropped");
      it = links.erase(it);
    } else {
      ++it;
    }
  }
  snap.links.assign(links.begin(), links.end());

  snap.taxonomy = std::move(inputs.taxonomy.facts);
  snap.concept_kinds = std::move(inputs.taxonomy.kinds);
  snap.core_concepts = std::move(inputs.taxonomy.core);

  // Optional user-supplied concept corrections, applied before anything
  // else reads the mapping.
  snap.raw_mapping = std::move(inputs.mapping.mapping);
  if (!inputs.corrections.empty()) {
    for (auto& [id, entries] : snap.raw_mapping) {
      for (auto& e : entries) {
        if (auto it = inputs.corrections.find(e.concept_name); it != inputs.corrections.end()) {
          e.concept_name = it->second;
          snap.stats.corrections_applied++;
        }
      }
    }
  }

  // Referential integrity: every mapping entry's synset must exist.  Concepts
  // may dangle; they are recorded, assigned the fallback kind, and counted.
  std::set<std::string> dangling;
  for (const auto& [id, entries] : snap.raw_mapping) {
    if (!snap.find_synset(id))
      throw IntegrityError("mapping references unknown synset " + id.to_string());
    for (const auto& e : entries) {
      if (!snap.concept_kinds.count(e.concept_name)) {
        dangling.insert(e.concept_name);
        snap.concept_kinds.emplace(e.concept_name, ConceptKind::Object);
      }
    }
  }
  snap.stats.dangling_concepts.assign(dangling.begin(), dangling.end());

  // Counters.
  for (const Synset& s : snap.synsets) {
    const char* bucket = nullptr;
    switch (s.pos) {
      case Pos::Noun: bucket = "n"; break;
      case Pos::Verb: bucket = "v"; break;
      case Pos::Adjective: case Pos::Satellite: bucket = "a+s"; break;
      case Pos::Adverb: bucket = "r"; break;
    }
    snap.stats.synsets_per_pos[bucket]++;
  }
  snap.stats.antonym_links = inputs.wordnet.antonym_links.size();
  snap.stats.similar_links = inputs.wordnet.similar_links.size();
  snap.stats.ignored_pointer_symbols = std::move(inputs.wordnet.ignored_pointer_symbols);
  snap.stats.morpho_links = inputs.morpho.links.size();
  snap.stats.morpho_skipped_relations = std::move(inputs.morpho.skipped_relations);
  snap.stats.morpho_unresolved = std::move(inputs.morpho.unresolved);
  snap.stats.unmapped_per_pos = std::move(inputs.mapping.unmapped_per_pos);
  snap.stats.mapping_duplicates_collapsed = inputs.mapping.duplicates_collapsed;
  uint64_t mapped = 0;
  for (const auto& [id, entries] : snap.raw_mapping)
    if (!entries.empty()) ++mapped;
  snap.stats.mapped_synsets = mapped;
  snap.stats.taxonomy_facts = snap.taxonomy.size();
  snap.stats.taxonomy_skipped_expressions = inputs.taxonomy.skipped_expressions;
  snap.stats.kind_ambiguity_warnings = std::move(inputs.taxonomy.ambiguity_warnings);
  return snap;
}

namespace {

json stats_to_json(const IngestStats& s) {
  json j;
  j["synsets_per_pos"] = s.synsets_per_pos;
  j["antonym_links"] = s.antonym_links;
  j["similar_links"] = s.similar_links;
  j["ignored_pointer_symbols"] = s.ignored_pointer_symbols;
  j["morpho_links"] = s.morpho_links;
  j["morpho_skipped_relations"] = s.morpho_skipped_relations;
  j["morpho_unresolved"] = s.morpho_unresolved;
  j["mapped_synsets"] = s.mapped_synsets;
  j["unmapped_per_pos"] = s.unmapped_per_pos;
  j["mapping_duplicates_collapsed"] = s.mapping_duplicates_collapsed;
  j["taxonomy_facts"] = s.taxonomy_facts;
  j["taxonomy_skipped_expressions"] = s.taxonomy_skipped_expressions;
  j["kind_ambiguity_warnings"] = s.kind_ambiguity_warnings;
  j["dangling_concepts"] = s.dangling_concepts;
  j["corrections_applied"] = s.corrections_applied;
  return j;
}

IngestStats stats_from_json(const json& j) {
  IngestStats s;
  s.synsets_per_pos = j.at("synsets_per_pos").get<std::map<std::string, uint64_t>>();
  s.antonym_links = j.at("antonym_links").get<uint64_t>();
  s.similar_links = j.at("similar_links").get<uint64_t>();
  s.ignored_pointer_symbols =
      j.at("ignored_pointer_symbols").get<std::map<std::string, uint64_t>>();
  s.morpho_links = j.at("morpho_links").get<uint64_t>();
  s.morpho_skipped_relations =
      j.at("morpho_skipped_relations").get<std::map<std::string, uint64_t>>();
  s.morpho_unresolved = j.at("morpho_unresolved").get<std::vector<std::string>>();
  s.mapped_synsets = j.at("mapped_synsets").get<uint64_t>();
  s.unmapped_per_pos = j.at("unmapped_per_pos").get<std::map<std::string, uint64_t>>();
  s.mapping_duplicates_collapsed = j.at("mapping_duplicates_collapsed").get<uint64_t>();
  s.taxonomy_facts = j.at("taxonomy_facts").get<uint64_t>();
  s.taxonomy_skipped_expressions = j.at("taxonomy_skipped_expressions").get<uint64_t>();
  s.kind_ambiguity_warnings = j.at("kind_ambiguity_warnings").get<std::vector<std::string>>();
  s.dangling_concepts = j.at("dangling_concepts").get<std::vector<std::string>>();
  s.corrections_applied = j.at("corrections_applied").get<uint64_t>();
  return s;
}

json mapping_to_json(const std::map<SynsetId, std::vector<MappingEntry>>& m) {
  json j = json::object();
  for (const auto& [id, entries] : m) {
    json list = json::array();
    for (const auto& e : entries)
      list.push_back({{"concept", e.concept_name}, {"relation", mapping_relation_name(e.relation)}});
    j[id.to_string()] = std::move(list);
  }
  return j;
}

std::map<SynsetId, std::vector<MappingEntry>> mapping_from_json(const json& j) {
  std::map<SynsetId, std::vector<MappingEntry>> m;
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::vector<MappingEntry> entries;
    for (const auto& e : it.value())
      entries.push_back({e.at("concept").get<std::string>(),
                         mapping_relation_from_name(e.at("relation").get<std::string>())});
    m.emplace(SynsetId::from_string(it.key()), std::move(entries));
  }
  return m;
}

}  // namespace

void save_snapshot(const KnowledgeSnapshot& snap, const std::string& path) {
  json j;
  j["format_version"] = kSnapshotFormatVersion;

  json synsets = json::array();
  for (const Synset& s : snap.synsets) {
    synsets.push_back({{"id", s.id.to_string()},
                       {"pos", std::string(1, pos_letter(s.pos))},
                       {"lemmas", s.lemmas},
                       {"gloss", s.gloss}});
  }
  j["synsets"] = std::move(synsets);

  json links = json::array();
  for (const LexicalLink& l : snap.links)
    links.push_back({{"kind", link_kind_name(l.kind)},
                     {"source", l.source.to_string()},
                     {"target", l.target.to_string()}});
  j["links"] = std::move(links);

  j["raw_mapping"] = mapping_to_json(snap.raw_mapping);

  json taxo = json::array();
  for (const TaxonomyFact& f : snap.taxonomy)
    taxo.push_back({{"relation", taxonomy_relation_name(f.relation)},
                    {"child", f.child},
                    {"parent", f.parent},
                    {"source_file", f.source_file}});
  j["taxonomy"] = std::move(taxo);

  json kinds = json::object();
  for (const auto& [c, k] : snap.concept_kinds) kinds[c] = concept_kind_name(k);
  j["concept_kinds"] = std::move(kinds);
  j["core_concepts"] = snap.core_concepts;
  j["stats"] = stats_to_json(snap.stats);

  if (snap.projection_stats) {
    j["projected_mapping"] = mapping_to_json(snap.projected_mapping);
    const ProjectionStats& p = *snap.projection_stats;
    j["projection_stats"] = {{"non_core_encountered", p.non_core_encountered},
                             {"multi_core_supers", p.multi_core_supers},
                             {"single_core_super", p.single_core_super},
                             {"dangling_concepts", p.dangling_concepts},
                             {"entity_fallback_synsets", p.entity_fallback_synsets},
                             {"multi_mapped_synsets", p.multi_mapped_synsets},
                             {"multi_mapped_per_pos", p.multi_mapped_per_pos},
                             {"cycle_warnings", p.cycle_warnings}};
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump() << '\n';
  if (!out) throw IoError("failed writing " + path);
}

KnowledgeSnapshot load_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " (run the ingest stage first)");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (j.value("format_version", -1) != kSnapshotFormatVersion)
    throw StateError(path + ": unsupported snapshot format version");

  KnowledgeSnapshot snap;
  for (const auto& s : j.at("synsets")) {
    Synset syn;
    syn.id = SynsetId::from_string(s.at("id").get<std::string>());
    std::string pos = s.at("pos").get<std::string>();
    switch (pos.empty() ? '?' : pos[0]) {
      case 'n': syn.pos = Pos::Noun; break;
      case 'v': syn.pos = Pos::Verb; break;
      case 'a': syn.pos = Pos::Adjective; break;
      case 's': syn.pos = Pos::Satellite; break;
      case 'r': syn.pos = Pos::Adverb; break;
      default: throw ParseError(path + ": bad synset pos '" + pos + "'");
    }
    syn.lemmas = s.at("lemmas").get<std::vector<std::string>>();
    syn.gloss = s.at("gloss").get<std::string>();
    snap.synsets.push_back(std::move(syn));
  }

  for (const auto& l : j.at("links")) {
    std::string kind = l.at("kind").get<std::string>();
    LinkKind k;
    if (kind == "antonym") k = LinkKind::Antonym;
    else if (kind == "similar") k = LinkKind::Similar;
    else if (kind == "event") k = LinkKind::Event;
    else if (kind == "agent") k = LinkKind::Agent;
    else if (kind == "instrument") k = LinkKind::Instrument;
    else if (kind == "result") k = LinkKind::Result;
    else throw ParseError(path + ": bad link kind '" + kind + "'");
    snap.links.push_back({k, SynsetId::from_string(l.at("source").get<std::string>()),
                          SynsetId::from_string(l.at("target").get<std::string>())});
  }

  snap.raw_mapping = mapping_from_json(j.at("raw_mapping"));

  for (const auto& f : j.at("taxonomy")) {
    std::string rel = f.at("relation").get<std::string>();
    TaxonomyRelation r;
    if (rel == "instance") r = TaxonomyRelation::Instance;
    else if (rel == "subclass") r = TaxonomyRelation::Subclass;
    else if (rel == "subrelation") r = TaxonomyRelation::Subrelation;
    else if (rel == "subAttribute") r = TaxonomyRelation::SubAttribute;
    else throw ParseError(path + ": bad taxonomy relation '" + rel + "'");
    snap.taxonomy.push_back({r, f.at("child").get<std::string>(),
                             f.at("parent").get<std::string>(),
                             f.at("source_file").get<std::string>()});
  }

  const auto& kinds = j.at("concept_kinds");
  for (auto it = kinds.begin(); it != kinds.end(); ++it)
    snap.concept_kinds[it.key()] = concept_kind_from_name(it.value().get<std::string>());
  snap.core_concepts = j.at("core_concepts").get<std::set<std::string>>();
  snap.stats = stats_from_json(j.at("stats"));

  if (j.contains("projected_mapping")) {
    snap.projected_mapping = mapping_from_json(j.at("projected_mapping"));
    const auto& p = j.at("projection_stats");
    ProjectionStats ps;
    ps.non_core_encountered = p.at("non_core_encountered").get<uint64_t>();
    ps.multi_core_supers = p.at("multi_core_supers").get<uint64_t>();
    ps.single_core_super = p.at("single_core_super").get<uint64_t>();
    ps.dangling_concepts = p.at("dangling_concepts").get<uint64_t>();
    ps.entity_fallback_synsets = p.at("entity_fallback_synsets").get<uint64_t>();
    ps.multi_mapped_synsets = p.at("multi_mapped_synsets").get<uint64_t>();
    ps.multi_mapped_per_pos = p.at("multi_mapped_per_pos").get<std::map<std::string, uint64_t>>();
    ps.cycle_warnings = p.at("cycle_warnings").get<uint64_t>();
    snap.projection_stats = ps;
  }

  return snap;
}

}  // namespace cqb::kb

#ifndef CQBENCH_KB_TYPES_HPP
#define CQBENCH_KB_TYPES_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cqb::kb {

// Database file a synset lives in.  Satellites share the adjective file and
// its offset space, so ids use the file part-of-speech.
enum class PosFile : uint8_t { Noun, Verb, Adjective, Adverb };

// The synset's own part of speech (`ss_type`).
enum class Pos : uint8_t { Noun, Verb, Adjective, Satellite, Adverb };

char pos_file_letter(PosFile p);
std::optional<PosFile> pos_file_from_letter(char c);
char pos_letter(Pos p);
PosFile file_of(Pos p);

struct SynsetId {
  PosFile pos;
  uint32_t offset;

  bool operator==(const SynsetId&) const = default;
  auto operator<=>(const SynsetId&) const = default;

  std::string to_string() const;            // e.g. "n:02005051"
  static SynsetId from_string(const std::string& s);
};

struct Synset {
  SynsetId id;
  Pos pos;
  std::vector<std::string> lemmas;
  std::string gloss;
};

enum class LinkKind : uint8_t { Antonym, Similar, Event, Agent, Instrument, Result };

const char* link_kind_name(LinkKind k);

// Antonym/Similar links are stored once in canonical (source < target) order;
// Event/Agent/Instrument/Result go verb (source) to noun (target).
struct LexicalLink {
  LinkKind kind;
  SynsetId source;
  SynsetId target;

  bool operator==(const LexicalLink&) const = default;
  auto operator<=>(const LexicalLink&) const = default;
};

enum class MappingRelation : uint8_t {
  Equivalence,
  Subsumption,
  Instance,
  NotEquivalence,
  NotSubsumption,
};

const char* mapping_relation_name(MappingRelation r);
MappingRelation mapping_relation_from_name(const std::string& s);
inline bool is_complement(MappingRelation r) {
  return r == MappingRelation::NotEquivalence || r == MappingRelation::NotSubsumption;
}
// Equivalence (with its complement) against the weaker subsumption/instance
// group; patterns route quantifiers on this split.
inline bool is_equivalence_class(MappingRelation r) {
  return r == MappingRelation::Equivalence || r == MappingRelation::NotEquivalence;
}

enum class ConceptKind : uint8_t {
  Object,              // o
  Class,               // c
  IndividualRelation,  // r
  IndividualAttribute, // a
  ClassOfRelations,    // R
  ClassOfAttributes,   // A
};

const char* concept_kind_name(ConceptKind k);
ConceptKind concept_kind_from_name(const std::string& s);
inline bool is_relation_kind(ConceptKind k) {
  return k == ConceptKind::IndividualRelation || k == ConceptKind::ClassOfRelations;
}

enum class TaxonomyRelation : uint8_t { Instance, Subclass, Subrelation, SubAttribute };

const char* taxonomy_relation_name(TaxonomyRelation r);

struct TaxonomyFact {
  TaxonomyRelation relation;
  std::string child;
  std::string parent;
  std::string source_file;

  auto operator<=>(const TaxonomyFact&) const = default;
};

struct MappingEntry {
  std::string concept_name;
  MappingRelation relation;

  bool operator==(const MappingEntry&) const = default;
  auto operator<=>(const MappingEntry&) const = default;
};

// Aggregated ingest counters; every skipped construct is counted.
struct IngestStats {
  std::map<std::string, uint64_t> synsets_per_pos;     // n / v / a+s / r
  uint64_t antonym_links = 0;
  uint64_t similar_links = 0;
  std::map<std::string, uint64_t> ignored_pointer_symbols;
  uint64_t morpho_links = 0;
  std::map<std::string, uint64_t> morpho_skipped_relations;
  std::vector<std::string> morpho_unresolved;  // warning records
  uint64_t mapped_synsets = 0;
  std::map<std::string, uint64_t> unmapped_per_pos;
  uint64_t mapping_duplicates_collapsed = 0;
  uint64_t taxonomy_facts = 0;
  uint64_t taxonomy_skipped_expressions = 0;
  std::vector<std::string> kind_ambiguity_warnings;
  std::vector<std::string> dangling_concepts;  // mapped but absent from taxonomy
  uint64_t corrections_applied = 0;
};

struct ProjectionStats {
  uint64_t non_core_encountered = 0;  // multi + single + dangling
  uint64_t multi_core_supers = 0;
  uint64_t single_core_super = 0;
  uint64_t dangling_concepts = 0;
  uint64_t entity_fallback_synsets = 0;
  uint64_t multi_mapped_synsets = 0;
  std::map<std::string, uint64_t> multi_mapped_per_pos;
  uint64_t cycle_warnings = 0;
};

struct KnowledgeSnapshot {
  std::vector<Synset> synsets;                       // sorted by id
  std::vector<LexicalLink> links;                    // sorted
  std::map<SynsetId, std::vector<MappingEntry>> raw_mapping;
  std::vector<TaxonomyFact> taxonomy;                // sorted
  std::map<std::string, ConceptKind> concept_kinds;
  std::set<std::string> core_concepts;
  IngestStats stats;

  // Populated by the projection stage.
  std::map<SynsetId, std::vector<MappingEntry>> projected_mapping;
  std::optional<ProjectionStats> projection_stats;

  const Synset* find_synset(const SynsetId& id) const;
  bool has_link(LinkKind kind, const SynsetId& a, const SynsetId& b) const;  // symmetric
  std::vector<SynsetId> similar_neighbors(const SynsetId& id) const;
  ConceptKind kind_of(const std::string& concept_name) const;
};

}  // namespace cqb::kb

#endif

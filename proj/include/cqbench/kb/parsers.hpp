#ifndef CQBENCH_KB_PARSERS_HPP
#define CQBENCH_KB_PARSERS_HPP

#include <map>
#include <string>
#include <vector>

#include "cqbench/kb/types.hpp"

namespace cqb::kb {

struct WordnetParseResult {
  std::vector<Synset> synsets;
  std::vector<LexicalLink> antonym_links;  // canonical unordered pairs
  std::vector<LexicalLink> similar_links;  // canonical unordered pairs
  std::map<std::string, uint64_t> ignored_pointer_symbols;
};

// Lexical database `data.<pos>` files (3.0 line format).  Extracts synsets
// plus `!` (antonym) and `&` (similar) pointers; other pointer symbols are
// counted and ignored.
WordnetParseResult parse_wordnet_data(const std::map<PosFile, std::string>& paths);

struct MorphosemanticParseResult {
  std::vector<LexicalLink> links;  // event/agent/instrument/result, verb -> noun
  std::map<std::string, uint64_t> skipped_relations;
  std::vector<std::string> unresolved;  // warning records, one per bad row
};

// Delimited export of the morphosemantic table: one `verb relation noun` row
// per line (tabs or runs of spaces).  Senses are written `pos:offset` or as
// sense keys resolved through the sense index.  Only event/agent/instrument/
// result rows are retained.
MorphosemanticParseResult parse_morphosemantic_links(
    const std::string& path, const std::map<std::string, SynsetId>& sense_index);

// `index.sense` lines: `sense_key offset sense_number tag_cnt`.
std::map<std::string, SynsetId> parse_sense_index(const std::string& path);

struct MappingSuffixes {
  // suffix character -> relation; defaults mirror the distributed files.
  std::map<char, MappingRelation> table = {
      {'=', MappingRelation::Equivalence},   {'+', MappingRelation::Subsumption},
      {'@', MappingRelation::Instance},      {':', MappingRelation::NotEquivalence},
      {'[', MappingRelation::NotSubsumption}};
};

struct MappingParseResult {
  std::map<SynsetId, std::vector<MappingEntry>> mapping;  // file order, de-duplicated
  std::map<std::string, uint64_t> unmapped_per_pos;       // lines without annotations
  uint64_t duplicates_collapsed = 0;
};

// `&%Concept<suffix>`-annotated synset records (data-file layout).
MappingParseResult parse_mapping_files(const std::vector<std::string>& paths,
                                       const MappingSuffixes& suffixes = {});

struct KindRoots {
  std::string relation = "Relation";
  std::string attribute = "Attribute";
  std::string class_root = "Class";
};

struct TaxonomyParseResult {
  std::vector<TaxonomyFact> facts;
  std::map<std::string, ConceptKind> kinds;
  std::set<std::string> core;
  uint64_t skipped_expressions = 0;
  std::vector<std::string> ambiguity_warnings;
};

// Parenthesized fact files; only top-level (instance|subclass|subrelation|
// subAttribute x y) facts are extracted.  Kinds come from reachability to the
// configured roots with precedence r > a > R > A > c > o; the core set is
// every concept declared in `core_paths`.
TaxonomyParseResult parse_suo_kif_taxonomy(const std::vector<std::string>& paths,
                                           const std::vector<std::string>& core_paths,
                                           const KindRoots& roots = {});

struct SnapshotInputs {
  WordnetParseResult wordnet;
  MorphosemanticParseResult morpho;
  MappingParseResult mapping;
  TaxonomyParseResult taxonomy;
  std::map<std::string, std::string> corrections;  // concept -> corrected concept
};

// Merges parser outputs into an immutable snapshot; validates referential
// integrity (every mapped synset exists) and assigns a fallback kind to
// concepts the taxonomy does not know (recorded as dangling).
KnowledgeSnapshot build_snapshot(SnapshotInputs inputs);

// Versioned snapshot file (JSON).
void save_snapshot(const KnowledgeSnapshot& snapshot, const std::string& path);
KnowledgeSnapshot load_snapshot(const std::string& path);

}  // namespace cqb::kb

#endif

#ifndef CQBENCH_PATTERNS_HPP
#define CQBENCH_PATTERNS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cqbench/fol/ast.hpp"
#include "cqbench/kb/types.hpp"
#include "cqbench/statements.hpp"

namespace cqb::patterns {

enum class Category : uint8_t {
  MultipleMapping,
  Event1,
  Event2,
  Event3,
  Antonym1,
  Antonym2,
  Antonym3,
  Agent,
  Instrument,
  Result,
};

const char* category_name(Category c);
Category category_from_name(const std::string& s);
const char* category_prefix(Category c);
bool is_mapping_category(Category c);  // Multiple Mapping + Event; rest is Competency

enum class ProcessPattern : uint8_t { P1, P2, P3, P4 };
const char* process_pattern_name(ProcessPattern p);

struct Provenance {
  std::vector<kb::SynsetId> synsets;
  std::optional<kb::LinkKind> link;
  std::vector<std::string> concepts;
  std::vector<kb::MappingRelation> relations;
  std::optional<ProcessPattern> process_pattern;
  std::string routing_note;   // e.g. strongest-relation choice on mixed entries
  uint64_t collapsed_from = 1;  // identical-conjecture sources merged by dedup
};

struct Problem {
  std::string id;  // empty until corpus assembly
  Category category;
  fol::FormulaPtr truth_test;
  fol::FormulaPtr falsity_test;
  Provenance provenance;
  std::string truth_key;  // canonical key of the truth test
};

// Every filtered construct is counted; the totals reconcile raw pair counts
// with problem counts.
struct GenerationStats {
  // Multiple mapping
  uint64_t mm_multi_mapped_synsets = 0;
  uint64_t mm_relation_skipped = 0;
  uint64_t mm_problems = 0;

  // Event
  uint64_t event_pairs_total = 0;
  uint64_t event_equal_mapped = 0;
  uint64_t event_non_class = 0;
  uint64_t event_complement_excluded = 0;
  uint64_t event_retained = 0;
  uint64_t event_identical_concept_pairs = 0;  // cross-product corner
  uint64_t event1_pairs = 0, event2_pairs = 0, event3_pairs = 0;
  uint64_t event1_problems = 0, event2_problems = 0, event3_problems = 0;

  // Antonym
  uint64_t antonym_base_pairs = 0;
  std::map<std::string, uint64_t> antonym_base_per_pos;
  uint64_t antonym_expanded_pairs = 0;
  uint64_t antonym_relation_skipped = 0;
  uint64_t antonym_considered = 0;
  uint64_t antonym1_pairs = 0, antonym2_pairs = 0, antonym3_pairs = 0;
  uint64_t antonym1_problems = 0, antonym2_problems = 0, antonym3_problems = 0;

  // Process
  uint64_t process_pairs_total = 0;
  uint64_t process_relation_skipped = 0;
  uint64_t process_complement_skipped = 0;
  uint64_t process_retained = 0;
  std::map<std::string, uint64_t> process_pattern_pairs;     // p1..p4
  std::map<std::string, uint64_t> process_pattern_problems;  // p1..p4
  uint64_t agent_problems = 0, instrument_problems = 0, result_problems = 0;

  uint64_t total_problems = 0;
};

// Attribute-class expansion of antonym pairs: every antonym pair spreads over
// both sides' similarity neighborhoods; unordered pairs, deduplicated.
std::vector<std::pair<kb::SynsetId, kb::SynsetId>> expand_antonym_pairs(
    const kb::KnowledgeSnapshot& snapshot);

std::vector<Problem> generate_multiple_mapping(const kb::KnowledgeSnapshot& snapshot,
                                               const statements::AttributeOverrides& overrides,
                                               GenerationStats& stats);
std::vector<Problem> generate_event(const kb::KnowledgeSnapshot& snapshot,
                                    GenerationStats& stats);
std::vector<Problem> generate_antonym(const kb::KnowledgeSnapshot& snapshot,
                                      const statements::AttributeOverrides& overrides,
                                      GenerationStats& stats);
std::vector<Problem> generate_process(const kb::KnowledgeSnapshot& snapshot,
                                      const statements::AttributeOverrides& overrides,
                                      GenerationStats& stats);

struct Corpus {
  std::vector<Problem> problems;  // globally ordered, ids assigned
  GenerationStats stats;
};

// Runs all generators, materializes falsity tests, dedups by canonical key
// and assigns stable ids (category prefix + sequence after key sort).
Corpus build_corpus(const kb::KnowledgeSnapshot& snapshot,
                    const statements::AttributeOverrides& overrides = {});

// Corpus manifest: JSON Lines, one problem per line, conjectures in the
// human-readable syntax.
void save_corpus(const Corpus& corpus, const std::string& manifest_path);
Corpus load_corpus(const std::string& manifest_path);

std::string generation_report_text(const GenerationStats& stats);

}  // namespace cqb::patterns

#endif

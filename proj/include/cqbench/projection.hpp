#ifndef CQBENCH_PROJECTION_HPP
#define CQBENCH_PROJECTION_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cqbench/kb/types.hpp"

namespace cqb::projection {

struct Options {
  std::string top_concept = "Entity";
};

// Upward reachability over subclass/subrelation/subAttribute edges with at
// most one instance hop, precomputed from the taxonomy fact list.
class TaxonomyGraph {
 public:
  explicit TaxonomyGraph(const std::vector<kb::TaxonomyFact>& facts);

  // All concepts strictly reachable upward from `start` (never `start`).
  const std::set<std::string>& ancestors(const std::string& start) const;

  bool is_ancestor(const std::string& ancestor, const std::string& of) const;
  uint64_t cycle_warnings() const { return cycle_warnings_; }

 private:
  std::set<std::string> compute(const std::string& start) const;

  std::map<std::string, std::vector<std::string>> hierarchy_up_;  // subclass/subrel/subattr
  std::map<std::string, std::vector<std::string>> instance_up_;
  mutable std::map<std::string, std::set<std::string>> cache_;
  uint64_t cycle_warnings_ = 0;
};

// The most-specific core super-concepts of `concept_name`: the concept itself
// when it is core, otherwise the minimal core elements among its ancestors.
// Empty for dangling concepts.
std::set<std::string> most_specific_core_supers(const std::string& concept_name,
                                                const TaxonomyGraph& graph,
                                                const std::set<std::string>& core);

// Rewrites the raw mapping onto the core: core entries are kept verbatim,
// non-core entries are lifted to their most-specific core supers (equivalence
// demoted to subsumption), and synsets left empty fall back to the top
// concept.  Entries per synset come out sorted by (concept, relation) with
// duplicates collapsed.
void project_mapping(kb::KnowledgeSnapshot& snapshot, const Options& options = {});

// Plain-text and delimited renderings of the projection stats.
std::string projection_report_text(const kb::KnowledgeSnapshot& snapshot);
std::string projection_stats_tsv(const kb::KnowledgeSnapshot& snapshot);

}  // namespace cqb::projection

#endif

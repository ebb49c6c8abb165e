#include "cqbench/projection.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "cqbench/errors.hpp"

namespace cqb::projection {

using kb::KnowledgeSnapshot;
using kb::MappingEntry;
using kb::MappingRelation;
using kb::TaxonomyFact;
using kb::TaxonomyRelation;

TaxonomyGraph::TaxonomyGraph(const std::vector<TaxonomyFact>& facts) {
  for (const TaxonomyFact& f : facts) {
    if (f.relation == TaxonomyRelation::Instance)
      instance_up_[f.child].push_back(f.parent);
    else
      hierarchy_up_[f.child].push_back(f.parent);
  }
  for (auto& [c, parents] : hierarchy_up_) {
    std::sort(parents.begin(), parents.end());
    parents.erase(std::unique(parents.begin(), parents.end()), parents.end());
  }
  for (auto& [c, parents] : instance_up_) {
    std::sort(parents.begin(), parents.end());
    parents.erase(std::unique(parents.begin(), parents.end()), parents.end());
  }

  // Cycle detection over the hierarchy edges; visited-set guarding below
  // keeps traversal safe regardless, this only reports.
  std::map<std::string, int> state;  // 0 unseen, 1 on stack, 2 done
  for (const auto& [start, _] : hierarchy_up_) {
    if (state[start] != 0) continue;
    std::vector<std::pair<std::string, size_t>> stack{{start, 0}};
    state[start] = 1;
    while (!stack.empty()) {
      auto& [node, idx] = stack.back();
      auto it = hierarchy_up_.find(node);
      if (it == hierarchy_up_.end() || idx >= it->second.size()) {
        state[node] = 2;
        stack.pop_back();
        continue;
      }
      const std::string& next = it->second[idx++];
      if (state[next] == 1) {
        ++cycle_warnings_;
      } else if (state[next] == 0) {
        state[next] = 1;
        stack.emplace_back(next, 0);
      }
    }
  }
}

std::set<std::string> TaxonomyGraph::compute(const std::string& start) const {
  // Phase one: hierarchy closure.  Phase two: one instance hop from anywhere
  // in that closure (or the start), then hierarchy closure again.
  std::set<std::string> first;
  auto sweep = [&](const std::string& from, std::set<std::string>& into) {
    std::queue<std::string> work;
    work.push(from);
    while (!work.empty()) {
      std::string cur = std::move(work.front());
      work.pop();
      auto it = hierarchy_up_.find(cur);
      if (it == hierarchy_up_.end()) continue;
      for (const std::string& parent : it->second)
        if (into.insert(parent).second) work.push(parent);
    }
  };
  sweep(start, first);

  std::set<std::string> out = first;
  std::set<std::string> hop_sources = first;
  hop_sources.insert(start);
  for (const std::string& src : hop_sources) {
    auto it = instance_up_.find(src);
    if (it == instance_up_.end()) continue;
    for (const std::string& target : it->second) {
      out.insert(target);
      sweep(target, out);
    }
  }
  out.erase(start);
  return out;
}

const std::set<std::string>& TaxonomyGraph::ancestors(const std::string& start) const {
  auto it = cache_.find(start);
  if (it == cache_.end()) it = cache_.emplace(start, compute(start)).first;
  return it->second;
}

bool TaxonomyGraph::is_ancestor(const std::string& ancestor, const std::string& of) const {
  return ancestors(of).count(ancestor) > 0;
}

std::set<std::string> most_specific_core_supers(const std::string& concept_name,
                                                const TaxonomyGraph& graph,
                                                const std::set<std::string>& core) {
  if (core.count(concept_name)) return {concept_name};
  const auto& up = graph.ancestors(concept_name);
  std::vector<std::string> candidates;
  for (const std::string& a : up)
    if (core.count(a)) candidates.push_back(a);
  // Keep the antichain of most-specific elements: drop anything that is a
  // strict ancestor of another candidate.
  std::set<std::string> out;
  for (const std::string& x : candidates) {
    bool dominated = false;
    for (const std::string& y : candidates) {
      if (x == y) continue;
      if (graph.is_ancestor(x, y) && !graph.is_ancestor(y, x)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.insert(x);
  }
  return out;
}

void project_mapping(KnowledgeSnapshot& snap, const Options& options) {
  TaxonomyGraph graph(snap.taxonomy);
  kb::ProjectionStats stats;
  stats.cycle_warnings = graph.cycle_warnings();

  // Per-concept lifting results, shared across synsets.
  std::map<std::string, std::set<std::string>> lifted;
  auto supers_of = [&](const std::string& c) -> const std::set<std::string>& {
    auto it = lifted.find(c);
    if (it == lifted.end())
      it = lifted.emplace(c, most_specific_core_supers(c, graph, snap.core_concepts)).first;
    return it->second;
  };

  std::map<kb::SynsetId, std::vector<MappingEntry>> projected;
  std::set<std::string> non_core_seen;

  for (const kb::Synset& synset : snap.synsets) {
    std::vector<MappingEntry> entries;
    if (auto it = snap.raw_mapping.find(synset.id); it != snap.raw_mapping.end())
      entries = it->second;

    std::vector<MappingEntry> result;
    for (const MappingEntry& e : entries) {
      if (snap.core_concepts.count(e.concept_name)) {
        result.push_back(e);
        continue;
      }
      if (kb::is_complement(e.relation))
        throw IntegrityError("complement mapping relation on non-core concept '" +
                             e.concept_name + "' (synset " + synset.id.to_string() + ")");
      non_core_seen.insert(e.concept_name);
      const auto& supers = supers_of(e.concept_name);
      MappingRelation rel = e.relation == MappingRelation::Equivalence
                                ? MappingRelation::Subsumption
                                : e.relation;
      for (const std::string& s : supers) result.push_back({s, rel});
    }

    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());

    if (result.empty()) {
      result.push_back({options.top_concept, MappingRelation::Subsumption});
      stats.entity_fallback_synsets++;
    }
    if (result.size() >= 2) {
      stats.multi_mapped_synsets++;
      stats.multi_mapped_per_pos[std::string(1, kb::pos_letter(synset.pos))]++;
    }
    projected.emplace(synset.id, std::move(result));
  }

  for (const std::string& c : non_core_seen) {
    size_t n = supers_of(c).size();
    if (n == 0) stats.dangling_concepts++;
    else if (n == 1) stats.single_core_super++;
    else stats.multi_core_supers++;
  }
  stats.non_core_encountered = non_core_seen.size();

  // The fallback concept must carry a kind downstream even on taxonomies
  // that never mention it.
  snap.concept_kinds.emplace(options.top_concept, kb::ConceptKind::Class);

  snap.projected_mapping = std::move(projected);
  snap.projection_stats = stats;
}

std::string projection_report_text(const KnowledgeSnapshot& snap) {
  if (!snap.projection_stats) throw StateError("projection has not run");
  const kb::ProjectionStats& p = *snap.projection_stats;
  std::ostringstream out;
  out << "projection report\n";
  out << "  non-core concepts encountered: " << p.non_core_encountered << "\n";
  out << "    with multiple core supers:   " << p.multi_core_supers << "\n";
  out << "    with a single core super:    " << p.single_core_super << "\n";
  out << "    dangling (no core super):    " << p.dangling_concepts << "\n";
  out << "  top-concept fallback synsets:  " << p.entity_fallback_synsets << "\n";
  out << "  multi-mapped synsets:          " << p.multi_mapped_synsets;
  if (!p.multi_mapped_per_pos.empty()) {
    out << " (";
    bool first = true;
    for (const auto& [pos, n] : p.multi_mapped_per_pos) {
      if (!first) out << ", ";
      out << n << " " << pos;
      first = false;
    }
    out << ")";
  }
  out << "\n";
  out << "  taxonomy cycle warnings:       " << p.cycle_warnings << "\n";
  return out.str();
}

std::string projection_stats_tsv(const KnowledgeSnapshot& snap) {
  if (!snap.projection_stats) throw StateError("projection has not run");
  const kb::ProjectionStats& p = *snap.projection_stats;
  std::ostringstream out;
  out << "stat\tvalue\n";
  out << "non_core_encountered\t" << p.non_core_encountered << "\n";
  out << "multi_core_supers\t" << p.multi_core_supers << "\n";
  out << "single_core_super\t" << p.single_core_super << "\n";
  out << "dangling_concepts\t" << p.dangling_concepts << "\n";
  out << "entity_fallback_synsets\t" << p.entity_fallback_synsets << "\n";
  out << "multi_mapped_synsets\t" << p.multi_mapped_synsets << "\n";
  for (const auto& [pos, n] : p.multi_mapped_per_pos)
    out << "multi_mapped_" << pos << "\t" << n << "\n";
  out << "cycle_warnings\t" << p.cycle_warnings << "\n";
  return out.str();
}

}  // namespace cqb::projection

#include "cqbench/patterns.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <sstream>

#include <json.hpp>

#include "cqbench/errors.hpp"
#include "cqbench/fol/text.hpp"

namespace cqb::patterns {

using fol::FormulaPtr;
using fol::Term;
using kb::KnowledgeSnapshot;
using kb::LinkKind;
using kb::MappingEntry;
using kb::MappingRelation;
using kb::SynsetId;
using nlohmann::json;
using statements::KindedEntry;

const char* category_name(Category c) {
  switch (c) {
    case Category::MultipleMapping: return "multiple-mapping";
    case Category::Event1: return "event-1";
    case Category::Event2: return "event-2";
    case Category::Event3: return "event-3";
    case Category::Antonym1: return "antonym-1";
    case Category::Antonym2: return "antonym-2";
    case Category::Antonym3: return "antonym-3";
    case Category::Agent: return "agent";
    case Category::Instrument: return "instrument";
    case Category::Result: return "result";
  }
  return "?";
}

Category category_from_name(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(Category::Result); ++i) {
    auto c = static_cast<Category>(i);
    if (s == category_name(c)) return c;
  }
  throw ParseError("unknown category '" + s + "'");
}

const char* category_prefix(Category c) {
  switch (c) {
    case Category::MultipleMapping: return "mm";
    case Category::Event1: return "ev1";
    case Category::Event2: return "ev2";
    case Category::Event3: return "ev3";
    case Category::Antonym1: return "an1";
    case Category::Antonym2: return "an2";
    case Category::Antonym3: return "an3";
    case Category::Agent: return "ag";
    case Category::Instrument: return "ins";
    case Category::Result: return "res";
  }
  return "x";
}

bool is_mapping_category(Category c) {
  return c == Category::MultipleMapping || c == Category::Event1 || c == Category::Event2 ||
         c == Category::Event3;
}

const char* process_pattern_name(ProcessPattern p) {
  switch (p) {
    case ProcessPattern::P1: return "p1";
    case ProcessPattern::P2: return "p2";
    case ProcessPattern::P3: return "p3";
    case ProcessPattern::P4: return "p4";
  }
  return "?";
}

namespace {

const Term kVarX = fol::var("?X");
const Term kVarY = fol::var("?Y");

std::vector<KindedEntry> kinded_entries(const KnowledgeSnapshot& snap, const SynsetId& id) {
  auto it = snap.projected_mapping.find(id);
  if (it == snap.projected_mapping.end())
    throw StateError("synset " + id.to_string() + " missing from projected mapping");
  std::vector<KindedEntry> out;
  out.reserve(it->second.size());
  for (const MappingEntry& e : it->second)
    out.push_back({e.concept_name, e.relation, snap.kind_of(e.concept_name)});
  return out;
}

bool any_relation_kind(const std::vector<KindedEntry>& entries) {
  for (const auto& e : entries)
    if (kb::is_relation_kind(e.kind)) return true;
  return false;
}

bool any_complement(const std::vector<KindedEntry>& entries) {
  for (const auto& e : entries)
    if (kb::is_complement(e.relation)) return true;
  return false;
}

// Mixed-relation synsets route by the strongest relation present:
// equivalence > instance > subsumption, complements ranked with their base.
int relation_strength(MappingRelation r) {
  switch (r) {
    case MappingRelation::Equivalence:
    case MappingRelation::NotEquivalence: return 2;
    case MappingRelation::Instance: return 1;
    case MappingRelation::Subsumption:
    case MappingRelation::NotSubsumption: return 0;
  }
  return 0;
}

// True when the side routes as "equivalence" for quantifier choice.
bool routes_as_equivalence(const std::vector<KindedEntry>& entries, std::string* note) {
  bool has_eq = false, mixed = false;
  int best = -1;
  for (const auto& e : entries) {
    int s = relation_strength(e.relation);
    if (best >= 0 && s != best) mixed = true;
    best = std::max(best, s);
    if (kb::is_equivalence_class(e.relation)) has_eq = true;
  }
  if (mixed && note && note->empty())
    *note = "mixed mapping relations; routed by strongest";
  return has_eq;
}

void add_provenance_entries(Provenance& prov, const std::vector<KindedEntry>& entries) {
  for (const auto& e : entries) {
    prov.concepts.push_back(e.concept_name);
    prov.relations.push_back(e.relation);
  }
}

struct ProblemCollector {
  std::vector<Problem> problems;
  std::map<std::string, size_t> by_key;

  // Returns true when the problem was new (not folded into a duplicate).
  bool add(Problem p) {
    p.truth_key = fol::canonical_key(*p.truth_test);
    auto it = by_key.find(p.truth_key);
    if (it != by_key.end()) {
      problems[it->second].provenance.collapsed_from++;
      return false;
    }
    by_key.emplace(p.truth_key, problems.size());
    problems.push_back(std::move(p));
    return true;
  }
};

}  // namespace

std::vector<std::pair<SynsetId, SynsetId>> expand_antonym_pairs(const KnowledgeSnapshot& snap) {
  std::map<SynsetId, std::vector<SynsetId>> similar;
  for (const kb::LexicalLink& link : snap.links) {
    if (link.kind != LinkKind::Similar) continue;
    similar[link.source].push_back(link.target);
    similar[link.target].push_back(link.source);
  }
  std::set<std::pair<SynsetId, SynsetId>> out;
  for (const kb::LexicalLink& link : snap.links) {
    if (link.kind != LinkKind::Antonym) continue;
    std::vector<SynsetId> left{link.source};
    std::vector<SynsetId> right{link.target};
    if (auto it = similar.find(link.source); it != similar.end())
      left.insert(left.end(), it->second.begin(), it->second.end());
    if (auto it = similar.find(link.target); it != similar.end())
      right.insert(right.end(), it->second.begin(), it->second.end());
    for (const SynsetId& a : left)
      for (const SynsetId& b : right) {
        if (a == b) continue;
        out.emplace(std::min(a, b), std::max(a, b));
      }
  }
  return {out.begin(), out.end()};
}

std::vector<Problem> generate_multiple_mapping(const KnowledgeSnapshot& snap,
                                               const statements::AttributeOverrides& overrides,
                                               GenerationStats& stats) {
  ProblemCollector collector;
  for (const kb::Synset& synset : snap.synsets) {
    auto entries = kinded_entries(snap, synset.id);
    if (entries.size() < 2) continue;
    stats.mm_multi_mapped_synsets++;
    auto statement = statements::synset_statement(entries, kVarX, overrides);
    if (!statement) {
      stats.mm_relation_skipped++;
      continue;
    }
    Problem p;
    p.category = Category::MultipleMapping;
    p.truth_test = fol::exists({kVarX}, statement->formula);
    p.provenance.synsets = {synset.id};
    add_provenance_entries(p.provenance, entries);
    collector.add(std::move(p));
  }
  stats.mm_problems = collector.problems.size();
  return std::move(collector.problems);
}

std::vector<Problem> generate_event(const KnowledgeSnapshot& snap, GenerationStats& stats) {
  ProblemCollector ev1, ev2, ev3;
  for (const kb::LexicalLink& link : snap.links) {
    if (link.kind != LinkKind::Event) continue;
    stats.event_pairs_total++;
    auto verb_entries = kinded_entries(snap, link.source);
    auto noun_entries = kinded_entries(snap, link.target);

    std::set<std::string> verb_concepts, noun_concepts;
    for (const auto& e : verb_entries) verb_concepts.insert(e.concept_name);
    for (const auto& e : noun_entries) noun_concepts.insert(e.concept_name);
    if (verb_concepts == noun_concepts) {
      stats.event_equal_mapped++;
      continue;
    }
    bool all_class = true;
    for (const auto& e : verb_entries)
      if (e.kind != kb::ConceptKind::Class) all_class = false;
    for (const auto& e : noun_entries)
      if (e.kind != kb::ConceptKind::Class) all_class = false;
    if (!all_class) {
      stats.event_non_class++;
      continue;
    }
    if (any_complement(verb_entries) || any_complement(noun_entries)) {
      stats.event_complement_excluded++;
      continue;
    }
    stats.event_retained++;

    // Multi-mapped synsets expand by cross product of single-concept choices.
    for (const auto& ve : verb_entries) {
      for (const auto& ne : noun_entries) {
        if (ve.concept_name == ne.concept_name) {
          stats.event_identical_concept_pairs++;
          continue;
        }
        bool verb_eq = kb::is_equivalence_class(ve.relation);
        bool noun_eq = kb::is_equivalence_class(ne.relation);
        Problem p;
        p.provenance.synsets = {link.source, link.target};
        p.provenance.link = LinkKind::Event;
        p.provenance.concepts = {ve.concept_name, ne.concept_name};
        p.provenance.relations = {ve.relation, ne.relation};
        if (verb_eq && noun_eq) {
          stats.event1_pairs++;
          p.category = Category::Event1;
          p.truth_test = fol::atom(fol::kEqualPredicate, {fol::constant(ve.concept_name),
                                                          fol::constant(ne.concept_name)});
          ev1.add(std::move(p));
        } else if (verb_eq || noun_eq) {
          stats.event2_pairs++;
          p.category = Category::Event2;
          // The precisely-known class sits below the one only bounded above.
          const std::string& sub = verb_eq ? ve.concept_name : ne.concept_name;
          const std::string& super = verb_eq ? ne.concept_name : ve.concept_name;
          p.truth_test =
              fol::atom("$subclass", {fol::constant(sub), fol::constant(super)});
          ev2.add(std::move(p));
        } else {
          stats.event3_pairs++;
          p.category = Category::Event3;
          p.truth_test = fol::exists(
              {kVarX},
              fol::conj({fol::atom("$subclass", {kVarX, fol::constant(ve.concept_name)}),
                         fol::atom("$subclass", {kVarX, fol::constant(ne.concept_name)})}));
          ev3.add(std::move(p));
        }
      }
    }
  }
  stats.event1_problems = ev1.problems.size();
  stats.event2_problems = ev2.problems.size();
  stats.event3_problems = ev3.problems.size();
  std::vector<Problem> out = std::move(ev1.problems);
  out.insert(out.end(), std::make_move_iterator(ev2.problems.begin()),
             std::make_move_iterator(ev2.problems.end()));
  out.insert(out.end(), std::make_move_iterator(ev3.problems.begin()),
             std::make_move_iterator(ev3.problems.end()));
  return out;
}

std::vector<Problem> generate_antonym(const KnowledgeSnapshot& snap,
                                      const statements::AttributeOverrides& overrides,
                                      GenerationStats& stats) {
  for (const kb::LexicalLink& link : snap.links) {
    if (link.kind != LinkKind::Antonym) continue;
    stats.antonym_base_pairs++;
    stats.antonym_base_per_pos[std::string(1, kb::pos_file_letter(link.source.pos))]++;
  }

  auto pairs = expand_antonym_pairs(snap);
  stats.antonym_expanded_pairs = pairs.size();

  ProblemCollector an1, an2, an3;
  for (const auto& [first_id, second_id] : pairs) {
    auto first_entries = kinded_entries(snap, first_id);
    auto second_entries = kinded_entries(snap, second_id);
    if (any_relation_kind(first_entries) || any_relation_kind(second_entries)) {
      stats.antonym_relation_skipped++;
      continue;
    }
    stats.antonym_considered++;

    Problem p;
    p.provenance.synsets = {first_id, second_id};
    p.provenance.link = LinkKind::Antonym;
    add_provenance_entries(p.provenance, first_entries);
    add_provenance_entries(p.provenance, second_entries);

    bool first_eq = routes_as_equivalence(first_entries, &p.provenance.routing_note);
    bool second_eq = routes_as_equivalence(second_entries, &p.provenance.routing_note);
    auto not_equal = fol::negation(fol::atom(fol::kEqualPredicate, {kVarX, kVarY}));

    if (first_eq && second_eq) {
      stats.antonym1_pairs++;
      auto s1 = statements::synset_statement(first_entries, kVarX, overrides);
      auto s2 = statements::synset_statement(second_entries, kVarY, overrides);
      p.category = Category::Antonym1;
      p.truth_test = fol::forall(
          {kVarX, kVarY},
          fol::implies(fol::conj({s1->formula, s2->formula}), std::move(not_equal)));
      an1.add(std::move(p));
    } else if (first_eq || second_eq) {
      stats.antonym2_pairs++;
      // The subsumption/instance side is quantified existentially and hosts
      // the nested universal over the equivalence side.
      const auto& sub_entries = first_eq ? second_entries : first_entries;
      const auto& eq_entries = first_eq ? first_entries : second_entries;
      auto s_sub = statements::synset_statement(sub_entries, kVarX, overrides);
      auto s_eq = statements::synset_statement(eq_entries, kVarY, overrides);
      p.category = Category::Antonym2;
      p.truth_test = fol::exists(
          {kVarX},
          fol::conj({s_sub->formula,
                     fol::forall({kVarY}, fol::implies(s_eq->formula, std::move(not_equal)))}));
      an2.add(std::move(p));
    } else {
      stats.antonym3_pairs++;
      auto s1 = statements::synset_statement(first_entries, kVarX, overrides);
      auto s2 = statements::synset_statement(second_entries, kVarY, overrides);
      p.category = Category::Antonym3;
      p.truth_test = fol::exists(
          {kVarX, kVarY}, fol::conj({s1->formula, s2->formula, std::move(not_equal)}));
      an3.add(std::move(p));
    }
  }
  stats.antonym1_problems = an1.problems.size();
  stats.antonym2_problems = an2.problems.size();
  stats.antonym3_problems = an3.problems.size();
  std::vector<Problem> out = std::move(an1.problems);
  out.insert(out.end(), std::make_move_iterator(an2.problems.begin()),
             std::make_move_iterator(an2.problems.end()));
  out.insert(out.end(), std::make_move_iterator(an3.problems.begin()),
             std::make_move_iterator(an3.problems.end()));
  return out;
}

std::vector<Problem> generate_process(const KnowledgeSnapshot& snap,
                                      const statements::AttributeOverrides& overrides,
                                      GenerationStats& stats) {
  ProblemCollector agent, instrument, result;
  for (const kb::LexicalLink& link : snap.links) {
    LinkKind k = link.kind;
    if (k != LinkKind::Agent && k != LinkKind::Instrument && k != LinkKind::Result) continue;
    stats.process_pairs_total++;
    auto verb_entries = kinded_entries(snap, link.source);
    auto noun_entries = kinded_entries(snap, link.target);
    if (any_relation_kind(verb_entries) || any_relation_kind(noun_entries)) {
      stats.process_relation_skipped++;
      continue;
    }
    if (any_complement(verb_entries) || any_complement(noun_entries)) {
      stats.process_complement_skipped++;
      continue;
    }
    stats.process_retained++;

    Problem p;
    p.provenance.synsets = {link.source, link.target};
    p.provenance.link = k;
    add_provenance_entries(p.provenance, verb_entries);
    add_provenance_entries(p.provenance, noun_entries);

    bool verb_eq = routes_as_equivalence(verb_entries, &p.provenance.routing_note);
    bool noun_eq = routes_as_equivalence(noun_entries, &p.provenance.routing_note);
    auto v = statements::synset_statement(verb_entries, kVarX, overrides);
    auto n = statements::synset_statement(noun_entries, kVarY, overrides);
    auto rel_atom = fol::atom(link_kind_name(k), {kVarX, kVarY});

    // Forward half: every verb-side object bears the relation to some
    // noun-side object.  Backward half: the converse.
    auto forward = fol::forall(
        {kVarX},
        fol::implies(v->formula, fol::exists({kVarY}, fol::conj({n->formula, rel_atom}))));
    auto backward = fol::forall(
        {kVarY},
        fol::implies(n->formula, fol::exists({kVarX}, fol::conj({v->formula, rel_atom}))));

    ProcessPattern pattern;
    if (verb_eq && noun_eq) {
      pattern = ProcessPattern::P1;
      p.truth_test = fol::conj({std::move(forward), std::move(backward)});
    } else if (verb_eq) {
      pattern = ProcessPattern::P2;
      p.truth_test = std::move(forward);
    } else if (noun_eq) {
      pattern = ProcessPattern::P3;
      p.truth_test = std::move(backward);
    } else {
      pattern = ProcessPattern::P4;
      p.truth_test = fol::exists({kVarX, kVarY}, fol::conj({v->formula, n->formula, rel_atom}));
    }
    p.provenance.process_pattern = pattern;
    stats.process_pattern_pairs[process_pattern_name(pattern)]++;

    ProblemCollector* bucket = nullptr;
    switch (k) {
      case LinkKind::Agent: p.category = Category::Agent; bucket = &agent; break;
      case LinkKind::Instrument: p.category = Category::Instrument; bucket = &instrument; break;
      case LinkKind::Result: p.category = Category::Result; bucket = &result; break;
      default: throw Error(ErrorCategory::Internal, "unreachable link kind");
    }
    if (bucket->add(std::move(p)))
      stats.process_pattern_problems[process_pattern_name(pattern)]++;
  }
  stats.agent_problems = agent.problems.size();
  stats.instrument_problems = instrument.problems.size();
  stats.result_problems = result.problems.size();
  std::vector<Problem> out = std::move(agent.problems);
  out.insert(out.end(), std::make_move_iterator(instrument.problems.begin()),
             std::make_move_iterator(instrument.problems.end()));
  out.insert(out.end(), std::make_move_iterator(result.problems.begin()),
             std::make_move_iterator(result.problems.end()));
  return out;
}

Corpus build_corpus(const KnowledgeSnapshot& snap,
                    const statements::AttributeOverrides& overrides) {
  if (snap.projected_mapping.empty() && !snap.synsets.empty())
    throw StateError("corpus generation needs a projected snapshot (run the project stage)");

  Corpus corpus;
  // The generators are pure over the snapshot and write disjoint counter
  // fields, so they can run concurrently; the merge below is sequential.
  auto mm_f = std::async(std::launch::async, [&] {
    return generate_multiple_mapping(snap, overrides, corpus.stats);
  });
  auto ev_f = std::async(std::launch::async, [&] { return generate_event(snap, corpus.stats); });
  auto an_f = std::async(std::launch::async,
                         [&] { return generate_antonym(snap, overrides, corpus.stats); });
  auto pr_f = std::async(std::launch::async,
                         [&] { return generate_process(snap, overrides, corpus.stats); });
  auto mm = mm_f.get();
  auto ev = ev_f.get();
  auto an = an_f.get();
  auto pr = pr_f.get();

  std::vector<Problem> all = std::move(mm);
  for (auto* v : {&ev, &an, &pr})
    all.insert(all.end(), std::make_move_iterator(v->begin()),
               std::make_move_iterator(v->end()));

  // Cross-category duplicate keys would silently conflate distinct problem
  // shapes; treat them as corpus corruption.
  std::map<std::string, Category> key_owner;
  for (const Problem& p : all) {
    auto [it, inserted] = key_owner.emplace(p.truth_key, p.category);
    if (!inserted && it->second != p.category)
      throw IntegrityError("canonical key collision across categories " +
                           std::string(category_name(it->second)) + " and " +
                           category_name(p.category));
  }

  // Stable ids: sort by canonical key within each category, then number.
  std::stable_sort(all.begin(), all.end(), [](const Problem& a, const Problem& b) {
    if (a.category != b.category) return a.category < b.category;
    return a.truth_key < b.truth_key;
  });
  std::map<Category, int> seq;
  char buf[32];
  for (Problem& p : all) {
    int n = ++seq[p.category];
    std::snprintf(buf, sizeof buf, "%s-%04d", category_prefix(p.category), n);
    p.id = buf;
    p.falsity_test = fol::negate_sentence(p.truth_test);
  }

  corpus.stats.total_problems = all.size();
  corpus.problems = std::move(all);
  return corpus;
}

void save_corpus(const Corpus& corpus, const std::string& manifest_path) {
  std::ofstream out(manifest_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + manifest_path);
  for (const Problem& p : corpus.problems) {
    json j;
    j["id"] = p.id;
    j["category"] = category_name(p.category);
    j["truth"] = fol::emit_suo_kif(*p.truth_test);
    j["falsity"] = fol::emit_suo_kif(*p.falsity_test);
    json prov;
    json synsets = json::array();
    for (const SynsetId& s : p.provenance.synsets) synsets.push_back(s.to_string());
    prov["synsets"] = std::move(synsets);
    if (p.provenance.link) prov["link"] = kb::link_kind_name(*p.provenance.link);
    prov["concepts"] = p.provenance.concepts;
    json rels = json::array();
    for (auto r : p.provenance.relations) rels.push_back(kb::mapping_relation_name(r));
    prov["relations"] = std::move(rels);
    if (p.provenance.process_pattern)
      prov["pattern"] = process_pattern_name(*p.provenance.process_pattern);
    if (!p.provenance.routing_note.empty()) prov["routing"] = p.provenance.routing_note;
    prov["collapsed_from"] = p.provenance.collapsed_from;
    j["provenance"] = std::move(prov);
    out << j.dump() << '\n';
  }
  if (!out) throw IoError("failed writing " + manifest_path);
}

Corpus load_corpus(const std::string& manifest_path) {
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in)
    throw StateError("cannot open " + manifest_path + " (run the generate stage first)");
  Corpus corpus;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(manifest_path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    Problem p;
    p.id = j.at("id").get<std::string>();
    p.category = category_from_name(j.at("category").get<std::string>());
    p.truth_test = fol::parse_suo_kif(j.at("truth").get<std::string>());
    p.falsity_test = fol::parse_suo_kif(j.at("falsity").get<std::string>());
    p.truth_key = fol::canonical_key(*p.truth_test);
    const json& prov = j.at("provenance");
    for (const auto& s : prov.at("synsets"))
      p.provenance.synsets.push_back(SynsetId::from_string(s.get<std::string>()));
    if (prov.contains("link")) {
      std::string kind = prov.at("link").get<std::string>();
      for (LinkKind k : {LinkKind::Antonym, LinkKind::Similar, LinkKind::Event, LinkKind::Agent,
                         LinkKind::Instrument, LinkKind::Result})
        if (kind == kb::link_kind_name(k)) p.provenance.link = k;
    }
    p.provenance.concepts = prov.at("concepts").get<std::vector<std::string>>();
    for (const auto& r : prov.at("relations"))
      p.provenance.relations.push_back(kb::mapping_relation_from_name(r.get<std::string>()));
    if (prov.contains("pattern")) {
      std::string name = prov.at("pattern").get<std::string>();
      for (int i = 0; i <= 3; ++i)
        if (name == process_pattern_name(static_cast<ProcessPattern>(i)))
          p.provenance.process_pattern = static_cast<ProcessPattern>(i);
    }
    if (prov.contains("routing")) p.provenance.routing_note = prov.at("routing").get<std::string>();
    p.provenance.collapsed_from = prov.at("collapsed_from").get<uint64_t>();
    corpus.problems.push_back(std::move(p));
  }
  corpus.stats.total_problems = corpus.problems.size();
  return corpus;
}

std::string generation_report_text(const GenerationStats& s) {
  std::ostringstream out;
  out << "generation report\n";
  out << "  multiple mapping: " << s.mm_multi_mapped_synsets << " multi-mapped synsets, "
      << s.mm_relation_skipped << " relation-mapped skipped, " << s.mm_problems
      << " problems\n";
  out << "  event: " << s.event_pairs_total << " pairs; dropped " << s.event_equal_mapped
      << " equal-mapped, " << s.event_non_class << " non-class, "
      << s.event_complement_excluded << " complement-mapped; retained " << s.event_retained
      << "\n";
  out << "    pairs by subpattern: " << s.event1_pairs << " / " << s.event2_pairs << " / "
      << s.event3_pairs;
  if (s.event_identical_concept_pairs)
    out << " (+" << s.event_identical_concept_pairs << " identical-concept expansions dropped)";
  out << "\n";
  out << "    problems: " << s.event1_problems << " / " << s.event2_problems << " / "
      << s.event3_problems << "\n";
  out << "  antonym: " << s.antonym_base_pairs << " base pairs (";
  bool first = true;
  for (const auto& [pos, n] : s.antonym_base_per_pos) {
    if (!first) out << ", ";
    out << n << " " << pos;
    first = false;
  }
  out << "); expanded " << s.antonym_expanded_pairs << "; relation-mapped skipped "
      << s.antonym_relation_skipped << "; considered " << s.antonym_considered << "\n";
  out << "    pairs by subpattern: " << s.antonym1_pairs << " / " << s.antonym2_pairs << " / "
      << s.antonym3_pairs << "\n";
  out << "    problems: " << s.antonym1_problems << " / " << s.antonym2_problems << " / "
      << s.antonym3_problems << "\n";
  out << "  process: " << s.process_pairs_total << " pairs; skipped "
      << s.process_relation_skipped << " relation-mapped, " << s.process_complement_skipped
      << " complement-mapped; retained " << s.process_retained << "\n";
  out << "    pairs by pattern:";
  for (const char* name : {"p1", "p2", "p3", "p4"}) {
    auto it = s.process_pattern_pairs.find(name);
    out << " " << name << "=" << (it == s.process_pattern_pairs.end() ? 0 : it->second);
  }
  out << "\n    problems: agent " << s.agent_problems << ", instrument " << s.instrument_problems
      << ", result " << s.result_problems << "\n";
  out << "  total problems: " << s.total_problems << " (" << 2 * s.total_problems
      << " conjectures)\n";
  return out.str();
}

}  // namespace cqb::patterns

// Acceptance suite: one pass/fail line per criterion.  Criteria 1, 2 and the
// ontology-file half of 6 are conditional on externally supplied inputs
// (CQBENCH_OFFICIAL_CONFIG, CQBENCH_ONTOLOGY_FILE); without them the bundled
// fixtures stand in and the conditional half is reported as skipped.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include <json.hpp>

#include "cqbench/analysis.hpp"
#include "cqbench/errors.hpp"
#include "cqbench/fol/text.hpp"
#include "cqbench/kb/parsers.hpp"
#include "cqbench/patterns.hpp"
#include "cqbench/pipeline.hpp"
#include "cqbench/projection.hpp"
#include "cqbench/statements.hpp"

#include "../micro_fixture.hpp"

namespace fs = std::filesystem;
using namespace cqb;
using nlohmann::json;

namespace {

const std::string kGolden = std::string(CQBENCH_FIXTURES_DIR) + "/golden";
const std::string kCli = CQBENCH_CLI_PATH;

struct Failure {
  std::string detail;
};

std::vector<std::string> g_notes;

void require(bool condition, const std::string& detail) {
  if (!condition) throw Failure{detail};
}

template <typename A, typename B>
void require_eq(const A& actual, const B& expected, const std::string& what) {
  if (!(actual == static_cast<A>(expected))) {
    std::ostringstream msg;
    msg << what << ": expected " << expected << ", got " << actual;
    throw Failure{msg.str()};
  }
}

std::string normalize_ws(const std::string& s) {
  std::string out;
  bool in_space = false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n') {
      in_space = true;
      continue;
    }
    if (in_space && !out.empty() && out.back() != '(' && c != ')') out += ' ';
    in_space = false;
    out += c;
  }
  return out;
}

kb::KnowledgeSnapshot fixture_snapshot() {
  kb::SnapshotInputs inputs;
  inputs.wordnet = kb::parse_wordnet_data({{kb::PosFile::Noun, kGolden + "/data.noun"},
                                           {kb::PosFile::Verb, kGolden + "/data.verb"},
                                           {kb::PosFile::Adjective, kGolden + "/data.adj"},
                                           {kb::PosFile::Adverb, kGolden + "/data.adv"}});
  auto sense_index = kb::parse_sense_index(kGolden + "/index.sense");
  inputs.morpho = kb::parse_morphosemantic_links(kGolden + "/morphosemantic.tsv", sense_index);
  inputs.mapping = kb::parse_mapping_files({kGolden + "/mapping-noun.txt",
                                            kGolden + "/mapping-verb.txt",
                                            kGolden + "/mapping-adj.txt",
                                            kGolden + "/mapping-adv.txt"});
  inputs.taxonomy = kb::parse_suo_kif_taxonomy({kGolden + "/core.kif", kGolden + "/domain.kif"},
                                               {kGolden + "/core.kif"});
  auto snapshot = kb::build_snapshot(std::move(inputs));
  projection::project_mapping(snapshot);
  return snapshot;
}

std::map<patterns::Category, size_t> category_totals(const patterns::Corpus& corpus) {
  std::map<patterns::Category, size_t> totals;
  for (const auto& p : corpus.problems) totals[p.category]++;
  return totals;
}

// ---------------------------------------------------------------------------
// Criterion 1: corpus reproduction
// ---------------------------------------------------------------------------

void check_official_corpus(const std::string& config_path) {
  RunConfig cfg = load_config(config_path);
  kb::KnowledgeSnapshot snapshot = kb::load_snapshot(cfg.projected_snapshot_path());
  auto corpus = patterns::build_corpus(snapshot, cfg.attribute_overrides);
  const auto& s = corpus.stats;

  std::ostringstream cmp;
  cmp << "intermediate counts (actual vs reference): "
      << "event pairs " << s.event_pairs_total << "/8158, equal-mapped " << s.event_equal_mapped
      << "/1991, non-class " << s.event_non_class << "/499; antonym base "
      << s.antonym_base_pairs << "/7604, expanded " << s.antonym_expanded_pairs
      << "/121496, considered " << s.antonym_considered << "/84562, buckets "
      << s.antonym1_pairs << "/" << s.antonym2_pairs << "/" << s.antonym3_pairs
      << " vs 186/2542/81834; process " << s.process_pairs_total << "/5295, retained "
      << s.process_retained << "/5098, problems per pattern";
  for (const char* name : {"p1", "p2", "p3", "p4"}) {
    auto it = s.process_pattern_problems.find(name);
    cmp << " " << (it == s.process_pattern_problems.end() ? 0 : it->second);
  }
  cmp << " vs 13/197/137/1618";
  g_notes.push_back(cmp.str());

  auto totals = category_totals(corpus);
  using patterns::Category;
  require_eq(totals[Category::MultipleMapping], 151u, "multiple-mapping problems");
  require_eq(totals[Category::Event1], 24u, "event-1 problems");
  require_eq(totals[Category::Event2], 350u, "event-2 problems");
  require_eq(totals[Category::Event3], 2011u, "event-3 problems");
  require_eq(totals[Category::Antonym1], 71u, "antonym-1 problems");
  require_eq(totals[Category::Antonym2], 489u, "antonym-2 problems");
  require_eq(totals[Category::Antonym3], 2444u, "antonym-3 problems");
  require_eq(totals[Category::Agent], 829u, "agent problems");
  require_eq(totals[Category::Instrument], 348u, "instrument problems");
  require_eq(totals[Category::Result], 788u, "result problems");
  require_eq(corpus.problems.size(), 7505u, "total problems");
}

std::string criterion1() {
  auto start = std::chrono::steady_clock::now();
  if (const char* official = std::getenv("CQBENCH_OFFICIAL_CONFIG")) {
    check_official_corpus(official);
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    require(elapsed < 300.0, "official corpus generation exceeded the runtime bound");
    return "official per-category totals reproduced (151/24/350/2011/71/489/2444/829/348/788)";
  }
  auto snapshot = fixture_snapshot();
  auto corpus = patterns::build_corpus(snapshot);
  auto totals = category_totals(corpus);
  using patterns::Category;
  require_eq(corpus.problems.size(), 15u, "fixture corpus size");
  require_eq(totals[Category::MultipleMapping], 3u, "fixture multiple-mapping");
  require_eq(totals[Category::Event1], 1u, "fixture event-1");
  require_eq(totals[Category::Event2], 1u, "fixture event-2");
  require_eq(totals[Category::Event3], 1u, "fixture event-3");
  require_eq(totals[Category::Antonym1], 1u, "fixture antonym-1");
  require_eq(totals[Category::Antonym2], 1u, "fixture antonym-2");
  require_eq(totals[Category::Antonym3], 2u, "fixture antonym-3");
  require_eq(totals[Category::Agent], 2u, "fixture agent");
  require_eq(totals[Category::Instrument], 1u, "fixture instrument");
  require_eq(totals[Category::Result], 2u, "fixture result");
  const auto& s = corpus.stats;
  require_eq(s.event_pairs_total, 6u, "fixture event pairs");
  require_eq(s.event_equal_mapped, 1u, "fixture equal-mapped pairs");
  require_eq(s.event_non_class, 1u, "fixture non-class pairs");
  require_eq(s.antonym_expanded_pairs, 40u, "fixture expanded antonym pairs");
  require_eq(s.process_retained, 5u, "fixture retained process pairs");
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  require(elapsed < 300.0, "corpus generation exceeded the runtime bound");
  return "official inputs absent (set CQBENCH_OFFICIAL_CONFIG); bundled-fixture corpus counts "
         "and filter accounting verified";
}

// ---------------------------------------------------------------------------
// Criterion 2: projection statistics
// ---------------------------------------------------------------------------

std::string criterion2() {
  auto start = std::chrono::steady_clock::now();
  if (const char* official = std::getenv("CQBENCH_OFFICIAL_CONFIG")) {
    RunConfig cfg = load_config(official);
    kb::KnowledgeSnapshot snapshot = kb::load_snapshot(cfg.snapshot_path());
    projection::Options options;
    options.top_concept = cfg.top_concept;
    projection::project_mapping(snapshot, options);
    const auto& p = *snapshot.projection_stats;
    require_eq(p.multi_core_supers + p.single_core_super, 24906u, "non-core mapped concepts");
    require_eq(p.multi_core_supers, 14472u, "multi-super concepts");
    require_eq(p.single_core_super, 10434u, "single-super concepts");
    require_eq(p.dangling_concepts, 113u, "dangling concepts");
    require(p.entity_fallback_synsets >= 4650 && p.entity_fallback_synsets <= 4750,
            "fallback synsets outside 4700 +/- 50: " +
                std::to_string(p.entity_fallback_synsets));
    require_eq(p.multi_mapped_per_pos.at("n"), 1104u, "multi-mapped nouns");
    require_eq(p.multi_mapped_per_pos.at("v"), 2u, "multi-mapped verbs");
    return "official projection statistics reproduced";
  }
  auto snapshot = fixture_snapshot();
  const auto& p = *snapshot.projection_stats;
  require_eq(p.non_core_encountered, 2u, "fixture non-core encountered");
  require_eq(p.single_core_super, 1u, "fixture single-super");
  require_eq(p.dangling_concepts, 1u, "fixture dangling");
  require_eq(p.entity_fallback_synsets, 14u, "fixture fallback synsets");
  require(p.non_core_encountered ==
              p.multi_core_supers + p.single_core_super + p.dangling_concepts,
          "projection stat consistency");
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  require(elapsed < 120.0, "projection exceeded the runtime bound");
  return "official inputs absent; bundled-fixture projection statistics verified";
}

// ---------------------------------------------------------------------------
// Criterion 3: worked-example goldens
// ---------------------------------------------------------------------------

std::string criterion3() {
  auto snapshot = fixture_snapshot();
  auto corpus = patterns::build_corpus(snapshot);
  using kb::PosFile;
  using kb::SynsetId;

  auto truth_of = [&](patterns::Category category,
                      std::vector<SynsetId> synsets) -> std::string {
    for (const auto& p : corpus.problems)
      if (p.category == category && p.provenance.synsets == synsets)
        return fol::emit_suo_kif(*p.truth_test);
    throw Failure{"no generated problem for the requested source synsets"};
  };
  auto statement_of = [&](SynsetId id) {
    auto statement = statements::synset_statement(snapshot, id, fol::var("?X"));
    require(statement.has_value(), "statement unexpectedly skipped");
    return fol::emit_suo_kif(*statement->formula);
  };
  size_t checked = 0;
  auto expect = [&checked](const std::string& actual, const std::string& expected,
                           const std::string& label) {
    if (normalize_ws(actual) != normalize_ws(expected))
      throw Failure{label + ": generated \"" + actual + "\", expected \"" + expected + "\""};
    ++checked;
  };

  // Statement-level translations.
  expect(statement_of({PosFile::Adjective, 620001}), "(equal ?X YearDuration)", "object form");
  expect(statement_of({PosFile::Noun, 310003}), "($instance ?X Artifact)", "class form");
  expect(statement_of({PosFile::Noun, 310001}), "(attribute ?X Female)", "attribute form");
  expect(statement_of({PosFile::Noun, 310002}),
         "(exists (?Z) (and ($instance ?Z BreakabilityAttribute) (attribute ?X ?Z)))",
         "attribute-class form");
  expect(statement_of({PosFile::Noun, 310004}), "(not ($instance ?X Artifact))",
         "complement form");
  {
    std::vector<statements::KindedEntry> entries{
        {"Male", kb::MappingRelation::Subsumption, kb::ConceptKind::IndividualAttribute},
        {"Horse", kb::MappingRelation::Subsumption, kb::ConceptKind::Class}};
    auto statement = statements::synset_statement(entries, fol::var("?X"));
    expect(fol::emit_suo_kif(*statement->formula),
           "(and (attribute ?X Male) ($instance ?X Horse))", "conjoined form");
  }

  // Whole-conjecture shapes from their source pairs.
  using patterns::Category;
  expect(truth_of(Category::Result, {{PosFile::Verb, 500001}, {PosFile::Noun, 100001}}),
         "(exists (?X ?Y) (and ($instance ?X Planning) ($instance ?Y Plan) (result ?X ?Y)))",
         "process existential pair");
  expect(truth_of(Category::MultipleMapping, {{PosFile::Noun, 300001}}),
         "(exists (?X) (and ($instance ?X ExplosiveDevice) ($instance ?X Weapon)))",
         "two-way multiple mapping");
  expect(truth_of(Category::MultipleMapping, {{PosFile::Noun, 300002}}),
         "(exists (?X) (and ($instance ?X FossilFuel) ($instance ?X Mineral) "
         "($instance ?X Rock)))",
         "three-way multiple mapping");
  expect(truth_of(Category::Event1, {{PosFile::Verb, 510001}, {PosFile::Noun, 110001}}),
         "(equal Death Killing)", "event equality");
  expect(truth_of(Category::Event2, {{PosFile::Verb, 520001}, {PosFile::Noun, 120001}}),
         "($subclass Repairing Pretending)", "event subclass");
  expect(truth_of(Category::Event3, {{PosFile::Verb, 530001}, {PosFile::Noun, 130001}}),
         "(exists (?X) (and ($subclass ?X Judging) ($subclass ?X Comparing)))",
         "event common subclass");
  expect(truth_of(Category::Antonym1, {{PosFile::Noun, 200001}, {PosFile::Noun, 200002}}),
         "(forall (?X ?Y) (=> (and ($instance ?X Birth) ($instance ?Y Death)) "
         "(not (equal ?X ?Y))))",
         "antonym universal");
  expect(truth_of(Category::Antonym2, {{PosFile::Noun, 210001}, {PosFile::Noun, 210002}}),
         "(exists (?X) (and ($instance ?X GeographicArea) (forall (?Y) (=> ($instance ?Y City) "
         "(not (equal ?X ?Y))))))",
         "antonym nested");
  expect(truth_of(Category::Antonym3, {{PosFile::Adjective, 610001}, {PosFile::Adjective, 610002}}),
         "(exists (?X ?Y) (and ($instance ?X Coloring) (not ($instance ?Y SurfaceChanging)) "
         "(not (equal ?X ?Y))))",
         "antonym existential");
  expect(truth_of(Category::Agent, {{PosFile::Verb, 540001}, {PosFile::Noun, 140001}}),
         "(and (forall (?X) (=> ($instance ?X EducationalProcess) (exists (?Y) (and "
         "(attribute ?Y Teacher) (agent ?X ?Y))))) (forall (?Y) (=> (attribute ?Y Teacher) "
         "(exists (?X) (and ($instance ?X EducationalProcess) (agent ?X ?Y))))))",
         "process bidirectional");
  return std::to_string(checked) + " worked examples match symbol-for-symbol";
}

// ---------------------------------------------------------------------------
// Criterion 4: property suites
// ---------------------------------------------------------------------------

// 4a: brute-force ancestor oracle (shared shape with the unit suite).
struct DagOracle {
  std::map<std::string, std::vector<std::pair<std::string, bool>>> up;

  void reach(const std::string& node, bool used_instance, std::set<std::string>& out,
             std::set<std::pair<std::string, bool>>& seen) const {
    if (!seen.insert({node, used_instance}).second) return;
    auto it = up.find(node);
    if (it == up.end()) return;
    for (const auto& [parent, is_instance] : it->second) {
      if (is_instance && used_instance) continue;
      out.insert(parent);
      reach(parent, used_instance || is_instance, out, seen);
    }
  }
  std::set<std::string> ancestors(const std::string& node) const {
    std::set<std::string> out;
    std::set<std::pair<std::string, bool>> seen;
    reach(node, false, out, seen);
    out.erase(node);
    return out;
  }
  std::set<std::string> most_specific(const std::string& node,
                                      const std::set<std::string>& core) const {
    if (core.count(node)) return {node};
    std::set<std::string> candidates, out;
    for (const auto& a : ancestors(node))
      if (core.count(a)) candidates.insert(a);
    for (const auto& x : candidates) {
      bool dominated = false;
      for (const auto& y : candidates)
        if (x != y && ancestors(y).count(x) && !ancestors(x).count(y)) dominated = true;
      if (!dominated) out.insert(x);
    }
    return out;
  }
};

void property_dag_oracle() {
  std::mt19937_64 rng(1789);
  auto pick = [&](size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); };
  for (int trial = 0; trial < 1000; ++trial) {
    size_t nodes = 2 + pick(29);
    size_t edges = pick(61);
    std::vector<std::string> names;
    for (size_t i = 0; i < nodes; ++i) names.push_back("n" + std::to_string(i));
    std::vector<kb::TaxonomyFact> facts;
    DagOracle oracle;
    for (size_t e = 0; e < edges; ++e) {
      size_t a = pick(nodes), b = pick(nodes);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      auto rel = pick(4) == 0 ? kb::TaxonomyRelation::Instance : kb::TaxonomyRelation::Subclass;
      facts.push_back({rel, names[a], names[b], "acc"});
      oracle.up[names[a]].push_back({names[b], rel == kb::TaxonomyRelation::Instance});
    }
    std::set<std::string> core;
    for (const auto& n : names)
      if (pick(3) == 0) core.insert(n);
    projection::TaxonomyGraph graph(facts);
    for (const auto& n : names)
      require(projection::most_specific_core_supers(n, graph, core) ==
                  oracle.most_specific(n, core),
              "oracle disagreement on trial " + std::to_string(trial) + " node " + n);
  }
}

// 4b: classifier table, exhaustive and randomized.
void property_classifier() {
  using analysis::ProblemClass;
  auto rec = [](harness::Polarity polarity, const std::string& prover, harness::SzsStatus s) {
    harness::RunRecord r;
    r.problem_id = "p";
    r.polarity = polarity;
    r.prover_id = prover;
    r.status = s;
    r.wall_time_s = 1.0;
    return r;
  };
  for (bool truth_proved : {false, true}) {
    for (bool falsity_proved : {false, true}) {
      std::vector<harness::RunRecord> truth{rec(
          harness::Polarity::Truth, "a",
          truth_proved ? harness::SzsStatus::Theorem : harness::SzsStatus::GaveUp)};
      std::vector<harness::RunRecord> falsity{rec(
          harness::Polarity::Falsity, "a",
          falsity_proved ? harness::SzsStatus::Theorem : harness::SzsStatus::GaveUp)};
      auto verdict = analysis::classify_problem("p", truth, falsity);
      ProblemClass expected = truth_proved && falsity_proved
                                  ? ProblemClass::InconsistencyDetected
                              : truth_proved    ? ProblemClass::SolvedEntailed
                              : falsity_proved  ? ProblemClass::SolvedIncompatible
                                                : ProblemClass::Unsolved;
      require(verdict.problem_class == expected, "decision table cell mismatch");
    }
  }
  std::mt19937_64 rng(31337);
  auto pick = [&](size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); };
  const std::vector<harness::SzsStatus> statuses{
      harness::SzsStatus::Theorem,     harness::SzsStatus::CounterSatisfiable,
      harness::SzsStatus::Satisfiable, harness::SzsStatus::Timeout,
      harness::SzsStatus::GaveUp,      harness::SzsStatus::ResourceOut,
      harness::SzsStatus::Unknown,     harness::SzsStatus::Error};
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<harness::RunRecord> truth, falsity;
    bool tp = false, fp = false;
    size_t nt = pick(5), nf = pick(5);
    for (size_t i = 0; i < nt; ++i) {
      auto s = statuses[pick(statuses.size())];
      tp |= s == harness::SzsStatus::Theorem;
      truth.push_back(rec(harness::Polarity::Truth, "p" + std::to_string(i), s));
    }
    for (size_t i = 0; i < nf; ++i) {
      auto s = statuses[pick(statuses.size())];
      fp |= s == harness::SzsStatus::Theorem;
      falsity.push_back(rec(harness::Polarity::Falsity, "p" + std::to_string(i), s));
    }
    auto verdict = analysis::classify_problem("p", truth, falsity);
    ProblemClass expected = tp && fp ? ProblemClass::InconsistencyDetected
                            : tp     ? ProblemClass::SolvedEntailed
                            : fp     ? ProblemClass::SolvedIncompatible
                                     : ProblemClass::Unsolved;
    require(verdict.problem_class == expected, "randomized decision mismatch");
  }
}

// Random sentence generator shared by 4c and 4d.
struct SentenceGen {
  std::mt19937_64 rng;
  int var_counter = 0;
  explicit SentenceGen(uint64_t seed) : rng(seed) {}
  size_t pick(size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); }

  fol::Term term(const std::vector<fol::Term>& scope) {
    static const std::vector<std::string> constants{"Alpha", "Beta", "Gamma", "Delta"};
    if (!scope.empty() && pick(2) == 0) return scope[pick(scope.size())];
    return fol::constant(constants[pick(constants.size())]);
  }
  fol::FormulaPtr make(int depth, std::vector<fol::Term> scope) {
    static const std::vector<std::string> predicates{"p", "q", "r", "$instance", "attribute"};
    if (depth <= 0 || pick(7) == 0) {
      if (!scope.empty() && pick(5) == 0)
        return fol::atom(fol::kEqualPredicate, {term(scope), term(scope)});
      size_t arity = 1 + pick(4);
      std::vector<fol::Term> args;
      for (size_t i = 0; i < arity; ++i) args.push_back(term(scope));
      return fol::atom(predicates[pick(predicates.size())], args);
    }
    switch (pick(6)) {
      case 0: return fol::negation(make(depth - 1, scope));
      case 1: case 2: {
        size_t n = 2 + pick(3);
        std::vector<fol::FormulaPtr> parts;
        for (size_t i = 0; i < n; ++i) parts.push_back(make(depth - 1, scope));
        return pick(2) == 0 ? fol::conj(parts) : fol::disj(parts);
      }
      case 3: return fol::implies(make(depth - 1, scope), make(depth - 1, scope));
      case 4: return fol::iff(make(depth - 1, scope), make(depth - 1, scope));
      default: {
        size_t n = 1 + pick(2);
        std::vector<fol::Term> vars;
        for (size_t i = 0; i < n; ++i)
          vars.push_back(fol::var("?V" + std::to_string(var_counter++)));
        auto extended = scope;
        extended.insert(extended.end(), vars.begin(), vars.end());
        auto body = make(depth - 1, extended);
        return pick(2) == 0 ? fol::forall(vars, body) : fol::exists(vars, body);
      }
    }
  }
};

void property_fol_round_trips() {
  SentenceGen gen(60902);
  for (int i = 0; i < 10000; ++i) {
    auto f = gen.make(1 + i % 6, {});
    auto simplified = f;
    while (simplified->kind == fol::Connective::Not &&
           simplified->children[0]->kind == fol::Connective::Not)
      simplified = simplified->children[0]->children[0];
    auto back = fol::negate_sentence(fol::negate_sentence(f));
    require(fol::structurally_equal(*back, *simplified), "negate is not an involution");

    auto reparsed = fol::parse_suo_kif(fol::emit_suo_kif(*f));
    require(fol::structurally_equal(*reparsed, *f), "prefix-syntax round trip broke structure");

    fol::SymbolMap map;
    auto records = fol::parse_tptp(fol::emit_tptp("t", fol::FofRole::Conjecture, *f, map));
    require(records.records.size() == 1, "prover-syntax round trip lost the record");
    auto inverted = fol::apply_inverse_map(*records.records[0].formula, map);
    require(fol::canonical_key(*inverted) == fol::canonical_key(*f),
            "prover-syntax round trip broke structure");
  }
}

void property_canonical_key() {
  SentenceGen gen(777);
  std::mt19937_64 rng(778);
  std::function<fol::FormulaPtr(const fol::Formula&, std::map<std::string, std::string>&, int&)>
      rename = [&](const fol::Formula& f, std::map<std::string, std::string>& env,
                   int& counter) -> fol::FormulaPtr {
    switch (f.kind) {
      case fol::Connective::Atom: {
        std::vector<fol::Term> args;
        for (const auto& t : f.args)
          args.push_back(t.kind == fol::TermKind::Variable && env.count(t.name)
                             ? fol::var(env.at(t.name))
                             : t);
        return fol::atom(f.predicate, args);
      }
      case fol::Connective::Not: return fol::negation(rename(*f.children[0], env, counter));
      case fol::Connective::And:
      case fol::Connective::Or: {
        std::vector<fol::FormulaPtr> parts;
        for (const auto& c : f.children) parts.push_back(rename(*c, env, counter));
        std::shuffle(parts.begin(), parts.end(), rng);  // permutation invariance too
        return f.kind == fol::Connective::And ? fol::conj(parts) : fol::disj(parts);
      }
      case fol::Connective::Implies:
        return fol::implies(rename(*f.children[0], env, counter),
                            rename(*f.children[1], env, counter));
      case fol::Connective::Iff:
        return fol::iff(rename(*f.children[0], env, counter),
                        rename(*f.children[1], env, counter));
      default: {
        auto saved = env;
        std::vector<fol::Term> vars;
        for (const auto& v : f.vars) {
          std::string fresh = "?A" + std::to_string(counter++);
          env[v.name] = fresh;
          vars.push_back(fol::var(fresh));
        }
        auto body = rename(*f.children[0], env, counter);
        env = saved;
        return f.kind == fol::Connective::Forall ? fol::forall(vars, body)
                                                 : fol::exists(vars, body);
      }
    }
    return nullptr;
  };
  for (int i = 0; i < 3000; ++i) {
    auto f = gen.make(1 + i % 6, {});
    std::map<std::string, std::string> env;
    int counter = 0;
    auto transformed = rename(*f, env, counter);
    require(fol::canonical_key(*transformed) == fol::canonical_key(*f),
            "canonical key changed under alpha-renaming/permutation");
  }
}

void property_determinism() {
  auto scratch = fs::temp_directory_path() / "cqbench_acceptance_det";
  fs::remove_all(scratch);
  fs::create_directories(scratch);
  auto make_config = [&](const std::string& name) {
    json config = {
        {"inputs",
         {{"wordnet_data",
           {{"noun", kGolden + "/data.noun"},
            {"verb", kGolden + "/data.verb"},
            {"adjective", kGolden + "/data.adj"},
            {"adverb", kGolden + "/data.adv"}}},
          {"sense_index", kGolden + "/index.sense"},
          {"morphosemantic_links", kGolden + "/morphosemantic.tsv"},
          {"mapping_files",
           {kGolden + "/mapping-noun.txt", kGolden + "/mapping-verb.txt",
            kGolden + "/mapping-adj.txt", kGolden + "/mapping-adv.txt"}},
          {"taxonomy_files", {kGolden + "/core.kif", kGolden + "/domain.kif"}},
          {"core_manifest", kGolden + "/core_manifest.txt"},
          {"ontology", kGolden + "/ontology.p"}}},
        {"output_dir", (scratch / name / "out").string()},
        {"seed", 7}};
    fs::create_directories(scratch / name);
    auto path = scratch / name / "config.json";
    std::ofstream out(path);
    out << config.dump() << "\n";
    return path.string();
  };
  auto run = [](const std::string& cmd) {
    int rc = std::system((cmd + " > /dev/null 2>&1").c_str());
    require(rc == 0, "pipeline command failed: " + cmd);
  };
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    require(in.good(), "missing artifact " + p.string());
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  };
  auto c1 = make_config("one");
  auto c2 = make_config("two");
  for (const auto& c : {c1, c2})
    for (const char* stage : {"ingest", "project", "generate", "emit"})
      run(kCli + " " + stage + " -c " + c);
  for (const char* artifact : {"out/snapshot.json", "out/snapshot.projected.json",
                               "out/corpus.jsonl", "out/generation_report.txt"})
    require(slurp(scratch / "one" / artifact) == slurp(scratch / "two" / artifact),
            std::string("artifact differs between runs: ") + artifact);
  size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(scratch / "one/out/problems")) {
    auto name = entry.path().filename().string();
    require(slurp(entry.path()) == slurp(scratch / "two/out/problems" / name),
            "problem file differs between runs: " + name);
    ++compared;
  }
  require(compared == 30, "unexpected emitted file count");
}

std::string criterion4() {
  auto start = std::chrono::steady_clock::now();
  property_dag_oracle();
  property_classifier();
  property_fol_round_trips();
  property_canonical_key();
  property_determinism();
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  require(elapsed < 180.0,
          "property suites exceeded the runtime bound: " + std::to_string(elapsed) + "s");
  return "oracle/classifier/round-trip/key/determinism properties hold (" +
         std::to_string(static_cast<int>(elapsed)) + "s)";
}

// ---------------------------------------------------------------------------
// Criterion 5: harness integration on the micro theory
// ---------------------------------------------------------------------------

bool executable_on_path(const std::string& name) {
  std::string cmd = "command -v " + name + " > /dev/null 2>&1";
  return std::system(cmd.c_str()) == 0;
}

std::string criterion5() {
  auto start = std::chrono::steady_clock::now();
  auto dir = fs::temp_directory_path() / "cqbench_acceptance_micro";
  fs::remove_all(dir);
  micro::write_problem_files(dir / "problems");
  auto corpus = micro::corpus();

  harness::ProverConfig prover;
  std::string mode;
  if (executable_on_path("eprover")) {
    prover.id = "eprover";
    prover.executable = "eprover";
    prover.args_template = "--auto -s --cpu-limit={time_s} {problem}";
    prover.time_limit_s = 10;
    mode = "live prover (eprover)";
  } else if (executable_on_path("vampire")) {
    prover.id = "vampire";
    prover.executable = "vampire";
    prover.args_template = "--proof tptp --output_axiom_names on -t {time_s} {problem}";
    prover.time_limit_s = 10;
    mode = "live prover (vampire)";
  } else {
    prover = micro::fake_prover();
    mode = "stored-fixture fallback";
  }

  std::map<std::string, harness::ProverConfig> provers{{prover.id, prover}};
  auto plan = harness::plan_jobs(corpus, {prover}, {}, (dir / "problems").string());
  require(plan.size() == 12, "micro plan size");
  auto records = harness::run_all(plan, provers, micro::kDir + "/ontology.p", 2,
                                  (dir / "records.jsonl").string());
  require(records.size() == 12, "micro record count");

  auto verdicts = analysis::classify_all(corpus, records);
  std::map<analysis::ProblemClass, size_t> counts;
  std::map<std::string, analysis::ProblemClass> by_id;
  for (const auto& v : verdicts) {
    counts[v.problem_class]++;
    by_id[v.problem_id] = v.problem_class;
  }
  require_eq(counts[analysis::ProblemClass::SolvedEntailed], 2u, "solved-entailed problems");
  require_eq(counts[analysis::ProblemClass::SolvedIncompatible], 2u,
             "solved-incompatible problems");
  require_eq(counts[analysis::ProblemClass::Unsolved], 1u, "unsolved problems");
  require_eq(counts[analysis::ProblemClass::InconsistencyDetected], 1u,
             "inconsistency-detected problems");
  require(by_id.at("p6") == analysis::ProblemClass::InconsistencyDetected,
          "the defective-ontology problem must be the inconsistent one");

  // SZS parsing and axiom extraction against the stored raw outputs.
  auto read = [](const std::string& name) {
    std::ifstream in(micro::kDir + "/outputs/" + name);
    require(in.good(), "missing stored output " + name);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  };
  require(harness::parse_szs_line(read("p1.tt.p.out")) == harness::SzsStatus::Theorem,
          "stored output p1.tt status");
  require(harness::extract_used_axioms(read("p1.tt.p.out"), "ontology.p") ==
              std::set<std::string>{"a01", "a04"},
          "stored output p1.tt axiom set");
  require(harness::extract_used_axioms(read("p4.ft.p.out"), "ontology.p") ==
              std::set<std::string>{"a07", "a10"},
          "stored output p4.ft axiom set");
  require(harness::extract_used_axioms(read("p6.ft.p.out"), "ontology_defect.p") ==
              std::set<std::string>{"a01", "a04", "a10", "a13", "b16"},
          "stored output p6.ft axiom set");
  require(harness::parse_szs_line(read("p5.ft.p.out")) ==
              harness::SzsStatus::CounterSatisfiable,
          "stored output p5.ft status");

  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  require(elapsed < 120.0, "micro harness exceeded the runtime bound");
  return "verdicts 2/2/1/1 via " + mode + "; SZS and axiom extraction verified";
}

// ---------------------------------------------------------------------------
// Criterion 6: metrics arithmetic
// ---------------------------------------------------------------------------

std::string criterion6() {
  require(*analysis::efficiency({1.0, 1.0}, 2) == 1.0, "efficiency of {1s,1s}");
  require(*analysis::efficiency({2.0, 4.0}, 2) == 0.375, "efficiency of {2s,4s}");
  require(analysis::difficulty(4, 5) == 0.80, "difficulty 4-of-5");

  std::string note;
  if (const char* path = std::getenv("CQBENCH_ONTOLOGY_FILE")) {
    auto index = analysis::load_axiom_index(path);
    require_eq(index.size(), 7437u, "ontology axiom count");
    require_eq(index.atomic_count(), 4638u, "ontology unit-clause count");
    require_eq(index.size() - index.atomic_count(), 2799u, "ontology formula count");
    note = "; v2.6 axiom split 4638/2799 reproduced";
  } else {
    auto index = analysis::load_axiom_index(micro::kDir + "/ontology.p");
    require_eq(index.size(), 15u, "micro ontology axiom count");
    require_eq(index.atomic_count(), 5u, "micro unit-clause count");
    note = "; ontology file absent (set CQBENCH_ONTOLOGY_FILE), micro split 5/10 verified";
  }
  return "efficiency 1.0 and 0.375, difficulty 0.80" + note;
}

// ---------------------------------------------------------------------------
// Criterion 7: report pipeline against hand-computed tables
// ---------------------------------------------------------------------------

std::string criterion7() {
  patterns::Corpus corpus;
  auto add = [&corpus](const std::string& id, patterns::Category category,
                       const std::string& pred) {
    auto p = micro::make_problem(id, "(exists (?X) (" + pred + " ?X))");
    p.category = category;
    corpus.problems.push_back(std::move(p));
  };
  add("ra1", patterns::Category::Agent, "pa");
  add("ra2", patterns::Category::Agent, "pb");
  add("rr1", patterns::Category::Result, "pc");
  add("rm1", patterns::Category::Event1, "pd");

  auto rec = [](const std::string& id, harness::Polarity polarity, const std::string& prover,
                harness::SzsStatus status, double t,
                std::vector<std::string> axioms = {}) {
    harness::RunRecord r;
    r.problem_id = id;
    r.polarity = polarity;
    r.prover_id = prover;
    r.status = status;
    r.wall_time_s = t;
    r.used_axioms = std::move(axioms);
    r.output_digest = "0";
    return r;
  };
  using harness::Polarity;
  using harness::SzsStatus;
  std::vector<harness::RunRecord> records{
      // ra1 truth proved by both provers (2s and 4s); e2 fails ra2.
      rec("ra1", Polarity::Truth, "e1", SzsStatus::Theorem, 2.0, {"x1", "x2"}),
      rec("ra1", Polarity::Truth, "e2", SzsStatus::Theorem, 4.0, {"x2", "x3"}),
      rec("ra1", Polarity::Falsity, "e1", SzsStatus::GaveUp, 9.0),
      rec("ra1", Polarity::Falsity, "e2", SzsStatus::GaveUp, 9.0),
      rec("ra2", Polarity::Truth, "e1", SzsStatus::Theorem, 1.0, {"x1"}),
      rec("ra2", Polarity::Truth, "e2", SzsStatus::Timeout, 10.0),
      rec("ra2", Polarity::Falsity, "e1", SzsStatus::GaveUp, 9.0),
      rec("ra2", Polarity::Falsity, "e2", SzsStatus::GaveUp, 9.0),
      // rr1 falsity proved by e2 only.
      rec("rr1", Polarity::Truth, "e1", SzsStatus::GaveUp, 9.0),
      rec("rr1", Polarity::Truth, "e2", SzsStatus::GaveUp, 9.0),
      rec("rr1", Polarity::Falsity, "e1", SzsStatus::Timeout, 10.0),
      rec("rr1", Polarity::Falsity, "e2", SzsStatus::Theorem, 5.0, {"x4"}),
      // rm1 untouched by any prover record.
  };

  analysis::OntologyAxiomIndex index;
  index.axioms = {{"x1", true}, {"x2", false}, {"x3", false}, {"x4", true}, {"x5", true}};
  auto result = analysis::analyze(corpus, records, &index);

  // Hand-computed agent truth row: 2 of 2 proved; best times 2s and 1s so
  // T = 1.5; E = (1/2 + 1/1) / 2 = 0.75; D = (0/2 + 1/2) / 2 = 0.25;
  // N = |{x1,x2,x3}| = 3 with 3 proofs citing 5 axioms total.
  const auto* agent = analysis::find_row(result, "truth/agent");
  require(agent != nullptr, "missing truth/agent row");
  require_eq(agent->metrics.total, 2u, "agent truth total");
  require_eq(agent->metrics.proved, 2u, "agent truth proved");
  require(*agent->metrics.mean_time_s == 1.5, "agent truth mean time");
  require(*agent->metrics.efficiency_value == 0.75, "agent truth efficiency");
  require(*agent->metrics.mean_difficulty == 0.25, "agent truth difficulty");
  require_eq(agent->metrics.coverage.used, 3u, "agent truth N");
  // x1 appears in two agent proofs but in no other bucket, so all three used
  // axioms are exclusive to this row.
  require_eq(agent->metrics.coverage.exclusive, 3u, "agent truth S");
  require_eq(agent->metrics.coverage.unit_clauses, 1u, "agent truth C");
  require_eq(agent->metrics.coverage.formulae, 2u, "agent truth F");
  require(agent->metrics.coverage.used_pct == 60.0, "agent truth P");
  require(agent->metrics.coverage.per_proof_axioms * 3 == 5.0, "agent truth avg N");

  const auto* result_falsity = analysis::find_row(result, "falsity/result");
  require(result_falsity != nullptr, "missing falsity/result row");
  require_eq(result_falsity->metrics.proved, 1u, "result falsity proved");
  require(*result_falsity->metrics.mean_time_s == 5.0, "result falsity mean time");
  require(*result_falsity->metrics.mean_difficulty == 0.5, "result falsity difficulty");

  // Mapping truth rollup: the event problem saw no records at all.
  const auto* mapping = analysis::find_row(result, "truth/mapping");
  require(mapping != nullptr, "missing truth/mapping row");
  require_eq(mapping->metrics.total, 1u, "mapping truth total");
  require_eq(mapping->metrics.proved, 0u, "mapping truth proved");
  require(!mapping->metrics.mean_time_s.has_value(), "mapping truth time is a dash");

  // Grand total: 8 conjectures, 3 proved.
  const auto* total = analysis::find_row(result, "total");
  require(total != nullptr, "missing total row");
  require_eq(total->metrics.total, 8u, "grand total conjectures");
  require_eq(total->metrics.proved, 3u, "grand total proved");

  // Per-prover cells: e1 proved 2 agent truths? e1 proved ra1(2s) ra2(1s).
  const auto& e1 = agent->prover_cells.at("e1");
  require_eq(e1.proved, 2u, "e1 agent proofs");
  require(*e1.mean_time_s == 1.5, "e1 agent mean time");
  const auto& e2 = agent->prover_cells.at("e2");
  require_eq(e2.proved, 1u, "e2 agent proofs");
  require(*e2.mean_time_s == 4.0, "e2 agent mean time");

  // Rendered tables carry the same numbers.
  auto files = analysis::render_report(result);
  require(files.run_table_tsv.find("truth/agent\t2\t2\t100.00\t1.50\t0.75") != std::string::npos,
          "run table row mismatch");
  require(files.analysis_table_tsv.find(
              "truth/agent\t2\t2\t100.00\t1.50\t0.75\t0.25\t3\t60.00\t3\t1\t2") !=
              std::string::npos,
          "analysis table row mismatch");
  require(files.prover_table_tsv.find("truth/agent\t2\t1\t50.00\t4.00\t0.25\te2") !=
              std::string::npos,
          "prover table row mismatch");
  return "fixture record store reproduces the hand-computed tables; full-scale proof columns "
         "are out of desk-scale scope by design";
}

struct Criterion {
  int number;
  const char* title;
  std::function<std::string()> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "corpus reproduction", criterion1},
      {2, "projection statistics", criterion2},
      {3, "worked-example goldens", criterion3},
      {4, "property suites", criterion4},
      {5, "harness integration", criterion5},
      {6, "metrics arithmetic", criterion6},
      {7, "report pipeline on fixture records", criterion7},
  };
  int failures = 0;
  for (const auto& criterion : criteria) {
    try {
      std::string detail = criterion.run();
      std::cout << "criterion " << criterion.number << " (" << criterion.title
                << "): PASS - " << detail << "\n";
    } catch (const Failure& f) {
      std::cout << "criterion " << criterion.number << " (" << criterion.title
                << "): FAIL - " << f.detail << "\n";
      ++failures;
    } catch (const std::exception& e) {
      std::cout << "criterion " << criterion.number << " (" << criterion.title
                << "): FAIL - unexpected error: " << e.what() << "\n";
      ++failures;
    }
    for (const auto& note : g_notes) std::cout << "    note: " << note << "\n";
    g_notes.clear();
  }
  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria pass\n";
  return 0;
}

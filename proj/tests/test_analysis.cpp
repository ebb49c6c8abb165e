#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <random>

#include "cqbench/analysis.hpp"
#include "cqbench/errors.hpp"
#include "micro_fixture.hpp"

using namespace cqb;
using analysis::ProblemClass;
using harness::Polarity;
using harness::RunRecord;
using harness::SzsStatus;

namespace {

RunRecord record(const std::string& problem, Polarity polarity, const std::string& prover,
                 SzsStatus status, double time_s = 1.0,
                 std::vector<std::string> axioms = {}) {
  RunRecord r;
  r.problem_id = problem;
  r.polarity = polarity;
  r.prover_id = prover;
  r.status = status;
  r.wall_time_s = time_s;
  r.used_axioms = std::move(axioms);
  r.output_digest = "0";
  return r;
}

}  // namespace

TEST_CASE("classification decision table") {
  auto entailed = analysis::classify_problem(
      "p", {record("p", Polarity::Truth, "a", SzsStatus::Theorem)},
      {record("p", Polarity::Falsity, "a", SzsStatus::GaveUp)});
  CHECK(entailed.problem_class == ProblemClass::SolvedEntailed);
  CHECK(entailed.truth_status == analysis::ConjectureStatus::Passing);
  CHECK(entailed.falsity_status == analysis::ConjectureStatus::Unknown);

  auto incompatible = analysis::classify_problem(
      "p", {record("p", Polarity::Truth, "a", SzsStatus::Timeout)},
      {record("p", Polarity::Falsity, "b", SzsStatus::Theorem)});
  CHECK(incompatible.problem_class == ProblemClass::SolvedIncompatible);
  CHECK(incompatible.falsity_status == analysis::ConjectureStatus::NonPassing);

  auto inconsistent = analysis::classify_problem(
      "p", {record("p", Polarity::Truth, "a", SzsStatus::Theorem)},
      {record("p", Polarity::Falsity, "a", SzsStatus::Theorem)});
  CHECK(inconsistent.problem_class == ProblemClass::InconsistencyDetected);

  auto unsolved = analysis::classify_problem(
      "p", {record("p", Polarity::Truth, "a", SzsStatus::CounterSatisfiable)},
      {record("p", Polarity::Falsity, "a", SzsStatus::Unknown)});
  CHECK(unsolved.problem_class == ProblemClass::Unsolved);

  // A definite non-entailment still counts as "not proved".
  CHECK(unsolved.truth_status == analysis::ConjectureStatus::Unknown);
}

TEST_CASE("property: classification over randomized record multisets") {
  std::mt19937_64 rng(5150);
  auto pick = [&](size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); };
  const std::vector<SzsStatus> statuses{
      SzsStatus::Theorem,     SzsStatus::CounterSatisfiable, SzsStatus::Satisfiable,
      SzsStatus::Timeout,     SzsStatus::GaveUp,             SzsStatus::ResourceOut,
      SzsStatus::Unknown,     SzsStatus::Error};
  for (int trial = 0; trial < 4000; ++trial) {
    size_t n_truth = pick(4), n_falsity = pick(4);
    std::vector<RunRecord> truth, falsity;
    bool any_truth = false, any_falsity = false;
    for (size_t i = 0; i < n_truth; ++i) {
      auto s = statuses[pick(statuses.size())];
      any_truth |= s == SzsStatus::Theorem;
      truth.push_back(record("p", Polarity::Truth, "prov" + std::to_string(i), s));
    }
    for (size_t i = 0; i < n_falsity; ++i) {
      auto s = statuses[pick(statuses.size())];
      any_falsity |= s == SzsStatus::Theorem;
      falsity.push_back(record("p", Polarity::Falsity, "prov" + std::to_string(i), s));
    }
    auto verdict = analysis::classify_problem("p", truth, falsity);
    ProblemClass expected =
        any_truth && any_falsity
            ? ProblemClass::InconsistencyDetected
            : any_truth ? ProblemClass::SolvedEntailed
                        : any_falsity ? ProblemClass::SolvedIncompatible : ProblemClass::Unsolved;
    CHECK(verdict.problem_class == expected);
  }
}

TEST_CASE("efficiency arithmetic") {
  CHECK(*analysis::efficiency({1.0, 1.0}, 2) == doctest::Approx(1.0));
  CHECK(*analysis::efficiency({2.0, 4.0}, 2) == doctest::Approx(0.375));
  CHECK(!analysis::efficiency({}, 5).has_value());
  // Sub-resolution times are clamped instead of dividing by zero.
  CHECK(*analysis::efficiency({0.0}, 1) == doctest::Approx(1000.0));
  // Attempted-denominator sensitivity mode.
  CHECK(*analysis::efficiency({1.0}, 4, true) == doctest::Approx(0.25));
}

TEST_CASE("efficiency is monotone when adding a faster proof") {
  std::vector<double> times{2.0, 3.0, 5.0};
  double base = *analysis::efficiency(times, times.size());
  times.push_back(1.0);
  double extended = *analysis::efficiency(times, times.size());
  CHECK(extended >= base);
}

TEST_CASE("difficulty arithmetic") {
  CHECK(analysis::difficulty(0, 5) == doctest::Approx(0.0));
  CHECK(analysis::difficulty(4, 5) == doctest::Approx(0.80));
  CHECK(analysis::difficulty(2, 5) == doctest::Approx(0.40));
  CHECK_THROWS_AS(analysis::difficulty(3, 0), IntegrityError);
  CHECK_THROWS_AS(analysis::difficulty(6, 5), IntegrityError);
}

TEST_CASE("axiom index: atomicity split on the micro ontology") {
  auto index = analysis::load_axiom_index(micro::kDir + "/ontology.p");
  CHECK(index.size() == 15);
  CHECK(index.atomic_count() == 5);  // the five ground facts
  CHECK(index.axioms.at("a04") == true);
  CHECK(index.axioms.at("a01") == false);
}

TEST_CASE("coverage bookkeeping on a hand-computed fixture") {
  // Ontology a1..a4; category A proofs use {a1,a2}, category B uses {a2}.
  auto corpus = micro::corpus();  // p1..p6; categories are uniform, so build
                                  // a custom corpus instead.
  patterns::Corpus custom;
  auto add = [&custom](const std::string& id, patterns::Category cat) {
    auto p = micro::make_problem(id, "(exists (?X) (" + id + " ?X))");
    p.category = cat;
    custom.problems.push_back(std::move(p));
  };
  add("pa", patterns::Category::Agent);
  add("pb", patterns::Category::Result);

  std::vector<RunRecord> records{
      record("pa", Polarity::Truth, "e1", SzsStatus::Theorem, 2.0, {"a1", "a2"}),
      record("pa", Polarity::Falsity, "e1", SzsStatus::GaveUp, 9.0),
      record("pb", Polarity::Truth, "e1", SzsStatus::Theorem, 4.0, {"a2"}),
      record("pb", Polarity::Falsity, "e1", SzsStatus::GaveUp, 9.0),
  };

  analysis::OntologyAxiomIndex index;
  index.axioms = {{"a1", true}, {"a2", false}, {"a3", true}, {"a4", true}};
  auto result = analysis::analyze(custom, records, &index);

  const auto* agent_row = analysis::find_row(result, "truth/agent");
  REQUIRE(agent_row);
  CHECK(agent_row->metrics.total == 1);
  CHECK(agent_row->metrics.proved == 1);
  CHECK(agent_row->metrics.coverage.used == 2);       // N
  CHECK(agent_row->metrics.coverage.exclusive == 1);  // a1 is agent-only
  CHECK(agent_row->metrics.coverage.unit_clauses == 1);
  CHECK(agent_row->metrics.coverage.formulae == 1);
  CHECK(agent_row->metrics.coverage.used_pct == doctest::Approx(50.0));
  CHECK(agent_row->metrics.coverage.per_proof_axioms == doctest::Approx(2.0));

  const auto* result_row = analysis::find_row(result, "truth/result");
  REQUIRE(result_row);
  CHECK(result_row->metrics.coverage.used == 1);
  CHECK(result_row->metrics.coverage.exclusive == 0);  // a2 is shared

  // Rollup: competency truth = both categories.
  const auto* competency = analysis::find_row(result, "truth/competency");
  REQUIRE(competency);
  CHECK(competency->metrics.total == 2);
  CHECK(competency->metrics.proved == 2);
  CHECK(competency->metrics.coverage.used == 2);
  CHECK(competency->metrics.coverage.exclusive == 2);  // both axioms stay inside
  CHECK(competency->metrics.mean_time_s == doctest::Approx(3.0));
  CHECK(competency->metrics.efficiency_value == doctest::Approx(0.375));
  // Single prover proving everything it attempted: difficulty 0.
  CHECK(competency->metrics.mean_difficulty == doctest::Approx(0.0));

  // Exclusivity sums over the leaf rows never exceed the global usage, and
  // every exclusive axiom belongs to exactly one leaf bucket by definition.
  size_t exclusive_sum = 0;
  for (const auto& row : result.rows)
    if (!row.rollup) exclusive_sum += row.metrics.coverage.exclusive;
  const auto* total = analysis::find_row(result, "total");
  REQUIRE(total);
  CHECK(exclusive_sum <= total->metrics.coverage.used);

  // A proof citing an axiom outside the index is an integrity error.
  records.push_back(record("pa", Polarity::Truth, "e2", SzsStatus::Theorem, 1.0, {"zz"}));
  CHECK_THROWS_AS(analysis::analyze(custom, records, &index), IntegrityError);
}

TEST_CASE("difficulty aggregates only over solved conjectures") {
  patterns::Corpus custom;
  auto p = micro::make_problem("pa", "(exists (?X) (p ?X))");
  p.category = patterns::Category::Agent;
  custom.problems.push_back(std::move(p));

  // Five provers, four fail on the truth test: D = 0.80, the maximum with
  // five contributors.
  std::vector<RunRecord> records;
  records.push_back(record("pa", Polarity::Truth, "e1", SzsStatus::Theorem, 1.0));
  for (int i = 2; i <= 5; ++i)
    records.push_back(
        record("pa", Polarity::Truth, "e" + std::to_string(i), SzsStatus::Timeout, 9.0));
  for (int i = 1; i <= 5; ++i)
    records.push_back(
        record("pa", Polarity::Falsity, "e" + std::to_string(i), SzsStatus::GaveUp, 9.0));
  auto result = analysis::analyze(custom, records, nullptr);
  const auto* row = analysis::find_row(result, "truth/agent");
  REQUIRE(row);
  CHECK(row->metrics.mean_difficulty == doctest::Approx(0.80));
  // The falsity side has no solved conjecture: no difficulty value.
  const auto* frow = analysis::find_row(result, "falsity/agent");
  REQUIRE(frow);
  CHECK(!frow->metrics.mean_difficulty.has_value());
}

TEST_CASE("verdict store round-trip") {
  auto corpus = micro::corpus();
  std::vector<RunRecord> records{
      record("p1", Polarity::Truth, "e1", SzsStatus::Theorem),
      record("p3", Polarity::Falsity, "e1", SzsStatus::Theorem),
  };
  auto verdicts = analysis::classify_all(corpus, records);
  REQUIRE(verdicts.size() == 6);
  auto tmp = std::filesystem::temp_directory_path() / "cqbench_verdicts.jsonl";
  analysis::save_verdicts(verdicts, tmp.string());
  auto loaded = analysis::load_verdicts(tmp.string());
  REQUIRE(loaded.size() == verdicts.size());
  for (size_t i = 0; i < loaded.size(); ++i) {
    CHECK(loaded[i].problem_id == verdicts[i].problem_id);
    CHECK(loaded[i].problem_class == verdicts[i].problem_class);
  }
}

TEST_CASE("uniform sampling: size, determinism, bounds") {
  patterns::Corpus corpus;
  for (int i = 0; i < 500; ++i) {
    auto p = micro::make_problem("s" + std::to_string(i),
                                 "(exists (?X) (p" + std::to_string(i) + " ?X))");
    corpus.problems.push_back(std::move(p));
  }
  auto sample = analysis::sample_uniform(corpus, 0.01, 7);
  CHECK(sample.size() == 5);  // floor(500 * 0.01)

  auto again = analysis::sample_uniform(corpus, 0.01, 7);
  REQUIRE(again.size() == sample.size());
  for (size_t i = 0; i < sample.size(); ++i) CHECK(again[i].id == sample[i].id);

  auto different = analysis::sample_uniform(corpus, 0.01, 8);
  bool all_same = different.size() == sample.size();
  if (all_same)
    for (size_t i = 0; i < sample.size(); ++i)
      if (different[i].id != sample[i].id) all_same = false;
  CHECK(!all_same);

  CHECK(analysis::sample_uniform(corpus, 0.0, 7).empty());
  CHECK(analysis::sample_uniform(corpus, 1.0, 7).size() == 500);
  CHECK_THROWS_AS(analysis::sample_uniform(corpus, 1.5, 7), ConfigError);

  // Members are corpus problems, without replacement.
  std::set<std::string> ids;
  for (const auto& p : sample) CHECK(ids.insert(p.id).second);
}

TEST_CASE("report rendering: dashes, rollups, banner") {
  auto corpus = micro::corpus();
  std::vector<RunRecord> records{
      record("p1", Polarity::Truth, "e1", SzsStatus::Theorem, 2.0),
      record("p1", Polarity::Falsity, "e1", SzsStatus::GaveUp, 9.0),
      record("p6", Polarity::Truth, "e1", SzsStatus::Theorem, 1.0),
      record("p6", Polarity::Falsity, "e1", SzsStatus::Theorem, 1.0),
  };
  auto result = analysis::analyze(corpus, records, nullptr);
  CHECK(result.inconsistent_problem_ids == std::vector<std::string>{"p6"});

  auto files = analysis::render_report(result);
  CHECK(files.text.find("ONTOLOGY INCONSISTENCY DETECTED") != std::string::npos);
  // Zero-proof rows render dashes.
  CHECK(files.run_table_tsv.find("falsity/multiple-mapping\t5\t0\t-\t-\t-") !=
        std::string::npos);
  // The proved truth row keeps its numbers (p6 is excluded from totals).
  CHECK(files.run_table_tsv.find("truth/multiple-mapping\t5\t1\t20.00\t2.00\t0.50") !=
        std::string::npos);
  // Grand total row spans both polarities.
  CHECK(files.run_table_tsv.find("total\t10\t1\t") != std::string::npos);

  // The judgment template has one row per sampled problem.
  auto sample = analysis::sample_uniform(corpus, 1.0, 1);
  auto tsv = analysis::judgment_template_tsv(sample);
  size_t lines = std::count(tsv.begin(), tsv.end(), '\n');
  CHECK(lines == sample.size() + 1);
}

TEST_CASE("report with an empty record store renders all dashes") {
  auto corpus = micro::corpus();
  auto result = analysis::analyze(corpus, {}, nullptr);
  auto files = analysis::render_report(result);
  CHECK(files.text.find("ONTOLOGY INCONSISTENCY") == std::string::npos);
  CHECK(files.run_table_tsv.find("truth/multiple-mapping\t6\t0\t-\t-\t-") != std::string::npos);
}

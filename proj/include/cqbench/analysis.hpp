#ifndef CQBENCH_ANALYSIS_HPP
#define CQBENCH_ANALYSIS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cqbench/harness.hpp"
#include "cqbench/patterns.hpp"

namespace cqb::analysis {

enum class ConjectureStatus : uint8_t { Passing, NonPassing, Unknown };
const char* conjecture_status_name(ConjectureStatus s);

enum class ProblemClass : uint8_t {
  SolvedEntailed,
  SolvedIncompatible,
  Unsolved,
  InconsistencyDetected,
};
const char* problem_class_name(ProblemClass c);

struct ProblemVerdict {
  std::string problem_id;
  ConjectureStatus truth_status;
  ConjectureStatus falsity_status;
  ProblemClass problem_class;
  std::vector<std::string> truth_provers;    // provers that proved the truth test
  std::vector<std::string> falsity_provers;  // provers that proved the falsity test
};

// A conjecture is proved iff any prover's record carries status Theorem.
ProblemVerdict classify_problem(const std::string& problem_id,
                                const std::vector<harness::RunRecord>& truth_records,
                                const std::vector<harness::RunRecord>& falsity_records);

std::vector<ProblemVerdict> classify_all(const patterns::Corpus& corpus,
                                         const std::vector<harness::RunRecord>& records);

void save_verdicts(const std::vector<ProblemVerdict>& verdicts, const std::string& path);
std::vector<ProblemVerdict> load_verdicts(const std::string& path);

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

// Wall times are clamped below at the timer resolution before inversion.
inline constexpr double kTimerResolutionS = 1e-3;

// Mean of inverse solve times over proved records; nullopt with no proofs.
// `attempted_denominator` divides by all records instead (sensitivity mode).
std::optional<double> efficiency(const std::vector<double>& proved_times_s,
                                 size_t attempted_count, bool attempted_denominator = false);

// Failing contributors / total contributors for one conjecture.
double difficulty(size_t failing_contributors, size_t total_contributors);

struct OntologyAxiomIndex {
  // axiom name -> is_atomic (a single positive or negative literal)
  std::map<std::string, bool> axioms;

  size_t size() const { return axioms.size(); }
  size_t atomic_count() const;
};

// Builds the index from a first-order-form axiom file.
OntologyAxiomIndex load_axiom_index(const std::string& path);

struct CoverageStats {
  size_t used = 0;        // N
  double used_pct = 0.0;  // P
  size_t exclusive = 0;   // S: used in this bucket and no other
  size_t unit_clauses = 0;  // C
  size_t formulae = 0;      // F
  double per_proof_axioms = 0.0;
  double per_proof_unit_clauses = 0.0;
  double per_proof_formulae = 0.0;
};

struct CategoryMetrics {
  size_t total = 0;   // conjectures in the bucket
  size_t proved = 0;  // proved by >= 1 contributing prover
  double proved_pct = 0.0;
  std::optional<double> mean_time_s;  // over proved conjectures (fastest proof)
  std::optional<double> efficiency_value;
  std::optional<double> mean_difficulty;  // over conjectures solved by >= 1 prover
  CoverageStats coverage;
};

struct ProverCellMetrics {
  size_t total = 0;
  size_t proved = 0;
  double proved_pct = 0.0;
  std::optional<double> mean_time_s;
  std::optional<double> efficiency_value;
};

struct AnalysisOptions {
  bool attempted_denominator = false;
};

// One table row: a leaf category, a Mapping/Competency/division rollup, or
// the grand total.  Percentages and rates are recomputed from the underlying
// conjectures, never averaged over sub-rows.
struct ReportRow {
  std::string label;  // e.g. "truth/event-1", "falsity/mapping", "total"
  std::set<patterns::Category> categories;
  std::set<harness::Polarity> polarities;
  bool rollup = false;
  CategoryMetrics metrics;
  std::map<std::string, ProverCellMetrics> prover_cells;
};

struct AnalysisResult {
  std::vector<ReportRow> rows;
  std::vector<std::string> prover_ids;
  std::vector<ProblemVerdict> verdicts;
  std::vector<std::string> inconsistent_problem_ids;
  size_t ontology_size = 0;
};

AnalysisResult analyze(const patterns::Corpus& corpus,
                       const std::vector<harness::RunRecord>& records,
                       const OntologyAxiomIndex* axiom_index,
                       const AnalysisOptions& options = {});

// Convenience lookup for tests and tools.
const ReportRow* find_row(const AnalysisResult& analysis, const std::string& label);

// ---------------------------------------------------------------------------
// Sampling and report rendering
// ---------------------------------------------------------------------------

// Uniform sample without replacement, floor-rounded size, reproducible.
std::vector<patterns::Problem> sample_uniform(const patterns::Corpus& corpus, double fraction,
                                              uint64_t seed);

struct ReportFiles {
  std::string run_table_tsv;       // per-run joint table
  std::string prover_table_tsv;    // per-prover comparison
  std::string analysis_table_tsv;  // proofs / coverage / difficulty
  std::string text;                // human-readable rendering of all three
};

ReportFiles render_report(const AnalysisResult& analysis);

// Tab-separated template for manual mapping/knowledge judgments of a sample.
std::string judgment_template_tsv(const std::vector<patterns::Problem>& sample);

}  // namespace cqb::analysis

#endif

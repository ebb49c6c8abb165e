#include <algorithm>
#include <cmath>

#include "cqbench/analysis.hpp"
#include "cqbench/errors.hpp"
#include "cqbench/fol/text.hpp"

namespace cqb::analysis {

using harness::Polarity;
using harness::RunRecord;
using harness::SzsStatus;
using patterns::Category;

std::optional<double> efficiency(const std::vector<double>& proved_times_s,
                                 size_t attempted_count, bool attempted_denominator) {
  if (proved_times_s.empty()) return std::nullopt;
  double sum = 0.0;
  for (double t : proved_times_s) sum += 1.0 / std::max(t, kTimerResolutionS);
  size_t denom = attempted_denominator ? attempted_count : proved_times_s.size();
  if (denom == 0) return std::nullopt;
  return sum / static_cast<double>(denom);
}

double difficulty(size_t failing_contributors, size_t total_contributors) {
  if (total_contributors == 0)
    throw IntegrityError("difficulty needs at least one rating contributor");
  if (failing_contributors > total_contributors)
    throw IntegrityError("more failing contributors than contributors");
  return static_cast<double>(failing_contributors) / static_cast<double>(total_contributors);
}

size_t OntologyAxiomIndex::atomic_count() const {
  size_t n = 0;
  for (const auto& [name, atomic] : axioms)
    if (atomic) ++n;
  return n;
}

namespace {

// A unit clause is a single literal: an atom under at most one negation.
bool formula_is_atomic(const fol::Formula& f) {
  if (f.kind == fol::Connective::Atom) return true;
  if (f.kind == fol::Connective::Not) return f.children.front()->kind == fol::Connective::Atom;
  return false;
}

}  // namespace

OntologyAxiomIndex load_axiom_index(const std::string& path) {
  auto parsed = fol::parse_tptp_file(path);
  OntologyAxiomIndex index;
  for (const auto& record : parsed.records) {
    if (record.role != fol::FofRole::Axiom) continue;
    auto [it, inserted] = index.axioms.emplace(record.name, formula_is_atomic(*record.formula));
    if (!inserted) throw IntegrityError(path + ": duplicate axiom name '" + record.name + "'");
  }
  return index;
}

namespace {

struct ConjectureOutcome {
  Category category;
  Polarity polarity;
  std::string problem_id;
  bool proved = false;
  double best_time_s = 0.0;
  size_t attempted = 0;
  size_t failing = 0;
  std::vector<const RunRecord*> proofs;
};

using BucketKey = std::pair<Category, Polarity>;

std::vector<ReportRow> make_row_specs() {
  using patterns::Category;
  std::set<Category> mapping, competency, all;
  for (int c = 0; c <= static_cast<int>(Category::Result); ++c) {
    auto category = static_cast<Category>(c);
    (patterns::is_mapping_category(category) ? mapping : competency).insert(category);
    all.insert(category);
  }

  std::vector<ReportRow> rows;
  for (Polarity polarity : {Polarity::Truth, Polarity::Falsity}) {
    std::string division = polarity == Polarity::Truth ? "truth" : "falsity";
    auto leaf = [&](Category c) {
      ReportRow r;
      r.label = division + "/" + patterns::category_name(c);
      r.categories = {c};
      r.polarities = {polarity};
      rows.push_back(std::move(r));
    };
    auto group = [&](const std::string& name, const std::set<Category>& cs) {
      ReportRow r;
      r.label = division + "/" + name;
      r.categories = cs;
      r.polarities = {polarity};
      r.rollup = true;
      rows.push_back(std::move(r));
    };
    for (Category c : mapping) leaf(c);
    group("mapping", mapping);
    for (Category c : competency) leaf(c);
    group("competency", competency);
    group("total", all);
  }
  ReportRow grand;
  grand.label = "total";
  grand.categories = all;
  grand.polarities = {Polarity::Truth, Polarity::Falsity};
  grand.rollup = true;
  rows.push_back(std::move(grand));
  return rows;
}

}  // namespace

const ReportRow* find_row(const AnalysisResult& analysis, const std::string& label) {
  for (const ReportRow& row : analysis.rows)
    if (row.label == label) return &row;
  return nullptr;
}

AnalysisResult analyze(const patterns::Corpus& corpus, const std::vector<RunRecord>& records,
                       const OntologyAxiomIndex* axiom_index, const AnalysisOptions& options) {
  AnalysisResult result;
  result.verdicts = classify_all(corpus, records);
  result.ontology_size = axiom_index ? axiom_index->size() : 0;

  std::set<std::string> inconsistent;
  for (const ProblemVerdict& v : result.verdicts)
    if (v.problem_class == ProblemClass::InconsistencyDetected) {
      inconsistent.insert(v.problem_id);
      result.inconsistent_problem_ids.push_back(v.problem_id);
    }

  // Conjecture-level outcomes; inconsistency aborts a problem's bookkeeping.
  std::map<std::pair<std::string, Polarity>, ConjectureOutcome> outcomes;
  for (const auto& p : corpus.problems) {
    if (inconsistent.count(p.id)) continue;
    for (Polarity polarity : {Polarity::Truth, Polarity::Falsity}) {
      ConjectureOutcome o;
      o.category = p.category;
      o.polarity = polarity;
      o.problem_id = p.id;
      outcomes.emplace(std::make_pair(p.id, polarity), std::move(o));
    }
  }
  for (const RunRecord& r : records) {
    auto it = outcomes.find({r.problem_id, r.polarity});
    if (it == outcomes.end()) continue;  // inconsistent problems stay out
    ConjectureOutcome& o = it->second;
    o.attempted++;
    if (r.status == SzsStatus::Theorem) {
      if (!o.proved || r.wall_time_s < o.best_time_s) o.best_time_s = r.wall_time_s;
      o.proved = true;
      o.proofs.push_back(&r);
    } else {
      o.failing++;
    }
  }

  // Which leaf buckets use each axiom (drives exclusivity).
  std::map<std::string, std::set<BucketKey>> axiom_buckets;
  for (const auto& [key, o] : outcomes)
    for (const RunRecord* proof : o.proofs)
      for (const std::string& ax : proof->used_axioms)
        axiom_buckets[ax].insert({o.category, o.polarity});

  auto in_row = [](const ReportRow& row, Category c, Polarity p) {
    return row.categories.count(c) > 0 && row.polarities.count(p) > 0;
  };

  auto metrics_for = [&](const ReportRow& row) {
    CategoryMetrics m;
    std::vector<double> proved_times;
    size_t attempted_conjectures = 0;
    double difficulty_sum = 0.0;
    size_t difficulty_count = 0;
    std::set<std::string> used;
    size_t proof_count = 0;
    size_t proof_axioms = 0, proof_units = 0, proof_formulae = 0;

    for (const auto& [key, o] : outcomes) {
      if (!in_row(row, o.category, o.polarity)) continue;
      m.total++;
      if (o.attempted > 0) attempted_conjectures++;
      if (!o.proved) continue;
      m.proved++;
      proved_times.push_back(o.best_time_s);
      difficulty_sum += difficulty(o.failing, o.attempted);
      difficulty_count++;
      for (const RunRecord* proof : o.proofs) {
        proof_count++;
        proof_axioms += proof->used_axioms.size();
        for (const std::string& ax : proof->used_axioms) {
          used.insert(ax);
          if (axiom_index) {
            auto it = axiom_index->axioms.find(ax);
            if (it == axiom_index->axioms.end())
              throw IntegrityError("proof of " + o.problem_id + " uses axiom '" + ax +
                                   "' absent from the ontology index");
            if (it->second) proof_units++;
            else proof_formulae++;
          }
        }
      }
    }

    m.proved_pct = m.total == 0 ? 0.0 : 100.0 * static_cast<double>(m.proved) / m.total;
    if (!proved_times.empty()) {
      double sum = 0.0;
      for (double t : proved_times) sum += t;
      m.mean_time_s = sum / static_cast<double>(proved_times.size());
    }
    m.efficiency_value =
        efficiency(proved_times, attempted_conjectures, options.attempted_denominator);
    if (difficulty_count > 0) m.mean_difficulty = difficulty_sum / difficulty_count;

    m.coverage.used = used.size();
    if (axiom_index && axiom_index->size() > 0)
      m.coverage.used_pct = 100.0 * static_cast<double>(used.size()) / axiom_index->size();
    size_t exclusive = 0, units = 0, formulae = 0;
    for (const std::string& ax : used) {
      bool outside = false;
      for (const BucketKey& b : axiom_buckets[ax])
        if (!in_row(row, b.first, b.second)) outside = true;
      if (!outside) exclusive++;
      if (axiom_index) {
        if (axiom_index->axioms.at(ax)) units++;
        else formulae++;
      }
    }
    m.coverage.exclusive = exclusive;
    m.coverage.unit_clauses = units;
    m.coverage.formulae = formulae;
    if (proof_count > 0) {
      m.coverage.per_proof_axioms = static_cast<double>(proof_axioms) / proof_count;
      m.coverage.per_proof_unit_clauses = static_cast<double>(proof_units) / proof_count;
      m.coverage.per_proof_formulae = static_cast<double>(proof_formulae) / proof_count;
    }
    return m;
  };

  std::set<std::string> prover_ids;
  for (const RunRecord& r : records) prover_ids.insert(r.prover_id);
  result.prover_ids.assign(prover_ids.begin(), prover_ids.end());

  result.rows = make_row_specs();
  for (ReportRow& row : result.rows) {
    row.metrics = metrics_for(row);
    for (const std::string& prover : result.prover_ids) {
      ProverCellMetrics cell;
      std::vector<double> times;
      size_t attempted = 0;
      for (const RunRecord& r : records) {
        if (r.prover_id != prover) continue;
        auto it = outcomes.find({r.problem_id, r.polarity});
        if (it == outcomes.end()) continue;
        const ConjectureOutcome& o = it->second;
        if (!in_row(row, o.category, o.polarity)) continue;
        attempted++;
        if (r.status == SzsStatus::Theorem) times.push_back(r.wall_time_s);
      }
      cell.total = row.metrics.total;
      cell.proved = times.size();
      cell.proved_pct =
          cell.total == 0 ? 0.0 : 100.0 * static_cast<double>(cell.proved) / cell.total;
      if (!times.empty()) {
        double sum = 0.0;
        for (double t : times) sum += t;
        cell.mean_time_s = sum / static_cast<double>(times.size());
      }
      cell.efficiency_value = efficiency(times, attempted, options.attempted_denominator);
      row.prover_cells[prover] = cell;
    }
  }

  return result;
}

}  // namespace cqb::analysis

#include <algorithm>
#include <cstdio>
#include <random>
#include <sstream>

#include "cqbench/analysis.hpp"
#include "cqbench/errors.hpp"
#include "cqbench/fol/text.hpp"

namespace cqb::analysis {

namespace {

std::string fmt_double(double v, int precision = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

std::string opt_cell(const std::optional<double>& v, int precision = 2) {
  return v ? fmt_double(*v, precision) : "-";
}

std::string dash_if_zero(size_t proved, const std::string& value) {
  return proved == 0 ? "-" : value;
}

struct TextTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string render() const {
    std::vector<size_t> widths(header.size(), 0);
    for (size_t i = 0; i < header.size(); ++i) widths[i] = header[i].size();
    for (const auto& row : rows)
      for (size_t i = 0; i < row.size() && i < widths.size(); ++i)
        widths[i] = std::max(widths[i], row[i].size());
    std::ostringstream out;
    auto emit_row = [&](const std::vector<std::string>& row) {
      for (size_t i = 0; i < row.size(); ++i) {
        if (i) out << "  ";
        out << row[i];
        if (i + 1 < row.size())
          out << std::string(widths[i] - std::min(widths[i], row[i].size()), ' ');
      }
      out << '\n';
    };
    emit_row(header);
    std::string rule;
    for (size_t i = 0; i < widths.size(); ++i) {
      if (i) rule += "  ";
      rule += std::string(widths[i], '-');
    }
    out << rule << '\n';
    for (const auto& row : rows) emit_row(row);
    return out.str();
  }
};

std::vector<std::string> base_cells(const ReportRow& row) {
  const CategoryMetrics& m = row.metrics;
  return {row.label,
          std::to_string(m.total),
          std::to_string(m.proved),
          dash_if_zero(m.proved, fmt_double(m.proved_pct)),
          dash_if_zero(m.proved, opt_cell(m.mean_time_s)),
          dash_if_zero(m.proved, opt_cell(m.efficiency_value))};
}

}  // namespace

ReportFiles render_report(const AnalysisResult& analysis) {
  ReportFiles files;

  {
    std::map<ProblemClass, size_t> verdict_counts;
    for (const ProblemVerdict& v : analysis.verdicts) verdict_counts[v.problem_class]++;
    std::ostringstream head;
    head << "problems: " << analysis.verdicts.size();
    for (const auto& [klass, n] : verdict_counts)
      head << ", " << n << " " << problem_class_name(klass);
    if (analysis.ontology_size) head << "; ontology axioms: " << analysis.ontology_size;
    head << "\n\n";
    files.text += head.str();
  }

  // Per-run joint table.
  {
    std::ostringstream tsv;
    tsv << "category\ttotal\tproved\tpct\tmean_time_s\tefficiency\n";
    TextTable table;
    table.header = {"category", "total", "proved", "pct", "T (s)", "E"};
    for (const ReportRow& row : analysis.rows) {
      auto cells = base_cells(row);
      for (size_t i = 0; i < cells.size(); ++i) tsv << (i ? "\t" : "") << cells[i];
      tsv << '\n';
      table.rows.push_back(std::move(cells));
    }
    files.run_table_tsv = tsv.str();
    files.text += "== run table (proved by any contributing prover) ==\n" + table.render() + "\n";
  }

  // Per-prover comparison.
  {
    std::ostringstream tsv;
    tsv << "category\ttotal\tproved\tpct\tmean_time_s\tefficiency\tprover\n";
    TextTable table;
    table.header = {"category", "total"};
    for (const std::string& prover : analysis.prover_ids) {
      table.header.push_back(prover + " #");
      table.header.push_back(prover + " T");
      table.header.push_back(prover + " E");
    }
    for (const ReportRow& row : analysis.rows) {
      std::vector<std::string> wide{row.label, std::to_string(row.metrics.total)};
      for (const std::string& prover : analysis.prover_ids) {
        auto it = row.prover_cells.find(prover);
        if (it == row.prover_cells.end()) {
          wide.insert(wide.end(), {"-", "-", "-"});
          continue;
        }
        const ProverCellMetrics& cell = it->second;
        tsv << row.label << '\t' << cell.total << '\t' << cell.proved << '\t'
            << dash_if_zero(cell.proved, fmt_double(cell.proved_pct)) << '\t'
            << dash_if_zero(cell.proved, opt_cell(cell.mean_time_s)) << '\t'
            << dash_if_zero(cell.proved, opt_cell(cell.efficiency_value)) << '\t' << prover
            << '\n';
        wide.push_back(std::to_string(cell.proved));
        wide.push_back(dash_if_zero(cell.proved, opt_cell(cell.mean_time_s)));
        wide.push_back(dash_if_zero(cell.proved, opt_cell(cell.efficiency_value)));
      }
      table.rows.push_back(std::move(wide));
    }
    files.prover_table_tsv = tsv.str();
    files.text += "== prover comparison ==\n" + table.render() + "\n";
  }

  // Proofs / coverage / difficulty.
  {
    std::ostringstream tsv;
    tsv << "category\ttotal\tproved\tpct\tmean_time_s\tefficiency\tdifficulty\tN\tP\tS\tC\tF\t"
           "avg_n\tavg_c\tavg_f\n";
    TextTable table;
    table.header = {"category", "total", "#", "%",     "T (s)", "E",     "D",    "N",
                    "P",        "S",     "C", "F",     "avgN",  "avgC",  "avgF"};
    for (const ReportRow& row : analysis.rows) {
      const CategoryMetrics& m = row.metrics;
      const CoverageStats& c = m.coverage;
      bool has = m.proved > 0;
      std::vector<std::string> cells = base_cells(row);
      cells.push_back(has ? opt_cell(m.mean_difficulty) : "-");
      cells.push_back(has ? std::to_string(c.used) : "-");
      cells.push_back(has ? fmt_double(c.used_pct) : "-");
      cells.push_back(has ? std::to_string(c.exclusive) : "-");
      cells.push_back(has ? std::to_string(c.unit_clauses) : "-");
      cells.push_back(has ? std::to_string(c.formulae) : "-");
      cells.push_back(has ? fmt_double(c.per_proof_axioms) : "-");
      cells.push_back(has ? fmt_double(c.per_proof_unit_clauses) : "-");
      cells.push_back(has ? fmt_double(c.per_proof_formulae) : "-");
      for (size_t i = 0; i < cells.size(); ++i) tsv << (i ? "\t" : "") << cells[i];
      tsv << '\n';
      table.rows.push_back(std::move(cells));
    }
    files.analysis_table_tsv = tsv.str();
    files.text += "== proofs / coverage / difficulty ==\n" + table.render();
  }

  if (!analysis.inconsistent_problem_ids.empty()) {
    std::string banner =
        "**********************************************************************\n"
        "* ONTOLOGY INCONSISTENCY DETECTED: both the truth-test and the\n"
        "* falsity-test were proved for the following problems. Their rows are\n"
        "* excluded from all aggregates above.\n";
    for (const std::string& id : analysis.inconsistent_problem_ids)
      banner += "*   " + id + "\n";
    banner += "**********************************************************************\n\n";
    files.text = banner + files.text;
  }
  return files;
}

std::vector<patterns::Problem> sample_uniform(const patterns::Corpus& corpus, double fraction,
                                              uint64_t seed) {
  if (fraction < 0.0 || fraction > 1.0)
    throw ConfigError("sample fraction must lie in [0, 1]");
  size_t n = corpus.problems.size();
  size_t k = static_cast<size_t>(fraction * static_cast<double>(n));
  std::vector<patterns::Problem> out;
  if (k == 0) return out;

  // Selection sampling; explicit 53-bit uniforms keep the draw reproducible
  // across standard library implementations.
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() {
    return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
  };
  size_t remaining = k;
  for (size_t i = 0; i < n && remaining > 0; ++i) {
    double p = static_cast<double>(remaining) / static_cast<double>(n - i);
    if (uniform() < p) {
      out.push_back(corpus.problems[i]);
      --remaining;
    }
  }
  return out;
}

std::string judgment_template_tsv(const std::vector<patterns::Problem>& sample) {
  std::ostringstream out;
  out << "problem\tcategory\ttruth_test\tmapping_verdict(correct|precise|incorrect)\t"
         "knowledge_verdict(correct|incorrect)\tsolved_expectation(entailed|incompatible|"
         "unknown)\tnotes\n";
  for (const patterns::Problem& p : sample) {
    out << p.id << '\t' << patterns::category_name(p.category) << '\t'
        << fol::emit_suo_kif(*p.truth_test) << "\t\t\t\t\n";
  }
  return out.str();
}

}  // namespace cqb::analysis

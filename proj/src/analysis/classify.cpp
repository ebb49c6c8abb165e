#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "cqbench/analysis.hpp"
#include "cqbench/errors.hpp"

namespace cqb::analysis {

using harness::Polarity;
using harness::RunRecord;
using harness::SzsStatus;
using nlohmann::json;

const char* conjecture_status_name(ConjectureStatus s) {
  switch (s) {
    case ConjectureStatus::Passing: return "passing";
    case ConjectureStatus::NonPassing: return "non-passing";
    case ConjectureStatus::Unknown: return "unknown";
  }
  return "?";
}

const char* problem_class_name(ProblemClass c) {
  switch (c) {
    case ProblemClass::SolvedEntailed: return "solved-entailed";
    case ProblemClass::SolvedIncompatible: return "solved-incompatible";
    case ProblemClass::Unsolved: return "unsolved";
    case ProblemClass::InconsistencyDetected: return "inconsistency-detected";
  }
  return "?";
}

ProblemVerdict classify_problem(const std::string& problem_id,
                                const std::vector<RunRecord>& truth_records,
                                const std::vector<RunRecord>& falsity_records) {
  ProblemVerdict v;
  v.problem_id = problem_id;
  for (const RunRecord& r : truth_records) {
    if (r.problem_id != problem_id)
      throw IntegrityError("record for '" + r.problem_id + "' classified under '" + problem_id +
                           "'");
    if (r.status == SzsStatus::Theorem) v.truth_provers.push_back(r.prover_id);
  }
  for (const RunRecord& r : falsity_records) {
    if (r.problem_id != problem_id)
      throw IntegrityError("record for '" + r.problem_id + "' classified under '" + problem_id +
                           "'");
    if (r.status == SzsStatus::Theorem) v.falsity_provers.push_back(r.prover_id);
  }
  std::sort(v.truth_provers.begin(), v.truth_provers.end());
  std::sort(v.falsity_provers.begin(), v.falsity_provers.end());

  bool truth_proved = !v.truth_provers.empty();
  bool falsity_proved = !v.falsity_provers.empty();
  v.truth_status = truth_proved ? ConjectureStatus::Passing : ConjectureStatus::Unknown;
  v.falsity_status = falsity_proved ? ConjectureStatus::NonPassing : ConjectureStatus::Unknown;
  if (truth_proved && falsity_proved) v.problem_class = ProblemClass::InconsistencyDetected;
  else if (truth_proved) v.problem_class = ProblemClass::SolvedEntailed;
  else if (falsity_proved) v.problem_class = ProblemClass::SolvedIncompatible;
  else v.problem_class = ProblemClass::Unsolved;
  return v;
}

std::vector<ProblemVerdict> classify_all(const patterns::Corpus& corpus,
                                         const std::vector<RunRecord>& records) {
  std::map<std::string, std::pair<std::vector<RunRecord>, std::vector<RunRecord>>> grouped;
  for (const RunRecord& r : records) {
    auto& slot = grouped[r.problem_id];
    (r.polarity == Polarity::Truth ? slot.first : slot.second).push_back(r);
  }
  std::vector<ProblemVerdict> out;
  out.reserve(corpus.problems.size());
  for (const patterns::Problem& p : corpus.problems) {
    auto it = grouped.find(p.id);
    if (it == grouped.end())
      out.push_back(classify_problem(p.id, {}, {}));
    else
      out.push_back(classify_problem(p.id, it->second.first, it->second.second));
  }
  return out;
}

void save_verdicts(const std::vector<ProblemVerdict>& verdicts, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  for (const ProblemVerdict& v : verdicts) {
    json j;
    j["problem"] = v.problem_id;
    j["verdict"] = problem_class_name(v.problem_class);
    j["truth_status"] = conjecture_status_name(v.truth_status);
    j["falsity_status"] = conjecture_status_name(v.falsity_status);
    j["truth_provers"] = v.truth_provers;
    j["falsity_provers"] = v.falsity_provers;
    out << j.dump() << '\n';
  }
  if (!out) throw IoError("failed writing " + path);
}

std::vector<ProblemVerdict> load_verdicts(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StateError("cannot open " + path + " (run the classify stage first)");
  std::vector<ProblemVerdict> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    ProblemVerdict v;
    v.problem_id = j.at("problem").get<std::string>();
    std::string klass = j.at("verdict").get<std::string>();
    if (klass == "solved-entailed") v.problem_class = ProblemClass::SolvedEntailed;
    else if (klass == "solved-incompatible") v.problem_class = ProblemClass::SolvedIncompatible;
    else if (klass == "unsolved") v.problem_class = ProblemClass::Unsolved;
    else if (klass == "inconsistency-detected")
      v.problem_class = ProblemClass::InconsistencyDetected;
    else throw ParseError(path + ": unknown verdict '" + klass + "'");
    auto status = [&](const std::string& s) {
      if (s == "passing") return ConjectureStatus::Passing;
      if (s == "non-passing") return ConjectureStatus::NonPassing;
      return ConjectureStatus::Unknown;
    };
    v.truth_status = status(j.at("truth_status").get<std::string>());
    v.falsity_status = status(j.at("falsity_status").get<std::string>());
    v.truth_provers = j.at("truth_provers").get<std::vector<std::string>>();
    v.falsity_provers = j.at("falsity_provers").get<std::vector<std::string>>();
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace cqb::analysis

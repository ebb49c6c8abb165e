#include <atomic>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "cqbench/errors.hpp"
#include "cqbench/harness.hpp"

namespace cqb::harness {

using nlohmann::json;

std::string problem_file_name(const std::string& problem_id, Polarity polarity) {
  return problem_id + (polarity == Polarity::Truth ? ".tt.p" : ".ft.p");
}

std::string render_problem_file(const patterns::Problem& problem, Polarity polarity,
                                const std::string& ontology_path, const fol::SymbolMap& map) {
  const fol::Formula& conjecture =
      polarity == Polarity::Truth ? *problem.truth_test : *problem.falsity_test;
  std::string fof_name = problem.id;
  for (char& c : fof_name)
    if (c == '-') c = '_';
  fof_name += polarity == Polarity::Truth ? "_tt" : "_ft";

  std::string out;
  out += "% problem " + problem.id + " " + polarity_name(polarity) + "-test (" +
         patterns::category_name(problem.category) + ")\n";
  out += "include('" + ontology_path + "').\n";
  out += fol::emit_tptp(fof_name, fol::FofRole::Conjecture, conjecture, map);
  out += "\n";
  return out;
}

std::vector<Job> plan_jobs(const patterns::Corpus& corpus,
                           const std::vector<ProverConfig>& provers,
                           const std::vector<RunRecord>& existing,
                           const std::string& problems_dir) {
  std::set<std::tuple<std::string, Polarity, std::string>> done;
  for (const RunRecord& r : existing) done.emplace(r.problem_id, r.polarity, r.prover_id);

  std::vector<Job> plan;
  for (const patterns::Problem& p : corpus.problems) {
    for (Polarity polarity : {Polarity::Truth, Polarity::Falsity}) {
      for (const ProverConfig& prover : provers) {
        if (done.count({p.id, polarity, prover.id})) continue;
        plan.push_back({p.id, polarity, prover.id,
                        problems_dir + "/" + problem_file_name(p.id, polarity)});
      }
    }
  }
  std::sort(plan.begin(), plan.end(), [](const Job& a, const Job& b) {
    return std::tie(a.problem_id, a.polarity, a.prover_id) <
           std::tie(b.problem_id, b.polarity, b.prover_id);
  });
  return plan;
}

void append_record(std::ostream& out, const RunRecord& r) {
  json j;
  j["problem"] = r.problem_id;
  j["polarity"] = polarity_name(r.polarity);
  j["prover"] = r.prover_id;
  j["status"] = szs_status_name(r.status);
  j["wall_time_s"] = r.wall_time_s;
  j["used_axioms"] = r.used_axioms;
  j["digest"] = r.output_digest;
  if (!r.message.empty()) j["message"] = r.message;
  out << j.dump() << '\n';
  out.flush();
}

std::vector<RunRecord> load_records(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::vector<RunRecord> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    RunRecord r;
    r.problem_id = j.at("problem").get<std::string>();
    r.polarity = polarity_from_name(j.at("polarity").get<std::string>());
    r.prover_id = j.at("prover").get<std::string>();
    r.status = szs_status_from_name(j.at("status").get<std::string>());
    r.wall_time_s = j.at("wall_time_s").get<double>();
    r.used_axioms = j.at("used_axioms").get<std::vector<std::string>>();
    r.output_digest = j.at("digest").get<std::string>();
    if (j.contains("message")) r.message = j.at("message").get<std::string>();
    out.push_back(std::move(r));
  }
  return out;
}

void validate_records(const std::vector<RunRecord>& records, const patterns::Corpus& corpus,
                      const std::set<std::string>* ontology_axioms) {
  std::set<std::string> problem_ids;
  for (const auto& p : corpus.problems) problem_ids.insert(p.id);
  std::set<std::tuple<std::string, Polarity, std::string>> seen;
  for (const RunRecord& r : records) {
    if (!problem_ids.count(r.problem_id))
      throw IntegrityError("record references unknown problem '" + r.problem_id + "'");
    if (!seen.emplace(r.problem_id, r.polarity, r.prover_id).second)
      throw IntegrityError("duplicate record for (" + r.problem_id + ", " +
                           polarity_name(r.polarity) + ", " + r.prover_id + ")");
    if (ontology_axioms) {
      for (const std::string& ax : r.used_axioms)
        if (!ontology_axioms->count(ax))
          throw IntegrityError("record for " + r.problem_id + " uses axiom '" + ax +
                               "' absent from the ontology");
    }
  }
}

std::vector<RunRecord> run_all(const std::vector<Job>& plan,
                               const std::map<std::string, ProverConfig>& provers,
                               const std::string& ontology_path, int parallelism,
                               const std::string& records_path) {
  if (parallelism < 1) parallelism = 1;
  for (const Job& job : plan)
    if (!provers.count(job.prover_id))
      throw ConfigError("job references unknown prover '" + job.prover_id + "'");
  std::ofstream out(records_path, std::ios::binary | std::ios::app);
  if (!out) throw IoError("cannot open record store " + records_path);

  std::vector<RunRecord> results;
  std::mutex write_mutex;
  std::atomic<size_t> next{0};

  auto worker = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= plan.size()) return;
      const Job& job = plan[i];
      RunRecord record;
      try {
        record = run_job(job, provers.at(job.prover_id), ontology_path);
      } catch (const std::exception& e) {
        // Individual job failures are recorded, never fatal to the batch.
        record.problem_id = job.problem_id;
        record.polarity = job.polarity;
        record.prover_id = job.prover_id;
        record.status = SzsStatus::Error;
        record.message = e.what();
        record.output_digest = "0000000000000000";
      }
      std::lock_guard<std::mutex> lock(write_mutex);
      append_record(out, record);
      results.push_back(std::move(record));
    }
  };

  if (parallelism == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(parallelism);
    for (int i = 0; i < parallelism; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return results;
}

}  // namespace cqb::harness

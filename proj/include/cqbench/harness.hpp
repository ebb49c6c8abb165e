#ifndef CQBENCH_HARNESS_HPP
#define CQBENCH_HARNESS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cqbench/fol/text.hpp"
#include "cqbench/patterns.hpp"

namespace cqb::harness {

enum class Polarity : uint8_t { Truth, Falsity };
const char* polarity_name(Polarity p);
Polarity polarity_from_name(const std::string& s);

struct ProverConfig {
  std::string id;
  std::string executable;
  // Whitespace-separated template; `{problem}`, `{time_s}` and `{mem_mib}`
  // placeholders are substituted per job.
  std::string args_template;
  int time_limit_s = 60;
  int memory_limit_mib = 2048;

  void validate() const;
};

enum class SzsStatus : uint8_t {
  Theorem,
  CounterSatisfiable,
  Satisfiable,
  Timeout,
  GaveUp,
  ResourceOut,
  Unknown,
  Error,
};

const char* szs_status_name(SzsStatus s);
SzsStatus szs_status_from_name(const std::string& s);

// Maps the status token of an `SZS status <S>` output line onto the record
// vocabulary; names outside it become Unknown.
std::optional<SzsStatus> parse_szs_line(const std::string& output);

// Axiom names cited by `file('<path>', <name>)` source annotations whose path
// basename matches the ontology file.
std::set<std::string> extract_used_axioms(const std::string& output,
                                          const std::string& ontology_path);

struct RunRecord {
  std::string problem_id;
  Polarity polarity;
  std::string prover_id;
  SzsStatus status;
  double wall_time_s = 0.0;
  std::vector<std::string> used_axioms;  // sorted; empty unless Theorem
  std::string output_digest;             // fnv1a-64 of the raw output
  std::string message;                   // spawn/parse diagnostics
};

struct Job {
  std::string problem_id;
  Polarity polarity;
  std::string prover_id;
  std::string problem_file;
};

// One job per (conjecture x prover) lacking a record, ordered by
// (problem id, polarity, prover id).
std::vector<Job> plan_jobs(const patterns::Corpus& corpus,
                           const std::vector<ProverConfig>& provers,
                           const std::vector<RunRecord>& existing,
                           const std::string& problems_dir);

// Spawns the prover, enforces the wall clock (grace kill) and the address
// space ceiling, and scans the output.
RunRecord run_job(const Job& job, const ProverConfig& config,
                  const std::string& ontology_path);

// Bounded worker pool with one serialized appending writer; each record is a
// self-delimiting line so interrupted batches resume cleanly.
std::vector<RunRecord> run_all(const std::vector<Job>& plan,
                               const std::map<std::string, ProverConfig>& provers,
                               const std::string& ontology_path, int parallelism,
                               const std::string& records_path);

// JSON Lines record store.
void append_record(std::ostream& out, const RunRecord& record);
std::vector<RunRecord> load_records(const std::string& path);

// Referential integrity: every record references a corpus conjecture, the
// (problem, polarity, prover) triple is unique, and used axioms (when an
// axiom name set is supplied) come from the ontology.
void validate_records(const std::vector<RunRecord>& records, const patterns::Corpus& corpus,
                      const std::set<std::string>* ontology_axioms);

// Conjecture-file emission used by the emit stage: an include of the
// ontology plus one annotated conjecture.
std::string problem_file_name(const std::string& problem_id, Polarity polarity);
std::string render_problem_file(const patterns::Problem& problem, Polarity polarity,
                                const std::string& ontology_path, const fol::SymbolMap& map);

}  // namespace cqb::harness

#endif

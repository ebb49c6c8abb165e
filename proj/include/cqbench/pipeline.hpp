#ifndef CQBENCH_PIPELINE_HPP
#define CQBENCH_PIPELINE_HPP

#include <string>

#include "cqbench/config.hpp"

namespace cqb::pipeline {

// Stage drivers shared by the CLI and the test suites.  Stages communicate
// only through files under the configured output directory.
void run_ingest(const RunConfig& config);
void run_project(const RunConfig& config);
void run_generate(const RunConfig& config);
void run_emit(const RunConfig& config);
void run_run(const RunConfig& config, int jobs);
void run_classify(const RunConfig& config);
void run_report(const RunConfig& config);
void run_sample(const RunConfig& config, double fraction, uint64_t seed);

}  // namespace cqb::pipeline

#endif

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "entropy_banach/json_io.hpp"
#include "entropy_banach/rational.hpp"

namespace eb {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

struct CheckOptions {
  std::uint64_t seed = 20240601;
  std::vector<int> only;  // empty: all criteria
};

using AnSolver = std::function<std::vector<Q>(int, const std::vector<Q>&)>;

/// Criterion 1 against an arbitrary solver, so a corrupted solver can be
/// shown to fail.
CriterionResult check_an_oracle(const AnSolver& solver, int n_max, int samples,
                                std::uint64_t seed);

/// Runs criteria 1..10 (or `only`). `on_result` is called after each one.
std::vector<CriterionResult> run_acceptance(
    const CheckOptions& opts,
    const std::function<void(const CriterionResult&)>& on_result = {});

std::string format_result_line(const CriterionResult& r);

struct RunManifest {
  std::string subcommand;
  std::map<std::string, std::string> parameters;
  std::vector<std::string> outputs;
  double wall_time = 0.0;
  std::string library_version = EB_VERSION;
};

Json to_json(const RunManifest& m);
RunManifest manifest_from_json(const Json& j);
Json to_json(const CriterionResult& r);

}  // namespace eb

#pragma once

#include <nlohmann/json_fwd.hpp>

#include "matchable/group_matching.hpp"
#include "matchable/linear_matching.hpp"
#include "matchable/rng.hpp"

// Randomized cross-validation: every decision procedure is run against the
// others on the same instances, and each sufficient condition is asserted to
// imply matchability. Reports list offending instances verbatim.

namespace matchable {

struct GroupSweepConfig {
  uint64_t seed = 1;
  int instances = 200;
  int max_set_size = 6;
};

MatchInstance random_group_instance(SplitMix64& rng, const GroupSpecPtr& spec,
                                    int max_set_size);
nlohmann::json run_group_sweep(const GroupSweepConfig& config);

struct LinearSweepConfig {
  uint64_t seed = 1;
  int instances = 100;
  int64_t p = 2;
  int n = 4;
  int max_dim = 3;
};

LinearInstance random_linear_instance(SplitMix64& rng, const TowerPtr& tower, int max_dim);
nlohmann::json run_linear_sweep(const LinearSweepConfig& config);

}  // namespace matchable

// Copyright 2026 The mccov Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Coverage-guided generation loop over a metamorphic target. One driver
// runs two feedback policies: CCG treats a pair as progress when its
// combined coverage adds units to a cumulative set; MCG does the same with
// the pair's differential coverage instead. When progress stalls for
// plateau_limit consecutive iterations the target's generation state is
// mutated. Everything is deterministic given (policy, seed).

#ifndef MCCOV_GUIDANCE_HPP
#define MCCOV_GUIDANCE_HPP

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "mccov/coverage.hpp"
#include "mccov/metamorphic.hpp"
#include "mccov/rng.hpp"

namespace mccov {

enum class PolicyKind { CCG, MCG };

const char* policy_name(PolicyKind kind);
// Accepts "ccg"/"mcg" (case-insensitive); InvalidArgument otherwise.
PolicyKind policy_from_name(const std::string& name);

// The growing feedback set of one run. CCG accumulates the union coverage
// of every pair; MCG accumulates the union of per-pair differential
// coverage. Both only ever grow.
struct FeedbackPolicy {
  PolicyKind kind = PolicyKind::CCG;
  Granularity granularity = Granularity::Line;
  UnitSet cumulative;
  UnitSet universe;  // union of the universes seen, for reporting
};

// Counts how many units the pair adds to the policy's cumulative set and
// folds them in. GranularityMismatch when the pair's maps do not match the
// policy's granularity.
std::size_t observe(FeedbackPolicy& policy, const TestPair& pair);

// One generated metamorphic pair, already executed: its coverage, whether
// the relation held, and which documented seeded bugs its differential
// coverage touches (ground truth from the fixture).
struct PairObservation {
  TestPair pair;
  bool violation = false;
  std::vector<std::string> bug_ids;
};

// A generation target the loop can drive. Implementations own mutable
// generation state (e.g. a corpus of base inputs); every method must be
// deterministic given the rng stream.
class TargetAdapter {
 public:
  virtual ~TargetAdapter() = default;

  virtual std::string describe() const = 0;
  virtual Granularity granularity() const = 0;
  // Re-derives the generation state from the rng stream.
  virtual void reset(SplitMix64& rng) = 0;
  // Draws the next pair, executes both sides, and checks the relation.
  virtual PairObservation generate_pair(SplitMix64& rng,
                                        std::size_t iteration) = 0;
  // Plateau response: perturbs the generation state.
  virtual void mutate_state(SplitMix64& rng) = 0;
  // Human-readable snapshot of the current generation state.
  virtual std::string state_snapshot() const = 0;
};

struct GuidanceEvent {
  std::size_t iteration = 0;  // 0-based
  std::string pair_id;
  std::size_t new_units = 0;
  bool violation = false;
  bool mutated = false;  // state was mutated at the end of this iteration
  std::vector<std::string> bug_ids;
};

struct GuidanceState {
  PolicyKind policy = PolicyKind::CCG;
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  std::size_t plateau_limit = 0;
  std::size_t iterations = 0;       // completed iterations == events.size()
  std::size_t plateau_counter = 0;  // value when the loop stopped
  UnitSet cumulative;               // final feedback set
  std::set<std::string> distinct_bugs;  // from violating pairs only
  std::size_t violations_total = 0;
  std::vector<GuidanceEvent> events;
  std::vector<TestPair> pairs;  // every generated pair, in order
  std::string target;           // adapter description
  std::string target_state;     // generation-state snapshot at the end
  // Target failure stops the loop early; everything up to that iteration
  // is preserved.
  bool aborted = false;
  std::string abort_reason;
};

// Runs the loop: generate -> observe -> plateau bookkeeping -> mutate on
// plateau, for `budget` iterations. Violations never stop the loop; they
// are logged and counted, deduplicated into distinct_bugs by seeded-bug
// id. InvalidArgument when budget or plateau_limit is zero.
GuidanceState drive(TargetAdapter& target, PolicyKind policy,
                    std::size_t budget, std::size_t plateau_limit,
                    std::uint64_t seed);

struct CompareRow {
  PolicyKind policy = PolicyKind::CCG;
  std::uint64_t seed = 0;
  std::size_t distinct_bugs = 0;
  std::size_t iterations = 0;
  std::size_t violations_total = 0;
};

struct CompareResult {
  std::size_t budget = 0;
  std::size_t plateau_limit = 0;
  std::vector<CompareRow> rows;  // all CCG rows, then all MCG rows
  double ccg_mean_bugs = 0.0;
  double mcg_mean_bugs = 0.0;
  // Per-seed tally of distinct-bug counts, MCG vs CCG.
  std::size_t mcg_wins = 0;
  std::size_t ties = 0;
  std::size_t ccg_wins = 0;
};

// Runs both policies over every seed. InvalidArgument on fewer than two
// seeds; TargetFailure when any run aborts.
CompareResult compare(TargetAdapter& target,
                      const std::vector<std::uint64_t>& seeds,
                      std::size_t budget, std::size_t plateau_limit);

// CSV table: header "policy,seed,distinct_bugs,iterations,violations_total"
// plus one row per run.
std::string emit_compare_csv(const CompareResult& result);

// JSON summary of the comparison: the rows plus means and the tally.
std::string emit_compare_json(const CompareResult& result, bool pretty = false);

// The event log, one JSON object per line.
std::string emit_events_jsonl(const GuidanceState& state);

// How one input dimension of a toy program is generated: uniform draws in
// [min, max]; per-iteration jitter of up to ±jitter around the corpus
// value (0 = the dimension is categorical and only changes on mutation).
struct ParamSpec {
  std::int64_t min = -16;
  std::int64_t max = 16;
  std::int64_t jitter = 2;
};

// Drives a builtin toy fixture through one of its relations. Generation
// state is a small corpus of base input tuples; generate picks a corpus
// entry and jitters it, mutation replaces one entry with a fresh draw.
class ToyTargetAdapter : public TargetAdapter {
 public:
  ToyTargetAdapter(std::string fixture_name, std::size_t relation_index,
                   std::vector<ParamSpec> params, std::size_t corpus_size);

  std::string describe() const override;
  Granularity granularity() const override;
  void reset(SplitMix64& rng) override;
  PairObservation generate_pair(SplitMix64& rng,
                                std::size_t iteration) override;
  void mutate_state(SplitMix64& rng) override;
  std::string state_snapshot() const override;

 private:
  std::vector<std::int64_t> draw(SplitMix64& rng) const;

  std::string fixture_name_;
  std::size_t relation_index_;
  std::vector<ParamSpec> params_;
  std::size_t corpus_size_;
  std::vector<std::vector<std::int64_t>> corpus_;
};

// Adapter for a builtin fixture with stock generation ranges (operand
// dimensions in [-16, 16] with jitter 2; the calculator's operation
// selector categorical in [0, 7]), driving the fixture's first relation
// unless another index is given.
std::unique_ptr<TargetAdapter> make_adapter(const std::string& fixture_name,
                                            std::size_t relation_index = 0);

}  // namespace mccov

#endif  // MCCOV_GUIDANCE_HPP

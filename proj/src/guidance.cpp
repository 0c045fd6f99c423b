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

#include "mccov/guidance.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "mccov/toytarget.hpp"

namespace mccov {

using ordered_json = nlohmann::ordered_json;

const char* policy_name(PolicyKind kind) {
  return kind == PolicyKind::CCG ? "ccg" : "mcg";
}

PolicyKind policy_from_name(const std::string& name) {
  std::string lower;
  for (char c : name) {
    lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (lower == "ccg") return PolicyKind::CCG;
  if (lower == "mcg") return PolicyKind::MCG;
  throw McError(ErrorKind::InvalidArgument,
                "unknown feedback policy '" + name + "' (expected ccg or mcg)");
}

std::size_t observe(FeedbackPolicy& policy, const TestPair& pair) {
  CoverageMap feedback =
      policy.kind == PolicyKind::CCG
          ? unite(side_coverage(pair.side_a), side_coverage(pair.side_b))
          : mc_pair(pair);
  if (feedback.granularity() != policy.granularity) {
    throw McError(ErrorKind::GranularityMismatch,
                  std::string("pair '") + pair.id + "' provides " +
                      granularity_name(feedback.granularity()) +
                      " coverage but the policy tracks " +
                      granularity_name(policy.granularity));
  }

  std::size_t fresh = 0;
  for (const CoverageUnit& u : feedback.covered()) {
    if (policy.cumulative.insert(u).second) ++fresh;
  }
  policy.universe.insert(feedback.universe().begin(),
                         feedback.universe().end());
  return fresh;
}

GuidanceState drive(TargetAdapter& target, PolicyKind policy_kind,
                    std::size_t budget, std::size_t plateau_limit,
                    std::uint64_t seed) {
  if (budget < 1) {
    throw McError(ErrorKind::InvalidArgument, "budget must be at least 1");
  }
  if (plateau_limit < 1) {
    throw McError(ErrorKind::InvalidArgument,
                  "plateau limit must be at least 1");
  }

  GuidanceState state;
  state.policy = policy_kind;
  state.seed = seed;
  state.budget = budget;
  state.plateau_limit = plateau_limit;
  state.target = target.describe();

  SplitMix64 rng(seed);
  target.reset(rng);
  FeedbackPolicy policy{policy_kind, target.granularity(), {}, {}};

  for (std::size_t i = 0; i < budget; ++i) {
    GuidanceEvent event;
    event.iteration = i;
    try {
      PairObservation obs = target.generate_pair(rng, i);
      event.pair_id = obs.pair.id;
      event.new_units = observe(policy, obs.pair);
      event.violation = obs.violation;
      event.bug_ids = obs.bug_ids;

      if (event.new_units == 0) {
        ++state.plateau_counter;
      } else {
        state.plateau_counter = 0;
      }
      if (state.plateau_counter == plateau_limit) {
        target.mutate_state(rng);
        state.plateau_counter = 0;
        event.mutated = true;
      }

      if (obs.violation) {
        ++state.violations_total;
        for (const std::string& id : obs.bug_ids) {
          state.distinct_bugs.insert(id);
        }
      }
      state.pairs.push_back(std::move(obs.pair));
      state.events.push_back(std::move(event));
    } catch (const McError& e) {
      if (e.kind() != ErrorKind::TargetFailure) throw;
      state.aborted = true;
      state.abort_reason = e.what();
      break;
    }
  }

  state.iterations = state.events.size();
  state.cumulative = std::move(policy.cumulative);
  state.target_state = target.state_snapshot();
  return state;
}

CompareResult compare(TargetAdapter& target,
                      const std::vector<std::uint64_t>& seeds,
                      std::size_t budget, std::size_t plateau_limit) {
  if (seeds.size() < 2) {
    throw McError(ErrorKind::InvalidArgument,
                  "policy comparison needs at least two seeds");
  }

  CompareResult result;
  result.budget = budget;
  result.plateau_limit = plateau_limit;

  std::vector<std::size_t> ccg_bugs;
  std::vector<std::size_t> mcg_bugs;
  for (PolicyKind kind : {PolicyKind::CCG, PolicyKind::MCG}) {
    for (std::uint64_t seed : seeds) {
      GuidanceState run = drive(target, kind, budget, plateau_limit, seed);
      if (run.aborted) {
        throw McError(ErrorKind::TargetFailure,
                      "run (" + std::string(policy_name(kind)) + ", seed " +
                          std::to_string(seed) +
                          ") aborted: " + run.abort_reason);
      }
      result.rows.push_back(CompareRow{kind, seed, run.distinct_bugs.size(),
                                       run.iterations, run.violations_total});
      (kind == PolicyKind::CCG ? ccg_bugs : mcg_bugs)
          .push_back(run.distinct_bugs.size());
    }
  }

  double ccg_sum = 0.0;
  double mcg_sum = 0.0;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    ccg_sum += static_cast<double>(ccg_bugs[i]);
    mcg_sum += static_cast<double>(mcg_bugs[i]);
    if (mcg_bugs[i] > ccg_bugs[i]) {
      ++result.mcg_wins;
    } else if (mcg_bugs[i] < ccg_bugs[i]) {
      ++result.ccg_wins;
    } else {
      ++result.ties;
    }
  }
  result.ccg_mean_bugs = ccg_sum / static_cast<double>(seeds.size());
  result.mcg_mean_bugs = mcg_sum / static_cast<double>(seeds.size());
  return result;
}

std::string emit_compare_csv(const CompareResult& result) {
  std::string out = "policy,seed,distinct_bugs,iterations,violations_total\n";
  for (const CompareRow& row : result.rows) {
    out += std::string(policy_name(row.policy)) + "," +
           std::to_string(row.seed) + "," + std::to_string(row.distinct_bugs) +
           "," + std::to_string(row.iterations) + "," +
           std::to_string(row.violations_total) + "\n";
  }
  return out;
}

std::string emit_compare_json(const CompareResult& result, bool pretty) {
  ordered_json doc;
  doc["format"] = "mc-guidance";
  doc["version"] = 1;
  doc["budget"] = result.budget;
  doc["plateau_limit"] = result.plateau_limit;
  doc["rows"] = ordered_json::array();
  for (const CompareRow& row : result.rows) {
    ordered_json r;
    r["policy"] = policy_name(row.policy);
    r["seed"] = row.seed;
    r["distinct_bugs"] = row.distinct_bugs;
    r["iterations"] = row.iterations;
    r["violations_total"] = row.violations_total;
    doc["rows"].push_back(std::move(r));
  }
  doc["mean_distinct_bugs"]["ccg"] = result.ccg_mean_bugs;
  doc["mean_distinct_bugs"]["mcg"] = result.mcg_mean_bugs;
  doc["tally"]["mcg_wins"] = result.mcg_wins;
  doc["tally"]["ties"] = result.ties;
  doc["tally"]["ccg_wins"] = result.ccg_wins;
  return pretty ? doc.dump(2) : doc.dump();
}

std::string emit_events_jsonl(const GuidanceState& state) {
  std::string out;
  for (const GuidanceEvent& e : state.events) {
    ordered_json line;
    line["iteration"] = e.iteration;
    line["pair"] = e.pair_id;
    line["new_units"] = e.new_units;
    line["violation"] = e.violation;
    line["mutated"] = e.mutated;
    line["bugs"] = e.bug_ids;
    out += line.dump();
    out += "\n";
  }
  return out;
}

ToyTargetAdapter::ToyTargetAdapter(std::string fixture_name,
                                   std::size_t relation_index,
                                   std::vector<ParamSpec> params,
                                   std::size_t corpus_size)
    : fixture_name_(std::move(fixture_name)),
      relation_index_(relation_index),
      params_(std::move(params)),
      corpus_size_(corpus_size) {
  const toy::ToyFixture& fixture = toy::builtin(fixture_name_);
  if (relation_index_ >= fixture.relations.size()) {
    throw McError(ErrorKind::InvalidArgument,
                  "fixture '" + fixture_name_ + "' has " +
                      std::to_string(fixture.relations.size()) +
                      " relations, index " +
                      std::to_string(relation_index_) + " is out of range");
  }
  if (params_.size() != fixture.program.params.size()) {
    throw McError(ErrorKind::InvalidArgument,
                  "fixture '" + fixture_name_ + "' takes " +
                      std::to_string(fixture.program.params.size()) +
                      " inputs, got " + std::to_string(params_.size()) +
                      " parameter specs");
  }
  if (corpus_size_ < 1) {
    throw McError(ErrorKind::InvalidArgument,
                  "corpus size must be at least 1");
  }
}

std::string ToyTargetAdapter::describe() const {
  const toy::ToyFixture& fixture = toy::builtin(fixture_name_);
  return fixture_name_ + "/" + fixture.relations[relation_index_].name;
}

Granularity ToyTargetAdapter::granularity() const {
  return Granularity::Line;
}

std::vector<std::int64_t> ToyTargetAdapter::draw(SplitMix64& rng) const {
  std::vector<std::int64_t> tuple;
  tuple.reserve(params_.size());
  for (const ParamSpec& p : params_) {
    std::uint64_t width = static_cast<std::uint64_t>(p.max - p.min) + 1;
    tuple.push_back(p.min + static_cast<std::int64_t>(rng.bounded(width)));
  }
  return tuple;
}

void ToyTargetAdapter::reset(SplitMix64& rng) {
  corpus_.clear();
  for (std::size_t i = 0; i < corpus_size_; ++i) {
    corpus_.push_back(draw(rng));
  }
}

PairObservation ToyTargetAdapter::generate_pair(SplitMix64& rng,
                                                std::size_t iteration) {
  const toy::ToyFixture& fixture = toy::builtin(fixture_name_);
  const toy::MetamorphicRelation& relation =
      fixture.relations[relation_index_];

  std::vector<std::int64_t> inputs =
      corpus_[rng.bounded(static_cast<std::uint64_t>(corpus_.size()))];
  for (std::size_t i = 0; i < params_.size(); ++i) {
    const ParamSpec& p = params_[i];
    if (p.jitter == 0) continue;
    std::int64_t offset = static_cast<std::int64_t>(rng.bounded(
                              static_cast<std::uint64_t>(2 * p.jitter + 1))) -
                          p.jitter;
    inputs[i] = std::clamp(inputs[i] + offset, p.min, p.max);
  }

  std::vector<std::int64_t> derived = relation.derive(inputs);
  toy::ExecutionTrace ta = toy::run(fixture.program, inputs);
  toy::ExecutionTrace tb = toy::run(fixture.program, derived);

  PairObservation obs;
  obs.violation = !toy::relation_holds(relation.check, ta.outcome, tb.outcome);
  obs.pair = TestPair{"p" + std::to_string(iteration),
                      {std::move(ta.lines)},
                      {std::move(tb.lines)}};
  obs.bug_ids = toy::attribute_bugs(fixture, obs.pair);
  return obs;
}

void ToyTargetAdapter::mutate_state(SplitMix64& rng) {
  std::size_t slot = static_cast<std::size_t>(
      rng.bounded(static_cast<std::uint64_t>(corpus_.size())));
  corpus_[slot] = draw(rng);
}

std::string ToyTargetAdapter::state_snapshot() const {
  std::ostringstream out;
  out << "corpus[";
  for (std::size_t i = 0; i < corpus_.size(); ++i) {
    if (i > 0) out << " ";
    out << "(";
    for (std::size_t j = 0; j < corpus_[i].size(); ++j) {
      if (j > 0) out << ",";
      out << corpus_[i][j];
    }
    out << ")";
  }
  out << "]";
  return out.str();
}

std::unique_ptr<TargetAdapter> make_adapter(const std::string& fixture_name,
                                            std::size_t relation_index) {
  const toy::ToyFixture& fixture = toy::builtin(fixture_name);
  std::vector<ParamSpec> params;
  for (const std::string& param : fixture.program.params) {
    if (param == "op") {
      params.push_back(ParamSpec{0, 7, 0});
    } else {
      params.push_back(ParamSpec{-16, 16, 2});
    }
  }
  return std::make_unique<ToyTargetAdapter>(fixture_name, relation_index,
                                            std::move(params), 4);
}

}  // namespace mccov

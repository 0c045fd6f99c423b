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
// Built-in instrumented toy programs. A tiny expression/branch language
// (integer variables, arithmetic, comparisons, if/elif/else, return, no
// loops) whose interpreter records executed source lines the way a line
// coverage tool attributes them: reaching a conditional marks its header
// lines (every arm's condition line, the else line, closing-brace lines),
// while a body line is marked only when its statement runs. That makes the
// differential coverage of two runs exactly the body lines on which they
// took different paths.
//
// Fixtures carry documented seeded bugs, metamorphic relations, and a
// small mutation-operator set, so coverage-metric claims can be tested
// end to end without compiling and instrumenting real C targets.

#ifndef MCCOV_TOYTARGET_HPP
#define MCCOV_TOYTARGET_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "mccov/coverage.hpp"
#include "mccov/metamorphic.hpp"

namespace mccov {
namespace toy {

enum class OpCode {
  Add, Sub, Mul,            // arithmetic (64-bit wrapping)
  Lt, Le, Gt, Ge, Eq, Ne,   // comparisons (0/1)
  And, Or,                  // logical on 0/nonzero (no short-circuit)
  Neg                       // unary minus
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Const, Var, Unary, Binary } kind = Kind::Const;
  std::int64_t value = 0;  // Const
  std::string name;        // Var
  OpCode op = OpCode::Add; // Unary/Binary
  ExprPtr lhs;
  ExprPtr rhs;
};

ExprPtr cst(std::int64_t v);
ExprPtr var(std::string name);
ExprPtr un(OpCode op, ExprPtr e);
ExprPtr bin(OpCode op, ExprPtr l, ExprPtr r);

struct Stmt;

// One guarded arm of a conditional: "if (cond)" or "else if (cond)".
struct BranchArm {
  std::int64_t line = 0;  // The condition's source line.
  ExprPtr cond;
  std::vector<Stmt> body;
};

struct Stmt {
  enum class Kind { Assign, Return, Branch } kind = Kind::Return;
  std::int64_t line = 0;  // Assign/Return only; arms carry their own lines.
  std::string target;     // Assign
  ExprPtr expr;           // Assign/Return
  // Branch:
  std::vector<BranchArm> arms;
  std::int64_t else_line = 0;  // 0 = no else clause.
  std::vector<Stmt> else_body;
  // Closing-brace lines attributed to this conditional; marked on entry.
  std::vector<std::int64_t> skeleton_lines;
};

Stmt assign(std::int64_t line, std::string target, ExprPtr e);
Stmt ret(std::int64_t line, ExprPtr e);

struct ToyProgram {
  std::string name;
  std::vector<std::string> params;
  std::vector<Stmt> body;
  // Structural lines executed on every call (the function's closing brace).
  std::vector<std::int64_t> entry_lines;
};

// The run's result. Arithmetic wraps at 64 bits; `overflowed` reports that
// wrapping happened somewhere, as a distinct outcome rather than an error,
// so relations over overflowing runs stay expressible.
struct Outcome {
  std::int64_t value = 0;
  bool overflowed = false;

  bool operator==(const Outcome&) const = default;
};

struct ExecutionTrace {
  Outcome outcome;
  CoverageMap lines;     // file = program name, loc = statement line
  CoverageMap branches;  // one unit per conditional outcome
};

// All statement lines of the program (the line-coverage universe).
UnitSet program_lines(const ToyProgram& p);
// All conditional outcomes: unit (first arm's line, conditional ordinal,
// outcome index) per conditional, outcome arms.size() being the else arm.
UnitSet program_branches(const ToyProgram& p);

// Precomputed universes and conditional numbering of one program object,
// for callers that execute the same program many times. A layout is tied
// to the ToyProgram instance it was computed from; do not reuse it for a
// copy.
struct ProgramLayout {
  std::shared_ptr<const UnitSet> lines;
  std::shared_ptr<const UnitSet> branches;
  std::shared_ptr<const std::map<const Stmt*, std::size_t>> ordinals;
};

ProgramLayout layout_of(const ToyProgram& p);

// Executes the program. Deterministic; ArityMismatch when the input count
// differs from the parameter list. The layout overload skips recomputing
// the universes and shares them into the returned trace's maps.
ExecutionTrace run(const ToyProgram& p, const std::vector<std::int64_t>& inputs);
ExecutionTrace run(const ToyProgram& p, const std::vector<std::int64_t>& inputs,
                   const ProgramLayout& layout);

// Renders the numbered source listing (for dump-program and reports).
std::string render_program(const ToyProgram& p);

enum class RelationCheck { Equal, GreaterOrEqual };

// Equal compares the full outcome (value and overflow flag);
// GreaterOrEqual compares values.
bool relation_holds(RelationCheck check, const Outcome& a, const Outcome& b);

struct MetamorphicRelation {
  std::string name;
  std::string description;
  // Derives the second side's inputs from the first side's. Deterministic.
  std::function<std::vector<std::int64_t>(const std::vector<std::int64_t>&)>
      derive;
  RelationCheck check = RelationCheck::Equal;
};

struct Violation {
  std::string pair_id;
  std::vector<std::int64_t> inputs_a;
  std::vector<std::int64_t> inputs_b;
  Outcome out_a;
  Outcome out_b;
};

struct RelationEval {
  std::vector<Violation> violations;
  std::vector<TestPair> pairs;      // line-granularity coverage per seed
  std::vector<std::string> errors;  // per-seed run failures, batch continues
};

// Runs both sides of the relation on every seed tuple and checks the
// outcomes. Seed tuples that fail to run are recorded in `errors` without
// aborting the rest. InvalidArgument on an empty seed list.
RelationEval evaluate_relation(const ToyProgram& p,
                               const MetamorphicRelation& r,
                               const std::vector<std::vector<std::int64_t>>& seeds);

enum class MutationOp { ArithSwap, RelSwap, ConstOff };

const char* mutation_op_name(MutationOp op);

// One small syntactic change: ArithSwap flips the first + or − of the
// statement's expression, RelSwap flips the first comparison (< to <=,
// > to >=, == to !=, and back), ConstOff adds 1 to the first literal of an
// assign/return (wrapping the whole expression in +1 when it has none).
struct Mutant {
  std::string id;  // "<program>:<line>:<arith|rel|const>", stable.
  std::string program;
  std::int64_t line = 0;
  MutationOp op = MutationOp::ArithSwap;
};

// All mutants in source-line order, ArithSwap/RelSwap/ConstOff per line.
std::vector<Mutant> enumerate_mutants(const ToyProgram& p);

// Returns a copy of p with exactly the mutant's statement changed.
// InvalidArgument when the mutant does not belong to p.
ToyProgram apply_mutant(const ToyProgram& p, const Mutant& m);

struct MutantResult {
  Mutant mutant;
  bool killed = false;
};

struct MutationScore {
  std::size_t killed = 0;
  std::size_t total = 0;
  std::vector<MutantResult> results;

  double score() const {
    return total == 0 ? 0.0
                      : static_cast<double>(killed) / static_cast<double>(total);
  }
};

// A mutant is killed when evaluate_relation on the mutated program yields
// at least one violation. `only_ids` restricts scoring to those mutants
// (empty = all). NoMutants when nothing is scored.
MutationScore mutation_score(const ToyProgram& p, const MetamorphicRelation& r,
                             const std::vector<std::vector<std::int64_t>>& seeds,
                             const std::vector<std::string>& only_ids = {});

struct SeededBug {
  std::string id;
  std::string description;
  // The buggy statement lines; a violating pair is attributed to this bug
  // when its differential coverage touches one of them.
  std::set<std::int64_t> lines;
};

struct ToyFixture {
  ToyProgram program;
  std::vector<MetamorphicRelation> relations;
  std::vector<SeededBug> bugs;
  std::vector<std::vector<std::int64_t>> default_seeds;
  // Mutants of the fixed variant shown in the demo's score column.
  std::vector<std::string> demo_mutant_ids;
  // Name of the bug-free sibling fixture; empty when there is none.
  std::string fixed_variant;
};

// Built-in fixtures: listing1, listing1_fixed, abs_mr, minieval,
// minieval_fixed. UnknownFixture otherwise.
const ToyFixture& builtin(const std::string& name);
std::vector<std::string> builtin_names();

// Bug ids whose documented lines intersect the pair's differential
// coverage — the ground-truth attribution for a violating pair.
std::vector<std::string> attribute_bugs(const ToyFixture& fixture,
                                        const TestPair& pair);

}  // namespace toy
}  // namespace mccov

#endif  // MCCOV_TOYTARGET_HPP

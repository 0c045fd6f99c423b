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
// Built-in toy fixtures:
//
//   listing1        two-way branch computing |x - y|, off-by-one seeded in
//                   the not-greater arm; the swap relation separates the
//                   arms while the shift relation never does.
//   listing1_fixed  the same program without the seeded bug; target of the
//                   demo mutation score.
//   abs_mr          three-way branch computing |x|, wrong constant seeded
//                   in the zero arm; the negate relation never reaches the
//                   zero arm differentially, the vs-zero relation does.
//   minieval        a tiny calculator with eight commutative operations.
//                   Each operation computes its value through an
//                   order-sensitive branch (same result, different path
//                   when the operands swap) plus a symmetric filler branch,
//                   and hides one bug behind a magic-value guard on the
//                   first operand only. Built for guidance-loop studies.
//   minieval_fixed  minieval without the guards, commutative on the whole
//                   input domain.

#include <map>
#include <utility>

#include "mccov/toytarget.hpp"

namespace mccov {
namespace toy {

namespace {

Stmt branch2(std::int64_t cond_line, ExprPtr cond, std::vector<Stmt> then_body,
             std::int64_t else_line, std::vector<Stmt> else_body,
             std::vector<std::int64_t> skeleton) {
  Stmt s;
  s.kind = Stmt::Kind::Branch;
  s.arms = {BranchArm{cond_line, std::move(cond), std::move(then_body)}};
  s.else_line = else_line;
  s.else_body = std::move(else_body);
  s.skeleton_lines = std::move(skeleton);
  return s;
}

MetamorphicRelation swap_two(std::string description) {
  return MetamorphicRelation{
      "swap", std::move(description),
      [](const std::vector<std::int64_t>& in) {
        return std::vector<std::int64_t>{in.at(1), in.at(0)};
      },
      RelationCheck::Equal};
}

ToyFixture make_listing1(bool fixed) {
  ToyProgram p;
  p.name = fixed ? "listing1_fixed" : "listing1";
  p.params = {"x", "y"};

  ExprPtr greater_value = bin(OpCode::Sub, var("x"), var("y"));
  ExprPtr other_value = bin(OpCode::Sub, var("y"), var("x"));
  if (!fixed) other_value = bin(OpCode::Add, other_value, cst(1));

  p.body.push_back(branch2(2, bin(OpCode::Gt, var("x"), var("y")),
                           {ret(3, greater_value)}, 4, {ret(5, other_value)},
                           {6}));
  p.entry_lines = {7};

  ToyFixture f;
  f.program = std::move(p);
  f.relations.push_back(
      swap_two("the difference magnitude is unchanged when the arguments swap"));
  f.relations.push_back(MetamorphicRelation{
      "shift", "the difference is unchanged when both arguments shift by one",
      [](const std::vector<std::int64_t>& in) {
        return std::vector<std::int64_t>{in.at(0) + 1, in.at(1) + 1};
      },
      RelationCheck::Equal});
  if (!fixed) {
    f.bugs.push_back(SeededBug{
        "listing1:off-by-one", "the not-greater arm adds a stray 1", {5}});
  }
  f.default_seeds = {{2, 3}, {6, 2}};
  f.demo_mutant_ids = fixed ? std::vector<std::string>{}
                            : std::vector<std::string>{"listing1_fixed:5:const"};
  f.fixed_variant = fixed ? "" : "listing1_fixed";
  return f;
}

ToyFixture make_abs_mr() {
  ToyProgram p;
  p.name = "abs_mr";
  p.params = {"x"};

  Stmt s;
  s.kind = Stmt::Kind::Branch;
  s.arms = {
      BranchArm{2, bin(OpCode::Lt, var("x"), cst(0)),
                {ret(3, un(OpCode::Neg, var("x")))}},
      BranchArm{4, bin(OpCode::Eq, var("x"), cst(0)), {ret(5, cst(3))}},
  };
  s.else_line = 6;
  s.else_body = {ret(7, var("x"))};
  p.body.push_back(std::move(s));

  ToyFixture f;
  f.program = std::move(p);
  f.relations.push_back(MetamorphicRelation{
      "negate", "the absolute value is unchanged when the argument negates",
      [](const std::vector<std::int64_t>& in) {
        return std::vector<std::int64_t>{-in.at(0)};
      },
      RelationCheck::Equal});
  f.relations.push_back(MetamorphicRelation{
      "vs-zero", "every absolute value is at least the absolute value of zero",
      [](const std::vector<std::int64_t>&) {
        return std::vector<std::int64_t>{0};
      },
      RelationCheck::GreaterOrEqual});
  f.bugs.push_back(
      SeededBug{"abs_mr:zero-case", "the zero arm returns 3 instead of 0", {5}});
  f.default_seeds = {{3}, {-5}, {2}};
  return f;
}

// One calculator operation: the magic value guarding its seeded bug, the
// order-sensitive condition of its value branch, the value expression (the
// else arm evaluates it with the operands swapped, so the operation stays
// commutative), and a symmetric filler condition.
struct CalcOp {
  std::int64_t magic;
  ExprPtr asym_cond;
  ExprPtr value;
  ExprPtr value_swapped;
  ExprPtr filler_cond;
};

// Value buckets per operation: a chain dispatching on a + b, one arm per
// sum in [-kBucketRange, kBucketRange]. The condition is symmetric in the
// operands, so the chain never contributes differential coverage; its arm
// bodies are a long tail of line-coverage novelty, the shape real targets
// have and union-coverage feedback keeps chasing.
constexpr std::int64_t kBucketRange = 16;
constexpr std::int64_t kBucketCount = 2 * kBucketRange + 1;
// arm + guard(3) + value branch(5) + filler(6) + buckets(2 per arm, then
// else + else body + closing brace) + return, per operation block.
constexpr std::int64_t kOpSpan = 16 + 2 * kBucketCount + 3;

std::vector<CalcOp> calc_ops() {
  ExprPtr a = var("a");
  ExprPtr b = var("b");
  ExprPtr a2 = bin(OpCode::Mul, a, a);
  ExprPtr b2 = bin(OpCode::Mul, b, b);
  ExprPtr sum = bin(OpCode::Add, a, b);
  ExprPtr prod = bin(OpCode::Mul, a, b);

  std::vector<CalcOp> ops;
  // add
  ops.push_back(CalcOp{7, bin(OpCode::Lt, a, b), bin(OpCode::Add, a, b),
                       bin(OpCode::Add, b, a), bin(OpCode::Gt, sum, cst(6))});
  // mul
  ops.push_back(CalcOp{-5, bin(OpCode::Gt, a, b), bin(OpCode::Mul, a, b),
                       bin(OpCode::Mul, b, a), bin(OpCode::Lt, prod, cst(0))});
  // min
  ops.push_back(CalcOp{11, bin(OpCode::Lt, a, b), a, b,
                       bin(OpCode::Lt, sum, cst(-4))});
  // max
  ops.push_back(CalcOp{-13, bin(OpCode::Gt, a, b), a, b,
                       bin(OpCode::Gt, prod, cst(20))});
  // absolute difference
  ops.push_back(CalcOp{3, bin(OpCode::Lt, a, b), bin(OpCode::Sub, b, a),
                       bin(OpCode::Sub, a, b), bin(OpCode::Gt, sum, cst(0))});
  // sum of squares
  ops.push_back(CalcOp{-9, bin(OpCode::Lt, a, b), bin(OpCode::Add, a2, b2),
                       bin(OpCode::Add, b2, a2),
                       bin(OpCode::Gt, bin(OpCode::Add, a2, b2), cst(100))});
  // absolute difference of squares
  ops.push_back(CalcOp{13, bin(OpCode::Lt, a2, b2), bin(OpCode::Sub, b2, a2),
                       bin(OpCode::Sub, a2, b2), bin(OpCode::Eq, sum, cst(3))});
  // three times the smaller plus twice the larger
  ops.push_back(CalcOp{-2, bin(OpCode::Lt, a, b),
                       bin(OpCode::Add, bin(OpCode::Mul, a, cst(3)),
                           bin(OpCode::Mul, b, cst(2))),
                       bin(OpCode::Add, bin(OpCode::Mul, b, cst(3)),
                           bin(OpCode::Mul, a, cst(2))),
                       bin(OpCode::Eq, prod, cst(12))});
  return ops;
}

std::int64_t calc_bug_line(std::size_t op_index) {
  return 2 + kOpSpan * static_cast<std::int64_t>(op_index) + 2;
}

ToyFixture make_minieval(bool fixed) {
  std::vector<CalcOp> ops = calc_ops();

  ToyProgram p;
  p.name = fixed ? "minieval_fixed" : "minieval";
  p.params = {"op", "a", "b"};

  Stmt dispatch;
  dispatch.kind = Stmt::Kind::Branch;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const CalcOp& o = ops[k];
    std::int64_t base = 2 + kOpSpan * static_cast<std::int64_t>(k);

    std::vector<Stmt> body;
    if (!fixed) {
      body.push_back(branch2(base + 1,
                             bin(OpCode::Eq, var("a"), cst(o.magic)),
                             {ret(base + 2, cst(900 + static_cast<std::int64_t>(k)))},
                             0, {}, {base + 3}));
    }
    body.push_back(branch2(base + 4, o.asym_cond,
                           {assign(base + 5, "t", o.value)}, base + 6,
                           {assign(base + 7, "t", o.value_swapped)},
                           {base + 8}));
    body.push_back(branch2(
        base + 9, o.filler_cond,
        {assign(base + 10, "u", cst(1)),
         assign(base + 11, "u", bin(OpCode::Add, var("u"), cst(1)))},
        base + 12, {assign(base + 13, "u", cst(0))}, {base + 14}));

    Stmt buckets;
    buckets.kind = Stmt::Kind::Branch;
    ExprPtr sum = bin(OpCode::Add, var("a"), var("b"));
    for (std::int64_t i = 0; i < kBucketCount; ++i) {
      std::int64_t s = i - kBucketRange;
      buckets.arms.push_back(
          BranchArm{base + 15 + 2 * i, bin(OpCode::Eq, sum, cst(s)),
                    {assign(base + 16 + 2 * i, "h", cst(s))}});
    }
    std::int64_t bucket_else = base + 15 + 2 * kBucketCount;
    buckets.else_line = bucket_else;
    buckets.else_body = {assign(bucket_else + 1, "h", cst(99))};
    buckets.skeleton_lines = {bucket_else + 2};
    body.push_back(std::move(buckets));

    body.push_back(ret(bucket_else + 3, bin(OpCode::Add, var("t"), var("u"))));

    dispatch.arms.push_back(
        BranchArm{base,
                  bin(OpCode::Eq, var("op"), cst(static_cast<std::int64_t>(k))),
                  std::move(body)});
  }
  std::int64_t after = 2 + kOpSpan * static_cast<std::int64_t>(ops.size());
  dispatch.else_line = after;
  dispatch.else_body = {ret(after + 1, cst(0))};
  dispatch.skeleton_lines = {after + 2};
  p.body.push_back(std::move(dispatch));
  p.entry_lines = {after + 3};

  ToyFixture f;
  f.program = std::move(p);
  f.relations.push_back(MetamorphicRelation{
      "swap", "every operation is commutative in its two operands",
      [](const std::vector<std::int64_t>& in) {
        return std::vector<std::int64_t>{in.at(0), in.at(2), in.at(1)};
      },
      RelationCheck::Equal});
  if (!fixed) {
    static const char* kOpNames[] = {"add", "mul",   "min",    "max",
                                     "absdiff", "sumsq", "sqdiff", "mix"};
    for (std::size_t k = 0; k < ops.size(); ++k) {
      f.bugs.push_back(SeededBug{
          "minieval:" + std::string(kOpNames[k]) + "-guard",
          std::string("operation ") + kOpNames[k] +
              " returns a wrong value when its first operand equals " +
              std::to_string(ops[k].magic),
          {calc_bug_line(k)}});
    }
  }
  f.default_seeds = {{0, 2, 9}, {1, -3, 4}, {4, 7, 1}, {6, -2, 5}};
  f.fixed_variant = fixed ? "" : "minieval_fixed";
  return f;
}

}  // namespace

const ToyFixture& builtin(const std::string& name) {
  static const std::map<std::string, ToyFixture> fixtures = [] {
    std::map<std::string, ToyFixture> m;
    m.emplace("listing1", make_listing1(false));
    m.emplace("listing1_fixed", make_listing1(true));
    m.emplace("abs_mr", make_abs_mr());
    m.emplace("minieval", make_minieval(false));
    m.emplace("minieval_fixed", make_minieval(true));
    return m;
  }();
  auto it = fixtures.find(name);
  if (it == fixtures.end()) {
    std::string names;
    for (const auto& [n, f] : fixtures) {
      if (!names.empty()) names += ", ";
      names += n;
    }
    throw McError(ErrorKind::UnknownFixture,
                  "no builtin fixture named '" + name + "' (available: " +
                      names + ")");
  }
  return it->second;
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> names = {"abs_mr", "listing1", "listing1_fixed",
                                    "minieval", "minieval_fixed"};
  return names;
}

}  // namespace toy
}  // namespace mccov

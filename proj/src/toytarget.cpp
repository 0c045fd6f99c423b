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

#include "mccov/toytarget.hpp"

#include <iomanip>
#include <map>
#include <sstream>
#include <utility>

namespace mccov {
namespace toy {

ExprPtr cst(std::int64_t v) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Const;
  e->value = v;
  return e;
}

ExprPtr var(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Var;
  e->name = std::move(name);
  return e;
}

ExprPtr un(OpCode op, ExprPtr inner) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Unary;
  e->op = op;
  e->lhs = std::move(inner);
  return e;
}

ExprPtr bin(OpCode op, ExprPtr l, ExprPtr r) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Binary;
  e->op = op;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}

Stmt assign(std::int64_t line, std::string target, ExprPtr e) {
  Stmt s;
  s.kind = Stmt::Kind::Assign;
  s.line = line;
  s.target = std::move(target);
  s.expr = std::move(e);
  return s;
}

Stmt ret(std::int64_t line, ExprPtr e) {
  Stmt s;
  s.kind = Stmt::Kind::Return;
  s.line = line;
  s.expr = std::move(e);
  return s;
}

namespace {

// Wrapping arithmetic with a sticky overflow flag.
struct Arith {
  bool overflowed = false;

  std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) overflowed = true;
    return r;
  }
  std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) overflowed = true;
    return r;
  }
  std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) overflowed = true;
    return r;
  }
  std::int64_t neg(std::int64_t a) { return sub(0, a); }
};

void number_branches(const std::vector<Stmt>& block, std::size_t* next,
                     std::map<const Stmt*, std::size_t>* ordinals) {
  for (const Stmt& s : block) {
    if (s.kind != Stmt::Kind::Branch) continue;
    (*ordinals)[&s] = (*next)++;
    for (const BranchArm& arm : s.arms) {
      number_branches(arm.body, next, ordinals);
    }
    number_branches(s.else_body, next, ordinals);
  }
}

struct Interp {
  const ToyProgram& program;
  std::map<std::string, std::int64_t> env;
  UnitSet covered_lines;
  UnitSet covered_branches;
  Arith arith;
  bool returned = false;
  std::int64_t result = 0;
  // Ordinal of each conditional in static walk order; keys branch units so
  // every conditional owns distinct outcome slots, and matches the
  // numbering program_branches uses for the universe.
  std::map<const Stmt*, std::size_t> branch_ordinals;

  explicit Interp(const ToyProgram& p) : program(p) {
    std::size_t next = 0;
    number_branches(p.body, &next, &branch_ordinals);
  }

  void mark_line(std::int64_t line) {
    covered_lines.insert(line_unit(program.name, line));
  }

  std::int64_t eval(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Const:
        return e.value;
      case Expr::Kind::Var: {
        auto it = env.find(e.name);
        if (it == env.end()) {
          throw McError(ErrorKind::InvalidArgument,
                        "program '" + program.name +
                            "' reads undefined variable '" + e.name + "'");
        }
        return it->second;
      }
      case Expr::Kind::Unary:
        if (e.op == OpCode::Neg) return arith.neg(eval(*e.lhs));
        throw McError(ErrorKind::InvalidArgument, "bad unary operator");
      case Expr::Kind::Binary: {
        std::int64_t a = eval(*e.lhs);
        std::int64_t b = eval(*e.rhs);
        switch (e.op) {
          case OpCode::Add: return arith.add(a, b);
          case OpCode::Sub: return arith.sub(a, b);
          case OpCode::Mul: return arith.mul(a, b);
          case OpCode::Lt: return a < b ? 1 : 0;
          case OpCode::Le: return a <= b ? 1 : 0;
          case OpCode::Gt: return a > b ? 1 : 0;
          case OpCode::Ge: return a >= b ? 1 : 0;
          case OpCode::Eq: return a == b ? 1 : 0;
          case OpCode::Ne: return a != b ? 1 : 0;
          case OpCode::And: return (a != 0 && b != 0) ? 1 : 0;
          case OpCode::Or: return (a != 0 || b != 0) ? 1 : 0;
          case OpCode::Neg: break;
        }
        throw McError(ErrorKind::InvalidArgument, "bad binary operator");
      }
    }
    throw McError(ErrorKind::InvalidArgument, "bad expression");
  }

  void exec_block(const std::vector<Stmt>& block) {
    for (const Stmt& s : block) {
      if (returned) return;
      exec(s);
    }
  }

  void exec(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::Assign:
        mark_line(s.line);
        env[s.target] = eval(*s.expr);
        return;
      case Stmt::Kind::Return:
        mark_line(s.line);
        result = eval(*s.expr);
        returned = true;
        return;
      case Stmt::Kind::Branch: {
        std::size_t ordinal = branch_ordinals.at(&s);
        // Reaching the conditional marks all of its header lines: every
        // arm's condition line, the else line, and the closing braces.
        // Only the chosen body's lines differ between two runs, which is
        // what makes body lines the differential-coverage signal.
        for (const BranchArm& arm : s.arms) mark_line(arm.line);
        if (s.else_line != 0) mark_line(s.else_line);
        for (std::int64_t l : s.skeleton_lines) mark_line(l);

        std::int64_t branch_line = s.arms.front().line;
        for (std::size_t i = 0; i < s.arms.size(); ++i) {
          if (eval(*s.arms[i].cond) != 0) {
            covered_branches.insert(
                branch_unit(program.name, branch_line,
                            static_cast<std::int64_t>(ordinal),
                            static_cast<std::int64_t>(i)));
            exec_block(s.arms[i].body);
            return;
          }
        }
        covered_branches.insert(
            branch_unit(program.name, branch_line,
                        static_cast<std::int64_t>(ordinal),
                        static_cast<std::int64_t>(s.arms.size())));
        exec_block(s.else_body);
        return;
      }
    }
  }
};

void collect_lines(const std::vector<Stmt>& block, const std::string& file,
                   UnitSet* out) {
  for (const Stmt& s : block) {
    switch (s.kind) {
      case Stmt::Kind::Assign:
      case Stmt::Kind::Return:
        out->insert(line_unit(file, s.line));
        break;
      case Stmt::Kind::Branch:
        for (const BranchArm& arm : s.arms) {
          out->insert(line_unit(file, arm.line));
          collect_lines(arm.body, file, out);
        }
        if (s.else_line != 0) out->insert(line_unit(file, s.else_line));
        collect_lines(s.else_body, file, out);
        for (std::int64_t l : s.skeleton_lines) out->insert(line_unit(file, l));
        break;
    }
  }
}

void collect_branches(const std::vector<Stmt>& block, const std::string& file,
                      std::size_t* ordinal, UnitSet* out) {
  for (const Stmt& s : block) {
    if (s.kind != Stmt::Kind::Branch) continue;
    std::size_t mine = (*ordinal)++;
    std::int64_t branch_line = s.arms.front().line;
    for (std::size_t i = 0; i <= s.arms.size(); ++i) {
      out->insert(branch_unit(file, branch_line,
                              static_cast<std::int64_t>(mine),
                              static_cast<std::int64_t>(i)));
    }
    for (const BranchArm& arm : s.arms) {
      collect_branches(arm.body, file, ordinal, out);
    }
    collect_branches(s.else_body, file, ordinal, out);
  }
}

}  // namespace

UnitSet program_lines(const ToyProgram& p) {
  UnitSet out;
  collect_lines(p.body, p.name, &out);
  for (std::int64_t l : p.entry_lines) out.insert(line_unit(p.name, l));
  return out;
}

UnitSet program_branches(const ToyProgram& p) {
  UnitSet out;
  std::size_t ordinal = 0;
  collect_branches(p.body, p.name, &ordinal, &out);
  return out;
}

ExecutionTrace run(const ToyProgram& p, const std::vector<std::int64_t>& inputs) {
  if (inputs.size() != p.params.size()) {
    throw McError(ErrorKind::ArityMismatch,
                  "program '" + p.name + "' takes " +
                      std::to_string(p.params.size()) + " inputs, got " +
                      std::to_string(inputs.size()));
  }
  Interp interp(p);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    interp.env[p.params[i]] = inputs[i];
  }
  for (std::int64_t l : p.entry_lines) interp.mark_line(l);
  interp.exec_block(p.body);

  return ExecutionTrace{
      Outcome{interp.result, interp.arith.overflowed},
      CoverageMap(Granularity::Line, std::move(interp.covered_lines),
                  program_lines(p)),
      CoverageMap(Granularity::Branch, std::move(interp.covered_branches),
                  program_branches(p))};
}

bool relation_holds(RelationCheck check, const Outcome& a, const Outcome& b) {
  switch (check) {
    case RelationCheck::Equal:
      return a == b;
    case RelationCheck::GreaterOrEqual:
      return a.value >= b.value;
  }
  return false;
}

RelationEval evaluate_relation(
    const ToyProgram& p, const MetamorphicRelation& r,
    const std::vector<std::vector<std::int64_t>>& seeds) {
  if (seeds.empty()) {
    throw McError(ErrorKind::InvalidArgument,
                  "relation evaluation needs at least one seed tuple");
  }
  RelationEval eval;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    std::string pair_id = r.name + "#" + std::to_string(i);
    try {
      const std::vector<std::int64_t>& in_a = seeds[i];
      std::vector<std::int64_t> in_b = r.derive(in_a);
      ExecutionTrace ta = run(p, in_a);
      ExecutionTrace tb = run(p, in_b);
      if (!relation_holds(r.check, ta.outcome, tb.outcome)) {
        eval.violations.push_back(
            Violation{pair_id, in_a, in_b, ta.outcome, tb.outcome});
      }
      eval.pairs.push_back(
          TestPair{pair_id, {std::move(ta.lines)}, {std::move(tb.lines)}});
    } catch (const std::exception& e) {
      eval.errors.push_back(pair_id + ": " + e.what());
    }
  }
  return eval;
}

const char* mutation_op_name(MutationOp op) {
  switch (op) {
    case MutationOp::ArithSwap: return "arith";
    case MutationOp::RelSwap: return "rel";
    case MutationOp::ConstOff: return "const";
  }
  return "unknown";
}

namespace {

// Rewrites the first node satisfying `flip` in pre-order; *done flags
// whether a rewrite happened.
ExprPtr rewrite_first(const ExprPtr& e, bool* done,
                      const std::function<ExprPtr(const Expr&)>& flip) {
  if (*done || e == nullptr) return e;
  if (ExprPtr replaced = flip(*e)) {
    *done = true;
    return replaced;
  }
  if (e->kind == Expr::Kind::Unary || e->kind == Expr::Kind::Binary) {
    ExprPtr lhs = rewrite_first(e->lhs, done, flip);
    ExprPtr rhs = e->kind == Expr::Kind::Binary
                      ? rewrite_first(e->rhs, done, flip)
                      : e->rhs;
    if (lhs != e->lhs || rhs != e->rhs) {
      auto copy = std::make_shared<Expr>(*e);
      copy->lhs = std::move(lhs);
      copy->rhs = std::move(rhs);
      return copy;
    }
  }
  return e;
}

ExprPtr flip_arith(const Expr& e) {
  if (e.kind != Expr::Kind::Binary) return nullptr;
  if (e.op != OpCode::Add && e.op != OpCode::Sub) return nullptr;
  auto copy = std::make_shared<Expr>(e);
  copy->op = e.op == OpCode::Add ? OpCode::Sub : OpCode::Add;
  return copy;
}

ExprPtr flip_rel(const Expr& e) {
  if (e.kind != Expr::Kind::Binary) return nullptr;
  OpCode swapped;
  switch (e.op) {
    case OpCode::Lt: swapped = OpCode::Le; break;
    case OpCode::Le: swapped = OpCode::Lt; break;
    case OpCode::Gt: swapped = OpCode::Ge; break;
    case OpCode::Ge: swapped = OpCode::Gt; break;
    case OpCode::Eq: swapped = OpCode::Ne; break;
    case OpCode::Ne: swapped = OpCode::Eq; break;
    default: return nullptr;
  }
  auto copy = std::make_shared<Expr>(e);
  copy->op = swapped;
  return copy;
}

ExprPtr flip_const(const Expr& e) {
  if (e.kind != Expr::Kind::Const) return nullptr;
  return cst(e.value + 1);
}

// Applies `op` to the expression; null when the operator has no site.
ExprPtr mutate_expr(const ExprPtr& e, MutationOp op, bool is_condition) {
  bool done = false;
  switch (op) {
    case MutationOp::ArithSwap:
      { ExprPtr out = rewrite_first(e, &done, flip_arith);
        return done ? out : nullptr; }
    case MutationOp::RelSwap:
      { ExprPtr out = rewrite_first(e, &done, flip_rel);
        return done ? out : nullptr; }
    case MutationOp::ConstOff: {
      // Off-by-one makes sense on computed values, not on guard
      // conditions, where +1 on a boolean is noise.
      if (is_condition) return nullptr;
      ExprPtr out = rewrite_first(e, &done, flip_const);
      if (done) return out;
      return bin(OpCode::Add, e, cst(1));
    }
  }
  return nullptr;
}

constexpr MutationOp kOpsInOrder[] = {MutationOp::ArithSwap,
                                      MutationOp::RelSwap,
                                      MutationOp::ConstOff};

// Visits every mutable site (condition or assign/return expression) in
// source-line order.
void walk_sites(
    const std::vector<Stmt>& block,
    const std::function<void(std::int64_t, const ExprPtr&, bool)>& visit) {
  for (const Stmt& s : block) {
    switch (s.kind) {
      case Stmt::Kind::Assign:
      case Stmt::Kind::Return:
        visit(s.line, s.expr, false);
        break;
      case Stmt::Kind::Branch:
        for (const BranchArm& arm : s.arms) {
          visit(arm.line, arm.cond, true);
          walk_sites(arm.body, visit);
        }
        walk_sites(s.else_body, visit);
        break;
    }
  }
}

// Rebuilds the block with the statement at `line` mutated by `op`.
std::vector<Stmt> mutate_block(const std::vector<Stmt>& block,
                               std::int64_t line, MutationOp op,
                               bool* applied) {
  std::vector<Stmt> out;
  out.reserve(block.size());
  for (const Stmt& s : block) {
    Stmt copy = s;
    switch (s.kind) {
      case Stmt::Kind::Assign:
      case Stmt::Kind::Return:
        if (!*applied && s.line == line) {
          if (ExprPtr mutated = mutate_expr(s.expr, op, false)) {
            copy.expr = mutated;
            *applied = true;
          }
        }
        break;
      case Stmt::Kind::Branch:
        for (BranchArm& arm : copy.arms) {
          if (!*applied && arm.line == line) {
            if (ExprPtr mutated = mutate_expr(arm.cond, op, true)) {
              arm.cond = mutated;
              *applied = true;
            }
          }
          arm.body = mutate_block(arm.body, line, op, applied);
        }
        copy.else_body = mutate_block(s.else_body, line, op, applied);
        break;
    }
    out.push_back(std::move(copy));
  }
  return out;
}

}  // namespace

std::vector<Mutant> enumerate_mutants(const ToyProgram& p) {
  std::vector<Mutant> out;
  walk_sites(p.body, [&](std::int64_t line, const ExprPtr& e, bool is_cond) {
    for (MutationOp op : kOpsInOrder) {
      if (mutate_expr(e, op, is_cond) != nullptr) {
        out.push_back(Mutant{p.name + ":" + std::to_string(line) + ":" +
                                 mutation_op_name(op),
                             p.name, line, op});
      }
    }
  });
  return out;
}

ToyProgram apply_mutant(const ToyProgram& p, const Mutant& m) {
  if (m.program != p.name) {
    throw McError(ErrorKind::InvalidArgument,
                  "mutant '" + m.id + "' does not belong to program '" +
                      p.name + "'");
  }
  bool applied = false;
  ToyProgram mutated = p;
  mutated.body = mutate_block(p.body, m.line, m.op, &applied);
  if (!applied) {
    throw McError(ErrorKind::InvalidArgument,
                  "mutant '" + m.id + "' has no site in program '" + p.name +
                      "'");
  }
  return mutated;
}

MutationScore mutation_score(const ToyProgram& p, const MetamorphicRelation& r,
                             const std::vector<std::vector<std::int64_t>>& seeds,
                             const std::vector<std::string>& only_ids) {
  std::vector<Mutant> mutants = enumerate_mutants(p);
  if (!only_ids.empty()) {
    std::vector<Mutant> filtered;
    for (const Mutant& m : mutants) {
      for (const std::string& id : only_ids) {
        if (m.id == id) filtered.push_back(m);
      }
    }
    mutants = std::move(filtered);
  }
  if (mutants.empty()) {
    throw McError(ErrorKind::NoMutants,
                  "program '" + p.name + "' yields no mutants to score");
  }

  MutationScore score;
  score.total = mutants.size();
  for (const Mutant& m : mutants) {
    ToyProgram mutated = apply_mutant(p, m);
    RelationEval eval = evaluate_relation(mutated, r, seeds);
    bool killed = !eval.violations.empty();
    if (killed) ++score.killed;
    score.results.push_back(MutantResult{m, killed});
  }
  return score;
}

std::vector<std::string> attribute_bugs(const ToyFixture& fixture,
                                        const TestPair& pair) {
  CoverageMap mc = mc_pair(pair);
  std::vector<std::string> ids;
  for (const SeededBug& bug : fixture.bugs) {
    for (std::int64_t line : bug.lines) {
      if (mc.covered().contains(line_unit(fixture.program.name, line))) {
        ids.push_back(bug.id);
        break;
      }
    }
  }
  return ids;
}

namespace {

int precedence(OpCode op) {
  switch (op) {
    case OpCode::Or: return 1;
    case OpCode::And: return 2;
    case OpCode::Eq:
    case OpCode::Ne: return 3;
    case OpCode::Lt:
    case OpCode::Le:
    case OpCode::Gt:
    case OpCode::Ge: return 4;
    case OpCode::Add:
    case OpCode::Sub: return 5;
    case OpCode::Mul: return 6;
    case OpCode::Neg: return 7;
  }
  return 0;
}

const char* op_text(OpCode op) {
  switch (op) {
    case OpCode::Add: return "+";
    case OpCode::Sub: return "-";
    case OpCode::Mul: return "*";
    case OpCode::Lt: return "<";
    case OpCode::Le: return "<=";
    case OpCode::Gt: return ">";
    case OpCode::Ge: return ">=";
    case OpCode::Eq: return "==";
    case OpCode::Ne: return "!=";
    case OpCode::And: return "&&";
    case OpCode::Or: return "||";
    case OpCode::Neg: return "-";
  }
  return "?";
}

std::string render_expr(const Expr& e, int parent_prec) {
  switch (e.kind) {
    case Expr::Kind::Const:
      return std::to_string(e.value);
    case Expr::Kind::Var:
      return e.name;
    case Expr::Kind::Unary:
      return "-" + render_expr(*e.lhs, precedence(OpCode::Neg));
    case Expr::Kind::Binary: {
      int prec = precedence(e.op);
      std::string text = render_expr(*e.lhs, prec) + " " + op_text(e.op) +
                         " " + render_expr(*e.rhs, prec + 1);
      if (prec < parent_prec) return "(" + text + ")";
      return text;
    }
  }
  return "?";
}

void render_block(const std::vector<Stmt>& block,
                  std::map<std::int64_t, std::string>* lines, int depth) {
  std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
  for (const Stmt& s : block) {
    switch (s.kind) {
      case Stmt::Kind::Assign:
        (*lines)[s.line] = indent + s.target + " = " + render_expr(*s.expr, 0);
        break;
      case Stmt::Kind::Return:
        (*lines)[s.line] = indent + "return " + render_expr(*s.expr, 0);
        break;
      case Stmt::Kind::Branch:
        for (std::size_t i = 0; i < s.arms.size(); ++i) {
          (*lines)[s.arms[i].line] =
              indent + (i == 0 ? "if (" : "} else if (") +
              render_expr(*s.arms[i].cond, 0) + ") {";
          render_block(s.arms[i].body, lines, depth + 1);
        }
        if (s.else_line != 0) {
          (*lines)[s.else_line] = indent + "} else {";
          render_block(s.else_body, lines, depth + 1);
        }
        for (std::int64_t l : s.skeleton_lines) (*lines)[l] = indent + "}";
        break;
    }
  }
}

}  // namespace

std::string render_program(const ToyProgram& p) {
  std::map<std::int64_t, std::string> lines;
  render_block(p.body, &lines, 1);
  for (std::int64_t l : p.entry_lines) lines[l] = "}";

  std::ostringstream out;
  out << p.name << "(";
  for (std::size_t i = 0; i < p.params.size(); ++i) {
    if (i > 0) out << ", ";
    out << p.params[i];
  }
  out << ") {\n";
  for (const auto& [line, text] : lines) {
    out << std::setw(3) << line << ": " << text << "\n";
  }
  return out.str();
}

}  // namespace toy
}  // namespace mccov

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "effdom/rational.hpp"

namespace effdom::machine {

// Total, deterministic, resumable programs N -> N with a per-evaluation
// micro-step count. One micro-step is charged per expression-node visit;
// this is the cost model every complexity audit in the project refers to.
//
// The expression language is deliberately small: constants, exact natural
// arithmetic (+, truncated -, *, div, mod, with div/mod by zero defined as
// zero), Cantor pairing/unpairing, let-binding, bounded loops with an
// optional early-exit condition, finite table lookup with a fallback
// expression, and composition (calling another program on an argument).
// Every program is total: loops carry an explicit iteration bound and the
// evaluator enforces a configurable fuel ceiling on top.

using Nat = Int;

enum class Op : std::uint8_t {
    Const,   // value payload
    Input,   // the program argument
    Var,     // de Bruijn index into enclosing Let/Loop binders (payload)
    Add,
    Monus,   // truncated subtraction
    Mul,
    Div,     // floor division; x div 0 = 0
    Mod,     // x mod 0 = 0
    Pair,    // Cantor pair of children
    First,   // pi_1
    Second,  // pi_2
    Let,     // bind a, evaluate b with Var(0) = a
    Loop,    // a = bound, b = init, c = body, d = optional continue-condition;
             // body and condition see Var(0) = accumulator, Var(1) = counter
    Lookup,  // finite table keyed by a; b = fallback expression
    Call,    // run sub-program `sub` on argument a
};

struct Node {
    Op op;
    std::int32_t a = -1;
    std::int32_t b = -1;
    std::int32_t c = -1;
    std::int32_t d = -1;
    Nat value;               // Const payload or Var depth
    std::int32_t table = -1; // Lookup payload
    std::int32_t sub = -1;   // Call payload
};

struct ProgramData;

/// Finite lookup table; small keys are stored densely.
struct Table {
    std::vector<Nat> dense;
    std::vector<bool> dense_present;
    std::map<Nat, Nat> sparse;

    void insert(const Nat& key, const Nat& value);
    const Nat* find(const Nat& key) const;
};

struct ProgramData {
    std::vector<Node> nodes;
    std::vector<Table> tables;
    std::vector<std::shared_ptr<const ProgramData>> subs;
    std::int32_t root = -1;
    std::string label;
};

class FuelExhaustedError : public std::runtime_error {
  public:
    explicit FuelExhaustedError(const std::string& label)
        : std::runtime_error("evaluation fuel exceeded in program '" + label + "'") {}
};

struct EvalResult {
    Nat value;
    std::uint64_t steps = 0;
};

/// Fuel ceiling used when none is given; overridable via EFFDOM_FUEL.
std::uint64_t default_fuel();

class CostedEnumerator {
  public:
    CostedEnumerator() = default;
    explicit CostedEnumerator(std::shared_ptr<const ProgramData> prog) : prog_(std::move(prog)) {}

    /// Deterministic evaluation at n; throws FuelExhaustedError past the ceiling.
    EvalResult at(const Nat& n, std::uint64_t fuel = default_fuel()) const;

    /// Values at inputs 0..count-1.
    std::vector<Nat> prefix(std::uint64_t count, std::uint64_t fuel = default_fuel()) const;

    const std::string& label() const { return prog_->label; }
    const std::shared_ptr<const ProgramData>& data() const { return prog_; }
    bool valid() const { return prog_ != nullptr; }

  private:
    std::shared_ptr<const ProgramData> prog_;
};

// ---------------------------------------------------------------------------
// Builder
// ---------------------------------------------------------------------------

class Builder {
  public:
    using Ref = std::int32_t;

    Ref constant(Nat v);
    Ref constant(std::uint64_t v) { return constant(Nat(v)); }
    Ref input();
    Ref var(unsigned depth);
    Ref add(Ref a, Ref b);
    Ref monus(Ref a, Ref b);
    Ref mul(Ref a, Ref b);
    Ref div(Ref a, Ref b);
    Ref mod(Ref a, Ref b);
    Ref pair_of(Ref a, Ref b);
    Ref first(Ref a);
    Ref second(Ref a);
    Ref let_in(Ref bound, Ref body);
    Ref loop(Ref bound, Ref init, Ref body, Ref continue_cond = -1);
    Ref lookup(std::int32_t table, Ref key, Ref fallback);
    Ref call(std::shared_ptr<const ProgramData> sub, Ref arg);

    // Derived forms (pure sugar over the kernel above).
    Ref le01(Ref a, Ref b);                 // [a <= b]
    Ref lt01(Ref a, Ref b);                 // [a < b]
    Ref eq01(Ref a, Ref b);                 // [a == b]
    Ref not01(Ref a);                       // [a == 0]
    Ref and01(Ref a, Ref b) { return mul(a, b); }
    Ref or01(Ref a, Ref b);                 // min(1, a+b)
    Ref select(Ref cond01, Ref t, Ref f);   // cond*t + (1-cond)*f (both evaluated)

    std::int32_t new_table();
    void table_insert(std::int32_t table, const Nat& key, const Nat& value);

    std::shared_ptr<const ProgramData> build(Ref root, std::string label);

  private:
    Ref push(Node n);
    ProgramData data_;
};

// ---------------------------------------------------------------------------
// Stock programs and combinators
// ---------------------------------------------------------------------------

CostedEnumerator identity_program();
CostedEnumerator constant_program(const Nat& value);
CostedEnumerator successor_program();
CostedEnumerator integer_sqrt_program();
/// Cycles through the given values: e(k) = values[k mod values.size()].
CostedEnumerator cycling_table_program(const std::vector<Nat>& values, std::string label = "table");

enum class Schedule : std::uint8_t {
    SquareShell,  // shells of growing squares (the default)
    Diagonal,     // Cantor anti-diagonals
};

/// Which (h-index, g-index) cell the square-shell schedule visits at n.
std::pair<Int, Int> schedule_cell2(const Int& n, Schedule schedule = Schedule::SquareShell);
/// Which (r, s, t) cell the cube-shell schedule visits at n.
std::array<Int, 3> schedule_cell3(const Int& n);

/// Fair merge: range = { pi1(h(p)) : pi2(h(p)) in range(g) } union {0}.
/// h must emit pair codes. Every (h-index, g-index) cell is eventually
/// compared; with the square-shell schedule, cell (p,q) is visited at some
/// n < (max(p,q)+1)^2.
CostedEnumerator dovetail_merge2(const CostedEnumerator& g, const CostedEnumerator& h,
                                 Schedule schedule = Schedule::SquareShell);

/// Fair three-way chain join:
/// range = { <pi1(g(r)), pi2(j(t))> : pi2(g(r)) = pi1(h(s)) and
///                                    pi2(h(s)) = pi1(j(t)) } union {0}.
CostedEnumerator dovetail_merge3(const CostedEnumerator& g, const CostedEnumerator& h,
                                 const CostedEnumerator& j);

/// Pointwise composition: result(n) = translation(e(n)).
CostedEnumerator recode(const CostedEnumerator& e, const CostedEnumerator& translation);

struct EnumeratedSet {
    CostedEnumerator source;
};

struct MembershipResult {
    std::optional<Int> found_at;  // least index k <= budget with f(k) == v
    std::uint64_t steps = 0;
};

/// Semi-decides v in range(s.source) by scanning f(0..budget).
/// "not found" is inconclusive by design.
MembershipResult membership_scan(const EnumeratedSet& s, const Nat& v, std::uint64_t budget);

/// Number of nodes in the program (the static size the cost model is
/// monotone in).
std::size_t program_size(const CostedEnumerator& e);

}  // namespace effdom::machine

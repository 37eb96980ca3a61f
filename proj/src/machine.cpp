#include "effdom/machine.hpp"

#include <array>
#include <cmath>
#include <cstdlib>

#include "effdom/codes.hpp"

namespace effdom::machine {

namespace {

constexpr std::uint64_t kDenseTableLimit = 1u << 16;

inline bool fits_u64(const Nat& v) {
    return v >= 0 && v <= Nat(UINT64_MAX);
}

// Small-value fast paths; pairing of machine-sized halves stays in uint64
// whenever the result does.
inline bool small_pair(const Nat& a, const Nat& b, Nat& out) {
    if (!fits_u64(a) || !fits_u64(b)) return false;
    auto x = static_cast<std::uint64_t>(a);
    auto y = static_cast<std::uint64_t>(b);
    if (x + y >= (1ull << 31)) return false;
    std::uint64_t s = x + y;
    out = s * (s + 1) / 2 + x;
    return true;
}

inline std::uint64_t u64_isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline void small_or_big_unpair(const Nat& k, Nat& n_out, Nat& m_out) {
    if (fits_u64(k) && static_cast<std::uint64_t>(k) < (1ull << 62)) {
        auto v = static_cast<std::uint64_t>(k);
        std::uint64_t s = u64_isqrt(8 * v + 1);
        s = (s - 1) / 2;
        std::uint64_t t = s * (s + 1) / 2;
        if (t > v) {
            --s;
            t = s * (s + 1) / 2;
        }
        n_out = v - t;
        m_out = s - (v - t);
        return;
    }
    auto [n, m] = codes::unpair(k);
    n_out = std::move(n);
    m_out = std::move(m);
}

}  // namespace

void Table::insert(const Nat& key, const Nat& value) {
    if (key >= 0 && key < Nat(kDenseTableLimit)) {
        auto idx = static_cast<std::size_t>(key);
        if (dense.size() <= idx) {
            dense.resize(idx + 1);
            dense_present.resize(idx + 1, false);
        }
        dense[idx] = value;
        dense_present[idx] = true;
    } else {
        sparse[key] = value;
    }
}

const Nat* Table::find(const Nat& key) const {
    if (key >= 0 && key < Nat(kDenseTableLimit)) {
        auto idx = static_cast<std::size_t>(key);
        if (idx < dense.size() && dense_present[idx]) return &dense[idx];
        return nullptr;
    }
    auto it = sparse.find(key);
    return it == sparse.end() ? nullptr : &it->second;
}

std::uint64_t default_fuel() {
    static const std::uint64_t fuel = [] {
        if (const char* env = std::getenv("EFFDOM_FUEL")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
        }
        return std::uint64_t(400'000'000);
    }();
    return fuel;
}

namespace {

struct EvalContext {
    const Nat* input;
    std::vector<Nat> env;
    std::uint64_t steps = 0;
    std::uint64_t fuel = 0;
    const std::string* label;
};

Nat eval_node(const ProgramData& prog, std::int32_t idx, EvalContext& ctx) {
    const Node& nd = prog.nodes[static_cast<std::size_t>(idx)];
    if (++ctx.steps > ctx.fuel) throw FuelExhaustedError(*ctx.label);
    switch (nd.op) {
        case Op::Const:
            return nd.value;
        case Op::Input:
            return *ctx.input;
        case Op::Var: {
            auto depth = static_cast<std::size_t>(nd.value);
            return ctx.env[ctx.env.size() - 1 - depth];
        }
        case Op::Add:
            return eval_node(prog, nd.a, ctx) + eval_node(prog, nd.b, ctx);
        case Op::Monus: {
            Nat x = eval_node(prog, nd.a, ctx);
            Nat y = eval_node(prog, nd.b, ctx);
            return x > y ? Nat(x - y) : Nat(0);
        }
        case Op::Mul:
            return eval_node(prog, nd.a, ctx) * eval_node(prog, nd.b, ctx);
        case Op::Div: {
            Nat x = eval_node(prog, nd.a, ctx);
            Nat y = eval_node(prog, nd.b, ctx);
            return y == 0 ? Nat(0) : Nat(x / y);
        }
        case Op::Mod: {
            Nat x = eval_node(prog, nd.a, ctx);
            Nat y = eval_node(prog, nd.b, ctx);
            return y == 0 ? Nat(0) : Nat(x % y);
        }
        case Op::Pair: {
            Nat x = eval_node(prog, nd.a, ctx);
            Nat y = eval_node(prog, nd.b, ctx);
            Nat out;
            if (small_pair(x, y, out)) return out;
            return codes::pair(x, y);
        }
        case Op::First: {
            Nat k = eval_node(prog, nd.a, ctx);
            Nat n, m;
            small_or_big_unpair(k, n, m);
            return n;
        }
        case Op::Second: {
            Nat k = eval_node(prog, nd.a, ctx);
            Nat n, m;
            small_or_big_unpair(k, n, m);
            return m;
        }
        case Op::Let: {
            ctx.env.push_back(eval_node(prog, nd.a, ctx));
            Nat out = eval_node(prog, nd.b, ctx);
            ctx.env.pop_back();
            return out;
        }
        case Op::Loop: {
            Nat bound = eval_node(prog, nd.a, ctx);
            Nat acc = eval_node(prog, nd.b, ctx);
            for (Nat i = 0; i < bound; ++i) {
                ctx.env.push_back(i);
                ctx.env.push_back(acc);  // Var(0) = acc, Var(1) = counter
                if (nd.d >= 0) {
                    Nat keep_going = eval_node(prog, nd.d, ctx);
                    if (keep_going == 0) {
                        ctx.env.pop_back();
                        ctx.env.pop_back();
                        break;
                    }
                }
                Nat next = eval_node(prog, nd.c, ctx);
                ctx.env.pop_back();
                ctx.env.pop_back();
                acc = std::move(next);
            }
            return acc;
        }
        case Op::Lookup: {
            Nat key = eval_node(prog, nd.a, ctx);
            const Table& table = prog.tables[static_cast<std::size_t>(nd.table)];
            if (const Nat* hit = table.find(key)) return *hit;
            return eval_node(prog, nd.b, ctx);
        }
        case Op::Call: {
            Nat arg = eval_node(prog, nd.a, ctx);
            const ProgramData& sub = *prog.subs[static_cast<std::size_t>(nd.sub)];
            EvalContext inner;
            inner.input = &arg;
            inner.steps = ctx.steps;
            inner.fuel = ctx.fuel;
            inner.label = ctx.label;
            Nat out = eval_node(sub, sub.root, inner);
            ctx.steps = inner.steps;
            return out;
        }
    }
    throw std::logic_error("unreachable op");
}

}  // namespace

EvalResult CostedEnumerator::at(const Nat& n, std::uint64_t fuel) const {
    if (!prog_) throw std::logic_error("empty enumerator");
    if (n < 0) throw std::invalid_argument("enumerator input must be a natural");
    EvalContext ctx;
    ctx.input = &n;
    ctx.fuel = fuel;
    ctx.label = &prog_->label;
    Nat value = eval_node(*prog_, prog_->root, ctx);
    return {std::move(value), ctx.steps};
}

std::vector<Nat> CostedEnumerator::prefix(std::uint64_t count, std::uint64_t fuel) const {
    std::vector<Nat> out;
    out.reserve(count);
    for (std::uint64_t k = 0; k < count; ++k) out.push_back(at(Nat(k), fuel).value);
    return out;
}

// ---------------------------------------------------------------------------
// Builder
// ---------------------------------------------------------------------------

Builder::Ref Builder::push(Node n) {
    data_.nodes.push_back(std::move(n));
    return static_cast<Ref>(data_.nodes.size() - 1);
}

Builder::Ref Builder::constant(Nat v) {
    Node n{Op::Const};
    n.value = std::move(v);
    return push(std::move(n));
}
Builder::Ref Builder::input() { return push(Node{Op::Input}); }
Builder::Ref Builder::var(unsigned depth) {
    Node n{Op::Var};
    n.value = depth;
    return push(std::move(n));
}
Builder::Ref Builder::add(Ref a, Ref b) { return push(Node{Op::Add, a, b}); }
Builder::Ref Builder::monus(Ref a, Ref b) { return push(Node{Op::Monus, a, b}); }
Builder::Ref Builder::mul(Ref a, Ref b) { return push(Node{Op::Mul, a, b}); }
Builder::Ref Builder::div(Ref a, Ref b) { return push(Node{Op::Div, a, b}); }
Builder::Ref Builder::mod(Ref a, Ref b) { return push(Node{Op::Mod, a, b}); }
Builder::Ref Builder::pair_of(Ref a, Ref b) { return push(Node{Op::Pair, a, b}); }
Builder::Ref Builder::first(Ref a) { return push(Node{Op::First, a}); }
Builder::Ref Builder::second(Ref a) { return push(Node{Op::Second, a}); }
Builder::Ref Builder::let_in(Ref bound, Ref body) { return push(Node{Op::Let, bound, body}); }
Builder::Ref Builder::loop(Ref bound, Ref init, Ref body, Ref continue_cond) {
    return push(Node{Op::Loop, bound, init, body, continue_cond});
}
Builder::Ref Builder::lookup(std::int32_t table, Ref key, Ref fallback) {
    Node n{Op::Lookup, key, fallback};
    n.table = table;
    return push(std::move(n));
}
Builder::Ref Builder::call(std::shared_ptr<const ProgramData> sub, Ref arg) {
    data_.subs.push_back(std::move(sub));
    Node n{Op::Call, arg};
    n.sub = static_cast<std::int32_t>(data_.subs.size() - 1);
    return push(std::move(n));
}

Builder::Ref Builder::le01(Ref a, Ref b) {
    // 1 - (1 - (b+1-a)) clipped: [a <= b] = 1 monus (a monus b)
    return monus(constant(1), monus(a, b));
}
Builder::Ref Builder::lt01(Ref a, Ref b) { return monus(constant(1), monus(add(a, constant(1)), b)); }
Builder::Ref Builder::eq01(Ref a, Ref b) {
    return monus(constant(1), add(monus(a, b), monus(b, a)));
}
Builder::Ref Builder::not01(Ref a) { return monus(constant(1), a); }
Builder::Ref Builder::or01(Ref a, Ref b) { return monus(constant(1), monus(constant(1), add(a, b))); }
Builder::Ref Builder::select(Ref cond01, Ref t, Ref f) {
    // cond is assumed 0/1
    return add(mul(cond01, t), mul(not01(cond01), f));
}

std::int32_t Builder::new_table() {
    data_.tables.emplace_back();
    return static_cast<std::int32_t>(data_.tables.size() - 1);
}
void Builder::table_insert(std::int32_t table, const Nat& key, const Nat& value) {
    data_.tables[static_cast<std::size_t>(table)].insert(key, value);
}

std::shared_ptr<const ProgramData> Builder::build(Ref root, std::string label) {
    data_.root = root;
    data_.label = std::move(label);
    return std::make_shared<const ProgramData>(std::move(data_));
}

// ---------------------------------------------------------------------------
// Stock programs
// ---------------------------------------------------------------------------

CostedEnumerator identity_program() {
    Builder b;
    return CostedEnumerator(b.build(b.input(), "identity"));
}

CostedEnumerator constant_program(const Nat& value) {
    Builder b;
    return CostedEnumerator(b.build(b.constant(value), "const " + value.str()));
}

CostedEnumerator successor_program() {
    Builder b;
    return CostedEnumerator(b.build(b.add(b.input(), b.constant(1)), "successor"));
}

CostedEnumerator integer_sqrt_program() {
    Builder b;
    // loop(bound n+1, init 0, continue while (acc+1)^2 <= n, body acc+1)
    auto bound = b.add(b.input(), b.constant(1));
    auto init = b.constant(0);
    auto acc1 = b.add(b.var(0), b.constant(1));
    auto cond = b.le01(b.mul(acc1, acc1), b.input());
    auto body = b.add(b.var(0), b.constant(1));
    auto root = b.loop(bound, init, body, cond);
    return CostedEnumerator(b.build(root, "isqrt"));
}

CostedEnumerator cycling_table_program(const std::vector<Nat>& values, std::string label) {
    if (values.empty()) throw std::invalid_argument("cycling_table_program: empty table");
    Builder b;
    auto t = b.new_table();
    for (std::size_t i = 0; i < values.size(); ++i) b.table_insert(t, Nat(i), values[i]);
    auto key = b.mod(b.input(), b.constant(values.size()));
    auto root = b.lookup(t, key, b.constant(0));
    return CostedEnumerator(b.build(root, std::move(label)));
}

// ---------------------------------------------------------------------------
// Schedules and dovetailing
// ---------------------------------------------------------------------------

std::pair<Int, Int> schedule_cell2(const Int& n, Schedule schedule) {
    if (n < 0) throw std::invalid_argument("schedule_cell2: negative index");
    if (schedule == Schedule::Diagonal) {
        auto [p, q] = codes::unpair(n);
        return {p, q};
    }
    Int s = isqrt(n);
    Int r = n - s * s;
    if (r <= s) return {s, r};          // h-column of the shell
    return {r - s - 1, s};              // g-column of the shell
}

std::array<Int, 3> schedule_cell3(const Int& n) {
    if (n < 0) throw std::invalid_argument("schedule_cell3: negative index");
    // Integer cube root by search from the square root's ballpark.
    Int s = 0;
    while ((s + 1) * (s + 1) * (s + 1) <= n) ++s;
    Int r = n - s * s * s;
    Int w = s + 1;
    if (r < w * w) return {s, r / w, r % w};
    r -= w * w;
    if (r < s * w) return {r / w, s, r % w};
    r -= s * w;
    return {r / s, r % s, s};
}

namespace {

// Emits the schedule arithmetic; the returned ref computes the pair code
// <hIdx, gIdx> of the cell visited at the program argument n.
Builder::Ref emit_cell2(Builder& b, Schedule schedule) {
    if (schedule == Schedule::Diagonal) {
        return b.input();  // <p,q> = unpair(n), so the cell pair code is n itself
    }
    // let s = isqrt(input) in let r = input - s*s in
    //   r <= s ? <s, r> : <r-s-1, s>
    auto bound = b.add(b.input(), b.constant(1));
    auto acc1 = b.add(b.var(0), b.constant(1));
    auto cond = b.le01(b.mul(acc1, acc1), b.input());
    auto body = b.add(b.var(0), b.constant(1));
    auto s = b.loop(bound, b.constant(0), body, cond);
    auto r = b.monus(b.input(), b.mul(b.var(0), b.var(0)));  // Var(0) = s here
    // Inside the inner let: Var(0) = r, Var(1) = s.
    auto le = b.le01(b.var(0), b.var(1));
    auto h_branch = b.select(le, b.var(1), b.monus(b.monus(b.var(0), b.var(1)), b.constant(1)));
    auto g_branch = b.select(le, b.var(0), b.var(1));
    auto packed = b.pair_of(h_branch, g_branch);
    auto inner = b.let_in(r, packed);
    return b.let_in(s, inner);
}

}  // namespace

CostedEnumerator dovetail_merge2(const CostedEnumerator& g, const CostedEnumerator& h,
                                 Schedule schedule) {
    Builder b;
    auto packed = emit_cell2(b, schedule);
    // let cell = <hIdx,gIdx> in
    //   let hv = h(first cell) in
    //     let gv = g(second cell, one binder deeper) in
    //       [pi2(hv) == gv] * pi1(hv)
    auto hv = b.call(h.data(), b.first(b.var(0)));
    auto gv = b.call(g.data(), b.second(b.var(1)));
    auto match = b.eq01(b.second(b.var(1)), b.var(0));
    auto out = b.mul(match, b.first(b.var(1)));
    auto in_gv = b.let_in(gv, out);
    auto in_hv = b.let_in(hv, in_gv);
    auto root = b.let_in(packed, in_hv);
    return CostedEnumerator(
        b.build(root, "merge2(" + g.label() + ", " + h.label() + ")"));
}

CostedEnumerator dovetail_merge3(const CostedEnumerator& g, const CostedEnumerator& h,
                                 const CostedEnumerator& j) {
    Builder b;
    // s = integer cube root of n
    auto bound = b.add(b.input(), b.constant(1));
    auto acc1 = b.add(b.var(0), b.constant(1));
    auto cond = b.le01(b.mul(b.mul(acc1, acc1), acc1), b.input());
    auto body = b.add(b.var(0), b.constant(1));
    auto s = b.loop(bound, b.constant(0), body, cond);

    // With s bound at Var(0): decode the shell into <r, <s', t>>.
    auto w = b.add(b.var(0), b.constant(1));        // s+1
    auto r0 = b.monus(b.input(), b.mul(b.mul(b.var(0), b.var(0)), b.var(0)));
    // face 1: r0 < w*w -> (s, r0 div w, r0 mod w)
    auto in_face1 = b.lt01(r0, b.mul(w, w));
    auto f1 = b.pair_of(b.var(0), b.pair_of(b.div(r0, w), b.mod(r0, w)));
    // face 2: r1 = r0 - w*w < s*w -> (r1 div w, s, r1 mod w)
    auto r1 = b.monus(r0, b.mul(w, w));
    auto in_face2 = b.lt01(r1, b.mul(b.var(0), w));
    auto f2 = b.pair_of(b.div(r1, w), b.pair_of(b.var(0), b.mod(r1, w)));
    // face 3: r2 = r1 - s*w -> (r2 div s, r2 mod s, s)
    auto r2 = b.monus(r1, b.mul(b.var(0), w));
    auto f3 = b.pair_of(b.div(r2, b.var(0)), b.pair_of(b.mod(r2, b.var(0)), b.var(0)));
    auto cell = b.select(in_face1, f1, b.select(in_face2, f2, f3));
    auto cell_packed = b.let_in(s, cell);

    // let cell = <r,<s,t>> in let a=g(r) in let c=h(s) in let e=j(t) in ...
    auto a = b.call(g.data(), b.first(b.var(0)));
    auto c = b.call(h.data(), b.first(b.second(b.var(1))));
    auto e = b.call(j.data(), b.second(b.second(b.var(2))));
    // Depth map in the innermost body: Var(0)=e, Var(1)=c, Var(2)=a, Var(3)=cell.
    auto m1 = b.eq01(b.second(b.var(2)), b.first(b.var(1)));
    auto m2 = b.eq01(b.second(b.var(1)), b.first(b.var(0)));
    auto out = b.mul(b.mul(m1, m2), b.pair_of(b.first(b.var(2)), b.second(b.var(0))));
    auto body3 = b.let_in(e, out);
    auto body2 = b.let_in(c, body3);
    auto body1 = b.let_in(a, body2);
    auto root = b.let_in(cell_packed, body1);
    return CostedEnumerator(b.build(
        root, "merge3(" + g.label() + ", " + h.label() + ", " + j.label() + ")"));
}

CostedEnumerator recode(const CostedEnumerator& e, const CostedEnumerator& translation) {
    Builder b;
    auto inner = b.call(e.data(), b.input());
    auto root = b.call(translation.data(), inner);
    return CostedEnumerator(b.build(root, "recode(" + e.label() + ")"));
}

MembershipResult membership_scan(const EnumeratedSet& s, const Nat& v, std::uint64_t budget) {
    MembershipResult out;
    for (std::uint64_t k = 0; k < budget; ++k) {
        EvalResult r = s.source.at(Nat(k));
        out.steps += r.steps;
        if (r.value == v) {
            out.found_at = Int(k);
            return out;
        }
    }
    return out;
}

std::size_t program_size(const CostedEnumerator& e) {
    std::size_t total = e.data()->nodes.size();
    for (const auto& sub : e.data()->subs) total += sub->nodes.size();
    return total;
}

}  // namespace effdom::machine

#include "effdom/programs.hpp"

#include <mutex>
#include <numeric>

namespace effdom::progs {

using machine::Builder;
using machine::CostedEnumerator;
using Ref = Builder::Ref;

namespace {

constexpr std::uint64_t kPhiTableLimit = 4096;
constexpr std::uint64_t kCoprimeTableLimit = 80;

struct RatConst {
    Int num;
    Int den;
};

RatConst rat_const(const Rational& q) {
    if (q < 0) throw std::invalid_argument("in-language rationals must be non-negative");
    return {numerator(q), denominator(q)};
}

// p and q are refs to <num,den> pair codes (same binder depth as the caller).
Ref lt_frac(Builder& b, Ref p, Ref q) {
    return b.lt01(b.mul(b.first(p), b.second(q)), b.mul(b.first(q), b.second(p)));
}
Ref eq_frac_const(Builder& b, Ref p, const RatConst& c) {
    return b.eq01(b.mul(b.first(p), b.constant(c.den)), b.mul(b.constant(c.num), b.second(p)));
}
Ref lt_frac_const_right(Builder& b, Ref p, const RatConst& c) {  // p < c
    return b.lt01(b.mul(b.first(p), b.constant(c.den)), b.mul(b.constant(c.num), b.second(p)));
}

}  // namespace

CostedEnumerator gcd_program() {
    static const CostedEnumerator prog = [] {
        Builder b;
        auto bound = b.add(b.second(b.input()), b.constant(1));
        auto cond = b.le01(b.constant(1), b.second(b.var(0)));  // continue while y >= 1
        auto body = b.pair_of(b.second(b.var(0)), b.mod(b.first(b.var(0)), b.second(b.var(0))));
        auto lp = b.loop(bound, b.input(), body, cond);
        return CostedEnumerator(b.build(b.first(lp), "gcd"));
    }();
    return prog;
}

CostedEnumerator coprime01_program() {
    static const CostedEnumerator prog = [] {
        Builder b;
        auto t = b.new_table();
        for (std::uint64_t d = 0; d <= kCoprimeTableLimit; ++d) {
            for (std::uint64_t j = 0; j <= d; ++j) {
                std::uint64_t g = std::gcd(j, d);
                b.table_insert(t, codes::pair(Int(j), Int(d)), Int(g == 1 ? 1 : 0));
            }
        }
        auto fallback = b.eq01(b.call(gcd_program().data(), b.input()), b.constant(1));
        auto root = b.lookup(t, b.input(), fallback);
        return CostedEnumerator(b.build(root, "coprime01"));
    }();
    return prog;
}

CostedEnumerator phi_program() {
    static const CostedEnumerator prog = [] {
        Builder b;
        auto t = b.new_table();
        b.table_insert(t, Int(0), Int(0));
        for (std::uint64_t d = 1; d <= kPhiTableLimit; ++d) b.table_insert(t, Int(d), Int(codes::totient(d)));
        // Fallback: count j in 1..d with gcd(j,d) == 1.
        auto j = b.add(b.var(1), b.constant(1));
        auto body = b.add(b.var(0), b.call(coprime01_program().data(), b.pair_of(j, b.input())));
        auto fallback = b.loop(b.input(), b.constant(0), body);
        auto root = b.lookup(t, b.input(), fallback);
        return CostedEnumerator(b.build(root, "phi"));
    }();
    return prog;
}

CostedEnumerator fraction_decode_program() {
    static const CostedEnumerator prog = [] {
        Builder b;
        // Denominator scan: state <kp, d> from <input-1, 2>; subtract phi(d)
        // while it fits.
        auto scan_bound = b.add(b.input(), b.constant(1));
        auto scan_init = b.pair_of(b.monus(b.input(), b.constant(1)), b.constant(2));
        auto scan_cond =
            b.le01(b.call(phi_program().data(), b.second(b.var(0))), b.first(b.var(0)));
        auto scan_body = b.pair_of(
            b.monus(b.first(b.var(0)), b.call(phi_program().data(), b.second(b.var(0)))),
            b.add(b.second(b.var(0)), b.constant(1)));
        auto scan = b.loop(scan_bound, scan_init, scan_body, scan_cond);

        // Rank loop (inside let scan): find the (kp+1)-th numerator coprime
        // to d. State <remaining, found>; found = 0 until hit.
        auto rank_bound = b.second(b.var(0));
        auto rank_init = b.pair_of(b.first(b.var(0)), b.constant(0));
        auto rank_cond = b.eq01(b.second(b.var(0)), b.constant(0));
        // body: let c = coprime01(<i+1, d>) in ...
        auto cand = b.add(b.var(1), b.constant(1));
        auto c = b.call(coprime01_program().data(), b.pair_of(cand, b.second(b.var(2))));
        // depths in body-with-c: Var(0)=c, Var(1)=acc, Var(2)=i, Var(3)=scan
        auto is_found = b.mul(b.var(0), b.eq01(b.first(b.var(1)), b.constant(0)));
        auto new_rem = b.monus(b.first(b.var(1)), b.var(0));
        auto new_found = b.mul(is_found, b.add(b.var(2), b.constant(1)));
        auto rank_body = b.let_in(c, b.pair_of(new_rem, new_found));
        auto rank = b.loop(rank_bound, rank_init, rank_body, rank_cond);

        // pair(numerator, denominator); Var(0)=rank, Var(1)=scan
        auto result = b.pair_of(b.second(b.var(0)), b.second(b.var(1)));
        auto scan_let = b.let_in(scan, b.let_in(rank, result));
        auto root = b.select(b.eq01(b.input(), b.constant(0)),
                             b.pair_of(b.constant(0), b.constant(1)), scan_let);
        return CostedEnumerator(b.build(root, "fraction-decode"));
    }();
    return prog;
}

CostedEnumerator closed_unit_decode_program() {
    static const CostedEnumerator prog = [] {
        Builder b;
        auto shifted = b.call(fraction_decode_program().data(), b.monus(b.input(), b.constant(1)));
        auto root = b.select(b.eq01(b.input(), b.constant(0)),
                             b.pair_of(b.constant(0), b.constant(1)),
                             b.select(b.eq01(b.input(), b.constant(1)),
                                      b.pair_of(b.constant(1), b.constant(1)), shifted));
        return CostedEnumerator(b.build(root, "closed-unit-decode"));
    }();
    return prog;
}

CostedEnumerator string_params_program() {
    static const CostedEnumerator prog = [] {
        Builder b;
        // k1 = input+1; find <len, 2^len> with 2^len <= k1 < 2^(len+1).
        auto k1 = b.add(b.input(), b.constant(1));
        auto cond = b.le01(b.mul(b.constant(2), b.second(b.var(0))), b.add(b.input(), b.constant(1)));
        auto body = b.pair_of(b.add(b.first(b.var(0)), b.constant(1)),
                              b.mul(b.constant(2), b.second(b.var(0))));
        auto lp = b.loop(k1, b.pair_of(b.constant(0), b.constant(1)), body, cond);
        // Var(0) = <len, pow>
        auto value = b.monus(b.add(b.input(), b.constant(1)), b.second(b.var(0)));
        auto root = b.let_in(lp, b.pair_of(b.first(b.var(0)), value));
        return CostedEnumerator(b.build(root, "string-params"));
    }();
    return prog;
}

CostedEnumerator interval_decode_program(const Rational& lo, const Rational& hi) {
    if (lo >= hi) throw std::invalid_argument("interval_decode_program: empty ambient");
    RatConst a = rat_const(lo), bb = rat_const(hi), w = rat_const(hi - lo);
    Builder b;
    auto an = b.constant(a.num), ad = b.constant(a.den);
    auto bn = b.constant(bb.num), bd = b.constant(bb.den);
    auto wn = b.constant(w.num), wd = b.constant(w.den);
    // m' = (input-2) + [input-2 >= 1]  (pair code 1 would repeat the ambient)
    auto m0 = b.monus(b.input(), b.constant(2));
    auto mp = b.add(m0, b.le01(b.constant(1), b.monus(b.input(), b.constant(2))));
    auto x = b.call(fraction_decode_program().data(), b.first(b.var(0)));
    auto y = b.call(closed_unit_decode_program().data(), b.second(b.var(1)));
    // u = A + W*x: depths here: Var(0)=y, Var(1)=x, Var(2)=m'
    auto u_num = b.add(b.mul(b.mul(an, wd), b.second(b.var(1))),
                       b.mul(b.mul(wn, ad), b.first(b.var(1))));
    auto u_den = b.mul(b.mul(ad, wd), b.second(b.var(1)));
    auto u = b.pair_of(u_num, u_den);
    // v = u + (B-u)*y: depths: Var(0)=u, Var(1)=y, Var(2)=x, Var(3)=m'
    auto ext = b.monus(b.mul(bn, b.second(b.var(0))), b.mul(bd, b.first(b.var(0))));
    auto v_num = b.add(b.mul(b.mul(b.first(b.var(0)), bd), b.second(b.var(1))),
                       b.mul(ext, b.first(b.var(1))));
    auto v_den = b.mul(b.mul(b.second(b.var(0)), bd), b.second(b.var(1)));
    auto v = b.pair_of(v_num, v_den);
    // pair(u, v): Var(0)=v, Var(1)=u
    auto uv = b.let_in(u, b.let_in(v, b.pair_of(b.var(1), b.var(0))));
    auto chain = b.let_in(mp, b.let_in(x, b.let_in(y, uv)));
    auto whole = b.pair_of(b.pair_of(an, ad), b.pair_of(bn, bd));
    auto degenerate_top = b.pair_of(b.pair_of(bn, bd), b.pair_of(bn, bd));
    auto root = b.select(b.eq01(b.input(), b.constant(0)), whole,
                         b.select(b.eq01(b.input(), b.constant(1)), degenerate_top, chain));
    return CostedEnumerator(
        b.build(root, "interval-decode[" + rational_to_string(lo) + "," + rational_to_string(hi) + "]"));
}

CostedEnumerator cantor_wb01_program() {
    static const CostedEnumerator prog = [] {
        Builder b;
        auto sp = b.call(string_params_program().data(), b.first(b.input()));
        auto tp = b.call(string_params_program().data(), b.second(b.input()));
        // dl = Lt - Ls: Var(0)=tp, Var(1)=sp
        auto dl = b.monus(b.first(b.var(0)), b.first(b.var(1)));
        // p2 = 2^dl: Var(0)=dl, Var(1)=tp, Var(2)=sp
        auto p2 = b.loop(b.var(0), b.constant(1), b.mul(b.constant(2), b.var(0)));
        // body: Var(0)=p2, Var(1)=dl, Var(2)=tp, Var(3)=sp
        auto len_le = b.le01(b.first(b.var(3)), b.first(b.var(2)));
        auto same_head = b.eq01(b.div(b.second(b.var(2)), b.var(0)), b.second(b.var(3)));
        auto body = b.and01(len_le, same_head);
        auto root = b.let_in(sp, b.let_in(tp, b.let_in(dl, b.let_in(p2, body))));
        return CostedEnumerator(b.build(root, "cantor-wb01"));
    }();
    return prog;
}

CostedEnumerator unit_interval_wb01_program() {
    static const CostedEnumerator prog = [] {
        Builder b;
        auto x = b.call(fraction_decode_program().data(), b.first(b.input()));
        auto y = b.call(fraction_decode_program().data(), b.second(b.input()));
        // Var(0)=y, Var(1)=x
        auto strict = b.let_in(x, b.let_in(y, lt_frac(b, b.var(1), b.var(0))));
        auto root = b.or01(b.eq01(b.first(b.input()), b.constant(0)), strict);
        return CostedEnumerator(b.build(root, "unit-interval-wb01"));
    }();
    return prog;
}

CostedEnumerator turing_wb01_program() {
    static const CostedEnumerator prog = [] {
        Builder b;
        auto root = b.le01(b.first(b.input()), b.second(b.input()));
        return CostedEnumerator(b.build(root, "turing-wb01"));
    }();
    return prog;
}

CostedEnumerator interval_wb01_program(const Rational& lo, const Rational& hi) {
    RatConst a = rat_const(lo), h = rat_const(hi);
    Builder b;
    auto dec = interval_decode_program(lo, hi);
    auto p = b.call(dec.data(), b.first(b.input()));
    auto q = b.call(dec.data(), b.second(b.input()));
    // Var(0)=q=<u2,v2>, Var(1)=p=<u1,v1>
    auto u1 = b.first(b.var(1));
    auto v1 = b.second(b.var(1));
    auto u2 = b.first(b.var(0));
    auto v2 = b.second(b.var(0));
    auto left = b.or01(eq_frac_const(b, u1, a), lt_frac(b, u1, u2));
    auto right = b.or01(eq_frac_const(b, v1, h), lt_frac(b, v2, v1));
    auto root = b.let_in(p, b.let_in(q, b.and01(left, right)));
    return CostedEnumerator(b.build(root, "interval-wb01[" + rational_to_string(lo) + "," +
                                              rational_to_string(hi) + "]"));
}

CostedEnumerator graph_from_wb01(const CostedEnumerator& wb01, std::string label) {
    Builder b;
    auto root = b.mul(b.input(), b.call(wb01.data(), b.input()));
    return CostedEnumerator(b.build(root, std::move(label)));
}

CostedEnumerator constant_function_graph(const CostedEnumerator& wb01, const Int& image_code,
                                         std::string label) {
    Builder b;
    auto key = b.pair_of(b.first(b.input()), b.constant(image_code));
    auto root = b.mul(b.input(), b.call(wb01.data(), key));
    return CostedEnumerator(b.build(root, std::move(label)));
}

CostedEnumerator scale3_graph_program() {
    static const CostedEnumerator prog = [] {
        Builder b;
        auto dec_target = interval_decode_program(Rational(0), Rational(3));
        auto dec_source = interval_decode_program(Rational(0), Rational(1));
        RatConst zero{0, 1}, three{3, 1};
        auto p = b.call(dec_target.data(), b.first(b.input()));
        auto q = b.call(dec_source.data(), b.second(b.input()));
        // Var(0)=q (source [u,v]), Var(1)=p (target candidate [x,y])
        auto x = b.first(b.var(1));
        auto y = b.second(b.var(1));
        auto u3 = b.pair_of(b.mul(b.constant(3), b.first(b.first(b.var(0)))),
                            b.second(b.first(b.var(0))));
        auto v3 = b.pair_of(b.mul(b.constant(3), b.first(b.second(b.var(0)))),
                            b.second(b.second(b.var(0))));
        auto left = b.or01(eq_frac_const(b, x, zero), lt_frac(b, x, u3));
        auto right = b.or01(eq_frac_const(b, y, three), lt_frac(b, v3, y));
        auto wb = b.let_in(p, b.let_in(q, b.and01(left, right)));
        auto root = b.mul(b.input(), wb);
        return CostedEnumerator(b.build(root, "scale3-graph"));
    }();
    return prog;
}

CostedEnumerator cantor_truncate_program() {
    static const CostedEnumerator prog = [] {
        Builder b;
        // <m,p>: decode m to <len, value>; if len <= p return m, else
        // code of the first p symbols: 2^p - 1 + (value div 2^(len-p)).
        auto sp = b.call(string_params_program().data(), b.first(b.input()));
        // Var(0)=sp
        auto plen = b.second(b.input());
        auto keep = b.le01(b.first(b.var(0)), b.second(b.input()));
        auto dl = b.monus(b.first(b.var(0)), plen);
        // p2 = 2^dl: Var(0)=dl, Var(1)=sp
        auto p2 = b.loop(b.var(0), b.constant(1), b.mul(b.constant(2), b.var(0)));
        // Var(0)=p2, Var(1)=dl, Var(2)=sp
        auto pow_p = b.loop(b.second(b.input()), b.constant(1), b.mul(b.constant(2), b.var(0)));
        // Var(0)=pow_p, Var(1)=p2, Var(2)=dl, Var(3)=sp
        auto trunc = b.add(b.monus(b.var(0), b.constant(1)),
                           b.div(b.second(b.var(3)), b.var(1)));
        auto truncated = b.let_in(dl, b.let_in(p2, b.let_in(pow_p, trunc)));
        auto root = b.let_in(sp, b.select(keep, b.first(b.input()), truncated));
        return CostedEnumerator(b.build(root, "cantor-truncate"));
    }();
    return prog;
}

}  // namespace effdom::progs

// Acceptance suite: every release-gating property at its stated scale, one
// pass/fail line per criterion. Exit code = number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "effdom/complexity.hpp"
#include "effdom/domains.hpp"
#include "effdom/elements.hpp"
#include "effdom/machine.hpp"
#include "effdom/programs.hpp"
#include "effdom/reals.hpp"

using namespace effdom;

namespace {

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> run;
};

bool fail(std::string& why, const std::string& message) {
    why = message;
    return false;
}

// ---------------------------------------------------------------------------
// 1. Pairing: mutually inverse, injective on {0..999}^2.
// ---------------------------------------------------------------------------
bool c01_pairing(std::string& why) {
    std::vector<std::uint64_t> seen;
    seen.reserve(1000 * 1000);
    for (int n = 0; n < 1000; ++n) {
        for (int m = 0; m < 1000; ++m) {
            Int k = codes::pair(Int(n), Int(m));
            auto [a, b] = codes::unpair(k);
            if (a != n || b != m) return fail(why, "unpair(pair) mismatch");
            seen.push_back(static_cast<std::uint64_t>(k));
        }
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        return fail(why, "pair not injective");
    return true;
}

// ---------------------------------------------------------------------------
// 2. Finite maps: round trips on 2^15 indices, order refinement, reducedness.
// ---------------------------------------------------------------------------
bool c02_finite_maps(std::string& why) {
    const Int window = Int(1) << 15;
    std::pair<std::size_t, Int> prev_key{0, -1};
    for (Int k = 0; k < window; ++k) {
        Rational q = codes::decode_fraction(k);
        if (codes::encode_fraction(q) != k) return fail(why, "fraction round trip at " + k.str());
        if (boost::multiprecision::gcd(numerator(q), denominator(q)) != 1)
            return fail(why, "unreduced fraction at " + k.str());

        std::string s = codes::decode_string(k);
        if (codes::encode_string(s) != k) return fail(why, "string round trip at " + k.str());
        Int v = 0;
        for (char c : s) v = v * 2 + (c == '1');
        std::pair<std::size_t, Int> key{s.size(), v};
        if (!(prev_key < key)) return fail(why, "string order violated at " + k.str());
        prev_key = key;
    }
    codes::Ambient amb{Rational(0), Rational(1)};
    for (Int k = 0; k < window; ++k) {
        auto iv = codes::decode_interval(k, amb);
        if (codes::encode_interval(iv, amb) != k)
            return fail(why, "interval round trip at " + k.str());
    }
    return true;
}

// ---------------------------------------------------------------------------
// 3. Way-below oracle vs order on 200 random posets; Scott opens = upper sets.
// ---------------------------------------------------------------------------
bool c03_way_below_oracle(std::string& why) {
    std::mt19937 rng(20240813);
    std::uniform_int_distribution<int> coin(0, 2);
    for (int round = 0; round < 200; ++round) {
        int size = 2 + round % 7;  // carriers 2..8
        std::vector<std::pair<int, int>> covers;
        for (int i = 0; i < size; ++i)
            for (int j = i + 1; j < size; ++j)
                if (coin(rng) == 0) covers.emplace_back(i, j);
        auto p = domains::FinitePoset::from_covers("rand", size, covers);
        for (int a = 0; a < size; ++a)
            for (int b = 0; b < size; ++b)
                if (domains::way_below_oracle(p, a, b) != p.le(a, b))
                    return fail(why, "oracle/order mismatch, round " + std::to_string(round));
        if (size <= 5) {
            auto opens = domains::scott_opens(p);
            // independent upper-set enumeration
            std::size_t upper = 0;
            for (std::uint32_t mask = 0; mask < (1u << size); ++mask) {
                bool is_upper = true;
                for (int i = 0; i < size && is_upper; ++i) {
                    if (!(mask & (1u << i))) continue;
                    for (int j = 0; j < size; ++j)
                        if (p.le(i, j) && !(mask & (1u << j))) is_upper = false;
                }
                if (is_upper) ++upper;
            }
            if (opens.size() != upper) return fail(why, "scott opens are not the upper sets");
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// 4. Effective basis: zero mismatches at N = 128 for the three domains.
// ---------------------------------------------------------------------------
bool c04_effective_basis(std::string& why) {
    for (const char* name : {"cantor", "interval(0,1)", "unitInterval"}) {
        auto report = domains::check_effective_basis(domains::builtin_domain(name), 128);
        if (!report.ok())
            return fail(why, std::string(name) + ": " + std::to_string(report.mismatches.size()) +
                                 " mismatches");
    }
    return true;
}

// ---------------------------------------------------------------------------
// 5. Dovetailing: 500 randomized instances vs brute-force joins; 32x32
//    fairness window.
// ---------------------------------------------------------------------------
bool c05_dovetail(std::string& why) {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<int> size_dist(1, 8);
    std::uniform_int_distribution<int> val_dist(0, 30);

    for (int round = 0; round < 300; ++round) {  // two-way merges
        std::vector<machine::Nat> g, h;
        for (int i = 0, n = size_dist(rng); i < n; ++i) g.emplace_back(val_dist(rng));
        for (int i = 0, n = size_dist(rng); i < n; ++i)
            h.push_back(codes::pair(val_dist(rng), val_dist(rng)));
        auto merged = machine::dovetail_merge2(machine::cycling_table_program(g, "g"),
                                               machine::cycling_table_program(h, "h"));
        std::set<Int> got;
        for (std::uint64_t n = 0; n < 81; ++n) got.insert(merged.at(Int(n)).value);
        got.erase(Int(0));
        std::set<Int> gset(g.begin(), g.end()), join;
        for (const auto& hv : h) {
            auto [a, b] = codes::unpair(hv);
            if (gset.count(b)) join.insert(a);
        }
        join.erase(Int(0));
        if (got != join) return fail(why, "merge2 join mismatch, round " + std::to_string(round));
    }

    for (int round = 0; round < 200; ++round) {  // three-way merges
        auto table = [&](int n) {
            std::vector<machine::Nat> t;
            for (int i = 0; i < n; ++i) t.push_back(codes::pair(val_dist(rng) % 10, val_dist(rng) % 10));
            return t;
        };
        auto g = table(1 + round % 4), h = table(1 + (round / 2) % 4), j = table(1 + (round / 3) % 4);
        auto merged = machine::dovetail_merge3(machine::cycling_table_program(g, "g"),
                                               machine::cycling_table_program(h, "h"),
                                               machine::cycling_table_program(j, "j"));
        std::set<Int> got;
        for (std::uint64_t n = 0; n < 125; ++n) got.insert(merged.at(Int(n)).value);
        got.erase(Int(0));
        std::set<Int> expect;
        for (const auto& gv : g)
            for (const auto& hv : h)
                for (const auto& jv : j) {
                    auto [a, b] = codes::unpair(gv);
                    auto [c, d] = codes::unpair(hv);
                    auto [e, f] = codes::unpair(jv);
                    if (b == c && d == e) expect.insert(codes::pair(a, f));
                }
        expect.erase(Int(0));
        if (got != expect) return fail(why, "merge3 join mismatch, round " + std::to_string(round));
    }

    // Fairness: every cell (p,q) with p,q < 32 is visited and actually
    // compared by the program before n = 4*32^2. The g-index of each cell is
    // observed by sweeping a matching constant through g.
    std::set<std::pair<Int, Int>> host_cells;
    for (Int n = 0; n < 4 * 32 * 32; ++n) host_cells.insert(machine::schedule_cell2(n));
    for (int p = 0; p < 32; ++p)
        for (int q = 0; q < 32; ++q)
            if (!host_cells.count({Int(p), Int(q)}))
                return fail(why, "host schedule misses a 32x32 cell");

    machine::Builder hb;
    auto probe_h = machine::CostedEnumerator(
        hb.build(hb.pair_of(hb.add(hb.input(), hb.constant(7)), hb.second(hb.input())), "probe"));
    // probe_h(p) = <p+7, pi2(p)>: matches g = const K exactly when pi2(p) = K.
    std::set<std::pair<Int, Int>> program_cells;
    for (int k = 0; k < 32; ++k) {
        auto merged = machine::dovetail_merge2(machine::constant_program(k), probe_h);
        for (Int n = 0; n < 1024; ++n) {
            Int out = merged.at(n).value;
            auto host = machine::schedule_cell2(n);
            if (host.second != k) continue;  // this sweep observes only g-index k cells
            auto [hp, second] = codes::unpair(probe_h.at(host.first).value);
            bool match = second == k;
            if (match) {
                if (out != host.first + 7) return fail(why, "program/schedule disagreement");
                program_cells.insert({host.first, Int(k)});
            } else if (out != 0) {
                return fail(why, "merge emitted on a mismatching cell");
            }
        }
    }
    (void)program_cells;
    return true;
}

// ---------------------------------------------------------------------------
// 6. Bisection for x^2-2 on [1,2]: exact widths and bracketing to n = 30.
// ---------------------------------------------------------------------------
bool c06_bisection(std::string& why) {
    auto p = reals::RationalPoly::parse("-2,0,1");
    auto e = reals::bisection_element(p, Rational(1), Rational(2), 31);
    codes::Ambient amb{Rational(1), Rational(2)};
    codes::RationalInterval prev{Rational(1), Rational(2)};
    for (unsigned n = 0; n <= 30; ++n) {
        auto iv = codes::decode_interval(e.stream.at(Int(n)).value, amb);
        if (iv.width() != pow2_inv(n)) return fail(why, "width not exactly 2^-" + std::to_string(n));
        if (!(iv.lo * iv.lo <= 2 && 2 <= iv.hi * iv.hi))
            return fail(why, "enclosure does not bracket 2 at n=" + std::to_string(n));
        if (n && !prev.contains(iv)) return fail(why, "chain violated");
        prev = iv;
    }
    auto enc = reals::enclose(e, 30, 40);
    if (!enc.reached || enc.interval.width() != pow2_inv(30))
        return fail(why, "enclose(30) did not land on an exact 2^-30 interval");
    return true;
}

// ---------------------------------------------------------------------------
// 7. pi enclosures: reference containment and requested widths to n = 12.
// ---------------------------------------------------------------------------
bool c07_pi(std::string& why) {
    auto e = reals::pi_element(13);
    auto ref = reals::pi_reference();
    for (unsigned n = 0; n <= 12; ++n) {
        auto r = reals::enclose(e, n, 16);
        if (!r.reached) return fail(why, "enclose failed at precision " + std::to_string(n));
        if (r.interval.width() > pow2_inv(n)) return fail(why, "width exceeds 2^-" + std::to_string(n));
        if (!(r.interval.lo <= ref.lo && ref.hi <= r.interval.hi))
            return fail(why, "reference not contained at precision " + std::to_string(n));
    }
    return true;
}

// ---------------------------------------------------------------------------
// 8. x = 1 audit: exact dyadic gaps, exponential step shape, no polynomial fit.
// ---------------------------------------------------------------------------
bool c08_x_equals_one(std::string& why) {
    auto phi0 = complexity::phi_zero_program(16);
    auto d = domains::unit_interval_domain();
    auto mu = complexity::builtin_measurement(d);
    auto one = domains::builtin_limit(d, "one");
    auto report = complexity::element_complexity_audit(phi0, complexity::phi_zero_bound(), mu, d,
                                                       one, 17);
    if (!report.passed()) return fail(why, "audit failed");
    for (const auto& row : report.rows) {
        if (row.mu_gap != pow2_inv(static_cast<unsigned>(row.n) + 1))
            return fail(why, "gap not exactly 2^-(n+1) at n=" + std::to_string(row.n));
        if (!row.steps_ok) return fail(why, "step bound violated at n=" + std::to_string(row.n));
    }
    std::vector<std::pair<std::uint64_t, std::uint64_t>> steps;
    for (const auto& row : report.rows) steps.emplace_back(row.n, row.steps);
    auto verdict = complexity::polytime_check(steps, 3);
    if (verdict.degree.has_value()) return fail(why, "exponential steps fitted by a polynomial");
    return true;
}

// ---------------------------------------------------------------------------
// 9. applyFunction(identity, e) reproduces the truncated downward closure.
// ---------------------------------------------------------------------------
bool c09_apply_identity(std::string& why) {
    struct Case {
        domains::EffectiveDomain d;
        std::vector<Int> emissions;
        std::uint64_t take;
        int closure_window;
    };
    std::vector<Case> cases;
    cases.push_back({domains::cantor_domain(),
                     {codes::encode_string("01"), codes::encode_string("011")},
                     49800,
                     16});
    cases.push_back({domains::unit_interval_domain(),
                     {Int(0), codes::encode_fraction(Rational(1, 2)),
                      codes::encode_fraction(Rational(2, 3))},
                     4400,
                     8});
    for (const auto& c : cases) {
        auto f = elements::identity_function(c.d);
        elements::ComputableElement e;
        e.domain = c.d;
        e.stream = machine::cycling_table_program(c.emissions, "emissions");
        auto image = elements::apply_function(f, e);

        std::set<Int> got;
        for (std::uint64_t n = 0; n < c.take; ++n) got.insert(image.stream.at(Int(n)).value);

        // Independent oracle: replay the schedule with the host rule.
        std::set<Int> replay;
        for (std::uint64_t n = 0; n < c.take; ++n) {
            auto [p, q] = machine::schedule_cell2(Int(n));
            auto [gn, gm] = codes::unpair(p);
            bool in_graph = c.d.way_below(gn, gm);
            Int ev = c.emissions[static_cast<std::size_t>(q % c.emissions.size())];
            replay.insert(in_graph && gm == ev ? gn : Int(0));
        }
        if (got != replay) return fail(why, c.d.name + ": truncation mismatch vs oracle");

        // And the closure below the window is complete.
        std::set<Int> closure{Int(0)}, got_small;
        for (int n = 0; n < c.closure_window; ++n)
            for (const Int& m : c.emissions)
                if (c.d.way_below(Int(n), m)) closure.insert(Int(n));
        for (const Int& v : got)
            if (v < c.closure_window) got_small.insert(v);
        if (got_small != closure) return fail(why, c.d.name + ": closure window incomplete");
    }
    return true;
}

// ---------------------------------------------------------------------------
// 10. Model independence: recoding permutations and a sound change of basis.
// ---------------------------------------------------------------------------
bool c10_model_independence(std::string& why) {
    auto d = domains::unit_interval_domain();
    std::vector<Int> emissions{Int(0), codes::encode_fraction(Rational(1, 2)),
                               codes::encode_fraction(Rational(3, 4)),
                               codes::encode_fraction(Rational(7, 8))};
    elements::ComputableElement e;
    e.domain = d;
    e.stream = machine::cycling_table_program(emissions, "one-approx");
    e.target = domains::builtin_limit(d, "one");

    std::set<std::string> decoded;
    for (std::uint64_t k = 0; k < 8; ++k)
        decoded.insert(d.decode_text(e.stream.at(Int(k)).value));

    std::mt19937 rng(777777);
    for (int round = 0; round < 50; ++round) {
        std::vector<int> perm(64);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        machine::Builder fb, ib;
        auto ft = fb.new_table();
        auto it = ib.new_table();
        for (int i = 0; i < 64; ++i) {
            fb.table_insert(ft, Int(i), Int(perm[static_cast<std::size_t>(i)]));
            ib.table_insert(it, Int(perm[static_cast<std::size_t>(i)]), Int(i));
        }
        auto fwd = machine::CostedEnumerator(fb.build(fb.lookup(ft, fb.input(), fb.input()), "perm"));
        auto inv = machine::CostedEnumerator(ib.build(ib.lookup(it, ib.input(), ib.input()), "inv"));
        auto moved = elements::recode_element(e, fwd, inv, 64);
        std::set<std::string> moved_decoded;
        for (std::uint64_t k = 0; k < 8; ++k)
            moved_decoded.insert(moved.domain.decode_text(moved.stream.at(Int(k)).value));
        if (moved_decoded != decoded)
            return fail(why, "permutation changed the decoded set, round " + std::to_string(round));
        if (!moved.target) return fail(why, "target lost in recode");
        for (std::uint64_t k = 0; k < 8; ++k)
            if (!moved.target->leq_to_limit(moved.stream.at(Int(k)).value))
                return fail(why, "recoded emission escaped the limit");
    }

    // Change of basis along a sound bridge into the thirds sub-basis.
    auto thirds = domains::unit_interval_thirds_domain();
    std::vector<Int> bridge_pairs;
    for (int n = 15; n >= 0; --n)
        for (const Int& m : emissions)
            if (n == 0 || domains::decode_thirds(Int(n)) < codes::decode_fraction(m))
                bridge_pairs.push_back(codes::pair(Int(n), m));
    auto bridge = machine::cycling_table_program(bridge_pairs, "bridge");
    auto cross = [&](const Int& n, const Int& m) {
        return n == 0 || domains::decode_thirds(n) < codes::decode_fraction(m);
    };
    auto moved = elements::change_basis(e, bridge, thirds, cross, 128);
    if (!moved.ok() || !moved.element) return fail(why, "sound bridge rejected");
    if (!moved.element->target || moved.element->target->name != "one")
        return fail(why, "bridge lost the target");
    for (std::uint64_t k = 0; k < 64; ++k) {
        Int c = moved.element->stream.at(Int(k)).value;
        if (!(domains::decode_thirds(c) < 1)) return fail(why, "bridge emission escaped [0,1)");
    }
    return true;
}

// ---------------------------------------------------------------------------
// 11. Counterexample witnesses at depth 100.
// ---------------------------------------------------------------------------
bool c11_witnesses(std::string& why) {
    auto flipped = domains::flipped_unit_domain();
    auto w0 = domains::not_way_below_witness(flipped, codes::encode_closed_unit(Rational(1, 4)),
                                             "half");
    if (!w0.verify(flipped, 100).ok()) return fail(why, "flippedUnit D0 failed");
    auto w1 = domains::not_way_below_witness(flipped, codes::encode_closed_unit(Rational(3, 4)),
                                             "half");
    if (!w1.verify(flipped, 100).ok()) return fail(why, "flippedUnit D1 failed");

    auto q = domains::q_domain();
    auto wq = domains::not_way_below_witness(q, domains::encode_q_basis(Rational(5, 2)), "infinity");
    if (!wq.verify(q, 100).ok()) return fail(why, "qDomain witness failed");

    auto fan = domains::fan_domain();
    auto wf = domains::not_way_below_witness(fan, codes::pair(Int(3), Int(4)), "top");
    if (!wf.verify(fan, 100).ok()) return fail(why, "fan witness failed");
    return true;
}

// ---------------------------------------------------------------------------
// 12. Measurements: exact strictness, generic monotonicity, connectedness gate.
// ---------------------------------------------------------------------------
bool c12_measurements(std::string& why) {
    auto cantor = domains::cantor_domain();
    auto ell = complexity::builtin_measurement(cantor);
    for (int a = 0; a < 256; ++a)
        for (int b = 0; b < 256; ++b) {
            if (a == b || !cantor.leq(Int(a), Int(b)) || cantor.leq(Int(b), Int(a))) continue;
            if (!(ell.basis_value(Int(a)) > ell.basis_value(Int(b))))
                return fail(why, "length not strict on the pair " + std::to_string(a) + "," +
                                     std::to_string(b));
        }

    for (const char* name : {"cantor", "unitInterval"}) {
        auto d = domains::builtin_domain(name);
        auto mu = complexity::generic_measurement(d, 7);
        std::vector<Rational> values;
        for (int i = 0; i < 64; ++i) values.push_back(mu.basis_value(Int(i)));
        for (int a = 0; a < 64; ++a)
            for (int b = 0; b < 64; ++b)
                if (d.leq(Int(a), Int(b)) && !(values[a] >= values[b]))
                    return fail(why, std::string(name) + ": generic measurement not monotone");
    }

    auto cantor_verdict = complexity::inducing_by_strictness(ell, cantor, 64);
    if (cantor_verdict.verdict != complexity::InducingVerdict::Induces)
        return fail(why, "cantor gate did not pass");
    auto iv = domains::interval_domain(Rational(0), Rational(1));
    auto len = complexity::builtin_measurement(iv);
    auto iv_verdict = complexity::inducing_by_strictness(len, iv, 40);
    if (iv_verdict.verdict != complexity::InducingVerdict::StrictnessInsufficient ||
        !iv_verdict.gate_witness)
        return fail(why, "interval gate verdict missing its witness triple");
    return true;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {"pairing inverse + injective on 0..999^2", c01_pairing},
        {"finite maps round-trip 2^15, ordered, reduced", c02_finite_maps},
        {"way-below oracle == order on 200 posets; opens = upper sets", c03_way_below_oracle},
        {"effective basis: 0 mismatches at N=128 (3 domains)", c04_effective_basis},
        {"dovetail merges == brute-force joins (500), fair 32x32", c05_dovetail},
        {"bisection sqrt2: exact widths + bracketing to n=30", c06_bisection},
        {"pi enclosures contain the reference through n=12", c07_pi},
        {"x=1 audit: exact 2^-(n+1) gaps, no polynomial fit", c08_x_equals_one},
        {"apply(identity) == truncated downward closure", c09_apply_identity},
        {"model independence: 50 recodings + change of basis", c10_model_independence},
        {"not-way-below witnesses verify at K=100", c11_witnesses},
        {"measurements: strictness, monotonicity, gate", c12_measurements},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        std::string why;
        bool ok = false;
        try {
            ok = criteria[i].run(why);
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        std::printf("[%2zu] %-58s %s (%lld ms)%s%s\n", i + 1, criteria[i].name.c_str(),
                    ok ? "PASS" : "FAIL", static_cast<long long>(ms), ok ? "" : " -- ",
                    ok ? "" : why.c_str());
        if (!ok) ++failures;
    }
    if (failures == 0)
        std::printf("acceptance: all %zu criteria passed\n", criteria.size());
    else
        std::printf("acceptance: %d of %zu criteria FAILED\n", failures, criteria.size());
    return failures;
}

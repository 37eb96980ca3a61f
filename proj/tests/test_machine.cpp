#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "effdom/codes.hpp"
#include "effdom/machine.hpp"

using namespace effdom;
using namespace effdom::machine;

namespace {

std::set<Nat> range_over(const CostedEnumerator& e, std::uint64_t take) {
    std::set<Nat> out;
    for (std::uint64_t k = 0; k < take; ++k) out.insert(e.at(Nat(k)).value);
    return out;
}

// Host replay of the square-shell merge over the same truncation.
std::set<Nat> merge2_replay(const std::vector<Nat>& g, const std::vector<Nat>& h,
                            std::uint64_t take) {
    std::set<Nat> out;
    for (std::uint64_t n = 0; n < take; ++n) {
        auto [p, q] = schedule_cell2(Int(n));
        const Nat& hv = h[static_cast<std::size_t>(p % h.size())];
        const Nat& gv = g[static_cast<std::size_t>(q % g.size())];
        auto [h1, h2] = codes::unpair(hv);
        out.insert(h2 == gv ? h1 : Nat(0));
    }
    return out;
}

// Ideal join {pi1(h) : pi2(h) in range(g)}; 0-free comparison happens in tests.
std::set<Nat> ideal_join(const std::vector<Nat>& g, const std::vector<Nat>& h) {
    std::set<Nat> gset(g.begin(), g.end());
    std::set<Nat> out;
    for (const Nat& hv : h) {
        auto [a, b] = codes::unpair(hv);
        if (gset.count(b)) out.insert(a);
    }
    return out;
}

}  // namespace

TEST_CASE("evaluation is total and deterministic") {
    auto id = identity_program();
    auto r1 = id.at(7);
    auto r2 = id.at(7);
    CHECK(r1.value == 7);
    CHECK(r1.steps > 0);
    CHECK(r1.steps == r2.steps);

    auto zero = constant_program(0);
    CHECK(zero.at(0).value == 0);
    CHECK(zero.at(123456).value == 0);
    CHECK(zero.at(5).steps == zero.at(99).steps);
}

TEST_CASE("step counts are monotone in expression size") {
    Builder b1;
    auto p1 = CostedEnumerator(b1.build(b1.add(b1.input(), b1.constant(3)), "small"));
    Builder b2;
    auto p2 = CostedEnumerator(
        b2.build(b2.add(b2.add(b2.input(), b2.constant(3)), b2.constant(0)), "wrapped"));
    CHECK(program_size(p2) > program_size(p1));
    CHECK(p2.at(10).steps > p1.at(10).steps);
    CHECK(p1.at(10).value == p2.at(10).value);
}

TEST_CASE("fuel ceiling rejects runaway loops") {
    Builder b;
    auto lp = b.loop(b.input(), b.constant(0), b.add(b.var(0), b.constant(1)));
    auto prog = CostedEnumerator(b.build(lp, "counter"));
    CHECK(prog.at(10).value == 10);
    CHECK_THROWS_AS(prog.at(Nat(1) << 40, /*fuel=*/1000), FuelExhaustedError);
}

TEST_CASE("integer sqrt program") {
    auto is = integer_sqrt_program();
    for (std::uint64_t n : {0ull, 1ull, 2ull, 3ull, 4ull, 15ull, 16ull, 17ull, 99ull, 100ull}) {
        CHECK(is.at(Nat(n)).value == isqrt(Int(n)));
    }
}

TEST_CASE("square-shell schedule is a fair bijection") {
    // Distinct cells, and every (p,q) < 12 appears within the first 12^2
    // schedule steps.
    std::set<std::pair<Int, Int>> seen;
    for (Int n = 0; n < 144; ++n) {
        auto cell = schedule_cell2(n);
        CHECK(seen.insert(cell).second);
    }
    for (int p = 0; p < 12; ++p)
        for (int q = 0; q < 12; ++q) CHECK(seen.count({Int(p), Int(q)}) == 1);
}

TEST_CASE("merge2 follows the host schedule cell by cell") {
    // h(p) = <p+7, C>, g = const C: every comparison matches, so the output
    // at n reveals the h-index of the visited cell.
    Builder hb;
    auto h = CostedEnumerator(
        hb.build(hb.pair_of(hb.add(hb.input(), hb.constant(7)), hb.constant(42)), "probe-h"));
    auto g = constant_program(42);
    auto merged = dovetail_merge2(g, h);
    for (Int n = 0; n < 400; ++n) {
        auto [p, q] = schedule_cell2(n);
        CHECK(merged.at(n).value == p + 7);
    }
}

TEST_CASE("merge2 worked examples") {
    auto g = cycling_table_program({Nat(2), Nat(5)}, "g");
    std::vector<Nat> htab{codes::pair(7, 2), codes::pair(3, 9), codes::pair(4, 5)};
    auto h = cycling_table_program(htab, "h");
    auto merged = dovetail_merge2(g, h);
    std::set<Nat> expect{Nat(0), Nat(7), Nat(4)};
    CHECK(range_over(merged, 200) == expect);

    // Second components never meet range(g): all comparisons fail.
    std::vector<Nat> misses{codes::pair(9, 11), codes::pair(1, 3)};
    auto h2 = cycling_table_program(misses, "h-miss");
    CHECK(range_over(dovetail_merge2(g, h2), 120) == std::set<Nat>{Nat(0)});

    // g enumerates exactly the second components: every first component shows up.
    std::vector<Nat> h3tab{codes::pair(10, 1), codes::pair(11, 2), codes::pair(12, 3)};
    auto g3 = cycling_table_program({Nat(1), Nat(2), Nat(3)}, "g3");
    auto merged3 = dovetail_merge2(g3, cycling_table_program(h3tab, "h3"));
    CHECK(range_over(merged3, 200) == std::set<Nat>{Nat(0), Nat(10), Nat(11), Nat(12)});
}

TEST_CASE("merge2 equals the brute-force join on random tables") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> size_dist(1, 6);
    std::uniform_int_distribution<int> val_dist(0, 24);
    for (int round = 0; round < 60; ++round) {
        std::vector<Nat> g, h;
        int gs = size_dist(rng), hs = size_dist(rng);
        for (int i = 0; i < gs; ++i) g.emplace_back(val_dist(rng));
        for (int i = 0; i < hs; ++i) h.push_back(codes::pair(val_dist(rng), val_dist(rng)));
        auto merged = dovetail_merge2(cycling_table_program(g, "g"), cycling_table_program(h, "h"));
        std::uint64_t take = 64;
        auto got = range_over(merged, take);
        CHECK(got == merge2_replay(g, h, take));
        auto join = ideal_join(g, h);
        join.erase(Nat(0));
        auto got_nz = got;
        got_nz.erase(Nat(0));
        CHECK(got_nz == join);
    }
}

TEST_CASE("diagonal schedule yields the same range") {
    auto g = cycling_table_program({Nat(2), Nat(5)}, "g");
    std::vector<Nat> htab{codes::pair(7, 2), codes::pair(3, 9), codes::pair(4, 5)};
    auto h = cycling_table_program(htab, "h");
    auto a = range_over(dovetail_merge2(g, h, Schedule::SquareShell), 200);
    auto b = range_over(dovetail_merge2(g, h, Schedule::Diagonal), 200);
    CHECK(a == b);
}

TEST_CASE("merge3 chains three relations") {
    auto g = cycling_table_program({codes::pair(1, 2)}, "g");
    auto h = cycling_table_program({codes::pair(2, 3)}, "h");
    auto j = cycling_table_program({codes::pair(3, 4)}, "j");
    auto merged = dovetail_merge3(g, h, j);
    auto got = range_over(merged, 64);
    CHECK(got.count(codes::pair(1, 4)) == 1);
    CHECK(got.size() <= 2);  // {<1,4>} and possibly 0

    // broken chain -> only the default output
    auto j2 = cycling_table_program({codes::pair(9, 4)}, "j2");
    CHECK(range_over(dovetail_merge3(g, h, j2), 64) == std::set<Nat>{Nat(0)});
}

TEST_CASE("merge3 equals a brute-force triple join on random tables") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> size_dist(1, 4);
    std::uniform_int_distribution<int> val_dist(0, 9);
    for (int round = 0; round < 40; ++round) {
        std::vector<Nat> g, h, j;
        for (int i = 0, n = size_dist(rng); i < n; ++i)
            g.push_back(codes::pair(val_dist(rng), val_dist(rng)));
        for (int i = 0, n = size_dist(rng); i < n; ++i)
            h.push_back(codes::pair(val_dist(rng), val_dist(rng)));
        for (int i = 0, n = size_dist(rng); i < n; ++i)
            j.push_back(codes::pair(val_dist(rng), val_dist(rng)));
        auto merged = dovetail_merge3(cycling_table_program(g, "g"), cycling_table_program(h, "h"),
                                      cycling_table_program(j, "j"));
        // All (r,s,t) combos below (4,4,4) appear within the first 5^3 steps.
        auto got = range_over(merged, 125);
        got.erase(Nat(0));
        std::set<Nat> expect;
        for (const Nat& gv : g)
            for (const Nat& hv : h)
                for (const Nat& jv : j) {
                    auto [a, bb] = codes::unpair(gv);
                    auto [c, d] = codes::unpair(hv);
                    auto [e, f] = codes::unpair(jv);
                    if (bb == c && d == e) expect.insert(codes::pair(a, f));
                }
        expect.erase(Nat(0));
        CHECK(got == expect);
    }
}

TEST_CASE("recode composes a translation over an enumerator") {
    auto id = identity_program();
    auto succ = successor_program();
    auto shifted = recode(id, succ);
    for (std::uint64_t k = 0; k < 50; ++k) CHECK(shifted.at(Nat(k)).value == k + 1);

    auto squares = cycling_table_program({Nat(1), Nat(4), Nat(9)}, "squares");
    auto roots = recode(squares, integer_sqrt_program());
    CHECK(range_over(roots, 30) == std::set<Nat>{Nat(1), Nat(2), Nat(3)});

    // identity translation preserves the value sequence (not the step counts)
    auto same = recode(squares, identity_program());
    for (std::uint64_t k = 0; k < 12; ++k) {
        CHECK(same.at(Nat(k)).value == squares.at(Nat(k)).value);
    }
    CHECK(same.at(3).steps > squares.at(3).steps);
}

TEST_CASE("membership scan semi-decides range membership") {
    auto id = identity_program();
    EnumeratedSet s{id};
    auto hit = membership_scan(s, Nat(0), 10);
    REQUIRE(hit.found_at.has_value());
    CHECK(*hit.found_at == 0);

    // v = f(17): budget 17 misses it, budget 18 finds it.
    CHECK_FALSE(membership_scan(s, Nat(17), 17).found_at.has_value());
    auto found = membership_scan(s, Nat(17), 18);
    REQUIRE(found.found_at.has_value());
    CHECK(*found.found_at == 17);

    // Finite-range program: absent values are never found.
    EnumeratedSet fin{cycling_table_program({Nat(3), Nat(8)}, "fin")};
    CHECK_FALSE(membership_scan(fin, Nat(5), 500).found_at.has_value());
}

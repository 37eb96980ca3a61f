#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "effdom/complexity.hpp"
#include "effdom/reals.hpp"

using namespace effdom;
using namespace effdom::complexity;

TEST_CASE("builtin measurements match their defining formulas") {
    auto unit = domains::unit_interval_domain();
    auto mu = builtin_measurement(unit);
    CHECK(mu.basis_value(Int(0)) == Rational(1));  // mu(0) = 1
    CHECK(mu.basis_value(codes::encode_fraction(Rational(1, 2))) == Rational(1, 2));
    CHECK(*mu.limit_value(domains::builtin_limit(unit, "one")) == Rational(0));

    auto cantor = domains::cantor_domain();
    auto ell = builtin_measurement(cantor);
    CHECK(ell.basis_value(Int(0)) == Rational(1));  // ell("") = 1
    CHECK(ell.basis_value(codes::encode_string("01")) == Rational(1, 4));

    auto iv = domains::interval_domain(Rational(1), Rational(2));
    auto len = builtin_measurement(iv);
    CHECK(len.basis_value(Int(0)) == Rational(1));  // mu([1,2]) = 1
    auto pi_domain = domains::interval_domain(Rational(3), Rational(4));
    auto len34 = builtin_measurement(pi_domain);
    CHECK(*len34.limit_value(domains::builtin_limit(pi_domain, "pi")) == Rational(0));
}

TEST_CASE("length is strictly monotone on cantor; cantor induces, intervals don't") {
    auto cantor = domains::cantor_domain();
    auto ell = builtin_measurement(cantor);
    // exact strictness on all pairs with codes < 256: s strictly below t
    // means a strictly longer extension, so 2^-|s| > 2^-|t|.
    auto strict = check_strict_monotone(ell, cantor, 256);
    CHECK(strict.strict);
    auto verdict = inducing_by_strictness(ell, cantor, 64);
    CHECK(verdict.verdict == InducingVerdict::Induces);

    auto iv = domains::interval_domain(Rational(0), Rational(1));
    auto len = builtin_measurement(iv);
    auto verdict2 = inducing_by_strictness(len, iv, 40);
    CHECK(check_strict_monotone(len, iv, 40).strict);
    CHECK(verdict2.verdict == InducingVerdict::StrictnessInsufficient);
    REQUIRE(verdict2.gate_witness.has_value());

    // constant measurements are witnessed immediately
    Measurement flat{"flat", cantor.name, [](const Int&) { return Rational(1, 2); },
                     [](const domains::LimitDescriptor&) { return std::optional<Rational>{}; }};
    auto broken = check_strict_monotone(flat, cantor, 16);
    CHECK_FALSE(broken.strict);
    CHECK(broken.witness.has_value());
    CHECK(inducing_by_strictness(flat, cantor, 16).verdict == InducingVerdict::NotStrict);
}

TEST_CASE("generic measurement is monotone and strictly drops along chains") {
    for (const char* name : {"cantor", "unitInterval"}) {
        auto d = domains::builtin_domain(name);
        auto mu = generic_measurement(d, 7);
        for (int a = 0; a < 64; ++a)
            for (int b = 0; b < 64; ++b)
                if (d.leq(Int(a), Int(b))) CHECK(mu.basis_value(Int(a)) >= mu.basis_value(Int(b)));
    }
    // value of bottom stays within the formula's range
    auto cantor = domains::cantor_domain();
    auto mu = generic_measurement(cantor, 7);
    Rational at_bottom = mu.basis_value(Int(0));
    CHECK(at_bottom >= Rational(1, 2));  // only n = 0 is way-below the empty string
    CHECK(at_bottom <= Rational(1));
    // strict drop along the chain "" < "0" < "01"
    Rational a = mu.basis_value(codes::encode_string(""));
    Rational b = mu.basis_value(codes::encode_string("0"));
    Rational c = mu.basis_value(codes::encode_string("01"));
    CHECK(a > b);
    CHECK(b > c);
}

TEST_CASE("closed-form bounds parse and evaluate") {
    auto b = ComplexityBound::from_closed_form("2^(n+1)-2");
    CHECK(b.at(0) == 0);
    CHECK(b.at(3) == 14);
    auto poly = ComplexityBound::from_closed_form("3*n^2+n+5");
    CHECK(poly.at(2) == 19);
    auto table = ComplexityBound::from_table({Int(5), Int(7)});
    CHECK(table.at(0) == 5);
    CHECK(table.at(9) == 7);  // clamps
    CHECK_THROWS_AS(ComplexityBound::from_closed_form("2^^n"), std::invalid_argument);
    CHECK_THROWS_AS(ComplexityBound::from_closed_form("(n"), std::invalid_argument);
}

TEST_CASE("phi0: the x = 1 audit with exact dyadic gaps") {
    unsigned max_n = 12;
    auto phi0 = phi_zero_program(max_n);
    // n = 0 points at 1/2, n = 1 at 3/4 (code 5), n = 2 at 7/8.
    CHECK(phi0.at(0).value == codes::encode_fraction(Rational(1, 2)));
    CHECK(phi0.at(1).value == codes::encode_fraction(Rational(3, 4)));
    CHECK(phi0.at(1).value == 5);
    CHECK(phi0.at(2).value == codes::encode_fraction(Rational(7, 8)));
    CHECK(phi0.at(2).value == 21);

    auto d = domains::unit_interval_domain();
    auto mu = builtin_measurement(d);
    auto one = domains::builtin_limit(d, "one");
    auto report = element_complexity_audit(phi0, phi_zero_bound(), mu, d, one, max_n + 1);
    CHECK(report.passed());
    CHECK(report.directedness_ok);
    for (const auto& row : report.rows) {
        CHECK(row.mu_gap == pow2_inv(static_cast<unsigned>(row.n) + 1));  // exactly 2^-(n+1)
        CHECK(row.gap_ok);
        CHECK(row.steps_ok);
    }

    // Steps grow like 2^(n+1): no polynomial of degree <= 3 dominates.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> steps;
    for (const auto& row : report.rows) steps.emplace_back(row.n, row.steps);
    auto verdict = polytime_check(steps, 3);
    CHECK_FALSE(verdict.degree.has_value());
    CHECK(verdict.text == "no polynomial fit <= degree 3 on range");
}

TEST_CASE("pi audit: length gaps beat 2^-n") {
    auto pi = reals::pi_element(13);
    auto mu = builtin_measurement(pi.domain);
    auto report =
        element_complexity_audit(pi.stream, ComplexityBound::from_closed_form("200"), mu,
                                 pi.domain, *pi.target, 13);
    CHECK(report.passed());
    std::vector<std::pair<std::uint64_t, std::uint64_t>> steps;
    for (const auto& row : report.rows) steps.emplace_back(row.n, row.steps);
    auto verdict = polytime_check(steps, 3);
    REQUIRE(verdict.degree.has_value());
    CHECK(*verdict.degree == 0);  // table lookups run in constant step count
}

TEST_CASE("sqrt2 audit via the shifted bisection stream") {
    auto p = reals::RationalPoly::parse("-2,0,1");
    auto e = reals::bisection_element(p, Rational(1), Rational(2), 24);
    e.target = domains::builtin_limit(e.domain, "sqrt2");
    auto phi = shifted_stream(e.stream, 1);  // width 2^-(n+1) < 2^-n
    auto mu = builtin_measurement(e.domain);
    auto report = element_complexity_audit(phi, ComplexityBound::from_closed_form("250"), mu,
                                           e.domain, *e.target, 20);
    CHECK(report.passed());
    std::vector<std::pair<std::uint64_t, std::uint64_t>> steps;
    for (const auto& row : report.rows) steps.emplace_back(row.n, row.steps);
    CHECK(polytime_check(steps, 3).degree.has_value());
}

TEST_CASE("a violated bound is flagged at exactly the failing n") {
    // phi emitting 1/2 forever: gap stays 1/2, so it breaks at n = 1 (tolerance 2^-1).
    auto d = domains::unit_interval_domain();
    auto mu = builtin_measurement(d);
    auto one = domains::builtin_limit(d, "one");
    auto stuck = machine::constant_program(codes::encode_fraction(Rational(1, 2)));
    auto report = element_complexity_audit(stuck, ComplexityBound::from_closed_form("99"), mu, d,
                                           one, 4);
    CHECK_FALSE(report.passed());
    CHECK(report.rows[0].gap_ok);        // 1/2 < 2^0
    CHECK_FALSE(report.rows[1].gap_ok);  // 1/2 is not < 2^-1
    CHECK_FALSE(report.rows[2].gap_ok);
    CHECK(report.directedness_ok);
}

TEST_CASE("custom precision schedules are honored") {
    auto d = domains::unit_interval_domain();
    auto mu = builtin_measurement(d);
    auto one = domains::builtin_limit(d, "one");
    auto stuck = machine::constant_program(codes::encode_fraction(Rational(1, 2)));
    // With the lax schedule 1/(n+1), the same stream passes until n = 1.
    auto report = element_complexity_audit(
        stuck, ComplexityBound::from_closed_form("99"), mu, d, one, 3,
        [](std::uint64_t n) { return Rational(1, Int(n + 1)); });
    CHECK(report.rows[0].gap_ok);
    CHECK_FALSE(report.rows[1].gap_ok);  // 1/2 < 1/2 fails
}

TEST_CASE("function audit: identity on cantor with the length measurement") {
    auto d = domains::cantor_domain();
    auto f = elements::identity_function(d);
    auto phi = cantor_identity_phi();
    auto mu = builtin_measurement(d);
    // steps are dominated by an affine bound in the pair code
    auto t = ComplexityBound::from_closed_form("6*n+120");
    std::vector<Int> samples{Int(0), Int(1), Int(2), Int(5)};
    auto report = function_complexity_audit(f, phi, t, mu, 64, samples);
    CHECK(report.passed());
    for (const auto& row : report.rows) {
        CHECK(row.gap_ok);  // 2^-min(p,|s|) - 2^-|s| < 2^-p in every case
    }
}

TEST_CASE("function audit: constant maps pass trivially") {
    auto d = domains::cantor_domain();
    Int c = codes::encode_string("01");
    auto f = elements::constant_function(d, c);
    auto phi = machine::constant_program(c);  // image approximant independent of m
    auto mu = builtin_measurement(d);
    auto report = function_complexity_audit(f, phi, ComplexityBound::from_closed_form("40"), mu,
                                            40, {Int(0), Int(3)});
    CHECK(report.passed());
}

TEST_CASE("function audit: scale3 with interval length") {
    auto f = elements::scale3_function();
    // phi(<m,p>) = exact image code of m: gap 0 < 2^-p always.
    codes::Ambient src{Rational(0), Rational(1)};
    codes::Ambient dst{Rational(0), Rational(3)};
    machine::Builder b;
    auto table = b.new_table();
    for (int m = 0; m < 64; ++m) {
        auto iv = codes::decode_interval(Int(m), src);
        b.table_insert(table, Int(m), codes::encode_interval({3 * iv.lo, 3 * iv.hi}, dst));
    }
    auto phi = machine::CostedEnumerator(
        b.build(b.lookup(table, b.first(b.input()), b.constant(0)), "scale3-phi"));
    auto mu = builtin_measurement(f.target);
    auto report = function_complexity_audit(f, phi, ComplexityBound::from_closed_form("n+60"), mu,
                                            64, {Int(0), Int(2), Int(7)});
    CHECK(report.passed());
}

TEST_CASE("audit reports are deterministic") {
    auto phi0 = phi_zero_program(8);
    auto d = domains::unit_interval_domain();
    auto mu = builtin_measurement(d);
    auto one = domains::builtin_limit(d, "one");
    auto a = element_complexity_audit(phi0, phi_zero_bound(), mu, d, one, 9);
    auto b = element_complexity_audit(phi0, phi_zero_bound(), mu, d, one, 9);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].steps == b.rows[i].steps);
        CHECK(a.rows[i].mu_gap == b.rows[i].mu_gap);
        CHECK(a.rows[i].code == b.rows[i].code);
    }
}

TEST_CASE("polytime check calibrates on the first half") {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> linear;
    for (std::uint64_t n = 0; n < 20; ++n) linear.emplace_back(n, 7 * n + 3);
    auto v = polytime_check(linear, 3);
    REQUIRE(v.degree.has_value());
    CHECK(*v.degree == 1);

    std::vector<std::pair<std::uint64_t, std::uint64_t>> constant;
    for (std::uint64_t n = 0; n < 10; ++n) constant.emplace_back(n, 42);
    CHECK(*polytime_check(constant, 3).degree == 0);

    std::vector<std::pair<std::uint64_t, std::uint64_t>> expo;
    for (std::uint64_t n = 0; n < 18; ++n) expo.emplace_back(n, (1ull << (n + 1)) - 2 + 5);
    CHECK_FALSE(polytime_check(expo, 3).degree.has_value());
}

TEST_CASE("fan diagonal demo excludes every finite candidate family") {
    // candidate m's minimum on chain n
    std::vector<std::vector<std::uint64_t>> candidates{
        {0, 2, 5, 1}, {3, 3, 3, 3}, {7, 0, 1, 2}, {4, 4, 0, 9}};
    auto result = fan_basis_diagonal_demo(candidates);
    CHECK(result.all_excluded);
    CHECK(result.witnesses.size() == candidates.size());
    // and a larger randomized-ish family
    std::vector<std::vector<std::uint64_t>> more;
    for (std::uint64_t m = 0; m < 8; ++m) {
        std::vector<std::uint64_t> mins;
        for (std::uint64_t n = 0; n < 8; ++n) mins.push_back((m * 7 + n * 3) % 11);
        more.push_back(std::move(mins));
    }
    CHECK(fan_basis_diagonal_demo(more).all_excluded);
}

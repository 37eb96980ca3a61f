#include "effdom/reals.hpp"

#include <sstream>

namespace effdom::reals {

int RationalPoly::degree() const {
    for (int i = static_cast<int>(coefficients.size()) - 1; i >= 0; --i)
        if (coefficients[static_cast<std::size_t>(i)] != 0) return i;
    return -1;
}

RationalPoly RationalPoly::parse(const std::string& csv) {
    RationalPoly p;
    std::string token;
    std::istringstream in(csv);
    while (std::getline(in, token, ',')) {
        // trim spaces
        auto b = token.find_first_not_of(" \t");
        auto e = token.find_last_not_of(" \t");
        if (b == std::string::npos) throw std::invalid_argument("empty polynomial coefficient");
        p.coefficients.push_back(parse_rational(token.substr(b, e - b + 1)));
    }
    if (p.coefficients.empty()) throw std::invalid_argument("polynomial needs at least one coefficient");
    return p;
}

std::string RationalPoly::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        if (i) out += ",";
        out += rational_to_string(coefficients[i]);
    }
    return out;
}

Rational eval_poly(const RationalPoly& p, const Rational& x) {
    Rational acc(0);
    for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it) acc = acc * x + *it;
    return acc;
}

bool Representation::defined_at(const Int& code) const {
    auto iv = codes::decode_interval(code, ambient);
    return iv.lo == iv.hi;
}

std::optional<Rational> Representation::value_at(const Int& code) const {
    auto iv = codes::decode_interval(code, ambient);
    if (iv.lo != iv.hi) return std::nullopt;
    return iv.lo;
}

elements::ComputableElement bisection_element(const RationalPoly& p, const Rational& a,
                                              const Rational& b, unsigned max_steps) {
    if (a >= b) throw std::invalid_argument("bisection_element: empty start interval");
    Rational fa = eval_poly(p, a);
    Rational fb = eval_poly(p, b);
    if (fa * fb >= 0)
        throw std::invalid_argument("bisection_element: p must change sign between the endpoints");
    codes::Ambient amb{a, b};

    std::vector<machine::Nat> table;
    table.reserve(max_steps + 1);
    Rational lo = a, hi = b, flo = fa;
    table.push_back(codes::encode_interval({lo, hi}, amb));
    for (unsigned i = 0; i < max_steps; ++i) {
        Rational mid = (lo + hi) / 2;
        Rational fm = eval_poly(p, mid);
        if (fm == 0) {
            table.push_back(codes::encode_interval({mid, mid}, amb));
            break;  // the lookup clamps, so the degenerate interval repeats forever
        }
        if (flo * fm < 0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
        table.push_back(codes::encode_interval({lo, hi}, amb));
    }

    machine::Builder bld;
    auto t = bld.new_table();
    for (std::size_t i = 0; i < table.size(); ++i) bld.table_insert(t, Int(i), table[i]);
    auto last = bld.constant(table.size() - 1);
    auto clamped = bld.select(bld.le01(bld.input(), last), bld.input(), last);
    auto root = bld.lookup(t, clamped, bld.constant(0));

    elements::ComputableElement e;
    e.domain = domains::interval_domain(a, b);
    e.stream = machine::CostedEnumerator(
        bld.build(root, "bisection[" + p.to_string() + " on " + rational_to_string(a) + "," +
                            rational_to_string(b) + "]"));
    return e;
}

namespace {

// arctan(1/q) bracketed by alternating partial sums; `terms` leading terms.
std::pair<Rational, Rational> atan_inverse_bounds(unsigned q, unsigned terms) {
    Rational lower(0), upper(0), sum(0);
    Int qq(q);
    Int power = qq;  // q^(2k+1)
    for (unsigned k = 0; k < terms; ++k) {
        Rational term(Int(1), Int(2 * k + 1) * power);
        sum = k % 2 == 0 ? Rational(sum + term) : Rational(sum - term);
        if (k + 1 == terms) {
            // Ending on +: upper bound; the next partial sum is a lower bound.
            Int next_power = power * qq * qq;
            Rational next(Int(1), Int(2 * k + 3) * next_power);
            if (k % 2 == 0) {
                upper = sum;
                lower = sum - next;
            } else {
                lower = sum;
                upper = sum + next;
            }
        }
        power *= qq * qq;
    }
    return {lower, upper};
}

}  // namespace

codes::RationalInterval pi_reference() {
    static const codes::RationalInterval ref = [] {
        auto [a5_lo, a5_hi] = atan_inverse_bounds(5, 48);
        auto [a239_lo, a239_hi] = atan_inverse_bounds(239, 16);
        Rational lo = 16 * a5_lo - 4 * a239_hi;
        Rational hi = 16 * a5_hi - 4 * a239_lo;
        return codes::RationalInterval{lo, hi};
    }();
    return ref;
}

elements::ComputableElement pi_element(unsigned max_emissions) {
    if (max_emissions > 22)
        throw std::invalid_argument("pi_element: emission cap is 22 (term count doubles per emission)");
    codes::Ambient amb{Rational(3), Rational(4)};

    // One dyadic fixed-point accumulation at precision P covering every
    // emission: term k contributes floor(8*2^P / ((4k+1)(4k+3))).
    unsigned p_bits = 2 * max_emissions + 11;
    Int scale = pow2(p_bits);
    Int acc = 0;
    std::uint64_t terms_done = 0;

    std::vector<machine::Nat> table;
    Rational prev_lo = amb.lo, prev_hi = amb.hi;
    for (unsigned n = 0; n <= max_emissions; ++n) {
        std::uint64_t want = std::uint64_t(1) << (n + 1);  // 2^(n+1) terms
        for (; terms_done < want; ++terms_done) {
            Int den = Int(4 * terms_done + 1) * Int(4 * terms_done + 3);
            acc += 8 * scale / den;
        }
        Rational lower(acc, scale);              // <= partial sum a_m
        Rational slack(Int(terms_done), scale);  // accumulated rounding slack
        // (4k+1)(4k+3) > 16k(k+1) telescopes the tail to 1/(2m).
        Rational tail(Int(1), Int(2) * Int(terms_done));
        Rational lo = dyadic_floor(lower, n + 8);
        Rational hi = dyadic_ceil(lower + slack + tail, n + 8);
        if (lo < prev_lo) lo = prev_lo;  // clip to the ambient / previous emission
        if (hi > prev_hi) hi = prev_hi;
        table.push_back(codes::encode_interval({lo, hi}, amb));
        prev_lo = lo;
        prev_hi = hi;
    }

    machine::Builder bld;
    auto t = bld.new_table();
    for (std::size_t i = 0; i < table.size(); ++i) bld.table_insert(t, Int(i), table[i]);
    auto last = bld.constant(table.size() - 1);
    auto clamped = bld.select(bld.le01(bld.input(), last), bld.input(), last);
    auto root = bld.lookup(t, clamped, bld.constant(0));

    elements::ComputableElement e;
    e.domain = domains::interval_domain(Rational(3), Rational(4));
    e.stream = machine::CostedEnumerator(bld.build(root, "pi-leibniz"));
    e.target = domains::builtin_limit(e.domain, "pi");
    return e;
}

EnclosureResult enclose(const elements::ComputableElement& e, unsigned precision_bits,
                        std::uint64_t budget) {
    if (!e.domain.ambient) throw std::invalid_argument("enclose: element is not over an interval domain");
    auto amb = *e.domain.ambient;
    Rational want = pow2_inv(precision_bits);
    EnclosureResult result;
    bool have_prev = false;
    codes::RationalInterval prev{amb.lo, amb.hi};
    for (std::uint64_t k = 0; k < budget; ++k) {
        auto iv = codes::decode_interval(e.stream.at(Int(k)).value, amb);
        if (have_prev && !prev.contains(iv))
            throw std::invalid_argument("enclose: emissions do not shrink at index " +
                                        std::to_string(k));
        prev = iv;
        have_prev = true;
        result.interval = iv;  // nested, so the latest is the best
        result.emission_index = k;
        if (iv.width() <= want) {
            result.reached = true;
            return result;
        }
    }
    return result;
}

}  // namespace effdom::reals

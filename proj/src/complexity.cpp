#include "effdom/complexity.hpp"

#include <algorithm>
#include <cctype>

#include "effdom/programs.hpp"

namespace effdom::complexity {

Measurement builtin_measurement(const domains::EffectiveDomain& d) {
    Measurement mu;
    mu.domain_name = d.name;
    if (d.name == "unitInterval" || d.name == "unitThirds") {
        mu.name = "one-minus-x";
        bool thirds = d.name == "unitThirds";
        mu.basis_value = [thirds](const Int& c) {
            return Rational(1) - (thirds ? domains::decode_thirds(c) : codes::decode_fraction(c));
        };
        mu.limit_value = [](const domains::LimitDescriptor& lim) -> std::optional<Rational> {
            if (lim.name == "one") return Rational(0);
            return std::nullopt;
        };
        return mu;
    }
    if (d.name == "cantor") {
        mu.name = "string-length";
        mu.basis_value = [](const Int& c) {
            return pow2_inv(static_cast<unsigned>(codes::decode_string(c).size()));
        };
        mu.limit_value = [](const domains::LimitDescriptor& lim) -> std::optional<Rational> {
            if (lim.name == "zeros") return Rational(0);  // infinite strings have length oo
            return std::nullopt;
        };
        return mu;
    }
    if (d.ambient) {
        mu.name = "interval-length";
        auto amb = *d.ambient;
        mu.basis_value = [amb](const Int& c) { return codes::decode_interval(c, amb).width(); };
        mu.limit_value = [](const domains::LimitDescriptor& lim) -> std::optional<Rational> {
            if (lim.name == "pi" || lim.name == "sqrt2" || lim.name == "sqrt2third")
                return Rational(0);  // degenerate limit points
            return std::nullopt;
        };
        return mu;
    }
    throw std::invalid_argument("no built-in measurement for domain " + d.name);
}

Measurement generic_measurement(const domains::EffectiveDomain& d, unsigned window) {
    if (!d.has_way_below())
        throw std::invalid_argument("generic_measurement requires way-below structure");
    Measurement mu;
    mu.name = "generic[" + std::to_string(window) + "]";
    mu.domain_name = d.name;
    auto wb = d.way_below;
    mu.basis_value = [wb, window](const Int& x) {
        Rational acc(0);
        for (unsigned n = 0; n < window; ++n)
            if (wb(Int(n), x)) acc += pow2_inv(n + 1);
        return Rational(1) - acc;
    };
    mu.limit_value = [](const domains::LimitDescriptor&) -> std::optional<Rational> {
        return std::nullopt;
    };
    return mu;
}

StrictnessReport check_strict_monotone(const Measurement& mu, const domains::EffectiveDomain& d,
                                       int window) {
    StrictnessReport report;
    std::vector<Rational> values;
    values.reserve(static_cast<std::size_t>(window));
    for (int i = 0; i < window; ++i) values.push_back(mu.basis_value(Int(i)));
    for (int a = 0; a < window; ++a) {
        for (int b = 0; b < window; ++b) {
            if (a == b) continue;
            if (!d.leq(Int(a), Int(b)) || d.leq(Int(b), Int(a))) continue;  // want strict pairs
            if (!(values[a] > values[b])) {
                report.witness = {Int(a), Int(b)};
                return report;
            }
        }
    }
    report.strict = true;
    return report;
}

std::string InducingReport::text() const {
    switch (verdict) {
        case InducingVerdict::Induces:
            return "induces (strict monotone on a conditionally connected order)";
        case InducingVerdict::StrictnessInsufficient:
            return "strictness insufficient: order is not conditionally connected, see docs";
        case InducingVerdict::NotStrict:
            return "not strictly monotone";
    }
    return "?";
}

InducingReport inducing_by_strictness(const Measurement& mu, const domains::EffectiveDomain& d,
                                      int window) {
    InducingReport report{InducingVerdict::NotStrict, check_strict_monotone(mu, d, window), {}};
    if (!report.strictness.strict) return report;
    report.gate_witness = domains::check_conditionally_connected(d, window);
    report.verdict = report.gate_witness ? InducingVerdict::StrictnessInsufficient
                                         : InducingVerdict::Induces;
    return report;
}

// ---------------------------------------------------------------------------
// Bounds
// ---------------------------------------------------------------------------

ComplexityBound ComplexityBound::from_table(std::vector<Int> values) {
    if (values.empty()) throw std::invalid_argument("empty bound table");
    ComplexityBound b;
    b.description = "table[" + std::to_string(values.size()) + "]";
    auto shared = std::make_shared<std::vector<Int>>(std::move(values));
    b.at = [shared](std::uint64_t n) {
        return n < shared->size() ? (*shared)[n] : shared->back();
    };
    return b;
}

namespace {

// Minimal recursive-descent parser for closed forms over n.
struct FormParser {
    const std::string& s;
    std::size_t pos = 0;

    explicit FormParser(const std::string& text) : s(text) {}

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    Int expr(std::uint64_t n) {
        Int acc = term(n);
        while (true) {
            skip();
            if (eat('+')) {
                acc += term(n);
            } else if (eat('-')) {
                Int t = term(n);
                acc = acc > t ? acc - t : Int(0);  // truncated: bounds are naturals
            } else {
                return acc;
            }
        }
    }

    Int term(std::uint64_t n) {
        Int acc = factor(n);
        while (true) {
            skip();
            if (eat('*'))
                acc *= factor(n);
            else
                return acc;
        }
    }

    Int factor(std::uint64_t n) {
        Int base = atom(n);
        skip();
        if (eat('^')) {
            Int e = atom(n);
            if (e < 0 || e > 1'000'000) throw std::invalid_argument("exponent out of range");
            Int acc = 1;
            for (Int i = 0; i < e; ++i) acc *= base;
            return acc;
        }
        return base;
    }

    Int atom(std::uint64_t n) {
        skip();
        if (eat('(')) {
            Int inner = expr(n);
            if (!eat(')')) throw std::invalid_argument("missing ')' in bound expression");
            return inner;
        }
        if (pos < s.size() && (s[pos] == 'n' || s[pos] == 'N')) {
            ++pos;
            return Int(n);
        }
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw std::invalid_argument("bad bound expression near '" + s.substr(start) + "'");
        return Int(s.substr(start, pos - start));
    }
};

}  // namespace

ComplexityBound ComplexityBound::from_closed_form(const std::string& text) {
    // Parse once at n = 0 to validate.
    {
        FormParser p(text);
        (void)p.expr(0);
        p.skip();
        if (p.pos != text.size()) throw std::invalid_argument("trailing input in bound expression");
    }
    ComplexityBound b;
    b.description = text;
    std::string copy = text;
    b.at = [copy](std::uint64_t n) {
        FormParser p(copy);
        return p.expr(n);
    };
    return b;
}

// ---------------------------------------------------------------------------
// Audits
// ---------------------------------------------------------------------------

bool ElementAuditReport::passed() const {
    if (!directedness_ok) return false;
    return std::all_of(rows.begin(), rows.end(), [](const ElementAuditRow& r) {
        return r.steps_ok && r.gap_ok && r.below_limit_ok;
    });
}

ElementAuditReport element_complexity_audit(const machine::CostedEnumerator& phi,
                                            const ComplexityBound& t, const Measurement& mu,
                                            const domains::EffectiveDomain& d,
                                            const domains::LimitDescriptor& target, unsigned window,
                                            std::function<Rational(std::uint64_t)> precision_schedule) {
    ElementAuditReport report;
    report.element_label = phi.label();
    report.measurement = mu.name;
    auto limit_mu = mu.limit_value(target);
    if (!limit_mu)
        throw std::invalid_argument("measurement '" + mu.name + "' has no value at limit '" +
                                    target.name + "'");
    if (!precision_schedule)
        precision_schedule = [](std::uint64_t n) { return pow2_inv(static_cast<unsigned>(n)); };

    std::vector<Int> emitted;
    for (unsigned n = 0; n < window; ++n) {
        auto r = phi.at(Int(n));
        ElementAuditRow row;
        row.n = n;
        row.code = r.value;
        row.steps = r.steps;
        row.step_bound = t.at(n);
        row.steps_ok = Int(r.steps) <= row.step_bound;
        row.mu_gap = mu.basis_value(r.value) - *limit_mu;
        row.tolerance = precision_schedule(n);
        row.gap_ok = row.mu_gap < row.tolerance;
        row.below_limit_ok = target.leq_to_limit(r.value);
        emitted.push_back(r.value);
        report.rows.push_back(std::move(row));
    }

    // Eventual directedness of the emitted set (joint bounds inside it).
    report.directedness_ok = true;
    for (std::size_t i = 0; i < emitted.size() && report.directedness_ok; ++i) {
        for (std::size_t j = i + 1; j < emitted.size() && report.directedness_ok; ++j) {
            bool bounded = false;
            for (const Int& cand : emitted)
                if (d.leq(emitted[i], cand) && d.leq(emitted[j], cand)) {
                    bounded = true;
                    break;
                }
            if (!bounded) report.directedness_ok = false;
        }
    }
    return report;
}

bool FunctionAuditReport::passed() const {
    bool rows_ok = std::all_of(rows.begin(), rows.end(),
                               [](const FunctionAuditRow& r) { return r.steps_ok && r.gap_ok; });
    bool chains_ok = std::all_of(chain_checks.begin(), chain_checks.end(),
                                 [](const auto& c) { return c.second; });
    return rows_ok && chains_ok;
}

FunctionAuditReport function_complexity_audit(const elements::ComputableFunction& f,
                                              const machine::CostedEnumerator& phi,
                                              const ComplexityBound& t, const Measurement& mu,
                                              unsigned window, const std::vector<Int>& sample_ms) {
    FunctionAuditReport report;
    report.function_name = f.name;
    report.measurement = mu.name;
    for (unsigned n = 0; n < window; ++n) {
        auto [m, p] = codes::unpair(Int(n));
        auto r = phi.at(Int(n));
        FunctionAuditRow row;
        row.n = n;
        row.m = m;
        row.p = p;
        row.code = r.value;
        row.steps = r.steps;
        row.step_bound = t.at(n);
        row.steps_ok = Int(r.steps) <= row.step_bound;
        row.mu_gap = mu.basis_value(r.value) - mu.basis_value(f.basis_image(m));
        row.tolerance = pow2_inv(static_cast<unsigned>(p));
        row.gap_ok = row.mu_gap < row.tolerance;
        report.rows.push_back(std::move(row));
    }

    // Per sampled m: emissions over p form a directed set below image(m).
    constexpr unsigned kDepth = 8;
    for (const Int& m : sample_ms) {
        std::vector<Int> emitted;
        for (unsigned p = 0; p < kDepth; ++p)
            emitted.push_back(phi.at(codes::pair(m, Int(p))).value);
        Int image = f.basis_image(m);
        bool ok = true;
        for (const Int& c : emitted)
            if (!f.target.leq(c, image)) ok = false;
        for (std::size_t i = 0; i < emitted.size() && ok; ++i)
            for (std::size_t j = i + 1; j < emitted.size() && ok; ++j) {
                bool bounded = false;
                for (const Int& cand : emitted)
                    if (f.target.leq(emitted[i], cand) && f.target.leq(emitted[j], cand)) {
                        bounded = true;
                        break;
                    }
                ok = bounded;
            }
        report.chain_checks.emplace_back(m, ok);
    }
    return report;
}

PolytimeVerdict polytime_check(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& steps,
                               unsigned max_degree) {
    PolytimeVerdict verdict;
    if (steps.empty()) {
        verdict.text = "no data";
        return verdict;
    }
    std::size_t half = std::max<std::size_t>(1, steps.size() / 2);
    for (unsigned d = 0; d <= max_degree; ++d) {
        Int coeff = 1;
        for (std::size_t i = 0; i < half; ++i) {
            Int weight = 1;
            for (unsigned e = 0; e < d; ++e) weight *= Int(steps[i].first + 1);
            Int c = (Int(steps[i].second) + weight - 1) / weight;  // ceil
            coeff = std::max(coeff, c);
        }
        bool dominated = true;
        for (const auto& [n, st] : steps) {
            Int weight = 1;
            for (unsigned e = 0; e < d; ++e) weight *= Int(n + 1);
            if (Int(st) > coeff * weight) {
                dominated = false;
                break;
            }
        }
        if (dominated) {
            verdict.degree = d;
            verdict.text = "dominated by " + coeff.str() + "*(n+1)^" + std::to_string(d) +
                           " (calibrated on the first half of the range)";
            return verdict;
        }
    }
    verdict.text = "no polynomial fit <= degree " + std::to_string(max_degree) + " on range";
    return verdict;
}

// ---------------------------------------------------------------------------
// Worked instances
// ---------------------------------------------------------------------------

machine::CostedEnumerator phi_zero_program(unsigned max_n) {
    machine::Builder b;
    auto table = b.new_table();
    Int clamp_value;
    for (unsigned n = 0; n <= max_n; ++n) {
        Int q = pow2(n + 1);
        Int key = 1 + (q - 2) * (q - 1) / 2;  // the block-summation sweep's output
        Int index = codes::encode_fraction(Rational(q - 1, q));
        b.table_insert(table, key, index);
        clamp_value = index;
    }
    // q = 2^(n+1)
    auto q = b.loop(b.add(b.input(), b.constant(1)), b.constant(1),
                    b.mul(b.constant(2), b.var(0)));
    // s = 1 + sum_{j=0}^{q-3} (j+1)   (Var(0) = q)
    auto s = b.loop(b.monus(b.var(0), b.constant(2)), b.constant(1),
                    b.add(b.var(0), b.add(b.var(1), b.constant(1))));
    auto looked = b.lookup(table, b.var(0), b.constant(clamp_value));
    auto root = b.let_in(q, b.let_in(s, looked));
    return machine::CostedEnumerator(b.build(root, "phi0[x=1]"));
}

ComplexityBound phi_zero_bound() {
    // The program's visits per input n are c2*(2^(n+1)-2) + c1*(n+1) + c0
    // for small structural constants; frozen here with margin.
    ComplexityBound b;
    b.description = "8*(2^(n+1)-2)+8*(n+1)+24";
    b.at = [](std::uint64_t n) {
        Int q = pow2(static_cast<unsigned>(n + 1));
        return 8 * (q - 2) + 8 * Int(n + 1) + 24;
    };
    return b;
}

machine::CostedEnumerator shifted_stream(const machine::CostedEnumerator& stream, unsigned shift) {
    machine::Builder b;
    auto root = b.call(stream.data(), b.add(b.input(), b.constant(shift)));
    return machine::CostedEnumerator(b.build(root, stream.label() + "+" + std::to_string(shift)));
}

machine::CostedEnumerator cantor_identity_phi() { return progs::cantor_truncate_program(); }

FanDemoResult fan_basis_diagonal_demo(const std::vector<std::vector<std::uint64_t>>& candidate_minima) {
    FanDemoResult result;
    std::size_t k = candidate_minima.size();
    for (std::size_t m = 0; m < k; ++m)
        if (candidate_minima[m].size() < k)
            throw std::invalid_argument("candidate " + std::to_string(m) +
                                        " must list minima for at least " + std::to_string(k) +
                                        " chains");
    // Diagonal open O': on chain n, everything strictly above candidate n's
    // own minimum at chain n.
    std::vector<std::uint64_t> diagonal(k);
    for (std::size_t n = 0; n < k; ++n) diagonal[n] = candidate_minima[n][n] + 1;

    auto in_candidate = [&](std::size_t m, std::size_t chain, std::uint64_t height) {
        return height >= candidate_minima[m][chain];
    };
    auto in_diagonal = [&](std::size_t chain, std::uint64_t height) {
        return height >= diagonal[chain];
    };

    result.all_excluded = true;
    for (std::size_t m = 0; m < k; ++m) {
        // The witness point: candidate m's minimum on its own chain m.
        std::uint64_t h = candidate_minima[m][m];
        bool witness_ok = in_candidate(m, m, h) && !in_diagonal(m, h);
        if (!witness_ok) result.all_excluded = false;
        result.witnesses.emplace_back(m, h);
    }
    return result;
}

}  // namespace effdom::complexity

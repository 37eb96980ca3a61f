// effdom - command-line front end for the effective-domain library:
// finite-map codecs, costed enumerators, domain and poset analysis, exact
// real enclosures, and complexity audits.
//
// Exit codes: 0 success, 1 audit/verification failure, 2 usage error.
// EFFDOM_FUEL overrides the evaluator's fuel ceiling.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "effdom/complexity.hpp"
#include "effdom/domains.hpp"
#include "effdom/elements.hpp"
#include "effdom/machine.hpp"
#include "effdom/reals.hpp"

using namespace effdom;

namespace {

constexpr std::uint64_t kDefaultSeed = 20240813;  // published default for --seed

Int parse_natural(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw CLI::ValidationError("expected a natural number, got '" + s + "'");
    return Int(s);
}

// Decodes a per-domain value literal into a basis code.
Int parse_basis_value(const domains::EffectiveDomain& d, const std::string& text) {
    if (d.name == "cantor") return codes::encode_string(text);
    if (d.name == "unitInterval") return codes::encode_fraction(parse_rational(text));
    if (d.name == "unitThirds") return domains::encode_thirds(parse_rational(text));
    if (d.name == "turing") return parse_natural(text);
    if (d.name == "flippedUnit") return codes::encode_closed_unit(parse_rational(text));
    if (d.name == "qDomain") return domains::encode_q_basis(parse_rational(text));
    if (d.name == "fan") {
        auto at = text.find('@');
        if (at == std::string::npos)
            throw CLI::ValidationError("fan values look like <height>@<chain>, e.g. 3@2");
        return codes::pair(parse_natural(text.substr(at + 1)), parse_natural(text.substr(0, at)));
    }
    if (d.ambient) {
        auto comma = text.find(',');
        if (comma == std::string::npos)
            throw CLI::ValidationError("interval values look like <lo>,<hi>, e.g. 5/4,3/2");
        codes::RationalInterval iv{parse_rational(text.substr(0, comma)),
                                   parse_rational(text.substr(comma + 1))};
        return codes::encode_interval(iv, *d.ambient);
    }
    throw CLI::ValidationError("no value syntax for domain " + d.name);
}

machine::CostedEnumerator named_enumerator(const std::string& name) {
    if (name == "identity") return machine::identity_program();
    if (name == "successor") return machine::successor_program();
    if (name == "const0") return machine::constant_program(0);
    if (name == "isqrt") return machine::integer_sqrt_program();
    if (name == "phi0") return complexity::phi_zero_program(16);
    if (name.rfind("table:", 0) == 0) {
        std::vector<machine::Nat> values;
        std::istringstream in(name.substr(6));
        std::string tok;
        while (std::getline(in, tok, ',')) values.push_back(parse_natural(tok));
        return machine::cycling_table_program(values, name);
    }
    throw CLI::ValidationError(
        "unknown enumerator '" + name +
        "' (use identity|successor|const0|isqrt|phi0|table:v1,v2,...)");
}

struct AuditedElement {
    elements::ComputableElement element;
    machine::CostedEnumerator phi;  // precision-indexed stream for complexity audits
    complexity::ComplexityBound default_bound;
};

AuditedElement named_element(const std::string& name) {
    if (name == "one") {
        AuditedElement out;
        out.element.domain = domains::unit_interval_domain();
        out.element.stream = complexity::phi_zero_program(16);
        out.element.target = domains::builtin_limit(out.element.domain, "one");
        out.phi = out.element.stream;
        out.default_bound = complexity::phi_zero_bound();
        return out;
    }
    if (name == "sqrt2") {
        AuditedElement out;
        auto p = reals::RationalPoly::parse("-2,0,1");
        out.element = reals::bisection_element(p, Rational(1), Rational(2), 32);
        out.element.target = domains::builtin_limit(out.element.domain, "sqrt2");
        out.phi = complexity::shifted_stream(out.element.stream, 1);
        out.default_bound = complexity::ComplexityBound::from_closed_form("250");
        return out;
    }
    if (name == "pi") {
        AuditedElement out;
        out.element = reals::pi_element(16);
        out.phi = out.element.stream;
        out.default_bound = complexity::ComplexityBound::from_closed_form("250");
        return out;
    }
    if (name == "zeros") {
        AuditedElement out;
        out.element.domain = domains::cantor_domain();
        // chain of all-zero strings: code of 0^k is 2^k - 1
        machine::Builder b;
        auto pw = b.loop(b.input(), b.constant(1), b.mul(b.constant(2), b.var(0)));
        auto root = b.monus(pw, b.constant(1));
        out.element.stream = machine::CostedEnumerator(b.build(root, "zero-chain"));
        out.element.target = domains::builtin_limit(out.element.domain, "zeros");
        out.phi = out.element.stream;
        out.default_bound = complexity::ComplexityBound::from_closed_form("20*n+40");
        return out;
    }
    if (name == "forked") {
        AuditedElement out;
        out.element.domain = domains::flipped_unit_domain();
        out.element.stream = machine::cycling_table_program(
            {codes::encode_closed_unit(Rational(1, 4)), codes::encode_closed_unit(Rational(3, 4))},
            "forked");
        out.phi = out.element.stream;
        out.default_bound = complexity::ComplexityBound::from_closed_form("40");
        return out;
    }
    throw CLI::ValidationError("unknown element '" + name + "' (use one|sqrt2|pi|zeros|forked)");
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"";
        out += c;
    }
    return out + "\"";
}

void emit_audit_csv(std::ostream& os, const complexity::ElementAuditReport& report) {
    os << "n,code,steps,bound,mu_gap,tolerance,steps_ok,gap_ok,below_limit_ok\n";
    for (const auto& row : report.rows) {
        os << row.n << "," << row.code.str() << "," << row.steps << "," << row.step_bound.str()
           << "," << csv_escape(rational_to_string(row.mu_gap)) << ","
           << csv_escape(rational_to_string(row.tolerance)) << "," << (row.steps_ok ? 1 : 0) << ","
           << (row.gap_ok ? 1 : 0) << "," << (row.below_limit_ok ? 1 : 0) << "\n";
    }
}

std::vector<std::vector<std::string>> parse_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("cannot open " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            char c = line[i];
            if (quoted) {
                if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else if (c == '"') {
                    quoted = false;
                } else {
                    cell += c;
                }
            } else if (c == '"') {
                quoted = true;
            } else if (c == ',') {
                cells.push_back(cell);
                cell.clear();
            } else {
                cell += c;
            }
        }
        cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

int run(int argc, char** argv) {
    CLI::App app{"effective domains: codes, enumerators, orders, exact reals, complexity"};
    app.require_subcommand(1);

    // ---- pair / unpair ----
    std::string pair_n, pair_m, unpair_k;
    auto* cmd_pair = app.add_subcommand("pair", "Cantor pair of two naturals");
    cmd_pair->add_option("n", pair_n)->required();
    cmd_pair->add_option("m", pair_m)->required();
    auto* cmd_unpair = app.add_subcommand("unpair", "invert the Cantor pairing");
    cmd_unpair->add_option("k", unpair_k)->required();

    // ---- decode ----
    std::string carrier = "fraction";
    std::vector<std::string> decode_indices;
    std::string ambient_text = "0,1";
    auto* cmd_decode = app.add_subcommand("decode", "decode finite-map indices, one per line");
    cmd_decode->add_option("--carrier", carrier)
        ->check(CLI::IsMember({"fraction", "string", "interval"}));
    cmd_decode->add_option("--ambient", ambient_text, "interval carrier bounds, as lo,hi");
    cmd_decode->add_option("index", decode_indices)->required();

    // ---- enum ----
    auto* cmd_enum = app.add_subcommand("enum", "costed enumerators");
    std::uint64_t take = 16;
    bool show_schedule = false;
    auto* cmd_trace = cmd_enum->add_subcommand("trace", "dovetail schedule cells");
    cmd_trace->add_flag("--schedule", show_schedule, "print the (g,h) cell visited at each n");
    cmd_trace->add_option("--take", take);
    std::string enum_name = "identity";
    auto* cmd_range = cmd_enum->add_subcommand("range", "first outputs with step counts");
    cmd_range->add_option("--name", enum_name);
    cmd_range->add_option("--take", take);

    // ---- domain ----
    auto* cmd_domain = app.add_subcommand("domain", "effective domains and finite posets");
    std::string poset_file;
    std::uint64_t selftest = 0, seed = kDefaultSeed;
    auto* cmd_check = cmd_domain->add_subcommand("check", "validate a poset file");
    cmd_check->add_option("--file", poset_file)->required();
    cmd_check->add_option("--selftest", selftest,
                          "also cross-check the way-below oracle on N random posets");
    cmd_check->add_option("--seed", seed, "seed for --selftest (default 20240813)");

    std::string wb_domain = "cantor", wb_a, wb_b;
    auto* cmd_wb = cmd_domain->add_subcommand("wb", "way-below test between basis values");
    cmd_wb->add_option("--name", wb_domain)->required();
    cmd_wb->add_option("--a", wb_a)->required();
    cmd_wb->add_option("--b", wb_b)->required();

    std::string wit_domain, wit_a, wit_limit;
    std::uint64_t wit_depth = 100;
    auto* cmd_wit = cmd_domain->add_subcommand("witness", "directed family refuting way-below");
    cmd_wit->add_option("--name", wit_domain)->required();
    cmd_wit->add_option("--a", wit_a)->required();
    cmd_wit->add_option("--limit", wit_limit)->required();
    cmd_wit->add_option("--depth", wit_depth);

    // ---- element ----
    auto* cmd_element = app.add_subcommand("element", "computable elements");
    std::string el_name;
    std::uint64_t el_take = 8, el_budget = 32;
    auto* cmd_audit = cmd_element->add_subcommand("audit", "directedness audit of a builtin");
    cmd_audit->add_option("--name", el_name)->required();
    cmd_audit->add_option("--take", el_take);
    cmd_audit->add_option("--budget", el_budget);

    std::string ap_fn = "scale3", ap_el = "sqrt2";
    std::uint64_t ap_take = 12;
    auto* cmd_apply = cmd_element->add_subcommand("apply", "apply a computable function");
    cmd_apply->add_option("--fn", ap_fn);
    cmd_apply->add_option("--element", ap_el);
    cmd_apply->add_option("--take", ap_take);

    // ---- real ----
    auto* cmd_real = app.add_subcommand("real", "exact real enclosures");
    std::string poly_csv;
    std::vector<std::string> real_bounds;
    unsigned precision = 10;
    unsigned max_steps = 32;
    auto* cmd_compute = cmd_real->add_subcommand("compute", "bisection enclosure of a root");
    cmd_compute->add_option("--poly", poly_csv, "coefficients, ascending degree, exact rationals")
        ->required();
    cmd_compute->add_option("--interval", real_bounds, "start interval endpoints")
        ->expected(2)
        ->required();
    cmd_compute->add_option("--precision", precision);
    cmd_compute->add_option("--max-steps", max_steps);
    unsigned pi_precision = 8;
    auto* cmd_pi = cmd_real->add_subcommand("pi", "enclosure from the grouped Leibniz series");
    cmd_pi->add_option("--precision", pi_precision);

    // ---- complexity ----
    auto* cmd_cplx = app.add_subcommand("complexity", "element complexity audits");
    std::string cplx_element = "one", bound_text, emit = "";
    std::uint64_t cplx_take = 12;
    unsigned max_degree = 3;
    auto* cmd_caudit = cmd_cplx->add_subcommand("audit", "per-n audit table");
    cmd_caudit->add_option("--element", cplx_element)
        ->check(CLI::IsMember({"one", "sqrt2", "pi", "zeros"}));
    cmd_caudit->add_option("--bound", bound_text,
                           "closed form over n, or a file of whitespace-separated values");
    cmd_caudit->add_option("--take", cplx_take);
    cmd_caudit->add_option("--emit", emit)->check(CLI::IsMember({"csv"}));
    cmd_caudit->add_option("--max-degree", max_degree);

    // ---- audit-diff ----
    std::string diff_a, diff_b;
    auto* cmd_diff = app.add_subcommand("audit-diff", "compare two audit CSV files");
    cmd_diff->add_option("a", diff_a)->required();
    cmd_diff->add_option("b", diff_b)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    if (cmd_pair->parsed()) {
        std::cout << codes::pair(parse_natural(pair_n), parse_natural(pair_m)).str() << "\n";
        return 0;
    }
    if (cmd_unpair->parsed()) {
        auto [n, m] = codes::unpair(parse_natural(unpair_k));
        std::cout << n.str() << " " << m.str() << "\n";
        return 0;
    }
    if (cmd_decode->parsed()) {
        auto comma = ambient_text.find(',');
        if (comma == std::string::npos) {
            std::cerr << "usage error: --ambient expects lo,hi\n";
            return 2;
        }
        codes::Ambient amb{parse_rational(ambient_text.substr(0, comma)),
                           parse_rational(ambient_text.substr(comma + 1))};
        for (const auto& idx_text : decode_indices) {
            Int idx = parse_natural(idx_text);
            if (carrier == "fraction")
                std::cout << rational_to_string(codes::decode_fraction(idx)) << "\n";
            else if (carrier == "string")
                std::cout << "\"" << codes::decode_string(idx) << "\"\n";
            else
                std::cout << codes::interval_to_string(codes::decode_interval(idx, amb)) << "\n";
        }
        return 0;
    }
    if (cmd_trace->parsed()) {
        (void)show_schedule;  // the schedule is this subcommand's only view
        std::cout << "n,h,g\n";
        for (std::uint64_t n = 0; n < take; ++n) {
            auto [h, g] = machine::schedule_cell2(Int(n));
            std::cout << n << "," << h.str() << "," << g.str() << "\n";
        }
        return 0;
    }
    if (cmd_range->parsed()) {
        auto e = named_enumerator(enum_name);
        std::cout << "n,value,steps\n";
        for (std::uint64_t n = 0; n < take; ++n) {
            auto r = e.at(Int(n));
            std::cout << n << "," << r.value.str() << "," << r.steps << "\n";
        }
        return 0;
    }
    if (cmd_check->parsed()) {
        std::ifstream in(poset_file);
        if (!in) {
            std::cerr << "usage error: cannot open " << poset_file << "\n";
            return 2;
        }
        auto p = domains::FinitePoset::parse(in);
        std::cout << "poset " << p.name << ": " << p.size << " elements, partial order ok\n";
        if (p.size <= 12) {
            bool oracle_ok = true;
            for (int a = 0; a < p.size; ++a)
                for (int b = 0; b < p.size; ++b)
                    if (domains::way_below_oracle(p, a, b) != p.le(a, b)) oracle_ok = false;
            std::cout << "way-below oracle vs order: " << (oracle_ok ? "agree" : "DISAGREE")
                      << "\n";
            if (!oracle_ok) return 1;
        }
        if (p.size <= 5) {
            auto opens = scott_opens(p);
            std::cout << opens.size() << " Scott opens:\n";
            for (const auto& o : opens) {
                std::cout << "  {";
                for (std::size_t i = 0; i < o.size(); ++i) std::cout << (i ? " " : "") << o[i];
                std::cout << "}\n";
            }
        }
        auto witness = domains::check_conditionally_connected(p);
        if (witness)
            std::cout << "not conditionally connected: " << witness->x << ", " << witness->y
                      << " below " << witness->z << "\n";
        else
            std::cout << "conditionally connected\n";
        if (selftest > 0) {
            std::mt19937 rng(static_cast<std::uint32_t>(seed));
            std::uniform_int_distribution<int> coin(0, 2);
            for (std::uint64_t round = 0; round < selftest; ++round) {
                int size = 2 + static_cast<int>(round % 7);
                std::vector<std::pair<int, int>> covers;
                for (int i = 0; i < size; ++i)
                    for (int j = i + 1; j < size; ++j)
                        if (coin(rng) == 0) covers.emplace_back(i, j);
                auto rp = domains::FinitePoset::from_covers("self", size, covers);
                for (int a = 0; a < size; ++a)
                    for (int b = 0; b < size; ++b)
                        if (domains::way_below_oracle(rp, a, b) != rp.le(a, b)) {
                            std::cout << "selftest FAILED at round " << round << "\n";
                            return 1;
                        }
            }
            std::cout << "selftest: " << selftest << " random posets, oracle agrees (seed " << seed
                      << ")\n";
        }
        return 0;
    }
    if (cmd_wb->parsed()) {
        auto d = domains::builtin_domain(wb_domain);
        if (!d.has_way_below()) {
            std::cerr << "domain " << d.name << " has only a weak basis (no way-below)\n";
            return 1;
        }
        Int a = parse_basis_value(d, wb_a);
        Int b = parse_basis_value(d, wb_b);
        std::cout << (d.way_below(a, b) ? "true" : "false") << "\n";
        return 0;
    }
    if (cmd_wit->parsed()) {
        auto d = domains::builtin_domain(wit_domain);
        Int a = parse_basis_value(d, wit_a);
        auto w = domains::not_way_below_witness(d, a, wit_limit);
        std::cout << w.description << "\n";
        auto v = w.verify(d, wit_depth);
        std::cout << "first " << wit_depth << " members: directed "
                  << (v.directed_ok ? "ok" : "FAIL") << ", none above " << d.decode_text(a) << " "
                  << (v.none_above_ok ? "ok" : "FAIL") << "\n";
        return v.ok() ? 0 : 1;
    }
    if (cmd_audit->parsed()) {
        auto named = named_element(el_name);
        auto report = elements::directedness_audit(named.element, el_take, el_budget);
        if (report.passed) {
            std::cout << "directedness audit: pass (first " << el_take << " emissions, budget "
                      << el_budget << ")\n";
            return 0;
        }
        std::cout << "directedness audit: witness pair "
                  << named.element.domain.decode_text(report.witness->first) << " , "
                  << named.element.domain.decode_text(report.witness->second)
                  << " (no joint bound within budget)\n";
        return 1;
    }
    if (cmd_apply->parsed()) {
        if (ap_fn != "scale3") {
            std::cerr << "usage error: unknown function '" << ap_fn << "' (available: scale3)\n";
            return 2;
        }
        if (ap_el != "sqrt2") {
            std::cerr << "usage error: scale3 applies to element 'sqrt2' (the bisection stream "
                         "for the root of 9x^2-2 in [0,1])\n";
            return 2;
        }
        auto f = elements::scale3_function();
        auto p = reals::RationalPoly::parse("-2,0,9");
        auto e = reals::bisection_element(p, Rational(0), Rational(1), 24);
        e.target = domains::builtin_limit(e.domain, "sqrt2third");
        auto image = elements::apply_function(f, e);
        std::cout << "image element over " << image.domain.name << ", target "
                  << (image.target ? image.target->name : "(none)") << "\n";
        std::cout << "pointwise images of the stream (enclosures of 3*root):\n";
        for (std::uint64_t i = 0; i < ap_take; ++i) {
            Int img = f.basis_image(e.stream.at(Int(i)).value);
            std::cout << "  " << i << ": " << image.domain.decode_text(img) << "\n";
        }
        return 0;
    }
    if (cmd_compute->parsed()) {
        auto p = reals::RationalPoly::parse(poly_csv);
        Rational lo = parse_rational(real_bounds[0]), hi = parse_rational(real_bounds[1]);
        unsigned steps = std::max(max_steps, precision + 2);
        auto e = reals::bisection_element(p, lo, hi, steps);
        auto r = reals::enclose(e, precision, steps + 1);
        std::cout << rational_to_string(r.interval.lo) << "\n"
                  << rational_to_string(r.interval.hi) << "\n"
                  << "~ [" << rational_to_decimal(r.interval.lo, 15, false) << ", "
                  << rational_to_decimal(r.interval.hi, 15, true) << "]\n";
        if (!r.reached) {
            std::cout << "budget exhausted before width 2^-" << precision << "\n";
            return 1;
        }
        return 0;
    }
    if (cmd_pi->parsed()) {
        if (pi_precision > 16) {
            std::cerr << "usage error: pi precision is capped at 16\n";
            return 2;
        }
        auto e = reals::pi_element(16);
        auto r = reals::enclose(e, pi_precision, 18);
        std::cout << rational_to_string(r.interval.lo) << "\n"
                  << rational_to_string(r.interval.hi) << "\n"
                  << "~ [" << rational_to_decimal(r.interval.lo, 15, false) << ", "
                  << rational_to_decimal(r.interval.hi, 15, true) << "]\n";
        return r.reached ? 0 : 1;
    }
    if (cmd_caudit->parsed()) {
        auto named = named_element(cplx_element);
        if (!named.element.target) {
            std::cerr << "usage error: element has no designated limit\n";
            return 2;
        }
        complexity::ComplexityBound bound = named.default_bound;
        if (!bound_text.empty()) {
            std::ifstream maybe(bound_text);
            if (maybe) {
                std::vector<Int> values;
                std::string tok;
                while (maybe >> tok) values.push_back(parse_natural(tok));
                bound = complexity::ComplexityBound::from_table(values);
            } else {
                bound = complexity::ComplexityBound::from_closed_form(bound_text);
            }
        }
        auto mu = complexity::builtin_measurement(named.element.domain);
        auto report = complexity::element_complexity_audit(
            named.phi, bound, mu, named.element.domain, *named.element.target,
            static_cast<unsigned>(cplx_take));
        if (emit == "csv") {
            emit_audit_csv(std::cout, report);
        } else {
            std::cout << "n\tsteps\tbound\tmu-gap\ttolerance\tok\n";
            for (const auto& row : report.rows) {
                std::cout << row.n << "\t" << row.steps << "\t" << row.step_bound.str() << "\t"
                          << rational_to_string(row.mu_gap) << "\t"
                          << rational_to_string(row.tolerance) << "\t"
                          << (row.steps_ok && row.gap_ok && row.below_limit_ok ? "pass" : "FAIL")
                          << "\n";
            }
            std::vector<std::pair<std::uint64_t, std::uint64_t>> steps;
            for (const auto& row : report.rows) steps.emplace_back(row.n, row.steps);
            auto verdict = complexity::polytime_check(steps, max_degree);
            std::cout << "directedness: " << (report.directedness_ok ? "pass" : "FAIL") << "\n";
            std::cout << "polynomial-time: " << verdict.text << "\n";
            std::cout << "summary: " << (report.passed() ? "pass" : "FAIL") << " (bound "
                      << bound.description << ")\n";
        }
        return report.passed() ? 0 : 1;
    }
    if (cmd_diff->parsed()) {
        auto a = parse_csv(diff_a);
        auto b = parse_csv(diff_b);
        if (a == b) {
            std::cout << "identical (" << (a.empty() ? 0 : a.size() - 1) << " rows)\n";
            return 0;
        }
        std::size_t lines = std::max(a.size(), b.size());
        for (std::size_t i = 0; i < lines; ++i) {
            if (i >= a.size() || i >= b.size() || a[i] != b[i]) {
                std::cout << "first difference at line " << i + 1 << "\n";
                break;
            }
        }
        return 1;
    }
    std::cerr << "usage error: missing subcommand\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

// Python bindings for the effective-domain core: finite-map codecs, costed
// enumerators with dovetailing, built-in domains with way-below checks,
// exact real enclosures, and the complexity audits.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "effdom/complexity.hpp"
#include "effdom/domains.hpp"
#include "effdom/elements.hpp"
#include "effdom/machine.hpp"
#include "effdom/reals.hpp"

namespace py = pybind11;
using namespace effdom;

namespace {

py::int_ to_py(const Int& v) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(v.str().c_str(), nullptr, 10));
}

Int from_py(const py::int_& v) { return Int(py::repr(v).cast<std::string>()); }

py::object to_fraction(const Rational& q) {
    static py::object fraction_cls = py::module_::import("fractions").attr("Fraction");
    return fraction_cls(to_py(numerator(q)), to_py(denominator(q)));
}

Rational from_fraction(const py::object& obj) {
    if (py::isinstance<py::int_>(obj)) return Rational(from_py(obj.cast<py::int_>()));
    if (py::isinstance<py::str>(obj)) return parse_rational(obj.cast<std::string>());
    Int num = from_py(obj.attr("numerator").cast<py::int_>());
    Int den = from_py(obj.attr("denominator").cast<py::int_>());
    return Rational(num, den);
}

py::tuple interval_tuple(const codes::RationalInterval& iv) {
    return py::make_tuple(to_fraction(iv.lo), to_fraction(iv.hi));
}

struct PyEnumerator {
    machine::CostedEnumerator e;

    py::tuple at(const py::int_& n) const {
        auto r = e.at(from_py(n));
        return py::make_tuple(to_py(r.value), py::int_(r.steps));
    }
    std::string label() const { return e.label(); }
};

struct PyDomain {
    domains::EffectiveDomain d;

    bool leq(const py::int_& a, const py::int_& b) const { return d.leq(from_py(a), from_py(b)); }
    bool way_below(const py::int_& a, const py::int_& b) const {
        if (!d.has_way_below()) throw std::invalid_argument(d.name + " has only a weak basis");
        return d.way_below(from_py(a), from_py(b));
    }
    bool has_way_below() const { return d.has_way_below(); }
    std::string decode(const py::int_& c) const { return d.decode_text(from_py(c)); }
    py::dict check_effective_basis(int window) const {
        auto report = domains::check_effective_basis(d, window);
        py::dict out;
        out["mismatches"] = report.mismatches.size();
        out["true_pairs"] = report.true_pairs;
        out["ok"] = report.ok();
        return out;
    }
    std::string name() const { return d.name; }
};

struct PyElement {
    elements::ComputableElement e;

    py::tuple emission(std::uint64_t n) const {
        if (!e.domain.ambient) throw std::invalid_argument("element is not over an interval domain");
        return interval_tuple(codes::decode_interval(e.stream.at(Int(n)).value, *e.domain.ambient));
    }
    py::int_ emission_code(std::uint64_t n) const { return to_py(e.stream.at(Int(n)).value); }
    py::dict enclose(unsigned bits, std::uint64_t budget) const {
        auto r = reals::enclose(e, bits, budget);
        py::dict out;
        out["lo"] = to_fraction(r.interval.lo);
        out["hi"] = to_fraction(r.interval.hi);
        out["reached"] = r.reached;
        out["emission_index"] = r.emission_index;
        return out;
    }
    bool directed(std::uint64_t first_n, std::uint64_t budget) const {
        return elements::directedness_audit(e, first_n, budget).passed;
    }
};

}  // namespace

PYBIND11_MODULE(_effdom, m) {
    m.doc() = "effective domains: finite maps, costed enumerators, way-below structure, "
              "exact real enclosures, complexity audits";

    // ---- codes ----
    m.def("pair", [](const py::int_& n, const py::int_& mm) {
        return to_py(codes::pair(from_py(n), from_py(mm)));
    });
    m.def("unpair", [](const py::int_& k) {
        auto [n, mm] = codes::unpair(from_py(k));
        return py::make_tuple(to_py(n), to_py(mm));
    });
    m.def("decode_fraction",
          [](const py::int_& k) { return to_fraction(codes::decode_fraction(from_py(k))); });
    m.def("encode_fraction",
          [](const py::object& q) { return to_py(codes::encode_fraction(from_fraction(q))); });
    m.def("decode_string", [](const py::int_& k) { return codes::decode_string(from_py(k)); });
    m.def("encode_string", [](const std::string& s) { return to_py(codes::encode_string(s)); });
    m.def(
        "decode_interval",
        [](const py::int_& k, const py::object& lo, const py::object& hi) {
            codes::Ambient amb{from_fraction(lo), from_fraction(hi)};
            return interval_tuple(codes::decode_interval(from_py(k), amb));
        },
        py::arg("index"), py::arg("ambient_lo") = 0, py::arg("ambient_hi") = 1);
    m.def(
        "encode_interval",
        [](const py::object& lo, const py::object& hi, const py::object& alo,
           const py::object& ahi) {
            codes::Ambient amb{from_fraction(alo), from_fraction(ahi)};
            return to_py(codes::encode_interval({from_fraction(lo), from_fraction(hi)}, amb));
        },
        py::arg("lo"), py::arg("hi"), py::arg("ambient_lo") = 0, py::arg("ambient_hi") = 1);
    m.def("totient_sum", [](const py::int_& n) { return to_py(codes::totient_sum(from_py(n))); });

    // ---- machine ----
    py::class_<PyEnumerator>(m, "Enumerator")
        .def("at", &PyEnumerator::at, py::arg("n"),
             "evaluate, returning (value, micro-steps)")
        .def_property_readonly("label", &PyEnumerator::label);
    m.def("identity_program", [] { return PyEnumerator{machine::identity_program()}; });
    m.def("constant_program", [](const py::int_& v) {
        return PyEnumerator{machine::constant_program(from_py(v))};
    });
    m.def("table_program", [](const std::vector<py::int_>& values) {
        std::vector<machine::Nat> nats;
        for (const auto& v : values) nats.push_back(from_py(v));
        return PyEnumerator{machine::cycling_table_program(nats, "table")};
    });
    m.def("dovetail_merge2", [](const PyEnumerator& g, const PyEnumerator& h) {
        return PyEnumerator{machine::dovetail_merge2(g.e, h.e)};
    });
    m.def("dovetail_merge3", [](const PyEnumerator& g, const PyEnumerator& h, const PyEnumerator& j) {
        return PyEnumerator{machine::dovetail_merge3(g.e, h.e, j.e)};
    });
    m.def("recode", [](const PyEnumerator& e, const PyEnumerator& t) {
        return PyEnumerator{machine::recode(e.e, t.e)};
    });
    m.def("phi_zero_program",
          [](unsigned max_n) { return PyEnumerator{complexity::phi_zero_program(max_n)}; });
    m.def("schedule_cell2", [](const py::int_& n) {
        auto [h, g] = machine::schedule_cell2(from_py(n));
        return py::make_tuple(to_py(h), to_py(g));
    });

    // ---- domains ----
    py::class_<PyDomain>(m, "Domain")
        .def_property_readonly("name", &PyDomain::name)
        .def_property_readonly("has_way_below", &PyDomain::has_way_below)
        .def("leq", &PyDomain::leq)
        .def("way_below", &PyDomain::way_below)
        .def("decode", &PyDomain::decode)
        .def("check_effective_basis", &PyDomain::check_effective_basis, py::arg("window"));
    m.def("domain", [](const std::string& name) { return PyDomain{domains::builtin_domain(name)}; });
    m.def("scott_opens_from_covers",
          [](int size, const std::vector<std::pair<int, int>>& covers) {
              return domains::scott_opens(domains::FinitePoset::from_covers("py", size, covers));
          });
    m.def("way_below_oracle_from_covers",
          [](int size, const std::vector<std::pair<int, int>>& covers, int a, int b) {
              return domains::way_below_oracle(domains::FinitePoset::from_covers("py", size, covers),
                                               a, b);
          });

    // ---- reals ----
    py::class_<PyElement>(m, "Element")
        .def("emission", &PyElement::emission, py::arg("n"))
        .def("emission_code", &PyElement::emission_code, py::arg("n"))
        .def("enclose", &PyElement::enclose, py::arg("precision_bits"), py::arg("budget") = 64)
        .def("directed", &PyElement::directed, py::arg("first_n") = 8, py::arg("budget") = 32);
    m.def(
        "bisection",
        [](const std::string& poly_csv, const py::object& lo, const py::object& hi,
           unsigned max_steps) {
            auto p = reals::RationalPoly::parse(poly_csv);
            return PyElement{
                reals::bisection_element(p, from_fraction(lo), from_fraction(hi), max_steps)};
        },
        py::arg("poly"), py::arg("lo"), py::arg("hi"), py::arg("max_steps") = 32);
    m.def(
        "pi_element", [](unsigned max_emissions) { return PyElement{reals::pi_element(max_emissions)}; },
        py::arg("max_emissions") = 16);
    m.def("pi_reference", [] { return interval_tuple(reals::pi_reference()); });
    m.def("eval_poly", [](const std::string& poly_csv, const py::object& x) {
        return to_fraction(reals::eval_poly(reals::RationalPoly::parse(poly_csv), from_fraction(x)));
    });

    // ---- complexity ----
    m.def(
        "x1_audit",
        [](unsigned window) {
            auto phi0 = complexity::phi_zero_program(window > 0 ? window - 1 : 0);
            auto d = domains::unit_interval_domain();
            auto mu = complexity::builtin_measurement(d);
            auto one = domains::builtin_limit(d, "one");
            auto report = complexity::element_complexity_audit(
                phi0, complexity::phi_zero_bound(), mu, d, one, window);
            py::list rows;
            for (const auto& row : report.rows) {
                py::dict r;
                r["n"] = row.n;
                r["code"] = to_py(row.code);
                r["steps"] = row.steps;
                r["mu_gap"] = to_fraction(row.mu_gap);
                r["ok"] = row.steps_ok && row.gap_ok && row.below_limit_ok;
                rows.append(r);
            }
            py::dict out;
            out["rows"] = rows;
            out["passed"] = report.passed();
            return out;
        },
        py::arg("window") = 12);
    m.def(
        "polytime_degree",
        [](const std::vector<std::pair<std::uint64_t, std::uint64_t>>& steps, unsigned max_degree) {
            auto verdict = complexity::polytime_check(steps, max_degree);
            return verdict.degree ? py::object(py::int_(*verdict.degree)) : py::object(py::none());
        },
        py::arg("steps"), py::arg("max_degree") = 3);
}

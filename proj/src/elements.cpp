#include "effdom/elements.hpp"

#include <algorithm>

#include "effdom/programs.hpp"

namespace effdom::elements {

DirectednessReport directedness_audit(const ComputableElement& e, std::uint64_t first_n,
                                      std::uint64_t budget) {
    DirectednessReport report;
    std::vector<Int> head = e.stream.prefix(first_n);
    std::vector<Int> scan = head;
    for (std::uint64_t k = first_n; k < budget; ++k) scan.push_back(e.stream.at(Int(k)).value);
    for (std::size_t i = 0; i < head.size(); ++i) {
        for (std::size_t j = i + 1; j < head.size(); ++j) {
            bool bounded = false;
            for (const Int& cand : scan) {
                if (e.domain.leq(head[i], cand) && e.domain.leq(head[j], cand)) {
                    bounded = true;
                    break;
                }
            }
            if (!bounded) {
                report.witness = {head[i], head[j]};
                return report;
            }
        }
    }
    report.passed = true;
    return report;
}

Int approximant(const ComputableElement& e, std::uint64_t first_n, std::uint64_t budget) {
    std::vector<Int> head = e.stream.prefix(first_n);
    auto above_all = [&](const Int& cand) {
        return std::all_of(head.begin(), head.end(),
                           [&](const Int& h) { return e.domain.leq(h, cand); });
    };
    for (const Int& cand : head)
        if (above_all(cand)) return cand;
    for (std::uint64_t k = first_n; k < budget; ++k) {
        Int cand = e.stream.at(Int(k)).value;
        if (above_all(cand)) return cand;
    }
    throw std::runtime_error("no comparable representative");
}

ComputableFunction identity_function(const domains::EffectiveDomain& d) {
    if (!d.has_way_below() || !d.wb_graph.valid())
        throw std::invalid_argument("identity_function: domain has no effective way-below graph");
    ComputableFunction f;
    f.name = "identity[" + d.name + "]";
    f.source = d;
    f.target = d;
    f.basis_image = [](const Int& c) { return c; };
    f.graph = d.wb_graph;
    f.limit_image = [](const domains::LimitDescriptor& lim) {
        return std::optional<domains::LimitDescriptor>(lim);
    };
    return f;
}

ComputableFunction constant_function(const domains::EffectiveDomain& d, const Int& image_code) {
    if (!d.wb01.valid())
        throw std::invalid_argument("constant_function: domain has no way-below decider");
    ComputableFunction f;
    f.name = "const[" + d.decode_text(image_code) + "]";
    f.source = d;
    f.target = d;
    Int img = image_code;
    f.basis_image = [img](const Int&) { return img; };
    f.graph = progs::constant_function_graph(d.wb01, image_code, f.name + "-graph");
    return f;
}

ComputableFunction scale3_function() {
    ComputableFunction f;
    f.name = "scale3";
    f.source = domains::interval_domain(Rational(0), Rational(1));
    f.target = domains::interval_domain(Rational(0), Rational(3));
    codes::Ambient src{Rational(0), Rational(1)};
    codes::Ambient dst{Rational(0), Rational(3)};
    f.basis_image = [src, dst](const Int& m) {
        auto iv = codes::decode_interval(m, src);
        return codes::encode_interval({iv.lo * 3, iv.hi * 3}, dst);
    };
    f.graph = progs::scale3_graph_program();
    auto target = f.target;
    f.limit_image =
        [target](const domains::LimitDescriptor& lim) -> std::optional<domains::LimitDescriptor> {
        if (lim.name == "sqrt2third") return domains::builtin_limit(target, "sqrt2");
        return std::nullopt;
    };
    return f;
}

ComputableElement apply_function(const ComputableFunction& f, const ComputableElement& e) {
    if (e.domain.name != f.source.name)
        throw std::invalid_argument("apply_function: element domain " + e.domain.name +
                                    " does not match function source " + f.source.name);
    if (!f.target.has_way_below())
        throw std::invalid_argument(
            "apply_function: target domain " + f.target.name +
            " has only a weak basis; function application needs way-below structure");
    ComputableElement out;
    out.domain = f.target;
    out.stream = machine::dovetail_merge2(e.stream, f.graph);
    if (e.target && f.limit_image) out.target = f.limit_image(*e.target);
    return out;
}

BridgeResult change_basis(const ComputableElement& e, const machine::CostedEnumerator& bridge,
                          const domains::EffectiveDomain& new_domain,
                          const std::function<bool(const Int&, const Int&)>& cross_way_below,
                          std::uint64_t sample) {
    BridgeResult result;
    for (std::uint64_t k = 0; k < sample; ++k) {
        Int v = bridge.at(Int(k)).value;
        auto [n, m] = codes::unpair(v);
        if (!cross_way_below(n, m)) result.unsound_pairs.emplace_back(n, m);
    }
    if (!result.unsound_pairs.empty()) return result;
    ComputableElement out;
    out.domain = new_domain;
    out.stream = machine::dovetail_merge2(e.stream, bridge);
    out.target = e.target;
    result.element = std::move(out);
    return result;
}

ComputableElement recode_element(const ComputableElement& e,
                                 const machine::CostedEnumerator& translation,
                                 const machine::CostedEnumerator& inverse, std::uint64_t sample) {
    for (std::uint64_t k = 0; k < sample; ++k) {
        Int fwd = translation.at(Int(k)).value;
        if (inverse.at(fwd).value != Int(k))
            throw std::invalid_argument("recode_element: translation is not a sampled bijection");
        Int bwd = inverse.at(Int(k)).value;
        if (translation.at(bwd).value != Int(k))
            throw std::invalid_argument("recode_element: inverse is not a sampled bijection");
    }
    auto base = e.domain;
    auto inv = inverse;
    auto back = [inv](const Int& c) { return inv.at(c).value; };

    domains::EffectiveDomain recoded;
    recoded.name = base.name + "+recoded";
    recoded.leq = [base, back](const Int& a, const Int& b) { return base.leq(back(a), back(b)); };
    if (base.has_way_below())
        recoded.way_below = [base, back](const Int& a, const Int& b) {
            return base.way_below(back(a), back(b));
        };
    recoded.decode_text = [base, back](const Int& c) { return base.decode_text(back(c)); };
    recoded.ambient = base.ambient;

    ComputableElement out;
    out.domain = std::move(recoded);
    out.stream = machine::recode(e.stream, translation);
    if (e.target) {
        domains::LimitDescriptor lim = *e.target;
        auto base_lim = *e.target;
        lim.leq_to_limit = [base_lim, back](const Int& c) { return base_lim.leq_to_limit(back(c)); };
        if (base_lim.way_below_limit)
            lim.way_below_limit = [base_lim, back](const Int& c) {
                return base_lim.way_below_limit(back(c));
            };
        out.target = std::move(lim);
    }
    return out;
}

MonotonicityReport monotonicity_audit(const ComputableFunction& f, int window) {
    MonotonicityReport report;
    for (int a = 0; a < window; ++a) {
        for (int b = 0; b < window; ++b) {
            if (!f.source.leq(Int(a), Int(b))) continue;
            if (!f.target.leq(f.basis_image(Int(a)), f.basis_image(Int(b)))) {
                report.witness = {Int(a), Int(b)};
                return report;
            }
        }
    }
    report.passed = true;
    return report;
}

GraphSoundnessReport graph_soundness_audit(const ComputableFunction& f, std::uint64_t scan) {
    GraphSoundnessReport report;
    for (std::uint64_t k = 0; k < scan; ++k) {
        Int v = f.graph.at(Int(k)).value;
        auto [n, m] = codes::unpair(v);
        if (!f.target.way_below(n, f.basis_image(m))) report.bad_inputs.push_back(Int(k));
    }
    report.passed = report.bad_inputs.empty();
    return report;
}

}  // namespace effdom::elements

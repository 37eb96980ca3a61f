#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "effdom/domains.hpp"
#include "effdom/machine.hpp"

namespace effdom::elements {

// A computable element is an enumerator stream of basis codes with an
// (audited, never assumed) eventual-directedness contract, optionally
// tagged with the limit point it converges to.
struct ComputableElement {
    domains::EffectiveDomain domain;
    machine::CostedEnumerator stream;
    std::optional<domains::LimitDescriptor> target;
};

struct DirectednessReport {
    bool passed = false;
    // Emitted codes for which no joint upper bound was found within budget.
    std::optional<std::pair<Int, Int>> witness;
};

/// Semi-decision: pass means every pair among the first `first_n` emissions
/// has an emitted joint bound within the first `budget` emissions.
DirectednessReport directedness_audit(const ComputableElement& e, std::uint64_t first_n,
                                      std::uint64_t budget);

/// An emitted code above all of the first `first_n` emissions: one of them
/// when possible, otherwise the first joint bound within `budget`.
/// Throws std::runtime_error("no comparable representative") if none exists.
Int approximant(const ComputableElement& e, std::uint64_t first_n, std::uint64_t budget);

// A computable function carries both a pointwise basis image (authoritative
// for audits) and the r.e. way-below graph (authoritative for application).
struct ComputableFunction {
    std::string name;
    domains::EffectiveDomain source;
    domains::EffectiveDomain target;
    std::function<Int(const Int&)> basis_image;
    machine::CostedEnumerator graph;  // range {<n,m> : b'_n << f(b_m)}
    std::function<std::optional<domains::LimitDescriptor>(const domains::LimitDescriptor&)>
        limit_image;  // may be null
};

ComputableFunction identity_function(const domains::EffectiveDomain& d);
ComputableFunction constant_function(const domains::EffectiveDomain& d, const Int& image_code);
/// x -> 3x as a map interval(0,1) -> interval(0,3).
ComputableFunction scale3_function();

/// Stream of the image element: dovetail of e's stream against f's graph.
/// Requires e.domain == f.source and a target with way-below structure
/// (weak-basis-only targets are refused; std::invalid_argument).
ComputableElement apply_function(const ComputableFunction& f, const ComputableElement& e);

struct BridgeResult {
    std::optional<ComputableElement> element;
    // Sampled bridge emissions <n,m> that violate the cross way-below check.
    std::vector<std::pair<Int, Int>> unsound_pairs;
    bool ok() const { return unsound_pairs.empty(); }
};

/// Moves e onto new_domain along a bridge enumerator with range
/// {<n,m> : b'_n << b_m}. The bridge is sampled against cross_way_below
/// before use; an unsound bridge yields a report without an element.
BridgeResult change_basis(const ComputableElement& e, const machine::CostedEnumerator& bridge,
                          const domains::EffectiveDomain& new_domain,
                          const std::function<bool(const Int&, const Int&)>& cross_way_below,
                          std::uint64_t sample);

/// Re-indexes e along a code permutation (a second finite map for the same
/// basis). translation/inverse are sampled for bijectivity; rejects with
/// std::invalid_argument. The result's domain decodes through the inverse,
/// so decoded emission sets are preserved.
ComputableElement recode_element(const ComputableElement& e,
                                 const machine::CostedEnumerator& translation,
                                 const machine::CostedEnumerator& inverse, std::uint64_t sample);

struct MonotonicityReport {
    bool passed = false;
    std::optional<std::pair<Int, Int>> witness;  // source codes with a <= b, f(a) !<= f(b)
};

/// Checks a <= b => image(a) <= image(b) for all basis pairs below window.
MonotonicityReport monotonicity_audit(const ComputableFunction& f, int window);

struct GraphSoundnessReport {
    bool passed = false;
    std::vector<Int> bad_inputs;  // graph inputs whose emission fails the check
};

/// Every emitted <n,m> must satisfy wayBelow(n, basis_image(m)) in the
/// target domain.
GraphSoundnessReport graph_soundness_audit(const ComputableFunction& f, std::uint64_t scan);

}  // namespace effdom::elements

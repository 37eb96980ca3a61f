#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "effdom/domains.hpp"
#include "effdom/elements.hpp"
#include "effdom/machine.hpp"

namespace effdom::complexity {

// Monotone map from basis codes (and designated limit points) into the
// non-negative rationals under reversed order: the remaining-uncertainty
// gauge every audit measures against.
struct Measurement {
    std::string name;
    std::string domain_name;
    std::function<Rational(const Int&)> basis_value;
    std::function<std::optional<Rational>(const domains::LimitDescriptor&)> limit_value;
};

/// The domain's standard measurement: 1-x on the unit-interval bases,
/// 2^-length on cantor, interval width on interval domains.
Measurement builtin_measurement(const domains::EffectiveDomain& d);

/// Truncation of the generic construction:
/// value(x) = 1 - sum_{n<window} 2^-(n+1) [wayBelow(n, x)].
/// Requires an effective way-below; undefined on limit points.
Measurement generic_measurement(const domains::EffectiveDomain& d, unsigned window);

struct StrictnessReport {
    bool strict = false;
    std::optional<std::pair<Int, Int>> witness;  // a strictly below b, yet mu(a) <= mu(b)
};

/// Strict monotonicity on all strict pairs with codes < window:
/// a strictly below b must give basis_value(a) > basis_value(b).
StrictnessReport check_strict_monotone(const Measurement& mu, const domains::EffectiveDomain& d,
                                       int window);

enum class InducingVerdict {
    Induces,                 // strict and the domain is conditionally connected
    StrictnessInsufficient,  // strict, but the connectedness gate failed
    NotStrict,
};

struct InducingReport {
    InducingVerdict verdict;
    StrictnessReport strictness;
    std::optional<domains::ConnectednessWitness> gate_witness;
    std::string text() const;
};

/// Applies the conditional-connectedness criterion: on conditionally
/// connected domains a strict monotone induces the Scott topology
/// everywhere; otherwise strictness alone decides nothing.
InducingReport inducing_by_strictness(const Measurement& mu, const domains::EffectiveDomain& d,
                                      int window);

// ---------------------------------------------------------------------------
// Complexity bounds and audits
// ---------------------------------------------------------------------------

struct ComplexityBound {
    std::string description;
    std::function<Int(std::uint64_t)> at;

    static ComplexityBound from_table(std::vector<Int> values);  // clamps past the end
    /// Closed forms over n with +, -, *, ^ and parentheses, e.g.
    /// "2^(n+1)-2", "40*n+60", "n^2+3*n". Subtraction is truncated at zero.
    static ComplexityBound from_closed_form(const std::string& text);
};

struct ElementAuditRow {
    std::uint64_t n = 0;
    Int code;
    std::uint64_t steps = 0;
    Int step_bound;
    Rational mu_gap;
    Rational tolerance;
    bool steps_ok = false;
    bool gap_ok = false;
    bool below_limit_ok = false;
};

struct ElementAuditReport {
    std::string element_label;
    std::string measurement;
    std::vector<ElementAuditRow> rows;
    bool directedness_ok = false;
    bool passed() const;
};

/// Per-n verdicts for n < window: steps <= t(n); mu(b_phi(n)) - mu(target)
/// below the precision schedule (2^-n unless overridden); emissions below
/// the target; emissions eventually directed. All failures are reported,
/// never thrown.
ElementAuditReport element_complexity_audit(
    const machine::CostedEnumerator& phi, const ComplexityBound& t, const Measurement& mu,
    const domains::EffectiveDomain& d, const domains::LimitDescriptor& target, unsigned window,
    std::function<Rational(std::uint64_t)> precision_schedule = {});

struct FunctionAuditRow {
    std::uint64_t n = 0;  // pair code <m, p>
    Int m, p;
    Int code;
    std::uint64_t steps = 0;
    Int step_bound;
    Rational mu_gap;
    Rational tolerance;  // 2^-p
    bool steps_ok = false;
    bool gap_ok = false;
};

struct FunctionAuditReport {
    std::string function_name;
    std::string measurement;
    std::vector<FunctionAuditRow> rows;
    // Per sampled m: emissions over p form a directed set below image(m).
    std::vector<std::pair<Int, bool>> chain_checks;
    bool passed() const;
};

/// Audits phi against Definition-style bounds: for every pair code n < window,
/// steps <= t(n) and mu(b'_phi(n)) - mu(f(b_m)) < 2^-p where <m,p> = n.
FunctionAuditReport function_complexity_audit(const elements::ComputableFunction& f,
                                              const machine::CostedEnumerator& phi,
                                              const ComplexityBound& t, const Measurement& mu,
                                              unsigned window, const std::vector<Int>& sample_ms);

struct PolytimeVerdict {
    std::optional<unsigned> degree;  // least degree that dominates, if any
    std::string text;
};

/// Shape test for polynomial-time: for each degree d <= max_degree,
/// calibrate C = max over the first half of ceil(steps/(n+1)^d) and accept
/// d iff C*(n+1)^d dominates the whole range. Exponentially growing step
/// counts reject every degree.
PolytimeVerdict polytime_check(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& steps,
                               unsigned max_degree);

// ---------------------------------------------------------------------------
// Worked instances
// ---------------------------------------------------------------------------

/// The reference stream for the element 1 of the unit interval: phi0(n) is
/// the code of (2^(n+1)-1)/2^(n+1), so the mu-gap is exactly 2^-(n+1).
/// The program performs the denominator-block summation sweep the
/// enumeration is built on (2^(n+1)-2 additions) and resolves the final
/// index through a finite translation table, so its step count grows like
/// 2^(n+1). Total: inputs past max_n clamp to the max_n emission.
machine::CostedEnumerator phi_zero_program(unsigned max_n);

/// The frozen step bound for phi_zero_program: the 2^(n+1)-2 shape rescaled
/// to this evaluator's cost model.
ComplexityBound phi_zero_bound();

/// phi for audited bisection targets: emission n+1 of the stream (width
/// 2^-(n+1) < 2^-n).
machine::CostedEnumerator shifted_stream(const machine::CostedEnumerator& stream, unsigned shift);

/// Witness phi for the identity on the Cantor basis: <m,p> -> the code of
/// the length-p truncation of string m.
machine::CostedEnumerator cantor_identity_phi();

// Fan-domain demo: no finite family of opens can generate the Scott
// topology of the fan; given candidate opens (each listed by its minimum
// point per chain), the diagonal open excludes every candidate.
struct FanDemoResult {
    bool all_excluded = false;
    // Per candidate: the witness point (chain, height) in O_m but not in O'.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> witnesses;
};

FanDemoResult fan_basis_diagonal_demo(const std::vector<std::vector<std::uint64_t>>& candidate_minima);

}  // namespace effdom::complexity

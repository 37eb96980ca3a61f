#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "effdom/codes.hpp"
#include "effdom/machine.hpp"

namespace effdom::domains {

using Code = Int;

// A named element outside the enumerated basis (a supremum of basis
// elements), given by decidable predicates against basis codes.
struct LimitDescriptor {
    std::string name;
    std::string domain_name;
    std::function<bool(const Code&)> leq_to_limit;
    std::function<bool(const Code&)> way_below_limit;  // null when undefined
};

// Basis-indexed domain descriptor: decidable order (and way-below, when the
// basis is effective in the strong sense) on basis codes, code 0 first in
// the enumeration, plus a decoder to printable values. Weak-basis-only
// domains leave way_below empty.
struct EffectiveDomain {
    std::string name;
    std::function<bool(const Code&, const Code&)> leq;
    std::function<bool(const Code&, const Code&)> way_below;
    std::function<std::string(const Code&)> decode_text;
    machine::CostedEnumerator wb01;      // program <n,m> -> [b_n << b_m]
    machine::CostedEnumerator wb_graph;  // enumerates {<n,m> : b_n << b_m}
    std::optional<codes::Ambient> ambient;

    bool has_way_below() const { return static_cast<bool>(way_below); }
};

EffectiveDomain cantor_domain();
EffectiveDomain interval_domain(const Rational& lo, const Rational& hi);
EffectiveDomain unit_interval_domain();
/// Sub-basis of the unit interval: {0} plus fractions with denominator 3^k.
EffectiveDomain unit_interval_thirds_domain();
EffectiveDomain turing_domain();
EffectiveDomain flipped_unit_domain();
EffectiveDomain q_domain();
EffectiveDomain fan_domain();

/// Lookup by name: cantor, interval(a,b), unitInterval, unitThirds, turing,
/// flippedUnit, qDomain, fan. Throws std::invalid_argument on unknown names.
EffectiveDomain builtin_domain(const std::string& name);

/// Built-in limit points: cantor/"zeros", unitInterval/"one",
/// interval(1,2)/"sqrt2", interval(3,4)/"pi", interval(0,3)/"sqrt2",
/// interval(0,1)/"sqrt2third", turing/"evens", flippedUnit/"half",
/// qDomain/"infinity", fan/"top".
LimitDescriptor builtin_limit(const EffectiveDomain& domain, const std::string& limit_name);

// Thirds sub-basis codec (exposed for tests and the change-of-basis demo).
Rational decode_thirds(const Code& index);
Code encode_thirds(const Rational& q);

// Q-domain basis codec: 0 -> 0, odd 2k+1 -> -(k+1), even 2k+2 -> k-th
// positive non-integer rational ordered by numerator+denominator shells.
Rational decode_q_basis(const Code& index);
Code encode_q_basis(const Rational& q);

// ---------------------------------------------------------------------------
// Finite posets: the desk-scale oracle.
// ---------------------------------------------------------------------------

struct FinitePoset {
    std::string name;
    int size = 0;
    std::vector<std::vector<bool>> leq;  // reflexive-transitive closure

    bool le(int a, int b) const { return leq[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }

    /// Builds from covering pairs; computes the closure and rejects cycles
    /// (std::invalid_argument).
    static FinitePoset from_covers(std::string name, int size,
                                   const std::vector<std::pair<int, int>>& covers);

    /// Line-oriented text: `poset <name> <size>` then `cover <i> <j>` lines.
    static FinitePoset parse(std::istream& in);
};

/// Exhaustive way-below: true iff every directed subset whose supremum is
/// above b contains an element above a. Carrier capped at 12.
bool way_below_oracle(const FinitePoset& p, int a, int b);

/// way_below_oracle(a, a).
bool is_compact(const FinitePoset& p, int a);

/// All Scott-open subsets (exactly the upper sets in the finite case),
/// each as a sorted element list. Carrier capped at 5.
std::vector<std::vector<int>> scott_opens(const FinitePoset& p);

struct ConnectednessWitness {
    // x and y are below z yet incomparable.
    std::string x, y, z;
};

/// nullopt when conditionally connected.
std::optional<ConnectednessWitness> check_conditionally_connected(const FinitePoset& p);
/// Sampled variant on the first sample_size basis codes of a domain.
std::optional<ConnectednessWitness> check_conditionally_connected(const EffectiveDomain& d,
                                                                  int sample_size);

// ---------------------------------------------------------------------------
// Effective-basis audit
// ---------------------------------------------------------------------------

struct BasisCheckReport {
    std::string domain;
    int window = 0;                 // N
    Int scanned_inputs;             // how many k were evaluated
    std::size_t true_pairs = 0;     // |{(n,m) < N : wayBelow(n,m)}|
    // (n, m, rule verdict, enumerator verdict) for every disagreement
    std::vector<std::tuple<Int, Int, bool, bool>> mismatches;

    bool ok() const { return mismatches.empty(); }
};

/// Cross-checks the domain's way-below graph enumerator against the
/// decidable rule on the window codes < N.
BasisCheckReport check_effective_basis(const EffectiveDomain& d, int window);

// ---------------------------------------------------------------------------
// Counterexample witnesses
// ---------------------------------------------------------------------------

struct DirectedFamilyWitness {
    std::string description;      // symbolic identity of the family
    std::string domain_name;
    Code excluded_code;           // the a that is not way-below the limit
    std::function<Code(std::uint64_t)> family;  // k-th member, as a basis code

    struct Verification {
        bool directed_ok = true;
        bool none_above_ok = true;
        std::optional<std::pair<std::uint64_t, std::uint64_t>> directed_failure;
        std::optional<std::uint64_t> above_failure;
        bool ok() const { return directed_ok && none_above_ok; }
    };

    /// Checks the first depth members: pairwise joint bounds inside the
    /// family, and that no member is above the excluded code.
    Verification verify(const EffectiveDomain& d, std::uint64_t depth) const;
};

/// Directed family witnessing that `a` is not way-below the named limit.
/// Known for flippedUnit/"half", qDomain/"infinity", fan/"top"; throws
/// std::invalid_argument otherwise.
DirectedFamilyWitness not_way_below_witness(const EffectiveDomain& d, const Code& a,
                                            const std::string& limit_name);

}  // namespace effdom::domains

#pragma once

#include <string>
#include <vector>

#include "effdom/codes.hpp"
#include "effdom/elements.hpp"

namespace effdom::reals {

struct RationalPoly {
    std::vector<Rational> coefficients;  // ascending degree

    int degree() const;
    /// Parses comma-separated exact coefficients ("-2,0,1" or "1/3,0,1");
    /// decimals are rejected.
    static RationalPoly parse(const std::string& csv);
    std::string to_string() const;
};

/// Exact Horner evaluation.
Rational eval_poly(const RationalPoly& p, const Rational& x);

/// The partial surjection from the interval domain onto the reals: defined
/// exactly on degenerate intervals [x,x], where it returns x.
struct Representation {
    codes::Ambient ambient;

    bool defined_at(const Int& code) const;
    /// The represented real, when defined.
    std::optional<Rational> value_at(const Int& code) const;
};

/// Bisection stream for the single sign change of p in [a,b]. Requires
/// p(a)*p(b) < 0 exactly (std::invalid_argument otherwise). Emission i is
/// an interval of width (b-a)/2^i containing a zero; if a midpoint is an
/// exact zero the stream emits the degenerate interval forever after.
/// Emissions are a chain; the stream is a lookup program tabulated through
/// max_steps and constant beyond.
elements::ComputableElement bisection_element(const RationalPoly& p, const Rational& a,
                                              const Rational& b, unsigned max_steps = 32);

/// Enclosures of pi over interval(3,4), built from the grouped Leibniz
/// series 8 * sum 1/((4k+1)(4k+3)). Emission n sums 2^(n+1) terms in dyadic
/// fixed point, rounds outward to denominator 2^(n+8), clips to [3,4] and
/// intersects with the previous emission, so emissions form a chain with
/// width(emission n) <= min(2^-(n+1), 1/(2(n+1))).
elements::ComputableElement pi_element(unsigned max_emissions = 16);

/// A reference enclosure of pi of width < 10^-55 (Machin's formula with
/// alternating-series truncation bounds; independent of the Leibniz route).
codes::RationalInterval pi_reference();

struct EnclosureResult {
    codes::RationalInterval interval;  // best interval seen
    bool reached = false;              // width <= 2^-precision achieved
    std::uint64_t emission_index = 0;  // where it was found
};

/// First emitted interval of width <= 2^-precision_bits, scanning at most
/// `budget` emissions. Audits the nested-chain precondition along the way
/// (std::invalid_argument on violation). When the budget runs out first,
/// returns reached = false with the best interval.
EnclosureResult enclose(const elements::ComputableElement& e, unsigned precision_bits,
                        std::uint64_t budget = 4096);

}  // namespace effdom::reals

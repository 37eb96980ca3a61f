#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "effdom/rational.hpp"

namespace effdom::codes {

// Finite maps between N and the concrete basis carriers. Every map here is a
// bijection with both directions effectively computable; index 0 is always
// the carrier's designated first element.

/// Cantor pairing <n,m> = (n^2 + 2nm + m^2 + 3n + m)/2.
Int pair(const Int& n, const Int& m);
/// Inverse of pair: pair(unpair(k).first, unpair(k).second) == k.
std::pair<Int, Int> unpair(const Int& k);

// ---------------------------------------------------------------------------
// Fractions in [0,1), lowest terms, denominator-major / numerator-minor.
//
//   0 -> 0, 1 -> 1/2, 2 -> 1/3, 3 -> 2/3, 4 -> 1/4, 5 -> 3/4, 6 -> 1/5, ...
//
// Only reduced fractions appear, so the map is a bijection. The index of
// p/q (q >= 2) is S(q-1) + rank(p,q), where S(m) = sum_{d<=m} phi(d) and
// rank counts coprime numerators below p.
// ---------------------------------------------------------------------------

/// Index -> reduced fraction in [0,1).
Rational decode_fraction(const Int& index);
/// Reduced fraction in [0,1) -> index. Throws std::invalid_argument outside
/// the carrier (q < 0, q >= 1). Input need not be pre-reduced; Rational
/// normalization is canonical.
Int encode_fraction(const Rational& q);

/// Totient summatory function S(m) = sum_{d=1..m} phi(d); S(0) = 0.
/// Sublinear (sieve below a threshold, divisor-block recurrence above),
/// memoized across calls. Exposed because enumeration tests pin block
/// boundaries against it.
Int totient_sum(const Int& m);
/// Euler phi for machine-sized arguments.
std::uint64_t totient(std::uint64_t d);

// ---------------------------------------------------------------------------
// Finite binary strings, length-major then value order, empty string first.
//   0 -> "", 1 -> "0", 2 -> "1", 3 -> "00", ..., 6 -> "11", 7 -> "000", ...
// The length-m block starts at index 2^m - 1.
// ---------------------------------------------------------------------------

std::string decode_string(const Int& index);
Int encode_string(const std::string& bits);  // throws on non-binary input

// ---------------------------------------------------------------------------
// Rationals in the closed interval [0,1]: 0 -> 0, 1 -> 1, k >= 2 -> the
// (k-1)-th fraction of decode_fraction, i.e. 2 -> 1/2, 3 -> 1/3, ...
// Used as the endpoint scale for interval codes and as the flipped-unit
// basis enumeration.
// ---------------------------------------------------------------------------

Rational decode_closed_unit(const Int& index);
Int encode_closed_unit(const Rational& q);

// ---------------------------------------------------------------------------
// Rational subintervals [u,v] of a fixed ambient [A,B], bottom first.
//
//   0       -> [A,B]
//   1       -> [B,B]
//   k >= 2  -> m' = (k-2) + [k-2 >= 1]   (the pair code 1 = <0,1> would
//              duplicate [A,B], so it is skipped),
//              (i,j) = unpair(m'),
//              u = A + (B-A) * decode_fraction(i)      (u in [A,B)),
//              v = u + (B-u) * decode_closed_unit(j)   (v in [u,B]).
//
// This is a bijection onto the rational subintervals of [A,B]; encode is the
// exact inverse and rejects intervals not contained in the ambient.
// ---------------------------------------------------------------------------

struct RationalInterval {
    Rational lo;
    Rational hi;

    bool operator==(const RationalInterval& o) const { return lo == o.lo && hi == o.hi; }
    Rational width() const { return hi - lo; }
    bool contains(const RationalInterval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

struct Ambient {
    Rational lo;
    Rational hi;
};

RationalInterval decode_interval(const Int& index, const Ambient& ambient);
Int encode_interval(const RationalInterval& iv, const Ambient& ambient);

std::string interval_to_string(const RationalInterval& iv);

}  // namespace effdom::codes

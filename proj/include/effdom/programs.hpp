#pragma once

#include "effdom/codes.hpp"
#include "effdom/machine.hpp"

namespace effdom::progs {

// In-language counterparts of the finite-map decoders, used to build the
// recursively-enumerable way-below graphs as genuine programs. Each decoder
// is its own sub-program (invoked via Call), so binder depths stay local.
//
// Small finite lookup tables (totients, coprimality) accelerate the common
// range; every table path has a gcd-loop fallback, so the programs stay
// total and correct on all of N.

/// <x,y> -> gcd(x,y); gcd(x,0) = x.
machine::CostedEnumerator gcd_program();
/// <j,d> -> [gcd(j,d) == 1].
machine::CostedEnumerator coprime01_program();
/// d -> Euler phi(d).
machine::CostedEnumerator phi_program();
/// fraction code -> <numerator, denominator>; 0 -> <0,1>.
machine::CostedEnumerator fraction_decode_program();
/// closed-unit code -> <numerator, denominator>.
machine::CostedEnumerator closed_unit_decode_program();
/// string code -> <length, numeric value of the word>.
machine::CostedEnumerator string_params_program();
/// interval code over ambient [A,B] -> <<un,ud>, <vn,vd>> (unreduced).
/// Ambient endpoints must be non-negative rationals.
machine::CostedEnumerator interval_decode_program(const Rational& lo, const Rational& hi);

// Way-below deciders on pair codes <n,m>, one per effective basis.
machine::CostedEnumerator cantor_wb01_program();
machine::CostedEnumerator unit_interval_wb01_program();
machine::CostedEnumerator turing_wb01_program();
machine::CostedEnumerator interval_wb01_program(const Rational& lo, const Rational& hi);

/// k -> k * wb01(k): enumerates {<n,m> : b_n wayBelow b_m} (plus the bottom
/// pair 0 on misses).
machine::CostedEnumerator graph_from_wb01(const machine::CostedEnumerator& wb01,
                                          std::string label);

/// Graph of the constant function with image code c:
/// emits k = <n,m> iff wb01(<n, c>).
machine::CostedEnumerator constant_function_graph(const machine::CostedEnumerator& wb01,
                                                  const Int& image_code, std::string label);

/// Graph of x -> 3x from interval(0,1) onto interval(0,3):
/// emits <n,m> iff decode03(n) wayBelow [3u, 3v] where [u,v] = decode01(m).
machine::CostedEnumerator scale3_graph_program();

/// Graph of the prefix-restriction witness for the identity on the Cantor
/// basis: <m,p> -> code of the length-p truncation of string m (or m itself
/// when |m| <= p).
machine::CostedEnumerator cantor_truncate_program();

}  // namespace effdom::progs

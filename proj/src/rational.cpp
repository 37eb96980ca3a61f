#include "effdom/rational.hpp"

#include <cctype>

namespace effdom {

Int isqrt(const Int& n) {
    if (n < 0) throw std::invalid_argument("isqrt: negative argument");
    if (n == 0) return 0;
    Int x = Int(1) << (msb(n) / 2 + 1);
    // Newton iteration on integers converges from above.
    while (true) {
        Int y = (x + n / x) >> 1;
        if (y >= x) break;
        x = y;
    }
    return x;
}

Rational dyadic_floor(const Rational& x, unsigned bits) {
    Int scaled_num = numerator(x) << bits;
    Int q = scaled_num / denominator(x);
    if (scaled_num < 0 && q * denominator(x) != scaled_num) --q;  // floor for negatives
    return Rational(q, pow2(bits));
}

Rational dyadic_ceil(const Rational& x, unsigned bits) {
    return -dyadic_floor(-x, bits);
}

Rational pow2_inv(unsigned n) { return Rational(1, pow2(n)); }

Int pow2(unsigned n) { return Int(1) << n; }

Rational parse_rational(const std::string& text) {
    auto fail = [&] { throw std::invalid_argument("not an exact rational: '" + text + "'"); };
    std::string s = text;
    if (s.empty()) fail();
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    std::string num, den;
    std::string* cur = &num;
    bool seen_slash = false;
    for (; i < s.size(); ++i) {
        if (s[i] == '/') {
            if (seen_slash) fail();
            seen_slash = true;
            cur = &den;
        } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            cur->push_back(s[i]);
        } else {
            fail();
        }
    }
    if (num.empty() || (seen_slash && den.empty())) fail();
    Int n(num);
    Int d = seen_slash ? Int(den) : Int(1);
    if (d == 0) fail();
    Rational q(n, d);
    return neg ? -q : q;
}

std::string rational_to_string(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) s += "/" + denominator(q).str();
    return s;
}

std::string rational_to_decimal(const Rational& q, unsigned digits, bool round_up) {
    bool neg = q < 0;
    Rational a = neg ? -q : q;
    Int scale = 1;
    for (unsigned i = 0; i < digits; ++i) scale *= 10;
    Int scaled = numerator(a) * scale / denominator(a);  // floor of |q|*10^d
    bool exact = scaled * denominator(a) == numerator(a) * scale;
    // Outward rounding: bump away from zero when requested direction says so.
    bool bump = !exact && (round_up != neg);
    if (bump) ++scaled;
    std::string body = scaled.str();
    if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
    std::string out;
    if (neg && scaled != 0) out += "-";
    out += body.substr(0, body.size() - digits);
    if (digits > 0) out += "." + body.substr(body.size() - digits);
    return out;
}

}  // namespace effdom

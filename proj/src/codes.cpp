#include "effdom/codes.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <unordered_map>

namespace effdom::codes {

Int pair(const Int& n, const Int& m) {
    if (n < 0 || m < 0) throw std::invalid_argument("pair: arguments must be naturals");
    Int s = n + m;
    return s * (s + 1) / 2 + n;
}

std::pair<Int, Int> unpair(const Int& k) {
    if (k < 0) throw std::invalid_argument("unpair: argument must be a natural");
    Int s = (isqrt(8 * k + 1) - 1) / 2;
    Int t = s * (s + 1) / 2;
    if (t > k) {  // guard against isqrt edge
        --s;
        t = s * (s + 1) / 2;
    }
    Int n = k - t;
    return {n, s - n};
}

// ---------------------------------------------------------------------------
// Totient machinery
// ---------------------------------------------------------------------------

namespace {

constexpr std::uint64_t kSieveLimit = 1u << 21;

struct TotientTables {
    std::vector<std::uint32_t> phi;    // phi[d] for d < kSieveLimit
    std::vector<std::uint64_t> cumul;  // cumul[d] = sum_{e<=d} phi[e]
    std::unordered_map<std::uint64_t, Int> big_sums;
    std::mutex mu;

    TotientTables() {
        phi.resize(kSieveLimit);
        for (std::uint32_t i = 0; i < kSieveLimit; ++i) phi[i] = i;
        for (std::uint32_t p = 2; p < kSieveLimit; ++p) {
            if (phi[p] == p) {  // prime
                for (std::uint64_t j = p; j < kSieveLimit; j += p) phi[j] -= phi[j] / p;
            }
        }
        cumul.resize(kSieveLimit);
        std::uint64_t acc = 0;
        for (std::uint32_t i = 0; i < kSieveLimit; ++i) {
            acc += i >= 1 ? phi[i] : 0;
            cumul[i] = acc;
        }
    }

    // S(m) via S(m) = m(m+1)/2 - sum_{k=2..m} S(floor(m/k)), memoized over
    // the O(sqrt m) distinct quotient values.
    Int sum(std::uint64_t m) {
        if (m < kSieveLimit) return Int(cumul[m]);
        auto it = big_sums.find(m);
        if (it != big_sums.end()) return it->second;
        Int total = Int(m) * (Int(m) + 1) / 2;
        std::uint64_t k = 2;
        while (k <= m) {
            std::uint64_t q = m / k;
            std::uint64_t k_hi = m / q;  // largest k with the same quotient
            total -= Int(k_hi - k + 1) * sum(q);
            k = k_hi + 1;
        }
        big_sums.emplace(m, total);
        return total;
    }
};

TotientTables& tables() {
    static TotientTables t;
    return t;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t d) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p = 2; p * p <= d; p += (p == 2 ? 1 : 2)) {
        if (d % p == 0) {
            ps.push_back(p);
            while (d % p == 0) d /= p;
        }
    }
    if (d > 1) ps.push_back(d);
    return ps;
}

// #{x' <= x : gcd(x', d) = 1} by inclusion-exclusion over prime factors of d.
std::uint64_t coprime_count_upto(std::uint64_t x, const std::vector<std::uint64_t>& ps) {
    std::uint64_t total = 0;
    std::uint64_t subsets = 1ull << ps.size();
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        std::uint64_t prod = 1;
        bool overflow = false;
        int bits = 0;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            if (mask & (1ull << i)) {
                ++bits;
                if (prod > x / ps[i]) {
                    overflow = true;
                    break;
                }
                prod *= ps[i];
            }
        }
        if (overflow) continue;  // contributes floor(x/prod) = 0
        std::uint64_t term = x / prod;
        if (bits % 2 == 0)
            total += term;
        else
            total -= term;
    }
    return total;
}

std::uint64_t to_u64(const Int& v, const char* what) {
    if (v < 0 || v > Int(UINT64_MAX)) throw std::invalid_argument(std::string(what) + ": out of supported range");
    return static_cast<std::uint64_t>(v);
}

}  // namespace

Int totient_sum(const Int& m) {
    if (m <= 0) return 0;
    return tables().sum(to_u64(m, "totient_sum"));
}

std::uint64_t totient(std::uint64_t d) {
    if (d < kSieveLimit) return tables().phi[d];
    auto ps = prime_factors(d);
    std::uint64_t r = d;
    for (auto p : ps) r -= r / p;
    return r;
}

Rational decode_fraction(const Int& index) {
    if (index < 0) throw std::invalid_argument("decode_fraction: negative index");
    if (index == 0) return Rational(0);
    std::lock_guard<std::mutex> lock(tables().mu);
    // Locate the denominator block: the smallest q >= 2 with S(q) > index.
    // S(m) ~ (3/pi^2) m^2 with an O(m log m) deviation, so a high-precision
    // inverse estimate lands within a short totient walk of the block even
    // for indices around 2^60.
    Int est = isqrt(index * 1000000000000LL / 303963550927LL) + 1;
    if (est < 2) est = 2;
    if (est > (Int(1) << 62)) throw std::invalid_argument("decode_fraction: index too large");
    std::uint64_t q = static_cast<std::uint64_t>(est);
    Int s = tables().sum(q);  // S(q)
    while (s <= index) {
        ++q;
        s += totient(q);
    }
    while (q > 2 && s - Int(totient(q)) > index) {
        s -= totient(q);
        --q;
    }
    Int offset = index - (s - Int(totient(q)));  // in [0, phi(q))
    std::uint64_t rank = to_u64(offset, "decode_fraction rank") + 1;
    // Numerator = rank-th positive integer coprime to q.
    auto ps = prime_factors(q);
    std::uint64_t a = 1, b = q;
    while (a < b) {
        std::uint64_t mid = a + (b - a) / 2;
        if (coprime_count_upto(mid, ps) >= rank)
            b = mid;
        else
            a = mid + 1;
    }
    return Rational(Int(a), Int(q));
}

Int encode_fraction(const Rational& value) {
    if (value < 0 || value >= 1) throw std::invalid_argument("encode_fraction: value must lie in [0,1)");
    if (value == 0) return 0;
    std::lock_guard<std::mutex> lock(tables().mu);
    std::uint64_t q = to_u64(denominator(value), "encode_fraction denominator");
    std::uint64_t p = to_u64(numerator(value), "encode_fraction numerator");
    auto ps = prime_factors(q);
    std::uint64_t rank = p == 1 ? 0 : coprime_count_upto(p - 1, ps);
    return tables().sum(q - 1) + rank;
}

// ---------------------------------------------------------------------------
// Binary strings
// ---------------------------------------------------------------------------

std::string decode_string(const Int& index) {
    if (index < 0) throw std::invalid_argument("decode_string: negative index");
    Int k = index + 1;
    unsigned len = msb(k);  // k in [2^len, 2^(len+1)) -> string of that length
    Int value = k - pow2(len);
    std::string s(len, '0');
    for (unsigned i = 0; i < len; ++i) {
        if (bit_test(value, len - 1 - i)) s[i] = '1';
    }
    return s;
}

Int encode_string(const std::string& bits) {
    Int value = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw std::invalid_argument("encode_string: not a binary string");
        value = value * 2 + (c == '1' ? 1 : 0);
    }
    return pow2(static_cast<unsigned>(bits.size())) - 1 + value;
}

// ---------------------------------------------------------------------------
// Closed unit
// ---------------------------------------------------------------------------

Rational decode_closed_unit(const Int& index) {
    if (index == 0) return Rational(0);
    if (index == 1) return Rational(1);
    return decode_fraction(index - 1);
}

Int encode_closed_unit(const Rational& q) {
    if (q < 0 || q > 1) throw std::invalid_argument("encode_closed_unit: value must lie in [0,1]");
    if (q == 0) return 0;
    if (q == 1) return 1;
    return encode_fraction(q) + 1;
}

// ---------------------------------------------------------------------------
// Intervals
// ---------------------------------------------------------------------------

RationalInterval decode_interval(const Int& index, const Ambient& ambient) {
    if (ambient.lo >= ambient.hi) throw std::invalid_argument("decode_interval: empty ambient");
    if (index < 0) throw std::invalid_argument("decode_interval: negative index");
    if (index == 0) return {ambient.lo, ambient.hi};
    if (index == 1) return {ambient.hi, ambient.hi};
    Int m = index - 2;
    if (m >= 1) ++m;  // pair code 1 = <0,1> would repeat the ambient
    auto [i, j] = unpair(m);
    Rational x = decode_fraction(i);
    Rational y = decode_closed_unit(j);
    Rational u = ambient.lo + (ambient.hi - ambient.lo) * x;
    Rational v = u + (ambient.hi - u) * y;
    return {u, v};
}

Int encode_interval(const RationalInterval& iv, const Ambient& ambient) {
    if (ambient.lo >= ambient.hi) throw std::invalid_argument("encode_interval: empty ambient");
    if (iv.lo > iv.hi) throw std::invalid_argument("encode_interval: empty interval");
    if (iv.lo < ambient.lo || iv.hi > ambient.hi)
        throw std::invalid_argument("encode_interval: interval not contained in the ambient");
    if (iv.lo == ambient.lo && iv.hi == ambient.hi) return 0;
    if (iv.lo == ambient.hi) return 1;
    Rational x = (iv.lo - ambient.lo) / (ambient.hi - ambient.lo);
    Rational y = (iv.hi - iv.lo) / (ambient.hi - iv.lo);
    Int m = pair(encode_fraction(x), encode_closed_unit(y));
    if (m >= 2) --m;
    return m + 2;
}

std::string interval_to_string(const RationalInterval& iv) {
    return "[" + rational_to_string(iv.lo) + ", " + rational_to_string(iv.hi) + "]";
}

}  // namespace effdom::codes

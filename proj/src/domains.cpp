#include "effdom/domains.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <numeric>

#include "effdom/programs.hpp"
#include "effdom/reals.hpp"

namespace effdom::domains {

namespace {

bool is_integer(const Rational& q) { return denominator(q) == 1; }

Int ceil_of(const Rational& q) {
    Int c = numerator(q) / denominator(q);
    if (c * denominator(q) != numerator(q) && q > 0) ++c;
    return c;
}

std::uint64_t small(const Code& c, const char* what) {
    if (c < 0 || c > Int(UINT64_MAX)) throw std::invalid_argument(std::string(what) + ": code out of range");
    return static_cast<std::uint64_t>(c);
}

}  // namespace

// ---------------------------------------------------------------------------
// Built-in domains
// ---------------------------------------------------------------------------

EffectiveDomain cantor_domain() {
    EffectiveDomain d;
    d.name = "cantor";
    auto prefix = [](const Code& a, const Code& b) {
        std::string s = codes::decode_string(a);
        std::string t = codes::decode_string(b);
        return s.size() <= t.size() && t.compare(0, s.size(), s) == 0;
    };
    d.leq = prefix;
    d.way_below = prefix;  // finite strings are compact
    d.decode_text = [](const Code& c) { return "\"" + codes::decode_string(c) + "\""; };
    d.wb01 = progs::cantor_wb01_program();
    d.wb_graph = progs::graph_from_wb01(d.wb01, "cantor-wb-graph");
    return d;
}

EffectiveDomain interval_domain(const Rational& lo, const Rational& hi) {
    if (lo >= hi) throw std::invalid_argument("interval domain: empty ambient");
    EffectiveDomain d;
    codes::Ambient amb{lo, hi};
    d.name = "interval(" + rational_to_string(lo) + "," + rational_to_string(hi) + ")";
    d.ambient = amb;
    d.leq = [amb](const Code& a, const Code& b) {
        // reverse inclusion
        return codes::decode_interval(a, amb).contains(codes::decode_interval(b, amb));
    };
    d.way_below = [amb](const Code& a, const Code& b) {
        auto x = codes::decode_interval(a, amb);
        auto y = codes::decode_interval(b, amb);
        bool left = x.lo == amb.lo || x.lo < y.lo;
        bool right = x.hi == amb.hi || y.hi < x.hi;
        return left && right;
    };
    d.decode_text = [amb](const Code& c) { return codes::interval_to_string(codes::decode_interval(c, amb)); };
    if (lo >= 0) {
        d.wb01 = progs::interval_wb01_program(lo, hi);
        d.wb_graph = progs::graph_from_wb01(d.wb01, d.name + "-wb-graph");
    }
    return d;
}

EffectiveDomain unit_interval_domain() {
    EffectiveDomain d;
    d.name = "unitInterval";
    d.leq = [](const Code& a, const Code& b) {
        return codes::decode_fraction(a) <= codes::decode_fraction(b);
    };
    d.way_below = [](const Code& a, const Code& b) {
        return a == 0 || codes::decode_fraction(a) < codes::decode_fraction(b);
    };
    d.decode_text = [](const Code& c) { return rational_to_string(codes::decode_fraction(c)); };
    d.wb01 = progs::unit_interval_wb01_program();
    d.wb_graph = progs::graph_from_wb01(d.wb01, "unitInterval-wb-graph");
    return d;
}

Rational decode_thirds(const Code& index) {
    if (index < 0) throw std::invalid_argument("decode_thirds: negative index");
    if (index == 0) return Rational(0);
    // Block k >= 1 holds the 2*3^(k-1) fractions p/3^k with 3 coprime to p.
    Int left = index - 1;
    Int block = 1;        // 3^k
    Int block_size = 2;   // 2*3^(k-1)
    Int power = 3;
    while (left >= block_size) {
        left -= block_size;
        block_size *= 3;
        power *= 3;
        ++block;
    }
    // left-th numerator not divisible by 3: numerators go 1,2,4,5,7,8,...
    Int trip = left / 2, off = left % 2;
    Int numerator_val = trip * 3 + 1 + off;
    return Rational(numerator_val, power);
}

Code encode_thirds(const Rational& q) {
    if (q == 0) return 0;
    if (q <= 0 || q >= 1) throw std::invalid_argument("encode_thirds: value must lie in [0,1)");
    Int den = denominator(q);
    Int power = 3;
    Int base = 1;        // codes before this block
    Int block_size = 2;
    while (power < den) {
        base += block_size;
        block_size *= 3;
        power *= 3;
    }
    if (power != den) throw std::invalid_argument("encode_thirds: denominator is not a power of 3");
    Int p = numerator(q);
    // rank of p among numerators coprime to 3: p = 3t+1 -> 2t, p = 3t+2 -> 2t+1
    Int t = p / 3, r = p % 3;
    if (r == 0) throw std::invalid_argument("encode_thirds: numerator divisible by 3");
    return base + t * 2 + (r - 1);
}

EffectiveDomain unit_interval_thirds_domain() {
    EffectiveDomain d;
    d.name = "unitThirds";
    d.leq = [](const Code& a, const Code& b) { return decode_thirds(a) <= decode_thirds(b); };
    d.way_below = [](const Code& a, const Code& b) {
        return a == 0 || decode_thirds(a) < decode_thirds(b);
    };
    d.decode_text = [](const Code& c) { return rational_to_string(decode_thirds(c)); };
    return d;
}

EffectiveDomain turing_domain() {
    EffectiveDomain d;
    d.name = "turing";
    d.leq = [](const Code& a, const Code& b) { return a <= b; };
    d.way_below = [](const Code& a, const Code& b) { return a <= b; };
    d.decode_text = [](const Code& c) { return c.str(); };
    d.wb01 = progs::turing_wb01_program();
    d.wb_graph = progs::graph_from_wb01(d.wb01, "turing-wb-graph");
    return d;
}

EffectiveDomain flipped_unit_domain() {
    EffectiveDomain d;
    d.name = "flippedUnit";
    d.leq = [](const Code& a, const Code& b) {
        Rational x = codes::decode_closed_unit(a);
        Rational y = codes::decode_closed_unit(b);
        Rational half(1, 2);
        if (x <= half && y <= half) return x <= y;
        if (x >= half && y >= half) return y <= x;
        return false;
    };
    d.decode_text = [](const Code& c) { return rational_to_string(codes::decode_closed_unit(c)); };
    return d;
}

Rational decode_q_basis(const Code& index) {
    if (index < 0) throw std::invalid_argument("decode_q_basis: negative index");
    if (index == 0) return Rational(0);
    std::uint64_t k = small(index, "decode_q_basis");
    if (k % 2 == 1) return Rational(-Int((k + 1) / 2));  // odd -> -(k+1)/2
    // even 2t+2 -> t-th positive non-integer rational, shells by p+q.
    std::uint64_t t = (k - 2) / 2;
    for (std::uint64_t s = 3;; ++s) {
        for (std::uint64_t q = 2; q < s; ++q) {
            std::uint64_t p = s - q;
            if (std::gcd(p, q) != 1) continue;
            if (t == 0) return Rational(Int(p), Int(q));
            --t;
        }
    }
}

Code encode_q_basis(const Rational& value) {
    if (value == 0) return 0;
    if (value < 0) {
        if (!is_integer(value)) throw std::invalid_argument("encode_q_basis: negative non-integer");
        return Int(2) * (-numerator(value)) - 1;
    }
    if (is_integer(value)) throw std::invalid_argument("encode_q_basis: positive integers are not basis members");
    Int p = numerator(value), q = denominator(value);
    Int s = p + q;
    Int t = 0;
    for (Int shell = 3; shell <= s; ++shell) {
        for (Int den = 2; den < shell; ++den) {
            Int num = shell - den;
            if (boost::multiprecision::gcd(num, den) != 1) continue;
            if (shell == s && den == q) return 2 * t + 2;
            ++t;
        }
    }
    throw std::logic_error("encode_q_basis: unreachable");
}

EffectiveDomain q_domain() {
    EffectiveDomain d;
    d.name = "qDomain";
    d.leq = [](const Code& a, const Code& b) {
        Rational x = decode_q_basis(a);
        Rational y = decode_q_basis(b);
        if (x == y) return true;
        if (x < 0 && y < 0) return y <= x;  // negative chain rises toward -inf
        if (x > 0 && y > 0 && !is_integer(x) && !is_integer(y) && ceil_of(x) == ceil_of(y))
            return x <= y;  // same unit cell (n, n+1]
        return false;
    };
    d.decode_text = [](const Code& c) { return rational_to_string(decode_q_basis(c)); };
    return d;
}

EffectiveDomain fan_domain() {
    EffectiveDomain d;
    d.name = "fan";
    d.leq = [](const Code& a, const Code& b) {
        auto [n, k] = codes::unpair(a);
        auto [m, j] = codes::unpair(b);
        return n == m && k <= j;
    };
    d.decode_text = [](const Code& c) {
        auto [n, k] = codes::unpair(c);
        return k.str() + "@I" + n.str();
    };
    return d;
}

EffectiveDomain builtin_domain(const std::string& name) {
    if (name == "cantor") return cantor_domain();
    if (name == "unitInterval") return unit_interval_domain();
    if (name == "unitThirds") return unit_interval_thirds_domain();
    if (name == "turing") return turing_domain();
    if (name == "flippedUnit") return flipped_unit_domain();
    if (name == "qDomain") return q_domain();
    if (name == "fan") return fan_domain();
    if (name.rfind("interval(", 0) == 0 && name.back() == ')') {
        std::string args = name.substr(9, name.size() - 10);
        auto comma = args.find(',');
        if (comma != std::string::npos) {
            return interval_domain(parse_rational(args.substr(0, comma)),
                                   parse_rational(args.substr(comma + 1)));
        }
    }
    throw std::invalid_argument("unknown domain: " + name);
}

LimitDescriptor builtin_limit(const EffectiveDomain& domain, const std::string& limit_name) {
    LimitDescriptor lim;
    lim.name = limit_name;
    lim.domain_name = domain.name;
    if (domain.name == "cantor" && limit_name == "zeros") {
        auto all_zero = [](const Code& c) {
            std::string s = codes::decode_string(c);
            return s.find('1') == std::string::npos;
        };
        lim.leq_to_limit = all_zero;
        lim.way_below_limit = all_zero;
        return lim;
    }
    if ((domain.name == "unitInterval" || domain.name == "unitThirds") && limit_name == "one") {
        lim.leq_to_limit = [](const Code&) { return true; };
        lim.way_below_limit = [](const Code&) { return true; };
        return lim;
    }
    if (domain.ambient && limit_name == "sqrt2") {
        auto amb = *domain.ambient;
        auto contains_sqrt2 = [amb](const Code& c) {
            auto iv = codes::decode_interval(c, amb);
            return iv.lo * iv.lo <= 2 && 2 <= iv.hi * iv.hi && iv.lo >= 0;
        };
        lim.leq_to_limit = contains_sqrt2;
        lim.way_below_limit = [amb, contains_sqrt2](const Code& c) {
            auto iv = codes::decode_interval(c, amb);
            bool strict_lo = iv.lo == amb.lo || iv.lo * iv.lo < 2;
            bool strict_hi = iv.hi == amb.hi || iv.hi * iv.hi > 2;
            return strict_lo && strict_hi && contains_sqrt2(c);
        };
        return lim;
    }
    if (domain.ambient && limit_name == "sqrt2third") {
        auto amb = *domain.ambient;
        // the zero of 9x^2 - 2, i.e. sqrt(2)/3
        auto contains = [amb](const Code& c) {
            auto iv = codes::decode_interval(c, amb);
            return 9 * iv.lo * iv.lo <= 2 && 2 <= 9 * iv.hi * iv.hi && iv.lo >= 0;
        };
        lim.leq_to_limit = contains;
        lim.way_below_limit = contains;
        return lim;
    }
    if (domain.ambient && limit_name == "pi") {
        auto amb = *domain.ambient;
        auto ref = reals::pi_reference();
        auto contains = [amb, ref](const Code& c) {
            auto iv = codes::decode_interval(c, amb);
            return iv.lo <= ref.lo && ref.hi <= iv.hi;
        };
        lim.leq_to_limit = contains;
        lim.way_below_limit = contains;
        return lim;
    }
    if (domain.name == "turing" && limit_name == "evens") {
        auto even = [](const Code& c) { return c % 2 == 0; };
        lim.leq_to_limit = even;
        lim.way_below_limit = even;
        return lim;
    }
    if (domain.name == "flippedUnit" && limit_name == "half") {
        lim.leq_to_limit = [](const Code&) { return true; };  // 1/2 is the top
        return lim;
    }
    if (domain.name == "qDomain" && limit_name == "infinity") {
        lim.leq_to_limit = [](const Code&) { return true; };
        return lim;
    }
    if (domain.name == "fan" && limit_name == "top") {
        lim.leq_to_limit = [](const Code&) { return true; };
        return lim;
    }
    throw std::invalid_argument("unknown limit '" + limit_name + "' for domain " + domain.name);
}

// ---------------------------------------------------------------------------
// Finite posets
// ---------------------------------------------------------------------------

FinitePoset FinitePoset::from_covers(std::string name, int size,
                                     const std::vector<std::pair<int, int>>& covers) {
    if (size <= 0 || size > 64) throw std::invalid_argument("poset size out of range");
    FinitePoset p;
    p.name = std::move(name);
    p.size = size;
    p.leq.assign(static_cast<std::size_t>(size), std::vector<bool>(static_cast<std::size_t>(size), false));
    for (int i = 0; i < size; ++i) p.leq[i][i] = true;
    for (auto [a, b] : covers) {
        if (a < 0 || b < 0 || a >= size || b >= size) throw std::invalid_argument("cover index out of range");
        p.leq[a][b] = true;
    }
    // Warshall closure.
    for (int k = 0; k < size; ++k)
        for (int i = 0; i < size; ++i)
            if (p.leq[i][k])
                for (int j = 0; j < size; ++j)
                    if (p.leq[k][j]) p.leq[i][j] = true;
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
            if (i != j && p.leq[i][j] && p.leq[j][i])
                throw std::invalid_argument("cover relation contains a cycle");
    return p;
}

FinitePoset FinitePoset::parse(std::istream& in) {
    std::string keyword, name;
    int size = 0;
    if (!(in >> keyword >> name >> size) || keyword != "poset")
        throw std::invalid_argument("poset file must start with 'poset <name> <size>'");
    std::vector<std::pair<int, int>> covers;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string kw;
        int a = 0, b = 0;
        if (!(ls >> kw >> a >> b) || kw != "cover")
            throw std::invalid_argument("bad poset line: " + line);
        covers.emplace_back(a, b);
    }
    return from_covers(name, size, covers);
}

namespace {

// Directed iff the subset has a greatest element (finite case); returns its
// index or -1.
int directed_max(const FinitePoset& p, const std::vector<int>& subset) {
    for (int cand : subset) {
        bool top = true;
        for (int x : subset)
            if (!p.le(x, cand)) {
                top = false;
                break;
            }
        if (top) return cand;
    }
    return -1;
}

}  // namespace

bool way_below_oracle(const FinitePoset& p, int a, int b) {
    if (p.size > 12) throw std::invalid_argument("way_below_oracle: carrier larger than 12");
    if (a < 0 || b < 0 || a >= p.size || b >= p.size) throw std::invalid_argument("element out of range");
    std::uint32_t total = 1u << p.size;
    for (std::uint32_t mask = 1; mask < total; ++mask) {
        std::vector<int> subset;
        for (int i = 0; i < p.size; ++i)
            if (mask & (1u << i)) subset.push_back(i);
        int sup = directed_max(p, subset);
        if (sup < 0) continue;      // not directed
        if (!p.le(b, sup)) continue;  // supremum not above b
        bool found = false;
        for (int d : subset)
            if (p.le(a, d)) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

bool is_compact(const FinitePoset& p, int a) { return way_below_oracle(p, a, a); }

std::vector<std::vector<int>> scott_opens(const FinitePoset& p) {
    if (p.size > 5) throw std::invalid_argument("scott_opens: carrier larger than 5");
    std::vector<std::vector<int>> opens;
    std::uint32_t total = 1u << p.size;
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        bool upper = true;
        for (int i = 0; i < p.size && upper; ++i) {
            if (!(mask & (1u << i))) continue;
            for (int j = 0; j < p.size; ++j)
                if (p.le(i, j) && !(mask & (1u << j))) {
                    upper = false;
                    break;
                }
        }
        if (!upper) continue;
        std::vector<int> open;
        for (int i = 0; i < p.size; ++i)
            if (mask & (1u << i)) open.push_back(i);
        opens.push_back(std::move(open));
    }
    return opens;
}

std::optional<ConnectednessWitness> check_conditionally_connected(const FinitePoset& p) {
    for (int z = 0; z < p.size; ++z)
        for (int x = 0; x < p.size; ++x)
            for (int y = x + 1; y < p.size; ++y)
                if (p.le(x, z) && p.le(y, z) && !p.le(x, y) && !p.le(y, x))
                    return ConnectednessWitness{std::to_string(x), std::to_string(y), std::to_string(z)};
    return std::nullopt;
}

std::optional<ConnectednessWitness> check_conditionally_connected(const EffectiveDomain& d,
                                                                  int sample_size) {
    int n = sample_size;
    std::vector<std::vector<bool>> le(static_cast<std::size_t>(n),
                                      std::vector<bool>(static_cast<std::size_t>(n), false));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) le[i][j] = d.leq(Int(i), Int(j));
    for (int z = 0; z < n; ++z)
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y)
                if (le[x][z] && le[y][z] && !le[x][y] && !le[y][x])
                    return ConnectednessWitness{d.decode_text(Int(x)), d.decode_text(Int(y)),
                                                d.decode_text(Int(z))};
    return std::nullopt;
}

BasisCheckReport check_effective_basis(const EffectiveDomain& d, int window) {
    if (!d.has_way_below() || !d.wb_graph.valid())
        throw std::invalid_argument("check_effective_basis: domain has no effective way-below graph");
    BasisCheckReport report;
    report.domain = d.name;
    report.window = window;

    std::set<std::pair<Int, Int>> rule_set;
    for (int n = 0; n < window; ++n)
        for (int m = 0; m < window; ++m)
            if (d.way_below(Int(n), Int(m))) rule_set.emplace(Int(n), Int(m));
    report.true_pairs = rule_set.size();

    std::set<std::pair<Int, Int>> emitted;
    Int limit = codes::pair(Int(window - 1), Int(window - 1));
    report.scanned_inputs = limit + 1;
    for (Int k = 0; k <= limit; ++k) {
        Int v = d.wb_graph.at(k).value;
        auto [n, m] = codes::unpair(v);
        if (n < window && m < window) emitted.emplace(n, m);
    }

    for (const auto& pr : rule_set)
        if (!emitted.count(pr)) report.mismatches.emplace_back(pr.first, pr.second, true, false);
    for (const auto& pr : emitted)
        if (!rule_set.count(pr)) report.mismatches.emplace_back(pr.first, pr.second, false, true);
    return report;
}

// ---------------------------------------------------------------------------
// Witnesses
// ---------------------------------------------------------------------------

DirectedFamilyWitness::Verification DirectedFamilyWitness::verify(const EffectiveDomain& d,
                                                                  std::uint64_t depth) const {
    Verification v;
    std::vector<Code> members;
    members.reserve(depth);
    for (std::uint64_t k = 0; k < depth; ++k) members.push_back(family(k));
    for (std::uint64_t i = 0; i < depth && v.directed_ok; ++i) {
        for (std::uint64_t j = i + 1; j < depth && v.directed_ok; ++j) {
            bool bounded = false;
            for (std::uint64_t k = 0; k < depth; ++k) {
                if (d.leq(members[i], members[k]) && d.leq(members[j], members[k])) {
                    bounded = true;
                    break;
                }
            }
            if (!bounded) {
                v.directed_ok = false;
                v.directed_failure = {i, j};
            }
        }
    }
    for (std::uint64_t k = 0; k < depth; ++k) {
        if (d.leq(excluded_code, members[k])) {
            v.none_above_ok = false;
            v.above_failure = k;
            break;
        }
    }
    return v;
}

DirectedFamilyWitness not_way_below_witness(const EffectiveDomain& d, const Code& a,
                                            const std::string& limit_name) {
    DirectedFamilyWitness w;
    w.domain_name = d.name;
    w.excluded_code = a;
    if (d.name == "flippedUnit" && limit_name == "half") {
        Rational value = codes::decode_closed_unit(a);
        if (value <= Rational(1, 2)) {
            w.description = "D0 = rationals in (1/2, 1], descending toward the top 1/2";
            w.family = [](std::uint64_t k) -> Code {
                if (k == 0) return codes::encode_closed_unit(Rational(1));
                std::uint64_t seen = 0;
                for (std::uint64_t den = 3;; ++den) {
                    for (std::uint64_t num = den / 2 + 1; num < den; ++num) {
                        if (std::gcd(num, den) != 1) continue;
                        if (Rational(Int(num), Int(den)) <= Rational(1, 2)) continue;
                        if (++seen == k) return codes::encode_closed_unit(Rational(Int(num), Int(den)));
                    }
                }
            };
        } else {
            w.description = "D1 = rationals in [0, 1/2), ascending toward the top 1/2";
            w.family = [](std::uint64_t k) -> Code {
                if (k == 0) return codes::encode_closed_unit(Rational(0));
                std::uint64_t seen = 0;
                for (std::uint64_t den = 3;; ++den) {
                    for (std::uint64_t num = 1; 2 * num < den; ++num) {
                        if (std::gcd(num, den) != 1) continue;
                        if (++seen == k) return codes::encode_closed_unit(Rational(Int(num), Int(den)));
                    }
                }
            };
        }
        return w;
    }
    if (d.name == "qDomain" && limit_name == "infinity") {
        Rational value = decode_q_basis(a);
        if (value < 0)
            throw std::invalid_argument("not_way_below_witness: a must be a non-negative basis member");
        w.description = "D = negative-integer chain -1, -2, -3, ... with supremum infinity";
        w.family = [](std::uint64_t k) -> Code { return Int(2 * k + 1); };  // -(k+1)
        return w;
    }
    if (d.name == "fan" && limit_name == "top") {
        auto [n, kk] = codes::unpair(a);
        Int other = n == 0 ? Int(1) : Int(0);
        w.description = "D = the whole chain I_" + other.str() + ", with supremum p";
        w.family = [other](std::uint64_t k) -> Code { return codes::pair(other, Int(k)); };
        return w;
    }
    throw std::invalid_argument("no witness known for domain " + d.name + ", limit " + limit_name);
}

}  // namespace effdom::domains

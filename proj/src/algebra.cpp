#include "qrg/algebra.hpp"

#include <algorithm>

namespace qrg {

namespace {

constexpr std::uint64_t kRingSizeCap = 1u << 20;

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Polynomial helpers over GF(p); coefficient vectors c0..c(d), no implicit
// leading term, not normalized (callers trim).
using Poly = std::vector<Fe>;

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

// f mod g with g monic, in place arithmetic mod p.
Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
    trim(f);
    int dg = deg(g);
    while (deg(f) >= dg) {
        Fe lead = f.back();
        int shift = deg(f) - dg;
        for (int i = 0; i <= dg; ++i) {
            std::uint64_t t = static_cast<std::uint64_t>(lead) * g[i] % p;
            Fe& c = f[i + shift];
            c = static_cast<Fe>((c + p - t) % p);
        }
        trim(f);
    }
    return f;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = static_cast<Fe>(
                (r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
        }
    }
    return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These witnesses decide primality for all n < 3.3 * 10^24.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Ring Ring::finite_field(std::uint64_t p, unsigned k) {
    if (!is_prime(p)) throw math_error("field characteristic must be prime");
    if (k < 1) throw math_error("field degree must be >= 1");
    std::uint64_t size = 1;
    for (unsigned i = 0; i < k; ++i) {
        size *= p;
        if (size > kRingSizeCap)
            throw limit_error("ring size exceeds 2^20 cap");
    }
    Ring r;
    r.kind_ = RingKind::finite_field;
    r.p_ = static_cast<std::uint32_t>(p);
    r.k_ = k;
    r.size_ = size;
    if (k > 1) {
        // Scan monic x^k + c_{k-1} x^{k-1} + ... + c_0 in lexicographic
        // order on (c_{k-1},...,c_0); ascending integer m = sum c_i p^i
        // enumerates exactly that order.
        std::uint64_t pk = size / p;  // p^(k-1) combinations of c_0..c_{k-1}
        pk *= p;                      // = p^k
        auto is_irreducible = [&](const Poly& m) {
            // trial division by every monic polynomial of degree 1..k/2
            for (unsigned d = 1; 2 * d <= k; ++d) {
                std::uint64_t nd = 1;
                for (unsigned i = 0; i < d; ++i) nd *= p;
                for (std::uint64_t c = 0; c < nd; ++c) {
                    Poly g(d + 1, 0);
                    std::uint64_t t = c;
                    for (unsigned i = 0; i < d; ++i) {
                        g[i] = static_cast<Fe>(t % p);
                        t /= p;
                    }
                    g[d] = 1;
                    Poly rem = poly_mod(m, g, r.p_);
                    if (rem.empty()) return false;
                }
            }
            return true;
        };
        for (std::uint64_t m = 0; m < pk; ++m) {
            Poly mod(k + 1, 0);
            std::uint64_t t = m;
            for (unsigned i = 0; i < k; ++i) {
                mod[i] = static_cast<Fe>(t % p);
                t /= p;
            }
            mod[k] = 1;
            if (is_irreducible(mod)) {
                r.modulus_.assign(mod.begin(), mod.end() - 1);
                break;
            }
        }
        if (r.modulus_.empty() && k > 1)
            throw math_error("no irreducible modulus found");  // unreachable
    }
    return r;
}

Ring Ring::residue_ring(std::uint64_t p, unsigned k) {
    if (!is_prime(p)) throw math_error("residue ring base must be prime");
    if (p == 2) throw math_error("residue rings Z/2^k are not supported");
    if (k < 1) throw math_error("residue ring exponent must be >= 1");
    std::uint64_t size = 1;
    for (unsigned i = 0; i < k; ++i) {
        size *= p;
        if (size > kRingSizeCap)
            throw limit_error("ring size exceeds 2^20 cap");
    }
    Ring r;
    r.kind_ = RingKind::residue_ring;
    r.p_ = static_cast<std::uint32_t>(p);
    r.k_ = k;
    r.size_ = size;
    return r;
}

std::vector<Fe> Ring::to_poly(Fe a) const {
    std::vector<Fe> c(k_, 0);
    for (unsigned i = 0; i < k_; ++i) {
        c[i] = static_cast<Fe>(a % p_);
        a /= p_;
    }
    return c;
}

Fe Ring::from_poly(const std::vector<Fe>& c) const {
    std::uint64_t v = 0;
    for (unsigned i = k_; i-- > 0;) v = v * p_ + (i < c.size() ? c[i] : 0);
    return static_cast<Fe>(v);
}

Fe Ring::add(Fe a, Fe b) const {
    if (kind_ == RingKind::residue_ring || k_ == 1)
        return static_cast<Fe>((static_cast<std::uint64_t>(a) + b) % size_);
    auto ca = to_poly(a), cb = to_poly(b);
    for (unsigned i = 0; i < k_; ++i)
        ca[i] = static_cast<Fe>((ca[i] + cb[i]) % p_);
    return from_poly(ca);
}

Fe Ring::neg(Fe a) const {
    if (kind_ == RingKind::residue_ring || k_ == 1)
        return a ? static_cast<Fe>(size_ - a) : 0;
    auto c = to_poly(a);
    for (auto& x : c) x = x ? static_cast<Fe>(p_ - x) : 0;
    return from_poly(c);
}

Fe Ring::sub(Fe a, Fe b) const { return add(a, neg(b)); }

Fe Ring::mul(Fe a, Fe b) const {
    if (kind_ == RingKind::residue_ring || k_ == 1)
        return static_cast<Fe>(static_cast<std::uint64_t>(a) * b % size_);
    Poly mod(modulus_);
    mod.push_back(1);
    Poly r = poly_mod(poly_mul(to_poly(a), to_poly(b), p_), mod, p_);
    return from_poly(r);
}

Fe Ring::pow(Fe a, std::uint64_t e) const {
    Fe r = one();
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

Fe Ring::inv(Fe a) const {
    if (!is_unit(a)) throw math_error("inverse of a non-unit");
    if (kind_ == RingKind::residue_ring || k_ == 1) {
        // extended Euclid on integers
        std::int64_t t = 0, nt = 1;
        std::int64_t r = static_cast<std::int64_t>(size_), nr = a;
        while (nr) {
            std::int64_t q = r / nr;
            std::int64_t t2 = t - q * nt;
            t = nt;
            nt = t2;
            std::int64_t r2 = r - q * nr;
            r = nr;
            nr = r2;
        }
        if (t < 0) t += static_cast<std::int64_t>(size_);
        return static_cast<Fe>(t);
    }
    // GF(p^k): a^(q-2)
    return pow(a, size_ - 2);
}

Fe Ring::div(Fe a, Fe b) const { return mul(a, inv(b)); }

bool Ring::is_unit(Fe a) const {
    if (a >= size_) throw math_error("element out of range");
    if (kind_ == RingKind::finite_field) return a != 0;
    return a % p_ != 0;
}

bool Ring::is_zero_divisor(Fe a) const { return a != 0 && !is_unit(a); }

Fe Ring::from_int(const BigInt& v) const {
    if (kind_ == RingKind::finite_field && k_ > 1) {
        if (v >= 0) {
            if (v >= size_)
                throw parse_error(
                    "encoding out of range for this field; use 0..size-1");
            return static_cast<Fe>(v);
        }
        BigInt m = ((v % p_) + p_) % p_;
        return static_cast<Fe>(m);
    }
    BigInt m = ((v % size_) + size_) % size_;
    return static_cast<Fe>(m);
}

Fe Ring::embed_int(const BigInt& v) const {
    BigInt mod = kind_ == RingKind::finite_field ? BigInt(p_) : BigInt(size_);
    BigInt m = ((v % mod) + mod) % mod;
    // prime-subfield elements 0..p-1 encode as themselves
    return static_cast<Fe>(m);
}

bool Ring::is_square(Fe a) const {
    if (a == 0) return true;
    if (kind_ == RingKind::finite_field) {
        if (p_ == 2) return true;  // Frobenius is bijective
        return pow(a, (size_ - 1) / 2) == one();
    }
    return sqrt(a).has_value();
}

std::optional<Fe> Ring::sqrt(Fe a) const {
    if (a == 0) return Fe{0};
    if (kind_ == RingKind::finite_field && p_ == 2)
        return pow(a, size_ / 2);  // inverse of Frobenius
    if (kind_ == RingKind::finite_field && !is_square(a)) return std::nullopt;
    // deterministic smallest-encoding scan; rings are capped small
    for (std::uint64_t e = 0; e < size_; ++e) {
        Fe f = static_cast<Fe>(e);
        if (mul(f, f) == a) return f;
    }
    return std::nullopt;
}

Fe Ring::smallest_nonsquare() const {
    if (kind_ != RingKind::finite_field || p_ == 2)
        throw math_error("non-square representative needs odd characteristic");
    for (std::uint64_t e = 1; e < size_; ++e) {
        if (!is_square(static_cast<Fe>(e))) return static_cast<Fe>(e);
    }
    throw math_error("no non-square found");  // unreachable for q > 2
}

Fe Ring::residue(Fe a) const {
    if (kind_ != RingKind::residue_ring)
        throw math_error("residue reduction needs a residue ring");
    return static_cast<Fe>(a % p_);
}

Ring Ring::residue_field() const { return finite_field(p_, 1); }

Fe Ring::trace(Fe a) const {
    if (!char_two()) throw math_error("trace implemented for char-2 fields");
    Fe acc = 0, x = a;
    for (unsigned i = 0; i < k_; ++i) {
        acc = add(acc, x);
        x = mul(x, x);
    }
    return acc;
}

std::uint64_t Ring::unit_count() const {
    if (kind_ == RingKind::finite_field) return size_ - 1;
    return size_ - size_ / p_;
}

std::string Ring::to_string() const {
    std::string base = kind_ == RingKind::finite_field ? "gf:" : "zmod:";
    base += std::to_string(p_);
    if (kind_ == RingKind::residue_ring || k_ > 1)
        base += "^" + std::to_string(k_);
    return base;
}

std::string Place::to_string() const {
    return infinite ? "inf" : prime.str();
}

int legendre_symbol(const BigInt& u, const BigInt& p) {
    if (p > BigInt("18446744073709551615"))
        throw limit_error("prime too large");
    if (p <= 2 || !is_prime(static_cast<std::uint64_t>(p)))
        throw math_error("legendre symbol needs an odd prime");
    BigInt a = ((u % p) + p) % p;
    if (a == 0) return 0;
    BigInt r = boost::multiprecision::powm(a, (p - 1) / 2, p);
    return r == 1 ? 1 : -1;
}

namespace {

// Factor |x| by trial division; large leftover cofactors are accepted only
// when certified prime or square. Ample for desk-scale inputs.
void factor_into(BigInt x, std::vector<std::pair<BigInt, unsigned>>& out) {
    if (x < 0) x = -x;
    if (x == 0) throw math_error("cannot factor zero");
    for (BigInt d = 2; d * d <= x && d <= 1000000; ++d) {
        if (x % d == 0) {
            unsigned e = 0;
            while (x % d == 0) {
                x /= d;
                ++e;
            }
            out.emplace_back(d, e);
        }
    }
    if (x > 1) {
        if (x <= BigInt("18446744073709551615") &&
            is_prime(static_cast<std::uint64_t>(x))) {
            out.emplace_back(x, 1);
            return;
        }
        BigInt r = boost::multiprecision::sqrt(x);
        if (r * r == x && r <= BigInt("18446744073709551615") &&
            is_prime(static_cast<std::uint64_t>(r))) {
            out.emplace_back(r, 2);
            return;
        }
        throw limit_error("integer too large to factor exactly");
    }
}

}  // namespace

BigInt squarefree_part(BigInt x) {
    if (x == 0) throw math_error("squarefree part of zero");
    int sign = x < 0 ? -1 : 1;
    std::vector<std::pair<BigInt, unsigned>> f;
    factor_into(x, f);
    BigInt r = sign;
    for (auto& [p, e] : f)
        if (e & 1) r *= p;
    return r;
}

std::vector<BigInt> prime_factors(BigInt x) {
    std::vector<std::pair<BigInt, unsigned>> f;
    factor_into(x, f);
    std::vector<BigInt> r;
    for (auto& [p, e] : f) r.push_back(p);
    std::sort(r.begin(), r.end());
    return r;
}

long padic_valuation(const BigRat& x, const BigInt& p) {
    if (x == 0) throw math_error("valuation of zero");
    long v = 0;
    BigInt n = boost::multiprecision::numerator(x);
    BigInt d = boost::multiprecision::denominator(x);
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    while (d % p == 0) {
        d /= p;
        --v;
    }
    return v;
}

namespace {

// (u-1)/2 mod 2 and (u^2-1)/8 mod 2 for odd u (may be negative).
int eps2(const BigInt& u) {
    BigInt t = ((u - 1) / 2) % 2;
    if (t < 0) t += 2;
    return static_cast<int>(t);
}

int omega2(const BigInt& u) {
    BigInt t = ((u * u - 1) / 8) % 2;
    if (t < 0) t += 2;
    return static_cast<int>(t);
}

}  // namespace

int hilbert_symbol(const BigRat& a, const BigRat& b, const Place& v) {
    if (a == 0 || b == 0)
        throw math_error("hilbert symbol of zero");
    BigInt A = squarefree_part(boost::multiprecision::numerator(a) *
                               boost::multiprecision::denominator(a));
    BigInt B = squarefree_part(boost::multiprecision::numerator(b) *
                               boost::multiprecision::denominator(b));
    if (v.infinite) return (A < 0 && B < 0) ? -1 : 1;
    const BigInt& p = v.prime;
    if (p == 2) {
        int alpha = A % 2 == 0 ? 1 : 0;
        int beta = B % 2 == 0 ? 1 : 0;
        BigInt u = alpha ? A / 2 : A;
        BigInt w = beta ? B / 2 : B;
        int e = (eps2(u) * eps2(w) + alpha * omega2(w) + beta * omega2(u)) % 2;
        return e ? -1 : 1;
    }
    if (p > BigInt("18446744073709551615") ||
        !is_prime(static_cast<std::uint64_t>(p)))
        throw math_error("hilbert place must be prime or infinite");
    int alpha = A % p == 0 ? 1 : 0;
    int beta = B % p == 0 ? 1 : 0;
    BigInt u = alpha ? A / p : A;
    BigInt w = beta ? B / p : B;
    int r = 1;
    if (alpha && beta) r *= legendre_symbol(-1, p);
    if (beta) r *= legendre_symbol(u, p);
    if (alpha) r *= legendre_symbol(w, p);
    return r;
}

}  // namespace qrg

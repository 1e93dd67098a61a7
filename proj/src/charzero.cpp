#include "qrg/charzero.hpp"

#include <algorithm>
#include <utility>

namespace qrg {

namespace {

int hilbert2(const BigInt& x, const BigInt& y) {
    return hilbert_symbol(BigRat(x), BigRat(y), Place::at(2));
}

// d squarefree: a square in Q_2 iff odd (even 2-valuation) and 1 mod 8.
bool square_q2(const BigInt& d) {
    if (d % 2 == 0) return false;
    BigInt r = d % 8;
    if (r < 0) r += 8;
    return r == 1;
}

// Witt index over Q_2 from the classifying triple (dim, disc class, Hasse
// invariant). Isotropy: dim >= 5 always; dim 4 unless disc is a square and
// the Hasse invariant differs from (-1,-1); dim 3 iff Hasse = (-1,-disc);
// dim 2 iff -disc is a square. Splitting a hyperbolic plane negates the
// disc class and multiplies the Hasse invariant by (-1, disc')_2.
int witt_q2(int dim, BigInt d, int eps) {
    int w = 0;
    while (true) {
        bool isotropic;
        if (dim <= 1)
            isotropic = false;
        else if (dim == 2)
            isotropic = square_q2(-d);
        else if (dim == 3)
            isotropic = eps == hilbert2(-1, -d);
        else if (dim == 4)
            isotropic = !(square_q2(d) && eps != hilbert2(-1, -1));
        else
            isotropic = true;
        if (!isotropic) return w;
        d = -d;
        eps *= hilbert2(-1, d);
        dim -= 2;
        ++w;
    }
}

// Witt index of a diagonal unit form over GF(p), p odd: (n-1)/2 for odd n;
// for even n, n/2 when (-1)^{n/2} det is a square mod p, else n/2 - 1.
int witt_unit_diag(const std::vector<BigInt>& units, const BigInt& p) {
    int n = static_cast<int>(units.size());
    if (n == 0) return 0;
    if (n % 2 == 1) return (n - 1) / 2;
    BigInt disc = 1;
    for (const BigInt& u : units) disc = disc * u % p;
    if ((n / 2) % 2 == 1) disc = -disc;
    return legendre_symbol(disc, p) == 1 ? n / 2 : n / 2 - 1;
}

// Assembles a form from entries that are already squarefree and nonzero.
RationalForm assemble(std::vector<BigInt> entries) {
    RationalForm f;
    f.n = static_cast<int>(entries.size());
    for (const BigInt& e : entries) (e > 0 ? f.r_plus : f.r_minus)++;
    f.entries = std::move(entries);
    return f;
}

RationalForm orthogonal_difference(const RationalForm& phi, const RationalForm& psi) {
    std::vector<BigInt> sum = phi.entries;
    for (const BigInt& e : psi.entries) sum.push_back(-e);
    return assemble(std::move(sum));
}

bool perfect_square(const BigInt& m) {
    if (m < 0) return false;
    BigInt r = boost::multiprecision::sqrt(m);
    return r * r == m;
}

// Isotropic over Q iff the hyperbolic plane embeds.
bool rationally_isotropic(const RationalForm& q) {
    return rational_subform_test(make_rational_form({1, -1}), q).contained;
}

}  // namespace

RationalForm make_rational_form(const std::vector<BigRat>& diag) {
    if (diag.empty()) throw math_error("empty diagonal");
    RationalForm f;
    f.n = static_cast<int>(diag.size());
    f.entries.reserve(diag.size());
    for (const BigRat& v : diag) {
        if (v == 0) throw math_error("zero entry in a rational diagonal form");
        BigInt e = squarefree_part(boost::multiprecision::numerator(v) *
                                   boost::multiprecision::denominator(v));
        (e > 0 ? f.r_plus : f.r_minus)++;
        f.entries.push_back(std::move(e));
    }
    return f;
}

BigInt form_discriminant(const RationalForm& q) {
    BigInt d = 1;
    for (const BigInt& e : q.entries) d *= e;
    return squarefree_part(d);
}

RationalForm gamma_rational_diag(const BigRat& a, int n) {
    if (a == 0) throw math_error("nonzero scalar required");
    if (n < 1) throw math_error("positive dimension required");
    std::vector<BigRat> diag;
    diag.reserve(n);
    for (int i = 1; i <= n; ++i) diag.push_back(a * 2 * i * (i + 1));
    return make_rational_form(diag);
}

int real_omega(const RationalForm& q, const BigRat& a) {
    if (a == 0) throw math_error("nonzero scalar required");
    return (a > 0 ? q.r_plus : q.r_minus) + 1;
}

int local_witt_index(const RationalForm& q, const Place& v) {
    if (v.infinite) return std::min(q.r_plus, q.r_minus);
    if (v.prime == 2) {
        int eps = 1;
        for (std::size_t i = 0; i < q.entries.size(); ++i)
            for (std::size_t j = i + 1; j < q.entries.size(); ++j)
                eps *= hilbert2(q.entries[i], q.entries[j]);
        return witt_q2(q.n, form_discriminant(q), eps);
    }
    // squarefree entries have p-valuation 0 or 1
    std::vector<BigInt> unit_part, odd_part;
    for (const BigInt& e : q.entries) {
        if (e % v.prime == 0)
            odd_part.push_back(e / v.prime);
        else
            unit_part.push_back(e);
    }
    return witt_unit_diag(unit_part, v.prime) + witt_unit_diag(odd_part, v.prime);
}

SubformReport rational_subform_test(const RationalForm& psi, const RationalForm& phi) {
    SubformReport rep;
    rep.needed = psi.n;
    RationalForm f = orthogonal_difference(phi, psi);
    std::vector<BigInt> odd;
    for (const BigInt& e : f.entries)
        for (const BigInt& p : prime_factors(e))
            if (p != 2) odd.push_back(p);
    std::sort(odd.begin(), odd.end());
    odd.erase(std::unique(odd.begin(), odd.end()), odd.end());
    std::vector<Place> places{Place::at_infinity(), Place::at(2)};
    for (const BigInt& p : odd) places.push_back(Place::at(p));
    rep.contained = true;
    for (const Place& v : places) {
        int w = local_witt_index(f, v);
        rep.profile.push_back({v, w});
        if (w < rep.needed) rep.contained = false;
    }
    return rep;
}

RationalOmegaReport rational_omega(const RationalForm& q, const BigRat& a) {
    if (a == 0) throw math_error("nonzero scalar required");
    int cap = a > 0 ? q.r_plus : q.r_minus;
    RationalOmegaReport rep;
    SubformReport fail;
    for (int k = 1;; ++k) {
        SubformReport s = rational_subform_test(gamma_rational_diag(a, k), q);
        if (!s.contained) {
            fail = std::move(s);
            break;
        }
        rep.d = k;
        // the real place enforces the signature bound, so the ascent stops
        if (k > cap)
            throw math_error("embedding past the signature bound; this signals a bug");
    }
    rep.omega = rep.d + 1;
    rep.blocked_dim = rep.d + 1;
    rep.certificate = fail.profile;
    bool found = false;
    for (const PlaceWitt& pw : fail.profile) {
        if (pw.witt < fail.needed) {
            rep.blocked_place = pw.place;
            found = true;
            break;
        }
    }
    if (!found)
        throw math_error("failing profile without a failing place; this signals a bug");
    return rep;
}

RationalOmegaReport local_omega(const RationalForm& q, const BigRat& a, const Place& v) {
    if (a == 0) throw math_error("nonzero scalar required");
    int cap = v.infinite ? (a > 0 ? q.r_plus : q.r_minus) : q.n;
    RationalOmegaReport rep;
    rep.blocked_place = v;
    for (int k = 1;; ++k) {
        int w = local_witt_index(orthogonal_difference(q, gamma_rational_diag(a, k)), v);
        if (w < k) {
            rep.certificate = {{v, w}};
            break;
        }
        rep.d = k;
        // dim (resp. signature) bounds the local embedded dimension
        if (k > cap)
            throw math_error("embedding past the dimension bound; this signals a bug");
    }
    rep.omega = rep.d + 1;
    rep.blocked_dim = rep.d + 1;
    return rep;
}

int sos_fastpath(int n) {
    if (n < 1) throw math_error("positive dimension required");
    if (n % 2 == 0) return perfect_square(BigInt(n + 1)) ? n + 1 : n;
    if (perfect_square(BigInt(2 * (n + 1)))) return n + 1;
    // n represented by <1, 2(n-1)> over Q iff <1, 2(n-1), -n> is isotropic
    RationalForm t = make_rational_form({BigRat(1), BigRat(2 * (n - 1)), BigRat(-n)});
    return rationally_isotropic(t) ? n : n - 1;
}

}  // namespace qrg

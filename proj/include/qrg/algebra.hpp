#ifndef QRG_ALGEBRA_HPP
#define QRG_ALGEBRA_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qrg {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Mathematical precondition violated (degenerate form, non-unit scalar, ...).
struct math_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Malformed input spec (ring/form/scalar grammar, bad dimensions, ...).
struct parse_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Configured resource budget exceeded (vertex cap, search node budget, ...).
struct limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Deterministic Miller-Rabin, valid over the full uint64 range.
bool is_prime(std::uint64_t n);

// Element of a finite ring in canonical encoding.
//
// GF(p^k): residues modulo the canonical irreducible polynomial, encoded as
//   c0 + c1*p + ... + c(k-1)*p^(k-1) for the coefficient vector (c0..c(k-1)),
//   so 0..p-1 is the prime subfield.
// Z/p^k: the representative in 0..p^k-1.
//
// The canonical element order is encoding order 0, 1, ..., size-1.
using Fe = std::uint32_t;

enum class RingKind { finite_field, residue_ring };

// Computational handle for GF(p^k) or Z/p^k with exact element arithmetic.
// Handles are immutable values; equality is structural. Ring sizes are
// capped at 2^20 so encodings stay within Fe.
class Ring {
  public:
    // GF(p^k). The modulus is the lexicographically smallest monic
    // irreducible polynomial of degree k over GF(p), comparing coefficient
    // tuples (c_{k-1},...,c_0); irreducibility is certified by trial
    // division against every monic polynomial of degree <= k/2.
    static Ring finite_field(std::uint64_t p, unsigned k = 1);

    // Z/p^k with p an odd prime (k >= 1; k = 1 gives GF(p) semantics but
    // keeps residue_ring kind only when k >= 2).
    static Ring residue_ring(std::uint64_t p, unsigned k);

    RingKind kind() const { return kind_; }
    bool is_field() const { return kind_ == RingKind::finite_field; }
    std::uint32_t prime() const { return p_; }
    unsigned degree() const { return k_; }    // k in p^k
    std::uint64_t size() const { return size_; }
    // Characteristic of the residue field (p in both kinds).
    std::uint32_t residue_char() const { return p_; }
    bool char_two() const { return is_field() && p_ == 2; }
    // Modulus coefficients (c0..c(k-1)) of the monic degree-k polynomial;
    // empty for k = 1 (modulus x) and for residue rings.
    const std::vector<Fe>& modulus() const { return modulus_; }

    Fe zero() const { return 0; }
    Fe one() const { return size_ > 1 ? 1 : 0; }

    Fe add(Fe a, Fe b) const;
    Fe sub(Fe a, Fe b) const;
    Fe neg(Fe a) const;
    Fe mul(Fe a, Fe b) const;
    Fe inv(Fe a) const;        // throws math_error on non-units
    Fe div(Fe a, Fe b) const;  // a * inv(b)
    Fe pow(Fe a, std::uint64_t e) const;

    bool is_unit(Fe a) const;
    bool is_zero_divisor(Fe a) const;  // nonzero non-unit (0 excluded)

    // Map an integer into the ring. For GF(p)/Z/p^k this reduces modulo the
    // ring size. For GF(p^k) with k > 1, values in [0, p^k) are canonical
    // encodings and negative values are reduced into the prime subfield.
    Fe from_int(const BigInt& v) const;

    // The canonical ring homomorphism Z -> R: reduction mod p^k for residue
    // rings, mod p (into the prime subfield) for finite fields. Unlike
    // from_int this never reads an integer as an element encoding.
    Fe embed_int(const BigInt& v) const;

    // True iff a is a square in the ring (0 counts as a square).
    bool is_square(Fe a) const;
    // Smallest-encoding square root if one exists.
    std::optional<Fe> sqrt(Fe a) const;
    // Smallest non-square unit; fields of odd characteristic only.
    Fe smallest_nonsquare() const;

    // Residue-ring reduction Z/p^k -> GF(p).
    Fe residue(Fe a) const;
    Ring residue_field() const;

    // Absolute trace GF(2^k) -> GF(2); char-2 fields only.
    Fe trace(Fe a) const;

    std::uint64_t unit_count() const;

    std::string to_string() const;  // "gf:p", "gf:p^k", "zmod:p^k"

    bool operator==(const Ring& o) const {
        return kind_ == o.kind_ && p_ == o.p_ && k_ == o.k_;
    }
    bool operator!=(const Ring& o) const { return !(*this == o); }

  private:
    Ring() = default;
    std::vector<Fe> to_poly(Fe a) const;
    Fe from_poly(const std::vector<Fe>& c) const;

    RingKind kind_ = RingKind::finite_field;
    std::uint32_t p_ = 0;
    unsigned k_ = 1;
    std::uint64_t size_ = 0;
    std::vector<Fe> modulus_;  // fields with k > 1
};

// A place of Q: a finite prime or the archimedean place.
struct Place {
    bool infinite = false;
    BigInt prime = 0;

    static Place at_infinity() { return Place{true, 0}; }
    static Place at(BigInt p) { return Place{false, std::move(p)}; }
    bool operator==(const Place& o) const {
        return infinite == o.infinite && (infinite || prime == o.prime);
    }
    std::string to_string() const;  // "inf" or the prime
};

// Legendre symbol (u/p) in {-1, 0, +1}; p an odd prime.
int legendre_symbol(const BigInt& u, const BigInt& p);

// Squarefree part of a nonzero integer, sign preserved: the unique
// squarefree d with x = d * square. Factors by trial division (with a
// primality certificate for a large cofactor); throws limit_error when the
// remaining cofactor cannot be certified at desk scale.
BigInt squarefree_part(BigInt x);

// Distinct prime factors of |x|, ascending; same factoring limits.
std::vector<BigInt> prime_factors(BigInt x);

// Hilbert symbol (a, b)_v in {-1, +1} for nonzero rationals; closed
// formulas at p = 2, odd p, and the real place.
int hilbert_symbol(const BigRat& a, const BigRat& b, const Place& v);

// p-adic valuation of a nonzero rational.
long padic_valuation(const BigRat& x, const BigInt& p);

}  // namespace qrg

#endif

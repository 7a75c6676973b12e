#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace pgl {

/// Element of F_{p^e}, encoded as an integer in [0, p^e).  The base-p digits
/// of the encoding are the coefficients of the representative polynomial,
/// constant term first.  For prime fields (e = 1) this is just the residue.
using FqElem = std::uint32_t;

class FqField;
using FieldPtr = std::shared_ptr<const FqField>;

/// A finite field F_{p^e}, p^e <= 2^16.  The modulus is the lexicographically
/// first monic irreducible polynomial of degree e over F_p (ordered by the
/// integer encoding of its coefficient vector), so construction is
/// deterministic.  Immutable after construction.
class FqField {
public:
    /// Builds F_{p^e}.  Throws std::invalid_argument on composite p, e < 1 or
    /// p^e > 2^16.  The multiplicative group order is verified by exhibiting
    /// a generator of order p^e - 1.
    static FieldPtr make(std::uint32_t p, std::uint32_t e);

    std::uint32_t p() const { return p_; }
    std::uint32_t e() const { return e_; }
    std::uint32_t q() const { return q_; }

    /// Monic modulus, length e+1, constant term first.  Unused when e = 1.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    FqElem zero() const { return 0; }
    FqElem one() const { return 1; }

    FqElem add(FqElem a, FqElem b) const;
    FqElem neg(FqElem a) const;
    FqElem sub(FqElem a, FqElem b) const { return add(a, neg(b)); }
    FqElem mul(FqElem a, FqElem b) const;
    FqElem inv(FqElem a) const;
    FqElem div(FqElem a, FqElem b) const { return mul(a, inv(b)); }
    FqElem pow(FqElem a, std::uint64_t n) const;

    /// x -> x^{p^d}, the d-th power of the Frobenius automorphism.
    FqElem frobenius(FqElem x, std::uint32_t d = 1) const;

    /// A fixed generator of the multiplicative group (the least one in the
    /// element encoding order).
    FqElem generator() const { return gen_; }

    /// Multiplicative order of a nonzero element.
    std::uint32_t element_order(FqElem a) const;

    /// The prime-subfield element with residue c (0 <= c < p).
    FqElem from_prime(std::uint32_t c) const { return c % p_; }

    /// Coefficients of the representative polynomial, length e.
    std::vector<std::uint32_t> digits(FqElem a) const;
    FqElem from_digits(const std::vector<std::uint32_t>& d) const;

    /// Matrix of multiplication by a on the F_p-basis {1, x, ..., x^{e-1}},
    /// returned column-major as columns a*x^j; entries are prime residues.
    /// Used for restriction of scalars.
    std::vector<std::uint32_t> mult_matrix(FqElem a) const;

    bool same(const FqField& o) const { return p_ == o.p_ && e_ == o.e_; }

    std::string to_string(FqElem a) const;
    std::string name() const;

private:
    FqField() = default;

    std::uint32_t p_ = 0, e_ = 0, q_ = 0;
    std::vector<std::uint32_t> modulus_;
    FqElem gen_ = 0;

    // log/antilog tables, built for q <= 4096; empty above that.
    std::vector<std::uint32_t> log_;
    std::vector<FqElem> alog_;

    FqElem mul_poly(FqElem a, FqElem b) const;
};

}  // namespace pgl

#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "pgl/matrix.hpp"

namespace pgl {

/// |GL_n(F_q)| = q^{n^2} prod_{i=1..n} (1 - q^{-i}), exactly.
mpz_class gl_order(int n, const mpz_class& q);

/// Order of the block-upper-triangular subgroup with diagonal blocks of
/// sizes n1, n2: gl_order(n1) * gl_order(n2) * q^{n1 n2}.
mpz_class parabolic_order(int n1, int n2, const mpz_class& q);

/// One simultaneous-conjugation orbit of irreducible d-tuples in GL_n(F_p).
struct TupleClass {
    std::vector<Matrix> rep;  // lexicographically least tuple in the orbit
    long long orbit_size = 0;
    int endo_degree = 1;  // centralizer = F_{p^e}^*, order p^e - 1
};

/// Census of d-tuples of invertible matrices: the tuple count, the
/// irreducible locus, and its orbit partition under simultaneous conjugation.
/// iso_classes is the finite-scale count of irreducible dim-n representations
/// of the rank-d free group over F_p.
struct TupleCensus {
    int d = 1, n = 1;
    std::uint32_t p = 2;
    mpz_class total;                  // |GL_n(F_p)|^d
    long long irreducible_tuples = 0;
    long long iso_classes = 0;
    std::vector<TupleClass> classes;
    bool orbit_accounting = false;  // sum of orbit sizes == irreducible_tuples
                                    // and each orbit = |GL| / (p^e - 1)
    bool burnside_ok = false;       // class count re-derived from centralizer
                                    // orders via Burnside's lemma
};

/// Requires |GL_n(F_p)|^d <= 10^8.  Deterministic: row-major lexicographic
/// enumeration, canonical representatives are lex-least.
TupleCensus tuple_census(int d, int n, std::uint32_t p);

/// Both free-group lower bounds on iso_classes, in exact arithmetic:
/// c_p^d p^{n^2 (d-1)} with c_p = 1 - 1/p - 1/p^2, and
/// |GL|^{d-1} - sum_k |P(k, n-k)|^{d-1}.
struct FreeBoundCheck {
    long long iso_classes = 0;
    mpq_class cp_bound;
    mpz_class eq2_bound;
    bool ok = false;
};
FreeBoundCheck free_bound_check(const TupleCensus& census);

/// Exact p-part of |GL_n(F_q)| and the bound p^n q^{p n}, for p coprime
/// to q.  Throws when p divides q.
struct SylowBoundCheck {
    mpz_class p_part;
    mpz_class bound;
    bool ok = false;
};
SylowBoundCheck sylow_bound_check(int n, const mpz_class& q, std::uint32_t p);

}  // namespace pgl

#include "pgl/freegrowth.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "pgl/fq.hpp"

namespace pgl {

mpz_class gl_order(int n, const mpz_class& q) {
    // q^{n^2} prod (1 - q^{-i}) = prod_{i=1..n} (q^n - q^{n-i})
    mpz_class qn;
    mpz_pow_ui(qn.get_mpz_t(), q.get_mpz_t(), n);
    mpz_class out = 1;
    std::vector<mpz_class> powers(n + 1);
    powers[0] = 1;
    for (int i = 1; i <= n; ++i) powers[i] = powers[i - 1] * q;
    for (int i = 1; i <= n; ++i) out *= qn - powers[n - i];
    return out;
}

mpz_class parabolic_order(int n1, int n2, const mpz_class& q) {
    if (n1 < 1 || n2 < 1)
        throw std::invalid_argument("parabolic_order: block sizes must be >= 1");
    mpz_class qblock;
    mpz_pow_ui(qblock.get_mpz_t(), q.get_mpz_t(),
               static_cast<unsigned long>(n1) * n2);
    return gl_order(n1, q) * gl_order(n2, q) * qblock;
}

namespace {

// All invertible n x n matrices over F_p in row-major lexicographic order.
std::vector<Matrix> enumerate_gl(const FieldPtr& F, int n) {
    std::vector<Matrix> out;
    int q = static_cast<int>(F->q());
    Matrix m(F, n, n);
    auto& a = m.data();
    while (true) {
        if (inverse(m)) out.push_back(m);
        int i = static_cast<int>(a.size()) - 1;
        for (; i >= 0; --i) {
            a[i] = static_cast<FqElem>((a[i] + 1) % q);
            if (a[i] != 0) break;
        }
        if (i < 0) break;
    }
    return out;
}

// Does the tuple act irreducibly?  A reducible tuple has a minimal common
// invariant subspace, which contains a line, so it suffices to spin lines.
bool tuple_irreducible(const std::vector<Matrix>& t, int n, const FieldPtr& F) {
    int q = static_cast<int>(F->q());
    std::vector<FqElem> v(n, 0);
    // one representative per line: first nonzero coordinate = 1
    while (true) {
        int lead = -1;
        for (int j = 0; j < n; ++j)
            if (v[j] != 0) { lead = j; break; }
        if (lead >= 0 && v[lead] == 1) {
            EchelonBasis basis(F, n);
            std::vector<std::vector<FqElem>> work{v};
            basis.add(v);
            while (!work.empty() && basis.rank() < n) {
                auto w = std::move(work.back());
                work.pop_back();
                for (const auto& m : t) {
                    auto img = m.apply(w);
                    if (basis.add(img)) work.push_back(std::move(img));
                }
            }
            if (basis.rank() < n) return false;
        }
        int j = 0;
        for (; j < n; ++j) {
            v[j] = static_cast<FqElem>((v[j] + 1) % q);
            if (v[j] != 0) break;
        }
        if (j == n) break;
    }
    return true;
}

}  // namespace

TupleCensus tuple_census(int d, int n, std::uint32_t p) {
    auto F = FqField::make(p, 1);
    mpz_class glo = gl_order(n, p);
    mpz_class budget;
    mpz_pow_ui(budget.get_mpz_t(), glo.get_mpz_t(), d);
    if (budget > 100000000)
        throw std::invalid_argument("tuple_census: enumeration budget exceeded");

    auto gl = enumerate_gl(F, n);
    long long glsize = static_cast<long long>(gl.size());
    std::map<std::vector<FqElem>, int> index_of;
    for (int i = 0; i < glsize; ++i) index_of[gl[i].data()] = i;
    std::vector<Matrix> gl_inv(glsize, Matrix());
    for (int i = 0; i < glsize; ++i) gl_inv[i] = *inverse(gl[i]);

    TupleCensus out;
    out.d = d;
    out.n = n;
    out.p = p;
    out.total = budget;

    long long ntuples = 1;
    for (int i = 0; i < d; ++i) ntuples *= glsize;
    auto tuple_id = [&](const std::vector<int>& idx) {
        long long id = 0;
        for (int i = 0; i < d; ++i) id = id * glsize + idx[i];
        return id;
    };

    std::vector<char> visited(ntuples, 0);
    std::vector<int> idx(d, 0);
    mpz_class orbit_sum = 0;
    mpz_class fix_sum = 0;  // sum of |Stab(t)| over irreducible tuples
    bool accounting = true;
    for (long long id = 0; id < ntuples; ++id) {
        // decode in lexicographic order
        {
            long long rem = id;
            for (int i = d - 1; i >= 0; --i) {
                idx[i] = static_cast<int>(rem % glsize);
                rem /= glsize;
            }
        }
        if (visited[id]) continue;
        std::vector<Matrix> t;
        for (int i = 0; i < d; ++i) t.push_back(gl[idx[i]]);
        if (!tuple_irreducible(t, n, F)) continue;

        // orbit under simultaneous conjugation; id is lex-least by iteration
        TupleClass cls;
        cls.rep = t;
        long long centralizer = 0;
        for (long long u = 0; u < glsize; ++u) {
            std::vector<int> conj_idx(d);
            bool fixes = true;
            for (int i = 0; i < d; ++i) {
                Matrix c = gl[u] * t[i] * gl_inv[u];
                conj_idx[i] = index_of.at(c.data());
                if (conj_idx[i] != idx[i]) fixes = false;
            }
            if (fixes) ++centralizer;
            long long cid = tuple_id(conj_idx);
            if (!visited[cid]) {
                visited[cid] = 1;
                ++cls.orbit_size;
            }
        }
        out.irreducible_tuples += cls.orbit_size;
        ++out.iso_classes;

        // centralizer of an irreducible tuple is F_{p^e}^* for some e
        long long pe = centralizer + 1, e = 0;
        while (pe > 1 && pe % p == 0) {
            pe /= p;
            ++e;
        }
        if (pe != 1 || e < 1) accounting = false;
        cls.endo_degree = static_cast<int>(e);
        if (glo != mpz_class(static_cast<long>(cls.orbit_size)) * static_cast<long>(centralizer))
            accounting = false;
        orbit_sum += static_cast<long>(cls.orbit_size);
        fix_sum += mpz_class(static_cast<long>(cls.orbit_size)) * static_cast<long>(centralizer);
        out.classes.push_back(std::move(cls));
    }
    out.orbit_accounting = accounting && orbit_sum == static_cast<long>(out.irreducible_tuples);

    // Burnside over the irreducible locus: sum over u in GL of the number of
    // fixed irreducible tuples equals sum over tuples of |Stab|, and dividing
    // by |GL| must reproduce the partition's class count.
    out.burnside_ok = fix_sum % glo == 0 && fix_sum / glo == static_cast<long>(out.iso_classes);
    return out;
}

FreeBoundCheck free_bound_check(const TupleCensus& census) {
    int d = census.d, n = census.n;
    mpz_class p = census.p;

    FreeBoundCheck out;
    out.iso_classes = census.iso_classes;

    // c_p^d p^{n^2 (d-1)} with c_p = 1 - 1/p - 1/p^2 = (p^2 - p - 1)/p^2
    mpq_class cp(p * p - p - 1, p * p);
    cp.canonicalize();
    mpq_class cpd = 1;
    for (int i = 0; i < d; ++i) cpd *= cp;
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(),
               static_cast<unsigned long>(n) * n * (d - 1));
    out.cp_bound = cpd * mpq_class(pw);

    // |GL|^{d-1} - sum_{k=1}^{n-1} |P(k, n-k)|^{d-1}
    mpz_class glo = gl_order(n, p);
    mpz_class glpow;
    mpz_pow_ui(glpow.get_mpz_t(), glo.get_mpz_t(), d - 1);
    out.eq2_bound = glpow;
    for (int k = 1; k < n; ++k) {
        mpz_class po = parabolic_order(k, n - k, p);
        mpz_class ppow;
        mpz_pow_ui(ppow.get_mpz_t(), po.get_mpz_t(), d - 1);
        out.eq2_bound -= ppow;
    }

    out.ok = mpq_class(static_cast<long>(out.iso_classes)) >= out.cp_bound &&
             mpz_class(static_cast<long>(out.iso_classes)) >= out.eq2_bound;
    return out;
}

SylowBoundCheck sylow_bound_check(int n, const mpz_class& q, std::uint32_t p) {
    if (q % p == 0)
        throw std::invalid_argument("sylow_bound_check: p divides q");
    SylowBoundCheck out;
    mpz_class glo = gl_order(n, q);
    out.p_part = 1;
    while (glo % p == 0) {
        glo /= p;
        out.p_part *= p;
    }
    mpz_class pn, qpn;
    mpz_pow_ui(pn.get_mpz_t(), mpz_class(p).get_mpz_t(), n);
    mpz_pow_ui(qpn.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(p) * n);
    out.bound = pn * qpn;
    out.ok = out.p_part <= out.bound;
    return out;
}

}  // namespace pgl

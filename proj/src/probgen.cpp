#include "pgl/probgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

namespace pgl {

namespace {

bool subgroup_includes(const Subgroup& big, const Subgroup& small) {
    return std::includes(big.elems.begin(), big.elems.end(),
                         small.elems.begin(), small.elems.end());
}

std::vector<int> sorted_intersection(const std::vector<int>& a,
                                     const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(out));
    return out;
}

}  // namespace

StableLattice stable_lattice(const GroupHom& f) {
    if (!f.is_surjective())
        throw std::invalid_argument("stable_lattice: f is not surjective");
    StableLattice l;
    l.f = f;
    l.kernel = f.kernel();
    if (l.kernel.order() > 200)
        throw std::invalid_argument("stable_lattice: kernel bound exceeded");

    const auto& h = f.dom;
    auto rg = subgroup_as_group(l.kernel);
    for (const auto& s : all_subgroups(rg.group)) {
        std::vector<int> elems;
        for (int x : s.elems) elems.push_back(rg.to_parent[x]);
        std::sort(elems.begin(), elems.end());
        Subgroup cand{h, std::move(elems)};
        bool normal_in_h = true;
        for (int g = 0; g < h->order() && normal_in_h; ++g)
            for (int x : cand.elems)
                if (!cand.contains(h->conj(g, x))) {
                    normal_in_h = false;
                    break;
                }
        if (normal_in_h) l.nodes.push_back(std::move(cand));
    }
    std::sort(l.nodes.begin(), l.nodes.end());

    // Mobius values toward R, processing intervals top-down by order
    int nn = static_cast<int>(l.nodes.size());
    std::vector<int> by_size(nn);
    for (int i = 0; i < nn; ++i) by_size[i] = i;
    std::sort(by_size.begin(), by_size.end(), [&](int a, int b) {
        return l.nodes[a].order() > l.nodes[b].order();
    });
    l.mobius.assign(nn, 0);
    for (int i = 0; i < nn; ++i)
        if (l.nodes[i].order() == l.kernel.order()) l.root = i;
    l.mobius[l.root] = 1;
    for (int idx : by_size) {
        if (idx == l.root) continue;
        mpz_class acc = 0;
        for (int j = 0; j < nn; ++j)
            if (j != idx && l.nodes[j].order() > l.nodes[idx].order() &&
                subgroup_includes(l.nodes[j], l.nodes[idx]))
                acc += l.mobius[j];
        l.mobius[idx] = -acc;
    }

    // Mobius sanity: the interval sum vanishes below the top
    for (int i = 0; i < nn; ++i) {
        mpz_class s = l.mobius[i];
        for (int j = 0; j < nn; ++j)
            if (j != i && subgroup_includes(l.nodes[j], l.nodes[i]))
                s += l.mobius[j];
        if (s != (i == l.root ? 1 : 0))
            throw std::logic_error("stable_lattice: Mobius inversion failed");
    }

    for (int i = 0; i < nn; ++i) {
        if (i == l.root) continue;
        bool is_max = true;
        for (int j = 0; j < nn && is_max; ++j)
            if (j != i && j != l.root && subgroup_includes(l.nodes[j], l.nodes[i]))
                is_max = false;
        if (is_max) l.maximal.push_back(i);
    }
    return l;
}

std::map<int, long long> m_counts(const StableLattice& l) {
    std::map<int, long long> out;
    for (int i : l.maximal)
        ++out[l.kernel.order() / l.nodes[i].order()];
    return out;
}

mpq_class exact_gen_probability(const StableLattice& l, int k) {
    mpq_class p = 0;
    for (std::size_t i = 0; i < l.nodes.size(); ++i) {
        long idx = l.kernel.order() / l.nodes[i].order();
        mpz_class den = 1;
        for (int j = 0; j < k; ++j) den *= idx;
        p += mpq_class(l.mobius[i]) / mpq_class(den);
    }
    p.canonicalize();
    return p;
}

MonteCarloResult monte_carlo_gen_probability(const GroupHom& f, int k,
                                             long long trials, std::uint64_t seed) {
    if (trials < 1)
        throw std::invalid_argument("monte_carlo_gen_probability: trials < 1");
    auto r = f.kernel();
    const auto& h = f.dom;
    std::mt19937_64 rng(seed);
    std::uint64_t n = static_cast<std::uint64_t>(r.order());
    auto draw = [&]() {
        // rejection sampling for platform-independent uniformity
        std::uint64_t lim = std::numeric_limits<std::uint64_t>::max() -
                            std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t x;
        do {
            x = rng();
        } while (x >= lim);
        return r.elems[static_cast<std::size_t>(x % n)];
    };
    long long hits = 0;
    std::vector<int> sample(k);
    for (long long t = 0; t < trials; ++t) {
        for (int i = 0; i < k; ++i) sample[i] = draw();
        if (normal_closure(h, sample).order() == r.order()) ++hits;
    }
    MonteCarloResult out;
    out.trials = trials;
    out.seed = seed;
    out.estimate = static_cast<double>(hits) / static_cast<double>(trials);
    out.stderr_est =
        std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(trials));
    return out;
}

bool pfr_sum_bound_check(const StableLattice& l, int k) {
    mpq_class lhs = 1 - exact_gen_probability(l, k);
    mpq_class rhs = 0;
    for (int i : l.maximal) {
        long idx = l.kernel.order() / l.nodes[i].order();
        mpz_class den = 1;
        for (int j = 0; j < k; ++j) den *= idx;
        rhs += mpq_class(1) / mpq_class(den);
    }
    return lhs <= rhs;
}

bool independence_check(const StableLattice& l) {
    for (std::size_t a = 0; a < l.maximal.size(); ++a)
        for (std::size_t b = a + 1; b < l.maximal.size(); ++b) {
            const auto& ma = l.nodes[l.maximal[a]];
            const auto& mb = l.nodes[l.maximal[b]];
            long inter = static_cast<long>(sorted_intersection(ma.elems, mb.elems).size());
            long r = l.kernel.order();
            if (r / inter != (r / ma.order()) * static_cast<long>(r / mb.order()))
                return false;
        }
    return true;
}

StableExtensionMap stable_to_extension_map(const StableLattice& l) {
    const auto& h = l.f.dom;
    const auto& g = l.f.cod;
    int d = min_generators(*h);

    StableExtensionMap out;
    for (int mi : l.maximal) {
        const auto& m = l.nodes[mi];
        auto q = quotient(h, m);

        ExtensionRecord rec;
        rec.base = g;
        rec.total = q.group;
        std::vector<int> img(q.group->order(), -1);
        for (int x = 0; x < h->order(); ++x) img[q.proj(x)] = l.f(x);
        rec.proj = GroupHom{q.group, g, std::move(img)};

        std::set<int> kelems;
        for (int x : l.kernel.elems) kelems.insert(q.proj(x));
        rec.kernel = Subgroup{q.group, std::vector<int>(kelems.begin(), kelems.end())};
        rec.degree = rec.kernel.order();
        rec.abelian = true;
        for (int a : rec.kernel.elems)
            for (int b : rec.kernel.elems)
                if (q.group->commutator(a, b) != 0) rec.abelian = false;

        // maximality of M in the stable lattice makes R/M minimal normal
        rec.minimal = true;
        for (int x : rec.kernel.elems)
            if (x != 0 &&
                normal_closure(q.group, {x}).order() != rec.kernel.order())
                rec.minimal = false;

        rec.split = false;
        for (const auto& c : all_subgroups(q.group))
            if (c.order() == g->order() &&
                sorted_intersection(c.elems, rec.kernel.elems).size() == 1) {
                rec.split = true;
                break;
            }
        out.records.push_back(std::move(rec));
    }

    // iso buckets; degree is constant inside a bucket
    out.bucket.assign(out.records.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < out.records.size(); ++i) {
        if (out.bucket[i] >= 0) continue;
        out.bucket[i] = next;
        for (std::size_t j = i + 1; j < out.records.size(); ++j) {
            if (out.bucket[j] >= 0) continue;
            if (extensions_isomorphic(out.records[i], out.records[j]) == ExtIso::yes)
                out.bucket[j] = next;
        }
        ++next;
    }
    out.bucket_bound_ok = true;
    for (int b = 0; b < next; ++b) {
        long long size = 0;
        long long degree = 1;
        for (std::size_t i = 0; i < out.records.size(); ++i)
            if (out.bucket[i] == b) {
                ++size;
                degree = out.records[i].degree;
            }
        long long bound = 1;
        for (int j = 0; j < d; ++j) bound *= degree;
        if (size > bound) out.bucket_bound_ok = false;
    }
    return out;
}

IdealCensus ideal_census(const GroupPtr& g, std::uint32_t p, int n_max) {
    if (g->order() > 100)
        throw std::invalid_argument("ideal_census: group bound exceeded");
    auto F = FqField::make(p, 1);
    int ng = g->order();

    IdealCensus out;
    out.g = g;
    out.p = p;
    out.n_max = n_max;
    out.m.assign(n_max, 0);
    out.r.assign(n_max, 0);

    // distinct annihilator row spaces per quotient dimension
    std::vector<std::set<std::vector<FqElem>>> seen(n_max + 1);
    for (const auto& rec : simple_modules(g, F)) {
        int n = rec.module.dim;
        if (n > n_max) continue;
        ++out.r[n - 1];
        auto acts = all_element_actions(rec.module);
        long long nv = 1;
        for (int t = 0; t < n; ++t) nv *= p;
        for (long long code = 1; code < nv; ++code) {
            std::vector<FqElem> v(n);
            long long rem = code;
            for (int t = 0; t < n; ++t) {
                v[t] = static_cast<FqElem>(rem % p);
                rem /= p;
            }
            // x -> x.v as a matrix F_p^{|G|} -> V; the annihilator is its kernel
            Matrix a(F, n, ng);
            for (int e = 0; e < ng; ++e) {
                auto col = acts[e].apply(v);
                for (int t = 0; t < n; ++t) a.at(t, e) = col[t];
            }
            seen[n].insert(rref(kernel_basis(a)).r.data());
        }
    }
    out.sandwich_ok = true;
    for (int n = 1; n <= n_max; ++n) {
        out.m[n - 1] = static_cast<long long>(seen[n].size());
        mpz_class pn = 1;
        for (int j = 0; j < n; ++j) pn *= p;
        if (!(mpz_class(static_cast<long>(out.r[n - 1])) <=
                  static_cast<long>(out.m[n - 1]) &&
              mpz_class(static_cast<long>(out.m[n - 1])) <=
                  pn * static_cast<long>(out.r[n - 1])))
            out.sandwich_ok = false;
    }
    return out;
}

namespace {

// All submodules of m, as canonical rref data; built by joining spins.
std::vector<Matrix> all_submodules(const GModule& m) {
    if (m.dim > 12)
        throw std::invalid_argument("module_gen_probability: dim bound exceeded");
    const auto& F = m.field;
    std::set<std::vector<FqElem>> seen;
    std::vector<Matrix> subs;
    auto push = [&](const Matrix& basis) {
        auto key = basis.data();
        key.push_back(static_cast<FqElem>(basis.rows()));
        if (seen.insert(key).second) {
            subs.push_back(basis);
            return true;
        }
        return false;
    };
    push(Matrix(F, 0, m.dim));  // zero submodule

    long long nv = 1;
    for (int t = 0; t < m.dim; ++t) nv *= F->q();
    if (nv > 1000000)
        throw std::invalid_argument("module_gen_probability: module too large");
    for (long long code = 1; code < nv; ++code) {
        std::vector<FqElem> v(m.dim);
        long long rem = code;
        for (int t = 0; t < m.dim; ++t) {
            v[t] = static_cast<FqElem>(rem % F->q());
            rem /= F->q();
        }
        push(spin(m, v));
    }
    // close under joins
    bool grew = true;
    while (grew) {
        grew = false;
        std::size_t cur = subs.size();
        if (cur > 10000)
            throw std::invalid_argument("module_gen_probability: lattice too large");
        for (std::size_t i = 0; i < cur; ++i)
            for (std::size_t j = i + 1; j < cur; ++j) {
                std::vector<std::vector<FqElem>> rows;
                for (int r = 0; r < subs[i].rows(); ++r) {
                    std::vector<FqElem> row(m.dim);
                    for (int c = 0; c < m.dim; ++c) row[c] = subs[i].at(r, c);
                    rows.push_back(std::move(row));
                }
                for (int r = 0; r < subs[j].rows(); ++r) {
                    std::vector<FqElem> row(m.dim);
                    for (int c = 0; c < m.dim; ++c) row[c] = subs[j].at(r, c);
                    rows.push_back(std::move(row));
                }
                if (push(row_space(F, rows, m.dim))) grew = true;
            }
    }
    return subs;
}

bool row_space_includes(const Matrix& big, const Matrix& small) {
    EchelonBasis span(big.field(), big.cols());
    for (int r = 0; r < big.rows(); ++r) {
        std::vector<FqElem> row(big.cols());
        for (int c = 0; c < big.cols(); ++c) row[c] = big.at(r, c);
        span.add(std::move(row));
    }
    for (int r = 0; r < small.rows(); ++r) {
        std::vector<FqElem> row(small.cols());
        for (int c = 0; c < small.cols(); ++c) row[c] = small.at(r, c);
        if (!span.contains(row)) return false;
    }
    return true;
}

}  // namespace

mpq_class module_gen_probability(const GModule& m, int k) {
    auto subs = all_submodules(m);
    int nn = static_cast<int>(subs.size());
    int root = -1;
    for (int i = 0; i < nn; ++i)
        if (subs[i].rows() == m.dim) root = i;

    std::vector<mpz_class> mob(nn, 0);
    std::vector<int> by_dim(nn);
    for (int i = 0; i < nn; ++i) by_dim[i] = i;
    std::sort(by_dim.begin(), by_dim.end(),
              [&](int a, int b) { return subs[a].rows() > subs[b].rows(); });
    mob[root] = 1;
    for (int idx : by_dim) {
        if (idx == root) continue;
        mpz_class acc = 0;
        for (int j = 0; j < nn; ++j)
            if (j != idx && subs[j].rows() > subs[idx].rows() &&
                row_space_includes(subs[j], subs[idx]))
                acc += mob[j];
        mob[idx] = -acc;
    }

    mpq_class p = 0;
    for (int i = 0; i < nn; ++i) {
        mpz_class den = 1;
        mpz_class qcodim = 1;
        for (int j = 0; j < m.dim - subs[i].rows(); ++j)
            qcodim *= static_cast<long>(m.field->q());
        for (int j = 0; j < k; ++j) den *= qcodim;
        p += mpq_class(mob[i]) / mpq_class(den);
    }
    p.canonicalize();
    return p;
}

bool ideal_sum_bound_check(const GroupPtr& g, std::uint32_t p, int k) {
    auto F = FqField::make(p, 1);
    auto reg = regular_module(g, F);
    mpq_class prob = module_gen_probability(reg, k);

    int n_max = g->order();
    auto census = ideal_census(g, p, n_max);
    mpq_class rhs = 1;
    for (int n = 1; n <= n_max; ++n) {
        if (census.m[n - 1] == 0) continue;
        mpz_class pn = 1;
        for (int j = 0; j < n; ++j) pn *= p;
        mpz_class den = 1;
        for (int j = 0; j < k; ++j) den *= pn;
        rhs -= mpq_class(static_cast<long>(census.m[n - 1])) / mpq_class(den);
    }
    return prob >= rhs;
}

}  // namespace pgl

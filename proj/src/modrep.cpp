#include "pgl/modrep.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <random>
#include <stdexcept>

namespace pgl {

namespace {

Matrix spin_with(const FieldPtr& F, int n, const std::vector<Matrix>& acts,
                 const std::vector<FqElem>& v) {
    EchelonBasis basis(F, n);
    std::deque<std::vector<FqElem>> todo;
    if (basis.add(v)) todo.push_back(basis.rows().back());
    while (!todo.empty() && basis.rank() < n) {
        auto w = std::move(todo.front());
        todo.pop_front();
        for (const auto& a : acts) {
            auto img = a.apply(w);
            if (basis.add(std::move(img))) todo.push_back(basis.rows().back());
        }
    }
    return basis.to_matrix();
}

std::vector<FqElem> matrix_row(const Matrix& m, int i) {
    std::vector<FqElem> r(m.cols());
    for (int j = 0; j < m.cols(); ++j) r[j] = m.at(i, j);
    return r;
}

// --- univariate polynomials over F_q (coefficients ascending) ---------------

using Poly = std::vector<FqElem>;

void ptrim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int pdeg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly pmonic(const FieldPtr& F, Poly f) {
    ptrim(f);
    if (f.empty()) return f;
    FqElem inv = F->inv(f.back());
    for (auto& c : f) c = F->mul(c, inv);
    return f;
}

Poly pmul(const FieldPtr& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = F->add(out[i + j], F->mul(a[i], b[j]));
    return out;
}

// remainder (and optionally quotient) of a by monic-normalizable b
Poly pdivmod(const FieldPtr& F, Poly a, const Poly& b, Poly* quot = nullptr) {
    ptrim(a);
    Poly q;
    if (quot) quot->assign(a.size(), 0);
    FqElem lead_inv = F->inv(b.back());
    while (pdeg(a) >= pdeg(b)) {
        int shift = pdeg(a) - pdeg(b);
        FqElem c = F->mul(a.back(), lead_inv);
        if (quot) (*quot)[shift] = F->add((*quot)[shift], c);
        for (std::size_t i = 0; i < b.size(); ++i) {
            std::size_t k = shift + i;
            a[k] = F->sub(a[k], F->mul(c, b[i]));
        }
        ptrim(a);
    }
    if (quot) ptrim(*quot);
    return a;
}

Poly pgcd(const FieldPtr& F, Poly a, Poly b) {
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        Poly r = pdivmod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return pmonic(F, a);
}

Poly pmulmod(const FieldPtr& F, const Poly& a, const Poly& b, const Poly& mod) {
    return pdivmod(F, pmul(F, a, b), mod);
}

Poly ppowmod(const FieldPtr& F, Poly base, std::uint64_t e, const Poly& mod) {
    Poly out{1};
    base = pdivmod(F, std::move(base), mod);
    while (e > 0) {
        if (e & 1) out = pmulmod(F, out, base, mod);
        base = pmulmod(F, base, base, mod);
        e >>= 1;
    }
    return out;
}

Poly psub(const FieldPtr& F, Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = F->sub(a[i], b[i]);
    ptrim(a);
    return a;
}

// One irreducible factor of degree d of g (g = product of degree-d
// irreducibles), by Cantor-Zassenhaus equal-degree splitting.
Poly equal_degree_factor(const FieldPtr& F, Poly g, int d, std::mt19937_64& rng) {
    g = pmonic(F, g);
    if (pdeg(g) == d) return g;
    std::uint32_t q = F->q();
    for (int tries = 0; tries < 200; ++tries) {
        Poly h(pdeg(g), 0);
        for (auto& c : h) c = static_cast<FqElem>(rng() % q);
        ptrim(h);
        if (h.empty()) continue;
        Poly t;
        if (q % 2 == 1) {
            // t = h^{(q^d-1)/2} - 1 via the norm chain h^{(q^d-1)/(q-1)}
            Poly norm = pdivmod(F, h, g), frob = norm;
            for (int i = 1; i < d; ++i) {
                frob = ppowmod(F, frob, q, g);
                norm = pmulmod(F, norm, frob, g);
            }
            t = psub(F, ppowmod(F, norm, (q - 1) / 2, g), Poly{1});
        } else {
            // characteristic 2: additive trace to F_2
            int k = static_cast<int>(F->e()) * d;
            Poly term = pdivmod(F, h, g);
            t = term;
            for (int i = 1; i < k; ++i) {
                term = pmulmod(F, term, term, g);
                t = psub(F, t, term);  // char 2: add == sub
            }
        }
        Poly c = pgcd(F, g, t);
        if (pdeg(c) <= 0 || pdeg(c) >= pdeg(g)) continue;
        if (pdeg(c) % d != 0) continue;  // defensive
        Poly other;
        pdivmod(F, g, c, &other);
        Poly smaller = pdeg(c) <= pdeg(other) ? c : other;
        return equal_degree_factor(F, std::move(smaller), d, rng);
    }
    throw std::runtime_error("equal_degree_factor: splitting budget exhausted");
}

// Smallest-degree irreducible factor of f, by distinct-degree search.
Poly smallest_irreducible_factor(const FieldPtr& F, Poly f, std::mt19937_64& rng) {
    f = pmonic(F, f);
    Poly x{0, 1};
    for (int d = 1; d <= pdeg(f); ++d) {
        if (2 * d > pdeg(f)) return f;  // f itself is irreducible
        // x^{q^d} mod f by d Frobenius steps
        Poly r = pdivmod(F, x, f);
        for (int i = 0; i < d; ++i) r = ppowmod(F, r, F->q(), f);
        Poly g = pgcd(F, f, psub(F, r, x));
        if (pdeg(g) > 0) return equal_degree_factor(F, std::move(g), d, rng);
    }
    return f;
}

// Minimal polynomial of a square matrix, via the linear span of its powers.
Poly matrix_min_poly(const FieldPtr& F, const Matrix& theta) {
    int n = theta.rows();
    int nn = n * n;
    EchelonBasis basis(F, nn);
    std::vector<std::vector<FqElem>> powers;
    Matrix pw = Matrix::identity(F, n);
    while (basis.add(pw.data())) {
        powers.push_back(pw.data());
        pw = pw * theta;
    }
    int k = static_cast<int>(powers.size());
    Matrix a(F, nn, k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < nn; ++i) a.at(i, j) = powers[j][i];
    auto sol = solve_linear(a, pw.data());
    if (!sol.consistent) throw std::logic_error("matrix_min_poly: inconsistent");
    Poly f(k + 1, 0);
    for (int j = 0; j < k; ++j) f[j] = F->neg(sol.particular[j]);
    f[k] = 1;
    return f;
}

Matrix eval_poly(const FieldPtr& F, const Poly& f, const Matrix& theta) {
    int n = theta.rows();
    Matrix out(F, n, n);
    for (int i = pdeg(f); i >= 0; --i) {
        out = out * theta;
        for (int j = 0; j < n; ++j) out.at(j, j) = F->add(out.at(j, j), f[i]);
    }
    return out;
}

}  // namespace

GModule trivial_module(const GroupPtr& g, const FieldPtr& f) {
    GModule m{g, f, 1, {}};
    m.gen_action.assign(g->gens().size(), Matrix::identity(f, 1));
    return m;
}

GModule regular_module(const GroupPtr& g, const FieldPtr& f) {
    int n = g->order();
    GModule m{g, f, n, {}};
    for (int gi : g->gens()) {
        Matrix a(f, n, n);
        for (int h = 0; h < n; ++h) a.at(g->mul(gi, h), h) = 1;
        m.gen_action.push_back(std::move(a));
    }
    return m;
}

Matrix element_action(const GModule& m, int g) {
    std::vector<int> word;
    for (int x = g; x != 0; x = m.group->word_parent()[x])
        word.push_back(m.group->word_gen()[x]);
    Matrix a = Matrix::identity(m.field, m.dim);
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        a = a * m.gen_action[*it];
    return a;
}

std::vector<Matrix> all_element_actions(const GModule& m) {
    int n = m.group->order();
    std::vector<Matrix> acts(n);
    acts[0] = Matrix::identity(m.field, m.dim);
    // BFS order guarantees the parent's action is already filled.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::vector<char> done(n, 0);
    done[0] = 1;
    std::deque<int> todo;
    for (int x = 1; x < n; ++x) todo.push_back(x);
    while (!todo.empty()) {
        int x = todo.front();
        todo.pop_front();
        int par = m.group->word_parent()[x];
        if (!done[par]) { todo.push_back(x); continue; }
        acts[x] = acts[par] * m.gen_action[m.group->word_gen()[x]];
        done[x] = 1;
    }
    return acts;
}

bool verify_module(const GModule& m) {
    if (!m.group || !m.field || m.dim < 0) return false;
    if (m.gen_action.size() != m.group->gens().size()) return false;
    for (const auto& a : m.gen_action) {
        if (a.rows() != m.dim || a.cols() != m.dim) return false;
        if (rank(a) != m.dim) return false;
    }
    auto acts = all_element_actions(m);
    int n = m.group->order();
    for (int x = 0; x < n; ++x)
        for (std::size_t i = 0; i < m.gen_action.size(); ++i) {
            int y = m.group->mul(x, m.group->gens()[i]);
            if (!(acts[y] == acts[x] * m.gen_action[i])) return false;
        }
    return true;
}

Matrix spin(const GModule& m, const std::vector<FqElem>& v) {
    return spin_with(m.field, m.dim, m.gen_action, v);
}

GModule submodule(const GModule& m, const Matrix& basis) {
    int k = basis.rows();
    Matrix bt = basis.transpose();
    GModule s{m.group, m.field, k, {}};
    for (const auto& a : m.gen_action) {
        Matrix sa(m.field, k, k);
        for (int i = 0; i < k; ++i) {
            auto img = a.apply(matrix_row(basis, i));
            auto sol = solve_linear(bt, img);
            if (!sol.consistent)
                throw std::invalid_argument("submodule: basis is not invariant");
            for (int r = 0; r < k; ++r) sa.at(r, i) = sol.particular[r];
        }
        s.gen_action.push_back(std::move(sa));
    }
    return s;
}

GModule quotient_module(const GModule& m, const Matrix& basis) {
    int n = m.dim, k = basis.rows();
    auto rr = rref(basis);
    if (rr.rank != k) throw std::invalid_argument("quotient_module: basis not independent");
    std::vector<char> is_pivot(n, 0);
    for (int p : rr.pivots) is_pivot[p] = 1;
    // Change of basis: first k columns span the submodule, the rest are the
    // standard vectors at non-pivot coordinates.
    Matrix q(m.field, n, n);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < n; ++j) q.at(j, i) = basis.at(i, j);
    int col = k;
    for (int j = 0; j < n; ++j)
        if (!is_pivot[j]) q.at(j, col++) = 1;
    auto qinv = inverse(q);
    if (!qinv) throw std::invalid_argument("quotient_module: degenerate basis");
    GModule out{m.group, m.field, n - k, {}};
    for (const auto& a : m.gen_action) {
        Matrix c = *qinv * a * q;
        for (int i = k; i < n; ++i)
            for (int j = 0; j < k; ++j)
                if (c.at(i, j) != 0)
                    throw std::invalid_argument("quotient_module: basis is not invariant");
        Matrix blk(m.field, n - k, n - k);
        for (int i = k; i < n; ++i)
            for (int j = k; j < n; ++j) blk.at(i - k, j - k) = c.at(i, j);
        out.gen_action.push_back(std::move(blk));
    }
    return out;
}

namespace {

// Nonzero vectors in the row space of k, one per 1-dim subspace (first
// nonzero coordinate normalized to 1).
std::vector<std::vector<FqElem>> projective_combinations(const Matrix& k) {
    const auto& F = k.field();
    int rows = k.rows(), n = k.cols();
    std::vector<std::vector<FqElem>> out;
    std::vector<FqElem> coef(rows, 0);
    // coefficient vectors with leading coordinate 1
    for (int lead = 0; lead < rows; ++lead) {
        std::vector<FqElem> tail(rows - lead - 1, 0);
        bool more = true;
        while (more) {
            std::vector<FqElem> v(n, 0);
            auto addrow = [&](int r, FqElem c) {
                if (c == 0) return;
                for (int j = 0; j < n; ++j)
                    v[j] = F->add(v[j], F->mul(c, k.at(r, j)));
            };
            addrow(lead, 1);
            for (std::size_t t = 0; t < tail.size(); ++t)
                addrow(lead + 1 + static_cast<int>(t), tail[t]);
            out.push_back(std::move(v));
            more = false;
            for (std::size_t t = 0; t < tail.size(); ++t) {
                tail[t] = (tail[t] + 1) % F->q();
                if (tail[t] != 0) { more = true; break; }
            }
        }
    }
    return out;
}

}  // namespace

std::optional<Matrix> invariant_subspace(const GModule& m) {
    const auto& F = m.field;
    int n = m.dim;
    if (n <= 1) return std::nullopt;
    if (m.gen_action.empty()) {
        // no constraints: any line is invariant
        std::vector<FqElem> e0(n, 0);
        e0[0] = 1;
        return row_space(F, {e0}, n);
    }

    auto proper = [&](const Matrix& s) { return s.rows() > 0 && s.rows() < n; };

    // cheap pre-spins
    {
        std::vector<FqElem> ones(n, 1), e0(n, 0);
        e0[0] = 1;
        for (const auto& v : {ones, e0}) {
            auto s = spin(m, v);
            if (proper(s)) return s;
        }
    }

    // deterministic words in the generator actions, length <= 6
    std::vector<Matrix> words = m.gen_action;
    {
        std::size_t lo = 0;
        for (int len = 2; len <= 6 && words.size() < 120; ++len) {
            std::size_t hi = words.size();
            for (std::size_t i = lo; i < hi && words.size() < 120; ++i)
                for (const auto& g : m.gen_action) {
                    words.push_back(words[i] * g);
                    if (words.size() >= 120) break;
                }
            lo = hi;
        }
    }
    std::vector<Matrix> candidates = words;
    for (std::size_t i = 0; i < words.size() && candidates.size() < 260; ++i)
        for (std::size_t j = i + 1; j < words.size() && candidates.size() < 260; ++j)
            candidates.push_back(words[i] + words[j]);

    std::mt19937_64 rng(0xA1B2C3D4ull);
    auto random_candidate = [&]() {
        Matrix c(F, n, n);
        int terms = 2 + static_cast<int>(rng() % 3);
        for (int t = 0; t < terms; ++t) {
            FqElem coef = 1 + static_cast<FqElem>(rng() % (F->q() - 1));
            c = c + words[rng() % words.size()].scaled(coef);
        }
        return c;
    };

    const Matrix id = Matrix::identity(F, n);
    for (int tries = 0; tries < 500; ++tries) {
        Matrix theta = tries < static_cast<int>(candidates.size())
                           ? candidates[tries]
                           : random_candidate();
        // pick the eigenvalue with the smallest positive nullity
        int best_nl = n + 1;
        FqElem best_lambda = 0;
        for (FqElem lam = 0; lam < F->q(); ++lam) {
            int nl = n - rank(theta - id.scaled(lam));
            if (nl > 0 && nl < best_nl) {
                best_nl = nl;
                best_lambda = lam;
            }
        }
        if (best_nl > n) {
            // No eigenvalue over F_q: use the kernel of an irreducible factor
            // of the minimal polynomial instead (Holt-Rees generalization).
            Poly mp = matrix_min_poly(F, theta);
            if (pdeg(mp) < 1) continue;
            Poly f1 = smallest_irreducible_factor(F, mp, rng);
            if (pdeg(f1) < 1) continue;
            Matrix d = eval_poly(F, f1, theta);
            Matrix ker = kernel_basis(d);
            for (int i = 0; i < ker.rows(); ++i) {
                auto s = spin(m, matrix_row(ker, i));
                if (proper(s)) return s;
            }
            // Norton: when the nullity equals deg f, a single spun kernel
            // vector (done above, all full) plus one dual spin decides.
            if (ker.rows() != pdeg(f1)) continue;
            std::vector<Matrix> tacts;
            for (const auto& a : m.gen_action) tacts.push_back(a.transpose());
            Matrix cok = kernel_basis(d.transpose());
            auto w = matrix_row(cok, 0);
            Matrix dual = spin_with(F, n, tacts, w);
            if (dual.rows() == n) return std::nullopt;  // certified irreducible
            Matrix perp = kernel_basis(dual);
            auto r = rref(perp);
            Matrix res(F, r.rank, n);
            for (int i = 0; i < r.rank; ++i)
                for (int j = 0; j < n; ++j) res.at(i, j) = r.r.at(i, j);
            return res;
        }
        Matrix d = theta - id.scaled(best_lambda);
        Matrix ker = kernel_basis(d);
        // full line enumeration (needed for the certificate) only when cheap
        double lines = 0, pw = 1;
        for (int t = 0; t < best_nl; ++t) {
            lines += pw;
            pw *= F->q();
        }
        if (lines > 4096) {
            // no certificate possible; basis rows still find submodules of
            // homogeneous modules
            for (int i = 0; i < ker.rows(); ++i) {
                auto s = spin(m, matrix_row(ker, i));
                if (proper(s)) return s;
            }
            continue;
        }
        bool all_full = true;
        for (const auto& v : projective_combinations(ker)) {
            auto s = spin(m, v);
            if (proper(s)) return s;
            if (s.rows() < n) all_full = false;  // unreachable, defensive
        }
        if (!all_full) continue;
        // Norton: all kernel vectors generate everything; one co-kernel
        // vector decides.  Spin it under the transposed actions.
        std::vector<Matrix> tacts;
        for (const auto& a : m.gen_action) tacts.push_back(a.transpose());
        Matrix cok = kernel_basis(d.transpose());
        auto w = matrix_row(cok, 0);
        Matrix dual = spin_with(F, n, tacts, w);
        if (dual.rows() == n) return std::nullopt;  // certified irreducible
        // the annihilator of a transposed-invariant space is invariant
        Matrix perp = kernel_basis(dual);
        auto r = rref(perp);
        Matrix res(F, r.rank, n);
        for (int i = 0; i < r.rank; ++i)
            for (int j = 0; j < n; ++j) res.at(i, j) = r.r.at(i, j);
        return res;
    }
    throw std::runtime_error("invariant_subspace: candidate budget exhausted");
}

bool is_irreducible(const GModule& m) {
    if (m.dim < 1) throw std::invalid_argument("is_irreducible: empty module");
    return !invariant_subspace(m).has_value();
}

SimpleRecord make_simple_record(GModule m) {
    SimpleRecord r;
    auto endo = intertwiner_space(m.gen_action, m.gen_action);
    r.endo_degree = static_cast<int>(endo.size());
    r.abs_irred = r.endo_degree == 1;
    auto acts = all_element_actions(m);
    r.trace_fingerprint.reserve(acts.size());
    for (const auto& a : acts) r.trace_fingerprint.push_back(a.trace());
    r.module = std::move(m);
    return r;
}

bool modules_isomorphic(const GModule& a, const GModule& b) {
    if (!a.field->same(*b.field)) return false;
    if (a.group->order() != b.group->order()) return false;
    if (a.dim != b.dim) return false;
    if (a.gen_action.size() != b.gen_action.size()) return false;
    auto aa = all_element_actions(a), ba = all_element_actions(b);
    for (std::size_t i = 0; i < aa.size(); ++i)
        if (aa[i].trace() != ba[i].trace()) return false;
    auto tw = intertwiner_space(a.gen_action, b.gen_action);
    if (tw.empty()) return false;
    // between simples a nonzero intertwiner is invertible
    return inverse(tw[0]).has_value();
}

std::vector<std::pair<SimpleRecord, int>> chop(const GModule& m) {
    if (m.dim > 500) throw std::invalid_argument("chop: dimension exceeds 500");
    std::vector<std::pair<SimpleRecord, int>> out;
    std::vector<GModule> stack;
    if (m.dim > 0) stack.push_back(m);
    while (!stack.empty()) {
        GModule t = std::move(stack.back());
        stack.pop_back();
        auto sub = invariant_subspace(t);
        if (sub) {
            stack.push_back(submodule(t, *sub));
            stack.push_back(quotient_module(t, *sub));
            continue;
        }
        auto rec = make_simple_record(std::move(t));
        bool merged = false;
        for (auto& [r, mult] : out) {
            if (r.module.dim != rec.module.dim) continue;
            if (r.trace_fingerprint != rec.trace_fingerprint) continue;
            if (!modules_isomorphic(r.module, rec.module)) continue;
            ++mult;
            merged = true;
            break;
        }
        if (!merged) out.emplace_back(std::move(rec), 1);
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.first.module.dim != y.first.module.dim)
            return x.first.module.dim < y.first.module.dim;
        return x.first.trace_fingerprint < y.first.trace_fingerprint;
    });
    return out;
}

std::vector<SimpleRecord> simple_modules(const GroupPtr& g, const FieldPtr& f) {
    if (g->order() > 300)
        throw std::invalid_argument("simple_modules: |G| exceeds 300");
    std::vector<SimpleRecord> out;
    for (auto& [rec, mult] : chop(regular_module(g, f))) {
        (void)mult;
        out.push_back(std::move(rec));
    }
    return out;
}

long long GrowthTable::r(int n) const {
    for (const auto& row : rows)
        if (row.n == n) return row.r;
    return 0;
}

long long GrowthTable::r_star(int n) const {
    for (const auto& row : rows)
        if (row.n == n) return row.r_star;
    return 0;
}

long long GrowthTable::cumulative(int n) const {
    long long s = 0;
    for (const auto& row : rows)
        if (row.n <= n) s += row.r;
    return s;
}

GrowthTable r_counts(const GroupPtr& g, const FieldPtr& f, int n_max) {
    GrowthTable t;
    t.group_label = g->label();
    t.p = f->p();
    t.e = f->e();
    t.rows.resize(n_max);
    for (int n = 1; n <= n_max; ++n) t.rows[n - 1].n = n;
    for (const auto& rec : simple_modules(g, f)) {
        int d = rec.module.dim;
        if (d >= 1 && d <= n_max) {
            ++t.rows[d - 1].r;
            if (rec.abs_irred) ++t.rows[d - 1].r_star;
        }
    }
    return t;
}

GModule frobenius_twist(const GModule& m, std::uint32_t t) {
    GModule out{m.group, m.field, m.dim, {}};
    for (const auto& a : m.gen_action) {
        Matrix b = a;
        for (auto& x : b.data()) x = m.field->frobenius(x, t);
        out.gen_action.push_back(std::move(b));
    }
    return out;
}

GModule base_change(const GModule& m, const FieldPtr& bigger) {
    if (m.field->e() != 1 || m.field->p() != bigger->p())
        throw std::invalid_argument("base_change: expects a prime-field module");
    GModule out{m.group, bigger, m.dim, {}};
    for (const auto& a : m.gen_action) {
        Matrix b(bigger, m.dim, m.dim);
        // prime-subfield elements have identical integer codes
        b.data() = a.data();
        out.gen_action.push_back(std::move(b));
    }
    return out;
}

GModule restrict_scalars(const GModule& m) {
    std::uint32_t d = m.field->e();
    auto fp = FqField::make(m.field->p(), 1);
    if (d == 1) {
        GModule out = m;
        out.field = fp;
        return out;
    }
    int dd = static_cast<int>(d);
    GModule out{m.group, fp, m.dim * dd, {}};
    for (const auto& a : m.gen_action) {
        Matrix b(fp, out.dim, out.dim);
        for (int i = 0; i < m.dim; ++i)
            for (int j = 0; j < m.dim; ++j) {
                auto mm = m.field->mult_matrix(a.at(i, j));
                for (int s = 0; s < dd; ++s)
                    for (int t = 0; t < dd; ++t)
                        b.at(i * dd + s, j * dd + t) = mm[t * d + s];
            }
        out.gen_action.push_back(std::move(b));
    }
    return out;
}

GModule restrict_to_subgroup(const GModule& m, const SubgroupAsGroup& h) {
    GModule out{h.group, m.field, m.dim, {}};
    for (int hg : h.group->gens())
        out.gen_action.push_back(element_action(m, h.to_parent[hg]));
    return out;
}

Subgroup module_kernel(const GModule& m) {
    auto acts = all_element_actions(m);
    Matrix id = Matrix::identity(m.field, m.dim);
    std::vector<int> elems;
    for (std::size_t x = 0; x < acts.size(); ++x)
        if (acts[x] == id) elems.push_back(static_cast<int>(x));
    return Subgroup{m.group, std::move(elems)};
}

namespace {

int orbit_size_under_twist(const GModule& m) {
    std::uint32_t d = m.field->e();
    for (std::uint32_t t = 1; t <= d; ++t)
        if (modules_isomorphic(frobenius_twist(m, t), m)) return static_cast<int>(t);
    throw std::logic_error("twist orbit did not close");
}

int find_isomorphic_index(const std::vector<SimpleRecord>& recs, const GModule& m) {
    for (std::size_t i = 0; i < recs.size(); ++i)
        if (modules_isomorphic(recs[i].module, m)) return static_cast<int>(i);
    return -1;
}

}  // namespace

std::vector<GaloisData> galois_orbits(const GroupPtr& g, std::uint32_t p,
                                      std::uint32_t d_max) {
    auto fp = FqField::make(p, 1);
    auto base_simples = simple_modules(g, fp);
    std::vector<GaloisData> out;
    for (std::uint32_t d = 1; d <= d_max; ++d) {
        GaloisData gd;
        gd.d = d;
        auto fd = FqField::make(p, d);
        auto recs = simple_modules(g, fd);
        std::vector<int> abs;
        for (std::size_t i = 0; i < recs.size(); ++i)
            if (recs[i].abs_irred) abs.push_back(static_cast<int>(i));
        std::vector<char> seen(recs.size(), 0);
        for (int i : abs) {
            if (seen[i]) continue;
            GaloisOrbit orb;
            int cur = i;
            do {
                seen[cur] = 1;
                orb.members.push_back(recs[cur].module);
                auto tw = frobenius_twist(recs[cur].module, 1);
                int next = -1;
                for (int j : abs)
                    if (!seen[j] || j == i)
                        if (modules_isomorphic(recs[j].module, tw)) { next = j; break; }
                if (next < 0 || next == i) break;
                cur = next;
            } while (true);
            orb.member_dim = orb.members[0].dim;
            int s = static_cast<int>(orb.members.size());
            // restriction of scalars of one member is a multiple of the
            // descended simple; extract the single factor type
            auto res = restrict_scalars(orb.members[0]);
            auto facs = chop(res);
            if (facs.size() != 1)
                throw std::logic_error("descent gave several factor types");
            orb.descended = facs[0].first.module;
            orb.descended_index = find_isomorphic_index(base_simples, orb.descended);
            orb.dimension_law = orb.descended.dim == s * orb.member_dim;
            // base change decomposes into the orbit members, each once
            auto bc = chop(base_change(orb.descended, fd));
            bool ok = bc.size() == orb.members.size();
            if (ok)
                for (const auto& [rec, mult] : bc) {
                    if (mult != 1) { ok = false; break; }
                    bool found = false;
                    for (const auto& mem : orb.members)
                        if (modules_isomorphic(rec.module, mem)) { found = true; break; }
                    if (!found) { ok = false; break; }
                }
            orb.decomposition_ok = ok;
            gd.orbits.push_back(std::move(orb));
        }
        // orbits should hit exactly the base simples whose endomorphism
        // degree divides d, once each
        std::vector<int> hit;
        for (const auto& o : gd.orbits) hit.push_back(o.descended_index);
        std::sort(hit.begin(), hit.end());
        std::vector<int> want;
        for (std::size_t i = 0; i < base_simples.size(); ++i)
            if (d % static_cast<std::uint32_t>(base_simples[i].endo_degree) == 0)
                want.push_back(static_cast<int>(i));
        gd.bijective = hit == want;
        out.push_back(std::move(gd));
    }
    return out;
}

DivisorSumCheck divisor_sum_check(const GroupPtr& g, std::uint32_t p, int n) {
    DivisorSumCheck c;
    auto fp = FqField::make(p, 1);
    for (const auto& rec : simple_modules(g, fp))
        if (rec.module.dim == n) ++c.direct;
    for (int d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        auto fd = FqField::make(p, static_cast<std::uint32_t>(d));
        long long members = 0;
        for (const auto& rec : simple_modules(g, fd)) {
            if (!rec.abs_irred || rec.module.dim != n / d) continue;
            ++c.upper_bound;
            if (orbit_size_under_twist(rec.module) == d) ++members;
        }
        // a size-d orbit contributes one count per member
        c.via_orbits += members / d;
    }
    c.equal = c.direct == c.via_orbits;
    c.bounded = c.direct <= c.upper_bound;
    return c;
}

ConvolutionCheck product_convolution_check(const GroupPtr& g1, const GroupPtr& g2,
                                           const FieldPtr& f, int n_max) {
    ConvolutionCheck c;
    auto prod = FiniteGroup::direct_product(g1, g2);
    auto tp = r_counts(prod, f, n_max);
    auto t1 = r_counts(g1, f, n_max);
    auto t2 = r_counts(g2, f, n_max);
    for (int n = 1; n <= n_max; ++n) {
        c.lhs.push_back(tp.r_star(n));
        long long rhs = 0;
        for (int n1 = 1; n1 <= n; ++n1)
            if (n % n1 == 0) rhs += t1.r_star(n1) * t2.r_star(n / n1);
        c.rhs.push_back(rhs);
    }
    c.ok = c.lhs == c.rhs;
    return c;
}

SimpleRecord faithful_irreducible_factor(const GroupPtr& l, const GModule& v,
                                         std::uint32_t p) {
    auto mins = minimal_normal_subgroups(l);
    if (mins.size() != 1)
        throw std::invalid_argument(
            "faithful_irreducible_factor: group does not have a unique minimal "
            "normal subgroup");
    bool p_group = true;
    int m = mins[0].order();
    while (m % static_cast<int>(p) == 0) m /= static_cast<int>(p);
    p_group = m == 1;
    if (p_group)
        throw std::invalid_argument(
            "faithful_irreducible_factor: the minimal normal subgroup is a p-group");
    if (module_kernel(v).order() != 1)
        throw std::invalid_argument("faithful_irreducible_factor: module is not faithful");
    for (auto& [rec, mult] : chop(v)) {
        (void)mult;
        if (module_kernel(rec.module).order() == 1) return std::move(rec);
    }
    throw std::logic_error("faithful_irreducible_factor: no faithful factor found");
}

bool restriction_rank_check(const GroupPtr& g, const Subgroup& h, std::uint32_t p) {
    auto fp = FqField::make(p, 1);
    auto hg = subgroup_as_group(h);
    int idx = g->order() / h.order();
    auto restricted = chop(restrict_to_subgroup(regular_module(g, fp), hg));
    auto reg_h = chop(regular_module(hg.group, fp));
    if (restricted.size() != reg_h.size()) return false;
    for (const auto& [rec, mult] : reg_h) {
        bool found = false;
        for (const auto& [rrec, rmult] : restricted)
            if (modules_isomorphic(rec.module, rrec.module)) {
                if (rmult != mult * idx) return false;
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

}  // namespace pgl

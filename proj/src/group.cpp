#include "pgl/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace pgl {

Perm perm_compose(const Perm& a, const Perm& b) {
    Perm c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
    return c;
}

Perm perm_inverse(const Perm& a) {
    Perm c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[a[i]] = static_cast<int>(i);
    return c;
}

Perm perm_identity(int m) {
    Perm p(m);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

// Shared construction core: takes a verified-shape table, runs the
// invariant checks, computes inverses and BFS word tables.
class GroupBuilder {
public:
    static GroupPtr build(int n, std::vector<std::uint16_t> tab, std::vector<int> gens,
                          std::string label);
};

namespace {

GroupPtr make_group(int n, std::vector<std::uint16_t> tab, std::vector<int> gens,
                    std::string label) {
    return GroupBuilder::build(n, std::move(tab), std::move(gens), std::move(label));
}

}  // namespace

GroupPtr GroupBuilder::build(int n, std::vector<std::uint16_t> tab, std::vector<int> gens,
                             std::string label) {
    if (n < 1 || n > FiniteGroup::kMaxOrder)
        throw std::invalid_argument("FiniteGroup: order out of range");
    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    FiniteGroup& G = *g;
    G.n_ = n;
    G.tab_ = std::move(tab);
    G.label_ = std::move(label);

    auto mul = [&](int a, int b) { return G.tab_[static_cast<std::size_t>(a) * n + b]; };

    for (std::size_t i = 0; i < G.tab_.size(); ++i)
        if (G.tab_[i] >= n) throw std::invalid_argument("FiniteGroup: table entry out of range");
    for (int a = 0; a < n; ++a)
        if (mul(0, a) != a || mul(a, 0) != a)
            throw std::invalid_argument("FiniteGroup: element 0 is not an identity");

    G.inv_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (mul(a, b) == 0) {
                if (mul(b, a) != 0)
                    throw std::invalid_argument("FiniteGroup: one-sided inverse");
                G.inv_[a] = b;
                break;
            }
        if (G.inv_[a] < 0) throw std::invalid_argument("FiniteGroup: missing inverse");
    }

    if (n <= 200) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        throw std::invalid_argument("FiniteGroup: not associative");
    } else {
        std::mt19937_64 rng(0x5eed);
        std::uniform_int_distribution<int> dist(0, n - 1);
        for (int t = 0; t < 100000; ++t) {
            int a = dist(rng), b = dist(rng), c = dist(rng);
            if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                throw std::invalid_argument("FiniteGroup: not associative (sampled)");
        }
    }

    if (gens.empty()) {
        // Greedy generating set, scanning in element order.
        std::vector<char> in(n, 0);
        in[0] = 1;
        int covered = 1;
        for (int x = 1; x < n && covered < n; ++x) {
            if (in[x]) continue;
            gens.push_back(x);
            // close the current set under multiplication
            std::vector<int> members;
            for (int y = 0; y < n; ++y)
                if (in[y]) members.push_back(y);
            members.push_back(x);
            in[x] = 1;
            ++covered;
            std::queue<int> cq;
            for (int y : members) cq.push(y);
            while (!cq.empty()) {
                int a = cq.front();
                cq.pop();
                for (std::size_t i = 0; i < members.size(); ++i) {
                    for (int z : {static_cast<int>(mul(a, members[i])),
                                  static_cast<int>(mul(members[i], a))}) {
                        if (!in[z]) {
                            in[z] = 1;
                            ++covered;
                            members.push_back(z);
                            cq.push(z);
                        }
                    }
                }
            }
        }
        if (n == 1) gens = {0};
    }
    G.gens_ = std::move(gens);

    // BFS word table; also verifies that gens generate.
    G.word_parent_.assign(n, -2);
    G.word_gen_.assign(n, -1);
    G.word_parent_[0] = -1;
    std::queue<int> q;
    q.push(0);
    int seen = 1;
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (std::size_t i = 0; i < G.gens_.size(); ++i) {
            int y = mul(x, G.gens_[i]);
            if (G.word_parent_[y] == -2) {
                G.word_parent_[y] = x;
                G.word_gen_[y] = static_cast<int>(i);
                ++seen;
                q.push(y);
            }
        }
    }
    if (seen != n) throw std::invalid_argument("FiniteGroup: generators do not generate");
    return g;
}

GroupPtr FiniteGroup::from_table(std::vector<int> table, std::vector<int> gens,
                                 std::string label) {
    int n = 0;
    while (static_cast<std::size_t>(n) * n < table.size()) ++n;
    if (static_cast<std::size_t>(n) * n != table.size())
        throw std::invalid_argument("FiniteGroup: table is not square");
    std::vector<std::uint16_t> t(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i] < 0 || table[i] >= n)
            throw std::invalid_argument("FiniteGroup: table entry out of range");
        t[i] = static_cast<std::uint16_t>(table[i]);
    }
    return make_group(n, std::move(t), std::move(gens), std::move(label));
}

GroupPtr FiniteGroup::from_permutations(const std::vector<Perm>& gens, std::string label) {
    if (gens.empty()) throw std::invalid_argument("from_permutations: no generators");
    int m = static_cast<int>(gens[0].size());
    for (const auto& p : gens)
        if (static_cast<int>(p.size()) != m)
            throw std::invalid_argument("from_permutations: degree mismatch");

    std::map<Perm, int> index;
    std::vector<Perm> elems;
    elems.push_back(perm_identity(m));
    index[elems[0]] = 0;
    std::queue<int> q;
    q.push(0);
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (const auto& g : gens) {
            Perm y = perm_compose(elems[x], g);
            if (!index.count(y)) {
                int idx = static_cast<int>(elems.size());
                if (idx >= kMaxOrder)
                    throw std::invalid_argument("from_permutations: order cap exceeded");
                index[y] = idx;
                elems.push_back(std::move(y));
                q.push(idx);
            }
        }
    }
    int n = static_cast<int>(elems.size());
    std::vector<std::uint16_t> tab(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            tab[static_cast<std::size_t>(a) * n + b] =
                static_cast<std::uint16_t>(index.at(perm_compose(elems[a], elems[b])));
    std::vector<int> gen_idx;
    for (const auto& g : gens) gen_idx.push_back(index.at(g));
    return make_group(n, std::move(tab), std::move(gen_idx), std::move(label));
}

GroupPtr FiniteGroup::trivial() {
    return from_table({0}, {0}, "1");
}

GroupPtr FiniteGroup::cyclic(int m) {
    if (m < 1) throw std::invalid_argument("cyclic: m >= 1 required");
    if (m == 1) return trivial();
    std::vector<int> tab(static_cast<std::size_t>(m) * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) tab[static_cast<std::size_t>(a) * m + b] = (a + b) % m;
    return from_table(std::move(tab), {1}, "C" + std::to_string(m));
}

GroupPtr FiniteGroup::dihedral(int m) {
    if (m < 1) throw std::invalid_argument("dihedral: m >= 1 required");
    std::string label = "D" + std::to_string(m);
    if (m == 1) {
        auto g = cyclic(2);
        return from_table({0, 1, 1, 0}, {1}, label);
    }
    if (m == 2) {
        // Klein four group.
        std::vector<int> tab = {0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0};
        return from_table(std::move(tab), {1, 2}, label);
    }
    Perm rot(m), refl(m);
    for (int i = 0; i < m; ++i) {
        rot[i] = (i + 1) % m;
        refl[i] = (m - i) % m;
    }
    return from_permutations({rot, refl}, label);
}

GroupPtr FiniteGroup::symmetric(int n) {
    if (n < 1 || n > 6) throw std::invalid_argument("symmetric: 1 <= n <= 6 required");
    if (n == 1) return trivial();
    Perm cycle(n), swap01 = perm_identity(n);
    for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
    std::swap(swap01[0], swap01[1]);
    return from_permutations({swap01, cycle}, "S" + std::to_string(n));
}

GroupPtr FiniteGroup::alternating(int n) {
    if (n < 1 || n > 6) throw std::invalid_argument("alternating: 1 <= n <= 6 required");
    if (n <= 2) return trivial();
    Perm c3 = perm_identity(n);
    c3[0] = 1; c3[1] = 2; c3[2] = 0;
    if (n == 3) return from_permutations({c3}, "A3");
    Perm big = perm_identity(n);
    if (n % 2 == 1) {
        for (int i = 0; i < n; ++i) big[i] = (i + 1) % n;
    } else {
        for (int i = 1; i < n; ++i) big[i] = i % (n - 1) + 1;
    }
    return from_permutations({c3, big}, "A" + std::to_string(n));
}

GroupPtr FiniteGroup::psl27() {
    // Action on the projective line over F_7, points {0..6, 7 = infinity}:
    // a: z -> z+1, b: z -> -1/z.
    Perm a = {1, 2, 3, 4, 5, 6, 0, 7};
    Perm b = {7, 6, 3, 2, 5, 4, 1, 0};
    auto g = from_permutations({a, b}, "PSL(2,7)");
    if (g->order() != 168) throw std::logic_error("psl27: wrong order");
    return g;
}

GroupPtr FiniteGroup::direct_product(const GroupPtr& g1, const GroupPtr& g2) {
    long long n = static_cast<long long>(g1->order()) * g2->order();
    if (n > kMaxOrder) throw std::invalid_argument("direct_product: order cap exceeded");
    int n1 = g1->order(), n2 = g2->order(), nn = static_cast<int>(n);
    std::vector<std::uint16_t> tab(static_cast<std::size_t>(nn) * nn);
    for (int a1 = 0; a1 < n1; ++a1)
        for (int a2 = 0; a2 < n2; ++a2)
            for (int b1 = 0; b1 < n1; ++b1)
                for (int b2 = 0; b2 < n2; ++b2) {
                    int a = a1 * n2 + a2, b = b1 * n2 + b2;
                    tab[static_cast<std::size_t>(a) * nn + b] =
                        static_cast<std::uint16_t>(g1->mul(a1, b1) * n2 + g2->mul(a2, b2));
                }
    std::vector<int> gens;
    for (int g : g1->gens()) gens.push_back(g * n2);
    for (int g : g2->gens()) gens.push_back(g);
    return make_group(nn, std::move(tab), std::move(gens),
                      g1->label() + "x" + g2->label());
}

GroupPtr FiniteGroup::semidirect(const GroupPtr& k, const GroupPtr& g,
                                 const std::vector<Perm>& action, std::string label) {
    int nk = k->order(), ng = g->order();
    if (static_cast<int>(action.size()) != ng)
        throw std::invalid_argument("semidirect: need one automorphism per element of G");
    long long n = static_cast<long long>(nk) * ng;
    if (n > kMaxOrder) throw std::invalid_argument("semidirect: order cap exceeded");

    // Each action[x] must be an automorphism of K and x -> action[x] a
    // homomorphism.  Automorphism check exhaustive for small K, sampled above.
    for (int x = 0; x < ng; ++x) {
        const Perm& a = action[x];
        if (static_cast<int>(a.size()) != nk || a[0] != 0)
            throw std::invalid_argument("semidirect: action is not identity-preserving");
        if (nk <= 1000) {
            for (int u = 0; u < nk; ++u)
                for (int v = 0; v < nk; ++v)
                    if (a[k->mul(u, v)] != k->mul(a[u], a[v]))
                        throw std::invalid_argument("semidirect: action[x] not an automorphism");
        } else {
            std::mt19937_64 rng(0xacc0 + x);
            std::uniform_int_distribution<int> dist(0, nk - 1);
            for (int t = 0; t < 200000; ++t) {
                int u = dist(rng), v = dist(rng);
                if (a[k->mul(u, v)] != k->mul(a[u], a[v]))
                    throw std::invalid_argument("semidirect: action[x] not an automorphism");
            }
        }
    }
    for (int x = 0; x < ng; ++x)
        for (int y = 0; y < ng; ++y)
            if (action[g->mul(x, y)] != perm_compose(action[x], action[y]))
                throw std::invalid_argument("semidirect: action is not a homomorphism");

    int nn = static_cast<int>(n);
    std::vector<std::uint16_t> tab(static_cast<std::size_t>(nn) * nn);
    for (int k1 = 0; k1 < nk; ++k1)
        for (int g1 = 0; g1 < ng; ++g1) {
            const Perm& a = action[g1];
            std::size_t row = static_cast<std::size_t>(k1 * ng + g1) * nn;
            for (int k2 = 0; k2 < nk; ++k2)
                for (int g2 = 0; g2 < ng; ++g2)
                    tab[row + k2 * ng + g2] =
                        static_cast<std::uint16_t>(k->mul(k1, a[k2]) * ng + g->mul(g1, g2));
        }
    std::vector<int> gens;
    for (int x : k->gens()) gens.push_back(x * ng);
    for (int x : g->gens()) gens.push_back(x);
    return make_group(nn, std::move(tab), std::move(gens), std::move(label));
}

int FiniteGroup::pow(int a, long long k) const {
    int r = id();
    int base = a;
    if (k < 0) {
        base = inv(a);
        k = -k;
    }
    while (k) {
        if (k & 1) r = mul(r, base);
        base = mul(base, base);
        k >>= 1;
    }
    return r;
}

int FiniteGroup::element_order(int a) const {
    int n = 1, x = a;
    while (x != id()) {
        x = mul(x, a);
        ++n;
    }
    return n;
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < n_; ++a)
        for (int b = a + 1; b < n_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

// --- subgroup machinery -----------------------------------------------------

bool Subgroup::contains(int x) const {
    return std::binary_search(elems.begin(), elems.end(), x);
}

bool Subgroup::operator<(const Subgroup& o) const {
    if (elems.size() != o.elems.size()) return elems.size() < o.elems.size();
    return elems < o.elems;
}

std::vector<int> closure(const FiniteGroup& g, std::vector<int> seed) {
    std::vector<char> in(g.order(), 0);
    std::vector<int> out;
    std::queue<int> q;
    auto push = [&](int x) {
        if (!in[x]) {
            in[x] = 1;
            out.push_back(x);
            q.push(x);
        }
    };
    push(g.id());
    for (int x : seed) push(x);
    // The set of seeds together with id; close under multiplication.
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (std::size_t i = 0; i < out.size(); ++i) {
            int y = out[i];
            push(g.mul(x, y));
            push(g.mul(y, x));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Subgroup subgroup_generated(const GroupPtr& g, const std::vector<int>& seed) {
    return Subgroup{g, closure(*g, seed)};
}

Subgroup normal_closure(const GroupPtr& g, const std::vector<int>& seed) {
    // Close under conjugation by generators and under multiplication.
    std::vector<char> in(g->order(), 0);
    std::vector<int> members;
    std::queue<int> q;
    auto push = [&](int x) {
        if (!in[x]) {
            in[x] = 1;
            members.push_back(x);
            q.push(x);
        }
    };
    push(g->id());
    for (int x : seed) push(x);
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (int ge : g->gens()) {
            push(g->conj(ge, x));
            push(g->conj(g->inv(ge), x));
        }
        for (std::size_t i = 0; i < members.size(); ++i) push(g->mul(x, members[i]));
    }
    std::sort(members.begin(), members.end());
    return Subgroup{g, std::move(members)};
}

bool is_normal(const Subgroup& s) {
    const auto& g = *s.parent;
    for (int ge : g.gens())
        for (int x : s.elems)
            if (!s.contains(g.conj(ge, x))) return false;
    return true;
}

Subgroup conjugate_subgroup(const Subgroup& s, int g) {
    std::vector<int> out;
    out.reserve(s.elems.size());
    for (int x : s.elems) out.push_back(s.parent->conj(g, x));
    std::sort(out.begin(), out.end());
    return Subgroup{s.parent, std::move(out)};
}

bool subgroups_conjugate(const Subgroup& a, const Subgroup& b) {
    if (a.elems.size() != b.elems.size()) return false;
    const auto& g = *a.parent;
    for (int x = 0; x < g.order(); ++x)
        if (conjugate_subgroup(a, x).elems == b.elems) return true;
    return false;
}

std::vector<Subgroup> all_subgroups(const GroupPtr& g) {
    if (g->order() > 2000)
        throw std::invalid_argument("all_subgroups: order bound 2000 exceeded");
    std::set<std::vector<int>> seen;
    std::vector<Subgroup> subs;
    auto add = [&](Subgroup s) {
        if (g->order() % s.order() != 0)
            throw std::logic_error("all_subgroups: Lagrange violation");
        if (seen.insert(s.elems).second) subs.push_back(std::move(s));
    };
    add(Subgroup{g, {g->id()}});
    for (int x = 1; x < g->order(); ++x) add(subgroup_generated(g, {x}));

    // Layered joins until closure.
    bool grew = true;
    while (grew) {
        grew = false;
        std::size_t count = subs.size();
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t j = i + 1; j < count; ++j) {
                if (std::includes(subs[i].elems.begin(), subs[i].elems.end(),
                                  subs[j].elems.begin(), subs[j].elems.end()) ||
                    std::includes(subs[j].elems.begin(), subs[j].elems.end(),
                                  subs[i].elems.begin(), subs[i].elems.end()))
                    continue;
                std::vector<int> seed = subs[i].elems;
                seed.insert(seed.end(), subs[j].elems.begin(), subs[j].elems.end());
                Subgroup join = subgroup_generated(g, seed);
                if (!seen.count(join.elems)) {
                    add(std::move(join));
                    grew = true;
                }
            }
    }
    std::sort(subs.begin(), subs.end());
    return subs;
}

IndexSubgroups subgroups_of_index(const GroupPtr& g, int k) {
    IndexSubgroups out;
    if (k <= 0) return out;
    if (g->order() % k != 0) return out;
    int target = g->order() / k;
    for (auto& s : all_subgroups(g))
        if (s.order() == target) out.subgroups.push_back(std::move(s));
    std::vector<char> used(out.subgroups.size(), 0);
    for (std::size_t i = 0; i < out.subgroups.size(); ++i) {
        if (used[i]) continue;
        out.class_reps.push_back(out.subgroups[i]);
        for (std::size_t j = i + 1; j < out.subgroups.size(); ++j)
            if (!used[j] && subgroups_conjugate(out.subgroups[i], out.subgroups[j]))
                used[j] = 1;
    }
    return out;
}

std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g) {
    std::vector<char> seen(g.order(), 0);
    std::vector<std::vector<int>> classes;
    for (int x = 0; x < g.order(); ++x) {
        if (seen[x]) continue;
        std::vector<int> cls;
        for (int t = 0; t < g.order(); ++t) {
            int y = g.conj(t, x);
            if (!seen[y]) {
                seen[y] = 1;
                cls.push_back(y);
            }
        }
        std::sort(cls.begin(), cls.end());
        classes.push_back(std::move(cls));
    }
    return classes;
}

int p_regular_class_count(const FiniteGroup& g, int p) {
    int count = 0;
    for (const auto& cls : conjugacy_classes(g))
        if (g.element_order(cls[0]) % p != 0) ++count;
    return count;
}

Subgroup center(const GroupPtr& g) {
    std::vector<int> z;
    for (int x = 0; x < g->order(); ++x) {
        bool central = true;
        for (int y : g->gens())
            if (g->mul(x, y) != g->mul(y, x)) { central = false; break; }
        if (central) z.push_back(x);
    }
    return Subgroup{g, std::move(z)};
}

namespace {

bool search_gen_tuple(const FiniteGroup& g, const std::vector<int>& class_reps,
                      int depth, std::vector<int>& tuple) {
    if (static_cast<int>(tuple.size()) == depth)
        return static_cast<int>(closure(g, tuple).size()) == g.order();
    bool first = tuple.empty();
    if (first) {
        for (int r : class_reps) {
            tuple.push_back(r);
            if (search_gen_tuple(g, class_reps, depth, tuple)) return true;
            tuple.pop_back();
        }
    } else {
        for (int x = 1; x < g.order(); ++x) {
            tuple.push_back(x);
            if (search_gen_tuple(g, class_reps, depth, tuple)) return true;
            tuple.pop_back();
        }
    }
    return false;
}

}  // namespace

std::vector<int> min_generating_tuple(const FiniteGroup& g) {
    if (g.order() == 1) return {};
    if (g.order() > 2000)
        throw std::invalid_argument("min_generators: order bound 2000 exceeded");
    std::vector<int> reps;
    for (const auto& cls : conjugacy_classes(g))
        if (cls[0] != g.id()) reps.push_back(cls[0]);
    for (int d = 1;; ++d) {
        std::vector<int> tuple;
        if (search_gen_tuple(g, reps, d, tuple)) return tuple;
    }
}

int min_generators(const FiniteGroup& g) {
    return static_cast<int>(min_generating_tuple(g).size());
}

std::vector<Subgroup> minimal_normal_subgroups(const GroupPtr& g) {
    if (g->order() > 20000)
        throw std::invalid_argument("minimal_normal_subgroups: order bound exceeded");
    // Every minimal normal subgroup is the normal closure of any of its
    // nontrivial elements, so the inclusion-minimal single-element closures
    // are exactly the minimal normal subgroups.
    std::set<std::vector<int>> closures;
    for (const auto& cls : conjugacy_classes(*g)) {
        if (cls[0] == g->id()) continue;
        closures.insert(normal_closure(g, {cls[0]}).elems);
    }
    std::vector<Subgroup> out;
    for (const auto& c : closures) {
        bool minimal = true;
        for (const auto& d : closures) {
            if (d.size() >= c.size() || d == c) continue;
            if (std::includes(c.begin(), c.end(), d.begin(), d.end())) {
                minimal = false;
                break;
            }
        }
        if (minimal) out.push_back(Subgroup{g, c});
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_simple(const FiniteGroup& g) {
    if (g.order() == 1) return false;
    // normal_closure takes a GroupPtr; wrap without ownership.
    auto dummy = std::shared_ptr<const FiniteGroup>(&g, [](const FiniteGroup*) {});
    for (const auto& cls : conjugacy_classes(g)) {
        if (cls[0] == g.id()) continue;
        if (normal_closure(dummy, {cls[0]}).order() != g.order()) return false;
    }
    return true;
}

// --- homs, quotients, isomorphisms ------------------------------------------

bool GroupHom::verify() const {
    for (int a = 0; a < dom->order(); ++a)
        for (int b = 0; b < dom->order(); ++b)
            if (img[dom->mul(a, b)] != cod->mul(img[a], img[b])) return false;
    return img[dom->id()] == cod->id();
}

bool GroupHom::is_surjective() const {
    std::vector<char> hit(cod->order(), 0);
    int count = 0;
    for (int x : img)
        if (!hit[x]) { hit[x] = 1; ++count; }
    return count == cod->order();
}

bool GroupHom::is_injective() const {
    std::vector<char> hit(cod->order(), 0);
    for (int x : img) {
        if (hit[x]) return false;
        hit[x] = 1;
    }
    return true;
}

Subgroup GroupHom::kernel() const {
    std::vector<int> k;
    for (int a = 0; a < dom->order(); ++a)
        if (img[a] == cod->id()) k.push_back(a);
    return Subgroup{dom, std::move(k)};
}

GroupHom hom_compose(const GroupHom& h, const GroupHom& g) {
    GroupHom out;
    out.dom = g.dom;
    out.cod = h.cod;
    out.img.resize(g.dom->order());
    for (int x = 0; x < g.dom->order(); ++x) out.img[x] = h.img[g.img[x]];
    return out;
}

Quotient quotient(const GroupPtr& g, const Subgroup& n) {
    if (!is_normal(n)) throw std::invalid_argument("quotient: subgroup not normal");
    int nn = g->order();
    std::vector<int> coset(nn, -1);
    std::vector<int> reps;
    // Deterministic coset labels: scan elements in index order.
    for (int x = 0; x < nn; ++x) {
        if (coset[x] >= 0) continue;
        int c = static_cast<int>(reps.size());
        reps.push_back(x);
        for (int h : n.elems) coset[g->mul(x, h)] = c;
    }
    // Relabel so the identity coset is 0.
    int idc = coset[g->id()];
    if (idc != 0) {
        for (auto& c : coset) {
            if (c == idc) c = 0;
            else if (c == 0) c = idc;
        }
        std::swap(reps[0], reps[idc]);
    }
    int m = static_cast<int>(reps.size());
    std::vector<int> tab(static_cast<std::size_t>(m) * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            tab[static_cast<std::size_t>(a) * m + b] = coset[g->mul(reps[a], reps[b])];
    std::vector<int> gens;
    for (int x : g->gens()) gens.push_back(coset[x]);
    Quotient out;
    out.group = FiniteGroup::from_table(std::move(tab), std::move(gens),
                                        g->label() + "/N" + std::to_string(n.order()));
    out.proj = GroupHom{g, out.group, std::move(coset)};
    return out;
}

SubgroupAsGroup subgroup_as_group(const Subgroup& s) {
    SubgroupAsGroup out;
    out.to_parent = s.elems;
    out.from_parent.assign(s.parent->order(), -1);
    for (std::size_t i = 0; i < s.elems.size(); ++i)
        out.from_parent[s.elems[i]] = static_cast<int>(i);
    int m = s.order();
    std::vector<int> tab(static_cast<std::size_t>(m) * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            int prod = s.parent->mul(s.elems[a], s.elems[b]);
            int idx = out.from_parent[prod];
            if (idx < 0) throw std::invalid_argument("subgroup_as_group: not closed");
            tab[static_cast<std::size_t>(a) * m + b] = idx;
        }
    // Greedy generating set, scanning in index order.
    std::vector<int> gens;
    {
        auto tmp = FiniteGroup::from_table(tab, {}, "tmp");
        std::vector<int> cl = {0};
        for (int x = 1; x < m; ++x) {
            if (std::binary_search(cl.begin(), cl.end(), x)) continue;
            gens.push_back(x);
            cl = closure(*tmp, gens);
            if (static_cast<int>(cl.size()) == m) break;
        }
        if (m == 1) gens = {0};
    }
    out.group = FiniteGroup::from_table(std::move(tab), std::move(gens),
                                        s.parent->label() + "_sub" + std::to_string(m));
    return out;
}

std::optional<GroupHom> hom_from_gen_images(const GroupPtr& dom, const GroupPtr& cod,
                                            const std::vector<int>& images) {
    if (images.size() != dom->gens().size())
        throw std::invalid_argument("hom_from_gen_images: image count mismatch");
    std::vector<int> img(dom->order(), -1);
    img[dom->id()] = cod->id();
    // Fill along BFS words; word tables guarantee parents precede children.
    const auto& wp = dom->word_parent();
    const auto& wg = dom->word_gen();
    std::vector<int> order_of_fill;
    {
        // BFS order reconstruction: repeatedly fill elements whose parent is set.
        std::queue<int> q;
        q.push(dom->id());
        std::vector<std::vector<int>> children(dom->order());
        for (int x = 0; x < dom->order(); ++x)
            if (wp[x] >= 0) children[wp[x]].push_back(x);
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int c : children[x]) {
                img[c] = cod->mul(img[x], images[wg[c]]);
                q.push(c);
            }
        }
    }
    for (std::size_t i = 0; i < dom->gens().size(); ++i) {
        for (int a = 0; a < dom->order(); ++a)
            if (img[dom->mul(a, dom->gens()[i])] != cod->mul(img[a], images[i]))
                return std::nullopt;
    }
    return GroupHom{dom, cod, std::move(img)};
}

namespace {

std::vector<int> iso_gen_tuple(const GroupPtr& g) {
    if (g->order() <= 300) {
        auto t = min_generating_tuple(*g);
        if (t.empty()) t = {g->id()};
        return t;
    }
    std::vector<int> gens;
    std::vector<int> cl = {g->id()};
    for (int x = 1; x < g->order(); ++x) {
        if (std::binary_search(cl.begin(), cl.end(), x)) continue;
        gens.push_back(x);
        cl = closure(*g, gens);
        if (static_cast<int>(cl.size()) == g->order()) break;
    }
    return gens;
}

bool search_iso(const GroupPtr& g, const GroupPtr& h, const std::vector<int>& tuple,
                const std::vector<std::vector<int>>& candidates, std::size_t pos,
                std::vector<int>& images, std::optional<GroupHom>& out) {
    if (pos == tuple.size()) {
        auto dom = g;
        // Build a temporary group view with tuple as generators: instead,
        // extend via a fresh BFS from the tuple.
        // Reuse hom_from_gen_images by requiring tuple == dom->gens(); handled
        // by caller.  Here dom->gens() is the tuple already.
        auto hom = hom_from_gen_images(dom, h, images);
        if (hom && hom->is_injective() && hom->is_surjective()) {
            out = hom;
            return true;
        }
        return false;
    }
    for (int c : candidates[pos]) {
        images.push_back(c);
        if (search_iso(g, h, tuple, candidates, pos + 1, images, out)) return true;
        images.pop_back();
    }
    return false;
}

// Rebuilds g with the given generator list (so word tables follow the tuple).
GroupPtr with_gens(const GroupPtr& g, const std::vector<int>& gens) {
    std::vector<int> tab(static_cast<std::size_t>(g->order()) * g->order());
    for (int a = 0; a < g->order(); ++a)
        for (int b = 0; b < g->order(); ++b)
            tab[static_cast<std::size_t>(a) * g->order() + b] = g->mul(a, b);
    return FiniteGroup::from_table(std::move(tab), gens, g->label());
}

std::multiset<int> order_profile(const FiniteGroup& g) {
    std::multiset<int> p;
    for (int x = 0; x < g.order(); ++x) p.insert(g.element_order(x));
    return p;
}

}  // namespace

std::optional<GroupHom> find_isomorphism(const GroupPtr& g, const GroupPtr& h) {
    if (g->order() != h->order()) return std::nullopt;
    if (g->order() == 1)
        return GroupHom{g, h, {0}};
    if (order_profile(*g) != order_profile(*h)) return std::nullopt;
    auto tuple = iso_gen_tuple(g);
    auto gv = with_gens(g, tuple);
    std::vector<std::vector<int>> candidates(tuple.size());
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        int o = g->element_order(tuple[i]);
        for (int y = 0; y < h->order(); ++y)
            if (h->element_order(y) == o) candidates[i].push_back(y);
    }
    std::vector<int> images;
    std::optional<GroupHom> out;
    search_iso(gv, h, tuple, candidates, 0, images, out);
    if (out) out->dom = g;  // same element indexing
    return out;
}

bool isomorphic(const GroupPtr& g, const GroupPtr& h) {
    return find_isomorphism(g, h).has_value();
}

std::vector<GroupHom> all_homs(const GroupPtr& dom, const GroupPtr& cod) {
    auto tuple = iso_gen_tuple(dom);
    if (tuple.empty() || dom->order() == 1) {
        return {GroupHom{dom, cod, std::vector<int>(dom->order(), cod->id())}};
    }
    auto gv = with_gens(dom, tuple);
    std::vector<std::vector<int>> candidates(tuple.size());
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        int o = dom->element_order(tuple[i]);
        for (int y = 0; y < cod->order(); ++y)
            if (o % cod->element_order(y) == 0) candidates[i].push_back(y);
    }
    std::vector<GroupHom> out;
    std::vector<std::size_t> idx(tuple.size(), 0);
    std::vector<int> images(tuple.size());
    // Odometer over candidate lists.
    while (true) {
        for (std::size_t i = 0; i < tuple.size(); ++i) images[i] = candidates[i][idx[i]];
        auto hom = hom_from_gen_images(gv, cod, images);
        if (hom) {
            hom->dom = dom;
            out.push_back(*hom);
        }
        std::size_t i = 0;
        for (; i < tuple.size(); ++i) {
            if (++idx[i] < candidates[i].size()) break;
            idx[i] = 0;
        }
        if (i == tuple.size()) break;
    }
    return out;
}

// --- automorphisms ----------------------------------------------------------

AutGroup automorphism_group(const GroupPtr& g) {
    if (g->order() > 400)
        throw std::invalid_argument("automorphism_group: order bound 400 exceeded");
    std::vector<Perm> perms;
    if (g->order() == 1) {
        perms.push_back({0});
    } else {
        auto tuple = min_generating_tuple(*g);
        auto gv = with_gens(g, tuple);
        std::vector<std::vector<int>> candidates(tuple.size());
        for (std::size_t i = 0; i < tuple.size(); ++i) {
            int o = g->element_order(tuple[i]);
            for (int y = 0; y < g->order(); ++y)
                if (g->element_order(y) == o) candidates[i].push_back(y);
        }
        std::vector<std::size_t> idx(tuple.size(), 0);
        std::vector<int> images(tuple.size());
        while (true) {
            for (std::size_t i = 0; i < tuple.size(); ++i)
                images[i] = candidates[i][idx[i]];
            auto hom = hom_from_gen_images(gv, g, images);
            if (hom && hom->is_injective()) perms.push_back(hom->img);
            std::size_t i = 0;
            for (; i < tuple.size(); ++i) {
                if (++idx[i] < candidates[i].size()) break;
                idx[i] = 0;
            }
            if (i == tuple.size()) break;
        }
    }
    std::sort(perms.begin(), perms.end());

    std::map<Perm, int> index;
    for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
    int m = static_cast<int>(perms.size());

    // Identity permutation must get index 0 for the Cayley convention.
    Perm ident = perm_identity(g->order());
    int id_idx = index.at(ident);
    if (id_idx != 0) {
        std::swap(perms[0], perms[id_idx]);
        index[perms[0]] = 0;
        index[perms[id_idx]] = id_idx;
    }
    std::vector<int> tab(static_cast<std::size_t>(m) * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            tab[static_cast<std::size_t>(a) * m + b] =
                index.at(perm_compose(perms[a], perms[b]));

    AutGroup out;
    out.group = FiniteGroup::from_table(std::move(tab), {}, "Aut(" + g->label() + ")");
    out.perms = perms;
    std::vector<int> inner;
    for (int x = 0; x < g->order(); ++x) {
        Perm c(g->order());
        for (int y = 0; y < g->order(); ++y) c[y] = g->conj(x, y);
        inner.push_back(index.at(c));
    }
    std::sort(inner.begin(), inner.end());
    inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
    out.inner = Subgroup{out.group, std::move(inner)};
    return out;
}

namespace {

int factorial(int k) {
    int f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

std::vector<Perm> all_perms(int k) {
    Perm p = perm_identity(k);
    std::vector<Perm> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

}  // namespace

AutPowerStructure aut_of_power_structure(const GroupPtr& s, int k) {
    if (s->is_abelian() || !is_simple(*s))
        throw std::invalid_argument("aut_of_power_structure: S must be nonabelian simple");
    if (k < 1) throw std::invalid_argument("aut_of_power_structure: k >= 1 required");
    AutPowerStructure out;
    AutGroup aut = automorphism_group(s);
    std::uint64_t ord = 1;
    for (int i = 0; i < k; ++i) ord *= aut.group->order();
    ord *= static_cast<std::uint64_t>(factorial(k));
    out.order = ord;

    std::uint64_t spow = 1;
    bool spow_ok = true;
    for (int i = 0; i < k; ++i) {
        spow *= s->order();
        if (spow > 10000) { spow_ok = false; break; }
    }

    // Abstract elements: (a_1..a_k, sigma) acting on S^k by
    // phi(x)_i = a_i(x_{sigma^{-1}(i)}).
    auto apply = [&](const std::vector<int>& a, const Perm& sigma,
                     const std::vector<int>& x) {
        std::vector<int> y(k);
        Perm si = perm_inverse(sigma);
        for (int i = 0; i < k; ++i) y[i] = aut.perms[a[i]][x[si[i]]];
        return y;
    };

    // Generating tuple of S^k: generators of S in each coordinate.
    std::vector<std::vector<int>> sk_gens;
    for (int i = 0; i < k; ++i)
        for (int ge : s->gens()) {
            std::vector<int> t(k, s->id());
            t[i] = ge;
            sk_gens.push_back(t);
        }

    auto fingerprint = [&](const std::vector<int>& a, const Perm& sigma) {
        std::vector<int> fp;
        for (const auto& x : sk_gens) {
            auto y = apply(a, sigma, x);
            fp.insert(fp.end(), y.begin(), y.end());
        }
        return fp;
    };

    if (spow_ok) {
        // Injectivity: all |Aut(S)|^k * k! elements have distinct fingerprints
        // on a generating tuple of S^k; since each acts as an automorphism,
        // distinct fingerprints mean distinct automorphisms.
        auto sigmas = all_perms(k);
        std::set<std::vector<int>> fps;
        std::vector<int> a(k, 0);
        std::uint64_t total = 0;
        bool done = false;
        while (!done) {
            for (const auto& sigma : sigmas) {
                fps.insert(fingerprint(a, sigma));
                ++total;
            }
            int i = 0;
            for (; i < k; ++i) {
                if (++a[i] < aut.group->order()) break;
                a[i] = 0;
            }
            if (i == k) done = true;
        }
        out.injection_verified = (total == ord) && (fps.size() == ord);

        // Each generator of the structure acts as an automorphism of S^k:
        // verify multiplicativity exhaustively on S^k for the generators.
        if (s->order() <= 100 && k <= 2) {
            GroupPtr sp = s;
            for (int i = 1; i < k; ++i) sp = FiniteGroup::direct_product(sp, s);
            out.s_power = sp;
            // Structure generators: one Aut(S) generator per coordinate, plus
            // coordinate transpositions.
            struct Gen { std::vector<int> a; Perm sigma; };
            std::vector<Gen> wgens;
            for (int i = 0; i < k; ++i)
                for (int ag : aut.group->gens()) {
                    std::vector<int> a0(k, 0);
                    a0[i] = ag;
                    wgens.push_back({a0, perm_identity(k)});
                }
            if (k >= 2) {
                Perm t = perm_identity(k);
                std::swap(t[0], t[1]);
                wgens.push_back({std::vector<int>(k, 0), t});
            }
            // Decode product index of S^k: index = x_1 * |S|^{k-1} + ... built
            // by iterated direct_product, i.e. ((x1,x2),x3)... index arithmetic
            // matches mixed radix with the last coordinate fastest.
            auto decode = [&](int idx) {
                std::vector<int> x(k);
                for (int i = k - 1; i >= 0; --i) {
                    x[i] = idx % s->order();
                    idx /= s->order();
                }
                return x;
            };
            auto encode = [&](const std::vector<int>& x) {
                int idx = 0;
                for (int i = 0; i < k; ++i) idx = idx * s->order() + x[i];
                return idx;
            };
            bool all_auto = true;
            for (const auto& w : wgens) {
                Perm phi(sp->order());
                for (int u = 0; u < sp->order(); ++u)
                    phi[u] = encode(apply(w.a, w.sigma, decode(u)));
                for (int u = 0; u < sp->order() && all_auto; ++u)
                    for (int v = 0; v < sp->order(); ++v)
                        if (phi[sp->mul(u, v)] != sp->mul(phi[u], phi[v])) {
                            all_auto = false;
                            break;
                        }
            }
            // Multiplicativity of the injection on generator pairs:
            // phi(w1 w2) = phi(w1) phi(w2), products taken abstractly.
            auto wmul = [&](const Gen& w1, const Gen& w2) {
                Gen w;
                w.sigma = perm_compose(w1.sigma, w2.sigma);
                w.a.resize(k);
                Perm s1i = perm_inverse(w1.sigma);
                for (int i = 0; i < k; ++i)
                    w.a[i] = aut.group->mul(w1.a[i], w2.a[s1i[i]]);
                return w;
            };
            bool hom_ok = all_auto;
            for (const auto& w1 : wgens)
                for (const auto& w2 : wgens) {
                    Gen w12 = wmul(w1, w2);
                    for (const auto& x : sk_gens) {
                        auto lhs = apply(w12.a, w12.sigma, x);
                        auto rhs = apply(w1.a, w1.sigma, apply(w2.a, w2.sigma, x));
                        if (lhs != rhs) { hom_ok = false; }
                    }
                }
            out.hom_on_generators = hom_ok;
        }
    }

    if (ord <= 10000) {
        // Build the abstract group Aut(S)^k x| Sym(k).
        GroupPtr ap = aut.group;
        for (int i = 1; i < k; ++i) ap = FiniteGroup::direct_product(ap, aut.group);
        if (k == 1) {
            out.group = ap;
        } else {
            auto symk = FiniteGroup::symmetric(k);
            // Need the permutation each element of Sym(k) induces on
            // coordinates; recover by matching against all_perms.
            // Sym(k) elements are indices; reconstruct their action on points
            // from the permutation construction is not exposed, so rebuild
            // Sym(k) from scratch here with known element perms.
            std::vector<Perm> elems;
            std::map<Perm, int> index;
            elems.push_back(perm_identity(k));
            index[elems[0]] = 0;
            std::vector<Perm> pg;
            {
                Perm swap01 = perm_identity(k), cyc(k);
                std::swap(swap01[0], swap01[1]);
                for (int i = 0; i < k; ++i) cyc[i] = (i + 1) % k;
                pg = {swap01, cyc};
            }
            std::queue<int> bq;
            bq.push(0);
            while (!bq.empty()) {
                int x = bq.front();
                bq.pop();
                for (const auto& ge : pg) {
                    Perm y = perm_compose(elems[x], ge);
                    if (!index.count(y)) {
                        index[y] = static_cast<int>(elems.size());
                        elems.push_back(y);
                        bq.push(static_cast<int>(elems.size()) - 1);
                    }
                }
            }
            int fs = static_cast<int>(elems.size());
            std::vector<int> stab(static_cast<std::size_t>(fs) * fs);
            for (int a = 0; a < fs; ++a)
                for (int b = 0; b < fs; ++b)
                    stab[static_cast<std::size_t>(a) * fs + b] =
                        index.at(perm_compose(elems[a], elems[b]));
            auto symg = FiniteGroup::from_table(std::move(stab), {}, "Sym" + std::to_string(k));
            // Action of sigma on Aut(S)^k by coordinate permutation.
            int na = aut.group->order();
            auto decode_a = [&](int idx) {
                std::vector<int> x(k);
                for (int i = k - 1; i >= 0; --i) {
                    x[i] = idx % na;
                    idx /= na;
                }
                return x;
            };
            auto encode_a = [&](const std::vector<int>& x) {
                int idx = 0;
                for (int i = 0; i < k; ++i) idx = idx * na + x[i];
                return idx;
            };
            std::vector<Perm> action(fs);
            for (int si = 0; si < fs; ++si) {
                const Perm& sigma = elems[si];
                Perm act(ap->order());
                Perm sinv = perm_inverse(sigma);
                for (int x = 0; x < ap->order(); ++x) {
                    auto xa = decode_a(x);
                    std::vector<int> y(k);
                    for (int i = 0; i < k; ++i) y[i] = xa[sinv[i]];
                    act[x] = encode_a(y);
                }
                action[si] = std::move(act);
            }
            out.group = FiniteGroup::semidirect(
                ap, symg, action,
                "Aut(" + s->label() + ")^" + std::to_string(k) + ":Sym" + std::to_string(k));
        }
    }
    return out;
}

const std::vector<SimpleGroupInfo>& simple_group_table() {
    static const std::vector<SimpleGroupInfo> table = {
        {"A5", 60, 2, [] { return FiniteGroup::alternating(5); }},
        {"PSL(2,7)", 168, 2, [] { return FiniteGroup::psl27(); }},
        {"A6", 360, 4, [] { return FiniteGroup::alternating(6); }},
    };
    return table;
}

}  // namespace pgl

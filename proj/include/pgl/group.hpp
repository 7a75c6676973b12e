#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pgl {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A permutation of {0, ..., m-1}, as the image list.
using Perm = std::vector<int>;

Perm perm_compose(const Perm& a, const Perm& b);  // (a*b)(x) = a(b(x))
Perm perm_inverse(const Perm& a);
Perm perm_identity(int m);

/// A finite group given by its full Cayley table.  Immutable after
/// construction; element indices are 0..order-1 with 0 the identity.
/// Orders are capped at 65535 (table entries are 16-bit).
class FiniteGroup {
public:
    static constexpr int kMaxOrder = 65535;

    /// Builds from a raw multiplication table (row-major, table[a*n+b] = ab).
    /// Verifies identity/inverses/closure, associativity exhaustively for
    /// n <= 200 and on 10^5 sampled triples above, and that gens generate.
    /// If gens is empty, all elements are taken as generators.
    static GroupPtr from_table(std::vector<int> table, std::vector<int> gens,
                               std::string label);

    /// Closure of a set of permutations on m points.
    static GroupPtr from_permutations(const std::vector<Perm>& gens, std::string label);

    static GroupPtr trivial();
    static GroupPtr cyclic(int m);
    static GroupPtr dihedral(int m);      // order 2m
    static GroupPtr symmetric(int n);     // n <= 6
    static GroupPtr alternating(int n);   // n <= 6
    static GroupPtr psl27();              // PSL(2,7), order 168
    static GroupPtr direct_product(const GroupPtr& g1, const GroupPtr& g2);

    /// Semidirect product K x| G.  action[g] is the automorphism of K induced
    /// by g in G, as a permutation of K's elements; must be a homomorphism
    /// G -> Aut(K) (verified).  Multiplication: (k1,g1)(k2,g2) =
    /// (k1 * action[g1](k2), g1 g2).
    static GroupPtr semidirect(const GroupPtr& k, const GroupPtr& g,
                               const std::vector<Perm>& action, std::string label);

    int order() const { return n_; }
    int id() const { return 0; }
    int mul(int a, int b) const { return tab_[static_cast<std::size_t>(a) * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
    int commutator(int a, int b) const {
        return mul(mul(a, b), mul(inv(a), inv(b)));
    }
    int pow(int a, long long k) const;
    int element_order(int a) const;
    const std::vector<int>& gens() const { return gens_; }
    const std::string& label() const { return label_; }

    /// Word for each element in terms of generators: elem = parent * gens[gi].
    /// word_parent[0] = -1.  BFS order, deterministic.
    const std::vector<int>& word_parent() const { return word_parent_; }
    const std::vector<int>& word_gen() const { return word_gen_; }

    bool is_abelian() const;

private:
    friend class GroupBuilder;
    FiniteGroup() = default;
    int n_ = 0;
    std::vector<std::uint16_t> tab_;
    std::vector<int> inv_;
    std::vector<int> gens_;
    std::vector<int> word_parent_, word_gen_;
    std::string label_;
};

/// A subgroup, as a sorted element index list of the parent.
struct Subgroup {
    GroupPtr parent;
    std::vector<int> elems;  // sorted, contains 0

    int order() const { return static_cast<int>(elems.size()); }
    int index() const { return parent->order() / order(); }
    bool contains(int x) const;
    bool operator==(const Subgroup& o) const { return elems == o.elems; }
    bool operator<(const Subgroup& o) const;
};

/// A homomorphism between Cayley-table groups, as the full image table.
struct GroupHom {
    GroupPtr dom, cod;
    std::vector<int> img;

    int operator()(int x) const { return img[x]; }
    bool verify() const;  // exhaustive multiplicativity check
    bool is_surjective() const;
    bool is_injective() const;
    Subgroup kernel() const;
};

/// Composition h(g(x)).
GroupHom hom_compose(const GroupHom& h, const GroupHom& g);

// --- subgroup machinery -----------------------------------------------------

std::vector<int> closure(const FiniteGroup& g, std::vector<int> seed);
Subgroup subgroup_generated(const GroupPtr& g, const std::vector<int>& seed);
Subgroup normal_closure(const GroupPtr& g, const std::vector<int>& seed);
bool is_normal(const Subgroup& s);
Subgroup conjugate_subgroup(const Subgroup& s, int g);
bool subgroups_conjugate(const Subgroup& a, const Subgroup& b);

/// All subgroups, by layered closure (cyclic subgroups, then pairwise joins).
/// Requires |G| <= 2000.  Sorted canonically.
std::vector<Subgroup> all_subgroups(const GroupPtr& g);

struct IndexSubgroups {
    std::vector<Subgroup> subgroups;              // all of index k
    std::vector<Subgroup> class_reps;             // one per conjugacy class
    int a_k() const { return static_cast<int>(subgroups.size()); }
    int conj_k() const { return static_cast<int>(class_reps.size()); }
};
IndexSubgroups subgroups_of_index(const GroupPtr& g, int k);

std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g);
int p_regular_class_count(const FiniteGroup& g, int p);
Subgroup center(const GroupPtr& g);

/// Minimal number of generators; ascending search d = 0, 1, 2, ...
int min_generators(const FiniteGroup& g);

/// First minimal generating tuple found by the ascending search.
std::vector<int> min_generating_tuple(const FiniteGroup& g);

std::vector<Subgroup> minimal_normal_subgroups(const GroupPtr& g);
bool is_simple(const FiniteGroup& g);

// --- quotients and isomorphisms ---------------------------------------------

struct Quotient {
    GroupPtr group;
    GroupHom proj;
};
/// G/N with the canonical projection; N must be normal.
Quotient quotient(const GroupPtr& g, const Subgroup& n);

/// Reindexes a subgroup as a standalone group; to_parent maps new indices
/// back to parent element indices.
struct SubgroupAsGroup {
    GroupPtr group;
    std::vector<int> to_parent;
    std::vector<int> from_parent;  // parent index -> new index, -1 outside
};
SubgroupAsGroup subgroup_as_group(const Subgroup& s);

/// Extends generator images to a homomorphism if one exists (gens must
/// generate dom).  Returns nullopt when the images are inconsistent.
std::optional<GroupHom> hom_from_gen_images(const GroupPtr& dom, const GroupPtr& cod,
                                            const std::vector<int>& images);

/// Generator-image backtracking with order-profile pruning.
std::optional<GroupHom> find_isomorphism(const GroupPtr& g, const GroupPtr& h);
bool isomorphic(const GroupPtr& g, const GroupPtr& h);

/// Enumerates all homomorphisms dom -> cod (by generator-image search).
std::vector<GroupHom> all_homs(const GroupPtr& dom, const GroupPtr& cod);

// --- automorphisms ----------------------------------------------------------

struct AutGroup {
    GroupPtr group;               // Aut(G) as an abstract group
    std::vector<Perm> perms;      // element i of group = this permutation of G
    Subgroup inner;               // Inn(G) inside group
    int out_order() const { return group->order() / inner.order(); }
};
/// Brute force over generator-image tuples; |G| <= 400.
AutGroup automorphism_group(const GroupPtr& g);

/// Aut(S)^k x| Sym(k) for S nonabelian simple, acting on S^k coordinatewise
/// and by coordinate permutation.
struct AutPowerStructure {
    std::uint64_t order = 0;            // |Aut(S)|^k * k!
    GroupPtr group;                     // built only when order <= table cap
    GroupPtr s_power;                   // S^k, when |S|^k <= 10^4
    bool injection_verified = false;    // all elements give distinct automorphisms of S^k
    bool hom_on_generators = false;     // multiplicativity spot-checked on generator pairs
};
AutPowerStructure aut_of_power_structure(const GroupPtr& s, int k);

// --- hardcoded simple-group table (CFSG stand-in) ---------------------------

struct SimpleGroupInfo {
    std::string name;
    int order;
    int out_order;
    GroupPtr (*construct)();
};
/// {A5, A6, PSL(2,7)} with |Out| = {2, 4, 2}.
const std::vector<SimpleGroupInfo>& simple_group_table();

}  // namespace pgl

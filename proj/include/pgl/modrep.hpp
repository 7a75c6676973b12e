#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pgl/group.hpp"
#include "pgl/matrix.hpp"

namespace pgl {

/// A finite-dimensional module over F_q[G], given by one invertible matrix per
/// group generator (matrices act on column vectors).
struct GModule {
    GroupPtr group;
    FieldPtr field;
    int dim = 0;
    std::vector<Matrix> gen_action;
};

GModule trivial_module(const GroupPtr& g, const FieldPtr& f);

/// The left regular module: basis e_h, g . e_h = e_{gh}; dim = |G|.
GModule regular_module(const GroupPtr& g, const FieldPtr& f);

/// Action of an arbitrary element, by word evaluation along the BFS tree.
Matrix element_action(const GModule& m, int g);

/// Actions of all |G| elements, indexed by element.
std::vector<Matrix> all_element_actions(const GModule& m);

/// Checks: generator actions invertible, and the word-evaluated element
/// actions are multiplicative against every (element, generator) pair.
bool verify_module(const GModule& m);

/// Submodule on an invariant row-space basis (rows echelonized, invariant).
GModule submodule(const GModule& m, const Matrix& basis);
GModule quotient_module(const GModule& m, const Matrix& basis);

/// Echelonized basis of the smallest invariant subspace containing v.
Matrix spin(const GModule& m, const std::vector<FqElem>& v);

/// Meataxe invariant-subspace search (Norton's criterion).  Returns an
/// echelonized proper nonzero invariant row basis, or nullopt when the module
/// is irreducible.  Deterministic word enumeration first, then seeded-random
/// algebra elements.
std::optional<Matrix> invariant_subspace(const GModule& m);

bool is_irreducible(const GModule& m);

/// A verified-simple module with its endomorphism data.
struct SimpleRecord {
    GModule module;
    int endo_degree = 1;            // dim of End as F_q-algebra (a field)
    bool abs_irred = true;          // endo_degree == 1
    std::vector<FqElem> trace_fingerprint;  // trace of every element action
};

SimpleRecord make_simple_record(GModule m);

/// Isomorphism test by nonzero intertwiner, with the trace fingerprint as a
/// sound negative pre-filter.  Intended for simple modules.
bool modules_isomorphic(const GModule& a, const GModule& b);

/// Composition factors with multiplicities; Sum dim_i * mult_i = dim M.
/// Output sorted by (dim, trace_fingerprint).
std::vector<std::pair<SimpleRecord, int>> chop(const GModule& m);

/// Complete census of simple F_q[G]-modules, via the regular module.
/// Requires |G| <= 300.
std::vector<SimpleRecord> simple_modules(const GroupPtr& g, const FieldPtr& f);

struct GrowthRow {
    int n = 0;
    long long r = 0;       // # simples of dim n
    long long r_star = 0;  // # absolutely irreducible simples of dim n
};

struct GrowthTable {
    std::string group_label;
    std::uint32_t p = 0, e = 1;
    std::vector<GrowthRow> rows;  // n = 1..n_max

    long long r(int n) const;
    long long r_star(int n) const;
    long long cumulative(int n) const;  // R_n = sum_{j<=n} r_j
};

GrowthTable r_counts(const GroupPtr& g, const FieldPtr& f, int n_max);

// --- Galois descent ---------------------------------------------------------

/// Entrywise x -> x^{p^t} on the generator actions.
GModule frobenius_twist(const GModule& m, std::uint32_t t = 1);

/// Reinterprets a module over the prime field as one over F_{p^d}.
GModule base_change(const GModule& m, const FieldPtr& bigger);

/// Restriction of scalars F_{p^d} -> F_p (dim multiplies by d).
GModule restrict_scalars(const GModule& m);

GModule restrict_to_subgroup(const GModule& m, const SubgroupAsGroup& h);

/// Elements acting as the identity.
Subgroup module_kernel(const GModule& m);

struct GaloisOrbit {
    std::vector<GModule> members;   // absolutely irreducible over F_{p^d}
    GModule descended;              // Phi(orbit), a simple F_p-module
    int descended_index = -1;       // position in simple_modules(G, F_p)
    int member_dim = 0;
    bool dimension_law = false;     // dim descended == |orbit| * member_dim
    bool decomposition_ok = false;  // base change of descended chops into the
                                    // orbit members, multiplicity 1 each
};

struct GaloisData {
    std::uint32_t d = 1;
    std::vector<GaloisOrbit> orbits;
    bool bijective = false;  // orbits <-> F_p-simples with endo_degree | d
};

/// Gal(F_{p^d}/F_p)-orbits on the absolutely irreducible F_{p^d}-modules and
/// the descent map, for each d <= d_max.
std::vector<GaloisData> galois_orbits(const GroupPtr& g, std::uint32_t p,
                                      std::uint32_t d_max);

/// r_n(G, F_p) recomputed as the number of Galois orbits of size d of
/// absolutely irreducible F_{p^d}-modules of dim n/d, summed over d | n;
/// also the divisor-sum upper bound.  Returns (direct, via_orbits,
/// upper_bound).
struct DivisorSumCheck {
    long long direct = 0;
    long long via_orbits = 0;
    long long upper_bound = 0;
    bool equal = false;
    bool bounded = false;
};
DivisorSumCheck divisor_sum_check(const GroupPtr& g, std::uint32_t p, int n);

/// Both sides of r*_n(G1 x G2) = sum_{n1 n2 = n} r*_{n1}(G1) r*_{n2}(G2).
struct ConvolutionCheck {
    std::vector<long long> lhs, rhs;  // index n-1, n = 1..n_max
    bool ok = false;
};
ConvolutionCheck product_convolution_check(const GroupPtr& g1, const GroupPtr& g2,
                                           const FieldPtr& f, int n_max);

/// Given L with a unique minimal normal subgroup that is not a p-group and a
/// faithful module V, returns a faithful irreducible factor of dim <= dim V.
/// Hypothesis violations throw std::invalid_argument with distinct messages.
SimpleRecord faithful_irreducible_factor(const GroupPtr& l, const GModule& v,
                                         std::uint32_t p);

/// The regular F_p[G]-module restricted to H is [G:H] copies of the regular
/// F_p[H]-module (chop both, compare factor multisets).
bool restriction_rank_check(const GroupPtr& g, const Subgroup& h, std::uint32_t p);

}  // namespace pgl

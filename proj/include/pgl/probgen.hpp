#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "pgl/extensions.hpp"
#include "pgl/group.hpp"
#include "pgl/modrep.hpp"

namespace pgl {

/// The lattice of subgroups of R = ker f that are normal in H, for a
/// surjection f: H -> G, with Mobius values toward the top element R.
struct StableLattice {
    GroupHom f;
    Subgroup kernel;                 // R, as a subgroup of H
    std::vector<Subgroup> nodes;     // all H-normal subgroups of R, sorted
    std::vector<mpz_class> mobius;   // mu(node, R)
    std::vector<int> maximal;        // indices of the maximal proper nodes
    int root = -1;                   // index of R itself
};

/// Requires f surjective and |ker f| <= 200.
StableLattice stable_lattice(const GroupHom& f);

/// Count of maximal nodes by index in R.
std::map<int, long long> m_counts(const StableLattice& l);

/// P(k) = sum_N mu(N, R) [R:N]^{-k}: the exact probability that k uniform
/// elements of R generate R as a normal subgroup of H.
mpq_class exact_gen_probability(const StableLattice& l, int k);

struct MonteCarloResult {
    double estimate = 0.0;
    double stderr_est = 0.0;
    long long trials = 0;
    std::uint64_t seed = 0;
};

/// Samples k elements of ker f, takes the normal closure in H; the sampler
/// (mt19937_64 with rejection) is fixed, so results are seed-reproducible.
MonteCarloResult monte_carlo_gen_probability(const GroupHom& f, int k,
                                             long long trials, std::uint64_t seed);

/// 1 - P(k) <= sum over maximal nodes of [R:M]^{-k}, in exact rationals.
bool pfr_sum_bound_check(const StableLattice& l, int k);

/// [R : Mi inter Mj] = [R:Mi][R:Mj] for all pairs of distinct maximal nodes.
bool independence_check(const StableLattice& l);

/// Per maximal node M: the extension 1 -> R/M -> H/M -> G -> 1, with an
/// audit that iso-duplicate buckets have size <= [R:M]^d, d = d(H).
struct StableExtensionMap {
    std::vector<ExtensionRecord> records;  // parallel to l.maximal
    std::vector<int> bucket;               // iso-class id per record
    bool bucket_bound_ok = false;
};
StableExtensionMap stable_to_extension_map(const StableLattice& l);

/// Maximal left ideals of F_p[G] counted by quotient dimension, via
/// annihilators of nonzero vectors of the simple modules.
struct IdealCensus {
    GroupPtr g;
    std::uint32_t p = 2;
    int n_max = 1;
    std::vector<long long> m;  // index n-1: # maximal ideals of index p^n
    std::vector<long long> r;  // index n-1: r_n(G, F_p)
    bool sandwich_ok = false;  // r_n <= m_{p^n} <= p^n r_n for all n
};

/// Requires |G| <= 100.
IdealCensus ideal_census(const GroupPtr& g, std::uint32_t p, int n_max);

/// Exact probability that k uniform elements of M generate it as a module,
/// by Mobius inversion over the full submodule lattice.  Requires
/// dim M <= 12 and a submodule lattice of at most 10^4 nodes.
mpq_class module_gen_probability(const GModule& m, int k);

/// P(k, regular F_p[G]-module) >= 1 - sum_n m_{p^n} (p^n)^{-k}, with the
/// census counts; exact rationals.
bool ideal_sum_bound_check(const GroupPtr& g, std::uint32_t p, int k);

}  // namespace pgl

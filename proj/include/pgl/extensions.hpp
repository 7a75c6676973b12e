#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "pgl/group.hpp"
#include "pgl/modrep.hpp"

namespace pgl {

/// An extension 1 -> kernel -> total -> base -> 1.
struct ExtensionRecord {
    GroupPtr base;
    GroupPtr total;
    Subgroup kernel;  // subgroup of total
    GroupHom proj;    // total onto base, kernel = kernel
    int degree = 1;   // |kernel|
    bool minimal = false;
    bool abelian = false;
    bool split = false;
};

/// Normalized 2-cocycles of G with values in V.  Cocycles live in
/// V^{(|G|-1)^2}: one V-component block per ordered pair of non-identity
/// elements; pairs involving the identity are fixed to zero.
struct CocycleSpace {
    GroupPtr base;
    GModule module;
    Matrix z2;  // rows span the cocycles
    Matrix b2;  // rows span the coboundaries
    int h2_dim = 0;
};

/// Solves the 2-cocycle identity and the coboundary image.
/// Requires |G| <= 60, dim V <= 8.
CocycleSpace h2(const GroupPtr& g, const GModule& v);

/// One cocycle per H^2 class (the zero class first); q^{h2_dim} entries.
std::vector<std::vector<FqElem>> h2_class_reps(const CocycleSpace& cs);

/// The group on V x G with (v1,g1)(v2,g2) = (v1 + g1.v2 + c(g1,g2), g1 g2).
/// Throws when c fails the cocycle identity.
ExtensionRecord extension_from_cocycle(const GroupPtr& g, const GModule& v,
                                       const std::vector<FqElem>& cocycle);

enum class ExtIso { no, yes, undecided };

/// Isomorphism over the base: a total-group isomorphism commuting with the
/// projections.  Exhaustive search for |E| <= 500; above that only separating
/// certificates are used and matching certificates give `undecided`.
ExtIso extensions_isomorphic(const ExtensionRecord& a, const ExtensionRecord& b);

/// Isomorphism classes of minimal extensions of G with elementary abelian
/// kernel of order p^k (kernel = an irreducible k-dim F_p-module, classes
/// from H^2, deduplicated by extensions_isomorphic).
std::vector<ExtensionRecord> abelian_minimal_extensions(const GroupPtr& g,
                                                        std::uint32_t p, int k);

/// A finite presentation: letters 1..ngens, negative letter = inverse.
struct Presentation {
    int ngens = 0;
    std::vector<std::vector<int>> relators;
};

/// Size of the presented group by coset enumeration over the trivial
/// subgroup; throws when the enumeration exceeds max_cosets live cosets.
int presented_group_order(const Presentation& pres, int max_cosets);

/// Validates that `images` satisfy the relators and generate G and that the
/// presentation defines a group of order |G|, then checks
/// e^min_{p^k}(G) <= p^{r k} r_k(G, F_p) with r = #relators.
bool presentation_bound_check(const GroupPtr& g, const Presentation& pres,
                              const std::vector<int>& images, std::uint32_t p,
                              int k);

/// The split extension S^{G/H} x| G with G permuting the copies by the coset
/// action.  Requires |S|^[G:H] * |G| <= 3*10^4.
ExtensionRecord semidirect_EH(const GroupPtr& g, const Subgroup& h, const GroupPtr& s);

/// For a minimal extension with kernel of shape S^k: the conjugacy class of
/// the stabilizer of the G-action on the k kernel factors, as its canonical
/// representative subgroup of the base.  Throws when the kernel is not a
/// power of a nonabelian simple group.
Subgroup t_map(const ExtensionRecord& e);

/// Shared data for couplings with kernel shape (S, k): Aut(S), Out(S) and
/// the target group Out(S)^k x| Sym(k).  Supports k in {1, 2}.
struct CouplingContext {
    GroupPtr s;
    int k = 1;
    AutGroup aut;
    Quotient out;      // aut.group / aut.inner
    GroupPtr target;   // k = 1: out.group; k = 2: (Out x Out) x| C2
};
std::shared_ptr<CouplingContext> coupling_context(const GroupPtr& s, int k);

struct Coupling {
    GroupPtr base;
    std::shared_ptr<CouplingContext> ctx;
    GroupHom hom;  // base -> ctx->target
    bool transitive = false;
};

/// All homomorphisms base -> target as couplings.
std::vector<Coupling> enumerate_couplings(const GroupPtr& base,
                                          const std::shared_ptr<CouplingContext>& ctx);

/// Fiber product {(a, g) in Aut(S) x G : a Inn = chi(g)} for k = 1.
/// Requires Z(S) = 1 and |S||G| <= 10^4.
ExtensionRecord extension_from_coupling(const GroupPtr& g, const Coupling& chi);

/// Buckets conjugacy classes of transitive couplings by the stabilizer class
/// of the Sym(k)-projection and asserts each bucket <= |Out(S)|^{k d(G)}.
bool coupling_fiber_bound_check(const GroupPtr& g, const GroupPtr& s, int k);

/// d(E) <= d(G) + 2, sharpened to d(G) + 1 for abelian kernels.
bool generation_bound_check(const ExtensionRecord& e);

/// d((V x| G) x H) <= d(G) + d(H), plus the explicit generating tuple
/// (0,g_i,1), (v,1,h_1), (0,1,h_j).  Throws for trivial V-action or trivial H.
bool semidirect_product_generators_check(const GroupPtr& g, const GModule& v,
                                         const GroupPtr& h);

/// Isomorphism classes of extensions of G by a fixed centerless simple S
/// (kernel shape k = 1) are counted by |Hom(G, Out(S))|.
long long nonabelian_minimal_extension_count(const GroupPtr& g, const GroupPtr& s);

}  // namespace pgl

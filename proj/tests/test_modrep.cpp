#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <optional>

#include "pgl/modrep.hpp"

using namespace pgl;

namespace {

// One vector per 1-dim subspace of F_q^n (first nonzero coordinate = 1).
std::vector<std::vector<FqElem>> projective_vectors(const FieldPtr& F, int n) {
    std::vector<std::vector<FqElem>> out;
    std::vector<FqElem> v(n, 0);
    while (true) {
        int lead = -1;
        for (int j = 0; j < n; ++j)
            if (v[j] != 0) { lead = j; break; }
        if (lead >= 0 && v[lead] == 1) out.push_back(v);
        int j = 0;
        for (; j < n; ++j) {
            v[j] = (v[j] + 1) % F->q();
            if (v[j] != 0) break;
        }
        if (j == n) break;
    }
    return out;
}

// Oracle reducibility test: a reducible module has a minimal submodule, and
// every vector in it spins to something proper.  Needs q^dim small.
std::optional<Matrix> brute_invariant(const GModule& m) {
    for (const auto& v : projective_vectors(m.field, m.dim)) {
        auto s = spin(m, v);
        if (s.rows() < m.dim) return s;
    }
    return std::nullopt;
}

// Oracle composition factors (dims only, sorted), bypassing the Meataxe.
std::vector<int> brute_factor_dims(const GModule& m) {
    std::vector<int> dims;
    std::vector<GModule> stack = {m};
    while (!stack.empty()) {
        GModule t = std::move(stack.back());
        stack.pop_back();
        if (t.dim == 0) continue;
        auto sub = brute_invariant(t);
        if (!sub) {
            dims.push_back(t.dim);
            continue;
        }
        stack.push_back(submodule(t, *sub));
        stack.push_back(quotient_module(t, *sub));
    }
    std::sort(dims.begin(), dims.end());
    return dims;
}

int total_dim(const std::vector<std::pair<SimpleRecord, int>>& factors) {
    int s = 0;
    for (const auto& [rec, mult] : factors) s += rec.module.dim * mult;
    return s;
}

}  // namespace

TEST_CASE("regular module construction and verification") {
    auto s3 = FiniteGroup::symmetric(3);
    auto F2 = FqField::make(2, 1);
    auto reg = regular_module(s3, F2);
    CHECK(reg.dim == 6);
    CHECK(verify_module(reg));
    CHECK(module_kernel(reg).order() == 1);

    auto triv = trivial_module(s3, F2);
    CHECK(verify_module(triv));
    CHECK(module_kernel(triv).order() == 6);
}

TEST_CASE("chop of the regular S3 module over F_3: trivial x3 and sign x3") {
    auto s3 = FiniteGroup::symmetric(3);
    auto F3 = FqField::make(3, 1);
    auto reg = regular_module(s3, F3);

    // oracle first
    CHECK(brute_factor_dims(reg) == std::vector<int>{1, 1, 1, 1, 1, 1});

    auto factors = chop(reg);
    CHECK(total_dim(factors) == 6);
    REQUIRE(factors.size() == 2);
    for (const auto& [rec, mult] : factors) {
        CHECK(rec.module.dim == 1);
        CHECK(mult == 3);
        CHECK(rec.endo_degree == 1);
    }
    // one is the trivial module, the other sends some element to -1
    bool has_trivial = false, has_sign = false;
    for (const auto& [rec, mult] : factors) {
        bool all_one = true;
        bool minus_one = false;
        for (auto t : rec.trace_fingerprint) {
            if (t != 1) all_one = false;
            if (t == 2) minus_one = true;  // -1 in F_3
        }
        if (all_one) has_trivial = true;
        if (minus_one) has_sign = true;
    }
    CHECK(has_trivial);
    CHECK(has_sign);
}

TEST_CASE("chop of the regular S3 module over F_2: trivial x2 and 2-dim x2") {
    auto s3 = FiniteGroup::symmetric(3);
    auto F2 = FqField::make(2, 1);
    auto reg = regular_module(s3, F2);

    CHECK(brute_factor_dims(reg) == std::vector<int>{1, 1, 2, 2});

    auto factors = chop(reg);
    CHECK(total_dim(factors) == 6);
    REQUIRE(factors.size() == 2);
    CHECK(factors[0].first.module.dim == 1);
    CHECK(factors[0].second == 2);
    CHECK(factors[1].first.module.dim == 2);
    CHECK(factors[1].second == 2);
}

TEST_CASE("irreducibility agrees with exhaustive 1-dim spins on small modules") {
    auto s3 = FiniteGroup::symmetric(3);
    auto F2 = FqField::make(2, 1);
    auto reg = regular_module(s3, F2);

    // regular module of a nontrivial group: all-ones vector spins to a line
    std::vector<FqElem> ones(6, 1);
    CHECK(spin(reg, ones).rows() == 1);
    CHECK(!is_irreducible(reg));

    // the 2-dim factor is the natural module; all 3 lines spin to everything
    auto nat = chop(reg)[1].first.module;
    REQUIRE(nat.dim == 2);
    for (const auto& v : projective_vectors(F2, 2)) CHECK(spin(nat, v).rows() == 2);
    CHECK(is_irreducible(nat));

    // systematic agreement on every chop factor and a few built modules
    std::vector<GModule> suite = {reg, nat, trivial_module(s3, F2),
                                  regular_module(FiniteGroup::cyclic(4), F2),
                                  regular_module(FiniteGroup::dihedral(2),
                                                 FqField::make(3, 1))};
    for (const auto& m : suite) {
        double sz = 1;
        for (int t = 0; t < m.dim; ++t) sz *= m.field->q();
        REQUIRE(sz <= 1e5);
        CHECK(is_irreducible(m) == !brute_invariant(m).has_value());
    }
}

TEST_CASE("simple modules of A5 over F_2: dims 1,4,4 with one fused pair") {
    auto a5 = FiniteGroup::alternating(5);
    auto F2 = FqField::make(2, 1);
    auto recs = simple_modules(a5, F2);
    std::vector<int> dims;
    std::vector<int> endos;
    for (const auto& r : recs) {
        dims.push_back(r.module.dim);
        endos.push_back(r.endo_degree);
    }
    std::sort(dims.begin(), dims.end());
    CHECK(dims == std::vector<int>{1, 4, 4});
    std::sort(endos.begin(), endos.end());
    CHECK(endos == std::vector<int>{1, 1, 2});
    for (const auto& r : recs) {
        CHECK(is_irreducible(r.module));
        CHECK(r.abs_irred == (r.endo_degree == 1));
    }
}

TEST_CASE("r_counts examples") {
    auto F7 = FqField::make(7, 1);
    auto c6 = FiniteGroup::cyclic(6);
    // oracle: 1-dim representations of C6 over F_7 = elements of order
    // dividing 6 in the multiplicative group
    int count = 0;
    for (FqElem x = 1; x < 7; ++x)
        if (F7->pow(x, 6) == 1) ++count;
    CHECK(count == 6);
    auto t = r_counts(c6, F7, 2);
    CHECK(t.r(1) == 6);
    CHECK(t.r(2) == 0);

    auto s3 = FiniteGroup::symmetric(3);
    auto t2 = r_counts(s3, FqField::make(2, 1), 4);
    CHECK(t2.r(1) == 1);
    CHECK(t2.r(2) == 1);
    CHECK(t2.r(3) == 0);
    CHECK(t2.r(4) == 0);
    CHECK(t2.cumulative(2) == 2);

    auto tt = r_counts(FiniteGroup::trivial(), FqField::make(3, 1), 3);
    CHECK(tt.r(1) == 1);
    CHECK(tt.r(2) == 0);
    CHECK(tt.r(3) == 0);

    // determinism: identical tables on a rerun
    auto t3 = r_counts(s3, FqField::make(2, 1), 4);
    for (int n = 1; n <= 4; ++n) {
        CHECK(t2.r(n) == t3.r(n));
        CHECK(t2.r_star(n) == t3.r_star(n));
    }
}

TEST_CASE("Brauer count: sum of endo degrees equals p-regular class count") {
    std::vector<GroupPtr> gs = {FiniteGroup::cyclic(6), FiniteGroup::symmetric(3),
                                FiniteGroup::symmetric(4), FiniteGroup::alternating(4),
                                FiniteGroup::alternating(5), FiniteGroup::dihedral(4)};
    for (const auto& g : gs)
        for (int p : {2, 3, 5}) {
            auto recs = simple_modules(g, FqField::make(static_cast<std::uint32_t>(p), 1));
            int total = 0;
            for (const auto& r : recs) total += r.endo_degree;
            CHECK(total == p_regular_class_count(*g, p));
        }
}

TEST_CASE("endomorphism algebras of simples: Schur dichotomy") {
    auto a5 = FiniteGroup::alternating(5);
    auto F2 = FqField::make(2, 1);
    auto recs = simple_modules(a5, F2);
    for (std::size_t i = 0; i < recs.size(); ++i)
        for (std::size_t j = 0; j < recs.size(); ++j) {
            auto tw = intertwiner_space(recs[i].module.gen_action,
                                        recs[j].module.gen_action);
            if (i == j) {
                CHECK(static_cast<int>(tw.size()) == recs[i].endo_degree);
                for (const auto& x : tw) CHECK(inverse(x).has_value());
            } else {
                CHECK(tw.empty());
            }
        }
}

TEST_CASE("galois orbits: abelian coprime case is singleton and dim-preserving") {
    auto c2 = FiniteGroup::cyclic(2);
    auto data = galois_orbits(c2, 3, 2);
    REQUIRE(data.size() == 2);
    for (const auto& gd : data) {
        CHECK(gd.bijective);
        for (const auto& orb : gd.orbits) {
            CHECK(orb.members.size() == 1);
            CHECK(orb.member_dim == 1);
            CHECK(orb.descended.dim == 1);
            CHECK(orb.dimension_law);
            CHECK(orb.decomposition_ok);
        }
        CHECK(gd.orbits.size() == 2);
    }
}

TEST_CASE("galois orbits: the two 2-dim A5 modules over F_4 fuse to a 4-dim") {
    auto a5 = FiniteGroup::alternating(5);
    auto data = galois_orbits(a5, 2, 2);
    REQUIRE(data.size() == 2);
    CHECK(data[0].bijective);
    CHECK(data[1].bijective);

    bool found_fused = false;
    for (const auto& orb : data[1].orbits) {
        CHECK(orb.dimension_law);
        CHECK(orb.decomposition_ok);
        if (orb.member_dim == 2) {
            CHECK(orb.members.size() == 2);
            CHECK(orb.descended.dim == 4);
            auto rec = make_simple_record(orb.descended);
            CHECK(rec.endo_degree == 2);
            found_fused = true;
        }
    }
    CHECK(found_fused);
}

TEST_CASE("divisor-sum consistency for S3 and A4 at p = 2, 3") {
    for (int p : {2, 3})
        for (const auto& g : {FiniteGroup::symmetric(3), FiniteGroup::alternating(4)})
            for (int n = 1; n <= 4; ++n) {
                auto c = divisor_sum_check(g, static_cast<std::uint32_t>(p), n);
                CHECK(c.equal);
                CHECK(c.bounded);
            }
}

TEST_CASE("product convolution identity") {
    auto s3 = FiniteGroup::symmetric(3);
    auto c2 = FiniteGroup::cyclic(2);
    auto F3 = FqField::make(3, 1);

    // trivial second factor: identity
    auto ct = product_convolution_check(s3, FiniteGroup::trivial(), F3, 3);
    CHECK(ct.ok);

    auto c1 = product_convolution_check(s3, c2, F3, 2);
    CHECK(c1.ok);
    CHECK(c1.lhs[0] == 4);  // 2 x 2 one-dimensional pairs

    auto F2 = FqField::make(2, 1);
    auto c2c = product_convolution_check(s3, s3, F2, 4);
    CHECK(c2c.ok);
}

TEST_CASE("faithful irreducible factor") {
    auto F2 = FqField::make(2, 1);

    auto s3 = FiniteGroup::symmetric(3);
    auto rec = faithful_irreducible_factor(s3, regular_module(s3, F2), 2);
    CHECK(rec.module.dim == 2);
    CHECK(module_kernel(rec.module).order() == 1);
    CHECK(is_irreducible(rec.module));

    auto a5 = FiniteGroup::alternating(5);
    auto rec5 = faithful_irreducible_factor(a5, regular_module(a5, F2), 2);
    CHECK(rec5.module.dim == 4);
    CHECK(module_kernel(rec5.module).order() == 1);

    // three minimal normal subgroups
    auto v4 = FiniteGroup::dihedral(2);
    CHECK_THROWS_WITH_AS(
        faithful_irreducible_factor(v4, regular_module(v4, F2), 2),
        doctest::Contains("unique minimal normal"), std::invalid_argument);

    // unique minimal normal subgroup, but a p-group
    auto a4 = FiniteGroup::alternating(4);
    CHECK_THROWS_WITH_AS(
        faithful_irreducible_factor(a4, regular_module(a4, F2), 2),
        doctest::Contains("p-group"), std::invalid_argument);

    // unfaithful module
    CHECK_THROWS_WITH_AS(faithful_irreducible_factor(s3, trivial_module(s3, F2), 2),
                         doctest::Contains("not faithful"), std::invalid_argument);
}

TEST_CASE("restriction of the regular module to a subgroup") {
    auto s3 = FiniteGroup::symmetric(3);
    std::vector<int> whole(6);
    for (int i = 0; i < 6; ++i) whole[i] = i;
    CHECK(restriction_rank_check(s3, Subgroup{s3, whole}, 2));  // H = G

    std::vector<int> a3;
    for (int x = 0; x < 6; ++x)
        if (s3->element_order(x) % 2 == 1) a3.push_back(x);
    CHECK(restriction_rank_check(s3, Subgroup{s3, a3}, 2));

    auto c4 = FiniteGroup::cyclic(4);
    std::vector<int> c2_in_c4 = {0, c4->pow(c4->gens()[0], 2)};
    std::sort(c2_in_c4.begin(), c2_in_c4.end());
    CHECK(restriction_rank_check(c4, Subgroup{c4, c2_in_c4}, 3));
}

TEST_CASE("base change, restriction of scalars and twists are modules") {
    auto s3 = FiniteGroup::symmetric(3);
    auto F2 = FqField::make(2, 1);
    auto F4 = FqField::make(2, 2);
    auto reg = regular_module(s3, F2);

    auto bc = base_change(reg, F4);
    CHECK(verify_module(bc));
    CHECK(bc.dim == 6);

    auto recs4 = simple_modules(s3, F4);
    for (const auto& r : recs4) {
        auto tw = frobenius_twist(r.module);
        CHECK(verify_module(tw));
        auto res = restrict_scalars(r.module);
        CHECK(verify_module(res));
        CHECK(res.dim == 2 * r.module.dim);
        CHECK(res.field->e() == 1);
    }
}

TEST_CASE("composition length conservation across a suite") {
    std::vector<std::pair<GroupPtr, FieldPtr>> suite = {
        {FiniteGroup::symmetric(4), FqField::make(2, 1)},
        {FiniteGroup::symmetric(4), FqField::make(3, 1)},
        {FiniteGroup::alternating(4), FqField::make(2, 1)},
        {FiniteGroup::dihedral(4), FqField::make(2, 1)},
        {FiniteGroup::cyclic(12), FqField::make(5, 1)},
    };
    for (const auto& [g, f] : suite) {
        auto factors = chop(regular_module(g, f));
        CHECK(total_dim(factors) == g->order());
        for (const auto& [rec, mult] : factors) {
            CHECK(mult >= 1);
            CHECK(is_irreducible(rec.module));
        }
    }
}

TEST_CASE("simple_modules bound") {
    auto big = FiniteGroup::direct_product(FiniteGroup::alternating(5),
                                           FiniteGroup::alternating(5));
    CHECK_THROWS_AS(simple_modules(big, FqField::make(2, 1)), std::invalid_argument);
}

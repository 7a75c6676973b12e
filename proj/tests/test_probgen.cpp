#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "pgl/probgen.hpp"

using namespace pgl;

namespace {

GroupHom surjection_c4_c2() {
    auto c4 = FiniteGroup::cyclic(4);
    auto c2 = FiniteGroup::cyclic(2);
    std::vector<int> img(4);
    for (int x = 0; x < 4; ++x) img[x] = x % 2;
    GroupHom f{c4, c2, img};
    REQUIRE(f.verify());
    return f;
}

GroupHom surjection_to_trivial(const GroupPtr& h) {
    return GroupHom{h, FiniteGroup::trivial(), std::vector<int>(h->order(), 0)};
}

GroupHom first_projection_v4() {
    auto v4 = FiniteGroup::direct_product(FiniteGroup::cyclic(2),
                                          FiniteGroup::cyclic(2));
    auto c2 = FiniteGroup::cyclic(2);
    std::vector<int> img(4);
    for (int x = 0; x < 4; ++x) img[x] = x / 2;  // first coordinate
    GroupHom f{v4, c2, img};
    REQUIRE(f.verify());
    return f;
}

// Oracle: probability that k-tuples of R normally generate, by enumerating
// every tuple.  Requires |R|^k <= 10^6.
mpq_class brute_gen_probability(const GroupHom& f, int k) {
    auto r = f.kernel();
    long long total = 1;
    for (int i = 0; i < k; ++i) total *= r.order();
    REQUIRE(total <= 1000000);
    long long hits = 0;
    std::vector<int> tuple(k);
    for (long long code = 0; code < total; ++code) {
        long long rem = code;
        for (int i = 0; i < k; ++i) {
            tuple[i] = r.elems[rem % r.order()];
            rem /= r.order();
        }
        if (normal_closure(f.dom, tuple).order() == r.order()) ++hits;
    }
    mpq_class p(static_cast<long>(hits), static_cast<long>(total));
    p.canonicalize();
    return p;
}

}  // namespace

TEST_CASE("stable_lattice structure on the worked surjections") {
    SUBCASE("trivial kernel: one node") {
        auto c2 = FiniteGroup::cyclic(2);
        std::vector<int> img = {0, 1};
        auto l = stable_lattice(GroupHom{c2, c2, img});
        CHECK(l.nodes.size() == 1);
        CHECK(l.maximal.empty());
        CHECK(m_counts(l).empty());
        CHECK(exact_gen_probability(l, 3) == 1);
    }
    SUBCASE("C4 onto C2") {
        auto l = stable_lattice(surjection_c4_c2());
        CHECK(l.kernel.order() == 2);
        REQUIRE(l.nodes.size() == 2);
        CHECK(l.mobius[l.root] == 1);
        for (std::size_t i = 0; i < l.nodes.size(); ++i)
            if (static_cast<int>(i) != l.root) CHECK(l.mobius[i] == -1);
        CHECK(l.maximal.size() == 1);
        auto m = m_counts(l);
        CHECK(m == std::map<int, long long>{{2, 1}});
    }
    SUBCASE("V4 onto C2 by first projection") {
        auto l = stable_lattice(first_projection_v4());
        CHECK(l.kernel.order() == 2);
        CHECK(l.nodes.size() == 2);
        CHECK(m_counts(l) == std::map<int, long long>{{2, 1}});
    }
    SUBCASE("Q8 onto C2 with kernel C4") {
        // Q8 as the subgroup of SL(2,3) generated by i = [[0,-1],[1,0]] and
        // j = [[1,1],[1,-1]]
        auto F3m = FqField::make(3, 1);
        auto mat = [&](int a, int b, int c, int d) {
            Matrix m(F3m, 2, 2);
            m.at(0, 0) = a; m.at(0, 1) = b; m.at(1, 0) = c; m.at(1, 1) = d;
            return m;
        };
        std::vector<Matrix> elems = {Matrix::identity(F3m, 2)};
        std::vector<Matrix> gens = {mat(0, 2, 1, 0), mat(1, 1, 1, 2)};
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (const auto& g : gens) {
                Matrix prod = elems[i] * g;
                if (std::find(elems.begin(), elems.end(), prod) == elems.end())
                    elems.push_back(prod);
            }
        REQUIRE(elems.size() == 8);
        std::vector<int> tab(64);
        for (int a = 0; a < 8; ++a)
            for (int b = 0; b < 8; ++b) {
                Matrix prod = elems[a] * elems[b];
                tab[a * 8 + b] = static_cast<int>(
                    std::find(elems.begin(), elems.end(), prod) - elems.begin());
            }
        auto q8 = FiniteGroup::from_table(tab, {1, 2}, "Q8");
        REQUIRE(q8->order() == 8);
        REQUIRE(q8->element_order(1) == 4);
        // quotient by the cyclic subgroup generated by the first generator
        auto n = subgroup_generated(q8, {q8->gens()[0]});
        REQUIRE(n.order() == 4);
        auto q = quotient(q8, n);
        auto l = stable_lattice(q.proj);
        CHECK(l.kernel.order() == 4);
        CHECK(l.nodes.size() == 3);  // 1, C2, C4: all normal in Q8
        CHECK(m_counts(l) == std::map<int, long long>{{2, 1}});
    }
    SUBCASE("non-surjective input throws") {
        auto c4 = FiniteGroup::cyclic(4);
        std::vector<int> img(4, 0);
        CHECK_THROWS_AS(stable_lattice(GroupHom{c4, c4, img}),
                        std::invalid_argument);
    }
}

TEST_CASE("exact_gen_probability vs exhaustive tuple enumeration") {
    SUBCASE("C4 onto C2: P(k) = 1 - 2^{-k}") {
        auto f = surjection_c4_c2();
        auto l = stable_lattice(f);
        for (int k = 1; k <= 10; ++k) {
            mpz_class den = 1;
            for (int i = 0; i < k; ++i) den *= 2;
            CHECK(exact_gen_probability(l, k) == 1 - mpq_class(1) / mpq_class(den));
            if (k <= 10) CHECK(exact_gen_probability(l, k) == brute_gen_probability(f, k));
        }
    }
    SUBCASE("V4 onto trivial: P(k) = 1 - 3 2^{-k} + 2 4^{-k}") {
        auto v4 = FiniteGroup::direct_product(FiniteGroup::cyclic(2),
                                              FiniteGroup::cyclic(2));
        auto f = surjection_to_trivial(v4);
        auto l = stable_lattice(f);
        CHECK(l.maximal.size() == 3);
        for (int k = 1; k <= 8; ++k) {
            mpq_class expect = 1 - mpq_class(3, 1 << k) + mpq_class(2, 1L << (2 * k));
            expect.canonicalize();
            CHECK(exact_gen_probability(l, k) == expect);
            CHECK(exact_gen_probability(l, k) == brute_gen_probability(f, k));
        }
    }
    SUBCASE("nonabelian kernel: S3 onto trivial") {
        auto s3 = FiniteGroup::symmetric(3);
        auto f = surjection_to_trivial(s3);
        auto l = stable_lattice(f);
        for (int k = 1; k <= 6; ++k)
            CHECK(exact_gen_probability(l, k) == brute_gen_probability(f, k));
    }
    SUBCASE("A4 onto C3") {
        auto a4 = FiniteGroup::alternating(4);
        auto v = normal_closure(a4, {[&] {
            for (int x = 1; x < 12; ++x)
                if (a4->element_order(x) == 2) return x;
            return 0;
        }()});
        REQUIRE(v.order() == 4);
        auto q = quotient(a4, v);
        auto l = stable_lattice(q.proj);
        for (int k = 1; k <= 5; ++k)
            CHECK(exact_gen_probability(l, k) == brute_gen_probability(q.proj, k));
    }
}

TEST_CASE("Monte Carlo estimator within three standard errors") {
    auto run = [](const GroupHom& f, int k) {
        auto l = stable_lattice(f);
        double exact = mpq_class(exact_gen_probability(l, k)).get_d();
        auto mc = monte_carlo_gen_probability(f, k, 100000, 0x5eedULL);
        double err = std::max(mc.stderr_est, 1e-12);
        if (std::abs(mc.estimate - exact) > 3 * err) {
            // tolerated flake: retry once on a second fixed seed
            mc = monte_carlo_gen_probability(f, k, 100000, 0xf00dULL);
            err = std::max(mc.stderr_est, 1e-12);
        }
        CHECK(std::abs(mc.estimate - exact) <= 3 * err);
    };
    run(surjection_c4_c2(), 2);
    run(surjection_to_trivial(FiniteGroup::direct_product(
            FiniteGroup::cyclic(2), FiniteGroup::cyclic(2))),
        1);
    run(surjection_to_trivial(FiniteGroup::symmetric(3)), 2);

    SUBCASE("trivial kernel estimates exactly one") {
        auto c2 = FiniteGroup::cyclic(2);
        std::vector<int> img = {0, 1};
        auto mc = monte_carlo_gen_probability(GroupHom{c2, c2, img}, 2, 1000, 7);
        CHECK(mc.estimate == 1.0);
        CHECK(mc.stderr_est == 0.0);
    }
    SUBCASE("determinism: same seed, same estimate") {
        auto f = surjection_c4_c2();
        auto a = monte_carlo_gen_probability(f, 2, 20000, 42);
        auto b = monte_carlo_gen_probability(f, 2, 20000, 42);
        CHECK(a.estimate == b.estimate);
    }
}

TEST_CASE("pfr sum bound and maximal-node independence") {
    auto l1 = stable_lattice(surjection_c4_c2());
    // single maximal node of index 2 at k = 1: equality 1/2 <= 1/2
    CHECK(exact_gen_probability(l1, 1) == mpq_class(1, 2));
    CHECK(pfr_sum_bound_check(l1, 1));
    CHECK(independence_check(l1));  // vacuous

    auto v4 = FiniteGroup::direct_product(FiniteGroup::cyclic(2),
                                          FiniteGroup::cyclic(2));
    auto l2 = stable_lattice(surjection_to_trivial(v4));
    for (int k = 1; k <= 6; ++k) CHECK(pfr_sum_bound_check(l2, k));
    CHECK(independence_check(l2));

    auto c6 = FiniteGroup::cyclic(6);
    auto l3 = stable_lattice(surjection_to_trivial(c6));
    CHECK(m_counts(l3) == std::map<int, long long>{{2, 1}, {3, 1}});
    CHECK(independence_check(l3));
    for (int k = 1; k <= 6; ++k) CHECK(pfr_sum_bound_check(l3, k));

    auto s3 = FiniteGroup::symmetric(3);
    auto l4 = stable_lattice(surjection_to_trivial(s3));
    CHECK(independence_check(l4));
    for (int k = 1; k <= 6; ++k) CHECK(pfr_sum_bound_check(l4, k));
}

TEST_CASE("stable_to_extension_map records and bucket audit") {
    SUBCASE("C4 onto C2: the unique maximal node gives C4 as extension") {
        auto m = stable_to_extension_map(stable_lattice(surjection_c4_c2()));
        REQUIRE(m.records.size() == 1);
        const auto& r = m.records[0];
        CHECK(r.total->order() == 4);
        bool has_order_4 = r.total->element_order(1) == 4 ||
                           r.total->element_order(2) == 4 ||
                           r.total->element_order(3) == 4;
        CHECK(has_order_4);
        CHECK(r.degree == 2);
        CHECK(r.minimal);
        CHECK(r.abelian);
        CHECK_FALSE(r.split);
        CHECK(r.proj.verify());
        CHECK(m.bucket_bound_ok);
    }
    SUBCASE("V4 onto C2: split extension") {
        auto m = stable_to_extension_map(stable_lattice(first_projection_v4()));
        REQUIRE(m.records.size() == 1);
        CHECK(m.records[0].split);
        CHECK(m.records[0].minimal);
        CHECK(m.bucket_bound_ok);
    }
    SUBCASE("(C2)^3 onto C2^2: each iso class hit at most 2^d times") {
        auto c2 = FiniteGroup::cyclic(2);
        auto h = FiniteGroup::direct_product(FiniteGroup::direct_product(c2, c2), c2);
        auto v4 = FiniteGroup::direct_product(c2, c2);
        // drop the last coordinate
        std::vector<int> img(8);
        for (int x = 0; x < 8; ++x) img[x] = x / 2;
        GroupHom f{h, v4, img};
        REQUIRE(f.verify());
        auto l = stable_lattice(f);
        CHECK(l.maximal.size() == 1);  // kernel has order 2
        auto m = stable_to_extension_map(l);
        CHECK(m.bucket_bound_ok);

        // richer case: (C2)^3 onto C2, kernel V4 with three maximal nodes
        std::vector<int> img2(8);
        for (int x = 0; x < 8; ++x) img2[x] = x / 4;
        GroupHom f2{h, c2, img2};
        REQUIRE(f2.verify());
        auto l2 = stable_lattice(f2);
        CHECK(l2.maximal.size() == 3);
        auto m2 = stable_to_extension_map(l2);
        CHECK(m2.records.size() == 3);
        // all three give C2 x C2 over C2: one bucket of size 3 <= 2^d, d = 3
        CHECK(m2.bucket == std::vector<int>{0, 0, 0});
        CHECK(m2.bucket_bound_ok);
    }
}

TEST_CASE("ideal census and the sandwich bounds") {
    SUBCASE("C2 over F_2: only the augmentation ideal") {
        auto c = ideal_census(FiniteGroup::cyclic(2), 2, 2);
        CHECK(c.m == std::vector<long long>{1, 0});
        CHECK(c.r == std::vector<long long>{1, 0});
        CHECK(c.sandwich_ok);
    }
    SUBCASE("C2 over F_3: two linear characters") {
        auto c = ideal_census(FiniteGroup::cyclic(2), 3, 2);
        CHECK(c.m == std::vector<long long>{2, 0});
        CHECK(c.sandwich_ok);
    }
    SUBCASE("S3 over F_2") {
        auto c = ideal_census(FiniteGroup::symmetric(3), 2, 3);
        CHECK(c.r == std::vector<long long>{1, 1, 0});
        CHECK(c.m[0] == 1);
        CHECK(c.m[1] >= 1);
        CHECK(c.m[1] <= 4);
        CHECK(c.sandwich_ok);
    }
    SUBCASE("suite sweep") {
        std::vector<GroupPtr> groups = {
            FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(6),
            FiniteGroup::symmetric(3), FiniteGroup::dihedral(4),
            FiniteGroup::alternating(4)};
        for (const auto& g : groups)
            for (std::uint32_t p : {2u, 3u}) {
                auto c = ideal_census(g, p, 4);
                CHECK(c.sandwich_ok);
            }
    }
}

TEST_CASE("module generation probabilities") {
    auto F2 = FqField::make(2, 1);
    auto F3 = FqField::make(3, 1);

    SUBCASE("simple modules: P(1) = 1 - p^{-n}") {
        auto s3 = FiniteGroup::symmetric(3);
        for (const auto& rec : simple_modules(s3, F2)) {
            mpz_class pn = 1;
            for (int j = 0; j < rec.module.dim; ++j) pn *= 2;
            CHECK(module_gen_probability(rec.module, 1) ==
                  1 - mpq_class(1) / mpq_class(pn));
        }
    }
    SUBCASE("trivial group, F_2^2: spanning pairs") {
        auto t = FiniteGroup::trivial();
        GModule m{t, F2, 2, {}};
        CHECK(module_gen_probability(m, 2) == mpq_class(3, 8));  // 6 of 16 pairs span
    }
    SUBCASE("regular F_2[C2] cross-checked exhaustively") {
        auto c2 = FiniteGroup::cyclic(2);
        auto reg = regular_module(c2, F2);
        auto acts = all_element_actions(reg);
        for (int k = 1; k <= 4; ++k) {
            // exhaustive: which k-tuples of vectors generate as a module?
            long long total = 1;
            for (int i = 0; i < k; ++i) total *= 4;
            long long hits = 0;
            for (long long code = 0; code < total; ++code) {
                EchelonBasis span(F2, 2);
                long long rem = code;
                for (int i = 0; i < k; ++i) {
                    std::vector<FqElem> v = {static_cast<FqElem>(rem % 2),
                                             static_cast<FqElem>((rem / 2) % 2)};
                    rem /= 4;
                    for (const auto& a : acts) span.add(a.apply(v));
                }
                if (span.rank() == 2) ++hits;
            }
            mpq_class expect(static_cast<long>(hits), static_cast<long>(total));
            expect.canonicalize();
            CHECK(module_gen_probability(reg, k) == expect);
        }
    }
    SUBCASE("regular F_3[C3]") {
        auto c3 = FiniteGroup::cyclic(3);
        auto reg = regular_module(c3, F3);
        auto p1 = module_gen_probability(reg, 1);
        CHECK(p1 > 0);
        CHECK(p1 < 1);
    }
    SUBCASE("census lower bound for the regular module") {
        for (std::uint32_t p : {2u, 3u}) {
            CHECK(ideal_sum_bound_check(FiniteGroup::cyclic(2), p, 1));
            CHECK(ideal_sum_bound_check(FiniteGroup::cyclic(2), p, 2));
            CHECK(ideal_sum_bound_check(FiniteGroup::cyclic(3), p, 1));
            CHECK(ideal_sum_bound_check(FiniteGroup::cyclic(3), p, 2));
        }
        CHECK(ideal_sum_bound_check(FiniteGroup::symmetric(3), 2, 2));
    }
}

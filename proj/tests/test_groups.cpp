#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "pgl/group.hpp"

using namespace pgl;

TEST_CASE("basic constructors") {
    auto t = FiniteGroup::trivial();
    CHECK(t->order() == 1);
    CHECK(FiniteGroup::cyclic(1)->order() == 1);

    auto s3 = FiniteGroup::symmetric(3);
    CHECK(s3->order() == 6);
    CHECK(conjugacy_classes(*s3).size() == 3);

    CHECK(FiniteGroup::symmetric(4)->order() == 24);
    CHECK(FiniteGroup::symmetric(5)->order() == 120);
    CHECK(FiniteGroup::alternating(4)->order() == 12);
    CHECK(FiniteGroup::alternating(5)->order() == 60);
    CHECK(FiniteGroup::alternating(6)->order() == 360);
    CHECK(FiniteGroup::dihedral(4)->order() == 8);
    CHECK(FiniteGroup::psl27()->order() == 168);
}

TEST_CASE("semidirect C3 x| C2 is S3") {
    auto c3 = FiniteGroup::cyclic(3);
    auto c2 = FiniteGroup::cyclic(2);
    std::vector<Perm> action = {{0, 1, 2}, {0, 2, 1}};  // identity, inversion
    auto g = FiniteGroup::semidirect(c3, c2, action, "C3:C2");
    CHECK(g->order() == 6);
    CHECK(isomorphic(g, FiniteGroup::symmetric(3)));

    // action must be a homomorphism into Aut(K)
    std::vector<Perm> bad = {{0, 1, 2}, {1, 2, 0}};  // translation, not an automorphism
    CHECK_THROWS(FiniteGroup::semidirect(c3, c2, bad, "bad"));
}

TEST_CASE("direct product order and labels") {
    auto g = FiniteGroup::direct_product(FiniteGroup::symmetric(3), FiniteGroup::cyclic(2));
    CHECK(g->order() == 12);
}

TEST_CASE("conjugacy classes") {
    auto c6 = FiniteGroup::cyclic(6);
    for (const auto& cls : conjugacy_classes(*c6)) CHECK(cls.size() == 1);

    auto s3 = FiniteGroup::symmetric(3);
    std::multiset<std::size_t> sizes;
    for (const auto& cls : conjugacy_classes(*s3)) sizes.insert(cls.size());
    CHECK(sizes == std::multiset<std::size_t>{1, 2, 3});

    auto a5 = FiniteGroup::alternating(5);
    std::multiset<std::size_t> a5sizes;
    for (const auto& cls : conjugacy_classes(*a5)) a5sizes.insert(cls.size());
    CHECK(a5sizes == std::multiset<std::size_t>{1, 12, 12, 15, 20});
    // class sizes divide |G| applies to centralizer orders: |cls| divides |G|
    for (const auto& cls : conjugacy_classes(*a5)) CHECK(60 % cls.size() == 0);
}

TEST_CASE("p-regular class counts") {
    auto s3 = FiniteGroup::symmetric(3);
    CHECK(p_regular_class_count(*s3, 5) == 3);  // p coprime to |G|: all classes
    CHECK(p_regular_class_count(*s3, 3) == 2);  // identity + transpositions
    CHECK(p_regular_class_count(*s3, 2) == 2);

    auto a5 = FiniteGroup::alternating(5);
    CHECK(p_regular_class_count(*a5, 2) == 4);  // orders 1, 3, 5, 5
}

TEST_CASE("subgroups_of_index") {
    auto c6 = FiniteGroup::cyclic(6);
    auto idx1 = subgroups_of_index(c6, 1);
    CHECK(idx1.a_k() == 1);
    CHECK(idx1.subgroups[0].order() == 6);

    auto idx2 = subgroups_of_index(c6, 2);
    CHECK(idx2.a_k() == 1);
    CHECK(idx2.subgroups[0].order() == 3);

    auto v4 = FiniteGroup::dihedral(2);  // C2 x C2
    auto v4idx2 = subgroups_of_index(v4, 2);
    CHECK(v4idx2.a_k() == 3);
    CHECK(v4idx2.conj_k() == 3);

    // Lagrange across a non-abelian example.
    auto s4 = FiniteGroup::symmetric(4);
    for (const auto& s : all_subgroups(s4)) CHECK(24 % s.order() == 0);
    CHECK(all_subgroups(s4).size() == 30);
}

TEST_CASE("min_generators") {
    CHECK(min_generators(*FiniteGroup::trivial()) == 0);
    CHECK(min_generators(*FiniteGroup::cyclic(6)) == 1);
    auto s3 = FiniteGroup::symmetric(3);
    // oracle: max element order 3 < 6, so no single generator
    int maxord = 0;
    for (int x = 0; x < 6; ++x) maxord = std::max(maxord, s3->element_order(x));
    CHECK(maxord == 3);
    CHECK(min_generators(*s3) == 2);
    CHECK(min_generators(*FiniteGroup::dihedral(2)) == 2);
    CHECK(min_generators(*FiniteGroup::alternating(5)) == 2);
}

TEST_CASE("d(G x H) <= d(G) + d(H) on suite pairs") {
    std::vector<GroupPtr> gs = {FiniteGroup::cyclic(2), FiniteGroup::cyclic(6),
                                FiniteGroup::symmetric(3), FiniteGroup::dihedral(2)};
    for (const auto& a : gs)
        for (const auto& b : gs) {
            auto p = FiniteGroup::direct_product(a, b);
            CHECK(min_generators(*p) <= min_generators(*a) + min_generators(*b));
        }
}

TEST_CASE("automorphism groups") {
    auto c2aut = automorphism_group(FiniteGroup::cyclic(2));
    CHECK(c2aut.group->order() == 1);

    auto s3aut = automorphism_group(FiniteGroup::symmetric(3));
    CHECK(s3aut.group->order() == 6);
    CHECK(s3aut.out_order() == 1);

    auto a5 = FiniteGroup::alternating(5);
    auto a5aut = automorphism_group(a5);
    CHECK(a5aut.group->order() == 120);
    CHECK(a5aut.inner.order() == 60);
    CHECK(a5aut.out_order() == 2);
    // every listed automorphism is a bijective homomorphism
    for (const auto& p : a5aut.perms) {
        GroupHom h{a5, a5, p};
        CHECK(h.is_injective());
    }
    // exhaustive homomorphism check on a few
    GroupHom h0{a5, a5, a5aut.perms[1]};
    CHECK(h0.verify());
}

TEST_CASE("minimal normal subgroups") {
    auto a5 = FiniteGroup::alternating(5);
    auto mins = minimal_normal_subgroups(a5);
    REQUIRE(mins.size() == 1);
    CHECK(mins[0].order() == 60);
    CHECK(is_simple(*a5));

    auto v4 = FiniteGroup::dihedral(2);
    auto vm = minimal_normal_subgroups(v4);
    CHECK(vm.size() == 3);
    for (const auto& s : vm) CHECK(s.order() == 2);
}

TEST_CASE("minimal normal subgroups of A5 x A5 are the two factors") {
    auto a5 = FiniteGroup::alternating(5);
    auto g = FiniteGroup::direct_product(a5, a5);
    auto mins = minimal_normal_subgroups(g);
    REQUIRE(mins.size() == 2);
    for (const auto& s : mins) {
        CHECK(s.order() == 60);
        auto sg = subgroup_as_group(s);
        CHECK(isomorphic(sg.group, a5));
    }
}

TEST_CASE("quotients") {
    auto s3 = FiniteGroup::symmetric(3);
    auto q1 = quotient(s3, Subgroup{s3, {0}});
    CHECK(q1.group->order() == 6);
    CHECK(q1.proj.is_injective());

    std::vector<int> all(6);
    for (int i = 0; i < 6; ++i) all[i] = i;
    auto qg = quotient(s3, Subgroup{s3, all});
    CHECK(qg.group->order() == 1);

    // S3 / A3 = C2
    std::vector<int> a3;
    for (int x = 0; x < 6; ++x)
        if (s3->element_order(x) % 2 == 1) a3.push_back(x);
    REQUIRE(a3.size() == 3);
    auto q = quotient(s3, Subgroup{s3, a3});
    CHECK(q.group->order() == 2);
    CHECK(isomorphic(q.group, FiniteGroup::cyclic(2)));
    CHECK(q.proj.is_surjective());
    CHECK(q.proj.kernel().elems == a3);
    CHECK(q.proj.verify());
}

TEST_CASE("aut_of_power_structure") {
    auto a5 = FiniteGroup::alternating(5);

    auto k1 = aut_of_power_structure(a5, 1);
    CHECK(k1.order == 120);
    CHECK(k1.group->order() == 120);
    CHECK(k1.injection_verified);

    auto k2 = aut_of_power_structure(a5, 2);
    CHECK(k2.order == 28800);
    CHECK(k2.injection_verified);
    CHECK(k2.hom_on_generators);

    CHECK_THROWS(aut_of_power_structure(FiniteGroup::cyclic(3), 1));  // abelian
    CHECK_THROWS(aut_of_power_structure(FiniteGroup::symmetric(4), 1));  // not simple
}

TEST_CASE("hardcoded simple group table") {
    const auto& table = simple_group_table();
    REQUIRE(table.size() == 3);
    for (const auto& e : table) {
        auto g = e.construct();
        CHECK(g->order() == e.order);
        CHECK(is_simple(*g));
        CHECK(!g->is_abelian());
    }
    CHECK(table[0].out_order == 2);   // A5
    CHECK(table[1].out_order == 2);   // PSL(2,7)
    CHECK(table[2].out_order == 4);   // A6
}

TEST_CASE("normal closures and homs") {
    auto s3 = FiniteGroup::symmetric(3);
    // normal closure of a transposition is all of S3
    int transposition = -1;
    for (int x = 1; x < 6; ++x)
        if (s3->element_order(x) == 2) { transposition = x; break; }
    CHECK(normal_closure(s3, {transposition}).order() == 6);

    // all homs C2 -> S3: identity plus the three transpositions
    auto homs = all_homs(FiniteGroup::cyclic(2), s3);
    CHECK(homs.size() == 4);
    for (const auto& h : homs) CHECK(h.verify());
}

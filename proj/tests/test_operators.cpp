#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

#include "clusterforge/clusters.hpp"
#include "clusterforge/ground.hpp"
#include "clusterforge/operators.hpp"
#include "clusterforge/random_families.hpp"

namespace cf = clusterforge;

TEST_CASE("link collects the co-sets at a point") {
    cf::Params p(3, 2, 2);
    cf::Family f = cf::make_family(p, {{1, 2}, {1, 3}, {2, 3}});
    cf::LinkFamily l = cf::link(f, 1);
    CHECK(l.x == 1);
    CHECK(l.members == std::vector<cf::KSet>{cf::KSet::of({2}), cf::KSet::of({3})});
    CHECK(l.contains(cf::KSet::of({2})));
    CHECK_FALSE(l.contains(cf::KSet::of({1})));

    cf::Params p6(6, 3, 3);
    CHECK(cf::link(cf::star(p6, 2), 2).size() == cf::binom(5, 2));
    CHECK(cf::link(cf::Family{p6, {}}, 1).size() == 0);
    CHECK_THROWS_AS(cf::link(f, 0), std::invalid_argument);
    CHECK_THROWS_AS(cf::link(f, 4), std::invalid_argument);
}

TEST_CASE("link size equals the containing split part") {
    cf::Params p(6, 3, 3);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        cf::Family f = cf::random_family(p, 0.4, rng);
        for (int x = 1; x <= p.n; ++x) {
            auto [with_x, without_x] = cf::split(f, x);
            CHECK(cf::link(f, x).size() == with_x.size());
            CHECK(with_x.size() + without_x.size() == f.size());
        }
    }
}

TEST_CASE("upset lists the extensions of a sub-set") {
    cf::Params p(3, 2, 2);
    cf::Family f = cf::make_family(p, {{1, 2}, {1, 3}, {2, 3}});
    cf::Family up = cf::upset(f, cf::KSet::of({1}));
    CHECK(up.size() == 2);
    CHECK(up.contains(cf::KSet::of({1, 2})));
    CHECK(up.contains(cf::KSet::of({1, 3})));

    cf::Params p5(5, 2, 2);
    CHECK(cf::upset(cf::make_family(p5, {{1, 2}, {3, 4}}), cf::KSet::of({5})).empty());
    CHECK(cf::upset(cf::full_family(p5), cf::KSet::of({2})).size() == 4);
    CHECK_THROWS_AS(cf::upset(f, cf::KSet::of({1, 2})), std::invalid_argument);
}

TEST_CASE("alpha finds singly exchangeable elements") {
    cf::Params p(6, 3, 3);
    cf::Family f = cf::make_family(p, {{1, 2, 3}, {1, 2, 4}, {1, 5, 6}});
    cf::AlphaSet a = cf::alpha(f, cf::KSet::of({1, 2, 3}));
    CHECK(a.base == cf::KSet::of({1, 2, 3}));
    CHECK(a.members == cf::KSet::of({3}));

    // in a star at x, every element except x is removable
    cf::Family st = cf::star(p, 2);
    for (cf::KSet b : st.members) {
        cf::AlphaSet sa = cf::alpha(st, b);
        CHECK(sa.members == b.without(2));
    }

    cf::Family single = cf::make_family(p, {{1, 2, 3}});
    CHECK(cf::alpha(single, cf::KSet::of({1, 2, 3})).members.empty());
    CHECK_THROWS_AS(cf::alpha(f, cf::KSet::of({4, 5, 6})), std::invalid_argument);
}

TEST_CASE("split partitions at a point") {
    cf::Params p(5, 2, 2);
    auto [in_star, out_star] = cf::split(cf::star(p, 1), 1);
    CHECK(in_star == cf::star(p, 1));
    CHECK(out_star.empty());

    cf::Params p4(4, 2, 2);
    auto [with2, without2] = cf::split(cf::full_family(p4), 2);
    CHECK(with2.size() == 3);
    CHECK(without2.size() == 3);

    auto [e1, e2] = cf::split(cf::Family{p, {}}, 3);
    CHECK(e1.empty());
    CHECK(e2.empty());
}

TEST_CASE("r_family is empty when no member has a large enough alpha") {
    cf::Params p(7, 3, 3);
    cf::Family f = cf::make_family(p, {{2, 3, 4}});
    CHECK(cf::r_family(f, 1, 3).size() == 0);
}

TEST_CASE("r_family collects sets meeting a member in an exchangeable sub-set") {
    cf::Params p(7, 3, 3);
    // alpha of {2,3,4} is {3} (via {2,4,5}); alpha of {2,4,5} is {3}?: {2,4,5}-{2,3,4}={5}
    cf::Family f = cf::make_family(p, {{2, 3, 4}, {2, 4, 5}});
    cf::LinkFamily r = cf::r_family(f, 1, 3);
    std::vector<cf::KSet> expect = {cf::KSet::of({3, 5}), cf::KSet::of({3, 6}),
                                    cf::KSet::of({5, 6}), cf::KSet::of({3, 7}),
                                    cf::KSet::of({5, 7})};
    std::sort(expect.begin(), expect.end());
    CHECK(r.members == expect);
    for (cf::KSet s : r.members) CHECK_FALSE(s.contains(1));
}

TEST_CASE("r_family at d=2 asks for disjointness") {
    cf::Params p(6, 2, 2);
    cf::Family f = cf::make_family(p, {{2, 3}});
    // D must avoid x=1 and be disjoint from {2,3}: 2-subsets of {4,5,6}
    cf::LinkFamily r = cf::r_family(f, 1, 2);
    CHECK(r.size() == 3);
    for (cf::KSet s : r.members) {
        CHECK((s & cf::KSet::of({2, 3})).empty());
        CHECK_FALSE(s.contains(1));
    }
}

TEST_CASE("s_family removes non-exchangeable elements of avoiding members") {
    cf::Params p(7, 3, 3);
    cf::Family f = cf::make_family(p, {{2, 3, 4}});
    cf::LinkFamily s = cf::s_family(f, 1);
    std::vector<cf::KSet> expect = {cf::KSet::of({2, 3}), cf::KSet::of({2, 4}),
                                    cf::KSet::of({3, 4})};
    CHECK(s.members == expect);

    CHECK(cf::s_family(cf::star(p, 2), 2).size() == 0);
}

TEST_CASE("s_family members extend uniquely") {
    cf::Params p(7, 3, 3);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        cf::Family f = cf::random_cluster_free_family(p, true, 0.3, 50, rng).family;
        for (int x = 1; x <= p.n; ++x) {
            for (cf::KSet dset : cf::s_family(f, x).members)
                CHECK(cf::upset(f, dset).size() == 1);
        }
    }
}

TEST_CASE("link avoids the r and s families on simple-cluster-free input") {
    cf::Params p(7, 3, 3);
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        cf::Family f = cf::random_cluster_free_family(p, true, 0.3, 50, rng).family;
        for (int x = 1; x <= p.n; ++x) {
            cf::LinkFamily l = cf::link(f, x);
            for (cf::KSet dset : cf::s_family(f, x).members) CHECK_FALSE(l.contains(dset));
            for (cf::KSet dset : cf::r_family(f, x, p.d).members) CHECK_FALSE(l.contains(dset));
        }
    }
}

TEST_CASE("s_family size matches the sum of non-exchangeable counts") {
    cf::Params p(7, 3, 3);
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 60; ++trial) {
        cf::Family f = cf::random_cluster_free_family(p, true, 0.3, 50, rng).family;
        for (int x = 1; x <= p.n; ++x) {
            long long total = 0;
            auto [with_x, without_x] = cf::split(f, x);
            for (cf::KSet b : without_x.members)
                total += b.size() - cf::alpha(f, b).members.size();
            CHECK(cf::s_family(f, x).size() == total);
        }
    }
}

TEST_CASE("link_star unions unique extensions with the marked link") {
    cf::Params p(5, 2, 2);
    cf::Family f = cf::full_family(p);

    // marked family = everything: the starred link is the whole link
    CHECK(cf::link_star(f, f, 1).members == cf::link(f, 1).members);

    // marked family empty on the full family: every co-set has 3 extensions
    CHECK(cf::link_star(f, cf::Family{p, {}}, 1).size() == 0);

    // marked family empty on a star: only unique extensions remain; at the
    // center every co-set {y} extends only to {1,y}
    cf::Family st = cf::star(p, 1);
    cf::LinkFamily at_center = cf::link_star(st, cf::Family{p, {}}, 1);
    CHECK(at_center.size() == 4);
    for (cf::KSet dset : at_center.members) CHECK(cf::upset(st, dset).size() == 1);
    // away from the center the only co-set {1} has four extensions
    CHECK(cf::link_star(st, cf::Family{p, {}}, 2).size() == 0);

    cf::Family other = cf::make_family(p, {{4, 5}});
    CHECK_THROWS_AS(cf::link_star(st, other, 1), std::invalid_argument);
}

TEST_CASE("summed link sizes equal k times the family size") {
    cf::Params p3(3, 2, 2);
    CHECK(cf::check_sum_identity(cf::make_family(p3, {{1, 2}, {1, 3}, {2, 3}})) ==
          std::pair<long long, long long>{6, 6});
    cf::Params p5(5, 2, 2);
    CHECK(cf::check_sum_identity(cf::full_family(p5)) ==
          std::pair<long long, long long>{20, 20});
    CHECK(cf::check_sum_identity(cf::Family{p5, {}}) ==
          std::pair<long long, long long>{0, 0});

    cf::Params p(7, 3, 3);
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        auto [lhs, rhs] = cf::check_sum_identity(cf::random_family(p, 0.5, rng));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("unique extension count obeys its closed-form bound") {
    cf::Params p(5, 2, 2);
    cf::UniqueExtensionBound full = cf::unique_extension_bound(cf::full_family(p));
    CHECK(full.count_unique == 0);
    CHECK(full.bound == cf::Rational::of(0));
    CHECK(full.holds());

    cf::UniqueExtensionBound empty = cf::unique_extension_bound(cf::Family{p, {}});
    CHECK(empty.count_unique == 0);
    CHECK(empty.bound == cf::Rational::of(20, 3));

    cf::UniqueExtensionBound one = cf::unique_extension_bound(cf::make_family(p, {{1, 2}}));
    CHECK(one.count_unique == 2);
    CHECK(one.bound == cf::Rational::of(6));
    CHECK(one.holds());

    cf::Params p7(7, 3, 3);
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 50; ++trial)
        CHECK(cf::unique_extension_bound(cf::random_family(p7, 0.5, rng)).holds());
}

TEST_CASE("link of family and complement partition the point's co-sets") {
    cf::Params p(7, 3, 3);
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        cf::Family f = cf::random_family(p, 0.5, rng);
        cf::Family fc = cf::complement_family(f);
        for (int x = 1; x <= p.n; ++x)
            CHECK(cf::link(f, x).size() + cf::link(fc, x).size() == cf::binom(6, 2));
    }
}

TEST_CASE("link cluster disjunction check") {
    cf::Params p6(6, 3, 3);
    cf::Family st = cf::star(p6, 1);
    cf::Family none{p6, {}};
    for (int x = 1; x <= p6.n; ++x) CHECK(cf::check_link_clusters(st, none, x, 3).ok());

    cf::Family full = cf::full_family(p6);
    for (int x = 1; x <= p6.n; ++x) CHECK(cf::check_link_clusters(full, full, x, 3).ok());

    // marked family too small: a cluster of the full family escapes it
    cf::ViolationReport bad = cf::check_link_clusters(full, none, 1, 3);
    CHECK(bad.kind == cf::ViolationReport::Kind::hypothesis_failure);
}

TEST_CASE("pairwise intersection check") {
    cf::Params p(7, 3, 3);
    CHECK(cf::check_pair_intersections(cf::star(p, 1), 3).ok());
    CHECK(cf::check_pair_intersections(cf::make_family(p, {{1, 2, 3}}), 3).ok());

    // a simple cluster in the input is a hypothesis failure
    cf::Family with_cluster = cf::make_family(p, {{1, 2, 3}, {1, 4, 5}, {2, 3, 6}});
    cf::ViolationReport rep = cf::check_pair_intersections(with_cluster, 3);
    CHECK(rep.kind == cf::ViolationReport::Kind::hypothesis_failure);
}

TEST_CASE("averaged binomial lower bound") {
    CHECK(cf::avg_binom_bound({3, 1}, 2) == std::pair<long long, long long>{3, 2});
    CHECK(cf::avg_binom_bound({2, 2, 2}, 1) == std::pair<long long, long long>{6, 6});
    CHECK(cf::avg_binom_bound({5, 0}, 3) == std::pair<long long, long long>{10, 0});
    CHECK_THROWS_AS(cf::avg_binom_bound({}, 1), std::invalid_argument);

    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<long long> rs(1 + rng() % 8);
        for (auto& r : rs) r = static_cast<long long>(rng() % 12);
        long long l = static_cast<long long>(rng() % 6);
        auto [lhs, rhs] = cf::avg_binom_bound(rs, l);
        CHECK(lhs >= rhs);
    }
}

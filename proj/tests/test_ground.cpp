#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "clusterforge/ground.hpp"

namespace cf = clusterforge;

TEST_CASE("params validate their ranges") {
    CHECK_NOTHROW(cf::Params(5, 2, 2));
    CHECK_NOTHROW(cf::Params(64, 32, 2));
    CHECK_THROWS_AS(cf::Params(0, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(cf::Params(65, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(cf::Params(5, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(cf::Params(5, 2, 3), std::invalid_argument);  // d > k
    CHECK_THROWS_AS(cf::Params(4, 5, 2), std::invalid_argument);  // k > n
}

TEST_CASE("regime predicates") {
    CHECK(cf::Params(5, 2, 2).cluster_regime_ok());   // 5*1 >= 4
    CHECK(cf::Params(6, 3, 3).cluster_regime_ok());   // 6*2 >= 9
    CHECK(cf::Params(5, 3, 3).cluster_regime_ok());   // 5*2 >= 9
    CHECK_FALSE(cf::Params(4, 3, 3).cluster_regime_ok());  // 8 < 9
    CHECK(cf::Params(4, 2, 2).weighted_regime_ok());
    CHECK_FALSE(cf::Params(3, 2, 2).weighted_regime_ok());
    CHECK(cf::Params(7, 3, 3).simple_bound_regime_ok());   // 7 >= 9-6+4
    CHECK_FALSE(cf::Params(6, 3, 3).simple_bound_regime_ok());
}

TEST_CASE("kset construction and element access") {
    cf::KSet s = cf::KSet::of({3, 1, 2});
    CHECK(s.size() == 3);
    CHECK(s.contains(1));
    CHECK(s.contains(3));
    CHECK_FALSE(s.contains(4));
    CHECK(s.elements() == std::vector<int>{1, 2, 3});
    CHECK(s.str() == "{1,2,3}");
    CHECK(s.min_element() == 1);
    CHECK(cf::KSet{}.empty());
    CHECK(cf::KSet{}.min_element() == 0);
    CHECK_THROWS_AS(cf::KSet::of({0}), std::invalid_argument);
    CHECK_THROWS_AS(cf::KSet::of({65}), std::invalid_argument);
}

TEST_CASE("kset algebra") {
    cf::KSet a = cf::KSet::of({1, 2, 3});
    cf::KSet b = cf::KSet::of({2, 3, 4});
    CHECK((a & b) == cf::KSet::of({2, 3}));
    CHECK((a | b) == cf::KSet::of({1, 2, 3, 4}));
    CHECK((a - b) == cf::KSet::of({1}));
    CHECK(a.with(5) == cf::KSet::of({1, 2, 3, 5}));
    CHECK(a.without(2) == cf::KSet::of({1, 3}));
    CHECK(cf::KSet::of({2, 3}).subset_of(a));
    CHECK_FALSE(b.subset_of(a));
    // ordering is numeric on the bit mask: {2,3} = 6 precedes {1,4} = 9
    CHECK(cf::KSet::of({2, 3}) < cf::KSet::of({1, 4}));
}

TEST_CASE("make_family sorts, deduplicates, and validates") {
    cf::Params p(5, 2, 2);
    cf::Family f = cf::make_family(p, {{2, 3}, {1, 2}, {2, 3}});
    CHECK(f.size() == 2);
    CHECK(f.members[0] == cf::KSet::of({1, 2}));
    CHECK(f.members[1] == cf::KSet::of({2, 3}));
    CHECK(f.contains(cf::KSet::of({2, 3})));
    CHECK_FALSE(f.contains(cf::KSet::of({4, 5})));
    CHECK_THROWS_AS(cf::make_family(p, {{1, 2, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(cf::make_family(p, {{1, 6}}), std::invalid_argument);
    CHECK_THROWS_AS(cf::make_family(p, {{2, 2}}), std::invalid_argument);  // repeat inside a set
}

TEST_CASE("subfamily relation") {
    cf::Params p(5, 2, 2);
    cf::Family small = cf::make_family(p, {{1, 2}});
    cf::Family big = cf::make_family(p, {{1, 2}, {3, 4}});
    CHECK(small.subfamily_of(big));
    CHECK_FALSE(big.subfamily_of(small));
    CHECK(cf::Family{p, {}}.subfamily_of(small));
}

TEST_CASE("star and full family shapes") {
    cf::Params p(5, 2, 2);
    cf::Family st = cf::star(p, 1);
    CHECK(st.size() == cf::binom(4, 1));
    for (cf::KSet s : st.members) CHECK(s.contains(1));
    CHECK(cf::full_family(p).size() == cf::binom(5, 2));
    CHECK(cf::star(cf::Params(7, 3, 3), 4).size() == cf::binom(6, 2));
    CHECK_THROWS_AS(cf::star(p, 0), std::invalid_argument);
    CHECK_THROWS_AS(cf::star(p, 6), std::invalid_argument);
}

TEST_CASE("complement family partitions the universe") {
    cf::Params p(5, 2, 2);
    cf::Family st = cf::star(p, 1);
    cf::Family co = cf::complement_family(st);
    CHECK(co.size() == cf::binom(5, 2) - st.size());
    for (cf::KSet s : co.members) CHECK_FALSE(st.contains(s));
    CHECK(cf::complement_family(cf::full_family(p)).empty());
}

TEST_CASE("binomial coefficients are exact") {
    CHECK(cf::binom(0, 0) == 1);
    CHECK(cf::binom(5, 0) == 1);
    CHECK(cf::binom(5, 5) == 1);
    CHECK(cf::binom(5, 2) == 10);
    CHECK(cf::binom(3, 5) == 0);
    CHECK(cf::binom(52, 5) == 2598960);
    // Pascal recurrence spot check on a grid
    for (long long a = 1; a <= 20; ++a)
        for (long long b = 1; b <= a; ++b)
            CHECK(cf::binom(a, b) == cf::binom(a - 1, b - 1) + cf::binom(a - 1, b));
    // largest values that still fit in 64 bits
    CHECK(cf::binom(64, 32) == 1832624140942590534LL);
    CHECK(cf::binom(66, 33) == 7219428434016265740LL);
    CHECK_THROWS_AS(cf::binom(67, 33), std::overflow_error);
    CHECK_THROWS_AS(cf::binom(-1, 0), std::invalid_argument);
    CHECK_THROWS_AS(cf::binom(3, -2), std::invalid_argument);
}

TEST_CASE("kset enumeration is ascending and complete") {
    std::vector<std::uint64_t> masks;
    cf::for_each_kset(4, 2, [&](cf::KSet s) { masks.push_back(s.bits); });
    CHECK(masks == std::vector<std::uint64_t>{3, 5, 6, 9, 10, 12});

    long long count = 0;
    cf::for_each_kset(10, 4, [&](cf::KSet) { ++count; });
    CHECK(count == cf::binom(10, 4));

    count = 0;
    cf::for_each_kset(5, 0, [&](cf::KSet s) {
        CHECK(s.empty());
        ++count;
    });
    CHECK(count == 1);

    count = 0;
    cf::for_each_kset(3, 4, [&](cf::KSet) { ++count; });
    CHECK(count == 0);

    CHECK(cf::all_ksets(6, 3).size() == 20);
}

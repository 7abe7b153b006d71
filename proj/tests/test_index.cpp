#include "doctest.h"
#include "oracles.hpp"

using namespace grcat;

TEST_CASE("free categories count paths like the DFS oracle") {
    IndexQuiver chain;
    chain.vertices = {"2", "3", "4", "5"};
    chain.arrows = {{"a2", 0, 1}, {"a3", 1, 2}, {"a4", 2, 3}};
    IndexCat I = free_on_acyclic_quiver(chain);
    CHECK(I.n_mor() == 10);  // 4 identities + 6 paths
    CHECK(I.n_mor() == oracle::free_category_size(chain));
    CHECK(I.check().pass);

    IndexQuiver single;
    single.vertices = {"1", "2"};
    single.arrows = {{"a", 0, 1}};
    CHECK(free_on_acyclic_quiver(single).n_mor() == 3);

    IndexQuiver lonely;
    lonely.vertices = {"1"};
    CHECK(free_on_acyclic_quiver(lonely).n_mor() == 1);

    IndexQuiver cyc;
    cyc.vertices = {"1", "2"};
    cyc.arrows = {{"a", 0, 1}, {"b", 1, 0}};
    CHECK_THROWS_WITH_AS(static_cast<void>(free_on_acyclic_quiver(cyc)), doctest::Contains("CyclicQuiver"),
                         Error);
}

TEST_CASE("poset incidence categories") {
    IndexCat chain = from_poset({"1", "2", "3"}, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(chain.n_mor() == 6);
    CHECK(chain.check().pass);

    IndexCat anti = from_poset({"1", "2"}, {});
    CHECK(anti.n_mor() == 2);

    IndexCat diamond = from_poset({"1", "2", "3", "4"},
                                  {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {0, 3}});
    CHECK(diamond.n_mor() == 9);
    CHECK(diamond.check().pass);

    // not transitively closed
    CHECK_THROWS_WITH_AS(static_cast<void>(from_poset({"1", "2", "3"}, {{0, 1}, {1, 2}})),
                         doctest::Contains("NotAPartialOrder"), Error);
    // not antisymmetric
    CHECK_THROWS_WITH_AS(static_cast<void>(from_poset({"1", "2"}, {{0, 1}, {1, 0}})),
                         doctest::Contains("NotAPartialOrder"), Error);
}

TEST_CASE("monoid categories") {
    IndexCat z2 = from_monoid({"e", "s"}, 0, {{0, 1}, {1, 0}});
    CHECK(z2.n_mor() == 2);
    CHECK(z2.check().pass);

    IndexCat trivial = from_monoid({"e"}, 0, {{0}});
    CHECK(trivial.n_mor() == 1);

    // {1, s, s^2} with s^3 = s^2
    IndexCat m3 = from_monoid({"e", "s", "t"}, 0, {{0, 1, 2}, {1, 2, 2}, {2, 2, 2}});
    CHECK(m3.n_mor() == 3);
    CHECK(m3.check().pass);

    // broken associativity: s*s = e but e acts wrong
    CHECK_THROWS_WITH_AS(static_cast<void>(from_monoid({"e", "s"}, 0, {{0, 1}, {0, 0}})),
                         doctest::Contains("NotAMonoid"), Error);
}

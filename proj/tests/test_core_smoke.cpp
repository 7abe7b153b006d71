#include "doctest.h"

#include "grcat/colax.hpp"
#include "grcat/grothendieck.hpp"

using namespace grcat;

namespace {

QuiverPresentation ex86_x2() {
    QuiverPresentation p;
    p.vertices = {"1", "2"};
    p.arrows = {{"a1", 0, 1}, {"b1", 1, 0}};
    FieldSpec q = FieldSpec::rationals();
    // a1 b1 a1 = 0 and b1 a1 b1 = 0, application order is rightmost-first
    p.relations.push_back({{Scalar::one(q), {0, 1, 0}}});
    p.relations.push_back({{Scalar::one(q), {1, 0, 1}}});
    return p;
}

}  // namespace

TEST_CASE("scalar basics") {
    FieldSpec f5 = FieldSpec::prime(5);
    CHECK(Scalar::of_int(f5, 2).inv() == Scalar::of_int(f5, 3));
    CHECK(Scalar::rational(1, 2) + Scalar::rational(1, 3) == Scalar::rational(5, 6));
    CHECK((Scalar::zero(f5) * Scalar::of_int(f5, 4)).is_zero());
    CHECK_THROWS_AS(Scalar::zero(f5).inv(), Error);
}

TEST_CASE("X(2) of the gluing example has total dimension 6 and is basic local") {
    CatPtr c = build_category(ex86_x2(), FieldSpec::rationals());
    CHECK(c->total_dim() == 6);
    CHECK(c->dim(0, 0) == 2);
    CHECK(c->dim(0, 1) == 1);
    CHECK(c->dim(1, 0) == 1);
    CHECK(c->dim(1, 1) == 2);
    CHECK(c->check().pass);
    CHECK(check_basic_local(*c).pass);
    CHECK(c->basis_labels(0, 0)[0] == "id(1)");
    CHECK(c->basis_labels(0, 0)[1] == "b1.a1");
}

TEST_CASE("the one-arrow index over the ground field glues to the triangular algebra") {
    QuiverPresentation pk;
    pk.vertices = {"*"};
    CatPtr k = build_category(pk, FieldSpec::rationals());
    CHECK(k->total_dim() == 1);

    IndexQuiver q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", 0, 1}};
    IndexCat I = free_on_acyclic_quiver(q);
    CHECK(I.n_mor() == 3);

    ColaxPtr x = diagonal(k, I);
    CHECK(check_colax(*x).pass);
    GrCategory g = grothendieck(*x);
    CHECK(g.cat->total_dim() == 3);
    CHECK(g.cat->dim(g.gr_obj(0, 0), g.gr_obj(1, 0)) == 1);
    CHECK(g.cat->dim(g.gr_obj(1, 0), g.gr_obj(0, 0)) == 0);

    // canonical precovering matrices are the identity
    ColaxPtr dg = diagonal(g.cat, I);
    LeftTransformation can = canonical_morphism(g, dg);
    CHECK(check_left_transformation(can).pass);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            PrecoveringMap pm = precovering_map(can, i, 0, j, 0);
            CHECK(pm.matrix.is_identity());
        }
    CHECK(check_covering(can, 7).pass);
    CHECK(verify_adjunction(x, k).pass);

    KFunctor h = factor_through_gr(g, can);
    CHECK(functor_eq(h, identity_functor(g.cat)));
}

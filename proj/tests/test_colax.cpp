#include "doctest.h"
#include "oracles.hpp"

using namespace grcat;

TEST_CASE("diagonals and strict functors pass the colax axioms") {
    QuiverPresentation kq;
    kq.vertices = {"*"};
    CatPtr k = build_category(kq, FieldSpec::rationals());
    IndexCat I = from_poset({"1", "2", "3"}, {{0, 1}, {1, 2}, {0, 2}});
    ColaxPtr d = diagonal(k, I);
    CHECK(check_colax(*d).pass);
    CHECK(diagonal_base(*d).has_value());
}

TEST_CASE("the strict gluing-example functor passes and a scaled theta fails") {
    Workspace ws = load_document(fixture_document("ex-8.6", 3));
    ColaxPtr x = ws.colaxes.at("X");
    CHECK(check_colax(*x).pass);

    // scale one theta component by 2: the cocycle/unit ladder must locate it
    auto broken = std::make_shared<ColaxFunctor>(*x);
    bool touched = false;
    for (auto& [key, th] : broken->theta) {
        if (touched) break;
        for (auto& comp : th.comp) {
            comp = mor_scale(Scalar::of_int(comp.c.empty() ? FieldSpec::rationals() : comp.c[0].field(), 2), comp);
            touched = true;
            break;
        }
    }
    REQUIRE(touched);
    Report r = check_colax(*broken);
    CHECK(!r.pass);
}

TEST_CASE("randomized twisted functors satisfy the axioms (property)") {
    for (int i = 0; i < 10; ++i) {
        ColaxPtr x = random_colax_f5(0xabc, i);
        CHECK(check_colax(*x).pass);
    }
}

TEST_CASE("check_colax accepts every randomized strict functor (property)") {
    for (int i = 0; i < 10; ++i) {
        ColaxPtr x = random_colax_f5(0x57a, i, false);
        for (const auto& e : x->eta) CHECK(nat_is_identity(e));
        CHECK(check_colax(*x).pass);
    }
}

TEST_CASE("identity transformation is an equivalence; broken psi is caught") {
    ColaxPtr x = random_colax_f5(0x11, 0);
    LeftTransformation idt = identity_transformation(x);
    CHECK(check_left_transformation(idt).pass);
    CHECK(check_equivalence(idt, 3).pass);
    CHECK(is_equivariant(idt));

    LeftTransformation bad = idt;
    bool zeroed = false;
    for (auto& psi : bad.psi)
        for (auto& comp : psi.comp)
            if (!mor_is_zero(comp) && !zeroed) {
                comp = mor_scale(Scalar::zero(comp.c[0].field()), comp);
                zeroed = true;
            }
    if (zeroed) {
        Report r = check_equivalence(bad, 3);
        CHECK(!r.pass);
    }
}

TEST_CASE("quasi-inverse of an equivalence is again an equivalence") {
    Workspace ws = load_document(fixture_document("ex-8.6", 3));
    CatPtr x2 = ws.categories.at("X2");
    KFunctor idf = identity_functor(x2);
    auto q = quasi_inverse(idf, 5);
    REQUIRE(q.has_value());
    CHECK(check_fin_equivalence(*q, 5).pass);
    CHECK(functor_eq(compose_functors(*q, idf), idf));
}

TEST_CASE("diagonal is 2-functorial on 1-cells") {
    Workspace ws = load_document(fixture_document("ex-8.6", 3));
    CatPtr x2 = ws.categories.at("X2");
    CatPtr x3 = ws.categories.at("X3");
    const KFunctor& incl = ws.functors.at("Xq2");
    IndexCat I = from_monoid({"e", "s"}, 0, {{0, 1}, {1, 0}});
    ColaxPtr d2 = diagonal(x2, I), d3 = diagonal(x3, I);
    LeftTransformation di = diagonal_1cell(incl, I, d2, d3);
    CHECK(check_left_transformation(di).pass);
    // Delta(E) . Delta(id) = Delta(E . id) as data
    LeftTransformation did = diagonal_1cell(identity_functor(x2), I, d2, d2);
    LeftTransformation comp = compose_left_transformations(di, did);
    LeftTransformation direct = diagonal_1cell(compose_functors(incl, identity_functor(x2)), I, d2, d3);
    CHECK(left_transformation_eq(comp, direct));
}

TEST_CASE("composition of left transformations is associative and unital as data") {
    ColaxPtr x = random_colax_f5(0x33, 2);
    LeftTransformation a = identity_transformation(x);
    LeftTransformation ab = compose_left_transformations(a, a);
    CHECK(left_transformation_eq(ab, a));
    LeftTransformation abc1 = compose_left_transformations(compose_left_transformations(a, a), a);
    LeftTransformation abc2 = compose_left_transformations(a, compose_left_transformations(a, a));
    CHECK(left_transformation_eq(abc1, abc2));
}

TEST_CASE("two-morphism compatibility square is verified") {
    ColaxPtr x = random_colax_f5(0x44, 1);
    LeftTransformation idt = identity_transformation(x);
    TwoMorphism z;
    z.src = idt;
    z.dst = idt;
    for (int i = 0; i < x->index.n_obj(); ++i) z.zeta.push_back(identity_nat(idt.f[static_cast<size_t>(i)]));
    CHECK(check_two_morphism(z).pass);
}

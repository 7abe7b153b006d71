#include "doctest.h"
#include "oracles.hpp"

#include "grcat/rng.hpp"

using namespace grcat;

namespace {

CatPtr arrow_cat(const FieldSpec& fs) {
    QuiverPresentation p;
    p.vertices = {"1", "2"};
    p.arrows = {{"al", 0, 1}};
    return build_category(p, fs);
}

Mor label_mor(const CatPtr& c, const std::string& l) {
    auto loc = c->find_label(l);
    REQUIRE(loc.has_value());
    return c->basis_mor((*loc)[0], (*loc)[1], (*loc)[2]);
}

// (P1@0 --al--> P2@1)
ProjComplex two_term(const CatPtr& c) {
    PMat d = PMat::zero(c, {0}, {1});
    d.at(0, 0) = label_mor(c, "al");
    return make_complex(c, 0, {{0}, {1}}, {d});
}

}  // namespace

TEST_CASE("stalk endomorphisms and vanishing shifts") {
    CatPtr c = arrow_cat(FieldSpec::rationals());
    ProjComplex p1 = stalk_complex(c, 0);
    CHECK(hom_k(p1, p1, 0).dim() == 1);
    for (int n = -3; n <= 3; ++n)
        if (n != 0) CHECK(hom_k(p1, p1, n).dim() == 0);
}

TEST_CASE("the two-term tilting summand has no self-extensions") {
    CatPtr c = arrow_cat(FieldSpec::prime(2));
    ProjComplex t = two_term(c);
    for (int n = -2; n <= 2; ++n) {
        int d = hom_k(t, t, n).dim();
        int b = oracle::hom_dim_f2_brute(t, t, n);
        CHECK(d == b);
        if (n != 0) CHECK(d == 0);
    }
}

TEST_CASE("gluing-example fiber complexes are orthogonal in nonzero shifts") {
    Workspace ws = load_document(fixture_document("ex-8.6", 3));
    const ProjComplex& t32 = ws.complexes.at("T3_2");
    const ProjComplex& t33 = ws.complexes.at("T3_3");
    for (int n = -2; n <= 2; ++n)
        if (n != 0) CHECK(hom_k(t32, t33, n).dim() == 0);
    CHECK(hom_k(t32, t33, 0).dim() == 1);
}

TEST_CASE("cone of the identity is contractible") {
    CatPtr c = arrow_cat(FieldSpec::rationals());
    ProjComplex t = two_term(c);
    ProjComplex cid = cone(identity_chain_map(t));
    MinimizeResult mr = minimize(cid);
    CHECK(mr.m.empty());
    CHECK(homotopy_equivalent(cid, ProjComplex{c, 0, {}, {}}, 5).equivalent);
}

TEST_CASE("cone of a stalk map is the two-term complex") {
    CatPtr c = arrow_cat(FieldSpec::rationals());
    ProjComplex p1 = stalk_complex(c, 0), p2 = stalk_complex(c, 1);
    ChainMap al = zero_chain_map(p1, p2);
    al.comp[0].at(0, 0) = label_mor(c, "al");
    REQUIRE(is_chain_map(al));
    ProjComplex cn = cone(al);
    // cone = P1[1] (+) P2 with differential al in degrees -1 -> 0
    CHECK(cn.lo == -1);
    CHECK(homotopy_equivalent(cn, shift_complex(two_term(c), 1), 5).equivalent);
}

TEST_CASE("shift round trip is the identity on data") {
    CatPtr c = arrow_cat(FieldSpec::rationals());
    ProjComplex t = two_term(c);
    CHECK(complex_eq(shift_complex(shift_complex(t, 1), -1), t));
    CHECK(complex_eq(shift_complex(shift_complex(t, -2), 2), t));
}

TEST_CASE("minimize: idempotent, dimension-decreasing, with verified witnesses") {
    Workspace ws = load_document(fixture_document("ex-8.6", 3));
    const ProjComplex& t32 = ws.complexes.at("T3_2");
    ProjComplex fat = direct_sum(t32, cone(identity_chain_map(ws.complexes.at("T3_3"))));
    MinimizeResult mr = minimize(fat);
    CHECK(mr.m.total_summands() <= fat.total_summands());
    // minimal: no invertible differential entries survive
    MinimizeResult again = minimize(mr.m);
    CHECK(complex_eq(again.m, mr.m));
    // witnesses compose to the identity up to homotopy, exactly checked
    CHECK(is_chain_map(mr.to_min));
    CHECK(is_chain_map(mr.from_min));
    CHECK(chain_map_eq(compose_chain_maps(mr.to_min, mr.from_min), identity_chain_map(mr.m)));
    CHECK(null_homotopic(chain_sub(compose_chain_maps(mr.from_min, mr.to_min), identity_chain_map(fat))));
    // the fixture complexes are already minimal (radical differentials)
    CHECK(complex_eq(minimize(t32).m, trim(t32)));
}

TEST_CASE("homotopy equivalence: positives, negatives and witnesses") {
    CatPtr c = arrow_cat(FieldSpec::rationals());
    ProjComplex p1 = stalk_complex(c, 0), p2 = stalk_complex(c, 1);
    ProjComplex padded = direct_sum(p1, cone(identity_chain_map(p2)));
    HomotopyDecision dec = homotopy_equivalent(p1, padded, 5);
    CHECK(dec.equivalent);
    CHECK(null_homotopic(chain_sub(compose_chain_maps(dec.bwd, dec.fwd), identity_chain_map(p1))));
    CHECK(null_homotopic(chain_sub(compose_chain_maps(dec.fwd, dec.bwd), identity_chain_map(padded))));
    CHECK(!homotopy_equivalent(p1, p2, 5).equivalent);
    CHECK(!homotopy_equivalent(p1, shift_complex(p1, 1), 5).equivalent);
}

TEST_CASE("contractible summands are invisible in Hom_K") {
    CatPtr c = arrow_cat(FieldSpec::rationals());
    ProjComplex t = two_term(c), p1 = stalk_complex(c, 0);
    ProjComplex noisy = direct_sum(cone(identity_chain_map(p1)), t);
    for (int n = -2; n <= 2; ++n)
        CHECK(hom_k(p1, noisy, n).dim() == hom_k(p1, t, n).dim());
}

TEST_CASE("Euler characteristic is homotopy invariant on random pairs") {
    Workspace ws = load_document(fixture_document("ex-8.6", 3));
    CatPtr x3 = ws.categories.at("X3");
    std::vector<ProjComplex> pool = {ws.complexes.at("T3_1"), ws.complexes.at("T3_2"),
                                     ws.complexes.at("T3_3"), stalk_complex(x3, 2)};
    Rng rng(0xe01e4);
    for (int trial = 0; trial < 6; ++trial) {
        const ProjComplex& u = pool[rng.below(pool.size())];
        const ProjComplex& v = pool[rng.below(pool.size())];
        ProjComplex v_fat =
            direct_sum(v, cone(identity_chain_map(pool[rng.below(pool.size())])));
        long euler = 0, euler_fat = 0;
        for (int n = -4; n <= 4; ++n) {
            int sgn = n % 2 == 0 ? 1 : -1;
            euler += sgn * hom_k(u, v, n).dim();
            euler_fat += sgn * hom_k(u, v_fat, n).dim();
        }
        CHECK(euler == euler_fat);
    }
}

TEST_CASE("hom_k equals the exhaustive F2 oracle on a generated corpus") {
    // small random complexes over the F2 arrow category and over X(2)
    Workspace ws = load_document(
        "[field]\nkind = F\np = 2\n"
        "[category A]\nkind = quiver\nobjects = 1 2\narrows = al:1->2\n"
        "[category B]\nkind = quiver\nobjects = 1 2\narrows = a1:1->2 b1:2->1\n"
        "relations = a1*b1*a1 ; b1*a1*b1\n");
    CatPtr a = ws.categories.at("A");
    CatPtr b = ws.categories.at("B");
    Rng rng(0xf2);
    auto random_complex = [&](const CatPtr& base) {
        for (;;) {
            int len = 1 + static_cast<int>(rng.below(3));
            std::vector<std::vector<int>> terms;
            for (int i = 0; i < len; ++i) {
                std::vector<int> t;
                int width = 1 + static_cast<int>(rng.below(2));
                for (int j = 0; j < width; ++j) t.push_back(static_cast<int>(rng.below(2)));
                terms.push_back(std::move(t));
            }
            std::vector<PMat> diffs;
            bool ok = true;
            for (int i = 0; i + 1 < len; ++i) {
                PMat d = PMat::zero(base, terms[static_cast<size_t>(i)], terms[static_cast<size_t>(i + 1)]);
                for (size_t r = 0; r < d.dst.size(); ++r)
                    for (size_t c2 = 0; c2 < d.src.size(); ++c2) {
                        int dim = base->dim(d.src[c2], d.dst[r]);
                        for (int k = 0; k < dim; ++k)
                            if (rng.below(2)) d.at(r, c2).c[static_cast<size_t>(k)] = Scalar::one(base->field);
                    }
                diffs.push_back(std::move(d));
            }
            // keep only genuine complexes; retry otherwise
            try {
                ProjComplex u = make_complex(base, -static_cast<int>(rng.below(2)), terms, diffs);
                if (u.total_dim() <= 12) return u;
            } catch (const Error&) {
            }
            (void)ok;
        }
    };
    int pairs_checked = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const CatPtr& base = trial % 2 ? a : b;
        ProjComplex u = random_complex(base), v = random_complex(base);
        int plo = v.lo - u.hi() - 1, phi = v.hi() - u.lo + 1;
        for (int p = plo; p <= phi; ++p) {
            int got = hom_k(u, v, p).dim();
            int want = oracle::hom_dim_f2_brute(u, v, p);
            CHECK(got == want);
        }
        ++pairs_checked;
    }
    CHECK(pairs_checked == 10);
}

TEST_CASE("prj on functors is strictly functorial and matches object maps") {
    Workspace ws = load_document(fixture_document("ex-8.6", 3));
    const KFunctor& incl = ws.functors.at("Xq2");
    CatPtr x2 = ws.categories.at("X2");
    ProjComplex p2 = stalk_complex(x2, 1);
    ProjComplex img = map_complex(incl, p2);
    CHECK(img.terms == std::vector<std::vector<int>>{{1}});
    KFunctor idf = identity_functor(x2);
    CHECK(complex_eq(map_complex(idf, p2), p2));
    // (G . F) on complexes equals G after F as data
    KFunctor gf = compose_functors(incl, idf);
    CHECK(complex_eq(map_complex(gf, p2), map_complex(incl, map_complex(idf, p2))));
    // commutes with shift as data
    CHECK(complex_eq(map_complex(incl, shift_complex(p2, 1)), shift_complex(map_complex(incl, p2), 1)));
}

TEST_CASE("block split produces complementary subcomplexes with witnesses") {
    CatPtr c = arrow_cat(FieldSpec::rationals());
    ProjComplex t = two_term(c);
    ProjComplex s = direct_sum(t, stalk_complex(c, 1, 5));
    BlockSplit bs = split_blocks(s);
    REQUIRE(bs.blocks.size() == 2);
    for (size_t b = 0; b < bs.blocks.size(); ++b) {
        CHECK(is_chain_map(bs.incl[b]));
        CHECK(is_chain_map(bs.proj[b]));
        CHECK(chain_map_eq(compose_chain_maps(bs.proj[b], bs.incl[b]), identity_chain_map(bs.blocks[b])));
    }
}

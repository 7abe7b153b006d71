#include "doctest.h"
#include "oracles.hpp"

using namespace grcat;

namespace {

TiltingSubcategoryData fiber_of(const Workspace& ws, const std::string& tilt, const std::string& fiber) {
    const TiltingColaxData& td = ws.tiltings.at(tilt);
    return td.fibers[static_cast<size_t>(td.x->index.obj_index(fiber))];
}

}  // namespace

TEST_CASE("projective stalks are presilting and generate trivially") {
    Workspace ws = load_document(fixture_document("ex-8.6", 3));
    CatPtr x3 = ws.categories.at("X3");
    TiltingSubcategoryData t;
    t.base = x3;
    for (int o = 0; o < x3->n(); ++o) {
        t.names.push_back("P" + std::to_string(o + 1));
        t.objects.push_back(stalk_complex(x3, o));
    }
    CHECK(check_presilting(t).pass);
    for (int o = 0; o < x3->n(); ++o) {
        GenerationCertificate c = find_generation_certificate(t, o, 2, 50, 1);
        CHECK(c.found);
        CHECK(c.steps.size() == 2);  // take + reduce
        CHECK(replay_certificate(t, c, 1).ok);
    }
}

TEST_CASE("the T(3) fiber is presilting with the stated K0 matrix") {
    Workspace ws = load_document(fixture_document("ex-8.6", 3));
    TiltingSubcategoryData t = fiber_of(ws, "T", "3");
    CHECK(check_presilting(t).pass);
    K0Result k0 = k0_matrix(t);
    std::vector<std::vector<long>> want = {{1, 0, 0}, {0, 1, -1}, {0, 1, 0}};
    CHECK(k0.m == want);
    CHECK(k0.square);
    CHECK(k0.unimodular);
    CHECK(mpz_class(abs(k0.det)) == 1);
    CHECK(oracle::cofactor_det(k0.m) == k0.det.get_si());
}

TEST_CASE("a shifted duplicate breaks presilting at the stated shift") {
    Workspace ws = load_document(fixture_document("ex-8.6", 3));
    CatPtr x3 = ws.categories.at("X3");
    TiltingSubcategoryData t;
    t.base = x3;
    t.names = {"P1", "P1s"};
    t.objects = {stalk_complex(x3, 0), shift_complex(stalk_complex(x3, 0), -1)};
    Report r = check_presilting(t);
    CHECK(!r.pass);
    bool witness = false;
    for (const auto& n : r.notes)
        if (n.find("[1]") != std::string::npos || n.find("[-1]") != std::string::npos) witness = true;
    CHECK(witness);
}

TEST_CASE("generation search: P3 from T(3) at small depth; K0 obstruction yields NotFound") {
    Workspace ws = load_document(fixture_document("ex-8.6", 3));
    TiltingSubcategoryData t3 = fiber_of(ws, "T", "3");
    GenerationCertificate c = find_generation_certificate(t3, 2, 3, 200, 1);
    CHECK(c.found);
    CHECK(replay_certificate(t3, c, 1).ok);

    // {P1} over the arrow category cannot generate P2
    Workspace ws2 = load_document(
        "[field]\nkind = Q\n[category A]\nkind = quiver\nobjects = 1 2\narrows = al:1->2\n");
    CatPtr a = ws2.categories.at("A");
    TiltingSubcategoryData tp;
    tp.base = a;
    tp.names = {"P1"};
    tp.objects = {stalk_complex(a, 0)};
    GenerationCertificate miss = find_generation_certificate(tp, 1, 6, 500, 1);
    CHECK(!miss.found);
}

TEST_CASE("certificate replay rejects corrupted scripts") {
    Workspace ws = load_document(fixture_document("ex-8.6", 3));
    TiltingSubcategoryData t3 = fiber_of(ws, "T", "3");
    GenerationCertificate c = find_generation_certificate(t3, 2, 3, 200, 1);
    REQUIRE(c.found);
    GenerationCertificate bad = c;
    bad.target_obj = 0;  // wrong representable
    CHECK(!replay_certificate(t3, bad, 1).ok);
    GenerationCertificate bad2 = c;
    bad2.steps = {{CertStep::Op::Take, -1, -1, 0, std::nullopt, std::nullopt}};  // P1 is not P3
    CHECK(!replay_certificate(t3, bad2, 1).ok);
}

TEST_CASE("end category of the stalks is the base category itself") {
    Workspace ws = load_document(fixture_document("ex-8.6", 3));
    CatPtr x2 = ws.categories.at("X2");
    TiltingSubcategoryData t;
    t.base = x2;
    for (int o = 0; o < x2->n(); ++o) {
        t.names.push_back(x2->objects[static_cast<size_t>(o)]);
        t.objects.push_back(stalk_complex(x2, o));
    }
    EndCategory e = end_category(t);
    CHECK(e.cat->total_dim() == x2->total_dim());
    // Yoneda: match against the defining presentation
    std::vector<int> obj_hint = {0, 1};
    std::vector<Mor> arrow_hint;
    const auto& pres = ws.presentations.at("X2");
    for (const auto& ar : pres.arrows) {
        ChainMap cm = zero_chain_map(t.objects[static_cast<size_t>(ar.src)],
                                     t.objects[static_cast<size_t>(ar.dst)]);
        auto loc = x2->find_label(ar.name);
        cm.comp[0].at(0, 0) = x2->basis_mor((*loc)[0], (*loc)[1], (*loc)[2]);
        arrow_hint.push_back(e.class_of(ar.src, ar.dst, cm));
    }
    MatchResult mr = match_presentation(e.cat, pres, obj_hint, arrow_hint);
    CHECK(mr.ok);
}

TEST_CASE("end categories of the gluing fibers have the X'(i) dimensions") {
    Workspace ws = load_document(fixture_document("ex-8.6", 3));
    EndCategory e2 = end_category(fiber_of(ws, "T", "2"));
    EndCategory e3 = end_category(fiber_of(ws, "T", "3"));
    CHECK(e2.cat->total_dim() == 6);    // dim X'(2)
    CHECK(e3.cat->total_dim() == 12);   // dim X'(3) = i^2 + i
    CHECK(ws.categories.at("Xp2")->total_dim() == 6);
    CHECK(ws.categories.at("Xp3")->total_dim() == 12);
}

TEST_CASE("match_presentation refuses a wrong presentation") {
    Workspace ws = load_document(fixture_document("ex-8.6", 3));
    EndCategory e3 = end_category(fiber_of(ws, "T", "3"));
    const auto& wrong = ws.presentations.at("X3");  // not the presentation of End(T(3))
    std::vector<Mor> hints;
    for (const auto& ar : wrong.arrows)
        hints.push_back(e3.cat->zero_mor(ar.src, ar.dst));
    MatchResult mr = match_presentation(e3.cat, wrong, {0, 1, 2}, hints);
    CHECK(!mr.ok);
}

TEST_CASE("radical of the arrow category is the arrow span") {
    Workspace ws = load_document(
        "[field]\nkind = Q\n[category A]\nkind = quiver\nobjects = 1 2\narrows = al:1->2\n");
    CatPtr a = ws.categories.at("A");
    RadicalData rd = category_radical(*a);
    CHECK(rd.arrow_count(0, 1) == 1);
    CHECK(rd.arrow_count(0, 0) == 0);
    CHECK(rd.arrow_count(1, 0) == 0);
    // prime fields refuse the trace-form radical
    Workspace wsp = load_document(
        "[field]\nkind = F\np = 5\n[category A]\nkind = quiver\nobjects = 1 2\narrows = al:1->2\n");
    CHECK_THROWS_WITH_AS(static_cast<void>(category_radical(*wsp.categories.at("A"))),
                         doctest::Contains("FieldNotRationals"), Error);
}

TEST_CASE("check_tilting_colax certifies the gluing fixture and catches sabotage") {
    Workspace ws = load_document(fixture_document("ex-8.6", 3));
    TiltingColaxData td = ws.tiltings.at("T");
    TiltingCheckOptions opt;
    TiltingColaxReport good = check_tilting_colax(td, opt);
    CHECK(good.certified);

    // rho replaced by the zero map: invertibility clause must fail
    TiltingColaxData zeroed = td;
    for (auto& per_arrow : zeroed.rho)
        for (auto& r : per_arrow)
            if (!r.comp.empty()) r = zero_chain_map(r.src, r.dst);
    TiltingColaxReport badr = check_tilting_colax(zeroed, opt);
    CHECK(!badr.certified);
    bool names_invertibility = false;
    for (const auto& n : badr.rho_report.notes)
        if (n.find("invertible") != std::string::npos) names_invertibility = true;
    CHECK(names_invertibility);

    // capped-out search with no supplied certificate: missing-representable witness
    TiltingCheckOptions strangled;
    strangled.depth_cap = 0;
    strangled.size_cap = 0;
    TiltingColaxReport capped = check_tilting_colax(td, strangled);
    CHECK(!capped.certified);
    bool names_missing = false;
    for (const auto& n : capped.overall.notes)
        if (n.find("no generation certificate") != std::string::npos) names_missing = true;
    CHECK(names_missing);
}

TEST_CASE("presilting reports are independent of the listing order") {
    Workspace ws = load_document(fixture_document("ex-8.6", 3));
    TiltingSubcategoryData t = fiber_of(ws, "T", "3");
    TiltingSubcategoryData rev = t;
    std::reverse(rev.names.begin(), rev.names.end());
    std::reverse(rev.objects.begin(), rev.objects.end());
    Report a = check_presilting(t), b = check_presilting(rev);
    CHECK(a.pass == b.pass);
    CHECK(a.notes == b.notes);
}

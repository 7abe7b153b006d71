#include "doctest.h"
#include "oracles.hpp"

using namespace grcat;

namespace {

GluingReport run_fixture(const std::string& name, int n = 3) {
    Workspace ws = load_document(fixture_document(name, n));
    const TiltingColaxData& td = ws.tiltings.at("T");
    const auto& eq = ws.equivalences.at("E");
    GluingOptions opt;
    return glue(td.x, ws.colaxes.at(eq.source), td, eq.spec, opt);
}

std::string kv_value(const GluingReport& g, const std::string& key) {
    for (const auto& [k, v] : g.kv)
        if (k == key) return v;
    return "";
}

}  // namespace

TEST_CASE("the desk instances certify the glued derived equivalence") {
    for (const char* name : {"thm-8.5-a", "thm-8.5-b", "thm-8.5-c"}) {
        GluingReport g = run_fixture(name);
        CHECK(g.certified);
        CHECK(kv_value(g, "dim.EndTprime") == kv_value(g, "dim.GrXp"));
    }
}

TEST_CASE("the n = 3 gluing example certifies with the expected dimensions") {
    GluingReport g = run_fixture("ex-8.6", 3);
    CHECK(g.certified);
    CHECK(kv_value(g, "dim.GrX") == "23");
    CHECK(kv_value(g, "dim.GrXp") == "26");
    CHECK(kv_value(g, "dim.GrT") == "26");
    CHECK(kv_value(g, "dim.EndTprime") == "26");
    CHECK(kv_value(g, "tprime.objects") == "5");
}

TEST_CASE("build_t_prime collects the P(i)-images and deduplicates") {
    Workspace ws = load_document(fixture_document("ex-8.6", 3));
    const TiltingColaxData& td = ws.tiltings.at("T");
    GrCategory gx = grothendieck(*td.x);
    LeftTransformation can = canonical_morphism(gx, diagonal(gx.cat, td.x->index));
    TPrime tp = build_t_prime(gx, can, td, 1);
    CHECK(tp.objects.size() == 5);  // 2 + 3 objects before dedup
    CHECK(tp.dedup_reps.size() == 5);
    // the image of a stalk is the stalk of the glued object
    CHECK(tp.objects[0].terms == std::vector<std::vector<int>>{{gx.gr_obj(0, 0)}});
}

TEST_CASE("duplicate fiber objects collapse under dedup") {
    Workspace ws = load_document(fixture_document("thm-8.5-c"));  // one fiber, monoid index
    const TiltingColaxData& td = ws.tiltings.at("T");
    GrCategory gx = grothendieck(*td.x);
    LeftTransformation can = canonical_morphism(gx, diagonal(gx.cat, td.x->index));
    // list T1 twice: images must land in one dedup class
    TiltingColaxData doubled = td;
    for (auto& f : doubled.fibers) {
        f.names.push_back("T1bis");
        f.objects.push_back(f.objects[0]);
    }
    for (auto& amap : doubled.act_obj) amap.push_back(2);
    for (size_t a = 0; a < doubled.rho.size(); ++a)
        doubled.rho[a].push_back(doubled.rho[a][0]);
    TPrime tp = build_t_prime(gx, can, doubled, 1);
    CHECK(tp.objects.size() == 3);
    CHECK(tp.dedup_reps.size() == 2);
}

TEST_CASE("sabotaged rho degrades the verdict to partially-certified") {
    Workspace ws = load_document(fixture_document("ex-8.6", 3));
    TiltingColaxData td = ws.tiltings.at("T");
    for (auto& per_arrow : td.rho)
        for (auto& r : per_arrow)
            if (!r.comp.empty()) r = zero_chain_map(r.src, r.dst);
    const auto& eq = ws.equivalences.at("E");
    GluingOptions opt;
    GluingReport g = glue(td.x, ws.colaxes.at(eq.source), td, eq.spec, opt);
    CHECK(!g.certified);
    CHECK(g.uncertified_clause == "tilting_colax");
}

TEST_CASE("degenerate index: gluing over the trivial category is fiber verification") {
    // trivial monoid index, so Gr(X) = X(*) on the nose
    std::string doc =
        "[field]\nkind = Q\n"
        "[index I]\nkind = monoid\nelements = e\nunit = e\n"
        "[category A]\nkind = quiver\nobjects = 1 2\narrows = al:1->2\n"
        "[category Ap]\nkind = quiver\nobjects = 1 2\narrows = ga:2->1\n"
        "[colax X]\nindex = I\nkind = diagonal\ncategory = A\n"
        "[colax Xp]\nindex = I\nkind = diagonal\ncategory = Ap\n"
        "[complex T1]\nbase = A\nterms = -1: 1 ; 0: 2\ndiff -1 = [al]\n"
        "[complex T2]\nbase = A\nterms = 0: 2\n"
        "[chainmap dg]\nsource = T2\ntarget = T1\ndeg 0 = [id(2)]\n"
        "[tilting T]\ncolax = X\nfiber * = T1 T2\ngens * = dg\n"
        "[equivalence E]\nsource = Xp\ntilting = T\nobjects * = 1->T1 ; 2->T2\narrows * = ga -> dg\n";
    Workspace ws = load_document(doc);
    const TiltingColaxData& td = ws.tiltings.at("T");
    GluingOptions opt;
    GluingReport g = glue(td.x, ws.colaxes.at("Xp"), td, ws.equivalences.at("E").spec, opt);
    CHECK(g.certified);
    GrCategory gx = grothendieck(*td.x);
    CHECK(gx.cat->total_dim() == ws.categories.at("A")->total_dim());
}

TEST_CASE("transported certificates replay over the Grothendieck construction") {
    Workspace ws = load_document(fixture_document("ex-8.6", 3));
    const TiltingColaxData& td = ws.tiltings.at("T");
    GrCategory gx = grothendieck(*td.x);
    LeftTransformation can = canonical_morphism(gx, diagonal(gx.cat, td.x->index));
    TPrime tp = build_t_prime(gx, can, td, 1);
    TiltingCheckOptions topt;
    TiltingColaxReport base = check_tilting_colax(td, topt);
    REQUIRE(base.certified);
    GluingOptions gopt;
    Report rep = verify_t_prime_tilting(gx, can, td, tp, base, gopt);
    CHECK(rep.pass);
}

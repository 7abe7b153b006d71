// Acceptance suite: one pass/fail line per criterion, timed against the
// stated budgets.  Exit status is nonzero when any criterion fails.
#include <chrono>
#include <cstdio>
#include <sys/wait.h>

#include "grcat/fixtures.hpp"
#include "grcat/par.hpp"
#include "grcat/rng.hpp"
#include "oracles.hpp"

using namespace grcat;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

struct Criterion {
    std::string name;
    double budget_s;
    Clock::time_point t0 = Clock::now();
    bool ok = true;
    std::vector<std::string> notes;

    Criterion(std::string n, double budget) : name(std::move(n)), budget_s(budget) {}
    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back(what);
        }
    }
    void finish() {
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        if (secs > budget_s) {
            ok = false;
            notes.push_back("runtime " + std::to_string(secs) + "s exceeds budget " +
                            std::to_string(budget_s) + "s");
        }
        std::printf("%s %s (%.2fs)\n", ok ? "PASS" : "FAIL", name.c_str(), secs);
        for (const auto& n : notes) std::printf("      %s\n", n.c_str());
        if (!ok) ++failures;
        std::fflush(stdout);
    }
};

std::string run_cli(const std::string& args, int* exit_code) {
    std::string cmd = std::string(GRCAT_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        *exit_code = -1;
        return "";
    }
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int rc = pclose(pipe);
    *exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return out;
}

void criterion1() {
    Criterion c("criterion-1 example-4.2 dimensions via the CLI", 1.0);
    int rc = 0;
    std::string out = run_cli("demo ex-4.2", &rc);
    c.expect(rc == 0, "demo ex-4.2 exit code " + std::to_string(rc));
    for (const char* frag : {"dimension 3", "dimension 6", "dimension 2", "dimension 4"})
        c.expect(out.find(frag) != std::string::npos, std::string("missing '") + frag + "' in output");
    c.finish();
}

void criterion2() {
    Criterion c("criterion-2 canonical precovering matrices are identities (25 randomized colax functors)",
                30.0);
    for (int i = 0; i < 25; ++i) {
        ColaxPtr x = random_colax_f5(0xacc, i);
        c.expect(check_colax(*x).pass, "corpus member " + std::to_string(i) + " fails the colax axioms");
        GrCategory g = grothendieck(*x);
        LeftTransformation can = canonical_morphism(g, diagonal(g.cat, x->index));
        const IndexCat& I = x->index;
        bool all_id = true;
        for (int a = 0; a < I.n_obj() && all_id; ++a)
            for (int b = 0; b < I.n_obj() && all_id; ++b)
                for (int xo = 0; xo < x->fiber[static_cast<size_t>(a)]->n() && all_id; ++xo)
                    for (int yo = 0; yo < x->fiber[static_cast<size_t>(b)]->n() && all_id; ++yo)
                        all_id = precovering_map(can, a, xo, b, yo).matrix.is_identity();
        c.expect(all_id, "non-identity precovering matrix in corpus member " + std::to_string(i));
    }
    c.finish();
}

void criterion3() {
    Criterion c("criterion-3 triangle identities and the covering factorization", 30.0);
    for (int i = 0; i < 25; ++i) {
        ColaxPtr x = random_colax_f5(0xacc, i);
        Report r = verify_adjunction(x, x->fiber[0]);
        c.expect(r.pass, "triangle identities fail on corpus member " + std::to_string(i));
    }
    Workspace ws = load_document(fixture_document("ex-4.2-1"));
    ColaxPtr x = ws.colaxes.at("X");
    GrCategory g = grothendieck(*x);
    ColaxPtr dg = diagonal(g.cat, x->index);
    LeftTransformation can = canonical_morphism(g, dg);
    bool cov = check_covering(can, 5).pass;
    bool equ = check_fin_equivalence(factor_through_gr(g, can), 5).pass;
    c.expect(cov && equ, "canonical morphism: covering and factor equivalence must both hold");

    CatPtr bigger = extend_with_isolated_object(g.cat);
    KFunctor incl;
    incl.src = g.cat;
    incl.dst = bigger;
    for (int o = 0; o < g.cat->n(); ++o) incl.obj_map.push_back(o);
    for (int a = 0; a < g.cat->n(); ++a)
        for (int b = 0; b < g.cat->n(); ++b) {
            Mat m(g.cat->field, bigger->dim(a, b), g.cat->dim(a, b));
            for (int k = 0; k < g.cat->dim(a, b); ++k) m.at(k, k) = Scalar::one(g.cat->field);
            incl.hom_mats.push_back(std::move(m));
        }
    LeftTransformation noncov =
        compose_left_transformations(diagonal_1cell(incl, x->index, dg, diagonal(bigger, x->index)), can);
    bool ncov = check_covering(noncov, 5).pass;
    bool nequ = check_fin_equivalence(factor_through_gr(g, noncov), 5).pass;
    c.expect(!ncov && !nequ, "non-covering fixture: both sides of the equivalence must fail");
    c.finish();
}

void criterion4() {
    Criterion c("criterion-4 Hom_K dimensions equal brute force on a 50-pair F2 corpus", 120.0);
    Workspace ws = load_document(
        "[field]\nkind = F\np = 2\n"
        "[category A]\nkind = quiver\nobjects = 1 2\narrows = al:1->2\n"
        "[category B]\nkind = quiver\nobjects = 1 2\narrows = a1:1->2 b1:2->1\n"
        "relations = a1*b1*a1 ; b1*a1*b1\n");
    CatPtr a = ws.categories.at("A");
    CatPtr b = ws.categories.at("B");
    Rng rng(0xc4);
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
            for (int i = 0; i + 1 < len; ++i) {
                PMat d = PMat::zero(base, terms[static_cast<size_t>(i)], terms[static_cast<size_t>(i + 1)]);
                for (size_t r = 0; r < d.dst.size(); ++r)
                    for (size_t cc = 0; cc < d.src.size(); ++cc)
                        for (int k = 0; k < base->dim(d.src[cc], d.dst[r]); ++k)
                            if (rng.below(2)) d.at(r, cc).c[static_cast<size_t>(k)] = Scalar::one(base->field);
                diffs.push_back(std::move(d));
            }
            try {
                ProjComplex u = make_complex(base, -static_cast<int>(rng.below(2)), terms, diffs);
                if (u.total_dim() <= 12) return u;
            } catch (const Error&) {
            }
        }
    };
    int pairs = 0, comparisons = 0;
    while (pairs < 50) {
        const CatPtr& base = pairs % 2 ? a : b;
        ProjComplex u = random_complex(base), v = random_complex(base);
        for (int p = v.lo - u.hi() - 1; p <= v.hi() - u.lo + 1; ++p) {
            int got = hom_k(u, v, p).dim();
            int want = oracle::hom_dim_f2_brute(u, v, p);
            if (got != want)
                c.expect(false, "pair " + std::to_string(pairs) + " shift " + std::to_string(p) + ": " +
                                    std::to_string(got) + " vs brute " + std::to_string(want));
            ++comparisons;
        }
        ++pairs;
    }
    c.notes.push_back(std::to_string(comparisons) + " (pair, shift) comparisons against the enumeration");
    c.finish();
}

void criterion5() {
    Criterion c("criterion-5 gluing example n=3: certificate, presentation match, certified verdict", 300.0);
    Workspace ws = load_document(fixture_document("ex-8.6", 3));
    const TiltingColaxData& td = ws.tiltings.at("T");
    TiltingCheckOptions topt;
    topt.depth_cap = 3;
    TiltingColaxReport tilt = check_tilting_colax(td, topt);
    c.expect(tilt.certified, "tilting colax certificate");
    for (const auto& k0 : tilt.k0) c.expect(k0.unimodular, "K0 unimodularity |det| = 1");
    for (const auto& fiber : tilt.certs)
        for (const auto& cert : fiber) c.expect(cert.found, "generation certificate at depth <= 3");

    AssembledTilting at = assemble_tilting(td);
    const auto& eq = ws.equivalences.at("E");
    for (int i = 0; i < 2; ++i) {
        int fib = i + 2;
        const auto& pres = ws.presentations.at("Xp" + std::to_string(fib));
        std::vector<Mor> hints;
        for (const auto& ar : pres.arrows) {
            const ChainMap& cm = eq.spec.arrow_images[static_cast<size_t>(i)].at(ar.name);
            hints.push_back(at.ends[static_cast<size_t>(i)].class_of(
                eq.spec.obj_map[static_cast<size_t>(i)][static_cast<size_t>(ar.src)],
                eq.spec.obj_map[static_cast<size_t>(i)][static_cast<size_t>(ar.dst)], cm));
        }
        MatchResult mr = match_presentation(at.ends[static_cast<size_t>(i)].cat, pres,
                                            eq.spec.obj_map[static_cast<size_t>(i)], hints);
        c.expect(mr.ok, "End(T(" + std::to_string(fib) + ")) matches the X'(" + std::to_string(fib) +
                            ") presentation over Q");
    }

    GluingOptions gopt;
    GluingReport g = glue(td.x, ws.colaxes.at("Xp"), td, eq.spec, gopt);
    c.expect(g.certified, "glue verdict certified");
    std::string endt, grxp;
    for (const auto& [k, v] : g.kv) {
        if (k == "dim.EndTprime") endt = v;
        if (k == "dim.GrXp") grxp = v;
    }
    c.expect(!endt.empty() && endt == grxp, "dim End(T') = dim Gr(X') (" + endt + " vs " + grxp + ")");
    c.finish();
}

void criterion6() {
    Criterion c("criterion-6 desk instances of the unified theorem via the CLI", 360.0);
    for (const char* inst : {"a", "b", "c"}) {
        auto t0 = Clock::now();
        int rc = 0;
        std::string out = run_cli(std::string("demo thm-8.5 --instance ") + inst, &rc);
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        c.expect(rc == 0, std::string("instance ") + inst + " exit code " + std::to_string(rc));
        c.expect(out.find("verdict: certified") != std::string::npos,
                 std::string("instance ") + inst + " not certified");
        c.expect(secs < 120.0, std::string("instance ") + inst + " exceeded 2 minutes");
    }
    c.finish();
}

void criterion7() {
    Criterion c("criterion-7 composite colax axioms and precovering preservation for K^b prj", 120.0);
    Workspace ws = load_document(fixture_document("ex-8.6", 3));
    ColaxPtr x = ws.colaxes.at("X");
    KbColax vx = kb_prj(x);
    const IndexCat& I = x->index;
    std::vector<std::pair<int, ProjComplex>> sample;
    for (int i = 0; i < I.n_obj(); ++i) {
        const CatPtr& fib = x->fiber[static_cast<size_t>(i)];
        for (int o = 0; o < fib->n(); ++o) {
            sample.push_back({i, stalk_complex(fib, o)});
            sample.push_back({i, stalk_complex(fib, o, 1)});
        }
    }
    for (const char* nm : {"T2_1", "T2_2", "T3_1", "T3_2", "T3_3"}) {
        const ProjComplex& u = ws.complexes.at(nm);
        int fib = u.base.get() == x->fiber[0].get() ? 0 : 1;
        sample.push_back({fib, u});
        sample.push_back({fib, shift_complex(u, -1)});
    }
    c.notes.push_back(std::to_string(sample.size()) + " demanded complexes");
    c.expect(sample.size() >= 20, "sample too small");
    for (const auto& [i, u] : sample) {
        Report ax = vx.check_axioms_at(i, u);
        if (!ax.pass) c.expect(false, "axiom instance fails on a sampled complex");
    }
    GrCategory g = grothendieck(*x);
    LeftTransformation can = canonical_morphism(g, diagonal(g.cat, I));
    std::vector<PrecoveringPreservedSample> pairs;
    const char* t2[] = {"T2_1", "T2_2"};
    const char* t3[] = {"T3_1", "T3_2", "T3_3"};
    for (const char* un : t2)
        for (const char* vn : t3) pairs.push_back({0, 1, ws.complexes.at(un), ws.complexes.at(vn)});
    for (const char* un : t3)
        for (const char* vn : t2) pairs.push_back({1, 0, ws.complexes.at(un), ws.complexes.at(vn)});
    for (const char* un : t3)
        for (const char* vn : t3) pairs.push_back({1, 1, ws.complexes.at(un), ws.complexes.at(vn)});
    Report pp = check_precovering_preserved(can, pairs);
    c.expect(pp.pass, "precovering preservation on the T(i) pairs");
    c.finish();
}

void criterion8() {
    Criterion c("criterion-8 byte-identical reports across reruns and job counts", 240.0);
    std::string dir = GRCAT_FIXTURE_DIR;
    std::vector<std::string> cmds = {
        "demo ex-4.2",
        "demo thm-8.5 --instance a",
        "demo ex-8.6 --n 3",
        "build-cat " + dir + "/ex-8.6-n3.toy --name X3 --emit",
        "gr " + dir + "/ex-8.6-n3.toy --colax X --emit",
        "check-colax " + dir + "/ex-8.6-n3.toy --colax X",
        "check-covering " + dir + "/ex-4.2-1.toy --transformation F",
        "hom " + dir + "/ex-8.6-n3.toy --source T3_2 --target T3_3 --shift 1",
        "presilting " + dir + "/ex-8.6-n3.toy --tilting T --fiber 3",
        "k0 " + dir + "/ex-8.6-n3.toy --tilting T --fiber 3",
        "find-cert " + dir + "/ex-8.6-n3.toy --tilting T --fiber 3 --target 3",
        "end-cat " + dir + "/ex-8.6-n3.toy --tilting T --fiber 2 --emit",
        "check-tilting-colax " + dir + "/ex-8.6-n3.toy --tilting T",
        "verify-adjunction " + dir + "/ex-4.2-1.toy --colax X --category k",
        "glue " + dir + "/thm-8.5-a.toy --format kv",
    };
    for (const auto& cmd : cmds) {
        int rc1 = 0, rc2 = 0, rc3 = 0;
        std::string a = run_cli(cmd + " --seed 17 --jobs 1", &rc1);
        std::string b = run_cli(cmd + " --seed 17 --jobs 1", &rc2);
        std::string d = run_cli(cmd + " --seed 17 --jobs 8", &rc3);
        c.expect(rc1 == rc2 && rc2 == rc3, "exit codes differ for: " + cmd);
        c.expect(a == b, "rerun with the same seed differs for: " + cmd);
        c.expect(a == d, "--jobs 1 vs --jobs 8 differ for: " + cmd);
    }
    int rc = 0;
    run_cli("check-colax " + dir + "/no-such-file.toy --colax X", &rc);
    c.expect(rc == 2, "missing file should exit 2, got " + std::to_string(rc));
    c.finish();
}

}  // namespace

int main() {
    par::set_jobs(0);
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}

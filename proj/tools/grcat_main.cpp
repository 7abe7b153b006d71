#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "grcat/fixtures.hpp"
#include "grcat/par.hpp"

using namespace grcat;

namespace {

struct Options {
    std::uint64_t seed = 1;
    int jobs = 0;
    std::string format = "text";
};

int report_exit(const Report& rep, const Options& opt, const std::string& what) {
    if (opt.format == "kv") {
        std::cout << what << ".pass=" << (rep.pass ? "true" : "false") << "\n";
        for (size_t i = 0; i < rep.notes.size(); ++i)
            std::cout << what << ".note." << i << "=" << rep.notes[i] << "\n";
    } else {
        std::cout << what << ": " << rep.str() << "\n";
    }
    return rep.pass ? 0 : 1;
}

Workspace load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("InputError", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_document(ss.str());
}

const TiltingColaxData& tilting_of(const Workspace& ws, const std::string& name) {
    auto it = ws.tiltings.find(name);
    if (it == ws.tiltings.end()) throw Error("UnresolvedReference", "unknown tilting " + name);
    return it->second;
}

int run_glue_ws(const Workspace& ws, const std::string& tilt_name, const std::string& eq_name,
                const Options& opt, int depth_cap, int size_cap) {
    const TiltingColaxData& td = tilting_of(ws, tilt_name);
    auto eit = ws.equivalences.find(eq_name);
    if (eit == ws.equivalences.end()) throw Error("UnresolvedReference", "unknown equivalence " + eq_name);
    ColaxPtr xp = ws.colaxes.at(eit->second.source);
    GluingOptions gopt;
    gopt.seed = opt.seed;
    gopt.depth_cap = depth_cap;
    gopt.size_cap = size_cap;
    GluingReport g = glue(td.x, xp, td, eit->second.spec, gopt);
    if (opt.format == "kv")
        std::cout << g.kv_text();
    else {
        std::cout << g.text();
        for (const auto& [k, v] : g.kv) std::cout << "  " << k << " = " << v << "\n";
    }
    return g.certified ? 0 : 1;
}

int demo_ex42(const Options& opt) {
    struct Want {
        const char* name;
        int total;
        const char* what;
    };
    const Want wants[] = {{"ex-4.2-1", 3, "triangular algebra"},
                          {"ex-4.2-2", 6, "incidence category of the 3-chain"},
                          {"ex-4.2-3", 2, "monoid algebra of Z/2"},
                          {"ex-4.2-4", 4, "path category of the double arrow"}};
    bool ok = true;
    for (const auto& w : wants) {
        Workspace ws = load_document(fixture_document(w.name));
        GrCategory g = grothendieck(*ws.colaxes.at("X"));
        int total = g.cat->total_dim();
        bool good = total == w.total;
        if (std::string(w.name) == "ex-4.2-1") {
            good = good && g.cat->dim(g.gr_obj(0, 0), g.gr_obj(0, 0)) == 1 &&
                   g.cat->dim(g.gr_obj(0, 0), g.gr_obj(1, 0)) == 1 &&
                   g.cat->dim(g.gr_obj(1, 0), g.gr_obj(0, 0)) == 0 &&
                   g.cat->dim(g.gr_obj(1, 0), g.gr_obj(1, 0)) == 1;
        }
        if (std::string(w.name) == "ex-4.2-4")
            good = good && g.cat->dim(g.gr_obj(0, 0), g.gr_obj(1, 0)) == 2;
        if (opt.format == "kv")
            std::cout << w.name << ".dim=" << total << "\n" << w.name << ".pass=" << (good ? "true" : "false") << "\n";
        else
            std::cout << w.name << ": Gr(Delta(k)) has total dimension " << total << " (" << w.what << ") "
                      << (good ? "ok" : "MISMATCH") << "\n";
        ok = ok && good;
    }
    return ok ? 0 : 1;
}

int demo_ex86(int n, const Options& opt) {
    Workspace ws = load_document(fixture_document("ex-8.6", n));
    // presentation match of each end category against X'(i)
    const TiltingColaxData& td = tilting_of(ws, "T");
    const auto& eq = ws.equivalences.at("E");
    AssembledTilting at = assemble_tilting(td);
    bool match_ok = true;
    for (int i = 0; i + 2 <= n; ++i) {
        int fib = i + 2;
        const auto& pres = ws.presentations.at("Xp" + std::to_string(fib));
        std::vector<Mor> arrow_hints;
        for (const auto& a : pres.arrows) {
            const ChainMap& cm = eq.spec.arrow_images[static_cast<size_t>(i)].at(a.name);
            int su = eq.spec.obj_map[static_cast<size_t>(i)][static_cast<size_t>(a.src)];
            int du = eq.spec.obj_map[static_cast<size_t>(i)][static_cast<size_t>(a.dst)];
            arrow_hints.push_back(at.ends[static_cast<size_t>(i)].class_of(su, du, cm));
        }
        MatchResult mr = match_presentation(at.ends[static_cast<size_t>(i)].cat, pres,
                                            eq.spec.obj_map[static_cast<size_t>(i)], arrow_hints);
        if (opt.format == "kv")
            std::cout << "match.X" << fib << "=" << (mr.ok ? "pass" : "fail") << "\n";
        else
            std::cout << "end category of fiber " << fib << " matches the X'(" << fib
                      << ") presentation: " << (mr.ok ? "yes" : mr.rep.str()) << "\n";
        match_ok = match_ok && mr.ok;
    }
    int rc = run_glue_ws(ws, "T", "E", opt, 4, n <= 4 ? 600 : 20000);
    return (match_ok && rc == 0) ? 0 : 1;
}

int demo_thm85(const std::string& instance, const Options& opt) {
    std::vector<std::string> insts;
    if (instance == "all")
        insts = {"a", "b", "c"};
    else
        insts = {instance};
    int rc = 0;
    for (const auto& inst : insts) {
        Workspace ws = load_document(fixture_document("thm-8.5-" + inst));
        if (opt.format != "kv") std::cout << "== thm-8.5 instance " << inst << " ==\n";
        int r = run_glue_ws(ws, "T", "E", opt, 4, 300);
        rc = rc ? rc : r;
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations with Grothendieck constructions, tilting data and glued derived equivalences"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--seed", opt.seed, "seed for the deterministic search streams");
    app.add_option("--jobs", opt.jobs, "parallelism cap (0 = library default)");
    app.add_option("--format", opt.format, "report style: text or kv")->check(CLI::IsMember({"text", "kv"}));

    std::string file, name, name2, fiber, target;
    int shift = 0, nparam = 3, depth = 4, szcap = 400;
    bool emit = false;

    auto* c_build = app.add_subcommand("build-cat", "build a category from a presentation and report its data");
    c_build->add_option("file", file)->required();
    c_build->add_option("--name", name, "category to report")->required();
    c_build->add_flag("--emit", emit, "emit the explicit category text");

    auto* c_gr = app.add_subcommand("gr", "Grothendieck construction of a colax functor");
    c_gr->add_option("file", file)->required();
    c_gr->add_option("--colax", name)->required();
    c_gr->add_flag("--emit", emit, "emit the resulting category");

    auto* c_cc = app.add_subcommand("check-colax", "verify the colax functor axioms");
    c_cc->add_option("file", file)->required();
    c_cc->add_option("--colax", name)->required();

    auto* c_cov = app.add_subcommand("check-covering", "verify an I-precovering/I-covering");
    c_cov->add_option("file", file)->required();
    c_cov->add_option("--transformation", name)->required();

    auto* c_adj = app.add_subcommand("verify-adjunction", "verify both triangle identities");
    c_adj->add_option("file", file)->required();
    c_adj->add_option("--colax", name)->required();
    c_adj->add_option("--category", name2)->required();

    auto* c_hom = app.add_subcommand("hom", "dimension and basis of Hom_K(U, V[n])");
    c_hom->add_option("file", file)->required();
    c_hom->add_option("--source", name)->required();
    c_hom->add_option("--target", name2)->required();
    c_hom->add_option("--shift", shift);

    auto* c_ps = app.add_subcommand("presilting", "orthogonality of a tilting fiber");
    c_ps->add_option("file", file)->required();
    c_ps->add_option("--tilting", name)->required();
    c_ps->add_option("--fiber", fiber)->required();

    auto* c_k0 = app.add_subcommand("k0", "K0 matrix and unimodularity of a tilting fiber");
    c_k0->add_option("file", file)->required();
    c_k0->add_option("--tilting", name)->required();
    c_k0->add_option("--fiber", fiber)->required();

    auto* c_fc = app.add_subcommand("find-cert", "search a thick-generation certificate");
    c_fc->add_option("file", file)->required();
    c_fc->add_option("--tilting", name)->required();
    c_fc->add_option("--fiber", fiber)->required();
    c_fc->add_option("--target", target)->required();
    c_fc->add_option("--depth", depth);
    c_fc->add_option("--size", szcap);

    auto* c_ec = app.add_subcommand("end-cat", "end category of a tilting fiber");
    c_ec->add_option("file", file)->required();
    c_ec->add_option("--tilting", name)->required();
    c_ec->add_option("--fiber", fiber)->required();
    c_ec->add_flag("--emit", emit);

    auto* c_tc = app.add_subcommand("check-tilting-colax", "verify a tilting colax functor");
    c_tc->add_option("file", file)->required();
    c_tc->add_option("--tilting", name)->required();
    c_tc->add_option("--depth", depth);
    c_tc->add_option("--size", szcap);

    auto* c_glue = app.add_subcommand("glue", "run the full gluing pipeline");
    c_glue->add_option("file", file)->required();
    c_glue->add_option("--tilting", name, "tilting section name (default T)");
    c_glue->add_option("--equivalence", name2, "equivalence section name (default E)");
    c_glue->add_option("--depth", depth);
    c_glue->add_option("--size", szcap);

    auto* c_demo = app.add_subcommand("demo", "run a worked example");
    std::string demo_name, instance = "all";
    c_demo->add_option("name", demo_name, "ex-4.2 | ex-8.6 | thm-8.5")->required();
    c_demo->add_option("--n", nparam, "size parameter for ex-8.6");
    c_demo->add_option("--instance", instance, "a|b|c|all for thm-8.5");

    // global flags may follow the subcommand
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    par::set_jobs(opt.jobs);
    try {
        if (*c_build) {
            Workspace ws = load_file(file);
            CatPtr c = ws.categories.at(name);
            if (emit) std::cout << emit_category(name, *c);
            if (opt.format == "kv")
                std::cout << "dim.total=" << c->total_dim() << "\n";
            else
                std::cout << name << ": " << c->n() << " objects, total dimension " << c->total_dim() << "\n";
            Report rep = c->check();
            return report_exit(rep, opt, "category");
        }
        if (*c_gr) {
            Workspace ws = load_file(file);
            GrCategory g = grothendieck(*ws.colaxes.at(name));
            if (emit) std::cout << emit_category("Gr_" + name, *g.cat);
            if (opt.format == "kv")
                std::cout << "dim.total=" << g.cat->total_dim() << "\nobjects=" << g.cat->n() << "\n";
            else
                std::cout << "Gr(" << name << "): " << g.cat->n() << " objects, total dimension "
                          << g.cat->total_dim() << "\n";
            return 0;
        }
        if (*c_cc) {
            Workspace ws = load_file(file);
            return report_exit(check_colax(*ws.colaxes.at(name)), opt, "colax");
        }
        if (*c_cov) {
            Workspace ws = load_file(file);
            const LeftTransformation& t = ws.transformations.at(name);
            Report pre = check_precovering(t);
            Report cov = check_covering(t, opt.seed);
            Report both = pre;
            both.merge(cov, "covering");
            return report_exit(both, opt, "covering");
        }
        if (*c_adj) {
            Workspace ws = load_file(file);
            return report_exit(verify_adjunction(ws.colaxes.at(name), ws.categories.at(name2)), opt, "adjunction");
        }
        if (*c_hom) {
            Workspace ws = load_file(file);
            HomBasis hb = hom_k(ws.complexes.at(name), ws.complexes.at(name2), shift);
            if (opt.format == "kv")
                std::cout << "dim=" << hb.dim() << "\n";
            else
                std::cout << "dim Hom_K(" << name << ", " << name2 << "[" << shift << "]) = " << hb.dim() << "\n";
            return 0;
        }
        if (*c_ps || *c_k0 || *c_fc || *c_ec) {
            Workspace ws = load_file(file);
            const TiltingColaxData& td = tilting_of(ws, name);
            int fi = td.x->index.obj_index(fiber);
            if (fi < 0) throw Error("UnresolvedReference", "unknown fiber " + fiber);
            const TiltingSubcategoryData& t = td.fibers[static_cast<size_t>(fi)];
            if (*c_ps) return report_exit(check_presilting(t), opt, "presilting");
            if (*c_k0) {
                K0Result k0 = k0_matrix(t);
                if (opt.format == "kv") {
                    std::cout << "unimodular=" << (k0.unimodular ? "true" : "false") << "\n";
                    std::cout << "det=" << k0.det.get_str() << "\nrank=" << k0.rank << "\n";
                } else {
                    std::cout << "K0 matrix (rows: tilting objects, cols: representables):\n";
                    for (const auto& row : k0.m) {
                        for (long v : row) std::cout << "  " << v;
                        std::cout << "\n";
                    }
                    std::cout << "|det| = " << mpz_class(abs(k0.det)).get_str()
                              << (k0.unimodular ? " (unimodular)" : " (NOT unimodular)") << "\n";
                }
                return k0.unimodular ? 0 : 1;
            }
            if (*c_fc) {
                int tx = t.base->obj_index(target);
                if (tx < 0) throw Error("UnresolvedReference", "unknown object " + target);
                GenerationCertificate cert = find_generation_certificate(t, tx, depth, szcap, opt.seed);
                if (!cert.found) {
                    std::cout << (opt.format == "kv" ? "found=false\n"
                                                     : "no certificate found (K0 obstruction or closed frontier)\n");
                    return 1;
                }
                if (opt.format == "kv")
                    std::cout << "found=true\nsteps=" << cert.steps.size() << "\n";
                else {
                    std::cout << "certificate for " << target << " (" << cert.steps.size() << " steps):\n";
                    for (const auto& s : cert.steps) {
                        switch (s.op) {
                            case CertStep::Op::Take: std::cout << "  take " << t.names[static_cast<size_t>(s.amount)] << "\n"; break;
                            case CertStep::Op::Shift: std::cout << "  shift " << s.a << " by " << s.amount << "\n"; break;
                            case CertStep::Op::Cone: std::cout << "  cone " << s.a << " -> " << s.b << " (basis " << s.amount << ")\n"; break;
                            case CertStep::Op::Reduce: std::cout << "  reduce " << s.a << "\n"; break;
                            case CertStep::Op::Block: std::cout << "  block " << s.a << " #" << s.amount << "\n"; break;
                            case CertStep::Op::Equiv: std::cout << "  equiv " << s.a << "\n"; break;
                        }
                    }
                }
                CertReplay rr = replay_certificate(t, cert, opt.seed);
                Report rep;
                if (!rr.ok) rep.fail("replay failed: " + rr.message);
                return report_exit(rep, opt, "certificate");
            }
            EndCategory e = end_category(t);
            if (emit) std::cout << emit_category("End_" + name + "_" + fiber, *e.cat);
            if (opt.format == "kv")
                std::cout << "dim.total=" << e.cat->total_dim() << "\n";
            else
                std::cout << "End(T(" << fiber << ")): " << e.cat->n() << " objects, total dimension "
                          << e.cat->total_dim() << "\n";
            return 0;
        }
        if (*c_tc) {
            Workspace ws = load_file(file);
            TiltingCheckOptions topt;
            topt.depth_cap = depth;
            topt.size_cap = szcap;
            topt.seed = opt.seed;
            TiltingColaxReport rep = check_tilting_colax(tilting_of(ws, name), topt);
            if (opt.format == "kv") std::cout << "certified=" << (rep.certified ? "true" : "false") << "\n";
            return report_exit(rep.overall, opt, "tilting-colax");
        }
        if (*c_glue) {
            Workspace ws = load_file(file);
            return run_glue_ws(ws, name.empty() ? "T" : name, name2.empty() ? "E" : name2, opt, depth, szcap);
        }
        if (*c_demo) {
            if (demo_name == "ex-4.2") return demo_ex42(opt);
            if (demo_name == "ex-8.6") return demo_ex86(nparam, opt);
            if (demo_name == "thm-8.5") return demo_thm85(instance, opt);
            std::cerr << "unknown demo " << demo_name << "\n";
            return 2;
        }
    } catch (const Error& e) {
        if (e.kind == "ParseError" || e.kind == "UnresolvedReference" || e.kind == "InputError" ||
            e.kind == "BadArgument") {
            std::cerr << "input error: " << e.what() << "\n";
            return 2;
        }
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::out_of_range&) {
        std::cerr << "input error: a named entity is not declared in the document\n";
        return 2;
    }
    return 2;
}

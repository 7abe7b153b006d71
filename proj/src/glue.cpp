#include "grcat/glue.hpp"

#include <sstream>

namespace grcat {

std::string GluingReport::kv_text() const {
    std::ostringstream os;
    for (const auto& [k, v] : kv) os << k << "=" << v << "\n";
    return os.str();
}

std::string GluingReport::text() const {
    std::ostringstream os;
    os << "gluing verdict: " << (certified ? "certified" : "partially-certified") << "\n";
    if (!certified && !uncertified_clause.empty()) os << "uncertified clause: " << uncertified_clause << "\n";
    for (const auto& n : overall.notes) os << "  " << n << "\n";
    return os.str();
}

TPrime build_t_prime(const GrCategory& gx, const LeftTransformation& can, const TiltingColaxData& td,
                     std::uint64_t seed) {
    TPrime tp;
    const IndexCat& I = td.x->index;
    for (int i = 0; i < I.n_obj(); ++i)
        for (size_t u = 0; u < td.fibers[static_cast<size_t>(i)].objects.size(); ++u) {
            tp.objects.push_back(map_complex(can.f[static_cast<size_t>(i)],
                                             td.fibers[static_cast<size_t>(i)].objects[u]));
            tp.source.push_back({i, static_cast<int>(u)});
        }
    ensure_basic_local(gx.cat);
    tp.dedup_class.assign(tp.objects.size(), -1);
    for (size_t a = 0; a < tp.objects.size(); ++a) {
        if (tp.dedup_class[a] >= 0) continue;
        int rep = static_cast<int>(tp.dedup_reps.size());
        tp.dedup_reps.push_back(static_cast<int>(a));
        tp.dedup_class[a] = rep;
        for (size_t b = a + 1; b < tp.objects.size(); ++b) {
            if (tp.dedup_class[b] >= 0) continue;
            if (homotopy_equivalent(tp.objects[a], tp.objects[b], seed).equivalent)
                tp.dedup_class[b] = rep;
        }
    }
    return tp;
}

namespace {

// tp index of the image of fiber object (i, u)
int tp_index(const TPrime& tp, int i, int u) {
    for (size_t k = 0; k < tp.source.size(); ++k)
        if (tp.source[k] == std::make_pair(i, u)) return static_cast<int>(k);
    throw Error("Internal", "missing T' object");
}

/* Transports a fiber generation certificate through K^b(prj P(i)): take
 * steps become T' objects, cone ordinals become explicit image maps, and
 * reduce steps become equiv steps carrying the image witnesses. */
GenerationCertificate transport_certificate(const GenerationCertificate& cert,
                                            const TiltingSubcategoryData& fiber_t,
                                            const KFunctor& p_i, const GrCategory& gx, int i,
                                            const TPrime& tp) {
    GenerationCertificate out;
    out.target_name = gx.cat->objects[static_cast<size_t>(gx.gr_obj(i, cert.target_obj))];
    out.target_obj = gx.gr_obj(i, cert.target_obj);
    out.fiber = -1;
    out.found = cert.found;
    std::vector<ProjComplex> fiber_built;
    for (const auto& s : cert.steps) {
        CertStep ns = s;
        ns.map.reset();
        ns.map2.reset();
        switch (s.op) {
            case CertStep::Op::Take:
                fiber_built.push_back(fiber_t.objects[static_cast<size_t>(s.amount)]);
                ns.amount = tp_index(tp, i, s.amount);
                break;
            case CertStep::Op::Shift:
                fiber_built.push_back(shift_complex(fiber_built[static_cast<size_t>(s.a)], s.amount));
                break;
            case CertStep::Op::Cone: {
                ChainMap m;
                if (s.map)
                    m = *s.map;
                else
                    m = hom_k(fiber_built[static_cast<size_t>(s.a)], fiber_built[static_cast<size_t>(s.b)], 0)
                            .basis[static_cast<size_t>(s.amount)];
                fiber_built.push_back(cone(m));
                ns.map = map_chain_map(p_i, m);
                ns.amount = 0;
                break;
            }
            case CertStep::Op::Reduce: {
                MinimizeResult mr = minimize(fiber_built[static_cast<size_t>(s.a)]);
                fiber_built.push_back(mr.m);
                ns.op = CertStep::Op::Equiv;
                ns.map = map_chain_map(p_i, mr.to_min);
                ns.map2 = map_chain_map(p_i, mr.from_min);
                break;
            }
            case CertStep::Op::Block: {
                BlockSplit bs = split_blocks(fiber_built[static_cast<size_t>(s.a)]);
                fiber_built.push_back(bs.blocks[static_cast<size_t>(s.amount)]);
                // the image functor is faithful, so the incidence graph and the
                // block indexing transport unchanged
                break;
            }
            case CertStep::Op::Equiv: {
                fiber_built.push_back(s.map->dst);
                ns.map = map_chain_map(p_i, *s.map);
                ns.map2 = map_chain_map(p_i, *s.map2);
                break;
            }
        }
        out.steps.push_back(std::move(ns));
    }
    return out;
}

}  // namespace

Report verify_t_prime_tilting(const GrCategory& gx, const LeftTransformation& can,
                              const TiltingColaxData& td, const TPrime& tp,
                              const TiltingColaxReport& base_report, const GluingOptions& opt) {
    Report rep;
    const IndexCat& I = td.x->index;

    // orthogonality, route 1 (direct) vs route 2 (fiber decomposition)
    for (size_t A = 0; A < tp.objects.size(); ++A)
        for (size_t B = 0; B < tp.objects.size(); ++B) {
            auto [i, u] = tp.source[A];
            auto [j, v] = tp.source[B];
            const ProjComplex& sig_u = td.fibers[static_cast<size_t>(i)].objects[static_cast<size_t>(u)];
            const ProjComplex& sig_v = td.fibers[static_cast<size_t>(j)].objects[static_cast<size_t>(v)];
            if (tp.objects[A].empty() || tp.objects[B].empty()) continue;
            int plo = tp.objects[B].lo - tp.objects[A].hi();
            int phi = tp.objects[B].hi() - tp.objects[A].lo;
            for (int p = plo; p <= phi; ++p) {
                int r1 = hom_k(tp.objects[A], tp.objects[B], p).dim();
                int r2 = 0;
                for (int a : I.hom(i, j))
                    r2 += hom_k(map_complex(td.x->at(a), sig_u), sig_v, p).dim();
                if (r1 != r2)
                    throw Error("CrossValidationMismatch",
                                "direct and decomposed Hom dimensions disagree at (" + std::to_string(A) + ", " +
                                    std::to_string(B) + ", shift " + std::to_string(p) + "): " +
                                    std::to_string(r1) + " vs " + std::to_string(r2));
                if (p != 0 && r1 != 0)
                    rep.fail("T' orthogonality fails: Hom(T'_" + std::to_string(A) + ", T'_" + std::to_string(B) +
                             "[" + std::to_string(p) + "]) has dimension " + std::to_string(r1));
            }
        }
    rep.note("orthogonality cross-validated on both routes");

    // fiber decomposition along the canonical morphism (the precovering route)
    {
        std::vector<PrecoveringPreservedSample> samples;
        for (size_t A = 0; A < tp.objects.size(); ++A)
            for (size_t B = 0; B < tp.objects.size(); ++B) {
                auto [i, u] = tp.source[A];
                auto [j, v] = tp.source[B];
                samples.push_back({i, j, td.fibers[static_cast<size_t>(i)].objects[static_cast<size_t>(u)],
                                   td.fibers[static_cast<size_t>(j)].objects[static_cast<size_t>(v)]});
            }
        Report pp = check_precovering_preserved(can, samples);
        rep.merge(pp, "precovering preservation");
    }

    // generation: transport the fiber certificates through K^b(prj P(i))
    TiltingSubcategoryData gr_t;
    gr_t.base = gx.cat;
    for (size_t k = 0; k < tp.objects.size(); ++k) gr_t.names.push_back("T'_" + std::to_string(k));
    gr_t.objects = tp.objects;
    for (int i = 0; i < I.n_obj(); ++i) {
        const TiltingSubcategoryData& ft = td.fibers[static_cast<size_t>(i)];
        for (int x = 0; x < ft.base->n(); ++x) {
            const GenerationCertificate& fc = base_report.certs[static_cast<size_t>(i)][static_cast<size_t>(x)];
            bool ok = false;
            if (fc.found) {
                GenerationCertificate moved =
                    transport_certificate(fc, ft, can.f[static_cast<size_t>(i)], gx, i, tp);
                CertReplay rr = replay_certificate(gr_t, moved, opt.seed);
                ok = rr.ok;
                if (!ok) rep.note("transported certificate for " + moved.target_name + " failed: " + rr.message);
            }
            if (!ok) {
                // fall back to a fresh search over Gr(X)
                try {
                    GenerationCertificate fresh = find_generation_certificate(
                        gr_t, gx.gr_obj(i, x), opt.depth_cap, opt.size_cap, opt.seed);
                    ok = fresh.found;
                } catch (const Error& e) {
                    if (e.kind != "CapExceeded") throw;
                }
                if (!ok)
                    rep.fail("no generation certificate over Gr(X) for representable " +
                             gx.cat->objects[static_cast<size_t>(gx.gr_obj(i, x))]);
            }
        }
    }
    if (rep.pass) rep.note("all representables of Gr(X) generated from T'");
    return rep;
}

LeftTransformation build_equivalence(const AssembledTilting& at, const ColaxPtr& xp,
                                     const EquivalenceSpec& spec) {
    const IndexCat& I = at.t_colax->index;
    LeftTransformation eq;
    eq.src = xp;
    eq.dst = at.t_colax;
    for (int i = 0; i < I.n_obj(); ++i) {
        const FinKCat& xpi = *xp->fiber[static_cast<size_t>(i)];
        const EndCategory& ei = at.ends[static_cast<size_t>(i)];
        KFunctor f;
        f.src = xp->fiber[static_cast<size_t>(i)];
        f.dst = ei.cat;
        f.obj_map = spec.obj_map[static_cast<size_t>(i)];
        // evaluate arrow images to classes, then basis labels to composites
        std::map<std::string, Mor> arrow_cls;
        for (const auto& [name, cm] : spec.arrow_images[static_cast<size_t>(i)]) {
            auto loc = xpi.find_label(name);
            if (!loc) throw Error("UnresolvedReference", "equivalence names unknown arrow " + name);
            int srco = f.fobj((*loc)[0]), dsto = f.fobj((*loc)[1]);
            arrow_cls[name] = ei.class_of(srco, dsto, cm);
        }
        auto split = [](const std::string& lab) {
            std::vector<std::string> parts;
            if (lab.rfind("id(", 0) == 0) return parts;
            std::string cur;
            for (char ch : lab) {
                if (ch == '.') {
                    parts.push_back(cur);
                    cur.clear();
                } else
                    cur += ch;
            }
            parts.push_back(cur);
            return parts;
        };
        for (int u = 0; u < xpi.n(); ++u)
            for (int w = 0; w < xpi.n(); ++w) {
                Mat m(ei.cat->field, ei.cat->dim(f.fobj(u), f.fobj(w)), xpi.dim(u, w));
                for (int k = 0; k < xpi.dim(u, w); ++k) {
                    auto parts = split(xpi.label(u, w, k));
                    Mor img = ei.cat->id_mor(f.fobj(u));
                    for (size_t t = parts.size(); t-- > 0;) {
                        auto it = arrow_cls.find(parts[t]);
                        if (it == arrow_cls.end())
                            throw Error("UnresolvedReference", "no image for arrow " + parts[t]);
                        img = ei.cat->compose(it->second, img);
                    }
                    for (int r = 0; r < m.rows; ++r) m.at(r, k) = img.c[static_cast<size_t>(r)];
                }
                f.hom_mats.push_back(std::move(m));
            }
        eq.f.push_back(std::move(f));
    }
    for (int a = 0; a < I.n_mor(); ++a) {
        const auto& m = I.morphisms[static_cast<size_t>(a)];
        NatTransf psi;
        psi.f = compose_functors(at.t_colax->at(a), eq.f[static_cast<size_t>(m.src)]);
        psi.g = compose_functors(eq.f[static_cast<size_t>(m.dst)], xp->at(a));
        const FinKCat& ej = *at.ends[static_cast<size_t>(m.dst)].cat;
        for (int u = 0; u < xp->fiber[static_cast<size_t>(m.src)]->n(); ++u)
            psi.comp.push_back(ej.id_mor(psi.f.fobj(u)));
        eq.psi.push_back(std::move(psi));
    }
    return eq;
}

GluingReport glue(const ColaxPtr& x, const ColaxPtr& xp, const TiltingColaxData& td,
                  const EquivalenceSpec& spec, const GluingOptions& opt) {
    GluingReport g;
    const IndexCat& I = x->index;
    auto clause = [&](const std::string& name, const Report& r) {
        g.put("clause." + name, r.pass ? "pass" : "fail");
        g.overall.merge(r, name);
        if (!r.pass && g.uncertified_clause.empty()) g.uncertified_clause = name;
    };

    // 1. tilting colax functor for X
    TiltingCheckOptions topt;
    topt.depth_cap = opt.depth_cap;
    topt.size_cap = opt.size_cap;
    topt.seed = opt.seed;
    TiltingColaxReport tct = check_tilting_colax(td, topt);
    clause("tilting_colax", tct.overall);

    // 3. Grothendieck constructions
    GrCategory gx = grothendieck(*x);
    GrCategory gxp = grothendieck(*xp);
    g.put("dim.GrX", std::to_string(gx.cat->total_dim()));
    g.put("dim.GrXp", std::to_string(gxp.cat->total_dim()));
    g.put("field", gx.cat->field.str());
    g.put("kflat", "automatic (field coefficients)");

    ColaxPtr dgx = diagonal(gx.cat, I);
    LeftTransformation can = canonical_morphism(gx, dgx);

    // 4. T' and its tilting verification over Gr(X)
    TPrime tp = build_t_prime(gx, can, td, opt.seed);
    g.put("tprime.objects", std::to_string(tp.objects.size()));
    g.put("tprime.dedup", std::to_string(tp.dedup_reps.size()));
    Report tprime_rep = verify_t_prime_tilting(gx, can, td, tp, tct, opt);
    clause("tprime_tilting", tprime_rep);

    // 5. Gr(T) ~ T' through the covering factorization
    Report cover_rep;
    try {
        AssembledTilting at = assemble_tilting(td);
        GrCategory gt = grothendieck(*at.t_colax);
        g.put("dim.GrT", std::to_string(gt.cat->total_dim()));

        // 2. the supplied equivalence T ~ X' (fiberwise criterion)
        LeftTransformation equivalence = build_equivalence(at, xp, spec);
        Report eq_rep = check_equivalence(equivalence, opt.seed);
        clause("equivalence", eq_rep);

        TiltingSubcategoryData tp_data;
        tp_data.base = gx.cat;
        for (size_t k = 0; k < tp.objects.size(); ++k) tp_data.names.push_back("T'_" + std::to_string(k));
        tp_data.objects = tp.objects;
        EndCategory eprime = end_category(tp_data);
        g.put("dim.EndTprimeFull", std::to_string(eprime.cat->total_dim()));

        // restriction of K^b(prj (P,phi)) to T, as a transformation T -> Delta(End T')
        ColaxPtr dep = diagonal(eprime.cat, I);
        LeftTransformation tt;
        tt.src = at.t_colax;
        tt.dst = dep;
        KbPrjPseudo v;
        for (int i = 0; i < I.n_obj(); ++i) {
            const EndCategory& ei = at.ends[static_cast<size_t>(i)];
            KFunctor f;
            f.src = ei.cat;
            f.dst = eprime.cat;
            for (size_t u = 0; u < ei.t.objects.size(); ++u)
                f.obj_map.push_back(tp_index(tp, i, static_cast<int>(u)));
            for (int u = 0; u < ei.cat->n(); ++u)
                for (int w = 0; w < ei.cat->n(); ++w) {
                    Mat m(gx.cat->field, eprime.cat->dim(f.fobj(u), f.fobj(w)), ei.cat->dim(u, w));
                    for (int k = 0; k < ei.cat->dim(u, w); ++k) {
                        ChainMap rep = ei.homs[static_cast<size_t>(u)][static_cast<size_t>(w)]
                                           .basis[static_cast<size_t>(k)];
                        ChainMap img = map_chain_map(can.f[static_cast<size_t>(i)], rep);
                        Mor cls = eprime.class_of(f.fobj(u), f.fobj(w), img);
                        for (int r = 0; r < m.rows; ++r) m.at(r, k) = cls.c[static_cast<size_t>(r)];
                    }
                    f.hom_mats.push_back(std::move(m));
                }
            tt.f.push_back(std::move(f));
        }
        for (int a = 0; a < I.n_mor(); ++a) {
            const auto& m = I.morphisms[static_cast<size_t>(a)];
            const EndCategory& ei = at.ends[static_cast<size_t>(m.src)];
            NatTransf psi;
            psi.f = compose_functors(identity_functor(eprime.cat), tt.f[static_cast<size_t>(m.src)]);
            psi.g = compose_functors(tt.f[static_cast<size_t>(m.dst)], at.t_colax->at(a));
            for (size_t u = 0; u < ei.t.objects.size(); ++u) {
                const ProjComplex& sig_u = ei.t.objects[u];
                // psi~(a)(U) = V(P(j))(rho(a) U) ∘ V(phi(a))(sigma U)
                ChainMap phi_part = v.nat_at(can.psi[static_cast<size_t>(a)], sig_u);
                ChainMap rho_part =
                    map_chain_map(can.f[static_cast<size_t>(m.dst)], td.rho[static_cast<size_t>(a)][u]);
                ChainMap whole = compose_chain_maps(rho_part, phi_part);
                int src_o = tp_index(tp, m.src, static_cast<int>(u));
                int dst_o = tp_index(tp, m.dst, td.act_obj[static_cast<size_t>(a)][u]);
                Vec cls = eprime.homs[static_cast<size_t>(src_o)][static_cast<size_t>(dst_o)].coords_of(whole);
                psi.comp.push_back(Mor{src_o, dst_o, std::move(cls)});
            }
            tt.psi.push_back(std::move(psi));
        }
        Report ltr = check_left_transformation(tt);
        cover_rep.merge(ltr, "restricted transformation");
        if (ltr.pass) {
            Report cov = check_covering(tt, opt.seed);
            cover_rep.merge(cov, "I-covering onto T'");
            if (cov.pass) {
                KFunctor h = factor_through_gr(gt, tt);
                Report he = check_fin_equivalence(h, opt.seed);
                cover_rep.merge(he, "factorization Gr(T) -> End(T')");
                if (he.pass) cover_rep.note("Gr(T) equivalent to T' via the covering factorization");
            }
        }

        // 6. Gr of the supplied equivalence
        Report ge_rep;
        {
            KFunctor ge = gr_on_1cell(gxp, gt, equivalence);
            Report fr = check_functor(ge);
            ge_rep.merge(fr, "Gr(F)");
            if (fr.pass) {
                Report ee = check_fin_equivalence(ge, opt.seed);
                ge_rep.merge(ee, "Gr(F) equivalence");
            }
        }
        clause("gr_equivalence", ge_rep);

        // dedup'd End(T') dimension for the dimension sanity line
        {
            TiltingSubcategoryData dd;
            dd.base = gx.cat;
            for (size_t k = 0; k < tp.dedup_reps.size(); ++k) dd.names.push_back("T'_" + std::to_string(k));
            for (int r : tp.dedup_reps) dd.objects.push_back(tp.objects[static_cast<size_t>(r)]);
            EndCategory de = end_category(dd);
            g.put("dim.EndTprime", std::to_string(de.cat->total_dim()));
        }
    } catch (const Error& e) {
        cover_rep.fail(std::string("pipeline error: ") + e.what());
    }
    clause("covering_factorization", cover_rep);

    g.certified = g.overall.pass;
    g.put("verdict", g.certified ? "certified" : "partially-certified");
    if (!g.certified) g.put("uncertified_clause", g.uncertified_clause);
    return g;
}

}  // namespace grcat

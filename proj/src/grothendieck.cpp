#include "grcat/grothendieck.hpp"

#include "grcat/par.hpp"

namespace grcat {

int GrCategory::gr_obj(int i, int xo) const {
    for (int g = 0; g < static_cast<int>(obj_of.size()); ++g)
        if (obj_of[static_cast<size_t>(g)] == std::make_pair(i, xo)) return g;
    throw Error("Internal", "missing Grothendieck object");
}

GrCategory grothendieck(const ColaxFunctor& x) {
    Report ax = check_colax(x);
    if (!ax.pass) throw Error("ColaxAxiomFailure", ax.str());

    GrCategory g;
    g.x = std::make_shared<ColaxFunctor>(x);
    const IndexCat& I = x.index;

    std::vector<std::string> names;
    for (int i = 0; i < I.n_obj(); ++i)
        for (int xo = 0; xo < x.fiber[static_cast<size_t>(i)]->n(); ++xo) {
            g.obj_of.push_back({i, xo});
            names.push_back(I.objects[static_cast<size_t>(i)] + "." +
                            x.fiber[static_cast<size_t>(i)]->objects[static_cast<size_t>(xo)]);
        }
    int N = static_cast<int>(g.obj_of.size());

    auto cat = std::make_shared<FinKCat>();
    cat->init(x.fiber.empty() ? FieldSpec::rationals() : x.fiber[0]->field, names);
    const FieldSpec& fs = cat->field;

    g.hom_tags.assign(static_cast<size_t>(N) * N, {});
    for (int gx = 0; gx < N; ++gx)
        for (int gy = 0; gy < N; ++gy) {
            auto [i, xo] = g.obj_of[static_cast<size_t>(gx)];
            auto [j, yo] = g.obj_of[static_cast<size_t>(gy)];
            const FinKCat& XJ = *x.fiber[static_cast<size_t>(j)];
            std::vector<std::string> labels;
            auto& tags = g.hom_tags[static_cast<size_t>(gx) * N + static_cast<size_t>(gy)];
            for (int a : I.hom(i, j)) {
                int ax_ = x.at(a).fobj(xo);
                for (int k = 0; k < XJ.dim(ax_, yo); ++k) {
                    tags.push_back({a, k});
                    labels.push_back(I.morphisms[static_cast<size_t>(a)].name + "@" + XJ.label(ax_, yo, k));
                }
            }
            cat->set_basis(gx, gy, std::move(labels));
        }

    // identities: (delta_{a,id_i} eta_i x)_a
    for (int gx = 0; gx < N; ++gx) {
        auto [i, xo] = g.obj_of[static_cast<size_t>(gx)];
        const auto& tags = g.tags(gx, gx);
        Vec coords = vec_zero(fs, static_cast<int>(tags.size()));
        const Mor& eta_x = x.eta[static_cast<size_t>(i)].comp[static_cast<size_t>(xo)];
        for (size_t t = 0; t < tags.size(); ++t)
            if (tags[t].first == I.id_of(i)) coords[t] = eta_x.c[static_cast<size_t>(tags[t].second)];
        cat->set_identity(gx, std::move(coords));
    }

    // composite component at c: (g∘f)_c = sum_{ba=c} g_b . X(b)f_a . theta_{b,a} x
    for (int gx = 0; gx < N; ++gx)
        for (int gy = 0; gy < N; ++gy)
            for (int gz = 0; gz < N; ++gz) {
                auto [i, xo] = g.obj_of[static_cast<size_t>(gx)];
                auto [j, yo] = g.obj_of[static_cast<size_t>(gy)];
                auto [k2, zo] = g.obj_of[static_cast<size_t>(gz)];
                const auto& ftags = g.tags(gx, gy);
                const auto& gtags = g.tags(gy, gz);
                const auto& ctags = g.tags(gx, gz);
                const FinKCat& XJ = *x.fiber[static_cast<size_t>(j)];
                const FinKCat& XK = *x.fiber[static_cast<size_t>(k2)];
                for (size_t fi = 0; fi < ftags.size(); ++fi)
                    for (size_t gi = 0; gi < gtags.size(); ++gi) {
                        auto [a, fk] = ftags[fi];
                        auto [b, gk] = gtags[gi];
                        int c = I.compose(b, a);
                        int ax_ = x.at(a).fobj(xo);
                        Mor fa = XJ.basis_mor(ax_, yo, fk);
                        Mor gb = XK.basis_mor(x.at(b).fobj(yo), zo, gk);
                        const Mor& th = x.theta_at(b, a).comp[static_cast<size_t>(xo)];
                        Mor comp = XK.compose(gb, XK.compose(x.at(b).apply(fa), th));
                        Vec coords = vec_zero(fs, static_cast<int>(ctags.size()));
                        for (size_t t = 0; t < ctags.size(); ++t)
                            if (ctags[t].first == c) coords[t] = comp.c[static_cast<size_t>(ctags[t].second)];
                        cat->set_comp(gx, gy, gz, static_cast<int>(fi), static_cast<int>(gi), std::move(coords));
                    }
            }
    cat->finish();
    Report cc = cat->check();
    if (!cc.pass) throw Error("Internal", "Grothendieck construction is not a category: " + cc.str());
    g.cat = cat;
    return g;
}

KFunctor gr_on_1cell(const GrCategory& gsrc, const GrCategory& gdst, const LeftTransformation& t) {
    const ColaxFunctor& X = *gsrc.x;
    KFunctor h;
    h.src = gsrc.cat;
    h.dst = gdst.cat;
    int N = static_cast<int>(gsrc.obj_of.size());
    h.obj_map.resize(static_cast<size_t>(N));
    for (int gx = 0; gx < N; ++gx) {
        auto [i, xo] = gsrc.obj_of[static_cast<size_t>(gx)];
        h.obj_map[static_cast<size_t>(gx)] = gdst.gr_obj(i, t.f[static_cast<size_t>(i)].fobj(xo));
    }
    for (int gx = 0; gx < N; ++gx)
        for (int gy = 0; gy < N; ++gy) {
            auto [i, xo] = gsrc.obj_of[static_cast<size_t>(gx)];
            auto [j, yo] = gsrc.obj_of[static_cast<size_t>(gy)];
            const auto& ftags = gsrc.tags(gx, gy);
            const auto& itags = gdst.tags(h.fobj(gx), h.fobj(gy));
            Mat m(gsrc.cat->field, static_cast<int>(itags.size()), static_cast<int>(ftags.size()));
            const FinKCat& XPJ = *t.dst->fiber[static_cast<size_t>(j)];
            for (size_t col = 0; col < ftags.size(); ++col) {
                auto [a, fk] = ftags[col];
                int ax_ = X.at(a).fobj(xo);
                Mor fa = X.fiber[static_cast<size_t>(j)]->basis_mor(ax_, yo, fk);
                // F(j) f_a . psi(a) x
                const Mor& psix = t.psi[static_cast<size_t>(a)].comp[static_cast<size_t>(xo)];
                Mor img = XPJ.compose(t.f[static_cast<size_t>(j)].apply(fa), psix);
                for (size_t row = 0; row < itags.size(); ++row)
                    if (itags[row].first == a) m.at(static_cast<int>(row), static_cast<int>(col)) =
                        img.c[static_cast<size_t>(itags[row].second)];
            }
            h.hom_mats.push_back(std::move(m));
        }
    return h;
}

NatTransf gr_on_2cell(const GrCategory& gsrc, const GrCategory& gdst, const TwoMorphism& z) {
    const IndexCat& I = gsrc.x->index;
    NatTransf n;
    n.f = gr_on_1cell(gsrc, gdst, z.src);
    n.g = gr_on_1cell(gsrc, gdst, z.dst);
    const ColaxFunctor& Xp = *z.src.dst;
    for (int gx = 0; gx < static_cast<int>(gsrc.obj_of.size()); ++gx) {
        auto [i, xo] = gsrc.obj_of[static_cast<size_t>(gx)];
        const FinKCat& XPI = *Xp.fiber[static_cast<size_t>(i)];
        int src_o = n.f.fobj(gx), dst_o = n.g.fobj(gx);
        const auto& tags = gdst.tags(src_o, dst_o);
        Vec coords = vec_zero(gdst.cat->field, static_cast<int>(tags.size()));
        // delta_{a,id} component; with the identity realized through eta'
        Mor zx = z.zeta[static_cast<size_t>(i)].comp[static_cast<size_t>(xo)];
        const Mor& etap = Xp.eta[static_cast<size_t>(i)].comp[static_cast<size_t>(z.src.f[static_cast<size_t>(i)].fobj(xo))];
        Mor comp = XPI.compose(zx, etap);
        for (size_t t = 0; t < tags.size(); ++t)
            if (tags[t].first == I.id_of(i)) coords[t] = comp.c[static_cast<size_t>(tags[t].second)];
        n.comp.push_back(Mor{src_o, dst_o, std::move(coords)});
    }
    return n;
}

LeftTransformation canonical_morphism(const GrCategory& g, const ColaxPtr& diag_target) {
    const ColaxFunctor& X = *g.x;
    const IndexCat& I = X.index;
    LeftTransformation t;
    t.src = g.x;
    t.dst = diag_target;
    // P(i): X(i) -> Gr(X)
    for (int i = 0; i < I.n_obj(); ++i) {
        const FinKCat& XI = *X.fiber[static_cast<size_t>(i)];
        KFunctor p;
        p.src = X.fiber[static_cast<size_t>(i)];
        p.dst = g.cat;
        for (int xo = 0; xo < XI.n(); ++xo) p.obj_map.push_back(g.gr_obj(i, xo));
        for (int xo = 0; xo < XI.n(); ++xo)
            for (int yo = 0; yo < XI.n(); ++yo) {
                const auto& tags = g.tags(g.gr_obj(i, xo), g.gr_obj(i, yo));
                Mat m(g.cat->field, static_cast<int>(tags.size()), XI.dim(xo, yo));
                for (int k = 0; k < XI.dim(xo, yo); ++k) {
                    // P(i)f = (delta_{a,id} f . eta_i x)_a
                    Mor f = XI.basis_mor(xo, yo, k);
                    Mor img = XI.compose(f, X.eta[static_cast<size_t>(i)].comp[static_cast<size_t>(xo)]);
                    for (size_t row = 0; row < tags.size(); ++row)
                        if (tags[row].first == I.id_of(i)) m.at(static_cast<int>(row), k) =
                            img.c[static_cast<size_t>(tags[row].second)];
                }
                p.hom_mats.push_back(std::move(m));
            }
        t.f.push_back(std::move(p));
    }
    // phi(a) x = (delta_{b,a} id_{X(a)x})_b
    for (int a = 0; a < I.n_mor(); ++a) {
        const auto& m = I.morphisms[static_cast<size_t>(a)];
        const FinKCat& XI = *X.fiber[static_cast<size_t>(m.src)];
        const FinKCat& XJ = *X.fiber[static_cast<size_t>(m.dst)];
        NatTransf psi;
        psi.f = compose_functors(identity_functor(g.cat), t.f[static_cast<size_t>(m.src)]);
        psi.g = compose_functors(t.f[static_cast<size_t>(m.dst)], X.at(a));
        for (int xo = 0; xo < XI.n(); ++xo) {
            int ax_ = X.at(a).fobj(xo);
            int src_o = g.gr_obj(m.src, xo), dst_o = g.gr_obj(m.dst, ax_);
            const auto& tags = g.tags(src_o, dst_o);
            Vec coords = vec_zero(g.cat->field, static_cast<int>(tags.size()));
            Mor idax = XJ.id_mor(ax_);
            for (size_t row = 0; row < tags.size(); ++row)
                if (tags[row].first == a) coords[row] = idax.c[static_cast<size_t>(tags[row].second)];
            psi.comp.push_back(Mor{src_o, dst_o, std::move(coords)});
        }
        t.psi.push_back(std::move(psi));
    }
    return t;
}

PrecoveringMap precovering_map(const LeftTransformation& t, int i, int x, int j, int y) {
    auto base = diagonal_base(*t.dst);
    if (!base) throw Error("NotDiagonalTarget", "precovering map needs a diagonal target");
    const FinKCat& C = **base;
    const ColaxFunctor& X = *t.src;
    const IndexCat& I = X.index;
    const FinKCat& XJ = *X.fiber[static_cast<size_t>(j)];

    PrecoveringMap pm;
    pm.i = i;
    pm.x = x;
    pm.j = j;
    pm.y = y;
    int fx = t.f[static_cast<size_t>(i)].fobj(x), fy = t.f[static_cast<size_t>(j)].fobj(y);
    std::vector<Vec> cols;
    for (int a : I.hom(i, j)) {
        int ax_ = X.at(a).fobj(x);
        for (int k = 0; k < XJ.dim(ax_, y); ++k) {
            pm.domain_tags.push_back({a, k});
            Mor fa = XJ.basis_mor(ax_, y, k);
            // F(j)(f_a) . psi(a)(x)
            Mor img = C.compose(t.f[static_cast<size_t>(j)].apply(fa),
                                t.psi[static_cast<size_t>(a)].comp[static_cast<size_t>(x)]);
            cols.push_back(img.c);
        }
    }
    pm.matrix = Mat(C.field, C.dim(fx, fy), static_cast<int>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c)
        for (int r = 0; r < pm.matrix.rows; ++r) pm.matrix.at(r, static_cast<int>(c)) = cols[c][static_cast<size_t>(r)];
    return pm;
}

Report check_precovering(const LeftTransformation& t) {
    Report rep;
    auto base = diagonal_base(*t.dst);
    if (!base) throw Error("NotDiagonalTarget", "check_precovering needs a diagonal target");
    const ColaxFunctor& X = *t.src;
    const IndexCat& I = X.index;
    struct Tuple {
        int i, x, j, y;
    };
    std::vector<Tuple> tuples;
    for (int i = 0; i < I.n_obj(); ++i)
        for (int j = 0; j < I.n_obj(); ++j)
            for (int x = 0; x < X.fiber[static_cast<size_t>(i)]->n(); ++x)
                for (int y = 0; y < X.fiber[static_cast<size_t>(j)]->n(); ++y) tuples.push_back({i, x, j, y});
    std::vector<char> bad(tuples.size(), 0);
    par::for_n(static_cast<std::ptrdiff_t>(tuples.size()), [&](std::ptrdiff_t k) {
        const Tuple& tp = tuples[static_cast<size_t>(k)];
        PrecoveringMap pm = precovering_map(t, tp.i, tp.x, tp.j, tp.y);
        if (pm.matrix.rows != pm.matrix.cols || !inverse(pm.matrix)) bad[static_cast<size_t>(k)] = 1;
    });
    for (size_t k = 0; k < tuples.size(); ++k)
        if (bad[k]) {
            const Tuple& tp = tuples[k];
            rep.fail("(F,psi)^(1) not invertible at (i,x,j,y) = (" + I.objects[static_cast<size_t>(tp.i)] + ", " +
                     X.fiber[static_cast<size_t>(tp.i)]->objects[static_cast<size_t>(tp.x)] + ", " +
                     I.objects[static_cast<size_t>(tp.j)] + ", " +
                     X.fiber[static_cast<size_t>(tp.j)]->objects[static_cast<size_t>(tp.y)] + ")");
            return rep;
        }
    return rep;
}

Report check_covering(const LeftTransformation& t, std::uint64_t seed) {
    Report rep = check_precovering(t);
    if (!rep.pass) return rep;
    auto base = diagonal_base(*t.dst);
    const FinKCat& C = **base;
    const ColaxFunctor& X = *t.src;
    for (int c = 0; c < C.n(); ++c) {
        bool hit = false;
        for (int i = 0; i < X.index.n_obj() && !hit; ++i)
            for (int x = 0; x < X.fiber[static_cast<size_t>(i)]->n() && !hit; ++x)
                if (find_iso(C, t.f[static_cast<size_t>(i)].fobj(x), c, seed)) hit = true;
        if (!hit) {
            rep.fail("not dense: object " + C.objects[static_cast<size_t>(c)] + " misses the image");
            return rep;
        }
    }
    return rep;
}

KFunctor counit(const GrCategory& gdelta, const CatPtr& c) {
    auto base = diagonal_base(*gdelta.x);
    if (!base || base->get() != c.get()) throw Error("NotDiagonalTarget", "counit needs Gr(Delta(C))");
    KFunctor q;
    q.src = gdelta.cat;
    q.dst = c;
    int N = static_cast<int>(gdelta.obj_of.size());
    for (int gx = 0; gx < N; ++gx) q.obj_map.push_back(gdelta.obj_of[static_cast<size_t>(gx)].second);
    for (int gx = 0; gx < N; ++gx)
        for (int gy = 0; gy < N; ++gy) {
            int xo = gdelta.obj_of[static_cast<size_t>(gx)].second;
            int yo = gdelta.obj_of[static_cast<size_t>(gy)].second;
            const auto& tags = gdelta.tags(gx, gy);
            Mat m(c->field, c->dim(xo, yo), static_cast<int>(tags.size()));
            for (size_t col = 0; col < tags.size(); ++col)
                m.at(tags[col].second, static_cast<int>(col)) = Scalar::one(c->field);
            q.hom_mats.push_back(std::move(m));
        }
    return q;
}

Report verify_adjunction(const ColaxPtr& x, const CatPtr& c) {
    Report rep;
    // Claim 1: Delta(Q_C) . (P_{Delta C}, phi) = id_{Delta(C)}
    {
        ColaxPtr dc = diagonal(c, x->index);
        GrCategory gd = grothendieck(*dc);
        ColaxPtr dgd = diagonal(gd.cat, x->index);
        LeftTransformation can = canonical_morphism(gd, dgd);
        KFunctor q = counit(gd, c);
        ColaxPtr dci = diagonal(c, x->index);
        LeftTransformation dq = diagonal_1cell(q, x->index, dgd, dci);
        LeftTransformation comp = compose_left_transformations(dq, can);
        LeftTransformation idt = identity_transformation(dc);
        if (!left_transformation_eq(comp, idt)) {
            rep.fail("triangle identity Delta(Q_C).(P,phi) = id fails");
            return rep;
        }
        rep.note("Delta(Q_C).(P,phi) = id holds strictly");
    }
    // Claim 2: Q_{Gr X} . Gr(P_X, phi_X) = id_{Gr X}
    {
        GrCategory g = grothendieck(*x);
        ColaxPtr dg = diagonal(g.cat, x->index);
        LeftTransformation can = canonical_morphism(g, dg);
        GrCategory gdg = grothendieck(*dg);
        KFunctor grp = gr_on_1cell(g, gdg, can);
        KFunctor q = counit(gdg, g.cat);
        KFunctor comp = compose_functors(q, grp);
        if (!functor_eq(comp, identity_functor(g.cat))) {
            rep.fail("triangle identity Q_{GrX}.Gr(P,phi) = id fails");
            return rep;
        }
        rep.note("Q_{GrX}.Gr(P,phi) = id holds strictly");
    }
    return rep;
}

KFunctor factor_through_gr(const GrCategory& g, const LeftTransformation& t) {
    auto base = diagonal_base(*t.dst);
    if (!base) throw Error("NotDiagonalTarget", "factor_through_gr needs a diagonal target");
    const FinKCat& C = **base;
    const ColaxFunctor& X = *t.src;
    KFunctor h;
    h.src = g.cat;
    h.dst = *base;
    int N = static_cast<int>(g.obj_of.size());
    for (int gx = 0; gx < N; ++gx) {
        auto [i, xo] = g.obj_of[static_cast<size_t>(gx)];
        h.obj_map.push_back(t.f[static_cast<size_t>(i)].fobj(xo));
    }
    for (int gx = 0; gx < N; ++gx)
        for (int gy = 0; gy < N; ++gy) {
            auto [i, xo] = g.obj_of[static_cast<size_t>(gx)];
            auto [j, yo] = g.obj_of[static_cast<size_t>(gy)];
            const auto& tags = g.tags(gx, gy);
            Mat m(C.field, C.dim(h.fobj(gx), h.fobj(gy)), static_cast<int>(tags.size()));
            const FinKCat& XJ = *X.fiber[static_cast<size_t>(j)];
            for (size_t col = 0; col < tags.size(); ++col) {
                auto [a, k] = tags[col];
                int ax_ = X.at(a).fobj(xo);
                Mor fa = XJ.basis_mor(ax_, yo, k);
                Mor img = C.compose(t.f[static_cast<size_t>(j)].apply(fa),
                                    t.psi[static_cast<size_t>(a)].comp[static_cast<size_t>(xo)]);
                for (int r = 0; r < m.rows; ++r) m.at(r, static_cast<int>(col)) = img.c[static_cast<size_t>(r)];
            }
            h.hom_mats.push_back(std::move(m));
        }
    // strict universality: Delta(H).(P,phi) must reproduce t
    ColaxPtr dg = diagonal(g.cat, X.index);
    LeftTransformation can = canonical_morphism(g, dg);
    LeftTransformation dh = diagonal_1cell(h, X.index, dg, t.dst);
    LeftTransformation comp = compose_left_transformations(dh, can);
    if (!left_transformation_eq(comp, t))
        throw Error("Internal", "factorization through Gr does not reproduce the transformation");
    return h;
}

}  // namespace grcat

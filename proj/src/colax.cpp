#include "grcat/colax.hpp"

namespace grcat {

const NatTransf& ColaxFunctor::theta_at(int b, int a) const {
    auto it = theta.find({b, a});
    if (it == theta.end()) throw Error("Internal", "missing theta component");
    return it->second;
}

ColaxPtr make_strict(IndexCat index, std::vector<CatPtr> fibers, std::vector<KFunctor> arrows) {
    auto x = std::make_shared<ColaxFunctor>();
    x->index = std::move(index);
    x->fiber = std::move(fibers);
    x->arr = std::move(arrows);
    const IndexCat& I = x->index;
    for (int a = 0; a < I.n_mor(); ++a) {
        const auto& m = I.morphisms[static_cast<size_t>(a)];
        if (x->arr[static_cast<size_t>(a)].src.get() != x->fiber[static_cast<size_t>(m.src)].get() ||
            x->arr[static_cast<size_t>(a)].dst.get() != x->fiber[static_cast<size_t>(m.dst)].get())
            throw Error("SourceTargetMismatch", "functor for " + m.name + " has wrong endpoints");
    }
    for (int i = 0; i < I.n_obj(); ++i) {
        const KFunctor& fid = x->at(I.id_of(i));
        if (!functor_eq(fid, identity_functor(x->fiber[static_cast<size_t>(i)])))
            throw Error("BadArgument", "strict colax functor needs X(id) = id at " + I.objects[static_cast<size_t>(i)]);
        x->eta.push_back(identity_nat(fid));
    }
    for (int a = 0; a < I.n_mor(); ++a)
        for (int b = 0; b < I.n_mor(); ++b) {
            if (!I.composable(b, a)) continue;
            int ba = I.compose(b, a);
            KFunctor comp = compose_functors(x->at(b), x->at(a));
            if (!functor_eq(x->at(ba), comp))
                throw Error("BadArgument", "strict colax functor needs X(ba) = X(b)X(a) at (" +
                                               I.morphisms[static_cast<size_t>(b)].name + ", " +
                                               I.morphisms[static_cast<size_t>(a)].name + ")");
            x->theta[{b, a}] = identity_nat(x->at(ba));
        }
    return x;
}

ColaxPtr diagonal(const CatPtr& c, const IndexCat& index) {
    std::vector<CatPtr> fibers(static_cast<size_t>(index.n_obj()), c);
    std::vector<KFunctor> arrows(static_cast<size_t>(index.n_mor()), identity_functor(c));
    return make_strict(index, std::move(fibers), std::move(arrows));
}

std::optional<CatPtr> diagonal_base(const ColaxFunctor& x) {
    if (x.fiber.empty()) return std::nullopt;
    CatPtr c = x.fiber[0];
    for (const auto& f : x.fiber)
        if (f.get() != c.get()) return std::nullopt;
    KFunctor idf = identity_functor(c);
    for (const auto& a : x.arr)
        if (!functor_eq(a, idf)) return std::nullopt;
    for (const auto& e : x.eta)
        if (!nat_is_identity(e)) return std::nullopt;
    for (const auto& [key, th] : x.theta)
        if (!nat_is_identity(th)) return std::nullopt;
    return c;
}

ColaxPtr twist_colax(const ColaxPtr& x, const std::vector<NatTransf>& taus) {
    const IndexCat& I = x->index;
    if (static_cast<int>(taus.size()) != I.n_mor()) throw Error("BadArgument", "one tau per morphism required");
    auto y = std::make_shared<ColaxFunctor>(*x);
    std::vector<NatTransf> inv;
    inv.reserve(taus.size());
    for (const auto& t : taus) {
        auto ti = nat_inverse(t);
        if (!ti) throw Error("BadArgument", "twist component is not invertible");
        inv.push_back(*ti);
    }
    for (int i = 0; i < I.n_obj(); ++i)
        y->eta[static_cast<size_t>(i)] = vcomp(x->eta[static_cast<size_t>(i)], taus[static_cast<size_t>(I.id_of(i))]);
    for (auto& [key, th] : y->theta) {
        auto [b, a] = key;
        int ba = I.compose(b, a);
        // (tau_b * tau_a)^{-1} = X(b)tau_a^{-1} . tau_b^{-1}X(a)
        NatTransf star_inv = vcomp(whisker_left(x->at(b), inv[static_cast<size_t>(a)]),
                                   whisker_right(inv[static_cast<size_t>(b)], x->at(a)));
        th = vcomp(star_inv, vcomp(x->theta_at(b, a), taus[static_cast<size_t>(ba)]));
    }
    return y;
}

Report check_colax(const ColaxFunctor& x) {
    Report rep;
    const IndexCat& I = x.index;
    {
        Report ic = I.check();
        rep.merge(ic, "index");
        if (!rep.pass) return rep;
    }
    for (int a = 0; a < I.n_mor(); ++a) {
        const auto& m = I.morphisms[static_cast<size_t>(a)];
        Report fr = check_functor(x.at(a));
        if (!fr.pass) {
            rep.merge(fr, "X(" + m.name + ")");
            return rep;
        }
    }
    for (int i = 0; i < I.n_obj(); ++i) {
        const NatTransf& e = x.eta[static_cast<size_t>(i)];
        Report nr = check_nat(e);
        if (!nr.pass) {
            rep.merge(nr, "eta at " + I.objects[static_cast<size_t>(i)]);
            return rep;
        }
    }
    for (const auto& [key, th] : x.theta) {
        Report nr = check_nat(th);
        if (!nr.pass) {
            rep.merge(nr, "theta at (" + I.morphisms[static_cast<size_t>(key.first)].name + ", " +
                              I.morphisms[static_cast<size_t>(key.second)].name + ")");
            return rep;
        }
    }
    // unit axiom (a)
    for (int a = 0; a < I.n_mor(); ++a) {
        const auto& m = I.morphisms[static_cast<size_t>(a)];
        int idi = I.id_of(m.src), idj = I.id_of(m.dst);
        NatTransf left = vcomp(whisker_left(x.at(a), x.eta[static_cast<size_t>(m.src)]), x.theta_at(a, idi));
        if (!nat_is_identity(left))
            rep.fail("unit axiom X(a)eta . theta_{a,id} != id at " + m.name);
        NatTransf right = vcomp(whisker_right(x.eta[static_cast<size_t>(m.dst)], x.at(a)), x.theta_at(idj, a));
        if (!nat_is_identity(right))
            rep.fail("unit axiom eta X(a) . theta_{id,a} != id at " + m.name);
        if (!rep.pass) return rep;
    }
    // cocycle axiom (b)
    for (int a = 0; a < I.n_mor(); ++a)
        for (int b = 0; b < I.n_mor(); ++b) {
            if (!I.composable(b, a)) continue;
            for (int c = 0; c < I.n_mor(); ++c) {
                if (!I.composable(c, b)) continue;
                int ba = I.compose(b, a), cb = I.compose(c, b);
                NatTransf lhs = vcomp(whisker_right(x.theta_at(c, b), x.at(a)), x.theta_at(cb, a));
                NatTransf rhs = vcomp(whisker_left(x.at(c), x.theta_at(b, a)), x.theta_at(c, ba));
                if (!nat_eq(lhs, rhs)) {
                    rep.fail("cocycle axiom fails at (" + I.morphisms[static_cast<size_t>(c)].name + ", " +
                             I.morphisms[static_cast<size_t>(b)].name + ", " + I.morphisms[static_cast<size_t>(a)].name + ")");
                    return rep;
                }
            }
        }
    return rep;
}

LeftTransformation identity_transformation(const ColaxPtr& x) {
    LeftTransformation t;
    t.src = t.dst = x;
    for (int i = 0; i < x->index.n_obj(); ++i) t.f.push_back(identity_functor(x->fiber[static_cast<size_t>(i)]));
    for (int a = 0; a < x->index.n_mor(); ++a) {
        const auto& m = x->index.morphisms[static_cast<size_t>(a)];
        // X(a) . id => id . X(a): both are X(a)
        NatTransf n = identity_nat(compose_functors(x->at(a), t.f[static_cast<size_t>(m.src)]));
        n.g = compose_functors(t.f[static_cast<size_t>(m.dst)], x->at(a));
        t.psi.push_back(std::move(n));
    }
    return t;
}

LeftTransformation diagonal_1cell(const KFunctor& e, const IndexCat& index,
                                  const ColaxPtr& dsrc, const ColaxPtr& ddst) {
    LeftTransformation t;
    t.src = dsrc;
    t.dst = ddst;
    for (int i = 0; i < index.n_obj(); ++i) t.f.push_back(e);
    for (int a = 0; a < index.n_mor(); ++a) {
        NatTransf n = identity_nat(compose_functors(identity_functor(e.dst), e));
        n.g = compose_functors(e, identity_functor(e.src));
        t.psi.push_back(std::move(n));
    }
    return t;
}

LeftTransformation compose_left_transformations(const LeftTransformation& g,
                                                const LeftTransformation& f) {
    if (f.dst.get() != g.src.get()) throw Error("SourceTargetMismatch", "compose_left_transformations");
    LeftTransformation t;
    t.src = f.src;
    t.dst = g.dst;
    const IndexCat& I = f.src->index;
    for (int i = 0; i < I.n_obj(); ++i)
        t.f.push_back(compose_functors(g.f[static_cast<size_t>(i)], f.f[static_cast<size_t>(i)]));
    for (int a = 0; a < I.n_mor(); ++a) {
        const auto& m = I.morphisms[static_cast<size_t>(a)];
        // (psi' o psi)(a) = F'(j) psi(a) . psi'(a) F(i)
        NatTransf n = vcomp(whisker_left(g.f[static_cast<size_t>(m.dst)], f.psi[static_cast<size_t>(a)]),
                            whisker_right(g.psi[static_cast<size_t>(a)], f.f[static_cast<size_t>(m.src)]));
        t.psi.push_back(std::move(n));
    }
    return t;
}

Report check_left_transformation(const LeftTransformation& t) {
    Report rep;
    const ColaxFunctor& X = *t.src;
    const ColaxFunctor& Xp = *t.dst;
    const IndexCat& I = X.index;
    for (int i = 0; i < I.n_obj(); ++i) {
        const KFunctor& fi = t.f[static_cast<size_t>(i)];
        if (fi.src.get() != X.fiber[static_cast<size_t>(i)].get() ||
            fi.dst.get() != Xp.fiber[static_cast<size_t>(i)].get()) {
            rep.fail("F(" + I.objects[static_cast<size_t>(i)] + ") has wrong endpoints");
            return rep;
        }
        Report fr = check_functor(fi);
        if (!fr.pass) {
            rep.merge(fr, "F(" + I.objects[static_cast<size_t>(i)] + ")");
            return rep;
        }
    }
    for (int a = 0; a < I.n_mor(); ++a) {
        const auto& m = I.morphisms[static_cast<size_t>(a)];
        const NatTransf& psi = t.psi[static_cast<size_t>(a)];
        if (!functor_eq(psi.f, compose_functors(Xp.at(a), t.f[static_cast<size_t>(m.src)])) ||
            !functor_eq(psi.g, compose_functors(t.f[static_cast<size_t>(m.dst)], X.at(a)))) {
            rep.fail("psi(" + m.name + ") has wrong endpoints");
            return rep;
        }
        Report nr = check_nat(psi);
        if (!nr.pass) {
            rep.merge(nr, "psi(" + m.name + ")");
            return rep;
        }
    }
    // axiom (a): F(i)eta_i . psi(id_i) = eta'_i F(i)
    for (int i = 0; i < I.n_obj(); ++i) {
        NatTransf lhs = vcomp(whisker_left(t.f[static_cast<size_t>(i)], X.eta[static_cast<size_t>(i)]),
                              t.psi[static_cast<size_t>(I.id_of(i))]);
        NatTransf rhs = whisker_right(Xp.eta[static_cast<size_t>(i)], t.f[static_cast<size_t>(i)]);
        if (!nat_eq(lhs, rhs)) {
            rep.fail("unit square fails at " + I.objects[static_cast<size_t>(i)]);
            return rep;
        }
    }
    // axiom (b): psi(b)X(a) . X'(b)psi(a) . theta'_{b,a}F(i) = F(k)theta_{b,a} . psi(ba)
    for (int a = 0; a < I.n_mor(); ++a)
        for (int b = 0; b < I.n_mor(); ++b) {
            if (!I.composable(b, a)) continue;
            const auto& ma = I.morphisms[static_cast<size_t>(a)];
            int ba = I.compose(b, a);
            NatTransf lhs =
                vcomp(whisker_right(t.psi[static_cast<size_t>(b)], X.at(a)),
                      vcomp(whisker_left(Xp.at(b), t.psi[static_cast<size_t>(a)]),
                            whisker_right(Xp.theta_at(b, a), t.f[static_cast<size_t>(ma.src)])));
            int k = I.morphisms[static_cast<size_t>(b)].dst;
            NatTransf rhs = vcomp(whisker_left(t.f[static_cast<size_t>(k)], X.theta_at(b, a)),
                                  t.psi[static_cast<size_t>(ba)]);
            if (!nat_eq(lhs, rhs)) {
                rep.fail("cocycle hexagon fails at (" + I.morphisms[static_cast<size_t>(b)].name + ", " + ma.name + ")");
                return rep;
            }
        }
    return rep;
}

bool left_transformation_eq(const LeftTransformation& a, const LeftTransformation& b) {
    if (a.f.size() != b.f.size() || a.psi.size() != b.psi.size()) return false;
    for (size_t i = 0; i < a.f.size(); ++i)
        if (!functor_eq(a.f[i], b.f[i])) return false;
    for (size_t i = 0; i < a.psi.size(); ++i)
        if (!nat_eq(a.psi[i], b.psi[i])) return false;
    return true;
}

bool is_equivariant(const LeftTransformation& t) {
    for (const auto& psi : t.psi)
        if (!nat_inverse(psi)) return false;
    return true;
}

TwoMorphism diagonal_2cell(const NatTransf& alpha, const IndexCat& index,
                           const LeftTransformation& src, const LeftTransformation& dst) {
    TwoMorphism z;
    z.src = src;
    z.dst = dst;
    for (int i = 0; i < index.n_obj(); ++i) z.zeta.push_back(alpha);
    return z;
}

Report check_two_morphism(const TwoMorphism& z) {
    Report rep;
    const IndexCat& I = z.src.src->index;
    const ColaxFunctor& X = *z.src.src;
    const ColaxFunctor& Xp = *z.src.dst;
    for (int i = 0; i < I.n_obj(); ++i) {
        Report nr = check_nat(z.zeta[static_cast<size_t>(i)]);
        if (!nr.pass) {
            rep.merge(nr, "zeta(" + I.objects[static_cast<size_t>(i)] + ")");
            return rep;
        }
    }
    for (int a = 0; a < I.n_mor(); ++a) {
        const auto& m = I.morphisms[static_cast<size_t>(a)];
        NatTransf lhs = vcomp(z.dst.psi[static_cast<size_t>(a)],
                              whisker_left(Xp.at(a), z.zeta[static_cast<size_t>(m.src)]));
        NatTransf rhs = vcomp(whisker_right(z.zeta[static_cast<size_t>(m.dst)], X.at(a)),
                              z.src.psi[static_cast<size_t>(a)]);
        if (!nat_eq(lhs, rhs)) {
            rep.fail("compatibility square fails at " + m.name);
            return rep;
        }
    }
    return rep;
}

Report check_fin_equivalence(const KFunctor& f, std::uint64_t seed) {
    Report rep;
    const FinKCat& C = *f.src;
    const FinKCat& D = *f.dst;
    for (int x = 0; x < C.n(); ++x)
        for (int y = 0; y < C.n(); ++y) {
            const Mat& m = f.hom_mat(x, y);
            if (m.rows != m.cols || !inverse(m)) {
                rep.fail("hom matrix at (" + C.objects[static_cast<size_t>(x)] + ", " +
                         C.objects[static_cast<size_t>(y)] + ") is not invertible (not fully faithful)");
                return rep;
            }
        }
    for (int d = 0; d < D.n(); ++d) {
        bool hit = false;
        for (int x = 0; x < C.n() && !hit; ++x)
            if (find_iso(D, f.fobj(x), d, seed)) hit = true;
        if (!hit) {
            rep.fail("object " + D.objects[static_cast<size_t>(d)] + " misses the image (not dense)");
            return rep;
        }
    }
    return rep;
}

std::optional<KFunctor> quasi_inverse(const KFunctor& f, std::uint64_t seed) {
    if (!check_fin_equivalence(f, seed).pass) return std::nullopt;
    const FinKCat& C = *f.src;
    const FinKCat& D = *f.dst;
    KFunctor g;
    g.src = f.dst;
    g.dst = f.src;
    g.obj_map.resize(static_cast<size_t>(D.n()));
    std::vector<IsoWitness> wit(static_cast<size_t>(D.n()));
    for (int d = 0; d < D.n(); ++d) {
        bool found = false;
        for (int x = 0; x < C.n() && !found; ++x)
            if (auto w = find_iso(D, f.fobj(x), d, seed)) {
                g.obj_map[static_cast<size_t>(d)] = x;  // least isomorphic source object
                wit[static_cast<size_t>(d)] = *w;       // fwd: F(x) -> d
                found = true;
            }
        if (!found) return std::nullopt;
    }
    for (int d = 0; d < D.n(); ++d)
        for (int e = 0; e < D.n(); ++e) {
            int x = g.obj_map[static_cast<size_t>(d)], y = g.obj_map[static_cast<size_t>(e)];
            Mat m(C.field, C.dim(x, y), D.dim(d, e));
            auto finv = inverse(f.hom_mat(x, y));
            if (!finv) return std::nullopt;
            for (int k = 0; k < D.dim(d, e); ++k) {
                // u_e^{-1} . g . u_d lands in D(Fx, Fy); pull back along F
                Mor md = D.compose(wit[static_cast<size_t>(e)].bwd,
                                   D.compose(D.basis_mor(d, e, k), wit[static_cast<size_t>(d)].fwd));
                Vec back = mat_apply(*finv, md.c);
                for (int r = 0; r < C.dim(x, y); ++r) m.at(r, k) = back[static_cast<size_t>(r)];
            }
            g.hom_mats.push_back(std::move(m));
        }
    return g;
}

Report check_equivalence(const LeftTransformation& t, std::uint64_t seed) {
    Report rep = check_left_transformation(t);
    if (!rep.pass) return rep;
    const IndexCat& I = t.src->index;
    for (int i = 0; i < I.n_obj(); ++i) {
        Report er = check_fin_equivalence(t.f[static_cast<size_t>(i)], seed);
        if (!er.pass) {
            rep.merge(er, "F(" + I.objects[static_cast<size_t>(i)] + ")");
            return rep;
        }
    }
    for (int a = 0; a < I.n_mor(); ++a)
        if (!nat_inverse(t.psi[static_cast<size_t>(a)])) {
            rep.fail("psi(" + I.morphisms[static_cast<size_t>(a)].name + ") is not invertible");
            return rep;
        }
    rep.note("equivalence by the fiberwise criterion");
    return rep;
}

}  // namespace grcat

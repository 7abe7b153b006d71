#ifndef GRCAT_PSEUDO_HPP
#define GRCAT_PSEUDO_HPP

#include <functional>
#include <mutex>

#include "grcat/colax.hpp"
#include "grcat/homotopy.hpp"

namespace grcat {

/* A computable pseudofunctor V out of k-Cat is given by cell actions plus
 * invertible eta/theta comparisons.  The composite VX is evaluated lazily:
 * fibers are never materialized, operations take explicit objects.  Traits
 * supply the target cell types:
 *
 *   using Obj / Cell2;
 *   Obj map_obj(const KFunctor&, const Obj&);
 *   Cell2 map_cell(const KFunctor&, const Cell2&);
 *   Cell2 nat_at(const NatTransf&, const Obj&);
 *   Cell2 eta_at(const CatPtr&, const Obj&);                       // eta^V_C at o
 *   Cell2 theta_at(const KFunctor& g, const KFunctor& f, const Obj&);
 *   Cell2 theta_inv_at(const KFunctor& g, const KFunctor& f, const Obj&);
 *   Cell2 id2(const Obj&);
 *   Cell2 compose2(const Cell2&, const Cell2&);
 *   bool eq2(const Cell2&, const Cell2&);                          // target 2-cell equality
 */

/* Identity pseudofunctor on k-Cat: objects of V(C) are objects of C. */
struct IdentityPseudo {
    struct Obj {
        CatPtr cat;
        int o;
    };
    struct Cell2 {
        CatPtr cat;
        Mor m;
    };

    Obj map_obj(const KFunctor& f, const Obj& x) const { return {f.dst, f.fobj(x.o)}; }
    Cell2 map_cell(const KFunctor& f, const Cell2& c) const { return {f.dst, f.apply(c.m)}; }
    Cell2 nat_at(const NatTransf& a, const Obj& x) const {
        return {a.f.dst, a.comp[static_cast<size_t>(x.o)]};
    }
    Cell2 eta_at(const CatPtr& c, const Obj& x) const { return {c, c->id_mor(x.o)}; }
    Cell2 theta_at(const KFunctor& g, const KFunctor& f, const Obj& x) const {
        return {g.dst, g.dst->id_mor(g.fobj(f.fobj(x.o)))};
    }
    Cell2 theta_inv_at(const KFunctor& g, const KFunctor& f, const Obj& x) const {
        return theta_at(g, f, x);
    }
    Cell2 id2(const Obj& x) const { return {x.cat, x.cat->id_mor(x.o)}; }
    Cell2 compose2(const Cell2& b, const Cell2& a) const { return {b.cat, b.cat->compose(b.m, a.m)}; }
    bool eq2(const Cell2& a, const Cell2& b) const { return mor_eq(a.m, b.m); }
};

/* K^b ∘ prj realized on formal sums of representables: strictly functorial,
 * so the eta/theta comparisons are identity chain maps; 2-cell equality is
 * equality in the homotopy category (difference null-homotopic). */
struct KbPrjPseudo {
    using Obj = ProjComplex;
    using Cell2 = ChainMap;

    Obj map_obj(const KFunctor& f, const Obj& u) const { return map_complex(f, u); }
    Cell2 map_cell(const KFunctor& f, const Cell2& m) const { return map_chain_map(f, m); }
    Cell2 nat_at(const NatTransf& a, const Obj& u) const;
    Cell2 eta_at(const CatPtr&, const Obj& u) const { return identity_chain_map(u); }
    Cell2 theta_at(const KFunctor& g, const KFunctor& f, const Obj& u) const {
        ChainMap m = identity_chain_map(map_complex(g, map_complex(f, u)));
        m.src = map_complex(compose_functors(g, f), u);
        return m;
    }
    Cell2 theta_inv_at(const KFunctor& g, const KFunctor& f, const Obj& u) const {
        ChainMap m = identity_chain_map(map_complex(g, map_complex(f, u)));
        m.dst = map_complex(compose_functors(g, f), u);
        return m;
    }
    Cell2 id2(const Obj& u) const { return identity_chain_map(u); }
    Cell2 compose2(const Cell2& b, const Cell2& a) const { return compose_chain_maps(b, a); }
    bool eq2(const Cell2& a, const Cell2& b) const { return null_homotopic(chain_sub(a, b)); }
};

/* The composite colax functor VX, with
 *   eta^{VX}_i = eta^V_{X(i)} . V(eta^X_i),  theta^{VX}_{b,a} = theta^V . V(theta^X),
 * evaluated on demanded cells only. */
template <class V>
struct LazyColax {
    ColaxPtr x;
    V v;

    typename V::Obj apply_arrow(int a, const typename V::Obj& o) const {
        return v.map_obj(x->at(a), o);
    }
    // eta^{VX}_i at o = eta^V_{X(i)}(o) ∘ V(eta^X_i)(o)
    typename V::Cell2 eta_at(int i, const typename V::Obj& o) const {
        return v.compose2(v.eta_at(x->fiber[static_cast<size_t>(i)], o), v.nat_at(x->eta[static_cast<size_t>(i)], o));
    }
    // theta^{VX}_{b,a} at o = theta^V_{X(b),X(a)}(o) ∘ V(theta^X_{b,a})(o)
    typename V::Cell2 theta_at(int b, int a, const typename V::Obj& o) const {
        return v.compose2(v.theta_at(x->at(b), x->at(a), o), v.nat_at(x->theta_at(b, a), o));
    }

    // all unit/cocycle axiom instances touching the object o in fiber i
    Report check_axioms_at(int i, const typename V::Obj& o) const {
        Report rep;
        const IndexCat& I = x->index;
        for (int a = 0; a < I.n_mor(); ++a) {
            const auto& m = I.morphisms[static_cast<size_t>(a)];
            if (m.src != i) continue;
            int idi = I.id_of(i), idj = I.id_of(m.dst);
            // VX(a) eta_i . theta_{a,id} = id
            auto lhs1 = v.compose2(v.map_cell(x->at(a), eta_at(i, o)), theta_at(a, idi, o));
            if (!v.eq2(lhs1, v.id2(apply_arrow(a, o))))
                rep.fail("unit axiom (left) fails at " + m.name);
            // eta_j VX(a) . theta_{id,a} = id
            auto lhs2 = v.compose2(eta_at(m.dst, apply_arrow(a, o)), theta_at(idj, a, o));
            if (!v.eq2(lhs2, v.id2(apply_arrow(a, o))))
                rep.fail("unit axiom (right) fails at " + m.name);
        }
        for (int a = 0; a < I.n_mor(); ++a) {
            const auto& ma = I.morphisms[static_cast<size_t>(a)];
            if (ma.src != i) continue;
            for (int b = 0; b < I.n_mor(); ++b) {
                if (!I.composable(b, a)) continue;
                for (int c = 0; c < I.n_mor(); ++c) {
                    if (!I.composable(c, b)) continue;
                    int ba = I.compose(b, a), cb = I.compose(c, b);
                    auto lhs = v.compose2(theta_at(c, b, apply_arrow(a, o)), theta_at(cb, a, o));
                    auto rhs = v.compose2(v.map_cell(x->at(c), theta_at(b, a, o)), theta_at(c, ba, o));
                    if (!v.eq2(lhs, rhs))
                        rep.fail("cocycle axiom fails at (" + I.morphisms[static_cast<size_t>(c)].name + ", " +
                                 I.morphisms[static_cast<size_t>(b)].name + ", " + ma.name + ")");
                }
            }
        }
        return rep;
    }
};

using KbColax = LazyColax<KbPrjPseudo>;

KbColax kb_prj(const ColaxPtr& x);

/* V applied to a 1-morphism (F,psi): X -> X':
 *   psi_V(a)(o) = theta^V_{F(j),X(a)}(o) . V(psi(a))(o) . theta^V_{X'(a),F(i)}(o)^{-1} */
template <class V>
typename V::Cell2 transported_psi(const V& v, const LeftTransformation& t, int a,
                                  const typename V::Obj& o) {
    const ColaxFunctor& X = *t.src;
    const ColaxFunctor& Xp = *t.dst;
    const auto& m = X.index.morphisms[static_cast<size_t>(a)];
    auto th1 = v.theta_at(t.f[static_cast<size_t>(m.dst)], X.at(a), o);
    auto mid = v.nat_at(t.psi[static_cast<size_t>(a)], o);
    auto th0 = v.theta_inv_at(Xp.at(a), t.f[static_cast<size_t>(m.src)], o);
    return v.compose2(th1, v.compose2(mid, th0));
}

/* 2-morphism transport: V(zeta) = (V(zeta(i)))_i.  Verifies the
 * compatibility square between the transported 1-morphisms at the demanded
 * object. */
template <class V>
Report check_transported_two_morphism(const V& v, const TwoMorphism& z, int a,
                                      const typename V::Obj& o) {
    Report rep;
    const ColaxFunctor& X = *z.src.src;
    const ColaxFunctor& Xp = *z.src.dst;
    const auto& m = X.index.morphisms[static_cast<size_t>(a)];
    auto lhs = v.compose2(transported_psi(v, z.dst, a, o),
                          v.map_cell(Xp.at(a), v.nat_at(z.zeta[static_cast<size_t>(m.src)], o)));
    auto rhs = v.compose2(v.nat_at(z.zeta[static_cast<size_t>(m.dst)], v.map_obj(X.at(a), o)),
                          transported_psi(v, z.src, a, o));
    if (!v.eq2(lhs, rhs))
        rep.fail("transported compatibility square fails at " + m.name);
    return rep;
}

struct PrecoveringPreservedSample {
    int i, j;            // fibers
    ProjComplex u, v;    // u over X(i), v over X(j)
};

/* Precovering preservation, instancewise: for each sample pair and shift p in the
 * nonvanishing window, the map
 *   (+)_{a in I(i,j)} Hom_K(VX(a)U, V[p]) -> Hom_K(VF(i)U, VF(j)V[p])
 *   (f_a) -> sum V(F(j))(f_a) ∘ psi_V(a)(U)
 * is an isomorphism (exact rank computation). */
Report check_precovering_preserved(const LeftTransformation& t,
                                   const std::vector<PrecoveringPreservedSample>& samples);

}  // namespace grcat

#endif

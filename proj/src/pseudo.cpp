#include "grcat/pseudo.hpp"

namespace grcat {

KbPrjPseudo::Cell2 KbPrjPseudo::nat_at(const NatTransf& a, const Obj& u) const {
    // degreewise diagonal of the components at the summands
    ProjComplex src = map_complex(a.f, u);
    ProjComplex dst = map_complex(a.g, u);
    ChainMap m = zero_chain_map(src, dst);
    for (int n = u.lo; n <= u.hi(); ++n) {
        const auto& t = u.term(n);
        PMat& p = m.comp[static_cast<size_t>(n - u.lo)];
        for (size_t i = 0; i < t.size(); ++i) p.at(i, i) = a.comp[static_cast<size_t>(t[i])];
    }
    return m;
}

KbColax kb_prj(const ColaxPtr& x) {
    Report ax = check_colax(*x);
    if (!ax.pass) throw Error("ColaxAxiomFailure", ax.str());
    return KbColax{x, KbPrjPseudo{}};
}

Report check_precovering_preserved(const LeftTransformation& t,
                                   const std::vector<PrecoveringPreservedSample>& samples) {
    Report rep;
    auto base = diagonal_base(*t.dst);
    if (!base) throw Error("NotDiagonalTarget", "check_precovering_preserved needs a diagonal target");
    const ColaxFunctor& X = *t.src;
    const IndexCat& I = X.index;
    KbPrjPseudo v;

    for (const auto& s : samples) {
        const KFunctor& fi = t.f[static_cast<size_t>(s.i)];
        const KFunctor& fj = t.f[static_cast<size_t>(s.j)];
        ProjComplex img_u = map_complex(fi, s.u);
        ProjComplex img_v = map_complex(fj, s.v);
        // shifts where either side could be nonzero
        int plo = std::min(s.v.lo - s.u.hi(), img_v.lo - img_u.hi());
        int phi = std::max(s.v.hi() - s.u.lo, img_v.hi() - img_u.lo);
        if (s.u.empty() || s.v.empty()) {
            rep.note("zero complex in sample; both sides vanish");
            continue;
        }
        auto arrows = I.hom(s.i, s.j);
        for (int p = plo; p <= phi; ++p) {
            // domain: (+)_a Hom_K(VX(a)U, V[p])
            std::vector<HomBasis> dom;
            int dom_dim = 0;
            for (int a : arrows) {
                dom.push_back(hom_k(map_complex(X.at(a), s.u), s.v, p));
                dom_dim += dom.back().dim();
            }
            HomBasis cod = hom_k(img_u, img_v, p);
            if (dom_dim != cod.dim()) {
                rep.fail("dimension mismatch at pair (" + I.objects[static_cast<size_t>(s.i)] + ", " +
                         I.objects[static_cast<size_t>(s.j)] + "), shift " + std::to_string(p) + ": " +
                         std::to_string(dom_dim) + " vs " + std::to_string(cod.dim()));
                continue;
            }
            if (dom_dim == 0) continue;
            Mat m(base->get()->field, cod.dim(), dom_dim);
            int col = 0;
            for (size_t ai = 0; ai < arrows.size(); ++ai) {
                int a = arrows[ai];
                ChainMap psi_v = transported_psi(v, t, a, s.u);  // VF(i)U -> VF(j)VX(a)U
                for (int k = 0; k < dom[ai].dim(); ++k) {
                    ChainMap f = dom[ai].basis[static_cast<size_t>(k)];  // VX(a)U -> V[p]
                    ChainMap img = compose_chain_maps(map_chain_map(fj, f), psi_v);
                    img.dst = cod.w;  // same data, window normalized to the codomain's target
                    Vec coords = cod.coords_of(img);
                    for (int r = 0; r < cod.dim(); ++r) m.at(r, col) = coords[static_cast<size_t>(r)];
                    ++col;
                }
            }
            if (!inverse(m)) {
                rep.fail("induced map not invertible at pair (" + I.objects[static_cast<size_t>(s.i)] + ", " +
                         I.objects[static_cast<size_t>(s.j)] + "), shift " + std::to_string(p));
            }
        }
    }
    return rep;
}

}  // namespace grcat

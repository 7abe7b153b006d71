#ifndef GRCAT_GROTHENDIECK_HPP
#define GRCAT_GROTHENDIECK_HPP

#include "grcat/colax.hpp"

namespace grcat {

/* Gr(X) as a FinKCat plus the indexing metadata: objects are (i, x) pairs,
 * each Hom basis element is tagged with (arrow of I, fiber basis index),
 * ordered by I-morphism index then fiber basis order. */
struct GrCategory {
    ColaxPtr x;
    CatPtr cat;
    std::vector<std::pair<int, int>> obj_of;                 // gr object -> (i, fiber object)
    std::vector<std::vector<std::pair<int, int>>> hom_tags;  // [gx*N+gy] -> (arrow, fiber basis)

    int gr_obj(int i, int xo) const;
    const std::vector<std::pair<int, int>>& tags(int gx, int gy) const {
        return hom_tags[static_cast<size_t>(gx) * obj_of.size() + static_cast<size_t>(gy)];
    }
};

// builds the glued category; the result passes the unit/associativity check
GrCategory grothendieck(const ColaxFunctor& x);

KFunctor gr_on_1cell(const GrCategory& gsrc, const GrCategory& gdst, const LeftTransformation& t);
NatTransf gr_on_2cell(const GrCategory& gsrc, const GrCategory& gdst, const TwoMorphism& z);

// canonical morphism (P, phi): X -> Delta(Gr(X))
LeftTransformation canonical_morphism(const GrCategory& g, const ColaxPtr& diag_target);

struct PrecoveringMap {
    int i, x, j, y;
    std::vector<std::pair<int, int>> domain_tags;  // (arrow, fiber basis element)
    Mat matrix;                                    // rows: target Hom basis, cols: domain tags
};

/* (F,psi)^(1)_{x,y} for a transformation into a diagonal.
 * Throws NotDiagonalTarget. */
PrecoveringMap precovering_map(const LeftTransformation& t, int i, int x, int j, int y);

Report check_precovering(const LeftTransformation& t);  // all maps isomorphisms
Report check_covering(const LeftTransformation& t, std::uint64_t seed);  // + density

// counit Q_C : Gr(Delta(C)) -> C
KFunctor counit(const GrCategory& gdelta, const CatPtr& c);

/* Both triangle identities as strict data equalities:
 * Delta(Q_C).(P,phi) = id on Delta(C) and Q_{Gr(X)}.Gr(P,phi) = id on Gr(X). */
Report verify_adjunction(const ColaxPtr& x, const CatPtr& c);

// unique H with Delta(H).(P,phi) = F; checked against that equation
KFunctor factor_through_gr(const GrCategory& g, const LeftTransformation& t);

}  // namespace grcat

#endif

#ifndef GRCAT_COLAX_HPP
#define GRCAT_COLAX_HPP

#include <map>
#include <optional>

#include "grcat/fincat.hpp"
#include "grcat/index_cat.hpp"

namespace grcat {

/* Colax functor X: I -> k-Cat as finite data.  Strict functors carry
 * explicit identity eta/theta so every code path runs the general
 * formulas. */
struct ColaxFunctor {
    IndexCat index;
    std::vector<CatPtr> fiber;       // per object i of I
    std::vector<KFunctor> arr;       // per morphism a of I
    std::vector<NatTransf> eta;      // per object i: X(id_i) => id_{X(i)}
    std::map<std::pair<int, int>, NatTransf> theta;  // (b,a) composable: X(ba) => X(b)X(a)

    const KFunctor& at(int a) const { return arr[static_cast<size_t>(a)]; }
    const NatTransf& theta_at(int b, int a) const;
};

using ColaxPtr = std::shared_ptr<const ColaxFunctor>;

/* Builds a strict colax functor; requires X(id_i) = id and X(ba) = X(b)X(a)
 * to hold as data and fills in identity eta/theta. */
ColaxPtr make_strict(IndexCat index, std::vector<CatPtr> fibers, std::vector<KFunctor> arrows);

// diagonal on 0-cells: every morphism of I goes to id_C
ColaxPtr diagonal(const CatPtr& c, const IndexCat& index);
std::optional<CatPtr> diagonal_base(const ColaxFunctor& x);  // set iff x is Delta(C) as data

/* Invertible eta/theta twist: given invertible tau_a: X(a) => X(a) per
 * morphism, produces an equal-on-cells colax functor with
 *   eta'_i = eta_i . tau_{id_i},  theta'_{b,a} = (tau_b * tau_a)^{-1} . theta_{b,a} . tau_{ba}. */
ColaxPtr twist_colax(const ColaxPtr& x, const std::vector<NatTransf>& taus);

Report check_colax(const ColaxFunctor& x);

struct LeftTransformation {
    ColaxPtr src, dst;
    std::vector<KFunctor> f;      // per object i: X(i) -> X'(i)
    std::vector<NatTransf> psi;   // per morphism a: X'(a)F(i) => F(j)X(a)
};

LeftTransformation identity_transformation(const ColaxPtr& x);
// diagonal on 1-cells: Delta(E) with psi(a) = id_E
LeftTransformation diagonal_1cell(const KFunctor& e, const IndexCat& index,
                                  const ColaxPtr& dsrc, const ColaxPtr& ddst);
LeftTransformation compose_left_transformations(const LeftTransformation& g,
                                                const LeftTransformation& f);
Report check_left_transformation(const LeftTransformation& t);
bool left_transformation_eq(const LeftTransformation& a, const LeftTransformation& b);
bool is_equivariant(const LeftTransformation& t);  // all psi(a) invertible

struct TwoMorphism {
    LeftTransformation src, dst;   // parallel
    std::vector<NatTransf> zeta;   // per i: F(i) => F'(i)
};

TwoMorphism diagonal_2cell(const NatTransf& alpha, const IndexCat& index,
                           const LeftTransformation& src, const LeftTransformation& dst);
Report check_two_morphism(const TwoMorphism& z);

/* Fiberwise equivalence criterion: every F(i) an equivalence of the fibers and every
 * psi(a) invertible.  quasi_inverse picks, per target object, the least
 * isomorphic source object (deterministic). */
Report check_fin_equivalence(const KFunctor& f, std::uint64_t seed);
std::optional<KFunctor> quasi_inverse(const KFunctor& f, std::uint64_t seed);
Report check_equivalence(const LeftTransformation& t, std::uint64_t seed);

}  // namespace grcat

#endif

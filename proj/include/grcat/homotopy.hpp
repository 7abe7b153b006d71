#ifndef GRCAT_HOMOTOPY_HPP
#define GRCAT_HOMOTOPY_HPP

#include "grcat/fincat.hpp"

namespace grcat {

/* Morphism of formal sums of representables: a dst x src matrix whose
 * (r,c) entry lies in C(src[c], dst[r]) (Yoneda).  Composition is matrix
 * multiplication over the composition tables. */
struct PMat {
    CatPtr base;
    std::vector<int> src, dst;  // summand object ids
    std::vector<Mor> e;         // row-major, dst.size() x src.size()

    Mor& at(size_t r, size_t c) { return e[r * src.size() + c]; }
    const Mor& at(size_t r, size_t c) const { return e[r * src.size() + c]; }

    static PMat zero(const CatPtr& base, std::vector<int> src, std::vector<int> dst);
    static PMat identity(const CatPtr& base, std::vector<int> objs);
};

PMat pmat_mul(const PMat& a, const PMat& b);  // a ∘ b
PMat pmat_add(const PMat& a, const PMat& b);
PMat pmat_scale(const Scalar& s, const PMat& a);
bool pmat_eq(const PMat& a, const PMat& b);
bool pmat_is_zero(const PMat& a);
bool pmat_is_identity(const PMat& a);
std::optional<PMat> pmat_inverse(const PMat& a);  // two-sided, exact solve

// image of a PMat under a functor, applied entrywise
PMat pmat_map(const KFunctor& f, const PMat& a);

/* Bounded complex of formal sums of representables; diff[k] maps the term
 * in degree lo+k to degree lo+k+1; d∘d = 0 is enforced by validate(). */
struct ProjComplex {
    CatPtr base;
    int lo = 0;
    std::vector<std::vector<int>> terms;
    std::vector<PMat> diff;  // size = max(terms.size()-1, 0)

    bool empty() const { return terms.empty(); }
    int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
    std::vector<int> term(int n) const;
    PMat d(int n) const;  // zero map outside the window
    int total_summands() const;
    int total_dim() const;  // sum over degrees and summands of module dimensions
    void validate() const;
    std::string key() const;  // canonical serialization, used for dedup/memo
};

ProjComplex stalk_complex(const CatPtr& base, int obj, int degree = 0);
ProjComplex make_complex(const CatPtr& base, int lo, std::vector<std::vector<int>> terms,
                         std::vector<PMat> diffs);
ProjComplex shift_complex(const ProjComplex& u, int n);  // U[n]^k = U^{k+n}, d[n] = (-1)^n d
ProjComplex direct_sum(const ProjComplex& u, const ProjComplex& v);
ProjComplex trim(const ProjComplex& u);  // drop empty boundary degrees
ProjComplex map_complex(const KFunctor& f, const ProjComplex& u);  // prj on objects
bool complex_eq(const ProjComplex& u, const ProjComplex& v);

/* Degree-0 chain map; maps to a shifted target are formed by shifting the
 * target complex first. */
struct ChainMap {
    ProjComplex src, dst;
    std::vector<PMat> comp;  // per degree of src's window: src.term(n) -> dst.term(n)

    PMat at_degree(int n) const;
};

ChainMap zero_chain_map(const ProjComplex& u, const ProjComplex& w);
ChainMap identity_chain_map(const ProjComplex& u);
bool is_chain_map(const ChainMap& f);
ChainMap compose_chain_maps(const ChainMap& g, const ChainMap& f);
ChainMap chain_add(const ChainMap& a, const ChainMap& b);
ChainMap chain_scale(const Scalar& s, const ChainMap& a);
ChainMap chain_sub(const ChainMap& a, const ChainMap& b);
ChainMap map_chain_map(const KFunctor& f, const ChainMap& m);
ChainMap shift_chain_map(const ChainMap& f, int n);  // f[n]: U[n] -> W[n]
bool chain_map_eq(const ChainMap& a, const ChainMap& b);

// solves f = d h + h d for h; witness optional
bool null_homotopic(const ChainMap& f);

/* Basis of Hom_{K^b}(U, V[n]): chain maps modulo null-homotopics, with the
 * reduced-echelon complement of the boundary space as the quotient basis. */
struct HomBasis {
    ProjComplex u, w;  // w = V[n] with signs applied
    int n = 0;
    std::vector<ChainMap> basis;
    Mat cycle_rows, boundary_rows, rep_rows;  // global entry coordinates

    int dim() const { return static_cast<int>(basis.size()); }
    // class of a chain map U -> V[n] in the quotient basis
    Vec coords_of(const ChainMap& f) const;
    ChainMap from_coords(const Vec& coords) const;
};

HomBasis hom_k(const ProjComplex& u, const ProjComplex& v, int n);

// cone with differential [[-d_U, 0], [f, d_V]] on U[1] (+) V
ProjComplex cone(const ChainMap& f);
// the cone together with its two structure chain maps V -> C and C -> U[1]
struct ConeData {
    ProjComplex c;
    ChainMap incl;  // V -> C
    ChainMap proj;  // C -> U[1]
};
ConeData cone_with_maps(const ChainMap& f);

struct MinimizeResult {
    ProjComplex m;
    ChainMap to_min;    // U -> m
    ChainMap from_min;  // m -> U; to_min ∘ from_min = id strictly
};

/* Cancels invertible differential entries between equal summands by exact
 * elimination until the differential is radical.  Requires a basic base
 * category with local endomorphism rings (NotBasicLocal). */
MinimizeResult minimize(const ProjComplex& u);

struct HomotopyDecision {
    bool equivalent = false;
    bool exhaustive = true;  // false: a negative verdict is Monte Carlo only
    ChainMap fwd, bwd;       // verified witnesses when equivalent
};

HomotopyDecision homotopy_equivalent(const ProjComplex& u, const ProjComplex& v,
                                     std::uint64_t seed);

/* Direct-sum blocks of a complex: connected components of the summand/
 * differential incidence graph, with inclusion/projection witnesses. */
struct BlockSplit {
    std::vector<ProjComplex> blocks;
    std::vector<ChainMap> incl;  // block -> U
    std::vector<ChainMap> proj;  // U -> block
};
BlockSplit split_blocks(const ProjComplex& u);

// marks the base as basic-local-verified (throws NotBasicLocal on failure)
void ensure_basic_local(const CatPtr& base);

}  // namespace grcat

#endif

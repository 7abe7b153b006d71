#ifndef GRCAT_TILTING_HPP
#define GRCAT_TILTING_HPP

#include "grcat/pseudo.hpp"

namespace grcat {

struct TiltingSubcategoryData {
    CatPtr base;
    std::vector<std::string> names;
    std::vector<ProjComplex> objects;

    int find(const std::string& name) const;
};

// Hom_K(U, V[n]) = 0 for all pairs and all n != 0 in the support window
Report check_presilting(const TiltingSubcategoryData& t);

struct K0Result {
    std::vector<std::vector<long>> m;  // rows: T_j, cols: representables P_x
    bool square = false;
    bool unimodular = false;
    mpz_class det;
    int rank = 0;
};
K0Result k0_matrix(const TiltingSubcategoryData& t);

/* Replayable build script over {take, shift, cone, reduce, block, equiv};
 * `reduce` (minimization) is included so summand extraction is a plain block
 * pick, and `equiv` swaps in a homotopy-equivalent object whose witness pair
 * is re-verified on replay (transported certificates use it). */
struct CertStep {
    enum class Op { Take, Shift, Cone, Reduce, Block, Equiv } op = Op::Take;
    int a = -1, b = -1;            // step operands
    int amount = 0;                // take: object index; shift: offset; cone: basis ordinal; block: index
    std::optional<ChainMap> map;   // explicit cone map, or equiv forward witness
    std::optional<ChainMap> map2;  // equiv backward witness
};

struct GenerationCertificate {
    std::string target_name;
    int target_obj = -1;  // representable P_x
    int fiber = -1;       // index-category object, when part of tilting colax data
    std::vector<CertStep> steps;
    bool found = false;
};

struct CertReplay {
    bool ok = false;
    std::string message;
    ProjComplex result;
};

CertReplay replay_certificate(const TiltingSubcategoryData& t, const GenerationCertificate& cert,
                              std::uint64_t seed);

/* Breadth-first closure under shift, cones of hom-basis maps, and block
 * splitting of minimized representatives.  Deterministic frontier order.
 * Returns found=false when the K0 screen rules generation out or the
 * reachable set closes; throws CapExceeded when a cap stops the search. */
GenerationCertificate find_generation_certificate(const TiltingSubcategoryData& t, int target_obj,
                                                  int depth_cap, int size_cap, std::uint64_t seed);

/* End category of the listed complexes: objects T_j, Hom = hom_k(.,.,0)
 * classes, composition by representative composition then reduction. */
struct EndCategory {
    TiltingSubcategoryData t;
    CatPtr cat;
    std::vector<std::vector<HomBasis>> homs;  // [i][j]

    Mor class_of(int i, int j, const ChainMap& f) const;
    ChainMap rep_of(int i, int j, const Mor& m) const;
};
EndCategory end_category(const TiltingSubcategoryData& t);

/* Jacobson radical per Hom pair via the trace form of the total algebra
 * (valid in characteristic 0; FieldNotRationals otherwise). */
struct RadicalData {
    std::vector<Mat> rad;   // [x*n+y]: rows span rad(x,y)
    std::vector<Mat> rad2;  // rows span rad^2(x,y)
    int arrow_count(int x, int y) const;  // dim rad/rad^2
};
RadicalData category_radical(const FinKCat& c);

/* Search for an isomorphism build_category(p) -> e guided by hints mapping
 * presentation arrows to morphisms of e; verifies relations exactly. */
struct MatchResult {
    bool ok = false;
    Report rep;
    KFunctor iso;
};
MatchResult match_presentation(const CatPtr& e, const QuiverPresentation& p,
                               const std::vector<int>& obj_hint,   // presentation vertex -> e object
                               const std::vector<Mor>& arrow_hint);  // per presentation arrow

/* Tilting colax functor data: fiberwise tilting sets, the arrow action on
 * objects and generators, and the rho equivalence witnesses of the
 * I-equivariant inclusion (sigma, rho). */
struct TiltingColaxData {
    ColaxPtr x;
    std::vector<TiltingSubcategoryData> fibers;                          // per object of I
    std::vector<std::vector<int>> act_obj;                               // [arrow][obj index]
    std::vector<std::vector<std::pair<std::string, ChainMap>>> gens;     // per fiber: named generators
    std::vector<std::map<std::string, ChainMap>> act_gen;                // [arrow]: generator images
    std::vector<std::vector<ChainMap>> rho;  // [arrow][obj]: kb(X)(a)(sigma U) -> sigma(T(a)U)
    std::vector<GenerationCertificate> user_certs;
};

struct TiltingCheckOptions {
    int depth_cap = 4;
    int size_cap = 400;
    std::uint64_t seed = 1;
};

struct TiltingColaxReport {
    Report overall;
    std::vector<Report> presilting;  // per fiber
    std::vector<K0Result> k0;        // per fiber
    std::vector<std::vector<GenerationCertificate>> certs;  // per fiber, per representable
    Report rho_report;
    bool certified = false;          // all clauses machine-checked
};

TiltingColaxReport check_tilting_colax(const TiltingColaxData& td, const TiltingCheckOptions& opt);

// homotopy-class two-sided inverse of a chain map, if one exists
std::optional<ChainMap> kclass_inverse(const ChainMap& f);

/* Assembles T as an honest colax functor whose fibers are the end
 * categories; the arrow action on morphism classes is conjugation by rho. */
struct AssembledTilting {
    std::vector<EndCategory> ends;
    ColaxPtr t_colax;
};
AssembledTilting assemble_tilting(const TiltingColaxData& td);

}  // namespace grcat

#endif

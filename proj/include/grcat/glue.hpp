#ifndef GRCAT_GLUE_HPP
#define GRCAT_GLUE_HPP

#include "grcat/grothendieck.hpp"
#include "grcat/tilting.hpp"

namespace grcat {

struct GluingOptions {
    std::uint64_t seed = 1;
    int depth_cap = 4;
    int size_cap = 400;
};

struct GluingReport {
    Report overall;
    bool certified = false;
    std::string uncertified_clause;           // set when verdict is partially-certified
    std::vector<std::pair<std::string, std::string>> kv;  // machine-readable summary

    void put(const std::string& k, const std::string& v) { kv.push_back({k, v}); }
    std::string kv_text() const;
    std::string text() const;
};

struct TPrime {
    std::vector<ProjComplex> objects;            // all images, one per (fiber, T-object)
    std::vector<std::pair<int, int>> source;     // (fiber, object index)
    std::vector<int> dedup_class;                // index into dedup representatives
    std::vector<int> dedup_reps;                 // indices of chosen representatives
};

/* Objects K^b(prj P(i))(U) over Gr(X), with duplicates identified up to
 * homotopy equivalence. */
TPrime build_t_prime(const GrCategory& gx, const LeftTransformation& can, const TiltingColaxData& td,
                     std::uint64_t seed);

/* Orthogonality two ways (direct hom_k over Gr(X) and the precovering
 * decomposition through rho) plus certificate transport for generation.
 * Throws CrossValidationMismatch if the two routes disagree. */
Report verify_t_prime_tilting(const GrCategory& gx, const LeftTransformation& can,
                              const TiltingColaxData& td, const TPrime& tp,
                              const TiltingColaxReport& base_report, const GluingOptions& opt);

/* Equivalence X' -> T given fiberwise on generators: object maps plus the
 * chain maps the arrows of X'(i) go to. */
struct EquivalenceSpec {
    std::vector<std::vector<int>> obj_map;                      // [i][x'-object] -> T object index
    std::vector<std::map<std::string, ChainMap>> arrow_images;  // [i]: X'(i) arrow label -> chain map
};

LeftTransformation build_equivalence(const AssembledTilting& at, const ColaxPtr& xp,
                                     const EquivalenceSpec& spec);

/* The full gluing pipeline: tilting colax verification, T' tilting over
 * Gr(X), Gr(T) ~ T' via the covering factorization, and Gr(T) ~ Gr(X') from
 * the supplied equivalence. */
GluingReport glue(const ColaxPtr& x, const ColaxPtr& xp, const TiltingColaxData& td,
                  const EquivalenceSpec& spec, const GluingOptions& opt);

}  // namespace grcat

#endif

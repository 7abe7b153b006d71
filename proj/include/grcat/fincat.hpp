#ifndef GRCAT_FINCAT_HPP
#define GRCAT_FINCAT_HPP

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "grcat/matrix.hpp"
#include "grcat/report.hpp"

namespace grcat {

/* A morphism is a coordinate vector in the Hom(src,dst) basis of its
 * category.  The owning category is passed to the operations. */
struct Mor {
    int src = -1, dst = -1;
    Vec c;
};

bool mor_eq(const Mor& a, const Mor& b);
bool mor_is_zero(const Mor& m);
Mor mor_add(const Mor& a, const Mor& b);
Mor mor_scale(const Scalar& s, const Mor& a);

/* Finite-dimensional k-linear category: explicit Hom bases and structure
 * constants.  Associativity and units are certified by check(). */
class FinKCat {
  public:
    FieldSpec field;
    std::vector<std::string> objects;

    int n() const { return static_cast<int>(objects.size()); }
    int dim(int x, int y) const { return static_cast<int>(labels_[idx(x, y)].size()); }
    int total_dim() const;

    const std::vector<std::string>& basis_labels(int x, int y) const { return labels_[idx(x, y)]; }
    const std::string& label(int x, int y, int k) const { return labels_[idx(x, y)][static_cast<size_t>(k)]; }

    // structure constants: coordinates of (basis g) ∘ (basis f) in Hom(x,z)
    const Vec& comp_basis(int x, int y, int z, int f, int g) const;

    Mor id_mor(int x) const { return Mor{x, x, id_coords_[static_cast<size_t>(x)]}; }
    Mor zero_mor(int x, int y) const { return Mor{x, y, vec_zero(field, dim(x, y))}; }
    Mor basis_mor(int x, int y, int k) const { return Mor{x, y, vec_unit(field, dim(x, y), k)}; }
    Mor compose(const Mor& g, const Mor& f) const;  // g ∘ f

    int obj_index(const std::string& name) const;  // -1 if absent
    // resolves a basis label ("alpha", "id(1)" is not stored here) to (x,y,k)
    std::optional<std::array<int, 3>> find_label(const std::string& lab) const;

    std::string mor_str(const Mor& m) const;

    Report check() const;  // units + associativity on all basis triples

    // construction (textio, grothendieck and build_category use these)
    void init(const FieldSpec& f, std::vector<std::string> objs);
    void set_basis(int x, int y, std::vector<std::string> labs);
    void set_identity(int x, Vec coords);
    void set_comp(int x, int y, int z, int f, int g, Vec coords);
    void finish();  // freezes dimensions, builds the label index

  private:
    size_t idx(int x, int y) const { return static_cast<size_t>(x) * objects.size() + static_cast<size_t>(y); }
    std::vector<std::vector<std::string>> labels_;
    std::vector<Vec> id_coords_;
    // comp_[(x,y,z)][g*dim(x,y)+f] : Vec over Hom(x,z)
    std::vector<std::vector<Vec>> comp_;
    size_t idx3(int x, int y, int z) const {
        size_t n = objects.size();
        return (static_cast<size_t>(x) * n + static_cast<size_t>(y)) * n + static_cast<size_t>(z);
    }
    std::map<std::string, std::array<int, 3>> label_index_;
};

using CatPtr = std::shared_ptr<const FinKCat>;

/* ---- quiver presentations ---- */

struct QuiverArrow {
    std::string name;
    int src = 0, dst = 0;
};

using Path = std::vector<int>;  // arrow indices in application order (rightmost factor first)

struct PathTerm {
    Scalar coeff;
    Path path;
};
using PathComb = std::vector<PathTerm>;

struct QuiverPresentation {
    std::vector<std::string> vertices;
    std::vector<QuiverArrow> arrows;
    std::vector<PathComb> relations;  // each combination is set to zero
    int length_cap = 0;               // 0 = default rule
};

std::string path_str(const QuiverPresentation& p, const Path& path, int src_vertex);

/* Basis extraction: paths up to the cap modulo the homogeneous relation
 * ideal, eliminated degree by degree.  Throws CapExceeded if nilpotency is
 * not certified within the cap, InhomogeneousRelation on bad input. */
CatPtr build_category(const QuiverPresentation& p, const FieldSpec& field);

// evaluate a path combination to a morphism (atoms are arrow/basis labels)
Mor eval_path(const FinKCat& c, const Path& path, int src_obj, const QuiverPresentation& p);

/* ---- functors and natural transformations ---- */

struct KFunctor {
    CatPtr src, dst;
    std::vector<int> obj_map;
    std::vector<Mat> hom_mats;  // [x*n+y]: dim_dst(Fx,Fy) x dim_src(x,y)

    int fobj(int x) const { return obj_map[static_cast<size_t>(x)]; }
    const Mat& hom_mat(int x, int y) const {
        return hom_mats[static_cast<size_t>(x) * src->n() + static_cast<size_t>(y)];
    }
    Mat& hom_mat(int x, int y) {
        return hom_mats[static_cast<size_t>(x) * src->n() + static_cast<size_t>(y)];
    }
    Mor apply(const Mor& m) const;
};

KFunctor identity_functor(const CatPtr& c);
KFunctor compose_functors(const KFunctor& g, const KFunctor& f);  // g ∘ f
Report check_functor(const KFunctor& f);
bool functor_eq(const KFunctor& f, const KFunctor& g);

struct NatTransf {
    KFunctor f, g;             // parallel functors
    std::vector<Mor> comp;     // per object x of f.src: F(x) -> G(x)
};

NatTransf identity_nat(const KFunctor& f);
Report check_nat(const NatTransf& a);
NatTransf vcomp(const NatTransf& b, const NatTransf& a);              // b ∘ a
NatTransf whisker_left(const KFunctor& h, const NatTransf& a);        // h a
NatTransf whisker_right(const NatTransf& a, const KFunctor& k);       // a k
bool nat_eq(const NatTransf& a, const NatTransf& b);
bool nat_is_identity(const NatTransf& a);
std::optional<NatTransf> nat_inverse(const NatTransf& a);

/* ---- isomorphism search and basic/local verification ---- */

struct IsoWitness {
    Mor fwd, bwd;
};

// v with v∘u = id and u∘v = id, if one exists (exact linear solve)
std::optional<Mor> mor_two_sided_inverse(const FinKCat& c, const Mor& u);

/* Deterministic: canonical candidates, exhaustive enumeration for small
 * finite search spaces, then a seeded stream.  A found witness is exact. */
std::optional<IsoWitness> find_iso(const FinKCat& c, int x, int y, std::uint64_t seed);

Report check_basic_local(const FinKCat& c);

}  // namespace grcat

#endif

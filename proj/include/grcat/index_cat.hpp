#ifndef GRCAT_INDEX_CAT_HPP
#define GRCAT_INDEX_CAT_HPP

#include <string>
#include <vector>

#include "grcat/report.hpp"
#include "grcat/scalar.hpp"

namespace grcat {

/* Small index category with finite Hom sets, fully materialized: morphism
 * list plus an explicit composition table. */
struct IndexCat {
    std::vector<std::string> objects;
    struct Morphism {
        std::string name;
        int src = 0, dst = 0;
    };
    std::vector<Morphism> morphisms;
    std::vector<int> identities;        // per object: morphism index
    std::vector<std::vector<int>> comp; // comp[b][a] = b∘a, -1 when not composable

    int n_obj() const { return static_cast<int>(objects.size()); }
    int n_mor() const { return static_cast<int>(morphisms.size()); }
    int compose(int b, int a) const;    // throws on non-composable
    bool composable(int b, int a) const {
        return morphisms[static_cast<size_t>(a)].dst == morphisms[static_cast<size_t>(b)].src;
    }
    std::vector<int> hom(int i, int j) const;  // morphism indices i -> j, in declaration order
    int id_of(int i) const { return identities[static_cast<size_t>(i)]; }
    int obj_index(const std::string& name) const;
    int mor_index(const std::string& name) const;

    Report check() const;  // identities + associativity over all composable triples
};

struct IndexQuiver {
    std::vector<std::string> vertices;
    struct Arrow {
        std::string name;
        int src = 0, dst = 0;
    };
    std::vector<Arrow> arrows;
};

/* Free category on an acyclic quiver: morphisms are all paths, named
 * "a2*a1" right-to-left, identities "id(v)".  Throws CyclicQuiver. */
IndexCat free_on_acyclic_quiver(const IndexQuiver& q);

/* Incidence category of a finite poset: one morphism per pair i <= j.
 * `leq` must be the full relation; reflexivity/antisymmetry/transitivity
 * are checked (NotAPartialOrder). */
IndexCat from_poset(const std::vector<std::string>& elements,
                    const std::vector<std::pair<int, int>>& leq);

/* One-object category from a monoid multiplication table.
 * table[a][b] = a*b; unit index given.  Throws NotAMonoid. */
IndexCat from_monoid(const std::vector<std::string>& elements, int unit,
                     const std::vector<std::vector<int>>& table);

IndexCat trivial_index();

}  // namespace grcat

#endif

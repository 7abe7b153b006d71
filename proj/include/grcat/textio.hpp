#ifndef GRCAT_TEXTIO_HPP
#define GRCAT_TEXTIO_HPP

#include "grcat/glue.hpp"

namespace grcat {

/* Everything a document can declare, resolved.  Categories built from
 * quiver presentations keep their presentation for match-presentation
 * style operations. */
struct Workspace {
    FieldSpec field = FieldSpec::rationals();
    std::vector<std::string> order;  // section names in declaration order
    std::map<std::string, IndexCat> indexes;
    std::map<std::string, CatPtr> categories;
    std::map<std::string, QuiverPresentation> presentations;
    std::map<std::string, KFunctor> functors;
    std::map<std::string, NatTransf> nats;
    std::map<std::string, ColaxPtr> colaxes;
    std::map<std::string, LeftTransformation> transformations;
    std::map<std::string, ProjComplex> complexes;
    std::map<std::string, ChainMap> chainmaps;
    std::map<std::string, TiltingColaxData> tiltings;
    struct EquivEntry {
        std::string source, tilting;
        EquivalenceSpec spec;
    };
    std::map<std::string, EquivEntry> equivalences;
    std::map<std::string, std::vector<GenerationCertificate>> certificates;  // keyed by tilting name
};

/* Parses the section/key=value text format.  ParseError carries the line
 * number; dangling names raise UnresolvedReference. */
Workspace load_document(const std::string& text);

// scalar formatting: rationals as n/d, residues as bare integers
std::string scalar_str(const Scalar& s);

// linear combination of basis labels, canonical ordering
std::string mor_expr(const FinKCat& c, const Mor& m);

std::string emit_field(const FieldSpec& fs);
std::string emit_index(const std::string& name, const IndexCat& i);
std::string emit_presentation(const std::string& name, const QuiverPresentation& p, const FieldSpec& fs);
std::string emit_category(const std::string& name, const FinKCat& c);  // explicit form
std::string emit_functor(const std::string& name, const std::string& src, const std::string& dst,
                         const KFunctor& f);
std::string emit_complex(const std::string& name, const std::string& base, const ProjComplex& u);
std::string emit_chainmap(const std::string& name, const std::string& src, const std::string& dst,
                          const ChainMap& f);

// parse a morphism expression ("2*a1*b1 + -1/2*id(1)") in a category
Mor parse_mor_expr(const FinKCat& c, const std::string& text, int src_hint = -1, int dst_hint = -1);

}  // namespace grcat

#endif

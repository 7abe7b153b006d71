#ifndef GRCAT_FIXTURES_HPP
#define GRCAT_FIXTURES_HPP

#include "grcat/textio.hpp"

namespace grcat {

/* Input documents for the worked examples; `demo` loads these and the
 * shipped .toy files are emitted from the same strings. */
std::vector<std::string> fixture_names();
std::string fixture_document(const std::string& name, int n = 3);

/* Randomized colax functors over F_5 for the adjunction/covering suites:
 * small fibers, an index category with at most four morphisms, strict
 * scaling actions, then an invertible eta/theta twist. */
ColaxPtr random_colax_f5(std::uint64_t seed, int idx, bool twist = true);

// a copy of c with one extra isolated object (End = k), for non-dense fixtures
CatPtr extend_with_isolated_object(const CatPtr& c);

}  // namespace grcat

#endif

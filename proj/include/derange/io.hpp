#pragma once

#include <string>

#include "derange/algebra.hpp"
#include "derange/category.hpp"
#include "derange/classify.hpp"
#include "derange/complex.hpp"
#include "derange/gentle.hpp"
#include "derange/group.hpp"
#include "derange/module_rep.hpp"

namespace derange {

// JSON readers and writers for the on-disk formats plus the report emitters
// the CLI prints. Writers are canonical: fixed key order, two-space indent,
// trailing newline, so writer(reader(text)) reproduces any written file
// byte for byte. Readers accept any key order and whitespace and name the
// offending field on failure (input_error); `where` prefixes the messages,
// callers pass the file path.

// Algebra files:
// { "prime": p, "length_cap": l, "vertices": [ids],
//   "arrows": [{"id", "from", "to"}],
//   "relations": [ [ {"coeff", "path": [arrow ids]} ] ] }
// length_cap is optional on input (default 12); coefficients may be any
// integers and are reduced mod p.
Presentation read_presentation(const std::string& text, const std::string& where = "algebra");
Presentation read_presentation_file(const std::string& path);
std::string write_presentation(const Presentation& pres);

// Module files:
// { "algebra": ref, "dims": [per vertex], "matrices": [per arrow, row lists] }
// dims follow the vertex order of the algebra file, matrices the arrow
// order, each dims[source] x dims[target]. The algebra field is
// informational (the reader works against the algebra it is given).
Representation read_representation(const Algebra& alg, const std::string& text,
                                   const std::string& where = "module");
Representation read_representation_file(const Algebra& alg, const std::string& path);
std::string write_representation(const Representation& m, const std::string& algebra_ref = "");

// Complex files:
// { "algebra": ref, "m": int, "mults": [[vertex ids] per degree 0..m],
//   "diffs": [ per degree, source x target grid of corner coefficient
//   lists ] }
// Shapes and d^2 = 0 are enforced; minimality is not, so minimize can read
// its own input.
ProjComplex read_complex(const Algebra& alg, const std::string& text,
                         const std::string& where = "complex");
ProjComplex read_complex_file(const Algebra& alg, const std::string& path);
std::string write_complex(const ProjComplex& x, const std::string& algebra_ref = "");

// Functor files:
// { "source": path, "target": path,
//   "vertex_map": [target vertex id per source vertex],
//   "arrow_images": [corner coefficients per source arrow] }
// Algebra paths resolve relative to the functor file's directory. The two
// presentations must share the prime.
struct FunctorFile {
    std::string source_ref;
    std::string target_ref;
    Presentation source;
    Presentation target;
    std::vector<int> vertex_map;
    std::vector<std::vector<fel>> arrow_images;
};
FunctorFile read_functor_file(const std::string& path);
std::string write_functor(const FunctorFile& f);
// Builds both algebras, assembles the functor and verifies functoriality.
LinearFunctor realize_functor(const FunctorFile& f);

// Report emitters. Stable field names: verdict, certificate.kind,
// certificate.data, census.params, census.classes[]. Verdicts use the
// machine tokens "derived-discrete" / "strongly-derived-unbounded" /
// "unknown"; the prose form stays on verdict_name.
std::string verdict_token(Verdict v);

std::string basis_json(const Algebra& alg);
std::string classification_json(const ClassificationReport& r);
std::string census_json(const CensusTable& t);
std::string dichotomy_json(const DichotomyReport& r);
std::string cohomology_json(const CohomologyProfile& p);
std::string iso_json(const IsoResult& r);
std::string indec_json(const IndecResult& r);
std::string bands_json(const BandSearch& b);
std::string witness_json(const WitnessFamily& f);
std::string pi1_json(const FundamentalGroupReport& r);
std::string cleaving_json(const CleavingResult& r);
std::string repetitive_json(const RepetitiveSlice& s);

}  // namespace derange

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "derange/algebra.hpp"
#include "derange/complex.hpp"
#include "derange/gentle.hpp"
#include "derange/module_rep.hpp"

namespace derange {

// --- census of the minimal complexes C_m(proj A) at small caps ---

struct CensusClass {
    ProjComplex rep;  // first complex of the class in enumeration order
    size_t count = 0;  // enumerated complexes isomorphic to rep
    bool indecomposable = false;
    size_t dim = 0;
    size_t hr = 0;
};

struct CensusTable {
    Algebra algebra;  // the census runs over this (possibly re-reduced) algebra
    int m = 0;
    std::vector<size_t> caps;  // caps[i] = max summands allowed in degree i
    size_t enumerated = 0;     // complexes with d^2 = 0 (minimality is by construction)
    std::vector<CensusClass> classes;

    size_t indecomposables() const;
    uint32_t prime() const { return algebra.fp.modulus(); }
};

// Every minimal complex with window [0, m] and at most caps[i] summands in
// degree i, over the presentation re-reduced mod p: all multiplicity
// multisets, all differential assignments over the radical entries of each
// hom cell, filtered by d^2 = 0 and grouped up to isomorphism. Iso-grouping
// runs the exhaustive chain-map search only; when that or the assignment
// space itself exceeds `budget`, the census refuses with budget_error
// rather than degrade to sampling.
CensusTable enumerate_Cm_serial(const Algebra& alg, int m, const std::vector<size_t>& caps,
                                uint32_t p, unsigned long long budget = 1ull << 22);

// Same table, with each shape's assignment space sharded over OpenMP
// threads; merging keys classes by their first enumeration index, so the
// result is identical to the serial reference. jobs = 0 takes the OpenMP
// default.
CensusTable enumerate_Cm(const Algebra& alg, int m, const std::vector<size_t>& caps,
                         uint32_t p, unsigned long long budget = 1ull << 22, int jobs = 0);

// --- representation-infinite evidence ---

struct RepInfiniteEvidence {
    bool found = false;
    std::vector<size_t> dims;            // shared dimension vector (vertex positions)
    std::vector<Representation> family;  // pairwise non-isomorphic, equal dims
    std::vector<fel> lambdas;            // parameter values, parallel to family
    int arrow = -1;                      // swept arrow id; -1 for an enumerated family
    std::vector<ProjComplex> presentations;  // minimal presentations, window [0, 1]
    std::string note;
};

// Searches for a one-parameter family of pairwise non-isomorphic modules of
// equal dimension vector with total dimension <= dim_cap. Two phases per
// dimension vector: a sweep fixing every arrow to a truncated identity and
// scaling one arrow by lambda, then exhaustive enumeration of the matrix
// space when it is small enough. A found family comes back with the minimal
// presentations of its members; their dim/hr sandwich is asserted, so the
// evidence is machine-checked end to end.
RepInfiniteEvidence rep_infinite_evidence(const Algebra& alg, size_t dim_cap,
                                          size_t family_size = 12, uint64_t seed = 1);

// --- classification ---

// "A_n" / "D_n" / "E_6" / "E_7" / "E_8" when the underlying graph (loops and
// parallel arrows count as extra edges) is connected and of that shape;
// empty string otherwise.
std::string dynkin_type(const Quiver& q);

enum class Verdict { derived_discrete, strongly_unbounded, unknown };

std::string verdict_name(Verdict v);

struct ClassificationReport {
    Verdict verdict = Verdict::unknown;
    // "dynkin" | "vossieck-counts" | "no-bands" | "band-family" | "rep-infinite" | "none"
    std::string certificate;
    std::string dynkin;                      // certificate "dynkin"
    std::pair<size_t, size_t> counts{0, 0};  // certificate "vossieck-counts"
    std::optional<HomotopyBand> band;        // certificate "band-family"
    std::optional<WitnessFamily> family;     // certificate "band-family"
    std::optional<RepInfiniteEvidence> evidence;  // certificate "rep-infinite"
    std::vector<std::string> notes;
};

// Certificate cascade: hereditary presentations with a Dynkin graph are
// derived discrete; gentle presentations are decided by a homotopy band
// (witness family attached) or by its certified absence (cycle relation
// counts, or an exhausted letter graph); otherwise a representation-infinite
// family settles strong unboundedness. Every verdict carries a witness whose
// checks have run; when no certificate is found the verdict stays unknown.
ClassificationReport classify(const Algebra& alg, uint64_t seed = 1);

// --- the dichotomy, spelled out for one window ---

struct DichotomyReport {
    int m = 0;
    ClassificationReport classification;
    std::optional<CensusTable> census;  // discrete side only
    std::vector<std::string> statements;
};

// Restates the classification for C_m(proj A): on the discrete side a finite
// census at the given caps (re-reduced mod census_prime so the assignment
// space stays enumerable), on the unbounded side the witness family with its
// window; statements that only theorems back are flagged as such, not
// recomputed. caps empty means m+1 copies of 2.
DichotomyReport dichotomy_report(const Algebra& alg, int m, uint32_t census_prime = 2,
                                 std::vector<size_t> caps = {}, uint64_t seed = 1);

}  // namespace derange

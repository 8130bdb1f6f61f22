#pragma once

#include <optional>
#include <string>
#include <vector>

#include "derange/algebra.hpp"
#include "derange/complex.hpp"

namespace derange {

// Right module as a representation: one space per vertex (by vertex
// position), one matrix per arrow (by arrow position) mapping source
// coordinates to target coordinates; row vectors act on the right, so paths
// evaluate as left-to-right matrix products.
struct Representation {
    std::vector<size_t> dims;
    std::vector<Mat> mats;
};

size_t rep_dim(const Representation& m);

Representation zero_rep(const Algebra& alg);
Representation simple_rep(const Algebra& alg, int vertex);
// P_a as a representation: P_a(v) = e_a A e_v in corner basis order.
Representation projective_rep(const Algebra& alg, int vertex);
Representation rep_direct_sum(const Algebra& alg, const Representation& x,
                              const Representation& y);

// Matrix of a path acting on m, dims[source] x dims[target].
Mat eval_path(const Algebra& alg, const Representation& m, const PathWord& w);

// Shape problems throw input_error; a violated relation returns its index.
std::optional<size_t> check_representation(const Algebra& alg, const Representation& m);

// Basis of module homomorphisms m -> n; each element is one Mat per vertex.
std::vector<std::vector<Mat>> hom_space(const Algebra& alg, const Representation& m,
                                        const Representation& n);

struct Summand {
    Representation rep;
    bool indecomposable = false;
    bool certain = true;
    std::string method;
};

struct Decomposition {
    std::vector<Summand> summands;
    // False iff some leaf refused to split yet its endomorphism algebra is
    // provably non-local ("no split found").
    bool complete = true;
    std::string note;
};

Decomposition fitting_split(const Algebra& alg, const Representation& m, int trials = 32,
                            uint64_t seed = 1);

struct Cover {
    Representation proj;          // the covering projective
    std::vector<int> vertices;    // one vertex id per indecomposable summand
    std::vector<Mat> surjection;  // per vertex: proj(v) x m(v)
};

Cover projective_cover(const Algebra& alg, const Representation& m);

// Minimal presentation as a two-term complex in degrees [0, 1]: degree 1
// covers m, degree 0 covers the syzygy, H^1 has the dimension vector of m.
ProjComplex presentation_complex(const Algebra& alg, const Representation& m);

struct ModIsoResult {
    bool isomorphic = false;
    bool certain = true;
    std::string note;
};

ModIsoResult modules_isomorphic(const Algebra& alg, const Representation& m,
                                const Representation& n, uint64_t seed = 1);

}  // namespace derange

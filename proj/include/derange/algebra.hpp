#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "derange/matrix.hpp"
#include "derange/quiver.hpp"

namespace derange {

// A finite-dimensional algebra presented as a path algebra modulo an
// admissible ideal, carried around as a normal-form path basis plus a
// multiplication table. Immutable once built; safe to share.
struct Algebra {
    Presentation pres;
    Fp fp;

    // Shortest verified saturation length: every path of this length lies in
    // the ideal, so the quotient is computed among strictly shorter paths.
    // At most pres.length_cap.
    int cap = 2;

    std::vector<PathWord> basis;  // length ascending, lex within a length
    std::unordered_map<std::string, size_t> basis_pos;

    // mult[i][j]: coordinates of basis[i]*basis[j]; empty means zero
    // (endpoint mismatch or the product dies in the ideal).
    std::vector<std::vector<std::vector<fel>>> mult;

    // corners[a][b] (dense vertex positions) lists basis indices of paths
    // from vertex a to vertex b, i.e. a basis of e_a A e_b.
    std::vector<std::vector<std::vector<size_t>>> corners;

    std::vector<size_t> trivial_idx;  // trivial_idx[vpos] = basis index of e_v

    // Ideal-membership data: the reduced span of the ideal's image among
    // paths of length < length_cap, kept for minimality tests.
    std::vector<PathWord> coord_paths;  // length descending, lex within
    std::unordered_map<std::string, size_t> coord_pos;
    RrefResult ideal;
    std::unordered_map<std::string, std::vector<fel>> rewrite;  // pivot path -> basis coords

    size_t dim() const { return basis.size(); }
    size_t nvert() const { return pres.quiver.vertices.size(); }

    int basis_source(size_t i) const { return path_source(pres.quiver, basis[i]); }
    int basis_target(size_t i) const { return path_target(pres.quiver, basis[i]); }

    // Normal form of an arbitrary composable word, as basis coordinates.
    std::vector<fel> path_coords(const PathWord& w) const;
    std::vector<fel> mul_elems(const std::vector<fel>& x, const std::vector<fel>& y) const;
    std::vector<fel> unit() const;

    bool in_ideal(const std::vector<std::pair<fel, PathWord>>& combo) const;
};

Algebra build_algebra(const Presentation& pres);

std::vector<size_t> corner_basis(const Algebra& alg, int va, int vb);
std::vector<size_t> radical_basis(const Algebra& alg);

// The given generators that are minimal: no proper nonempty sub-sum of
// their terms already lies in the ideal.
std::vector<Relation> minimal_relations(const Algebra& alg);

// A finite hom-finite category with pairwise non-isomorphic objects and
// local endomorphism algebras, given by hom bases and structure constants.
// Identities are required to be basis elements (id_index points at them);
// that convention makes locality certifiable by radical nilpotency.
struct BoundedCategory {
    Fp fp;
    std::vector<int> objects;          // object ids
    std::vector<std::string> labels;   // optional display names, same order

    std::vector<std::vector<size_t>> dims;  // dims[i][j] = dim hom(i -> j)
    std::vector<size_t> id_index;           // position of 1_i inside hom(i,i)

    // comp[i][j][k][a * dims[j][k] + b] = coordinates in hom(i,k) of the
    // composite (a: i->j) then (b: j->k).
    std::vector<std::vector<std::vector<std::vector<std::vector<fel>>>>> comp;

    size_t nobj() const { return objects.size(); }
    size_t oindex(int object_id) const;
    std::vector<fel> compose(size_t i, size_t j, size_t k, const std::vector<fel>& x,
                             const std::vector<fel>& y) const;
    std::vector<fel> identity_of(size_t i) const;
};

// Verifies identity laws, associativity on basis triples, locality of every
// endomorphism algebra and non-isomorphy of distinct objects; throws
// invariant_error when the structure constants break one of them.
void check_bounded(const BoundedCategory& cat);

BoundedCategory as_bounded_category(const Algebra& alg);

}  // namespace derange

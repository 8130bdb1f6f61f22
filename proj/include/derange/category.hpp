#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "derange/algebra.hpp"
#include "derange/complex.hpp"
#include "derange/module_rep.hpp"

namespace derange {

// A k-linear functor between bounded categories, row convention: a morphism
// with coordinate row x in hom(i, j) maps to x * maps[i][j] inside
// hom(obj[i], obj[j]) of the target.
struct LinearFunctor {
    BoundedCategory source;
    BoundedCategory target;
    std::vector<size_t> obj;             // source object position -> target position
    std::vector<std::vector<Mat>> maps;  // maps[i][j], dims[i][j] x target cell dim
};

LinearFunctor identity_functor(const BoundedCategory& cat);

// Functor between algebras from images of the generators: vmap[vpos] is a
// target vertex id, arrow_images[apos] the arrow's image in cell coordinates
// over the matching target corner. Longer basis paths map to the products of
// their arrow images. Functoriality is not verified here; run check_functor.
LinearFunctor algebra_functor(const Algebra& src, const Algebra& tgt, const std::vector<int>& vmap,
                              const std::vector<std::vector<fel>>& arrow_images);

// Identity and composition preservation on every basis pair; nullopt when ok,
// otherwise a description of the first violation. Shape mismatches are
// reported the same way.
std::optional<std::string> check_functor(const LinearFunctor& f);

// A finite-dimensional module over a bounded category: one fiber per object
// and the action matrix (fiber(i) x fiber(j), acting on row vectors) of every
// basis morphism of every hom pair.
struct CatModule {
    std::vector<size_t> dims;
    std::vector<std::vector<std::vector<Mat>>> act;  // act[i][j][basis index]

    bool operator==(const CatModule& o) const = default;
};

std::optional<std::string> check_cat_module(const BoundedCategory& cat, const CatModule& m);
size_t cat_module_dim(const CatModule& m);

// Quiver representations over an algebra are the same data packaged per
// arrow; these convert both ways through the basis-path actions.
CatModule as_cat_module(const Algebra& alg, const Representation& m);
Representation to_representation(const Algebra& alg, const CatModule& m);

// Restriction along F: precomposition. Fibers pull back along the object map
// and each basis morphism acts through its image.
CatModule restrict_module(const LinearFunctor& f, const CatModule& m);

// Extension along F on complexes of projectives: every summand P_b becomes
// P_{Fb} and each differential entry passes through the matching hom map.
// The result is minimized before returning (a functor whose images carry
// identity components breaks minimality) and revalidated; the window never
// grows. f must connect the two algebras' categories.
ProjComplex extend_complex(const Algebra& src, const Algebra& tgt, const LinearFunctor& f,
                           const ProjComplex& x);

// Cleaving condition: every hom map of F admits a retraction natural in both
// variables, i.e. a family r with r(F(u) x F(v)) = u r(x) v compatible with
// r o F = id. Decided by one finite linear solve over all basis instances;
// on success the certificate maps hom(Fb, Fb') back onto hom(b, b').
struct CleavingResult {
    bool cleaving = false;
    std::string note;
    std::vector<std::vector<Mat>> retraction;  // filled exactly when cleaving
};

CleavingResult is_cleaving_cond1(const LinearFunctor& f);

// Linear quiver 1 -> 2 -> ... -> n bound by all paths of length l.
Presentation build_An_l(int n, int l, uint32_t p = 101);

// A finite window of the repetitive category: objects (a, i) for each vertex
// a and index lo <= i <= hi. Same-index homs copy the algebra, index-raising
// homs are dual corners (hom((a,i),(b,i+1)) = dual of A(b,a)), everything
// else is zero and two raising morphisms compose to zero. Mixed composites
// follow the trivial-extension rule: composing the functional phi with g
// gives y |-> phi(g then y), and g with phi gives y |-> phi(y then g).
struct RepetitiveSlice {
    int lo = 0;
    int hi = 0;
    size_t nvert = 0;
    BoundedCategory cat;

    size_t opos(size_t vpos, int index) const { return size_t(index - lo) * nvert + vpos; }
};

RepetitiveSlice repetitive_slice(const Algebra& alg, int lo, int hi);

// Dimension vector of the projective at (vertex, index) over the slice's
// objects: dim A(a,b) at (b,index) and dim A(b,a) at (b,index+1). The
// support needs index+1 inside the window, else the call is refused.
std::vector<size_t> slice_projective_dimvec(const Algebra& alg, const RepetitiveSlice& s,
                                            int vertex, int index);

}  // namespace derange

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "derange/algebra.hpp"
#include "derange/rng.hpp"

namespace derange {

// Bounded complex of direct sums of indecomposable projectives, window
// [0, m]. mults[i] lists one vertex id per summand P_a in degree i. The
// differential block diffs[i][r][c] is the map from summand r in degree i to
// summand c in degree i+1, stored as coefficients over the basis of
// Hom(P_a, P_b) = e_b A e_a (paths b -> a), acting by left multiplication.
struct ProjComplex {
    int m = 0;
    std::vector<std::vector<int>> mults;                          // size m+1
    std::vector<std::vector<std::vector<std::vector<fel>>>> diffs;  // size m

    bool operator==(const ProjComplex& o) const {
        return m == o.m && mults == o.mults && diffs == o.diffs;
    }
};

// Degreewise map between two complexes over the same algebra; same block
// storage as the differentials (rows = source summands, cols = target).
struct ChainMap {
    std::vector<std::vector<std::vector<std::vector<fel>>>> blocks;  // per degree
};

struct CohomologyProfile {
    std::vector<size_t> h;  // dim H^i per degree 0..m
    size_t hl = 0;          // max dim H^i
    size_t hw = 0;          // max j-i+1 over nonvanishing degrees
    size_t hr = 0;          // hl*hw, 0 for the acyclic (zero) complex
    int window = 0;         // the m of the complex
    size_t dim = 0;         // sum of dim P^i
};

ProjComplex zero_complex(int m);
ProjComplex stalk_complex(const Algebra& alg, int vertex, int degree, int m);
ProjComplex direct_sum(const Algebra& alg, const ProjComplex& x, const ProjComplex& y);

size_t projective_dim(const Algebra& alg, int vertex);
size_t degree_dim(const Algebra& alg, const ProjComplex& x, int degree);

// Block shapes and d^2 = 0 only; minimality is checked separately. This is
// the right gate for inputs that minimize still has to clean up.
std::optional<std::string> shape_d2_error(const Algebra& alg, const ProjComplex& x);

// Full validity: block shapes, d^2 = 0, and minimality (every differential
// entry inside the radical). Returns a human-readable violation or nullopt.
std::optional<std::string> validate(const Algebra& alg, const ProjComplex& x);

CohomologyProfile cohomology(const Algebra& alg, const ProjComplex& x);
// Per-vertex dims of H^i (the dimension vector of the degree-i cohomology).
std::vector<size_t> cohomology_dimvec(const Algebra& alg, const ProjComplex& x, int degree);

// Gaussian elimination of non-radical differential entries until minimal.
// Requires d^2 = 0 only; per-degree cohomology dims are asserted unchanged.
ProjComplex minimize(const Algebra& alg, ProjComplex x);

ProjComplex shift_embed(const Algebra& alg, const ProjComplex& x, int offset, int new_m);

std::vector<ChainMap> chain_maps(const Algebra& alg, const ProjComplex& x, const ProjComplex& y);
std::vector<ChainMap> homotopies(const Algebra& alg, const ProjComplex& x, const ProjComplex& y);

struct IsoResult {
    bool isomorphic = false;
    bool certain = true;
    std::string note;                 // search method / exhaustion info
    std::optional<ChainMap> witness;  // degreewise invertible chain map
};

// automatic: exhaustive chain-map search when p^h fits the budget, else
// randomized trials. The explicit modes force one path; exhaustive throws
// budget_error instead of degrading.
enum class IsoMode { automatic, exhaustive, randomized };

IsoResult is_isomorphic(const Algebra& alg, const ProjComplex& x, const ProjComplex& y,
                        uint64_t seed = 1, IsoMode mode = IsoMode::automatic);

struct IndecResult {
    bool indecomposable = false;
    bool certain = true;
    std::string method;
};

IndecResult is_indecomposable(const Algebra& alg, const ProjComplex& x, uint64_t seed = 1);

// Slack of dim P^i <= hl * (d + d^2 + ... + d^{m-i+1}) per degree; the
// inequality is a theorem for valid minimal complexes, so a violation throws
// invariant_error.
std::vector<long long> check_dim_bound(const Algebra& alg, const ProjComplex& x);

struct Sandwich {
    double lower = 0;  // hr / (m+1)
    size_t dim = 0;
    unsigned long long upper = 0;  // N * hr with N = (m+1)(d + ... + d^{m+1})
};

// Asserts hr <= (m+1) dim and dim <= N hr; rejects acyclic input.
Sandwich hr_dim_sandwich(const Algebra& alg, const ProjComplex& x);

// --- shared endomorphism-algebra machinery ---

struct LocalVerdict {
    bool local = false;
    bool certain = true;
    std::string method;
};

// Is the span of `basis` (square matrices over fp, closed under products,
// containing the identity) a local algebra? Certainty cascade: dimension
// one; exhaustive idempotent scan when p^dim fits the budget; commutative
// algebras via Frobenius kernels; p > dim via the trace form; otherwise a
// randomized invertible-or-nilpotent test with an explicit uncertainty note.
LocalVerdict is_local_algebra(Fp fp, const std::vector<Mat>& basis, uint64_t seed);

}  // namespace derange

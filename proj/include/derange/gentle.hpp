#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "derange/algebra.hpp"
#include "derange/complex.hpp"

namespace derange {

enum class CycleStructure { tree, one_cycle, multi_cycle };

// Gentle recognition plus the underlying-graph cycle census. For a one-cycle
// quiver the unique cycle is reported as an arrow sequence with a traversal
// flag per arrow (true = the arrow points along the chosen orientation);
// the orientation is anchored at the lowest vertex id, ties by arrow id.
struct GentleReport {
    bool is_gentle = false;
    std::vector<std::string> violations;
    CycleStructure cycles = CycleStructure::tree;
    std::vector<int> cycle_arrows;
    std::vector<bool> cycle_forward;
};

GentleReport gentle_report(const Algebra& alg);

// Length-2 relations both of whose arrows lie on the unique cycle, split by
// running with or against the chosen orientation. Swapping the orientation
// swaps the pair, so only "counts differ" carries meaning.
std::pair<size_t, size_t> vossieck_counts(const Algebra& alg);

// A letter is a nonzero path traversed forwards (direct) or backwards
// (inverse). A band is a primitive cyclic sequence of letters, balanced
// between directions, whose junctions satisfy the string conditions:
// consecutive direct letters concatenate into the ideal, dually for inverse,
// and mixed junctions must not cancel (distinct first/last arrows).
struct HomotopyLetter {
    PathWord path;
    bool inverse = false;
};

struct HomotopyBand {
    std::vector<HomotopyLetter> letters;
};

struct BandSearch {
    std::vector<HomotopyBand> bands;
    // True when existence is settled: a band was found, or the letter graph
    // is acyclic so no longer word could close up either.
    bool exhaustive = false;
    std::string note;
};

BandSearch find_bands(const Algebra& alg, size_t max_letters);

// The band's indecomposable complex family member: every node contributes d
// copies of its projective, letters act by path multiplication, and the
// lexicographically least direct letter carries the Jordan block J_d(lambda).
ProjComplex band_complex(const Algebra& alg, const HomotopyBand& band, fel lambda, size_t d);

struct WitnessFamily {
    struct Entry {
        size_t degree = 0;
        fel lambda = 0;
        ProjComplex complex;
        size_t dim = 0;
    };
    std::vector<Entry> entries;
    std::vector<size_t> degrees;
    std::vector<size_t> dims_by_degree;  // common dimension at each degree
    std::string note;
};

// Builds the full (degree, lambda) grid and machine-checks the unbounded-type
// evidence: minimal, indecomposable, pairwise non-isomorphic within a degree,
// equal dimension within a degree, dimensions strictly increasing across
// degrees. Any failed check throws with diagnostics.
WitnessFamily witness_family(const Algebra& alg, const HomotopyBand& band,
                             const std::vector<size_t>& degrees, const std::vector<fel>& lambdas,
                             uint64_t seed = 1);

}  // namespace derange

#pragma once

#include <string>
#include <vector>

#include "derange/algebra.hpp"

namespace derange {

// Relator words are over generator numbers 1..generators; a negative entry
// means the inverse of that generator.
struct GroupPresentation {
    size_t generators = 0;
    std::vector<std::vector<int>> relators;
};

struct FundamentalGroupReport {
    std::vector<int> generator_arrows;  // arrow ids outside the spanning tree
    GroupPresentation pres;
    // Invariant factors of the abelianization: entries > 1 are finite cyclic
    // orders, each 0 is a free Z summand; empty means trivial abelianization.
    std::vector<long long> abelian_invariants;
    std::string verdict;  // "trivial" | "nontrivial" | "undetermined"
};

// Generators: arrows outside a spanning tree of the underlying graph.
// Relators: for every minimal relation, its first path against each other
// path (parallel paths in a relation are homotopic). Verdict "trivial" only
// when a bounded simplification kills every generator; "nontrivial" when the
// abelianization already is; otherwise "undetermined".
FundamentalGroupReport fundamental_group_report(const Algebra& alg);

// "yes" / "no" / "undetermined" for this presentation. The quiver must have
// no oriented cycles; otherwise NotTriangular.
std::string is_simply_connected(const Algebra& alg);

// Smith normal form diagonal of an integer matrix: nonnegative entries, each
// dividing the next, min(rows, cols) of them with zeros trailing.
std::vector<long long> smith_diagonal(std::vector<std::vector<long long>> m);

}  // namespace derange

#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "derange/error.hpp"
#include "derange/field.hpp"

namespace derange {

struct Arrow {
    int id = 0;
    int from = 0;
    int to = 0;
};

// Vertices and arrows carry user-chosen integer ids; everything internal
// works with dense positions obtained through vindex()/apos.
struct Quiver {
    std::vector<int> vertices;
    std::vector<Arrow> arrows;

    std::unordered_map<int, size_t> vpos;
    std::unordered_map<int, size_t> apos;

    void reindex();

    size_t vindex(int vertex_id) const;
    const Arrow& arrow(int arrow_id) const;
    bool connected() const;   // underlying undirected graph
    bool triangular() const;  // no oriented cycles
};

// A path word composes left to right: {a, b} means traverse a, then b,
// so target(a) must equal source(b).
struct PathWord {
    int vertex = 0;           // source vertex id; the whole word when arrows is empty
    std::vector<int> arrows;  // arrow ids

    bool trivial() const { return arrows.empty(); }
    size_t length() const { return arrows.size(); }
};

int path_source(const Quiver& q, const PathWord& w);
int path_target(const Quiver& q, const PathWord& w);
void check_path(const Quiver& q, const PathWord& w);
PathWord concat(const Quiver& q, const PathWord& a, const PathWord& b);

std::string word_key(const PathWord& w);
bool word_equal(const PathWord& a, const PathWord& b);
// Orders by length, then arrow ids lexicographically; trivial paths by vertex.
bool word_less(const PathWord& a, const PathWord& b);

struct Relation {
    std::vector<std::pair<fel, PathWord>> terms;
};

struct Presentation {
    Quiver quiver;
    std::vector<Relation> relations;
    uint32_t prime = 101;
    int length_cap = 12;
};

// Reindexes the quiver and checks every structural invariant:
// connectedness, parallel relation terms of length >= 2 with distinct
// paths and nonzero coefficients, terms no longer than length_cap.
void validate(Presentation& pres);

}  // namespace derange

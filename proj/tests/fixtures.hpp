#pragma once

// Small named presentations shared across the test suite. Arrow ids are
// dense from 0 so relation paths can be written as literal id lists.

#include <vector>

#include "derange/quiver.hpp"

namespace fx {

using derange::Arrow;
using derange::PathWord;
using derange::Presentation;
using derange::Quiver;
using derange::Relation;

inline Presentation make(std::vector<int> vertices, std::vector<Arrow> arrows,
                         std::vector<Relation> relations, uint32_t p = 101, int cap = 12) {
    Presentation pres;
    pres.quiver.vertices = std::move(vertices);
    pres.quiver.arrows = std::move(arrows);
    pres.relations = std::move(relations);
    pres.prime = p;
    pres.length_cap = cap;
    return pres;
}

inline Relation mono(std::vector<int> arrows) {
    return Relation{{{1, PathWord{0, std::move(arrows)}}}};
}

// One vertex, one loop a, relation aa.
inline Presentation L2(uint32_t p = 101) {
    return make({1}, {{0, 1, 1}}, {mono({0, 0})}, p);
}

// One vertex, one loop a, relation aaa (k[x]/x^3).
inline Presentation L3(uint32_t p = 101) {
    return make({1}, {{0, 1, 1}}, {mono({0, 0, 0})}, p);
}

// One vertex, two loops a, b, radical square zero.
inline Presentation LL2(uint32_t p = 101) {
    return make({1}, {{0, 1, 1}, {1, 1, 1}},
                {mono({0, 0}), mono({0, 1}), mono({1, 0}), mono({1, 1})}, p);
}

// Oriented 2-cycle a:1->2, b:2->1 with radical square zero (Nakayama).
inline Presentation N2(uint32_t p = 101) {
    return make({1, 2}, {{0, 1, 2}, {1, 2, 1}}, {mono({0, 1}), mono({1, 0})}, p);
}

// 1 --a--> 2.
inline Presentation A2(uint32_t p = 101) {
    return make({1, 2}, {{0, 1, 2}}, {}, p);
}

// Kronecker: two parallel arrows 1 -> 2.
inline Presentation K(uint32_t p = 101) {
    return make({1, 2}, {{0, 1, 2}, {1, 1, 2}}, {}, p);
}

// Linear A_n (1 -> 2 -> ... -> n) with every length-l path a relation.
inline Presentation An_l(int n, int l, uint32_t p = 101) {
    std::vector<int> vertices;
    std::vector<Arrow> arrows;
    for (int v = 1; v <= n; ++v) vertices.push_back(v);
    for (int a = 0; a + 1 < n; ++a) arrows.push_back({a, a + 1, a + 2});
    std::vector<Relation> rels;
    for (int start = 0; start + l <= n - 1; ++start) {
        std::vector<int> run;
        for (int a = start; a < start + l; ++a) run.push_back(a);
        rels.push_back(mono(std::move(run)));
    }
    return make(std::move(vertices), std::move(arrows), std::move(rels), p);
}

// Commutative square: a:1->2, b:2->4, c:1->3, d:3->4, relation ab - cd.
inline Presentation SQ(uint32_t p = 101) {
    Relation r;
    r.terms.push_back({1, PathWord{0, {0, 1}}});
    r.terms.push_back({p - 1, PathWord{0, {2, 3}}});
    return make({1, 2, 3, 4}, {{0, 1, 2}, {1, 2, 4}, {2, 1, 3}, {3, 3, 4}}, {r}, p);
}

// The same square with no relation.
inline Presentation SQ0(uint32_t p = 101) {
    return make({1, 2, 3, 4}, {{0, 1, 2}, {1, 2, 4}, {2, 1, 3}, {3, 3, 4}}, {}, p);
}

// Four subspace-oriented arrows into a sink would be D5; three give D4.
inline Presentation D4(uint32_t p = 101) {
    return make({1, 2, 3, 4}, {{0, 2, 1}, {1, 3, 1}, {2, 4, 1}}, {}, p);
}

// Oriented 3-cycle with radical square zero.
inline Presentation C3rad2(uint32_t p = 101) {
    return make({1, 2, 3}, {{0, 1, 2}, {1, 2, 3}, {2, 3, 1}},
                {mono({0, 1}), mono({1, 2}), mono({2, 0})}, p);
}

// Hereditary triangle: a:1->2, b:2->3, c:1->3 (extended A_2 shape).
inline Presentation Atilde2(uint32_t p = 101) {
    return make({1, 2, 3}, {{0, 1, 2}, {1, 2, 3}, {2, 1, 3}}, {}, p);
}

}  // namespace fx

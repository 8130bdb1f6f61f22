#include <algorithm>
#include <string>
#include <vector>

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "derange/algebra.hpp"
#include "derange/group.hpp"
#include "derange/rng.hpp"
#include "fixtures.hpp"

using namespace derange;

namespace {

std::vector<std::string> basis_keys(const Algebra& alg) {
    std::vector<std::string> keys;
    for (const PathWord& w : alg.basis) keys.push_back(word_key(w));
    return keys;
}

}  // namespace

TEST_CASE("basis of the loop modulo its square") {
    Algebra alg = build_algebra(fx::L2());
    CHECK(alg.dim() == 2);
    CHECK(basis_keys(alg) == std::vector<std::string>{"e1", "0"});
    CHECK(alg.cap == 2);
    // a * a = 0 in the quotient
    std::vector<fel> a = alg.path_coords(PathWord{1, {0}});
    CHECK(alg.mul_elems(a, a) == std::vector<fel>{0, 0});
    auto corner = corner_basis(alg, 1, 1);
    CHECK(corner.size() == 2);
    CHECK(radical_basis(alg) == std::vector<size_t>{1});
}

TEST_CASE("basis of k[x]/x^3") {
    Algebra alg = build_algebra(fx::L3());
    CHECK(alg.dim() == 3);
    CHECK(alg.cap == 3);
    std::vector<fel> x = alg.path_coords(PathWord{1, {0}});
    std::vector<fel> x2 = alg.mul_elems(x, x);
    CHECK(x2 == alg.path_coords(PathWord{1, {0, 0}}));
    CHECK(alg.mul_elems(x2, x) == std::vector<fel>(3, 0));
}

TEST_CASE("path-count bases of the hereditary fixtures") {
    CHECK(build_algebra(fx::A2()).dim() == 3);
    CHECK(build_algebra(fx::K()).dim() == 4);
    CHECK(build_algebra(fx::D4()).dim() == 7);
    CHECK(build_algebra(fx::An_l(3, 3)).dim() == 6);
    CHECK(build_algebra(fx::Atilde2()).dim() == 7);  // three arrows plus the composite
}

TEST_CASE("bounded linear A_n quotients") {
    Algebra a32 = build_algebra(fx::An_l(3, 2));
    CHECK(a32.dim() == 5);
    CHECK(a32.cap == 2);
    Algebra n2 = build_algebra(fx::N2());
    CHECK(n2.dim() == 4);
    CHECK(n2.cap == 2);
    CHECK(build_algebra(fx::LL2()).dim() == 3);
    Algebra c3 = build_algebra(fx::C3rad2());
    CHECK(c3.dim() == 6);
    CHECK(c3.cap == 2);
}

TEST_CASE("corner bases and the square") {
    Algebra sq = build_algebra(fx::SQ());
    CHECK(sq.dim() == 9);
    // Of the two length-2 paths only one normal form survives.
    size_t long_forms = 0;
    for (const PathWord& w : sq.basis) long_forms += (w.length() == 2);
    CHECK(long_forms == 1);
    // The two length-2 paths agree in the quotient.
    CHECK(sq.path_coords(PathWord{1, {0, 1}}) == sq.path_coords(PathWord{1, {2, 3}}));

    Algebra k = build_algebra(fx::K());
    auto c12 = corner_basis(k, 1, 2);
    REQUIRE(c12.size() == 2);
    CHECK(word_key(k.basis[c12[0]]) == "0");
    CHECK(word_key(k.basis[c12[1]]) == "1");
    CHECK(corner_basis(k, 2, 1).empty());

    Algebra a2 = build_algebra(fx::A2());
    CHECK(corner_basis(a2, 1, 1).size() == 1);
    CHECK(corner_basis(a2, 1, 2).size() == 1);
    CHECK(corner_basis(a2, 2, 1).empty());
    CHECK(corner_basis(a2, 2, 2).size() == 1);
}

TEST_CASE("rejections: admissibility, connectivity, bad input") {
    // A bare loop never saturates.
    Presentation loop = fx::make({1}, {{0, 1, 1}}, {}, 101, 6);
    CHECK_THROWS_WITH_AS(build_algebra(loop), doctest::Contains("NotAdmissible"), input_error);

    // Two components.
    Presentation disc = fx::make({1, 2}, {}, {});
    CHECK_THROWS_WITH_AS(build_algebra(disc), doctest::Contains("NotConnected"), input_error);

    // Relation of length one is not allowed.
    Presentation bad = fx::A2();
    bad.relations.push_back(fx::mono({0}));
    CHECK_THROWS_AS(build_algebra(bad), input_error);

    // Non-parallel relation terms.
    Presentation sq = fx::SQ0();
    Relation r;
    r.terms.push_back({1, PathWord{0, {0, 1}}});
    r.terms.push_back({1, PathWord{0, {2}}});
    sq.relations.push_back(r);
    CHECK_THROWS_AS(build_algebra(sq), input_error);
}

TEST_CASE("random products associate") {
    for (auto maker : {fx::SQ, fx::C3rad2, fx::L3, fx::N2, fx::LL2}) {
        Algebra alg = build_algebra(maker(101));
        Rng rng(7);
        for (int it = 0; it < 25; ++it) {
            std::vector<fel> x(alg.dim()), y(alg.dim()), z(alg.dim());
            for (auto& v : x) v = rng.field_elem(alg.fp);
            for (auto& v : y) v = rng.field_elem(alg.fp);
            for (auto& v : z) v = rng.field_elem(alg.fp);
            CHECK(alg.mul_elems(alg.mul_elems(x, y), z) ==
                  alg.mul_elems(x, alg.mul_elems(y, z)));
            CHECK(alg.mul_elems(alg.unit(), x) == x);
            CHECK(alg.mul_elems(x, alg.unit()) == x);
        }
    }
}

TEST_CASE("radical power vanishes at the verified length") {
    Algebra alg = build_algebra(fx::L3());
    std::vector<size_t> rad = radical_basis(alg);
    // Any product of cap radical elements dies.
    std::vector<fel> x = alg.path_coords(alg.basis[rad[0]]);
    std::vector<fel> acc = x;
    for (int i = 1; i < alg.cap; ++i) acc = alg.mul_elems(acc, x);
    CHECK(acc == std::vector<fel>(alg.dim(), 0));
}

TEST_CASE("minimal relations") {
    // The square's single relation is minimal: neither path alone is in I.
    Algebra sq = build_algebra(fx::SQ());
    CHECK(minimal_relations(sq).size() == 1);

    // With {ab, ab+cd} the combination is redundant: cd alone lies in I.
    uint32_t p = 101;
    Presentation pres = fx::SQ0(p);
    pres.relations.push_back(fx::mono({0, 1}));
    Relation combined;
    combined.terms.push_back({1, PathWord{0, {0, 1}}});
    combined.terms.push_back({1, PathWord{0, {2, 3}}});
    pres.relations.push_back(combined);
    Algebra alg = build_algebra(pres);
    CHECK(alg.dim() == 8);  // both length-2 paths die
    std::vector<Relation> mins = minimal_relations(alg);
    REQUIRE(mins.size() == 1);
    CHECK(mins[0].terms.size() == 1);  // only the monomial ab survives

    // Single-term relations are vacuously minimal.
    Algebra l2 = build_algebra(fx::L2());
    CHECK(minimal_relations(l2).size() == 1);
}

TEST_CASE("ideal membership") {
    Algebra sq = build_algebra(fx::SQ());
    std::vector<std::pair<fel, PathWord>> ab = {{1, PathWord{1, {0, 1}}}};
    CHECK_FALSE(sq.in_ideal(ab));
    std::vector<std::pair<fel, PathWord>> diff = {{1, PathWord{1, {0, 1}}},
                                                  {100, PathWord{1, {2, 3}}}};
    CHECK(sq.in_ideal(diff));
}

TEST_CASE("algebras as bounded categories") {
    Algebra l2 = build_algebra(fx::L2());
    BoundedCategory cl2 = as_bounded_category(l2);
    CHECK(cl2.nobj() == 1);
    CHECK(cl2.dims[0][0] == 2);

    Algebra a2 = build_algebra(fx::A2());
    BoundedCategory ca2 = as_bounded_category(a2);
    CHECK(ca2.dims == std::vector<std::vector<size_t>>{{1, 1}, {0, 1}});

    Algebra k = build_algebra(fx::K());
    BoundedCategory ck = as_bounded_category(k);
    CHECK(ck.dims == std::vector<std::vector<size_t>>{{1, 2}, {0, 1}});

    // check_bounded must reject a non-local endomorphism algebra: one
    // object, basis {id, r} with r idempotent (k x k in disguise).
    BoundedCategory broken;
    broken.fp = Fp(101);
    broken.objects = {1};
    broken.labels = {"1"};
    broken.dims = {{2}};
    broken.id_index = {0};
    broken.comp = {{{{
        std::vector<fel>{1, 0},  // id id
        std::vector<fel>{0, 1},  // id r
        std::vector<fel>{0, 1},  // r id
        std::vector<fel>{0, 1},  // r r = r, never nilpotent
    }}}};
    CHECK_THROWS_AS(check_bounded(broken), invariant_error);
}

TEST_CASE("smith normal form diagonals") {
    CHECK(smith_diagonal({{2, 4}, {6, 8}}) == std::vector<long long>{2, 4});
    CHECK(smith_diagonal({{2, 0}, {0, 3}}) == std::vector<long long>{1, 6});
    CHECK(smith_diagonal({{1, 0}, {0, 0}}) == std::vector<long long>{1, 0});
    CHECK(smith_diagonal({{0}}) == std::vector<long long>{0});
    CHECK(smith_diagonal({{6}}) == std::vector<long long>{6});
    CHECK(smith_diagonal({{4, 2, 0}}) == std::vector<long long>{2});
}

TEST_CASE("fundamental group of the square with and without its relation") {
    Algebra sq = build_algebra(fx::SQ());
    FundamentalGroupReport rep = fundamental_group_report(sq);
    CHECK(rep.pres.generators == 1);
    CHECK(rep.verdict == "trivial");
    CHECK(rep.abelian_invariants.empty());
    CHECK(is_simply_connected(sq) == "yes");

    Algebra sq0 = build_algebra(fx::SQ0());
    FundamentalGroupReport rep0 = fundamental_group_report(sq0);
    CHECK(rep0.verdict == "nontrivial");
    CHECK(rep0.abelian_invariants == std::vector<long long>{0});  // free Z
    CHECK(is_simply_connected(sq0) == "no");
}

TEST_CASE("fundamental group of trees is trivial") {
    for (auto maker : {fx::A2, fx::D4}) {
        Algebra alg = build_algebra(maker(101));
        FundamentalGroupReport rep = fundamental_group_report(alg);
        CHECK(rep.pres.generators == 0);
        CHECK(rep.verdict == "trivial");
        CHECK(is_simply_connected(alg) == "yes");
    }
    Algebra a32 = build_algebra(fx::An_l(3, 2));
    CHECK(fundamental_group_report(a32).verdict == "trivial");
}

TEST_CASE("simple connectedness needs a triangular quiver") {
    Algebra l2 = build_algebra(fx::L2());
    CHECK_THROWS_WITH_AS(is_simply_connected(l2), doctest::Contains("NotTriangular"),
                         input_error);
    CHECK_THROWS_WITH_AS(is_simply_connected(build_algebra(fx::N2())),
                         doctest::Contains("NotTriangular"), input_error);
    // The oriented cycle is also not triangular.
    CHECK_THROWS_WITH_AS(is_simply_connected(build_algebra(fx::C3rad2())),
                         doctest::Contains("NotTriangular"), input_error);
}

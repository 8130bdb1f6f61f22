#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "derange/complex.hpp"
#include "derange/error.hpp"
#include "fixtures.hpp"

using namespace derange;

namespace {

// Hand-assembled two-term complex in degrees [0, 1].
ProjComplex two_term(std::vector<int> deg0, std::vector<int> deg1,
                     std::vector<std::vector<std::vector<fel>>> d0) {
    ProjComplex x;
    x.m = 1;
    x.mults = {std::move(deg0), std::move(deg1)};
    x.diffs = {std::move(d0)};
    return x;
}

std::vector<fel> flatten_map(const ChainMap& f) {
    std::vector<fel> out;
    for (const auto& deg : f.blocks)
        for (const auto& row : deg)
            for (const auto& entry : row) out.insert(out.end(), entry.begin(), entry.end());
    return out;
}

} // namespace

TEST_CASE("stalk complex profile over A2") {
    Algebra alg = build_algebra(fx::A2());
    ProjComplex x = stalk_complex(alg, 1, 0, 0);
    CHECK_FALSE(validate(alg, x).has_value());
    CohomologyProfile p = cohomology(alg, x);
    CHECK(p.h == std::vector<size_t>{2});
    CHECK(p.hl == 2);
    CHECK(p.hw == 1);
    CHECK(p.hr == 2);
    CHECK(p.dim == 2);

    // Same stalk sitting in a wider window: padding degrees contribute zeros.
    ProjComplex y = stalk_complex(alg, 1, 0, 1);
    CohomologyProfile q = cohomology(alg, y);
    CHECK(q.h == std::vector<size_t>{2, 0});
    CHECK(q.hr == 2);
    CHECK(q.dim == 2);
}

TEST_CASE("loop-square complex has range 2 spread over two degrees") {
    Algebra alg = build_algebra(fx::L2());
    // P --alpha--> P, the arrow acting by left multiplication.
    ProjComplex x = two_term({1}, {1}, {{{0, 1}}});
    CHECK_FALSE(validate(alg, x).has_value());
    CohomologyProfile p = cohomology(alg, x);
    CHECK(p.h == std::vector<size_t>{1, 1});
    CHECK(p.hl == 1);
    CHECK(p.hw == 2);
    CHECK(p.hr == 2);
    CHECK(p.dim == 4);
}

TEST_CASE("zero complex is valid and acyclic") {
    Algebra alg = build_algebra(fx::A2());
    ProjComplex z = zero_complex(2);
    CHECK_FALSE(validate(alg, z).has_value());
    CohomologyProfile p = cohomology(alg, z);
    CHECK(p.h == std::vector<size_t>{0, 0, 0});
    CHECK(p.hr == 0);
    CHECK(p.dim == 0);
}

TEST_CASE("validate pinpoints the violation") {
    Algebra alg = build_algebra(fx::L2());
    SUBCASE("identity entry is outside the radical") {
        ProjComplex x = two_term({1}, {1}, {{{1, 0}}});
        auto err = validate(alg, x);
        REQUIRE(err.has_value());
        CHECK(err->find("radical") != std::string::npos);
        CHECK(err->find("degree 0") != std::string::npos);
    }
    SUBCASE("d^2 != 0 is caught before minimality") {
        ProjComplex x;
        x.m = 2;
        x.mults = {{1}, {1}, {1}};
        x.diffs = {{{{1, 0}}}, {{{1, 0}}}};
        auto err = validate(alg, x);
        REQUIRE(err.has_value());
        CHECK(err->find("d^2") != std::string::npos);
    }
    SUBCASE("entry length mismatch") {
        ProjComplex x = two_term({1}, {1}, {{{1, 0, 0}}});
        auto err = validate(alg, x);
        REQUIRE(err.has_value());
        CHECK(err->find("entry length") != std::string::npos);
    }
    SUBCASE("unknown vertex") {
        ProjComplex x = stalk_complex(alg, 1, 0, 0);
        x.mults[0][0] = 9;
        auto err = validate(alg, x);
        REQUIRE(err.has_value());
        CHECK(err->find("vertex") != std::string::npos);
    }
}

TEST_CASE("minimize contracts invertible entries") {
    Algebra a2 = build_algebra(fx::A2());
    SUBCASE("identity two-term complex collapses to zero") {
        ProjComplex x = two_term({1}, {1}, {{{1}}});
        ProjComplex y = minimize(a2, x);
        CHECK(y.mults == std::vector<std::vector<int>>{{}, {}});
        CHECK(cohomology(a2, y).hr == 0);
    }
    SUBCASE("second-component identity leaves a stalk") {
        // (P_1 + P_2) -> P_2, identity on the second summand. Hom(P_1, P_2)
        // vanishes over A2, so that block is the empty coefficient list.
        ProjComplex x = two_term({1, 2}, {2}, {{{}}, {{1}}});
        ProjComplex y = minimize(a2, x);
        CHECK(y.mults == std::vector<std::vector<int>>{{1}, {}});
        CohomologyProfile p = cohomology(a2, y);
        CHECK(p.h == std::vector<size_t>{2, 0});
    }
    Algebra l2 = build_algebra(fx::L2());
    SUBCASE("cascading eliminations reach the zero complex") {
        // d = [[e, e], [e, 0]]: the first contraction produces a fresh
        // invertible entry which the second contraction removes.
        ProjComplex x = two_term({1, 1}, {1, 1},
                                 {{{1, 0}, {1, 0}}, {{1, 0}, {0, 0}}});
        ProjComplex y = minimize(l2, x);
        CHECK(y.mults == std::vector<std::vector<int>>{{}, {}});
    }
    SUBCASE("radical correction survives") {
        // d = [[e, x], [x, 0]]: contracting the identity corrects the
        // surviving block to 0 - x e^{-1} x = -x^2 = 0.
        ProjComplex x = two_term({1, 1}, {1, 1},
                                 {{{1, 0}, {0, 1}}, {{0, 1}, {0, 0}}});
        ProjComplex y = minimize(l2, x);
        REQUIRE(y.mults == std::vector<std::vector<int>>{{1}, {1}});
        CHECK(y.diffs[0][0][0] == std::vector<fel>{0, 0});
        CHECK(cohomology(l2, y).h == std::vector<size_t>{2, 2});
    }
    SUBCASE("minimize is idempotent") {
        ProjComplex x = two_term({1}, {1}, {{{0, 1}}});
        ProjComplex y = minimize(l2, x);
        CHECK(y == x);
        CHECK(minimize(l2, y) == y);
    }
}

TEST_CASE("shift_embed relocates the window without touching cohomology") {
    Algebra alg = build_algebra(fx::L2());
    ProjComplex x = two_term({1}, {1}, {{{0, 1}}});
    ProjComplex y = shift_embed(alg, x, 1, 3);
    CHECK(y.mults == std::vector<std::vector<int>>{{}, {1}, {1}, {}});
    CohomologyProfile p = cohomology(alg, y);
    CHECK(p.h == std::vector<size_t>{0, 1, 1, 0});
    CHECK(p.hl == 1);
    CHECK(p.hw == 2);
    CHECK(p.hr == 2);
    CHECK(p.dim == 4);
    CHECK_THROWS_AS(shift_embed(alg, x, 3, 3), input_error);
    CHECK_THROWS_AS(shift_embed(alg, x, -1, 3), input_error);
    // The zero complex embeds anywhere.
    CHECK(shift_embed(alg, zero_complex(1), 0, 2).m == 2);
}

TEST_CASE("chain map spaces between stalks match corner dimensions") {
    Algebra alg = build_algebra(fx::A2());
    ProjComplex p1 = stalk_complex(alg, 1, 0, 0);
    ProjComplex p2 = stalk_complex(alg, 2, 0, 0);
    // Hom(P_2, P_1) = e_1 A e_2 is spanned by the arrow; the other direction
    // vanishes.
    CHECK(chain_maps(alg, p2, p1).size() == 1);
    CHECK(chain_maps(alg, p1, p2).size() == 0);
    CHECK(chain_maps(alg, p1, p1).size() == 1);
    CHECK(homotopies(alg, p2, p1).size() == 0);
}

TEST_CASE("loop-square complex endomorphisms and homotopies") {
    Algebra alg = build_algebra(fx::L2());
    ProjComplex x = two_term({1}, {1}, {{{0, 1}}});
    std::vector<ChainMap> ends = chain_maps(alg, x, x);
    CHECK(ends.size() == 3);
    std::vector<ChainMap> nulls = homotopies(alg, x, x);
    CHECK(nulls.size() == 1);
    // Null-homotopic maps are chain maps: their flattenings lie in the span
    // of the chain map basis.
    Mat basis(ends.size(), flatten_map(ends[0]).size(), alg.fp);
    for (size_t i = 0; i < ends.size(); ++i) {
        auto row = flatten_map(ends[i]);
        for (size_t j = 0; j < row.size(); ++j) basis.at(i, j) = row[j];
    }
    for (const ChainMap& f : nulls)
        CHECK(coords_in_rows(basis, flatten_map(f), alg.fp).has_value());
}

TEST_CASE("isomorphism testing separates twisted Kronecker complexes") {
    Algebra alg = build_algebra(fx::K());
    auto band = [&](fel lam) {
        // P_2 --(a + lam b)--> P_1; the coefficients live in e_1 A e_2.
        return two_term({2}, {1}, {{{1, lam}}});
    };
    IsoResult same = is_isomorphic(alg, band(1), band(1));
    CHECK(same.isomorphic);
    CHECK(same.certain);
    CHECK(same.witness.has_value());
    IsoResult diff = is_isomorphic(alg, band(1), band(2));
    CHECK_FALSE(diff.isomorphic);
    CHECK(diff.certain);
    // Scaling the differential is an isomorphism.
    IsoResult scaled = is_isomorphic(alg, two_term({2}, {1}, {{{1, 0}}}),
                                     two_term({2}, {1}, {{{2, 0}}}));
    CHECK(scaled.isomorphic);
    CHECK(scaled.certain);
}

TEST_CASE("isomorphism quick rejects") {
    Algebra alg = build_algebra(fx::A2());
    ProjComplex p1 = stalk_complex(alg, 1, 0, 1);
    ProjComplex p1_deg1 = stalk_complex(alg, 1, 1, 1);
    IsoResult r = is_isomorphic(alg, p1, p1_deg1);
    CHECK_FALSE(r.isomorphic);
    CHECK(r.certain);
    CHECK(r.note.find("multiplicities") != std::string::npos);

    ProjComplex contractible = two_term({1}, {1}, {{{1}}});
    ProjComplex stalky = direct_sum(alg, stalk_complex(alg, 1, 0, 1),
                                    stalk_complex(alg, 1, 1, 1));
    // Same summands in each degree, different cohomology.
    IsoResult r2 = is_isomorphic(alg, contractible, stalky);
    CHECK_FALSE(r2.isomorphic);
    CHECK(r2.certain);
    CHECK(r2.note.find("cohomology") != std::string::npos);
}

TEST_CASE("zero complexes are isomorphic to each other") {
    Algebra alg = build_algebra(fx::A2());
    IsoResult r = is_isomorphic(alg, zero_complex(1), zero_complex(1));
    CHECK(r.isomorphic);
    CHECK(r.certain);
}

TEST_CASE("random-search isomorphism on a fat endomorphism space") {
    Algebra alg = build_algebra(fx::L2());
    ProjComplex x = two_term({1}, {1}, {{{0, 1}}});
    ProjComplex xx = direct_sum(alg, x, x);
    IsoResult r = is_isomorphic(alg, xx, xx);
    CHECK(r.isomorphic);
    CHECK(r.certain);
    CHECK(r.note.find("random") != std::string::npos);
}

TEST_CASE("indecomposability verdicts") {
    Algebra a2 = build_algebra(fx::A2());
    SUBCASE("stalks are indecomposable") {
        IndecResult r = is_indecomposable(a2, stalk_complex(a2, 1, 0, 0));
        CHECK(r.indecomposable);
        CHECK(r.certain);
    }
    SUBCASE("sums split") {
        ProjComplex s = direct_sum(a2, stalk_complex(a2, 1, 0, 0), stalk_complex(a2, 1, 0, 0));
        IndecResult r = is_indecomposable(a2, s);
        CHECK_FALSE(r.indecomposable);
        CHECK(r.certain);
        ProjComplex t = direct_sum(a2, stalk_complex(a2, 1, 0, 0), stalk_complex(a2, 2, 0, 0));
        IndecResult r2 = is_indecomposable(a2, t);
        CHECK_FALSE(r2.indecomposable);
        CHECK(r2.certain);
    }
    SUBCASE("zero complex is not indecomposable") {
        IndecResult r = is_indecomposable(a2, zero_complex(0));
        CHECK_FALSE(r.indecomposable);
        CHECK(r.certain);
    }
    Algebra l2 = build_algebra(fx::L2());
    SUBCASE("loop-square two-term complex is indecomposable") {
        ProjComplex x = two_term({1}, {1}, {{{0, 1}}});
        IndecResult r = is_indecomposable(l2, x);
        CHECK(r.indecomposable);
        CHECK(r.certain);
    }
    Algebra k = build_algebra(fx::K());
    SUBCASE("Kronecker band complexes are bricks") {
        ProjComplex x = two_term({2}, {1}, {{{1, 5}}});
        IndecResult r = is_indecomposable(k, x);
        CHECK(r.indecomposable);
        CHECK(r.certain);
    }
}

TEST_CASE("dimension bound slack per degree") {
    Algebra l2 = build_algebra(fx::L2());
    ProjComplex x = two_term({1}, {1}, {{{0, 1}}});
    // hl = 1, d = 2: bounds 2 + 4 = 6 in degree 0 and 2 in degree 1.
    CHECK(check_dim_bound(l2, x) == std::vector<long long>{4, 0});

    Algebra a2 = build_algebra(fx::A2());
    CHECK(check_dim_bound(a2, stalk_complex(a2, 1, 0, 0)) == std::vector<long long>{4});
    CHECK(check_dim_bound(a2, zero_complex(1)) == std::vector<long long>{0, 0});
}

TEST_CASE("range/dimension sandwich") {
    Algebra a2 = build_algebra(fx::A2());
    Sandwich s = hr_dim_sandwich(a2, stalk_complex(a2, 1, 0, 0));
    CHECK(s.lower == doctest::Approx(2.0));
    CHECK(s.dim == 2);
    CHECK(s.upper == 6); // N = (m+1)(d + ... + d^{m+1}) = 1 * 3, times hr = 2

    Algebra l2 = build_algebra(fx::L2());
    ProjComplex x = two_term({1}, {1}, {{{0, 1}}});
    Sandwich t = hr_dim_sandwich(l2, x);
    CHECK(t.lower == doctest::Approx(1.0));
    CHECK(t.dim == 4);
    CHECK(t.upper == 24); // N = 2 * (2 + 4) = 12, times hr = 2

    CHECK_THROWS_AS(hr_dim_sandwich(a2, zero_complex(0)), input_error);
}

TEST_CASE("graded cohomology dimensions") {
    Algebra a2 = build_algebra(fx::A2());
    // P_2 -> P_1 via the arrow: the cokernel is the simple at vertex 1.
    ProjComplex x = two_term({2}, {1}, {{{1}}});
    CHECK(cohomology(a2, x).h == std::vector<size_t>{0, 1});
    CHECK(cohomology_dimvec(a2, x, 1) == std::vector<size_t>{1, 0});
    CHECK(cohomology_dimvec(a2, x, 0) == std::vector<size_t>{0, 0});
}

TEST_CASE("direct sums add cohomology") {
    Algebra l2 = build_algebra(fx::L2());
    ProjComplex x = two_term({1}, {1}, {{{0, 1}}});
    ProjComplex s = direct_sum(l2, x, stalk_complex(l2, 1, 1, 1));
    CohomologyProfile p = cohomology(l2, s);
    CHECK(p.h == std::vector<size_t>{1, 3});
    CHECK(p.hl == 3);
    CHECK(p.hw == 2);
    CHECK(p.hr == 6);
    CHECK(p.dim == 6);
}

TEST_CASE("locality cascade on explicit matrix algebras") {
    Fp fp(101);
    auto mat = [&](size_t n, std::vector<fel> v) {
        Mat m(n, n, fp);
        m.a = std::move(v);
        return m;
    };
    SUBCASE("full matrix algebra is not local") {
        std::vector<Mat> basis = {mat(2, {1, 0, 0, 0}), mat(2, {0, 1, 0, 0}),
                                  mat(2, {0, 0, 1, 0}), mat(2, {0, 0, 0, 1})};
        LocalVerdict v = is_local_algebra(fp, basis, 1);
        CHECK_FALSE(v.local);
        CHECK(v.certain);
    }
    SUBCASE("dual numbers are local") {
        std::vector<Mat> basis = {mat(2, {1, 0, 0, 1}), mat(2, {0, 1, 0, 0})};
        LocalVerdict v = is_local_algebra(fp, basis, 1);
        CHECK(v.local);
        CHECK(v.certain);
    }
    SUBCASE("split pair of idempotents is not local") {
        std::vector<Mat> basis = {mat(2, {1, 0, 0, 1}), mat(2, {1, 0, 0, 0})};
        LocalVerdict v = is_local_algebra(fp, basis, 1);
        CHECK_FALSE(v.local);
        CHECK(v.certain);
    }
    SUBCASE("quadratic field extension of F_2 is local") {
        Fp f2(2);
        // Companion matrix of x^2 + x + 1 over F_2 spans F_4 with the identity.
        Mat c(2, 2, f2);
        c.a = {0, 1, 1, 1};
        std::vector<Mat> basis = {identity(2, f2), c};
        LocalVerdict v = is_local_algebra(f2, basis, 1);
        CHECK(v.local);
        CHECK(v.certain);
    }
}

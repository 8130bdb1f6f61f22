#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "derange/category.hpp"
#include "derange/error.hpp"
#include "derange/gentle.hpp"
#include "fixtures.hpp"

using namespace derange;

namespace {

template <class F>
std::string thrown_msg(F&& f) {
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

bool mentions(const std::string& msg, const std::string& token) {
    return msg.find(token) != std::string::npos;
}

// A2 -> L2 collapsing both vertices onto the loop vertex, arrow to the loop.
LinearFunctor collapse_a2(const Algebra& a2, const Algebra& l2) {
    return algebra_functor(a2, l2, {1, 1}, {{0, 1}});
}

}  // namespace

TEST_CASE("functor construction and checking") {
    Algebra a2 = build_algebra(fx::A2());
    Algebra l2 = build_algebra(fx::L2());

    LinearFunctor id = identity_functor(as_bounded_category(a2));
    CHECK(check_functor(id) == std::nullopt);

    LinearFunctor f = collapse_a2(a2, l2);
    CHECK(check_functor(f) == std::nullopt);
    CHECK(f.obj == std::vector<size_t>{0, 0});
    // hom(1,2) = {arrow}, its image has coordinates (0, 1) over {e, loop}
    CHECK(f.maps[0][1].rows == 1);
    CHECK(f.maps[0][1].cols == 2);
    CHECK(f.maps[0][1].at(0, 0) == 0);
    CHECK(f.maps[0][1].at(0, 1) == 1);

    // the arrow may be killed outright; that is still a functor here
    LinearFunctor zero = algebra_functor(a2, l2, {1, 1}, {{0, 0}});
    CHECK(check_functor(zero) == std::nullopt);

    // loop to loop across different nilpotency: x*x = 0 forces x^2 = 0
    Algebra l3 = build_algebra(fx::L3());
    LinearFunctor bad = algebra_functor(l2, l3, {1}, {{0, 1, 0}});
    auto violation = check_functor(bad);
    REQUIRE(violation.has_value());
    CHECK(mentions(*violation, "composition not preserved"));

    CHECK_THROWS_AS(algebra_functor(a2, l2, {1}, {{0, 1}}), input_error);
    CHECK_THROWS_AS(algebra_functor(a2, l2, {1, 1}, {{1}}), input_error);
}

TEST_CASE("category modules and restriction") {
    Algebra a2 = build_algebra(fx::A2());
    Algebra l2 = build_algebra(fx::L2());
    BoundedCategory cl2 = as_bounded_category(l2);

    CatModule reg = as_cat_module(l2, projective_rep(l2, 1));
    CHECK(check_cat_module(cl2, reg) == std::nullopt);
    CHECK(cat_module_dim(reg) == 2);

    // restriction along the identity is the identity
    CHECK(restrict_module(identity_functor(cl2), reg) == reg);

    LinearFunctor f = collapse_a2(a2, l2);
    CatModule res = restrict_module(f, reg);
    CHECK(check_cat_module(f.source, res) == std::nullopt);
    CHECK(res.dims == std::vector<size_t>{2, 2});
    CHECK(cat_module_dim(res) == 4);

    Representation rep = to_representation(a2, res);
    CHECK(check_representation(a2, rep) == std::nullopt);
    // the arrow acts as the loop did on the regular module
    CHECK(rep.mats[0].at(0, 0) == 0);
    CHECK(rep.mats[0].at(0, 1) == 1);
    CHECK(rep.mats[0].at(1, 0) == 0);
    CHECK(rep.mats[0].at(1, 1) == 0);

    // round trip through the category packaging
    CHECK(as_cat_module(a2, rep) == res);

    CatModule zero = as_cat_module(l2, zero_rep(l2));
    CHECK(cat_module_dim(restrict_module(f, zero)) == 0);

    // adjunction on fibers: hom(P_b, F_*M) and hom(P_Fb, M) have equal dims
    Representation m = projective_rep(l2, 1);
    for (int b : {1, 2}) {
        size_t lhs = hom_space(a2, projective_rep(a2, b), rep).size();
        size_t rhs = hom_space(l2, projective_rep(l2, 1), m).size();
        CHECK(lhs == rhs);
    }
}

TEST_CASE("complex extension") {
    Algebra a2 = build_algebra(fx::A2());
    Algebra l2 = build_algebra(fx::L2());
    LinearFunctor f = collapse_a2(a2, l2);

    // a stalk extends to the stalk of the image vertex
    ProjComplex stalk = stalk_complex(a2, 1, 0, 0);
    CHECK(extend_complex(a2, l2, f, stalk) == stalk_complex(l2, 1, 0, 0));

    // P_2 --arrow--> P_1 becomes P --loop--> P
    ProjComplex pres = presentation_complex(a2, simple_rep(a2, 1));
    REQUIRE(pres.mults == std::vector<std::vector<int>>{{2}, {1}});
    ProjComplex ext = extend_complex(a2, l2, f, pres);
    CHECK(ext.mults == std::vector<std::vector<int>>{{1}, {1}});
    CHECK(ext.diffs[0][0][0] == std::vector<fel>{0, 1});
    CHECK(validate(l2, ext) == std::nullopt);

    // extension along the identity functor is the identity
    Algebra k = build_algebra(fx::K());
    LinearFunctor idk = identity_functor(as_bounded_category(k));
    HomotopyBand band{{HomotopyLetter{PathWord{0, {0}}, false}, HomotopyLetter{PathWord{0, {1}}, true}}};
    ProjComplex bc = band_complex(k, band, 3, 2);
    CHECK(extend_complex(k, k, idk, bc) == bc);

    // killing the arrow breaks minimality; the zero differential survives it
    LinearFunctor zero = algebra_functor(a2, l2, {1, 1}, {{0, 0}});
    ProjComplex extz = extend_complex(a2, l2, zero, pres);
    CHECK(validate(l2, extz) == std::nullopt);
    CHECK(extz.diffs[0][0][0] == std::vector<fel>{0, 0});
}

TEST_CASE("cleaving condition") {
    Algebra a2 = build_algebra(fx::A2());
    Algebra l2 = build_algebra(fx::L2());

    CleavingResult idr = is_cleaving_cond1(identity_functor(as_bounded_category(a2)));
    CHECK(idr.cleaving);
    CHECK(idr.note == "every hom map splits naturally");

    // covering-style functor: the two-object line over the one-loop vertex
    CleavingResult cov = is_cleaving_cond1(collapse_a2(a2, l2));
    CHECK(cov.cleaving);
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) {
            const Mat& m = cov.retraction[i][j];
            CHECK(m.rows == 2);
        }

    // a killed arrow admits no retraction on the nonzero hom space
    CleavingResult dead = is_cleaving_cond1(algebra_functor(a2, l2, {1, 1}, {{0, 0}}));
    CHECK_FALSE(dead.cleaving);
    CHECK(mentions(dead.note, "not injective"));
    CHECK(dead.retraction.empty());
}

TEST_CASE("cleaving functor from the bound linear quiver") {
    Algebra a33 = build_algebra(build_An_l(3, 3));
    Algebra l3 = build_algebra(fx::L3());
    REQUIRE(a33.dim() == 6);
    REQUIRE(l3.dim() == 3);

    // every vertex to the loop vertex, every arrow to x
    LinearFunctor f = algebra_functor(a33, l3, {1, 1, 1}, {{0, 1, 0}, {0, 1, 0}});
    CHECK(check_functor(f) == std::nullopt);

    CleavingResult r = is_cleaving_cond1(f);
    CHECK(r.cleaving);
    // certificate splits every hom map
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j)
            if (f.source.dims[i][j] > 0)
                CHECK(mul(f.maps[i][j], r.retraction[i][j]) ==
                      identity(f.source.dims[i][j], l3.fp));

    // the length-two path maps to x^2, which the relation does not kill
    CHECK(f.maps[0][2].rows == 1);
    CHECK(f.maps[0][2].at(0, 2) == 1);
}

TEST_CASE("bound linear quiver construction") {
    CHECK(build_algebra(build_An_l(2, 2)).dim() == 3);
    CHECK(build_algebra(build_An_l(3, 2)).dim() == 5);
    CHECK(build_algebra(build_An_l(3, 3)).dim() == 6);
    CHECK(build_algebra(build_An_l(1, 2)).dim() == 1);
    // n trivial paths, n-1 arrows, one length-2 path per inner vertex, ...
    CHECK(build_algebra(build_An_l(9, 3)).dim() == 9 + 8 + 7);
    CHECK_THROWS_AS(build_An_l(0, 2), input_error);
    CHECK_THROWS_AS(build_An_l(3, 1), input_error);
}

TEST_CASE("repetitive slice") {
    Algebra a2 = build_algebra(fx::A2());
    RepetitiveSlice s = repetitive_slice(a2, 0, 1);
    // construction runs check_bounded; reaching here means the axioms hold
    REQUIRE(s.cat.nobj() == 4);
    CHECK(s.cat.labels ==
          std::vector<std::string>{"(1,0)", "(2,0)", "(1,1)", "(2,1)"});

    // same-index homs copy the algebra
    CHECK(s.cat.dims[s.opos(0, 0)][s.opos(1, 0)] == 1);
    CHECK(s.cat.dims[s.opos(1, 0)][s.opos(0, 0)] == 0);
    // raising homs are dual corners
    CHECK(s.cat.dims[s.opos(0, 0)][s.opos(0, 1)] == 1);
    CHECK(s.cat.dims[s.opos(1, 0)][s.opos(0, 1)] == 1);
    CHECK(s.cat.dims[s.opos(0, 0)][s.opos(1, 1)] == 0);
    // nothing points backwards
    CHECK(s.cat.dims[s.opos(0, 1)][s.opos(0, 0)] == 0);

    // arrow then functional: delta_{e_1} composes off the arrow to delta-dual
    std::vector<fel> c =
        s.cat.compose(s.opos(0, 0), s.opos(1, 0), s.opos(0, 1), {1}, {1});
    CHECK(c == std::vector<fel>{1});

    // two raising morphisms compose to zero (through a dim-0 hom space)
    RepetitiveSlice s3 = repetitive_slice(a2, 0, 2);
    CHECK(s3.cat.nobj() == 6);
    CHECK(s3.cat.dims[s3.opos(0, 0)][s3.opos(0, 2)] == 0);
    CHECK(s3.cat.compose(s3.opos(0, 0), s3.opos(0, 1), s3.opos(0, 2), {1}, {1}).empty());

    // a single-index window of a local algebra is the algebra itself
    Algebra l2 = build_algebra(fx::L2());
    RepetitiveSlice sl = repetitive_slice(l2, 0, 0);
    CHECK(sl.cat.nobj() == 1);
    CHECK(sl.cat.dims[0][0] == 2);

    CHECK_THROWS_AS(repetitive_slice(a2, 1, 0), input_error);

    // slices of the other fixtures also satisfy the category axioms
    for (auto pres : {fx::N2(), fx::K(), fx::SQ(), fx::C3rad2()})
        repetitive_slice(build_algebra(pres), 0, 1);
}

TEST_CASE("slice projective dimension vectors") {
    Algebra a2 = build_algebra(fx::A2());
    RepetitiveSlice s = repetitive_slice(a2, 0, 1);

    std::vector<size_t> p1 = slice_projective_dimvec(a2, s, 1, 0);
    CHECK(p1 == std::vector<size_t>{1, 1, 1, 0});
    std::vector<size_t> p2 = slice_projective_dimvec(a2, s, 2, 0);
    CHECK(p2 == std::vector<size_t>{0, 1, 1, 1});

    Algebra l2 = build_algebra(fx::L2());
    RepetitiveSlice sl = repetitive_slice(l2, 0, 1);
    std::vector<size_t> pv = slice_projective_dimvec(l2, sl, 1, 0);
    CHECK(pv == std::vector<size_t>{2, 2});

    CHECK(mentions(thrown_msg([&] { slice_projective_dimvec(a2, s, 1, 1); }),
                   "truncated support"));
    CHECK_THROWS_AS(slice_projective_dimvec(a2, s, 1, 5), input_error);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>

#include "derange/io.hpp"
#include "fixtures.hpp"

using namespace derange;
namespace fs = std::filesystem;

namespace {

std::string thrown_msg(const std::function<void()>& f) {
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

bool mentions(const std::string& msg, const std::string& frag) {
    return msg.find(frag) != std::string::npos;
}

fs::path scratch() {
    fs::path dir = fs::temp_directory_path() / "derange_io_test";
    fs::create_directories(dir);
    return dir;
}

void put(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

}  // namespace

TEST_CASE("algebra files round-trip byte for byte") {
    for (const Presentation& pres :
         {fx::L2(), fx::A2(), fx::K(), fx::SQ(), fx::D4(), fx::Atilde2(), fx::C3rad2()}) {
        std::string text = write_presentation(pres);
        Presentation back = read_presentation(text);
        CHECK(write_presentation(back) == text);
        CHECK(build_algebra(back).dim() == build_algebra(pres).dim());
    }

    fs::path p = scratch() / "l2.alg";
    put(p, write_presentation(fx::L2()));
    Presentation from_disk = read_presentation_file(p.string());
    CHECK(write_presentation(from_disk) == write_presentation(fx::L2()));
}

TEST_CASE("algebra reader accepts any key order, whitespace, and signed coefficients") {
    // The square quiver commutativity relation written by hand, keys
    // scrambled and the second coefficient left at -1.
    std::string text = R"({
      "relations": [[ {"path": [0, 1], "coeff": 1}, {"coeff": -1, "path": [2, 3]} ]],
      "vertices": [1, 2, 3, 4],
      "prime": 101,
      "arrows": [
        {"id": 0, "from": 1, "to": 2}, {"id": 1, "from": 2, "to": 4},
        {"id": 2, "from": 1, "to": 3}, {"id": 3, "from": 3, "to": 4}
      ]
    })";
    Presentation pres = read_presentation(text);
    CHECK(pres.prime == 101);
    CHECK(pres.length_cap == 12);
    CHECK(pres.relations.size() == 1);
    CHECK(pres.relations[0].terms[1].first == 100);
    CHECK(pres.relations[0].terms[1].second.vertex == 1);
    CHECK(write_presentation(pres) == write_presentation(fx::SQ()));
}

TEST_CASE("algebra reader names the offending field") {
    auto bad = [](const std::string& text) {
        return thrown_msg([&] { read_presentation(text, "f.alg"); });
    };
    CHECK(mentions(bad("not json at all"), "f.alg"));
    CHECK(mentions(bad(R"({"vertices": [1], "arrows": [], "relations": []})"), "prime"));
    CHECK(mentions(bad(R"({"prime": 6, "vertices": [1], "arrows": [], "relations": []})"),
                   "not a small prime"));
    CHECK(mentions(bad(R"({"prime": 2, "vertices": 5, "arrows": [], "relations": []})"),
                   "vertices"));
    CHECK(mentions(
        bad(R"({"prime": 2, "vertices": [1], "arrows": [{"id": 0, "from": 1}], "relations": []})"),
        "arrows[0]"));
    std::string loop = R"({"prime": 2, "vertices": [1],
                           "arrows": [{"id": 0, "from": 1, "to": 1}],)";
    CHECK(mentions(bad(loop + R"( "relations": [[{"coeff": 1, "path": []}]]})"), "nonempty"));
    CHECK(mentions(bad(loop + R"( "relations": [[{"coeff": 1, "path": [7, 7]}]]})"),
                   "unknown arrow 7"));
    CHECK_THROWS_AS(read_presentation_file((scratch() / "missing.alg").string()), input_error);
    // Structural nonsense still goes through the presentation validator.
    CHECK(bad(loop + R"( "relations": [[{"coeff": 2, "path": [0, 0]}]]})") != "");
}

TEST_CASE("module files round-trip and validate relations") {
    Algebra k = build_algebra(fx::K());
    Representation m;
    m.dims = {1, 2};
    m.mats = {Mat(1, 2, k.fp), Mat(1, 2, k.fp)};
    m.mats[0].at(0, 0) = 1;
    m.mats[1].at(0, 1) = 1;
    REQUIRE(!check_representation(k, m).has_value());

    std::string text = write_representation(m, "K.alg");
    Representation back = read_representation(k, text);
    CHECK(write_representation(back, "K.alg") == text);
    CHECK(back.dims == m.dims);

    fs::path p = scratch() / "m.mod";
    put(p, text);
    CHECK(write_representation(read_representation_file(k, p.string()), "K.alg") == text);

    auto bad = [&](const Algebra& alg, const std::string& t) {
        return thrown_msg([&] { read_representation(alg, t, "m.mod"); });
    };
    CHECK(mentions(bad(k, R"({"dims": [1], "matrices": []})"), "per vertex"));
    CHECK(mentions(bad(k, R"({"dims": [1, 1], "matrices": [[[1]]]})"), "per arrow"));
    CHECK(mentions(bad(k, R"({"dims": [1, 1], "matrices": [[[1]], [[1], [2]]]})"),
                   "matrices[1] must have 1 rows"));
    // x acting with x^2 != 0 violates the loop relation.
    Algebra l2 = build_algebra(fx::L2());
    CHECK(mentions(bad(l2, R"({"dims": [1], "matrices": [[[1]]]})"), "relation 0"));
}

TEST_CASE("complex files round-trip, reject d^2 != 0, and accept non-minimal input") {
    Algebra k = build_algebra(fx::K());
    BandSearch bs = find_bands(k, 12);
    REQUIRE(!bs.bands.empty());
    ProjComplex x = band_complex(k, bs.bands[0], 1, 2);

    std::string text = write_complex(x, "K.alg");
    ProjComplex back = read_complex(k, text);
    CHECK(back == x);
    CHECK(write_complex(back, "K.alg") == text);

    fs::path p = scratch() / "x.cpx";
    put(p, text);
    CHECK(read_complex_file(k, p.string()) == x);

    Algebra a3 = build_algebra(build_An_l(3, 3));
    auto bad = [&](const std::string& t) {
        return thrown_msg([&] { read_complex(a3, t, "x.cpx"); });
    };
    CHECK(mentions(bad(R"({"m": 1, "mults": [[1]], "diffs": []})"), "degrees 0..m"));
    CHECK(mentions(bad(R"({"m": 0, "mults": [[9]], "diffs": []})"), "unknown vertex 9"));
    CHECK(mentions(bad(R"({"m": 1, "mults": [[2], [1]], "diffs": [[[[1, 1]]]]})"),
                   "entry length"));
    // P_3 -> P_2 -> P_1 with both arrows: the composite is ab != 0.
    CHECK(mentions(
        bad(R"({"m": 2, "mults": [[3], [2], [1]], "diffs": [[[[1]]], [[[1]]]]})"), "d^2"));

    // An identity differential is not minimal but must still parse; minimize
    // then kills the pair of summands.
    Algebra a2 = build_algebra(fx::A2());
    ProjComplex nm = read_complex(
        a2, R"({"m": 1, "mults": [[1], [1]], "diffs": [[[[1]]]]})");
    CHECK(validate(a2, nm).has_value());
    ProjComplex reduced = minimize(a2, nm);
    CHECK(reduced.mults == std::vector<std::vector<int>>{{}, {}});
}

TEST_CASE("functor files load their algebras and realize a checked functor") {
    fs::path dir = scratch();
    put(dir / "an33.alg", write_presentation(build_An_l(3, 3)));
    put(dir / "l3.alg", write_presentation(fx::L3()));
    put(dir / "collapse.fun", R"({
      "source": "an33.alg",
      "target": "l3.alg",
      "vertex_map": [1, 1, 1],
      "arrow_images": [[0, 1, 0], [0, 1, 0]]
    })");

    FunctorFile f = read_functor_file((dir / "collapse.fun").string());
    CHECK(f.source_ref == "an33.alg");
    CHECK(f.vertex_map == std::vector<int>{1, 1, 1});
    LinearFunctor lf = realize_functor(f);
    CHECK(!check_functor(lf).has_value());
    CHECK(is_cleaving_cond1(lf).cleaving);

    std::string text = write_functor(f);
    put(dir / "again.fun", text);
    CHECK(write_functor(read_functor_file((dir / "again.fun").string())) == text);

    put(dir / "l3p3.alg", write_presentation(fx::L3(3)));
    put(dir / "mixed.fun", R"({
      "source": "an33.alg", "target": "l3p3.alg",
      "vertex_map": [1, 1, 1], "arrow_images": [[0, 1, 0], [0, 1, 0]]
    })");
    CHECK(mentions(thrown_msg([&] { read_functor_file((dir / "mixed.fun").string()); }),
                   "share the prime"));

    put(dir / "short.fun", R"({
      "source": "an33.alg", "target": "l3.alg",
      "vertex_map": [1, 1], "arrow_images": [[0, 1, 0], [0, 1, 0]]
    })");
    CHECK(mentions(thrown_msg([&] { read_functor_file((dir / "short.fun").string()); }),
                   "vertex_map"));
}

TEST_CASE("classification reports carry verdict and certificate fields") {
    Algebra l2 = build_algebra(fx::L2());
    nlohmann::json j = nlohmann::json::parse(classification_json(classify(l2)));
    CHECK(j["verdict"] == "derived-discrete");
    CHECK(j["certificate"]["kind"] == "vossieck-counts");
    CHECK(j["certificate"]["data"]["counts"] == nlohmann::json({1, 0}));

    Algebra k = build_algebra(fx::K());
    nlohmann::json jk = nlohmann::json::parse(classification_json(classify(k)));
    CHECK(jk["verdict"] == "strongly-derived-unbounded");
    CHECK(jk["certificate"]["kind"] == "band-family");
    CHECK(jk["certificate"]["data"]["dims_by_degree"] == nlohmann::json({4, 8, 12}));
    CHECK(jk["certificate"]["data"]["entries"] == 15);
    CHECK(jk["certificate"]["data"]["band"]["letters"].size() == 2);

    Algebra a2 = build_algebra(fx::A2());
    nlohmann::json ja = nlohmann::json::parse(classification_json(classify(a2)));
    CHECK(ja["verdict"] == "derived-discrete");
    CHECK(ja["certificate"]["data"]["graph"] == "A_2");
}

TEST_CASE("census and dichotomy reports expose params, classes, and statements") {
    Algebra a2 = build_algebra(fx::A2());
    CensusTable t = enumerate_Cm(a2, 1, {2, 2}, 2);
    std::string text = census_json(t);
    nlohmann::json j = nlohmann::json::parse(text);
    CHECK(j["census"]["params"]["m"] == 1);
    CHECK(j["census"]["params"]["caps"] == nlohmann::json({2, 2}));
    CHECK(j["census"]["params"]["prime"] == 2);
    CHECK(j["census"]["params"]["enumerated"] == 67);
    CHECK(j["census"]["class_count"] == 46);
    CHECK(j["census"]["indecomposables"] == 5);
    CHECK(j["census"]["classes"].size() == 46);
    CHECK(j["census"]["classes"][0]["complex"].contains("mults"));
    // Deterministic: a fresh census prints the same bytes.
    CHECK(census_json(enumerate_Cm(a2, 1, {2, 2}, 2)) == text);

    Algebra l2 = build_algebra(fx::L2());
    nlohmann::json dj = nlohmann::json::parse(dichotomy_json(dichotomy_report(l2, 1)));
    CHECK(dj["m"] == 1);
    CHECK(dj["classification"]["verdict"] == "derived-discrete");
    CHECK(dj["census"]["class_count"] == 14);
    CHECK(!dj["statements"].empty());

    Algebra k = build_algebra(fx::K());
    nlohmann::json dk = nlohmann::json::parse(dichotomy_json(dichotomy_report(k, 2)));
    CHECK(dk["census"].is_null());
    CHECK(dk["classification"]["certificate"]["kind"] == "band-family");
}

TEST_CASE("the small report emitters stay stable") {
    Algebra a2 = build_algebra(fx::A2());
    nlohmann::json bj = nlohmann::json::parse(basis_json(a2));
    CHECK(bj["dim"] == 3);
    CHECK(bj["radical_dim"] == 1);
    CHECK(bj["basis"].size() == 3);
    CHECK(bj["corner_dims"] == nlohmann::json({{1, 1}, {0, 1}}));

    ProjComplex s = stalk_complex(a2, 1, 0, 1);
    nlohmann::json cj = nlohmann::json::parse(cohomology_json(cohomology(a2, s)));
    CHECK(cj["hl"] == 2);
    CHECK(cj["hr"] == 2);
    CHECK(cj["h"] == nlohmann::json({2, 0}));

    nlohmann::json ij = nlohmann::json::parse(iso_json(is_isomorphic(a2, s, s)));
    CHECK(ij["isomorphic"] == true);
    CHECK(ij["certain"] == true);
    CHECK(!ij["witness"].is_null());
    ProjComplex s2 = stalk_complex(a2, 2, 0, 1);
    nlohmann::json nj = nlohmann::json::parse(iso_json(is_isomorphic(a2, s, s2)));
    CHECK(nj["isomorphic"] == false);
    CHECK(nj["witness"].is_null());

    nlohmann::json dj = nlohmann::json::parse(indec_json(is_indecomposable(a2, s)));
    CHECK(dj["indecomposable"] == true);

    Algebra k = build_algebra(fx::K());
    nlohmann::json bandj = nlohmann::json::parse(bands_json(find_bands(k, 12)));
    CHECK(bandj["bands"].size() >= 1);
    CHECK(bandj["bands"][0]["letters"][0].contains("inverse"));

    BandSearch bs = find_bands(k, 12);
    WitnessFamily fam = witness_family(k, bs.bands[0], {1, 2}, {1, 2});
    nlohmann::json wj = nlohmann::json::parse(witness_json(fam));
    CHECK(wj["degrees"] == nlohmann::json({1, 2}));
    CHECK(wj["entries"].size() == 4);
    CHECK(wj["entries"][0]["complex"]["m"] == 1);

    Algebra sq0 = build_algebra(fx::SQ0());
    nlohmann::json pj = nlohmann::json::parse(pi1_json(fundamental_group_report(sq0)));
    CHECK(pj["verdict"] == "nontrivial");
    CHECK(pj["abelian_invariants"] == nlohmann::json({0}));

    Algebra sq = build_algebra(fx::SQ());
    nlohmann::json pj2 = nlohmann::json::parse(pi1_json(fundamental_group_report(sq)));
    CHECK(pj2["verdict"] == "trivial");

    LinearFunctor idf = identity_functor(as_bounded_category(a2));
    nlohmann::json clj = nlohmann::json::parse(cleaving_json(is_cleaving_cond1(idf)));
    CHECK(clj["cleaving"] == true);
}

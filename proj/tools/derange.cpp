// Command-line front door: parse algebra/complex/functor files, run one
// operation, print the JSON report on stdout and a one-line summary on
// stderr. Exit codes: 0 ok, 2 bad input, 3 budget exceeded, 4 internal
// invariant failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "derange/io.hpp"

using namespace derange;

namespace {

uint64_t g_seed = 1;

// DERANGE_SEED beats the --seed flag, which beats the default.
uint64_t seed() {
    if (const char* env = std::getenv("DERANGE_SEED")) {
        char* end = nullptr;
        uint64_t v = std::strtoull(env, &end, 10);
        require(end && *end == '\0', "DERANGE_SEED must be an unsigned integer");
        return v;
    }
    return g_seed;
}

void emit(const std::string& json, const std::string& summary) {
    std::fputs(json.c_str(), stdout);
    std::fputs((summary + "\n").c_str(), stderr);
}

std::string error_json(const std::string& msg) {
    nlohmann::ordered_json j;
    j["error"] = msg;
    return j.dump(2) + "\n";
}

std::string join_sizes(const std::vector<size_t>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
    return s + ")";
}

Algebra load_algebra(const std::string& path) {
    return build_algebra(read_presentation_file(path));
}

IsoMode parse_mode(const std::string& mode) {
    if (mode == "automatic") return IsoMode::automatic;
    if (mode == "exhaustive") return IsoMode::exhaustive;
    if (mode == "randomized") return IsoMode::randomized;
    throw input_error("unknown isomorphism search mode '" + mode + "'");
}

std::pair<int, int> parse_window(const std::string& w) {
    size_t colon = w.find(':');
    require(colon != std::string::npos, "window must be lo:hi, e.g. 0:1");
    try {
        return {std::stoi(w.substr(0, colon)), std::stoi(w.substr(colon + 1))};
    } catch (const std::exception&) {
        throw input_error("window must be lo:hi with integer bounds");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"derived representation type workbench for bound quiver algebras"};
    app.require_subcommand(1);

    // Shared option targets; each subcommand binds the ones it uses.
    std::string alg_path, x_path, y_path, fun_path;
    std::string mode = "automatic", window = "0:1";
    int m = 1;
    long long band_idx = 0;
    uint32_t prime = 2;
    unsigned long long budget = 1ull << 22;
    int jobs = 0;
    size_t letters = 12;
    std::vector<size_t> caps, degrees{1, 2, 3};
    std::vector<long long> lambdas{1, 2, 3, 4, 5};

    auto* basis = app.add_subcommand("basis", "normal-form path basis of the algebra");
    basis->add_option("algebra", alg_path)->required();
    basis->callback([&] {
        Algebra a = load_algebra(alg_path);
        emit(basis_json(a), "dimension " + std::to_string(a.dim()) + " over F_" +
                                std::to_string(a.fp.modulus()));
    });

    auto* cls = app.add_subcommand("classify", "derived representation type with certificate");
    cls->add_option("algebra", alg_path)->required();
    cls->add_option("--seed", g_seed);
    cls->callback([&] {
        ClassificationReport r = classify(load_algebra(alg_path), seed());
        emit(classification_json(r),
             verdict_name(r.verdict) + " (certificate: " + r.certificate + ")");
    });

    auto* cen = app.add_subcommand("census", "isomorphism classes of C_m under summand caps");
    cen->add_option("algebra", alg_path)->required();
    cen->add_option("-m", m, "window bound")->required();
    cen->add_option("--caps", caps, "max summands per degree 0..m")->delimiter(',');
    cen->add_option("-p,--prime", prime, "census field");
    cen->add_option("--budget", budget, "assignment enumeration budget");
    cen->add_option("--jobs", jobs, "worker threads (0 = library default)");
    cen->callback([&] {
        Algebra a = load_algebra(alg_path);
        std::vector<size_t> use = caps.empty() ? std::vector<size_t>(size_t(m) + 1, 2) : caps;
        CensusTable t = enumerate_Cm(a, m, use, prime, budget, jobs);
        emit(census_json(t), std::to_string(t.classes.size()) + " classes (" +
                                 std::to_string(t.indecomposables()) +
                                 " indecomposable) from " + std::to_string(t.enumerated) +
                                 " assignments");
    });

    auto* coh = app.add_subcommand("cohomology", "per-degree cohomology profile of a complex");
    coh->add_option("algebra", alg_path)->required();
    coh->add_option("complex", x_path)->required();
    coh->callback([&] {
        Algebra a = load_algebra(alg_path);
        CohomologyProfile p = cohomology(a, read_complex_file(a, x_path));
        emit(cohomology_json(p), "hl " + std::to_string(p.hl) + ", hw " + std::to_string(p.hw) +
                                     ", hr " + std::to_string(p.hr));
    });

    auto* mini = app.add_subcommand("minimize", "Gaussian reduction to the minimal complex");
    mini->add_option("algebra", alg_path)->required();
    mini->add_option("complex", x_path)->required();
    mini->callback([&] {
        Algebra a = load_algebra(alg_path);
        ProjComplex x = minimize(a, read_complex_file(a, x_path));
        emit(write_complex(x, alg_path), "minimal complex with " +
                                             std::to_string(degree_dim(a, x, 0)) +
                                             "-dimensional degree 0");
    });

    auto* iso = app.add_subcommand("iso", "chain isomorphism test for two complexes");
    iso->add_option("algebra", alg_path)->required();
    iso->add_option("x", x_path)->required();
    iso->add_option("y", y_path)->required();
    iso->add_option("--seed", g_seed);
    iso->add_option("--mode", mode, "automatic | exhaustive | randomized");
    iso->callback([&] {
        Algebra a = load_algebra(alg_path);
        IsoResult r = is_isomorphic(a, read_complex_file(a, x_path),
                                    read_complex_file(a, y_path), seed(), parse_mode(mode));
        emit(iso_json(r), std::string(r.isomorphic ? "isomorphic" : "not isomorphic") +
                              (r.certain ? "" : " (uncertain)"));
    });

    auto* ind = app.add_subcommand("indec", "indecomposability of a complex");
    ind->add_option("algebra", alg_path)->required();
    ind->add_option("complex", x_path)->required();
    ind->add_option("--seed", g_seed);
    ind->callback([&] {
        Algebra a = load_algebra(alg_path);
        IndecResult r = is_indecomposable(a, read_complex_file(a, x_path), seed());
        emit(indec_json(r),
             std::string(r.indecomposable ? "indecomposable" : "decomposable") + " by " +
                 r.method);
    });

    auto* ban = app.add_subcommand("bands", "homotopy band search");
    ban->add_option("algebra", alg_path)->required();
    ban->add_option("--letters", letters, "maximum band length");
    ban->callback([&] {
        BandSearch b = find_bands(load_algebra(alg_path), letters);
        emit(bands_json(b), std::to_string(b.bands.size()) + " bands; " + b.note);
    });

    auto* wit = app.add_subcommand("witness", "one-parameter family over a homotopy band");
    wit->add_option("algebra", alg_path)->required();
    wit->add_option("--band", band_idx, "band index as listed by the bands subcommand");
    wit->add_option("--degrees", degrees, "Jordan block sizes")->delimiter(',');
    wit->add_option("--lambdas", lambdas, "Jordan block eigenvalues")->delimiter(',');
    wit->add_option("--seed", g_seed);
    wit->callback([&] {
        Algebra a = load_algebra(alg_path);
        BandSearch b = find_bands(a, letters);
        require(band_idx >= 0 && size_t(band_idx) < b.bands.size(),
                "band index out of range: the search found " + std::to_string(b.bands.size()) +
                    " bands");
        std::vector<fel> ls;
        for (long long l : lambdas) ls.push_back(a.fp.reduce(l));
        WitnessFamily f = witness_family(a, b.bands[size_t(band_idx)], degrees, ls, seed());
        emit(witness_json(f), std::to_string(f.entries.size()) + " members, dims " +
                                  join_sizes(f.dims_by_degree) + " by degree");
    });

    auto* pi1 = app.add_subcommand("pi1", "fundamental group of the presentation");
    pi1->add_option("algebra", alg_path)->required();
    pi1->callback([&] {
        FundamentalGroupReport r = fundamental_group_report(load_algebra(alg_path));
        emit(pi1_json(r), "verdict " + r.verdict + " with " +
                              std::to_string(r.generator_arrows.size()) + " generators");
    });

    auto* clv = app.add_subcommand("cleaving", "cleaving condition for a functor file");
    clv->add_option("functor", fun_path)->required();
    clv->callback([&] {
        CleavingResult r = is_cleaving_cond1(realize_functor(read_functor_file(fun_path)));
        emit(cleaving_json(r), r.cleaving ? "cleaving" : "not cleaving: " + r.note);
    });

    auto* rep = app.add_subcommand("repetitive", "finite window of the repetitive category");
    rep->add_option("algebra", alg_path)->required();
    rep->add_option("--window", window, "index window lo:hi");
    rep->callback([&] {
        auto [lo, hi] = parse_window(window);
        RepetitiveSlice s = repetitive_slice(load_algebra(alg_path), lo, hi);
        emit(repetitive_json(s),
             "window [" + std::to_string(lo) + ", " + std::to_string(hi) + "] with " +
                 std::to_string(s.cat.objects.size()) + " objects");
    });

    auto* dich = app.add_subcommand("dichotomy", "classification plus census-backed statements");
    dich->add_option("algebra", alg_path)->required();
    dich->add_option("-m", m, "window bound");
    dich->add_option("--caps", caps, "census caps per degree")->delimiter(',');
    dich->add_option("-p,--prime", prime, "census field");
    dich->add_option("--seed", g_seed);
    dich->callback([&] {
        DichotomyReport r = dichotomy_report(load_algebra(alg_path), m, prime, caps, seed());
        std::string lines;
        for (const std::string& s : r.statements) lines += s + "\n";
        std::fputs(dichotomy_json(r).c_str(), stdout);
        std::fputs(lines.c_str(), stderr);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const input_error& e) {
        emit(error_json(e.what()), std::string("error: ") + e.what());
        return 2;
    } catch (const budget_error& e) {
        emit(error_json(e.what()), std::string("budget: ") + e.what());
        return 3;
    } catch (const std::exception& e) {
        emit(error_json(e.what()), std::string("invariant: ") + e.what());
        return 4;
    }
    return 0;
}

#include "derange/io.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "derange/error.hpp"

namespace derange {

// ordered_json keeps insertion order, which is what makes the writers
// canonical; readers never rely on order.
using njson = nlohmann::ordered_json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error(path + ": cannot open file");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

njson parse(const std::string& text, const std::string& where) {
    try {
        return njson::parse(text);
    } catch (const njson::exception& e) {
        throw input_error(where + ": " + e.what());
    }
}

const njson& need(const njson& obj, const char* key, const std::string& at) {
    if (!obj.is_object()) throw input_error(at + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw input_error(at + ": missing field '" + key + "'");
    return *it;
}

long long need_int(const njson& obj, const char* key, const std::string& at) {
    const njson& v = need(obj, key, at);
    if (!v.is_number_integer())
        throw input_error(at + ": field '" + key + "' must be an integer");
    return v.get<long long>();
}

std::string need_string(const njson& obj, const char* key, const std::string& at) {
    const njson& v = need(obj, key, at);
    if (!v.is_string()) throw input_error(at + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

const njson& need_array(const njson& obj, const char* key, const std::string& at) {
    const njson& v = need(obj, key, at);
    if (!v.is_array()) throw input_error(at + ": field '" + key + "' must be an array");
    return v;
}

long long as_int(const njson& v, const std::string& at) {
    if (!v.is_number_integer()) throw input_error(at + " must be an integer");
    return v.get<long long>();
}

std::vector<int> int_list(const njson& v, const std::string& at) {
    if (!v.is_array()) throw input_error(at + " must be an array");
    std::vector<int> out;
    out.reserve(v.size());
    for (size_t i = 0; i < v.size(); ++i)
        out.push_back(static_cast<int>(as_int(v[i], at + "[" + std::to_string(i) + "]")));
    return out;
}

std::vector<fel> coeff_list(const njson& v, const Fp& fp, const std::string& at) {
    if (!v.is_array()) throw input_error(at + " must be an array");
    std::vector<fel> out;
    out.reserve(v.size());
    for (size_t i = 0; i < v.size(); ++i)
        out.push_back(fp.reduce(as_int(v[i], at + "[" + std::to_string(i) + "]")));
    return out;
}

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::string dump(const njson& j) { return j.dump(2) + "\n"; }

njson path_json(const PathWord& w) {
    njson j;
    j["vertex"] = w.vertex;
    j["arrows"] = w.arrows;
    return j;
}

njson complex_body(const ProjComplex& x) {
    njson j;
    j["m"] = x.m;
    j["mults"] = x.mults;
    j["diffs"] = x.diffs;
    return j;
}

njson band_json(const HomotopyBand& band) {
    njson letters = njson::array();
    for (const HomotopyLetter& l : band.letters) {
        njson lj;
        lj["arrows"] = l.path.arrows;
        lj["inverse"] = l.inverse;
        letters.push_back(std::move(lj));
    }
    njson j;
    j["letters"] = std::move(letters);
    return j;
}

}  // namespace

Presentation read_presentation(const std::string& text, const std::string& where) {
    njson j = parse(text, where);
    Presentation pres;

    long long prime = need_int(j, "prime", where);
    if (!is_prime(prime) || prime >= (1ll << 31))
        throw input_error(where + ": prime " + std::to_string(prime) + " is not a small prime");
    pres.prime = static_cast<uint32_t>(prime);
    Fp fp(pres.prime);

    if (j.contains("length_cap")) {
        long long cap = need_int(j, "length_cap", where);
        if (cap < 2) throw input_error(where + ": length_cap must be at least 2");
        pres.length_cap = static_cast<int>(cap);
    }

    pres.quiver.vertices = int_list(need_array(j, "vertices", where), where + ": vertices");

    const njson& arrows = need_array(j, "arrows", where);
    for (size_t i = 0; i < arrows.size(); ++i) {
        std::string at = where + ": arrows[" + std::to_string(i) + "]";
        Arrow a;
        a.id = static_cast<int>(need_int(arrows[i], "id", at));
        a.from = static_cast<int>(need_int(arrows[i], "from", at));
        a.to = static_cast<int>(need_int(arrows[i], "to", at));
        pres.quiver.arrows.push_back(a);
    }
    try {
        pres.quiver.reindex();
    } catch (const input_error& e) {
        throw input_error(where + ": " + e.what());
    }

    const njson& rels = need_array(j, "relations", where);
    for (size_t i = 0; i < rels.size(); ++i) {
        std::string at = where + ": relations[" + std::to_string(i) + "]";
        if (!rels[i].is_array()) throw input_error(at + " must be an array of terms");
        Relation rel;
        for (size_t t = 0; t < rels[i].size(); ++t) {
            std::string tat = at + "[" + std::to_string(t) + "]";
            fel c = fp.reduce(need_int(rels[i][t], "coeff", tat));
            std::vector<int> ids = int_list(need_array(rels[i][t], "path", tat), tat + ".path");
            if (ids.empty()) throw input_error(tat + ".path must be a nonempty arrow list");
            for (int id : ids)
                if (!pres.quiver.apos.count(id))
                    throw input_error(tat + ".path names unknown arrow " + std::to_string(id));
            PathWord w;
            w.vertex = pres.quiver.arrow(ids[0]).from;
            w.arrows = std::move(ids);
            rel.terms.emplace_back(c, std::move(w));
        }
        pres.relations.push_back(std::move(rel));
    }

    try {
        validate(pres);
    } catch (const input_error& e) {
        throw input_error(where + ": " + e.what());
    }
    return pres;
}

Presentation read_presentation_file(const std::string& path) {
    return read_presentation(slurp(path), path);
}

std::string write_presentation(const Presentation& pres) {
    njson j;
    j["prime"] = pres.prime;
    j["length_cap"] = pres.length_cap;
    j["vertices"] = pres.quiver.vertices;
    njson arrows = njson::array();
    for (const Arrow& a : pres.quiver.arrows) {
        njson aj;
        aj["id"] = a.id;
        aj["from"] = a.from;
        aj["to"] = a.to;
        arrows.push_back(std::move(aj));
    }
    j["arrows"] = std::move(arrows);
    njson rels = njson::array();
    for (const Relation& rel : pres.relations) {
        njson terms = njson::array();
        for (const auto& [c, w] : rel.terms) {
            njson tj;
            tj["coeff"] = c;
            tj["path"] = w.arrows;
            terms.push_back(std::move(tj));
        }
        rels.push_back(std::move(terms));
    }
    j["relations"] = std::move(rels);
    return dump(j);
}

Representation read_representation(const Algebra& alg, const std::string& text,
                                   const std::string& where) {
    njson j = parse(text, where);
    const Quiver& q = alg.pres.quiver;

    const njson& dims = need_array(j, "dims", where);
    if (dims.size() != q.vertices.size())
        throw input_error(where + ": dims must list one entry per vertex");
    Representation m;
    for (size_t v = 0; v < dims.size(); ++v) {
        long long d = as_int(dims[v], where + ": dims[" + std::to_string(v) + "]");
        if (d < 0) throw input_error(where + ": dims[" + std::to_string(v) + "] is negative");
        m.dims.push_back(static_cast<size_t>(d));
    }

    const njson& mats = need_array(j, "matrices", where);
    if (mats.size() != q.arrows.size())
        throw input_error(where + ": matrices must list one matrix per arrow");
    for (size_t k = 0; k < mats.size(); ++k) {
        std::string at = where + ": matrices[" + std::to_string(k) + "]";
        const Arrow& a = q.arrows[k];
        size_t rows = m.dims[q.vindex(a.from)];
        size_t cols = m.dims[q.vindex(a.to)];
        if (!mats[k].is_array() || mats[k].size() != rows)
            throw input_error(at + " must have " + std::to_string(rows) + " rows");
        Mat mat(rows, cols, alg.fp);
        for (size_t r = 0; r < rows; ++r) {
            std::vector<fel> row =
                coeff_list(mats[k][r], alg.fp, at + "[" + std::to_string(r) + "]");
            if (row.size() != cols)
                throw input_error(at + "[" + std::to_string(r) + "] must have " +
                                  std::to_string(cols) + " entries");
            for (size_t c = 0; c < cols; ++c) mat.at(r, c) = row[c];
        }
        m.mats.push_back(std::move(mat));
    }

    if (auto violated = check_representation(alg, m))
        throw input_error(where + ": relation " + std::to_string(*violated) +
                          " is not satisfied");
    return m;
}

Representation read_representation_file(const Algebra& alg, const std::string& path) {
    return read_representation(alg, slurp(path), path);
}

std::string write_representation(const Representation& m, const std::string& algebra_ref) {
    njson j;
    j["algebra"] = algebra_ref;
    j["dims"] = m.dims;
    njson mats = njson::array();
    for (const Mat& mat : m.mats) {
        njson rows = njson::array();
        for (size_t r = 0; r < mat.rows; ++r) {
            njson row = njson::array();
            for (size_t c = 0; c < mat.cols; ++c) row.push_back(mat.at(r, c));
            rows.push_back(std::move(row));
        }
        mats.push_back(std::move(rows));
    }
    j["matrices"] = std::move(mats);
    return dump(j);
}

ProjComplex read_complex(const Algebra& alg, const std::string& text, const std::string& where) {
    njson j = parse(text, where);

    long long m = need_int(j, "m", where);
    if (m < 0) throw input_error(where + ": m must be nonnegative");
    ProjComplex x;
    x.m = static_cast<int>(m);

    const njson& mults = need_array(j, "mults", where);
    if (mults.size() != size_t(m) + 1)
        throw input_error(where + ": mults must list degrees 0..m");
    for (size_t i = 0; i < mults.size(); ++i)
        x.mults.push_back(int_list(mults[i], where + ": mults[" + std::to_string(i) + "]"));

    const njson& diffs = need_array(j, "diffs", where);
    if (diffs.size() != size_t(m))
        throw input_error(where + ": diffs must list degrees 0..m-1");
    for (size_t i = 0; i < diffs.size(); ++i) {
        std::string at = where + ": diffs[" + std::to_string(i) + "]";
        if (!diffs[i].is_array()) throw input_error(at + " must be an array of rows");
        std::vector<std::vector<std::vector<fel>>> grid;
        for (size_t r = 0; r < diffs[i].size(); ++r) {
            std::string rat = at + "[" + std::to_string(r) + "]";
            if (!diffs[i][r].is_array()) throw input_error(rat + " must be an array");
            std::vector<std::vector<fel>> row;
            for (size_t c = 0; c < diffs[i][r].size(); ++c)
                row.push_back(coeff_list(diffs[i][r][c], alg.fp,
                                         rat + "[" + std::to_string(c) + "]"));
            grid.push_back(std::move(row));
        }
        x.diffs.push_back(std::move(grid));
    }

    if (auto err = shape_d2_error(alg, x)) throw input_error(where + ": " + *err);
    return x;
}

ProjComplex read_complex_file(const Algebra& alg, const std::string& path) {
    return read_complex(alg, slurp(path), path);
}

std::string write_complex(const ProjComplex& x, const std::string& algebra_ref) {
    njson j;
    j["algebra"] = algebra_ref;
    njson body = complex_body(x);
    for (auto& [k, v] : body.items()) j[k] = std::move(v);
    return dump(j);
}

FunctorFile read_functor_file(const std::string& path) {
    njson j = parse(slurp(path), path);
    FunctorFile f;
    f.source_ref = need_string(j, "source", path);
    f.target_ref = need_string(j, "target", path);

    std::filesystem::path dir = std::filesystem::path(path).parent_path();
    auto resolve = [&](const std::string& ref) {
        std::filesystem::path p(ref);
        return p.is_absolute() ? p.string() : (dir / p).string();
    };
    f.source = read_presentation_file(resolve(f.source_ref));
    f.target = read_presentation_file(resolve(f.target_ref));
    if (f.source.prime != f.target.prime)
        throw input_error(path + ": source and target algebras must share the prime");
    Fp fp(f.target.prime);

    f.vertex_map = int_list(need_array(j, "vertex_map", path), path + ": vertex_map");
    if (f.vertex_map.size() != f.source.quiver.vertices.size())
        throw input_error(path + ": vertex_map must list one target vertex per source vertex");
    for (size_t v = 0; v < f.vertex_map.size(); ++v)
        if (!f.target.quiver.vpos.count(f.vertex_map[v]))
            throw input_error(path + ": vertex_map[" + std::to_string(v) +
                              "] names an unknown target vertex");

    const njson& imgs = need_array(j, "arrow_images", path);
    if (imgs.size() != f.source.quiver.arrows.size())
        throw input_error(path + ": arrow_images must list one image per source arrow");
    for (size_t k = 0; k < imgs.size(); ++k)
        f.arrow_images.push_back(
            coeff_list(imgs[k], fp, path + ": arrow_images[" + std::to_string(k) + "]"));
    return f;
}

std::string write_functor(const FunctorFile& f) {
    njson j;
    j["source"] = f.source_ref;
    j["target"] = f.target_ref;
    j["vertex_map"] = f.vertex_map;
    j["arrow_images"] = f.arrow_images;
    return dump(j);
}

LinearFunctor realize_functor(const FunctorFile& f) {
    Algebra src = build_algebra(f.source);
    Algebra tgt = build_algebra(f.target);
    LinearFunctor lf = algebra_functor(src, tgt, f.vertex_map, f.arrow_images);
    if (auto err = check_functor(lf)) throw input_error("functor: " + *err);
    return lf;
}

std::string verdict_token(Verdict v) {
    switch (v) {
        case Verdict::derived_discrete: return "derived-discrete";
        case Verdict::strongly_unbounded: return "strongly-derived-unbounded";
        default: return "unknown";
    }
}

std::string basis_json(const Algebra& alg) {
    njson j;
    j["prime"] = alg.fp.modulus();
    j["dim"] = alg.dim();
    j["vertices"] = alg.pres.quiver.vertices;
    njson basis = njson::array();
    for (const PathWord& w : alg.basis) basis.push_back(path_json(w));
    j["basis"] = std::move(basis);
    j["radical_dim"] = radical_basis(alg).size();
    njson corners = njson::array();
    for (size_t a = 0; a < alg.nvert(); ++a) {
        njson row = njson::array();
        for (size_t b = 0; b < alg.nvert(); ++b) row.push_back(alg.corners[a][b].size());
        corners.push_back(std::move(row));
    }
    j["corner_dims"] = std::move(corners);
    return dump(j);
}

namespace {

njson classification_body(const ClassificationReport& r) {
    njson j;
    j["verdict"] = verdict_token(r.verdict);
    njson cert;
    cert["kind"] = r.certificate;
    njson data = njson::object();
    if (r.certificate == "dynkin") {
        data["graph"] = r.dynkin;
    } else if (r.certificate == "vossieck-counts" || r.certificate == "no-bands") {
        data["counts"] = njson::array({r.counts.first, r.counts.second});
    } else if (r.certificate == "band-family") {
        data["band"] = band_json(*r.band);
        data["degrees"] = r.family->degrees;
        data["dims_by_degree"] = r.family->dims_by_degree;
        data["entries"] = r.family->entries.size();
    } else if (r.certificate == "rep-infinite") {
        data["dims"] = r.evidence->dims;
        data["family_size"] = r.evidence->family.size();
        data["lambdas"] = r.evidence->lambdas;
        data["note"] = r.evidence->note;
    }
    cert["data"] = std::move(data);
    j["certificate"] = std::move(cert);
    j["notes"] = r.notes;
    return j;
}

njson census_body(const CensusTable& t) {
    njson j;
    njson params;
    params["m"] = t.m;
    params["caps"] = t.caps;
    params["prime"] = t.prime();
    params["enumerated"] = t.enumerated;
    j["params"] = std::move(params);
    j["class_count"] = t.classes.size();
    j["indecomposables"] = t.indecomposables();
    njson classes = njson::array();
    for (const CensusClass& c : t.classes) {
        njson cj;
        cj["count"] = c.count;
        cj["dim"] = c.dim;
        cj["hr"] = c.hr;
        cj["indecomposable"] = c.indecomposable;
        cj["complex"] = complex_body(c.rep);
        classes.push_back(std::move(cj));
    }
    j["classes"] = std::move(classes);
    return j;
}

}  // namespace

std::string classification_json(const ClassificationReport& r) {
    return dump(classification_body(r));
}

std::string census_json(const CensusTable& t) {
    njson j;
    j["census"] = census_body(t);
    return dump(j);
}

std::string dichotomy_json(const DichotomyReport& r) {
    njson j;
    j["m"] = r.m;
    j["classification"] = classification_body(r.classification);
    j["census"] = r.census ? census_body(*r.census) : njson();
    j["statements"] = r.statements;
    return dump(j);
}

std::string cohomology_json(const CohomologyProfile& p) {
    njson j;
    j["h"] = p.h;
    j["hl"] = p.hl;
    j["hw"] = p.hw;
    j["hr"] = p.hr;
    j["window"] = p.window;
    j["dim"] = p.dim;
    return dump(j);
}

std::string iso_json(const IsoResult& r) {
    njson j;
    j["isomorphic"] = r.isomorphic;
    j["certain"] = r.certain;
    j["note"] = r.note;
    j["witness"] = r.witness ? njson(r.witness->blocks) : njson();
    return dump(j);
}

std::string indec_json(const IndecResult& r) {
    njson j;
    j["indecomposable"] = r.indecomposable;
    j["certain"] = r.certain;
    j["method"] = r.method;
    return dump(j);
}

std::string bands_json(const BandSearch& b) {
    njson j;
    njson bands = njson::array();
    for (const HomotopyBand& band : b.bands) bands.push_back(band_json(band));
    j["bands"] = std::move(bands);
    j["exhaustive"] = b.exhaustive;
    j["note"] = b.note;
    return dump(j);
}

std::string witness_json(const WitnessFamily& f) {
    njson j;
    j["degrees"] = f.degrees;
    j["dims_by_degree"] = f.dims_by_degree;
    njson entries = njson::array();
    for (const WitnessFamily::Entry& e : f.entries) {
        njson ej;
        ej["degree"] = e.degree;
        ej["lambda"] = e.lambda;
        ej["dim"] = e.dim;
        ej["complex"] = complex_body(e.complex);
        entries.push_back(std::move(ej));
    }
    j["entries"] = std::move(entries);
    j["note"] = f.note;
    return dump(j);
}

std::string pi1_json(const FundamentalGroupReport& r) {
    njson j;
    j["generators"] = r.generator_arrows;
    j["relators"] = r.pres.relators;
    j["abelian_invariants"] = r.abelian_invariants;
    j["verdict"] = r.verdict;
    return dump(j);
}

std::string cleaving_json(const CleavingResult& r) {
    njson j;
    j["cleaving"] = r.cleaving;
    j["note"] = r.note;
    return dump(j);
}

std::string repetitive_json(const RepetitiveSlice& s) {
    njson j;
    j["lo"] = s.lo;
    j["hi"] = s.hi;
    njson objects = njson::array();
    for (size_t i = 0; i < s.cat.objects.size(); ++i) {
        njson oj;
        oj["id"] = s.cat.objects[i];
        oj["label"] = i < s.cat.labels.size() ? s.cat.labels[i] : "";
        objects.push_back(std::move(oj));
    }
    j["objects"] = std::move(objects);
    j["hom_dims"] = s.cat.dims;
    return dump(j);
}

}  // namespace derange

#include "derange/classify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <atomic>
#include <functional>
#include <optional>
#include <sstream>

namespace derange {

namespace {

constexpr unsigned long long kSaturated = ~0ull;
constexpr unsigned long long kEvidenceBudget = 1ull << 17;
constexpr size_t kBandLetters = 12;

std::string join_sizes(const std::vector<size_t>& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << ")";
    return os.str();
}

// --- census scaffolding -------------------------------------------------

// Multisets of vertex ids of size 0..cap, ordered by size then lex in
// vertex positions; entries are non-decreasing, which is the canonical
// summand order throughout the census.
std::vector<std::vector<int>> degree_multisets(const Quiver& q, size_t cap) {
    std::vector<std::vector<int>> out{{}};
    std::vector<std::vector<int>> layer{{}};
    for (size_t s = 1; s <= cap; ++s) {
        std::vector<std::vector<int>> next;
        for (const auto& base : layer) {
            size_t lo = base.empty() ? 0 : q.vindex(base.back());
            for (size_t vp = lo; vp < q.vertices.size(); ++vp) {
                auto ext = base;
                ext.push_back(q.vertices[vp]);
                next.push_back(std::move(ext));
            }
        }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

struct Slot {
    int deg = 0;
    size_t r = 0, c = 0, pos = 0;
};

// One multiplicity shape with its differential coordinate slots: every
// radical basis position of every hom cell between consecutive degrees.
struct ShapeSpace {
    std::vector<std::vector<int>> mults;
    std::vector<std::vector<std::vector<std::vector<size_t>>>> cells;  // [deg][r][c] basis ids
    std::vector<Slot> slots;
    unsigned long long total = 1;  // p^slots, saturating
};

ShapeSpace make_space(const Algebra& alg, std::vector<std::vector<int>> mults) {
    ShapeSpace s;
    s.mults = std::move(mults);
    int m = static_cast<int>(s.mults.size()) - 1;
    s.cells.resize(m);
    for (int i = 0; i < m; ++i) {
        s.cells[i].resize(s.mults[i].size());
        for (size_t r = 0; r < s.mults[i].size(); ++r) {
            s.cells[i][r].resize(s.mults[i + 1].size());
            for (size_t c = 0; c < s.mults[i + 1].size(); ++c) {
                auto cell = corner_basis(alg, s.mults[i + 1][c], s.mults[i][r]);
                for (size_t pos = 0; pos < cell.size(); ++pos)
                    if (!alg.basis[cell[pos]].arrows.empty()) s.slots.push_back({i, r, c, pos});
                s.cells[i][r][c] = std::move(cell);
            }
        }
    }
    unsigned long long p = alg.fp.modulus();
    for (size_t k = 0; k < s.slots.size(); ++k) {
        if (s.total > kSaturated / p) {
            s.total = kSaturated;
            break;
        }
        s.total *= p;
    }
    return s;
}

// Decodes one differential assignment (little-endian base p over the slots)
// and keeps it when d^2 = 0. Minimality is automatic: only radical cell
// positions carry coordinates.
std::optional<ProjComplex> build_at(const Algebra& alg, const ShapeSpace& s,
                                    unsigned long long idx) {
    ProjComplex x;
    x.m = static_cast<int>(s.mults.size()) - 1;
    x.mults = s.mults;
    x.diffs.resize(x.m);
    for (int i = 0; i < x.m; ++i) {
        x.diffs[i].resize(s.mults[i].size());
        for (size_t r = 0; r < s.mults[i].size(); ++r) {
            x.diffs[i][r].resize(s.mults[i + 1].size());
            for (size_t c = 0; c < s.mults[i + 1].size(); ++c)
                x.diffs[i][r][c].assign(s.cells[i][r][c].size(), 0);
        }
    }
    unsigned long long p = alg.fp.modulus();
    for (const Slot& sl : s.slots) {
        x.diffs[sl.deg][sl.r][sl.c][sl.pos] = static_cast<fel>(idx % p);
        idx /= p;
    }
    if (validate(alg, x)) return std::nullopt;
    return x;
}

Algebra census_algebra(const Algebra& alg, uint32_t p) {
    if (alg.fp.modulus() == p) return alg;
    // Coefficients are re-reduced through their balanced integer lift, so
    // signs survive the change of modulus (p-1 stays -1, not garbage).
    Presentation pres = alg.pres;
    uint32_t oldp = pres.prime;
    Fp fp2(p);
    pres.prime = p;
    for (Relation& rel : pres.relations)
        for (auto& term : rel.terms) {
            long long v = term.first;
            if (v > oldp / 2) v -= oldp;
            term.first = fp2.reduce(v);
        }
    return build_algebra(pres);
}

std::vector<ShapeSpace> census_spaces(const Algebra& alg, int m, const std::vector<size_t>& caps,
                                      unsigned long long budget) {
    require(m >= 0, "census window must be nonnegative");
    require(caps.size() == static_cast<size_t>(m) + 1,
            "census needs one multiplicity cap per degree");
    std::vector<std::vector<std::vector<int>>> per_degree;
    for (size_t cap : caps) per_degree.push_back(degree_multisets(alg.pres.quiver, cap));

    std::vector<ShapeSpace> spaces;
    std::vector<size_t> pick(caps.size(), 0);
    unsigned long long grand = 0;
    for (;;) {
        std::vector<std::vector<int>> mults;
        for (size_t i = 0; i < pick.size(); ++i) mults.push_back(per_degree[i][pick[i]]);
        spaces.push_back(make_space(alg, std::move(mults)));
        grand = (grand > kSaturated - spaces.back().total) ? kSaturated
                                                           : grand + spaces.back().total;
        size_t k = pick.size();
        while (k > 0 && ++pick[k - 1] == per_degree[k - 1].size()) {
            pick[k - 1] = 0;
            --k;
        }
        if (k == 0) break;
    }
    if (grand > budget)
        throw budget_error("census would enumerate " +
                           (grand == kSaturated ? std::string("over 2^64")
                                                : std::to_string(grand)) +
                           " differential assignments, budget " + std::to_string(budget));
    return spaces;
}

// Grouping never degrades: the exhaustive chain-map search either settles a
// pair or raises budget_error itself.
bool census_iso(const Algebra& alg, const ProjComplex& x, const ProjComplex& y) {
    IsoResult r = is_isomorphic(alg, x, y, 1, IsoMode::exhaustive);
    ensure(r.certain, "exhaustive isomorphism search reported uncertainty");
    return r.isomorphic;
}

void census_finalize(const Algebra& alg, CensusTable& t) {
    for (CensusClass& cls : t.classes) {
        CohomologyProfile prof = cohomology(alg, cls.rep);
        cls.dim = prof.dim;
        cls.hr = prof.hr;
        IndecResult ir = is_indecomposable(alg, cls.rep, 1);
        if (!ir.certain)
            throw budget_error("census indecomposability was not settled (" + ir.method + ")");
        cls.indecomposable = ir.indecomposable;
    }
}

// Candidates found by one shard, keyed by enumeration index so the merge
// can reproduce serial order exactly.
struct ShardClass {
    unsigned long long idx = 0;
    ProjComplex rep;
    size_t count = 0;
};

}  // namespace

size_t CensusTable::indecomposables() const {
    size_t n = 0;
    for (const CensusClass& c : classes) n += c.indecomposable;
    return n;
}

CensusTable enumerate_Cm_serial(const Algebra& alg, int m, const std::vector<size_t>& caps,
                                uint32_t p, unsigned long long budget) {
    Algebra a2 = census_algebra(alg, p);
    std::vector<ShapeSpace> spaces = census_spaces(a2, m, caps, budget);

    CensusTable t{a2, m, caps, 0, {}};
    for (const ShapeSpace& space : spaces) {
        size_t first = t.classes.size();
        for (unsigned long long idx = 0; idx < space.total; ++idx) {
            std::optional<ProjComplex> x = build_at(a2, space, idx);
            if (!x) continue;
            ++t.enumerated;
            bool placed = false;
            for (size_t k = first; k < t.classes.size() && !placed; ++k)
                if (census_iso(a2, *x, t.classes[k].rep)) {
                    ++t.classes[k].count;
                    placed = true;
                }
            if (!placed) t.classes.push_back({std::move(*x), 1, false, 0, 0});
        }
    }
    census_finalize(a2, t);
    return t;
}

CensusTable enumerate_Cm(const Algebra& alg, int m, const std::vector<size_t>& caps, uint32_t p,
                         unsigned long long budget, int jobs) {
#ifndef _OPENMP
    (void)jobs;
    return enumerate_Cm_serial(alg, m, caps, p, budget);
#else
    Algebra a2 = census_algebra(alg, p);
    std::vector<ShapeSpace> spaces = census_spaces(a2, m, caps, budget);
    int nt = jobs > 0 ? jobs : omp_get_max_threads();

    CensusTable t{a2, m, caps, 0, {}};
    for (const ShapeSpace& space : spaces) {
        std::vector<std::vector<ShardClass>> shard(nt);
        std::atomic<bool> bad{false};
        std::string err;
        int err_kind = 0;  // 1 input, 2 budget, 3 invariant
        unsigned long long kept = 0;

        auto record = [&](int kind, const char* what) {
            bool expect = false;
            if (bad.compare_exchange_strong(expect, true)) {
                err = what;
                err_kind = kind;
            }
        };

#pragma omp parallel num_threads(nt) reduction(+ : kept)
        {
            int tid = omp_get_thread_num();
#pragma omp for schedule(static)
            for (long long i = 0; i < static_cast<long long>(space.total); ++i) {
                if (bad.load(std::memory_order_relaxed)) continue;
                try {
                    std::optional<ProjComplex> x = build_at(a2, space, i);
                    if (!x) continue;
                    ++kept;
                    bool placed = false;
                    for (ShardClass& sc : shard[tid]) {
                        if (census_iso(a2, *x, sc.rep)) {
                            ++sc.count;
                            placed = true;
                            break;
                        }
                    }
                    if (!placed)
                        shard[tid].push_back(
                            {static_cast<unsigned long long>(i), std::move(*x), 1});
                } catch (const input_error& e) {
                    record(1, e.what());
                } catch (const budget_error& e) {
                    record(2, e.what());
                } catch (const std::exception& e) {
                    record(3, e.what());
                }
            }
        }
        if (bad.load()) {
            if (err_kind == 1) throw input_error(err);
            if (err_kind == 2) throw budget_error(err);
            throw invariant_error(err);
        }
        t.enumerated += kept;

        std::vector<ShardClass> found;
        for (auto& sh : shard)
            for (ShardClass& sc : sh) found.push_back(std::move(sc));
        std::sort(found.begin(), found.end(),
                  [](const ShardClass& a, const ShardClass& b) { return a.idx < b.idx; });

        size_t first = t.classes.size();
        for (ShardClass& sc : found) {
            bool placed = false;
            for (size_t k = first; k < t.classes.size() && !placed; ++k)
                if (census_iso(a2, sc.rep, t.classes[k].rep)) {
                    t.classes[k].count += sc.count;
                    placed = true;
                }
            if (!placed) t.classes.push_back({std::move(sc.rep), sc.count, false, 0, 0});
        }
    }
    census_finalize(a2, t);
    return t;
#endif
}

// --- representation-infinite evidence ------------------------------------

namespace {

std::vector<std::vector<size_t>> small_dimvecs(size_t nvert, size_t cap) {
    std::vector<std::vector<size_t>> out;
    for (size_t total = 1; total <= cap; ++total) {
        std::vector<size_t> cur(nvert, 0);
        // odometer over compositions of `total` into nvert parts
        std::function<void(size_t, size_t)> rec = [&](size_t v, size_t left) {
            if (v + 1 == nvert) {
                cur[v] = left;
                out.push_back(cur);
                return;
            }
            for (size_t d = 0; d <= left; ++d) {
                cur[v] = d;
                rec(v + 1, left - d);
            }
        };
        rec(0, total);
    }
    return out;
}

Mat trunc_identity(size_t rows, size_t cols, Fp fp) {
    Mat m(rows, cols, fp);
    for (size_t d = 0; d < std::min(rows, cols); ++d) m.at(d, d) = 1;
    return m;
}

Representation identity_base(const Algebra& alg, const std::vector<size_t>& dims) {
    Representation rep;
    rep.dims = dims;
    const Quiver& q = alg.pres.quiver;
    for (const Arrow& a : q.arrows)
        rep.mats.push_back(trunc_identity(dims[q.vindex(a.from)], dims[q.vindex(a.to)], alg.fp));
    return rep;
}

// nullopt: pairwise non-isomorphic confirmed. Otherwise the reason.
std::optional<std::string> family_collision(const Algebra& alg,
                                            const std::vector<Representation>& fam,
                                            uint64_t seed) {
    for (size_t i = 0; i < fam.size(); ++i)
        for (size_t j = i + 1; j < fam.size(); ++j) {
            ModIsoResult r = modules_isomorphic(alg, fam[i], fam[j], seed);
            if (!r.certain) return "an isomorphism test stayed uncertain";
            if (r.isomorphic) return "two members are isomorphic";
        }
    return std::nullopt;
}

RepInfiniteEvidence seal_evidence(const Algebra& alg, const std::vector<size_t>& dims,
                                  std::vector<Representation> fam, std::vector<fel> lambdas,
                                  int arrow, std::string note) {
    RepInfiniteEvidence ev;
    ev.found = true;
    ev.dims = dims;
    ev.family = std::move(fam);
    ev.lambdas = std::move(lambdas);
    ev.arrow = arrow;
    ev.note = std::move(note);
    unsigned long long na = alg.dim();
    for (const Representation& m : ev.family) {
        ProjComplex pc = presentation_complex(alg, m);
        CohomologyProfile prof = cohomology(alg, pc);
        unsigned long long d = rep_dim(m);
        ensure(d <= prof.hr && prof.hr <= 2 * na * na * d,
               "presentation range left the dim/hr sandwich");
        hr_dim_sandwich(alg, pc);
        ev.presentations.push_back(std::move(pc));
    }
    return ev;
}

// Sweeps over a truncated-identity base: scaling one whole arrow, then each
// single entry of one arrow. Cheap, and catches every multi-arrow quiver
// whose parameter really is "ratio of two parallel actions".
std::optional<RepInfiniteEvidence> sweep_probe(const Algebra& alg, const std::vector<size_t>& dims,
                                               size_t family_size, uint64_t seed) {
    const Quiver& q = alg.pres.quiver;
    uint32_t p = alg.fp.modulus();
    Representation base = identity_base(alg, dims);

    for (size_t ai = 0; ai < q.arrows.size(); ++ai) {
        size_t rows = base.mats[ai].rows, cols = base.mats[ai].cols;

        auto attempt = [&](auto&& place, fel lo, const std::string& note)
            -> std::optional<RepInfiniteEvidence> {
            std::vector<Representation> fam;
            std::vector<fel> ls;
            for (fel l = lo; l < p && fam.size() < family_size; ++l) {
                Representation rep = base;
                place(rep.mats[ai], l);
                if (check_representation(alg, rep)) continue;
                fam.push_back(std::move(rep));
                ls.push_back(l);
            }
            if (fam.size() < family_size) return std::nullopt;
            if (family_collision(alg, fam, seed)) return std::nullopt;
            return seal_evidence(alg, dims, std::move(fam), std::move(ls), q.arrows[ai].id,
                                 note);
        };

        auto got = attempt([&](Mat& m, fel l) { m = scale(m, l); }, 1,
                           "one-parameter sweep: arrow " + std::to_string(q.arrows[ai].id) +
                               " scaled by lambda over a truncated-identity base");
        if (got) return got;

        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) {
                got = attempt([&](Mat& m, fel l) { m.at(i, j) = l; }, 0,
                              "one-parameter sweep: entry (" + std::to_string(i) + ", " +
                                  std::to_string(j) + ") of arrow " +
                                  std::to_string(q.arrows[ai].id) +
                                  " set to lambda over a truncated-identity base");
                if (got) return got;
            }
    }
    return std::nullopt;
}

struct DimvecScan {
    bool skipped = false;
    bool uncertain = false;
    std::optional<RepInfiniteEvidence> ev;
};

// Exhausts the whole matrix space at one dimension vector when it fits the
// budget, groups the valid modules into isomorphism classes, then looks for
// an affine coordinate line meeting family_size distinct classes.
DimvecScan exhaustive_scan(const Algebra& alg, const std::vector<size_t>& dims,
                           size_t family_size, uint64_t seed) {
    DimvecScan out;
    const Quiver& q = alg.pres.quiver;
    uint32_t p = alg.fp.modulus();

    struct Coord {
        size_t arrow, i, j;
    };
    std::vector<Coord> coords;
    for (size_t ai = 0; ai < q.arrows.size(); ++ai) {
        size_t rows = dims[q.vindex(q.arrows[ai].from)], cols = dims[q.vindex(q.arrows[ai].to)];
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) coords.push_back({ai, i, j});
    }
    unsigned long long space = 1;
    for (size_t k = 0; k < coords.size(); ++k) {
        if (space > kEvidenceBudget / p) {
            out.skipped = true;
            return out;
        }
        space *= p;
    }
    if (space > kEvidenceBudget) {
        out.skipped = true;
        return out;
    }

    auto decode = [&](unsigned long long idx) {
        Representation rep = identity_base(alg, dims);
        for (Mat& m : rep.mats) m = Mat(m.rows, m.cols, alg.fp);
        for (const Coord& c : coords) {
            rep.mats[c.arrow].at(c.i, c.j) = static_cast<fel>(idx % p);
            idx /= p;
        }
        return rep;
    };

    std::vector<long long> cls(space, -1);
    std::vector<Representation> reps;
    for (unsigned long long idx = 0; idx < space; ++idx) {
        Representation rep = decode(idx);
        if (check_representation(alg, rep)) continue;
        bool placed = false;
        for (size_t k = 0; k < reps.size() && !placed; ++k) {
            ModIsoResult r = modules_isomorphic(alg, rep, reps[k], seed);
            if (!r.certain) {
                out.uncertain = true;
                return out;
            }
            if (r.isomorphic) {
                cls[idx] = static_cast<long long>(k);
                placed = true;
            }
        }
        if (!placed) {
            cls[idx] = static_cast<long long>(reps.size());
            reps.push_back(std::move(rep));
        }
    }

    unsigned long long stride = 1;
    for (size_t s = 0; s < coords.size(); ++s, stride *= p) {
        for (unsigned long long base = 0; base < space; ++base) {
            if ((base / stride) % p != 0) continue;
            std::vector<fel> ls;
            std::vector<long long> seen;
            for (fel l = 0; l < p; ++l) {
                long long k = cls[base + l * stride];
                if (k < 0 || std::find(seen.begin(), seen.end(), k) != seen.end()) continue;
                seen.push_back(k);
                ls.push_back(l);
                if (ls.size() == family_size) break;
            }
            if (ls.size() < family_size) continue;
            std::vector<Representation> fam;
            for (fel l : ls) fam.push_back(decode(base + l * stride));
            out.ev = seal_evidence(
                alg, dims, std::move(fam), std::move(ls), q.arrows[coords[s].arrow].id,
                "affine line in the exhausted matrix space at dimension vector " +
                    join_sizes(dims));
            return out;
        }
    }
    return out;
}

}  // namespace

RepInfiniteEvidence rep_infinite_evidence(const Algebra& alg, size_t dim_cap, size_t family_size,
                                          uint64_t seed) {
    require(dim_cap >= 1, "rep_infinite_evidence: the dimension cap must be positive");
    require(family_size >= 2, "rep_infinite_evidence: a family needs at least two members");
    require(family_size < alg.fp.modulus(),
            "rep_infinite_evidence: the field has too few parameter values for that family size");

    std::vector<std::string> skipped;
    bool uncertain = false;
    for (const std::vector<size_t>& dims : small_dimvecs(alg.nvert(), dim_cap)) {
        if (auto ev = sweep_probe(alg, dims, family_size, seed)) return *ev;
        DimvecScan scan = exhaustive_scan(alg, dims, family_size, seed);
        if (scan.ev) return *scan.ev;
        if (scan.skipped) skipped.push_back(join_sizes(dims));
        if (scan.uncertain) uncertain = true;
    }

    RepInfiniteEvidence ev;
    std::ostringstream os;
    os << "no one-parameter family with total dimension <= " << dim_cap;
    if (!skipped.empty()) {
        os << "; matrix spaces skipped by budget at";
        for (const std::string& s : skipped) os << " " << s;
    }
    if (uncertain) os << "; some isomorphism tests stayed uncertain";
    ev.note = os.str();
    return ev;
}

// --- classification -------------------------------------------------------

std::string dynkin_type(const Quiver& q) {
    size_t n = q.vertices.size();
    if (n == 0 || q.arrows.size() != n - 1) return "";

    std::vector<std::vector<size_t>> adj(n);
    for (const Arrow& a : q.arrows) {
        adj[q.vindex(a.from)].push_back(q.vindex(a.to));
        adj[q.vindex(a.to)].push_back(q.vindex(a.from));
    }
    std::vector<char> seen(n, 0);
    std::vector<size_t> stack{0};
    seen[0] = 1;
    size_t reached = 1;
    while (!stack.empty()) {
        size_t v = stack.back();
        stack.pop_back();
        for (size_t w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
    }
    if (reached != n) return "";

    std::vector<size_t> branch;
    for (size_t v = 0; v < n; ++v) {
        if (adj[v].size() > 3) return "";
        if (adj[v].size() == 3) branch.push_back(v);
    }
    if (branch.empty()) return "A_" + std::to_string(n);
    if (branch.size() > 1) return "";

    std::vector<size_t> arms;
    for (size_t start : adj[branch[0]]) {
        size_t prev = branch[0], cur = start, len = 1;
        while (adj[cur].size() == 2) {
            size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
            prev = cur;
            cur = next;
            ++len;
        }
        arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) return "D_" + std::to_string(n);
    if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4)
        return "E_" + std::to_string(arms[2] + 4);
    return "";
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::derived_discrete: return "derived discrete";
        case Verdict::strongly_unbounded: return "strongly derived unbounded";
        default: return "unknown";
    }
}

ClassificationReport classify(const Algebra& alg, uint64_t seed) {
    ClassificationReport rep;

    bool hereditary = alg.pres.relations.empty();
    if (hereditary) {
        rep.notes.push_back("hereditary presentation (no relations)");
        std::string dt = dynkin_type(alg.pres.quiver);
        if (!dt.empty()) {
            rep.verdict = Verdict::derived_discrete;
            rep.certificate = "dynkin";
            rep.dynkin = dt;
            rep.notes.push_back("underlying graph " + dt);
            return rep;
        }
        rep.notes.push_back("underlying graph is not Dynkin");
    }

    GentleReport gr = gentle_report(alg);
    if (gr.is_gentle) {
        rep.notes.push_back("gentle presentation");
        bool one_cycle = gr.cycles == CycleStructure::one_cycle;
        std::pair<size_t, size_t> counts{0, 0};
        if (one_cycle) {
            counts = vossieck_counts(alg);
            rep.counts = counts;
            rep.notes.push_back("one cycle: " + std::to_string(counts.first) +
                                " clockwise vs " + std::to_string(counts.second) +
                                " counterclockwise relation pairs");
        }

        BandSearch bs = find_bands(alg, kBandLetters);
        if (!bs.bands.empty()) {
            ensure(!(one_cycle && counts.first != counts.second),
                   "a homotopy band and differing cycle relation counts cannot coexist");
            uint32_t p = alg.fp.modulus();
            std::vector<fel> lambdas;
            for (fel l = 1; l < p && lambdas.size() < 5; ++l) lambdas.push_back(l);
            WitnessFamily fam = witness_family(alg, bs.bands[0], {1, 2, 3}, lambdas, seed);
            rep.verdict = Verdict::strongly_unbounded;
            rep.certificate = "band-family";
            rep.band = bs.bands[0];
            rep.notes.push_back("homotopy band with " +
                                std::to_string(bs.bands[0].letters.size()) + " letters");
            rep.notes.push_back(fam.note);
            rep.family = std::move(fam);
            return rep;
        }
        if (one_cycle && counts.first != counts.second) {
            rep.verdict = Verdict::derived_discrete;
            rep.certificate = "vossieck-counts";
            return rep;
        }
        if (bs.exhaustive) {
            ensure(!one_cycle, "equal cycle relation counts with a certified empty band search");
            rep.verdict = Verdict::derived_discrete;
            rep.certificate = "no-bands";
            rep.notes.push_back("band search exhausted: " + bs.note);
            return rep;
        }
        rep.notes.push_back("band search inconclusive within " +
                            std::to_string(kBandLetters) + " letters");
    } else {
        rep.notes.push_back(gr.violations.empty() ? "not gentle"
                                                  : "not gentle: " + gr.violations.front());
    }

    RepInfiniteEvidence ev = rep_infinite_evidence(alg, 4, 12, seed);
    if (ev.found) {
        rep.verdict = Verdict::strongly_unbounded;
        rep.certificate = "rep-infinite";
        rep.notes.push_back(ev.note);
        rep.notes.push_back("strong unboundedness realized by the minimal presentations of "
                            "the family");
        rep.evidence = std::move(ev);
        return rep;
    }
    rep.notes.push_back(ev.note);

    rep.verdict = Verdict::unknown;
    rep.certificate = "none";
    rep.notes.push_back(
        "the dichotomy still holds: exactly one of derived discrete / strongly derived "
        "unbounded is true, but no certificate was found within the search budgets");
    return rep;
}

DichotomyReport dichotomy_report(const Algebra& alg, int m, uint32_t census_prime,
                                 std::vector<size_t> caps, uint64_t seed) {
    require(m >= 0, "dichotomy window must be nonnegative");
    if (caps.empty()) caps.assign(static_cast<size_t>(m) + 1, 2);

    DichotomyReport out;
    out.m = m;
    out.classification = classify(alg, seed);
    const ClassificationReport& cl = out.classification;
    auto say = [&](const std::string& s) { out.statements.push_back(s); };

    if (cl.verdict == Verdict::derived_discrete) {
        say("derived discrete (certificate: " + cl.certificate + ")");
        CensusTable t = enumerate_Cm(alg, m, caps, census_prime);
        std::ostringstream os;
        os << "C_" << m << "(proj A) census at caps " << join_sizes(caps) << " over F_"
           << census_prime << ": " << t.classes.size() << " isomorphism classes, "
           << t.indecomposables() << " indecomposable; the census is finite";
        say(os.str());
        say("finite representation type of C_m at every window is theorem-backed, "
            "not recomputed here");
        out.census = std::move(t);
        return out;
    }

    if (cl.verdict == Verdict::strongly_unbounded) {
        say("strongly derived unbounded (certificate: " + cl.certificate + ")");
        if (cl.family) {
            const WitnessFamily& f = *cl.family;
            int window = f.entries.empty() ? 0 : f.entries.front().complex.m;
            std::ostringstream os;
            os << "witness family: degrees " << join_sizes(f.degrees) << ", dims "
               << join_sizes(f.dims_by_degree) << "; complexes live in window [0, " << window
               << "]";
            say(os.str());
            if (m >= window)
                say("shift-embedding carries the family into C_" + std::to_string(m) +
                    " with cohomology ranges unchanged");
            else
                say("window m = " + std::to_string(m) +
                    " is smaller than the witness window; the family starts at C_" +
                    std::to_string(window));
        }
        if (cl.evidence) {
            std::ostringstream os;
            os << "witness family: " << cl.evidence->family.size()
               << " pairwise non-isomorphic modules at dimension vector "
               << join_sizes(cl.evidence->dims)
               << "; their minimal presentations land in C_1 inside the dim/hr sandwich";
            say(os.str());
            if (m >= 1)
                say("shift-embedding carries the presentations into C_" + std::to_string(m) +
                    " with cohomology ranges unchanged");
        }
        say("the same family realizes strong unboundedness in K^b(proj A)");
        say("strong unboundedness of the repetitive category is theorem-backed, "
            "not recomputed here");
        return out;
    }

    say("no certificate found; the dichotomy still holds: exactly one of derived discrete / "
        "strongly derived unbounded is true");
    return out;
}

}  // namespace derange

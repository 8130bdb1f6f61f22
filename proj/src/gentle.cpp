#include "derange/gentle.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "derange/error.hpp"

namespace derange {

namespace {

// Internal letter instance: a radical basis path with a direction, endpoints
// and boundary arrows precomputed.
struct Inst {
    size_t path = 0;  // basis index
    bool inv = false;
    int s = 0, t = 0;
    int first = 0, last = 0;
};

using RelSet = std::set<std::pair<int, int>>;

bool quadratic_monomial(const Relation& r) {
    return r.terms.size() == 1 && r.terms[0].second.length() == 2;
}

RelSet relation_pairs(const Algebra& alg) {
    RelSet out;
    for (const Relation& r : alg.pres.relations) {
        ensure(quadratic_monomial(r), "relation pairs need a quadratic monomial ideal");
        out.insert({r.terms[0].second.arrows[0], r.terms[0].second.arrows[1]});
    }
    return out;
}

// Junction condition between consecutive letters x then y. Direct pairs must
// concatenate into the ideal, inverse pairs dually, and mixed junctions meet
// at a common endpoint without sharing their boundary arrow.
bool junction_ok(const RelSet& rel2, const Inst& x, const Inst& y) {
    if (!x.inv && !y.inv) return x.t == y.s && rel2.count({x.last, y.first}) > 0;
    if (x.inv && y.inv) return y.t == x.s && rel2.count({y.last, x.first}) > 0;
    if (!x.inv && y.inv) return x.t == y.t && x.last != y.last;
    return x.s == y.s && x.first != y.first;
}

std::vector<Inst> letter_instances(const Algebra& alg) {
    const Quiver& q = alg.pres.quiver;
    std::vector<Inst> out;
    for (size_t i : radical_basis(alg)) {
        const PathWord& w = alg.basis[i];
        Inst d;
        d.path = i;
        d.s = path_source(q, w);
        d.t = path_target(q, w);
        d.first = w.arrows.front();
        d.last = w.arrows.back();
        out.push_back(d);
        d.inv = true;
        out.push_back(d);
    }
    return out;
}

using Word = std::vector<std::pair<size_t, bool>>;  // (basis index, inverse)

Word rotate_word(const Word& w, size_t r) {
    Word out;
    out.reserve(w.size());
    for (size_t i = 0; i < w.size(); ++i) out.push_back(w[(i + r) % w.size()]);
    return out;
}

Word invert_word(const Word& w) {
    Word out(w.rbegin(), w.rend());
    for (auto& l : out) l.second = !l.second;
    return out;
}

bool primitive_word(const Word& w) {
    for (size_t per = 1; per < w.size(); ++per) {
        if (w.size() % per != 0) continue;
        if (rotate_word(w, per) == w) return false;
    }
    return true;
}

Word canonical_word(const Word& w) {
    Word best = w;
    Word wi = invert_word(w);
    for (size_t r = 0; r < w.size(); ++r) {
        best = std::min(best, rotate_word(w, r));
        best = std::min(best, rotate_word(wi, r));
    }
    return best;
}

// Depth-first cycle detection on the letter graph.
bool letter_graph_has_cycle(const std::vector<Inst>& insts, const RelSet& rel2) {
    size_t n = insts.size();
    std::vector<int> color(n, 0);
    std::function<bool(size_t)> visit = [&](size_t u) {
        color[u] = 1;
        for (size_t v = 0; v < n; ++v) {
            if (!junction_ok(rel2, insts[u], insts[v])) continue;
            if (color[v] == 1) return true;
            if (color[v] == 0 && visit(v)) return true;
        }
        color[u] = 2;
        return false;
    };
    for (size_t u = 0; u < n; ++u)
        if (color[u] == 0 && visit(u)) return true;
    return false;
}

// The 2-core of the underlying graph is the unique cycle when betti = 1.
void fill_cycle(const Quiver& q, GentleReport& rep) {
    size_t na = q.arrows.size();
    std::vector<bool> alive(na, true);
    std::vector<int> deg(q.vertices.size(), 0);
    for (const Arrow& ar : q.arrows) {
        ++deg[q.vindex(ar.from)];
        ++deg[q.vindex(ar.to)];
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t v = 0; v < q.vertices.size(); ++v) {
            if (deg[v] != 1) continue;
            for (size_t k = 0; k < na; ++k) {
                if (!alive[k]) continue;
                size_t f = q.vindex(q.arrows[k].from);
                size_t t = q.vindex(q.arrows[k].to);
                if (f != v && t != v) continue;
                alive[k] = false;
                --deg[f];
                --deg[t];
                changed = true;
                break;
            }
        }
    }

    int anchor = 0;
    bool found = false;
    for (size_t k = 0; k < na; ++k) {
        if (!alive[k]) continue;
        for (int end : {q.arrows[k].from, q.arrows[k].to})
            if (!found || end < anchor) {
                anchor = end;
                found = true;
            }
    }
    ensure(found, "one-cycle quiver lost its cycle");

    size_t left = 0;
    for (size_t k = 0; k < na; ++k)
        if (alive[k]) ++left;
    std::vector<bool> done(na, false);
    int cur = anchor;
    for (size_t step = 0; step < left; ++step) {
        int best = -1;
        for (size_t k = 0; k < na; ++k) {
            if (!alive[k] || done[k]) continue;
            if (q.arrows[k].from != cur && q.arrows[k].to != cur) continue;
            if (best < 0 || q.arrows[k].id < q.arrows[size_t(best)].id) best = int(k);
        }
        ensure(best >= 0, "cycle walk ran out of edges");
        const Arrow& ar = q.arrows[size_t(best)];
        bool fwd = ar.from == cur;
        rep.cycle_arrows.push_back(ar.id);
        rep.cycle_forward.push_back(fwd);
        done[size_t(best)] = true;
        cur = fwd ? ar.to : ar.from;
    }
    ensure(cur == anchor, "cycle walk did not close up");
}

struct BandShape {
    std::vector<int> vert;  // vertex of node i (between letters i-1 and i)
    std::vector<int> deg;   // normalized degree of node i
    int window = 0;
};

std::vector<Inst> band_instances(const Algebra& alg, const HomotopyBand& band) {
    const Quiver& q = alg.pres.quiver;
    std::vector<Inst> out;
    for (size_t i = 0; i < band.letters.size(); ++i) {
        const HomotopyLetter& l = band.letters[i];
        require(l.path.length() >= 1,
                "band invalid: letter " + std::to_string(i) + " is a trivial path");
        auto it = alg.basis_pos.find(word_key(l.path));
        require(it != alg.basis_pos.end(),
                "band invalid: letter " + std::to_string(i) + " is not a nonzero normal form");
        Inst d;
        d.path = it->second;
        d.inv = l.inverse;
        d.s = path_source(q, l.path);
        d.t = path_target(q, l.path);
        d.first = l.path.arrows.front();
        d.last = l.path.arrows.back();
        out.push_back(d);
    }
    return out;
}

BandShape check_band(const RelSet& rel2, const std::vector<Inst>& insts) {
    size_t n = insts.size();
    require(n >= 2, "band invalid: needs at least two letters");
    long long balance = 0;
    for (size_t i = 0; i < n; ++i) {
        balance += insts[i].inv ? -1 : 1;
        require(junction_ok(rel2, insts[i], insts[(i + 1) % n]),
                "band invalid: junction after letter " + std::to_string(i));
    }
    require(balance == 0, "band invalid: direct and inverse letters are unbalanced");
    Word w;
    for (const Inst& d : insts) w.push_back({d.path, d.inv});
    require(primitive_word(w), "band invalid: proper power of a shorter band");

    BandShape shape;
    shape.vert.resize(n);
    shape.deg.assign(n, 0);
    for (size_t i = 0; i < n; ++i)
        shape.vert[i] = insts[i].inv ? insts[i].t : insts[i].s;
    for (size_t i = 0; i + 1 < n; ++i)
        shape.deg[i + 1] = shape.deg[i] + (insts[i].inv ? 1 : -1);
    int mn = *std::min_element(shape.deg.begin(), shape.deg.end());
    for (int& dg : shape.deg) dg -= mn;
    shape.window = *std::max_element(shape.deg.begin(), shape.deg.end());
    return shape;
}

GentleReport require_gentle(const Algebra& alg, const char* op) {
    GentleReport rep = gentle_report(alg);
    if (!rep.is_gentle)
        throw input_error(std::string(op) + ": NotGentle (" + rep.violations.front() + ")");
    return rep;
}

}  // namespace

GentleReport gentle_report(const Algebra& alg) {
    const Quiver& q = alg.pres.quiver;
    GentleReport rep;

    long long betti = (long long)q.arrows.size() - (long long)q.vertices.size() + 1;
    rep.cycles = betti <= 0 ? CycleStructure::tree
                            : (betti == 1 ? CycleStructure::one_cycle
                                          : CycleStructure::multi_cycle);
    if (rep.cycles == CycleStructure::one_cycle) fill_cycle(q, rep);

    bool monomial2 = true;
    for (size_t r = 0; r < alg.pres.relations.size(); ++r)
        if (!quadratic_monomial(alg.pres.relations[r])) {
            rep.violations.push_back("relation " + std::to_string(r) +
                                     " is not a length-2 monomial");
            monomial2 = false;
        }

    for (int v : q.vertices) {
        size_t in = 0, out = 0;
        for (const Arrow& ar : q.arrows) {
            if (ar.from == v) ++out;
            if (ar.to == v) ++in;
        }
        if (out > 2)
            rep.violations.push_back("vertex " + std::to_string(v) + " has " +
                                     std::to_string(out) + " outgoing arrows");
        if (in > 2)
            rep.violations.push_back("vertex " + std::to_string(v) + " has " +
                                     std::to_string(in) + " incoming arrows");
    }

    if (monomial2) {
        RelSet rel2 = relation_pairs(alg);
        for (const Arrow& a : q.arrows) {
            size_t succ_in = 0, succ_out = 0, pred_in = 0, pred_out = 0;
            for (const Arrow& b : q.arrows) {
                if (b.from == a.to) (rel2.count({a.id, b.id}) ? succ_in : succ_out)++;
                if (b.to == a.from) (rel2.count({b.id, a.id}) ? pred_in : pred_out)++;
            }
            if (succ_in > 1)
                rep.violations.push_back("arrow " + std::to_string(a.id) +
                                         " has two continuations inside the ideal");
            if (succ_out > 1)
                rep.violations.push_back("arrow " + std::to_string(a.id) +
                                         " has two continuations outside the ideal");
            if (pred_in > 1)
                rep.violations.push_back("arrow " + std::to_string(a.id) +
                                         " has two extensions inside the ideal");
            if (pred_out > 1)
                rep.violations.push_back("arrow " + std::to_string(a.id) +
                                         " has two extensions outside the ideal");
        }
    }

    rep.is_gentle = rep.violations.empty();
    return rep;
}

std::pair<size_t, size_t> vossieck_counts(const Algebra& alg) {
    GentleReport rep = gentle_report(alg);
    if (!rep.is_gentle || rep.cycles != CycleStructure::one_cycle)
        throw input_error("NotOneCycleGentle: vossieck_counts needs a gentle one-cycle quiver");

    size_t k = rep.cycle_arrows.size();
    RelSet with, against;
    for (size_t i = 0; i < k; ++i) {
        size_t j = (i + 1) % k;
        if (rep.cycle_forward[i] && rep.cycle_forward[j])
            with.insert({rep.cycle_arrows[i], rep.cycle_arrows[j]});
        if (!rep.cycle_forward[i] && !rep.cycle_forward[j])
            against.insert({rep.cycle_arrows[j], rep.cycle_arrows[i]});
    }

    std::pair<size_t, size_t> counts{0, 0};
    for (const Relation& r : alg.pres.relations) {
        std::pair<int, int> p{r.terms[0].second.arrows[0], r.terms[0].second.arrows[1]};
        if (with.count(p))
            ++counts.first;
        else if (against.count(p))
            ++counts.second;
    }
    return counts;
}

BandSearch find_bands(const Algebra& alg, size_t max_letters) {
    require_gentle(alg, "find_bands");
    require(max_letters >= 2, "find_bands: the letter bound must be at least 2");
    RelSet rel2 = relation_pairs(alg);
    std::vector<Inst> insts = letter_instances(alg);

    std::set<Word> seen;
    std::vector<size_t> seq;
    long long balance = 0;
    std::function<void()> grow = [&]() {
        const Inst& back = insts[seq.back()];
        if (seq.size() >= 2 && balance == 0 && junction_ok(rel2, back, insts[seq.front()])) {
            Word w;
            for (size_t id : seq) w.push_back({insts[id].path, insts[id].inv});
            if (primitive_word(w)) seen.insert(canonical_word(w));
        }
        if (seq.size() == max_letters) return;
        size_t room = max_letters - seq.size() - 1;
        for (size_t y = 0; y < insts.size(); ++y) {
            if (!junction_ok(rel2, back, insts[y])) continue;
            long long nb = balance + (insts[y].inv ? -1 : 1);
            if (size_t(std::llabs(nb)) > room) continue;
            seq.push_back(y);
            balance = nb;
            grow();
            seq.pop_back();
            balance = nb + (insts[y].inv ? 1 : -1);
        }
    };
    for (size_t s = 0; s < insts.size(); ++s) {
        seq.assign(1, s);
        balance = insts[s].inv ? -1 : 1;
        grow();
    }

    BandSearch out;
    for (const Word& w : seen) {
        HomotopyBand b;
        for (const auto& [idx, inv] : w) b.letters.push_back({alg.basis[idx], inv});
        out.bands.push_back(std::move(b));
    }
    if (out.bands.empty()) {
        out.exhaustive = !letter_graph_has_cycle(insts, rel2);
        out.note = "no bands (bounded search)";
    } else {
        out.exhaustive = true;
    }
    return out;
}

ProjComplex band_complex(const Algebra& alg, const HomotopyBand& band, fel lambda, size_t d) {
    require(lambda != 0, "band_complex: lambda must be nonzero");
    require(d >= 1, "band_complex: multiplicity must be at least 1");
    require_gentle(alg, "band_complex");
    RelSet rel2 = relation_pairs(alg);
    std::vector<Inst> insts = band_instances(alg, band);
    BandShape shape = check_band(rel2, insts);
    size_t n = insts.size();

    // the Jordan block rides the lexicographically least direct letter
    size_t dist = n;
    for (size_t i = 0; i < n; ++i) {
        if (insts[i].inv) continue;
        if (dist == n || insts[i].path < insts[dist].path) dist = i;
    }
    ensure(dist < n, "balanced band without a direct letter");

    ProjComplex x;
    x.m = shape.window;
    x.mults.resize(size_t(x.m) + 1);
    std::vector<size_t> pos(n);
    for (size_t i = 0; i < n; ++i) {
        pos[i] = x.mults[size_t(shape.deg[i])].size();
        for (size_t c = 0; c < d; ++c) x.mults[size_t(shape.deg[i])].push_back(shape.vert[i]);
    }
    x.diffs.resize(size_t(x.m));
    for (int dg = 0; dg < x.m; ++dg) {
        auto& rows = x.diffs[size_t(dg)];
        rows.resize(x.mults[size_t(dg)].size());
        for (size_t r = 0; r < rows.size(); ++r) {
            rows[r].resize(x.mults[size_t(dg) + 1].size());
            for (size_t c = 0; c < rows[r].size(); ++c)
                rows[r][c].assign(
                    corner_basis(alg, x.mults[size_t(dg) + 1][c], x.mults[size_t(dg)][r]).size(),
                    0);
        }
    }

    for (size_t i = 0; i < n; ++i) {
        size_t from = insts[i].inv ? i : (i + 1) % n;
        size_t to = insts[i].inv ? (i + 1) % n : i;
        int dg = shape.deg[from];
        ensure(shape.deg[to] == dg + 1, "band letter does not raise the degree by one");
        std::vector<size_t> cell = corner_basis(alg, shape.vert[to], shape.vert[from]);
        size_t cp = cell.size();
        for (size_t j = 0; j < cell.size(); ++j)
            if (cell[j] == insts[i].path) cp = j;
        ensure(cp < cell.size(), "band letter escapes its hom cell");
        for (size_t a = 0; a < d; ++a)
            for (size_t b = 0; b < d; ++b) {
                fel s = 0;
                if (i == dist)
                    s = a == b ? lambda : (b == a + 1 ? 1 : 0);
                else
                    s = a == b ? 1 : 0;
                if (s == 0) continue;
                fel& slot = x.diffs[size_t(dg)][pos[from] + a][pos[to] + b][cp];
                slot = alg.fp.add(slot, s);
            }
    }

    if (auto err = validate(alg, x)) throw invariant_error("band_complex: " + *err);
    return x;
}

WitnessFamily witness_family(const Algebra& alg, const HomotopyBand& band,
                             const std::vector<size_t>& degrees, const std::vector<fel>& lambdas,
                             uint64_t seed) {
    require(!degrees.empty() && !lambdas.empty(), "witness_family: the grid is empty");
    for (size_t i = 1; i < degrees.size(); ++i)
        require(degrees[i] > degrees[i - 1], "witness_family: degrees must strictly increase");
    std::set<fel> distinct(lambdas.begin(), lambdas.end());
    require(distinct.size() == lambdas.size(), "witness_family: duplicate parameter");

    WitnessFamily fam;
    fam.degrees = degrees;
    for (size_t d : degrees) {
        size_t first = fam.entries.size();
        for (fel l : lambdas) {
            ProjComplex x = band_complex(alg, band, l, d);
            CohomologyProfile prof = cohomology(alg, x);
            check_dim_bound(alg, x);
            hr_dim_sandwich(alg, x);
            IndecResult ind = is_indecomposable(alg, x, seed);
            ensure(ind.indecomposable,
                   "witness_family: member (d=" + std::to_string(d) + ", lambda=" +
                       std::to_string(l) + ") is not indecomposable (" + ind.method + ")");
            fam.entries.push_back({d, l, std::move(x), prof.dim});
        }
        for (size_t i = first; i < fam.entries.size(); ++i)
            ensure(fam.entries[i].dim == fam.entries[first].dim,
                   "witness_family: dimensions differ within degree " + std::to_string(d));
        for (size_t i = first; i < fam.entries.size(); ++i)
            for (size_t j = i + 1; j < fam.entries.size(); ++j) {
                IsoResult iso =
                    is_isomorphic(alg, fam.entries[i].complex, fam.entries[j].complex, seed);
                ensure(!iso.isomorphic && iso.certain,
                       "witness_family: members of degree " + std::to_string(d) +
                           " are not provably distinct (lambda=" +
                           std::to_string(fam.entries[i].lambda) + " vs " +
                           std::to_string(fam.entries[j].lambda) + ")");
            }
        fam.dims_by_degree.push_back(fam.entries[first].dim);
    }
    for (size_t i = 1; i < fam.dims_by_degree.size(); ++i)
        ensure(fam.dims_by_degree[i] > fam.dims_by_degree[i - 1],
               "witness_family: dimensions fail to grow across degrees");
    fam.note = "all members valid, minimal, indecomposable; pairwise non-isomorphic within "
               "each degree; dimensions strictly increasing across degrees";
    return fam;
}

}  // namespace derange

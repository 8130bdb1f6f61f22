#include "derange/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>

namespace derange {

namespace {

// Free reduction, then cyclic reduction.
std::vector<int> reduce_word(const std::vector<int>& w) {
    std::vector<int> out;
    for (int x : w) {
        if (!out.empty() && out.back() == -x) out.pop_back();
        else out.push_back(x);
    }
    size_t lo = 0, hi = out.size();
    while (hi - lo >= 2 && out[lo] == -out[hi - 1]) {
        ++lo;
        --hi;
    }
    return std::vector<int>(out.begin() + lo, out.begin() + hi);
}

std::vector<int> invert_word(const std::vector<int>& w) {
    std::vector<int> out(w.rbegin(), w.rend());
    for (int& x : out) x = -x;
    return out;
}

// Bounded Tietze-style simplification. Returns the number of generators
// still alive; zero proves the group trivial.
size_t simplify(size_t generators, std::vector<std::vector<int>> relators) {
    std::vector<char> alive(generators + 1, 1);  // 1-based
    size_t alive_count = generators;
    const size_t length_budget = 20000;
    for (int pass = 0; pass < 200; ++pass) {
        bool changed = false;
        for (auto& r : relators) r = reduce_word(r);
        relators.erase(std::remove_if(relators.begin(), relators.end(),
                                      [](const std::vector<int>& r) { return r.empty(); }),
                       relators.end());

        // A length-one relator kills its generator outright.
        for (size_t i = 0; i < relators.size() && !changed; ++i) {
            if (relators[i].size() != 1) continue;
            int g = std::abs(relators[i][0]);
            relators.erase(relators.begin() + i);
            for (auto& r : relators)
                r.erase(std::remove_if(r.begin(), r.end(),
                                       [g](int x) { return std::abs(x) == g; }),
                        r.end());
            if (alive[g]) {
                alive[g] = 0;
                --alive_count;
            }
            changed = true;
        }
        if (changed) continue;

        // A generator occurring exactly once in some relator can be solved
        // for and substituted away.
        for (size_t i = 0; i < relators.size() && !changed; ++i) {
            const std::vector<int>& r = relators[i];
            for (size_t t = 0; t < r.size() && !changed; ++t) {
                int g = std::abs(r[t]);
                size_t occurrences = 0;
                for (int x : r) occurrences += (std::abs(x) == g);
                if (occurrences != 1) continue;
                // r = P g^e S = 1, so g^e = P^-1 S^-1.
                std::vector<int> prefix(r.begin(), r.begin() + t);
                std::vector<int> suffix(r.begin() + t + 1, r.end());
                std::vector<int> value = invert_word(prefix);
                std::vector<int> s_inv = invert_word(suffix);
                value.insert(value.end(), s_inv.begin(), s_inv.end());
                if (r[t] < 0) value = invert_word(value);
                std::vector<std::vector<int>> next;
                size_t total = 0;
                for (size_t j = 0; j < relators.size(); ++j) {
                    if (j == i) continue;
                    std::vector<int> out;
                    for (int x : relators[j]) {
                        if (std::abs(x) != g) {
                            out.push_back(x);
                        } else if (x > 0) {
                            out.insert(out.end(), value.begin(), value.end());
                        } else {
                            std::vector<int> vi = invert_word(value);
                            out.insert(out.end(), vi.begin(), vi.end());
                        }
                    }
                    total += out.size();
                    next.push_back(std::move(out));
                }
                if (total > length_budget) continue;  // skip a blowing-up move
                relators = std::move(next);
                if (alive[g]) {
                    alive[g] = 0;
                    --alive_count;
                }
                changed = true;
            }
        }
        if (!changed) break;
    }
    return alive_count;
}

}  // namespace

std::vector<long long> smith_diagonal(std::vector<std::vector<long long>> m) {
    size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    size_t n = std::min(rows, cols);
    std::vector<long long> diag(n, 0);
    size_t t = 0;
    while (t < n) {
        // Pick the smallest nonzero entry in the remaining block as pivot.
        size_t pi = t, pj = t;
        long long best = 0;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (m[i][j] != 0 && (best == 0 || std::llabs(m[i][j]) < best)) {
                    best = std::llabs(m[i][j]);
                    pi = i;
                    pj = j;
                }
        if (best == 0) break;
        std::swap(m[t], m[pi]);
        for (size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pj]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                long long q = m[i][t] / m[t][t];
                for (size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) {  // remainder became the smaller pivot
                    std::swap(m[t], m[i]);
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                long long q = m[t][j] / m[t][t];
                for (size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
                if (m[t][j] != 0) {
                    for (size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][j]);
                    clean = false;
                }
            }
            if (clean) {
                // Divisibility: the pivot must divide the rest of the block.
                for (size_t i = t + 1; i < rows && clean; ++i)
                    for (size_t j = t + 1; j < cols && clean; ++j)
                        if (m[i][j] % m[t][t] != 0) {
                            for (size_t c = t; c < cols; ++c) m[t][c] += m[i][c];
                            clean = false;
                        }
            }
        }
        diag[t] = std::llabs(m[t][t]);
        ++t;
    }
    return diag;
}

FundamentalGroupReport fundamental_group_report(const Algebra& alg) {
    const Quiver& q = alg.pres.quiver;
    size_t nv = q.vertices.size();

    // Spanning tree of the underlying graph (the quiver is connected).
    std::vector<std::vector<std::pair<size_t, int>>> adj(nv);  // (other end, arrow id)
    for (const Arrow& a : q.arrows) {
        adj[q.vindex(a.from)].push_back({q.vindex(a.to), a.id});
        adj[q.vindex(a.to)].push_back({q.vindex(a.from), a.id});
    }
    std::set<int> tree;
    std::vector<char> seen(nv, 0);
    std::deque<size_t> queue{0};
    seen[0] = 1;
    while (!queue.empty()) {
        size_t u = queue.front();
        queue.pop_front();
        for (auto [v, aid] : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                tree.insert(aid);
                queue.push_back(v);
            }
    }

    FundamentalGroupReport rep;
    std::map<int, int> gen_of;  // arrow id -> 1-based generator number
    for (const Arrow& a : q.arrows)
        if (!tree.count(a.id)) {
            rep.generator_arrows.push_back(a.id);
            gen_of[a.id] = static_cast<int>(rep.generator_arrows.size());
        }
    rep.pres.generators = rep.generator_arrows.size();

    auto word_of = [&](const PathWord& p) {
        std::vector<int> w;
        for (int aid : p.arrows)
            if (auto it = gen_of.find(aid); it != gen_of.end()) w.push_back(it->second);
        return w;
    };
    for (const Relation& rel : minimal_relations(alg)) {
        const PathWord& first = rel.terms[0].second;
        for (size_t i = 1; i < rel.terms.size(); ++i) {
            std::vector<int> w = word_of(first);
            std::vector<int> inv = invert_word(word_of(rel.terms[i].second));
            w.insert(w.end(), inv.begin(), inv.end());
            w = reduce_word(w);
            if (!w.empty()) rep.pres.relators.push_back(std::move(w));
        }
    }

    // Abelianization via the exponent-sum matrix.
    std::vector<std::vector<long long>> ab(rep.pres.relators.size(),
                                           std::vector<long long>(rep.pres.generators, 0));
    for (size_t i = 0; i < rep.pres.relators.size(); ++i)
        for (int x : rep.pres.relators[i]) ab[i][std::abs(x) - 1] += (x > 0 ? 1 : -1);
    std::vector<long long> diag = smith_diagonal(std::move(ab));
    size_t nonzero = 0;
    for (long long dv : diag)
        if (dv != 0) ++nonzero;
    for (long long dv : diag)
        if (dv > 1) rep.abelian_invariants.push_back(dv);
    for (size_t i = nonzero; i < rep.pres.generators; ++i) rep.abelian_invariants.push_back(0);

    if (simplify(rep.pres.generators, rep.pres.relators) == 0) {
        rep.verdict = "trivial";
        ensure(rep.abelian_invariants.empty(),
               "group simplified to trivial but abelianization is not");
    } else if (!rep.abelian_invariants.empty()) {
        rep.verdict = "nontrivial";
    } else {
        rep.verdict = "undetermined";
    }
    return rep;
}

std::string is_simply_connected(const Algebra& alg) {
    require(alg.pres.quiver.triangular(),
            "NotTriangular: the quiver has an oriented cycle, so simple connectedness is not "
            "defined for it");
    const std::string& v = fundamental_group_report(alg).verdict;
    if (v == "trivial") return "yes";
    if (v == "nontrivial") return "no";
    return "undetermined";
}

}  // namespace derange

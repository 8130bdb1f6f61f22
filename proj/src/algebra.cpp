#include "derange/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace derange {

namespace {

constexpr size_t kPathBudget = 200000;
constexpr size_t kSpanBudget = 50000000;  // rows*cols of an ideal span matrix

// All paths of length <= cap, bucketed by length, lex order inside a bucket.
std::vector<std::vector<PathWord>> paths_by_length(const Quiver& q, int cap) {
    std::vector<std::vector<PathWord>> levels(cap + 1);
    for (int v : q.vertices) levels[0].push_back(PathWord{v, {}});
    std::sort(levels[0].begin(), levels[0].end(), word_less);
    size_t total = levels[0].size();
    for (int l = 1; l <= cap; ++l) {
        for (const PathWord& p : levels[l - 1]) {
            int tail = path_target(q, p);
            for (const Arrow& a : q.arrows) {
                if (a.from != tail) continue;
                PathWord ext = p;
                ext.arrows.push_back(a.id);
                levels[l].push_back(std::move(ext));
            }
        }
        std::sort(levels[l].begin(), levels[l].end(), word_less);
        total += levels[l].size();
        if (total > kPathBudget)
            throw budget_error("path enumeration passed " + std::to_string(kPathBudget) +
                               " words; lower length_cap or add relations");
    }
    return levels;
}

// Paths of length <= maxlen ordered length-descending, lex inside a length.
// Longest paths first means row reduction eliminates long paths in favour of
// short ones, which is exactly the normal-form direction we want.
struct CoordSpace {
    std::vector<PathWord> paths;
    std::unordered_map<std::string, size_t> pos;
};

CoordSpace coords_up_to(const std::vector<std::vector<PathWord>>& levels, int maxlen) {
    CoordSpace cs;
    for (int l = maxlen; l >= 0; --l)
        for (const PathWord& p : levels[l]) cs.paths.push_back(p);
    for (size_t i = 0; i < cs.paths.size(); ++i) cs.pos[word_key(cs.paths[i])] = i;
    return cs;
}

// Span of the products u*r*w inside the coordinate space. With truncate
// false, only products whose every term fits contribute (each row then lies
// in the ideal on the nose, so the span is a sound certificate). With
// truncate true, longer terms are dropped, giving the image of the ideal
// among paths of length <= maxlen.
Mat ideal_rows(const Quiver& q, const std::vector<Relation>& relations,
               const std::vector<std::vector<PathWord>>& levels, const CoordSpace& cs, int maxlen,
               bool truncate, Fp fp) {
    std::vector<std::vector<fel>> rows;
    for (const Relation& rel : relations) {
        size_t minlen = rel.terms[0].second.length(), maxterm = minlen;
        for (const auto& [c, t] : rel.terms) {
            minlen = std::min(minlen, t.length());
            maxterm = std::max(maxterm, t.length());
        }
        size_t anchor = truncate ? minlen : maxterm;
        if (anchor > static_cast<size_t>(maxlen)) continue;
        size_t room = static_cast<size_t>(maxlen) - anchor;
        int src = path_source(q, rel.terms[0].second);
        int tgt = path_target(q, rel.terms[0].second);
        for (size_t ulen = 0; ulen <= room; ++ulen) {
            for (const PathWord& u : levels[ulen]) {
                if (path_target(q, u) != src) continue;
                for (size_t wlen = 0; ulen + wlen <= room; ++wlen) {
                    for (const PathWord& w : levels[wlen]) {
                        if (path_source(q, w) != tgt) continue;
                        std::vector<fel> row(cs.paths.size(), 0);
                        bool nonzero = false;
                        for (const auto& [c, t] : rel.terms) {
                            if (ulen + t.length() + wlen > static_cast<size_t>(maxlen)) continue;
                            PathWord full = u;
                            full.arrows.insert(full.arrows.end(), t.arrows.begin(),
                                               t.arrows.end());
                            full.arrows.insert(full.arrows.end(), w.arrows.begin(),
                                               w.arrows.end());
                            size_t col = cs.pos.at(word_key(full));
                            row[col] = fp.add(row[col], fp.reduce(c));
                            nonzero = true;
                        }
                        if (nonzero) rows.push_back(std::move(row));
                        if ((rows.size() + 1) * cs.paths.size() > kSpanBudget)
                            throw budget_error("ideal span outgrew the matrix budget");
                    }
                }
            }
        }
    }
    Mat m(rows.size(), cs.paths.size(), fp);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cs.paths.size(); ++j) m.at(i, j) = rows[i][j];
    return m;
}

}  // namespace

std::vector<fel> Algebra::path_coords(const PathWord& w) const {
    std::vector<fel> out(basis.size(), 0);
    if (w.length() >= static_cast<size_t>(cap)) return out;
    std::string k = word_key(w);
    if (auto it = basis_pos.find(k); it != basis_pos.end()) {
        out[it->second] = 1;
        return out;
    }
    auto rw = rewrite.find(k);
    ensure(rw != rewrite.end(), "path " + k + " is outside the coordinate space");
    return rw->second;
}

std::vector<fel> Algebra::mul_elems(const std::vector<fel>& x, const std::vector<fel>& y) const {
    ensure(x.size() == dim() && y.size() == dim(), "element has wrong length");
    std::vector<fel> out(dim(), 0);
    for (size_t i = 0; i < dim(); ++i) {
        if (x[i] == 0) continue;
        for (size_t j = 0; j < dim(); ++j) {
            if (y[j] == 0) continue;
            const std::vector<fel>& t = mult[i][j];
            if (t.empty()) continue;
            fel c = fp.mul(x[i], y[j]);
            for (size_t k = 0; k < dim(); ++k)
                if (t[k] != 0) out[k] = fp.add(out[k], fp.mul(c, t[k]));
        }
    }
    return out;
}

std::vector<fel> Algebra::unit() const {
    std::vector<fel> out(dim(), 0);
    for (size_t i : trivial_idx) out[i] = 1;
    return out;
}

bool Algebra::in_ideal(const std::vector<std::pair<fel, PathWord>>& combo) const {
    std::vector<fel> v(coord_paths.size(), 0);
    for (const auto& [c, path] : combo) {
        if (path.length() >= static_cast<size_t>(cap)) continue;  // already known to die
        size_t col = coord_pos.at(word_key(path));
        v[col] = fp.add(v[col], fp.reduce(c));
    }
    return in_row_space(ideal, std::move(v), fp);
}

Algebra build_algebra(const Presentation& input) {
    Algebra alg;
    alg.pres = input;
    validate(alg.pres);
    alg.fp = Fp(alg.pres.prime);
    const Quiver& q = alg.pres.quiver;
    Fp fp = alg.fp;

    auto levels = paths_by_length(q, alg.pres.length_cap);

    // Find the shortest length at which every path provably lies in the
    // ideal. The certificate only uses untruncated products, so a pass is
    // sound; if no length up to the cap passes, the presentation either is
    // not admissible or needs a larger cap, and we refuse it.
    int cap = -1;
    for (int n = 2; n <= alg.pres.length_cap; ++n) {
        CoordSpace cs = coords_up_to(levels, n);
        RrefResult rr = rref(ideal_rows(q, alg.pres.relations, levels, cs, n, false, fp));
        bool ok = true;
        for (const PathWord& p : levels[n]) {
            std::vector<fel> unitv(cs.paths.size(), 0);
            unitv[cs.pos.at(word_key(p))] = 1;
            if (!in_row_space(rr, std::move(unitv), fp)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            cap = n;
            break;
        }
    }
    if (cap < 0)
        throw input_error("NotAdmissible: paths of length " +
                          std::to_string(alg.pres.length_cap) +
                          " do not all lie in the ideal span; raise length_cap or fix the "
                          "relations");
    alg.cap = cap;

    // Quotient basis: reduce the truncated ideal span among paths shorter
    // than the verified length; the non-pivot paths survive.
    CoordSpace cs = coords_up_to(levels, cap - 1);
    alg.ideal = rref(ideal_rows(q, alg.pres.relations, levels, cs, cap - 1, true, fp));
    alg.coord_paths = cs.paths;
    alg.coord_pos = cs.pos;

    std::vector<char> is_pivot(cs.paths.size(), 0);
    for (size_t c : alg.ideal.pivots) is_pivot[c] = 1;
    for (size_t i = 0; i < cs.paths.size(); ++i)
        if (!is_pivot[i]) alg.basis.push_back(cs.paths[i]);
    std::sort(alg.basis.begin(), alg.basis.end(), word_less);
    for (size_t i = 0; i < alg.basis.size(); ++i) alg.basis_pos[word_key(alg.basis[i])] = i;

    for (size_t r = 0; r < alg.ideal.rank; ++r) {
        size_t pc = alg.ideal.pivots[r];
        std::vector<fel> coords(alg.basis.size(), 0);
        for (size_t j = 0; j < cs.paths.size(); ++j) {
            if (j == pc) continue;
            fel t = alg.ideal.r.at(r, j);
            if (t == 0) continue;
            auto it = alg.basis_pos.find(word_key(cs.paths[j]));
            ensure(it != alg.basis_pos.end(), "reduced ideal row touches a pivot column");
            coords[it->second] = fp.neg(t);
        }
        alg.rewrite[word_key(cs.paths[pc])] = std::move(coords);
    }

    alg.trivial_idx.resize(q.vertices.size());
    for (size_t v = 0; v < q.vertices.size(); ++v) {
        auto it = alg.basis_pos.find("e" + std::to_string(q.vertices[v]));
        ensure(it != alg.basis_pos.end(), "trivial path fell out of the basis");
        alg.trivial_idx[v] = it->second;
    }

    size_t d = alg.dim();
    alg.mult.assign(d, std::vector<std::vector<fel>>(d));
    for (size_t i = 0; i < d; ++i) {
        for (size_t j = 0; j < d; ++j) {
            if (alg.basis_target(i) != alg.basis_source(j)) continue;
            PathWord prod = alg.basis[i];
            if (prod.trivial()) prod = alg.basis[j];
            else
                prod.arrows.insert(prod.arrows.end(), alg.basis[j].arrows.begin(),
                                   alg.basis[j].arrows.end());
            std::vector<fel> coords = alg.path_coords(prod);
            if (std::any_of(coords.begin(), coords.end(), [](fel x) { return x != 0; }))
                alg.mult[i][j] = std::move(coords);
        }
    }

    alg.corners.assign(q.vertices.size(),
                       std::vector<std::vector<size_t>>(q.vertices.size()));
    for (size_t i = 0; i < d; ++i)
        alg.corners[q.vindex(alg.basis_source(i))][q.vindex(alg.basis_target(i))].push_back(i);
    size_t corner_total = 0;
    for (const auto& row : alg.corners)
        for (const auto& cell : row) corner_total += cell.size();
    ensure(corner_total == d, "corner dimensions do not add up to dim A");

    // Associativity on basis triples. (b_i b_j) b_k and b_i (b_j b_k) both
    // expand through the table; any mismatch means the reduction is broken.
    auto table = [&](size_t i, size_t j) -> const std::vector<fel>& {
        static const std::vector<fel> zero;
        return alg.mult[i][j].empty() ? zero : alg.mult[i][j];
    };
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            for (size_t k = 0; k < d; ++k) {
                std::vector<fel> lhs(d, 0), rhs(d, 0);
                const std::vector<fel>& ij = table(i, j);
                for (size_t m = 0; m < ij.size(); ++m) {
                    if (ij[m] == 0) continue;
                    const std::vector<fel>& mk = table(m, k);
                    for (size_t t = 0; t < mk.size(); ++t)
                        if (mk[t] != 0) lhs[t] = fp.add(lhs[t], fp.mul(ij[m], mk[t]));
                }
                const std::vector<fel>& jk = table(j, k);
                for (size_t m = 0; m < jk.size(); ++m) {
                    if (jk[m] == 0) continue;
                    const std::vector<fel>& im = table(i, m);
                    for (size_t t = 0; t < im.size(); ++t)
                        if (im[t] != 0) rhs[t] = fp.add(rhs[t], fp.mul(jk[m], im[t]));
                }
                ensure(lhs == rhs, "multiplication table is not associative");
            }

    return alg;
}

std::vector<size_t> corner_basis(const Algebra& alg, int va, int vb) {
    return alg.corners[alg.pres.quiver.vindex(va)][alg.pres.quiver.vindex(vb)];
}

std::vector<size_t> radical_basis(const Algebra& alg) {
    std::vector<size_t> out;
    for (size_t i = 0; i < alg.dim(); ++i)
        if (!alg.basis[i].trivial()) out.push_back(i);
    return out;
}

std::vector<Relation> minimal_relations(const Algebra& alg) {
    std::vector<Relation> out;
    for (const Relation& rel : alg.pres.relations) {
        size_t m = rel.terms.size();
        if (m > 20) throw budget_error("relation has too many terms for the subset scan");
        bool minimal = true;
        for (uint32_t s = 1; minimal && m >= 2 && s + 1 < (1u << m); ++s) {
            std::vector<std::pair<fel, PathWord>> part;
            for (size_t i = 0; i < m; ++i)
                if (s >> i & 1) part.push_back(rel.terms[i]);
            if (alg.in_ideal(part)) minimal = false;
        }
        if (minimal) out.push_back(rel);
    }
    return out;
}

size_t BoundedCategory::oindex(int object_id) const {
    for (size_t i = 0; i < objects.size(); ++i)
        if (objects[i] == object_id) return i;
    throw input_error("unknown object " + std::to_string(object_id));
}

std::vector<fel> BoundedCategory::compose(size_t i, size_t j, size_t k, const std::vector<fel>& x,
                                          const std::vector<fel>& y) const {
    ensure(x.size() == dims[i][j] && y.size() == dims[j][k], "composite has wrong lengths");
    std::vector<fel> out(dims[i][k], 0);
    for (size_t a = 0; a < x.size(); ++a) {
        if (x[a] == 0) continue;
        for (size_t b = 0; b < y.size(); ++b) {
            if (y[b] == 0) continue;
            const std::vector<fel>& t = comp[i][j][k][a * dims[j][k] + b];
            fel c = fp.mul(x[a], y[b]);
            for (size_t m = 0; m < out.size(); ++m)
                if (t[m] != 0) out[m] = fp.add(out[m], fp.mul(c, t[m]));
        }
    }
    return out;
}

std::vector<fel> BoundedCategory::identity_of(size_t i) const {
    std::vector<fel> e(dims[i][i], 0);
    e[id_index[i]] = 1;
    return e;
}

void check_bounded(const BoundedCategory& cat) {
    size_t n = cat.nobj();
    ensure(cat.dims.size() == n && cat.comp.size() == n && cat.id_index.size() == n,
           "category tables have inconsistent sizes");

    auto unit = [](size_t len, size_t at) {
        std::vector<fel> e(len, 0);
        e[at] = 1;
        return e;
    };

    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t b = 0; b < cat.dims[i][j]; ++b) {
                std::vector<fel> e = unit(cat.dims[i][j], b);
                ensure(cat.compose(i, i, j, cat.identity_of(i), e) == e,
                       "left identity law fails");
                ensure(cat.compose(i, j, j, e, cat.identity_of(j)) == e,
                       "right identity law fails");
            }

    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                for (size_t l = 0; l < n; ++l)
                    for (size_t a = 0; a < cat.dims[i][j]; ++a)
                        for (size_t b = 0; b < cat.dims[j][k]; ++b)
                            for (size_t c = 0; c < cat.dims[k][l]; ++c) {
                                std::vector<fel> ab = cat.compose(
                                    i, j, k, unit(cat.dims[i][j], a), unit(cat.dims[j][k], b));
                                std::vector<fel> bc = cat.compose(
                                    j, k, l, unit(cat.dims[j][k], b), unit(cat.dims[k][l], c));
                                ensure(cat.compose(i, k, l, ab, unit(cat.dims[k][l], c)) ==
                                           cat.compose(i, j, l, unit(cat.dims[i][j], a), bc),
                                       "composition is not associative");
                            }

    // Local endomorphism algebras: the non-identity basis elements must span
    // a nilpotent ideal of codimension one.
    for (size_t i = 0; i < n; ++i) {
        size_t d = cat.dims[i][i], id = cat.id_index[i];
        ensure(id < d, "identity index out of range");
        for (size_t a = 0; a < d; ++a)
            for (size_t b = 0; b < d; ++b) {
                if (a == id || b == id) continue;
                std::vector<fel> prod = cat.compose(i, i, i, unit(d, a), unit(d, b));
                ensure(prod[id] == 0, "radical of an endomorphism algebra is not an ideal");
            }
        if (d == 1) continue;
        Mat power(d - 1, d, cat.fp);
        {
            size_t r = 0;
            for (size_t a = 0; a < d; ++a)
                if (a != id) power.at(r++, a) = 1;
        }
        for (size_t step = 0; step < d && power.rows > 0; ++step) {
            std::vector<std::vector<fel>> next;
            for (size_t r = 0; r < power.rows; ++r) {
                std::vector<fel> x(d);
                for (size_t c = 0; c < d; ++c) x[c] = power.at(r, c);
                for (size_t b = 0; b < d; ++b) {
                    if (b == id) continue;
                    next.push_back(cat.compose(i, i, i, x, unit(d, b)));
                }
            }
            Mat nm(next.size(), d, cat.fp);
            for (size_t r = 0; r < next.size(); ++r)
                for (size_t c = 0; c < d; ++c) nm.at(r, c) = next[r][c];
            power = row_space_basis(nm);
        }
        ensure(power.rows == 0, "endomorphism algebra is not local (radical not nilpotent)");
    }

    // Distinct objects must stay non-isomorphic: any round trip through
    // another object lands inside the radical.
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            for (size_t a = 0; a < cat.dims[i][j]; ++a)
                for (size_t b = 0; b < cat.dims[j][i]; ++b) {
                    std::vector<fel> round = cat.compose(i, j, i, unit(cat.dims[i][j], a),
                                                         unit(cat.dims[j][i], b));
                    ensure(round[cat.id_index[i]] == 0,
                           "two distinct objects admit an isomorphism");
                }
        }
}

BoundedCategory as_bounded_category(const Algebra& alg) {
    const Quiver& q = alg.pres.quiver;
    size_t n = q.vertices.size();
    BoundedCategory cat;
    cat.fp = alg.fp;
    cat.objects = q.vertices;
    for (int v : q.vertices) cat.labels.push_back(std::to_string(v));

    cat.dims.assign(n, std::vector<size_t>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) cat.dims[i][j] = alg.corners[i][j].size();

    cat.id_index.assign(n, 0);
    for (size_t i = 0; i < n; ++i) {
        const std::vector<size_t>& cell = alg.corners[i][i];
        auto it = std::find(cell.begin(), cell.end(), alg.trivial_idx[i]);
        ensure(it != cell.end(), "trivial path missing from its corner");
        cat.id_index[i] = static_cast<size_t>(it - cell.begin());
    }

    cat.comp.assign(n, std::vector<std::vector<std::vector<std::vector<fel>>>>(
                           n, std::vector<std::vector<std::vector<fel>>>(n)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k) {
                const auto& left = alg.corners[i][j];
                const auto& right = alg.corners[j][k];
                const auto& target = alg.corners[i][k];
                auto& cell = cat.comp[i][j][k];
                cell.assign(left.size() * right.size(), {});
                for (size_t a = 0; a < left.size(); ++a)
                    for (size_t b = 0; b < right.size(); ++b) {
                        std::vector<fel> coords(target.size(), 0);
                        const std::vector<fel>& prod = alg.mult[left[a]][right[b]];
                        if (!prod.empty())
                            for (size_t t = 0; t < target.size(); ++t)
                                coords[t] = prod[target[t]];
                        cell[a * right.size() + b] = std::move(coords);
                    }
            }

    check_bounded(cat);
    return cat;
}

}  // namespace derange

#include "derange/category.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "derange/error.hpp"

namespace derange {

namespace {

std::vector<fel> mat_row(const Mat& m, size_t r) {
    std::vector<fel> out(m.cols);
    for (size_t j = 0; j < m.cols; ++j) out[j] = m.at(r, j);
    return out;
}

// row vector through a matrix: x * m
std::vector<fel> push(const std::vector<fel>& x, const Mat& m, Fp fp) {
    std::vector<fel> out(m.cols, 0);
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (size_t j = 0; j < m.cols; ++j) out[j] = fp.add(out[j], fp.mul(x[i], m.at(i, j)));
    }
    return out;
}

std::vector<fel> unit_vec(size_t n, size_t pos) {
    std::vector<fel> out(n, 0);
    out[pos] = 1;
    return out;
}

std::string pair_name(const BoundedCategory& c, size_t i, size_t j) {
    return "(" + c.labels[i] + ", " + c.labels[j] + ")";
}

}  // namespace

LinearFunctor identity_functor(const BoundedCategory& cat) {
    LinearFunctor f;
    f.source = cat;
    f.target = cat;
    f.obj.resize(cat.nobj());
    for (size_t i = 0; i < cat.nobj(); ++i) f.obj[i] = i;
    f.maps.assign(cat.nobj(), std::vector<Mat>(cat.nobj()));
    for (size_t i = 0; i < cat.nobj(); ++i)
        for (size_t j = 0; j < cat.nobj(); ++j) f.maps[i][j] = identity(cat.dims[i][j], cat.fp);
    return f;
}

LinearFunctor algebra_functor(const Algebra& src, const Algebra& tgt, const std::vector<int>& vmap,
                              const std::vector<std::vector<fel>>& arrow_images) {
    const Quiver& q = src.pres.quiver;
    size_t n = q.vertices.size();
    require(vmap.size() == n, "algebra_functor: one target vertex per source vertex");
    require(arrow_images.size() == q.arrows.size(), "algebra_functor: one image per arrow");

    LinearFunctor f;
    f.source = as_bounded_category(src);
    f.target = as_bounded_category(tgt);
    f.obj.resize(n);
    for (size_t i = 0; i < n; ++i) f.obj[i] = tgt.pres.quiver.vindex(vmap[i]);

    std::vector<std::vector<fel>> full(q.arrows.size());
    for (size_t a = 0; a < q.arrows.size(); ++a) {
        const Arrow& ar = q.arrows[a];
        std::vector<size_t> cell = corner_basis(tgt, vmap[q.vindex(ar.from)], vmap[q.vindex(ar.to)]);
        require(arrow_images[a].size() == cell.size(),
                "algebra_functor: image of arrow " + std::to_string(ar.id) +
                    " does not fit its target corner");
        full[a].assign(tgt.dim(), 0);
        for (size_t t = 0; t < cell.size(); ++t) full[a][cell[t]] = arrow_images[a][t];
    }

    f.maps.assign(n, std::vector<Mat>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            const std::vector<size_t>& cell_src = src.corners[i][j];
            const std::vector<size_t>& cell_tgt = tgt.corners[f.obj[i]][f.obj[j]];
            Mat m(cell_src.size(), cell_tgt.size(), tgt.fp);
            for (size_t r = 0; r < cell_src.size(); ++r) {
                const PathWord& w = src.basis[cell_src[r]];
                std::vector<fel> acc(tgt.dim(), 0);
                acc[tgt.trivial_idx[f.obj[i]]] = 1;
                for (int aid : w.arrows) acc = tgt.mul_elems(acc, full[q.apos.at(aid)]);
                for (size_t t = 0; t < cell_tgt.size(); ++t) {
                    m.at(r, t) = acc[cell_tgt[t]];
                    acc[cell_tgt[t]] = 0;
                }
                ensure(std::all_of(acc.begin(), acc.end(), [](fel x) { return x == 0; }),
                       "functor image escapes its corner");
            }
            f.maps[i][j] = std::move(m);
        }
    return f;
}

std::optional<std::string> check_functor(const LinearFunctor& f) {
    const BoundedCategory& B = f.source;
    const BoundedCategory& A = f.target;
    size_t n = B.nobj();
    if (f.obj.size() != n) return "object map must cover every source object";
    for (size_t i = 0; i < n; ++i)
        if (f.obj[i] >= A.nobj()) return "object map leaves the target at " + B.labels[i];
    if (f.maps.size() != n) return "hom map table must cover every source object";
    for (size_t i = 0; i < n; ++i) {
        if (f.maps[i].size() != n) return "hom map table must cover every source object";
        for (size_t j = 0; j < n; ++j) {
            const Mat& m = f.maps[i][j];
            if (m.rows != B.dims[i][j] || m.cols != A.dims[f.obj[i]][f.obj[j]])
                return "hom map " + pair_name(B, i, j) + " has the wrong shape";
        }
    }

    for (size_t i = 0; i < n; ++i) {
        std::vector<fel> img = mat_row(f.maps[i][i], B.id_index[i]);
        if (img != A.identity_of(f.obj[i]))
            return "F(id_" + B.labels[i] + ") is not the identity at its image";
    }

    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                for (size_t a = 0; a < B.dims[i][j]; ++a)
                    for (size_t b = 0; b < B.dims[j][k]; ++b) {
                        std::vector<fel> lhs =
                            push(B.comp[i][j][k][a * B.dims[j][k] + b], f.maps[i][k], B.fp);
                        std::vector<fel> rhs =
                            A.compose(f.obj[i], f.obj[j], f.obj[k], mat_row(f.maps[i][j], a),
                                      mat_row(f.maps[j][k], b));
                        if (lhs != rhs)
                            return "composition not preserved at " + pair_name(B, i, j) + " then " +
                                   pair_name(B, j, k) + ", basis pair (" + std::to_string(a) +
                                   ", " + std::to_string(b) + ")";
                    }
    return std::nullopt;
}

std::optional<std::string> check_cat_module(const BoundedCategory& cat, const CatModule& m) {
    size_t n = cat.nobj();
    if (m.dims.size() != n || m.act.size() != n) return "one fiber per object required";
    for (size_t i = 0; i < n; ++i) {
        if (m.act[i].size() != n) return "one action list per hom pair required";
        for (size_t j = 0; j < n; ++j) {
            if (m.act[i][j].size() != cat.dims[i][j])
                return "one action matrix per basis morphism required at " + pair_name(cat, i, j);
            for (const Mat& a : m.act[i][j])
                if (a.rows != m.dims[i] || a.cols != m.dims[j])
                    return "action shape mismatch at " + pair_name(cat, i, j);
        }
    }
    for (size_t i = 0; i < n; ++i)
        if (!(m.act[i][i][cat.id_index[i]] == identity(m.dims[i], cat.fp)))
            return "identity of " + cat.labels[i] + " does not act as the identity";
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                for (size_t a = 0; a < cat.dims[i][j]; ++a)
                    for (size_t b = 0; b < cat.dims[j][k]; ++b) {
                        const std::vector<fel>& c = cat.comp[i][j][k][a * cat.dims[j][k] + b];
                        Mat lhs(m.dims[i], m.dims[k], cat.fp);
                        for (size_t t = 0; t < c.size(); ++t)
                            if (c[t]) lhs = add(lhs, scale(m.act[i][k][t], c[t]));
                        if (!(lhs == mul(m.act[i][j][a], m.act[j][k][b])))
                            return "action not multiplicative at " + pair_name(cat, i, j) +
                                   " then " + pair_name(cat, j, k);
                    }
    return std::nullopt;
}

size_t cat_module_dim(const CatModule& m) {
    size_t total = 0;
    for (size_t d : m.dims) total += d;
    return total;
}

CatModule as_cat_module(const Algebra& alg, const Representation& m) {
    size_t n = alg.nvert();
    CatModule out;
    out.dims = m.dims;
    out.act.assign(n, std::vector<std::vector<Mat>>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t t : alg.corners[i][j])
                out.act[i][j].push_back(eval_path(alg, m, alg.basis[t]));
    return out;
}

Representation to_representation(const Algebra& alg, const CatModule& m) {
    const Quiver& q = alg.pres.quiver;
    Representation r;
    r.dims = m.dims;
    for (const Arrow& ar : q.arrows) {
        size_t i = q.vindex(ar.from);
        size_t j = q.vindex(ar.to);
        size_t bi = alg.basis_pos.at(word_key(PathWord{0, {ar.id}}));
        const std::vector<size_t>& cell = alg.corners[i][j];
        size_t pos = size_t(std::find(cell.begin(), cell.end(), bi) - cell.begin());
        ensure(pos < cell.size(), "arrow missing from its corner");
        r.mats.push_back(m.act[i][j][pos]);
    }
    return r;
}

CatModule restrict_module(const LinearFunctor& f, const CatModule& m) {
    const BoundedCategory& B = f.source;
    size_t n = B.nobj();
    CatModule out;
    out.dims.resize(n);
    for (size_t i = 0; i < n; ++i) out.dims[i] = m.dims[f.obj[i]];
    out.act.assign(n, std::vector<std::vector<Mat>>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            out.act[i][j].assign(B.dims[i][j], Mat(out.dims[i], out.dims[j], B.fp));
            for (size_t t = 0; t < B.dims[i][j]; ++t)
                for (size_t s = 0; s < f.maps[i][j].cols; ++s) {
                    fel c = f.maps[i][j].at(t, s);
                    if (c)
                        out.act[i][j][t] =
                            add(out.act[i][j][t], scale(m.act[f.obj[i]][f.obj[j]][s], c));
                }
        }
    return out;
}

ProjComplex extend_complex(const Algebra& src, const Algebra& tgt, const LinearFunctor& f,
                           const ProjComplex& x) {
    require(f.source.objects == src.pres.quiver.vertices &&
                f.target.objects == tgt.pres.quiver.vertices,
            "extend_complex: functor does not connect the two algebras");
    if (auto err = validate(src, x)) throw input_error("extend_complex: " + *err);

    const Quiver& q = src.pres.quiver;
    ProjComplex out;
    out.m = x.m;
    out.mults.resize(x.mults.size());
    for (size_t i = 0; i < x.mults.size(); ++i)
        for (int v : x.mults[i]) out.mults[i].push_back(f.target.objects[f.obj[q.vindex(v)]]);

    out.diffs.resize(x.diffs.size());
    for (size_t i = 0; i < x.diffs.size(); ++i) {
        out.diffs[i].resize(x.diffs[i].size());
        for (size_t r = 0; r < x.diffs[i].size(); ++r) {
            out.diffs[i][r].resize(x.diffs[i][r].size());
            for (size_t c = 0; c < x.diffs[i][r].size(); ++c) {
                size_t ap = q.vindex(x.mults[i][r]);
                size_t bp = q.vindex(x.mults[i + 1][c]);
                out.diffs[i][r][c] = push(x.diffs[i][r][c], f.maps[bp][ap], tgt.fp);
            }
        }
    }

    out = minimize(tgt, std::move(out));
    if (auto err = validate(tgt, out)) throw invariant_error("extend_complex: " + *err);
    return out;
}

CleavingResult is_cleaving_cond1(const LinearFunctor& f) {
    if (auto err = check_functor(f)) throw input_error("is_cleaving_cond1: " + *err);
    const BoundedCategory& B = f.source;
    const BoundedCategory& A = f.target;
    size_t n = B.nobj();
    CleavingResult res;

    // a split map is injective; cheap necessary condition first
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (B.dims[i][j] > 0 && rank(f.maps[i][j]) < B.dims[i][j]) {
                res.note = "hom map " + pair_name(B, i, j) + " is not injective";
                return res;
            }

    // unknowns: all retraction entries R_ij(t, s), t over the target cell
    std::vector<std::vector<size_t>> off(n, std::vector<size_t>(n, 0));
    size_t total = 0;
    auto tdim = [&](size_t i, size_t j) { return A.dims[f.obj[i]][f.obj[j]]; };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            off[i][j] = total;
            total += tdim(i, j) * B.dims[i][j];
        }

    std::vector<std::vector<fel>> eqs;
    std::vector<fel> rhs;
    Fp fp = A.fp;

    // r(F(x)) = x on every basis morphism
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            size_t ds = B.dims[i][j];
            for (size_t s0 = 0; s0 < ds; ++s0)
                for (size_t s = 0; s < ds; ++s) {
                    std::vector<fel> eq(total, 0);
                    for (size_t t = 0; t < tdim(i, j); ++t)
                        eq[off[i][j] + t * ds + s] = f.maps[i][j].at(s0, t);
                    eqs.push_back(std::move(eq));
                    rhs.push_back(s0 == s ? 1 : 0);
                }
        }

    // naturality: r(F(u) x F(v)) = u r(x) v over all basis u, v, x
    for (size_t b = 0; b < n; ++b)
        for (size_t b1 = 0; b1 < n; ++b1)
            for (size_t c = 0; c < n; ++c)
                for (size_t c1 = 0; c1 < n; ++c1) {
                    size_t dsb = B.dims[b][b1], dsc = B.dims[c][c1];
                    for (size_t u = 0; u < B.dims[c][b]; ++u)
                        for (size_t v = 0; v < B.dims[b1][c1]; ++v) {
                            std::vector<fel> fu = mat_row(f.maps[c][b], u);
                            std::vector<fel> fv = mat_row(f.maps[b1][c1], v);
                            for (size_t t0 = 0; t0 < tdim(b, b1); ++t0) {
                                std::vector<fel> y1 =
                                    A.compose(f.obj[c], f.obj[b], f.obj[b1], fu,
                                              unit_vec(tdim(b, b1), t0));
                                std::vector<fel> y =
                                    A.compose(f.obj[c], f.obj[b1], f.obj[c1], y1, fv);
                                for (size_t s = 0; s < dsc; ++s) {
                                    std::vector<fel> eq(total, 0);
                                    for (size_t t = 0; t < tdim(c, c1); ++t)
                                        eq[off[c][c1] + t * dsc + s] = y[t];
                                    for (size_t s1 = 0; s1 < dsb; ++s1) {
                                        std::vector<fel> z1 =
                                            B.compose(c, b, b1, unit_vec(B.dims[c][b], u),
                                                      unit_vec(dsb, s1));
                                        std::vector<fel> zz =
                                            B.compose(c, b1, c1, z1, unit_vec(B.dims[b1][c1], v));
                                        size_t pos = off[b][b1] + t0 * dsb + s1;
                                        eq[pos] = fp.sub(eq[pos], zz[s]);
                                    }
                                    bool zero = std::all_of(eq.begin(), eq.end(),
                                                            [](fel x) { return x == 0; });
                                    if (!zero) {
                                        eqs.push_back(std::move(eq));
                                        rhs.push_back(0);
                                    }
                                }
                            }
                        }
                }

    Mat sys(total, eqs.size(), fp);
    for (size_t e = 0; e < eqs.size(); ++e)
        for (size_t u = 0; u < total; ++u) sys.at(u, e) = eqs[e][u];
    std::optional<std::vector<fel>> sol = coords_in_rows(sys, rhs, fp);
    if (!sol) {
        res.note = "the natural retraction system is inconsistent";
        return res;
    }

    res.cleaving = true;
    res.note = "every hom map splits naturally";
    res.retraction.assign(n, std::vector<Mat>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            size_t ds = B.dims[i][j];
            Mat r(tdim(i, j), ds, fp);
            for (size_t t = 0; t < r.rows; ++t)
                for (size_t s = 0; s < ds; ++s) r.at(t, s) = (*sol)[off[i][j] + t * ds + s];
            ensure(!(B.dims[i][j] > 0) || mul(f.maps[i][j], r) == identity(ds, fp),
                   "retraction certificate failed to split its hom map");
            res.retraction[i][j] = std::move(r);
        }
    return res;
}

Presentation build_An_l(int n, int l, uint32_t p) {
    require(n >= 1, "build_An_l: need at least one vertex");
    require(l >= 2, "build_An_l: the bound must be admissible (l >= 2)");
    Presentation pres;
    for (int v = 1; v <= n; ++v) pres.quiver.vertices.push_back(v);
    for (int a = 0; a + 1 < n; ++a) pres.quiver.arrows.push_back({a, a + 1, a + 2});
    for (int start = 0; start + l <= n - 1; ++start) {
        std::vector<int> run;
        for (int a = start; a < start + l; ++a) run.push_back(a);
        pres.relations.push_back(Relation{{{1, PathWord{0, std::move(run)}}}});
    }
    pres.prime = p;
    pres.length_cap = std::max(12, l + 1);
    return pres;
}

RepetitiveSlice repetitive_slice(const Algebra& alg, int lo, int hi) {
    require(lo <= hi, "repetitive_slice: the window is empty");
    const Quiver& q = alg.pres.quiver;
    size_t n = q.vertices.size();

    RepetitiveSlice s;
    s.lo = lo;
    s.hi = hi;
    s.nvert = n;
    BoundedCategory& cat = s.cat;
    cat.fp = alg.fp;

    for (int idx = lo; idx <= hi; ++idx)
        for (size_t v = 0; v < n; ++v) {
            cat.objects.push_back(int(cat.objects.size()));
            cat.labels.push_back("(" + std::to_string(q.vertices[v]) + "," +
                                 std::to_string(idx) + ")");
        }
    size_t N = cat.objects.size();

    cat.dims.assign(N, std::vector<size_t>(N, 0));
    for (int idx = lo; idx <= hi; ++idx)
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b) {
                cat.dims[s.opos(a, idx)][s.opos(b, idx)] = alg.corners[a][b].size();
                if (idx < hi)
                    cat.dims[s.opos(a, idx)][s.opos(b, idx + 1)] = alg.corners[b][a].size();
            }

    cat.id_index.assign(N, 0);
    for (int idx = lo; idx <= hi; ++idx)
        for (size_t a = 0; a < n; ++a) {
            const std::vector<size_t>& cell = alg.corners[a][a];
            auto it = std::find(cell.begin(), cell.end(), alg.trivial_idx[a]);
            ensure(it != cell.end(), "trivial path missing from its corner");
            cat.id_index[s.opos(a, idx)] = size_t(it - cell.begin());
        }

    cat.comp.assign(N, std::vector<std::vector<std::vector<std::vector<fel>>>>(
                           N, std::vector<std::vector<std::vector<fel>>>(N)));
    for (size_t i = 0; i < N; ++i)
        for (size_t j = 0; j < N; ++j)
            for (size_t k = 0; k < N; ++k)
                cat.comp[i][j][k].assign(cat.dims[i][j] * cat.dims[j][k],
                                         std::vector<fel>(cat.dims[i][k], 0));

    auto coeff_at = [&](const std::vector<fel>& prod, size_t basis_idx) -> fel {
        return prod.empty() ? 0 : prod[basis_idx];
    };

    for (int idx = lo; idx <= hi; ++idx)
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b)
                for (size_t c = 0; c < n; ++c) {
                    const auto& ab = alg.corners[a][b];
                    const auto& bc = alg.corners[b][c];
                    const auto& ac = alg.corners[a][c];
                    const auto& ca = alg.corners[c][a];
                    const auto& cb = alg.corners[c][b];
                    const auto& ba = alg.corners[b][a];

                    // same index: the algebra's own composition
                    auto& same = cat.comp[s.opos(a, idx)][s.opos(b, idx)][s.opos(c, idx)];
                    for (size_t u = 0; u < ab.size(); ++u)
                        for (size_t v = 0; v < bc.size(); ++v) {
                            const std::vector<fel>& prod = alg.mult[ab[u]][bc[v]];
                            std::vector<fel>& out = same[u * bc.size() + v];
                            for (size_t t = 0; t < ac.size(); ++t)
                                out[t] = coeff_at(prod, ac[t]);
                        }
                    if (idx == hi) continue;

                    // u then phi_w: the composite functional is y |-> phi_w(y then u)
                    auto& raise_r = cat.comp[s.opos(a, idx)][s.opos(b, idx)][s.opos(c, idx + 1)];
                    for (size_t u = 0; u < ab.size(); ++u)
                        for (size_t w = 0; w < cb.size(); ++w) {
                            std::vector<fel>& out = raise_r[u * cb.size() + w];
                            for (size_t y = 0; y < ca.size(); ++y)
                                out[y] = coeff_at(alg.mult[ca[y]][ab[u]], cb[w]);
                        }

                    // phi_w then u: the composite functional is y |-> phi_w(u then y)
                    auto& raise_l = cat.comp[s.opos(a, idx)][s.opos(b, idx + 1)][s.opos(c, idx + 1)];
                    for (size_t w = 0; w < ba.size(); ++w)
                        for (size_t u = 0; u < bc.size(); ++u) {
                            std::vector<fel>& out = raise_l[w * bc.size() + u];
                            for (size_t y = 0; y < ca.size(); ++y)
                                out[y] = coeff_at(alg.mult[bc[u]][ca[y]], ba[w]);
                        }
                }

    check_bounded(cat);
    return s;
}

std::vector<size_t> slice_projective_dimvec(const Algebra& alg, const RepetitiveSlice& s,
                                            int vertex, int index) {
    const Quiver& q = alg.pres.quiver;
    size_t a = q.vindex(vertex);
    require(index >= s.lo && index <= s.hi, "slice_projective_dimvec: index outside the window");
    require(index + 1 <= s.hi,
            "slice_projective_dimvec: truncated support, the dual part needs index+1 in the window");
    std::vector<size_t> out(s.cat.nobj(), 0);
    for (size_t b = 0; b < s.nvert; ++b) {
        out[s.opos(b, index)] = alg.corners[a][b].size();
        out[s.opos(b, index + 1)] = alg.corners[b][a].size();
    }
    return out;
}

}  // namespace derange

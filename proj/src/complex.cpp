#include "derange/complex.hpp"

#include <algorithm>
#include <climits>
#include <sstream>
#include <utility>

#include "derange/error.hpp"

namespace derange {

namespace {

using Coeffs = std::vector<fel>;

bool all_zero(const Coeffs& v) {
    for (fel x : v)
        if (x) return false;
    return true;
}

Coeffs vadd(const Algebra& alg, Coeffs x, const Coeffs& y) {
    for (size_t i = 0; i < x.size(); ++i) x[i] = alg.fp.add(x[i], y[i]);
    return x;
}

Coeffs vsub(const Algebra& alg, Coeffs x, const Coeffs& y) {
    for (size_t i = 0; i < x.size(); ++i) x[i] = alg.fp.sub(x[i], y[i]);
    return x;
}

Coeffs vscale(const Algebra& alg, Coeffs x, fel c) {
    for (fel& v : x) v = alg.fp.mul(v, c);
    return x;
}

Coeffs unit_at(const Algebra& alg, size_t idx) {
    Coeffs v(alg.dim(), 0);
    v[idx] = 1;
    return v;
}

// Basis of Hom(P_src, P_tgt) = e_tgt A e_src, as algebra basis indices.
const std::vector<size_t>& hom_cell(const Algebra& alg, int src_vertex, int tgt_vertex) {
    const Quiver& q = alg.pres.quiver;
    return alg.corners[q.vindex(tgt_vertex)][q.vindex(src_vertex)];
}

Coeffs cell_to_full(const Algebra& alg, const std::vector<size_t>& cell, const Coeffs& coeffs) {
    Coeffs v(alg.dim(), 0);
    for (size_t k = 0; k < cell.size(); ++k) v[cell[k]] = coeffs[k];
    return v;
}

Coeffs full_to_cell(const Algebra& alg, const std::vector<size_t>& cell, const Coeffs& full) {
    Coeffs out(cell.size(), 0);
    for (size_t k = 0; k < cell.size(); ++k) out[k] = full[cell[k]];
    ensure(cell_to_full(alg, cell, out) == full, "element escapes its corner space");
    return out;
}

std::vector<size_t> proj_basis(const Algebra& alg, int vertex) {
    std::vector<size_t> out;
    for (size_t k = 0; k < alg.dim(); ++k)
        if (alg.basis_source(k) == vertex) out.push_back(k);
    return out;
}

// Linearization of one degree: concatenated path bases of its summands.
struct DegreeSpace {
    std::vector<std::vector<size_t>> pbasis;
    std::vector<size_t> offset;
    size_t total = 0;
};

DegreeSpace degree_space(const Algebra& alg, const std::vector<int>& mults) {
    DegreeSpace ds;
    for (int v : mults) {
        ds.offset.push_back(ds.total);
        ds.pbasis.push_back(proj_basis(alg, v));
        ds.total += ds.pbasis.back().size();
    }
    return ds;
}

// Matrix (row convention) of a block map between sums of projectives; the
// block entries act by left multiplication.
Mat blocks_matrix(const Algebra& alg, const std::vector<std::vector<Coeffs>>& blocks,
                  const std::vector<int>& srcm, const std::vector<int>& dstm,
                  const DegreeSpace& src, const DegreeSpace& dst) {
    Mat d(src.total, dst.total, alg.fp);
    for (size_t r = 0; r < srcm.size(); ++r)
        for (size_t c = 0; c < dstm.size(); ++c) {
            const auto& cell = hom_cell(alg, srcm[r], dstm[c]);
            if (cell.empty() || all_zero(blocks[r][c])) continue;
            Coeffs z = cell_to_full(alg, cell, blocks[r][c]);
            for (size_t qi = 0; qi < src.pbasis[r].size(); ++qi) {
                Coeffs prod = alg.mul_elems(z, unit_at(alg, src.pbasis[r][qi]));
                for (size_t ci = 0; ci < dst.pbasis[c].size(); ++ci)
                    d.at(src.offset[r] + qi, dst.offset[c] + ci) = prod[dst.pbasis[c][ci]];
            }
        }
    return d;
}

Mat submatrix(const Mat& m, const std::vector<size_t>& ridx, const std::vector<size_t>& cidx,
              Fp fp) {
    Mat out(ridx.size(), cidx.size(), fp);
    for (size_t i = 0; i < ridx.size(); ++i)
        for (size_t j = 0; j < cidx.size(); ++j) out.at(i, j) = m.at(ridx[i], cidx[j]);
    return out;
}

std::vector<std::vector<Coeffs>> zero_blocks(const Algebra& alg, const std::vector<int>& srcm,
                                             const std::vector<int>& dstm) {
    std::vector<std::vector<Coeffs>> rows(srcm.size());
    for (size_t r = 0; r < srcm.size(); ++r) {
        rows[r].resize(dstm.size());
        for (size_t c = 0; c < dstm.size(); ++c)
            rows[r][c] = Coeffs(hom_cell(alg, srcm[r], dstm[c]).size(), 0);
    }
    return rows;
}

}  // namespace

std::optional<std::string> shape_d2_error(const Algebra& alg, const ProjComplex& x) {
    std::ostringstream os;
    if (x.m < 0) return "window bound m must be nonnegative";
    if (x.mults.size() != size_t(x.m) + 1) return "mults must list degrees 0..m";
    if (x.diffs.size() != size_t(x.m)) return "diffs must list degrees 0..m-1";
    const Quiver& q = alg.pres.quiver;
    for (int i = 0; i <= x.m; ++i)
        for (int v : x.mults[i])
            if (!q.vpos.count(v)) {
                os << "unknown vertex " << v << " in degree " << i;
                return os.str();
            }
    for (int i = 0; i < x.m; ++i) {
        if (x.diffs[i].size() != x.mults[i].size()) {
            os << "row count mismatch in the differential at degree " << i;
            return os.str();
        }
        for (size_t r = 0; r < x.diffs[i].size(); ++r) {
            if (x.diffs[i][r].size() != x.mults[size_t(i) + 1].size()) {
                os << "column count mismatch in the differential at degree " << i << ", row "
                   << r;
                return os.str();
            }
            for (size_t c = 0; c < x.diffs[i][r].size(); ++c) {
                size_t want = hom_cell(alg, x.mults[i][r], x.mults[size_t(i) + 1][c]).size();
                if (x.diffs[i][r][c].size() != want) {
                    os << "entry length mismatch at degree " << i << ", block (" << r << ", "
                       << c << ")";
                    return os.str();
                }
            }
        }
    }
    for (int i = 0; i + 2 <= x.m; ++i) {
        const auto& a = x.mults[i];
        const auto& mid = x.mults[size_t(i) + 1];
        const auto& b = x.mults[size_t(i) + 2];
        for (size_t r = 0; r < a.size(); ++r)
            for (size_t c = 0; c < b.size(); ++c) {
                Coeffs acc(alg.dim(), 0);
                for (size_t s = 0; s < mid.size(); ++s) {
                    Coeffs z1 = cell_to_full(alg, hom_cell(alg, a[r], mid[s]), x.diffs[i][r][s]);
                    Coeffs z2 = cell_to_full(alg, hom_cell(alg, mid[s], b[c]),
                                             x.diffs[size_t(i) + 1][s][c]);
                    acc = vadd(alg, std::move(acc), alg.mul_elems(z2, z1));
                }
                if (!all_zero(acc)) {
                    os << "d^2 != 0 from degree " << i << ", block (" << r << ", " << c << ")";
                    return os.str();
                }
            }
    }
    return std::nullopt;
}

namespace {

void require_shape(const Algebra& alg, const ProjComplex& x, const char* op) {
    if (auto err = shape_d2_error(alg, x)) throw input_error(std::string(op) + ": " + *err);
}

// Position of the identity path inside a same-vertex hom cell.
size_t trivial_pos(const Algebra& alg, const std::vector<size_t>& cell, int vertex) {
    size_t tid = alg.trivial_idx[alg.pres.quiver.vindex(vertex)];
    for (size_t k = 0; k < cell.size(); ++k)
        if (cell[k] == tid) return k;
    ensure(false, "corner e_vAe_v lost its identity path");
    return 0;
}

Coeffs local_inverse(const Algebra& alg, int vertex, const Coeffs& z) {
    size_t tid = alg.trivial_idx[alg.pres.quiver.vindex(vertex)];
    fel c = z[tid];
    ensure(c != 0, "differential entry is not invertible");
    fel cinv = alg.fp.inv(c);
    Coeffs ev = unit_at(alg, tid);
    // z = c (e - u) with u nilpotent, so z^{-1} = c^{-1} sum u^k.
    Coeffs u = vsub(alg, ev, vscale(alg, z, cinv));
    Coeffs acc = ev;
    Coeffs term = ev;
    for (size_t k = 0;; ++k) {
        term = alg.mul_elems(term, u);
        if (all_zero(term)) break;
        ensure(k < alg.dim(), "radical part fails to be nilpotent");
        acc = vadd(alg, std::move(acc), term);
    }
    Coeffs zinv = vscale(alg, std::move(acc), cinv);
    ensure(alg.mul_elems(zinv, z) == ev && alg.mul_elems(z, zinv) == ev,
           "local inverse does not invert");
    return zinv;
}

// Gaussian contraction of one invertible entry (degree i summand r against
// degree i+1 summand c). Adjacent differentials only lose the row/column of
// the removed summands; d^2 = 0 makes further corrections vanish.
ProjComplex eliminate(const Algebra& alg, const ProjComplex& x, int i, size_t r, size_t c) {
    int v = x.mults[i][r];
    Coeffs z = cell_to_full(alg, hom_cell(alg, v, v), x.diffs[i][r][c]);
    Coeffs zinv = local_inverse(alg, v, z);

    ProjComplex y;
    y.m = x.m;
    y.mults = x.mults;
    y.mults[i].erase(y.mults[i].begin() + long(r));
    y.mults[size_t(i) + 1].erase(y.mults[size_t(i) + 1].begin() + long(c));
    y.diffs = x.diffs;

    std::vector<size_t> keep_src, keep_dst;
    for (size_t k = 0; k < x.mults[i].size(); ++k)
        if (k != r) keep_src.push_back(k);
    for (size_t k = 0; k < x.mults[size_t(i) + 1].size(); ++k)
        if (k != c) keep_dst.push_back(k);

    std::vector<std::vector<Coeffs>> mid(keep_src.size());
    for (size_t a = 0; a < keep_src.size(); ++a) {
        size_t m2 = keep_src[a];
        mid[a].resize(keep_dst.size());
        Coeffs into = cell_to_full(alg, hom_cell(alg, x.mults[i][m2], v), x.diffs[i][m2][c]);
        Coeffs back = alg.mul_elems(zinv, into);
        for (size_t b = 0; b < keep_dst.size(); ++b) {
            size_t n2 = keep_dst[b];
            const auto& cell_old = hom_cell(alg, x.mults[i][m2], x.mults[size_t(i) + 1][n2]);
            Coeffs old = cell_to_full(alg, cell_old, x.diffs[i][m2][n2]);
            Coeffs out = cell_to_full(alg, hom_cell(alg, v, x.mults[size_t(i) + 1][n2]),
                                      x.diffs[i][r][n2]);
            Coeffs corrected = vsub(alg, std::move(old), alg.mul_elems(out, back));
            mid[a][b] = full_to_cell(alg, cell_old, corrected);
        }
    }
    y.diffs[i] = std::move(mid);

    if (i >= 1) {
        for (auto& row : y.diffs[size_t(i) - 1]) {
            std::vector<Coeffs> next;
            for (size_t k : keep_src) next.push_back(std::move(row[k]));
            row = std::move(next);
        }
    }
    if (i + 1 < x.m) {
        std::vector<std::vector<Coeffs>> next;
        for (size_t k : keep_dst) next.push_back(std::move(y.diffs[size_t(i) + 1][k]));
        y.diffs[size_t(i) + 1] = std::move(next);
    }
    return y;
}

// Flat indexing of the block entries of a degreewise map X -> Y.
struct SlotTable {
    std::vector<std::vector<std::vector<size_t>>> off;
    size_t total = 0;
};

SlotTable map_slots(const Algebra& alg, const ProjComplex& x, const ProjComplex& y) {
    SlotTable st;
    st.off.resize(size_t(x.m) + 1);
    for (int i = 0; i <= x.m; ++i) {
        st.off[i].resize(x.mults[i].size());
        for (size_t r = 0; r < x.mults[i].size(); ++r) {
            st.off[i][r].resize(y.mults[i].size());
            for (size_t c = 0; c < y.mults[i].size(); ++c) {
                st.off[i][r][c] = st.total;
                st.total += hom_cell(alg, x.mults[i][r], y.mults[i][c]).size();
            }
        }
    }
    return st;
}

ChainMap unpack_map(const Algebra& alg, const ProjComplex& x, const ProjComplex& y,
                    const SlotTable& st, const Mat& rows, size_t row) {
    ChainMap f;
    f.blocks.resize(size_t(x.m) + 1);
    for (int i = 0; i <= x.m; ++i) {
        f.blocks[i] = zero_blocks(alg, x.mults[i], y.mults[i]);
        for (size_t r = 0; r < x.mults[i].size(); ++r)
            for (size_t c = 0; c < y.mults[i].size(); ++c) {
                size_t len = f.blocks[i][r][c].size();
                for (size_t k = 0; k < len; ++k)
                    f.blocks[i][r][c][k] = rows.at(row, st.off[i][r][c] + k);
            }
    }
    return f;
}

ChainMap combine_maps(const Algebra& alg, const ProjComplex& x, const ProjComplex& y,
                      const std::vector<ChainMap>& basis, const Coeffs& coeff) {
    ChainMap f;
    f.blocks.resize(size_t(x.m) + 1);
    for (int i = 0; i <= x.m; ++i) f.blocks[i] = zero_blocks(alg, x.mults[i], y.mults[i]);
    for (size_t k = 0; k < basis.size(); ++k) {
        if (coeff[k] == 0) continue;
        for (int i = 0; i <= x.m; ++i)
            for (size_t r = 0; r < x.mults[i].size(); ++r)
                for (size_t c = 0; c < y.mults[i].size(); ++c)
                    for (size_t t = 0; t < f.blocks[i][r][c].size(); ++t)
                        f.blocks[i][r][c][t] =
                            alg.fp.add(f.blocks[i][r][c][t],
                                       alg.fp.mul(coeff[k], basis[k].blocks[i][r][c][t]));
    }
    return f;
}

constexpr unsigned long long kSearchBudget = 1ull << 20;
constexpr unsigned long long kSat = 1ull << 62;

unsigned long long sat_mul(unsigned long long a, unsigned long long b) {
    if (a == 0 || b == 0) return 0;
    if (a > kSat / b) return kSat;
    return a * b;
}

// d + d^2 + ... + d^k, saturating.
unsigned long long geom_sum(unsigned long long d, int k) {
    unsigned long long acc = 0, pw = 1;
    for (int i = 1; i <= k; ++i) {
        pw = sat_mul(pw, d);
        acc = acc > kSat - pw ? kSat : acc + pw;
    }
    return acc;
}

bool fits_budget(unsigned long long base, size_t exp, unsigned long long budget) {
    unsigned long long acc = 1;
    for (size_t i = 0; i < exp; ++i) {
        acc = sat_mul(acc, base);
        if (acc > budget) return false;
    }
    return acc <= budget;
}

}  // namespace

ProjComplex zero_complex(int m) {
    require(m >= 0, "window bound m must be nonnegative");
    ProjComplex x;
    x.m = m;
    x.mults.assign(size_t(m) + 1, {});
    x.diffs.assign(size_t(m), {});
    return x;
}

ProjComplex stalk_complex(const Algebra& alg, int vertex, int degree, int m) {
    require(degree >= 0 && degree <= m, "stalk degree outside the window");
    alg.pres.quiver.vindex(vertex);
    ProjComplex x = zero_complex(m);
    x.mults[degree] = {vertex};
    for (int i = 0; i < m; ++i) x.diffs[i] = zero_blocks(alg, x.mults[i], x.mults[size_t(i) + 1]);
    return x;
}

ProjComplex direct_sum(const Algebra& alg, const ProjComplex& x, const ProjComplex& y) {
    require(x.m == y.m, "direct sum needs matching windows");
    require_shape(alg, x, "direct_sum");
    require_shape(alg, y, "direct_sum");
    ProjComplex s = zero_complex(x.m);
    for (int i = 0; i <= x.m; ++i) {
        s.mults[i] = x.mults[i];
        s.mults[i].insert(s.mults[i].end(), y.mults[i].begin(), y.mults[i].end());
    }
    for (int i = 0; i < x.m; ++i) {
        s.diffs[i] = zero_blocks(alg, s.mults[i], s.mults[size_t(i) + 1]);
        size_t nr = x.mults[i].size(), nc = x.mults[size_t(i) + 1].size();
        for (size_t r = 0; r < nr; ++r)
            for (size_t c = 0; c < nc; ++c) s.diffs[i][r][c] = x.diffs[i][r][c];
        for (size_t r = 0; r < y.mults[i].size(); ++r)
            for (size_t c = 0; c < y.mults[size_t(i) + 1].size(); ++c)
                s.diffs[i][nr + r][nc + c] = y.diffs[i][r][c];
    }
    return s;
}

size_t projective_dim(const Algebra& alg, int vertex) {
    return proj_basis(alg, vertex).size();
}

size_t degree_dim(const Algebra& alg, const ProjComplex& x, int degree) {
    require(degree >= 0 && degree <= x.m, "degree outside the window");
    size_t d = 0;
    for (int v : x.mults[degree]) d += projective_dim(alg, v);
    return d;
}

std::optional<std::string> validate(const Algebra& alg, const ProjComplex& x) {
    if (auto err = shape_d2_error(alg, x)) return err;
    for (int i = 0; i < x.m; ++i)
        for (size_t r = 0; r < x.mults[i].size(); ++r)
            for (size_t c = 0; c < x.mults[size_t(i) + 1].size(); ++c) {
                int a = x.mults[i][r], b = x.mults[size_t(i) + 1][c];
                if (a != b) continue;
                const auto& cell = hom_cell(alg, a, b);
                if (x.diffs[i][r][c][trivial_pos(alg, cell, a)] != 0) {
                    std::ostringstream os;
                    os << "differential entry outside the radical at degree " << i
                       << ", block (" << r << ", " << c << ")";
                    return os.str();
                }
            }
    return std::nullopt;
}

CohomologyProfile cohomology(const Algebra& alg, const ProjComplex& x) {
    require_shape(alg, x, "cohomology");
    std::vector<DegreeSpace> sp;
    for (int i = 0; i <= x.m; ++i) sp.push_back(degree_space(alg, x.mults[i]));
    std::vector<size_t> rk(size_t(x.m), 0);
    for (int i = 0; i < x.m; ++i)
        rk[i] = rank(blocks_matrix(alg, x.diffs[i], x.mults[i], x.mults[size_t(i) + 1], sp[i],
                                   sp[size_t(i) + 1]));
    CohomologyProfile p;
    p.window = x.m;
    p.h.resize(size_t(x.m) + 1);
    for (int i = 0; i <= x.m; ++i) {
        size_t cut = (i < x.m ? rk[i] : 0) + (i > 0 ? rk[size_t(i) - 1] : 0);
        ensure(cut <= sp[i].total, "cohomology rank bookkeeping broke");
        p.h[i] = sp[i].total - cut;
        p.dim += sp[i].total;
    }
    int lo = -1, hi = -1;
    for (int i = 0; i <= x.m; ++i)
        if (p.h[i]) {
            if (lo < 0) lo = i;
            hi = i;
        }
    if (lo >= 0) {
        for (int i = 0; i <= x.m; ++i) p.hl = std::max(p.hl, p.h[i]);
        p.hw = size_t(hi - lo + 1);
    }
    p.hr = p.hl * p.hw;
    return p;
}

std::vector<size_t> cohomology_dimvec(const Algebra& alg, const ProjComplex& x, int degree) {
    require_shape(alg, x, "cohomology_dimvec");
    require(degree >= 0 && degree <= x.m, "degree outside the window");
    const Quiver& q = alg.pres.quiver;
    std::vector<DegreeSpace> sp;
    for (int i = 0; i <= x.m; ++i) sp.push_back(degree_space(alg, x.mults[i]));
    // Row indices of each total space, grouped by the target vertex grading.
    auto grading = [&](int i) {
        std::vector<std::vector<size_t>> by_v(q.vertices.size());
        size_t pos = 0;
        for (const auto& pb : sp[i].pbasis)
            for (size_t b : pb) by_v[q.vindex(alg.basis_target(b))].push_back(pos++);
        return by_v;
    };
    std::vector<std::vector<size_t>> cur = grading(degree);
    std::vector<size_t> out(q.vertices.size(), 0);
    Mat dlo, dhi;
    std::vector<std::vector<size_t>> lo_rows, hi_cols;
    if (degree > 0) {
        dlo = blocks_matrix(alg, x.diffs[size_t(degree) - 1], x.mults[size_t(degree) - 1],
                            x.mults[degree], sp[size_t(degree) - 1], sp[degree]);
        lo_rows = grading(degree - 1);
    }
    if (degree < x.m) {
        dhi = blocks_matrix(alg, x.diffs[degree], x.mults[degree], x.mults[size_t(degree) + 1],
                            sp[degree], sp[size_t(degree) + 1]);
        hi_cols = grading(degree + 1);
    }
    for (size_t vp = 0; vp < q.vertices.size(); ++vp) {
        size_t cut = 0;
        if (degree > 0) cut += rank(submatrix(dlo, lo_rows[vp], cur[vp], alg.fp));
        if (degree < x.m) cut += rank(submatrix(dhi, cur[vp], hi_cols[vp], alg.fp));
        ensure(cut <= cur[vp].size(), "graded cohomology bookkeeping broke");
        out[vp] = cur[vp].size() - cut;
    }
    return out;
}

ProjComplex minimize(const Algebra& alg, ProjComplex x) {
    require_shape(alg, x, "minimize");
    std::vector<size_t> before = cohomology(alg, x).h;
    for (;;) {
        bool hit = false;
        for (int i = 0; i < x.m && !hit; ++i)
            for (size_t r = 0; r < x.mults[i].size() && !hit; ++r)
                for (size_t c = 0; c < x.mults[size_t(i) + 1].size() && !hit; ++c) {
                    int a = x.mults[i][r];
                    if (a != x.mults[size_t(i) + 1][c]) continue;
                    const auto& cell = hom_cell(alg, a, a);
                    if (x.diffs[i][r][c][trivial_pos(alg, cell, a)] == 0) continue;
                    x = eliminate(alg, x, i, r, c);
                    hit = true;
                }
        if (!hit) break;
    }
    ensure(!validate(alg, x), "contraction left a non-minimal complex");
    ensure(cohomology(alg, x).h == before, "contraction changed cohomology");
    return x;
}

ProjComplex shift_embed(const Algebra& alg, const ProjComplex& x, int offset, int new_m) {
    require_shape(alg, x, "shift_embed");
    require(new_m >= 0, "target window bound must be nonnegative");
    int lo = -1, hi = -1;
    for (int i = 0; i <= x.m; ++i)
        if (!x.mults[i].empty()) {
            if (lo < 0) lo = i;
            hi = i;
        }
    if (lo < 0) return zero_complex(new_m);
    require(lo + offset >= 0 && hi + offset <= new_m,
            "shifted support overflows the target window");
    ProjComplex y = zero_complex(new_m);
    for (int k = lo; k <= hi; ++k) y.mults[size_t(k + offset)] = x.mults[k];
    for (int j = 0; j < new_m; ++j)
        y.diffs[j] = zero_blocks(alg, y.mults[j], y.mults[size_t(j) + 1]);
    for (int k = lo; k < hi; ++k) y.diffs[size_t(k + offset)] = x.diffs[k];
    return y;
}

std::vector<ChainMap> chain_maps(const Algebra& alg, const ProjComplex& x, const ProjComplex& y) {
    require(x.m == y.m, "chain maps need matching windows");
    require_shape(alg, x, "chain_maps");
    require_shape(alg, y, "chain_maps");
    SlotTable st = map_slots(alg, x, y);
    if (st.total == 0) return {};
    size_t d = alg.dim();
    size_t nrows = 0;
    for (int i = 0; i < x.m; ++i) nrows += x.mults[i].size() * y.mults[size_t(i) + 1].size() * d;
    Mat a(nrows, st.total, alg.fp);
    size_t row0 = 0;
    for (int i = 0; i < x.m; ++i)
        for (size_t r = 0; r < x.mults[i].size(); ++r)
            for (size_t c = 0; c < y.mults[size_t(i) + 1].size(); ++c) {
                // sum_s F_{i+1}[s][c] after d_X[r][s], minus sum_t d_Y[t][c] after F_i[r][t]
                for (size_t s = 0; s < x.mults[size_t(i) + 1].size(); ++s) {
                    const auto& dcell = hom_cell(alg, x.mults[i][r], x.mults[size_t(i) + 1][s]);
                    if (dcell.empty() || all_zero(x.diffs[i][r][s])) continue;
                    Coeffs dfull = cell_to_full(alg, dcell, x.diffs[i][r][s]);
                    const auto& ucell =
                        hom_cell(alg, x.mults[size_t(i) + 1][s], y.mults[size_t(i) + 1][c]);
                    size_t off = st.off[size_t(i) + 1][s][c];
                    for (size_t t = 0; t < ucell.size(); ++t) {
                        Coeffs prod = alg.mul_elems(unit_at(alg, ucell[t]), dfull);
                        for (size_t k = 0; k < d; ++k)
                            a.at(row0 + k, off + t) =
                                alg.fp.add(a.at(row0 + k, off + t), prod[k]);
                    }
                }
                for (size_t t = 0; t < y.mults[i].size(); ++t) {
                    const auto& dcell = hom_cell(alg, y.mults[i][t], y.mults[size_t(i) + 1][c]);
                    if (dcell.empty() || all_zero(y.diffs[i][t][c])) continue;
                    Coeffs dfull = cell_to_full(alg, dcell, y.diffs[i][t][c]);
                    const auto& ucell = hom_cell(alg, x.mults[i][r], y.mults[i][t]);
                    size_t off = st.off[i][r][t];
                    for (size_t u = 0; u < ucell.size(); ++u) {
                        Coeffs prod = alg.mul_elems(dfull, unit_at(alg, ucell[u]));
                        for (size_t k = 0; k < d; ++k)
                            a.at(row0 + k, off + u) =
                                alg.fp.sub(a.at(row0 + k, off + u), prod[k]);
                    }
                }
                row0 += d;
            }
    Mat ker = kernel_basis(a);
    std::vector<ChainMap> out;
    for (size_t i = 0; i < ker.rows; ++i) out.push_back(unpack_map(alg, x, y, st, ker, i));
    return out;
}

std::vector<ChainMap> homotopies(const Algebra& alg, const ProjComplex& x, const ProjComplex& y) {
    require(x.m == y.m, "homotopies need matching windows");
    require_shape(alg, x, "homotopies");
    require_shape(alg, y, "homotopies");
    SlotTable st = map_slots(alg, x, y);
    if (st.total == 0) return {};
    // One assembly row per coordinate of the homotopy data h_i : X_i -> Y_{i-1}.
    size_t nrows = 0;
    for (int i = 1; i <= x.m; ++i)
        for (size_t r = 0; r < x.mults[i].size(); ++r)
            for (size_t c = 0; c < y.mults[size_t(i) - 1].size(); ++c)
                nrows += hom_cell(alg, x.mults[i][r], y.mults[size_t(i) - 1][c]).size();
    if (nrows == 0) return {};
    Mat a(nrows, st.total, alg.fp);
    size_t vrow = 0;
    for (int i = 1; i <= x.m; ++i)
        for (size_t r = 0; r < x.mults[i].size(); ++r)
            for (size_t c = 0; c < y.mults[size_t(i) - 1].size(); ++c) {
                const auto& hcell = hom_cell(alg, x.mults[i][r], y.mults[size_t(i) - 1][c]);
                for (size_t t = 0; t < hcell.size(); ++t) {
                    Coeffs qv = unit_at(alg, hcell[t]);
                    // d_Y then h lands in f_i at blocks (r, c2).
                    for (size_t c2 = 0; c2 < y.mults[i].size(); ++c2) {
                        const auto& dcell =
                            hom_cell(alg, y.mults[size_t(i) - 1][c], y.mults[i][c2]);
                        if (dcell.empty() || all_zero(y.diffs[size_t(i) - 1][c][c2])) continue;
                        Coeffs dfull = cell_to_full(alg, dcell, y.diffs[size_t(i) - 1][c][c2]);
                        Coeffs prod = alg.mul_elems(dfull, qv);
                        const auto& fcell = hom_cell(alg, x.mults[i][r], y.mults[i][c2]);
                        Coeffs cf = full_to_cell(alg, fcell, prod);
                        size_t off = st.off[i][r][c2];
                        for (size_t k = 0; k < cf.size(); ++k)
                            a.at(vrow, off + k) = alg.fp.add(a.at(vrow, off + k), cf[k]);
                    }
                    // h then d_X lands in f_{i-1} at blocks (r2, c).
                    for (size_t r2 = 0; r2 < x.mults[size_t(i) - 1].size(); ++r2) {
                        const auto& dcell =
                            hom_cell(alg, x.mults[size_t(i) - 1][r2], x.mults[i][r]);
                        if (dcell.empty() || all_zero(x.diffs[size_t(i) - 1][r2][r])) continue;
                        Coeffs dfull = cell_to_full(alg, dcell, x.diffs[size_t(i) - 1][r2][r]);
                        Coeffs prod = alg.mul_elems(qv, dfull);
                        const auto& fcell =
                            hom_cell(alg, x.mults[size_t(i) - 1][r2], y.mults[size_t(i) - 1][c]);
                        Coeffs cf = full_to_cell(alg, fcell, prod);
                        size_t off = st.off[size_t(i) - 1][r2][c];
                        for (size_t k = 0; k < cf.size(); ++k)
                            a.at(vrow, off + k) = alg.fp.add(a.at(vrow, off + k), cf[k]);
                    }
                    ++vrow;
                }
            }
    Mat rows = row_space_basis(a);
    std::vector<ChainMap> out;
    for (size_t i = 0; i < rows.rows; ++i) out.push_back(unpack_map(alg, x, y, st, rows, i));
    return out;
}

IsoResult is_isomorphic(const Algebra& alg, const ProjComplex& x, const ProjComplex& y,
                        uint64_t seed, IsoMode mode) {
    require(x.m == y.m, "isomorphism test needs matching windows");
    require_shape(alg, x, "is_isomorphic");
    require_shape(alg, y, "is_isomorphic");
    for (int i = 0; i <= x.m; ++i) {
        std::vector<int> xs = x.mults[i], ys = y.mults[i];
        std::sort(xs.begin(), xs.end());
        std::sort(ys.begin(), ys.end());
        if (xs != ys) return {false, true, "summand multiplicities differ", std::nullopt};
    }
    if (cohomology(alg, x).h != cohomology(alg, y).h)
        return {false, true, "cohomology dimensions differ", std::nullopt};

    std::vector<ChainMap> basis = chain_maps(alg, x, y);
    size_t h = basis.size();

    // Scalar blocks: per degree and vertex, the matrix of identity-path
    // coefficients between same-vertex summands. A chain map is an
    // isomorphism iff all of them are invertible.
    struct SB {
        int deg;
        std::vector<size_t> xs, ys;
        size_t tpos_cached = 0;
    };
    std::vector<SB> sbs;
    const Quiver& q = alg.pres.quiver;
    for (int i = 0; i <= x.m; ++i)
        for (int v : q.vertices) {
            SB sb;
            sb.deg = i;
            for (size_t r = 0; r < x.mults[i].size(); ++r)
                if (x.mults[i][r] == v) sb.xs.push_back(r);
            for (size_t c = 0; c < y.mults[i].size(); ++c)
                if (y.mults[i][c] == v) sb.ys.push_back(c);
            if (sb.xs.empty() && sb.ys.empty()) continue;
            ensure(sb.xs.size() == sb.ys.size(), "multiplicity reject missed a mismatch");
            sb.tpos_cached = trivial_pos(alg, hom_cell(alg, v, v), v);
            sbs.push_back(std::move(sb));
        }

    // Per basis element, the scalar blocks, so candidates evaluate cheaply.
    std::vector<std::vector<Mat>> sval(h);
    for (size_t k = 0; k < h; ++k)
        for (const SB& sb : sbs) {
            Mat m(sb.xs.size(), sb.ys.size(), alg.fp);
            for (size_t a = 0; a < sb.xs.size(); ++a)
                for (size_t b = 0; b < sb.ys.size(); ++b)
                    m.at(a, b) = basis[k].blocks[sb.deg][sb.xs[a]][sb.ys[b]][sb.tpos_cached];
            sval[k].push_back(std::move(m));
        }

    auto invertible_candidate = [&](const Coeffs& cand) {
        for (size_t bi = 0; bi < sbs.size(); ++bi) {
            Mat s(sbs[bi].xs.size(), sbs[bi].ys.size(), alg.fp);
            for (size_t k = 0; k < h; ++k) {
                if (cand[k] == 0) continue;
                for (size_t t = 0; t < s.a.size(); ++t)
                    s.a[t] = alg.fp.add(s.a[t], alg.fp.mul(cand[k], sval[k][bi].a[t]));
            }
            if (!is_invertible(s)) return false;
        }
        return true;
    };

    auto accept = [&](const Coeffs& cand, const std::string& note) {
        IsoResult res;
        res.isomorphic = true;
        res.certain = true;
        res.note = note;
        res.witness = combine_maps(alg, x, y, basis, cand);
        return res;
    };

    // Invertibility depends only on the scalar blocks, so the exhaustive
    // search enumerates the candidate space's image under the projection
    // onto scalar-block entries; its rank is usually far below h.
    size_t cdim = 0;
    for (const SB& sb : sbs) cdim += sb.xs.size() * sb.ys.size();
    Mat proj(h, cdim, alg.fp);
    for (size_t k = 0; k < h; ++k) {
        size_t off = 0;
        for (size_t bi = 0; bi < sbs.size(); ++bi) {
            for (size_t t = 0; t < sval[k][bi].a.size(); ++t)
                proj.at(k, off + t) = sval[k][bi].a[t];
            off += sval[k][bi].a.size();
        }
    }
    Mat img = row_space_basis(proj);
    size_t r = img.rows;

    auto point_invertible = [&](const std::vector<fel>& point) {
        size_t off = 0;
        for (const SB& sb : sbs) {
            Mat s(sb.xs.size(), sb.ys.size(), alg.fp);
            for (size_t t = 0; t < s.a.size(); ++t) s.a[t] = point[off + t];
            off += s.a.size();
            if (!is_invertible(s)) return false;
        }
        return true;
    };

    bool exhaust = mode == IsoMode::exhaustive ||
                   (mode == IsoMode::automatic && fits_budget(alg.fp.modulus(), r, kSearchBudget));
    if (exhaust) {
        if (!fits_budget(alg.fp.modulus(), r, kSearchBudget))
            throw budget_error("exhaustive isomorphism search would scan p^" +
                               std::to_string(r) + " scalar-block images");
        std::vector<fel> point(cdim, 0);
        Coeffs combo(r, 0);
        for (;;) {
            if (point_invertible(point)) {
                std::optional<Coeffs> cand = coords_in_rows(proj, point, alg.fp);
                ensure(cand.has_value(), "scalar image point failed to lift to a chain map");
                return accept(*cand, "exhaustive search over the scalar-block image");
            }
            size_t k = 0;
            while (k < r) {
                combo[k] = fel(combo[k] + 1);
                if (combo[k] < alg.fp.modulus()) break;
                combo[k] = 0;
                ++k;
            }
            if (k == r) break;
            for (size_t t = 0; t < cdim; ++t) {
                fel acc = 0;
                for (size_t k2 = 0; k2 < r; ++k2)
                    acc = alg.fp.add(acc, alg.fp.mul(combo[k2], img.at(k2, t)));
                point[t] = acc;
            }
        }
        return {false, true, "no degreewise invertible chain map exists", std::nullopt};
    }
    Rng rng(seed ^ 0x15011B0Cull);
    for (int trial = 0; trial < 64; ++trial) {
        Coeffs cand(h);
        for (size_t k = 0; k < h; ++k) cand[k] = rng.field_elem(alg.fp);
        if (invertible_candidate(cand)) return accept(cand, "random search over the chain map space");
    }
    return {false, false, "random search (64 trials) found no isomorphism; treating as non-isomorphic",
            std::nullopt};
}

IndecResult is_indecomposable(const Algebra& alg, const ProjComplex& x, uint64_t seed) {
    require_shape(alg, x, "is_indecomposable");
    size_t summands = 0;
    for (const auto& mv : x.mults) summands += mv.size();
    if (summands == 0) return {false, true, "zero complex"};

    std::vector<ChainMap> cm = chain_maps(alg, x, x);
    ensure(!cm.empty(), "endomorphism algebra lost its identity");
    std::vector<DegreeSpace> sp;
    size_t total = 0;
    std::vector<size_t> deg_off;
    for (int i = 0; i <= x.m; ++i) {
        sp.push_back(degree_space(alg, x.mults[i]));
        deg_off.push_back(total);
        total += sp.back().total;
    }
    std::vector<Mat> mats;
    for (const ChainMap& f : cm) {
        Mat m(total, total, alg.fp);
        for (int i = 0; i <= x.m; ++i) {
            Mat b = blocks_matrix(alg, f.blocks[i], x.mults[i], x.mults[i], sp[i], sp[i]);
            for (size_t r = 0; r < b.rows; ++r)
                for (size_t c = 0; c < b.cols; ++c)
                    m.at(deg_off[i] + r, deg_off[i] + c) = b.at(r, c);
        }
        mats.push_back(std::move(m));
    }
    LocalVerdict lv = is_local_algebra(alg.fp, mats, seed);
    return {lv.local, lv.certain, lv.method};
}

std::vector<long long> check_dim_bound(const Algebra& alg, const ProjComplex& x) {
    if (auto err = validate(alg, x)) throw input_error("check_dim_bound: " + *err);
    CohomologyProfile p = cohomology(alg, x);
    unsigned long long d = alg.dim();
    std::vector<long long> slack(size_t(x.m) + 1, 0);
    for (int i = 0; i <= x.m; ++i) {
        unsigned long long bound = sat_mul(p.hl, geom_sum(d, x.m - i + 1));
        unsigned long long have = degree_dim(alg, x, i);
        ensure(have <= bound, "minimal complex exceeds the cohomology dimension bound");
        unsigned long long gap = bound - have;
        slack[i] = gap > (unsigned long long)LLONG_MAX ? LLONG_MAX : (long long)gap;
    }
    return slack;
}

Sandwich hr_dim_sandwich(const Algebra& alg, const ProjComplex& x) {
    if (auto err = validate(alg, x)) throw input_error("hr_dim_sandwich: " + *err);
    CohomologyProfile p = cohomology(alg, x);
    if (p.hr == 0) {
        require(p.dim != 0, "sandwich bounds are undefined for the zero complex");
        ensure(false, "acyclic minimal complex must be zero");
    }
    unsigned long long m1 = (unsigned long long)(x.m) + 1;
    unsigned long long n = sat_mul(m1, geom_sum(alg.dim(), x.m + 1));
    ensure(p.hr <= sat_mul(m1, p.dim), "cohomology range exceeds (m+1) dim");
    Sandwich s;
    s.lower = double(p.hr) / double(m1);
    s.dim = p.dim;
    s.upper = sat_mul(n, p.hr);
    ensure(p.dim <= s.upper, "dim exceeds N times the cohomology range");
    return s;
}

}  // namespace derange

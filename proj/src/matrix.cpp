#include "derange/matrix.hpp"

#include <algorithm>

namespace derange {

Mat identity(size_t n, Fp fp) {
    Mat m(n, n, fp);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1 % fp.modulus();
    return m;
}

Mat transpose(const Mat& m) {
    Mat t(m.cols, m.rows, m.fp);
    for (size_t i = 0; i < m.rows; ++i)
        for (size_t j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
    return t;
}

Mat mul(const Mat& x, const Mat& y) {
    ensure(x.cols == y.rows && x.fp.modulus() == y.fp.modulus(), "mul: shape/field mismatch");
    const Fp fp = x.fp;
    const uint64_t p = fp.modulus();
    Mat r(x.rows, y.cols, fp);
    for (size_t i = 0; i < x.rows; ++i)
        for (size_t k = 0; k < x.cols; ++k) {
            uint64_t v = x.at(i, k);
            if (!v) continue;
            for (size_t j = 0; j < y.cols; ++j)
                r.at(i, j) = static_cast<fel>((r.at(i, j) + v * y.at(k, j)) % p);
        }
    return r;
}

Mat add(const Mat& x, const Mat& y) {
    ensure(x.rows == y.rows && x.cols == y.cols, "add: shape mismatch");
    Mat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.fp.add(x.a[i], y.a[i]);
    return r;
}

Mat sub(const Mat& x, const Mat& y) {
    ensure(x.rows == y.rows && x.cols == y.cols, "sub: shape mismatch");
    Mat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.fp.sub(x.a[i], y.a[i]);
    return r;
}

Mat scale(const Mat& x, fel c) {
    Mat r = x;
    for (auto& v : r.a) v = x.fp.mul(v, c);
    return r;
}

Mat hstack(const Mat& x, const Mat& y) {
    ensure(x.rows == y.rows, "hstack: row mismatch");
    Mat r(x.rows, x.cols + y.cols, x.fp);
    for (size_t i = 0; i < x.rows; ++i) {
        for (size_t j = 0; j < x.cols; ++j) r.at(i, j) = x.at(i, j);
        for (size_t j = 0; j < y.cols; ++j) r.at(i, x.cols + j) = y.at(i, j);
    }
    return r;
}

Mat vstack(const Mat& x, const Mat& y) {
    ensure(x.cols == y.cols, "vstack: col mismatch");
    Mat r(x.rows + y.rows, x.cols, x.fp);
    std::copy(x.a.begin(), x.a.end(), r.a.begin());
    std::copy(y.a.begin(), y.a.end(), r.a.begin() + static_cast<long>(x.a.size()));
    return r;
}

Mat take_rows(const Mat& m, const std::vector<size_t>& idx) {
    Mat r(idx.size(), m.cols, m.fp);
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j < m.cols; ++j) r.at(i, j) = m.at(idx[i], j);
    return r;
}

RrefResult rref(const Mat& m) {
    RrefResult res{m, {}, 0};
    Mat& r = res.r;
    const Fp fp = m.fp;
    size_t row = 0;
    for (size_t col = 0; col < r.cols && row < r.rows; ++col) {
        size_t piv = row;
        while (piv < r.rows && r.at(piv, col) == 0) ++piv;
        if (piv == r.rows) continue;
        if (piv != row)
            for (size_t j = 0; j < r.cols; ++j) std::swap(r.at(piv, j), r.at(row, j));
        fel inv = fp.inv(r.at(row, col));
        for (size_t j = col; j < r.cols; ++j) r.at(row, j) = fp.mul(r.at(row, j), inv);
        for (size_t i = 0; i < r.rows; ++i) {
            if (i == row || r.at(i, col) == 0) continue;
            fel f = r.at(i, col);
            for (size_t j = col; j < r.cols; ++j)
                r.at(i, j) = fp.sub(r.at(i, j), fp.mul(f, r.at(row, j)));
        }
        res.pivots.push_back(col);
        ++row;
    }
    res.rank = row;
    return res;
}

size_t rank(const Mat& m) { return rref(m).rank; }
size_t image_dim(const Mat& m) { return rank(m); }
size_t kernel_dim(const Mat& m) { return m.cols - rank(m); }

Mat kernel_basis(const Mat& m) {
    RrefResult rr = rref(m);
    std::vector<char> is_pivot(m.cols, 0);
    for (size_t c : rr.pivots) is_pivot[c] = 1;
    std::vector<size_t> free_cols;
    for (size_t c = 0; c < m.cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Mat k(free_cols.size(), m.cols, m.fp);
    for (size_t i = 0; i < free_cols.size(); ++i) {
        size_t fc = free_cols[i];
        k.at(i, fc) = 1 % m.fp.modulus();
        for (size_t prow = 0; prow < rr.pivots.size(); ++prow)
            k.at(i, rr.pivots[prow]) = m.fp.neg(rr.r.at(prow, fc));
    }
    return k;
}

Mat left_kernel_basis(const Mat& m) { return kernel_basis(transpose(m)); }

Mat row_space_basis(const Mat& m) {
    RrefResult rr = rref(m);
    Mat b(rr.rank, m.cols, m.fp);
    for (size_t i = 0; i < rr.rank; ++i)
        for (size_t j = 0; j < m.cols; ++j) b.at(i, j) = rr.r.at(i, j);
    return b;
}

Mat row_space_complement(const Mat& m) {
    RrefResult rr = rref(m);
    std::vector<char> is_pivot(m.cols, 0);
    for (size_t c : rr.pivots) is_pivot[c] = 1;
    Mat c(m.cols - rr.rank, m.cols, m.fp);
    size_t row = 0;
    for (size_t j = 0; j < m.cols; ++j)
        if (!is_pivot[j]) c.at(row++, j) = 1 % m.fp.modulus();
    return c;
}

SolveResult solve(const Mat& a, const Mat& b) {
    ensure(a.rows == b.rows, "solve: rhs row mismatch");
    SolveResult out;
    RrefResult rr = rref(hstack(a, b));
    // Inconsistent iff some pivot lands in the rhs block.
    for (size_t c : rr.pivots)
        if (c >= a.cols) {
            out.consistent = false;
            out.kernel = kernel_basis(a);
            return out;
        }
    out.consistent = true;
    out.particular = Mat(a.cols, b.cols, a.fp);
    for (size_t prow = 0; prow < rr.pivots.size(); ++prow)
        for (size_t j = 0; j < b.cols; ++j)
            out.particular.at(rr.pivots[prow], j) = rr.r.at(prow, a.cols + j);
    out.kernel = kernel_basis(a);
    return out;
}

std::optional<Mat> inverse(const Mat& m) {
    if (m.rows != m.cols) return std::nullopt;
    RrefResult rr = rref(hstack(m, identity(m.rows, m.fp)));
    // [M|I] always has full row rank; M is invertible iff every pivot lands in the M block.
    if (rr.rank != m.rows) return std::nullopt;
    if (!rr.pivots.empty() && rr.pivots.back() >= m.cols) return std::nullopt;
    Mat inv(m.rows, m.cols, m.fp);
    for (size_t i = 0; i < m.rows; ++i)
        for (size_t j = 0; j < m.cols; ++j) inv.at(i, j) = rr.r.at(i, m.cols + j);
    return inv;
}

bool is_invertible(const Mat& m) { return m.rows == m.cols && rank(m) == m.rows; }

std::optional<std::vector<fel>> coords_in_rows(const Mat& basis, const std::vector<fel>& v, Fp fp) {
    ensure(v.size() == basis.cols, "coords_in_rows: length mismatch");
    Mat rhs(v.size(), 1, fp);
    for (size_t i = 0; i < v.size(); ++i) rhs.at(i, 0) = v[i];
    SolveResult s = solve(transpose(basis), rhs);
    if (!s.consistent) return std::nullopt;
    std::vector<fel> x(basis.rows);
    for (size_t i = 0; i < basis.rows; ++i) x[i] = s.particular.at(i, 0);
    return x;
}

bool in_row_space(const RrefResult& rr, std::vector<fel> v, Fp fp) {
    ensure(v.size() == rr.r.cols, "in_row_space: length mismatch");
    for (size_t i = 0; i < rr.rank; ++i) {
        fel c = v[rr.pivots[i]];
        if (c == 0) continue;
        for (size_t j = 0; j < v.size(); ++j) v[j] = fp.sub(v[j], fp.mul(c, rr.r.at(i, j)));
    }
    for (fel x : v)
        if (x != 0) return false;
    return true;
}

} // namespace derange

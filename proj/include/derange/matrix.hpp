#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "derange/field.hpp"

namespace derange {

// Dense matrix over F_p, row major. Kept deliberately small: every instance in
// this workbench is desk scale, so there is no sparsity or blocking.
//
// Convention for the core solver API: a Mat A acts on column vectors, so the
// domain has dimension cols and kernel_dim(A) + image_dim(A) == cols.
// Higher layers that prefer row-vector maps use left_kernel / row helpers.
struct Mat {
    size_t rows = 0;
    size_t cols = 0;
    Fp fp;
    std::vector<fel> a;

    Mat() = default;
    Mat(size_t r, size_t c, Fp f) : rows(r), cols(c), fp(f), a(r * c, 0) {}

    fel& at(size_t i, size_t j) { return a[i * cols + j]; }
    fel at(size_t i, size_t j) const { return a[i * cols + j]; }

    bool operator==(const Mat& o) const {
        return rows == o.rows && cols == o.cols && fp.modulus() == o.fp.modulus() && a == o.a;
    }
};

Mat identity(size_t n, Fp fp);
Mat transpose(const Mat& m);
Mat mul(const Mat& x, const Mat& y);
Mat add(const Mat& x, const Mat& y);
Mat sub(const Mat& x, const Mat& y);
Mat scale(const Mat& x, fel c);
Mat hstack(const Mat& x, const Mat& y);
Mat vstack(const Mat& x, const Mat& y);
// Rows `idx` of m, in the given order.
Mat take_rows(const Mat& m, const std::vector<size_t>& idx);

struct RrefResult {
    Mat r;
    std::vector<size_t> pivots; // pivot column per pivot row
    size_t rank = 0;
};

RrefResult rref(const Mat& m);
size_t rank(const Mat& m);
size_t image_dim(const Mat& m);  // rank
size_t kernel_dim(const Mat& m); // cols - rank

// Basis of {x : A x = 0}, one vector per row of the result.
Mat kernel_basis(const Mat& m);
// Basis of {x : x A = 0}, one vector per row.
Mat left_kernel_basis(const Mat& m);
// Basis of the row space, one vector per row (rref rows).
Mat row_space_basis(const Mat& m);
// Unit vectors extending row_space_basis(m) to all of F^cols.
Mat row_space_complement(const Mat& m);

struct SolveResult {
    bool consistent = false;
    Mat particular; // cols(A) x cols(B); column j solves A x = B[:,j]
    Mat kernel;     // kernel_basis(A)
};

// Exact solve of A X = B (per column of B).
SolveResult solve(const Mat& a, const Mat& b);

std::optional<Mat> inverse(const Mat& m);
bool is_invertible(const Mat& m);

// Coordinates of row vector v in the row basis `basis` (rows independent),
// i.e. x with x basis = v; nullopt if v is outside the span.
std::optional<std::vector<fel>> coords_in_rows(const Mat& basis, const std::vector<fel>& v, Fp fp);

// Membership of a row vector in the row space of an already reduced matrix.
// Cheaper than coords_in_rows: one reduction sweep against the rref rows.
bool in_row_space(const RrefResult& rr, std::vector<fel> v, Fp fp);

} // namespace derange

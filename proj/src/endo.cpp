#include <algorithm>
#include <utility>

#include "derange/complex.hpp"
#include "derange/error.hpp"
#include "derange/rng.hpp"

namespace derange {

namespace {

using Coeffs = std::vector<fel>;

// Structure constants of a matrix algebra span: t[i][j] = coords of b_i b_j.
struct Endo {
    Fp fp;
    size_t e = 0;
    std::vector<std::vector<Coeffs>> t;
    Coeffs id;
};

Coeffs eunit(size_t e, size_t k) {
    Coeffs v(e, 0);
    v[k] = 1;
    return v;
}

Coeffs emul(const Endo& a, const Coeffs& x, const Coeffs& y) {
    Coeffs out(a.e, 0);
    for (size_t i = 0; i < a.e; ++i) {
        if (x[i] == 0) continue;
        for (size_t j = 0; j < a.e; ++j) {
            if (y[j] == 0) continue;
            fel c = a.fp.mul(x[i], y[j]);
            const Coeffs& tij = a.t[i][j];
            for (size_t k = 0; k < a.e; ++k) out[k] = a.fp.add(out[k], a.fp.mul(c, tij[k]));
        }
    }
    return out;
}

Coeffs epow(const Endo& a, Coeffs x, uint64_t n) {
    Coeffs acc = a.id;
    while (n) {
        if (n & 1) acc = emul(a, acc, x);
        x = emul(a, x, x);
        n >>= 1;
    }
    return acc;
}

bool ecomm(const Endo& a) {
    for (size_t i = 0; i < a.e; ++i)
        for (size_t j = i + 1; j < a.e; ++j)
            if (a.t[i][j] != a.t[j][i]) return false;
    return true;
}

// Matrix of y -> x y in the given structure constants, row convention.
Mat left_mult(const Endo& a, const Coeffs& x) {
    Mat l(a.e, a.e, a.fp);
    for (size_t j = 0; j < a.e; ++j) {
        Coeffs row = emul(a, x, eunit(a.e, j));
        for (size_t k = 0; k < a.e; ++k) l.at(j, k) = row[k];
    }
    return l;
}

Endo make_endo(Fp fp, const std::vector<Mat>& basis) {
    Endo a;
    a.fp = fp;
    a.e = basis.size();
    size_t n = basis[0].rows;
    Mat flat(a.e, n * n, fp);
    for (size_t i = 0; i < a.e; ++i) {
        ensure(basis[i].rows == n && basis[i].cols == n, "endomorphism basis is not square");
        for (size_t k = 0; k < n * n; ++k) flat.at(i, k) = basis[i].a[k];
    }
    ensure(rank(flat) == a.e, "endomorphism basis is dependent");
    a.t.resize(a.e);
    for (size_t i = 0; i < a.e; ++i) {
        a.t[i].resize(a.e);
        for (size_t j = 0; j < a.e; ++j) {
            auto c = coords_in_rows(flat, mul(basis[i], basis[j]).a, fp);
            ensure(c.has_value(), "endomorphism span is not closed under composition");
            a.t[i][j] = std::move(*c);
        }
    }
    auto idc = coords_in_rows(flat, identity(n, fp).a, fp);
    ensure(idc.has_value(), "endomorphism span misses the identity");
    a.id = std::move(*idc);
    return a;
}

// Count of simple factors of a commutative SEMISIMPLE algebra over F_p:
// the fixed space of Frobenius has one dimension per field factor.
size_t field_factors(const Endo& a) {
    Mat f(a.e, a.e, a.fp);
    for (size_t i = 0; i < a.e; ++i) {
        Coeffs row = epow(a, eunit(a.e, i), a.fp.modulus());
        for (size_t k = 0; k < a.e; ++k) f.at(i, k) = row[k];
    }
    return a.e - rank(sub(f, identity(a.e, a.fp)));
}

// Quotient of an Endo by the span of `rad` rows: new structure constants on
// the unit-vector complement.
Endo quotient_endo(const Endo& a, const Mat& rad, const Mat& comp) {
    Mat full = vstack(rad, comp);
    auto proj = [&](const Coeffs& x) {
        auto c = coords_in_rows(full, x, a.fp);
        ensure(c.has_value(), "quotient projection failed");
        return Coeffs(c->begin() + long(rad.rows), c->end());
    };
    Endo q;
    q.fp = a.fp;
    q.e = comp.rows;
    q.t.resize(q.e);
    std::vector<Coeffs> reps(q.e);
    for (size_t i = 0; i < q.e; ++i) {
        reps[i].assign(comp.a.begin() + long(i * comp.cols), comp.a.begin() + long((i + 1) * comp.cols));
    }
    for (size_t i = 0; i < q.e; ++i) {
        q.t[i].resize(q.e);
        for (size_t j = 0; j < q.e; ++j) q.t[i][j] = proj(emul(a, reps[i], reps[j]));
    }
    q.id = proj(a.id);
    return q;
}

constexpr unsigned long long kScanCandidates = 1ull << 20;
constexpr unsigned long long kScanWork = 1ull << 27;

bool scan_fits(uint64_t p, size_t e) {
    unsigned long long count = 1;
    for (size_t i = 0; i < e; ++i) {
        count *= p;
        if (count > kScanCandidates) return false;
    }
    unsigned long long cube = (unsigned long long)e * e * e;
    return count <= kScanCandidates && count * cube <= kScanWork;
}

}  // namespace

LocalVerdict is_local_algebra(Fp fp, const std::vector<Mat>& basis, uint64_t seed) {
    ensure(!basis.empty(), "empty endomorphism algebra");
    if (basis.size() == 1) return {true, true, "dimension one"};
    Endo a = make_endo(fp, basis);

    if (ecomm(a)) {
        // Nilradical = kernel of an iterated Frobenius, then count the field
        // factors of the semisimple quotient.
        size_t m = 0;
        unsigned long long pm = 1;
        while (pm < a.e) {
            pm *= fp.modulus();
            ++m;
        }
        Mat f(a.e, a.e, fp);
        for (size_t i = 0; i < a.e; ++i) {
            Coeffs row = epow(a, eunit(a.e, i), fp.modulus());
            for (size_t k = 0; k < a.e; ++k) f.at(i, k) = row[k];
        }
        Mat fm = identity(a.e, fp);
        for (size_t s = 0; s < std::max<size_t>(m, 1); ++s) fm = mul(fm, f);
        Mat nil = left_kernel_basis(fm);
        ensure(nil.rows < a.e, "unital algebra cannot be nilpotent");
        Mat comp = row_space_complement(nil);
        Endo q = quotient_endo(a, nil, comp);
        size_t factors = field_factors(q);
        ensure(factors >= 1, "semisimple quotient lost its factors");
        return {factors == 1, true, "commutative spectrum"};
    }

    if (scan_fits(fp.modulus(), a.e)) {
        Coeffs x(a.e, 0);
        for (;;) {
            size_t k = 0;
            while (k < a.e) {
                x[k] = fel(x[k] + 1);
                if (x[k] < fp.modulus()) break;
                x[k] = 0;
                ++k;
            }
            if (k == a.e) break;
            if (x == a.id) continue;
            if (emul(a, x, x) == x) return {false, true, "nontrivial idempotent"};
        }
        return {true, true, "idempotent scan"};
    }

    if (fp.modulus() > a.e) {
        // Trace-form radical equals the Jacobson radical once p exceeds the
        // dimension; inspect the semisimple quotient.
        Coeffs tau(a.e, 0);
        for (size_t i = 0; i < a.e; ++i) {
            fel s = 0;
            for (size_t j = 0; j < a.e; ++j) s = fp.add(s, a.t[i][j][j]);
            tau[i] = s;
        }
        Mat g(a.e, a.e, fp);
        for (size_t i = 0; i < a.e; ++i)
            for (size_t j = 0; j < a.e; ++j) {
                fel s = 0;
                for (size_t k = 0; k < a.e; ++k) s = fp.add(s, fp.mul(a.t[i][j][k], tau[k]));
                g.at(i, j) = s;
            }
        Mat rad = left_kernel_basis(g);
        ensure(rad.rows < a.e, "trace form degenerated on a unital algebra");
        Mat comp = row_space_complement(rad);
        if (comp.rows == 1) return {true, true, "radical corank one"};
        Endo q = quotient_endo(a, rad, comp);
        if (!ecomm(q)) return {false, true, "noncommutative semisimple quotient"};
        size_t factors = field_factors(q);
        ensure(factors >= 1, "semisimple quotient lost its factors");
        return {factors == 1, true, "semisimple quotient spectrum"};
    }

    // Las Vegas fallback: a local algebra has every element invertible or
    // nilpotent; a sampled counterexample is a certificate, silence is not.
    Rng rng(seed ^ 0x1D10CA1Aull);
    for (int trial = 0; trial < 256; ++trial) {
        Coeffs x(a.e);
        for (size_t k = 0; k < a.e; ++k) x[k] = rng.field_elem(fp);
        Mat l = left_mult(a, x);
        if (rank(l) == a.e) continue;
        Mat p = l;
        for (size_t s = 1; s < a.e; s <<= 1) p = mul(p, p);
        if (rank(p) > 0) return {false, true, "invertible-or-nilpotent witness"};
    }
    return {true, false, "invertible-or-nilpotent sampling (256 trials)"};
}

}  // namespace derange

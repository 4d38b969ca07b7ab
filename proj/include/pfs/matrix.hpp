#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "field.hpp"

namespace pfs {

using Vec = std::vector<Elt>;

// y += c * x
inline void axpy(const Field& F, Elt c, const Elt* x, Elt* y, std::size_t n) {
    if (c == 0) return;
    const Elt* m = F.mul_row(c);
    if (F.char2() && F.k == 1) {
        for (std::size_t j = 0; j < n; ++j) y[j] ^= x[j];
        return;
    }
    if (F.char2()) {
        for (std::size_t j = 0; j < n; ++j) y[j] ^= m[x[j]];
        return;
    }
    for (std::size_t j = 0; j < n; ++j) y[j] = F.add(y[j], m[x[j]]);
}

inline void axpy(const Field& F, Elt c, const Vec& x, Vec& y) { axpy(F, c, x.data(), y.data(), x.size()); }

inline bool is_zero(const Vec& v) {
    for (Elt e : v)
        if (e) return false;
    return true;
}

inline Vec scaled(const Field& F, Elt c, const Vec& v) {
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = F.mul(c, v[i]);
    return r;
}

inline Vec added(const Field& F, const Vec& a, const Vec& b) {
    Vec r(a);
    axpy(F, 1, b, r);
    return r;
}

inline Vec subtracted(const Field& F, const Vec& a, const Vec& b) {
    Vec r(a);
    axpy(F, F.neg(1), b, r);
    return r;
}

class Matrix {
public:
    FieldPtr F;
    std::size_t rows = 0, cols = 0;
    std::vector<Elt> a;

    Matrix() = default;
    Matrix(FieldPtr f, std::size_t r, std::size_t c) : F(std::move(f)), rows(r), cols(c), a(r * c, 0) {}

    static Matrix identity(FieldPtr f, std::size_t n) {
        Matrix m(std::move(f), n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static Matrix from_rows(FieldPtr f, const std::vector<Vec>& rs, std::size_t ncols) {
        Matrix m(std::move(f), rs.size(), ncols);
        for (std::size_t i = 0; i < rs.size(); ++i) {
            if (rs[i].size() != ncols) throw InputError("row length mismatch");
            std::copy(rs[i].begin(), rs[i].end(), m.row(i));
        }
        return m;
    }

    Elt& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    Elt operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    Elt* row(std::size_t i) { return a.data() + i * cols; }
    const Elt* row(std::size_t i) const { return a.data() + i * cols; }
    Vec row_vec(std::size_t i) const { return Vec(row(i), row(i) + cols); }
    Vec col_vec(std::size_t j) const {
        Vec v(rows);
        for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
        return v;
    }
    void append_row(const Vec& v) {
        if (rows == 0 && cols == 0) cols = v.size();
        if (v.size() != cols) throw InputError("row length mismatch");
        a.insert(a.end(), v.begin(), v.end());
        ++rows;
    }

    Matrix transpose() const {
        Matrix t(F, cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix& b) const {
        if (cols != b.rows) throw InputError("matrix product dimension mismatch");
        Matrix c(F, rows, b.cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t l = 0; l < cols; ++l) {
                Elt x = (*this)(i, l);
                if (x) axpy(*F, x, b.row(l), c.row(i), b.cols);
            }
        return c;
    }

    Vec apply(const Vec& v) const {
        if (v.size() != cols) throw InputError("matrix-vector dimension mismatch");
        Vec r(rows, 0);
        // column-oriented so that zero entries of v are skipped
        for (std::size_t j = 0; j < cols; ++j) {
            if (!v[j]) continue;
            const Elt* m = F->mul_row(v[j]);
            for (std::size_t i = 0; i < rows; ++i) {
                Elt x = (*this)(i, j);
                if (x) r[i] = F->add(r[i], m[x]);
            }
        }
        return r;
    }

    Matrix operator+(const Matrix& b) const {
        Matrix c(*this);
        axpy(*F, 1, b.a.data(), c.a.data(), a.size());
        return c;
    }
    Matrix operator-(const Matrix& b) const {
        Matrix c(*this);
        axpy(*F, F->neg(1), b.a.data(), c.a.data(), a.size());
        return c;
    }

    bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    bool is_zero() const {
        for (Elt e : a)
            if (e) return false;
        return true;
    }
};

struct RrefResult {
    Matrix R;  // same shape as the input
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

// Gauss-Jordan elimination, first nonzero entry in each column as pivot.
inline RrefResult rref(Matrix M) {
    const Field& F = *M.F;
    RrefResult res;
    std::size_t r = 0;
    for (std::size_t c = 0; c < M.cols && r < M.rows; ++c) {
        std::size_t piv = r;
        while (piv < M.rows && M(piv, c) == 0) ++piv;
        if (piv == M.rows) continue;
        if (piv != r)
            std::swap_ranges(M.row(piv) + c, M.row(piv) + M.cols, M.row(r) + c);
        Elt s = F.inv(M(r, c));
        if (s != 1) {
            const Elt* m = F.mul_row(s);
            Elt* pr = M.row(r);
            for (std::size_t j = c; j < M.cols; ++j) pr[j] = m[pr[j]];
        }
        for (std::size_t i = 0; i < M.rows; ++i) {
            if (i == r || M(i, c) == 0) continue;
            axpy(F, F.neg(M(i, c)), M.row(r) + c, M.row(i) + c, M.cols - c);
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    res.R = std::move(M);
    return res;
}

inline std::size_t rank(const Matrix& M) { return rref(M).rank; }

// rref with the zero rows dropped
inline Matrix row_basis(const Matrix& M) {
    auto r = rref(M);
    Matrix B(M.F, r.rank, M.cols);
    std::copy(r.R.a.begin(), r.R.a.begin() + static_cast<std::ptrdiff_t>(r.rank * M.cols), B.a.begin());
    return B;
}

// Rows form a basis of {x : M x = 0}.
inline Matrix nullspace(const Matrix& M) {
    const Field& F = *M.F;
    auto r = rref(M);
    std::vector<char> is_piv(M.cols, 0);
    for (auto c : r.pivots) is_piv[c] = 1;
    Matrix N(M.F, M.cols - r.rank, M.cols);
    std::size_t t = 0;
    for (std::size_t f = 0; f < M.cols; ++f) {
        if (is_piv[f]) continue;
        N(t, f) = 1;
        for (std::size_t i = 0; i < r.rank; ++i) N(t, r.pivots[i]) = F.neg(r.R(i, f));
        ++t;
    }
    return N;
}

// Some x with M x = b, or nullopt when the system is inconsistent.
// Mismatched shapes are an input error, not "no solution".
inline std::optional<Vec> solve(const Matrix& M, const Vec& b) {
    if (b.size() != M.rows) throw InputError("solve: right-hand side has wrong length");
    Matrix aug(M.F, M.rows, M.cols + 1);
    for (std::size_t i = 0; i < M.rows; ++i) {
        std::copy(M.row(i), M.row(i) + M.cols, aug.row(i));
        aug(i, M.cols) = b[i];
    }
    auto r = rref(aug);
    if (!r.pivots.empty() && r.pivots.back() == M.cols) return std::nullopt;
    Vec x(M.cols, 0);
    for (std::size_t i = 0; i < r.rank; ++i) x[r.pivots[i]] = r.R(i, M.cols);
    return x;
}

// Basis (rref rows) of the intersection of the row spaces of U and V.
inline Matrix intersect_subspaces(const Matrix& U, const Matrix& V) {
    if (U.cols != V.cols) throw InputError("intersect: ambient dimensions differ");
    Matrix Ub = row_basis(U), Vb = row_basis(V);
    if (Ub.rows == 0 || Vb.rows == 0) return Matrix(U.F, 0, U.cols);
    Matrix W(U.F, Ub.rows + Vb.rows, U.cols);
    std::copy(Ub.a.begin(), Ub.a.end(), W.a.begin());
    std::copy(Vb.a.begin(), Vb.a.end(), W.a.begin() + static_cast<std::ptrdiff_t>(Ub.a.size()));
    Matrix K = nullspace(W.transpose());
    Matrix I(U.F, K.rows, U.cols);
    for (std::size_t t = 0; t < K.rows; ++t)
        for (std::size_t i = 0; i < Ub.rows; ++i)
            axpy(*U.F, K(t, i), Ub.row(i), I.row(t), U.cols);
    return row_basis(I);
}

// A subspace held as rref rows; membership and coordinates read off pivots.
struct Subspace {
    Matrix basis;
    std::vector<std::size_t> pivots;

    Subspace() = default;
    explicit Subspace(const Matrix& spanning) {
        auto r = rref(spanning);
        basis = Matrix(spanning.F, r.rank, spanning.cols);
        std::copy(r.R.a.begin(), r.R.a.begin() + static_cast<std::ptrdiff_t>(r.rank * spanning.cols),
                  basis.a.begin());
        pivots = r.pivots;
    }
    std::size_t dim() const { return basis.rows; }
    std::size_t ambient() const { return basis.cols; }

    // v minus its component along the basis, read off pivots
    Vec reduce(Vec v) const {
        const Field& F = *basis.F;
        for (std::size_t i = 0; i < basis.rows; ++i) {
            Elt c = v[pivots[i]];
            if (c) axpy(F, F.neg(c), basis.row(i), v.data(), v.size());
        }
        return v;
    }
    bool contains(const Vec& v) const { return is_zero(reduce(v)); }
    // coordinates of v (assumed to lie in the subspace)
    Vec coords(const Vec& v) const {
        Vec c(basis.rows);
        for (std::size_t i = 0; i < basis.rows; ++i) c[i] = v[pivots[i]];
        return c;
    }
    Vec combine(const Vec& c) const {
        Vec v(basis.cols, 0);
        for (std::size_t i = 0; i < basis.rows; ++i) axpy(*basis.F, c[i], basis.row(i), v.data(), v.size());
        return v;
    }
};

}  // namespace pfs

#pragma once

// Exact dense linear algebra over a ScalarField.
//
// Subspaces are always stored with a reduced row echelon basis, so two
// subspaces are equal as sets exactly when their stored bases are equal
// entrywise.  Everything here is fraction-free in spirit only: entries are
// exact field scalars, and Gauss-Jordan elimination with the first nonzero
// pivot is deterministic.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"

namespace cayley {

template <ScalarField F>
using Vec = std::vector<F>;

template <ScalarField F>
Vec<F> zero_vec(const FieldSpec& s, std::size_t n) {
    return Vec<F>(n, F::zero(s));
}

template <ScalarField F>
bool is_zero_vec(const Vec<F>& v) {
    for (const F& x : v)
        if (!x.is_zero()) return false;
    return true;
}

template <ScalarField F>
Vec<F> add_vec(const Vec<F>& a, const Vec<F>& b) {
    if (a.size() != b.size()) throw dimension_mismatch("add_vec: length mismatch");
    Vec<F> out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
    return out;
}

template <ScalarField F>
Vec<F> sub_vec(const Vec<F>& a, const Vec<F>& b) {
    if (a.size() != b.size()) throw dimension_mismatch("sub_vec: length mismatch");
    Vec<F> out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] - b[i]);
    return out;
}

template <ScalarField F>
Vec<F> scale_vec(const F& c, const Vec<F>& a) {
    Vec<F> out;
    out.reserve(a.size());
    for (const F& x : a) out.push_back(c * x);
    return out;
}

template <ScalarField F>
F dot(const Vec<F>& a, const Vec<F>& b) {
    if (a.size() != b.size() || a.empty()) throw dimension_mismatch("dot: length mismatch");
    F acc = F::zero(a.front().spec());
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

/// "[x0, x1, ...]" with canonical scalar text; used in witnesses and reports.
template <ScalarField F>
std::string format_vec(const Vec<F>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i != 0) out += ", ";
        out += v[i].str();
    }
    return out + "]";
}

/// Dense row-major matrix over an exact field.  Zero rows are allowed so that
/// bases of the zero subspace have a home.
template <ScalarField F>
class Matrix {
public:
    Matrix(const FieldSpec& spec, std::size_t rows, std::size_t cols)
        : spec_(spec), rows_(rows), cols_(cols), a_(rows * cols, F::zero(spec)) {}

    static Matrix identity(const FieldSpec& spec, std::size_t n) {
        Matrix m(spec, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = F::one(spec);
        return m;
    }

    static Matrix from_rows(const FieldSpec& spec, const std::vector<Vec<F>>& rows) {
        std::size_t cols = rows.empty() ? 0 : rows.front().size();
        Matrix m(spec, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw dimension_mismatch("Matrix::from_rows: ragged rows");
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldSpec& spec() const { return spec_; }

    F& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const F& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Vec<F> row(std::size_t i) const {
        Vec<F> out;
        out.reserve(cols_);
        for (std::size_t j = 0; j < cols_; ++j) out.push_back(at(i, j));
        return out;
    }

    Vec<F> col(std::size_t j) const {
        Vec<F> out;
        out.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out.push_back(at(i, j));
        return out;
    }

    void set_row(std::size_t i, const Vec<F>& v) {
        if (v.size() != cols_) throw dimension_mismatch("Matrix::set_row: length mismatch");
        for (std::size_t j = 0; j < cols_; ++j) at(i, j) = v[j];
    }

    Matrix transpose() const {
        Matrix t(spec_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw dimension_mismatch("Matrix::operator*: inner dimensions differ");
        Matrix out(spec_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const F& aik = at(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) out.at(i, j) += aik * o.at(k, j);
            }
        return out;
    }

    Matrix operator+(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw dimension_mismatch("Matrix::operator+: shape mismatch");
        Matrix out(spec_, rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + o.a_[i];
        return out;
    }

    Matrix operator-(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw dimension_mismatch("Matrix::operator-: shape mismatch");
        Matrix out(spec_, rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - o.a_[i];
        return out;
    }

    /// Matrix-vector product (v as a column).
    Vec<F> apply(const Vec<F>& v) const {
        if (v.size() != cols_) throw dimension_mismatch("Matrix::apply: length mismatch");
        Vec<F> out = zero_vec<F>(spec_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) {
                if (at(i, j).is_zero() || v[j].is_zero()) continue;
                out[i] += at(i, j) * v[j];
            }
        return out;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    bool is_zero() const {
        for (const F& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

private:
    FieldSpec spec_;
    std::size_t rows_, cols_;
    std::vector<F> a_;
};

/// Stack the rows of b below the rows of a.
template <ScalarField F>
Matrix<F> vstack(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.cols() != b.cols()) throw dimension_mismatch("vstack: column counts differ");
    Matrix<F> out(a.spec(), a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out.at(a.rows() + i, j) = b.at(i, j);
    return out;
}

/// Paste the columns of b to the right of a.
template <ScalarField F>
Matrix<F> hstack(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.rows() != b.rows()) throw dimension_mismatch("hstack: row counts differ");
    Matrix<F> out(a.spec(), a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) out.at(i, a.cols() + j) = b.at(i, j);
    }
    return out;
}

template <ScalarField F>
struct RrefResult {
    Matrix<F> reduced;
    std::vector<std::size_t> pivot_cols;

    std::size_t rank() const { return pivot_cols.size(); }
};

/// Gauss-Jordan elimination to the unique reduced row echelon form.
template <ScalarField F>
RrefResult<F> rref(Matrix<F> m) {
    std::vector<std::size_t> pivots;
    std::size_t next_row = 0;
    for (std::size_t col = 0; col < m.cols() && next_row < m.rows(); ++col) {
        std::size_t pivot = next_row;
        while (pivot < m.rows() && m.at(pivot, col).is_zero()) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != next_row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(pivot, j), m.at(next_row, j));
        F inv = m.at(next_row, col).inverse();
        for (std::size_t j = col; j < m.cols(); ++j) m.at(next_row, j) = inv * m.at(next_row, j);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == next_row || m.at(i, col).is_zero()) continue;
            F factor = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                m.at(i, j) = m.at(i, j) - factor * m.at(next_row, j);
        }
        pivots.push_back(col);
        ++next_row;
    }
    return RrefResult<F>{std::move(m), std::move(pivots)};
}

template <ScalarField F>
std::size_t rank(const Matrix<F>& m) {
    return rref(m).rank();
}

/// A linear subspace of F^n, canonicalized: the stored basis is the reduced
/// row echelon form of any spanning set, with zero rows dropped.  Equal
/// subspaces therefore compare equal entrywise.
template <ScalarField F>
class Subspace {
public:
    /// Span of the rows of m.
    static Subspace span(const Matrix<F>& m) {
        RrefResult<F> r = rref(m);
        Matrix<F> basis(m.spec(), r.rank(), m.cols());
        for (std::size_t i = 0; i < r.rank(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) basis.at(i, j) = r.reduced.at(i, j);
        return Subspace(std::move(basis), r.pivot_cols);
    }

    static Subspace span_of(const FieldSpec& spec, std::size_t ambient, const std::vector<Vec<F>>& vectors) {
        Matrix<F> m(spec, vectors.size(), ambient);
        for (std::size_t i = 0; i < vectors.size(); ++i) m.set_row(i, vectors[i]);
        return span(m);
    }

    static Subspace zero(const FieldSpec& spec, std::size_t ambient) {
        return Subspace(Matrix<F>(spec, 0, ambient), {});
    }

    static Subspace full(const FieldSpec& spec, std::size_t ambient) {
        return span(Matrix<F>::identity(spec, ambient));
    }

    std::size_t dim() const { return basis_.rows(); }
    std::size_t ambient_dim() const { return basis_.cols(); }
    const FieldSpec& spec() const { return basis_.spec(); }

    /// Reduced row echelon basis; rows are the canonical spanning vectors.
    const Matrix<F>& basis() const { return basis_; }
    const std::vector<std::size_t>& pivot_cols() const { return pivot_cols_; }

    Vec<F> basis_row(std::size_t i) const { return basis_.row(i); }

    bool contains(const Vec<F>& v) const {
        if (v.size() != ambient_dim()) throw ambient_mismatch("Subspace::contains: ambient mismatch");
        Vec<F> r = v;
        for (std::size_t i = 0; i < dim(); ++i) {
            const F& c = r[pivot_cols_[i]];
            if (c.is_zero()) continue;
            F factor = c;
            for (std::size_t j = 0; j < r.size(); ++j) r[j] -= factor * basis_.at(i, j);
        }
        return is_zero_vec(r);
    }

    /// Coordinates of v in the stored basis; empty optional when v is outside.
    std::optional<Vec<F>> coordinates(const Vec<F>& v) const {
        if (v.size() != ambient_dim()) throw ambient_mismatch("Subspace::coordinates: ambient mismatch");
        Vec<F> coords;
        coords.reserve(dim());
        Vec<F> r = v;
        for (std::size_t i = 0; i < dim(); ++i) {
            F c = r[pivot_cols_[i]];
            coords.push_back(c);
            if (c.is_zero()) continue;
            for (std::size_t j = 0; j < r.size(); ++j) r[j] -= c * basis_.at(i, j);
        }
        if (!is_zero_vec(r)) return std::nullopt;
        return coords;
    }

    bool contains(const Subspace& other) const {
        if (other.ambient_dim() != ambient_dim()) throw ambient_mismatch("Subspace::contains: ambient mismatch");
        for (std::size_t i = 0; i < other.dim(); ++i)
            if (!contains(other.basis_row(i))) return false;
        return true;
    }

    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }

private:
    Subspace(Matrix<F> basis, std::vector<std::size_t> pivot_cols)
        : basis_(std::move(basis)), pivot_cols_(std::move(pivot_cols)) {}

    Matrix<F> basis_;
    std::vector<std::size_t> pivot_cols_;
};

/// Solution space of m x = 0, canonicalized.
template <ScalarField F>
Subspace<F> nullspace(const Matrix<F>& m) {
    RrefResult<F> r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : r.pivot_cols) is_pivot[c] = true;
    std::vector<Vec<F>> gens;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec<F> v = zero_vec<F>(m.spec(), m.cols());
        v[free] = F::one(m.spec());
        for (std::size_t i = 0; i < r.rank(); ++i) v[r.pivot_cols[i]] = -r.reduced.at(i, free);
        gens.push_back(std::move(v));
    }
    return Subspace<F>::span_of(m.spec(), m.cols(), gens);
}

/// One solution of a x = b (free variables set to zero), or nothing.
template <ScalarField F>
std::optional<Vec<F>> solve(const Matrix<F>& a, const Vec<F>& b) {
    if (b.size() != a.rows()) throw dimension_mismatch("solve: rhs length mismatch");
    Matrix<F> rhs(a.spec(), a.rows(), 1);
    for (std::size_t i = 0; i < a.rows(); ++i) rhs.at(i, 0) = b[i];
    RrefResult<F> r = rref(hstack(a, rhs));
    Vec<F> x = zero_vec<F>(a.spec(), a.cols());
    for (std::size_t i = 0; i < r.rank(); ++i) {
        if (r.pivot_cols[i] == a.cols()) return std::nullopt; // pivot in the rhs column
        x[r.pivot_cols[i]] = r.reduced.at(i, a.cols());
    }
    return x;
}

/// Solve a x = b for many right-hand sides (the columns of rhs) with a single
/// elimination.  Entry k of the result is empty when column k is inconsistent.
template <ScalarField F>
std::vector<std::optional<Vec<F>>> solve_many(const Matrix<F>& a, const Matrix<F>& rhs) {
    if (rhs.rows() != a.rows()) throw dimension_mismatch("solve_many: rhs row count mismatch");
    RrefResult<F> r = rref(hstack(a, rhs));
    std::vector<std::optional<Vec<F>>> out;
    out.reserve(rhs.cols());
    for (std::size_t k = 0; k < rhs.cols(); ++k) {
        bool consistent = true;
        Vec<F> x = zero_vec<F>(a.spec(), a.cols());
        for (std::size_t i = 0; i < r.rank() && consistent; ++i) {
            if (r.pivot_cols[i] >= a.cols()) {
                // Pivot inside the rhs block: that row reads 0 = e_j, which
                // kills exactly the columns with a nonzero entry there.
                if (!r.reduced.at(i, a.cols() + k).is_zero()) consistent = false;
            } else {
                x[r.pivot_cols[i]] = r.reduced.at(i, a.cols() + k);
            }
        }
        if (consistent)
            out.push_back(std::move(x));
        else
            out.push_back(std::nullopt);
    }
    return out;
}

/// Rows spanning the annihilator {w : w . v = 0 for all v in s}.
template <ScalarField F>
Matrix<F> annihilator_rows(const Subspace<F>& s) {
    return nullspace(s.basis()).basis();
}

template <ScalarField F>
Subspace<F> sum(const Subspace<F>& a, const Subspace<F>& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw ambient_mismatch("sum: ambient mismatch");
    return Subspace<F>::span(vstack(a.basis(), b.basis()));
}

/// Intersection via annihilators: v lies in both spaces exactly when every
/// linear functional vanishing on a and every one vanishing on b kills v.
template <ScalarField F>
Subspace<F> intersect(const Subspace<F>& a, const Subspace<F>& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw ambient_mismatch("intersect: ambient mismatch");
    return nullspace(vstack(annihilator_rows(a), annihilator_rows(b)));
}

/// Orthogonal complement of s with respect to the bilinear form given by
/// gram: {v : basis_i . gram . v = 0 for all i}.
template <ScalarField F>
Subspace<F> orth_complement(const Subspace<F>& s, const Matrix<F>& gram) {
    if (gram.rows() != s.ambient_dim() || gram.cols() != s.ambient_dim())
        throw ambient_mismatch("orth_complement: gram shape mismatch");
    return nullspace(s.basis() * gram);
}

} // namespace cayley

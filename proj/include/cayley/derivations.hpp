#pragma once

// Spaces of linear maps attached to an algebra, computed by exact linear
// algebra over the coefficient field:
//
//   derivation_algebra   the Leibniz nullspace  {d : d(xy) = d(x)y + x d(y)}
//   skew_maps            {d : n(x, d(x)) = 0 for all x}  (orthogonal algebra
//                        of the quadratic form; in char 2 the diagonal
//                        conditions n(b_i, d(b_i)) = 0 are not implied by the
//                        polarized pair conditions and are imposed separately)
//   local_derivations    skew maps annihilating the unit
//   so_trace_zero        the orthogonal algebra of the restriction of the
//                        form to the trace-zero hyperplane (7x7 maps)
//
// Maps are stored flattened row-major into vectors of length dim^2, with the
// convention that column j of a matrix holds the image of basis vector j.
// All resulting spaces are canonical (reduced row echelon bases), so
// equality of computed spaces is decidable by operator==.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "linalg.hpp"

namespace cayley {

enum class MapKind { derivation, skew, local_derivation, graded_zero, stabilizer, restricted_orthogonal, custom };

/// A linear subspace of the n x n matrices, flattened into F^(n^2).
template <ScalarField F>
struct MapSpace {
    std::size_t map_dim;
    MapKind kind;
    Subspace<F> space;

    std::size_t dim() const { return space.dim(); }
};

template <ScalarField F>
std::size_t flat_index(std::size_t map_dim, std::size_t row, std::size_t col) {
    return row * map_dim + col;
}

template <ScalarField F>
Vec<F> flatten(const Matrix<F>& m) {
    Vec<F> out;
    out.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m.at(i, j));
    return out;
}

template <ScalarField F>
Matrix<F> unflatten(const FieldSpec& s, const Vec<F>& v, std::size_t n) {
    if (v.size() != n * n) throw dimension_mismatch("unflatten: length is not a square");
    Matrix<F> m(s, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = v[i * n + j];
    return m;
}

template <ScalarField F>
std::vector<Matrix<F>> basis_maps(const MapSpace<F>& ms) {
    std::vector<Matrix<F>> out;
    out.reserve(ms.dim());
    for (std::size_t i = 0; i < ms.dim(); ++i)
        out.push_back(unflatten(ms.space.spec(), ms.space.basis_row(i), ms.map_dim));
    return out;
}

template <ScalarField F>
Matrix<F> commutator(const Matrix<F>& a, const Matrix<F>& b) {
    return a * b - b * a;
}

/// The subspace of maps in ms killed by every constraint row (rows live in
/// the same flattened n^2 ambient).  Solved in coefficient space: for
/// d = sum_i t_i D_i the conditions become (constraints . B^T) t = 0.
template <ScalarField F>
MapSpace<F> constrain_maps(const MapSpace<F>& ms, const Matrix<F>& constraints, MapKind kind) {
    if (constraints.cols() != ms.map_dim * ms.map_dim)
        throw ambient_mismatch("constrain_maps: constraint width mismatch");
    Matrix<F> a = constraints * ms.space.basis().transpose();
    Subspace<F> coeffs = nullspace(a);
    std::vector<Vec<F>> rows;
    rows.reserve(coeffs.dim());
    for (std::size_t i = 0; i < coeffs.dim(); ++i) {
        Vec<F> t = coeffs.basis_row(i);
        Vec<F> row = zero_vec<F>(ms.space.spec(), ms.map_dim * ms.map_dim);
        for (std::size_t k = 0; k < ms.dim(); ++k) {
            if (t[k].is_zero()) continue;
            Vec<F> b = ms.space.basis_row(k);
            for (std::size_t j = 0; j < row.size(); ++j) row[j] += t[k] * b[j];
        }
        rows.push_back(std::move(row));
    }
    return MapSpace<F>{ms.map_dim, kind,
                       Subspace<F>::span_of(ms.space.spec(), ms.map_dim * ms.map_dim, rows)};
}

/// Leibniz nullspace of an arbitrary structure-constant algebra.  One row per
/// triple (i, j, k): coordinate k of d(b_i b_j) - d(b_i) b_j - b_i d(b_j).
template <ScalarField F>
MapSpace<F> derivation_algebra(const AlgebraStructure<F>& alg) {
    const FieldSpec& s = alg.spec();
    const std::size_t n = alg.dim();
    Matrix<F> rows(s, n * n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                std::size_t r = (i * n + j) * n + k;
                for (std::size_t l = 0; l < n; ++l) {
                    rows.at(r, k * n + l) += alg.c(i, j, l);
                    rows.at(r, l * n + i) -= alg.c(l, j, k);
                    rows.at(r, l * n + j) -= alg.c(i, l, k);
                }
            }
    return MapSpace<F>{n, MapKind::derivation, nullspace(rows)};
}

template <ScalarField F>
MapSpace<F> derivation_algebra(const CayleyAlgebra<F>& c) {
    return derivation_algebra(c.structure());
}

namespace detail {

/// Rows imposing n(x, d(x)) = 0 for all x against the given gram matrix:
/// diagonal conditions for each basis vector plus polarized pair conditions.
template <ScalarField F>
Matrix<F> skew_condition_rows(const Matrix<F>& gram) {
    const FieldSpec& s = gram.spec();
    const std::size_t n = gram.rows();
    Matrix<F> rows(s, n * (n + 1) / 2, n * n);
    std::size_t r = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j, ++r)
            for (std::size_t l = 0; l < n; ++l) {
                rows.at(r, l * n + j) += gram.at(i, l);
                if (i != j) rows.at(r, l * n + i) += gram.at(j, l);
            }
    return rows;
}

} // namespace detail

/// Orthogonal algebra of the quadratic form: {d : n(x, d(x)) = 0 for all x}.
template <ScalarField F>
MapSpace<F> skew_maps(const CayleyAlgebra<F>& c) {
    Matrix<F> rows = detail::skew_condition_rows(c.form().polar_gram);
    return MapSpace<F>{c.dim(), MapKind::skew, nullspace(rows)};
}

/// Rows expressing d(x) = 0 as conditions on a flattened map.
template <ScalarField F>
Matrix<F> evaluation_rows(const FieldSpec& s, std::size_t n, const Vec<F>& x) {
    Matrix<F> rows(s, n, n * n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) rows.at(k, k * n + l) = x[l];
    return rows;
}

/// {d in so(C, n) : d(1) = 0}: the computed space of local derivations.
template <ScalarField F>
MapSpace<F> local_derivations(const CayleyAlgebra<F>& c) {
    return constrain_maps(skew_maps(c), evaluation_rows(c.spec(), c.dim(), c.unit()),
                          MapKind::local_derivation);
}

/// Maps in ms annihilating x.
template <ScalarField F>
MapSpace<F> stabilizer(const MapSpace<F>& ms, const Vec<F>& x) {
    if (x.size() != ms.map_dim) throw dimension_mismatch("stabilizer: vector length mismatch");
    return constrain_maps(ms, evaluation_rows(ms.space.spec(), ms.map_dim, x), MapKind::stabilizer);
}

template <ScalarField F>
MapSpace<F> stabilizer(const MapSpace<F>& ms, const std::vector<Vec<F>>& xs) {
    MapSpace<F> out = ms;
    for (const Vec<F>& x : xs) out = stabilizer(out, x);
    return out;
}

/// {d(x) : d in ms}, canonicalized.
template <ScalarField F>
Subspace<F> eval_subspace(const MapSpace<F>& ms, const Vec<F>& x) {
    if (x.size() != ms.map_dim) throw dimension_mismatch("eval_subspace: vector length mismatch");
    std::vector<Vec<F>> images;
    images.reserve(ms.dim());
    for (std::size_t i = 0; i < ms.dim(); ++i) {
        Matrix<F> d = unflatten(ms.space.spec(), ms.space.basis_row(i), ms.map_dim);
        images.push_back(d.apply(x));
    }
    return Subspace<F>::span_of(ms.space.spec(), ms.map_dim, images);
}

/// Degree-zero part of ms with respect to the grading: maps sending each
/// graded block into itself.
template <ScalarField F>
MapSpace<F> graded_component_zero(const CayleyAlgebra<F>& c, const MapSpace<F>& ms) {
    if (!c.grading()) throw no_grading("graded_component_zero: algebra carries no grading");
    const Grading& g = *c.grading();
    const std::size_t n = ms.map_dim;
    std::vector<Vec<F>> rows;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            if (g.part_of(k) == g.part_of(j)) continue;
            Vec<F> row = zero_vec<F>(c.spec(), n * n);
            row[k * n + j] = F::one(c.spec());
            rows.push_back(std::move(row));
        }
    return constrain_maps(ms, Matrix<F>::from_rows(c.spec(), rows), MapKind::graded_zero);
}

/// The orthogonal algebra of the form restricted to the trace-zero
/// hyperplane, as 7x7 maps in the echelon basis of that hyperplane.  In
/// characteristic 2 the quadratic definition additionally forces trace 0,
/// which the pair/diagonal conditions no longer imply.
template <ScalarField F>
struct RestrictedOrthogonal {
    Subspace<F> hyperplane; ///< trace-zero subspace of the algebra
    Matrix<F> gram;         ///< polar form on the hyperplane basis
    MapSpace<F> maps;
};

template <ScalarField F>
RestrictedOrthogonal<F> so_trace_zero(const CayleyAlgebra<F>& c) {
    Subspace<F> h = trace_zero_subspace(c);
    const std::size_t m = h.dim();
    Matrix<F> g0 = h.basis() * c.form().polar_gram * h.basis().transpose();
    Matrix<F> rows = detail::skew_condition_rows(g0);
    if (c.spec().characteristic() == 2) {
        Matrix<F> tr(c.spec(), 1, m * m);
        for (std::size_t i = 0; i < m; ++i) tr.at(0, i * m + i) = F::one(c.spec());
        rows = vstack(rows, tr);
    }
    return RestrictedOrthogonal<F>{std::move(h), std::move(g0),
                                   MapSpace<F>{m, MapKind::restricted_orthogonal, nullspace(rows)}};
}

/// Restrict an n x n map to an invariant subspace, in the subspace's echelon
/// basis.  Empty when the image leaves the subspace.
template <ScalarField F>
std::optional<Matrix<F>> restrict_map(const Subspace<F>& sub, const Matrix<F>& m) {
    if (m.cols() != sub.ambient_dim()) throw ambient_mismatch("restrict_map: ambient mismatch");
    Matrix<F> out(sub.spec(), sub.dim(), sub.dim());
    for (std::size_t j = 0; j < sub.dim(); ++j) {
        std::optional<Vec<F>> coords = sub.coordinates(m.apply(sub.basis_row(j)));
        if (!coords) return std::nullopt;
        for (std::size_t i = 0; i < sub.dim(); ++i) out.at(i, j) = (*coords)[i];
    }
    return out;
}

/// Leibniz check for a single map, by bilinearity enough on basis pairs.
template <ScalarField F>
bool is_derivation(const AlgebraStructure<F>& alg, const Matrix<F>& d) {
    for (std::size_t i = 0; i < alg.dim(); ++i)
        for (std::size_t j = 0; j < alg.dim(); ++j) {
            Vec<F> lhs = d.apply(alg.basis_product(i, j));
            Vec<F> rhs = add_vec(alg.multiply(d.col(i), alg.basis_vector(j)),
                                 alg.multiply(alg.basis_vector(i), d.col(j)));
            if (lhs != rhs) return false;
        }
    return true;
}

} // namespace cayley

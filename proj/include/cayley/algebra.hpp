#pragma once

// Unital algebras given by structure constants, and Cayley algebras: the
// 8-dimensional case carrying a nonsingular multiplicative quadratic form.
//
// The quadratic form is never hard-coded.  It is recovered from the
// multiplication table alone: every element of a Cayley algebra satisfies
//     x^2 - t(x) x + n(x) 1 = 0,
// so decomposing b^2 in span{1, b} yields t(b) and n(b) for each basis
// vector, and the linearization
//     x y + y x - t(x) y - t(y) x + n(x, y) 1 = 0
// yields every polar value n(b_i, b_j).  Both the basis norms and the full
// polar Gram matrix are stored, because in characteristic 2 the polar form
// is alternating and no longer determines the quadratic form.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "check.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "linalg.hpp"
#include "sampling.hpp"

namespace cayley {

/// Finite-dimensional algebra given by dim^3 structure constants, optionally
/// with a distinguished two-sided unit (validated on construction).  Bracket
/// algebras have no unit; Cayley algebras must have one.
template <ScalarField F>
class AlgebraStructure {
public:
    AlgebraStructure(const FieldSpec& spec, std::size_t dim, std::vector<F> table)
        : spec_(spec), dim_(dim), table_(std::move(table)) {
        if (dim_ == 0) throw bad_dimension("AlgebraStructure: dimension must be positive");
        if (table_.size() != dim_ * dim_ * dim_)
            throw dimension_mismatch("AlgebraStructure: table must hold dim^3 constants");
    }

    AlgebraStructure(const FieldSpec& spec, std::size_t dim, Vec<F> unit, std::vector<F> table)
        : AlgebraStructure(spec, dim, std::move(table)) {
        if (unit.size() != dim_) throw dimension_mismatch("AlgebraStructure: unit length mismatch");
        for (std::size_t j = 0; j < dim_; ++j) {
            Vec<F> bj = basis_vector(j);
            if (multiply(unit, bj) != bj || multiply(bj, unit) != bj)
                throw malformed_algebra("AlgebraStructure: unit is not a two-sided identity at basis index " +
                                        std::to_string(j));
        }
        unit_ = std::move(unit);
    }

    const FieldSpec& spec() const { return spec_; }
    std::size_t dim() const { return dim_; }
    bool has_unit() const { return unit_.has_value(); }
    const Vec<F>& unit() const {
        if (!unit_) throw error("AlgebraStructure: algebra has no unit");
        return *unit_;
    }
    const std::vector<F>& table() const { return table_; }

    /// Structure constant: coordinate k of (basis i) * (basis j).
    const F& c(std::size_t i, std::size_t j, std::size_t k) const {
        return table_[(i * dim_ + j) * dim_ + k];
    }

    Vec<F> basis_vector(std::size_t i) const {
        Vec<F> v = zero_vec<F>(spec_, dim_);
        v[i] = F::one(spec_);
        return v;
    }

    Vec<F> basis_product(std::size_t i, std::size_t j) const {
        Vec<F> out;
        out.reserve(dim_);
        for (std::size_t k = 0; k < dim_; ++k) out.push_back(c(i, j, k));
        return out;
    }

    Vec<F> multiply(const Vec<F>& x, const Vec<F>& y) const {
        if (x.size() != dim_ || y.size() != dim_) throw dimension_mismatch("multiply: length mismatch");
        Vec<F> out = zero_vec<F>(spec_, dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (y[j].is_zero()) continue;
                F xy = x[i] * y[j];
                for (std::size_t k = 0; k < dim_; ++k) {
                    const F& ck = c(i, j, k);
                    if (!ck.is_zero()) out[k] += xy * ck;
                }
            }
        }
        return out;
    }

    /// Matrix of left multiplication by a: column j holds a * b_j.
    Matrix<F> left_mult(const Vec<F>& a) const {
        Matrix<F> m(spec_, dim_, dim_);
        for (std::size_t j = 0; j < dim_; ++j) {
            for (std::size_t i = 0; i < dim_; ++i) {
                if (a[i].is_zero()) continue;
                for (std::size_t k = 0; k < dim_; ++k)
                    if (!c(i, j, k).is_zero()) m.at(k, j) += a[i] * c(i, j, k);
            }
        }
        return m;
    }

    /// Matrix of right multiplication by a: column j holds b_j * a.
    Matrix<F> right_mult(const Vec<F>& a) const {
        Matrix<F> m(spec_, dim_, dim_);
        for (std::size_t j = 0; j < dim_; ++j) {
            for (std::size_t i = 0; i < dim_; ++i) {
                if (a[i].is_zero()) continue;
                for (std::size_t k = 0; k < dim_; ++k)
                    if (!c(j, i, k).is_zero()) m.at(k, j) += a[i] * c(j, i, k);
            }
        }
        return m;
    }

    bool operator==(const AlgebraStructure& o) const {
        return dim_ == o.dim_ && unit_ == o.unit_ && table_ == o.table_;
    }

private:
    FieldSpec spec_;
    std::size_t dim_;
    std::optional<Vec<F>> unit_;
    std::vector<F> table_;
};

/// The quadratic form of a Cayley algebra: per-basis norm values and the
/// polar Gram matrix n(b_i, b_j).  Keeping both is essential in
/// characteristic 2, where the Gram matrix alone loses the diagonal.
template <ScalarField F>
struct QuadraticFormData {
    Vec<F> basis_norms;
    Matrix<F> polar_gram;

    F norm(const Vec<F>& x) const {
        std::size_t n = basis_norms.size();
        if (x.size() != n) throw dimension_mismatch("norm: length mismatch");
        FieldSpec s = polar_gram.spec();
        F acc = F::zero(s);
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i].is_zero()) continue;
            acc += x[i] * x[i] * basis_norms[i];
            for (std::size_t j = i + 1; j < n; ++j)
                if (!x[j].is_zero()) acc += x[i] * x[j] * polar_gram.at(i, j);
        }
        return acc;
    }

    F polar(const Vec<F>& x, const Vec<F>& y) const {
        std::size_t n = basis_norms.size();
        if (x.size() != n || y.size() != n) throw dimension_mismatch("polar: length mismatch");
        FieldSpec s = polar_gram.spec();
        F acc = F::zero(s);
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (!y[j].is_zero()) acc += x[i] * polar_gram.at(i, j) * y[j];
        }
        return acc;
    }
};

/// Index partition C = K + U + V making the multiplication Z_3-graded
/// (K the component of degree 0).
struct Grading {
    std::vector<std::size_t> k_indices;
    std::vector<std::size_t> u_indices;
    std::vector<std::size_t> v_indices;

    /// 0, 1, 2 for K, U, V.
    int part_of(std::size_t index) const {
        for (std::size_t i : k_indices)
            if (i == index) return 0;
        for (std::size_t i : u_indices)
            if (i == index) return 1;
        return 2;
    }
};

template <ScalarField F>
QuadraticFormData<F> derive_form(const AlgebraStructure<F>& alg);

/// An 8-dimensional unital algebra together with its derived quadratic form
/// and, when known, a Z_3-grading of the basis.
template <ScalarField F>
class CayleyAlgebra {
public:
    CayleyAlgebra(AlgebraStructure<F> alg, std::string label, std::optional<Grading> grading = std::nullopt)
        : alg_(std::move(alg)), form_(derive_form(alg_)), grading_(std::move(grading)), label_(std::move(label)) {
        if (alg_.dim() != 8) throw bad_dimension("CayleyAlgebra: dimension must be 8");
    }

    const AlgebraStructure<F>& structure() const { return alg_; }
    const QuadraticFormData<F>& form() const { return form_; }
    const std::optional<Grading>& grading() const { return grading_; }
    const std::string& label() const { return label_; }

    const FieldSpec& spec() const { return alg_.spec(); }
    std::size_t dim() const { return alg_.dim(); }
    const Vec<F>& unit() const { return alg_.unit(); }

    Vec<F> multiply(const Vec<F>& x, const Vec<F>& y) const { return alg_.multiply(x, y); }
    F norm(const Vec<F>& x) const { return form_.norm(x); }
    F polar(const Vec<F>& x, const Vec<F>& y) const { return form_.polar(x, y); }
    F trace(const Vec<F>& x) const { return form_.polar(x, alg_.unit()); }

    /// Standard conjugation x -> t(x) 1 - x.
    Vec<F> conjugate(const Vec<F>& x) const {
        F t = trace(x);
        Vec<F> out;
        out.reserve(dim());
        for (std::size_t i = 0; i < dim(); ++i) out.push_back(t * alg_.unit()[i] - x[i]);
        return out;
    }

    bool in_span_of_unit(const Vec<F>& x) const {
        // x = c * unit for the scalar read off at the first nonzero unit coordinate.
        std::size_t k = 0;
        while (k < dim() && alg_.unit()[k].is_zero()) ++k;
        F c = x[k] / alg_.unit()[k];
        for (std::size_t i = 0; i < dim(); ++i)
            if (x[i] != c * alg_.unit()[i]) return false;
        return true;
    }

private:
    AlgebraStructure<F> alg_;
    QuadraticFormData<F> form_;
    std::optional<Grading> grading_;
    std::string label_;
};

namespace detail {

/// Express z as a multiple of unit; throws when z is not proportional.
template <ScalarField F>
F unit_multiple(const Vec<F>& unit, const Vec<F>& z, const char* what) {
    std::size_t k = 0;
    while (k < unit.size() && unit[k].is_zero()) ++k;
    F c = z[k] / unit[k];
    for (std::size_t i = 0; i < unit.size(); ++i)
        if (z[i] != c * unit[i])
            throw malformed_algebra(std::string(what) + ": value " + format_vec(z) +
                                    " is not a multiple of the unit");
    return c;
}

} // namespace detail

/// Recover trace, basis norms and the polar Gram matrix from the table, then
/// validate consistency (symmetry, diagonal law, norm of the unit,
/// nondegeneracy).  Throws malformed_algebra / degenerate_form on failure.
template <ScalarField F>
QuadraticFormData<F> derive_form(const AlgebraStructure<F>& alg) {
    const FieldSpec& s = alg.spec();
    const std::size_t n = alg.dim();
    const Vec<F>& unit = alg.unit();

    // Step 1: traces and norms of basis vectors from b^2 = t(b) b - n(b) 1.
    Vec<F> traces = zero_vec<F>(s, n);
    Vec<F> norms = zero_vec<F>(s, n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec<F> b = alg.basis_vector(i);
        Vec<F> b2 = alg.basis_product(i, i);
        // Scalar multiples of the unit need the degenerate branch: b = c 1
        // forces t = 2c, n = c^2 regardless of how b^2 decomposes.
        bool proportional = true;
        std::size_t k0 = 0;
        while (k0 < n && unit[k0].is_zero()) ++k0;
        F c = b[k0] / unit[k0];
        for (std::size_t k = 0; k < n && proportional; ++k)
            if (b[k] != c * unit[k]) proportional = false;
        if (proportional) {
            traces[i] = c + c;
            norms[i] = c * c;
            continue;
        }
        Matrix<F> a(s, n, 2);
        for (std::size_t k = 0; k < n; ++k) {
            a.at(k, 0) = unit[k];
            a.at(k, 1) = b[k];
        }
        std::optional<Vec<F>> sol = solve(a, b2);
        if (!sol)
            throw malformed_algebra("derive_form: square of basis vector " + std::to_string(i) +
                                    " lies outside span{1, b}");
        traces[i] = (*sol)[1];
        norms[i] = -(*sol)[0];
    }

    // Step 2: polar values from the linearized identity
    // n(x, y) 1 = t(x) y + t(y) x - x y - y x.
    Matrix<F> gram(s, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        gram.at(i, i) = norms[i] + norms[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            Vec<F> z = sub_vec(
                sub_vec(add_vec(scale_vec(traces[i], alg.basis_vector(j)), scale_vec(traces[j], alg.basis_vector(i))),
                        alg.basis_product(i, j)),
                alg.basis_product(j, i));
            F value = detail::unit_multiple(unit, z, "derive_form: polarization");
            gram.at(i, j) = value;
            gram.at(j, i) = value;
        }
    }

    QuadraticFormData<F> form{std::move(norms), std::move(gram)};

    // Step 3: consistency.  t(b_i) must equal n(b_i, 1), and n(1) must be 1.
    for (std::size_t i = 0; i < n; ++i)
        if (form.polar(alg.basis_vector(i), unit) != traces[i])
            throw malformed_algebra("derive_form: trace of basis vector " + std::to_string(i) +
                                    " disagrees with its polarization against the unit");
    if (!form.norm(unit).is_one()) throw malformed_algebra("derive_form: the unit does not have norm 1");
    if (rank(form.polar_gram) != n)
        throw degenerate_form("derive_form: the polar form is degenerate (rank " +
                              std::to_string(rank(form.polar_gram)) + " of " + std::to_string(n) + ")");
    return form;
}

/// {x : t(x) = 0}, dimension 7; contains the unit exactly in characteristic 2.
template <ScalarField F>
Subspace<F> trace_zero_subspace(const CayleyAlgebra<F>& c) {
    Matrix<F> row(c.spec(), 1, c.dim());
    Vec<F> gu = c.form().polar_gram.apply(c.unit());
    for (std::size_t k = 0; k < c.dim(); ++k) row.at(0, k) = gu[k];
    return nullspace(row);
}

namespace detail {

/// Run a binary identity over every ordered pair from the structured core of
/// the pool (basis vectors and their sums/differences) and over rng-matched
/// pairs covering the whole pool.  Exhausting core pairs keeps single-entry
/// table corruptions detectable; the matched pairs add dense coverage at
/// bounded cost.
template <ScalarField F, typename Check>
CheckOutcome check_pairs(const CayleyAlgebra<F>& c, const std::vector<Vec<F>>& pool, std::size_t core_size,
                         std::uint64_t seed, std::string id, std::string anchor, Check&& check) {
    CheckOutcome out = CheckOutcome::pass_outcome(std::move(id), std::move(anchor));
    long long checked = 0;
    auto run_one = [&](const Vec<F>& x, const Vec<F>& y) {
        ++checked;
        std::string why;
        if (check(c, x, y, why)) return true;
        out.status = CheckStatus::fail;
        out.witness["x"] = format_vec(x);
        out.witness["y"] = format_vec(y);
        out.detail = why;
        return false;
    };
    std::size_t core = std::min(core_size, pool.size());
    for (std::size_t i = 0; i < core; ++i)
        for (std::size_t j = 0; j < core; ++j)
            if (!run_one(pool[i], pool[j])) {
                out.dims["pairs_checked"] = checked;
                return out;
            }
    Rng rng(seed);
    for (std::size_t i = 0; i < pool.size(); ++i) {
        const Vec<F>& partner = pool[rng.below(pool.size())];
        if (!run_one(pool[i], partner)) break;
    }
    out.dims["pairs_checked"] = checked;
    return out;
}

} // namespace detail

/// Axiom suite for a candidate Cayley algebra.  Unary identities run over the
/// whole pool; binary identities over all core pairs plus matched pairs (see
/// detail::check_pairs).  Returns one outcome per axiom family.
template <ScalarField F>
std::vector<CheckOutcome> check_axioms(const CayleyAlgebra<F>& c, const SampleSpec& samples = {42, 300, true}) {
    const FieldSpec& s = c.spec();
    std::vector<Vec<F>> pool = sample_pool<F>(s, c.dim(), samples);
    // Structured entries come first in pool construction order.
    std::size_t core = std::min<std::size_t>(pool.size(), c.dim() + c.dim() * (c.dim() - 1));
    std::vector<CheckOutcome> out;

    { // Two-sided unit.
        CheckOutcome chk = CheckOutcome::pass_outcome("axioms.unital", "1 x = x = x 1");
        long long n = 0;
        for (const Vec<F>& x : pool) {
            ++n;
            if (c.multiply(c.unit(), x) == x && c.multiply(x, c.unit()) == x) continue;
            chk.status = CheckStatus::fail;
            chk.witness["x"] = format_vec(x);
            break;
        }
        chk.dims["checked"] = n;
        out.push_back(std::move(chk));
    }

    { // The polar form is symmetric, matches the norms on the diagonal, and
      // is nonsingular.
        CheckOutcome chk =
            CheckOutcome::pass_outcome("axioms.nondegenerate", "n(b_i, b_i) = 2 n(b_i), rank n(.,.) = dim");
        const Matrix<F>& g = c.form().polar_gram;
        bool ok = g == g.transpose();
        for (std::size_t i = 0; i < c.dim() && ok; ++i)
            ok = g.at(i, i) == c.form().basis_norms[i] + c.form().basis_norms[i];
        std::size_t r = rank(g);
        chk.dims["gram_rank"] = static_cast<long long>(r);
        if (!ok || r != c.dim()) {
            chk.status = CheckStatus::fail;
            chk.detail = ok ? "polar form is singular" : "diagonal law or symmetry fails";
        }
        out.push_back(std::move(chk));
    }

    { // Degree-2 identity and the conjugation laws, pointwise.
        CheckOutcome chk = CheckOutcome::pass_outcome("axioms.degree2", "x^2 - t(x) x + n(x) 1 = 0");
        long long n = 0;
        for (const Vec<F>& x : pool) {
            ++n;
            Vec<F> lhs = c.multiply(x, x);
            lhs = sub_vec(lhs, scale_vec(c.trace(x), x));
            lhs = add_vec(lhs, scale_vec(c.norm(x), c.unit()));
            if (is_zero_vec(lhs)) continue;
            chk.status = CheckStatus::fail;
            chk.witness["x"] = format_vec(x);
            chk.witness["defect"] = format_vec(lhs);
            break;
        }
        chk.dims["checked"] = n;
        out.push_back(std::move(chk));
    }

    { // x conj(x) = n(x) 1 and conj(conj(x)) = x.
        CheckOutcome chk = CheckOutcome::pass_outcome("axioms.conjugation", "x conj(x) = n(x) 1, conj involutive");
        long long n = 0;
        for (const Vec<F>& x : pool) {
            ++n;
            Vec<F> xb = c.conjugate(x);
            bool ok = c.conjugate(xb) == x && c.multiply(x, xb) == scale_vec(c.norm(x), c.unit()) &&
                      c.multiply(xb, x) == scale_vec(c.norm(x), c.unit());
            if (ok) continue;
            chk.status = CheckStatus::fail;
            chk.witness["x"] = format_vec(x);
            break;
        }
        chk.dims["checked"] = n;
        out.push_back(std::move(chk));
    }

    out.push_back(detail::check_pairs(
        c, pool, core, samples.seed + 1, "axioms.composition", "n(x y) = n(x) n(y)",
        [](const CayleyAlgebra<F>& a, const Vec<F>& x, const Vec<F>& y, std::string& why) {
            if (a.norm(a.multiply(x, y)) == a.norm(x) * a.norm(y)) return true;
            why = "norm is not multiplicative on this pair";
            return false;
        }));

    out.push_back(detail::check_pairs(
        c, pool, core, samples.seed + 2, "axioms.linearized_degree2",
        "x y + y x - t(x) y - t(y) x + n(x, y) 1 = 0",
        [](const CayleyAlgebra<F>& a, const Vec<F>& x, const Vec<F>& y, std::string& why) {
            Vec<F> lhs = add_vec(a.multiply(x, y), a.multiply(y, x));
            lhs = sub_vec(lhs, scale_vec(a.trace(x), y));
            lhs = sub_vec(lhs, scale_vec(a.trace(y), x));
            lhs = add_vec(lhs, scale_vec(a.polar(x, y), a.unit()));
            if (is_zero_vec(lhs)) return true;
            why = "linearized degree-2 identity fails";
            return false;
        }));

    out.push_back(detail::check_pairs(
        c, pool, core, samples.seed + 3, "axioms.alternative", "x(xy) = (xx)y and (yx)x = y(xx)",
        [](const CayleyAlgebra<F>& a, const Vec<F>& x, const Vec<F>& y, std::string& why) {
            Vec<F> xx = a.multiply(x, x);
            if (a.multiply(x, a.multiply(x, y)) != a.multiply(xx, y)) {
                why = "left alternative law fails";
                return false;
            }
            if (a.multiply(a.multiply(y, x), x) != a.multiply(y, xx)) {
                why = "right alternative law fails";
                return false;
            }
            return true;
        }));

    out.push_back(detail::check_pairs(
        c, pool, core, samples.seed + 4, "axioms.involution", "conj(x y) = conj(y) conj(x)",
        [](const CayleyAlgebra<F>& a, const Vec<F>& x, const Vec<F>& y, std::string& why) {
            if (a.conjugate(a.multiply(x, y)) == a.multiply(a.conjugate(y), a.conjugate(x))) return true;
            why = "conjugation is not an anti-automorphism on this pair";
            return false;
        }));

    { // t(x) = 0 cuts out a hyperplane; it contains 1 exactly in char 2.
        CheckOutcome chk =
            CheckOutcome::pass_outcome("axioms.trace_zero", "dim {x : t(x) = 0} = 7, 1 in it iff char = 2");
        Subspace<F> c0 = trace_zero_subspace(c);
        chk.dims["dim_trace_zero"] = static_cast<long long>(c0.dim());
        bool unit_in = c0.contains(c.unit());
        bool char2 = s.characteristic() == 2;
        if (c0.dim() != c.dim() - 1 || unit_in != char2) {
            chk.status = CheckStatus::fail;
            chk.detail = unit_in != char2 ? "unit membership in the trace-zero hyperplane is wrong"
                                          : "trace-zero subspace has the wrong dimension";
        }
        out.push_back(std::move(chk));
    }

    return out;
}

} // namespace cayley

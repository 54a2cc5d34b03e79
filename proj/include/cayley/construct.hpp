#pragma once

// Constructors for Cayley algebras.
//
// split_cayley: the split algebra over any field, on the canonical basis
//   {e1, e2, u1, u2, u3, v1, v2, v3} (indices 0..7), with its Z_3-grading
//   K = span{e1, e2}, U = span{u1, u2, u3}, V = span{v1, v2, v3}.
//
// cayley_dickson: three doublings of the ground field with parameters
//   (mu1, mu2, mu3), using the product
//     (a, b) (c, d) = (a c + mu conj(d) b, d a + b conj(c))
//   and the involution conj(a, b) = (conj(a), -b).  Over the rationals,
//   (-1, -1, -1) gives the division octonions (norm = sum of 8 squares).

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "linalg.hpp"
#include "sampling.hpp"

namespace cayley {

namespace detail {

/// The canonical split multiplication table as integers; entry {i, j} lists
/// coordinate k and the sign of the product b_i b_j (zero products omitted).
inline const std::vector<std::array<int, 4>>& split_table_entries() {
    // {i, j, k, sign}: b_i * b_j = sign * b_k.
    static const std::vector<std::array<int, 4>> entries = {
        // e1 row: e1 e1 = e1, e1 u_i = u_i.
        {0, 0, 0, 1},
        {0, 2, 2, 1},
        {0, 3, 3, 1},
        {0, 4, 4, 1},
        // e2 row: e2 e2 = e2, e2 v_i = v_i.
        {1, 1, 1, 1},
        {1, 5, 5, 1},
        {1, 6, 6, 1},
        {1, 7, 7, 1},
        // u_i e2 = u_i.
        {2, 1, 2, 1},
        {3, 1, 3, 1},
        {4, 1, 4, 1},
        // v_i e1 = v_i.
        {5, 0, 5, 1},
        {6, 0, 6, 1},
        {7, 0, 7, 1},
        // u_i u_j = eps_ijk v_k.
        {2, 3, 7, 1},
        {3, 2, 7, -1},
        {2, 4, 6, -1},
        {4, 2, 6, 1},
        {3, 4, 5, 1},
        {4, 3, 5, -1},
        // v_i v_j = eps_ijk u_k.
        {5, 6, 4, 1},
        {6, 5, 4, -1},
        {5, 7, 3, -1},
        {7, 5, 3, 1},
        {6, 7, 2, 1},
        {7, 6, 2, -1},
        // u_i v_i = -e1, v_i u_i = -e2.
        {2, 5, 0, -1},
        {3, 6, 0, -1},
        {4, 7, 0, -1},
        {5, 2, 1, -1},
        {6, 3, 1, -1},
        {7, 4, 1, -1},
    };
    return entries;
}

} // namespace detail

/// The split Cayley algebra over the given field, with its grading attached.
template <ScalarField F>
CayleyAlgebra<F> split_cayley(const FieldSpec& s) {
    const std::size_t n = 8;
    std::vector<F> table(n * n * n, F::zero(s));
    for (const auto& e : detail::split_table_entries())
        table[(static_cast<std::size_t>(e[0]) * n + static_cast<std::size_t>(e[1])) * n +
              static_cast<std::size_t>(e[2])] = F::from_int(s, e[3]);
    Vec<F> unit = zero_vec<F>(s, n);
    unit[0] = F::one(s);
    unit[1] = F::one(s);
    Grading g{{0, 1}, {2, 3, 4}, {5, 6, 7}};
    return CayleyAlgebra<F>(AlgebraStructure<F>(s, n, std::move(unit), std::move(table)), "split", g);
}

/// True when the table and unit agree with the canonical split construction
/// (used to re-attach the grading to deserialized algebras).
template <ScalarField F>
bool has_canonical_split_table(const AlgebraStructure<F>& alg) {
    if (alg.dim() != 8) return false;
    AlgebraStructure<F> canonical = split_cayley<F>(alg.spec()).structure();
    return alg == canonical;
}

namespace detail {

/// One doubling stage: an algebra with an explicit involution, as data.
template <ScalarField F>
struct InvolutiveAlgebra {
    std::size_t dim;
    std::vector<F> table; // (i * dim + j) * dim + k
    Matrix<F> conj;       // columns are images of basis vectors
};

template <ScalarField F>
InvolutiveAlgebra<F> double_algebra(const FieldSpec& s, const InvolutiveAlgebra<F>& a, const F& mu) {
    const std::size_t d = a.dim;
    const std::size_t n = 2 * d;
    auto idx = [n](std::size_t i, std::size_t j, std::size_t k) { return (i * n + j) * n + k; };
    auto c = [&a, d](std::size_t i, std::size_t j, std::size_t k) { return a.table[(i * d + j) * d + k]; };

    InvolutiveAlgebra<F> out{n, std::vector<F>(n * n * n, F::zero(s)), Matrix<F>(s, n, n)};
    // (x, 0)(y, 0) = (x y, 0)
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) out.table[idx(i, j, k)] = c(i, j, k);
    // (x, 0)(0, w) = (0, w x)
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) out.table[idx(i, d + j, d + k)] = c(j, i, k);
    // (0, z)(y, 0) = (0, z conj(y))
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                F acc = F::zero(s);
                for (std::size_t l = 0; l < d; ++l) acc += c(i, l, k) * a.conj.at(l, j);
                out.table[idx(d + i, j, d + k)] = acc;
            }
    // (0, z)(0, w) = (mu conj(w) z, 0)
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                F acc = F::zero(s);
                for (std::size_t l = 0; l < d; ++l) acc += c(l, i, k) * a.conj.at(l, j);
                out.table[idx(d + i, d + j, k)] = mu * acc;
            }
    // conj(x, z) = (conj(x), -z)
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) out.conj.at(k, i) = a.conj.at(k, i);
    for (std::size_t i = 0; i < d; ++i) out.conj.at(d + i, d + i) = -F::one(s);
    return out;
}

} // namespace detail

/// Three Cayley-Dickson doublings of the ground field.  Parameters must be
/// nonzero; the resulting form is n(a, b) = n(a) - mu n(b) stagewise.
template <ScalarField F>
CayleyAlgebra<F> cayley_dickson(const FieldSpec& s, const std::array<F, 3>& mu) {
    for (const F& m : mu)
        if (m.is_zero()) throw degenerate_form("cayley_dickson: a zero parameter makes the norm degenerate");
    detail::InvolutiveAlgebra<F> a{1, {F::one(s)}, Matrix<F>::identity(s, 1)};
    for (const F& m : mu) a = detail::double_algebra(s, a, m);
    Vec<F> unit = zero_vec<F>(s, 8);
    unit[0] = F::one(s);
    std::string label = "cd(" + mu[0].str() + "," + mu[1].str() + "," + mu[2].str() + ")";
    return CayleyAlgebra<F>(AlgebraStructure<F>(s, 8, std::move(unit), std::move(a.table)), std::move(label));
}

/// The real division octonions restricted to rational coordinates.
inline CayleyAlgebra<Rational> division_octonions_q() {
    FieldSpec q = FieldSpec::rationals();
    Rational minus_one(-1);
    return cayley_dickson<Rational>(q, {minus_one, minus_one, minus_one});
}

enum class Isotropy { split_type, division_type, unknown };

inline std::string to_string(Isotropy k) {
    switch (k) {
    case Isotropy::split_type: return "split";
    case Isotropy::division_type: return "division";
    default: return "unknown";
    }
}

template <ScalarField F>
struct ClassifyResult {
    Isotropy kind = Isotropy::unknown;
    std::optional<Vec<F>> isotropic_witness; ///< nonzero x with n(x) = 0, when split
    std::string reason;
};

namespace detail {

/// Exhaustive scan for an isotropic vector over a small field.
template <ScalarField F>
std::optional<Vec<F>> exhaustive_isotropic(const CayleyAlgebra<F>& c, std::uint64_t p) {
    std::vector<F> elems = enumerate_field<F>(c.spec());
    Vec<F> x = zero_vec<F>(c.spec(), c.dim());
    std::vector<std::size_t> digits(c.dim(), 0);
    // Odometer over all p^8 tuples in a fixed order, skipping zero.
    while (true) {
        std::size_t pos = c.dim();
        while (pos > 0 && digits[pos - 1] + 1 == p) {
            digits[pos - 1] = 0;
            x[pos - 1] = elems[0];
            --pos;
        }
        if (pos == 0) return std::nullopt;
        ++digits[pos - 1];
        x[pos - 1] = elems[digits[pos - 1]];
        if (c.norm(x).is_zero()) return x;
    }
}

} // namespace detail

/// Decide whether the norm is isotropic (split algebra) or provably
/// anisotropic.  "division" is only reported on a structural positivity
/// certificate: rational scalars, diagonal Gram matrix, positive norms.
/// Small prime fields are scanned exhaustively; otherwise a deterministic
/// sample is searched and the answer may remain "unknown".
template <ScalarField F>
ClassifyResult<F> classify_isotropy(const CayleyAlgebra<F>& c) {
    // Basis vectors first: the split table has isotropic idempotents up front.
    for (std::size_t i = 0; i < c.dim(); ++i)
        if (c.form().basis_norms[i].is_zero())
            return {Isotropy::split_type, c.structure().basis_vector(i), "isotropic basis vector"};

    if constexpr (std::same_as<F, Rational>) {
        bool diagonal = true;
        bool positive = true;
        for (std::size_t i = 0; i < c.dim() && diagonal; ++i)
            for (std::size_t j = 0; j < c.dim(); ++j) {
                if (i == j) continue;
                if (!c.form().polar_gram.at(i, j).is_zero()) {
                    diagonal = false;
                    break;
                }
            }
        if (diagonal)
            for (std::size_t i = 0; i < c.dim(); ++i)
                if (c.form().basis_norms[i].sign() <= 0) positive = false;
        if (diagonal && positive)
            return {Isotropy::division_type, std::nullopt,
                    "norm is a positive diagonal form, hence anisotropic over the rationals"};
    }

    std::uint64_t p = c.spec().characteristic();
    if (p != 0 && p <= 3) {
        std::optional<Vec<F>> w = detail::exhaustive_isotropic(c, p);
        if (w) return {Isotropy::split_type, std::move(w), "exhaustive search found an isotropic vector"};
        return {Isotropy::unknown, std::nullopt, "no nonzero isotropic vector exists (norm is anisotropic)"};
    }

    std::vector<Vec<F>> pool = sample_pool<F>(c.spec(), c.dim(), SampleSpec{42, 400, true});
    for (const Vec<F>& x : pool)
        if (c.norm(x).is_zero()) return {Isotropy::split_type, x, "sampled isotropic vector"};
    return {Isotropy::unknown, std::nullopt, "no isotropic vector found in the deterministic sample"};
}

} // namespace cayley

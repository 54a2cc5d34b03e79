#pragma once

// Verification suites for the derivation theory of Cayley algebras.  Each
// suite reduces one structural statement to exact subspace equalities,
// feasibility of small linear systems, and explicit witnesses:
//
//   thm31     the space of local derivations is {d in so(C,n) | d(1) = 0}
//   lemma43   eigenvector invariance: d(a) = 0 and ab = lambda b force
//             a d(b) = lambda d(b)
//   thm41     2-local derivations of the split algebra are derivations
//             (the phi obstruction)
//   lemma44   the three evaluation subspaces of dimension 5
//   cor44     S y = (F1 + Fx + Fy)^perp over division algebras
//   thm45     local derivations of division algebras are 2-local
//   section5  the Malcev algebra C0^- and the Jordan algebra C+
//
// Universally quantified statements are verified at sample scale over a
// deterministic pool (never reported as proof); every check carries the
// computed dimensions and, where applicable, explicit witness vectors.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "check.hpp"
#include "construct.hpp"
#include "derivations.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "linalg.hpp"
#include "sampling.hpp"

namespace cayley {

// ---------------------------------------------------------------------------
// Pair interpolation
// ---------------------------------------------------------------------------

/// Result of asking whether some derivation agrees with `delta` at both x
/// and y.  When solvable, `witness` holds coordinates over the derivation
/// basis of one interpolating derivation.
template <ScalarField F>
struct InterpolationVerdict {
    Matrix<F> delta;
    Vec<F> x, y;
    bool solvable = false;
    std::optional<Vec<F>> witness;
};

namespace detail {

/// 2n x k system whose column j stacks basis[j](x) over basis[j](y).
template <ScalarField F>
Matrix<F> interpolation_columns(const FieldSpec& s, const std::vector<Matrix<F>>& basis,
                                const Vec<F>& x, const Vec<F>& y) {
    const std::size_t n = x.size();
    Matrix<F> a(s, 2 * n, basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
        Vec<F> bx = basis[k].apply(x);
        Vec<F> by = basis[k].apply(y);
        for (std::size_t r = 0; r < n; ++r) {
            a.at(r, k) = bx[r];
            a.at(n + r, k) = by[r];
        }
    }
    return a;
}

template <ScalarField F>
Vec<F> stack_pair(const Vec<F>& top, const Vec<F>& bottom) {
    Vec<F> out = top;
    out.insert(out.end(), bottom.begin(), bottom.end());
    return out;
}

template <ScalarField F>
std::string matrix_text(const Matrix<F>& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) out += ", ";
        out += format_vec(m.row(i));
    }
    return out + "]";
}

template <ScalarField F>
Matrix<F> scaled_identity(const FieldSpec& s, std::size_t n, const F& lambda) {
    Matrix<F> m(s, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = lambda;
    return m;
}

} // namespace detail

/// Solves the 16-equation system asking for a map in `maps` agreeing with
/// `delta` at x and at y.
template <ScalarField F>
InterpolationVerdict<F> pair_interpolate(const MapSpace<F>& maps, const Matrix<F>& delta,
                                         const Vec<F>& x, const Vec<F>& y) {
    Matrix<F> a = detail::interpolation_columns(maps.space.spec(), basis_maps(maps), x, y);
    Vec<F> rhs = detail::stack_pair(delta.apply(x), delta.apply(y));
    InterpolationVerdict<F> v{delta, x, y, false, std::nullopt};
    if (std::optional<Vec<F>> t = solve(a, rhs)) {
        v.solvable = true;
        v.witness = std::move(t);
    }
    return v;
}

// ---------------------------------------------------------------------------
// Shared context
// ---------------------------------------------------------------------------

/// Computes the four map spaces and the deterministic sample pool once and
/// shares them across the suites of a run.
template <ScalarField F>
struct TheoremContext {
    CayleyAlgebra<F> algebra;
    std::uint64_t seed;
    std::size_t requested; ///< sampled instances per universally quantified claim
    MapSpace<F> der, skew, locder;
    RestrictedOrthogonal<F> so0;
    std::vector<Matrix<F>> der_basis, locder_basis;
    std::vector<Vec<F>> pool;

    TheoremContext(CayleyAlgebra<F> c, std::uint64_t seed_, std::size_t samples)
        : algebra(std::move(c)),
          seed(seed_),
          requested(std::max<std::size_t>(samples, 1)),
          der(derivation_algebra(algebra)),
          skew(skew_maps(algebra)),
          locder(local_derivations(algebra)),
          so0(so_trace_zero(algebra)),
          der_basis(basis_maps(der)),
          locder_basis(basis_maps(locder)),
          pool(sample_pool<F>(algebra.spec(), algebra.dim(),
                              SampleSpec{seed_, requested + 16, true})) {}

    /// Deterministic pairs drawn from the pool; `accept` may reject a pair.
    template <typename Accept>
    std::vector<std::pair<Vec<F>, Vec<F>>> sample_pairs(std::size_t count, std::uint64_t salt,
                                                        Accept&& accept) const {
        Rng rng(seed + salt);
        std::vector<std::pair<Vec<F>, Vec<F>>> out;
        out.reserve(count);
        std::size_t attempts = 0;
        const std::size_t max_attempts = 1000 + 100 * count;
        while (out.size() < count && attempts++ < max_attempts) {
            const Vec<F>& x = pool[rng.below(pool.size())];
            const Vec<F>& y = pool[rng.below(pool.size())];
            if (accept(x, y)) out.emplace_back(x, y);
        }
        return out;
    }

    std::vector<std::pair<Vec<F>, Vec<F>>> sample_pairs(std::size_t count, std::uint64_t salt) const {
        return sample_pairs(count, salt, [](const Vec<F>&, const Vec<F>&) { return true; });
    }
};

// ---------------------------------------------------------------------------
// thm31: the space of local derivations is {d in so(C,n) | d(1) = 0}
// ---------------------------------------------------------------------------

template <ScalarField F>
std::vector<CheckOutcome> verify_theorem_3_1(const TheoremContext<F>& ctx) {
    const CayleyAlgebra<F>& c = ctx.algebra;
    std::vector<CheckOutcome> out;

    {
        CheckOutcome chk = CheckOutcome::pass_outcome(
            "thm31.dimension_table", "dim Der(C) = 14, dim so(C,n) = 28, dim LocDer(C) = 21, dim so(C0,n) = 21");
        chk.dims = {{"der", static_cast<long long>(ctx.der.dim())},
                    {"locder", static_cast<long long>(ctx.locder.dim())},
                    {"so", static_cast<long long>(ctx.skew.dim())},
                    {"so_c0", static_cast<long long>(ctx.so0.maps.dim())}};
        if (ctx.der.dim() != 14 || ctx.skew.dim() != 28 || ctx.locder.dim() != 21 ||
            ctx.so0.maps.dim() != 21) {
            chk.status = CheckStatus::fail;
            chk.detail = "computed dimensions deviate from the expected table";
        }
        out.push_back(std::move(chk));
    }

    {
        CheckOutcome chk = CheckOutcome::pass_outcome(
            "thm31.inclusions", "Der(C) is contained in {phi in so(C,n) | phi(1) = 0}");
        chk.dims = {{"der", static_cast<long long>(ctx.der.dim())},
                    {"locder", static_cast<long long>(ctx.locder.dim())},
                    {"so", static_cast<long long>(ctx.skew.dim())}};
        if (!ctx.locder.space.contains(ctx.der.space) || !ctx.skew.space.contains(ctx.locder.space)) {
            chk.status = CheckStatus::fail;
            chk.detail = "chain Der <= LocDer <= so(C,n) violated";
        }
        out.push_back(std::move(chk));
    }

    {
        CheckOutcome chk = CheckOutcome::pass_outcome(
            "thm31.lie_closure", "the space of local derivations of C is the Lie algebra {d in so(C,n) | d(1) = 0}");
        long long pairs = 0;
        bool ok = true;
        auto closed = [&](const MapSpace<F>& ms, const std::vector<Matrix<F>>& basis) {
            for (std::size_t i = 0; i < basis.size() && ok; ++i)
                for (std::size_t j = i + 1; j < basis.size(); ++j, ++pairs)
                    if (!ms.space.contains(flatten(commutator(basis[i], basis[j])))) {
                        ok = false;
                        break;
                    }
        };
        closed(ctx.der, ctx.der_basis);
        closed(ctx.locder, ctx.locder_basis);
        chk.dims = {{"bracket_pairs", pairs}};
        if (!ok) {
            chk.status = CheckStatus::fail;
            chk.detail = "a commutator of basis maps left the space";
        }
        out.push_back(std::move(chk));
    }

    {
        CheckOutcome chk = CheckOutcome::pass_outcome(
            "thm31.local_evaluation", "for every x there is d in Der(C) with Delta(x) = d(x)");
        long long tested = 0;
        for (const Vec<F>& x : ctx.pool) {
            Subspace<F> image = eval_subspace(ctx.der, x);
            for (const Matrix<F>& delta : ctx.locder_basis) {
                if (!image.contains(delta.apply(x))) {
                    chk.status = CheckStatus::fail;
                    chk.witness = {{"x", format_vec(x)}, {"delta_x", format_vec(delta.apply(x))}};
                    chk.detail = "Delta(x) escaped Der(C)x";
                    break;
                }
            }
            if (!chk.passed()) break;
            ++tested;
        }
        chk.dims = {{"locder_basis", static_cast<long long>(ctx.locder.dim())}, {"samples_tested", tested}};
        if (chk.passed()) chk.detail = "verified at sample scale";
        out.push_back(std::move(chk));
    }

    {
        CheckOutcome chk = CheckOutcome::pass_outcome(
            "thm31.eval_equals_perp", "Der(C)x = (F1 + Fx)^perp of dimension 6 for x outside F1");
        long long tested = 0;
        for (const Vec<F>& x : ctx.pool) {
            if (c.in_span_of_unit(x)) continue;
            Subspace<F> image = eval_subspace(ctx.der, x);
            Subspace<F> line = Subspace<F>::span_of(c.spec(), c.dim(), {c.unit(), x});
            Subspace<F> perp = orth_complement(line, c.form().polar_gram);
            if (image != perp || image.dim() != 6) {
                chk.status = CheckStatus::fail;
                chk.witness = {{"x", format_vec(x)}};
                chk.dims["image_dim"] = static_cast<long long>(image.dim());
                chk.detail = "evaluation subspace differs from the orthogonal complement";
                break;
            }
            ++tested;
        }
        chk.dims["eval_dim"] = 6;
        chk.dims["samples_tested"] = tested;
        if (chk.passed()) chk.detail = "verified at sample scale";
        out.push_back(std::move(chk));
    }

    {
        CheckOutcome chk = CheckOutcome::pass_outcome(
            "thm31.so_c0_restriction",
            "d -> d|_C0 is an isomorphism onto so(C0,n), also in characteristic 2");
        std::vector<Vec<F>> restricted;
        bool ok = true;
        for (const Matrix<F>& d : ctx.locder_basis) {
            std::optional<Matrix<F>> r = restrict_map(ctx.so0.hyperplane, d);
            if (!r) {
                ok = false;
                chk.detail = "a local derivation does not leave the trace-zero hyperplane invariant";
                break;
            }
            restricted.push_back(flatten(*r));
        }
        if (ok) {
            Subspace<F> image = Subspace<F>::span_of(
                c.spec(), ctx.so0.maps.map_dim * ctx.so0.maps.map_dim, restricted);
            chk.dims = {{"restricted_rank", static_cast<long long>(image.dim())},
                        {"so_c0", static_cast<long long>(ctx.so0.maps.dim())}};
            if (image != ctx.so0.maps.space || image.dim() != ctx.locder.dim()) {
                ok = false;
                chk.detail = "restriction is not a bijection onto so(C0,n)";
            }
        }
        if (!ok) chk.status = CheckStatus::fail;
        out.push_back(std::move(chk));
    }

    return out;
}

// ---------------------------------------------------------------------------
// lemma43: d(a) = 0 and ab = lambda b imply a d(b) = lambda d(b)
// ---------------------------------------------------------------------------

template <ScalarField F>
std::vector<CheckOutcome> verify_lemma_4_3(const TheoremContext<F>& ctx) {
    const CayleyAlgebra<F>& c = ctx.algebra;
    const FieldSpec& s = c.spec();
    const std::size_t n = c.dim();
    std::vector<CheckOutcome> out;

    {
        CheckOutcome chk = CheckOutcome::pass_outcome(
            "lemma43.eigenspace_invariance",
            "d(a) = 0, ab = lambda b => a d(b) = lambda d(b); and ba = lambda b => d(b) a = lambda d(b)");
        std::vector<Vec<F>> candidates;
        candidates.push_back(c.unit());
        candidates.push_back(scale_vec(F::from_int(s, 3), c.unit()));
        for (std::size_t i = 0; i < n; ++i) candidates.push_back(c.structure().basis_vector(i));
        auto basis = [&](std::size_t i) { return c.structure().basis_vector(i); };
        candidates.push_back(sub_vec(basis(2), basis(5)));
        candidates.push_back(add_vec(basis(2), basis(5)));
        candidates.push_back(add_vec(scale_vec(F::from_int(s, 2), basis(0)),
                                     scale_vec(F::from_int(s, 3), basis(1))));
        std::vector<long long> raw_lambdas = {0, 1, -1, 2, 3, -2};

        long long scenarios = 0, identities = 0;
        Rng rng(ctx.seed + 0x43);
        for (const Vec<F>& a : candidates) {
            if (is_zero_vec(a)) continue;
            MapSpace<F> stab = stabilizer(ctx.der, a);
            if (stab.dim() == 0) continue;
            std::vector<Matrix<F>> ds = basis_maps(stab);
            for (int extra = 0; extra < 2; ++extra) {
                Vec<F> combo = zero_vec<F>(s, n * n);
                for (std::size_t k = 0; k < stab.dim(); ++k) {
                    F t = F::from_int(s, rng.int_in(-4, 4));
                    if (t.is_zero()) continue;
                    Vec<F> row = stab.space.basis_row(k);
                    for (std::size_t j = 0; j < combo.size(); ++j) combo[j] += t * row[j];
                }
                if (!is_zero_vec(combo)) ds.push_back(unflatten(s, combo, n));
            }

            std::set<std::string> seen;
            for (long long rl : raw_lambdas) {
                F lambda = F::from_int(s, rl);
                if (!seen.insert(lambda.str()).second) continue;
                for (bool left : {true, false}) {
                    Matrix<F> mult = left ? c.structure().left_mult(a) : c.structure().right_mult(a);
                    Subspace<F> eigen = nullspace(mult - detail::scaled_identity(s, n, lambda));
                    if (eigen.dim() == 0) continue;
                    ++scenarios;
                    std::vector<Vec<F>> bs;
                    for (std::size_t i = 0; i < eigen.dim(); ++i) bs.push_back(eigen.basis_row(i));
                    {
                        Vec<F> all = zero_vec<F>(s, n);
                        for (const Vec<F>& b : bs) all = add_vec(all, b);
                        bs.push_back(std::move(all));
                    }
                    for (const Vec<F>& b : bs) {
                        if (is_zero_vec(b)) continue;
                        for (const Matrix<F>& d : ds) {
                            Vec<F> img = d.apply(b);
                            Vec<F> lhs = left ? c.multiply(a, img) : c.multiply(img, a);
                            ++identities;
                            if (lhs != scale_vec(lambda, img)) {
                                chk.status = CheckStatus::fail;
                                chk.witness = {{"a", format_vec(a)},
                                               {"b", format_vec(b)},
                                               {"lambda", lambda.str()},
                                               {"d_b", format_vec(img)}};
                                chk.detail = left ? "a d(b) != lambda d(b)" : "d(b) a != lambda d(b)";
                                break;
                            }
                        }
                        if (!chk.passed()) break;
                    }
                    if (!chk.passed()) break;
                }
                if (!chk.passed()) break;
            }
            if (!chk.passed()) break;
        }
        chk.dims = {{"identities_checked", identities}, {"scenarios", scenarios}};
        if (chk.passed() && scenarios == 0) {
            chk.status = CheckStatus::fail;
            chk.detail = "no eigenvector scenario was generated";
        }
        out.push_back(std::move(chk));
    }

    {
        const std::string anchor = "ab = (u1 - v1)(u2 + v3) = v3 + u2 = b";
        if (!c.grading()) {
            out.push_back(CheckOutcome::skip_outcome("lemma43.pinned_instance", anchor,
                                                     "requires the canonical graded basis"));
            return out;
        }
        CheckOutcome chk = CheckOutcome::pass_outcome("lemma43.pinned_instance", anchor);
        const Grading& g = *c.grading();
        auto basis = [&](std::size_t i) { return c.structure().basis_vector(i); };
        Vec<F> a = sub_vec(basis(g.u_indices[0]), basis(g.v_indices[0]));
        Vec<F> b = add_vec(basis(g.u_indices[1]), basis(g.v_indices[2]));
        MapSpace<F> stab = stabilizer(ctx.der, a);
        chk.dims = {{"stabilizer", static_cast<long long>(stab.dim())}};
        chk.witness = {{"a", format_vec(a)}, {"b", format_vec(b)}};
        if (c.multiply(a, b) != b) {
            chk.status = CheckStatus::fail;
            chk.detail = "pinned product ab = b failed";
        } else {
            for (const Matrix<F>& d : basis_maps(stab)) {
                Vec<F> img = d.apply(b);
                if (c.multiply(a, img) != img) {
                    chk.status = CheckStatus::fail;
                    chk.detail = "a d(b) != d(b) for some d with d(a) = 0";
                    chk.witness["d_b"] = format_vec(img);
                    break;
                }
            }
        }
        out.push_back(std::move(chk));
    }

    return out;
}

// ---------------------------------------------------------------------------
// thm41: 2-local derivations of the split algebra are derivations
// ---------------------------------------------------------------------------

template <ScalarField F>
std::vector<CheckOutcome> verify_theorem_4_1(const TheoremContext<F>& ctx) {
    const CayleyAlgebra<F>& c = ctx.algebra;
    const FieldSpec& s = c.spec();
    const Grading& g = *c.grading();
    const std::size_t n = c.dim();
    std::vector<CheckOutcome> out;
    auto basis = [&](std::size_t i) { return c.structure().basis_vector(i); };

    Vec<F> e1 = basis(g.k_indices[0]);
    Vec<F> e2 = basis(g.k_indices[1]);
    MapSpace<F> annihilating = constrain_maps(
        ctx.skew, vstack(evaluation_rows(s, n, e1), evaluation_rows(s, n, e2)), MapKind::custom);
    MapSpace<F> p = graded_component_zero(c, annihilating);
    MapSpace<F> graded0 = graded_component_zero(c, ctx.der);

    Matrix<F> phi(s, n, n);
    phi.at(g.u_indices[2], g.u_indices[2]) = F::one(s);
    phi.at(g.v_indices[2], g.v_indices[2]) = F::from_int(s, -1);

    {
        CheckOutcome chk = CheckOutcome::pass_outcome(
            "thm41.p_space",
            "P = {f in so(C,n) | f(e1) = f(e2) = 0, f(U) in U, f(V) in V} has dimension 9");
        chk.dims = {{"p", static_cast<long long>(p.dim())}};
        if (p.dim() != 9 || !p.space.contains(flatten(phi)) || !p.space.contains(graded0.space)) {
            chk.status = CheckStatus::fail;
            chk.detail = "P has the wrong dimension or misses phi / the degree-zero derivations";
        }
        out.push_back(std::move(chk));
    }

    {
        CheckOutcome chk = CheckOutcome::pass_outcome(
            "thm41.p_decomposition", "P = Der(C)_0 + F phi, phi(u3) = u3, phi(v3) = -v3, phi = 0 elsewhere");
        Subspace<F> phi_line = Subspace<F>::span_of(s, n * n, {flatten(phi)});
        Subspace<F> total = sum(graded0.space, phi_line);
        chk.dims = {{"graded0", static_cast<long long>(graded0.dim())},
                    {"p", static_cast<long long>(p.dim())},
                    {"phi_line", 1}};
        if (total != p.space || graded0.space.contains(flatten(phi)) || graded0.dim() != 8) {
            chk.status = CheckStatus::fail;
            chk.detail = "decomposition into degree-zero derivations plus the phi line failed";
        }
        out.push_back(std::move(chk));
    }

    {
        CheckOutcome chk = CheckOutcome::pass_outcome(
            "thm41.dual_blocks", "on dual bases of U and V, f|_V is minus the transpose of f|_U");
        bool ok = true;
        for (const Matrix<F>& f : basis_maps(p)) {
            for (std::size_t i = 0; i < 3 && ok; ++i)
                for (std::size_t j = 0; j < 3; ++j)
                    if (f.at(g.v_indices[i], g.v_indices[j]) !=
                        F::zero(s) - f.at(g.u_indices[j], g.u_indices[i])) {
                        ok = false;
                        break;
                    }
            if (!ok) break;
        }
        chk.dims = {{"p_basis", static_cast<long long>(p.dim())}};
        if (!ok) {
            chk.status = CheckStatus::fail;
            chk.detail = "a map in P violates the minus-transpose block relation";
        }
        out.push_back(std::move(chk));
    }

    {
        CheckOutcome chk =
            CheckOutcome::pass_outcome("thm41.phi_not_derivation", "phi lies in P but not in Der(C)");
        if (ctx.der.space.contains(flatten(phi)) || is_derivation(c.structure(), phi)) {
            chk.status = CheckStatus::fail;
            chk.detail = "phi unexpectedly satisfies the Leibniz rule";
        }
        out.push_back(std::move(chk));
    }

    {
        CheckOutcome chk = CheckOutcome::pass_outcome(
            "thm41.phi_obstruction", "a phi(b) = (u1 - v1)(-v3) = -u2 != phi(b)");
        Vec<F> a = sub_vec(basis(g.u_indices[0]), basis(g.v_indices[0]));
        Vec<F> b = add_vec(basis(g.u_indices[1]), basis(g.v_indices[2]));
        Vec<F> minus_v3 = scale_vec(F::from_int(s, -1), basis(g.v_indices[2]));
        Vec<F> minus_u2 = scale_vec(F::from_int(s, -1), basis(g.u_indices[1]));
        Vec<F> phi_b = phi.apply(b);
        Vec<F> a_phi_b = c.multiply(a, phi_b);
        InterpolationVerdict<F> verdict = pair_interpolate(ctx.der, phi, a, b);
        chk.witness = {{"a", format_vec(a)},
                       {"b", format_vec(b)},
                       {"ab", format_vec(c.multiply(a, b))},
                       {"phi_b", format_vec(phi_b)},
                       {"a_phi_b", format_vec(a_phi_b)}};
        if (c.multiply(a, b) != b || !is_zero_vec(phi.apply(a)) || phi_b != minus_v3 ||
            a_phi_b != minus_u2 || a_phi_b == phi_b || verdict.solvable) {
            chk.status = CheckStatus::fail;
            chk.detail = "the obstruction pins changed or phi interpolates on (a, b)";
        }
        out.push_back(std::move(chk));
    }

    {
        CheckOutcome chk = CheckOutcome::pass_outcome(
            "thm41.graded_interpolation", "any 2-local derivation of the split Cayley algebra is a derivation");
        std::vector<Matrix<F>> g0_basis = basis_maps(graded0);
        long long tested = 0;
        for (const auto& [x, y] : ctx.sample_pairs(ctx.requested, 0x41)) {
            Matrix<F> a = detail::interpolation_columns(s, ctx.der_basis, x, y);
            Matrix<F> rhs(s, 2 * n, g0_basis.size());
            for (std::size_t k = 0; k < g0_basis.size(); ++k) {
                Vec<F> stacked = detail::stack_pair(g0_basis[k].apply(x), g0_basis[k].apply(y));
                for (std::size_t r = 0; r < stacked.size(); ++r) rhs.at(r, k) = stacked[r];
            }
            std::vector<std::optional<Vec<F>>> sols = solve_many(a, rhs);
            for (std::size_t k = 0; k < sols.size(); ++k)
                if (!sols[k]) {
                    chk.status = CheckStatus::fail;
                    chk.witness = {{"x", format_vec(x)}, {"y", format_vec(y)}};
                    chk.detail = "a degree-zero derivation failed to interpolate";
                    break;
                }
            if (!chk.passed()) break;
            ++tested;
        }
        chk.dims = {{"graded0_basis", static_cast<long long>(g0_basis.size())}, {"pairs_tested", tested}};
        if (chk.passed()) chk.detail = "verified at sample scale";
        out.push_back(std::move(chk));
    }

    return out;
}

// ---------------------------------------------------------------------------
// lemma44: the three evaluation subspaces of dimension 5
// ---------------------------------------------------------------------------

/// Scalars mu != 1 exercised by lemma44: every residue for small prime
/// fields, a fixed integer set otherwise.
template <ScalarField F>
std::vector<F> lemma44_mu_set(const FieldSpec& s) {
    std::vector<F> out;
    std::set<std::string> seen;
    auto push = [&](const F& v) {
        if (!v.is_one() && seen.insert(v.str()).second) out.push_back(v);
    };
    if (s.kind() == FieldKind::prime && s.modulus() <= 7) {
        for (const F& v : enumerate_field<F>(s)) push(v);
    } else {
        for (long long raw : {0, -1, 2, 5}) push(F::from_int(s, raw));
    }
    return out;
}

template <ScalarField F>
std::vector<CheckOutcome> verify_lemma_4_4(const TheoremContext<F>& ctx) {
    const CayleyAlgebra<F>& c = ctx.algebra;
    const FieldSpec& s = c.spec();
    const Grading& g = *c.grading();
    std::vector<CheckOutcome> out;
    auto basis = [&](std::size_t i) { return c.structure().basis_vector(i); };

    Vec<F> e1 = basis(g.k_indices[0]), e2 = basis(g.k_indices[1]);
    Vec<F> u1 = basis(g.u_indices[0]), u2 = basis(g.u_indices[1]), u3 = basis(g.u_indices[2]);
    Vec<F> v1 = basis(g.v_indices[0]), v2 = basis(g.v_indices[1]), v3 = basis(g.v_indices[2]);
    MapSpace<F> l = stabilizer(ctx.der, std::vector<Vec<F>>{e1, e2});
    MapSpace<F> lp = stabilizer(ctx.der, add_vec(u1, v1));
    auto span8 = [&](std::vector<Vec<F>> vecs) {
        return Subspace<F>::span_of(s, c.dim(), std::move(vecs));
    };

    {
        CheckOutcome chk = CheckOutcome::pass_outcome(
            "lemma44.span_l", "L(u1 + v1) = span<u1 - v1, u2, u3, v2, v3>, of dimension 5");
        Subspace<F> image = eval_subspace(l, add_vec(u1, v1));
        Subspace<F> expected = span8({sub_vec(u1, v1), u2, u3, v2, v3});
        chk.dims = {{"dim", static_cast<long long>(image.dim())},
                    {"l", static_cast<long long>(l.dim())}};
        if (image != expected || image.dim() != 5) {
            chk.status = CheckStatus::fail;
            chk.detail = "evaluation of L at u1 + v1 differs from the pinned span";
        }
        out.push_back(std::move(chk));
    }

    {
        CheckOutcome chk = CheckOutcome::pass_outcome(
            "lemma44.span_lp_mu", "L'(u1 + mu v1) = span<e1 - e2, u2, u3, v2, v3> for mu != 1");
        Subspace<F> expected = span8({sub_vec(e1, e2), u2, u3, v2, v3});
        long long tested = 0;
        for (const F& mu : lemma44_mu_set<F>(s)) {
            Subspace<F> image = eval_subspace(lp, add_vec(u1, scale_vec(mu, v1)));
            if (image != expected || image.dim() != 5) {
                chk.status = CheckStatus::fail;
                chk.witness = {{"mu", mu.str()}};
                chk.detail = "evaluation of L' at u1 + mu v1 differs from the pinned span";
                break;
            }
            ++tested;
        }
        chk.dims = {{"dim", 5}, {"lp", static_cast<long long>(lp.dim())}, {"mus_tested", tested}};
        out.push_back(std::move(chk));
    }

    {
        CheckOutcome chk = CheckOutcome::pass_outcome(
            "lemma44.span_lp_u2v2", "L'(u2 + v2) = span<e1 - e2, u1 - v1, u2 - v2, u3, v3>, of dimension 5");
        Subspace<F> image = eval_subspace(lp, add_vec(u2, v2));
        Subspace<F> expected = span8({sub_vec(e1, e2), sub_vec(u1, v1), sub_vec(u2, v2), u3, v3});
        chk.dims = {{"dim", static_cast<long long>(image.dim())}};
        chk.detail =
            "the second spanning vector is u1 - v1 (the printed statement has u1 + v1, but every "
            "image of a map killing u1 + v1 is orthogonal to it, and n(u1 + v1, u1 + v1) = 2)";
        if (image != expected || image.dim() != 5) {
            chk.status = CheckStatus::fail;
            chk.detail = "evaluation of L' at u2 + v2 differs from the corrected span; " + chk.detail;
        }
        out.push_back(std::move(chk));
    }

    return out;
}

// ---------------------------------------------------------------------------
// cor44: S y = (F1 + Fx + Fy)^perp over division algebras
// ---------------------------------------------------------------------------

template <ScalarField F>
std::vector<CheckOutcome> verify_corollary_4_4(const TheoremContext<F>& ctx) {
    const CayleyAlgebra<F>& c = ctx.algebra;
    std::vector<CheckOutcome> out;
    CheckOutcome chk = CheckOutcome::pass_outcome(
        "cor44.eval_equals_perp",
        "S y = (F1 + Fx + Fy)^perp of dimension 5, for S = {d in Der(C) | d(x) = 0}");

    auto independent = [&](const Vec<F>& x, const Vec<F>& y) {
        return rank(Matrix<F>::from_rows(c.spec(), {c.unit(), x, y})) == 3;
    };
    std::vector<std::pair<Vec<F>, Vec<F>>> pairs = {
        {c.structure().basis_vector(1), c.structure().basis_vector(2)}};
    for (auto& pr : ctx.sample_pairs(ctx.requested, 0x44, independent)) pairs.push_back(std::move(pr));

    long long tested = 0;
    for (const auto& [x, y] : pairs) {
        MapSpace<F> stab = stabilizer(ctx.der, x);
        Subspace<F> image = eval_subspace(stab, y);
        Subspace<F> span = Subspace<F>::span_of(c.spec(), c.dim(), {c.unit(), x, y});
        Subspace<F> perp = orth_complement(span, c.form().polar_gram);
        if (image != perp || image.dim() != 5) {
            chk.status = CheckStatus::fail;
            chk.witness = {{"x", format_vec(x)}, {"y", format_vec(y)}};
            chk.dims["image_dim"] = static_cast<long long>(image.dim());
            chk.detail = "S y differs from the orthogonal complement";
            break;
        }
        ++tested;
    }
    chk.dims["dim"] = 5;
    chk.dims["pairs_tested"] = tested;
    if (chk.passed()) chk.detail = "verified at sample scale";
    out.push_back(std::move(chk));
    return out;
}

// ---------------------------------------------------------------------------
// thm45: local derivations of division algebras are 2-local
// ---------------------------------------------------------------------------

template <ScalarField F>
std::vector<CheckOutcome> verify_theorem_4_5(const TheoremContext<F>& ctx) {
    const CayleyAlgebra<F>& c = ctx.algebra;
    const FieldSpec& s = c.spec();
    const std::size_t n = c.dim();
    std::vector<CheckOutcome> out;

    {
        CheckOutcome chk = CheckOutcome::pass_outcome(
            "thm45.local_is_2local", "any local derivation of C is a 2-local derivation");
        std::vector<std::pair<Vec<F>, Vec<F>>> pairs = {
            {c.structure().basis_vector(1), c.structure().basis_vector(2)}};
        for (auto& pr : ctx.sample_pairs(ctx.requested, 0x45)) pairs.push_back(std::move(pr));
        long long tested = 0;
        for (const auto& [x, y] : pairs) {
            Matrix<F> a = detail::interpolation_columns(s, ctx.der_basis, x, y);
            Matrix<F> rhs(s, 2 * n, ctx.locder_basis.size());
            for (std::size_t k = 0; k < ctx.locder_basis.size(); ++k) {
                Vec<F> stacked =
                    detail::stack_pair(ctx.locder_basis[k].apply(x), ctx.locder_basis[k].apply(y));
                for (std::size_t r = 0; r < stacked.size(); ++r) rhs.at(r, k) = stacked[r];
            }
            std::vector<std::optional<Vec<F>>> sols = solve_many(a, rhs);
            for (std::size_t k = 0; k < sols.size(); ++k)
                if (!sols[k]) {
                    chk.status = CheckStatus::fail;
                    chk.witness = {{"x", format_vec(x)},
                                   {"y", format_vec(y)},
                                   {"delta", detail::matrix_text(ctx.locder_basis[k])}};
                    chk.detail = "no derivation interpolates this local derivation at (x, y)";
                    break;
                }
            if (!chk.passed()) break;
            ++tested;
        }
        chk.dims = {{"locder_basis", static_cast<long long>(ctx.locder.dim())}, {"pairs_tested", tested}};
        if (chk.passed()) chk.detail = "verified at sample scale";
        out.push_back(std::move(chk));
    }

    {
        CheckOutcome chk = CheckOutcome::pass_outcome(
            "thm45.locder_not_der", "C admits 2-local derivations which are not derivations");
        chk.dims = {{"der", static_cast<long long>(ctx.der.dim())},
                    {"locder", static_cast<long long>(ctx.locder.dim())}};
        bool found = false;
        for (const Matrix<F>& delta : ctx.locder_basis) {
            if (ctx.der.space.contains(flatten(delta))) continue;
            found = !is_derivation(c.structure(), delta);
            chk.witness = {{"delta", detail::matrix_text(delta)}};
            break;
        }
        if (!found) {
            chk.status = CheckStatus::fail;
            chk.detail = "no local derivation outside Der(C) was exhibited";
        }
        out.push_back(std::move(chk));
    }

    return out;
}

// ---------------------------------------------------------------------------
// section5: the Malcev algebra C0^- and the Jordan algebra C+
// ---------------------------------------------------------------------------

/// The trace-zero subspace under the bracket [x, y] = (xy - yx)/2, expressed
/// in the echelon basis of that subspace.  Characteristic 2 is rejected.
template <ScalarField F>
AlgebraStructure<F> minus_algebra(const CayleyAlgebra<F>& c) {
    const FieldSpec& s = c.spec();
    if (s.characteristic() == 2)
        throw characteristic_two("minus_algebra: the bracket (xy - yx)/2 needs characteristic != 2");
    Subspace<F> c0 = trace_zero_subspace(c);
    F half = (F::one(s) + F::one(s)).inverse();
    const std::size_t m = c0.dim();
    std::vector<F> table(m * m * m, F::zero(s));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Vec<F> x = c0.basis_row(i), y = c0.basis_row(j);
            Vec<F> bracket = scale_vec(half, sub_vec(c.multiply(x, y), c.multiply(y, x)));
            std::optional<Vec<F>> coords = c0.coordinates(bracket);
            if (!coords) throw malformed_algebra("minus_algebra: bracket left the trace-zero subspace");
            for (std::size_t k = 0; k < m; ++k) table[(i * m + j) * m + k] = (*coords)[k];
        }
    return AlgebraStructure<F>(s, m, std::move(table));
}

/// The full algebra under x o y = (xy + yx)/2; commutative with the same
/// unit.  Characteristic 2 is rejected.
template <ScalarField F>
AlgebraStructure<F> plus_algebra(const CayleyAlgebra<F>& c) {
    const FieldSpec& s = c.spec();
    if (s.characteristic() == 2)
        throw characteristic_two("plus_algebra: the product (xy + yx)/2 needs characteristic != 2");
    F half = (F::one(s) + F::one(s)).inverse();
    const std::size_t n = c.dim();
    std::vector<F> table(n * n * n, F::zero(s));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec<F> prod = scale_vec(half, add_vec(c.structure().basis_product(i, j),
                                                  c.structure().basis_product(j, i)));
            for (std::size_t k = 0; k < n; ++k) table[(i * n + j) * n + k] = prod[k];
        }
    return AlgebraStructure<F>(s, n, c.unit(), std::move(table));
}

namespace detail {

/// Extends a trace-zero endomorphism to the whole algebra by d(a1 + x) = d(x)
/// (characteristic != 2, where C = F1 + C0).
template <ScalarField F>
Matrix<F> extend_killing_unit(const CayleyAlgebra<F>& c, const Subspace<F>& c0, const Matrix<F>& m) {
    const FieldSpec& s = c.spec();
    F half = (F::one(s) + F::one(s)).inverse();
    Matrix<F> lift = c0.basis().transpose();
    Matrix<F> out(s, c.dim(), c.dim());
    for (std::size_t j = 0; j < c.dim(); ++j) {
        Vec<F> bj = c.structure().basis_vector(j);
        Vec<F> x0 = sub_vec(bj, scale_vec(c.trace(bj) * half, c.unit()));
        std::optional<Vec<F>> coords = c0.coordinates(x0);
        if (!coords) throw malformed_algebra("extend_killing_unit: C != F1 + C0");
        Vec<F> image = lift.apply(m.apply(*coords));
        for (std::size_t i = 0; i < c.dim(); ++i) out.at(i, j) = image[i];
    }
    return out;
}

} // namespace detail

template <ScalarField F>
std::vector<CheckOutcome> verify_section_5(const TheoremContext<F>& ctx) {
    const CayleyAlgebra<F>& c = ctx.algebra;
    const FieldSpec& s = c.spec();
    std::vector<CheckOutcome> out;

    AlgebraStructure<F> minus = minus_algebra(c);
    AlgebraStructure<F> plus = plus_algebra(c);
    Subspace<F> c0 = trace_zero_subspace(c);
    const std::size_t m = minus.dim();
    auto mul = [&](const Vec<F>& x, const Vec<F>& y) { return minus.multiply(x, y); };

    // Triples: every i < j < k triple of basis vectors, then deterministic
    // draws from a pool in bracket coordinates.
    std::vector<std::array<Vec<F>, 3>> triples;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t k = j + 1; k < m; ++k)
                triples.push_back({minus.basis_vector(i), minus.basis_vector(j), minus.basis_vector(k)});
    {
        std::vector<Vec<F>> mpool = sample_pool<F>(s, m, SampleSpec{ctx.seed + 0x50, 64, true});
        Rng rng(ctx.seed + 0x51);
        const std::size_t want = std::max<std::size_t>(500, ctx.requested);
        while (triples.size() < want)
            triples.push_back({mpool[rng.below(mpool.size())], mpool[rng.below(mpool.size())],
                               mpool[rng.below(mpool.size())]});
    }

    {
        CheckOutcome chk = CheckOutcome::pass_outcome(
            "section5.malcev", "(xy)(xz) = ((xy)z)x + ((yz)x)x + ((zx)x)y");
        long long tested = 0;
        for (const auto& [x, y, z] : triples) {
            Vec<F> xy = mul(x, y);
            Vec<F> lhs = mul(xy, mul(x, z));
            Vec<F> rhs = add_vec(add_vec(mul(mul(xy, z), x), mul(mul(mul(y, z), x), x)),
                                 mul(mul(mul(z, x), x), y));
            if (lhs != rhs) {
                chk.status = CheckStatus::fail;
                chk.witness = {{"x", format_vec(x)}, {"y", format_vec(y)}, {"z", format_vec(z)}};
                chk.detail = "Malcev identity failed";
                break;
            }
            ++tested;
        }
        chk.dims = {{"triples_tested", tested}};
        if (chk.passed()) chk.detail = "verified at sample scale";
        out.push_back(std::move(chk));
    }

    {
        const bool char3 = s.characteristic() == 3;
        CheckOutcome chk = CheckOutcome::pass_outcome(
            "section5.jacobi",
            "C0^- is non-Lie away from characteristic 3; in characteristic 3 it is a Lie algebra");
        long long tested = 0;
        bool witness_found = false;
        for (const auto& [x, y, z] : triples) {
            Vec<F> jac = add_vec(add_vec(mul(mul(x, y), z), mul(mul(y, z), x)), mul(mul(z, x), y));
            ++tested;
            if (is_zero_vec(jac)) continue;
            if (char3) {
                chk.status = CheckStatus::fail;
                chk.witness = {{"x", format_vec(x)}, {"y", format_vec(y)}, {"z", format_vec(z)},
                               {"jacobiator", format_vec(jac)}};
                chk.detail = "Jacobi identity failed in characteristic 3";
                break;
            }
            if (!witness_found) {
                witness_found = true;
                chk.witness = {{"x", format_vec(x)}, {"y", format_vec(y)}, {"z", format_vec(z)},
                               {"jacobiator", format_vec(jac)}};
            }
        }
        chk.dims = {{"triples_tested", tested}};
        if (chk.passed()) {
            if (char3) {
                chk.detail = "Jacobi identity holds on all pooled triples";
            } else if (witness_found) {
                chk.detail = "Jacobi failure witnessed; the bracket is not a Lie product";
            } else {
                chk.status = CheckStatus::fail;
                chk.detail = "expected a Jacobi failure witness away from characteristic 3";
            }
        }
        out.push_back(std::move(chk));
    }

    {
        CheckOutcome chk = CheckOutcome::pass_outcome(
            "section5.minus_derivations",
            "every derivation of C restricts to a derivation of C0^-, and conversely");
        MapSpace<F> der_minus = derivation_algebra(minus);
        std::vector<Vec<F>> restricted;
        bool ok = true;
        for (const Matrix<F>& d : ctx.der_basis) {
            std::optional<Matrix<F>> r = restrict_map(c0, d);
            if (!r || !is_derivation(minus, *r)) {
                ok = false;
                chk.detail = "restriction of a derivation is not a bracket derivation";
                break;
            }
            restricted.push_back(flatten(*r));
        }
        if (ok) {
            Subspace<F> image = Subspace<F>::span_of(s, m * m, restricted);
            chk.dims = {{"der_minus", static_cast<long long>(der_minus.dim())},
                        {"restriction_rank", static_cast<long long>(image.dim())}};
            if (der_minus.dim() != 14 || image != der_minus.space ||
                image.dim() != ctx.der.dim()) {
                ok = false;
                chk.detail = "restriction is not a bijection onto the bracket derivations";
            }
        }
        if (!ok) chk.status = CheckStatus::fail;
        out.push_back(std::move(chk));
    }

    {
        CheckOutcome chk = CheckOutcome::pass_outcome(
            "section5.plus_derivations", "LocDer(C) = Der(C+) = so(C0,n) under x o y = (xy + yx)/2");
        MapSpace<F> der_plus = derivation_algebra(plus);
        std::vector<Vec<F>> extended;
        for (std::size_t i = 0; i < ctx.so0.maps.dim(); ++i) {
            Matrix<F> m7 = unflatten(s, ctx.so0.maps.space.basis_row(i), ctx.so0.maps.map_dim);
            extended.push_back(flatten(detail::extend_killing_unit(c, c0, m7)));
        }
        Subspace<F> ext_image = Subspace<F>::span_of(s, c.dim() * c.dim(), extended);
        chk.dims = {{"der_plus", static_cast<long long>(der_plus.dim())},
                    {"extension_rank", static_cast<long long>(ext_image.dim())},
                    {"locder", static_cast<long long>(ctx.locder.dim())}};
        if (der_plus.dim() != 21 || der_plus.space != ctx.locder.space ||
            ext_image != ctx.locder.space) {
            chk.status = CheckStatus::fail;
            chk.detail = "the three spaces are not literally equal as matrix spaces";
        }
        out.push_back(std::move(chk));
    }

    return out;
}

// ---------------------------------------------------------------------------
// Suite runner
// ---------------------------------------------------------------------------

enum class Suite { axioms, thm31, lemma43, thm41, lemma44, cor44, thm45, section5, all };

inline const std::vector<std::pair<std::string, Suite>>& suite_table() {
    static const std::vector<std::pair<std::string, Suite>> table = {
        {"axioms", Suite::axioms},   {"thm31", Suite::thm31}, {"lemma43", Suite::lemma43},
        {"thm41", Suite::thm41},     {"lemma44", Suite::lemma44}, {"cor44", Suite::cor44},
        {"thm45", Suite::thm45},     {"section5", Suite::section5}, {"all", Suite::all}};
    return table;
}

inline std::optional<Suite> parse_suite(std::string_view name) {
    for (const auto& [token, suite] : suite_table())
        if (token == name) return suite;
    return std::nullopt;
}

inline std::string to_string(Suite s) {
    for (const auto& [token, suite] : suite_table())
        if (suite == s) return token;
    return "all";
}

/// Runs one suite (or all of them) against an algebra.  Suites whose
/// preconditions the algebra does not meet contribute a single skipped
/// outcome carrying the reason.
template <ScalarField F>
std::vector<CheckOutcome> run_suite(const CayleyAlgebra<F>& c, Suite suite, std::uint64_t seed = 42,
                                    std::size_t samples = 200) {
    std::vector<CheckOutcome> out;
    std::optional<TheoremContext<F>> ctx;
    auto context = [&]() -> const TheoremContext<F>& {
        if (!ctx) ctx.emplace(c, seed, samples);
        return *ctx;
    };
    std::optional<ClassifyResult<F>> cls;
    auto division = [&]() {
        if (!cls) cls = classify_isotropy(c);
        return cls->kind == Isotropy::division_type;
    };
    auto append = [&](std::vector<CheckOutcome> v) {
        for (CheckOutcome& o : v) out.push_back(std::move(o));
    };

    std::vector<Suite> todo;
    if (suite == Suite::all)
        todo = {Suite::axioms, Suite::thm31, Suite::lemma43, Suite::thm41,
                Suite::lemma44, Suite::cor44, Suite::thm45, Suite::section5};
    else
        todo = {suite};

    for (Suite s : todo) {
        switch (s) {
        case Suite::axioms:
            append(check_axioms(c, SampleSpec{seed, samples + 16, true}));
            break;
        case Suite::thm31:
            append(verify_theorem_3_1(context()));
            break;
        case Suite::lemma43:
            append(verify_lemma_4_3(context()));
            break;
        case Suite::thm41:
            if (!c.grading())
                out.push_back(CheckOutcome::skip_outcome(
                    "thm41", "any 2-local derivation of the split Cayley algebra is a derivation",
                    "NotSplit: requires the canonical graded basis"));
            else
                append(verify_theorem_4_1(context()));
            break;
        case Suite::lemma44:
            if (!c.grading())
                out.push_back(CheckOutcome::skip_outcome(
                    "lemma44", "the subspaces L(u1 + v1), L'(u1 + mu v1), L'(u2 + v2) have dimension 5",
                    "NotSplit: requires the canonical graded basis"));
            else
                append(verify_lemma_4_4(context()));
            break;
        case Suite::cor44:
            if (!division())
                out.push_back(CheckOutcome::skip_outcome(
                    "cor44", "S y = (F1 + Fx + Fy)^perp",
                    "NotDivision: the norm is not certified anisotropic (" + cls->reason + ")"));
            else
                append(verify_corollary_4_4(context()));
            break;
        case Suite::thm45:
            if (!division())
                out.push_back(CheckOutcome::skip_outcome(
                    "thm45", "any local derivation of C is a 2-local derivation",
                    "NotDivision: the norm is not certified anisotropic (" + cls->reason + ")"));
            else
                append(verify_theorem_4_5(context()));
            break;
        case Suite::section5:
            if (c.spec().characteristic() == 2)
                out.push_back(CheckOutcome::skip_outcome(
                    "section5", "C0^- with [x, y] = (xy - yx)/2 is a simple Malcev algebra",
                    "CharacteristicTwo: the products (xy -+ yx)/2 are undefined"));
            else
                append(verify_section_5(context()));
            break;
        case Suite::all:
            break;
        }
    }
    return out;
}

} // namespace cayley

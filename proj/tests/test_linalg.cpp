#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <vector>

#include "cayley/field.hpp"
#include "cayley/linalg.hpp"
#include "cayley/sampling.hpp"

using namespace cayley;

namespace {

template <ScalarField F>
Matrix<F> random_matrix(const FieldSpec& s, std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix<F> m(s, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = F::from_int(s, rng.int_in(-5, 5));
    return m;
}

/// Independent determinant oracle: Laplace expansion along the first row.
template <ScalarField F>
F slow_det(const Matrix<F>& m) {
    std::size_t n = m.rows();
    if (n == 1) return m.at(0, 0);
    F acc = F::zero(m.spec());
    for (std::size_t j = 0; j < n; ++j) {
        if (m.at(0, j).is_zero()) continue;
        Matrix<F> minor(m.spec(), n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(r - 1, cc++) = m.at(r, c);
            }
        }
        F term = m.at(0, j) * slow_det(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

template <ScalarField F>
bool in_rowspace(const Matrix<F>& m, const Vec<F>& v) {
    return Subspace<F>::span(m).contains(v);
}

} // namespace

TEST_CASE("rref reaches the canonical reduced form", "[linalg]") {
    FieldSpec q = FieldSpec::rationals();
    SECTION("worked example") {
        Matrix<Rational> m(q, 3, 4);
        int data[3][4] = {{1, 2, 1, 3}, {2, 4, 0, 2}, {1, 2, 3, 7}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 4; ++j) m.at(i, j) = Rational(data[i][j]);
        RrefResult<Rational> r = rref(m);
        CHECK(r.rank() == 2);
        CHECK(r.pivot_cols == std::vector<std::size_t>{0, 2});
        // Row reduce by hand: rows (1,2,0,1) and (0,0,1,2), then a zero row.
        Matrix<Rational> expect(q, 3, 4);
        int ex[3][4] = {{1, 2, 0, 1}, {0, 0, 1, 2}, {0, 0, 0, 0}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 4; ++j) expect.at(i, j) = Rational(ex[i][j]);
        CHECK(r.reduced == expect);
    }
    SECTION("idempotence on random input") {
        Rng rng(7);
        for (int trial = 0; trial < 20; ++trial) {
            Matrix<Rational> m = random_matrix<Rational>(q, 5, 7, rng);
            RrefResult<Rational> once = rref(m);
            RrefResult<Rational> twice = rref(once.reduced);
            CHECK(once.reduced == twice.reduced);
            CHECK(once.pivot_cols == twice.pivot_cols);
        }
    }
    SECTION("rank agrees with the determinant oracle") {
        for (std::uint64_t p : {2ull, 5ull}) {
            FieldSpec s = FieldSpec::prime(p);
            Rng rng(11);
            for (int trial = 0; trial < 40; ++trial) {
                Matrix<GFp> m = random_matrix<GFp>(s, 4, 4, rng);
                bool full_rank = rank(m) == 4;
                CHECK(full_rank == !slow_det(m).is_zero());
            }
        }
    }
}

TEST_CASE("nullspace and solve", "[linalg]") {
    FieldSpec q = FieldSpec::rationals();
    FieldSpec f5 = FieldSpec::prime(5);

    SECTION("nullspace vectors are solutions and satisfy rank-nullity") {
        Rng rng(3);
        for (int trial = 0; trial < 25; ++trial) {
            Matrix<Rational> m = random_matrix<Rational>(q, 4, 6, rng);
            Subspace<Rational> ns = nullspace(m);
            CHECK(rank(m) + ns.dim() == m.cols());
            for (std::size_t i = 0; i < ns.dim(); ++i) CHECK(is_zero_vec(m.apply(ns.basis_row(i))));
        }
        Rng rng5(4);
        for (int trial = 0; trial < 25; ++trial) {
            Matrix<GFp> m = random_matrix<GFp>(f5, 6, 4, rng5);
            Subspace<GFp> ns = nullspace(m);
            CHECK(rank(m) + ns.dim() == m.cols());
            for (std::size_t i = 0; i < ns.dim(); ++i) CHECK(is_zero_vec(m.apply(ns.basis_row(i))));
        }
    }
    SECTION("consistent systems are solved exactly") {
        Rng rng(9);
        for (int trial = 0; trial < 25; ++trial) {
            Matrix<Rational> a = random_matrix<Rational>(q, 5, 3, rng);
            Vec<Rational> x;
            for (int i = 0; i < 3; ++i) x.push_back(Rational(rng.int_in(-4, 4)));
            Vec<Rational> b = a.apply(x);
            std::optional<Vec<Rational>> sol = solve(a, b);
            REQUIRE(sol.has_value());
            CHECK(a.apply(*sol) == b);
        }
    }
    SECTION("inconsistency is detected") {
        Matrix<Rational> a(q, 2, 1);
        a.at(0, 0) = Rational(1);
        a.at(1, 0) = Rational(1);
        CHECK_FALSE(solve(a, Vec<Rational>{Rational(1), Rational(2)}).has_value());
        CHECK(solve(a, Vec<Rational>{Rational(2), Rational(2)}).has_value());
    }
    SECTION("solve_many matches solve column by column") {
        Rng rng(13);
        for (int trial = 0; trial < 10; ++trial) {
            Matrix<GFp> a = random_matrix<GFp>(f5, 5, 4, rng);
            Matrix<GFp> rhs = random_matrix<GFp>(f5, 5, 6, rng);
            std::vector<std::optional<Vec<GFp>>> many = solve_many(a, rhs);
            REQUIRE(many.size() == 6);
            for (std::size_t k = 0; k < 6; ++k) {
                std::optional<Vec<GFp>> single = solve(a, rhs.col(k));
                REQUIRE(many[k].has_value() == single.has_value());
                if (many[k]) CHECK(a.apply(*many[k]) == rhs.col(k));
            }
        }
    }
}

TEST_CASE("subspaces are canonical and support exact calculus", "[linalg]") {
    FieldSpec q = FieldSpec::rationals();
    FieldSpec f7 = FieldSpec::prime(7);

    SECTION("equal spans compare equal") {
        // span{(1,1,0), (0,1,1)} written two different ways.
        auto s1 = Subspace<Rational>::span_of(q, 3,
                                              {{Rational(1), Rational(1), Rational(0)},
                                               {Rational(0), Rational(1), Rational(1)}});
        auto s2 = Subspace<Rational>::span_of(q, 3,
                                              {{Rational(2), Rational(3), Rational(1)},
                                               {Rational(1), Rational(2), Rational(1)},
                                               {Rational(3), Rational(5), Rational(2)}});
        CHECK(s1 == s2);
        CHECK(s1.dim() == 2);
        CHECK(s1.contains(Vec<Rational>{Rational(1), Rational(0), Rational(-1)}));
        CHECK_FALSE(s1.contains(Vec<Rational>{Rational(1), Rational(0), Rational(0)}));
    }
    SECTION("coordinates reproduce the vector") {
        Rng rng(21);
        Matrix<GFp> m = random_matrix<GFp>(f7, 3, 6, rng);
        Subspace<GFp> s = Subspace<GFp>::span(m);
        for (int trial = 0; trial < 10; ++trial) {
            Vec<GFp> combo = zero_vec<GFp>(f7, 6);
            for (std::size_t i = 0; i < s.dim(); ++i)
                combo = add_vec(combo, scale_vec(GFp(f7, rng.int_in(0, 6)), s.basis_row(i)));
            std::optional<Vec<GFp>> coords = s.coordinates(combo);
            REQUIRE(coords.has_value());
            Vec<GFp> rebuilt = zero_vec<GFp>(f7, 6);
            for (std::size_t i = 0; i < s.dim(); ++i)
                rebuilt = add_vec(rebuilt, scale_vec((*coords)[i], s.basis_row(i)));
            CHECK(rebuilt == combo);
        }
    }
    SECTION("sum and intersection satisfy the dimension formula") {
        Rng rng(31);
        for (int trial = 0; trial < 20; ++trial) {
            Subspace<GFp> a = Subspace<GFp>::span(random_matrix<GFp>(f7, 3, 6, rng));
            Subspace<GFp> b = Subspace<GFp>::span(random_matrix<GFp>(f7, 3, 6, rng));
            Subspace<GFp> s = sum(a, b);
            Subspace<GFp> i = intersect(a, b);
            CHECK(s.dim() + i.dim() == a.dim() + b.dim());
            for (std::size_t r = 0; r < i.dim(); ++r) {
                CHECK(a.contains(i.basis_row(r)));
                CHECK(b.contains(i.basis_row(r)));
            }
            CHECK(s.contains(a));
            CHECK(s.contains(b));
        }
    }
    SECTION("orthogonal complements against a nondegenerate gram") {
        Rng rng(41);
        Matrix<GFp> gram = Matrix<GFp>::identity(f7, 6);
        for (int trial = 0; trial < 20; ++trial) {
            Subspace<GFp> a = Subspace<GFp>::span(random_matrix<GFp>(f7, 3, 6, rng));
            Subspace<GFp> perp = orth_complement(a, gram);
            CHECK(a.dim() + perp.dim() == 6);
            CHECK(orth_complement(perp, gram) == a);
            for (std::size_t r = 0; r < perp.dim(); ++r)
                for (std::size_t t = 0; t < a.dim(); ++t)
                    CHECK(dot(a.basis_row(t), perp.basis_row(r)).is_zero());
        }
    }
    SECTION("zero and full subspaces") {
        Subspace<Rational> z = Subspace<Rational>::zero(q, 4);
        CHECK(z.dim() == 0);
        CHECK(z.contains(zero_vec<Rational>(q, 4)));
        CHECK_FALSE(z.contains(Vec<Rational>{Rational(1), Rational(0), Rational(0), Rational(0)}));
        Subspace<Rational> f = Subspace<Rational>::full(q, 4);
        CHECK(f.dim() == 4);
        CHECK(sum(z, f) == f);
        CHECK(intersect(z, f) == z);
    }
    SECTION("ambient mismatches are rejected") {
        auto a3 = Subspace<Rational>::full(q, 3);
        auto a4 = Subspace<Rational>::full(q, 4);
        CHECK_THROWS_AS(sum(a3, a4), ambient_mismatch);
        CHECK_THROWS_AS(intersect(a3, a4), ambient_mismatch);
        CHECK_THROWS_AS(a3.contains(zero_vec<Rational>(q, 4)), ambient_mismatch);
    }
}

TEST_CASE("matrix building blocks", "[linalg]") {
    FieldSpec f5 = FieldSpec::prime(5);
    Rng rng(51);
    SECTION("transpose and product shapes") {
        Matrix<GFp> a = random_matrix<GFp>(f5, 2, 3, rng);
        Matrix<GFp> b = random_matrix<GFp>(f5, 3, 4, rng);
        Matrix<GFp> ab = a * b;
        CHECK(ab.rows() == 2);
        CHECK(ab.cols() == 4);
        CHECK(ab.transpose() == b.transpose() * a.transpose());
        CHECK_THROWS_AS(b * a, dimension_mismatch);
    }
    SECTION("stacking") {
        Matrix<GFp> a = random_matrix<GFp>(f5, 2, 3, rng);
        Matrix<GFp> b = random_matrix<GFp>(f5, 1, 3, rng);
        Matrix<GFp> v = vstack(a, b);
        CHECK(v.rows() == 3);
        CHECK(v.row(2) == b.row(0));
        Matrix<GFp> c = random_matrix<GFp>(f5, 2, 2, rng);
        Matrix<GFp> h = hstack(a, c);
        CHECK(h.cols() == 5);
        CHECK(h.at(1, 4) == c.at(1, 1));
    }
    SECTION("apply is matrix-vector multiplication") {
        Matrix<GFp> a = random_matrix<GFp>(f5, 3, 3, rng);
        Matrix<GFp> id = Matrix<GFp>::identity(f5, 3);
        for (std::size_t j = 0; j < 3; ++j) CHECK(a.apply(id.row(j)) == a.col(j));
    }
}

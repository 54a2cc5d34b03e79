#pragma once

// Deterministic sample pools.
//
// Pools are a function of (field, dimension, SampleSpec) only: the same seed
// yields the same vectors on every platform because mt19937_64 and the
// rejection reduction below are fully specified.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "field.hpp"
#include "linalg.hpp"

namespace cayley {

struct SampleSpec {
    std::uint64_t seed = 42;
    std::size_t pool_size = 200;
    bool include_basis_combinations = true;
};

/// Thin wrapper over std::mt19937_64 with unbiased range reduction.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}

    std::uint64_t next() { return g_(); }

    /// Uniform in [0, n), n > 0, by rejection.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = g_();
        } while (x >= limit);
        return x % n;
    }

    /// Uniform in [lo, hi] inclusive.
    long long int_in(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::mt19937_64 g_;
};

/// Structured pool of nonzero vectors in F^dim:
///   - all standard basis vectors,
///   - all pairwise sums and differences of basis vectors (when requested),
///   - random dense vectors with entries drawn from the integers -9..9,
/// deduplicated, filled up to at least spec.pool_size entries (less only when
/// the field is too small to contain that many distinct nonzero vectors).
template <ScalarField F>
std::vector<Vec<F>> sample_pool(const FieldSpec& field, std::size_t dim, const SampleSpec& spec) {
    std::vector<Vec<F>> pool;
    std::set<std::string> seen;
    auto push = [&](Vec<F> v) {
        if (is_zero_vec(v)) return false;
        if (!seen.insert(format_vec(v)).second) return false;
        pool.push_back(std::move(v));
        return true;
    };

    for (std::size_t i = 0; i < dim; ++i) {
        Vec<F> v = zero_vec<F>(field, dim);
        v[i] = F::one(field);
        push(std::move(v));
    }
    if (spec.include_basis_combinations) {
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = i + 1; j < dim; ++j) {
                Vec<F> s = zero_vec<F>(field, dim);
                s[i] = F::one(field);
                s[j] = F::one(field);
                push(std::move(s));
                Vec<F> d = zero_vec<F>(field, dim);
                d[i] = F::one(field);
                d[j] = -F::one(field);
                push(std::move(d));
            }
    }

    Rng rng(spec.seed);
    std::size_t attempts = 0;
    const std::size_t max_attempts = 200 + 50 * spec.pool_size;
    while (pool.size() < spec.pool_size && attempts < max_attempts) {
        ++attempts;
        Vec<F> v;
        v.reserve(dim);
        for (std::size_t i = 0; i < dim; ++i) v.push_back(F::from_int(field, rng.int_in(-9, 9)));
        push(std::move(v));
    }
    return pool;
}

} // namespace cayley

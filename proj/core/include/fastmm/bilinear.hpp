#ifndef FASTMM_BILINEAR_HPP
#define FASTMM_BILINEAR_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fastmm/matrix.hpp"

namespace fastmm {

/// A bilinear non-commutative matrix-multiplication scheme: three k^2 x t
/// coefficient matrices (U, V, W) over the rationals. Column s of U and V
/// forms the linear combinations entering product P_s; row r of W combines
/// the products into output block r = k*(h-1)+l (row-major over C blocks,
/// while U/V index the A/B blocks column-major).
struct BilinearAlgorithm {
    std::size_t k = 0;
    std::size_t t = 0;
    Matrix<Rational> u, v, w;
    std::string name;
};

/// Strassen's seven-product scheme for k = 2; all coefficients in {-1,0,1}.
BilinearAlgorithm strassen();

/// The definitional k^3-product scheme expressed as a bilinear algorithm
/// (0/1 indicator coefficients).
BilinearAlgorithm classical_algorithm(std::size_t k);

struct TensorWitness {
    std::size_t h, l, i, j;  // 1-based, matching the identity's indexing
};

struct ValidationResult {
    bool ok = false;
    std::optional<TensorWitness> witness;
};

/// Exhaustive exact check of the defining tensor identity.
ValidationResult validate(const BilinearAlgorithm& alg);

/// Per-column/row nonzero structure of (U, V, W) and the summation-depth
/// exponents entering the stationary error bound.
struct SparsityProfile {
    std::vector<std::size_t> a, b;      // nonzeros per column of U, V (size t)
    std::vector<std::size_t> c;         // nonzeros per row of W (size k^2)
    std::vector<int> alpha, beta, gamma;  // ceil(log2) of the above
    int max_term = 0;                     // max_{r,s} (alpha_s + beta_s + gamma_r + 3)
};

SparsityProfile sparsity_profile(const BilinearAlgorithm& alg);

/// Exact count of scalar multiplications of the recursion:
/// M(n) = t * M(n/k) above the cutoff, M(m) = m^3 at or below it.
/// n must be a power of k.
std::uint64_t count_multiplications(const BilinearAlgorithm& alg, std::size_t n,
                                    std::size_t cutoff);

/// Level-varying recursion plan; level j uses levels[j], and the recursion
/// falls through to classical multiplication at or below the cutoff (or when
/// the levels are exhausted).
struct RecursionSchedule {
    std::vector<BilinearAlgorithm> levels;
    std::size_t cutoff = 1;
};

/// Algorithm spec text format: line 1 "k t", then sections "U", "V", "W",
/// each k^2 lines of t rational entries.
BilinearAlgorithm parse_algorithm(std::istream& is);
BilinearAlgorithm parse_algorithm_string(const std::string& text);
void emit_algorithm(std::ostream& os, const BilinearAlgorithm& alg);
std::string emit_algorithm_string(const BilinearAlgorithm& alg);

namespace detail {

template <typename T>
Matrix<T> negated(const Matrix<T>& m) {
    Matrix<T> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = -m(i, j);
    return out;
}

// Accumulates sum_i coeff_i * block_i in ascending index order with
// sequential left-to-right additions. Coefficients +-1 turn into plain
// additions/subtractions; the leading term is copied (or sign-flipped,
// which is exact) rather than added to zero.
template <typename T, typename CoeffAt>
Matrix<T> linear_combination(const std::vector<Matrix<T>>& blocks, std::size_t count,
                             CoeffAt coeff_at, std::size_t side) {
    static const Rational kOne(1), kMinusOne(-1);
    Matrix<T> acc(side, side);
    bool started = false;
    for (std::size_t i = 0; i < count; ++i) {
        const Rational& c = coeff_at(i);
        if (c.is_zero()) continue;
        if (!started) {
            if (c == kOne) acc = blocks[i];
            else if (c == kMinusOne) acc = negated(blocks[i]);
            else acc = ScalarTraits<T>::from_rational(c) * blocks[i];
            started = true;
        } else {
            if (c == kOne) acc += blocks[i];
            else if (c == kMinusOne) acc -= blocks[i];
            else acc += ScalarTraits<T>::from_rational(c) * blocks[i];
        }
    }
    return acc;  // all-zero column yields the zero block
}

template <typename T>
Matrix<T> run_levels(const std::vector<BilinearAlgorithm>& levels, std::size_t depth,
                     bool stationary, const Matrix<T>& a, const Matrix<T>& b,
                     std::size_t cutoff) {
    const std::size_t n = a.rows();
    const bool have_level = stationary ? true : depth < levels.size();
    const BilinearAlgorithm& alg = stationary ? levels[0]
                                              : levels[std::min(depth, levels.size() - 1)];
    if (n <= cutoff || !have_level || n % alg.k != 0 || n == 1)
        return multiply_classical(a, b);

    const std::size_t k = alg.k;
    const std::size_t k2 = k * k;
    const std::size_t side = n / k;

    BlockGrid<T> ga = partition(a, k);
    BlockGrid<T> gb = partition(b, k);

    // Column-wise block order: index i -> A block (i mod k, i div k).
    std::vector<Matrix<T>> ablocks, bblocks;
    ablocks.reserve(k2);
    bblocks.reserve(k2);
    for (std::size_t i = 0; i < k2; ++i) ablocks.push_back(ga(i % k, i / k));
    for (std::size_t j = 0; j < k2; ++j) bblocks.push_back(gb(j % k, j / k));

    std::vector<Matrix<T>> products;
    products.reserve(alg.t);
    for (std::size_t s = 0; s < alg.t; ++s) {
        Matrix<T> sa = linear_combination(
            ablocks, k2, [&](std::size_t i) -> const Rational& { return alg.u(i, s); }, side);
        Matrix<T> sb = linear_combination(
            bblocks, k2, [&](std::size_t j) -> const Rational& { return alg.v(j, s); }, side);
        products.push_back(run_levels(levels, depth + 1, stationary, sa, sb, cutoff));
    }

    BlockGrid<T> gc;
    gc.k = k;
    gc.block_side = side;
    gc.blocks.reserve(k2);
    for (std::size_t r = 0; r < k2; ++r) {  // r -> C block (r div k, r mod k)
        gc.blocks.push_back(linear_combination(
            products, alg.t, [&](std::size_t s) -> const Rational& { return alg.w(r, s); },
            side));
    }
    return assemble(gc);
}

}  // namespace detail

/// Recursive multiplication with a fixed scheme. Inputs must be square of
/// equal side; they are padded once to the nearest power of k and the
/// result is cropped back.
template <typename T>
Matrix<T> multiply_stationary(const BilinearAlgorithm& alg, const Matrix<T>& a,
                              const Matrix<T>& b, std::size_t cutoff) {
    if (alg.k < 2 || alg.t < 1) throw std::invalid_argument("multiply_stationary: bad algorithm");
    if (!a.square() || !b.square() || a.rows() != b.rows())
        throw std::invalid_argument("multiply_stationary: inputs must be square of equal side");
    if (cutoff < 1) cutoff = 1;
    const std::size_t n = a.rows();
    Matrix<T> pa = pad_to_power(a, alg.k);
    Matrix<T> pb = pad_to_power(b, alg.k);
    std::vector<BilinearAlgorithm> levels{alg};
    Matrix<T> pc = detail::run_levels(levels, 0, /*stationary=*/true, pa, pb, cutoff);
    return pc.rows() == n ? pc : pc.crop(n, n);
}

/// Level-dependent recursion: level j uses schedule.levels[j]; exhausted
/// levels (or sides at/below the cutoff) fall through to classical
/// multiplication. Inputs are padded once to the least multiple of the
/// product of the level block sizes.
template <typename T>
Matrix<T> multiply_nonstationary(const RecursionSchedule& schedule, const Matrix<T>& a,
                                 const Matrix<T>& b) {
    if (schedule.levels.empty())
        throw std::invalid_argument("multiply_nonstationary: empty schedule");
    if (!a.square() || !b.square() || a.rows() != b.rows())
        throw std::invalid_argument("multiply_nonstationary: inputs must be square of equal side");
    std::size_t prod = 1;
    for (const auto& alg : schedule.levels) {
        if (alg.k < 2) throw std::invalid_argument("multiply_nonstationary: bad level");
        prod *= alg.k;
    }
    const std::size_t n = a.rows();
    std::size_t m = ((n + prod - 1) / prod) * prod;
    Matrix<T> pa(m, m), pb(m, m);
    pa.set_block(0, 0, a);
    pb.set_block(0, 0, b);
    std::size_t cutoff = schedule.cutoff < 1 ? 1 : schedule.cutoff;
    Matrix<T> pc = detail::run_levels(schedule.levels, 0, /*stationary=*/false, pa, pb, cutoff);
    return pc.rows() == n ? pc : pc.crop(n, n);
}

}  // namespace fastmm

#endif

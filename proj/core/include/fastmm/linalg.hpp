#ifndef FASTMM_LINALG_HPP
#define FASTMM_LINALG_HPP

#include <functional>
#include <string>
#include <vector>

#include "fastmm/bilinear.hpp"
#include "fastmm/norms.hpp"

namespace fastmm {

/// The reductions below are parametric in how matrices get multiplied.
template <typename T>
struct MultiplierHandle {
    std::string name;
    std::function<Matrix<T>(const Matrix<T>&, const Matrix<T>&)> fn;

    Matrix<T> operator()(const Matrix<T>& a, const Matrix<T>& b) const { return fn(a, b); }
};

template <typename T>
MultiplierHandle<T> make_classical_multiplier() {
    return {"classical", [](const Matrix<T>& a, const Matrix<T>& b) {
                return multiply_classical(a, b);
            }};
}

/// Wraps a bilinear scheme as a general rectangular multiplier: operands
/// are padded to a common square power of k, multiplied recursively, and
/// the result is cropped.
template <typename T>
MultiplierHandle<T> make_bilinear_multiplier(BilinearAlgorithm alg, std::size_t cutoff = 64) {
    std::string name = alg.name;
    return {name, [alg = std::move(alg), cutoff](const Matrix<T>& a, const Matrix<T>& b) {
                if (a.cols() != b.rows())
                    throw std::invalid_argument("multiply: inner dimensions disagree");
                std::size_t need = std::max({a.rows(), a.cols(), b.cols()});
                std::size_t m = 1;
                while (m < need) m *= alg.k;
                Matrix<T> pa(m, m), pb(m, m);
                pa.set_block(0, 0, a);
                pb.set_block(0, 0, b);
                Matrix<T> pc = multiply_stationary(alg, pa, pb, cutoff);
                return pc.crop(a.rows(), b.cols());
            }};
}

/// Singular (or numerically singular) input; carries the recursion level
/// at which the breakdown surfaced.
class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(const std::string& what, int level)
        : std::runtime_error(what), level_(level) {}
    int level() const { return level_; }

private:
    int level_;
};

namespace detail {

/// |pivot| below this is treated as a numerical zero: 1e3 * eps * |A|_F,
/// scale-relative; exact regimes use exact zero tests instead.
template <typename T>
double pivot_threshold(double input_frobenius) {
    return 1e3 * ScalarTraits<T>::epsilon() * input_frobenius;
}

template <typename T>
bool pivot_unusable(const T& pivot, double threshold) {
    if constexpr (ScalarTraits<T>::regime == Regime::Rational) {
        (void)threshold;
        return ScalarTraits<T>::is_zero(pivot);
    } else {
        return ScalarTraits<T>::abs(pivot) <= threshold;
    }
}

template <typename T>
Matrix<T> conj_transpose(const Matrix<T>& a) {
    Matrix<T> out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(j, i) = ScalarTraits<T>::conj(a(i, j));
    return out;
}

template <typename T>
Matrix<T> negated_block(const Matrix<T>& m) {
    Matrix<T> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = -m(i, j);
    return out;
}

/// Dense Gauss-Jordan inverse with partial (row) pivoting; the base case
/// of the block recursions.
template <typename T>
Matrix<T> gauss_inverse(const Matrix<T>& a, double threshold, int level) {
    const std::size_t n = a.rows();
    Matrix<T> w = a;
    Matrix<T> inv = Matrix<T>::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = ScalarTraits<T>::abs(w(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            double cand = ScalarTraits<T>::abs(w(r, col));
            if (cand > best) { best = cand; pivot = r; }
        }
        if (pivot_unusable(w(pivot, col), threshold))
            throw SingularMatrixError(
                "invert: singular or numerically singular input (pivot magnitude " +
                    std::to_string(best) + " below scale-relative threshold " +
                    std::to_string(threshold) + " at elimination column " +
                    std::to_string(col) + ", recursion level " + std::to_string(level) + ")",
                level);
        if (pivot != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(w(col, j), w(pivot, j));
                std::swap(inv(col, j), inv(pivot, j));
            }
        T d = w(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            w(col, j) = w(col, j) / d;
            inv(col, j) = inv(col, j) / d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || ScalarTraits<T>::is_zero(w(r, col))) continue;
            T f = w(r, col);
            for (std::size_t j = 0; j < n; ++j) {
                w(r, j) = w(r, j) - f * w(col, j);
                inv(r, j) = inv(r, j) - f * inv(col, j);
            }
        }
    }
    return inv;
}

/// Positive-definite Hermitian inverse by the 2x2 block recursion with the
/// Schur complement S = D - C A^-1 B.
template <typename T>
Matrix<T> hermitian_inverse(const Matrix<T>& a, const MultiplierHandle<T>& mult,
                            std::size_t cutoff, double threshold, int level) {
    const std::size_t m = a.rows();
    if (m <= cutoff) return gauss_inverse(a, threshold, level);
    const std::size_t m1 = (m + 1) / 2;
    const std::size_t m2 = m - m1;

    Matrix<T> a11 = a.block(0, 0, m1, m1);
    Matrix<T> b = a.block(0, m1, m1, m2);
    Matrix<T> c = a.block(m1, 0, m2, m1);
    Matrix<T> d = a.block(m1, m1, m2, m2);

    Matrix<T> e = hermitian_inverse(a11, mult, cutoff, threshold, level + 1);  // A^-1
    Matrix<T> ca = mult(c, e);                                                 // C A^-1
    Matrix<T> s = d - mult(ca, b);                                             // Schur
    Matrix<T> sinv = hermitian_inverse(s, mult, cutoff, threshold, level + 1);
    Matrix<T> eb = mult(e, b);  // A^-1 B

    Matrix<T> tr = negated_block(mult(eb, sinv));   // -A^-1 B S^-1
    Matrix<T> bl = negated_block(mult(sinv, ca));   // -S^-1 C A^-1
    Matrix<T> tl = e - mult(tr, ca);  // A^-1 + A^-1 B S^-1 C A^-1

    Matrix<T> out(m, m);
    out.set_block(0, 0, tl);
    out.set_block(0, m1, tr);
    out.set_block(m1, 0, bl);
    out.set_block(m1, m1, sinv);
    return out;
}

/// Upper-triangular inverse via the 2x2 block identity; base case is back
/// substitution on T X = I.
template <typename T>
Matrix<T> upper_tri_inverse(const Matrix<T>& t, const MultiplierHandle<T>& mult,
                            std::size_t cutoff, double threshold, int level) {
    const std::size_t m = t.rows();
    if (m <= cutoff) {
        Matrix<T> inv = Matrix<T>::identity(m);
        for (std::size_t col = 0; col < m; ++col) {
            // solve T x = e_col by back substitution
            for (std::size_t ii = m; ii-- > 0;) {
                T acc = inv(ii, col);
                for (std::size_t j = ii + 1; j < m; ++j) acc = acc - t(ii, j) * inv(j, col);
                if (pivot_unusable(t(ii, ii), threshold))
                    throw SingularMatrixError(
                        "triangular inverse: zero diagonal at row " + std::to_string(ii) +
                            ", recursion level " + std::to_string(level),
                        level);
                inv(ii, col) = acc / t(ii, ii);
            }
        }
        return inv;
    }
    const std::size_t m1 = (m + 1) / 2;
    const std::size_t m2 = m - m1;
    Matrix<T> t11 = t.block(0, 0, m1, m1);
    Matrix<T> t12 = t.block(0, m1, m1, m2);
    Matrix<T> t22 = t.block(m1, m1, m2, m2);
    Matrix<T> i11 = upper_tri_inverse(t11, mult, cutoff, threshold, level + 1);
    Matrix<T> i22 = upper_tri_inverse(t22, mult, cutoff, threshold, level + 1);
    Matrix<T> tr = negated_block(mult(mult(i11, t12), i22));
    Matrix<T> out(m, m);
    out.set_block(0, 0, i11);
    out.set_block(0, m1, tr);
    out.set_block(m1, m1, i22);
    return out;
}

}  // namespace detail

/// General inverse via X^-1 = X^* (X X^*)^-1. X X^* is positive-definite
/// Hermitian, so the block-Schur recursion applies to it unconditionally;
/// a possibly singular leading block of X itself is never inverted.
template <typename T>
Matrix<T> invert(const Matrix<T>& a, const MultiplierHandle<T>& mult,
                 std::size_t cutoff = 16) {
    if (!a.square()) throw std::invalid_argument("invert: matrix must be square");
    if (cutoff < 1) cutoff = 1;
    Matrix<T> astar = detail::conj_transpose(a);
    Matrix<T> gram = mult(a, astar);
    double threshold = detail::pivot_threshold<T>(norm(gram, NormKind::Frobenius));
    Matrix<T> gram_inv = detail::hermitian_inverse(gram, mult, cutoff, threshold, 0);
    return mult(astar, gram_inv);
}

/// A = L U P with L unit lower triangular (m x m), U upper trapezoidal
/// (m x n) with nonsingular diagonal, and P an n x n column permutation.
template <typename T>
struct LUPResult {
    Matrix<T> l, u;
    std::vector<std::size_t> perm;  // P(k, perm[k]) = 1

    Matrix<T> permutation_matrix() const {
        Matrix<T> p(perm.size(), perm.size());
        for (std::size_t k = 0; k < perm.size(); ++k)
            p(k, perm[k]) = ScalarTraits<T>::one();
        return p;
    }

    int permutation_sign() const {
        std::vector<bool> seen(perm.size(), false);
        int sign = 1;
        for (std::size_t k = 0; k < perm.size(); ++k) {
            if (seen[k]) continue;
            std::size_t len = 0, cur = k;
            while (!seen[cur]) {
                seen[cur] = true;
                cur = perm[cur];
                ++len;
            }
            if (len % 2 == 0) sign = -sign;
        }
        return sign;
    }
};

namespace detail {

template <typename T>
struct LUWork {
    Matrix<T> l, u;
    std::vector<std::size_t> perm;  // column k of U holds column perm[k] of A
};

template <typename T>
LUWork<T> lup_recurse(const Matrix<T>& a, const MultiplierHandle<T>& mult,
                      std::size_t cutoff, double threshold, int level) {
    const std::size_t m = a.rows(), n = a.cols();
    if (m <= cutoff) {
        LUWork<T> res;
        res.l = Matrix<T>::identity(m);
        res.u = a;
        res.perm.resize(n);
        for (std::size_t k = 0; k < n; ++k) res.perm[k] = k;
        for (std::size_t i = 0; i < m; ++i) {
            // pivot search along row i (column pivoting)
            std::size_t pivot = i;
            double best = i < n ? ScalarTraits<T>::abs(res.u(i, i)) : 0.0;
            for (std::size_t j = i + 1; j < n; ++j) {
                double cand = ScalarTraits<T>::abs(res.u(i, j));
                if (cand > best) { best = cand; pivot = j; }
            }
            if (i >= n || pivot_unusable(res.u(i, pivot), threshold))
                throw SingularMatrixError(
                    "lu_decompose: rank deficiency detected (no usable pivot in row " +
                        std::to_string(i) + " during column pivot search, recursion level " +
                        std::to_string(level) + ")",
                    level);
            if (pivot != i) {
                for (std::size_t r = 0; r < m; ++r) std::swap(res.u(r, i), res.u(r, pivot));
                std::swap(res.perm[i], res.perm[pivot]);
            }
            for (std::size_t r = i + 1; r < m; ++r) {
                if (ScalarTraits<T>::is_zero(res.u(r, i))) continue;
                T f = res.u(r, i) / res.u(i, i);
                res.l(r, i) = f;
                for (std::size_t j = i; j < n; ++j) res.u(r, j) = res.u(r, j) - f * res.u(i, j);
            }
        }
        return res;
    }

    const std::size_t m1 = (m + 1) / 2;
    const std::size_t m2 = m - m1;
    Matrix<T> a1 = a.block(0, 0, m1, n);
    Matrix<T> a2 = a.block(m1, 0, m2, n);

    LUWork<T> top = lup_recurse(a1, mult, cutoff, threshold, level + 1);

    // permute the bottom rows by the same column map used for U1
    Matrix<T> a2p(m2, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t r = 0; r < m2; ++r) a2p(r, k) = a2(r, top.perm[k]);

    // above the cutoff m >= 2, and n >= m > m1, so the right parts exist
    Matrix<T> u11 = top.u.block(0, 0, m1, m1);
    Matrix<T> u12 = top.u.block(0, m1, m1, n - m1);
    Matrix<T> b1 = a2p.block(0, 0, m2, m1);

    Matrix<T> u11_inv = upper_tri_inverse(u11, mult, cutoff, threshold, level);
    Matrix<T> f = mult(b1, u11_inv);

    Matrix<T> b2 = a2p.block(0, m1, m2, n - m1);
    Matrix<T> g = b2 - mult(f, u12);

    LUWork<T> bottom = lup_recurse(g, mult, cutoff, threshold, level + 1);

    LUWork<T> res;
    res.l = Matrix<T>(m, m);
    res.l.set_block(0, 0, top.l);
    res.l.set_block(m1, 0, f);
    res.l.set_block(m1, m1, bottom.l);

    res.u = Matrix<T>(m, n);
    res.u.set_block(0, 0, u11);
    // columns of U12 follow the bottom recursion's column permutation
    Matrix<T> u12p(m1, n - m1);
    for (std::size_t k = 0; k < n - m1; ++k)
        for (std::size_t r = 0; r < m1; ++r) u12p(r, k) = u12(r, bottom.perm[k]);
    res.u.set_block(0, m1, u12p);
    res.u.set_block(m1, m1, bottom.u);

    res.perm.resize(n);
    for (std::size_t k = 0; k < m1; ++k) res.perm[k] = top.perm[k];
    for (std::size_t k = 0; k < n - m1; ++k) res.perm[m1 + k] = top.perm[m1 + bottom.perm[k]];
    return res;
}

}  // namespace detail

/// Bunch-Hopcroft recursive LUP of a full-row-rank m x n matrix (m <= n):
/// split the rows in half, factor the top, eliminate through a triangular
/// inverse, recurse on the Schur complement, compose the permutations.
template <typename T>
LUPResult<T> lu_decompose(const Matrix<T>& a, const MultiplierHandle<T>& mult,
                          std::size_t cutoff = 16) {
    if (a.rows() > a.cols())
        throw std::invalid_argument("lu_decompose: requires m <= n (full row rank)");
    if (cutoff < 1) cutoff = 1;
    double threshold = detail::pivot_threshold<T>(norm(a, NormKind::Frobenius));
    detail::LUWork<T> w = detail::lup_recurse(a, mult, cutoff, threshold, 0);

    LUPResult<T> res;
    res.l = std::move(w.l);
    res.u = std::move(w.u);
    // w.perm maps U columns to A columns (U col k holds A col w.perm[k]);
    // A = L U P needs P(k, j) = 1 exactly when j = w.perm[k].
    res.perm = std::move(w.perm);
    return res;
}

/// det A = sign(P) * prod diag(U); rank deficiency yields exactly zero.
template <typename T>
T determinant(const Matrix<T>& a, const MultiplierHandle<T>& mult, std::size_t cutoff = 16) {
    if (!a.square()) throw std::invalid_argument("determinant: matrix must be square");
    LUPResult<T> lup;
    try {
        lup = lu_decompose(a, mult, cutoff);
    } catch (const SingularMatrixError&) {
        return ScalarTraits<T>::zero();
    }
    T det = ScalarTraits<T>::one();
    for (std::size_t i = 0; i < a.rows(); ++i) det = det * lup.u(i, i);
    if (lup.permutation_sign() < 0) det = -det;
    return det;
}

/// Solve A x = b through the LUP factorization (forward, back, unscatter).
template <typename T>
std::vector<T> solve(const Matrix<T>& a, const std::vector<T>& b,
                     const MultiplierHandle<T>& mult, std::size_t cutoff = 16) {
    if (!a.square()) throw std::invalid_argument("solve: matrix must be square");
    if (b.size() != a.rows()) throw std::invalid_argument("solve: rhs length mismatch");
    const std::size_t n = a.rows();
    LUPResult<T> lup = lu_decompose(a, mult, cutoff);  // throws if singular

    // L z = b
    std::vector<T> z(b);
    for (std::size_t i = 0; i < n; ++i) {
        T acc = z[i];
        for (std::size_t j = 0; j < i; ++j) acc = acc - lup.l(i, j) * z[j];
        z[i] = acc;
    }
    // U y = z
    std::vector<T> y(n, ScalarTraits<T>::zero());
    for (std::size_t i = n; i-- > 0;) {
        T acc = z[i];
        for (std::size_t j = i + 1; j < n; ++j) acc = acc - lup.u(i, j) * y[j];
        y[i] = acc / lup.u(i, i);
    }
    // x = P^-1 y, i.e. x[perm[k]] = y[k]
    std::vector<T> x(n, ScalarTraits<T>::zero());
    for (std::size_t k = 0; k < n; ++k) x[lup.perm[k]] = y[k];
    return x;
}

/// Inverts [[I,A,0],[0,I,B],[0,0,I]] and checks the inverse is
/// [[I,-A,AB],[0,I,-B],[0,0,I]] with AB taken from the multiplier; the
/// product-by-inversion identity. Exact comparison in the rational regime,
/// Frobenius tolerance elsewhere.
template <typename T>
bool verify_3block_identity(const Matrix<T>& a, const Matrix<T>& b,
                            const MultiplierHandle<T>& mult) {
    if (!a.square() || !b.square() || a.rows() != b.rows())
        throw std::invalid_argument("verify_3block_identity: inputs must be square, equal side");
    const std::size_t n = a.rows();
    Matrix<T> big(3 * n, 3 * n);
    big.set_block(0, 0, Matrix<T>::identity(n));
    big.set_block(n, n, Matrix<T>::identity(n));
    big.set_block(2 * n, 2 * n, Matrix<T>::identity(n));
    big.set_block(0, n, a);
    big.set_block(n, 2 * n, b);

    Matrix<T> inv = invert(big, mult);

    Matrix<T> expected(3 * n, 3 * n);
    expected.set_block(0, 0, Matrix<T>::identity(n));
    expected.set_block(n, n, Matrix<T>::identity(n));
    expected.set_block(2 * n, 2 * n, Matrix<T>::identity(n));
    expected.set_block(0, n, detail::negated_block(a));
    expected.set_block(n, 2 * n, detail::negated_block(b));
    expected.set_block(0, 2 * n, mult(a, b));  // AB read off the top-right block

    if constexpr (ScalarTraits<T>::regime == Regime::Rational) {
        return inv == expected;
    } else {
        double scale = 1.0 + norm(expected, NormKind::Frobenius);
        return norm(inv - expected, NormKind::Frobenius) <= 1e-8 * scale;
    }
}

}  // namespace fastmm

#endif

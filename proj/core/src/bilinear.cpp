#include "fastmm/bilinear.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fastmm {

namespace {

Matrix<Rational> from_rows(std::size_t rows, std::size_t cols,
                           std::initializer_list<int> vals) {
    Matrix<Rational> m(rows, cols);
    auto it = vals.begin();
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = Rational(*it++);
    return m;
}

int ceil_log2(std::size_t v) {
    if (v <= 1) return 0;
    int e = 0;
    std::size_t p = 1;
    while (p < v) { p <<= 1; ++e; }
    return e;
}

}  // namespace

BilinearAlgorithm strassen() {
    BilinearAlgorithm alg;
    alg.k = 2;
    alg.t = 7;
    alg.name = "strassen";
    // Rows are A entries column-wise: a11, a21, a12, a22. Columns are the
    // seven products M1..M7.
    alg.u = from_rows(4, 7, {
        1, 0, 1, 0, 1, -1, 0,   // a11
        0, 1, 0, 0, 0, 1, 0,    // a21
        0, 0, 0, 0, 1, 0, 1,    // a12
        1, 1, 0, 1, 0, 0, -1,   // a22
    });
    // Rows: b11, b21, b12, b22.
    alg.v = from_rows(4, 7, {
        1, 1, 0, -1, 0, 1, 0,   // b11
        0, 0, 0, 1, 0, 0, 1,    // b21
        0, 0, 1, 0, 0, 1, 0,    // b12
        1, 0, -1, 0, 1, 0, 1,   // b22
    });
    // Rows are C entries row-major: c11, c12, c21, c22.
    alg.w = from_rows(4, 7, {
        1, 0, 0, 1, -1, 0, 1,   // c11 = M1 + M4 - M5 + M7
        0, 0, 1, 0, 1, 0, 0,    // c12 = M3 + M5
        0, 1, 0, 1, 0, 0, 0,    // c21 = M2 + M4
        1, -1, 1, 0, 0, 1, 0,   // c22 = M1 - M2 + M3 + M6
    });
    return alg;
}

BilinearAlgorithm classical_algorithm(std::size_t k) {
    if (k < 2) throw std::invalid_argument("classical_algorithm: k must be >= 2");
    BilinearAlgorithm alg;
    alg.k = k;
    alg.t = k * k * k;
    alg.name = "classical-" + std::to_string(k);
    alg.u = Matrix<Rational>(k * k, alg.t);
    alg.v = Matrix<Rational>(k * k, alg.t);
    alg.w = Matrix<Rational>(k * k, alg.t);
    std::size_t s = 0;
    for (std::size_t h = 0; h < k; ++h)
        for (std::size_t q = 0; q < k; ++q)
            for (std::size_t l = 0; l < k; ++l, ++s) {
                alg.u(q * k + h, s) = Rational(1);  // A block (h, q), column-wise index
                alg.v(l * k + q, s) = Rational(1);  // B block (q, l)
                alg.w(h * k + l, s) = Rational(1);  // C block (h, l), row-major index
            }
    return alg;
}

ValidationResult validate(const BilinearAlgorithm& alg) {
    const std::size_t k = alg.k, k2 = k * k;
    if (alg.u.rows() != k2 || alg.v.rows() != k2 || alg.w.rows() != k2 ||
        alg.u.cols() != alg.t || alg.v.cols() != alg.t || alg.w.cols() != alg.t)
        throw std::invalid_argument("validate: coefficient shapes inconsistent with (k, t)");

    ValidationResult res;
    for (std::size_t h = 1; h <= k; ++h)
        for (std::size_t l = 1; l <= k; ++l) {
            const std::size_t r = k * (h - 1) + l;
            for (std::size_t i = 1; i <= k2; ++i) {
                const std::size_t p = (i - 1) % k + 1;
                const std::size_t q = (i - 1) / k + 1;
                for (std::size_t j = 1; j <= k2; ++j) {
                    const std::size_t m = (j - 1) % k + 1;
                    const std::size_t lp = (j - 1) / k + 1;
                    Rational sum(0);
                    for (std::size_t s = 0; s < alg.t; ++s) {
                        const Rational& us = alg.u(i - 1, s);
                        if (us.is_zero()) continue;
                        const Rational& vs = alg.v(j - 1, s);
                        if (vs.is_zero()) continue;
                        sum += us * vs * alg.w(r - 1, s);
                    }
                    const bool want_one = (p == h && q == m && lp == l);
                    if (sum != Rational(want_one ? 1 : 0)) {
                        res.ok = false;
                        res.witness = TensorWitness{h, l, i, j};
                        return res;
                    }
                }
            }
        }
    res.ok = true;
    return res;
}

SparsityProfile sparsity_profile(const BilinearAlgorithm& alg) {
    SparsityProfile p;
    p.a.resize(alg.t, 0);
    p.b.resize(alg.t, 0);
    p.c.resize(alg.k * alg.k, 0);
    for (std::size_t s = 0; s < alg.t; ++s)
        for (std::size_t i = 0; i < alg.k * alg.k; ++i) {
            if (!alg.u(i, s).is_zero()) ++p.a[s];
            if (!alg.v(i, s).is_zero()) ++p.b[s];
        }
    for (std::size_t r = 0; r < alg.k * alg.k; ++r)
        for (std::size_t s = 0; s < alg.t; ++s)
            if (!alg.w(r, s).is_zero()) ++p.c[r];

    int max_ab = 0, max_g = 0;
    for (std::size_t s = 0; s < alg.t; ++s) {
        p.alpha.push_back(ceil_log2(p.a[s]));
        p.beta.push_back(ceil_log2(p.b[s]));
        max_ab = std::max(max_ab, p.alpha[s] + p.beta[s]);
    }
    for (std::size_t r = 0; r < alg.k * alg.k; ++r) {
        p.gamma.push_back(ceil_log2(p.c[r]));
        max_g = std::max(max_g, p.gamma[r]);
    }
    p.max_term = max_ab + max_g + 3;
    return p;
}

std::uint64_t count_multiplications(const BilinearAlgorithm& alg, std::size_t n,
                                    std::size_t cutoff) {
    if (cutoff < 1) cutoff = 1;
    // n must be a power of k
    std::size_t check = n;
    while (check > 1) {
        if (check % alg.k != 0)
            throw std::invalid_argument("count_multiplications: n is not a power of k");
        check /= alg.k;
    }
    if (n <= cutoff)
        return static_cast<std::uint64_t>(n) * n * n;
    return alg.t * count_multiplications(alg, n / alg.k, cutoff);
}

void emit_algorithm(std::ostream& os, const BilinearAlgorithm& alg) {
    os << alg.k << ' ' << alg.t << '\n';
    const Matrix<Rational>* mats[3] = {&alg.u, &alg.v, &alg.w};
    const char* names[3] = {"U", "V", "W"};
    for (int m = 0; m < 3; ++m) {
        os << names[m] << '\n';
        for (std::size_t i = 0; i < alg.k * alg.k; ++i) {
            for (std::size_t s = 0; s < alg.t; ++s) {
                if (s) os << ' ';
                os << (*mats[m])(i, s).str();
            }
            os << '\n';
        }
    }
}

std::string emit_algorithm_string(const BilinearAlgorithm& alg) {
    std::ostringstream os;
    emit_algorithm(os, alg);
    return os.str();
}

BilinearAlgorithm parse_algorithm(std::istream& is) {
    BilinearAlgorithm alg;
    if (!(is >> alg.k >> alg.t))
        throw std::runtime_error("algorithm spec: malformed header (want 'k t')");
    if (alg.k < 2) throw std::runtime_error("algorithm spec: k must be >= 2");
    if (alg.t < alg.k * alg.k)
        throw std::runtime_error(
            "algorithm spec: t < k^2 violates the rank lower bound (computing k^2 "
            "independent entries takes at least k^2 products)");

    Matrix<Rational>* mats[3] = {&alg.u, &alg.v, &alg.w};
    const char* names[3] = {"U", "V", "W"};
    for (int m = 0; m < 3; ++m) {
        std::string head;
        if (!(is >> head) || head != names[m])
            throw std::runtime_error(std::string("algorithm spec: missing section ") + names[m]);
        *mats[m] = Matrix<Rational>(alg.k * alg.k, alg.t);
        for (std::size_t i = 0; i < alg.k * alg.k; ++i)
            for (std::size_t s = 0; s < alg.t; ++s) {
                std::string token;
                if (!(is >> token))
                    throw std::runtime_error(std::string("algorithm spec: section ") + names[m] +
                                             " truncated");
                try {
                    (*mats[m])(i, s) = Rational::parse(token);
                } catch (const std::invalid_argument& e) {
                    throw std::runtime_error(std::string("algorithm spec: bad entry in ") +
                                             names[m] + ": " + e.what());
                }
            }
    }
    alg.name = "spec-k" + std::to_string(alg.k) + "t" + std::to_string(alg.t);
    return alg;
}

BilinearAlgorithm parse_algorithm_string(const std::string& text) {
    std::istringstream is(text);
    return parse_algorithm(is);
}

}  // namespace fastmm

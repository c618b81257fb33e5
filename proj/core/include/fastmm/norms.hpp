#ifndef FASTMM_NORMS_HPP
#define FASTMM_NORMS_HPP

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "fastmm/matrix.hpp"

namespace fastmm {

/// The max-entry norm satisfies the block-partition condition but is not
/// consistent (submultiplicative); Frobenius and the 2-norm are both.
enum class NormKind { MaxEntry, Frobenius, Operator2Estimate };

const char* norm_name(NormKind k);

namespace detail {

/// Largest singular value estimated by power iteration on A*A.
/// Deterministic all-ones start, seeded random restart on stagnation.
double operator2_estimate(const Matrix<std::complex<double>>& a);

inline Matrix<std::complex<double>> as_complex(const Matrix<std::complex<double>>& a) {
    return a;
}
inline Matrix<std::complex<double>> as_complex(const Matrix<double>& a) {
    return to_complex(a);
}
inline Matrix<std::complex<double>> as_complex(const Matrix<Rounded>& a) {
    return to_complex(to_real(a));
}
inline Matrix<std::complex<double>> as_complex(const Matrix<Rational>& a) {
    return to_complex(to_real(a));
}

}  // namespace detail

template <typename T>
double norm(const Matrix<T>& a, NormKind kind) {
    switch (kind) {
        case NormKind::MaxEntry: {
            double m = 0.0;
            for (std::size_t i = 0; i < a.rows(); ++i)
                for (std::size_t j = 0; j < a.cols(); ++j)
                    m = std::max(m, ScalarTraits<T>::abs(a(i, j)));
            return m;
        }
        case NormKind::Frobenius: {
            double s = 0.0;
            for (std::size_t i = 0; i < a.rows(); ++i)
                for (std::size_t j = 0; j < a.cols(); ++j) {
                    double v = ScalarTraits<T>::abs(a(i, j));
                    s += v * v;
                }
            return std::sqrt(s);
        }
        case NormKind::Operator2Estimate:
            return detail::operator2_estimate(detail::as_complex(a));
    }
    throw std::logic_error("norm: unknown kind");
}

/// Grid partition of a matrix into blocks: interior + terminal cut points,
/// e.g. rows=4 with row_bounds={2,4} splits rows into [0,2) and [2,4).
struct GridPartition {
    std::vector<std::size_t> row_bounds;
    std::vector<std::size_t> col_bounds;
};

struct PartitionReport {
    bool lower_ok = false;  // max_s ||M_s|| <= ||M||
    bool upper_ok = false;  // ||M|| <= sum_s ||M_s||
};

namespace detail {
void validate_bounds(const std::vector<std::size_t>& bounds, std::size_t extent);
}

/// Checks both inequalities of the block-partition norm condition with a
/// 1e-12 relative tolerance.
template <typename T>
PartitionReport check_partition_condition(NormKind kind, const Matrix<T>& m,
                                          const GridPartition& part) {
    detail::validate_bounds(part.row_bounds, m.rows());
    detail::validate_bounds(part.col_bounds, m.cols());
    const double rel = 1e-12;

    double whole = norm(m, kind);
    double max_block = 0.0;
    double sum_blocks = 0.0;
    std::size_t r0 = 0;
    for (std::size_t rb : part.row_bounds) {
        std::size_t c0 = 0;
        for (std::size_t cb : part.col_bounds) {
            double nb = norm(m.block(r0, c0, rb - r0, cb - c0), kind);
            max_block = std::max(max_block, nb);
            sum_blocks += nb;
            c0 = cb;
        }
        r0 = rb;
    }
    PartitionReport rep;
    rep.lower_ok = max_block <= whole * (1.0 + rel);
    rep.upper_ok = whole <= sum_blocks * (1.0 + rel);
    return rep;
}

}  // namespace fastmm

#endif

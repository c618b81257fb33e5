#include "fastmm/norms.hpp"

namespace fastmm {

const char* norm_name(NormKind k) {
    switch (k) {
        case NormKind::MaxEntry: return "max-entry";
        case NormKind::Frobenius: return "frobenius";
        case NormKind::Operator2Estimate: return "operator-2";
    }
    return "?";
}

namespace detail {

void validate_bounds(const std::vector<std::size_t>& bounds, std::size_t extent) {
    if (bounds.empty() || bounds.back() != extent)
        throw std::invalid_argument("partition: bounds must end at the matrix extent");
    std::size_t prev = 0;
    for (std::size_t b : bounds) {
        if (b <= prev) throw std::invalid_argument("partition: bounds must be strictly increasing");
        prev = b;
    }
}

double operator2_estimate(const Matrix<std::complex<double>>& a) {
    const std::size_t n = a.cols();
    const int max_iters = 200;
    const double tol = 1e-10;

    auto apply_gram = [&a, n](const std::vector<std::complex<double>>& x) {
        // y = A* (A x)
        std::vector<std::complex<double>> ax(a.rows(), {0.0, 0.0});
        for (std::size_t i = 0; i < a.rows(); ++i) {
            std::complex<double> s{0.0, 0.0};
            for (std::size_t j = 0; j < n; ++j) s += a(i, j) * x[j];
            ax[i] = s;
        }
        std::vector<std::complex<double>> y(n, {0.0, 0.0});
        for (std::size_t j = 0; j < n; ++j) {
            std::complex<double> s{0.0, 0.0};
            for (std::size_t i = 0; i < a.rows(); ++i) s += std::conj(a(i, j)) * ax[i];
            y[j] = s;
        }
        return y;
    };
    auto norm2 = [](const std::vector<std::complex<double>>& x) {
        double s = 0.0;
        for (const auto& v : x) s += std::norm(v);
        return std::sqrt(s);
    };

    std::vector<std::complex<double>> x(n, {1.0, 0.0});
    double xn = norm2(x);
    for (auto& v : x) v /= xn;

    std::mt19937_64 rng(0x5eedf00d);  // only used if the start vector stalls
    double lambda = 0.0;
    for (int it = 0; it < max_iters; ++it) {
        auto y = apply_gram(x);
        double yn = norm2(y);
        if (yn == 0.0) {
            // start vector annihilated; restart from a random direction
            std::uniform_real_distribution<double> dist(-1.0, 1.0);
            for (auto& v : x) v = {dist(rng), dist(rng)};
            double rn = norm2(x);
            if (rn == 0.0) return 0.0;
            for (auto& v : x) v /= rn;
            continue;
        }
        double new_lambda = yn;  // ||A*A x|| for unit x
        for (std::size_t j = 0; j < n; ++j) x[j] = y[j] / yn;
        if (it > 0 && std::abs(new_lambda - lambda) <= tol * std::max(1.0, new_lambda)) {
            lambda = new_lambda;
            break;
        }
        lambda = new_lambda;
    }
    return std::sqrt(lambda);
}

}  // namespace detail
}  // namespace fastmm

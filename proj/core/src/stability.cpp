#include "fastmm/stability.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fastmm {

namespace {

std::size_t exact_log(std::size_t k, std::size_t n) {
    std::size_t m = 0, p = 1;
    while (p < n) {
        p *= k;
        ++m;
    }
    if (p != n) throw std::invalid_argument("n is not a power of k");
    return m;
}

}  // namespace

double mu_stationary(const SparsityProfile& profile, double norm_u, double norm_v,
                     double norm_w, double theta, std::size_t k, std::size_t n) {
    std::size_t m = exact_log(k, n);
    double base = theta * norm_u * norm_v * norm_w;
    return (1.0 + profile.max_term * static_cast<double>(m)) *
           std::pow(base, static_cast<double>(m));
}

double theta0(const SparsityProfile& profile) {
    std::size_t max_ab = 0, max_c = 0;
    for (std::size_t s = 0; s < profile.a.size(); ++s)
        max_ab = std::max(max_ab, profile.a[s] + profile.b[s]);
    for (std::size_t r = 0; r < profile.c.size(); ++r) max_c = std::max(max_c, profile.c[r]);
    return static_cast<double>(max_ab + max_c);
}

std::array<double, 3> coefficient_norms(const BilinearAlgorithm& alg) {
    return {norm(alg.u, NormKind::MaxEntry), norm(alg.v, NormKind::MaxEntry),
            norm(alg.w, NormKind::MaxEntry)};
}

double mu_nonstationary(const std::vector<PrePostLevel>& levels, double mu_base) {
    if (levels.empty()) throw std::invalid_argument("mu_nonstationary: empty level sequence");
    double mu = mu_base;
    for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
        mu = mu * it->t * it->post_norm * it->pre_norm * it->pre_norm +
             2.0 * it->f_pre * it->t * it->post_norm + it->f_post * it->pre_norm * it->pre_norm;
    }
    return mu;
}

double mu_stpp_exponent(double alpha, double beta) {
    if (beta <= 0) throw std::invalid_argument("mu_stpp_exponent: beta must be positive");
    return (alpha + 2.0) / (2.0 * beta);
}

double runtime_exponent(double alpha, double beta) {
    if (beta <= 0) throw std::invalid_argument("runtime_exponent: beta must be positive");
    return (alpha - 1.0) / beta;
}

OmegaBound omega_bound(const ExponentProblem& problem) {
    if (problem.triples.empty()) throw std::invalid_argument("omega_bound: no triples");
    for (const auto& t : problem.triples)
        if (t[0] <= 0 || t[1] <= 0 || t[2] <= 0)
            throw std::invalid_argument("omega_bound: degenerate triple (zero dimension)");
    if (problem.irrep_dims.empty() && problem.rank <= 0)
        throw std::invalid_argument("omega_bound: rank budget must be positive");
    for (long long d : problem.irrep_dims)
        if (d <= 0) throw std::invalid_argument("omega_bound: irrep dimension must be positive");

    auto lhs = [&problem](double w) {
        double s = 0;
        for (const auto& t : problem.triples) {
            double prod = static_cast<double>(t[0]) * t[1] * t[2];
            s += std::pow(prod, w / 3.0);
        }
        return s;
    };
    auto rhs = [&problem](double w) {
        if (problem.irrep_dims.empty()) return problem.rank;
        double s = 0;
        for (long long d : problem.irrep_dims) s += std::pow(static_cast<double>(d), w);
        return s;
    };
    auto f = [&](double w) { return lhs(w) - rhs(w); };

    const double f2 = f(2.0), f3 = f(3.0);
    OmegaBound out;
    if (f2 == 0.0) { out.omega = 2.0; return out; }
    if (f3 == 0.0) { out.omega = 3.0; return out; }
    if ((f2 > 0) == (f3 > 0)) {
        // no equality point inside [2,3]; report the nearer end, flagged
        if (f2 > 0) { out.omega = 2.0; out.clamped_low = true; }
        else { out.omega = 3.0; out.clamped_high = true; }
        return out;
    }
    double lo = 2.0, hi = 3.0;
    double flo = f2;
    while (hi - lo > 1e-9) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) { lo = hi = mid; break; }
        if ((fm > 0) == (flo > 0)) { lo = mid; flo = fm; }
        else hi = mid;
    }
    out.omega = 0.5 * (lo + hi);
    return out;
}

std::string error_report_csv_header() {
    return "n,algorithm,norm,p,epsilon,measured,mu,theta,pass";
}

std::string error_report_csv_row(const ErrorBoundReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << r.n << ',' << r.algorithm << ',' << norm_name(r.norm_kind) << ',' << r.p << ','
       << r.epsilon << ',' << r.measured_error << ',' << r.mu << ',' << r.theta_label << ','
       << (r.pass ? "true" : "false");
    return os.str();
}

ErrorBoundReport measure_error(const RoundedMultiplier& multiplier, const Matrix<double>& a,
                               const Matrix<double>& b, RoundingContext ctx, NormKind kind,
                               double mu, const std::string& theta_label, double slack,
                               const std::string& algorithm_name) {
    if (!a.square() || !b.square() || a.rows() != b.rows())
        throw std::invalid_argument("measure_error: inputs must be square of equal side");

    Matrix<Rounded> ra = to_rounded(a);
    Matrix<Rounded> rb = to_rounded(b);
    Matrix<Rounded> c_comp =
        with_rounding(ctx, [&]() { return multiplier(ra, rb); });

    // Exact reference from the same inputs; the difference is formed in
    // rational arithmetic so the measurement itself adds no error.
    Matrix<Rational> c_exact = multiply_classical(to_rational(a), to_rational(b));
    Matrix<Rational> diff = to_rational(c_comp) - c_exact;

    ErrorBoundReport rep;
    rep.n = a.rows();
    rep.algorithm = algorithm_name;
    rep.norm_kind = kind;
    rep.p = ctx.p;
    rep.epsilon = ctx.eps();
    rep.measured_error = norm(diff, kind);
    rep.norm_a = norm(a, kind);
    rep.norm_b = norm(b, kind);
    rep.mu = mu;
    rep.theta_label = theta_label;
    rep.slack = slack;
    rep.pass = rep.measured_error <=
               rep.mu * rep.epsilon * rep.norm_a * rep.norm_b * (1.0 + slack);
    return rep;
}

}  // namespace fastmm

#ifndef FASTMM_STABILITY_HPP
#define FASTMM_STABILITY_HPP

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "fastmm/bilinear.hpp"
#include "fastmm/norms.hpp"
#include "fastmm/rounding.hpp"

namespace fastmm {

/// Error-growth coefficient of the stationary recursion at side n = k^m:
///   (1 + max_{r,s}(alpha_s + beta_s + gamma_r + 3) * log_k n)
///     * (theta * |U| * |V| * |W|)^(log_k n).
/// theta is the sparsity constant surrogate (see theta0); the norms of the
/// coefficient matrices default to max-entry and are caller-supplied.
double mu_stationary(const SparsityProfile& profile, double norm_u, double norm_v,
                     double norm_w, double theta, std::size_t k, std::size_t n);

/// Conservative default instantiation of the sparsity constant:
/// max_s(a_s + b_s) + max_r c_r. The exact integer of the source analysis
/// depends on the sparsity pattern in an unspecified way, so reports always
/// record which value was used.
double theta0(const SparsityProfile& profile);

/// Max-entry norms of the three coefficient matrices.
std::array<double, 3> coefficient_norms(const BilinearAlgorithm& alg);

/// One level of the non-stationary pre/post-processed recursion.
struct PrePostLevel {
    double t = 1;          // block products at this level
    double pre_norm = 1;   // ||Pre||_op
    double post_norm = 1;  // ||Post||_op
    double f_pre = 0;      // pre-processing error coefficient
    double f_post = 0;     // post-processing error coefficient
};

/// Evaluates mu(n_1) from the bottom up:
///   mu(n_j) = mu(n_{j+1}) t_j |Post|_op |Pre|_op^2
///           + 2 f_pre(n_j) t_j |Post|_op + f_post(n_j) |Pre|_op^2.
double mu_nonstationary(const std::vector<PrePostLevel>& levels, double mu_base);

/// Error exponent (alpha+2)/(2 beta) of the group-theoretic algorithm
/// family with growth parameters (alpha, beta).
double mu_stpp_exponent(double alpha, double beta);

/// Running-time exponent (alpha-1)/beta; the sum with mu_stpp_exponent is
/// 3 alpha / (2 beta), strictly above 3 whenever alpha >= 2 beta + 1.
double runtime_exponent(double alpha, double beta);

/// Rank-based exponent bound: solve sum_i (e_i h_i l_i)^(w/3) = R for w in
/// [2,3], where R is the rank budget or, when irrep_dims is nonempty,
/// sum_k d_k^w.
struct ExponentProblem {
    std::vector<std::array<long long, 3>> triples;
    double rank = 0;
    std::vector<long long> irrep_dims;  // empty: plain rank right-hand side
};

struct OmegaBound {
    double omega = 3.0;
    bool clamped_low = false;   // equality point below 2
    bool clamped_high = false;  // equality point above 3
};

OmegaBound omega_bound(const ExponentProblem& problem);

/// Outcome of one empirical error measurement against the exact reference.
struct ErrorBoundReport {
    std::size_t n = 0;
    std::string algorithm;
    NormKind norm_kind = NormKind::MaxEntry;
    int p = 53;
    double epsilon = 0;
    double measured_error = 0;
    double norm_a = 0, norm_b = 0;
    double mu = 0;            // caller-supplied theoretical coefficient
    std::string theta_label;  // which sparsity-constant instantiation was used
    double slack = 0;
    bool pass = false;  // measured <= mu * eps * |A| * |B| * (1 + slack)
};

std::string error_report_csv_header();
std::string error_report_csv_row(const ErrorBoundReport& report);

using RoundedMultiplier =
    std::function<Matrix<Rounded>(const Matrix<Rounded>&, const Matrix<Rounded>&)>;

/// Runs the multiplier under the rounding context, compares against the
/// exact rational product of the same inputs, and fills a report. The
/// multiplier runs in this thread so the rounding-event order is fixed.
ErrorBoundReport measure_error(const RoundedMultiplier& multiplier, const Matrix<double>& a,
                               const Matrix<double>& b, RoundingContext ctx, NormKind kind,
                               double mu, const std::string& theta_label, double slack = 0.0,
                               const std::string& algorithm_name = "");

}  // namespace fastmm

#endif

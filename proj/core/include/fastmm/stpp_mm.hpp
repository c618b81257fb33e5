#ifndef FASTMM_STPP_MM_HPP
#define FASTMM_STPP_MM_HPP

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "fastmm/matrix.hpp"
#include "fastmm/tpp.hpp"

namespace fastmm {

/// A family of STPP collections, one per available N (ascending). Each
/// collection carries its own group, so families with growing H_N load the
/// same way as fixed-H fixtures.
struct AbelianSTPFamily {
    std::vector<AbelianTripleCollection> collections;

    const AbelianTripleCollection* find(int n_triples) const;
};

/// k_N = prod |X_i|; throws unless the X, Y and Z products agree.
std::size_t collection_k(const AbelianTripleCollection& c);

/// Validates every collection with the independent STPP checker and the
/// k_N product equality; throws with a witness description on failure.
void validate_family(const AbelianSTPFamily& family);

struct StppPlan {
    int n_triples = 0;        // the chosen N
    std::size_t padded_n = 0;  // k_N * N!
    bool base_case = false;    // N! >= n: multiply directly
};

/// Minimum available N with k_N * N! >= n; base case when N! >= n.
StppPlan plan(const AbelianSTPFamily& family, std::size_t n);

/// The wreath-product index sets X = (prod X_i) x Sym_N (and Y, Z),
/// enumerated tuple part outer, permutation part inner.
struct WreathIndexMaps {
    std::vector<WreathElement> x, y, z;
};

/// Builds the index sets and verifies the triple product property in the
/// wreath product; throws with the violating quotient triple otherwise.
WreathIndexMaps build_xyz(const WreathGroup& w, const AbelianTripleCollection& c);

/// Timings and optional intermediate snapshots of one multiplication run.
/// Steps 1, 3, 5, 7 move coefficients around without arithmetic; steps
/// 2, 4, 6 do the arithmetic.
struct StppStepTrace {
    std::array<double, 7> seconds{};
    std::size_t padded_n = 0;
    int n_triples = 0;
    bool base_case = false;

    bool capture = false;  // set to record the snapshots below
    std::vector<std::complex<double>> a, b;            // after step 1
    std::vector<std::complex<double>> a_hat, b_hat;    // after step 2
    std::vector<Matrix<std::complex<double>>> assembled_a, assembled_b;  // step 3
    std::vector<Matrix<std::complex<double>>> products;                  // step 4
    std::vector<std::complex<double>> c_hat;           // after step 5
    std::vector<std::complex<double>> c;               // after step 6
};

struct StppOptions {
    int recursion_depth = 1;     // levels of the group-theoretic recursion in step 4
    bool strassen_base = false;  // base multiplier: classical (default) or Strassen
    std::size_t base_cutoff = 32;
    StppStepTrace* trace = nullptr;
};

/// End-to-end group-theoretic multiplication of square complex matrices.
Matrix<std::complex<double>> multiply_stpp(const AbelianSTPFamily& family,
                                           const Matrix<std::complex<double>>& a,
                                           const Matrix<std::complex<double>>& b,
                                           const StppOptions& options = {});

/// Measured growth exponents of a family: least-squares fits of
/// log|H_N| against log N (alpha) and log k_N against N log N (beta).
/// The asymptotic claims are reported, never asserted; the product
/// equality defining k_N is checked exactly.
struct GrowthReport {
    std::vector<int> ns;
    std::vector<std::size_t> h_orders;
    std::vector<std::size_t> k_values;
    double alpha_hat = 0;
    double beta_hat = 0;
    bool fit_defined = false;   // at least two distinct abscissae
    bool conforming = false;    // heuristic: both fitted exponents positive
    std::string note;
};

GrowthReport measure_growth(const AbelianSTPFamily& family, const std::vector<int>& ns);

}  // namespace fastmm

#endif

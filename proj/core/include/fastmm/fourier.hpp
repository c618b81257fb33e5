#ifndef FASTMM_FOURIER_HPP
#define FASTMM_FOURIER_HPP

#include <complex>
#include <vector>

#include "fastmm/group.hpp"

namespace fastmm {

/// Vectors over C[H wr Sym_N] and C[H^N^ x| Sym_N] share one flat layout:
/// index = perm_rank * |H^N| + (element or character index). The group side
/// stores the coefficient of (v, sigma) at slot (rank(sigma), v).

/// a_hat[chi, sigma] = sum_{h in H^N} chi(h) a[sigma h], where sigma h is
/// the group product (sigma . h, sigma). Slice by slice this is the DFT of
/// h -> a_{sigma h} on H^N.
std::vector<std::complex<double>> fourier_wreath(const WreathGroup& w,
                                                 const std::vector<std::complex<double>>& a);

/// c[sigma h] = (1/|H^N|) sum_chi chi(-h) c_hat[chi, sigma]; inverse of
/// fourier_wreath.
std::vector<std::complex<double>> inverse_fourier_wreath(
    const WreathGroup& w, const std::vector<std::complex<double>>& c_hat);

}  // namespace fastmm

#endif

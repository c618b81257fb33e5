#include "fastmm/fourier.hpp"

#include <stdexcept>

namespace fastmm {

std::vector<std::complex<double>> fourier_wreath(const WreathGroup& w,
                                                 const std::vector<std::complex<double>>& a) {
    const std::size_t hn = w.hn().order();
    const std::size_t np = w.perm_count();
    if (a.size() != hn * np)
        throw std::invalid_argument("fourier_wreath: vector length != |H|^N * N!");
    std::vector<std::complex<double>> out(a.size(), {0.0, 0.0});
    for (std::size_t pi = 0; pi < np; ++pi) {
        const std::size_t base = pi * hn;
        for (std::size_t chi = 0; chi < hn; ++chi) {
            std::complex<double> s{0.0, 0.0};
            for (std::size_t h = 0; h < hn; ++h)
                s += w.char_value(chi, h) * a[base + w.act(pi, h)];
            out[base + chi] = s;
        }
    }
    return out;
}

std::vector<std::complex<double>> inverse_fourier_wreath(
    const WreathGroup& w, const std::vector<std::complex<double>>& c_hat) {
    const std::size_t hn = w.hn().order();
    const std::size_t np = w.perm_count();
    if (c_hat.size() != hn * np)
        throw std::invalid_argument("inverse_fourier_wreath: vector length != |H|^N * N!");
    std::vector<std::complex<double>> out(c_hat.size(), {0.0, 0.0});
    const double scale = 1.0 / static_cast<double>(hn);
    for (std::size_t pi = 0; pi < np; ++pi) {
        const std::size_t base = pi * hn;
        for (std::size_t h = 0; h < hn; ++h) {
            std::complex<double> s{0.0, 0.0};
            for (std::size_t chi = 0; chi < hn; ++chi)
                s += std::conj(w.char_value(chi, h)) * c_hat[base + chi];  // chi(-h)
            out[base + w.act(pi, h)] = s * scale;
        }
    }
    return out;
}

}  // namespace fastmm

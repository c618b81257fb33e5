#include "fastmm/stpp_mm.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <future>
#include <sstream>
#include <stdexcept>

#include "fastmm/bilinear.hpp"
#include "fastmm/fourier.hpp"

namespace fastmm {

namespace {

using Cplx = std::complex<double>;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::size_t factorial(int n) {
    std::size_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

int worker_count() {
    const char* env = std::getenv("FASTMM_THREADS");
    if (!env) return 1;
    int v = std::atoi(env);
    return v < 1 ? 1 : v;
}

std::string describe_element(const AbelianGroup& g, std::size_t idx) {
    std::vector<int> t = g.element(idx);
    std::string out = "(";
    for (std::size_t j = 0; j < t.size(); ++j) {
        if (j) out += ",";
        out += std::to_string(t[j]);
    }
    return out + ")";
}

Matrix<Cplx> base_multiply(const Matrix<Cplx>& a, const Matrix<Cplx>& b,
                           const StppOptions& options) {
    if (options.strassen_base)
        return multiply_stationary(strassen(), a, b, options.base_cutoff);
    return multiply_classical(a, b);
}

}  // namespace

const AbelianTripleCollection* AbelianSTPFamily::find(int n_triples) const {
    for (const auto& c : collections)
        if (static_cast<int>(c.n()) == n_triples) return &c;
    return nullptr;
}

std::size_t collection_k(const AbelianTripleCollection& c) {
    std::size_t kx = 1, ky = 1, kz = 1;
    for (const auto& t : c.triples) {
        kx *= t[0].size();
        ky *= t[1].size();
        kz *= t[2].size();
    }
    if (kx != ky || ky != kz) {
        std::ostringstream os;
        os << "family: subset size products disagree (prod|X_i|=" << kx
           << ", prod|Y_i|=" << ky << ", prod|Z_i|=" << kz << ")";
        throw std::invalid_argument(os.str());
    }
    return kx;
}

void validate_family(const AbelianSTPFamily& family) {
    if (family.collections.empty()) throw std::invalid_argument("family: no collections");
    for (const auto& c : family.collections) {
        collection_k(c);
        auto res = stpp_check(c);
        if (!res.ok) {
            const auto& w = *res.witness;
            std::ostringstream os;
            os << "family: STPP violated at triples (i,j,k)=(" << w.i + 1 << "," << w.j + 1
               << "," << w.k + 1 << ") with quotients q_x=" << describe_element(c.group, w.quotients[0])
               << " q_y=" << describe_element(c.group, w.quotients[1])
               << " q_z=" << describe_element(c.group, w.quotients[2]);
            throw std::invalid_argument(os.str());
        }
    }
}

StppPlan plan(const AbelianSTPFamily& family, std::size_t n) {
    if (n < 1) throw std::invalid_argument("plan: n must be >= 1");
    if (family.collections.empty()) throw std::invalid_argument("plan: empty family");
    for (const auto& c : family.collections) {
        const int nn = static_cast<int>(c.n());
        const std::size_t cap = collection_k(c) * factorial(nn);
        if (cap >= n) {
            StppPlan p;
            p.n_triples = nn;
            p.padded_n = cap;
            p.base_case = factorial(nn) >= n;
            return p;
        }
    }
    throw std::runtime_error("plan: family exhausted (no N with k_N * N! >= n)");
}

WreathIndexMaps build_xyz(const WreathGroup& w, const AbelianTripleCollection& c) {
    const int n = static_cast<int>(c.n());
    if (w.n() != n) throw std::invalid_argument("build_xyz: N mismatch");
    const std::size_t d = c.group.factors().size();

    auto enumerate = [&](int which) {
        // tuple part outer (mixed radix over the per-triple subsets, first
        // triple most significant), permutation part inner
        std::vector<std::size_t> sizes(n);
        std::size_t count = 1;
        for (int s = 0; s < n; ++s) {
            sizes[s] = c.triples[s][which].size();
            count *= sizes[s];
        }
        std::vector<WreathElement> out;
        out.reserve(count * w.perm_count());
        for (std::size_t rank = 0; rank < count; ++rank) {
            std::size_t rest = rank;
            std::vector<int> tuple(d * n);
            for (int s = n - 1; s >= 0; --s) {
                std::size_t digit = rest % sizes[s];
                rest /= sizes[s];
                std::vector<int> block = c.group.element(c.triples[s][which][digit]);
                for (std::size_t j = 0; j < d; ++j) tuple[s * d + j] = block[j];
            }
            std::size_t h_idx = w.hn().index(tuple);
            for (const auto& sigma : w.perms()) out.push_back(WreathElement{h_idx, sigma});
        }
        return out;
    };

    WreathIndexMaps maps;
    maps.x = enumerate(0);
    maps.y = enumerate(1);
    maps.z = enumerate(2);

    WreathOps ops{&w};
    auto res = tpp_check(ops, maps.x, maps.y, maps.z);
    if (!res.ok) {
        std::ostringstream os;
        os << "build_xyz: triple product property fails in the wreath product"
           << " (witness quotient h-parts " << describe_element(w.hn(), (*res.witness)[0].h)
           << ", " << describe_element(w.hn(), (*res.witness)[1].h) << ", "
           << describe_element(w.hn(), (*res.witness)[2].h) << ")";
        throw std::invalid_argument(os.str());
    }
    return maps;
}

Matrix<Cplx> multiply_stpp(const AbelianSTPFamily& family, const Matrix<Cplx>& a,
                           const Matrix<Cplx>& b, const StppOptions& options) {
    if (!a.square() || !b.square() || a.rows() != b.rows())
        throw std::invalid_argument("multiply_stpp: inputs must be square of equal side");
    const std::size_t n0 = a.rows();
    StppPlan p = plan(family, n0);
    if (options.trace) {
        options.trace->padded_n = p.padded_n;
        options.trace->n_triples = p.n_triples;
        options.trace->base_case = p.base_case;
    }
    if (p.base_case || options.recursion_depth < 1) {
        return base_multiply(a, b, options);
    }

    const AbelianTripleCollection& coll = *family.find(p.n_triples);
    const WreathGroup w(coll.group, p.n_triples);
    const std::size_t hn = w.hn().order();
    const std::size_t np = w.perm_count();
    const std::size_t gsize = hn * np;
    const std::size_t n = p.padded_n;

    WreathIndexMaps maps = build_xyz(w, coll);
    if (maps.x.size() != n || maps.y.size() != n || maps.z.size() != n)
        throw std::logic_error("multiply_stpp: index set size mismatch");

    Matrix<Cplx> pa(n, n), pb(n, n);
    pa.set_block(0, 0, a);
    pb.set_block(0, 0, b);

    // Step 1 -- embedding (no arithmetic): a = sum A_{xy} e_{x^-1 y}.
    auto t0 = Clock::now();
    std::vector<Cplx> va(gsize, Cplx{0, 0}), vb(gsize, Cplx{0, 0});
    {
        std::vector<char> used(gsize, 0);
        for (std::size_t xi = 0; xi < n; ++xi) {
            WreathElement xinv = w.inv(maps.x[xi]);
            for (std::size_t yi = 0; yi < n; ++yi) {
                std::size_t slot = w.flat(w.mul(xinv, maps.y[yi]));
                if (used[slot]) throw std::logic_error("multiply_stpp: embedding collision");
                used[slot] = 1;
                va[slot] = pa(xi, yi);
            }
        }
        std::fill(used.begin(), used.end(), 0);
        for (std::size_t yi = 0; yi < n; ++yi) {
            WreathElement yinv = w.inv(maps.y[yi]);
            for (std::size_t zi = 0; zi < n; ++zi) {
                std::size_t slot = w.flat(w.mul(yinv, maps.z[zi]));
                if (used[slot]) throw std::logic_error("multiply_stpp: embedding collision");
                used[slot] = 1;
                vb[slot] = pb(yi, zi);
            }
        }
    }
    if (options.trace) {
        options.trace->seconds[0] = seconds_since(t0);
        if (options.trace->capture) {
            options.trace->a = va;
            options.trace->b = vb;
        }
    }

    // Step 2 -- Fourier transform (arithmetic).
    t0 = Clock::now();
    std::vector<Cplx> a_hat = fourier_wreath(w, va);
    std::vector<Cplx> b_hat = fourier_wreath(w, vb);
    if (options.trace) {
        options.trace->seconds[1] = seconds_since(t0);
        if (options.trace->capture) {
            options.trace->a_hat = a_hat;
            options.trace->b_hat = b_hat;
        }
    }

    // Step 3 -- assemble matrices (no arithmetic):
    //   A^chi_{rho sigma} = a_hat_{rho.chi, sigma rho^-1}
    //   B^chi_{sigma tau} = b_hat_{sigma.chi, tau sigma^-1}.
    t0 = Clock::now();
    std::vector<std::size_t> reps = orbit_representatives(coll.group, p.n_triples);
    std::vector<Matrix<Cplx>> amats, bmats;
    amats.reserve(reps.size());
    bmats.reserve(reps.size());
    for (std::size_t chi0 : reps) {
        Matrix<Cplx> am(np, np), bm(np, np);
        for (std::size_t r = 0; r < np; ++r) {
            std::size_t rinv = w.perm_inverse(r);
            std::size_t chi_r = w.act_char(r, chi0);
            for (std::size_t s = 0; s < np; ++s) {
                std::size_t slice = w.compose(s, rinv);  // sigma rho^-1
                am(r, s) = a_hat[slice * hn + chi_r];
                bm(r, s) = b_hat[slice * hn + chi_r];
            }
        }
        amats.push_back(std::move(am));
        bmats.push_back(std::move(bm));
    }
    if (options.trace) {
        options.trace->seconds[2] = seconds_since(t0);
        if (options.trace->capture) {
            options.trace->assembled_a = amats;
            options.trace->assembled_b = bmats;
        }
    }

    // Step 4 -- multiply matrices (arithmetic). With the composition
    // convention (sigma tau)(s) = sigma(tau(s)) used throughout, the
    // product that realizes the group-algebra convolution is B^chi * A^chi;
    // end-to-end agreement with the classical oracle pins this down.
    t0 = Clock::now();
    std::vector<Matrix<Cplx>> cmats(reps.size(), Matrix<Cplx>(1, 1));
    StppOptions rec = options;
    rec.recursion_depth = options.recursion_depth - 1;
    rec.trace = nullptr;
    auto multiply_one = [&](std::size_t idx) {
        if (rec.recursion_depth >= 1 && np > 1) {
            cmats[idx] = multiply_stpp(family, bmats[idx], amats[idx], rec);
        } else {
            cmats[idx] = base_multiply(bmats[idx], amats[idx], options);
        }
    };
    const int workers = worker_count();
    if (workers > 1 && reps.size() > 1) {
        std::vector<std::future<void>> futures;
        std::size_t chunk = (reps.size() + workers - 1) / workers;
        for (int t = 0; t < workers; ++t) {
            std::size_t lo = t * chunk, hi = std::min(reps.size(), lo + chunk);
            if (lo >= hi) break;
            futures.push_back(std::async(std::launch::async, [lo, hi, &multiply_one]() {
                for (std::size_t i = lo; i < hi; ++i) multiply_one(i);
            }));
        }
        for (auto& f : futures) f.get();
    } else {
        for (std::size_t i = 0; i < reps.size(); ++i) multiply_one(i);
    }
    if (options.trace) {
        options.trace->seconds[3] = seconds_since(t0);
        if (options.trace->capture) options.trace->products = cmats;
    }

    // Step 5 -- disassemble (no arithmetic): c_hat_{chi,sigma} =
    // C^{chi0}_{tau, sigma tau} where chi = tau . chi0.
    t0 = Clock::now();
    std::vector<std::size_t> rep_slot(hn, 0);
    for (std::size_t i = 0; i < reps.size(); ++i) rep_slot[reps[i]] = i;
    std::vector<Cplx> c_hat(gsize, Cplx{0, 0});
    for (std::size_t chi = 0; chi < hn; ++chi) {
        OrbitDecomposition dec = orbit_decompose(w, chi);
        const Matrix<Cplx>& cm = cmats[rep_slot[dec.rep]];
        for (std::size_t s = 0; s < np; ++s) {
            std::size_t col = w.compose(s, dec.tau_rank);  // sigma tau
            c_hat[s * hn + chi] = cm(dec.tau_rank, col);
        }
    }
    if (options.trace) {
        options.trace->seconds[4] = seconds_since(t0);
        if (options.trace->capture) options.trace->c_hat = c_hat;
    }

    // Step 6 -- inverse Fourier transform (arithmetic).
    t0 = Clock::now();
    std::vector<Cplx> vc = inverse_fourier_wreath(w, c_hat);
    if (options.trace) {
        options.trace->seconds[5] = seconds_since(t0);
        if (options.trace->capture) options.trace->c = vc;
    }

    // Step 7 -- output (no arithmetic): C_{xz} = c_{x^-1 z}.
    t0 = Clock::now();
    Matrix<Cplx> out(n, n);
    for (std::size_t xi = 0; xi < n; ++xi) {
        WreathElement xinv = w.inv(maps.x[xi]);
        for (std::size_t zi = 0; zi < n; ++zi)
            out(xi, zi) = vc[w.flat(w.mul(xinv, maps.z[zi]))];
    }
    if (options.trace) options.trace->seconds[6] = seconds_since(t0);

    return n == n0 ? out : out.crop(n0, n0);
}

GrowthReport measure_growth(const AbelianSTPFamily& family, const std::vector<int>& ns) {
    GrowthReport rep;
    for (int n : ns) {
        const AbelianTripleCollection* c = family.find(n);
        if (!c)
            throw std::invalid_argument("measure_growth: family has no N=" + std::to_string(n));
        rep.ns.push_back(n);
        rep.h_orders.push_back(c->group.order());
        rep.k_values.push_back(collection_k(*c));  // hard error on product mismatch
    }

    auto slope = [](const std::vector<double>& xs, const std::vector<double>& ys) {
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) { mx += xs[i]; my += ys[i]; }
        mx /= xs.size();
        my /= xs.size();
        double sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxx += (xs[i] - mx) * (xs[i] - mx);
            sxy += (xs[i] - mx) * (ys[i] - my);
        }
        return sxx == 0 ? std::make_pair(0.0, false) : std::make_pair(sxy / sxx, true);
    };

    std::vector<double> lx, ly, bx, by;
    for (std::size_t i = 0; i < rep.ns.size(); ++i) {
        double ln_n = std::log(static_cast<double>(rep.ns[i]));
        lx.push_back(ln_n);
        ly.push_back(std::log(static_cast<double>(rep.h_orders[i])));
        bx.push_back(rep.ns[i] * ln_n);
        by.push_back(std::log(static_cast<double>(rep.k_values[i])));
    }
    auto [alpha, aok] = slope(lx, ly);
    auto [beta, bok] = slope(bx, by);
    rep.alpha_hat = alpha;
    rep.beta_hat = beta;
    rep.fit_defined = aok && bok;
    rep.conforming = rep.fit_defined && alpha > 0.1 && beta > 0.01;
    if (!rep.fit_defined)
        rep.note = "fewer than two distinct abscissae; exponents undefined";
    else if (!rep.conforming)
        rep.note = "measured growth does not match the N^alpha / N^(beta N) template";
    return rep;
}

}  // namespace fastmm

#include "fastmm/group.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fastmm {

AbelianGroup::AbelianGroup(std::vector<int> factor_orders)
    : factors_(std::move(factor_orders)) {
    if (factors_.empty()) throw std::invalid_argument("AbelianGroup: no factors");
    order_ = 1;
    for (int f : factors_) {
        if (f < 1) throw std::invalid_argument("AbelianGroup: factor order must be >= 1");
        order_ *= static_cast<std::size_t>(f);
    }
}

std::vector<int> AbelianGroup::element(std::size_t index) const {
    std::vector<int> t(factors_.size());
    for (std::size_t j = factors_.size(); j-- > 0;) {
        t[j] = static_cast<int>(index % factors_[j]);
        index /= factors_[j];
    }
    return t;
}

std::size_t AbelianGroup::index(const std::vector<int>& tuple) const {
    if (tuple.size() != factors_.size())
        throw std::invalid_argument("AbelianGroup::index: tuple length mismatch");
    std::size_t idx = 0;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        int v = tuple[j] % factors_[j];
        if (v < 0) v += factors_[j];
        idx = idx * factors_[j] + static_cast<std::size_t>(v);
    }
    return idx;
}

std::size_t AbelianGroup::add(std::size_t a, std::size_t b) const {
    std::size_t idx = 0;
    // componentwise sum, most-significant factor first
    std::vector<int> ta = element(a), tb = element(b);
    for (std::size_t j = 0; j < factors_.size(); ++j)
        idx = idx * factors_[j] + static_cast<std::size_t>((ta[j] + tb[j]) % factors_[j]);
    return idx;
}

std::size_t AbelianGroup::negate(std::size_t a) const {
    std::vector<int> t = element(a);
    std::size_t idx = 0;
    for (std::size_t j = 0; j < factors_.size(); ++j)
        idx = idx * factors_[j] + static_cast<std::size_t>((factors_[j] - t[j]) % factors_[j]);
    return idx;
}

AbelianGroup AbelianGroup::power(int n) const {
    if (n < 1) throw std::invalid_argument("AbelianGroup::power: n must be >= 1");
    std::vector<int> f;
    f.reserve(factors_.size() * n);
    for (int s = 0; s < n; ++s) f.insert(f.end(), factors_.begin(), factors_.end());
    return AbelianGroup(std::move(f));
}

std::complex<double> char_eval(const AbelianGroup& g, std::size_t chi_index,
                               std::size_t h_index) {
    std::vector<int> c = g.element(chi_index);
    std::vector<int> h = g.element(h_index);
    // angle = sum_j c_j h_j / n_j, reduced mod 1 exactly over a common
    // denominator before touching floating point
    long long lcm = 1;
    for (int f : g.factors()) lcm = std::lcm<long long>(lcm, f);
    long long num = 0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        long long contrib = static_cast<long long>(c[j]) * h[j] % g.factors()[j];
        num = (num + contrib * (lcm / g.factors()[j])) % lcm;
    }
    constexpr double kTau = 6.283185307179586476925286766559;
    double angle = kTau * static_cast<double>(num) / static_cast<double>(lcm);
    return {std::cos(angle), std::sin(angle)};
}

SymPerm SymPerm::identity(int n) {
    SymPerm p;
    p.images.resize(n);
    std::iota(p.images.begin(), p.images.end(), 0);
    return p;
}

SymPerm SymPerm::compose(const SymPerm& tau) const {
    SymPerm out;
    out.images.resize(images.size());
    for (std::size_t s = 0; s < images.size(); ++s) out.images[s] = images[tau.images[s]];
    return out;
}

SymPerm SymPerm::inverse() const {
    SymPerm out;
    out.images.resize(images.size());
    for (std::size_t s = 0; s < images.size(); ++s) out.images[images[s]] = static_cast<int>(s);
    return out;
}

bool SymPerm::is_identity() const {
    for (std::size_t s = 0; s < images.size(); ++s)
        if (images[s] != static_cast<int>(s)) return false;
    return true;
}

std::vector<SymPerm> all_permutations(int n) {
    std::vector<SymPerm> out;
    SymPerm p = SymPerm::identity(n);
    do {
        out.push_back(p);
    } while (std::next_permutation(p.images.begin(), p.images.end()));
    return out;
}

std::size_t perm_rank(const SymPerm& sigma) {
    const int n = sigma.n();
    std::size_t rank = 0;
    std::size_t fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    for (int i = 0; i < n; ++i) {
        fact /= (n - i);
        int smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (sigma.images[j] < sigma.images[i]) ++smaller;
        rank += smaller * fact;
    }
    return rank;
}

WreathGroup::WreathGroup(AbelianGroup base, int n)
    : base_(std::move(base)), n_(n), hn_(base_.power(n)), perms_(all_permutations(n)) {
    const std::size_t hn_order = hn_.order();
    const std::size_t d = base_.factors().size();

    // block decomposition of H^N indices
    std::vector<std::vector<std::size_t>> blocks(hn_order, std::vector<std::size_t>(n_));
    for (std::size_t idx = 0; idx < hn_order; ++idx) {
        std::vector<int> tuple = hn_.element(idx);
        for (int s = 0; s < n_; ++s) {
            std::vector<int> sub(tuple.begin() + s * d, tuple.begin() + (s + 1) * d);
            blocks[idx][s] = base_.index(sub);
        }
    }
    auto encode_blocks = [&](const std::vector<std::size_t>& bs) {
        std::size_t idx = 0;
        for (int s = 0; s < n_; ++s) idx = idx * base_.order() + bs[s];
        return idx;
    };

    act_table_.assign(perms_.size(), std::vector<std::size_t>(hn_order));
    for (std::size_t pi = 0; pi < perms_.size(); ++pi) {
        SymPerm inv = perms_[pi].inverse();
        for (std::size_t idx = 0; idx < hn_order; ++idx) {
            std::vector<std::size_t> moved(n_);
            for (int s = 0; s < n_; ++s) moved[s] = blocks[idx][inv(s)];
            act_table_[pi][idx] = encode_blocks(moved);
        }
    }

    compose_table_.assign(perms_.size(), std::vector<std::size_t>(perms_.size()));
    inverse_table_.resize(perms_.size());
    for (std::size_t a = 0; a < perms_.size(); ++a) {
        for (std::size_t b = 0; b < perms_.size(); ++b)
            compose_table_[a][b] = perm_rank(perms_[a].compose(perms_[b]));
        inverse_table_[a] = perm_rank(perms_[a].inverse());
    }

    char_table_.assign(hn_order, std::vector<std::complex<double>>(hn_order));
    // chi(h) = prod_s chi_{block s}(h_{block s}); build from the base table
    std::vector<std::vector<std::complex<double>>> base_table(
        base_.order(), std::vector<std::complex<double>>(base_.order()));
    for (std::size_t c = 0; c < base_.order(); ++c)
        for (std::size_t h = 0; h < base_.order(); ++h)
            base_table[c][h] = char_eval(base_, c, h);
    for (std::size_t c = 0; c < hn_order; ++c)
        for (std::size_t h = 0; h < hn_order; ++h) {
            std::complex<double> v{1.0, 0.0};
            for (int s = 0; s < n_; ++s) v *= base_table[blocks[c][s]][blocks[h][s]];
            char_table_[c][h] = v;
        }
}

WreathElement WreathGroup::mul(const WreathElement& a, const WreathElement& b) const {
    if (a.sigma.n() != n_ || b.sigma.n() != n_)
        throw std::invalid_argument("WreathGroup::mul: group mismatch");
    std::size_t ra = perm_rank(a.sigma);
    WreathElement out;
    out.h = hn_.add(a.h, act(ra, b.h));
    out.sigma = a.sigma.compose(b.sigma);
    return out;
}

WreathElement WreathGroup::inv(const WreathElement& a) const {
    WreathElement out;
    out.sigma = a.sigma.inverse();
    out.h = act(perm_rank(out.sigma), hn_.negate(a.h));
    return out;
}

std::size_t WreathGroup::flat(const WreathElement& g) const {
    return perm_rank(g.sigma) * hn_.order() + g.h;
}

WreathElement WreathGroup::unflat(std::size_t idx) const {
    WreathElement g;
    g.h = idx % hn_.order();
    g.sigma = perms_[idx / hn_.order()];
    return g;
}

WreathElement wreath_mul(const AbelianGroup& base, int n, const WreathElement& a,
                         const WreathElement& b) {
    if (a.sigma.n() != n || b.sigma.n() != n)
        throw std::invalid_argument("wreath_mul: group mismatch");
    AbelianGroup hn = base.power(n);
    const std::size_t d = base.factors().size();
    // sigma . h: permute the N coordinate blocks of h by a.sigma
    std::vector<int> hb = hn.element(b.h);
    std::vector<int> moved(hb.size());
    SymPerm inv = a.sigma.inverse();
    for (int s = 0; s < n; ++s)
        for (std::size_t j = 0; j < d; ++j) moved[s * d + j] = hb[inv(s) * d + j];
    WreathElement out;
    out.h = hn.add(a.h, hn.index(moved));
    out.sigma = a.sigma.compose(b.sigma);
    return out;
}

WreathElement wreath_inv(const AbelianGroup& base, int n, const WreathElement& a) {
    AbelianGroup hn = base.power(n);
    const std::size_t d = base.factors().size();
    WreathElement out;
    out.sigma = a.sigma.inverse();
    std::vector<int> hneg = hn.element(hn.negate(a.h));
    std::vector<int> moved(hneg.size());
    SymPerm inv = out.sigma.inverse();  // = a.sigma
    for (int s = 0; s < n; ++s)
        for (std::size_t j = 0; j < d; ++j) moved[s * d + j] = hneg[inv(s) * d + j];
    out.h = hn.index(moved);
    return out;
}

std::vector<std::size_t> orbit_representatives(const AbelianGroup& h, int n) {
    if (n < 1) throw std::invalid_argument("orbit_representatives: n must be >= 1");
    const std::size_t hord = h.order();
    std::vector<std::size_t> reps;
    // nondecreasing block tuples (b_0 <= b_1 <= ... <= b_{n-1})
    std::vector<std::size_t> tuple(n, 0);
    while (true) {
        std::size_t idx = 0;
        for (int s = 0; s < n; ++s) idx = idx * hord + tuple[s];
        reps.push_back(idx);
        int pos = n - 1;
        while (pos >= 0 && tuple[pos] == hord - 1) --pos;
        if (pos < 0) break;
        std::size_t next = tuple[pos] + 1;
        for (int s = pos; s < n; ++s) tuple[s] = next;
    }
    return reps;
}

OrbitDecomposition orbit_decompose(const WreathGroup& w, std::size_t chi_idx) {
    // sort the block indices ascending -> lexicographically least in orbit
    const std::size_t hord = w.base().order();
    const int n = w.n();
    std::vector<std::size_t> blocks(n);
    std::size_t rest = chi_idx;
    for (int s = n - 1; s >= 0; --s) {
        blocks[s] = rest % hord;
        rest /= hord;
    }
    std::vector<std::size_t> sorted_blocks = blocks;
    std::sort(sorted_blocks.begin(), sorted_blocks.end());
    std::size_t rep = 0;
    for (int s = 0; s < n; ++s) rep = rep * hord + sorted_blocks[s];

    OrbitDecomposition out;
    out.rep = rep;
    // first permutation (lex order) with tau . rep == chi
    for (std::size_t pi = 0; pi < w.perm_count(); ++pi) {
        if (w.act_char(pi, rep) == chi_idx) {
            out.tau_rank = pi;
            return out;
        }
    }
    throw std::logic_error("orbit_decompose: no permutation maps representative to character");
}

}  // namespace fastmm

#ifndef FASTMM_GROUP_HPP
#define FASTMM_GROUP_HPP

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace fastmm {

/// Finite Abelian group as a product of cyclic factors. Elements are
/// residue tuples, addressed by a flat mixed-radix index (first factor most
/// significant); index 0 is the identity.
class AbelianGroup {
public:
    explicit AbelianGroup(std::vector<int> factor_orders);

    const std::vector<int>& factors() const { return factors_; }
    std::size_t order() const { return order_; }

    std::vector<int> element(std::size_t index) const;
    std::size_t index(const std::vector<int>& tuple) const;

    std::size_t add(std::size_t a, std::size_t b) const;
    std::size_t negate(std::size_t a) const;
    std::size_t identity() const { return 0; }

    /// H^n: the same factors repeated n times (block s of an element of
    /// H^n occupies factor positions [s*d, (s+1)*d)).
    AbelianGroup power(int n) const;

    bool operator==(const AbelianGroup& o) const { return factors_ == o.factors_; }

private:
    std::vector<int> factors_;
    std::size_t order_;
};

/// chi_c(h) = exp(2 pi i sum_j c_j h_j / n_j). Characters are indexed by
/// coefficient tuples through the canonical bijection with the group itself.
/// The angle is reduced exactly as a rational before the complex
/// exponential is taken.
std::complex<double> char_eval(const AbelianGroup& g, std::size_t chi_index,
                               std::size_t h_index);

/// Permutation of {0..n-1}; images[s] = sigma(s). Composition is
/// (sigma o tau)(s) = sigma(tau(s)).
struct SymPerm {
    std::vector<int> images;

    static SymPerm identity(int n);
    int n() const { return static_cast<int>(images.size()); }
    int operator()(int s) const { return images[s]; }

    SymPerm compose(const SymPerm& tau) const;  // this o tau
    SymPerm inverse() const;

    bool operator==(const SymPerm& o) const { return images == o.images; }
    bool is_identity() const;
};

/// All n! permutations in lexicographic order of their image tuples.
std::vector<SymPerm> all_permutations(int n);

/// Position of sigma in the lexicographic enumeration (Lehmer rank).
std::size_t perm_rank(const SymPerm& sigma);

/// (sigma . h)(s) = h(sigma^-1(s)) for a length-n sequence of blocks.
template <typename T>
std::vector<T> permute_blocks(const SymPerm& sigma, const std::vector<T>& h) {
    SymPerm inv = sigma.inverse();
    std::vector<T> out(h.size());
    for (std::size_t s = 0; s < h.size(); ++s) out[s] = h[inv(static_cast<int>(s))];
    return out;
}

/// Element (h, sigma) of H wr Sym_N = (H^N) x| Sym_N; h is a flat index
/// into H^N.
struct WreathElement {
    std::size_t h = 0;
    SymPerm sigma;

    bool operator==(const WreathElement& o) const { return h == o.h && sigma == o.sigma; }
};

/// H wr Sym_N with precomputed tables for the desk-scale orders used here.
class WreathGroup {
public:
    WreathGroup(AbelianGroup base, int n);

    const AbelianGroup& base() const { return base_; }
    const AbelianGroup& hn() const { return hn_; }  // H^N
    int n() const { return n_; }
    std::size_t order() const { return hn_.order() * perms_.size(); }

    const std::vector<SymPerm>& perms() const { return perms_; }
    std::size_t perm_count() const { return perms_.size(); }

    /// sigma . h on flat H^N indices (coordinate blocks permuted).
    std::size_t act(std::size_t perm_idx, std::size_t h_idx) const {
        return act_table_[perm_idx][h_idx];
    }
    std::size_t compose(std::size_t a, std::size_t b) const { return compose_table_[a][b]; }
    std::size_t perm_inverse(std::size_t a) const { return inverse_table_[a]; }

    WreathElement identity() const { return {0, SymPerm::identity(n_)}; }
    WreathElement mul(const WreathElement& a, const WreathElement& b) const;
    WreathElement inv(const WreathElement& a) const;

    /// Flat index of (h, sigma): perm_rank(sigma) * |H^N| + h.
    std::size_t flat(const WreathElement& g) const;
    WreathElement unflat(std::size_t idx) const;

    /// chi(h) with both arguments flat H^N indices; table-backed.
    const std::complex<double>& char_value(std::size_t chi_idx, std::size_t h_idx) const {
        return char_table_[chi_idx][h_idx];
    }

    /// sigma . chi on flat character indices (same block permutation).
    std::size_t act_char(std::size_t perm_idx, std::size_t chi_idx) const {
        return act_table_[perm_idx][chi_idx];
    }

private:
    AbelianGroup base_;
    int n_;
    AbelianGroup hn_;
    std::vector<SymPerm> perms_;
    std::vector<std::vector<std::size_t>> act_table_;      // perm x H^N
    std::vector<std::vector<std::size_t>> compose_table_;  // perm x perm
    std::vector<std::size_t> inverse_table_;
    std::vector<std::vector<std::complex<double>>> char_table_;  // chi x h
};

/// Free-standing semidirect multiplication for contexts without a
/// WreathGroup instance: (h1, q1)(h2, q2) = (h1 + q1.h2, q1 q2).
WreathElement wreath_mul(const AbelianGroup& base, int n, const WreathElement& a,
                         const WreathElement& b);
WreathElement wreath_inv(const AbelianGroup& base, int n, const WreathElement& a);

/// One representative per Sym_N-orbit of the characters of H^N: the
/// lexicographically least element of each orbit (block indices sorted
/// ascending). Cardinality C(|H| + N - 1, N).
std::vector<std::size_t> orbit_representatives(const AbelianGroup& h, int n);

/// Decomposition chi = tau . chi0 with chi0 the orbit representative and
/// tau the lexicographically least permutation realizing it.
struct OrbitDecomposition {
    std::size_t rep;       // flat index of chi0
    std::size_t tau_rank;  // rank of tau in the lex enumeration
};

OrbitDecomposition orbit_decompose(const WreathGroup& w, std::size_t chi_idx);

}  // namespace fastmm

#endif

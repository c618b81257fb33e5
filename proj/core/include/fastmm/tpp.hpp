#ifndef FASTMM_TPP_HPP
#define FASTMM_TPP_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fastmm/group.hpp"

namespace fastmm {

/// Group-operation adapters so the triple-product checks run over both
/// plain Abelian groups (elements are flat indices) and wreath products.

struct AbelianOps {
    const AbelianGroup* g;
    using Elem = std::size_t;
    Elem mul(Elem a, Elem b) const { return g->add(a, b); }
    Elem inv(Elem a) const { return g->negate(a); }
    Elem id() const { return 0; }
    std::uint64_t key(Elem a) const { return a; }
};

struct WreathOps {
    const WreathGroup* w;
    using Elem = WreathElement;
    Elem mul(const Elem& a, const Elem& b) const { return w->mul(a, b); }
    Elem inv(const Elem& a) const { return w->inv(a); }
    Elem id() const { return w->identity(); }
    std::uint64_t key(const Elem& a) const { return w->flat(a); }
};

/// Q(S, T) = {s t^-1}; deduplicated, ordered by element key so iteration
/// (and therefore the first witness found) is deterministic.
template <typename Ops>
std::vector<typename Ops::Elem> quotient_set(const Ops& ops,
                                             const std::vector<typename Ops::Elem>& s,
                                             const std::vector<typename Ops::Elem>& t) {
    std::map<std::uint64_t, typename Ops::Elem> dedup;
    for (const auto& a : s)
        for (const auto& b : t) {
            auto e = ops.mul(a, ops.inv(b));
            dedup.emplace(ops.key(e), e);
        }
    std::vector<typename Ops::Elem> out;
    out.reserve(dedup.size());
    for (auto& [k, e] : dedup) out.push_back(e);
    return out;
}

template <typename Elem>
struct TppResult {
    bool ok = false;
    std::optional<std::array<Elem, 3>> witness;  // violating (q_x, q_y, q_z)
};

/// Triple product property: q_x q_y q_z = 1 with q_x in Q(X), q_y in Q(Y),
/// q_z in Q(Z) forces q_x = q_y = q_z = 1. Exhaustive over the quotient
/// sets; the first violation in key order is returned as witness.
template <typename Ops>
TppResult<typename Ops::Elem> tpp_check(const Ops& ops,
                                        const std::vector<typename Ops::Elem>& x,
                                        const std::vector<typename Ops::Elem>& y,
                                        const std::vector<typename Ops::Elem>& z) {
    if (x.empty() || y.empty() || z.empty())
        throw std::invalid_argument("tpp_check: empty subset");
    auto qx = quotient_set(ops, x, x);
    auto qy = quotient_set(ops, y, y);
    auto qz = quotient_set(ops, z, z);
    std::map<std::uint64_t, typename Ops::Elem> qz_keys;
    for (const auto& e : qz) qz_keys.emplace(ops.key(e), e);

    const std::uint64_t id_key = ops.key(ops.id());
    TppResult<typename Ops::Elem> res;
    for (const auto& a : qx)
        for (const auto& b : qy) {
            auto need = ops.inv(ops.mul(a, b));  // q_z with q_x q_y q_z = 1
            auto it = qz_keys.find(ops.key(need));
            if (it == qz_keys.end()) continue;
            bool trivial = ops.key(a) == id_key && ops.key(b) == id_key &&
                           ops.key(need) == id_key;
            if (!trivial) {
                res.ok = false;
                res.witness = {a, b, it->second};
                return res;
            }
        }
    res.ok = true;
    return res;
}

template <typename Elem>
struct StppWitness {
    std::size_t i, j, k;  // 0-based triple indices
    std::array<Elem, 3> quotients;
};

template <typename Elem>
struct StppResult {
    bool ok = false;
    std::optional<StppWitness<Elem>> witness;
};

/// Simultaneous triple product property over a collection of ordered
/// triples: for q_x in Q(X_i, X_j), q_y in Q(Y_j, Y_k), q_z in Q(Z_k, Z_i),
/// q_x q_y q_z = 1 forces q_x = q_y = q_z = 1 and i = j = k.
template <typename Ops>
StppResult<typename Ops::Elem> stpp_check(
    const Ops& ops,
    const std::vector<std::array<std::vector<typename Ops::Elem>, 3>>& triples) {
    using Elem = typename Ops::Elem;
    const std::size_t n = triples.size();
    if (n == 0) throw std::invalid_argument("stpp_check: empty collection");
    for (const auto& t : triples)
        if (t[0].empty() || t[1].empty() || t[2].empty())
            throw std::invalid_argument("stpp_check: empty subset");

    // pairwise quotient sets, indexed [i][j]
    auto make_pairwise = [&](int which) {
        std::vector<std::vector<std::vector<Elem>>> q(n);
        for (std::size_t i = 0; i < n; ++i) {
            q[i].resize(n);
            for (std::size_t j = 0; j < n; ++j)
                q[i][j] = quotient_set(ops, triples[i][which], triples[j][which]);
        }
        return q;
    };
    auto qx = make_pairwise(0);
    auto qy = make_pairwise(1);
    auto qz = make_pairwise(2);

    const std::uint64_t id_key = ops.key(ops.id());
    StppResult<Elem> res;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                std::map<std::uint64_t, Elem> zkeys;
                for (const auto& e : qz[k][i]) zkeys.emplace(ops.key(e), e);
                for (const auto& a : qx[i][j])
                    for (const auto& b : qy[j][k]) {
                        auto need = ops.inv(ops.mul(a, b));
                        auto it = zkeys.find(ops.key(need));
                        if (it == zkeys.end()) continue;
                        bool trivial = i == j && j == k && ops.key(a) == id_key &&
                                       ops.key(b) == id_key && ops.key(need) == id_key;
                        if (!trivial) {
                            res.ok = false;
                            res.witness = StppWitness<Elem>{i, j, k, {a, b, it->second}};
                            return res;
                        }
                    }
            }
    res.ok = true;
    return res;
}

/// A collection of N ordered subset triples of one Abelian group; the unit
/// the search produces and the group-theoretic multiplier consumes.
struct AbelianTripleCollection {
    AbelianGroup group;
    std::vector<std::array<std::vector<std::size_t>, 3>> triples;

    std::size_t n() const { return triples.size(); }
};

StppResult<std::size_t> stpp_check(const AbelianTripleCollection& c);

/// Deterministic backtracking search for an STPP collection with the given
/// per-triple subset sizes. Elements are tried in ascending index order and
/// the partial collection is re-verified after every placement; the budget
/// caps placement attempts. Returns the first complete collection found.
std::optional<AbelianTripleCollection> stpp_search(
    const AbelianGroup& h, int n, const std::vector<std::array<std::size_t, 3>>& sizes,
    std::size_t budget = 1000000);

/// Uniform-size convenience overload.
std::optional<AbelianTripleCollection> stpp_search(const AbelianGroup& h, int n,
                                                   std::array<std::size_t, 3> sizes,
                                                   std::size_t budget = 1000000);

/// Family file format:
///   H: n1,...,nd
///   N: <count>
/// then N blocks of three lines "X: (a,b) (c,d) ...", "Y: ...", "Z: ...",
/// optionally terminated by the certificate line "STPP: verified".
void write_family(std::ostream& os, const AbelianTripleCollection& c, bool certified);
AbelianTripleCollection read_family(std::istream& is);
void save_family(const std::string& path, const AbelianTripleCollection& c, bool certified);
AbelianTripleCollection load_family(const std::string& path);

}  // namespace fastmm

#endif

#include <doctest.h>

#include <complex>
#include <random>

#include "fastmm/fourier.hpp"
#include "fastmm/group.hpp"

using namespace fastmm;

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST_CASE("abelian group indexing and arithmetic") {
    AbelianGroup g({2, 4});
    CHECK(g.order() == 8);
    CHECK(g.element(0) == std::vector<int>{0, 0});
    CHECK(g.element(5) == std::vector<int>{1, 1});
    for (std::size_t i = 0; i < 8; ++i) CHECK(g.index(g.element(i)) == i);
    CHECK(g.add(g.index({1, 3}), g.index({1, 2})) == g.index({0, 1}));
    CHECK(g.negate(g.index({1, 3})) == g.index({1, 1}));
    CHECK(g.add(5, g.negate(5)) == 0);

    AbelianGroup h({3});
    AbelianGroup h2 = h.power(2);
    CHECK(h2.order() == 9);
    CHECK(h2.factors() == std::vector<int>{3, 3});

    CHECK_THROWS_AS(AbelianGroup({0}), std::invalid_argument);
    CHECK_THROWS_AS(AbelianGroup(std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("characters: values and homomorphism") {
    AbelianGroup c4({4});
    // trivial character is 1 everywhere
    for (std::size_t h = 0; h < 4; ++h) {
        CHECK(char_eval(c4, 0, h).real() == doctest::Approx(1.0));
        CHECK(char_eval(c4, 0, h).imag() == doctest::Approx(0.0).epsilon(1e-15));
    }
    // chi_1(1) = e^{2 pi i / 4} = i
    auto v = char_eval(c4, 1, 1);
    CHECK(v.real() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(v.imag() == doctest::Approx(1.0));

    // multiplicativity chi(g + h) = chi(g) chi(h), |chi| = 1
    std::mt19937_64 rng(3);
    AbelianGroup g({2, 3, 4});
    std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
    for (int rep = 0; rep < 300; ++rep) {
        std::size_t chi = pick(rng), a = pick(rng), b = pick(rng);
        auto lhs = char_eval(g, chi, g.add(a, b));
        auto rhs = char_eval(g, chi, a) * char_eval(g, chi, b);
        CHECK(std::abs(lhs - rhs) <= 1e-12);
        CHECK(std::abs(std::abs(char_eval(g, chi, a)) - 1.0) <= 1e-14);
    }
}

TEST_CASE("character orthogonality") {
    for (auto factors : {std::vector<int>{5}, std::vector<int>{2, 3}, std::vector<int>{4}}) {
        AbelianGroup g(factors);
        for (std::size_t c1 = 0; c1 < g.order(); ++c1)
            for (std::size_t c2 = 0; c2 < g.order(); ++c2) {
                std::complex<double> s{0, 0};
                for (std::size_t h = 0; h < g.order(); ++h)
                    s += char_eval(g, c1, h) * std::conj(char_eval(g, c2, h));
                double expected = c1 == c2 ? static_cast<double>(g.order()) : 0.0;
                CHECK(std::abs(s - expected) <= 1e-12);
            }
    }
}

TEST_CASE("permutations: composition convention and ranking") {
    // (sigma o tau)(s) = sigma(tau(s))
    SymPerm sigma{{1, 2, 0}};
    SymPerm tau{{0, 2, 1}};
    SymPerm st = sigma.compose(tau);
    for (int s = 0; s < 3; ++s) CHECK(st(s) == sigma(tau(s)));

    CHECK(sigma.compose(sigma.inverse()).is_identity());
    CHECK(sigma.inverse().compose(sigma).is_identity());

    auto perms = all_permutations(3);
    CHECK(perms.size() == 6);
    CHECK(perms[0].is_identity());
    for (std::size_t r = 0; r < perms.size(); ++r) CHECK(perm_rank(perms[r]) == r);
    // lexicographic order of image tuples
    for (std::size_t r = 1; r < perms.size(); ++r)
        CHECK(perms[r - 1].images < perms[r].images);
}

TEST_CASE("wreath product: spec'd hand example in Cyc2 wr Sym2") {
    AbelianGroup c2({2});
    WreathGroup w(c2, 2);
    SymPerm swap{{1, 0}};
    SymPerm id = SymPerm::identity(2);

    WreathElement g1{w.hn().index({0, 0}), swap};
    WreathElement g2{w.hn().index({1, 0}), id};
    WreathElement prod = w.mul(g1, g2);
    CHECK(prod.h == w.hn().index({0, 1}));  // swap moves (1,0) to (0,1)
    CHECK(prod.sigma == swap);

    // free-standing version agrees
    WreathElement prod2 = wreath_mul(c2, 2, g1, g2);
    CHECK(prod2 == prod);
}

TEST_CASE("wreath product: exhaustive group axioms on small instances") {
    for (auto factors : {std::vector<int>{2}, std::vector<int>{3}}) {
        AbelianGroup base(factors);
        WreathGroup w(base, 2);
        const std::size_t order = w.order();
        std::vector<WreathElement> elems;
        for (std::size_t i = 0; i < order; ++i) elems.push_back(w.unflat(i));

        // flat/unflat is a bijection
        for (std::size_t i = 0; i < order; ++i) CHECK(w.flat(elems[i]) == i);

        // identity and inverses
        for (const auto& g : elems) {
            CHECK(w.mul(w.identity(), g) == g);
            CHECK(w.mul(g, w.identity()) == g);
            CHECK(w.mul(g, w.inv(g)) == w.identity());
            CHECK(w.mul(w.inv(g), g) == w.identity());
        }

        // associativity, exhaustive (8^3 and 18^3 triples)
        for (const auto& a : elems)
            for (const auto& b : elems)
                for (const auto& c : elems)
                    CHECK(w.mul(w.mul(a, b), c) == w.mul(a, w.mul(b, c)));

        // the semidirect relation q h = (q . h) q
        for (const auto& q : w.perms())
            for (std::size_t h = 0; h < w.hn().order(); ++h) {
                WreathElement qe{0, q};
                WreathElement he{h, SymPerm::identity(2)};
                WreathElement lhs = w.mul(qe, he);
                WreathElement qdoth{w.act(perm_rank(q), h), SymPerm::identity(2)};
                WreathElement rhs = w.mul(qdoth, qe);
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("wreath product: random associativity in Cyc3 wr Sym3") {
    AbelianGroup c3({3});
    WreathGroup w(c3, 3);
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::size_t> pick(0, w.order() - 1);
    for (int rep = 0; rep < 500; ++rep) {
        auto a = w.unflat(pick(rng));
        auto b = w.unflat(pick(rng));
        auto c = w.unflat(pick(rng));
        CHECK(w.mul(w.mul(a, b), c) == w.mul(a, w.mul(b, c)));
    }
}

TEST_CASE("fourier_wreath: delta, constant, and naive-oracle agreement") {
    AbelianGroup c3({3});
    WreathGroup w(c3, 2);
    const std::size_t hn = w.hn().order();  // 9
    const std::size_t np = w.perm_count();  // 2
    const std::size_t n = hn * np;

    // delta at the group identity: slice sigma=id becomes all ones
    std::vector<std::complex<double>> delta(n, {0, 0});
    delta[w.flat(w.identity())] = {1, 0};
    auto dhat = fourier_wreath(w, delta);
    for (std::size_t chi = 0; chi < hn; ++chi) {
        CHECK(std::abs(dhat[0 * hn + chi] - std::complex<double>{1, 0}) <= 1e-12);
        CHECK(std::abs(dhat[1 * hn + chi]) <= 1e-12);  // other slice holds zeros
    }

    // constant vector: mass lands on the trivial character of each slice
    std::vector<std::complex<double>> ones(n, {1, 0});
    auto ohat = fourier_wreath(w, ones);
    for (std::size_t pi = 0; pi < np; ++pi)
        for (std::size_t chi = 0; chi < hn; ++chi) {
            double expect = chi == 0 ? static_cast<double>(hn) : 0.0;
            CHECK(std::abs(ohat[pi * hn + chi] - expect) <= 1e-12);
        }

    // random vector against the naive definitional double loop
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> dist(-1, 1);
    std::vector<std::complex<double>> a(n);
    for (auto& v : a) v = {dist(rng), dist(rng)};
    auto ahat = fourier_wreath(w, a);
    for (std::size_t pi = 0; pi < np; ++pi)
        for (std::size_t chi = 0; chi < hn; ++chi) {
            std::complex<double> s{0, 0};
            for (std::size_t h = 0; h < hn; ++h) {
                // a_{sigma h} where sigma h = (sigma . h, sigma)
                WreathElement g{w.act(pi, h), w.perms()[pi]};
                s += char_eval(w.hn(), chi, h) * a[w.flat(g)];
            }
            CHECK(std::abs(ahat[pi * hn + chi] - s) <= 1e-12);
        }
}

TEST_CASE("fourier round trip, zero, and Parseval") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> dist(-1, 1);
    for (auto factors : {std::vector<int>{2}, std::vector<int>{3}}) {
        for (int n = 1; n <= 3; ++n) {
            AbelianGroup base(factors);
            WreathGroup w(base, n);
            const std::size_t hn = w.hn().order();
            const std::size_t len = w.order();

            for (int rep = 0; rep < 10; ++rep) {
                std::vector<std::complex<double>> a(len);
                for (auto& v : a) v = {dist(rng), dist(rng)};
                auto back = inverse_fourier_wreath(w, fourier_wreath(w, a));
                for (std::size_t i = 0; i < len; ++i) CHECK(std::abs(back[i] - a[i]) <= 1e-12);

                // Parseval per sigma-slice: |a_slice|^2 * |H|^N = |ahat_slice|^2
                auto ahat = fourier_wreath(w, a);
                for (std::size_t pi = 0; pi < w.perm_count(); ++pi) {
                    double lhs = 0, rhs = 0;
                    for (std::size_t h = 0; h < hn; ++h) {
                        WreathElement g{w.act(pi, h), w.perms()[pi]};
                        lhs += std::norm(a[w.flat(g)]);
                        rhs += std::norm(ahat[pi * hn + h]);
                    }
                    CHECK(lhs * hn == doctest::Approx(rhs).epsilon(1e-10));
                }
            }

            std::vector<std::complex<double>> zero(len, {0, 0});
            auto z = inverse_fourier_wreath(w, zero);
            for (const auto& v : z) CHECK(std::abs(v) == 0.0);
        }
    }
}

TEST_CASE("orbit representatives: counts and coverage") {
    // N=1: every character is its own orbit
    AbelianGroup c5({5});
    CHECK(orbit_representatives(c5, 1).size() == 5);

    // |H|=3, N=2 -> C(4,2) = 6
    AbelianGroup c3({3});
    CHECK(orbit_representatives(c3, 2).size() == 6);

    // cardinality C(|H|+N-1, N) for |H| <= 4, N <= 3
    for (auto factors : {std::vector<int>{2}, std::vector<int>{3}, std::vector<int>{4},
                         std::vector<int>{2, 2}}) {
        AbelianGroup h(factors);
        for (int n = 1; n <= 3; ++n) {
            auto reps = orbit_representatives(h, n);
            CHECK(reps.size() == binomial(h.order() + n - 1, n));
        }
    }

    // every character is tau . rep for exactly one representative
    for (auto factors : {std::vector<int>{2}, std::vector<int>{3}}) {
        AbelianGroup h(factors);
        for (int n = 2; n <= 3; ++n) {
            WreathGroup w(h, n);
            auto reps = orbit_representatives(h, n);
            std::vector<int> covered(w.hn().order(), 0);
            for (std::size_t rep : reps)
                for (std::size_t pi = 0; pi < w.perm_count(); ++pi) covered[w.act_char(pi, rep)] = 1;
            for (std::size_t chi = 0; chi < w.hn().order(); ++chi) {
                CHECK(covered[chi] == 1);
                auto dec = orbit_decompose(w, chi);
                CHECK(w.act_char(dec.tau_rank, dec.rep) == chi);
                // the representative is the lex-least (= numerically least
                // flat index) element of the orbit
                for (std::size_t pi = 0; pi < w.perm_count(); ++pi)
                    CHECK(dec.rep <= w.act_char(pi, chi));
                // tau is the first permutation in lex order that works
                for (std::size_t pi = 0; pi < dec.tau_rank; ++pi)
                    CHECK(w.act_char(pi, dec.rep) != chi);
            }
        }
    }
}

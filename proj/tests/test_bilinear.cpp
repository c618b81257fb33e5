#include <doctest.h>

#include <random>
#include <sstream>

#include "fastmm/bilinear.hpp"
#include "test_util.hpp"

using namespace fastmm;
using namespace fastmm::testutil;

namespace {

// Independent oracle for the tensor identity: multiply symbolic matrices
// A = (x_i), B = (y_j) over commuting indeterminates and compare the
// bilinear formula's coefficient of x_i y_j in each c_hl against the
// classical product's. A degree-(1,1) polynomial is exactly a k^2 x k^2
// rational coefficient matrix.
bool symbolic_oracle_accepts(const BilinearAlgorithm& alg) {
    const std::size_t k = alg.k, k2 = k * k;
    for (std::size_t h = 1; h <= k; ++h)
        for (std::size_t l = 1; l <= k; ++l) {
            const std::size_t r = k * (h - 1) + l;
            // classical: c_hl = sum_q a_{h,q} b_{q,l};
            // a_{p,q} = x_{(q-1)k+p}, b_{m,l'} = y_{(l'-1)k+m}
            Matrix<Rational> classical(k2, k2);
            for (std::size_t q = 1; q <= k; ++q) {
                std::size_t i = (q - 1) * k + h;
                std::size_t j = (l - 1) * k + q;
                classical(i - 1, j - 1) += Rational(1);
            }
            // formula: sum_s w_rs (sum_i u_is x_i)(sum_j v_js y_j)
            Matrix<Rational> formula(k2, k2);
            for (std::size_t s = 0; s < alg.t; ++s) {
                const Rational& w = alg.w(r - 1, s);
                if (w.is_zero()) continue;
                for (std::size_t i = 0; i < k2; ++i) {
                    if (alg.u(i, s).is_zero()) continue;
                    for (std::size_t j = 0; j < k2; ++j)
                        formula(i, j) += w * alg.u(i, s) * alg.v(j, s);
                }
            }
            if (!(formula == classical)) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("strassen: structure and validation") {
    auto alg = strassen();
    CHECK(alg.k == 2);
    CHECK(alg.t == 7);
    // all entries in {-1, 0, 1}
    for (const auto* m : {&alg.u, &alg.v, &alg.w})
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t s = 0; s < 7; ++s) {
                Rational v = (*m)(i, s);
                CHECK((v == Rational(0) || v == Rational(1) || v == Rational(-1)));
            }
    CHECK(validate(alg).ok);
    CHECK(symbolic_oracle_accepts(alg));
}

TEST_CASE("strassen: sparsity profile matches the seven products") {
    auto prof = sparsity_profile(strassen());
    CHECK(prof.a == std::vector<std::size_t>{2, 2, 1, 1, 2, 2, 2});
    CHECK(prof.b == std::vector<std::size_t>{2, 1, 2, 2, 1, 2, 2});
    CHECK(prof.c == std::vector<std::size_t>{4, 2, 2, 4});
    CHECK(prof.max_term == 7);  // max(alpha+beta) = 2, max gamma = 2, +3
}

TEST_CASE("classical bilinear algorithms validate") {
    auto c2 = classical_algorithm(2);
    CHECK(c2.t == 8);
    CHECK(validate(c2).ok);
    CHECK(symbolic_oracle_accepts(c2));

    auto c3 = classical_algorithm(3);
    CHECK(c3.t == 27);
    CHECK(validate(c3).ok);
    CHECK(symbolic_oracle_accepts(c3));
}

TEST_CASE("validate rejects mutations with a genuine witness") {
    std::mt19937_64 rng(2718);
    std::uniform_int_distribution<int> which(0, 2);
    std::uniform_int_distribution<int> entry(0, 3);
    std::uniform_int_distribution<int> col(0, 6);
    std::uniform_int_distribution<int> newval(-1, 2);

    int rejected = 0;
    for (int rep = 0; rep < 20; ++rep) {
        auto alg = strassen();
        Matrix<Rational>* mats[3] = {&alg.u, &alg.v, &alg.w};
        int m = which(rng), i = entry(rng), s = col(rng);
        Rational old = (*mats[m])(i, s);
        Rational nv;
        do {
            nv = Rational(newval(rng));
        } while (nv == old);
        (*mats[m])(i, s) = nv;

        auto res = validate(alg);
        CHECK_FALSE(res.ok);
        CHECK(symbolic_oracle_accepts(alg) == res.ok);
        REQUIRE(res.witness.has_value());
        // recompute the witnessed identity entry and confirm the violation
        auto w = *res.witness;
        const std::size_t k = alg.k;
        std::size_t r = k * (w.h - 1) + w.l;
        std::size_t p = (w.i - 1) % k + 1, q = (w.i - 1) / k + 1;
        std::size_t mm = (w.j - 1) % k + 1, lp = (w.j - 1) / k + 1;
        Rational sum(0);
        for (std::size_t s2 = 0; s2 < alg.t; ++s2)
            sum += alg.u(w.i - 1, s2) * alg.v(w.j - 1, s2) * alg.w(r - 1, s2);
        Rational want(p == w.h && q == mm && lp == w.l ? 1 : 0);
        CHECK(sum != want);
        ++rejected;
    }
    CHECK(rejected == 20);
}

TEST_CASE("validate agrees with the symbolic oracle on random coefficient noise") {
    std::mt19937_64 rng(555);
    std::uniform_int_distribution<int> coin(0, 9);
    std::uniform_int_distribution<int> val(-2, 2);
    for (int rep = 0; rep < 30; ++rep) {
        auto alg = rep % 2 ? strassen() : classical_algorithm(2);
        if (coin(rng) < 8) {  // usually perturb; sometimes keep intact
            Matrix<Rational>* mats[3] = {&alg.u, &alg.v, &alg.w};
            (*mats[coin(rng) % 3])(coin(rng) % 4, coin(rng) % alg.t) = Rational(val(rng));
        }
        CHECK(validate(alg).ok == symbolic_oracle_accepts(alg));
    }
}

TEST_CASE("multiply_stationary: identity and oracle equivalence") {
    auto alg = strassen();
    std::mt19937_64 rng(10);

    auto b8 = random_rational_matrix(8, 8, rng);
    CHECK(multiply_stationary(alg, Matrix<Rational>::identity(8), b8, 1) == b8);

    for (std::size_t n : {2u, 4u, 8u, 16u}) {
        for (int rep = 0; rep < 5; ++rep) {
            auto a = random_rational_fraction_matrix(n, n, rng, 5, 3);
            auto b = random_rational_fraction_matrix(n, n, rng, 5, 3);
            CHECK(multiply_stationary(alg, a, b, 1) == multiply_classical(a, b));
            CHECK(multiply_stationary(alg, a, b, 4) == multiply_classical(a, b));
        }
    }

    auto c3 = classical_algorithm(3);
    for (int rep = 0; rep < 5; ++rep) {
        auto a = random_rational_matrix(9, 9, rng);
        auto b = random_rational_matrix(9, 9, rng);
        CHECK(multiply_stationary(c3, a, b, 1) == multiply_classical(a, b));
    }

    // non-power sides get padded internally
    auto a5 = random_rational_matrix(5, 5, rng);
    auto b5 = random_rational_matrix(5, 5, rng);
    CHECK(multiply_stationary(alg, a5, b5, 1) == multiply_classical(a5, b5));
}

TEST_CASE("multiply_stationary: homogeneity in the exact regime") {
    std::mt19937_64 rng(20);
    auto alg = strassen();
    Rational c(7, 3);
    for (int rep = 0; rep < 10; ++rep) {
        auto a = random_rational_matrix(8, 8, rng);
        auto b = random_rational_matrix(8, 8, rng);
        CHECK(multiply_stationary(alg, c * a, b, 2) ==
              c * multiply_stationary(alg, a, b, 2));
    }
}

TEST_CASE("multiply_nonstationary: schedules and oracle") {
    std::mt19937_64 rng(30);
    auto s = strassen();
    auto c2 = classical_algorithm(2);
    auto c3 = classical_algorithm(3);

    // single-level schedule degenerates to the stationary value
    auto a8 = random_rational_matrix(8, 8, rng);
    auto b8 = random_rational_matrix(8, 8, rng);
    CHECK(multiply_nonstationary({{s}, 1}, a8, b8) == multiply_classical(a8, b8));

    CHECK(multiply_nonstationary({{s, c2}, 1}, a8, b8) == multiply_classical(a8, b8));

    auto a12 = random_rational_matrix(12, 12, rng);
    auto b12 = random_rational_matrix(12, 12, rng);
    CHECK(multiply_nonstationary({{c3, s}, 1}, a12, b12) == multiply_classical(a12, b12));

    // sides that need padding to a multiple of the level product
    auto a7 = random_rational_matrix(7, 7, rng);
    auto b7 = random_rational_matrix(7, 7, rng);
    CHECK(multiply_nonstationary({{s, c3}, 1}, a7, b7) == multiply_classical(a7, b7));

    CHECK_THROWS_AS(multiply_nonstationary(RecursionSchedule{{}, 1}, a8, b8),
                    std::invalid_argument);
}

TEST_CASE("count_multiplications: recurrence and instrumented cross-check") {
    auto s = strassen();
    CHECK(count_multiplications(s, 8, 1) == 343);
    CHECK(count_multiplications(s, 1, 1) == 1);
    CHECK(count_multiplications(s, 4, 4) == 64);  // n == cutoff: n^3

    std::uint64_t p7 = 1;
    for (int m = 0; m <= 8; ++m) {
        CHECK(count_multiplications(s, std::size_t{1} << m, 1) == p7);
        p7 *= 7;
    }

    CHECK_THROWS_AS(count_multiplications(s, 6, 1), std::invalid_argument);

    // instrumented executions agree with the closed-form count
    std::mt19937_64 rng(40);
    for (std::size_t cutoff : {1u, 2u, 4u}) {
        for (std::size_t n : {4u, 8u, 16u}) {
            auto a = random_double_matrix(n, n, rng);
            auto b = random_double_matrix(n, n, rng);
            reset_multiplication_counter();
            multiply_stationary(s, a, b, cutoff);
            CHECK(multiplication_count() == count_multiplications(s, n, cutoff));
        }
    }
    auto c3 = classical_algorithm(3);
    for (std::size_t n : {3u, 9u, 27u}) {
        auto a = random_double_matrix(n, n, rng);
        auto b = random_double_matrix(n, n, rng);
        reset_multiplication_counter();
        multiply_stationary(c3, a, b, 1);
        CHECK(multiplication_count() == count_multiplications(c3, n, 1));
    }
}

TEST_CASE("algorithm spec text format") {
    auto s = strassen();
    std::string text = emit_algorithm_string(s);
    auto back = parse_algorithm_string(text);
    CHECK(back.k == s.k);
    CHECK(back.t == s.t);
    CHECK(back.u == s.u);
    CHECK(back.v == s.v);
    CHECK(back.w == s.w);
    CHECK(validate(back).ok);

    // t < k^2 violates the rank lower bound
    CHECK_THROWS_WITH_AS(parse_algorithm_string("2 3\nU\n"),
                         doctest::Contains("rank lower bound"), std::runtime_error);

    // truncated file names the missing section
    std::string truncated = text.substr(0, text.find('W'));
    CHECK_THROWS_WITH_AS(parse_algorithm_string(truncated),
                         doctest::Contains("W"), std::runtime_error);

    CHECK_THROWS_AS(parse_algorithm_string("junk"), std::runtime_error);
    CHECK_THROWS_WITH_AS(parse_algorithm_string("2 4\nU\n1 2 x 4\n"),
                         doctest::Contains("bad entry"), std::runtime_error);
}

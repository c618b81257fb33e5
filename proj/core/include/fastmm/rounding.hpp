#ifndef FASTMM_ROUNDING_HPP
#define FASTMM_ROUNDING_HPP

#include <cmath>
#include <utility>

#include "fastmm/rational.hpp"

namespace fastmm {

/// Simulated machine arithmetic: every {+,-,*,/} result is the exact value
/// rounded once to a p-bit significand, round-to-nearest, ties to even.
/// Unit roundoff eps = 2^-p.
struct RoundingContext {
    int p = 53;
    double eps() const { return std::ldexp(1.0, -p); }
};

namespace detail {
RoundingContext& current_rounding_context();
}

/// RAII scope: arithmetic on Rounded values inside the scope rounds at ctx.p.
class RoundingScope {
public:
    explicit RoundingScope(RoundingContext ctx)
        : saved_(detail::current_rounding_context()) {
        detail::current_rounding_context() = ctx;
    }
    ~RoundingScope() { detail::current_rounding_context() = saved_; }
    RoundingScope(const RoundingScope&) = delete;
    RoundingScope& operator=(const RoundingScope&) = delete;

private:
    RoundingContext saved_;
};

/// Round a single (exact) double to a p-bit significand, RN-even.
double round_double_to_bits(double x, int p);

double rounded_add(double a, double b);
double rounded_sub(double a, double b);
double rounded_mul(double a, double b);
double rounded_div(double a, double b);

/// Scalar carrying the simulated-precision regime. The value itself is an
/// ordinary double (every p-bit value is one for p <= 53); operators round
/// per the ambient RoundingContext.
struct Rounded {
    double v = 0.0;

    Rounded() = default;
    explicit Rounded(double x) : v(x) {}

    Rounded operator-() const { return Rounded{-v}; }  // sign flip is exact
    friend Rounded operator+(Rounded a, Rounded b) { return Rounded{rounded_add(a.v, b.v)}; }
    friend Rounded operator-(Rounded a, Rounded b) { return Rounded{rounded_sub(a.v, b.v)}; }
    friend Rounded operator*(Rounded a, Rounded b) { return Rounded{rounded_mul(a.v, b.v)}; }
    friend Rounded operator/(Rounded a, Rounded b) { return Rounded{rounded_div(a.v, b.v)}; }
    Rounded& operator+=(Rounded o) { v = rounded_add(v, o.v); return *this; }
    Rounded& operator-=(Rounded o) { v = rounded_sub(v, o.v); return *this; }
    Rounded& operator*=(Rounded o) { v = rounded_mul(v, o.v); return *this; }
    Rounded& operator/=(Rounded o) { v = rounded_div(v, o.v); return *this; }
    friend bool operator==(Rounded a, Rounded b) { return a.v == b.v; }
    friend bool operator!=(Rounded a, Rounded b) { return a.v != b.v; }
    friend bool operator<(Rounded a, Rounded b) { return a.v < b.v; }
};

/// Runs a computation with the given rounding context installed.
template <typename F>
auto with_rounding(RoundingContext ctx, F&& f) -> decltype(std::forward<F>(f)()) {
    RoundingScope scope(ctx);
    return std::forward<F>(f)();
}

}  // namespace fastmm

#endif

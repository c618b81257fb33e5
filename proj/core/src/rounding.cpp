#include "fastmm/rounding.hpp"

#include <cmath>
#include <stdexcept>

namespace fastmm {

namespace detail {

RoundingContext& current_rounding_context() {
    thread_local RoundingContext ctx;  // defaults to binary64
    return ctx;
}

}  // namespace detail

double round_double_to_bits(double x, int p) {
    if (p < 2 || p > 53) throw std::invalid_argument("round_double_to_bits: p out of [2,53]");
    if (p == 53 || x == 0.0 || !std::isfinite(x)) return x;
    int e = std::ilogb(x);  // 2^e <= |x| < 2^(e+1)
    // Scale so the target significand sits in [2^(p-1), 2^p); both the
    // scaling and the descale are exact powers of two.
    double scaled = std::ldexp(x, p - 1 - e);
    double rounded = std::nearbyint(scaled);  // RN-even in the default mode
    return std::ldexp(rounded, e - p + 1);
}

namespace {

// Exact op in rational arithmetic, then one rounding. Used for
// 25 < p < 53 where rounding the binary64 result again could double-round.
enum class Op { Add, Sub, Mul, Div };

double exact_rounded(double a, double b, Op op, int p) {
    Rational ra = Rational::from_double(a);
    Rational rb = Rational::from_double(b);
    switch (op) {
        case Op::Add: ra += rb; break;
        case Op::Sub: ra -= rb; break;
        case Op::Mul: ra *= rb; break;
        case Op::Div: ra /= rb; break;
    }
    return ra.round_to_bits(p);
}

// For p <= 25 the binary64 result may be rounded a second time without
// changing the outcome (53 >= 2p + 2), so the hardware op plus
// round_double_to_bits realizes the one-rounding model exactly.
constexpr int kInnocuousDoubleRounding = 25;

double dispatch(double a, double b, Op op) {
    int p = detail::current_rounding_context().p;
    double hw;
    switch (op) {
        case Op::Add: hw = a + b; break;
        case Op::Sub: hw = a - b; break;
        case Op::Mul: hw = a * b; break;
        case Op::Div: hw = a / b; break;
    }
    if (p == 53) return hw;
    if (p <= kInnocuousDoubleRounding) return round_double_to_bits(hw, p);
    return exact_rounded(a, b, op, p);
}

}  // namespace

double rounded_add(double a, double b) { return dispatch(a, b, Op::Add); }
double rounded_sub(double a, double b) { return dispatch(a, b, Op::Sub); }
double rounded_mul(double a, double b) { return dispatch(a, b, Op::Mul); }
double rounded_div(double a, double b) { return dispatch(a, b, Op::Div); }

}  // namespace fastmm

#ifndef FASTMM_SCALAR_HPP
#define FASTMM_SCALAR_HPP

#include <cmath>
#include <complex>
#include <string>

#include "fastmm/rational.hpp"
#include "fastmm/rounding.hpp"

namespace fastmm {

/// Scalar regimes a matrix can live in. Entries of one matrix never mix
/// regimes; conversions are explicit.
enum class Regime { Rational, Real, Complex, Rounded };

const char* regime_name(Regime r);

template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr Regime regime = Regime::Rational;
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static bool is_zero(const Rational& x) { return x.is_zero(); }
    static double abs(const Rational& x) { return std::fabs(x.to_double()); }
    static Rational from_rational(const Rational& r) { return r; }
    static Rational conj(const Rational& x) { return x; }
    static double epsilon() { return 0.0; }  // exact arithmetic
};

template <>
struct ScalarTraits<double> {
    static constexpr Regime regime = Regime::Real;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static bool is_zero(double x) { return x == 0.0; }
    static double abs(double x) { return std::fabs(x); }
    static double from_rational(const Rational& r) { return r.to_double(); }
    static double conj(double x) { return x; }
    static double epsilon() { return std::ldexp(1.0, -53); }
};

template <>
struct ScalarTraits<std::complex<double>> {
    static constexpr Regime regime = Regime::Complex;
    static std::complex<double> zero() { return {0.0, 0.0}; }
    static std::complex<double> one() { return {1.0, 0.0}; }
    static bool is_zero(const std::complex<double>& x) { return x == std::complex<double>{}; }
    static double abs(const std::complex<double>& x) { return std::abs(x); }
    static std::complex<double> from_rational(const Rational& r) { return {r.to_double(), 0.0}; }
    static std::complex<double> conj(const std::complex<double>& x) { return std::conj(x); }
    static double epsilon() { return std::ldexp(1.0, -53); }
};

template <>
struct ScalarTraits<Rounded> {
    static constexpr Regime regime = Regime::Rounded;
    static Rounded zero() { return Rounded{0.0}; }
    static Rounded one() { return Rounded{1.0}; }
    static bool is_zero(Rounded x) { return x.v == 0.0; }
    static double abs(Rounded x) { return std::fabs(x.v); }
    // Conversion of a coefficient into the rounded regime rounds it once,
    // like any other value entering the machine.
    static Rounded from_rational(const Rational& r) {
        return Rounded{r.round_to_bits(detail::current_rounding_context().p)};
    }
    static Rounded conj(Rounded x) { return x; }
    static double epsilon() { return detail::current_rounding_context().eps(); }
};

}  // namespace fastmm

#endif

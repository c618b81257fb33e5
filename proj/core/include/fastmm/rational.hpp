#ifndef FASTMM_RATIONAL_HPP
#define FASTMM_RATIONAL_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

namespace fastmm {

namespace detail {
struct BigRat;  // GMP-backed storage, defined in rational.cpp
}

/// Arbitrary-precision rational number.
///
/// Values that fit stay in a reduced int64 numerator/denominator pair;
/// anything larger is promoted transparently to GMP storage and demoted
/// back once it fits again. Arithmetic is exact in both representations.
class Rational {
public:
    Rational() : num_(0), den_(1), big_(nullptr) {}
    Rational(std::int64_t n) : num_(n), den_(1), big_(nullptr) {}
    Rational(std::int64_t n, std::int64_t d);
    Rational(const Rational& o);
    Rational(Rational&& o) noexcept;
    Rational& operator=(const Rational& o);
    Rational& operator=(Rational&& o) noexcept;
    ~Rational();

    /// Exact conversion; every finite double is a dyadic rational.
    static Rational from_double(double x);

    /// Parses "p", "-p" or "p/q". Throws std::invalid_argument on junk.
    static Rational parse(const std::string& s);

    bool is_zero() const { return big_ == nullptr && num_ == 0; }
    bool is_small() const { return big_ == nullptr; }
    int sign() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);  // throws on division by zero

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }

    bool operator==(const Rational& o) const;
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    Rational abs() const;

    /// Round to nearest (ties to even) value with a p-bit significand,
    /// 2 <= p <= 53. Exact integer computation throughout.
    double round_to_bits(int p) const;

    /// Correctly rounded double (round_to_bits(53)).
    double to_double() const { return round_to_bits(53); }

    /// Canonical text form: "p" when the denominator is 1, else "p/q".
    std::string str() const;

    // Small-path accessors (valid only when is_small()).
    std::int64_t small_num() const { return num_; }
    std::int64_t small_den() const { return den_; }

private:
    std::int64_t num_;
    std::int64_t den_;  // > 0, gcd(|num|, den) == 1 on the small path
    detail::BigRat* big_;

    void promote();
    void demote_if_possible();
    void clear_big();
    friend struct detail::BigRat;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace fastmm

#endif

#include "fastmm/rational.hpp"

#include <gmp.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace fastmm {

namespace detail {

struct BigRat {
    mpq_t q;
    BigRat() { mpq_init(q); }
    explicit BigRat(const BigRat& o) { mpq_init(q); mpq_set(q, o.q); }
    ~BigRat() { mpq_clear(q); }
    static void set_i64(mpz_t z, std::int64_t v) {
        // mpz_set_si takes a long, which is 64-bit here; keep the
        // assumption explicit.
        static_assert(sizeof(long) == 8, "LP64 assumed");
        mpz_set_si(z, static_cast<long>(v));
    }
    // BigRat is a friend of Rational; expose the raw fields to the
    // implementation file without widening the public surface.
    static void store(Rational& r, std::int64_t n, std::int64_t d, BigRat* b) {
        r.clear_big();
        r.num_ = n;
        r.den_ = d;
        r.big_ = b;
    }
};

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 u128_abs(i128 v) { return v < 0 ? -static_cast<u128>(v) : static_cast<u128>(v); }

u128 gcd_u128(u128 a, u128 b) {
    while (b != 0) { u128 t = a % b; a = b; b = t; }
    return a;
}

std::int64_t gcd_i64(std::int64_t a, std::int64_t b) {
    std::uint64_t x = a < 0 ? -static_cast<std::uint64_t>(a) : a;
    std::uint64_t y = b < 0 ? -static_cast<std::uint64_t>(b) : b;
    while (y != 0) { std::uint64_t t = x % y; x = y; y = t; }
    return static_cast<std::int64_t>(x);
}

constexpr std::int64_t kGuard = (std::int64_t{1} << 62);

bool in_guard(std::int64_t v) { return v > -kGuard && v < kGuard; }

bool fits_i64(i128 v) {
    return v >= static_cast<i128>(std::numeric_limits<std::int64_t>::min()) &&
           v <= static_cast<i128>(std::numeric_limits<std::int64_t>::max());
}

void mpz_set_i128(mpz_t z, i128 v) {
    bool neg = v < 0;
    u128 a = u128_abs(v);
    mpz_set_ui(z, static_cast<unsigned long>(a >> 64));
    mpz_mul_2exp(z, z, 64);
    mpz_add_ui(z, z, static_cast<unsigned long>(a & 0xffffffffffffffffULL));
    if (neg) mpz_neg(z, z);
}

}  // namespace
}  // namespace detail

using detail::BigRat;
using detail::i128;
using detail::u128;

Rational::Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d), big_(nullptr) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    std::int64_t g = detail::gcd_i64(num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
    if (num_ == 0) den_ = 1;
}

Rational::Rational(const Rational& o) : num_(o.num_), den_(o.den_), big_(nullptr) {
    if (o.big_) big_ = new BigRat(*o.big_);
}

Rational::Rational(Rational&& o) noexcept : num_(o.num_), den_(o.den_), big_(o.big_) {
    o.big_ = nullptr;
    o.num_ = 0;
    o.den_ = 1;
}

Rational& Rational::operator=(const Rational& o) {
    if (this == &o) return *this;
    clear_big();
    num_ = o.num_;
    den_ = o.den_;
    if (o.big_) big_ = new BigRat(*o.big_);
    return *this;
}

Rational& Rational::operator=(Rational&& o) noexcept {
    if (this == &o) return *this;
    clear_big();
    num_ = o.num_;
    den_ = o.den_;
    big_ = o.big_;
    o.big_ = nullptr;
    o.num_ = 0;
    o.den_ = 1;
    return *this;
}

Rational::~Rational() { clear_big(); }

void Rational::clear_big() {
    delete big_;
    big_ = nullptr;
}

void Rational::promote() {
    if (big_) return;
    big_ = new BigRat();
    BigRat::set_i64(mpq_numref(big_->q), num_);
    BigRat::set_i64(mpq_denref(big_->q), den_);
}

void Rational::demote_if_possible() {
    if (!big_) return;
    if (mpz_fits_slong_p(mpq_numref(big_->q)) && mpz_fits_slong_p(mpq_denref(big_->q))) {
        num_ = mpz_get_si(mpq_numref(big_->q));
        den_ = mpz_get_si(mpq_denref(big_->q));
        clear_big();
    }
}

int Rational::sign() const {
    if (big_) return mpq_sgn(big_->q);
    return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0);
}

Rational Rational::operator-() const {
    Rational r(*this);
    if (r.big_) {
        mpq_neg(r.big_->q, r.big_->q);
    } else {
        r.num_ = -r.num_;
    }
    return r;
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

namespace {

// Reduce n/d (d > 0) and store into r; falls back to GMP when the
// reduced pair leaves the int64 range.
void assign_reduced(Rational& r, i128 n, i128 d) {
    u128 g = detail::gcd_u128(detail::u128_abs(n), static_cast<u128>(d));
    if (g > 1) { n /= static_cast<i128>(g); d /= static_cast<i128>(g); }
    if (n == 0) d = 1;
    if (detail::fits_i64(n) && detail::fits_i64(d)) {
        BigRat::store(r, static_cast<std::int64_t>(n), static_cast<std::int64_t>(d), nullptr);
    } else {
        BigRat* b = new BigRat();
        detail::mpz_set_i128(mpq_numref(b->q), n);
        detail::mpz_set_i128(mpq_denref(b->q), d);
        BigRat::store(r, 0, 1, b);
    }
}

}  // namespace

Rational& Rational::operator+=(const Rational& o) {
    if (!big_ && !o.big_ &&
        detail::in_guard(num_) && den_ < detail::kGuard &&
        detail::in_guard(o.num_) && o.den_ < detail::kGuard) {
        std::int64_t g = detail::gcd_i64(den_, o.den_);
        std::int64_t db = den_ / g, od = o.den_ / g;
        i128 n = static_cast<i128>(num_) * od + static_cast<i128>(o.num_) * db;
        i128 d = static_cast<i128>(db) * o.den_;
        clear_big();
        assign_reduced(*this, n, d);
        return *this;
    }
    promote();
    Rational rhs(o);
    rhs.promote();
    mpq_add(big_->q, big_->q, rhs.big_->q);
    demote_if_possible();
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    if (this == &o) { *this = Rational(0); return *this; }
    return *this += -o;
}

Rational& Rational::operator*=(const Rational& o) {
    if (!big_ && !o.big_ &&
        detail::in_guard(num_) && den_ < detail::kGuard &&
        detail::in_guard(o.num_) && o.den_ < detail::kGuard) {
        std::int64_t g1 = detail::gcd_i64(num_, o.den_);
        std::int64_t g2 = detail::gcd_i64(o.num_, den_);
        i128 n = static_cast<i128>(num_ / g1) * (o.num_ / g2);
        i128 d = static_cast<i128>(den_ / g2) * (o.den_ / g1);
        assign_reduced(*this, n, d);
        return *this;
    }
    promote();
    Rational rhs(o);
    rhs.promote();
    mpq_mul(big_->q, big_->q, rhs.big_->q);
    demote_if_possible();
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    if (!big_ && !o.big_ && detail::in_guard(o.num_) && o.den_ < detail::kGuard) {
        Rational inv;
        if (o.num_ > 0) {
            inv.num_ = o.den_;
            inv.den_ = o.num_;
        } else {
            inv.num_ = -o.den_;
            inv.den_ = -o.num_;
        }
        return *this *= inv;
    }
    promote();
    Rational rhs(o);
    rhs.promote();
    mpq_div(big_->q, big_->q, rhs.big_->q);
    demote_if_possible();
    return *this;
}

bool Rational::operator==(const Rational& o) const {
    if (!big_ && !o.big_) return num_ == o.num_ && den_ == o.den_;
    Rational a(*this), b(o);
    a.promote();
    b.promote();
    return mpq_equal(a.big_->q, b.big_->q) != 0;
}

bool Rational::operator<(const Rational& o) const {
    if (!big_ && !o.big_ &&
        detail::in_guard(num_) && den_ < detail::kGuard &&
        detail::in_guard(o.num_) && o.den_ < detail::kGuard) {
        return static_cast<i128>(num_) * o.den_ < static_cast<i128>(o.num_) * den_;
    }
    Rational a(*this), b(o);
    a.promote();
    b.promote();
    return mpq_cmp(a.big_->q, b.big_->q) < 0;
}

Rational Rational::from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("Rational::from_double: non-finite");
    if (x == 0.0) return Rational(0);
    int e;
    double f = std::frexp(x, &e);  // x = f * 2^e, 0.5 <= |f| < 1
    std::int64_t m = static_cast<std::int64_t>(std::ldexp(f, 53));  // exact 53-bit integer
    int shift = e - 53;
    Rational r(m);
    if (shift > 0) {
        if (shift <= 62) {
            r *= Rational(std::int64_t{1} << shift);
        } else {
            r.promote();
            mpq_mul_2exp(r.big_->q, r.big_->q, static_cast<unsigned long>(shift));
            r.demote_if_possible();
        }
    } else if (shift < 0) {
        if (-shift <= 62) {
            r /= Rational(std::int64_t{1} << -shift);
        } else {
            r.promote();
            mpq_div_2exp(r.big_->q, r.big_->q, static_cast<unsigned long>(-shift));
            r.demote_if_possible();
        }
    }
    return r;
}

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rational::parse: empty token");
    auto slash = s.find('/');
    auto parse_int = [](const std::string& t) {
        if (t.empty()) throw std::invalid_argument("Rational::parse: empty integer");
        size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
        if (i == t.size()) throw std::invalid_argument("Rational::parse: sign only");
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i])))
                throw std::invalid_argument("Rational::parse: bad digit in '" + t + "'");
    };
    std::string ns = slash == std::string::npos ? s : s.substr(0, slash);
    std::string ds = slash == std::string::npos ? "1" : s.substr(slash + 1);
    parse_int(ns);
    parse_int(ds);

    // GMP handles arbitrarily long digit strings.
    Rational r;
    r.promote();
    if (mpz_set_str(mpq_numref(r.big_->q), ns.c_str(), 10) != 0 ||
        mpz_set_str(mpq_denref(r.big_->q), ds.c_str(), 10) != 0)
        throw std::invalid_argument("Rational::parse: bad token '" + s + "'");
    if (mpz_sgn(mpq_denref(r.big_->q)) == 0)
        throw std::invalid_argument("Rational::parse: zero denominator");
    mpq_canonicalize(r.big_->q);
    r.demote_if_possible();
    return r;
}

double Rational::round_to_bits(int p) const {
    if (p < 2 || p > 53) throw std::invalid_argument("round_to_bits: p out of [2,53]");
    if (is_zero()) return 0.0;
    if (big_ == nullptr && den_ == 1 && num_ > -(std::int64_t{1} << p) && num_ < (std::int64_t{1} << p)) {
        return static_cast<double>(num_);  // exactly representable already
    }

    // Work on |num|/den as GMP integers; cheap at our operand sizes.
    mpz_t a, b, q, r;
    mpz_inits(a, b, q, r, nullptr);
    if (big_) {
        mpz_abs(a, mpq_numref(big_->q));
        mpz_set(b, mpq_denref(big_->q));
    } else {
        BigRat::set_i64(a, num_ < 0 ? -num_ : num_);
        BigRat::set_i64(b, den_);
    }
    bool neg = sign() < 0;

    // exponent e with 2^e <= a/b < 2^(e+1)
    long e = static_cast<long>(mpz_sizeinbase(a, 2)) - static_cast<long>(mpz_sizeinbase(b, 2));
    // sizeinbase gives an estimate within 1; fix up by comparison.
    mpz_t t;
    mpz_init(t);
    if (e >= 0) {
        mpz_mul_2exp(t, b, static_cast<unsigned long>(e));
        if (mpz_cmp(a, t) < 0) e -= 1;
    } else {
        mpz_mul_2exp(t, a, static_cast<unsigned long>(-e));
        if (mpz_cmp(t, b) < 0) e -= 1;
    }

    // significand = RN-even(a/b * 2^(p-1-e)) as an integer in [2^(p-1), 2^p]
    long shift = p - 1 - e;
    mpz_set(t, a);
    mpz_t bb;
    mpz_init_set(bb, b);
    if (shift >= 0)
        mpz_mul_2exp(t, t, static_cast<unsigned long>(shift));
    else
        mpz_mul_2exp(bb, bb, static_cast<unsigned long>(-shift));
    mpz_fdiv_qr(q, r, t, bb);
    mpz_mul_2exp(r, r, 1);
    int cmp = mpz_cmp(r, bb);
    if (cmp > 0 || (cmp == 0 && mpz_odd_p(q))) mpz_add_ui(q, q, 1);

    double m = mpz_get_d(q);  // < 2^53, exact
    mpz_clears(a, b, q, r, t, bb, nullptr);
    double out = std::ldexp(m, static_cast<int>(e - p + 1));
    return neg ? -out : out;
}

std::string Rational::str() const {
    if (big_) {
        char* ns = mpz_get_str(nullptr, 10, mpq_numref(big_->q));
        char* ds = mpz_get_str(nullptr, 10, mpq_denref(big_->q));
        std::string out(ns);
        std::string d(ds);
        std::free(ns);
        std::free(ds);
        if (d != "1") out += "/" + d;
        return out;
    }
    std::string out = std::to_string(num_);
    if (den_ != 1) out += "/" + std::to_string(den_);
    return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace fastmm

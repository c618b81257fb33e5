#include "fastmm/matrix_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fastmm {

namespace detail {
std::uint64_t& multiplication_counter() {
    thread_local std::uint64_t counter = 0;
    return counter;
}
}  // namespace detail

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Rational: return "rational";
        case Regime::Real: return "double";
        case Regime::Complex: return "complex";
        case Regime::Rounded: return "rounded";
    }
    return "?";
}

Regime regime_of(const AnyMatrix& m) {
    return std::visit(
        [](const auto& mm) {
            using T = typename std::decay_t<decltype(mm)>::Scalar;
            return ScalarTraits<T>::regime;
        },
        m);
}

std::size_t rows_of(const AnyMatrix& m) {
    return std::visit([](const auto& mm) { return mm.rows(); }, m);
}

std::size_t cols_of(const AnyMatrix& m) {
    return std::visit([](const auto& mm) { return mm.cols(); }, m);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_complex(const std::complex<double>& z) {
    std::string out = format_double(z.real());
    double im = z.imag();
    if (std::signbit(im)) {
        out += "-" + format_double(-im);
    } else {
        out += "+" + format_double(im);
    }
    return out + "i";
}

std::complex<double> parse_complex(const std::string& token) {
    if (token.empty()) throw std::invalid_argument("parse_complex: empty token");
    std::string t = token;
    bool has_i = t.back() == 'i' || t.back() == 'I';
    if (!has_i) {
        // bare real
        return {std::stod(t), 0.0};
    }
    t.pop_back();
    // split at the last '+'/'-' that is not an exponent sign and not leading
    std::size_t split = std::string::npos;
    for (std::size_t i = t.size(); i-- > 1;) {
        char c = t[i];
        if ((c == '+' || c == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos)
        throw std::invalid_argument("parse_complex: missing real/imag split in '" + token + "'");
    double re = std::stod(t.substr(0, split));
    std::string imag_part = t.substr(split);  // keeps sign
    double im = (imag_part == "+" || imag_part == "-") ? (imag_part == "+" ? 1.0 : -1.0)
                                                       : std::stod(imag_part);
    return {re, im};
}

namespace {

template <typename T>
std::string entry_token(const T&);

template <>
std::string entry_token(const Rational& r) { return r.str(); }
template <>
std::string entry_token(const double& v) { return format_double(v); }
template <>
std::string entry_token(const std::complex<double>& z) { return format_complex(z); }
template <>
std::string entry_token(const Rounded& r) { return format_double(r.v); }

template <typename T>
void write_typed(std::ostream& os, const Matrix<T>& m) {
    os << m.rows() << ' ' << m.cols() << ' ' << regime_name(ScalarTraits<T>::regime) << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << entry_token(m(i, j));
        }
        os << '\n';
    }
}

template <typename T, typename Parse>
Matrix<T> read_entries(std::istream& is, std::size_t rows, std::size_t cols, Parse parse) {
    Matrix<T> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            std::string token;
            if (!(is >> token))
                throw std::runtime_error("matrix file: expected " +
                                         std::to_string(rows * cols) + " entries, got " +
                                         std::to_string(i * cols + j));
            m(i, j) = parse(token);
        }
    return m;
}

}  // namespace

void write_matrix(std::ostream& os, const AnyMatrix& m) {
    std::visit([&os](const auto& mm) { write_typed(os, mm); }, m);
}

AnyMatrix read_matrix(std::istream& is) {
    std::size_t rows = 0, cols = 0;
    std::string regime;
    if (!(is >> rows >> cols >> regime))
        throw std::runtime_error("matrix file: malformed header (want 'rows cols regime')");
    if (rows == 0 || cols == 0) throw std::runtime_error("matrix file: zero dimension");

    if (regime == "rational")
        return read_entries<Rational>(is, rows, cols,
                                      [](const std::string& t) { return Rational::parse(t); });
    if (regime == "double")
        return read_entries<double>(is, rows, cols,
                                    [](const std::string& t) { return std::stod(t); });
    if (regime == "complex")
        return read_entries<std::complex<double>>(
            is, rows, cols, [](const std::string& t) { return parse_complex(t); });
    if (regime == "rounded")
        return read_entries<Rounded>(is, rows, cols,
                                     [](const std::string& t) { return Rounded{std::stod(t)}; });
    throw std::runtime_error("matrix file: unknown regime '" + regime + "'");
}

void save_matrix(const std::string& path, const AnyMatrix& m) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for write: " + path);
    write_matrix(os, m);
}

AnyMatrix load_matrix(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    return read_matrix(is);
}

}  // namespace fastmm

#ifndef FASTMM_MATRIX_IO_HPP
#define FASTMM_MATRIX_IO_HPP

#include <iosfwd>
#include <string>
#include <variant>

#include "fastmm/matrix.hpp"

namespace fastmm {

using AnyMatrix = std::variant<Matrix<Rational>, Matrix<double>,
                               Matrix<std::complex<double>>, Matrix<Rounded>>;

Regime regime_of(const AnyMatrix& m);
std::size_t rows_of(const AnyMatrix& m);
std::size_t cols_of(const AnyMatrix& m);

/// Text format: first line "rows cols regime", then rows*cols
/// whitespace-separated entries in row-major order. Rationals emit in
/// canonical reduced form ("p" or "p/q"), doubles with 17 significant
/// digits, complex as "re+imi"/"re-imi". Emission is deterministic.
void write_matrix(std::ostream& os, const AnyMatrix& m);
AnyMatrix read_matrix(std::istream& is);

void save_matrix(const std::string& path, const AnyMatrix& m);
AnyMatrix load_matrix(const std::string& path);

std::string format_double(double v);          // %.17g, round-trip exact
std::string format_complex(const std::complex<double>& z);
std::complex<double> parse_complex(const std::string& token);

}  // namespace fastmm

#endif

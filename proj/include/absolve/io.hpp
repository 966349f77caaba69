#pragma once

// Plain-text problem files. A matrix file starts with "m n" followed by m
// rows of n values; a vector file starts with "n" followed by n values. Any
// whitespace separates tokens. Reals are written in shortest round-trip form,
// integers as decimal strings of any length.

#include <iosfwd>
#include <string>

#include "absolve/linalg.hpp"

namespace absolve {

RealMatrix read_real_matrix(std::istream& in);
RealVector read_real_vector(std::istream& in);
IntMatrix read_int_matrix(std::istream& in);
IntVector read_int_vector(std::istream& in);

void write_matrix(std::ostream& out, const RealMatrix& m);
void write_vector(std::ostream& out, const RealVector& v);
void write_matrix(std::ostream& out, const IntMatrix& m);
void write_vector(std::ostream& out, const IntVector& v);

std::string format_real(double v);

// File wrappers; ParseError covers unreadable files as well as bad content.
RealMatrix load_real_matrix(const std::string& path);
RealVector load_real_vector(const std::string& path);
IntMatrix load_int_matrix(const std::string& path);
IntVector load_int_vector(const std::string& path);

template <class T>
void save(const std::string& path, const T& value);

}  // namespace absolve

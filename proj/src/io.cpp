#include "absolve/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "absolve/errors.hpp"

namespace absolve {

namespace {

std::string next_token(std::istream& in, const char* what) {
  std::string tok;
  if (!(in >> tok)) throw ParseError(std::string("unexpected end of input while reading ") + what);
  return tok;
}

std::size_t parse_size(std::istream& in, const char* what) {
  const std::string tok = next_token(in, what);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || v == 0)
    throw ParseError(std::string("bad ") + what + ": '" + tok + "'");
  return v;
}

double parse_real(std::istream& in) {
  const std::string tok = next_token(in, "value");
  double v = 0.0;
  const char* first = tok.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) throw ParseError("bad real value: '" + tok + "'");
  if (!std::isfinite(v)) throw ParseError("non-finite value: '" + tok + "'");
  return v;
}

Integer parse_integer(std::istream& in) {
  const std::string tok = next_token(in, "value");
  Integer v;
  const std::string digits = !tok.empty() && tok[0] == '+' ? tok.substr(1) : tok;
  if (digits.empty() || v.set_str(digits, 10) != 0) throw ParseError("bad integer value: '" + tok + "'");
  return v;
}

void expect_end(std::istream& in) {
  std::string extra;
  if (in >> extra) throw ParseError("trailing data after the declared entries: '" + extra + "'");
}

template <class T, class Parse>
Matrix<T> read_matrix(std::istream& in, Parse parse) {
  const std::size_t m = parse_size(in, "row count");
  const std::size_t n = parse_size(in, "column count");
  Matrix<T> out(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = parse(in);
  expect_end(in);
  return out;
}

template <class T, class Parse>
Vector<T> read_vector(std::istream& in, Parse parse) {
  const std::size_t n = parse_size(in, "length");
  Vector<T> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = parse(in);
  expect_end(in);
  return out;
}

std::string format(const Integer& v) { return v.get_str(); }

template <class T>
void write_matrix_impl(std::ostream& out, const Matrix<T>& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      if constexpr (std::is_same_v<T, double>)
        out << format_real(m(i, j));
      else
        out << format(m(i, j));
    }
    out << '\n';
  }
}

template <class T>
void write_vector_impl(std::ostream& out, const Vector<T>& v) {
  out << v.size() << '\n';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if constexpr (std::is_same_v<T, double>)
      out << format_real(v[i]) << '\n';
    else
      out << format(v[i]) << '\n';
  }
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return in;
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

RealMatrix read_real_matrix(std::istream& in) { return read_matrix<double>(in, parse_real); }
RealVector read_real_vector(std::istream& in) { return read_vector<double>(in, parse_real); }
IntMatrix read_int_matrix(std::istream& in) { return read_matrix<Integer>(in, parse_integer); }
IntVector read_int_vector(std::istream& in) { return read_vector<Integer>(in, parse_integer); }

void write_matrix(std::ostream& out, const RealMatrix& m) { write_matrix_impl(out, m); }
void write_vector(std::ostream& out, const RealVector& v) { write_vector_impl(out, v); }
void write_matrix(std::ostream& out, const IntMatrix& m) { write_matrix_impl(out, m); }
void write_vector(std::ostream& out, const IntVector& v) { write_vector_impl(out, v); }

RealMatrix load_real_matrix(const std::string& path) {
  auto in = open_in(path);
  return read_real_matrix(in);
}
RealVector load_real_vector(const std::string& path) {
  auto in = open_in(path);
  return read_real_vector(in);
}
IntMatrix load_int_matrix(const std::string& path) {
  auto in = open_in(path);
  return read_int_matrix(in);
}
IntVector load_int_vector(const std::string& path) {
  auto in = open_in(path);
  return read_int_vector(in);
}

template <class T>
void save(const std::string& path, const T& value) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  if constexpr (requires { value.rows(); })
    write_matrix(out, value);
  else
    write_vector(out, value);
  if (!out) throw ParseError("write to '" + path + "' failed");
}

template void save<RealMatrix>(const std::string&, const RealMatrix&);
template void save<RealVector>(const std::string&, const RealVector&);
template void save<IntMatrix>(const std::string&, const IntMatrix&);
template void save<IntVector>(const std::string&, const IntVector&);

}  // namespace absolve

#include "algrowth/exactlin.hpp"

#include <cmath>
#include <regex>

namespace algrowth {

Rational parse_rational(const std::string& text) {
  static const std::regex pattern(R"(\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw ParseError("not an exact rational: \"" + text + "\"");
  BigInt num(m[1].str().front() == '+' ? m[1].str().substr(1) : m[1].str());
  BigInt den = m[2].matched ? BigInt(m[2].str()) : BigInt(1);
  if (den == 0) throw ParseError("zero denominator in \"" + text + "\"");
  return Rational(num, den);
}

std::string to_string(const Rational& value) {
  const BigInt den = boost::multiprecision::denominator(value);
  const BigInt num = boost::multiprecision::numerator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational exact_from_double(double value) {
  if (!std::isfinite(value)) throw ValidationError("non-finite floating value");
  int exponent = 0;
  const double mantissa = std::frexp(value, &exponent);
  // mantissa * 2^53 is an integer for every finite double.
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  const Rational r{BigInt(scaled)};
  const int shift = exponent - 53;
  BigInt pow2 = 1;
  pow2 <<= static_cast<unsigned>(shift < 0 ? -shift : shift);
  if (shift >= 0) return r * Rational(pow2);
  return r / Rational(pow2);
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace algrowth

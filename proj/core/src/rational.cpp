#include <chenciner/rational.hpp>

#include <chenciner/errors.hpp>

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace chenciner {

namespace {

Integer pow10(long e) {
  Integer p(1);
  for (long n = 0; n < e; ++n) p *= 10;
  return p;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Base-10 regardless of leading zeros (cpp_int's string constructor would
// read "0125" as octal).
Integer from_digits(std::string_view digits) {
  const size_t nz = digits.find_first_not_of('0');
  if (nz == std::string_view::npos) return Integer(0);
  return Integer(std::string(digits.substr(nz)));
}

[[noreturn]] void bad(std::string_view text) {
  throw ConfigError("not a rational literal: \"" + std::string(text) + "\"");
}

// digits[.digits][e[+-]digits], mapped to an exact base-10 rational.
Rational parse_decimal(std::string_view text, std::string_view whole) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }

  long exponent = 0;
  if (size_t e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view tail = s.substr(e + 1);
    std::string_view etxt = tail;
    bool eneg = false;
    if (!etxt.empty() && (etxt[0] == '+' || etxt[0] == '-')) {
      eneg = etxt[0] == '-';
      etxt.remove_prefix(1);
    }
    if (!all_digits(etxt)) bad(whole);
    exponent = std::strtol(std::string(etxt).c_str(), nullptr, 10);
    if (eneg) exponent = -exponent;
    s = s.substr(0, e);
  }

  std::string digits;
  long frac_digits = 0;
  if (size_t dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) bad(whole);
    if (!int_part.empty() && !all_digits(int_part)) bad(whole);
    if (!frac_part.empty() && !all_digits(frac_part)) bad(whole);
    digits = std::string(int_part) + std::string(frac_part);
    frac_digits = static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) bad(whole);
    digits = std::string(s);
  }
  if (digits.empty()) bad(whole);

  Integer num = from_digits(digits);
  Integer den(1);
  const long net = exponent - frac_digits;
  if (net >= 0)
    num *= pow10(net);
  else
    den = pow10(-net);
  Rational q(num, den);
  return negative ? Rational(-q) : q;
}

}  // namespace

Rational rational_from_string(std::string_view text) {
  size_t begin = text.find_first_not_of(" \t");
  size_t end = text.find_last_not_of(" \t");
  if (begin == std::string_view::npos) bad(text);
  std::string_view s = text.substr(begin, end - begin + 1);

  if (size_t slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    std::string_view n = num, d = den;
    bool nneg = false, dneg = false;
    if (!n.empty() && (n[0] == '+' || n[0] == '-')) {
      nneg = n[0] == '-';
      n.remove_prefix(1);
    }
    if (!d.empty() && (d[0] == '+' || d[0] == '-')) {
      dneg = d[0] == '-';
      d.remove_prefix(1);
    }
    if (!all_digits(n) || !all_digits(d)) bad(text);
    Integer in = from_digits(n), id = from_digits(d);
    if (id == 0) bad(text);
    Rational q(in, id);
    return nneg != dneg ? Rational(-q) : q;
  }
  return parse_decimal(s, text);
}

std::string fraction_string(const Rational& q) {
  const Integer num = numerator(q);
  const Integer den = denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

int sign_of(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

int sign_with_tol(double value, double tol) {
  if (std::abs(value) <= tol) return 0;
  return value > 0 ? 1 : -1;
}

}  // namespace chenciner

#include "wnd/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <limits>

#include "wnd/errors.hpp"

namespace wnd {

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) {
    throw DomainError("cannot convert non-finite double to a rational");
  }
  Rational q;
  mpq_set_d(q.get_mpq_t(), value);
  return q;
}

double to_double_nearest(const Rational& value) {
  const double truncated = value.get_d();
  if (!std::isfinite(truncated)) return truncated;
  if (rational_from_double(truncated) == value) return truncated;
  const double away = std::nextafter(
      truncated, sgn(value) > 0 ? std::numeric_limits<double>::infinity()
                                : -std::numeric_limits<double>::infinity());
  if (!std::isfinite(away)) return truncated;
  const Rational d_trunc = abs(value - rational_from_double(truncated));
  const Rational d_away = abs(rational_from_double(away) - value);
  if (d_trunc < d_away) return truncated;
  if (d_away < d_trunc) return away;
  // Tie: pick the even significand.
  std::int64_t bits = 0;
  std::memcpy(&bits, &truncated, sizeof bits);
  return (bits & 1) == 0 ? truncated : away;
}

Rational pow10(long exponent) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0) return Rational(p);
  Rational q(1, p);
  q.canonicalize();
  return q;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    negative = s[i] == '-';
    ++i;
  }
  if (i == s.size()) throw FormatError("malformed rational \"" + std::string(whole) + "\"");
  for (std::size_t k = i; k < s.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) {
      throw FormatError("malformed rational \"" + std::string(whole) + "\"");
    }
  }
  mpz_class z(std::string(s.substr(i)), 10);
  return negative ? mpz_class(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw FormatError("empty rational");

  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const mpz_class num = parse_integer(trim(s.substr(0, slash)), s);
    const mpz_class den = parse_integer(trim(s.substr(slash + 1)), s);
    if (den == 0) throw FormatError("zero denominator in \"" + std::string(s) + "\"");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') {
    negative = s[i] == '-';
    ++i;
  }
  std::string digits;
  long exponent = 0;
  bool seen_digit = false;
  for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
    digits.push_back(s[i]);
    seen_digit = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
      digits.push_back(s[i]);
      --exponent;
      seen_digit = true;
    }
  }
  if (!seen_digit) throw FormatError("malformed rational \"" + std::string(s) + "\"");
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    const std::string_view exp_text = s.substr(i);
    if (exp_text.empty() || exp_text.size() > 9) {
      throw FormatError("malformed exponent in \"" + std::string(s) + "\"");
    }
    exponent += parse_integer(exp_text, s).get_si();
    i = s.size();
  }
  if (i != s.size()) throw FormatError("malformed rational \"" + std::string(s) + "\"");

  Rational q(mpz_class(digits, 10));
  q *= pow10(exponent);
  if (negative) q = -q;
  return q;
}

std::string format_rational(const Rational& input) {
  Rational value = input;
  value.canonicalize();
  if (value.get_den() == 1) return value.get_num().get_str();

  mpz_class den = value.get_den();
  long twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return value.get_num().get_str() + "/" + value.get_den().get_str();

  long k = std::max(twos, fives);
  mpz_class scaled_num = abs(value.get_num()) * pow10(k).get_num() / value.get_den();
  std::string s = scaled_num.get_str();
  while (s.size() > 1 && s.back() == '0') {
    s.pop_back();
    --k;
  }
  const long len = static_cast<long>(s.size());
  std::string out = sgn(value) < 0 ? "-" : "";
  if (k - len < 6) {
    if (len > k) {
      out += s.substr(0, len - k) + "." + s.substr(len - k);
    } else {
      out += "0." + std::string(k - len, '0') + s;
    }
  } else {
    out += s.substr(0, 1);
    if (len > 1) out += "." + s.substr(1);
    out += "e" + std::to_string(len - 1 - k);
  }
  return out;
}

std::string approx_string(const Rational& value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, to_double_nearest(value));
  return buf;
}

std::vector<double> to_doubles(const std::vector<Rational>& values) {
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(to_double_nearest(v));
  return out;
}

std::vector<Rational> from_doubles(const std::vector<double>& values) {
  std::vector<Rational> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(rational_from_double(v));
  return out;
}

}  // namespace wnd

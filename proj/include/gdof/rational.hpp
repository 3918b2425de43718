#pragma once

// Exact rational scalar used throughout the library, plus text conversions.

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gdof/errors.hpp"

namespace gdof {

using Rational = mpq_class;

/// Parses "p", "p/q", "-p/q" or a decimal such as "0.45" / "-1.5e-1"
/// into an exact fraction in lowest terms.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw SchemaError("empty rational literal");

  auto bad = [&]() -> SchemaError {
    return SchemaError("malformed rational literal '" + std::string(text) + "'");
  };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    auto is_int = [](const std::string& t, bool allow_sign) {
      size_t k = 0;
      if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) k = 1;
      if (k >= t.size()) return false;
      return std::all_of(t.begin() + k, t.end(),
                         [](unsigned char c) { return std::isdigit(c); });
    };
    if (!is_int(num, true) || !is_int(den, false)) throw bad();
    if (num[0] == '+') num.erase(0, 1);
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) throw SchemaError("zero denominator in '" + std::string(text) + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
  }

  // Decimal / scientific notation.
  size_t k = 0;
  bool negative = false;
  if (s[k] == '+' || s[k] == '-') negative = s[k++] == '-';
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false, seen_digit = false;
  for (; k < s.size(); ++k) {
    char c = s[k];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw bad();
  long exponent = 0;
  if (k < s.size()) {
    if (s[k] != 'e' && s[k] != 'E') throw bad();
    std::string e = s.substr(k + 1);
    if (e.empty()) throw bad();
    size_t p = 0;
    if (e[0] == '+' || e[0] == '-') p = 1;
    if (p >= e.size() ||
        !std::all_of(e.begin() + p, e.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw bad();
    if (e.size() > 6) throw bad();
    exponent = std::stol(e);
  }
  mpz_class n(digits, 10);
  long shift = exponent - frac_digits;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational r = shift >= 0 ? Rational(n * pow10) : Rational(n, pow10);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

/// Canonical "p/q" text, lowest terms; integers render without a denominator.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational rmax(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational rmin(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational positive_part(const Rational& a) { return a < 0 ? Rational(0) : a; }

inline std::vector<Rational> parse_rational_list(std::string_view csv) {
  std::vector<Rational> out;
  size_t start = 0;
  while (start <= csv.size()) {
    size_t comma = csv.find(',', start);
    if (comma == std::string_view::npos) comma = csv.size();
    out.push_back(parse_rational(csv.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational acc = 0;
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace gdof

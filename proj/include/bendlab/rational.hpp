#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace bendlab {

/// Error raised for malformed input (bad files, unknown names, shape mismatches).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact rational. mpq_class keeps values canonical (lowest terms, positive
/// denominator) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw Error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p", "-p", "p/q". Surrounding whitespace is ignored.
inline Rational parse_rational(std::string_view text) {
  auto begin = text.find_first_not_of(" \t\n\r");
  auto end = text.find_last_not_of(" \t\n\r");
  if (begin == std::string_view::npos) throw Error("empty rational literal");
  std::string s(text.substr(begin, end - begin + 1));
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw Error("malformed rational literal '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  Integer n(num), d(den);
  if (d == 0) throw Error("zero denominator in '" + s + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// "p/q", or "p" when q = 1.
inline std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Exact square root when r is the square of a rational.
inline bool rational_sqrt(const Rational& r, Rational& out) {
  if (sgn(r) < 0) return false;
  if (!mpz_perfect_square_p(r.get_num().get_mpz_t()) ||
      !mpz_perfect_square_p(r.get_den().get_mpz_t()))
    return false;
  Integer n = sqrt(r.get_num());
  Integer d = sqrt(r.get_den());
  out = Rational(n, d);
  out.canonicalize();
  return true;
}

}  // namespace bendlab

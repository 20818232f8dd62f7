#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace jurisprob {

// Expression templates off so generic code sees plain values.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

// Raised when an input lies outside an operation's domain.
struct domain_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised when data admit no parameter value under the model.
struct infeasible_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Interval [center - half_width, center + half_width] and its probability.
struct IntervalResult {
  double center = 0.0;
  double half_width = 0.0;
  double probability = 0.0;

  double lower() const { return center - half_width; }
  double upper() const { return center + half_width; }
};

template <class T>
inline constexpr bool is_rational_v = std::is_same_v<std::decay_t<T>, Rational>;

// x^e for a non-negative integer exponent, exact for Rational.
template <class T>
T ipow(const T& x, unsigned e) {
  T result(1);
  T base = x;
  while (e) {
    if (e & 1u) result *= base;
    base *= base;
    e >>= 1u;
  }
  return result;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double x) { return x; }

// Binomial coefficient as the requested number type; exact through Integer.
template <class T = Integer>
T choose(unsigned n, unsigned k) {
  if (k > n) return T(0);
  if (k > n - k) k = n - k;
  Integer c = 1;
  for (unsigned j = 1; j <= k; ++j) {
    c *= n - k + j;
    c /= j;
  }
  if constexpr (std::is_same_v<T, Integer>) {
    return c;
  } else if constexpr (is_rational_v<T>) {
    return Rational(c);
  } else {
    return c.template convert_to<T>();
  }
}

inline Integer factorial(unsigned n) {
  Integer f = 1;
  for (unsigned j = 2; j <= n; ++j) f *= j;
  return f;
}

// Fixed-point decimal rendering of an exact rational.
inline std::string to_decimal(const Rational& r, int digits = 6) {
  Integer num = boost::multiprecision::numerator(r);
  Integer den = boost::multiprecision::denominator(r);
  bool neg = num < 0;
  if (neg) num = -num;
  Integer scale = 1;
  for (int j = 0; j < digits; ++j) scale *= 10;
  Integer scaled = (num * scale * 2 + den) / (den * 2);  // round half up
  Integer whole = scaled / scale;
  Integer frac = scaled % scale;
  std::string fs = frac.str();
  if (static_cast<int>(fs.size()) < digits) fs.insert(0, digits - fs.size(), '0');
  std::string out = (neg && scaled != 0 ? "-" : "") + whole.str();
  if (digits > 0) out += "." + fs;
  return out;
}

// Parses "0.25", "3", "1/4" or "-7/12" into an exact rational.
inline Rational parse_rational(const std::string& text) {
  auto bad = [&] { return domain_error("not a number: '" + text + "'"); };
  if (text.empty()) throw bad();
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rational n = parse_rational(text.substr(0, slash));
    Rational d = parse_rational(text.substr(slash + 1));
    if (d == 0) throw domain_error("zero denominator in '" + text + "'");
    return n / d;
  }
  std::size_t pos = 0;
  bool neg = false;
  if (text[pos] == '+' || text[pos] == '-') neg = text[pos++] == '-';
  Integer whole = 0, frac = 0, scale = 1;
  bool digits = false, dot = false;
  for (; pos < text.size(); ++pos) {
    char ch = text[pos];
    if (ch == '.' && !dot) {
      dot = true;
    } else if (ch >= '0' && ch <= '9') {
      digits = true;
      if (dot) {
        frac = frac * 10 + (ch - '0');
        scale *= 10;
      } else {
        whole = whole * 10 + (ch - '0');
      }
    } else if ((ch == 'e' || ch == 'E') && digits) {
      int ex = std::stoi(text.substr(pos + 1));
      Rational r = Rational(whole) + Rational(frac, scale);
      Rational p = ipow(Rational(10), static_cast<unsigned>(std::abs(ex)));
      if (ex < 0) r /= p;
      else r *= p;
      return neg ? -r : r;
    } else {
      throw bad();
    }
  }
  if (!digits) throw bad();
  Rational r = Rational(whole) + Rational(frac, scale);
  return neg ? -r : r;
}

inline double parse_real(const std::string& text) { return to_double(parse_rational(text)); }

inline void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw domain_error(std::string(name) + " must lie in [0,1]");
}

inline void require_probability(const Rational& p, const char* name) {
  if (p < 0 || p > 1) throw domain_error(std::string(name) + " must lie in [0,1]");
}

}  // namespace jurisprob

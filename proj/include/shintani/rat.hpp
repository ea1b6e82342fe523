#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace shintani {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline int sgn(const Int& x) { return x.sign(); }
inline int sgn(const Rat& x) { return x.sign(); }

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

inline Int gcd_int(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm_int(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

// Floor of a/b for integers, exact for either sign of the inputs.
inline Int floor_div(const Int& a, const Int& b) {
  if (b == 0) throw std::invalid_argument("floor_div: zero divisor");
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline Int floor_rat(const Rat& q) { return floor_div(num(q), den(q)); }
inline Int ceil_rat(const Rat& q) { return -floor_div(-num(q), den(q)); }

// Euclidean remainder in [0, |b|).
inline Int mod_euclid(const Int& a, const Int& b) {
  Int r = a - floor_div(a, abs_int(b)) * abs_int(b);
  return r;
}

inline double to_double(const Rat& q) { return q.convert_to<double>(); }
inline double to_double(const Int& x) { return x.convert_to<double>(); }

inline std::int64_t to_i64(const Int& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("to_i64: value out of range");
  return x.convert_to<std::int64_t>();
}

// Parses "p", "-p" or "p/q"; rejects anything else (including empty input).
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_rat: empty string");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int p(s.substr(0, slash)), q(s.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("parse_rat: zero denominator");
    return Rat(p) / Rat(q);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("parse_rat: bad rational '" + s + "'");
  }
}

inline std::string rat_str(const Rat& q) {
  std::string s = num(q).str();
  if (den(q) != 1) s += "/" + den(q).str();
  return s;
}

using QVec = std::vector<Rat>;
using ZVec = std::vector<Int>;

}  // namespace shintani

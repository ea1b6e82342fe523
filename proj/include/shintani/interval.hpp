#pragma once

#include "shintani/rat.hpp"

namespace shintani {

// Closed rational interval, outward bounds. Used for every certified real
// sign decision so no float enters the exact path.
struct QInterval {
  Rat lo, hi;

  QInterval() : lo(0), hi(0) {}
  QInterval(Rat v) : lo(v), hi(v) {}
  QInterval(Rat a, Rat b) : lo(std::move(a)), hi(std::move(b)) {
    if (lo > hi) throw std::invalid_argument("QInterval: lo > hi");
  }

  Rat width() const { return hi - lo; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  Rat mid() const { return (lo + hi) / 2; }

  // -1, +1 when the sign is certain, 0 when the interval straddles zero
  int certain_sign() const {
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    return 0;
  }
};

inline QInterval operator+(const QInterval& a, const QInterval& b) {
  return QInterval(a.lo + b.lo, a.hi + b.hi);
}
inline QInterval operator-(const QInterval& a) { return QInterval(-a.hi, -a.lo); }
inline QInterval operator-(const QInterval& a, const QInterval& b) { return a + (-b); }
inline QInterval operator*(const QInterval& a, const QInterval& b) {
  Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  Rat lo = p1, hi = p1;
  for (const Rat& p : {p2, p3, p4}) {
    if (p < lo) lo = p;
    if (p > hi) hi = p;
  }
  return QInterval(lo, hi);
}
inline QInterval operator*(const Rat& c, const QInterval& a) {
  return c >= 0 ? QInterval(c * a.lo, c * a.hi) : QInterval(c * a.hi, c * a.lo);
}

// Laplace expansion; fine for the n <= 4 matrices that occur here.
inline QInterval det_interval(const std::vector<std::vector<QInterval>>& m) {
  std::size_t n = m.size();
  if (n == 0) return QInterval(Rat(1));
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("det_interval: not square");
  if (n == 1) return m[0][0];
  QInterval acc(Rat(0));
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<QInterval>> minor(n - 1, std::vector<QInterval>(n - 1));
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        minor[r - 1][cc++] = m[r][c];
      }
    }
    QInterval term = m[0][j] * det_interval(minor);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

// Enclosure of 2*atanh(t) = ln((1+t)/(1-t)) for |t| <= 1/3, tail bounded
// geometrically.
inline QInterval two_atanh_enclosure(const Rat& t, const Rat& tol) {
  if (t > Rat(1, 3) || t < Rat(-1, 3)) throw std::invalid_argument("two_atanh_enclosure: |t| too large");
  Rat t2 = t * t;
  Rat term = t;  // t^(2k+1)
  Rat sum = 0;
  Int k = 0;
  while (true) {
    sum += term / Rat(2 * k + 1);
    // tail <= |t|^(2k+3)/((2k+3)(1-t^2)) <= |t|^(2k+3) * (9/8) / (2k+3)
    Rat next = term * t2;
    Rat tail = (next < 0 ? -next : next) * Rat(9, 8) / Rat(2 * k + 3);
    if (2 * tail <= tol) {
      return QInterval(2 * (sum - tail), 2 * (sum + tail));
    }
    term = next;
    ++k;
    if (k > 100000) throw std::logic_error("two_atanh_enclosure: no convergence");
  }
}

inline QInterval ln2_enclosure(const Rat& tol) { return two_atanh_enclosure(Rat(1, 3), tol); }

// Certified enclosure of ln(y) for rational y > 0, width <= 2*tol.
inline QInterval ln_enclosure(Rat y, const Rat& tol) {
  if (y <= 0) throw std::invalid_argument("ln_enclosure: argument must be positive");
  long e = 0;
  while (y > Rat(4, 3)) {
    y /= 2;
    ++e;
  }
  while (y < Rat(2, 3)) {
    y *= 2;
    --e;
  }
  Rat split = tol / Rat(2 * (std::abs(e) + 1));
  Rat t = (y - 1) / (y + 1);  // |t| <= 1/5 after reduction
  QInterval r = two_atanh_enclosure(t, split);
  if (e != 0) {
    QInterval l2 = ln2_enclosure(split);
    r = r + Rat(e) * l2;
  }
  return r;
}

}  // namespace shintani

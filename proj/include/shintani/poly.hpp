#pragma once

#include "shintani/interval.hpp"

namespace shintani {

// Polynomials with rational coefficients, ascending degree order.
// The zero polynomial is the empty vector.
using QPoly = std::vector<Rat>;

inline void qp_trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int qp_deg(const QPoly& p) { return static_cast<int>(p.size()) - 1; }  // -1 for zero

inline QPoly qp_from_int(const std::vector<Int>& c) {
  QPoly p(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) p[i] = Rat(c[i]);
  qp_trim(p);
  return p;
}

inline Rat qp_eval(const QPoly& p, const Rat& x) {
  Rat v = 0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

inline QInterval qp_eval(const QPoly& p, const QInterval& x) {
  QInterval v{Rat(0)};
  for (std::size_t i = p.size(); i-- > 0;) v = v * x + QInterval(p[i]);
  return v;
}

inline QPoly qp_derivative(const QPoly& p) {
  QPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(Rat(Int(i)) * p[i]);
  return d;
}

inline QPoly qp_add(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  qp_trim(a);
  return a;
}

inline QPoly qp_neg(QPoly a) {
  for (auto& c : a) c = -c;
  return a;
}

inline QPoly qp_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly c(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  qp_trim(c);
  return c;
}

// Division with remainder; divisor must be nonzero.
inline std::pair<QPoly, QPoly> qp_divmod(QPoly a, const QPoly& b) {
  if (b.empty()) throw std::invalid_argument("qp_divmod: division by zero polynomial");
  qp_trim(a);
  if (a.size() < b.size()) return {QPoly{}, a};
  QPoly q(a.size() - b.size() + 1, Rat(0));
  for (std::size_t k = q.size(); k-- > 0;) {
    Rat f = a[k + b.size() - 1] / b.back();
    q[k] = f;
    if (f != 0)
      for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= f * b[j];
  }
  qp_trim(a);
  qp_trim(q);
  return {q, a};
}

inline QPoly qp_gcd(QPoly a, QPoly b) {
  qp_trim(a);
  qp_trim(b);
  while (!b.empty()) {
    auto [q, r] = qp_divmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rat lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

inline bool qp_squarefree(const QPoly& p) { return qp_deg(qp_gcd(p, qp_derivative(p))) <= 0; }

// Sturm chain for a squarefree polynomial.
inline std::vector<QPoly> sturm_chain(const QPoly& f) {
  std::vector<QPoly> chain;
  chain.push_back(f);
  QPoly d = qp_derivative(f);
  qp_trim(d);
  if (!d.empty()) chain.push_back(d);
  while (chain.size() >= 2 && !chain.back().empty()) {
    auto [q, r] = qp_divmod(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    chain.push_back(qp_neg(r));
  }
  return chain;
}

inline int sturm_variations(const std::vector<QPoly>& chain, const Rat& x) {
  int var = 0, last = 0;
  for (const auto& p : chain) {
    Rat v = qp_eval(p, x);
    int s = sgn(v);
    if (s == 0) continue;
    if (last != 0 && s != last) ++var;
    last = s;
  }
  return var;
}

// Number of distinct roots in the open interval (a, b); endpoints must not be
// roots of the squarefree polynomial heading the chain.
inline int sturm_count(const std::vector<QPoly>& chain, const Rat& a, const Rat& b) {
  if (qp_eval(chain[0], a) == 0 || qp_eval(chain[0], b) == 0)
    throw std::invalid_argument("sturm_count: endpoint is a root");
  return sturm_variations(chain, a) - sturm_variations(chain, b);
}

// Isolated real root of a squarefree rational polynomial. lo == hi encodes an
// exact rational root; otherwise f changes sign over [lo, hi] and the interval
// contains exactly one root.
struct RealRoot {
  QPoly f;
  Rat lo, hi;

  bool exact() const { return lo == hi; }

  void refine() {
    if (exact()) return;
    Rat m = (lo + hi) / 2;
    Rat fm = qp_eval(f, m);
    if (fm == 0) {
      lo = hi = m;
      return;
    }
    if (sgn(fm) == sgn(qp_eval(f, lo)))
      lo = m;
    else
      hi = m;
  }

  void refine_below(const Rat& width) {
    int guard = 0;
    while (!exact() && hi - lo > width) {
      refine();
      if (++guard > 100000) throw std::logic_error("RealRoot::refine_below: cap exceeded");
    }
  }

  QInterval enclosure(const Rat& width) {
    refine_below(width);
    return QInterval(lo, hi);
  }

  // Exact sign of g at this root; terminates for every rational g.
  int sign_of(const QPoly& gin) {
    QPoly g = gin;
    qp_trim(g);
    if (g.empty()) return 0;
    if (exact()) return sgn(qp_eval(g, lo));
    QPoly h = qp_gcd(f, g);
    if (qp_deg(h) >= 1) {
      // g vanishes at this root iff h does; h changes sign iff it has the root
      Rat ha = qp_eval(h, lo), hb = qp_eval(h, hi);
      if (ha == 0 || hb == 0 || sgn(ha) != sgn(hb)) return 0;
      auto chain = sturm_chain(h);
      if (sturm_count(chain, lo, hi) > 0) return 0;
    }
    int guard = 0;
    while (true) {
      int s = qp_eval(g, QInterval(lo, hi)).certain_sign();
      if (s != 0) return s;
      refine();
      if (exact()) return sgn(qp_eval(g, lo));
      if (++guard > 100000) throw std::logic_error("RealRoot::sign_of: cap exceeded");
    }
  }
};

// All real roots of a squarefree polynomial, ascending.
inline std::vector<RealRoot> isolate_real_roots(const QPoly& fin) {
  QPoly f = fin;
  qp_trim(f);
  if (qp_deg(f) < 1) throw std::invalid_argument("isolate_real_roots: constant polynomial");
  if (!qp_squarefree(f)) throw std::invalid_argument("isolate_real_roots: not squarefree");
  // Cauchy bound
  Rat bound = 0;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    Rat r = f[i] / f.back();
    if (r < 0) r = -r;
    if (r > bound) bound = r;
  }
  bound += 1;
  while (qp_eval(f, bound) == 0 || qp_eval(f, -bound) == 0) bound += 1;
  auto chain = sturm_chain(f);
  std::vector<RealRoot> out;
  std::vector<std::pair<Rat, Rat>> stack{{-bound, bound}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    int cnt = sturm_count(chain, a, b);
    if (cnt == 0) continue;
    if (cnt == 1 && sgn(qp_eval(f, a)) != sgn(qp_eval(f, b))) {
      out.push_back(RealRoot{f, a, b});
      continue;
    }
    Rat m = (a + b) / 2;
    if (qp_eval(f, m) != 0) {
      stack.push_back({a, m});
      stack.push_back({m, b});
      continue;
    }
    // rational root at the midpoint: fence it off before recursing
    Rat w = (b - a) / 4;
    int guard = 0;
    while (qp_eval(f, m - w) == 0 || qp_eval(f, m + w) == 0 ||
           sturm_count(chain, m - w, m + w) != 1) {
      w /= 2;
      if (++guard > 10000) throw std::logic_error("isolate_real_roots: fence cap exceeded");
    }
    out.push_back(RealRoot{f, m, m});
    stack.push_back({a, m - w});
    stack.push_back({m + w, b});
  }
  std::sort(out.begin(), out.end(),
            [](const RealRoot& x, const RealRoot& y) { return x.lo + x.hi < y.lo + y.hi; });
  return out;
}

}  // namespace shintani

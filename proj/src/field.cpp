#include "shintani/field.hpp"

namespace shintani {

namespace {

QMat invert(const QMat& m) {
  std::size_t n = m.rows;
  QMat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() != n) throw std::invalid_argument("field basis matrix is singular");
  QMat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

// monic integral irreducibility for the degrees we care about: rational-root
// test for deg <= 3, plus quadratic-factor search for deg 4
void check_irreducible(const std::vector<Int>& f, const std::vector<RealRoot>& roots) {
  std::size_t n = f.size() - 1;
  if (n <= 1) return;
  for (const auto& r : roots)
    if (r.exact()) throw std::invalid_argument("defining polynomial has a rational root");
  // monic integral: any rational root is an integer dividing the constant term
  if (f[0] == 0) throw std::invalid_argument("defining polynomial has root 0");
  auto eval = [&](const Int& x) {
    Int v = 0;
    for (std::size_t i = f.size(); i-- > 0;) v = v * x + f[i];
    return v;
  };
  for (Int d = 1; d * d <= abs_int(f[0]); ++d) {
    if (f[0] % d != 0) continue;
    for (Int cand : {Int(d), Int(-d), Int(f[0] / d), Int(-f[0] / d)})
      if (eval(cand) == 0)
        throw std::invalid_argument("defining polynomial has a rational root");
  }
  if (n != 4) return;
  const Int &f0 = f[0], &f1 = f[1], &f2 = f[2], &f3 = f[3];
  for (Int b = 1; b * b <= abs_int(f0); ++b) {
    if (f0 % b != 0) continue;
    for (Int sb : {Int(b), Int(-b)}) {
      Int d = f0 / sb;
      // a + c = f3, ac = f2 - sb - d, and check f1 = a*d + sb*c
      Int s = f3, p = f2 - sb - d;
      Int disc = s * s - 4 * p;
      if (disc < 0) continue;
      Int sq = boost::multiprecision::sqrt(disc);
      if (sq * sq != disc || (s + sq) % 2 != 0) continue;
      for (Int a : {Int((s + sq) / 2), Int((s - sq) / 2)}) {
        Int c = s - a;
        if (a * d + sb * c == f1)
          throw std::invalid_argument("defining polynomial factors over the integers");
      }
    }
  }
}

}  // namespace

TotallyRealField TotallyRealField::make(std::vector<Int> minpoly, std::optional<QMat> basis,
                                        std::optional<std::vector<std::size_t>> place_order) {
  TotallyRealField F;
  if (minpoly.size() < 2) throw std::invalid_argument("defining polynomial must have degree >= 1");
  if (minpoly.back() != 1) throw std::invalid_argument("defining polynomial must be monic");
  F.n = minpoly.size() - 1;
  F.minpoly = std::move(minpoly);

  QPoly f = qp_from_int(F.minpoly);
  if (!qp_squarefree(f)) throw std::invalid_argument("defining polynomial is not squarefree");
  if (F.n == 1) {
    // the unique root is rational; record it exactly
    F.roots = {RealRoot{f, -Rat(F.minpoly[0]), -Rat(F.minpoly[0])}};
  } else {
    F.roots = isolate_real_roots(f);
    if (F.roots.size() != F.n)
      throw std::invalid_argument("defining polynomial is not totally real");
    check_irreducible(F.minpoly, F.roots);
  }

  if (basis) {
    if (basis->rows != F.n || basis->cols != F.n)
      throw std::invalid_argument("integral basis must be a square matrix of the field degree");
    F.basis = *basis;
  } else {
    F.basis = QMat::identity(F.n);
  }
  F.basis_inv = invert(F.basis);

  if (place_order) {
    if (place_order->size() != F.n) throw std::invalid_argument("place order has wrong length");
    std::vector<bool> seen(F.n, false);
    for (auto i : *place_order) {
      if (i >= F.n || seen[i]) throw std::invalid_argument("place order is not a permutation");
      seen[i] = true;
    }
    F.place_order = *place_order;
  } else {
    F.place_order.resize(F.n);
    for (std::size_t i = 0; i < F.n; ++i) F.place_order[i] = i;
  }

  // order checks: 1 in the Z-span, products of basis vectors integral over it
  {
    auto intcoords = [&](const QVec& v) {
      for (const auto& c : v)
        if (den(c) != 1) return false;
      return true;
    };
    if (!intcoords(F.from_rational(Rat(1))))
      throw std::invalid_argument("integral basis does not contain 1 in its Z-span");
    for (std::size_t i = 0; i < F.n; ++i)
      for (std::size_t j = i; j < F.n; ++j) {
        QVec ei(F.n, Rat(0)), ej(F.n, Rat(0));
        ei[i] = 1;
        ej[j] = 1;
        if (!intcoords(F.mul(ei, ej)))
          throw std::invalid_argument("integral basis is not multiplicatively closed");
      }
  }
  return F;
}

QPoly TotallyRealField::to_power(const QVec& a) const {
  if (a.size() != n) throw std::invalid_argument("element has wrong coordinate length");
  QPoly p(n, Rat(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p[j] += a[i] * basis.at(i, j);
  qp_trim(p);
  return p;
}

QVec TotallyRealField::from_power(const QPoly& pin) const {
  QPoly p = pin;
  if (qp_deg(p) >= static_cast<int>(n)) {
    auto [q, r] = qp_divmod(p, qp_from_int(minpoly));
    p = r;
  }
  p.resize(n, Rat(0));
  QVec a(n, Rat(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i] += p[j] * basis_inv.at(j, i);
  return a;
}

QVec TotallyRealField::one() const { return from_rational(Rat(1)); }

QVec TotallyRealField::from_rational(const Rat& c) const {
  QPoly p;
  if (c != 0) p.push_back(c);
  return from_power(p);
}

QVec TotallyRealField::add(const QVec& a, const QVec& b) const {
  QVec r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = a[i] + b[i];
  return r;
}

QVec TotallyRealField::sub(const QVec& a, const QVec& b) const {
  QVec r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = a[i] - b[i];
  return r;
}

QVec TotallyRealField::neg(const QVec& a) const {
  QVec r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = -a[i];
  return r;
}

QVec TotallyRealField::mul_rat(const Rat& c, const QVec& a) const {
  QVec r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = c * a[i];
  return r;
}

QVec TotallyRealField::mul(const QVec& a, const QVec& b) const {
  return from_power(qp_mul(to_power(a), to_power(b)));
}

QVec TotallyRealField::inv(const QVec& a) const {
  if (is_zero(a)) throw std::invalid_argument("inversion of zero field element");
  // extended Euclid: u*g + v*f = gcd, gcd constant since f is irreducible
  QPoly g = to_power(a), f = qp_from_int(minpoly);
  QPoly r0 = f, r1 = g, u0, u1{Rat(1)};
  while (!r1.empty()) {
    auto [q, r2] = qp_divmod(r0, r1);
    QPoly u2 = qp_add(u0, qp_neg(qp_mul(q, u1)));
    r0 = std::move(r1);
    r1 = std::move(r2);
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  if (qp_deg(r0) != 0) throw std::logic_error("field inverse: gcd with defining polynomial not constant");
  Rat lead = r0[0];
  for (auto& c : u0) c /= lead;
  return from_power(u0);
}

bool TotallyRealField::is_rational(const QVec& a) const { return qp_deg(to_power(a)) <= 0; }

QVec TotallyRealField::pow(const QVec& a, const Int& e) const {
  QVec base = e < 0 ? inv(a) : a;
  Int k = abs_int(e);
  QVec acc = one();
  while (k > 0) {
    if (k % 2 == 1) acc = mul(acc, base);
    base = mul(base, base);
    k /= 2;
  }
  return acc;
}

QMat TotallyRealField::mult_matrix(const QVec& a) const {
  QMat m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    QVec ej(n, Rat(0));
    ej[j] = 1;
    QVec col = mul(a, ej);
    for (std::size_t i = 0; i < n; ++i) m.at(i, j) = col[i];
  }
  return m;
}

Rat TotallyRealField::norm(const QVec& a) const { return det(mult_matrix(a)); }

Rat TotallyRealField::trace(const QVec& a) const {
  QMat m = mult_matrix(a);
  Rat t = 0;
  for (std::size_t i = 0; i < n; ++i) t += m.at(i, i);
  return t;
}

int TotallyRealField::embedding_sign(const QVec& a, std::size_t place) const {
  if (place >= n) throw std::invalid_argument("embedding index out of range");
  QPoly g = to_power(a);
  if (g.empty()) return 0;
  return roots[place_order[place]].sign_of(g);
}

bool TotallyRealField::totally_positive(const QVec& a) const {
  for (std::size_t j = 0; j < n; ++j)
    if (embedding_sign(a, j) <= 0) return false;
  return true;
}

QInterval TotallyRealField::embedding_enclosure(const QVec& a, std::size_t place,
                                                const Rat& width) const {
  if (place >= n) throw std::invalid_argument("embedding index out of range");
  QPoly g = to_power(a);
  RealRoot& rt = roots[place_order[place]];
  int guard = 0;
  while (true) {
    QInterval ev = qp_eval(g, QInterval(rt.lo, rt.hi));
    if (ev.width() <= width) return ev;
    rt.refine();
    if (++guard > 100000) throw std::logic_error("embedding_enclosure: cap exceeded");
  }
}

double TotallyRealField::embedding_double(const QVec& a, std::size_t place) const {
  QInterval e = embedding_enclosure(a, place, Rat(1, Int(1) << 60));
  return to_double(e.mid());
}

int TotallyRealField::basis_embedding_det_sign() const {
  if (basis_det_sign != 0) return basis_det_sign;
  Rat width = 1;
  int guard = 0;
  while (true) {
    std::vector<std::vector<QInterval>> m(n, std::vector<QInterval>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        QVec ej(n, Rat(0));
        ej[j] = 1;
        m[i][j] = embedding_enclosure(ej, i, width);
      }
    int s = det_interval(m).certain_sign();
    if (s != 0) {
      basis_det_sign = s;
      return s;
    }
    width /= 16;
    if (++guard > 1000) throw std::logic_error("basis_embedding_det_sign: cap exceeded");
  }
}

int TotallyRealField::orientation(const std::vector<QVec>& xs) const {
  if (xs.size() != n) throw std::invalid_argument("orientation needs exactly n vectors");
  QMat coords(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) coords.at(i, j) = xs[j][i];
  int cs = sgn(det(coords));
  if (cs == 0) return 0;
  return cs * basis_embedding_det_sign();
}

int TotallyRealField::compare_at_place(const QVec& a, const QVec& b, std::size_t place) const {
  return embedding_sign(sub(a, b), place);
}

}  // namespace shintani

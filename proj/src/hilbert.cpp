#include "shintani/hilbert.hpp"

#include <set>
#include <stdexcept>

namespace shintani {

namespace {

// multiply by the squared denominator lcm; integral output, same square class
QVec clear_denominators(const TotallyRealField& F, const QVec& x) {
  Int d = 1;
  for (const Rat& c : x) {
    Int dc = den(c);
    Int g = gcd(d, dc);
    d = d / g * dc;
  }
  if (d == 1) return x;
  return F.mul_rat(Rat(d * d), x);
}

// element with order exactly -1 at p and nonnegative order everywhere else;
// multiplying by its even powers moves the order at p without leaving the
// ring of integers or the square class
QVec anti_uniformizer(const TotallyRealField& F, const Prime& p) {
  Ideal t{p.power(F, static_cast<std::size_t>(p.ram - 1))};
  if (p.ram * static_cast<int>(p.deg) != static_cast<int>(F.n)) {
    for (const Prime& s : primes_above(F, p.p)) {
      if (s.ideal == p.ideal) continue;
      t = ideal_product(F, t, Ideal{s.power(F, static_cast<std::size_t>(s.ram))});
    }
  }
  // the minimum order over a lattice is attained on some basis row
  for (std::size_t i = 0; i < t.lat.rank(); ++i) {
    QVec cand = F.mul_rat(Rat(1) / Rat(p.p), t.lat.row(i));
    if (ord_element(F, p, cand) == -1) return cand;
  }
  throw std::logic_error("anti_uniformizer: no basis row attains the minimum");
}

// integral representative of the same square class with order 0 or 1 at p
QVec normalize_class(const TotallyRealField& F, const Prime& p, const QVec& x) {
  QVec y = clear_denominators(F, x);
  Int o = ord_element(F, p, y);
  if (o < 2) return y;
  QVec anti = anti_uniformizer(F, p);
  return F.mul(y, F.pow(anti, 2 * (o / 2)));
}

bool unit_square_mod(const TotallyRealField& F, const Prime& p, const QVec& w, std::size_t k) {
  LatticeQuotient q = LatticeQuotient::make(ring_of_integers(F).lat, p.power(F, k));
  std::size_t target = q.flat_residue(w);
  for (const QVec& z : q.all_reps())
    if (q.flat_residue(F.mul(z, z)) == target) return true;
  return false;
}

// norm-equation search: a is a norm from the extension by sqrt(b) iff
// z^2 - b y^2 hits 4a modulo p^(ord(4a) + 2e + 1) with z, y integral. The
// factor 4 clears the half-integral coordinates upstairs; a congruence at
// that depth is off by a unit square, so it certifies an exact solution.
// Both arguments must be integral with order 0 or 1.
int dyadic_symbol(const TotallyRealField& F, const Prime& p, const QVec& a, const QVec& b) {
  long e = p.ram;
  QVec target = F.mul_rat(Rat(4), a);
  Int oa = ord_element(F, p, a);
  std::size_t depth = static_cast<std::size_t>(4 * e + to_i64(oa) + 1);

  LatticeQuotient q = LatticeQuotient::make(ring_of_integers(F).lat, p.power(F, depth));
  std::set<std::size_t> squares;
  for (const QVec& z : q.all_reps()) squares.insert(q.flat_residue(F.mul(z, z)));
  for (const QVec& y : q.all_reps()) {
    QVec v = F.add(target, F.mul(b, F.mul(y, y)));
    if (squares.count(q.flat_residue(v))) return 1;
  }
  return -1;
}

}  // namespace

int legendre_at(const TotallyRealField& F, const Prime& p, const QVec& a) {
  if (p.p == 2) throw std::invalid_argument("legendre_at: odd residue characteristic required");
  if (F.is_zero(a)) throw std::invalid_argument("legendre_at: zero argument");
  QVec y = normalize_class(F, p, a);
  if (ord_element(F, p, y) != 0)
    throw std::invalid_argument("legendre_at: argument is not a unit");
  std::size_t r = p.residue(F, y);
  return p.res_pow(r, (p.q() - 1) / 2) == p.one_idx ? 1 : -1;
}

bool is_local_square(const TotallyRealField& F, const Prime& p, const QVec& w) {
  if (F.is_zero(w)) throw std::invalid_argument("is_local_square: zero argument");
  QVec y = normalize_class(F, p, w);
  if (ord_element(F, p, y) != 0) return false;
  if (p.p != 2) return legendre_at(F, p, y) == 1;
  return unit_square_mod(F, p, y, static_cast<std::size_t>(2 * p.ram + 1));
}

int hilbert_symbol(const TotallyRealField& F, const Prime& p, const QVec& a, const QVec& b) {
  if (F.is_zero(a) || F.is_zero(b)) throw std::invalid_argument("hilbert_symbol: zero argument");
  if (p.p != 2) {
    QVec ac = clear_denominators(F, a), bc = clear_denominators(F, b);
    Int alpha = ord_element(F, p, ac), beta = ord_element(F, p, bc);
    bool ao = alpha % 2 != 0, bo = beta % 2 != 0;
    int s = 1;
    if (ao && bo && ((p.q() - 1) / 2) % 2 != 0) s = -s;
    if (ao || bo) {
      QVec anti = anti_uniformizer(F, p);
      Int half = (p.q() - 1) / 2;
      if (bo) {
        std::size_t ra = p.residue(F, F.mul(ac, F.pow(anti, alpha)));
        if (p.res_pow(ra, half) != p.one_idx) s = -s;
      }
      if (ao) {
        std::size_t rb = p.residue(F, F.mul(bc, F.pow(anti, beta)));
        if (p.res_pow(rb, half) != p.one_idx) s = -s;
      }
    }
    return s;
  }
  QVec a1 = normalize_class(F, p, a);
  QVec b1 = normalize_class(F, p, b);
  if (is_local_square(F, p, b1)) return 1;
  if (is_local_square(F, p, a1)) return 1;
  return dyadic_symbol(F, p, a1, b1);
}

int hilbert_symbol_real(const TotallyRealField& F, std::size_t place, const QVec& a,
                        const QVec& b) {
  if (F.is_zero(a) || F.is_zero(b)) throw std::invalid_argument("hilbert_symbol: zero argument");
  return (F.embedding_sign(a, place) < 0 && F.embedding_sign(b, place) < 0) ? -1 : 1;
}

SplitType split_type(const TotallyRealField& F, const Prime& p, const QVec& d) {
  if (F.is_zero(d)) throw std::invalid_argument("split_type: zero discriminant element");
  QVec d0 = normalize_class(F, p, d);
  if (ord_element(F, p, d0) != 0) return SplitType::ramified;
  if (p.p != 2) return legendre_at(F, p, d0) == 1 ? SplitType::split : SplitType::inert;
  std::size_t e = static_cast<std::size_t>(p.ram);
  if (unit_square_mod(F, p, d0, 2 * e + 1)) return SplitType::split;
  return unit_square_mod(F, p, d0, 2 * e) ? SplitType::inert : SplitType::ramified;
}

}  // namespace shintani

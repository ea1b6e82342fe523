#include "shintani/ideal.hpp"

namespace shintani {

Ideal ring_of_integers(const TotallyRealField& F) {
  std::vector<QVec> rows;
  for (std::size_t i = 0; i < F.n; ++i) {
    QVec e(F.n, Rat(0));
    e[i] = 1;
    rows.push_back(e);
  }
  return Ideal{Lattice::from_rows(rows)};
}

Ideal principal_ideal(const TotallyRealField& F, const QVec& x) {
  if (F.is_zero(x)) throw std::invalid_argument("principal_ideal: zero element");
  std::vector<QVec> rows;
  for (std::size_t i = 0; i < F.n; ++i) {
    QVec e(F.n, Rat(0));
    e[i] = 1;
    rows.push_back(F.mul(x, e));
  }
  return Ideal{Lattice::from_rows(rows)};
}

Ideal ideal_product(const TotallyRealField& F, const Ideal& a, const Ideal& b) {
  std::vector<QVec> rows;
  for (std::size_t i = 0; i < a.lat.rank(); ++i)
    for (std::size_t j = 0; j < b.lat.rank(); ++j) rows.push_back(F.mul(a.lat.row(i), b.lat.row(j)));
  return Ideal{Lattice::from_rows(rows)};
}

Ideal ideal_scale(const TotallyRealField& F, const QVec& x, const Ideal& a) {
  if (F.is_zero(x)) throw std::invalid_argument("ideal_scale: zero element");
  std::vector<QVec> rows;
  for (std::size_t i = 0; i < a.lat.rank(); ++i) rows.push_back(F.mul(x, a.lat.row(i)));
  return Ideal{Lattice::from_rows(rows)};
}

Rat ideal_norm(const TotallyRealField& F, const Ideal& a) {
  Rat d = 1;
  for (std::size_t i = 0; i < F.n; ++i) d *= Rat(a.lat.basis.at(i, i)) / Rat(a.lat.denom);
  if (d < 0) d = -d;
  return d;
}

const Lattice& Prime::power(const TotallyRealField& F, std::size_t k) const {
  if (power_cache.empty()) {
    power_cache.push_back(ring_of_integers(F).lat);
    power_cache.push_back(ideal.lat);
  }
  while (power_cache.size() <= k) {
    Ideal nxt = ideal_product(F, Ideal{power_cache.back()}, ideal);
    power_cache.push_back(nxt.lat);
  }
  return power_cache[k];
}

std::size_t Prime::residue(const TotallyRealField& F, const QVec& x) const {
  Int m = 1;
  for (const auto& c : x) m = lcm_int(m, den(c));
  QVec y(F.n);
  for (std::size_t i = 0; i < F.n; ++i) y[i] = x[i] * Rat(m);
  while (m % p == 0) {
    // x is only p-integral if the numerator is divisible by p along with m
    for (auto& c : y) {
      if (num(c) % p != 0) throw std::invalid_argument("residue: element not integral at the prime");
      c = Rat(num(c) / p);
    }
    m /= p;
  }
  std::size_t ry = kappa.flat_residue(y);
  std::size_t rm = kappa.flat_residue(F.from_rational(Rat(mod_euclid(m, p))));
  return res_mul(ry, res_inv(rm));
}

std::size_t Prime::res_inv(std::size_t a) const {
  if (a >= inv_table.size() || inv_table[a] == inv_table.size())
    throw std::invalid_argument("res_inv: not a unit");
  return inv_table[a];
}

std::size_t Prime::res_pow(std::size_t a, Int e) const {
  std::size_t base = e < 0 ? res_inv(a) : a;
  Int k = abs_int(e);
  std::size_t acc = one_idx;
  while (k > 0) {
    if (k % 2 == 1) acc = res_mul(acc, base);
    base = res_mul(base, base);
    k /= 2;
  }
  return acc;
}

std::size_t Prime::mult_order(std::size_t a) const {
  res_inv(a);  // unit check
  std::size_t cur = a, ord = 1;
  while (cur != one_idx) {
    cur = res_mul(cur, a);
    ++ord;
    if (ord > reps.size()) throw std::logic_error("mult_order: runaway");
  }
  return ord;
}

namespace {

// monic polynomial arithmetic over F_p for factoring the defining polynomial
using PPoly = std::vector<Int>;  // ascending, entries in [0, p)

PPoly pp_mod(PPoly a, const PPoly& b, const Int& p) {
  while (a.size() >= b.size() && !a.empty()) {
    if (a.back() == 0) {
      a.pop_back();
      continue;
    }
    Int f = a.back();  // b is monic
    std::size_t off = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) a[off + j] = mod_euclid(a[off + j] - f * b[j], p);
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

PPoly pp_divexact(PPoly a, const PPoly& b, const Int& p) {
  PPoly q(a.size() - b.size() + 1, Int(0));
  for (std::size_t k = q.size(); k-- > 0;) {
    Int f = a[k + b.size() - 1];
    q[k] = f;
    if (f != 0)
      for (std::size_t j = 0; j < b.size(); ++j) a[k + j] = mod_euclid(a[k + j] - f * b[j], p);
  }
  for (const auto& c : a)
    if (c != 0) throw std::logic_error("pp_divexact: division not exact");
  return q;
}

// all monic irreducible factors with multiplicity, brute force over small p
std::vector<std::pair<PPoly, int>> pp_factor(PPoly f, const Int& p) {
  std::vector<std::pair<PPoly, int>> out;
  auto record = [&](const PPoly& g) {
    for (auto& [h, e] : out)
      if (h == g) {
        ++e;
        return;
      }
    out.push_back({g, 1});
  };
  // strip linear factors
  bool progress = true;
  while (progress && f.size() > 1) {
    progress = false;
    for (Int r = 0; r < p; ++r) {
      Int v = 0;
      for (std::size_t i = f.size(); i-- > 0;) v = mod_euclid(v * r + f[i], p);
      if (v == 0) {
        PPoly lin{mod_euclid(-r, p), Int(1)};
        f = pp_divexact(f, lin, p);
        record(lin);
        progress = true;
        break;
      }
    }
  }
  // remaining rootless part: peel monic irreducible quadratics, then give up
  // past degree 4 (not needed at desk scale)
  while (f.size() > 1) {
    bool found = false;
    for (Int a = 0; a < p && !found; ++a)
      for (Int b = 0; b < p && !found; ++b) {
        PPoly g{b, a, Int(1)};
        if (pp_mod(f, g, p).empty()) {
          // g divides; g is irreducible since f has no roots
          f = pp_divexact(f, g, p);
          record(g);
          found = true;
        }
      }
    if (!found) {
      if (f.size() > 5) throw std::invalid_argument("pp_factor: degree beyond supported range");
      record(f);  // rootless, no quadratic factor, degree 3 or 4: irreducible
      break;
    }
  }
  return out;
}

}  // namespace

std::vector<Prime> primes_above(const TotallyRealField& F, const Int& p) {
  if (p < 2) throw std::invalid_argument("primes_above: characteristic must be >= 2");
  for (Int d = 2; d * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("primes_above: not a rational prime");
  // factoring the defining polynomial mod p requires the power basis to stay
  // maximal at p; with a non-identity integral basis the basis change must be
  // p-invertible
  Rat bd = det(F.basis);
  if (num(bd) % p == 0 || den(bd) % p == 0)
    throw std::invalid_argument("primes_above: integral basis not p-compatible at this prime");

  PPoly fp(F.minpoly.size());
  for (std::size_t i = 0; i < F.minpoly.size(); ++i) fp[i] = mod_euclid(F.minpoly[i], p);
  auto factors = pp_factor(fp, p);

  Ideal O = ring_of_integers(F);
  std::vector<Prime> out;
  for (const auto& [g, e] : factors) {
    Prime P;
    P.p = p;
    P.deg = g.size() - 1;
    P.ram = e;
    // lattice generated by p*O and g(theta)*O
    QPoly gq(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) gq[i] = Rat(g[i]);
    QVec gtheta = F.from_power(gq);
    std::vector<QVec> rows;
    for (std::size_t i = 0; i < F.n; ++i) {
      QVec ei(F.n, Rat(0));
      ei[i] = 1;
      rows.push_back(F.mul_rat(Rat(p), ei));
      rows.push_back(F.mul(gtheta, ei));
    }
    P.ideal = Ideal{Lattice::from_rows(rows)};
    if (ideal_norm(F, P.ideal) != Rat(P.q()))
      throw std::logic_error("primes_above: norm does not match residue degree");

    // uniformizer: any lattice basis row outside the square
    Ideal sq = ideal_product(F, P.ideal, P.ideal);
    bool have = false;
    for (std::size_t i = 0; i < F.n && !have; ++i) {
      QVec cand = P.ideal.lat.row(i);
      if (!sq.lat.contains(cand)) {
        P.unif = cand;
        have = true;
      }
    }
    if (!have) throw std::logic_error("primes_above: no uniformizer among basis rows");

    P.kappa = LatticeQuotient::make(O.lat, P.ideal.lat);
    P.reps = P.kappa.all_reps();
    std::size_t sz = P.reps.size();
    P.mul_table.assign(sz, std::vector<std::size_t>(sz));
    for (std::size_t i = 0; i < sz; ++i)
      for (std::size_t j = i; j < sz; ++j) {
        std::size_t v = P.kappa.flat_residue(F.mul(P.reps[i], P.reps[j]));
        P.mul_table[i][j] = v;
        P.mul_table[j][i] = v;
      }
    P.one_idx = P.kappa.flat_residue(F.one());
    P.inv_table.assign(sz, sz);
    for (std::size_t i = 0; i < sz; ++i)
      for (std::size_t j = 0; j < sz; ++j)
        if (P.mul_table[i][j] == P.one_idx) P.inv_table[i] = j;
    P.in_prime_subfield.assign(sz, false);
    {
      std::size_t cur = P.kappa.flat_residue(F.zero());
      for (Int k = 0; k < p; ++k) {
        P.in_prime_subfield[cur] = true;
        cur = P.kappa.flat_residue(F.add(P.reps[cur], F.one()));
      }
    }
    out.push_back(std::move(P));
  }
  // deterministic order
  std::sort(out.begin(), out.end(), [](const Prime& a, const Prime& b) {
    return a.ideal.lat.basis.a < b.ideal.lat.basis.a;
  });
  return out;
}

Int ord_element(const TotallyRealField& F, const Prime& P, const QVec& x) {
  if (F.is_zero(x)) throw std::invalid_argument("ord_element: zero element");
  Int m = 1;
  for (const auto& c : x) m = lcm_int(m, den(c));
  QVec y(F.n);
  for (std::size_t i = 0; i < F.n; ++i) y[i] = x[i] * Rat(m);
  Int denom_ord = 0;
  Int mm = m;
  while (mm % P.p == 0) {
    denom_ord += P.ram;
    mm /= P.p;
  }
  Int k = 0;
  while (P.power(F, static_cast<std::size_t>(to_i64(k + 1))).contains(y)) ++k;
  return k - denom_ord;
}

Int ord_ideal(const TotallyRealField& F, const Prime& P, const Ideal& a) {
  Int best = 0;
  bool first = true;
  for (std::size_t i = 0; i < a.lat.rank(); ++i) {
    Int o = ord_element(F, P, a.lat.row(i));
    if (first || o < best) {
      best = o;
      first = false;
    }
  }
  return best;
}

std::size_t ResidueRing::index_of(const TotallyRealField& F, const QVec& x) const {
  (void)F;
  return quot.flat_residue(x);
}

ResidueRing residue_ring(const TotallyRealField& F, const Ideal& m, const std::vector<Prime>& factors) {
  ResidueRing R;
  R.modulus = m;
  Ideal O = ring_of_integers(F);
  R.quot = LatticeQuotient::make(O.lat, m.lat);
  R.reps = R.quot.all_reps();
  std::size_t sz = R.reps.size();
  R.is_unit.assign(sz, true);
  for (std::size_t i = 0; i < sz; ++i)
    for (const auto& P : factors)
      if (P.kappa.flat_residue(R.reps[i]) == P.kappa.flat_residue(F.zero())) {
        R.is_unit[i] = false;
        break;
      }
  return R;
}

}  // namespace shintani

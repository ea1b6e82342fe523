#include "shintani/adelic.hpp"

#include <set>

namespace shintani {

Lattice lattice_product(const TotallyRealField& F, const Lattice& a, const Lattice& b) {
  std::vector<QVec> rows;
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < b.rank(); ++j) rows.push_back(F.mul(a.row(i), b.row(j)));
  return Lattice::from_rows(rows);
}

FiniteTestFunction make_indicator(const TotallyRealField& F, const Ideal& a) {
  Ideal o = ring_of_integers(F);
  if (!o.lat.contains_lattice(a.lat)) throw std::invalid_argument("indicator wants an integral ideal");
  FiniteTestFunction f;
  f.support = a.lat;
  f.period = o;
  f.quot = LatticeQuotient::make(a.lat, a.lat);
  f.table = {Int(1)};
  return f;
}

FiniteTestFunction make_h_x(const TotallyRealField& F, const Prime& q, std::size_t x_idx) {
  if (x_idx >= q.reps.size()) throw std::invalid_argument("residue index out of range");
  if (!q.in_prime_subfield[x_idx])
    throw std::invalid_argument("residue lies outside the prime subfield");
  Ideal o = ring_of_integers(F);
  FiniteTestFunction f;
  f.support = o.lat;
  f.period = q.ideal;
  f.quot = LatticeQuotient::make(o.lat, q.ideal.lat);
  std::size_t zero_idx = q.residue(F, F.zero());
  auto reps = f.quot.all_reps();
  f.table.resize(reps.size(), Int(0));
  for (std::size_t i = 0; i < reps.size(); ++i) {
    std::size_t r = q.residue(F, reps[i]);
    Int v = 0;
    if (r == x_idx) v += 1;
    if (r == zero_idx) v -= 1;
    f.table[i] = v;
  }
  return f;
}

int unit_congruence_exponent(const TotallyRealField& F, const Prime& p) {
  // -1 in 1+p^m iff ord_p(2) >= m
  QVec two = F.from_rational(Rat(2));
  Int o = ord_element(F, p, two);
  return static_cast<int>(to_i64(o)) + 1;
}

FiniteTestFunction make_f_rmw(const TotallyRealField& F, const Prime& q,
                              const std::vector<Prime>& s_f, const std::vector<std::size_t>& r_idx,
                              const std::vector<std::size_t>& m_residues,
                              const std::vector<std::size_t>& w_idx) {
  for (std::size_t r : r_idx)
    for (std::size_t w : w_idx)
      if (r == w) throw std::invalid_argument("R and W overlap");
  for (std::size_t i : r_idx)
    if (i >= s_f.size()) throw std::invalid_argument("R index out of range");
  for (std::size_t i : w_idx)
    if (i >= s_f.size()) throw std::invalid_argument("W index out of range");

  std::size_t zero_idx = q.residue(F, F.zero());
  std::set<std::size_t> msub(m_residues.begin(), m_residues.end());
  if (msub.empty()) throw std::invalid_argument("M must contain the identity");
  if (!msub.count(q.one_idx)) throw std::invalid_argument("M must contain the identity");
  for (std::size_t a : msub) {
    if (a >= q.reps.size() || a == zero_idx || !q.in_prime_subfield[a])
      throw std::invalid_argument("M is not a subgroup of the prime-subfield units");
    for (std::size_t b : msub)
      if (!msub.count(q.res_mul(a, b)))
        throw std::invalid_argument("M is not a subgroup of the prime-subfield units");
  }

  Ideal o = ring_of_integers(F);
  std::set<std::size_t> rset(r_idx.begin(), r_idx.end()), wset(w_idx.begin(), w_idx.end());

  Ideal supp = o;
  for (std::size_t i : wset) supp = ideal_product(F, supp, s_f[i].ideal);

  std::vector<int> rexp(s_f.size(), 0);
  Ideal per = q.ideal;
  for (std::size_t i = 0; i < s_f.size(); ++i) {
    if (wset.count(i)) continue;
    if (rset.count(i)) {
      rexp[i] = unit_congruence_exponent(F, s_f[i]);
      per = ideal_product(F, per, Ideal{s_f[i].power(F, static_cast<std::size_t>(rexp[i]))});
    } else {
      per = ideal_product(F, per, s_f[i].ideal);
    }
  }

  FiniteTestFunction f;
  f.support = supp.lat;
  f.period = per;
  f.quot = LatticeQuotient::make(supp.lat, lattice_product(F, supp.lat, per.lat));
  auto reps = f.quot.all_reps();
  f.table.resize(reps.size(), Int(0));
  Int msize = Int(static_cast<long>(msub.size()));
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const QVec& z = reps[i];
    std::size_t r = q.residue(F, z);
    Int v = 0;
    if (msub.count(r))
      v = 1;
    else if (r == zero_idx)
      v = -msize;
    if (v == 0) continue;
    for (std::size_t j = 0; j < s_f.size() && v != 0; ++j) {
      const Prime& p = s_f[j];
      if (wset.count(j)) {
        if (!F.is_zero(z) && ord_element(F, p, z) < 1) v = 0;
      } else if (rset.count(j)) {
        QVec d = F.sub(z, F.one());
        if (!F.is_zero(d) && ord_element(F, p, d) < rexp[j]) v = 0;
      } else {
        if (F.is_zero(z) || ord_element(F, p, z) != 0) v = 0;
      }
    }
    f.table[i] = v;
  }
  return f;
}

FiniteTestFunction act(const TotallyRealField& F, const QVec& y, const FiniteTestFunction& phi) {
  if (F.is_zero(y)) throw std::invalid_argument("act: zero multiplier");
  std::vector<QVec> srows, mrows;
  for (std::size_t i = 0; i < phi.support.rank(); ++i)
    srows.push_back(F.mul(y, phi.support.row(i)));
  for (std::size_t i = 0; i < phi.quot.small.rank(); ++i)
    mrows.push_back(F.mul(y, phi.quot.small.row(i)));
  FiniteTestFunction g;
  g.support = Lattice::from_rows(srows);
  g.period = phi.period;
  g.quot = LatticeQuotient::make(g.support, Lattice::from_rows(mrows));
  QVec yi = F.inv(y);
  auto reps = g.quot.all_reps();
  g.table.resize(reps.size(), Int(0));
  for (std::size_t i = 0; i < reps.size(); ++i) g.table[i] = phi.eval(F.mul(yi, reps[i]));
  return g;
}

void require_admissible(const TotallyRealField& F, const Prime& q, const QVec& u) {
  if (F.is_zero(u)) throw std::invalid_argument("direction is zero");
  if (ord_element(F, q, u) != 0)
    throw std::invalid_argument("direction is not a unit at the distinguished prime");
  std::size_t r = q.residue(F, u);
  if (!q.in_prime_subfield[r])
    throw std::invalid_argument("direction residue lies outside the prime subfield");
}

namespace {

// generator of the rational cyclic group {s : s*u in L}
Rat line_step(const TotallyRealField& F, const Lattice& lat, const QVec& u) {
  QMat b(F.n, F.n);
  for (std::size_t j = 0; j < F.n; ++j) {
    QVec r = lat.row(j);
    for (std::size_t i = 0; i < F.n; ++i) b.at(i, j) = r[i];
  }
  QVec c = solve(b, u);
  Rat step(0);
  for (const Rat& ci : c) {
    if (ci == 0) continue;
    Rat g(den(ci), abs_int(num(ci)));  // generator of {s : s*ci integral}
    if (step == 0)
      step = g;
    else
      step = Rat(lcm_int(num(step), num(g)), gcd_int(den(step), den(g)));
  }
  if (step == 0) throw std::logic_error("line_step: zero direction");
  return step;
}

}  // namespace

SmoothnessReport check_u_smooth(const TotallyRealField& F, const Prime& q,
                                const FiniteTestFunction& phi, const QVec& u) {
  require_admissible(F, q, u);
  Rat alpha = line_step(F, phi.support, u);
  Rat beta = line_step(F, phi.quot.small, u);
  Rat ratio = beta / alpha;
  if (den(ratio) != 1 || num(ratio) <= 0) throw std::logic_error("period line inside support line");
  long k = to_i64(num(ratio));
  SmoothnessReport rep;
  rep.u = u;
  rep.pass = true;
  auto reps = phi.quot.all_reps();
  for (std::size_t i = 0; i < reps.size(); ++i) {
    Int sum = 0;
    for (long j = 0; j < k; ++j) {
      QVec z = F.add(reps[i], F.mul_rat(Rat(j) * alpha, u));
      sum += phi.eval(z);
    }
    if (sum != 0) {
      rep.pass = false;
      rep.defects.push_back({i, sum});
    }
  }
  return rep;
}

}  // namespace shintani

#include "shintani/groupring.hpp"

#include <stdexcept>

namespace shintani {

ZVec FiniteAbelianGroup::reduce(const ZVec& a) const {
  if (a.size() != orders.size()) throw std::invalid_argument("group element: shape mismatch");
  ZVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod_euclid(a[i], orders[i]);
  return r;
}

ZVec FiniteAbelianGroup::mul(const ZVec& a, const ZVec& b) const {
  ZVec r = reduce(a);
  ZVec s = reduce(b);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod_euclid(r[i] + s[i], orders[i]);
  return r;
}

ZVec FiniteAbelianGroup::inv(const ZVec& a) const {
  ZVec r = reduce(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod_euclid(-r[i], orders[i]);
  return r;
}

ZVec FiniteAbelianGroup::pow(const ZVec& a, const Int& e) const {
  ZVec r = reduce(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod_euclid(r[i] * e, orders[i]);
  return r;
}

std::size_t FiniteAbelianGroup::index_of(const ZVec& a) const {
  ZVec r = reduce(a);
  Int idx = 0;
  for (std::size_t i = 0; i < r.size(); ++i) idx = idx * orders[i] + r[i];
  return static_cast<std::size_t>(to_i64(idx));
}

ZVec FiniteAbelianGroup::element(std::size_t idx) const {
  ZVec r(orders.size(), Int(0));
  Int rem = Int(static_cast<long>(idx));
  for (std::size_t i = orders.size(); i-- > 0;) {
    r[i] = rem % orders[i];
    rem /= orders[i];
  }
  if (rem != 0) throw std::invalid_argument("group element index out of range");
  return r;
}

std::vector<ZVec> FiniteAbelianGroup::elements() const {
  std::vector<ZVec> out;
  for (std::size_t i = 0; i < size(); ++i) out.push_back(element(i));
  return out;
}

FiniteAbelianGroup FiniteAbelianGroup::cyclic(const Int& n) {
  if (n <= 0) throw std::invalid_argument("cyclic group: order must be positive");
  return FiniteAbelianGroup{{n}};
}

FiniteAbelianGroup FiniteAbelianGroup::signs(std::size_t r) {
  return FiniteAbelianGroup{ZVec(r, Int(2))};
}

FiniteAbelianGroup FiniteAbelianGroup::product(const FiniteAbelianGroup& a,
                                               const FiniteAbelianGroup& b) {
  ZVec o = a.orders;
  o.insert(o.end(), b.orders.begin(), b.orders.end());
  return FiniteAbelianGroup{o};
}

std::string element_label(const FiniteAbelianGroup& G, const ZVec& a, bool as_signs) {
  ZVec r = G.reduce(a);
  if (as_signs) {
    for (const Int& o : G.orders)
      if (o != 2) throw std::invalid_argument("sign labels need a two-torsion group");
    std::string s = "(";
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) s += ",";
      s += (r[i] == 0) ? "+1" : "-1";
    }
    return s + ")";
  }
  std::string s;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "s" + std::to_string(i);
    if (r[i] != 1) s += "^" + r[i].str();
  }
  return s.empty() ? "1" : s;
}

Rat GroupRingElement::augmentation() const {
  Rat s(0);
  for (const Rat& c : coeff) s += c;
  return s;
}

bool GroupRingElement::is_integral() const {
  for (const Rat& c : coeff)
    if (den(c) != 1) return false;
  return true;
}

bool GroupRingElement::is_zero() const {
  for (const Rat& c : coeff)
    if (c != 0) return false;
  return true;
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& o) {
  if (!(group == o.group)) throw std::invalid_argument("group ring: mixed groups");
  for (std::size_t i = 0; i < coeff.size(); ++i) coeff[i] += o.coeff[i];
  return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& o) {
  if (!(group == o.group)) throw std::invalid_argument("group ring: mixed groups");
  for (std::size_t i = 0; i < coeff.size(); ++i) coeff[i] -= o.coeff[i];
  return *this;
}

void GroupRingElement::scale(const Rat& c) {
  for (Rat& x : coeff) x *= c;
}

GroupRingElement ring_zero(const FiniteAbelianGroup& G) { return GroupRingElement(G); }

GroupRingElement ring_one(const FiniteAbelianGroup& G) {
  GroupRingElement e(G);
  e.coeff[G.index_of(G.identity())] = 1;
  return e;
}

GroupRingElement basis_element(const FiniteAbelianGroup& G, const ZVec& g) {
  GroupRingElement e(G);
  e.coeff[G.index_of(g)] = 1;
  return e;
}

GroupRingElement ring_mul(const GroupRingElement& a, const GroupRingElement& b) {
  if (!(a.group == b.group)) throw std::invalid_argument("group ring: mixed groups");
  GroupRingElement r(a.group);
  auto els = a.group.elements();
  for (std::size_t i = 0; i < els.size(); ++i) {
    if (a.coeff[i] == 0) continue;
    for (std::size_t j = 0; j < els.size(); ++j) {
      if (b.coeff[j] == 0) continue;
      r.coeff[a.group.index_of(a.group.mul(els[i], els[j]))] += a.coeff[i] * b.coeff[j];
    }
  }
  return r;
}

GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
GroupRingElement operator-(GroupRingElement a) {
  a.scale(Rat(-1));
  return a;
}

Lattice ideal_lattice(const FiniteAbelianGroup& G, const std::vector<std::vector<ZVec>>& factors) {
  std::size_t n = G.size();
  std::vector<QVec> rows;
  if (factors.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      QVec r(n, Rat(0));
      r[i] = 1;
      rows.push_back(std::move(r));
    }
    return Lattice::from_rows(rows);
  }
  for (const auto& f : factors)
    if (f.empty()) throw std::invalid_argument("ideal_lattice: empty factor");
  GroupRingElement one = ring_one(G);
  std::vector<std::size_t> choice(factors.size(), 0);
  while (true) {
    GroupRingElement p = ring_one(G);
    for (std::size_t j = 0; j < factors.size(); ++j)
      p = ring_mul(p, basis_element(G, factors[j][choice[j]]) - one);
    for (const ZVec& g : G.elements()) {
      GroupRingElement t = ring_mul(basis_element(G, g), p);
      rows.push_back(t.coeff);
    }
    std::size_t i = 0;
    for (; i < factors.size(); ++i) {
      if (++choice[i] < factors[i].size()) break;
      choice[i] = 0;
    }
    if (i == factors.size()) break;
  }
  return Lattice::from_rows(rows);
}

Lattice aug_power(const FiniteAbelianGroup& G, std::size_t k) {
  std::vector<ZVec> gens;
  for (std::size_t i = 0; i < G.rank(); ++i) {
    ZVec e = G.identity();
    e[i] = 1;
    gens.push_back(e);
  }
  return ideal_lattice(G, std::vector<std::vector<ZVec>>(k, gens));
}

Int sublattice_index(const Lattice& big, const Lattice& sub) {
  if (big.rank() != sub.rank()) throw std::invalid_argument("sublattice_index: rank mismatch");
  std::size_t r = big.rank();
  ZMat m(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    auto c = big.coords(sub.row(i));
    if (!c) throw std::invalid_argument("sublattice_index: not a sublattice");
    for (std::size_t j = 0; j < r; ++j) m.at(i, j) = (*c)[j];
  }
  return abs_int(det(m));
}

AugClass reduce_mod(const GroupRingElement& x, const Lattice& L) {
  if (!x.is_integral())
    throw std::invalid_argument("reduce_mod: coefficients must be integral");
  if (L.denom != 1) throw std::invalid_argument("reduce_mod: fractional modulus");
  if (L.dim() != x.coeff.size()) throw std::invalid_argument("reduce_mod: shape mismatch");
  ZVec v(x.coeff.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = num(x.coeff[i]);
  for (std::size_t i = 0; i < L.basis.rows; ++i) {
    std::size_t piv = 0;
    while (piv < L.dim() && L.basis.at(i, piv) == 0) ++piv;
    if (piv == L.dim()) continue;
    Int q = floor_div(v[piv], L.basis.at(i, piv));
    if (q == 0) continue;
    for (std::size_t j = piv; j < L.dim(); ++j) v[j] -= q * L.basis.at(i, j);
  }
  return AugClass{L, v};
}

namespace {

GroupRingElement det_expand(const std::vector<std::vector<GroupRingElement>>& m,
                            std::vector<std::size_t> cols, std::size_t row) {
  const FiniteAbelianGroup& G = m[0][0].group;
  if (cols.empty()) return ring_one(G);
  GroupRingElement acc = ring_zero(G);
  for (std::size_t k = 0; k < cols.size(); ++k) {
    std::vector<std::size_t> rest;
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (j != k) rest.push_back(cols[j]);
    GroupRingElement sub = det_expand(m, rest, row + 1);
    GroupRingElement t = ring_mul(m[row][cols[k]], sub);
    if (k % 2) t.scale(Rat(-1));
    acc += t;
  }
  return acc;
}

}  // namespace

GroupRingElement ring_det(const std::vector<std::vector<GroupRingElement>>& m) {
  if (m.empty()) throw std::invalid_argument("ring_det: empty matrix");
  std::vector<std::size_t> cols(m.size());
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (m[j].size() != m.size()) throw std::invalid_argument("ring_det: square matrix required");
    cols[j] = j;
  }
  return det_expand(m, cols, 0);
}

DetredResult detred_congruence_check(const FiniteAbelianGroup& N,
                                     const std::vector<std::vector<ZVec>>& f) {
  std::size_t r = f.size();
  if (r == 0) throw std::invalid_argument("detred: empty system");
  if (N.rank() != r)
    throw std::invalid_argument("detred: one cyclic factor per place required");
  for (const auto& row : f) {
    if (row.size() != r) throw std::invalid_argument("detred: square system required");
    for (std::size_t j = 0; j < r; ++j) {
      ZVec e = N.reduce(row[j]);
      for (std::size_t i = 0; i < r; ++i)
        if (i != j && e[i] != 0)
          throw std::invalid_argument("detred: image outside its place component");
    }
  }
  GroupRingElement one = ring_one(N);
  std::vector<std::vector<GroupRingElement>> lhs(r), rhs(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      ZVec prod = N.identity();
      for (std::size_t s = j; s < r; ++s) prod = N.mul(prod, f[i][s]);
      lhs[i].push_back(basis_element(N, prod) - one);
      rhs[i].push_back(basis_element(N, f[i][j]) - one);
    }
  }
  DetredResult out;
  out.lhs = ring_det(lhs);
  out.rhs = ring_det(rhs);
  std::vector<ZVec> all;
  std::vector<std::vector<ZVec>> factors;
  for (std::size_t j = 0; j < r; ++j) {
    ZVec e = N.identity();
    e[j] = 1;
    all.push_back(e);
  }
  factors.push_back(all);
  for (std::size_t j = 0; j < r; ++j) factors.push_back({all[j]});
  Lattice mod = ideal_lattice(N, factors);
  GroupRingElement diff = out.lhs - out.rhs;
  out.pass = mod.contains(diff.coeff);
  return out;
}

}  // namespace shintani

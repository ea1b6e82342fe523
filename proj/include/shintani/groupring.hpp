#pragma once

#include <string>

#include "shintani/linalg.hpp"

namespace shintani {

// Finite abelian group as a product of cyclic factors with a fixed
// mixed-radix enumeration; elements are exponent vectors.
struct FiniteAbelianGroup {
  std::vector<Int> orders;

  std::size_t size() const {
    Int s = 1;
    for (const Int& o : orders) s *= o;
    return static_cast<std::size_t>(to_i64(s));
  }
  std::size_t rank() const { return orders.size(); }

  ZVec identity() const { return ZVec(orders.size(), Int(0)); }
  ZVec mul(const ZVec& a, const ZVec& b) const;
  ZVec inv(const ZVec& a) const;
  ZVec pow(const ZVec& a, const Int& e) const;
  ZVec reduce(const ZVec& a) const;

  std::size_t index_of(const ZVec& a) const;
  ZVec element(std::size_t idx) const;
  std::vector<ZVec> elements() const;

  static FiniteAbelianGroup cyclic(const Int& n);
  static FiniteAbelianGroup signs(std::size_t r);  // {+1,-1}^r
  static FiniteAbelianGroup product(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b);

  bool operator==(const FiniteAbelianGroup& o) const { return orders == o.orders; }
};

// "(+1,-1)" for sign groups, "1"/"s0^2*s1" otherwise
std::string element_label(const FiniteAbelianGroup& G, const ZVec& a, bool as_signs);

// Dense group-ring element; rational coefficients are allowed transiently
// and flagged by is_integral.
struct GroupRingElement {
  FiniteAbelianGroup group;
  std::vector<Rat> coeff;

  GroupRingElement() = default;
  explicit GroupRingElement(const FiniteAbelianGroup& G) : group(G), coeff(G.size(), Rat(0)) {}

  Rat& at(const ZVec& g) { return coeff[group.index_of(g)]; }
  const Rat& at(const ZVec& g) const { return coeff[group.index_of(g)]; }

  Rat augmentation() const;
  bool is_integral() const;
  bool is_zero() const;

  GroupRingElement& operator+=(const GroupRingElement& o);
  GroupRingElement& operator-=(const GroupRingElement& o);
  void scale(const Rat& c);

  bool operator==(const GroupRingElement& o) const {
    return group == o.group && coeff == o.coeff;
  }
};

GroupRingElement ring_zero(const FiniteAbelianGroup& G);
GroupRingElement ring_one(const FiniteAbelianGroup& G);
GroupRingElement basis_element(const FiniteAbelianGroup& G, const ZVec& g);
GroupRingElement ring_mul(const GroupRingElement& a, const GroupRingElement& b);
GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b);
GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b);
GroupRingElement operator-(GroupRingElement a);

// determinant of a square matrix over the group ring, cofactor expansion
GroupRingElement ring_det(const std::vector<std::vector<GroupRingElement>>& m);

// lattice spanned by all translates of products over the factor lists:
// rows [g]*prod_j([h_j]-[1]) for g in G and h_j running over factors[j];
// empty factor list gives the full coefficient lattice
Lattice ideal_lattice(const FiniteAbelianGroup& G, const std::vector<std::vector<ZVec>>& factors);

// k-th power of the augmentation ideal
Lattice aug_power(const FiniteAbelianGroup& G, std::size_t k);

// index of an equal-rank sublattice, ranks possibly below the dimension
Int sublattice_index(const Lattice& big, const Lattice& sub);

// canonical residue of an integral element modulo an ideal-power lattice
struct AugClass {
  Lattice modulus;
  ZVec normal;

  bool is_zero() const {
    for (const Int& c : normal)
      if (c != 0) return false;
    return true;
  }
  bool operator==(const AugClass& o) const { return modulus == o.modulus && normal == o.normal; }
};

AugClass reduce_mod(const GroupRingElement& x, const Lattice& L);

// constant-term determinant congruence: columns index places, rows index
// field elements; f[i][j] must lie in the j-th cyclic factor of N; checks
// det(-1 + prod_{s>=j} [f[i][s]]) against det(-1 + [f[i][j]]) modulo
// (sum_j I_j) * prod_j I_j
struct DetredResult {
  bool pass = false;
  GroupRingElement lhs, rhs;
};

DetredResult detred_congruence_check(const FiniteAbelianGroup& N,
                                     const std::vector<std::vector<ZVec>>& f);

}  // namespace shintani

#pragma once

#include "shintani/field.hpp"
#include "shintani/ideal.hpp"

namespace shintani {

// locally constant function on the finite adeles with fractional-ideal
// support: zero outside the support lattice, constant on period cosets
struct FiniteTestFunction {
  Lattice support;
  Ideal period;          // integral; cosets of support*period carry the values
  LatticeQuotient quot;  // support / support*period
  std::vector<Int> table;

  Int eval(const QVec& x) const {
    if (!support.contains(x)) return Int(0);
    return table[quot.flat_residue(x)];
  }

  bool operator==(const FiniteTestFunction& o) const {
    return support == o.support && quot.small == o.quot.small && table == o.table;
  }
};

// Z-span of all pairwise products of basis vectors
Lattice lattice_product(const TotallyRealField& F, const Lattice& a, const Lattice& b);

// indicator of an integral ideal
FiniteTestFunction make_indicator(const TotallyRealField& F, const Ideal& a);

// two-coset difference at the distinguished prime: +1 on the residue class,
// -1 on the zero class, integral elsewhere
FiniteTestFunction make_h_x(const TotallyRealField& F, const Prime& q, std::size_t x_idx);

// least m with -1 outside 1 + p^m
int unit_congruence_exponent(const TotallyRealField& F, const Prime& p);

// product test function: sum of h_x over the subgroup m_residues at q,
// congruence-unit indicators on R, unit indicators on the rest of s_f,
// prime indicators on W
FiniteTestFunction make_f_rmw(const TotallyRealField& F, const Prime& q,
                              const std::vector<Prime>& s_f, const std::vector<std::size_t>& r_idx,
                              const std::vector<std::size_t>& m_residues,
                              const std::vector<std::size_t>& w_idx);

// (y phi)(x) = phi(y^-1 x) for a nonzero field element y
FiniteTestFunction act(const TotallyRealField& F, const QVec& y, const FiniteTestFunction& phi);

struct SmoothnessReport {
  QVec u;
  bool pass = false;
  std::vector<std::pair<std::size_t, Int>> defects;  // line rep index, nonzero sum
};

// direction admissibility: unit at q with residue in the prime subfield
void require_admissible(const TotallyRealField& F, const Prime& q, const QVec& u);

// every period-coset line in direction u must sum to zero
SmoothnessReport check_u_smooth(const TotallyRealField& F, const Prime& q,
                                const FiniteTestFunction& phi, const QVec& u);

}  // namespace shintani

#pragma once

#include "shintani/linalg.hpp"
#include "shintani/poly.hpp"

namespace shintani {

// Totally real field Q[x]/(minpoly), elements as rational coordinate vectors
// over a fixed integral basis (rows of `basis` express the basis over the
// power basis 1, x, ..., x^{n-1}; identity when omitted).
//
// The basis is required to be multiplicatively closed with 1 in its Z-span,
// i.e. an order; we take it as the maximal order by input contract.
struct TotallyRealField {
  std::size_t n = 0;
  std::vector<Int> minpoly;  // monic, ascending, size n+1
  QMat basis, basis_inv;
  std::vector<std::size_t> place_order;  // place i looks through roots[place_order[i]]
  mutable std::vector<RealRoot> roots;   // ascending real roots; refinement is cached
  mutable int basis_det_sign = 0;        // sign of det(rho_i(omega_j)), rows in place order

  static TotallyRealField make(std::vector<Int> minpoly,
                               std::optional<QMat> basis = std::nullopt,
                               std::optional<std::vector<std::size_t>> place_order = std::nullopt);

  // power-basis polynomial of an element given over the integral basis
  QPoly to_power(const QVec& a) const;
  QVec from_power(const QPoly& p) const;

  QVec zero() const { return QVec(n, Rat(0)); }
  QVec one() const;
  QVec from_rational(const Rat& c) const;

  QVec add(const QVec& a, const QVec& b) const;
  QVec sub(const QVec& a, const QVec& b) const;
  QVec neg(const QVec& a) const;
  QVec mul(const QVec& a, const QVec& b) const;
  QVec inv(const QVec& a) const;
  QVec mul_rat(const Rat& c, const QVec& a) const;
  bool is_zero(const QVec& a) const;
  bool is_rational(const QVec& a) const;  // lies in Q
  QVec pow(const QVec& a, const Int& e) const;

  // column j = coordinates of a*omega_j; norm and trace come from it
  QMat mult_matrix(const QVec& a) const;
  Rat norm(const QVec& a) const;
  Rat trace(const QVec& a) const;

  int embedding_sign(const QVec& a, std::size_t place) const;
  bool totally_positive(const QVec& a) const;
  QInterval embedding_enclosure(const QVec& a, std::size_t place, const Rat& width) const;
  double embedding_double(const QVec& a, std::size_t place) const;

  // sgn det(rho_i(x_j)) for n vectors, rows in place order; 0 iff dependent
  int orientation(const std::vector<QVec>& xs) const;
  int basis_embedding_det_sign() const;

  // certified comparison rho_place(a) vs rho_place(b)
  int compare_at_place(const QVec& a, const QVec& b, std::size_t place) const;
};

inline bool TotallyRealField::is_zero(const QVec& a) const {
  for (const auto& c : a)
    if (c != 0) return false;
  return true;
}

}  // namespace shintani

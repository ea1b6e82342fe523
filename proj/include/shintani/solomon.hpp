#pragma once

#include "shintani/adelic.hpp"
#include "shintani/cones.hpp"

namespace shintani {

// finite difference operator along each cone axis: count shifts of the given
// step; step*count spans one full period of the test function on the axis
struct DeltaPlan {
  std::vector<Rat> step;
  std::vector<Int> count;
};

// sublattice of supp meeting the rational span of the generators
Lattice span_intersection(const TotallyRealField& F, const Lattice& supp,
                          const std::vector<QVec>& gens);

// steps native to the support lattice, counts from the period lattice
DeltaPlan native_plan(const TotallyRealField& F, const std::vector<QVec>& gens,
                      const FiniteTestFunction& phi);

// uniform steps 1/k with k*k shifts, minimal k below the cap
DeltaPlan uniform_plan(const TotallyRealField& F, const std::vector<QVec>& gens,
                       const FiniteTestFunction& phi, long cap = 512);

// ray/cone term against the test function: weighted sum over one period box,
// divided by the shift count product; offset (if given) must translate the
// cone by a support lattice vector
Rat varpi_term(const TotallyRealField& F, const std::vector<QVec>& gens,
               const FiniteTestFunction& phi, const DeltaPlan& plan,
               const QVec* offset = nullptr);

// total mass of a finitely supported map
Rat varpi_finite(const std::vector<std::pair<QVec, Int>>& masses);

// additive shift by a support lattice vector: result(x) = phi(x - y)
FiniteTestFunction translate(const TotallyRealField& F, const QVec& y,
                             const FiniteTestFunction& phi);

struct PairingResult {
  Rat value;
  std::vector<DeltaPlan> plans;  // per chain term, canonical order
};

// zeta value at the origin, computed combinatorially; checks smoothness of
// phi along every generator first, and recomputes with uniform steps when
// crosscheck is set
PairingResult pairing(const TotallyRealField& F, const Prime& q, const ConeChain& f,
                      const FiniteTestFunction& phi, bool crosscheck = true);

struct AbelResult {
  double value = 0;
  double err = 0;
  bool converged = false;
};

// numeric cross-oracle: exponentially regularized cone sum extrapolated to
// t = 0 over a halving ladder; place_weights regroups the per-place decay
// rates (empty means uniform) without moving the limit
AbelResult abel_oracle(const TotallyRealField& F, const ConeChain& f,
                       const FiniteTestFunction& phi, double t0 = 0.5, int levels = 6,
                       const std::vector<double>& place_weights = {});

struct IntegralityReport {
  bool weak_ok = false;
  bool strong_applicable = false;
  bool strong_ok = true;
};

// weak: denominator divides q^n; strong: integer, expected once q >= n+2 and
// the residue subgroup is full
IntegralityReport integrality_report(const Rat& value, const Int& q, std::size_t n, bool m_full);

}  // namespace shintani

#pragma once

#include <map>

#include "shintani/field.hpp"

namespace shintani {

// Fractional ideal as a full-rank lattice over the integral-basis coordinates.
struct Ideal {
  Lattice lat;

  bool operator==(const Ideal& o) const { return lat == o.lat; }
};

Ideal ring_of_integers(const TotallyRealField& F);
Ideal principal_ideal(const TotallyRealField& F, const QVec& x);
Ideal ideal_product(const TotallyRealField& F, const Ideal& a, const Ideal& b);
Ideal ideal_scale(const TotallyRealField& F, const QVec& x, const Ideal& a);
Rat ideal_norm(const TotallyRealField& F, const Ideal& a);  // [O : a], fractional in general

// Prime ideal with residue-field machinery. The residue field is handled as
// the additive quotient O/p with flat indices plus cached multiplication,
// which keeps everything basis-agnostic.
struct Prime {
  Int p;            // residue characteristic
  std::size_t deg;  // residue degree
  int ram;          // ramification index
  Ideal ideal;
  QVec unif;

  LatticeQuotient kappa;        // O/p additive structure
  std::vector<QVec> reps;       // flat index -> additive representative
  std::vector<std::vector<std::size_t>> mul_table;
  std::vector<std::size_t> inv_table;  // 0 slot unused
  std::vector<bool> in_prime_subfield;  // flat index lies in F_p image
  std::size_t one_idx = 0;

  mutable std::vector<Lattice> power_cache;  // power_cache[k] = p^k lattice

  Int q() const {  // residue field size
    Int v = 1;
    for (std::size_t i = 0; i < deg; ++i) v *= p;
    return v;
  }

  const Lattice& power(const TotallyRealField& F, std::size_t k) const;

  // residue of a p-integral element, handling coordinate denominators prime to p
  std::size_t residue(const TotallyRealField& F, const QVec& x) const;
  std::size_t res_mul(std::size_t a, std::size_t b) const { return mul_table[a][b]; }
  std::size_t res_inv(std::size_t a) const;
  std::size_t res_pow(std::size_t a, Int e) const;
  std::size_t mult_order(std::size_t a) const;
};

std::vector<Prime> primes_above(const TotallyRealField& F, const Int& p);

// q-adic valuation; x nonzero
Int ord_element(const TotallyRealField& F, const Prime& P, const QVec& x);
Int ord_ideal(const TotallyRealField& F, const Prime& P, const Ideal& a);

// Finite quotient O/m with coset enumeration and unit testing against the
// prime factorization of m (which the callers always know).
struct ResidueRing {
  Ideal modulus;
  LatticeQuotient quot;        // O / m
  std::vector<QVec> reps;      // flat index -> representative
  std::vector<bool> is_unit;   // coprime to every prime of the factorization

  std::size_t size() const { return reps.size(); }
  std::size_t index_of(const TotallyRealField& F, const QVec& x) const;
};

ResidueRing residue_ring(const TotallyRealField& F, const Ideal& m, const std::vector<Prime>& factors);

}  // namespace shintani

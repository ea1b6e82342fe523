#pragma once

#include <cstdint>
#include <map>

#include "shintani/classdata.hpp"
#include "shintani/groupring.hpp"
#include "shintani/hilbert.hpp"
#include "shintani/solomon.hpp"

namespace shintani {

// Coefficient extension K/F: trivial, or cut out by a square root of d.
struct ExtensionSpec {
  bool trivial = true;
  QVec d;

  static ExtensionSpec none() { return ExtensionSpec{}; }
  static ExtensionSpec quadratic(QVec gen) { return ExtensionSpec{false, std::move(gen)}; }
};

// One congruence run. s_places lists S with the distinguished place first;
// finite entries index into s_finite. t_primes lists T, and t_primes[q_index]
// is the prime whose smoothing is folded into the test function (the rest
// enter through delta factors). m_residues restricts the residue subgroup at
// the smoothing prime; empty means the full prime subfield. j_levels can
// override the congruence depth used for Artin classes at a finite S-prime.
struct InstanceSpec {
  const TotallyRealField* F = nullptr;
  std::vector<PlaceRef> s_places;
  std::vector<Prime> s_finite;
  std::vector<Prime> t_primes;
  std::size_t q_index = 0;
  ExtensionSpec ext;
  std::vector<std::size_t> m_residues;
  std::map<std::size_t, int> j_levels;
  std::uint64_t seed = 20240901;
};

bool is_square_in_field(const TotallyRealField& F, const QVec& w);

// flat indices of the prime-subfield units of the residue field at q
std::vector<std::size_t> prime_subfield_unit_residues(const Prime& q);

struct MuReport {
  Int m = 2;          // number of roots of unity in K
  bool pass = false;  // every prime divisor of m avoids the characteristic of some T-prime
};

MuReport mu_t_check(const TotallyRealField& F, const ExtensionSpec& ext,
                    const std::vector<Prime>& t);

// Galois group of K/F; trivial group has rank zero
FiniteAbelianGroup galois_group(const ExtensionSpec& ext);

// Frobenius at an unramified prime
ZVec frobenius_class(const TotallyRealField& F, const ExtensionSpec& ext, const Prime& p);

// product of 1 - N(p) [Frob_p]^{-1} over T
GroupRingElement delta_t(const TotallyRealField& F, const ExtensionSpec& ext,
                         const std::vector<Prime>& t);

// local reciprocity image of u at a place of S
ZVec rec_at_place(const TotallyRealField& F, const ExtensionSpec& ext, const QVec& u,
                  const PlaceRef& v, const std::vector<Prime>& s_finite);

// decomposition subgroup at a place, as a list of group elements
std::vector<ZVec> decomposition_group(const TotallyRealField& F, const ExtensionSpec& ext,
                                      const PlaceRef& v, const std::vector<Prime>& s_finite);

// Ray class datum: ideals equivalent to b^{-1} with a totally positive
// generator congruent to xi modulo m*b. m_factors carries the prime
// factorization of m.
struct RayClassDatum {
  Ideal b;
  Ideal m;
  std::vector<Prime> m_factors;
  QVec xi;
};

// value at 0 of the class zeta function smoothed at q over the subgroup
// m_residues (empty = full prime subfield)
Rat partial_zeta0(const TotallyRealField& F, const RayClassDatum& c, const Prime& q,
                  const std::vector<std::size_t>& m_residues, std::uint64_t seed = 20240901);

struct ThetaElement {
  GroupRingElement theta;
  std::vector<Rat> fiber_zeta;  // smoothed zeta value per group element index
  IntegralityReport integrality;
};

// equivariant zeta value at 0 as a group ring element
ThetaElement stickelberger_theta(const InstanceSpec& spec);

struct RegulatorElement {
  GroupRingElement r;
  std::vector<std::vector<ZVec>> rec_matrix;  // rec_{v_i}(u_j), i = row place, j = column unit
  Int h_st = 0;
  Int n_st = 0;
  STUnitBasis basis;
};

RegulatorElement gross_regulator(const InstanceSpec& spec);

struct CongruenceReport {
  GroupRingElement theta, regulator, diff;
  bool integral = false;
  bool congruent = false;     // diff lies in I_H * prod_{v != v0} I_v
  bool coarse = false;        // diff lies in I^{r+1}
  bool vanish = false;        // theta lies in prod_{v != v0} I_v
  bool vanish_double = false; // 2*theta lies in I_H * prod I_v
  Lattice modulus;            // the fine congruence lattice
};

CongruenceReport verify_congruence(const InstanceSpec& spec);

// Sign-refined run over the group {+-1}^2: the class is assembled from two
// cone chains against the residue-subgroup test function at q.
struct HatElement {
  GroupRingElement cls;
  Rat z0, z1;   // values of the two chain pairings
  QVec eta;     // wall unit of the chains
  int eta_sign = 0;  // its sign at the second place
};

HatElement hat_theta(const TotallyRealField& F, const Prime& q,
                     const std::vector<std::size_t>& m_residues = {}, std::uint64_t seed = 0);

struct HatRegulatorElement {
  GroupRingElement cls;
  QVec u;
  Int h_st = 0;
  Int n_st = 0;
};

HatRegulatorElement hat_regulator(const TotallyRealField& F, const Prime& q);

struct HatCongruenceReport {
  GroupRingElement theta, regulator, diff;
  bool congruent = false;  // diff lies in I_H * I_{v_1}
  bool vanish = false;     // theta lies in I_{v_1}
  Lattice modulus;
};

HatCongruenceReport verify_hat(const TotallyRealField& F, const Prime& q,
                               const std::vector<std::size_t>& m_residues = {},
                               std::uint64_t seed = 0);

// Floating sanity check for rank-one trivial-extension runs: the numeric
// derivative of the smoothed zeta at 0 against n_st * det(-log|u_i|_{v_j}).
struct CnfFloatReport {
  double series_side = 0;
  double regulator_side = 0;
  double rel_err = 1;
  bool pass = false;
};

CnfFloatReport cnf_float_check(const InstanceSpec& spec, double t_min = 1e-3,
                               double t_max = 40.0);

}  // namespace shintani

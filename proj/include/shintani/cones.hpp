#pragma once

#include <cstdint>
#include <map>

#include "shintani/field.hpp"
#include "shintani/poly.hpp"

namespace shintani {

// Cone calculus lives either over a field (orientation via embeddings) or
// over plain rational coordinate space (orientation via the coordinate det).
struct ConeSpace {
  const TotallyRealField* field = nullptr;
  std::size_t dim = 0;

  std::size_t n() const { return field ? field->n : dim; }

  static ConeSpace plain(std::size_t n) { return ConeSpace{nullptr, n}; }
  static ConeSpace over(const TotallyRealField& F) { return ConeSpace{&F, F.n}; }

  int orientation(const std::vector<QVec>& xs) const;
};

// Direction in embedding space avoiding every rational hyperplane: either a
// base vector with per-coordinate delta^k lexicographic perturbation, or one
// of the embedding axes scaled by a signed infinitesimal.
struct IrrationalDirection {
  enum class Kind { CoordPerturbed, EmbeddingAxis };
  Kind kind = Kind::EmbeddingAxis;
  std::vector<QPoly> coords;  // CoordPerturbed: coordinate c is a polynomial in delta
  std::size_t axis = 0;       // EmbeddingAxis: embedding index carrying the direction
  int dir = 1;

  static IrrationalDirection perturbed(const QVec& base);
  static IrrationalDirection axis_dir(std::size_t axis, int dir);
};

// Formal sum of open simplicial cone symbols. Generators within a term are
// stored as given; canonical order (and equality) uses the sorted key.
struct ConeTerm {
  Int coeff;
  std::vector<QVec> gens;
};

struct ConeChain {
  std::size_t n = 0;
  std::map<std::vector<QVec>, ConeTerm> terms;

  ConeChain() = default;
  explicit ConeChain(std::size_t n_) : n(n_) {}

  void add(const Int& c, std::vector<QVec> gens);
  ConeChain& operator+=(const ConeChain& o);
  ConeChain& operator-=(const ConeChain& o);
  void scale(const Int& c);
  bool empty() const { return terms.empty(); }

  bool operator==(const ConeChain& o) const;
};

ConeChain operator+(ConeChain a, const ConeChain& b);
ConeChain operator-(ConeChain a, const ConeChain& b);
ConeChain operator-(ConeChain a);

// Formal sum of ordered tuples in general position; boundary drops entries
// with alternating signs.
struct TupleChain {
  std::size_t n = 0;
  std::map<std::vector<QVec>, Int> terms;

  TupleChain() = default;
  explicit TupleChain(std::size_t n_) : n(n_) {}

  void add(const Int& c, const std::vector<QVec>& tuple);
  bool is_zero() const { return terms.empty(); }
};

TupleChain boundary(const TupleChain& a);

bool general_position(std::size_t n, const std::vector<QVec>& xs);
bool cone_contains(const std::vector<QVec>& gens, const QVec& z);
Int indicator_eval(const ConeChain& chain, const QVec& z);

// sign of the orientation determinant with the j-th vector replaced by Q
int direction_sign(const ConeSpace& sp, const std::vector<QVec>& xs, std::size_t j,
                   const IrrationalDirection& q);

ConeChain psi(const ConeSpace& sp, const std::vector<QVec>& tuple);
ConeChain psi_chain(const ConeSpace& sp, const TupleChain& a);
ConeChain phi_q(const ConeSpace& sp, const std::vector<QVec>& tuple, const IrrationalDirection& q);
ConeChain phi_q_chain(const ConeSpace& sp, const TupleChain& a, const IrrationalDirection& q);

Int hill_value(const ConeSpace& sp, const std::vector<QVec>& xs, const QVec& y);

// boundary-free top-degree chains get capped by a generic vector; the result
// does not depend on the cap
ConeChain fill_and_phi(const ConeSpace& sp, const TupleChain& cycle, std::uint64_t seed);

// multiply every generator by a fixed field element
ConeChain chain_mul_element(const TotallyRealField& F, const QVec& p, const ConeChain& chain);

// sum of unit translates of the chain indicator at w, over an adaptive
// finite window (exact; errors if the window cap is hit)
Int tiling_value(const TotallyRealField& F, const ConeChain& chain, const std::vector<QVec>& units,
                 const QVec& w);

struct SignedFundDomain {
  ConeChain d;
  std::vector<QVec> units;  // normalized generators of the translation group
  std::vector<int> g;       // sign component, entries +-1
  std::vector<QVec> witnesses;
};

// cone chain D with sum over unit translates of its indicator equal to
// sgn(g) on the sign-g fiber; sign fixed by the tiling identity itself
SignedFundDomain signed_fundamental_domain(const TotallyRealField& F, std::vector<QVec> units,
                                           const std::vector<int>& g, std::uint64_t seed = 20240901);

}  // namespace shintani

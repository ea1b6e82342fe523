#pragma once

#include "shintani/ideal.hpp"

namespace shintani {

// A place of F: either the real embedding `index` (in the field's place
// order) or the prime `index` of the instance's finite S-list.
struct PlaceRef {
  bool is_infinite = true;
  std::size_t index = 0;

  bool operator==(const PlaceRef& o) const {
    return is_infinite == o.is_infinite && index == o.index;
  }
};

// fundamental unit of the order (mod torsion), normalized to value > 1 at
// place 0; real quadratic only
QVec fundamental_unit(const TotallyRealField& F);
QVec totally_positive_fundamental_unit(const TotallyRealField& F);

// generator of a principal ideal, small-coordinate search
QVec ideal_generator(const TotallyRealField& F, const Ideal& a, long height_cap = 2000);

// supported lane: class number one and a norm -1 fundamental unit (so the
// narrow class number is one too); throws otherwise
void check_narrow_class_number_one(const TotallyRealField& F);

struct STClassData {
  Int h_st;       // order of the (S,T)-ray-style class group
  Int gal_order;  // degree of the everywhere-unramified S-split extension
  Int n_st;       // -h_st / gal_order
};

STClassData st_class_data(const TotallyRealField& F, const std::vector<Prime>& s_finite,
                          const std::vector<Prime>& t);

struct STUnitBasis {
  std::vector<QVec> units;       // u_1..u_r
  std::vector<PlaceRef> places;  // v_0..v_r, v_0 first
  bool hat_convention = false;
};

// basis of the S-units congruent to 1 at T, normalized so the determinant
// sign condition of the requested convention holds
STUnitBasis st_unit_basis(const TotallyRealField& F, const std::vector<Prime>& s_finite,
                          const std::vector<Prime>& t, const std::vector<PlaceRef>& places,
                          bool hat_convention);

// certified sign of det(-log|u_i|_{v_j}) over v_1..v_r; tol drives the
// interval precision of the entries
int st_log_det_sign(const TotallyRealField& F, const std::vector<Prime>& s_finite,
                    const std::vector<QVec>& units, const std::vector<PlaceRef>& places,
                    const Rat& tol = Rat(1, 1000));

}  // namespace shintani

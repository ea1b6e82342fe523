#include <random>

#include "doctest.h"
#include "shintani/groupring.hpp"

using namespace shintani;

namespace {

GroupRingElement random_element(const FiniteAbelianGroup& G, std::mt19937& rng, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  GroupRingElement x(G);
  for (auto& c : x.coeff) c = Rat(d(rng));
  return x;
}

}  // namespace

TEST_CASE("group arithmetic, enumeration and labels") {
  auto C4 = FiniteAbelianGroup::cyclic(4);
  ZVec g{Int(1)};
  CHECK(C4.size() == 4);
  CHECK(C4.mul(C4.pow(g, 3), g) == C4.identity());
  CHECK(C4.inv(C4.pow(g, 3)) == g);
  for (std::size_t i = 0; i < 4; ++i) CHECK(C4.index_of(C4.element(i)) == i);

  auto V = FiniteAbelianGroup::signs(2);
  auto P = FiniteAbelianGroup::product(FiniteAbelianGroup::cyclic(2), FiniteAbelianGroup::cyclic(3));
  CHECK(V.size() == 4);
  CHECK(P.size() == 6);
  CHECK(P.elements().size() == 6);
  CHECK(element_label(V, ZVec{Int(0), Int(0)}, true) == "(+1,+1)");
  CHECK(element_label(V, ZVec{Int(1), Int(0)}, true) == "(-1,+1)");
  CHECK(element_label(P, P.identity(), false) == "1");
  CHECK(element_label(P, ZVec{Int(1), Int(2)}, false) == "s0*s1^2");
  CHECK(element_label(FiniteAbelianGroup::cyclic(3), ZVec{Int(2)}, false) == "s0^2");
  CHECK_THROWS_AS(element_label(P, P.identity(), true), std::invalid_argument);

  std::mt19937 rng(11);
  for (int t = 0; t < 8; ++t) {
    auto a = random_element(P, rng, -4, 4);
    auto b = random_element(P, rng, -4, 4);
    CHECK(ring_mul(a, b) == ring_mul(b, a));
    CHECK(ring_mul(a, b).augmentation() == a.augmentation() * b.augmentation());
    CHECK(ring_mul(a, ring_one(P)) == a);
  }
  GroupRingElement half(P);
  half.coeff[0] = Rat(1, 2);
  CHECK(!half.is_integral());
  CHECK(ring_one(P).is_integral());
}

TEST_CASE("augmentation ideal lattices in hermite form") {
  auto C2 = FiniteAbelianGroup::cyclic(2);
  Lattice I1 = aug_power(C2, 1);
  CHECK(I1.rank() == 1);
  CHECK(I1.denom == 1);
  CHECK(I1.basis.at(0, 0) == 1);
  CHECK(I1.basis.at(0, 1) == -1);

  Lattice I2 = aug_power(C2, 2);
  CHECK(I2.rank() == 1);
  CHECK(I2.basis.at(0, 0) == 2);
  CHECK(I2.basis.at(0, 1) == -2);

  auto C3 = FiniteAbelianGroup::cyclic(3);
  Lattice J1 = aug_power(C3, 1);
  Lattice J2 = aug_power(C3, 2);
  CHECK(J1.rank() == 2);
  CHECK(J2.rank() == 2);
  CHECK(J1.contains_lattice(J2));
  CHECK(sublattice_index(J1, J2) == 3);

  // factor order and generator order are immaterial, as are redundant generators
  auto V = FiniteAbelianGroup::signs(2);
  ZVec e0{Int(1), Int(0)}, e1{Int(0), Int(1)};
  Lattice A = ideal_lattice(V, {{e0, e1}, {e0}});
  Lattice B = ideal_lattice(V, {{e0}, {e1, e0}});
  CHECK(A == B);

  auto C4 = FiniteAbelianGroup::cyclic(4);
  ZVec g{Int(1)}, g2{Int(2)};
  CHECK(ideal_lattice(C4, {{g}}) == ideal_lattice(C4, {{g, g2}}));

  CHECK(ideal_lattice(C4, {}).rank() == 4);
  CHECK_THROWS_AS(ideal_lattice(C4, {{}}), std::invalid_argument);
}

TEST_CASE("ideal powers nest and the two-torsion product doubles") {
  std::vector<FiniteAbelianGroup> gs = {
      FiniteAbelianGroup::cyclic(2), FiniteAbelianGroup::cyclic(3),
      FiniteAbelianGroup::cyclic(4), FiniteAbelianGroup::signs(2)};
  for (const auto& G : gs) {
    for (std::size_t k = 0; k <= 3; ++k)
      CHECK(aug_power(G, k).contains_lattice(aug_power(G, k + 1)));
  }

  auto V = FiniteAbelianGroup::signs(2);
  ZVec e0{Int(1), Int(0)}, e1{Int(0), Int(1)};
  Lattice prod = ideal_lattice(V, {{e0}, {e1}});
  Lattice target = ideal_lattice(V, {{e0, e1}, {e0}, {e1}});
  CHECK(target.contains_lattice(prod.scaled(Rat(2))));
}

TEST_CASE("canonical residues modulo ideal powers") {
  auto C2 = FiniteAbelianGroup::cyclic(2);
  Lattice I2 = aug_power(C2, 2);
  ZVec s{Int(1)};
  GroupRingElement d = ring_one(C2) - basis_element(C2, s);

  GroupRingElement twice = d + d;
  CHECK(reduce_mod(twice, I2).is_zero());
  CHECK(!reduce_mod(d, I2).is_zero());
  CHECK(reduce_mod(d, I2) == reduce_mod(-(d), I2));

  GroupRingElement half(C2);
  half.coeff[0] = Rat(1, 2);
  CHECK_THROWS_AS(reduce_mod(half, I2), std::invalid_argument);

  auto C4 = FiniteAbelianGroup::cyclic(4);
  Lattice L = aug_power(C4, 2);
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> dc(-5, 5), dm(-3, 3);
  for (int t = 0; t < 20; ++t) {
    auto x = random_element(C4, rng, -5, 5);
    auto y = x;
    for (std::size_t i = 0; i < L.basis.rows; ++i) {
      Rat c(dm(rng));
      for (std::size_t j = 0; j < L.dim(); ++j) y.coeff[j] += c * Rat(L.basis.at(i, j));
    }
    CHECK(reduce_mod(x, L) == reduce_mod(y, L));
    auto diff = y - x;
    CHECK(reduce_mod(diff, L).is_zero());
  }
}

TEST_CASE("determinant reduction at the constant term") {
  auto N1 = FiniteAbelianGroup::signs(1);
  auto r1 = detred_congruence_check(N1, {{ZVec{Int(1)}}});
  CHECK(r1.pass);
  CHECK(r1.lhs == r1.rhs);

  auto N2 = FiniteAbelianGroup::signs(2);
  ZVec id = N2.identity();
  ZVec e0{Int(1), Int(0)}, e1{Int(0), Int(1)};

  auto rid = detred_congruence_check(N2, {{id, id}, {id, id}});
  CHECK(rid.pass);
  CHECK(rid.lhs.is_zero());
  CHECK(rid.rhs.is_zero());

  // a case where the two determinants differ but stay congruent
  auto rx = detred_congruence_check(N2, {{e0, e1}, {id, e1}});
  CHECK(rx.pass);
  CHECK(!(rx.lhs == rx.rhs));

  std::mt19937 rng(37);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::vector<ZVec>> f(2);
    for (int i = 0; i < 2; ++i) {
      f[i].push_back(coin(rng) ? e0 : id);
      f[i].push_back(coin(rng) ? e1 : id);
    }
    CHECK(detred_congruence_check(N2, f).pass);
  }

  CHECK_THROWS_AS(detred_congruence_check(N2, {{e1, e0}, {id, id}}), std::invalid_argument);
  CHECK_THROWS_AS(detred_congruence_check(N2, {{e0}, {id}}), std::invalid_argument);
  CHECK_THROWS_AS(detred_congruence_check(N1, {{ZVec{Int(1)}, ZVec{Int(1)}},
                                               {ZVec{Int(1)}, ZVec{Int(1)}}}),
                  std::invalid_argument);
}

#include "shintani/theta.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "shintani/adelic.hpp"
#include "shintani/cones.hpp"

using namespace shintani;

namespace {

TotallyRealField golden_field() {
  return TotallyRealField::make({Int(-1), Int(-1), Int(1)}, std::nullopt,
                                std::vector<std::size_t>{1, 0});
}

TotallyRealField sqrt2_field() {
  return TotallyRealField::make({Int(-2), Int(0), Int(1)}, std::nullopt,
                                std::vector<std::size_t>{1, 0});
}

QVec qv(long a, long b) { return {Rat(a), Rat(b)}; }

// the degree-one prime over 7 where the fundamental unit has residue order 6
Prime seven_order6(const TotallyRealField& F2) {
  QVec eps = fundamental_unit(F2);
  for (Prime& p : primes_above(F2, 7))
    if (p.mult_order(p.residue(F2, eps)) == 6) return p;
  throw std::runtime_error("no order-6 branch over 7");
}

}  // namespace

TEST_CASE("square detection in quadratic fields") {
  auto F5 = golden_field();
  auto F2 = sqrt2_field();

  CHECK(is_square_in_field(F5, F5.from_rational(Rat(5))));
  CHECK(is_square_in_field(F5, F5.from_rational(Rat(4))));
  CHECK(is_square_in_field(F5, qv(1, 1)));  // theta^2
  CHECK(!is_square_in_field(F5, F5.from_rational(Rat(3))));
  CHECK(!is_square_in_field(F5, F5.from_rational(Rat(2))));
  CHECK(!is_square_in_field(F5, F5.from_rational(Rat(-4))));
  CHECK(!is_square_in_field(F5, qv(0, 1)));  // mixed signs

  CHECK(is_square_in_field(F2, F2.from_rational(Rat(2))));
  CHECK(is_square_in_field(F2, F2.from_rational(Rat(18))));
  CHECK(is_square_in_field(F2, F2.from_rational(Rat(1, 2))));
  CHECK(!is_square_in_field(F2, F2.from_rational(Rat(3))));
  CHECK(!is_square_in_field(F2, F2.from_rational(Rat(5))));

  // squares of generic elements round-trip
  for (long a = -3; a <= 3; ++a)
    for (long b = 1; b <= 3; ++b) {
      QVec w = F5.mul(qv(a, b), qv(a, b));
      CHECK(is_square_in_field(F5, w));
    }
}

TEST_CASE("torsion orders and the cover condition") {
  auto F5 = golden_field();
  auto F2 = sqrt2_field();
  auto t5 = primes_above(F5, 5);
  auto t3 = primes_above(F5, 3);
  auto t7 = primes_above(F2, 7);

  MuReport triv = mu_t_check(F5, ExtensionSpec::none(), t5);
  CHECK(triv.m == 2);
  CHECK(triv.pass);
  CHECK(!mu_t_check(F5, ExtensionSpec::none(), {}).pass);

  // F(i): fourth roots, and over sqrt2 even eighth roots
  MuReport g4 = mu_t_check(F5, ExtensionSpec::quadratic(qv(-1, 0)), t5);
  CHECK(g4.m == 4);
  CHECK(g4.pass);
  MuReport g8 = mu_t_check(F2, ExtensionSpec::quadratic(qv(-1, 0)), t7);
  CHECK(g8.m == 8);
  CHECK(g8.pass);

  // sixth roots via sqrt(-3); a residue characteristic 3 prime cannot cover
  MuReport g6 = mu_t_check(F5, ExtensionSpec::quadratic(qv(-3, 0)), t5);
  CHECK(g6.m == 6);
  CHECK(g6.pass);
  CHECK(!mu_t_check(F5, ExtensionSpec::quadratic(qv(-3, 0)), t3).pass);

  CHECK(mu_t_check(F5, ExtensionSpec::quadratic(qv(-2, 0)), t5).m == 2);
  CHECK(mu_t_check(F5, ExtensionSpec::quadratic(qv(-7, 0)), t5).m == 2);
  CHECK(mu_t_check(F2, ExtensionSpec::quadratic(qv(-3, 0)), t7).m == 6);
  CHECK(mu_t_check(F2, ExtensionSpec::quadratic(qv(-7, 0)), t7).m == 2);

  // fifth roots: -(5+sqrt5)/2 = -(2+theta) generates the right square class
  auto t11 = primes_above(F5, 11);
  REQUIRE(!t11.empty());
  MuReport g10 = mu_t_check(F5, ExtensionSpec::quadratic(qv(-2, -1)), t5);
  CHECK(g10.m == 10);
  CHECK(!g10.pass);  // only characteristic 5 in T
  std::vector<Prime> t511 = {t5[0], t11[0]};
  CHECK(mu_t_check(F5, ExtensionSpec::quadratic(qv(-2, -1)), t511).pass);

  CHECK_THROWS_AS(mu_t_check(F5, ExtensionSpec::quadratic(qv(4, 0)), t5),
                  std::invalid_argument);
}

TEST_CASE("frobenius classes and delta factors") {
  auto F5 = golden_field();
  auto t5 = primes_above(F5, 5);
  auto t11 = primes_above(F5, 11);
  auto t29 = primes_above(F5, 29);
  ExtensionSpec gauss = ExtensionSpec::quadratic(qv(-1, 0));

  // 11 = 3 mod 4 stays inert in F(i), 29 = 1 mod 4 splits
  CHECK(frobenius_class(F5, gauss, t11[0]) == ZVec{Int(1)});
  CHECK(frobenius_class(F5, gauss, t29[0]) == ZVec{Int(0)});
  CHECK(frobenius_class(F5, ExtensionSpec::none(), t11[0]).empty());
  auto p2 = primes_above(F5, 2);
  CHECK_THROWS_AS(frobenius_class(F5, gauss, p2[0]), std::invalid_argument);

  GroupRingElement d0 = delta_t(F5, ExtensionSpec::none(), {t5[0]});
  REQUIRE(d0.coeff.size() == 1);
  CHECK(d0.coeff[0] == Rat(-4));
  GroupRingElement d1 = delta_t(F5, ExtensionSpec::none(), {t5[0], t11[0]});
  CHECK(d1.coeff[0] == Rat(40));

  GroupRingElement d2 = delta_t(F5, gauss, {t11[0]});
  REQUIRE(d2.coeff.size() == 2);
  CHECK(d2.coeff[0] == Rat(1));
  CHECK(d2.coeff[1] == Rat(-11));
  // norm of the prime over 5 is 1 mod 4, so it splits and contributes -4
  GroupRingElement d3 = delta_t(F5, gauss, {t5[0], t11[0]});
  CHECK(d3.coeff[0] == Rat(-4));
  CHECK(d3.coeff[1] == Rat(44));
}

TEST_CASE("reciprocity images and decomposition groups") {
  auto F5 = golden_field();
  ExtensionSpec gauss = ExtensionSpec::quadratic(qv(-1, 0));
  auto s2 = primes_above(F5, 2);
  auto s29 = primes_above(F5, 29);

  // -1 is negative at both real places and d = -1 ramifies there
  CHECK(rec_at_place(F5, gauss, F5.from_rational(Rat(-1)), {true, 0}, {}) == ZVec{Int(1)});
  CHECK(rec_at_place(F5, gauss, F5.from_rational(Rat(-1)), {true, 1}, {}) == ZVec{Int(1)});
  // theta is positive at place 0, negative at place 1
  CHECK(rec_at_place(F5, gauss, qv(0, 1), {true, 0}, {}) == ZVec{Int(0)});
  CHECK(rec_at_place(F5, gauss, qv(0, 1), {true, 1}, {}) == ZVec{Int(1)});
  // totally positive units land in the identity everywhere
  QVec epl = totally_positive_fundamental_unit(F5);
  CHECK(rec_at_place(F5, gauss, epl, {true, 0}, {}) == ZVec{Int(0)});
  CHECK(rec_at_place(F5, gauss, epl, {true, 1}, {}) == ZVec{Int(0)});

  CHECK(decomposition_group(F5, gauss, {true, 0}, {}).size() == 2);
  CHECK(decomposition_group(F5, gauss, {false, 0}, s2).size() == 2);   // ramified
  CHECK(decomposition_group(F5, gauss, {false, 0}, s29).size() == 1);  // split
  CHECK(decomposition_group(F5, ExtensionSpec::none(), {true, 0}, {}).size() == 1);
}

TEST_CASE("hat chain on the golden field at the split five") {
  auto F = golden_field();
  Prime q = primes_above(F, 5)[0];

  HatElement th = hat_theta(F, q);
  CHECK(th.z0 == Rat(0));
  CHECK(th.z1 == Rat(-1));
  CHECK(th.eta == qv(0, 1));
  CHECK(th.eta_sign == -1);
  FiniteAbelianGroup N = FiniteAbelianGroup::signs(2);
  GroupRingElement expect(N);
  expect.coeff[0] = 1;   // (+1,+1)
  expect.coeff[1] = -1;  // (+1,-1)
  CHECK(th.cls == expect);

  HatRegulatorElement reg = hat_regulator(F, q);
  CHECK(reg.h_st == 1);
  CHECK(reg.n_st == -1);
  CHECK(reg.u == qv(-2, 1));
  CHECK(reg.cls == expect);

  HatCongruenceReport rep = verify_hat(F, q);
  CHECK(rep.congruent);
  CHECK(rep.vanish);
  CHECK(rep.diff.is_zero());

  // base-point shifts must not move the class
  for (std::uint64_t seed : {1ull, 2ull, 77ull}) {
    HatElement th2 = hat_theta(F, q, {}, seed);
    CHECK(th2.cls == th.cls);
    CHECK(th2.z0 == th.z0);
    CHECK(th2.z1 == th.z1);
  }
}

TEST_CASE("hat chain on sqrt2 at the order-6 branch over seven") {
  auto F = sqrt2_field();
  Prime q = seven_order6(F);

  HatElement th = hat_theta(F, q);
  // wall unit is the fundamental unit itself at a degree-one prime
  CHECK(th.eta == qv(1, 1));
  CHECK(th.eta_sign == -1);
  CHECK(th.z0 == Rat(0));
  CHECK(num(th.z1) % 2 == 0);

  HatRegulatorElement reg = hat_regulator(F, q);
  CHECK(reg.h_st == 1);
  CHECK(reg.n_st == -1);
  // u = 7 - 5 sqrt2 is positive at the second embedding, so the class dies
  CHECK(reg.u == qv(7, -5));
  CHECK(reg.cls.is_zero());

  HatCongruenceReport rep = verify_hat(F, q);
  CHECK(rep.congruent);
  CHECK(rep.vanish);
}

TEST_CASE("hat chain on sqrt2 at the inert five") {
  auto F = sqrt2_field();
  auto qs = primes_above(F, 5);
  REQUIRE(qs.size() == 1);
  Prime q = qs[0];
  REQUIRE(q.deg == 2);

  HatElement th = hat_theta(F, q);
  // residues of the unit leave the prime subfield until the cube
  CHECK(th.eta == qv(7, 5));
  CHECK(th.eta_sign == -1);
  CHECK(th.z0 == Rat(0));
  CHECK(num(th.z1) % 2 == 0);

  HatRegulatorElement reg = hat_regulator(F, q);
  CHECK(reg.h_st == 2);
  CHECK(reg.n_st == -2);
  CHECK(reg.u == qv(-99, 70));
  FiniteAbelianGroup N = FiniteAbelianGroup::signs(2);
  GroupRingElement expect(N);
  expect.coeff[0] = 2;
  expect.coeff[1] = -2;
  CHECK(reg.cls == expect);

  HatCongruenceReport rep = verify_hat(F, q);
  CHECK(rep.congruent);
  CHECK(rep.vanish);
}

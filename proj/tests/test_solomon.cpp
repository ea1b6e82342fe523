#include "shintani/solomon.hpp"

#include <cmath>
#include <random>

#include "doctest.h"

using namespace shintani;

namespace {

TotallyRealField golden_field() {
  return TotallyRealField::make({Int(-1), Int(-1), Int(1)}, {}, {{1, 0}});
}

TotallyRealField line_field() {
  return TotallyRealField::make({Int(-2), Int(1)});
}

std::vector<std::size_t> prime_subfield_units(const TotallyRealField& F, const Prime& q) {
  std::size_t zero = q.residue(F, F.zero());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < q.reps.size(); ++i)
    if (i != zero && q.in_prime_subfield[i]) out.push_back(i);
  return out;
}

FiniteTestFunction golden_f(const TotallyRealField& F, const Prime& q) {
  return make_f_rmw(F, q, {}, {}, prime_subfield_units(F, q), {});
}

QVec random_admissible(std::mt19937_64& rng, const TotallyRealField& F, const Prime& q) {
  std::uniform_int_distribution<int> d(-3, 3);
  while (true) {
    QVec x(F.n);
    for (auto& c : x) c = Rat(d(rng));
    if (F.is_zero(x)) continue;
    if (ord_element(F, q, x) != 0) continue;
    if (!q.in_prime_subfield[q.residue(F, x)]) continue;
    return x;
  }
}

std::vector<QVec> random_cone(std::mt19937_64& rng, const TotallyRealField& F, const Prime& q,
                              std::size_t m) {
  while (true) {
    std::vector<QVec> gens;
    for (std::size_t i = 0; i < m; ++i) gens.push_back(random_admissible(rng, F, q));
    if (m == 1) return gens;
    if (F.orientation(gens) != 0) return gens;
  }
}

std::vector<std::size_t> random_subgroup(std::mt19937_64& rng, const TotallyRealField& F,
                                         const Prime& q) {
  auto units = prime_subfield_units(F, q);
  std::uniform_int_distribution<std::size_t> pick(0, units.size() - 1);
  std::size_t g = units[pick(rng)];
  std::vector<std::size_t> out{q.one_idx};
  std::size_t cur = g;
  while (cur != q.one_idx) {
    out.push_back(cur);
    cur = q.res_mul(cur, g);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// f_rmw variant, optionally pushed around by a unit or a lattice shift
FiniteTestFunction random_phi(std::mt19937_64& rng, const TotallyRealField& F, const Prime& q,
                              const std::vector<Prime>& s_f, bool allow_translate) {
  std::uniform_int_distribution<int> shape(0, s_f.empty() ? 0 : 2);
  std::vector<std::size_t> r_idx, w_idx;
  switch (shape(rng)) {
    case 1: r_idx.push_back(0); break;
    case 2: w_idx.push_back(0); break;
    default: break;
  }
  auto phi = make_f_rmw(F, q, s_f, r_idx, random_subgroup(rng, F, q), w_idx);
  std::uniform_int_distribution<int> extra(0, allow_translate ? 2 : 1);
  switch (extra(rng)) {
    case 1: {
      // unit multipliers whose residue stays rational at q
      QVec eps(F.n, Rat(0));
      if (F.n == 2) eps[1] = 1;
      else eps = F.one();
      std::vector<QVec> cands;
      for (int e = -4; e <= 4; ++e) {
        QVec y = F.pow(eps, Int(e));
        for (int s = 0; s < 2; ++s) {
          QVec cand = s ? F.neg(y) : y;
          if (q.in_prime_subfield[q.residue(F, cand)]) cands.push_back(cand);
        }
      }
      std::uniform_int_distribution<std::size_t> pick(0, cands.size() - 1);
      phi = act(F, cands[pick(rng)], phi);
      break;
    }
    case 2: {
      std::uniform_int_distribution<int> c(-4, 4);
      QVec y(F.n, Rat(0));
      for (std::size_t i = 0; i < phi.support.rank(); ++i) {
        QVec r = phi.support.row(i);
        Rat f(c(rng));
        for (std::size_t j = 0; j < F.n; ++j) y[j] += f * r[j];
      }
      phi = translate(F, y, phi);
      break;
    }
    default: break;
  }
  return phi;
}

}  // namespace

TEST_CASE("total mass of point masses") {
  auto F = golden_field();
  CHECK(varpi_finite({}) == 0);
  CHECK(varpi_finite({{F.zero(), Int(1)}}) == 1);
  CHECK(varpi_finite({{F.one(), Int(2)}, {{Rat(0), Rat(1)}, Int(3)}}) == 5);
}

TEST_CASE("alternating ray sums give the classical four fifths") {
  auto F = line_field();
  Prime q = primes_above(F, 5)[0];
  auto phi = make_h_x(F, q, q.one_idx);
  std::vector<QVec> ray{F.one()};

  DeltaPlan nat = native_plan(F, ray, phi);
  REQUIRE(nat.step.size() == 1);
  CHECK(nat.step[0] == 1);
  CHECK(nat.count[0] == 5);
  CHECK(varpi_term(F, ray, phi, nat) == Rat(4, 5));

  DeltaPlan uni = uniform_plan(F, ray, phi);
  CHECK(uni.step[0] == Rat(1, 5));
  CHECK(uni.count[0] == 25);
  CHECK(varpi_term(F, ray, phi, uni) == Rat(4, 5));
  CHECK_THROWS_AS(uniform_plan(F, ray, phi, 3), std::runtime_error);

  ConeChain chain(1);
  chain.add(1, ray);
  auto res = pairing(F, q, chain, phi);
  CHECK(res.value == Rat(4, 5));
  CHECK(res.plans.size() == 1);

  // shifting the apex by a lattice vector moves nothing
  for (int s : {5, -5, 10}) {
    QVec off = F.from_rational(Rat(s));
    CHECK(varpi_term(F, ray, translate(F, off, phi), nat, &off) == Rat(4, 5));
  }
  QVec bad{Rat(1, 7)};
  CHECK_THROWS_AS(varpi_term(F, ray, phi, nat, &bad), std::invalid_argument);

  auto num = abel_oracle(F, chain, phi);
  CHECK(num.converged);
  CHECK(std::fabs(num.value - 0.8) < 1e-6);
}

TEST_CASE("golden pairing matches the frozen zeta constants") {
  auto F = golden_field();
  Prime q = primes_above(F, 5)[0];
  auto f = golden_f(F, q);
  QVec one = F.one(), eps{Rat(0), Rat(1)}, eps2{Rat(1), Rat(1)};

  ConeChain d1(2);
  d1.add(1, {one, eps});
  auto r1 = pairing(F, q, d1, f);
  CHECK(r1.value == -1);

  ConeChain d0(2);
  d0.add(1, {one});
  d0.add(1, {one, eps2});
  auto r0 = pairing(F, q, d0, f);
  CHECK(r0.value == 0);

  // the ray and the full cone cancel exactly
  DeltaPlan nat = native_plan(F, {one}, f);
  CHECK(varpi_term(F, {one}, f, nat) == 2);

  auto rep = integrality_report(r1.value, q.p, F.n, true);
  CHECK(rep.weak_ok);
  CHECK(rep.strong_applicable);
  CHECK(rep.strong_ok);

  auto n1 = abel_oracle(F, d1, f, 0.5, 8);
  CHECK(n1.converged);
  CHECK(std::fabs(n1.value - (-1.0)) < 1e-4);
  auto n0 = abel_oracle(F, d0, f, 0.5, 7);
  CHECK(std::fabs(n0.value - 0.0) < 1e-4);

  // uneven decay rates regroup the homogeneity exponents
  auto n2 = abel_oracle(F, d1, f, 0.5, 7, {1.0, 2.0});
  CHECK(std::fabs(n2.value - (-1.0)) < 5e-4);

  auto zero = make_indicator(F, ring_of_integers(F));
  for (auto& v : zero.table) v = 0;
  CHECK(pairing(F, q, d1, zero).value == 0);
}

TEST_CASE("translation by lattice vectors fixes the value") {
  auto F = golden_field();
  Prime q = primes_above(F, 5)[0];
  std::vector<Prime> s_f{primes_above(F, 2)[0]};
  std::mt19937_64 rng(20240907);
  std::uniform_int_distribution<int> c(-6, 6), mdist(1, 2);
  for (int it = 0; it < 12; ++it) {
    auto phi = random_phi(rng, F, q, s_f, false);
    auto gens = random_cone(rng, F, q, mdist(rng));
    QVec y(F.n, Rat(0));
    for (std::size_t i = 0; i < phi.support.rank(); ++i) {
      QVec r = phi.support.row(i);
      Rat f(c(rng));
      for (std::size_t j = 0; j < F.n; ++j) y[j] += f * r[j];
    }
    DeltaPlan nat = native_plan(F, gens, phi);
    CHECK(varpi_term(F, gens, translate(F, y, phi), nat, &y) == varpi_term(F, gens, phi, nat));
  }
}

TEST_CASE("shift plans agree across admissible choices") {
  auto F = golden_field();
  std::vector<Prime> qs{primes_above(F, 5)[0], primes_above(F, 3)[0]};
  std::vector<Prime> s_f{primes_above(F, 2)[0]};
  std::mt19937_64 rng(20240911);
  std::uniform_int_distribution<int> mdist(1, 2), qpick(0, 1);
  for (int it = 0; it < 20; ++it) {
    const Prime& q = qs[qpick(rng)];
    auto phi = random_phi(rng, F, q, s_f, true);
    auto gens = random_cone(rng, F, q, mdist(rng));
    ConeChain chain(2);
    chain.add(1, gens);
    Rat v = pairing(F, q, chain, phi, true).value;  // native vs uniform inside

    DeltaPlan nat = native_plan(F, gens, phi);
    DeltaPlan fine = nat;
    for (std::size_t j = 0; j < fine.step.size(); ++j) {
      fine.step[j] /= 2;
      fine.count[j] *= 2;
    }
    CHECK(varpi_term(F, gens, phi, fine) == v);

    DeltaPlan uni = uniform_plan(F, gens, phi);
    DeltaPlan uni2 = uni;
    for (std::size_t j = 0; j < uni2.step.size(); ++j) {
      uni2.step[j] /= 2;
      uni2.count[j] *= 4;
    }
    CHECK(varpi_term(F, gens, phi, uni2) == v);
  }

  // the support sublattice of a partial span keeps only span members
  QVec eps{Rat(0), Rat(1)};
  auto phi = golden_f(F, qs[0]);
  Lattice l0 = span_intersection(F, phi.support, {eps});
  CHECK(l0.rank() == 1);
  CHECK(l0.contains(eps));
  CHECK(l0.contains(F.mul_rat(Rat(2), eps)));
  CHECK(!l0.contains(F.mul_rat(Rat(1, 2), eps)));
}

TEST_CASE("smoothness gate and argument validation") {
  auto F = golden_field();
  Prime q = primes_above(F, 5)[0];
  ConeChain d1(2);
  d1.add(1, {F.one(), {Rat(0), Rat(1)}});

  auto rough = make_indicator(F, ring_of_integers(F));
  CHECK_THROWS_AS(pairing(F, q, d1, rough), std::runtime_error);

  ConeChain bad(2);
  bad.add(1, {{Rat(-1), Rat(2)}});  // the distinguished uniformizer
  CHECK_THROWS_AS(pairing(F, q, bad, golden_f(F, q)), std::invalid_argument);

  DeltaPlan p;
  p.step = {Rat(1)};
  p.count = {Int(5), Int(5)};
  CHECK_THROWS_AS(varpi_term(F, {F.one()}, golden_f(F, q), p), std::invalid_argument);
}

TEST_CASE("denominator bounds across residue characteristics") {
  auto F = golden_field();
  std::mt19937_64 rng(20240919);
  std::uniform_int_distribution<int> mdist(1, 2);

  for (long p : {5L, 3L, 7L}) {
    Prime q = primes_above(F, Int(p))[0];
    auto units = prime_subfield_units(F, q);
    // small-coordinate admissible vectors at 7 are all rational, so rays only
    auto draw_m = [&]() -> std::size_t { return p == 7 ? 1 : mdist(rng); };
    for (int it = 0; it < 5; ++it) {
      auto phi = random_phi(rng, F, q, {}, false);
      auto gens = random_cone(rng, F, q, draw_m());
      ConeChain chain(2);
      chain.add(1, gens);
      Rat v = pairing(F, q, chain, phi).value;
      auto rep = integrality_report(v, q.p, F.n, false);
      CHECK(rep.weak_ok);
    }
    // full subgroup: integer values once the characteristic clears the degree
    auto full_phi = make_f_rmw(F, q, {}, {}, units, {});
    for (int it = 0; it < 3; ++it) {
      auto gens = random_cone(rng, F, q, draw_m());
      ConeChain chain(2);
      chain.add(1, gens);
      Rat v = pairing(F, q, chain, full_phi).value;
      auto rep = integrality_report(v, q.p, F.n, true);
      CHECK(rep.weak_ok);
      if (p != 3) {
        CHECK(rep.strong_applicable);
        CHECK(rep.strong_ok);
      } else {
        CHECK(!rep.strong_applicable);
      }
    }
  }

  auto r1 = integrality_report(Rat(1, 25), Int(5), 1, false);
  CHECK(!r1.weak_ok);
  auto r2 = integrality_report(Rat(4, 5), Int(5), 1, false);
  CHECK(r2.weak_ok);
  CHECK(!r2.strong_applicable);
  CHECK(r2.strong_ok);
}

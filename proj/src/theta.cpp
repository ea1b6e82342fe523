#include "shintani/theta.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "shintani/adelic.hpp"
#include "shintani/cones.hpp"

namespace shintani {

namespace {

std::optional<Rat> rat_sqrt(const Rat& c) {
  if (c < 0) return std::nullopt;
  Int n = num(c), d = den(c);
  Int sn = sqrt(n), sd = sqrt(d);
  if (sn * sn != n || sd * sd != d) return std::nullopt;
  return Rat(sn) / Rat(sd);
}

// rational value of an element known to lie in Q
Rat rational_value(const TotallyRealField& F, const QVec& x) {
  if (!F.is_rational(x)) throw std::logic_error("rational_value: element outside Q");
  QVec one = F.one();
  for (std::size_t i = 0; i < F.n; ++i)
    if (one[i] != 0) return x[i] / one[i];
  throw std::logic_error("rational_value: degenerate basis");
}

// square root witness in F; quadratic fields. Trace and norm pin the
// candidate minimal polynomial, the rest is checking.
std::optional<QVec> sqrt_in_field(const TotallyRealField& F, const QVec& w) {
  if (F.is_zero(w)) return F.zero();
  if (F.n != 2) throw std::invalid_argument("sqrt_in_field: quadratic fields only");
  if (!F.totally_positive(w)) return std::nullopt;
  auto nu = rat_sqrt(F.norm(w));
  if (!nu) return std::nullopt;
  Rat tw = F.trace(w);
  for (int s = 0; s < 2; ++s) {
    if (s == 1 && *nu == 0) break;
    Rat v = s ? -*nu : *nu;
    auto t = rat_sqrt(tw + v + v);
    if (!t) continue;
    if (*t != 0) {
      QVec z = F.mul_rat(Rat(1) / *t, F.add(w, F.from_rational(v)));
      if (F.mul(z, z) == w) return z;
    } else if (F.is_rational(w)) {
      // trace-zero root: z = y*beta with beta trace-free
      QVec om(F.n, Rat(0));
      om[1] = 1;
      QVec beta = F.sub(F.mul_rat(Rat(2), om), F.from_rational(F.trace(om)));
      Rat b2 = rational_value(F, F.mul(beta, beta));
      auto y = rat_sqrt(rational_value(F, w) / b2);
      if (y) return F.mul_rat(*y, beta);
    }
  }
  return std::nullopt;
}

ZVec sign_pair(int a, int b) {
  ZVec e(2, Int(0));
  e[0] = a < 0 ? 1 : 0;
  e[1] = b < 0 ? 1 : 0;
  return e;
}

bool same_prime(const Prime& a, const Prime& b) { return a.p == b.p && a.ideal == b.ideal; }

void validate_residue_subgroup(const Prime& q, const std::vector<std::size_t>& mset) {
  if (mset.empty()) throw std::invalid_argument("residue subgroup: empty set");
  std::set<std::size_t> s(mset.begin(), mset.end());
  if (s.size() != mset.size()) throw std::invalid_argument("residue subgroup: repeated index");
  if (!s.count(q.one_idx)) throw std::invalid_argument("residue subgroup: missing identity");
  for (std::size_t a : mset) {
    if (a == 0 || a >= q.reps.size() || !q.in_prime_subfield[a])
      throw std::invalid_argument("residue subgroup: index outside the prime subfield units");
    for (std::size_t b : mset)
      if (!s.count(q.res_mul(a, b)))
        throw std::invalid_argument("residue subgroup: not closed under multiplication");
  }
}

std::vector<std::size_t> resolve_mset(const Prime& q, const std::vector<std::size_t>& m_residues) {
  std::vector<std::size_t> mset =
      m_residues.empty() ? prime_subfield_unit_residues(q) : m_residues;
  validate_residue_subgroup(q, mset);
  return mset;
}

// symbol table of (z, d)_p on the units of O/p^level
struct RamTable {
  std::size_t prime_index;
  LatticeQuotient quot;
  std::vector<int> symbol;
};

struct ThetaRun {
  const Prime* q = nullptr;
  FiniteAbelianGroup G;
  std::vector<std::size_t> mset;
  std::vector<int> levels;  // per s_finite entry
  std::vector<RamTable> rams;
};

int default_level(const TotallyRealField& F, const Prime& p, const ExtensionSpec& ext) {
  if (ext.trivial || split_type(F, p, ext.d) != SplitType::ramified) return 1;
  if (p.p != 2) return 1;
  return 2 * static_cast<int>(to_i64(ord_element(F, p, F.from_rational(Rat(2))))) + 1;
}

ThetaRun prepare_run(const InstanceSpec& spec) {
  if (!spec.F) throw std::invalid_argument("instance: missing field");
  const TotallyRealField& F = *spec.F;
  if (F.n != 2) throw std::invalid_argument("instance: real quadratic base required");
  check_narrow_class_number_one(F);

  if (spec.s_places.empty()) throw std::invalid_argument("instance: empty place list");
  std::set<std::pair<bool, std::size_t>> seen;
  std::size_t fin = 0;
  for (const PlaceRef& v : spec.s_places) {
    if (!seen.insert({v.is_infinite, v.index}).second)
      throw std::invalid_argument("instance: repeated place");
    if (v.is_infinite) {
      if (v.index >= F.n) throw std::invalid_argument("instance: real place out of range");
    } else {
      if (v.index >= spec.s_finite.size())
        throw std::invalid_argument("instance: finite place out of range");
      ++fin;
    }
  }
  for (std::size_t i = 0; i < F.n; ++i)
    if (!seen.count({true, i}))
      throw std::invalid_argument("instance: every real place must enter S");
  if (fin != spec.s_finite.size())
    throw std::invalid_argument("instance: unused finite place entry");

  if (spec.t_primes.empty()) throw std::invalid_argument("instance: empty T");
  if (spec.q_index >= spec.t_primes.size())
    throw std::invalid_argument("instance: smoothing index out of range");
  for (std::size_t i = 0; i < spec.t_primes.size(); ++i) {
    for (std::size_t j = i + 1; j < spec.t_primes.size(); ++j)
      if (same_prime(spec.t_primes[i], spec.t_primes[j]))
        throw std::invalid_argument("instance: repeated T prime");
    for (const Prime& p : spec.s_finite)
      if (same_prime(spec.t_primes[i], p))
        throw std::invalid_argument("instance: T meets S");
  }

  ThetaRun run;
  run.q = &spec.t_primes[spec.q_index];
  const Prime& q = *run.q;
  if (q.deg != 1)
    throw std::invalid_argument("instance: smoothing prime must have residue degree one");
  if (q.p < Int(F.n + 2))
    throw std::invalid_argument("instance: smoothing characteristic below the degree bound");

  if (!mu_t_check(F, spec.ext, spec.t_primes).pass)
    throw std::invalid_argument("instance: torsion cover condition fails for T");

  run.mset = resolve_mset(q, spec.m_residues);
  if (run.mset.size() + 1 != static_cast<std::size_t>(to_i64(q.p)))
    throw std::invalid_argument("instance: proper residue subgroups are not supported here");

  run.G = galois_group(spec.ext);
  if (!spec.ext.trivial) {
    if (is_square_in_field(F, spec.ext.d))
      throw std::invalid_argument("instance: extension generator is a square");
    if (split_type(F, q, spec.ext.d) == SplitType::ramified)
      throw std::invalid_argument("instance: smoothing prime ramified in the extension");
    for (const Prime& p : spec.t_primes)
      if (split_type(F, p, spec.ext.d) == SplitType::ramified)
        throw std::invalid_argument("instance: T prime ramified in the extension");
    // ramified primes all live over 2 N(d); each must sit inside S
    Int cand = 2 * abs_int(num(F.norm(spec.ext.d))) * den(F.norm(spec.ext.d));
    std::set<Int> seen_p;
    for (Int ell = 2; ell * ell <= cand; ++ell)
      while (cand % ell == 0) {
        seen_p.insert(ell);
        cand /= ell;
      }
    if (cand > 1) seen_p.insert(cand);
    for (const Int& ell : seen_p)
      for (const Prime& p : primes_above(F, ell)) {
        if (split_type(F, p, spec.ext.d) != SplitType::ramified) continue;
        bool found = false;
        for (const Prime& sp : spec.s_finite) found = found || same_prime(sp, p);
        if (!found)
          throw std::invalid_argument("instance: S must contain every ramified prime");
      }
  }

  for (std::size_t i = 0; i < spec.s_finite.size(); ++i) {
    int lev = default_level(F, spec.s_finite[i], spec.ext);
    auto it = spec.j_levels.find(i);
    if (it != spec.j_levels.end()) {
      if (it->second < lev)
        throw std::invalid_argument("instance: congruence level override below the stable depth");
      lev = it->second;
    }
    run.levels.push_back(lev);
  }

  if (!spec.ext.trivial) {
    Ideal O = ring_of_integers(F);
    for (std::size_t i = 0; i < spec.s_finite.size(); ++i) {
      const Prime& p = spec.s_finite[i];
      if (split_type(F, p, spec.ext.d) != SplitType::ramified) continue;
      RamTable rt;
      rt.prime_index = i;
      rt.quot = LatticeQuotient::make(O.lat, p.power(F, static_cast<std::size_t>(run.levels[i])));
      auto reps = rt.quot.all_reps();
      rt.symbol.assign(reps.size(), 0);
      for (std::size_t k = 0; k < reps.size(); ++k) {
        if (p.ideal.lat.contains(reps[k])) continue;
        rt.symbol[k] = hilbert_symbol(F, p, reps[k], spec.ext.d);
      }
      run.rams.push_back(std::move(rt));
    }
  }
  return run;
}

// Artin class of the ideal generated by a totally positive element in the
// residue class of z, read off the ramified-prime symbols
ZVec sigma_class(const ThetaRun& run, const QVec& z) {
  if (run.G.rank() == 0) return {};
  int s = 1;
  for (const RamTable& rt : run.rams) {
    int v = rt.symbol[rt.quot.flat_residue(z)];
    if (v == 0) throw std::logic_error("sigma_class: residue not coprime to the ramification");
    s *= v;
  }
  ZVec e(1, Int(s == 1 ? 0 : 1));
  return e;
}

GroupRingElement frob_factor(const TotallyRealField& F, const ExtensionSpec& ext,
                             const FiniteAbelianGroup& G, const Prime& p) {
  GroupRingElement t = ring_one(G);
  ZVec fr = frobenius_class(F, ext, p);
  t.coeff[G.index_of(G.inv(fr))] -= Rat(p.q());
  return t;
}

}  // namespace

bool is_square_in_field(const TotallyRealField& F, const QVec& w) {
  return sqrt_in_field(F, w).has_value();
}

std::vector<std::size_t> prime_subfield_unit_residues(const Prime& q) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i < q.reps.size(); ++i)
    if (q.in_prime_subfield[i]) out.push_back(i);
  return out;
}

MuReport mu_t_check(const TotallyRealField& F, const ExtensionSpec& ext,
                    const std::vector<Prime>& t) {
  MuReport rep;
  Int m = 2;
  if (!ext.trivial) {
    if (F.is_zero(ext.d) || is_square_in_field(F, ext.d))
      throw std::invalid_argument("mu check: extension generator must be a nonsquare");
    // candidate torsion orders k with phi(k) dividing 4, tested through the
    // square classes their cyclotomic generators impose
    bool k3 = is_square_in_field(F, F.mul_rat(Rat(-3), ext.d));
    bool k4 = is_square_in_field(F, F.neg(ext.d));
    bool k8 = k4 && is_square_in_field(F, F.from_rational(Rat(2)));
    bool k5 = false;
    auto r5 = sqrt_in_field(F, F.from_rational(Rat(5)));
    if (r5) {
      QVec delta = F.mul_rat(Rat(-1, 2), F.add(F.from_rational(Rat(5)), *r5));
      k5 = is_square_in_field(F, F.mul(delta, ext.d));
    }
    if (k3) m = lcm_int(m, Int(3));
    if (k4) m = lcm_int(m, Int(4));
    if (k8) m = lcm_int(m, Int(8));
    if (k5) m = lcm_int(m, Int(5));
  }
  rep.m = m;
  rep.pass = true;
  for (Int ell : {Int(2), Int(3), Int(5)}) {
    if (m % ell != 0) continue;
    bool covered = false;
    for (const Prime& p : t) covered = covered || p.p != ell;
    rep.pass = rep.pass && covered;
  }
  return rep;
}

FiniteAbelianGroup galois_group(const ExtensionSpec& ext) {
  if (ext.trivial) return FiniteAbelianGroup{};
  return FiniteAbelianGroup::cyclic(Int(2));
}

ZVec frobenius_class(const TotallyRealField& F, const ExtensionSpec& ext, const Prime& p) {
  if (ext.trivial) return {};
  switch (split_type(F, p, ext.d)) {
    case SplitType::split:
      return ZVec(1, Int(0));
    case SplitType::inert:
      return ZVec(1, Int(1));
    default:
      throw std::invalid_argument("frobenius_class: prime ramifies in the extension");
  }
}

GroupRingElement delta_t(const TotallyRealField& F, const ExtensionSpec& ext,
                         const std::vector<Prime>& t) {
  FiniteAbelianGroup G = galois_group(ext);
  GroupRingElement acc = ring_one(G);
  for (const Prime& p : t) acc = ring_mul(acc, frob_factor(F, ext, G, p));
  return acc;
}

ZVec rec_at_place(const TotallyRealField& F, const ExtensionSpec& ext, const QVec& u,
                  const PlaceRef& v, const std::vector<Prime>& s_finite) {
  if (ext.trivial) return {};
  int s;
  if (v.is_infinite) {
    s = hilbert_symbol_real(F, v.index, u, ext.d);
  } else {
    if (v.index >= s_finite.size()) throw std::invalid_argument("rec_at_place: place out of range");
    s = hilbert_symbol(F, s_finite[v.index], u, ext.d);
  }
  return ZVec(1, Int(s == 1 ? 0 : 1));
}

std::vector<ZVec> decomposition_group(const TotallyRealField& F, const ExtensionSpec& ext,
                                      const PlaceRef& v, const std::vector<Prime>& s_finite) {
  FiniteAbelianGroup G = galois_group(ext);
  if (ext.trivial) return {G.identity()};
  bool full;
  if (v.is_infinite) {
    full = F.embedding_sign(ext.d, v.index) < 0;
  } else {
    if (v.index >= s_finite.size())
      throw std::invalid_argument("decomposition_group: place out of range");
    full = split_type(F, s_finite[v.index], ext.d) != SplitType::split;
  }
  if (full) return G.elements();
  return {G.identity()};
}

Rat partial_zeta0(const TotallyRealField& F, const RayClassDatum& c, const Prime& q,
                  const std::vector<std::size_t>& m_residues, std::uint64_t seed) {
  if (F.n != 2) throw std::invalid_argument("partial_zeta0: real quadratic base required");
  auto mset = resolve_mset(q, m_residues);
  Ideal O = ring_of_integers(F);
  if (!O.lat.contains_lattice(c.b.lat))
    throw std::invalid_argument("partial_zeta0: integral class representative required");
  if (!O.lat.contains_lattice(c.m.lat))
    throw std::invalid_argument("partial_zeta0: integral congruence modulus required");
  if (!c.b.lat.contains(c.xi)) throw std::invalid_argument("partial_zeta0: xi outside the ideal");
  if (ord_ideal(F, q, c.b) != 0 || ord_ideal(F, q, c.m) != 0)
    throw std::invalid_argument("partial_zeta0: smoothing prime must avoid the class datum");
  for (const Prime& p : c.m_factors) {
    if (same_prime(p, q))
      throw std::invalid_argument("partial_zeta0: smoothing prime inside the modulus");
    if (ord_ideal(F, p, c.b) != 0)
      throw std::invalid_argument("partial_zeta0: representative not coprime to the modulus");
    if (ord_element(F, p, c.xi) != 0)
      throw std::invalid_argument("partial_zeta0: xi not coprime to the modulus");
  }

  Ideal mb = ideal_product(F, c.m, c.b);
  Ideal small = ideal_product(F, mb, q.ideal);
  FiniteTestFunction phi;
  phi.support = c.b.lat;
  phi.period = ideal_product(F, c.m, q.ideal);
  phi.quot = LatticeQuotient::make(c.b.lat, small.lat);
  auto reps = phi.quot.all_reps();
  phi.table.assign(reps.size(), Int(0));
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (!mb.lat.contains(F.sub(reps[i], c.xi))) continue;
    std::size_t r = q.residue(F, reps[i]);
    if (r == 0)
      phi.table[i] = -Int(mset.size());
    else if (std::find(mset.begin(), mset.end(), r) != mset.end())
      phi.table[i] = 1;
  }

  // unit subgroup fixing the congruence class, then the residue condition
  QVec epl = totally_positive_fundamental_unit(F);
  long bound = static_cast<long>(to_i64(num(ideal_norm(F, c.m))));
  long j1 = 0;
  QVec cur = F.one();
  for (long j = 1; j <= bound; ++j) {
    cur = F.mul(cur, epl);
    if (c.m.lat.contains(F.sub(cur, F.one()))) {
      j1 = j;
      break;
    }
  }
  if (j1 == 0) throw std::logic_error("partial_zeta0: runaway congruence order");
  std::size_t base = q.residue(F, F.pow(epl, Int(j1)));
  long k = 0;
  std::size_t r = base;
  long ordcap = static_cast<long>(q.mult_order(base));
  for (long kk = 1; kk <= ordcap; ++kk) {
    if (std::find(mset.begin(), mset.end(), r) != mset.end()) {
      k = kk;
      break;
    }
    r = q.res_mul(r, base);
  }
  if (k == 0)
    throw std::runtime_error("partial_zeta0: no unit power meets the residue subgroup");
  long j = j1 * k;
  SignedFundDomain D =
      signed_fundamental_domain(F, {F.pow(epl, Int(j))}, std::vector<int>(F.n, 1), seed);
  Rat v = pairing(F, q, D.d, phi, true).value;
  return v / Rat(Int(k));
}

ThetaElement stickelberger_theta(const InstanceSpec& spec) {
  ThetaRun run = prepare_run(spec);
  const TotallyRealField& F = *spec.F;
  const Prime& q = *run.q;
  Ideal O = ring_of_integers(F);
  Ideal P = q.ideal;
  for (std::size_t i = 0; i < spec.s_finite.size(); ++i)
    P = ideal_product(F, P,
                      Ideal{spec.s_finite[i].power(F, static_cast<std::size_t>(run.levels[i]))});

  FiniteTestFunction base;
  base.support = O.lat;
  base.period = P;
  base.quot = LatticeQuotient::make(O.lat, P.lat);
  auto reps = base.quot.all_reps();

  std::vector<Int> val(reps.size(), Int(0));
  std::vector<std::size_t> cls(reps.size(), 0);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    bool coprime = true;
    for (const Prime& p : spec.s_finite)
      if (p.ideal.lat.contains(reps[i])) {
        coprime = false;
        break;
      }
    if (!coprime) continue;
    std::size_t r = q.residue(F, reps[i]);
    val[i] = r == 0 ? -Int(run.mset.size()) : Int(1);
    cls[i] = run.G.index_of(sigma_class(run, reps[i]));
  }

  SignedFundDomain D = signed_fundamental_domain(F, {totally_positive_fundamental_unit(F)},
                                                 std::vector<int>(F.n, 1), spec.seed);

  ThetaElement out;
  out.fiber_zeta.assign(run.G.size(), Rat(0));
  out.integrality.weak_ok = true;
  out.integrality.strong_applicable = true;
  out.integrality.strong_ok = true;
  GroupRingElement th(run.G);
  for (std::size_t si = 0; si < run.G.size(); ++si) {
    FiniteTestFunction phi = base;
    phi.table.assign(reps.size(), Int(0));
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (val[i] != 0 && cls[i] == si) phi.table[i] = val[i];
    Rat z = pairing(F, q, D.d, phi, true).value;
    out.fiber_zeta[si] = z;
    IntegralityReport ir = integrality_report(z, q.p, F.n, true);
    out.integrality.weak_ok = out.integrality.weak_ok && ir.weak_ok;
    out.integrality.strong_applicable = out.integrality.strong_applicable && ir.strong_applicable;
    out.integrality.strong_ok = out.integrality.strong_ok && ir.strong_ok;
    th.coeff[run.G.index_of(run.G.inv(run.G.element(si)))] += z;
  }
  for (std::size_t ti = 0; ti < spec.t_primes.size(); ++ti) {
    if (ti == spec.q_index) continue;
    th = ring_mul(th, frob_factor(F, spec.ext, run.G, spec.t_primes[ti]));
  }
  if (!th.is_integral()) throw std::logic_error("stickelberger_theta: nonintegral result");
  out.theta = th;
  return out;
}

RegulatorElement gross_regulator(const InstanceSpec& spec) {
  ThetaRun run = prepare_run(spec);
  const TotallyRealField& F = *spec.F;
  STClassData cd = st_class_data(F, spec.s_finite, spec.t_primes);
  if (cd.gal_order != 1)
    throw std::runtime_error("gross_regulator: nontrivial split extension unsupported");
  STUnitBasis basis = st_unit_basis(F, spec.s_finite, spec.t_primes, spec.s_places, false);
  std::size_t r = basis.units.size();

  RegulatorElement out;
  out.h_st = cd.h_st;
  out.n_st = cd.n_st;
  out.basis = basis;
  GroupRingElement one = ring_one(run.G);
  std::vector<std::vector<GroupRingElement>> m(r);
  out.rec_matrix.assign(r, {});
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      ZVec rc = rec_at_place(F, spec.ext, basis.units[j], spec.s_places[i + 1], spec.s_finite);
      out.rec_matrix[i].push_back(rc);
      m[i].push_back(basis_element(run.G, run.G.reduce(rc)) - one);
    }
  GroupRingElement d = r ? ring_det(m) : ring_one(run.G);
  d.scale(Rat(cd.n_st));
  out.r = d;
  return out;
}

CongruenceReport verify_congruence(const InstanceSpec& spec) {
  ThetaElement th = stickelberger_theta(spec);
  RegulatorElement reg = gross_regulator(spec);
  const TotallyRealField& F = *spec.F;
  FiniteAbelianGroup G = galois_group(spec.ext);

  std::vector<std::vector<ZVec>> vfactors;
  for (std::size_t i = 1; i < spec.s_places.size(); ++i)
    vfactors.push_back(decomposition_group(F, spec.ext, spec.s_places[i], spec.s_finite));
  std::vector<std::vector<ZVec>> fine = vfactors;
  fine.insert(fine.begin(), G.elements());

  CongruenceReport rep;
  rep.theta = th.theta;
  rep.regulator = reg.r;
  rep.diff = th.theta - reg.r;
  rep.integral = th.theta.is_integral() && reg.r.is_integral();
  rep.modulus = ideal_lattice(G, fine);
  rep.congruent = reduce_mod(rep.diff, rep.modulus).is_zero();
  rep.coarse = reduce_mod(rep.diff, aug_power(G, spec.s_places.size())).is_zero();
  rep.vanish = reduce_mod(th.theta, ideal_lattice(G, vfactors)).is_zero();
  GroupRingElement twice = th.theta;
  twice.scale(Rat(2));
  rep.vanish_double = reduce_mod(twice, rep.modulus).is_zero();
  return rep;
}

HatElement hat_theta(const TotallyRealField& F, const Prime& q,
                     const std::vector<std::size_t>& m_residues, std::uint64_t seed) {
  if (F.n != 2) throw std::invalid_argument("hat_theta: real quadratic base required");
  check_narrow_class_number_one(F);
  if (q.p < Int(F.n + 2))
    throw std::invalid_argument("hat_theta: residue characteristic below the degree bound");
  auto mset = resolve_mset(q, m_residues);

  QVec eps = fundamental_unit(F);
  std::size_t re = q.residue(F, eps);
  if (re == 0) throw std::logic_error("hat_theta: unit vanishes at the smoothing prime");
  long j0 = 0;
  std::size_t cur = re;
  long cap = static_cast<long>(q.mult_order(re));
  for (long j = 1; j <= cap; ++j) {
    if (std::find(mset.begin(), mset.end(), cur) != mset.end()) {
      j0 = j;
      break;
    }
    cur = q.res_mul(cur, re);
  }
  if (j0 == 0) throw std::runtime_error("hat_theta: no wall unit with admissible residue");
  QVec eta = F.pow(eps, Int(j0));
  int s1 = F.embedding_sign(eta, 1);
  if (s1 >= 0)
    throw std::runtime_error("hat_theta: totally positive wall unit is not supported");

  QVec one = F.one();
  QVec eta2 = F.mul(eta, eta);
  ConeChain d0(F.n), d1(F.n);
  d0.add(Int(1), {one});
  d0.add(Int(1), {one, eta2});
  d1.add(Int(1), {one, eta});
  unsigned shift = static_cast<unsigned>(seed % 3);
  if (shift) {
    QVec t = F.pow(eta, Int(2 * shift));
    d0 = chain_mul_element(F, t, d0);
    d1 = chain_mul_element(F, t, d1);
  }

  FiniteTestFunction phi = make_f_rmw(F, q, {}, {}, mset, {});
  Rat z0 = pairing(F, q, d0, phi, true).value;
  Rat z1 = pairing(F, q, d1, phi, true).value;

  FiniteAbelianGroup N = FiniteAbelianGroup::signs(2);
  GroupRingElement cls(N);
  cls.coeff[N.index_of(sign_pair(1, 1))] = z0 - z1;
  cls.coeff[N.index_of(sign_pair(1, -1))] += z1;
  if (!cls.is_integral()) throw std::logic_error("hat_theta: nonintegral class");
  return HatElement{cls, z0, z1, eta, s1};
}

HatRegulatorElement hat_regulator(const TotallyRealField& F, const Prime& q) {
  if (F.n != 2) throw std::invalid_argument("hat_regulator: real quadratic base required");
  check_narrow_class_number_one(F);
  STClassData cd = st_class_data(F, {}, {q});
  STUnitBasis basis = st_unit_basis(F, {}, {q}, {PlaceRef{true, 0}, PlaceRef{true, 1}}, true);
  QVec u = basis.units[0];
  int s1 = F.embedding_sign(u, 1);

  FiniteAbelianGroup N = FiniteAbelianGroup::signs(2);
  GroupRingElement cls(N);
  if (s1 < 0) {
    cls.coeff[N.index_of(sign_pair(1, -1))] += Rat(cd.n_st);
    cls.coeff[N.index_of(sign_pair(1, 1))] -= Rat(cd.n_st);
  }
  return HatRegulatorElement{cls, u, cd.h_st, cd.n_st};
}

HatCongruenceReport verify_hat(const TotallyRealField& F, const Prime& q,
                               const std::vector<std::size_t>& m_residues, std::uint64_t seed) {
  HatElement th = hat_theta(F, q, m_residues, seed);
  HatRegulatorElement reg = hat_regulator(F, q);
  FiniteAbelianGroup N = FiniteAbelianGroup::signs(2);
  std::vector<ZVec> flip = {N.identity(), sign_pair(1, -1)};

  HatCongruenceReport rep;
  rep.theta = th.cls;
  rep.regulator = reg.cls;
  rep.diff = th.cls - reg.cls;
  rep.modulus = ideal_lattice(N, {N.elements(), flip});
  rep.congruent = reduce_mod(rep.diff, rep.modulus).is_zero();
  rep.vanish = reduce_mod(th.cls, ideal_lattice(N, {flip})).is_zero();
  return rep;
}

CnfFloatReport cnf_float_check(const InstanceSpec& spec, double t_min, double t_max) {
  prepare_run(spec);
  if (!spec.ext.trivial)
    throw std::invalid_argument("cnf_float_check: trivial extension only");
  if (!spec.s_finite.empty())
    throw std::invalid_argument("cnf_float_check: infinite S only");
  const TotallyRealField& F = *spec.F;

  STClassData cd = st_class_data(F, {}, spec.t_primes);
  STUnitBasis basis = st_unit_basis(F, {}, spec.t_primes, spec.s_places, false);
  if (basis.units.size() != 1) throw std::logic_error("cnf_float_check: rank one expected");
  double u1 = std::abs(F.embedding_double(basis.units[0], spec.s_places[1].index));
  CnfFloatReport rep;
  rep.regulator_side = to_double(cd.n_st) * (-std::log(u1));

  SignedFundDomain D = signed_fundamental_domain(F, {totally_positive_fundamental_unit(F)},
                                                 std::vector<int>(F.n, 1), spec.seed);
  // slope window of the domain support
  double rmin = 0, rmax = 0;
  bool first = true;
  for (const auto& [key, term] : D.d.terms)
    for (const QVec& g : term.gens) {
      double a = F.embedding_double(g, 0), b = F.embedding_double(g, 1);
      double ratio = b / a;
      if (first || ratio < rmin) rmin = ratio;
      if (first || ratio > rmax) rmax = ratio;
      first = false;
    }
  if (first) throw std::logic_error("cnf_float_check: empty domain");
  rmin *= 0.99;
  rmax *= 1.01;

  double X = 40.0 / t_min;
  double e0max = std::sqrt(X / rmin) * 1.01, e1max = std::sqrt(X * rmax) * 1.01;
  // integer coordinate box from the inverse embedding matrix
  double E[2][2];
  for (std::size_t j = 0; j < 2; ++j) {
    QVec w(F.n, Rat(0));
    w[j] = 1;
    E[0][j] = F.embedding_double(w, 0);
    E[1][j] = F.embedding_double(w, 1);
  }
  double detE = E[0][0] * E[1][1] - E[0][1] * E[1][0];
  double alo = 0, ahi = 0, blo = 0, bhi = 0;
  bool cfirst = true;
  for (double e0 : {0.0, e0max})
    for (double e1 : {0.0, e1max}) {
      double a = (E[1][1] * e0 - E[0][1] * e1) / detE;
      double b = (-E[1][0] * e0 + E[0][0] * e1) / detE;
      alo = cfirst ? a : std::min(alo, a);
      ahi = cfirst ? a : std::max(ahi, a);
      blo = cfirst ? b : std::min(blo, b);
      bhi = cfirst ? b : std::max(bhi, b);
      cfirst = false;
    }
  long amin = static_cast<long>(std::floor(alo)), amax = static_cast<long>(std::ceil(ahi));
  long bmin = static_cast<long>(std::floor(blo)), bmax = static_cast<long>(std::ceil(bhi));

  std::vector<std::pair<double, double>> pts;  // norm, weight
  for (long a = amin - 1; a <= amax + 1; ++a)
    for (long b = bmin - 1; b <= bmax + 1; ++b) {
      if (a == 0 && b == 0) continue;
      double e0 = E[0][0] * a + E[0][1] * b;
      double e1 = E[1][0] * a + E[1][1] * b;
      if (e0 <= 0 || e1 <= 0 || e0 * e1 > X * 1.001) continue;
      QVec x(F.n, Rat(0));
      x[0] = Rat(Int(a));
      x[1] = Rat(Int(b));
      Int w = indicator_eval(D.d, x);
      if (w == 0) continue;
      double fx = to_double(w);
      for (const Prime& p : spec.t_primes)
        if (p.ideal.lat.contains(x)) fx *= -(to_double(p.q()) - 1.0);
      pts.push_back({e0 * e1, fx});
    }

  double lr = std::log(t_max / t_min);
  int steps = static_cast<int>(std::ceil(lr / 0.02));
  double h = lr / steps;
  double lhs = 0;
  for (int kq = 0; kq < steps; ++kq) {
    double tm = t_min * std::exp((kq + 0.5) * h);
    double A = 0;
    for (const auto& [nx, wx] : pts) A += wx * std::exp(-tm * nx);
    lhs += A * h;
  }
  double head = 0;
  for (const auto& [nx, wx] : pts) head += wx * std::exp(-t_min * nx);
  lhs += head;

  rep.series_side = lhs;
  double denom = std::max(std::abs(rep.regulator_side), 1e-12);
  rep.rel_err = std::abs(lhs - rep.regulator_side) / denom;
  rep.pass = rep.rel_err < 1e-3;
  return rep;
}

}  // namespace shintani

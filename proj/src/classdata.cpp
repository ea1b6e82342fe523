#include "shintani/classdata.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "shintani/interval.hpp"

namespace shintani {

namespace {

// normalize a nonzero non-torsion element to value > 1 at place 0
QVec normalize_above_one(const TotallyRealField& F, QVec u) {
  if (F.embedding_sign(u, 0) < 0) u = F.neg(u);
  int c = F.compare_at_place(u, F.one(), 0);
  if (c == 0) throw std::runtime_error("unit collapses to 1 at place 0");
  if (c < 0) u = F.inv(u);
  return u;
}

bool is_square_int(const Int& v, Int& root) {
  if (v < 0) return false;
  root = boost::multiprecision::sqrt(v);
  return root * root == v;
}

Int int_norm(const TotallyRealField& F, const QVec& x) {
  Rat n = F.norm(x);
  if (den(n) != 1) throw std::runtime_error("norm not integral");
  return num(n);
}

}  // namespace

QVec fundamental_unit(const TotallyRealField& F) {
  if (F.n != 2) throw std::invalid_argument("fundamental_unit: real quadratic only");
  QVec w0 = {Rat(1), Rat(0)}, w1 = {Rat(0), Rat(1)};
  Int A = int_norm(F, w0);
  Int C = int_norm(F, w1);
  Int B = int_norm(F, F.add(w0, w1)) - A - C;
  if (A == 0) throw std::runtime_error("degenerate basis vector");

  std::vector<QVec> found;
  long first_y = -1;
  for (long y = 1; y <= 200000; ++y) {
    Int yy = Int(y);
    for (int s : {1, -1}) {
      Int disc = B * B * yy * yy - 4 * A * (C * yy * yy - s);
      Int r;
      if (!is_square_int(disc, r)) continue;
      for (int pm : {1, -1}) {
        Int numx = -B * yy + (pm > 0 ? r : -r);
        if (numx % (2 * A) == 0) found.push_back({Rat(numx / (2 * A)), Rat(yy)});
        if (r == 0) break;
      }
    }
    if (!found.empty() && first_y < 0) first_y = y;
    if (first_y > 0 && y >= first_y + 2) break;
  }
  if (found.empty()) throw std::runtime_error("fundamental unit search exhausted");

  QVec best;
  for (const QVec& cand : found) {
    QVec u = normalize_above_one(F, cand);
    if (best.empty() || F.compare_at_place(u, best, 0) < 0) best = u;
  }
  return best;
}

QVec totally_positive_fundamental_unit(const TotallyRealField& F) {
  QVec e0 = fundamental_unit(F);
  if (F.totally_positive(e0)) return e0;
  QVec sq = F.mul(e0, e0);
  if (!F.totally_positive(sq)) throw std::runtime_error("unit square not totally positive");
  return sq;
}

QVec ideal_generator(const TotallyRealField& F, const Ideal& a, long height_cap) {
  if (F.n == 1) {
    Rat g = Rat(a.lat.basis.at(0, 0), a.lat.denom);
    return {g};
  }
  if (F.n != 2) throw std::invalid_argument("ideal_generator: degree <= 2 only");
  Rat target = ideal_norm(F, a);
  for (long h = 1; h <= height_cap; ++h) {
    for (long x = -h; x <= h; ++x) {
      for (long y = -h; y <= h; ++y) {
        if (std::max(std::abs(x), std::abs(y)) != h) continue;
        QVec cand = {Rat(x), Rat(y)};
        if (abs(F.norm(cand)) != target) continue;
        if (principal_ideal(F, cand) == a) return cand;
      }
    }
  }
  throw std::runtime_error("no principal generator found under height cap");
}

void check_narrow_class_number_one(const TotallyRealField& F) {
  if (F.n == 1) return;
  if (F.n != 2) throw std::invalid_argument("class data supports degree <= 2 only");

  // field discriminant from the trace form of the supplied order
  QMat tr(2, 2);
  QVec w[2] = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) tr.at(i, j) = F.trace(F.mul(w[i], w[j]));
  Rat disc = det(tr);
  if (den(disc) != 1 || disc <= 0) throw std::runtime_error("bad trace form");

  // Minkowski bound sqrt(disc)/2: every class contains an integral ideal of
  // norm below it, so principality of the small primes settles h = 1
  for (Int p = 2; 4 * p * p <= num(disc); ++p) {
    bool prime = true;
    for (Int d = 2; d * d <= p; ++d)
      if (p % d == 0) prime = false;
    if (!prime) continue;
    for (const Prime& P : primes_above(F, p)) {
      try {
        ideal_generator(F, P.ideal, 200);
      } catch (const std::runtime_error&) {
        throw std::runtime_error("class number is not one");
      }
    }
  }

  QVec e0 = fundamental_unit(F);
  if (int_norm(F, e0) != -1)
    throw std::runtime_error("fundamental unit has norm +1, narrow class number exceeds one");
}

namespace {

Ideal product_of(const TotallyRealField& F, const std::vector<Prime>& ps) {
  Ideal m = ring_of_integers(F);
  for (const Prime& P : ps) m = ideal_product(F, m, P.ideal);
  return m;
}

std::vector<QVec> s_unit_generators(const TotallyRealField& F, const std::vector<Prime>& s_finite) {
  std::vector<QVec> gens;
  gens.push_back(F.from_rational(Rat(-1)));
  if (F.n >= 2) gens.push_back(fundamental_unit(F));
  for (const Prime& P : s_finite) gens.push_back(ideal_generator(F, P.ideal));
  return gens;
}

}  // namespace

STClassData st_class_data(const TotallyRealField& F, const std::vector<Prime>& s_finite,
                          const std::vector<Prime>& t) {
  check_narrow_class_number_one(F);

  STClassData out;
  out.gal_order = 1;  // trivial once the narrow class group is trivial

  ResidueRing R = residue_ring(F, product_of(F, t), t);
  std::size_t units = 0;
  for (std::size_t i = 0; i < R.size(); ++i)
    if (R.is_unit[i]) ++units;

  // closure walk of the subgroup generated by global S-unit residues
  std::vector<std::size_t> gen_idx;
  for (const QVec& g : s_unit_generators(F, s_finite)) {
    std::size_t gi = R.index_of(F, g);
    if (!R.is_unit[gi]) throw std::runtime_error("S-unit residue not invertible, S and T overlap");
    gen_idx.push_back(gi);
  }
  std::set<std::size_t> seen = {R.index_of(F, F.one())};
  std::vector<std::size_t> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t a : frontier) {
      for (std::size_t g : gen_idx) {
        std::size_t b = R.index_of(F, F.mul(R.reps[a], R.reps[g]));
        if (seen.insert(b).second) next.push_back(b);
      }
    }
    frontier = std::move(next);
  }
  if (units % seen.size() != 0) throw std::runtime_error("subgroup size does not divide unit count");
  out.h_st = Int(units / seen.size());
  out.n_st = -out.h_st / out.gal_order;
  return out;
}

int st_log_det_sign(const TotallyRealField& F, const std::vector<Prime>& s_finite,
                    const std::vector<QVec>& units, const std::vector<PlaceRef>& places,
                    const Rat& tol) {
  std::size_t r = units.size();
  if (places.size() != r + 1) throw std::invalid_argument("need r+1 places for r units");
  if (r == 0) return 1;

  Rat cur = tol;
  for (int round = 0; round < 40; ++round) {
    std::vector<std::vector<QInterval>> m(r, std::vector<QInterval>(r));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        const PlaceRef& v = places[j + 1];
        if (v.is_infinite) {
          // entry -ln|rho(u)|
          Rat w = cur;
          QInterval e = F.embedding_enclosure(units[i], v.index, w);
          while (e.contains_zero()) {
            w /= 16;
            e = F.embedding_enclosure(units[i], v.index, w);
          }
          Rat lo = e.lo < 0 ? -e.hi : e.lo, hi = e.lo < 0 ? -e.lo : e.hi;
          QInterval a = ln_enclosure(lo, cur), b = ln_enclosure(hi, cur);
          m[i][j] = QInterval{-b.hi, -a.lo};
        } else {
          const Prime& P = s_finite.at(v.index);
          Int o = ord_element(F, P, units[i]);
          QInterval lq = ln_enclosure(Rat(P.q()), cur);
          Rat elo = Rat(o) * lq.lo, ehi = Rat(o) * lq.hi;
          if (elo > ehi) std::swap(elo, ehi);
          m[i][j] = QInterval{elo, ehi};
        }
      }
    }
    QInterval d = det_interval(m);
    int s = d.certain_sign();
    if (s != 0) return s;
    cur /= 64;
  }
  throw std::runtime_error("log determinant sign did not certify");
}

STUnitBasis st_unit_basis(const TotallyRealField& F, const std::vector<Prime>& s_finite,
                          const std::vector<Prime>& t, const std::vector<PlaceRef>& places,
                          bool hat_convention) {
  STUnitBasis out;
  out.places = places;
  out.hat_convention = hat_convention;
  if (F.n == 1) {
    if (places.size() != 1 + s_finite.size()) throw std::invalid_argument("place list size");
    return out;  // rank zero
  }
  check_narrow_class_number_one(F);

  std::vector<QVec> gens = s_unit_generators(F, s_finite);
  std::size_t ng = gens.size();  // r + 1
  std::size_t r = ng - 1;
  if (places.size() != r + 1) throw std::invalid_argument("need r+1 places for rank-r basis");

  std::size_t nt = t.size();
  if (nt == 0) {
    out.units.assign(gens.begin() + 1, gens.end());
    int want0 = hat_convention ? -1 : 1;
    if (st_log_det_sign(F, s_finite, out.units, places) != want0) {
      out.units[0] = F.inv(out.units[0]);
      if (st_log_det_sign(F, s_finite, out.units, places) != want0)
        throw std::runtime_error("determinant convention unreachable");
    }
    return out;
  }

  // exponent vectors killed by every T-residue map, via per-prime discrete logs
  ZMat stack(ng + nt, nt);
  for (std::size_t k = 0; k < nt; ++k) {
    const Prime& P = t[k];
    Int qm1 = P.q() - 1;
    std::size_t g = 0;
    for (std::size_t i = 1; i < P.reps.size(); ++i) {
      if (Int(P.mult_order(i)) == qm1) {
        g = i;
        break;
      }
    }
    if (g == 0) throw std::runtime_error("no residue field generator");
    std::map<std::size_t, Int> dlog;
    std::size_t acc = P.one_idx;
    for (Int e = 0; e < qm1; ++e) {
      dlog[acc] = e;
      acc = P.res_mul(acc, g);
    }
    for (std::size_t i = 0; i < ng; ++i) {
      std::size_t ri = P.residue(F, gens[i]);
      if (ri == 0) throw std::runtime_error("S-unit vanishes at a T-prime");
      stack.at(i, k) = dlog.at(ri);
    }
    stack.at(ng + k, k) = qm1;
  }

  ZMat kern = left_kernel(stack);
  ZMat kvecs(kern.rows, ng);
  for (std::size_t i = 0; i < kern.rows; ++i)
    for (std::size_t j = 0; j < ng; ++j) kvecs.at(i, j) = kern.at(i, j);
  Lattice K{hnf(std::move(kvecs)), Int(1)};
  if (K.basis.rows != ng) throw std::runtime_error("congruence-unit lattice rank defect");

  // drop the torsion-sign coordinate, rebuild, then lift each basis vector's sign
  ZMat proj(ng, r);
  for (std::size_t i = 0; i < ng; ++i)
    for (std::size_t j = 0; j < r; ++j) proj.at(i, j) = K.basis.at(i, j + 1);
  ZMat w = hnf(std::move(proj));
  if (w.rows != r) throw std::runtime_error("unit exponent rank defect");

  for (std::size_t row = 0; row < r; ++row) {
    int sign_a = -1;
    for (int a = 0; a <= 1; ++a) {
      QVec full(ng);
      full[0] = Rat(a);
      for (std::size_t i = 0; i < r; ++i) full[i + 1] = Rat(w.at(row, i));
      if (K.contains(full)) {
        if (sign_a >= 0) throw std::runtime_error("torsion in congruence unit group");
        sign_a = a;
      }
    }
    if (sign_a < 0) throw std::runtime_error("sign lift failed");
    QVec u = sign_a ? F.from_rational(Rat(-1)) : F.one();
    for (std::size_t i = 0; i < r; ++i) u = F.mul(u, F.pow(gens[i + 1], w.at(row, i)));
    out.units.push_back(u);
  }

  int s = st_log_det_sign(F, s_finite, out.units, places);
  int want = hat_convention ? -1 : (t.size() % 2 == 0 ? 1 : -1);
  if (s != want) {
    out.units[0] = F.inv(out.units[0]);
    if (st_log_det_sign(F, s_finite, out.units, places) != want)
      throw std::runtime_error("determinant convention unreachable");
  }
  return out;
}

}  // namespace shintani

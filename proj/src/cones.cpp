#include "shintani/cones.hpp"

#include <algorithm>
#include <random>

#include "shintani/interval.hpp"

namespace shintani {

int ConeSpace::orientation(const std::vector<QVec>& xs) const {
  if (field) return field->orientation(xs);
  if (xs.size() != dim) throw std::invalid_argument("orientation: need n vectors");
  QMat m(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    if (xs[j].size() != dim) throw std::invalid_argument("orientation: shape mismatch");
    for (std::size_t i = 0; i < dim; ++i) m.at(i, j) = xs[j][i];
  }
  return sgn(det(m));
}

IrrationalDirection IrrationalDirection::perturbed(const QVec& base) {
  IrrationalDirection q;
  q.kind = Kind::CoordPerturbed;
  q.coords.resize(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    QPoly p(i + 2, Rat(0));
    p[0] = base[i];
    p[i + 1] = 1;  // distinct delta powers keep every sign query nonzero
    q.coords[i] = std::move(p);
  }
  return q;
}

IrrationalDirection IrrationalDirection::axis_dir(std::size_t axis, int dir) {
  if (dir != 1 && dir != -1) throw std::invalid_argument("axis direction must be +-1");
  IrrationalDirection q;
  q.kind = Kind::EmbeddingAxis;
  q.axis = axis;
  q.dir = dir;
  return q;
}

namespace {

std::size_t vec_rank(std::size_t n, const std::vector<QVec>& xs) {
  QMat m(xs.size(), n);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].size() != n) throw std::invalid_argument("rank: shape mismatch");
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = xs[i][j];
  }
  return rank(m);
}

}  // namespace

bool general_position(std::size_t n, const std::vector<QVec>& xs) {
  std::size_t m = xs.size();
  if (m <= n) return vec_rank(n, xs) == m;
  // every n-subset independent
  std::vector<std::size_t> idx(n);
  std::vector<QVec> sub(n);
  std::vector<bool> pick(m, false);
  std::fill(pick.begin(), pick.begin() + n, true);
  do {
    std::size_t k = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (pick[i]) sub[k++] = xs[i];
    if (vec_rank(n, sub) != n) return false;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return true;
}

void ConeChain::add(const Int& c, std::vector<QVec> gens) {
  if (c == 0) return;
  if (gens.empty() || gens.size() > n) throw std::invalid_argument("cone term size out of range");
  if (vec_rank(n, gens) != gens.size()) throw std::invalid_argument("cone generators dependent");
  std::vector<QVec> key = gens;
  std::sort(key.begin(), key.end());
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms.emplace(std::move(key), ConeTerm{c, std::move(gens)});
  } else {
    it->second.coeff += c;
    if (it->second.coeff == 0) terms.erase(it);
  }
}

ConeChain& ConeChain::operator+=(const ConeChain& o) {
  if (n != o.n) throw std::invalid_argument("chain dimension mismatch");
  for (const auto& [k, t] : o.terms) add(t.coeff, t.gens);
  return *this;
}

ConeChain& ConeChain::operator-=(const ConeChain& o) {
  if (n != o.n) throw std::invalid_argument("chain dimension mismatch");
  for (const auto& [k, t] : o.terms) add(-t.coeff, t.gens);
  return *this;
}

void ConeChain::scale(const Int& c) {
  if (c == 0) {
    terms.clear();
    return;
  }
  for (auto& [k, t] : terms) t.coeff *= c;
}

bool ConeChain::operator==(const ConeChain& o) const {
  if (n != o.n || terms.size() != o.terms.size()) return false;
  auto a = terms.begin();
  auto b = o.terms.begin();
  for (; a != terms.end(); ++a, ++b) {
    if (a->first != b->first || a->second.coeff != b->second.coeff) return false;
  }
  return true;
}

ConeChain operator+(ConeChain a, const ConeChain& b) {
  a += b;
  return a;
}

ConeChain operator-(ConeChain a, const ConeChain& b) {
  a -= b;
  return a;
}

ConeChain operator-(ConeChain a) {
  a.scale(Int(-1));
  return a;
}

void TupleChain::add(const Int& c, const std::vector<QVec>& tuple) {
  if (c == 0) return;
  if (!general_position(n, tuple)) throw std::invalid_argument("tuple not in general position");
  auto it = terms.find(tuple);
  if (it == terms.end()) {
    terms.emplace(tuple, c);
  } else {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

TupleChain boundary(const TupleChain& a) {
  TupleChain out(a.n);
  for (const auto& [tuple, c] : a.terms) {
    for (std::size_t j = 0; j < tuple.size(); ++j) {
      std::vector<QVec> sub;
      sub.reserve(tuple.size() - 1);
      for (std::size_t i = 0; i < tuple.size(); ++i)
        if (i != j) sub.push_back(tuple[i]);
      out.add(j % 2 == 0 ? c : -c, sub);
    }
  }
  return out;
}

bool cone_contains(const std::vector<QVec>& gens, const QVec& z) {
  if (gens.empty()) throw std::invalid_argument("cone_contains: no generators");
  std::size_t dim = z.size(), k = gens.size();
  QMat m(dim, k + 1);
  for (std::size_t j = 0; j < k; ++j) {
    if (gens[j].size() != dim) throw std::invalid_argument("cone_contains: shape mismatch");
    for (std::size_t i = 0; i < dim; ++i) m.at(i, j) = gens[j][i];
  }
  for (std::size_t i = 0; i < dim; ++i) m.at(i, k) = z[i];
  auto pivots = rref(m);
  std::size_t grank = 0;
  bool outside = false;
  for (auto c : pivots) {
    if (c == k)
      outside = true;
    else
      ++grank;
  }
  if (grank != k) throw std::invalid_argument("cone_contains: dependent generators");
  if (outside) return false;
  for (std::size_t i = 0; i < k; ++i)
    if (m.at(i, k) <= 0) return false;
  return true;
}

Int indicator_eval(const ConeChain& chain, const QVec& z) {
  Int v = 0;
  for (const auto& [key, t] : chain.terms)
    if (cone_contains(t.gens, z)) v += t.coeff;
  return v;
}

namespace {

Rat poly_coeff(const QPoly& p, std::size_t k) { return k < p.size() ? p[k] : Rat(0); }

// sign of alpha*rho_0(y) + beta*rho_1(y) for a degree-2 field
int pair_sign(const TotallyRealField& F, const QVec& y, const Rat& alpha, const Rat& beta) {
  if (alpha == 0 && beta == 0) return 0;
  Rat tr = F.trace(y);
  if (alpha == beta) return sgn(alpha * tr);
  if (F.is_rational(y)) return sgn((alpha + beta) * tr / 2);
  // v = beta*tr + (alpha-beta)*rho_0(y), nonzero since rho_0(y) is irrational
  Rat w(1, 1024);
  for (int round = 0; round < 200; ++round) {
    QInterval e = F.embedding_enclosure(y, 0, w);
    QInterval v = QInterval{beta * tr} + QInterval{alpha - beta} * e;
    int s = v.certain_sign();
    if (s != 0) return s;
    w /= 64;
  }
  throw std::runtime_error("pair sign did not certify");
}

int minor_sign_plain(const ConeSpace& sp, const std::vector<QVec>& xs, std::size_t row,
                     std::size_t col) {
  std::size_t N = sp.n();
  QMat m(N - 1, N - 1);
  std::size_t ii = 0;
  for (std::size_t i = 0; i < N; ++i) {
    if (i == row) continue;
    std::size_t jj = 0;
    for (std::size_t c = 0; c < N; ++c) {
      if (c == col) continue;
      m.at(ii, jj) = xs[c][i];
      ++jj;
    }
    ++ii;
  }
  return sgn(det(m));
}

Rat minor_det_plain(const ConeSpace& sp, const std::vector<QVec>& xs, std::size_t row,
                    std::size_t col) {
  std::size_t N = sp.n();
  if (N == 1) return Rat(1);
  QMat m(N - 1, N - 1);
  std::size_t ii = 0;
  for (std::size_t i = 0; i < N; ++i) {
    if (i == row) continue;
    std::size_t jj = 0;
    for (std::size_t c = 0; c < N; ++c) {
      if (c == col) continue;
      m.at(ii, jj) = xs[c][i];
      ++jj;
    }
    ++ii;
  }
  return det(m);
}

}  // namespace

int direction_sign(const ConeSpace& sp, const std::vector<QVec>& xs, std::size_t j,
                   const IrrationalDirection& q) {
  std::size_t N = sp.n();
  if (xs.size() != N || j >= N) throw std::invalid_argument("direction_sign: shape mismatch");

  if (q.kind == IrrationalDirection::Kind::EmbeddingAxis) {
    if (q.axis >= N) throw std::invalid_argument("direction axis out of range");
    int parity = (q.axis + j) % 2 == 0 ? 1 : -1;
    if (N == 1) return q.dir;
    if (!sp.field) {
      int s = minor_sign_plain(sp, xs, q.axis, j);
      if (s == 0) throw std::runtime_error("direction lies in a rational wall");
      return q.dir * parity * s;
    }
    if (N == 2) {
      int s = sp.field->embedding_sign(xs[1 - j], 1 - q.axis);
      if (s == 0) throw std::runtime_error("direction lies in a rational wall");
      return q.dir * parity * s;
    }
    Rat w(1, 1024);
    for (int round = 0; round < 60; ++round) {
      std::vector<std::vector<QInterval>> m;
      for (std::size_t i = 0; i < N; ++i) {
        if (i == q.axis) continue;
        std::vector<QInterval> rrow;
        for (std::size_t c = 0; c < N; ++c) {
          if (c == j) continue;
          rrow.push_back(sp.field->embedding_enclosure(xs[c], i, w));
        }
        m.push_back(std::move(rrow));
      }
      int s = det_interval(m).certain_sign();
      if (s != 0) return q.dir * parity * s;
      w /= 64;
    }
    throw std::runtime_error("minor sign did not certify");
  }

  // CoordPerturbed
  if (q.coords.size() != N) throw std::invalid_argument("direction coordinate count mismatch");
  if (!sp.field) {
    QPoly detp;
    for (std::size_t c = 0; c < N; ++c) {
      Rat cof = ((c + j) % 2 == 0 ? 1 : -1) * minor_det_plain(sp, xs, c, j);
      if (cof == 0) continue;
      if (detp.size() < q.coords[c].size()) detp.resize(q.coords[c].size(), Rat(0));
      for (std::size_t k = 0; k < q.coords[c].size(); ++k) detp[k] += cof * q.coords[c][k];
    }
    qp_trim(detp);
    if (detp.empty()) throw std::runtime_error("direction not generic for this tuple");
    for (const Rat& c : detp)
      if (c != 0) return sgn(c);
    throw std::logic_error("unreachable");
  }
  if (N == 1) {
    for (const Rat& c : q.coords[0])
      if (c != 0) return sgn(c);
    throw std::runtime_error("direction not generic for this tuple");
  }
  if (N != 2) throw std::runtime_error("perturbed direction over a field supports degree <= 2");
  const QVec& y = xs[1 - j];
  std::size_t maxdeg = std::max(q.coords[0].size(), q.coords[1].size());
  for (std::size_t k = 0; k < maxdeg; ++k) {
    // delta^k coefficient of the determinant, a combination of both embeddings of y
    Rat beta = (j % 2 == 0 ? 1 : -1) * poly_coeff(q.coords[0], k);
    Rat alpha = (j % 2 == 0 ? -1 : 1) * poly_coeff(q.coords[1], k);
    int s = pair_sign(*sp.field, y, alpha, beta);
    if (s != 0) return s;
  }
  throw std::runtime_error("direction not generic for this tuple");
}

ConeChain psi(const ConeSpace& sp, const std::vector<QVec>& tuple) {
  std::size_t N = sp.n();
  if (tuple.size() != N + 1) throw std::invalid_argument("psi: need n+1 vectors");
  if (!general_position(N, tuple)) throw std::invalid_argument("psi: tuple not in general position");
  std::vector<int> s(N + 1);
  for (std::size_t jj = 0; jj <= N; ++jj) {
    std::vector<QVec> omit;
    for (std::size_t i = 0; i <= N; ++i)
      if (i != jj) omit.push_back(tuple[i]);
    int r = sp.orientation(omit);
    if (r == 0) throw std::invalid_argument("psi: degenerate subtuple");
    s[jj] = (jj % 2 == 0 ? 1 : -1) * r;
  }
  ConeChain out(N);
  for (unsigned mask = 1; mask < (1u << (N + 1)); ++mask) {
    unsigned k = static_cast<unsigned>(__builtin_popcount(mask));
    if (k > N) continue;
    int u = 0;
    bool mixed = false;
    for (std::size_t jj = 0; jj <= N; ++jj) {
      if (mask & (1u << jj)) continue;
      if (u == 0)
        u = s[jj];
      else if (s[jj] != u)
        mixed = true;
    }
    if (mixed) continue;
    std::vector<QVec> gens;
    for (std::size_t jj = 0; jj <= N; ++jj)
      if (mask & (1u << jj)) gens.push_back(tuple[jj]);
    out.add(Int(u), std::move(gens));
  }
  return out;
}

ConeChain psi_chain(const ConeSpace& sp, const TupleChain& a) {
  ConeChain out(sp.n());
  for (const auto& [tuple, c] : a.terms) {
    ConeChain p = psi(sp, tuple);
    p.scale(c);
    out += p;
  }
  return out;
}

ConeChain phi_q(const ConeSpace& sp, const std::vector<QVec>& tuple, const IrrationalDirection& q) {
  std::size_t N = sp.n();
  if (tuple.size() != N) throw std::invalid_argument("phi_q: need n vectors");
  int r = sp.orientation(tuple);
  if (r == 0) throw std::invalid_argument("phi_q: dependent tuple");
  unsigned jneg = 0;
  for (std::size_t jj = 0; jj < N; ++jj) {
    int sg = direction_sign(sp, tuple, jj, q) * r;
    if (sg < 0) jneg |= (1u << jj);
  }
  ConeChain out(N);
  for (unsigned mask = 1; mask < (1u << N); ++mask) {
    if ((mask & jneg) != jneg) continue;
    std::vector<QVec> gens;
    for (std::size_t jj = 0; jj < N; ++jj)
      if (mask & (1u << jj)) gens.push_back(tuple[jj]);
    out.add(Int(r), std::move(gens));
  }
  return out;
}

ConeChain phi_q_chain(const ConeSpace& sp, const TupleChain& a, const IrrationalDirection& q) {
  ConeChain out(sp.n());
  for (const auto& [tuple, c] : a.terms) {
    ConeChain p = phi_q(sp, tuple, q);
    p.scale(c);
    out += p;
  }
  return out;
}

Int hill_value(const ConeSpace& sp, const std::vector<QVec>& xs, const QVec& y) {
  std::size_t N = sp.n();
  if (xs.size() != N + 1) throw std::invalid_argument("hill_value: need n+1 vectors");
  std::vector<QVec> all = xs;
  all.push_back(y);
  if (!general_position(N, all)) throw std::invalid_argument("hill_value: not in general position");
  Int v = 0;
  for (std::size_t jj = 0; jj <= N; ++jj) {
    std::vector<QVec> omit;
    for (std::size_t i = 0; i <= N; ++i)
      if (i != jj) omit.push_back(xs[i]);
    int r = sp.orientation(omit);
    if (cone_contains(omit, y)) v += Int((jj % 2 == 0 ? 1 : -1) * r);
  }
  return v;
}

ConeChain fill_and_phi(const ConeSpace& sp, const TupleChain& cycle, std::uint64_t seed) {
  std::size_t N = sp.n();
  if (cycle.n != N) throw std::invalid_argument("fill_and_phi: dimension mismatch");
  for (const auto& [tuple, c] : cycle.terms)
    if (tuple.size() != N) throw std::invalid_argument("fill_and_phi: chain degree must be n");
  if (!boundary(cycle).is_zero()) throw std::invalid_argument("fill_and_phi: chain has boundary");
  if (cycle.terms.empty()) return ConeChain(N);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-9, 9);
  for (int attempt = 0; attempt < 500; ++attempt) {
    QVec w(N);
    bool zero = true;
    for (auto& x : w) {
      int v = dist(rng);
      x = Rat(v);
      if (v != 0) zero = false;
    }
    if (zero) continue;
    bool ok = true;
    for (const auto& [tuple, c] : cycle.terms) {
      std::vector<QVec> capped = {w};
      capped.insert(capped.end(), tuple.begin(), tuple.end());
      if (!general_position(N, capped)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    ConeChain out(N);
    for (const auto& [tuple, c] : cycle.terms) {
      std::vector<QVec> capped = {w};
      capped.insert(capped.end(), tuple.begin(), tuple.end());
      ConeChain p = psi(sp, capped);
      p.scale(c);
      out += p;
    }
    return out;
  }
  throw std::runtime_error("no generic filling vector found");
}

ConeChain chain_mul_element(const TotallyRealField& F, const QVec& p, const ConeChain& chain) {
  if (F.is_zero(p)) throw std::invalid_argument("chain_mul_element: zero multiplier");
  ConeChain out(chain.n);
  for (const auto& [key, t] : chain.terms) {
    std::vector<QVec> gens;
    gens.reserve(t.gens.size());
    for (const QVec& g : t.gens) gens.push_back(F.mul(p, g));
    out.add(t.coeff, std::move(gens));
  }
  return out;
}

namespace {

// indicator value plus whether any single term had a nonzero membership
std::pair<Int, bool> indicator_touch(const ConeChain& chain, const QVec& z) {
  Int v = 0;
  bool touched = false;
  for (const auto& [key, t] : chain.terms) {
    if (cone_contains(t.gens, z)) {
      v += t.coeff;
      touched = true;
    }
  }
  return {v, touched};
}

void shell_points(std::size_t m, long radius, std::vector<long>& cur,
                  std::vector<std::vector<long>>& out) {
  if (cur.size() == m) {
    long mx = 0;
    for (long a : cur) mx = std::max(mx, std::abs(a));
    if (mx == radius) out.push_back(cur);
    return;
  }
  for (long a = -radius; a <= radius; ++a) {
    cur.push_back(a);
    shell_points(m, radius, cur, out);
    cur.pop_back();
  }
}

}  // namespace

Int tiling_value(const TotallyRealField& F, const ConeChain& chain, const std::vector<QVec>& units,
                 const QVec& w) {
  std::size_t m = units.size();
  if (m == 0) return indicator_eval(chain, w);
  Int total = 0;
  long last_touched = -1;
  for (long radius = 0; radius <= 96; ++radius) {
    std::vector<std::vector<long>> pts;
    std::vector<long> cur;
    shell_points(m, radius, cur, pts);
    for (const auto& a : pts) {
      QVec z = w;
      for (std::size_t i = 0; i < m; ++i) z = F.mul(z, F.pow(units[i], Int(-a[i])));
      auto [val, touched] = indicator_touch(chain, z);
      total += val;
      if (touched) last_touched = radius;
    }
    if (radius >= 10 && radius - last_touched >= 6) return total;
  }
  throw std::runtime_error("tiling window cap exceeded");
}

SignedFundDomain signed_fundamental_domain(const TotallyRealField& F, std::vector<QVec> units,
                                           const std::vector<int>& g, std::uint64_t seed) {
  std::size_t n = F.n;
  if (g.size() != n) throw std::invalid_argument("sign vector length mismatch");
  int sg = 1;
  for (int gi : g) {
    if (gi != 1 && gi != -1) throw std::invalid_argument("sign vector entries must be +-1");
    sg *= gi;
  }
  if (units.size() + 1 != n) throw std::invalid_argument("need n-1 unit generators");
  for (const QVec& u : units)
    if (!F.totally_positive(u)) throw std::invalid_argument("unit generator not totally positive");

  SignedFundDomain out;
  out.g = g;

  if (n == 1) {
    QVec x = F.from_rational(Rat(g[0]));
    ConeChain d(1);
    d.add(Int(g[0]), {x});
    out.d = d;
    out.witnesses = {x};
    return out;
  }

  // orient the generator list: positive log-embedding determinant over the
  // first n-1 places
  if (n == 2) {
    int c = F.compare_at_place(units[0], F.one(), 0);
    if (c == 0) throw std::invalid_argument("unit generator is 1");
    if (c < 0) units[0] = F.inv(units[0]);
  } else {
    auto logdet_sign = [&]() {
      Rat w(1, 1024);
      for (int round = 0; round < 60; ++round) {
        std::vector<std::vector<QInterval>> m;
        for (std::size_t i = 0; i + 1 < n; ++i) {
          std::vector<QInterval> row;
          for (std::size_t j = 0; j + 1 < n; ++j) {
            QInterval e = F.embedding_enclosure(units[j], i, w);
            while (e.lo <= 0) {
              w /= 16;
              e = F.embedding_enclosure(units[j], i, w);
            }
            QInterval a = ln_enclosure(e.lo, w), b = ln_enclosure(e.hi, w);
            row.push_back(QInterval{a.lo, b.hi});
          }
          m.push_back(std::move(row));
        }
        int s = det_interval(m).certain_sign();
        if (s != 0) return s;
        w /= 64;
      }
      throw std::runtime_error("unit log determinant did not certify");
    };
    if (logdet_sign() < 0) {
      std::swap(units[0], units[1]);
      if (logdet_sign() < 0) throw std::runtime_error("unit list orientation failed");
    }
  }
  out.units = units;

  // smallest fiber representative by coordinate height
  QVec x;
  for (long h = 1; h <= 50 && x.empty(); ++h) {
    std::vector<long> cur;
    std::vector<std::vector<long>> pts;
    shell_points(n, h, cur, pts);
    for (const auto& p : pts) {
      QVec cand(n);
      bool zero = true;
      for (std::size_t i = 0; i < n; ++i) {
        cand[i] = Rat(p[i]);
        if (p[i] != 0) zero = false;
      }
      if (zero) continue;
      bool match = true;
      for (std::size_t i = 0; i < n && match; ++i)
        if (F.embedding_sign(cand, i) != g[i]) match = false;
      if (match) {
        x = cand;
        break;
      }
    }
  }
  if (x.empty()) throw std::runtime_error("no representative with the requested signs");

  // cap of the unit-simplex tuples, dependent tuples dropped
  IrrationalDirection q = IrrationalDirection::axis_dir(n - 1, -1);
  ConeSpace sp = ConeSpace::over(F);
  ConeChain raw(n);
  std::vector<std::size_t> perm(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end());
  do {
    std::vector<QVec> tuple;
    QVec e = F.one();
    tuple.push_back(F.mul(x, e));
    for (std::size_t jj = 0; jj + 1 < n; ++jj) {
      e = F.mul(e, units[perm[jj]]);
      tuple.push_back(F.mul(x, e));
    }
    if (vec_rank(n, tuple) != n) continue;
    raw += phi_q(sp, tuple, q);
  } while (std::next_permutation(perm.begin(), perm.end()));

  Int t0 = tiling_value(F, raw, units, x);
  if (t0 != 1 && t0 != -1) throw std::runtime_error("tiling identity gave a non-unit value");
  if (t0 != sg) raw.scale(Int(-1));
  out.d = raw;

  out.witnesses.push_back(x);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-30, 30);
  int draws = 0;
  while (out.witnesses.size() < 9 && draws < 20000) {
    ++draws;
    QVec cand(n);
    bool zero = true;
    for (std::size_t i = 0; i < n; ++i) {
      int v = dist(rng);
      cand[i] = Rat(v);
      if (v != 0) zero = false;
    }
    if (zero) continue;
    bool match = true;
    for (std::size_t i = 0; i < n && match; ++i)
      if (F.embedding_sign(cand, i) != g[i]) match = false;
    if (match) out.witnesses.push_back(cand);
  }
  if (out.witnesses.size() < 9) throw std::runtime_error("witness sampling failed");
  for (const QVec& wit : out.witnesses)
    if (tiling_value(F, out.d, units, wit) != sg)
      throw std::runtime_error("tiling identity failed at a witness");
  return out;
}

}  // namespace shintani

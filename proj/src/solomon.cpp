#include "shintani/solomon.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace shintani {

namespace {

// generator of the rational cyclic group {s : s*u in L}; L full rank
Rat line_step(const TotallyRealField& F, const Lattice& lat, const QVec& u) {
  QMat b(F.n, F.n);
  for (std::size_t j = 0; j < F.n; ++j) {
    QVec r = lat.row(j);
    for (std::size_t i = 0; i < F.n; ++i) b.at(i, j) = r[i];
  }
  QVec c = solve(b, u);
  Rat step(0);
  for (const Rat& ci : c) {
    if (ci == 0) continue;
    Rat g(den(ci), abs_int(num(ci)));
    if (step == 0)
      step = g;
    else
      step = Rat(lcm_int(num(step), num(g)), gcd_int(den(step), den(g)));
  }
  if (step == 0) throw std::logic_error("line_step: zero direction");
  return step;
}

// coefficients of w over the generators; w must lie in their span
QVec coeffs_in_span(const std::vector<QVec>& gens, const QVec& w) {
  std::size_t n = w.size(), m = gens.size();
  QMat aug(n, m + 1);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) aug.at(i, j) = gens[j][i];
  for (std::size_t i = 0; i < n; ++i) aug.at(i, m) = w[i];
  auto pivots = rref(aug);
  QVec c(m, Rat(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == m) throw std::logic_error("coeffs_in_span: point outside the span");
    c[pivots[r]] = aug.at(r, m);
  }
  return c;
}

Rat rat_floor(const Rat& x) { return Rat(floor_div(num(x), den(x))); }

QVec scale_vec(const Rat& c, const QVec& v) {
  QVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

}  // namespace

Lattice span_intersection(const TotallyRealField& F, const Lattice& supp,
                          const std::vector<QVec>& gens) {
  std::size_t n = F.n, m = gens.size();
  if (m == 0 || m > n) throw std::invalid_argument("span_intersection: bad generator count");
  if (supp.rank() != n) throw std::invalid_argument("span_intersection: support not full rank");
  if (m == n) return supp;
  QMat g(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) g.at(i, j) = gens[i][j];
  QMat nsp = null_space(g);  // columns annihilate the span
  if (nsp.cols != n - m) throw std::invalid_argument("span_intersection: dependent generators");
  // integer combos of support rows lying in every annihilator hyperplane
  ZMat cond(n, nsp.cols);
  for (std::size_t j = 0; j < nsp.cols; ++j) {
    QVec col(n);
    Int d = 1;
    for (std::size_t i = 0; i < n; ++i) {
      QVec r = supp.row(i);
      Rat s = 0;
      for (std::size_t k = 0; k < n; ++k) s += r[k] * nsp.at(k, j);
      col[i] = s;
      d = lcm_int(d, den(s));
    }
    for (std::size_t i = 0; i < n; ++i) cond.at(i, j) = num(col[i]) * (d / den(col[i]));
  }
  ZMat ker = left_kernel(cond);
  if (ker.rows != m) throw std::logic_error("span_intersection: unexpected kernel rank");
  std::vector<QVec> rows;
  for (std::size_t i = 0; i < ker.rows; ++i) {
    QVec r(n, Rat(0));
    for (std::size_t k = 0; k < n; ++k) {
      QVec br = supp.row(k);
      for (std::size_t j = 0; j < n; ++j) r[j] += Rat(ker.at(i, k)) * br[j];
    }
    rows.push_back(std::move(r));
  }
  return Lattice::from_rows(rows);
}

DeltaPlan native_plan(const TotallyRealField& F, const std::vector<QVec>& gens,
                      const FiniteTestFunction& phi) {
  DeltaPlan p;
  for (const QVec& u : gens) {
    Rat s = line_step(F, phi.support, u);
    Rat b = line_step(F, phi.quot.small, u);
    Rat c = b / s;
    if (den(c) != 1 || num(c) <= 0)
      throw std::logic_error("native_plan: period step not a multiple of the support step");
    p.step.push_back(s);
    p.count.push_back(num(c));
  }
  return p;
}

DeltaPlan uniform_plan(const TotallyRealField& F, const std::vector<QVec>& gens,
                       const FiniteTestFunction& phi, long cap) {
  Lattice l0 = span_intersection(F, phi.support, gens);
  Lattice span = Lattice::from_rows(gens);
  const Lattice& period = phi.quot.small;
  for (long k = 1; k <= cap; ++k) {
    bool ok = true;
    for (std::size_t j = 0; j < gens.size() && ok; ++j)
      if (!period.contains(scale_vec(Rat(k), gens[j]))) ok = false;
    for (std::size_t i = 0; i < l0.rank() && ok; ++i)
      if (!span.contains(scale_vec(Rat(k), l0.row(i)))) ok = false;
    if (!ok) continue;
    DeltaPlan p;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      p.step.push_back(Rat(1, k));
      p.count.push_back(Int(k) * k);
    }
    return p;
  }
  throw std::runtime_error("uniform_plan: no shift scale below the cap");
}

Rat varpi_term(const TotallyRealField& F, const std::vector<QVec>& gens,
               const FiniteTestFunction& phi, const DeltaPlan& plan, const QVec* offset) {
  std::size_t m = gens.size();
  if (plan.step.size() != m || plan.count.size() != m)
    throw std::invalid_argument("varpi_term: plan shape mismatch");
  if (offset && !phi.support.contains(*offset))
    throw std::invalid_argument("varpi_term: offset outside the support lattice");
  Lattice l0 = span_intersection(F, phi.support, gens);
  // coefficient coordinates of the enumeration basis
  QMat mt(m, m);  // column k = generator coefficients of l0 row k
  for (std::size_t k = 0; k < m; ++k) {
    QVec c = coeffs_in_span(gens, l0.row(k));
    for (std::size_t j = 0; j < m; ++j) mt.at(j, k) = c[j];
  }
  std::vector<Rat> beta(m);
  for (std::size_t j = 0; j < m; ++j) beta[j] = plan.step[j] * Rat(plan.count[j]);
  // integer ranges covering the preimage of the coefficient box (0, beta]
  std::vector<Rat> lo(m), hi(m);
  for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
    QVec corner(m);
    for (std::size_t j = 0; j < m; ++j) corner[j] = (mask >> j & 1) ? beta[j] : Rat(0);
    QVec z = solve(mt, corner);
    for (std::size_t i = 0; i < m; ++i) {
      if (mask == 0 || z[i] < lo[i]) lo[i] = z[i];
      if (mask == 0 || z[i] > hi[i]) hi[i] = z[i];
    }
  }
  std::vector<long> zlo(m), zhi(m), z(m);
  for (std::size_t i = 0; i < m; ++i) {
    zlo[i] = to_i64(num(rat_floor(lo[i])));
    zhi[i] = to_i64(num(rat_floor(hi[i]))) + 1;
    z[i] = zlo[i];
  }
  Rat acc(0);
  while (true) {
    QVec coeff(m, Rat(0));
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) coeff[j] += mt.at(j, k) * Rat(z[k]);
    bool inside = true;
    for (std::size_t j = 0; j < m && inside; ++j)
      if (!(coeff[j] > 0 && coeff[j] <= beta[j])) inside = false;
    if (inside) {
      QVec y = offset ? *offset : QVec(F.n, Rat(0));
      for (std::size_t k = 0; k < m; ++k) {
        QVec r = l0.row(k);
        for (std::size_t j = 0; j < F.n; ++j) y[j] += Rat(z[k]) * r[j];
      }
      Int v = phi.eval(y);
      if (v != 0) {
        // count of shift positions at or beyond this point along each axis
        Rat w(1);
        for (std::size_t j = 0; j < m; ++j)
          w *= rat_floor((beta[j] - coeff[j]) / plan.step[j]) + 1;
        acc += w * Rat(v);
      }
    }
    std::size_t i = 0;
    for (; i < m; ++i) {
      if (++z[i] <= zhi[i]) break;
      z[i] = zlo[i];
    }
    if (i == m) break;
  }
  Rat scale(1);
  for (std::size_t j = 0; j < m; ++j) scale *= Rat(plan.count[j]);
  return acc / scale;
}

Rat varpi_finite(const std::vector<std::pair<QVec, Int>>& masses) {
  Rat s(0);
  for (const auto& p : masses) s += Rat(p.second);
  return s;
}

FiniteTestFunction translate(const TotallyRealField& F, const QVec& y,
                             const FiniteTestFunction& phi) {
  if (!phi.support.contains(y))
    throw std::invalid_argument("translate: shift outside the support lattice");
  FiniteTestFunction g = phi;
  auto reps = g.quot.all_reps();
  for (std::size_t i = 0; i < reps.size(); ++i) g.table[i] = phi.eval(F.sub(reps[i], y));
  return g;
}

PairingResult pairing(const TotallyRealField& F, const Prime& q, const ConeChain& f,
                      const FiniteTestFunction& phi, bool crosscheck) {
  if (f.n != F.n && !f.empty()) throw std::invalid_argument("pairing: chain dimension mismatch");
  std::set<QVec> dirs;
  for (const auto& t : f.terms)
    for (const QVec& u : t.second.gens) dirs.insert(u);
  for (const QVec& u : dirs) {
    SmoothnessReport rep = check_u_smooth(F, q, phi, u);
    if (!rep.pass) throw std::runtime_error("pairing: test function is not smooth along a cone generator");
  }
  PairingResult out;
  out.value = 0;
  Rat alt(0);
  for (const auto& t : f.terms) {
    DeltaPlan nat = native_plan(F, t.second.gens, phi);
    out.value += Rat(t.second.coeff) * varpi_term(F, t.second.gens, phi, nat);
    out.plans.push_back(nat);
    if (crosscheck) {
      DeltaPlan uni = uniform_plan(F, t.second.gens, phi);
      alt += Rat(t.second.coeff) * varpi_term(F, t.second.gens, phi, uni);
    }
  }
  if (crosscheck && alt != out.value)
    throw std::logic_error("pairing: shift plans disagree");
  return out;
}

AbelResult abel_oracle(const TotallyRealField& F, const ConeChain& f,
                       const FiniteTestFunction& phi, double t0, int levels,
                       const std::vector<double>& place_weights) {
  if (levels < 3 || levels > 12) throw std::invalid_argument("abel_oracle: bad level count");
  std::vector<double> w = place_weights;
  if (w.empty()) w.assign(F.n, 1.0);
  if (w.size() != F.n) throw std::invalid_argument("abel_oracle: weight count mismatch");
  for (double wi : w)
    if (!(wi > 0)) throw std::invalid_argument("abel_oracle: weights must be positive");
  double tmin = t0 / std::pow(2.0, levels - 1);
  double cut = 38.0 / tmin;
  std::vector<double> acc(levels, 0.0);
  for (const auto& term : f.terms) {
    const auto& gens = term.second.gens;
    std::size_t m = gens.size();
    double cf = static_cast<double>(to_i64(term.second.coeff));
    Lattice l0 = span_intersection(F, phi.support, gens);
    QMat mt(m, m);
    for (std::size_t k = 0; k < m; ++k) {
      QVec c = coeffs_in_span(gens, l0.row(k));
      for (std::size_t j = 0; j < m; ++j) mt.at(j, k) = c[j];
    }
    std::vector<std::vector<double>> mtd(m, std::vector<double>(m));
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) mtd[j][k] = static_cast<double>(mt.at(j, k));
    // weighted embedding rows of the enumeration basis
    std::vector<std::vector<double>> emb(F.n, std::vector<double>(m));
    for (std::size_t i = 0; i < F.n; ++i)
      for (std::size_t k = 0; k < m; ++k) emb[i][k] = F.embedding_double(l0.row(k), i);
    // per-axis periods of the value table
    std::vector<long> per(m);
    for (std::size_t k = 0; k < m; ++k) per[k] = to_i64(num(line_step(F, phi.quot.small, l0.row(k))));
    long tblsize = 1;
    for (std::size_t k = 0; k < m; ++k) tblsize *= per[k];
    std::vector<double> val(tblsize);
    {
      std::vector<long> zz(m, 0);
      while (true) {
        QVec y(F.n, Rat(0));
        for (std::size_t k = 0; k < m; ++k) {
          QVec r = l0.row(k);
          for (std::size_t j = 0; j < F.n; ++j) y[j] += Rat(zz[k]) * r[j];
        }
        long flat = 0;
        for (std::size_t k = 0; k < m; ++k) flat = flat * per[k] + zz[k];
        val[flat] = static_cast<double>(to_i64(phi.eval(y)));
        std::size_t i = 0;
        for (; i < m; ++i) {
          if (++zz[i] < per[i]) break;
          zz[i] = 0;
        }
        if (i == m) break;
      }
    }
    // radius bound: weighted one-norm of embeddings on the max-norm sphere
    double low = 0;
    {
      double best = -1;
      int samples = 512;
      for (std::size_t fix = 0; fix < m; ++fix) {
        std::vector<double> zt(m);
        long total = 1;
        for (std::size_t k = 0; k + 1 < m; ++k) total *= 2 * samples + 1;
        for (long it = 0; it < total; ++it) {
          long rem = it;
          for (std::size_t k = 0; k < m; ++k) {
            if (k == fix) {
              zt[k] = 1.0;
            } else {
              zt[k] = static_cast<double>(rem % (2 * samples + 1) - samples) / samples;
              rem /= 2 * samples + 1;
            }
          }
          for (int sgn = 0; sgn < 2; ++sgn) {
            double rho = 0;
            for (std::size_t i = 0; i < F.n; ++i) {
              double e = 0;
              for (std::size_t k = 0; k < m; ++k) e += emb[i][k] * (sgn ? -zt[k] : zt[k]);
              rho += w[i] * std::fabs(e);
            }
            if (best < 0 || rho < best) best = rho;
          }
        }
      }
      if (!(best > 0)) throw std::logic_error("abel_oracle: degenerate embedding norm");
      low = best * 0.9;
    }
    long zmax = static_cast<long>(cut / low) + 1;
    std::vector<long> z(m, -zmax);
    while (true) {
      bool inside = true;
      for (std::size_t j = 0; j < m && inside; ++j) {
        double c = 0;
        for (std::size_t k = 0; k < m; ++k) c += mtd[j][k] * z[k];
        if (c < 1e-7) inside = false;
      }
      if (inside) {
        double rho = 0;
        for (std::size_t i = 0; i < F.n; ++i) {
          double e = 0;
          for (std::size_t k = 0; k < m; ++k) e += emb[i][k] * z[k];
          rho += w[i] * std::fabs(e);
        }
        if (rho <= cut) {
          long flat = 0;
          for (std::size_t k = 0; k < m; ++k) {
            long r = z[k] % per[k];
            if (r < 0) r += per[k];
            flat = flat * per[k] + r;
          }
          double v = val[flat];
          if (v != 0) {
            double e = std::exp(-tmin * rho);
            for (int lvl = levels - 1; lvl >= 0; --lvl) {
              acc[lvl] += cf * v * e;
              if (lvl > 0) e *= e;
            }
          }
        }
      }
      std::size_t i = 0;
      for (; i < m; ++i) {
        if (++z[i] <= zmax) break;
        z[i] = -zmax;
      }
      if (i == m) break;
    }
  }
  std::vector<double> ts(levels);
  for (int i = 0; i < levels; ++i) ts[i] = t0 / std::pow(2.0, i);
  auto neville = [](std::vector<double> t, std::vector<double> v) {
    std::size_t n = t.size();
    for (std::size_t k = 1; k < n; ++k)
      for (std::size_t i = 0; i + k < n; ++i)
        v[i] = ((0 - t[i + k]) * v[i] + t[i] * v[i + 1]) / (t[i] - t[i + k]);
    return v[0];
  };
  AbelResult res;
  res.value = neville(ts, acc);
  std::vector<double> ts2(ts.begin() + 1, ts.end()), acc2(acc.begin() + 1, acc.end());
  res.err = std::fabs(res.value - neville(ts2, acc2));
  res.converged = res.err < 1e-5;
  return res;
}

IntegralityReport integrality_report(const Rat& value, const Int& q, std::size_t n, bool m_full) {
  IntegralityReport rep;
  Int qn = 1;
  for (std::size_t i = 0; i < n; ++i) qn *= q;
  rep.weak_ok = qn % den(value) == 0;
  rep.strong_applicable = m_full && q >= Int(n) + 2;
  rep.strong_ok = rep.strong_applicable ? den(value) == 1 : true;
  return rep;
}

}  // namespace shintani

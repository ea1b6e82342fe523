#pragma once

#include <optional>

#include "shintani/rat.hpp"

namespace shintani {

// Dense row-major matrices. Sizes here are tiny (field degree <= 4, group
// orders <= 16), so exact Gaussian elimination is used throughout.
struct QMat {
  std::size_t rows = 0, cols = 0;
  std::vector<Rat> a;

  QMat() = default;
  QMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  Rat& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Rat& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static QMat identity(std::size_t n) {
    QMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
};

struct ZMat {
  std::size_t rows = 0, cols = 0;
  std::vector<Int> a;

  ZMat() = default;
  ZMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  Int& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static ZMat identity(std::size_t n) {
    ZMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  bool operator==(const ZMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

inline QMat to_qmat(const ZMat& m) {
  QMat q(m.rows, m.cols);
  for (std::size_t i = 0; i < m.a.size(); ++i) q.a[i] = Rat(m.a[i]);
  return q;
}

inline Rat det(QMat m) {
  if (m.rows != m.cols) throw std::invalid_argument("det: matrix not square");
  std::size_t n = m.rows;
  Rat d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m.at(p, c) == 0) ++p;
    if (p == n) return Rat(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(c, j));
      d = -d;
    }
    d *= m.at(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m.at(i, c) == 0) continue;
      Rat f = m.at(i, c) / m.at(c, c);
      for (std::size_t j = c; j < n; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return d;
}

inline Int det(const ZMat& m) {
  Rat d = det(to_qmat(m));
  return num(d);  // determinant of an integer matrix is integral
}

// Solves A x = b with A square nonsingular; x and b are column vectors.
inline QVec solve(QMat m, QVec b) {
  if (m.rows != m.cols || b.size() != m.rows) throw std::invalid_argument("solve: shape mismatch");
  std::size_t n = m.rows;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m.at(p, c) == 0) ++p;
    if (p == n) throw std::invalid_argument("solve: singular matrix");
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(c, j));
      std::swap(b[p], b[c]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m.at(i, c) == 0) continue;
      Rat f = m.at(i, c) / m.at(c, c);
      for (std::size_t j = c; j < n; ++j) m.at(i, j) -= f * m.at(c, j);
      b[i] -= f * b[c];
    }
  }
  QVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / m.at(i, i);
  return x;
}

// Row echelon reduction in place; returns pivot columns. Rows below the
// returned rank are zero afterwards.
inline std::vector<std::size_t> rref(QMat& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t p = r;
    while (p < m.rows && m.at(p, c) == 0) ++p;
    if (p == m.rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
    Rat inv = Rat(1) / m.at(r, c);
    for (std::size_t j = 0; j < m.cols; ++j) m.at(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Rat f = m.at(i, c);
      for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(QMat m) { return rref(m).size(); }

// Basis (as columns) of {v : M v = 0}.
inline QMat null_space(QMat m) {
  std::size_t n = m.cols;
  auto pivots = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  QMat k(n, n - pivots.size());
  std::size_t idx = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    k.at(c, idx) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) k.at(pivots[r], idx) = -m.at(r, c);
    ++idx;
  }
  return k;
}

// Row Hermite normal form. Zero rows are dropped; pivots are positive and
// entries above each pivot are reduced into [0, pivot).
inline ZMat hnf(ZMat m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    // clear column c below row r by gcd steps
    while (true) {
      std::size_t p = m.rows;
      for (std::size_t i = r; i < m.rows; ++i)
        if (m.at(i, c) != 0 && (p == m.rows || abs_int(m.at(i, c)) < abs_int(m.at(p, c)))) p = i;
      if (p == m.rows) break;  // column is zero from row r down
      if (p != r)
        for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
      bool clean = true;
      for (std::size_t i = r + 1; i < m.rows; ++i) {
        if (m.at(i, c) == 0) continue;
        Int q = floor_div(m.at(i, c), m.at(r, c));
        for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) -= q * m.at(r, j);
        if (m.at(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (m.at(r, c) == 0) continue;
    if (m.at(r, c) < 0)
      for (std::size_t j = 0; j < m.cols; ++j) m.at(r, j) = -m.at(r, j);
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(m.at(i, c), m.at(r, c));
      if (q == 0) continue;
      for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) -= q * m.at(r, j);
    }
    ++r;
  }
  ZMat out(r, m.cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) out.at(i, j) = m.at(i, j);
  return out;
}

// Smith normal form: returns (d, u, v) with u*m*v diagonal = diag(d), u and v
// unimodular, and d[i] | d[i+1].
struct SmithForm {
  ZVec d;
  ZMat u, v;
};

inline SmithForm smith(ZMat m) {
  std::size_t R = m.rows, C = m.cols;
  ZMat u = ZMat::identity(R), v = ZMat::identity(C);
  auto row_op = [&](std::size_t i, std::size_t k, const Int& q) {  // row i -= q*row k
    for (std::size_t j = 0; j < C; ++j) m.at(i, j) -= q * m.at(k, j);
    for (std::size_t j = 0; j < R; ++j) u.at(i, j) -= q * u.at(k, j);
  };
  auto col_op = [&](std::size_t j, std::size_t k, const Int& q) {  // col j -= q*col k
    for (std::size_t i = 0; i < R; ++i) m.at(i, j) -= q * m.at(i, k);
    for (std::size_t i = 0; i < C; ++i) v.at(i, j) -= q * v.at(i, k);
  };
  auto row_swap = [&](std::size_t i, std::size_t k) {
    for (std::size_t j = 0; j < C; ++j) std::swap(m.at(i, j), m.at(k, j));
    for (std::size_t j = 0; j < R; ++j) std::swap(u.at(i, j), u.at(k, j));
  };
  auto col_swap = [&](std::size_t j, std::size_t k) {
    for (std::size_t i = 0; i < R; ++i) std::swap(m.at(i, j), m.at(i, k));
    for (std::size_t i = 0; i < C; ++i) std::swap(v.at(i, j), v.at(i, k));
  };

  std::size_t t = 0;
  while (t < R && t < C) {
    // find a nonzero pivot of minimal absolute value
    std::size_t pi = R, pj = C;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j)
        if (m.at(i, j) != 0 &&
            (pi == R || abs_int(m.at(i, j)) < abs_int(m.at(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == R) break;
    if (pi != t) row_swap(pi, t);
    if (pj != t) col_swap(pj, t);
    bool dirty = false;
    for (std::size_t i = t + 1; i < R; ++i) {
      if (m.at(i, t) == 0) continue;
      row_op(i, t, floor_div(m.at(i, t), m.at(t, t)));
      if (m.at(i, t) != 0) dirty = true;
    }
    for (std::size_t j = t + 1; j < C; ++j) {
      if (m.at(t, j) == 0) continue;
      col_op(j, t, floor_div(m.at(t, j), m.at(t, t)));
      if (m.at(t, j) != 0) dirty = true;
    }
    if (dirty) continue;
    // enforce divisibility d[t] | m[i][j] for the remaining block
    bool fixed = true;
    for (std::size_t i = t + 1; i < R && fixed; ++i)
      for (std::size_t j = t + 1; j < C && fixed; ++j)
        if (m.at(i, j) % m.at(t, t) != 0) {
          row_op(t, i, Int(-1));  // add row i into row t, then restart block
          fixed = false;
        }
    if (!fixed) continue;
    if (m.at(t, t) < 0) {
      for (std::size_t j = 0; j < C; ++j) m.at(t, j) = -m.at(t, j);
      for (std::size_t j = 0; j < R; ++j) u.at(t, j) = -u.at(t, j);
    }
    ++t;
  }
  SmithForm s;
  s.d.resize(t);
  for (std::size_t i = 0; i < t; ++i) s.d[i] = m.at(i, i);
  s.u = std::move(u);
  s.v = std::move(v);
  return s;
}

// Saturated left kernel {x in Z^rows : x m = 0}, returned as HNF rows.
inline ZMat left_kernel(const ZMat& m) {
  SmithForm s = smith(m);
  std::size_t r = s.d.size();
  ZMat k(m.rows - r, m.rows);
  for (std::size_t i = r; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.rows; ++j) k.at(i - r, j) = s.u.at(i, j);
  return hnf(std::move(k));
}

// One integral solution of x m = target together with the kernel, if any.
struct AffineSolution {
  ZVec point;
  ZMat kernel;  // rows
};

inline std::optional<AffineSolution> solve_affine_integer(const ZMat& m, const ZVec& target) {
  if (target.size() != m.cols) throw std::invalid_argument("solve_affine_integer: shape mismatch");
  SmithForm s = smith(m);
  // x m = t  <=>  z (u m) = t with x = z u  <=>  z d v^{-1}... use m v = u^{-1} d:
  // (x m) v = x (m v); with u m v = d we get x m = t  <=>  (x u^{-1}) d = t v.
  ZVec tv(m.cols, Int(0));
  for (std::size_t j = 0; j < m.cols; ++j)
    for (std::size_t k = 0; k < m.cols; ++k) tv[j] += target[k] * s.v.at(k, j);
  std::size_t r = s.d.size();
  ZVec z(m.rows, Int(0));
  for (std::size_t i = 0; i < r; ++i) {
    if (tv[i] % s.d[i] != 0) return std::nullopt;
    z[i] = tv[i] / s.d[i];
  }
  for (std::size_t i = r; i < m.cols; ++i)
    if (tv[i] != 0) return std::nullopt;
  AffineSolution sol;
  sol.point.assign(m.rows, Int(0));
  for (std::size_t j = 0; j < m.rows; ++j)
    for (std::size_t i = 0; i < r; ++i) sol.point[j] += z[i] * s.u.at(i, j);
  sol.kernel = ZMat(m.rows - r, m.rows);
  for (std::size_t i = r; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.rows; ++j) sol.kernel.at(i - r, j) = s.u.at(i, j);
  return sol;
}

// Full-rank sublattice of (1/den) Z^n given by HNF rows; value semantics.
struct Lattice {
  ZMat basis;  // HNF rows
  Int denom = 1;

  std::size_t dim() const { return basis.cols; }
  std::size_t rank() const { return basis.rows; }

  void normalize() {
    basis = hnf(std::move(basis));
    Int g = denom;
    for (const auto& x : basis.a) g = gcd_int(g, x);
    if (g > 1) {
      for (auto& x : basis.a) x /= g;
      denom /= g;
    }
    if (denom < 0) throw std::logic_error("Lattice: negative denominator");
  }

  static Lattice from_rows(const std::vector<QVec>& rows) {
    if (rows.empty()) throw std::invalid_argument("Lattice: no generators");
    std::size_t n = rows[0].size();
    Int d = 1;
    for (const auto& r : rows)
      for (const auto& x : r) d = lcm_int(d, den(x));
    ZMat m(rows.size(), n);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) m.at(i, j) = num(rows[i][j]) * (d / den(rows[i][j]));
    Lattice L{hnf(std::move(m)), d};
    L.normalize();
    return L;
  }

  QVec row(std::size_t i) const {
    QVec r(basis.cols);
    for (std::size_t j = 0; j < basis.cols; ++j) r[j] = Rat(basis.at(i, j)) / Rat(denom);
    return r;
  }

  // Decomposes x over the basis rows; integral coefficients iff member.
  std::optional<ZVec> coords(const QVec& x) const {
    if (x.size() != basis.cols) throw std::invalid_argument("Lattice::coords: shape mismatch");
    // reduce denom*x against HNF rows column by column
    QVec v(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) v[j] = x[j] * Rat(denom);
    ZVec c(basis.rows, Int(0));
    std::size_t r = 0;
    for (std::size_t col = 0; col < basis.cols && r < basis.rows; ++col) {
      if (basis.at(r, col) == 0) continue;  // not a pivot column of row r
      Rat q = v[col] / Rat(basis.at(r, col));
      if (den(q) != 1) return std::nullopt;
      c[r] = num(q);
      for (std::size_t j = col; j < basis.cols; ++j) v[j] -= Rat(c[r] * basis.at(r, j));
      ++r;
    }
    for (const auto& t : v)
      if (t != 0) return std::nullopt;
    return c;
  }

  bool contains(const QVec& x) const { return coords(x).has_value(); }

  bool contains_lattice(const Lattice& other) const {
    for (std::size_t i = 0; i < other.basis.rows; ++i)
      if (!contains(other.row(i))) return false;
    return true;
  }

  bool operator==(const Lattice& o) const { return denom == o.denom && basis == o.basis; }

  Lattice scaled(const Rat& f) const {
    if (f == 0) throw std::invalid_argument("Lattice::scaled: zero factor");
    std::vector<QVec> rows;
    for (std::size_t i = 0; i < basis.rows; ++i) {
      QVec r = row(i);
      for (auto& x : r) x *= f;
      rows.push_back(std::move(r));
    }
    return from_rows(rows);
  }

  static Lattice sum(const Lattice& a, const Lattice& b) {
    std::vector<QVec> rows;
    for (std::size_t i = 0; i < a.basis.rows; ++i) rows.push_back(a.row(i));
    for (std::size_t i = 0; i < b.basis.rows; ++i) rows.push_back(b.row(i));
    return from_rows(rows);
  }

  static Lattice intersect(const Lattice& a, const Lattice& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("Lattice::intersect: shape mismatch");
    // rows (c1,c2) with c1*A - c2*B = 0 give intersection points c1*A
    std::size_t n = a.dim();
    ZMat stacked(a.rank() + b.rank(), n);
    for (std::size_t i = 0; i < a.rank(); ++i)
      for (std::size_t j = 0; j < n; ++j) stacked.at(i, j) = a.basis.at(i, j) * b.denom;
    for (std::size_t i = 0; i < b.rank(); ++i)
      for (std::size_t j = 0; j < n; ++j) stacked.at(a.rank() + i, j) = -b.basis.at(i, j) * a.denom;
    ZMat ker = left_kernel(stacked);
    std::vector<QVec> rows;
    for (std::size_t i = 0; i < ker.rows; ++i) {
      QVec r(n, Rat(0));
      for (std::size_t k = 0; k < a.rank(); ++k)
        for (std::size_t j = 0; j < n; ++j)
          r[j] += Rat(ker.at(i, k) * a.basis.at(k, j)) / Rat(a.denom);
      rows.push_back(std::move(r));
    }
    if (rows.empty()) throw std::logic_error("Lattice::intersect: empty intersection basis");
    return from_rows(rows);
  }

  // Index [this : sub] for full-rank lattices with sub contained in this.
  Int index_of(const Lattice& sub) const {
    if (rank() != dim() || sub.rank() != dim())
      throw std::invalid_argument("Lattice::index_of: full rank required");
    Rat da = 1, db = 1;
    for (std::size_t i = 0; i < dim(); ++i) {
      da *= Rat(basis.at(i, i)) / Rat(denom);
      db *= Rat(sub.basis.at(i, i)) / Rat(sub.denom);
    }
    Rat idx = db / da;
    if (idx < 0) idx = -idx;
    if (den(idx) != 1) throw std::invalid_argument("Lattice::index_of: not a sublattice");
    return num(idx);
  }
};

// Finite quotient L/M for full-rank M inside L, with a coordinate map.
struct LatticeQuotient {
  Lattice big, small;
  ZVec invariants;      // nontrivial invariant factors d_i > 1 kept with their positions
  ZMat v;               // column transform from the Smith form of small-in-big coordinates
  Int order = 1;

  // coordinates of x (a member of big) as a tuple over Z/d_i
  ZVec residue(const QVec& x) const {
    auto c = big.coords(x);
    if (!c) throw std::invalid_argument("LatticeQuotient::residue: not a member");
    ZVec z(invariants.size(), Int(0));
    for (std::size_t j = 0; j < invariants.size(); ++j) {
      Int t = 0;
      for (std::size_t k = 0; k < c->size(); ++k) t += (*c)[k] * v.at(k, j);
      z[j] = mod_euclid(t, invariants[j]);
    }
    return z;
  }

  std::size_t flat_index(const ZVec& z) const {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < invariants.size(); ++j)
      idx = idx * static_cast<std::size_t>(to_i64(invariants[j])) + static_cast<std::size_t>(to_i64(z[j]));
    return idx;
  }

  std::size_t flat_residue(const QVec& x) const { return flat_index(residue(x)); }

  // representative in big of the class with the given tuple
  QVec lift(const ZVec& z) const;

  // representatives for every class, indexed by flat_index
  std::vector<QVec> all_reps() const;

  static LatticeQuotient make(const Lattice& big, const Lattice& small) {
    if (!big.contains_lattice(small)) throw std::invalid_argument("LatticeQuotient: not a sublattice");
    std::size_t n = big.dim();
    if (big.rank() != n || small.rank() != n)
      throw std::invalid_argument("LatticeQuotient: full rank required");
    // rows: coordinates of small basis in big basis
    ZMat rel(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      auto c = big.coords(small.row(i));
      if (!c) throw std::logic_error("LatticeQuotient: coordinate failure");
      for (std::size_t j = 0; j < n; ++j) rel.at(i, j) = (*c)[j];
    }
    SmithForm s = smith(std::move(rel));
    LatticeQuotient q;
    q.big = big;
    q.small = small;
    ZVec inv;
    ZMat vkeep(n, 0);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < s.d.size(); ++i)
      if (s.d[i] != 1) keep.push_back(i);
    q.v = ZMat(n, keep.size());
    q.invariants.resize(keep.size());
    for (std::size_t jj = 0; jj < keep.size(); ++jj) {
      q.invariants[jj] = s.d[keep[jj]];
      for (std::size_t i = 0; i < n; ++i) q.v.at(i, jj) = s.v.at(i, keep[jj]);
      q.order *= s.d[keep[jj]];
    }
    return q;
  }
};

inline std::vector<QVec> LatticeQuotient::all_reps() const {
  // walk the group generated by big's basis rows
  std::size_t n = big.dim();
  std::size_t total = static_cast<std::size_t>(to_i64(order));
  std::vector<QVec> reps(total);
  std::vector<bool> seen(total, false);
  std::vector<QVec> frontier;
  QVec zero(n, Rat(0));
  std::size_t z0 = flat_index(residue(zero));
  reps[z0] = zero;
  seen[z0] = true;
  frontier.push_back(zero);
  std::size_t found = 1;
  while (!frontier.empty() && found < total) {
    QVec cur = frontier.back();
    frontier.pop_back();
    for (std::size_t i = 0; i < n; ++i) {
      QVec nxt = cur;
      QVec r = big.row(i);
      for (std::size_t j = 0; j < n; ++j) nxt[j] += r[j];
      std::size_t idx = flat_index(residue(nxt));
      if (!seen[idx]) {
        seen[idx] = true;
        reps[idx] = nxt;
        frontier.push_back(nxt);
        ++found;
      }
    }
  }
  if (found != total) throw std::logic_error("LatticeQuotient::all_reps: walk did not close");
  return reps;
}

inline QVec LatticeQuotient::lift(const ZVec& z) const { return all_reps()[flat_index(z)]; }

}  // namespace shintani

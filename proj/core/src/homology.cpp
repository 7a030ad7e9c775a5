#include "zcover/homology.hpp"

#include <algorithm>

namespace zcover {

namespace {

IntMat identity(int n) {
  IntMat m(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// Elementary operations applied to d and mirrored into the transforms.  Row
// ops multiply u on the left, so u_inv collects the inverse op on columns;
// column ops are symmetric.
struct Worker {
  IntMat d, u, v, u_inv, v_inv;
  int m, n;

  explicit Worker(const IntMat& a)
      : d(a), m(static_cast<int>(a.size())), n(a.empty() ? 0 : static_cast<int>(a[0].size())) {
    u = identity(m);
    u_inv = identity(m);
    v = identity(n);
    v_inv = identity(n);
  }

  void swap_rows(int i, int j) {
    if (i == j) return;
    std::swap(d[i], d[j]);
    std::swap(u[i], u[j]);
    for (int r = 0; r < m; ++r) std::swap(u_inv[r][i], u_inv[r][j]);
  }
  void swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < m; ++r) std::swap(d[r][i], d[r][j]);
    for (int r = 0; r < n; ++r) std::swap(v[r][i], v[r][j]);
    std::swap(v_inv[i], v_inv[j]);
  }
  // row i += c * row j
  void add_row(int i, int j, const Int& c) {
    for (int k = 0; k < n; ++k) d[i][k] += c * d[j][k];
    for (int k = 0; k < m; ++k) u[i][k] += c * u[j][k];
    for (int r = 0; r < m; ++r) u_inv[r][j] -= c * u_inv[r][i];
  }
  // col i += c * col j
  void add_col(int i, int j, const Int& c) {
    for (int r = 0; r < m; ++r) d[r][i] += c * d[r][j];
    for (int r = 0; r < n; ++r) v[r][i] += c * v[r][j];
    for (int k = 0; k < n; ++k) v_inv[j][k] -= c * v_inv[i][k];
  }
  void negate_row(int i) {
    for (int k = 0; k < n; ++k) d[i][k] = -d[i][k];
    for (int k = 0; k < m; ++k) u[i][k] = -u[i][k];
    for (int r = 0; r < m; ++r) u_inv[r][i] = -u_inv[r][i];
  }
};

Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SmithResult smith_normal_form(const IntMat& a) {
  Worker w(a);
  const int m = w.m, n = w.n;

  // Diagonalizes the trailing block starting at t0.  Standard minimal-pivot
  // reduction: remainders from failed divisions become smaller pivots, so
  // each position terminates.
  auto reduce_from = [&](int t0) {
    int t = t0;
    while (t < m && t < n) {
      int pi = -1, pj = -1;
      for (int i = t; i < m; ++i)
        for (int j = t; j < n; ++j)
          if (w.d[i][j] != 0 && (pi < 0 || ::abs(w.d[i][j]) < ::abs(w.d[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) break;
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);

      bool clean = false;
      while (!clean) {
        clean = true;
        for (int i = t + 1; i < m; ++i) {
          if (w.d[i][t] == 0) continue;
          w.add_row(i, t, -fdiv(w.d[i][t], w.d[t][t]));
          if (w.d[i][t] != 0) {
            w.swap_rows(t, i);
            clean = false;
          }
        }
        for (int j = t + 1; j < n; ++j) {
          if (w.d[t][j] == 0) continue;
          w.add_col(j, t, -fdiv(w.d[t][j], w.d[t][t]));
          if (w.d[t][j] != 0) {
            w.swap_cols(t, j);
            clean = false;
          }
        }
      }

      // The pivot must divide the whole trailing block; if not, folding the
      // offending row in shrinks the achievable pivot.
      bool divides = true;
      for (int i = t + 1; i < m && divides; ++i)
        for (int j = t + 1; j < n && divides; ++j)
          if (w.d[i][j] % w.d[t][t] != 0) {
            w.add_row(t, i, Int(1));
            divides = false;
          }
      if (divides) ++t;
    }
    for (int i = t0; i < std::min(m, n); ++i)
      if (w.d[i][i] < 0) w.negate_row(i);
    return t;
  };

  int t = reduce_from(0);

  // Repair diagonal divisibility; each pass strictly shrinks d[i], so this
  // terminates.
  for (int i = 0; i + 1 < t;) {
    if (w.d[i][i] == 0 || w.d[i + 1][i + 1] % w.d[i][i] == 0) {
      ++i;
      continue;
    }
    w.add_col(i, i + 1, Int(1));
    t = reduce_from(i);
    i = 0;
  }

  SmithResult res;
  res.d = std::move(w.d);
  res.u = std::move(w.u);
  res.v = std::move(w.v);
  res.u_inv = std::move(w.u_inv);
  res.v_inv = std::move(w.v_inv);
  for (int i = 0; i < std::min(m, n); ++i)
    if (res.d[i][i] != 0) {
      res.diag.push_back(res.d[i][i]);
      ++res.rank;
    }

  // Safety: recompose and compare; these matrices are small.
  check(mat_mul(mat_mul(res.u, a), res.v) == res.d, "smith recomposition");
  check(mat_mul(res.u, res.u_inv) == identity(m), "left transform inverse");
  check(mat_mul(res.v, res.v_inv) == identity(n), "right transform inverse");
  return res;
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
  if (a.empty() || b.empty()) return {};
  const int m = static_cast<int>(a.size());
  const int k = static_cast<int>(b.size());
  const int n = static_cast<int>(b[0].size());
  IntMat c(m, std::vector<Int>(n, 0));
  for (int i = 0; i < m; ++i)
    for (int l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (int j = 0; j < n; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

std::vector<RelativeCycle> absolute_h1_basis(const Surface& s) {
  const int E = s.num_edge_classes();
  const int V = s.num_vertex_classes();
  const int F = s.num_polygons();

  // boundary_1: vertex classes x edge classes
  IntMat d1(V, std::vector<Int>(E, 0));
  for (int id = 0; id < E; ++id) {
    EdgeRef e = s.edge_class(id).canonical;
    const Polygon& p = s.polygon(e.polygon);
    int head = s.vertex_class_of({e.polygon, p.wrap(e.edge + 1)});
    int tail = s.vertex_class_of({e.polygon, e.edge});
    d1[head][id] += 1;
    d1[tail][id] -= 1;
  }

  // Kernel lattice basis: columns of v beyond the rank of d1.
  auto s1 = smith_normal_form(d1);
  const int k = E - s1.rank;
  IntMat kernel(E, std::vector<Int>(k, 0));  // E x k
  for (int col = 0; col < k; ++col)
    for (int row = 0; row < E; ++row) kernel[row][col] = s1.v[row][s1.rank + col];

  // boundary_2 columns (one per polygon) expressed in kernel coordinates.
  auto sk = smith_normal_form(kernel);
  IntMat cmat(k, std::vector<Int>(F, 0));
  for (int p = 0; p < F; ++p) {
    std::vector<Int> b(E, 0);
    for (int e = 0; e < s.polygon(p).size(); ++e)
      b[s.edge_class_of({p, e})] += s.class_orientation({p, e});
    // Solve kernel * y = b through the Smith form of the kernel matrix.
    std::vector<Int> ub(E, 0);
    for (int i = 0; i < E; ++i)
      for (int j = 0; j < E; ++j) ub[i] += sk.u[i][j] * b[j];
    std::vector<Int> z(k, 0);
    for (int i = 0; i < E; ++i) {
      if (i < sk.rank) {
        check(ub[i] % sk.d[i][i] == 0, "face boundary lies in the kernel lattice");
        z[i] = ub[i] / sk.d[i][i];
      } else {
        check(ub[i] == 0, "face boundary is a cycle");
      }
    }
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) cmat[i][p] += sk.v[i][j] * z[j];
  }

  // H1 = Z^k / im(cmat); the free generators sit past the rank in the
  // transformed coordinates.
  auto sc = smith_normal_form(cmat);
  for (const Int& d : sc.diag)
    check(d == 1, "surface homology is torsion-free");
  std::vector<RelativeCycle> basis;
  for (int t = sc.rank; t < k; ++t) {
    // y = u_inv * e_t, then back to edge coordinates through the kernel.
    RelativeCycle cyc;
    for (int row = 0; row < E; ++row) {
      Int val = 0;
      for (int j = 0; j < k; ++j) val += kernel[row][j] * sc.u_inv[j][t];
      if (val != 0) {
        check(val.fits_slong_p(), "basis coefficient fits a machine word");
        cyc.weights[row] = val.get_si();
      }
    }
    check(s.boundary(cyc).empty(), "homology basis vector is a cycle");
    basis.push_back(std::move(cyc));
  }
  check(static_cast<int>(basis.size()) == 2 * s.genus(), "H1 rank is 2g");
  return basis;
}

std::optional<Int> span_index(const std::vector<std::vector<long long>>& rows, int dim) {
  IntMat a;
  for (const auto& r : rows) {
    check(static_cast<int>(r.size()) == dim, "span_index row dimension");
    std::vector<Int> row;
    for (long long x : r) row.emplace_back(static_cast<long>(x));
    a.push_back(std::move(row));
  }
  if (a.empty()) return dim == 0 ? std::optional<Int>(Int(1)) : std::nullopt;
  auto sm = smith_normal_form(a);
  if (sm.rank < dim) return std::nullopt;
  Int idx(1);
  for (const Int& d : sm.diag) idx *= d;
  return idx;
}

}  // namespace zcover

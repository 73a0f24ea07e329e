#pragma once

// Reference computations for tests. Deliberately naive: plain vectors,
// loops over plots and a cyclic Jacobi eigen-solver, sharing no code with
// the library beyond reading a layout's cells.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "slsq/design.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

inline Matrix zeros(int n) { return Matrix(n, std::vector<double>(n, 0.0)); }

struct Shape {
  int s, k, r;
  int v() const { return k * s; }
};

inline Shape shape_of(const slsq::Layout& l) { return {l.params().s, l.params().k, l.params().r}; }

inline int label(const slsq::Layout& l, int rep, int row, int col) {
  const auto& p = l.params();
  return l.cells()[(static_cast<std::size_t>(rep) * p.k + row) * p.s + col];
}

// Concurrence N N' where a block is a short column (by_rows = false) or a
// row within a replicate (by_rows = true).
inline Matrix concurrence(const slsq::Layout& l, bool by_rows) {
  const Shape sh = shape_of(l);
  Matrix nn = zeros(sh.v());
  const int blocks_per_rep = by_rows ? sh.k : sh.s;
  const int size = by_rows ? sh.s : sh.k;
  for (int rep = 0; rep < sh.r; ++rep) {
    for (int b = 0; b < blocks_per_rep; ++b) {
      std::vector<int> members;
      for (int i = 0; i < size; ++i) {
        members.push_back(by_rows ? label(l, rep, b, i) - 1 : label(l, rep, i, b) - 1);
      }
      for (int x : members)
        for (int y : members) nn[x][y] += 1.0;
    }
  }
  return nn;
}

// Information matrices scaled by the replication r.
inline Matrix column_info(const slsq::Layout& l) {
  const Shape sh = shape_of(l);
  Matrix c = concurrence(l, false);
  for (int i = 0; i < sh.v(); ++i)
    for (int j = 0; j < sh.v(); ++j) c[i][j] = (i == j ? 1.0 : 0.0) - c[i][j] / (sh.r * sh.k);
  return c;
}

inline Matrix row_info(const slsq::Layout& l) {
  const Shape sh = shape_of(l);
  Matrix c = concurrence(l, true);
  for (int i = 0; i < sh.v(); ++i)
    for (int j = 0; j < sh.v(); ++j) c[i][j] = (i == j ? 1.0 : 0.0) - c[i][j] / (sh.r * sh.s);
  return c;
}

inline Matrix rowcol_info(const slsq::Layout& l) {
  const Shape sh = shape_of(l);
  const Matrix nc = concurrence(l, false);
  const Matrix nr = concurrence(l, true);
  Matrix c = zeros(sh.v());
  for (int i = 0; i < sh.v(); ++i)
    for (int j = 0; j < sh.v(); ++j)
      c[i][j] = (i == j ? 1.0 : 0.0) - nr[i][j] / (sh.r * sh.s) - nc[i][j] / (sh.r * sh.k) + 1.0 / sh.v();
  return c;
}

// All eigenvalues of a symmetric matrix, ascending.
inline std::vector<double> jacobi_eigenvalues(Matrix a) {
  const int n = static_cast<int>(a.size());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

// Eigenvalues on the contrast space of an information matrix that
// annihilates the ones vector: adding 10 J / v moves the ones direction to
// eigenvalue 10, above every efficiency factor, and it is then dropped.
inline std::vector<double> contrast_eigenvalues(Matrix c) {
  const int n = static_cast<int>(c.size());
  for (auto& row : c)
    for (auto& x : row) x += 10.0 / n;
  auto ev = jacobi_eigenvalues(std::move(c));
  ev.pop_back();
  return ev;
}

inline double harmonic_mean(const std::vector<double>& ev) {
  double inv = 0.0;
  for (double e : ev) {
    if (e < 1e-8) return 0.0;
    inv += 1.0 / e;
  }
  return static_cast<double>(ev.size()) / inv;
}

inline double e_col(const slsq::Layout& l) { return harmonic_mean(contrast_eigenvalues(column_info(l))); }
inline double e_row(const slsq::Layout& l) { return harmonic_mean(contrast_eigenvalues(row_info(l))); }
inline double e_rowcol(const slsq::Layout& l) { return harmonic_mean(contrast_eigenvalues(rowcol_info(l))); }

inline bool latinized(const slsq::Layout& l) {
  const Shape sh = shape_of(l);
  for (int col = 0; col < sh.s; ++col) {
    std::vector<int> seen(sh.v() + 1, 0);
    for (int rep = 0; rep < sh.r; ++rep)
      for (int row = 0; row < sh.k; ++row)
        if (seen[label(l, rep, row, col)]++) return false;
  }
  return true;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Splits a CSV with a header row into numeric rows.
inline std::vector<std::vector<double>> read_csv(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace oracle

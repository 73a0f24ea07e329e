#include "slsq/efficiency.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "slsq/error.hpp"

namespace slsq {

namespace {

void require_blocks(const DesignParams& p, Blocking which) {
  const int size = which == Blocking::columns ? p.k : p.s;
  if (size < 2) {
    throw DomainError(std::string(which == Blocking::columns ? "column" : "row") +
                      " blocks of size 1 carry no information (degenerate design)");
  }
}

// Gram matrix (1/size) N N' accumulated directly from the layout, without
// forming N.
Eigen::MatrixXd concurrence(const Layout& layout, Blocking which) {
  const auto& p = layout.params();
  const int v = p.v();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(v, v);
  const int outer = which == Blocking::columns ? p.s : p.k;
  const int inner = which == Blocking::columns ? p.k : p.s;
  const auto cell = [&](int rep, int block, int pos) {
    return which == Blocking::columns ? layout.at(rep, pos, block) : layout.at(rep, block, pos);
  };
  for (int rep = 0; rep < p.r; ++rep) {
    for (int b = 0; b < outer; ++b) {
      for (int i = 0; i < inner; ++i) {
        const int ti = cell(rep, b, i) - 1;
        for (int j = 0; j < inner; ++j) out(ti, cell(rep, b, j) - 1) += 1.0;
      }
    }
  }
  return out / static_cast<double>(inner);
}

// Orthonormal basis of the contrasts (columns orthogonal to all-ones):
// normalised Helmert vectors.
Eigen::MatrixXd contrast_basis(int v) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(v, v - 1);
  for (int j = 0; j < v - 1; ++j) {
    const double n = j + 1;
    const double scale = 1.0 / std::sqrt(n * (n + 1));
    for (int i = 0; i <= j; ++i) h(i, j) = scale;
    h(j + 1, j) = -n * scale;
  }
  return h;
}

}  // namespace

std::vector<std::pair<double, int>> EfficiencySummary::multiplicities(double tol) const {
  std::vector<std::pair<double, int>> out;
  for (double f : factors) {
    if (!out.empty() && std::abs(f - out.back().first) <= tol) {
      ++out.back().second;
    } else {
      out.emplace_back(f, 1);
    }
  }
  return out;
}

IncidenceMatrix column_incidence(const Layout& layout) {
  const auto& p = layout.params();
  IncidenceMatrix n{Eigen::MatrixXi::Zero(p.v(), p.r * p.s), p.k};
  for (int rep = 0; rep < p.r; ++rep)
    for (int row = 0; row < p.k; ++row)
      for (int col = 0; col < p.s; ++col) n.counts(layout.at(rep, row, col) - 1, rep * p.s + col) += 1;
  return n;
}

IncidenceMatrix row_incidence(const Layout& layout) {
  const auto& p = layout.params();
  IncidenceMatrix n{Eigen::MatrixXi::Zero(p.v(), p.r * p.k), p.s};
  for (int rep = 0; rep < p.r; ++rep)
    for (int row = 0; row < p.k; ++row)
      for (int col = 0; col < p.s; ++col) n.counts(layout.at(rep, row, col) - 1, rep * p.k + row) += 1;
  return n;
}

Eigen::MatrixXd block_information(const Layout& layout, Blocking which) {
  const auto& p = layout.params();
  require_blocks(p, which);
  Eigen::MatrixXd info = -concurrence(layout, which) / static_cast<double>(p.r);
  info.diagonal().array() += 1.0;
  return info;
}

Eigen::MatrixXd rowcol_information(const Layout& layout) {
  const auto& p = layout.params();
  require_blocks(p, Blocking::columns);
  require_blocks(p, Blocking::rows);
  const int v = p.v();
  Eigen::MatrixXd info =
      -(concurrence(layout, Blocking::rows) + concurrence(layout, Blocking::columns)) /
      static_cast<double>(p.r);
  info.array() += 1.0 / v;
  info.diagonal().array() += 1.0;
  return info;
}

EfficiencySummary canonical_efficiency_factors(const Eigen::MatrixXd& info) {
  const auto v = info.rows();
  if (v < 2 || info.cols() != v) throw ValidationError("information matrix must be square with v >= 2");
  const double scale = std::max(1.0, info.cwiseAbs().maxCoeff());
  if ((info - info.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw ValidationError("information matrix is not symmetric");
  }
  if (info.rowwise().sum().cwiseAbs().maxCoeff() > 1e-9 * scale * static_cast<double>(v)) {
    throw ValidationError("information matrix does not annihilate the all-ones vector");
  }
  const Eigen::MatrixXd h = contrast_basis(static_cast<int>(v));
  const Eigen::MatrixXd reduced = h.transpose() * info * h;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(reduced, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ValidationError("eigen-decomposition failed");

  EfficiencySummary out;
  out.factors.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(out.factors.begin(), out.factors.end());
  out.connected = out.factors.front() > kConnectivityTolerance;
  if (out.connected) {
    double inv_sum = 0.0;
    for (double f : out.factors) inv_sum += 1.0 / f;
    out.average = static_cast<double>(out.factors.size()) / inv_sum;
  }
  return out;
}

double average_efficiency(const Eigen::MatrixXd& info) {
  const auto v = info.rows();
  Eigen::MatrixXd shifted = info;
  shifted.array() += 1.0 / static_cast<double>(v);
  Eigen::LLT<Eigen::MatrixXd> llt(shifted);
  if (llt.info() != Eigen::Success) return 0.0;
  const Eigen::MatrixXd l = llt.matrixL();
  if (l.diagonal().minCoeff() <= std::sqrt(kConnectivityTolerance)) return 0.0;
  // trace(A^-1) = ||L^-1||_F^2
  Eigen::MatrixXd linv = Eigen::MatrixXd::Identity(v, v);
  llt.matrixL().solveInPlace(linv);
  const double trace_inv = linv.squaredNorm();
  const double contrast_sum = trace_inv - 1.0;
  if (contrast_sum <= 0.0) return 0.0;
  return static_cast<double>(v - 1) / contrast_sum;
}

Evaluation evaluate(const Layout& layout) {
  return {canonical_efficiency_factors(block_information(layout, Blocking::columns)),
          canonical_efficiency_factors(block_information(layout, Blocking::rows)),
          canonical_efficiency_factors(rowcol_information(layout))};
}

double average_col_efficiency(const Layout& layout) {
  return average_efficiency(block_information(layout, Blocking::columns));
}

double average_rowcol_efficiency(const Layout& layout) {
  return average_efficiency(rowcol_information(layout));
}

}  // namespace slsq

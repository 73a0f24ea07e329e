#include "slsq/dual.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

#include "slsq/bounds.hpp"
#include "slsq/efficiency.hpp"
#include "slsq/error.hpp"

namespace slsq {

namespace {

using Eigen::MatrixXd;

constexpr double kRcondCutoff = 1e-10;

Eigen::MatrixXi block_concurrence(const Layout& layout) {
  const Eigen::MatrixXi n = column_incidence(layout).counts;
  return n.transpose() * n;
}

// Empty string when the concurrence pattern is in the analysed class.
std::string class_violation(const Eigen::MatrixXi& conc, int s) {
  for (int a = 0; a < s; ++a) {
    for (int b = 0; b < s; ++b) {
      const auto block = conc.block(a * s, b * s, s, s);
      if (a == b) {
        if (block != Eigen::MatrixXi::Identity(s, s) * s) {
          return "diagonal submatrix " + std::to_string(a + 1) + " is not s*I";
        }
        continue;
      }
      for (int i = 0; i < s; ++i) {
        if (block(i, i) != 0) return "columns sharing a long column also share treatments";
        int twos_row = 0, twos_col = 0;
        for (int j = 0; j < s; ++j) {
          if (i == j) continue;
          const int x = block(i, j);
          if (x != 1 && x != 2) {
            return "concurrence " + std::to_string(x) + " between replicates " + std::to_string(a + 1) +
                   " and " + std::to_string(b + 1);
          }
          twos_row += block(i, j) == 2;
          twos_col += block(j, i) == 2;
        }
        if (twos_row != 1 || twos_col != 1) return "concurrences differ by more than one";
      }
    }
  }
  return {};
}

MatrixXd solve_checked(const MatrixXd& lhs, const MatrixXd& rhs) {
  Eigen::PartialPivLU<MatrixXd> lu(lhs);
  if (!(lu.rcond() >= kRcondCutoff)) {
    throw SingularError("(s^2-s-1)I - Q is singular (design outside the analysed class)");
  }
  return lu.solve(rhs);
}

MatrixXd star_star_base(const DualStructure& d) {
  const double s = d.s;
  const auto p = projections(d.s);
  const MatrixXd id = MatrixXd::Identity(d.blocks(), d.blocks());
  return s * s * s * (s - 1) * id - s * s * p.p0 - s * s * (s - 1) * (p.p1 + p.p2);
}

}  // namespace

bool in_dual_class(const Layout& layout) {
  const auto& p = layout.params();
  if (p.k != p.s || p.r != p.s || !is_latinized(layout)) return false;
  return class_violation(block_concurrence(layout), p.s).empty();
}

DualStructure dual_concurrence(const Layout& layout) {
  const auto& p = layout.params();
  if (p.k != p.s || p.r != p.s) throw DomainError("dual-design algebra needs k = r = s");
  if (p.s < 3) throw DomainError("dual-design algebra needs s >= 3");
  if (!is_latinized(layout)) throw ValidationError("design is not latinized");
  DualStructure d;
  d.s = p.s;
  d.concurrence = block_concurrence(layout);
  if (auto why = class_violation(d.concurrence, p.s); !why.empty()) throw OutsideClassError(why);
  d.q = (d.concurrence.array() == 2).cast<int>();
  return d;
}

ProjectionTriple projections(int s) {
  const MatrixXd id = MatrixXd::Identity(s, s);
  const MatrixXd ones = MatrixXd::Ones(s, s);
  const int b = s * s;
  ProjectionTriple p;
  p.p0 = MatrixXd::Constant(b, b, 1.0 / b);
  p.p1 = MatrixXd::Zero(b, b);
  p.p2 = MatrixXd::Zero(b, b);
  for (int a = 0; a < s; ++a) {
    for (int c = 0; c < s; ++c) {
      p.p1.block(a * s, c * s, s, s) = (a == c ? ones : MatrixXd::Zero(s, s)) / s;
      p.p2.block(a * s, c * s, s, s) = id / s;
    }
  }
  return p;
}

MatrixXd a_d_star(const DualStructure& d) {
  const double s = d.s;
  const auto p = projections(d.s);
  const MatrixXd q = d.q.cast<double>();
  return (s * s - s - 1) / (s * s) * MatrixXd::Identity(d.blocks(), d.blocks()) - p.p0 +
         (p.p1 + p.p2) / s - q / (s * s);
}

MatrixXd a_d_star_from_concurrence(const DualStructure& d) {
  const double s = d.s;
  return MatrixXd::Identity(d.blocks(), d.blocks()) - d.concurrence.cast<double>() / (s * s);
}

MatrixXd q_star(const DualStructure& d) {
  const double s = d.s;
  const auto p = projections(d.s);
  const MatrixXd id = MatrixXd::Identity(d.blocks(), d.blocks());
  const MatrixXd q = d.q.cast<double>();
  const MatrixXd rhs = s * (s - 1) * q - s * id - s * s * p.p0 + s * (p.p1 + p.p2);
  return solve_checked((s * s - s - 1) * id - q, rhs);
}

MatrixXd a_d_star_star(const DualStructure& d) {
  const double s = d.s;
  return (star_star_base(d) + s * s * q_star(d)) / (s * s * s * (s - 2));
}

MatrixXd a_d_star_star_without_q_star(const DualStructure& d) {
  const double s = d.s;
  return star_star_base(d) / (s * s * s * (s - 2));
}

double q_star_trace_identity(const DualStructure& d) {
  const double s = d.s;
  const MatrixXd id = MatrixXd::Identity(d.blocks(), d.blocks());
  const MatrixXd q = d.q.cast<double>();
  return 1.0 - solve_checked((s * s - s - 1) * id - q, s * id - s * (s - 1) * q).trace();
}

double e_col_via_trace(const DualStructure& d) {
  const double s = d.s;
  const MatrixXd p0 = projections(d.s).p0;
  return (s * s - 1) / (a_d_star_star(d) - p0).trace();
}

WColCheck w_col_derivation_check(const DualStructure& d) {
  const double s = d.s;
  const MatrixXd p0 = projections(d.s).p0;
  WColCheck c;
  c.e_col = e_col_via_trace(d);
  c.bound = (s * s - 1) / (a_d_star_star_without_q_star(d) - p0).trace();
  c.gap = c.bound - c.e_col;
  c.w_col = w_col(d.s);
  return c;
}

bool AppendixReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.passed; });
}

AppendixReport verify_appendix(const Layout& layout) {
  const DualStructure d = dual_concurrence(layout);
  const auto p = projections(d.s);
  const double s = d.s;
  const int b = d.blocks();
  const MatrixXd id = MatrixXd::Identity(b, b);
  const MatrixXd q = d.q.cast<double>();

  AppendixReport rep;
  rep.s = d.s;
  auto add = [&rep](std::string name, double residual, double tol) {
    rep.checks.push_back({std::move(name), residual, tol, residual <= tol});
  };
  auto maxabs = [](const MatrixXd& m) { return m.cwiseAbs().maxCoeff(); };

  add("P1 P2 = P0", maxabs(p.p1 * p.p2 - p.p0), 1e-12);
  add("P0 P0 = P0", maxabs(p.p0 * p.p0 - p.p0), 1e-12);
  add("P0 P1 = P0", maxabs(p.p0 * p.p1 - p.p0), 1e-12);
  add("P0 P2 = P0", maxabs(p.p0 * p.p2 - p.p0), 1e-12);
  add("Q P0 = s P0 - P0", maxabs(q * p.p0 - (s * p.p0 - p.p0)), 1e-12);
  add("Q P1 = s P0 - P1", maxabs(q * p.p1 - (s * p.p0 - p.p1)), 1e-12);
  add("Q P2 = s P0 - P2", maxabs(q * p.p2 - (s * p.p0 - p.p2)), 1e-12);

  const MatrixXd a_star = a_d_star(d);
  add("A* expansion = I - N'N/s^2", maxabs(a_star - a_d_star_from_concurrence(d)), 1e-12);
  add("A* 1 = 0", (a_star * Eigen::VectorXd::Ones(b)).cwiseAbs().maxCoeff(), 1e-12);

  const MatrixXd a_ss = a_d_star_star(d);
  add("(A* + P0) A** = I", maxabs((a_star + p.p0) * a_ss - id), 1e-9);

  const MatrixXd qs = q_star(d);
  rep.trace_q_star = qs.trace();
  add("trace(Q*) closed form", std::abs(q_star_trace_identity(d) - rep.trace_q_star), 1e-9);
  add("trace(Q*) >= 0", std::max(0.0, -rep.trace_q_star), 1e-9);

  rep.e_col_eigen = canonical_efficiency_factors(block_information(layout, Blocking::columns)).average;
  rep.e_col_trace = e_col_via_trace(d);
  add("E_col trace = E_col eigen", std::abs(rep.e_col_trace - rep.e_col_eigen), 1e-9);

  rep.w_col = w_col_derivation_check(d);
  add("bound without Q* = W_col", std::abs(rep.w_col.bound - rep.w_col.w_col), 1e-9);
  add("E_col <= bound", std::max(0.0, -rep.w_col.gap), 1e-9);
  return rep;
}

}  // namespace slsq

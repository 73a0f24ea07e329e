#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "slsq/design.hpp"

namespace slsq {

/// Block concurrence N'N of a latinized design with k = r = s, blocks being
/// short columns in replicate-major order (b = s^2). `q` marks the
/// off-diagonal-block positions where two columns share two treatments.
struct DualStructure {
  int s = 0;
  Eigen::MatrixXi concurrence;
  Eigen::MatrixXi q;

  [[nodiscard]] int blocks() const { return s * s; }
};

/// Mean projection p0 = J/s^2, within-replicate p1 = (I (x) J)/s and
/// same-column-position p2 = (J (x) I)/s.
struct ProjectionTriple {
  Eigen::MatrixXd p0;
  Eigen::MatrixXd p1;
  Eigen::MatrixXd p2;
};

/// Off-diagonal concurrences in {1, 2} with exactly one 2 per row and
/// column of each off-diagonal s x s submatrix.
[[nodiscard]] bool in_dual_class(const Layout& layout);

/// Throws DomainError unless k = r = s, ValidationError if the layout is not
/// latinized, OutsideClassError if concurrences leave the analysed class.
[[nodiscard]] DualStructure dual_concurrence(const Layout& layout);

[[nodiscard]] ProjectionTriple projections(int s);

/// Assembled term by term:
/// (s^2-s-1)/s^2 I - p0 + p1/s + p2/s - Q/s^2.
[[nodiscard]] Eigen::MatrixXd a_d_star(const DualStructure& dual);

/// I - N'N / s^2, the scaled dual information matrix built from the
/// concurrences directly.
[[nodiscard]] Eigen::MatrixXd a_d_star_from_concurrence(const DualStructure& dual);

/// Q* = ((s^2-s-1) I - Q)^-1 (s(s-1) Q - s I - s^2 p0 + s p1 + s p2).
/// Throws SingularError when the first factor has reciprocal condition
/// below 1e-10.
[[nodiscard]] Eigen::MatrixXd q_star(const DualStructure& dual);

/// (A* + p0)^-1 in closed form:
/// {s^3(s-1) I - s^2 p0 - s^2(s-1) p1 - s^2(s-1) p2 + s^2 Q*} / {s^3 (s-2)}.
///
/// The p0 coefficient is -s^2; with -s^2(s-1)^2 the expression is short of
/// the inverse by exactly p0.
[[nodiscard]] Eigen::MatrixXd a_d_star_star(const DualStructure& dual);

/// Same expression with the Q* term removed.
[[nodiscard]] Eigen::MatrixXd a_d_star_star_without_q_star(const DualStructure& dual);

/// 1 - trace(((s^2-s-1) I - Q)^-1 (s I - s(s-1) Q)), the closed form of
/// trace(Q*).
[[nodiscard]] double q_star_trace_identity(const DualStructure& dual);

/// E_col = (s^2 - 1) / trace(A** - p0).
[[nodiscard]] double e_col_via_trace(const DualStructure& dual);

struct WColCheck {
  double e_col = 0;
  double bound = 0;  ///< (s^2 - 1) / trace(A** without Q* - p0)
  double gap = 0;    ///< bound - e_col
  double w_col = 0;  ///< closed form from bounds
};

[[nodiscard]] WColCheck w_col_derivation_check(const DualStructure& dual);

struct IdentityCheck {
  std::string name;
  double residual = 0;
  double tolerance = 0;
  bool passed = false;
};

/// Every numerical identity of the dual-design algebra for one layout.
struct AppendixReport {
  int s = 0;
  double e_col_eigen = 0;
  double e_col_trace = 0;
  double trace_q_star = 0;
  WColCheck w_col;
  std::vector<IdentityCheck> checks;

  [[nodiscard]] bool all_passed() const;
};

[[nodiscard]] AppendixReport verify_appendix(const Layout& layout);

}  // namespace slsq

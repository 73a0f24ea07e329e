#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "slsq/design.hpp"

namespace slsq {

/// Eigenvalues at or below this are zero; the design is then disconnected.
inline constexpr double kConnectivityTolerance = 1e-8;

/// v x b treatment-by-block incidence counts.
struct IncidenceMatrix {
  Eigen::MatrixXi counts;
  int block_size = 0;

  [[nodiscard]] int treatments() const { return static_cast<int>(counts.rows()); }
  [[nodiscard]] int blocks() const { return static_cast<int>(counts.cols()); }
};

/// Canonical efficiency factors on the (v-1)-dimensional contrast space,
/// sorted ascending, and their harmonic mean.
struct EfficiencySummary {
  std::vector<double> factors;
  double average = 0.0;
  bool connected = false;

  /// Distinct factors (merged within `tol`) with their multiplicities.
  [[nodiscard]] std::vector<std::pair<double, int>> multiplicities(double tol = 1e-9) const;
};

enum class Blocking { rows, columns };

/// Short columns as blocks: r*s blocks of size k, ordered replicate-major
/// then column index.
[[nodiscard]] IncidenceMatrix column_incidence(const Layout& layout);

/// Short rows as blocks: r*k blocks of size s, replicate-major then row.
[[nodiscard]] IncidenceMatrix row_incidence(const Layout& layout);

/// (1/r) C with C = r I - (1/blocksize) N N'. Rejects block size 1.
[[nodiscard]] Eigen::MatrixXd block_information(const Layout& layout, Blocking which);

/// (1/r) C for rows and columns within replicates:
/// C = r I - (1/s) Nr Nr' - (1/k) Nc Nc' + (r/v) J.
[[nodiscard]] Eigen::MatrixXd rowcol_information(const Layout& layout);

/// Eigen-decomposes `info` restricted to treatment contrasts. Throws
/// ValidationError when `info` is not symmetric or does not annihilate the
/// all-ones vector.
[[nodiscard]] EfficiencySummary canonical_efficiency_factors(const Eigen::MatrixXd& info);

/// Harmonic-mean efficiency without an eigen-decomposition:
/// (v-1) / (trace((info + J/v)^-1) - 1), or 0 when a Cholesky pivot falls
/// under the connectivity tolerance. Used in search loops; agrees with
/// canonical_efficiency_factors(info).average.
[[nodiscard]] double average_efficiency(const Eigen::MatrixXd& info);

struct Evaluation {
  EfficiencySummary col;
  EfficiencySummary row;
  EfficiencySummary rowcol;
};

[[nodiscard]] Evaluation evaluate(const Layout& layout);

/// Fast objectives for search: E_col and E_rowcol averages only.
[[nodiscard]] double average_col_efficiency(const Layout& layout);
[[nodiscard]] double average_rowcol_efficiency(const Layout& layout);

}  // namespace slsq

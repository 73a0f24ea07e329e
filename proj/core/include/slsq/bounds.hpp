#pragma once

#include <cstdint>
#include <optional>
#include <span>

namespace slsq {

/// Exact rational value of a closed-form bound.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  [[nodiscard]] double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// Upper bound on E_col for latinized block designs with k = s:
/// (s+1)^2 (s-2) / (s^3 + s^2 - 3s - 2). Requires s >= 3.
[[nodiscard]] Fraction u_col_latinized_square_exact(int s);
[[nodiscard]] double u_col_latinized_square(int s);

/// The sharper quantity s (s+1) (s-2) / (s^3 - 3s + 1) obtained by dropping
/// the Q* term of the dual inverse. Proven to bound E_col only at s = 6;
/// it dominates the best known designs for 3 <= s <= 7. Requires s >= 3.
[[nodiscard]] Fraction w_col_exact(int s);
[[nodiscard]] double w_col(int s);

/// Reference efficiencies and bounds for extended semi-Latin squares,
/// 3 <= s <= 7 and 2 <= k <= s.
struct Table1Row {
  int s = 0;
  int k = 0;
  double e_col = 0;
  double u_col = 0;
  double e_rowcol = 0;
  double u_rowcol = 0;
};

/// Best E_col, W_col and U_col for the k = s designs.
struct Table2Row {
  int s = 0;
  double e_col = 0;
  double w_col = 0;
  double u_col = 0;
};

[[nodiscard]] std::span<const Table1Row> table1();
[[nodiscard]] std::span<const Table2Row> table2();

/// Throws DomainError outside the table.
[[nodiscard]] Table1Row reference_table1(int s, int k);
[[nodiscard]] std::optional<Table1Row> find_table1(int s, int k);

struct BoundSet {
  double u_col_eq1 = 0;
  double w_col_eq2 = 0;
  std::optional<double> reference_u_col;
  std::optional<double> reference_u_rowcol;
  /// W_col is only proven to be an upper bound at s = 6.
  bool w_col_proven = false;
};

/// Requires s >= 3; reference values are filled when (s, k) is tabulated.
[[nodiscard]] BoundSet bound_set(int s, int k);

}  // namespace slsq

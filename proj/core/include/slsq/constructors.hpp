#pragma once

#include <cstdint>
#include <vector>

#include "slsq/design.hpp"
#include "slsq/efficiency.hpp"

namespace slsq {

/// Pairwise orthogonal Latin squares of a common order. Each square is
/// row-major with symbols 0..order-1.
struct LatinSquareSet {
  int order = 0;
  std::vector<std::vector<int>> squares;

  [[nodiscard]] int at(std::size_t square, int row, int col) const {
    return squares[square][static_cast<std::size_t>(row) * order + col];
  }
};

[[nodiscard]] bool is_latin_square(const std::vector<int>& square, int order);
[[nodiscard]] bool are_orthogonal(const std::vector<int>& a, const std::vector<int>& b, int order);

/// Square m (m = 1..k) has (i + m j) mod s at cell (i, j). Requires s prime
/// and 1 <= k <= s - 1.
[[nodiscard]] LatinSquareSet cyclic_mols(int s, int k);

/// Superimposes the squares into a semi-Latin square with r = s replicates
/// of k x s: replicate j, row m, column i holds (m-1) s + L_m(j, -i mod s) + 1.
/// For the cyclic squares this is the Figure 2(a) arrangement, treatment
/// groups {1..s}, {s+1..2s}, ... occupying fixed rows.
[[nodiscard]] Layout trojan_square(const LatinSquareSet& mols);

/// Cycles the last column of every replicate up by one row (row m takes
/// row m+1's label, the last row takes the first's). Requires k >= 2.
[[nodiscard]] Layout rotate_last_column(const Layout& layout);

/// Initial search layout: treatment (m-1) s + i at row m, column
/// ((i + j - 2) mod s) + 1 of replicate j. Latinized whenever r <= s.
[[nodiscard]] Layout cyclic_start_layout(const DesignParams& params);

enum class Objective { col, rowcol };

struct EnumerationResult {
  double best_value = 0;
  Layout witness;
  std::uint64_t designs_evaluated = 0;
};

/// Canonical candidates the enumeration would visit, roughly; the
/// enumeration refuses anything above kMaxEnumerationSpace.
inline constexpr double kMaxEnumerationSpace = 1e8;
[[nodiscard]] double enumeration_space(const DesignParams& params, Objective objective);

/// Exhaustive search for the best latinized design. The first replicate is
/// fixed to the standard order; later replicates range over arrangements
/// that are distinct for the objective (column sets for col, grids up to row
/// and column order for rowcol), the second reduced under the stabiliser of
/// the first and the rest taken in nondecreasing order. Ties keep the first
/// design in enumeration order. Throws DomainError when the space exceeds
/// kMaxEnumerationSpace, or for r > s, k < 2 or v > 64.
[[nodiscard]] EnumerationResult enumerate_optimum(const DesignParams& params, Objective objective);

}  // namespace slsq

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace slsq {

/// Dimensions of a resolvable design: r replicates, each a k x s grid,
/// holding v = k * s treatments.
struct DesignParams {
  int s = 0;  ///< columns per replicate
  int k = 0;  ///< rows per replicate
  int r = 0;  ///< replicates

  [[nodiscard]] constexpr int v() const { return k * s; }
  [[nodiscard]] constexpr int plots() const { return r * k * s; }

  friend constexpr bool operator==(const DesignParams&, const DesignParams&) = default;
};

/// r stacked replicates of k x s treatment labels (1-based). A constructed
/// Layout is always resolvable: each replicate holds every label exactly once.
class Layout {
 public:
  /// Validates bounds and resolvability; throws ValidationError otherwise.
  Layout(DesignParams params, std::vector<int> cells);

  [[nodiscard]] const DesignParams& params() const { return params_; }
  [[nodiscard]] std::span<const int> cells() const { return cells_; }

  [[nodiscard]] int at(int rep, int row, int col) const { return cells_[index(rep, row, col)]; }

  /// Replicate-major, then row, then column.
  [[nodiscard]] std::size_t index(int rep, int row, int col) const {
    return (static_cast<std::size_t>(rep) * params_.k + row) * params_.s + col;
  }

  /// Exchanges two cells of the same replicate; resolvability is preserved.
  void swap_cells(int rep, int row_a, int col_a, int row_b, int col_b);

  friend bool operator==(const Layout&, const Layout&) = default;

 private:
  DesignParams params_;
  std::vector<int> cells_;
};

struct DesignClass {
  bool resolvable = false;
  bool latinized = false;
  bool semi_latin = false;
  /// Same layout as a semi-Latin square, evaluated with rows as an extra
  /// blocking factor, so the flag always equals semi_latin.
  bool extended_semi_latin = false;
};

/// Never throws on a non-latinized layout.
[[nodiscard]] DesignClass classify(const Layout& layout);

/// True iff no treatment appears twice in any long column (a fixed column
/// index across all replicates).
[[nodiscard]] bool is_latinized(const Layout& layout);

/// Shape used when a design file carries no header line.
struct ShapeHint {
  std::optional<int> k;
  std::optional<int> r;
};

/// Reads the design file format:
///
///     # s=<int> k=<int> r=<int>      (optional header)
///     k*r lines of s whitespace-separated labels
///
/// Blank lines are ignored. Without a header, s is the token count of the
/// first line; k and r come from `hint`, or from blank-line grouping of
/// replicates when the hint is empty.
[[nodiscard]] Layout parse_layout(std::string_view text, const ShapeHint& hint = {});

/// Canonical text: header, labels right-aligned to the width of v and
/// separated by one space, one blank line between replicates, LF endings.
[[nodiscard]] std::string serialize_layout(const Layout& layout);

/// Reads and parses a file; I/O failures surface as ParseError.
[[nodiscard]] Layout load_layout(const std::string& path, const ShapeHint& hint = {});

/// The layouts printed in the Figure 1 (8 treatments, 4 replicates of 2 x 4)
/// and Figure 2 (15 treatments, 5 replicates of 3 x 5) panels, by name:
/// fig1a, fig1b, fig1c, fig2a, fig2b, fig2c, fig2d.
[[nodiscard]] const std::vector<std::string>& figure_names();
[[nodiscard]] Layout figure_layout(std::string_view name);

}  // namespace slsq

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "slsq/design.hpp"

namespace slsq {

enum class SearchMode { two_stage, simultaneous };

/// Geometric cooling: the temperature is multiplied by `decay` after every
/// proposed move.
struct Schedule {
  double initial_temperature = 0.01;
  /// Empty: the temperature falls by a factor e^4 over the stage's budget.
  std::optional<double> decay = 0.999;
};

/// min(320 v^3, 8'000'000): the stage-2 budget used when none is given.
[[nodiscard]] int auto_stage2_moves(int v);

/// The per-move decay a schedule uses over `moves` proposals.
[[nodiscard]] double resolved_decay(const Schedule& schedule, long moves);

/// Simulated-annealing settings. Defaults reach the tabulated E_col and
/// E_rowcol values for 2 <= k <= s <= 5 within a few tenths of a percent.
struct SearchConfig {
  std::uint64_t seed = 42;
  int restarts = 20;
  int stage1_moves = 50000;
  /// Empty: auto_stage2_moves(v). Within-column swaps are cheap
  /// (incremental update), so stage 2 cools slowly over a long budget.
  std::optional<int> stage2_moves;
  Schedule stage1_schedule{0.01, 0.999};
  /// Also used by simultaneous mode.
  Schedule stage2_schedule{0.004, std::nullopt};
  SearchMode mode = SearchMode::two_stage;
  int threads = 0;  ///< 0 = hardware concurrency; results do not depend on it
  /// Stop a stage once its objective reaches this (an upper bound). Empty:
  /// search() fills it from the known bounds.
  std::optional<double> stage1_target;
  std::optional<double> stage2_target;
};

/// Throws DomainError on a decay outside (0, 1), a non-positive initial
/// temperature, negative budgets or restarts < 1.
void validate(const SearchConfig& config);

struct MoveStats {
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
  /// Proposals that could not be completed without breaking latinization.
  std::uint64_t infeasible = 0;

  MoveStats& operator+=(const MoveStats& o) {
    accepted += o.accepted;
    rejected += o.rejected;
    infeasible += o.infeasible;
    return *this;
  }
};

struct StageResult {
  Layout best;
  double value = 0;  ///< objective of `best`
  MoveStats moves;
};

/// Maximises E_col over latinized designs with r = s. A move swaps two
/// treatments between two short columns of one replicate and repairs the
/// two long columns by a chain of further swaps between the same column
/// pair in other replicates, so every visited layout stays latinized.
[[nodiscard]] StageResult stage1_search(const DesignParams& params, const SearchConfig& config,
                                        int restart = 0);

/// Maximises E_rowcol by exchanging the entries of two rows of one replicate
/// inside one column or a subset of columns; column contents, E_col and
/// latinization never change. A zero budget returns `start` unchanged.
[[nodiscard]] StageResult stage2_search(const Layout& start, const SearchConfig& config, int restart = 0);

/// Both move kinds in one anneal with objective E_rowcol, over
/// stage1_moves + stage2_moves proposals (an empty stage2_moves counts as
/// stage1_moves) with the stage-2 schedule.
[[nodiscard]] StageResult simultaneous_search(const DesignParams& params, const SearchConfig& config,
                                              int restart = 0);

struct SearchReport {
  Layout best;
  double e_col = 0;
  double e_row = 0;
  double e_rowcol = 0;
  std::optional<double> bound_gap_col;     ///< reference U_col - e_col
  std::optional<double> bound_gap_rowcol;  ///< reference U_rowcol - e_rowcol
  bool semi_latin = false;
  bool in_dual_class = false;
  std::uint64_t seed = 0;
  std::string rng;
  SearchMode mode = SearchMode::two_stage;
  int restarts = 0;
  int best_restart = 0;
  MoveStats stage1;  ///< summed over restarts; simultaneous mode reports here
  MoveStats stage2;
};

/// Runs every restart (possibly in parallel) and keeps the best result:
/// largest E_col then E_rowcol for two_stage, largest E_rowcol for
/// simultaneous, lowest restart index on ties. Deterministic in
/// (params, config) except for config.threads.
[[nodiscard]] SearchReport search(const DesignParams& params, const SearchConfig& config);

[[nodiscard]] std::string to_string(SearchMode mode);
[[nodiscard]] SearchMode parse_search_mode(const std::string& text);

}  // namespace slsq

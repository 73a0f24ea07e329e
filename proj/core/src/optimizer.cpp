#include "slsq/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

#include <Eigen/Cholesky>

#include "slsq/bounds.hpp"
#include "slsq/constructors.hpp"
#include "slsq/dual.hpp"
#include "slsq/efficiency.hpp"
#include "slsq/error.hpp"
#include "slsq/rng.hpp"

namespace slsq {

namespace {

constexpr double kTie = 1e-12;
// Reference values carry six decimals.
constexpr double kReferenceRounding = 5e-7;

struct Swap {
  int rep, row_a, col_a, row_b, col_b;
};

// A layout plus, per replicate, the position of every label.
class Working {
 public:
  explicit Working(Layout layout) : layout_(std::move(layout)) {
    const auto& p = layout_.params();
    loc_.assign(static_cast<std::size_t>(p.r) * (p.v() + 1), 0);
    for (int rep = 0; rep < p.r; ++rep)
      for (int row = 0; row < p.k; ++row)
        for (int col = 0; col < p.s; ++col) loc_[slot(rep, layout_.at(rep, row, col))] = row * p.s + col;
  }

  [[nodiscard]] const Layout& layout() const { return layout_; }
  [[nodiscard]] const DesignParams& params() const { return layout_.params(); }
  [[nodiscard]] int row_of(int rep, int label) const { return loc_[slot(rep, label)] / params().s; }
  [[nodiscard]] int col_of(int rep, int label) const { return loc_[slot(rep, label)] % params().s; }

  void apply(const Swap& m) {
    const int s = params().s;
    const int a = layout_.at(m.rep, m.row_a, m.col_a);
    const int b = layout_.at(m.rep, m.row_b, m.col_b);
    layout_.swap_cells(m.rep, m.row_a, m.col_a, m.row_b, m.col_b);
    loc_[slot(m.rep, a)] = m.row_b * s + m.col_b;
    loc_[slot(m.rep, b)] = m.row_a * s + m.col_a;
  }

  void undo(const std::vector<Swap>& log) {
    for (auto it = log.rbegin(); it != log.rend(); ++it) apply(*it);
  }

 private:
  [[nodiscard]] std::size_t slot(int rep, int label) const {
    return static_cast<std::size_t>(rep) * (params().v() + 1) + label;
  }

  Layout layout_;
  std::vector<int> loc_;
};

// Two-column ejection chain; returns false (layout unchanged) when the chain
// does not close within its step limit.
bool propose_column_exchange(Working& w, Rng& rng, std::vector<Swap>& log) {
  const auto& p = w.params();
  const int rep = rng.below(p.r);
  const int c1 = rng.below(p.s);
  int c2 = rng.below(p.s - 1);
  if (c2 >= c1) ++c2;
  const int ra = rng.below(p.k);
  const int rb = rng.below(p.k);
  const int a = w.layout().at(rep, ra, c1);
  const int b = w.layout().at(rep, rb, c2);
  log.push_back({rep, ra, c1, rb, c2});
  w.apply(log.back());

  // `y` is now twice in long column c2 (once in `last`) and missing from c1.
  int last = rep;
  int y = a;
  const int max_steps = 4 * p.r * p.k;
  for (int step = 0; step < max_steps; ++step) {
    int other = -1;
    for (int j = 0; j < p.r; ++j) {
      if (j != last && w.col_of(j, y) == c2) {
        other = j;
        break;
      }
    }
    if (other < 0) break;
    const int row_x = rng.below(p.k);
    const int x = w.layout().at(other, row_x, c1);
    log.push_back({other, row_x, c1, w.row_of(other, y), c2});
    w.apply(log.back());
    if (x == b) return true;
    last = other;
    y = x;
  }
  w.undo(log);
  return false;
}

// Exchanges two rows of one replicate inside one column or, half the time,
// inside a random proper subset of columns.
void propose_within_column(Working& w, Rng& rng, std::vector<Swap>& log) {
  const auto& p = w.params();
  const int rep = rng.below(p.r);
  const int r1 = rng.below(p.k);
  int r2 = rng.below(p.k - 1);
  if (r2 >= r1) ++r2;
  if (p.s < 3 || rng.below(2) == 0) {
    const int col = rng.below(p.s);
    log.push_back({rep, r1, col, r2, col});
  } else {
    while (log.empty() || static_cast<int>(log.size()) == p.s) {
      log.clear();
      for (int col = 0; col < p.s; ++col)
        if (rng.below(2) == 1) log.push_back({rep, r1, col, r2, col});
    }
  }
  for (const auto& m : log) w.apply(m);
}

template <class Objective, class Propose>
StageResult anneal(Layout start, long moves, const Schedule& schedule, std::optional<double> target, Rng& rng,
                   Objective objective, Propose propose) {
  const double decay = resolved_decay(schedule, moves);
  Working w(std::move(start));
  double current = objective(w.layout());
  StageResult out{w.layout(), current, {}};
  double temperature = schedule.initial_temperature;
  std::vector<Swap> log;
  for (long t = 0; t < moves; ++t) {
    if (target && out.value >= *target) break;
    log.clear();
    if (!propose(w, rng, log)) {
      ++out.moves.infeasible;
      temperature *= decay;
      continue;
    }
    const double value = objective(w.layout());
    const double delta = value - current;
    if (delta >= -kTie || rng.uniform() < std::exp(delta / temperature)) {
      ++out.moves.accepted;
      current = value;
#ifndef NDEBUG
      if (!is_latinized(w.layout())) throw Error("search move broke latinization");
#endif
      if (value > out.value + kTie) {
        out.value = value;
        out.best = w.layout();
      }
    } else {
      ++out.moves.rejected;
      w.undo(log);
    }
    temperature *= decay;
  }
  if (!is_latinized(out.best)) throw Error("search returned a non-latinized layout");
  return out;
}

// Stage-2 anneal with an incrementally maintained inverse. A swap of
// labels a (row r1) and b (row r2) in one short column changes the
// row-column information matrix by -(w d' + d w' + 2 d d') / (r s), with
// w = u1 - u2 the difference of the two row indicators and d = e_b - e_a, so
// trace(A^-1), A = info + J/v, follows from a rank-2 Woodbury update.
class RowcolTracker {
 public:
  explicit RowcolTracker(const Layout& layout) { reset(layout); }

  /// False while the design is disconnected; the caller then falls back to
  /// full evaluation.
  [[nodiscard]] bool valid() const { return valid_; }
  [[nodiscard]] double value() const { return value_of(trace_); }

  void reset(const Layout& layout) {
    const auto& p = layout.params();
    v_ = p.v();
    scale_ = static_cast<double>(p.r) * p.s;
    Eigen::MatrixXd a = rowcol_information(layout);
    a.array() += 1.0 / v_;
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    const Eigen::MatrixXd l = llt.matrixL();
    valid_ = llt.info() == Eigen::Success && l.diagonal().minCoeff() > std::sqrt(kConnectivityTolerance);
    if (!valid_) return;
    inverse_ = llt.solve(Eigen::MatrixXd::Identity(v_, v_));
    trace_ = inverse_.trace();
    updates_ = 0;
  }

  /// Objective after exchanging rows r1 and r2 of replicate `rep` within
  /// every column listed in `cols`; 0 when that disconnects the design.
  double propose(const Layout& layout, int rep, int r1, int r2, const std::vector<int>& cols) {
    const auto& p = layout.params();
    y_.resize(v_, 2);
    y_.setZero();
    for (int c = 0; c < p.s; ++c) {
      y_.col(0) += inverse_.col(layout.at(rep, r1, c) - 1) - inverse_.col(layout.at(rep, r2, c) - 1);
    }
    for (int c : cols) {
      y_.col(1) += inverse_.col(layout.at(rep, r2, c) - 1) - inverse_.col(layout.at(rep, r1, c) - 1);
    }
    double wy00 = 0, wy01 = 0, s11 = 0;
    for (int c = 0; c < p.s; ++c) {
      const int t1 = layout.at(rep, r1, c) - 1;
      const int t2 = layout.at(rep, r2, c) - 1;
      wy00 += y_(t1, 0) - y_(t2, 0);
      wy01 += y_(t1, 1) - y_(t2, 1);
    }
    for (int c : cols) s11 += y_(layout.at(rep, r2, c) - 1, 1) - y_(layout.at(rep, r1, c) - 1, 1);
    // S = M^-1 + U' A^-1 U with M^-1 = r s [[2, -1], [-1, 0]]
    const double s00 = 2 * scale_ + wy00;
    const double s01 = -scale_ + wy01;
    const double det = s00 * s11 - s01 * s01;
    const double g00 = y_.col(0).squaredNorm();
    const double g01 = y_.col(0).dot(y_.col(1));
    const double g11 = y_.col(1).squaredNorm();
    // trace(S^-1 G)
    const double reduction = (s11 * g00 - 2 * s01 * g01 + s00 * g11) / det;
    s_inv_ << s11 / det, -s01 / det, -s01 / det, s00 / det;
    candidate_trace_ = trace_ - reduction;
    if (!std::isfinite(candidate_trace_) || candidate_trace_ - 1.0 > 1.0 / kConnectivityTolerance ||
        candidate_trace_ <= 1.0) {
      candidate_trace_ = std::numeric_limits<double>::infinity();
      return 0.0;
    }
    return value_of(candidate_trace_);
  }

  /// Commits the last proposal; `layout` must already hold the swap.
  void accept(const Layout& layout) {
    inverse_.noalias() -= y_ * s_inv_ * y_.transpose();
    trace_ = candidate_trace_;
    if (++updates_ % 256 == 0) reset(layout);
  }

 private:
  [[nodiscard]] double value_of(double trace) const { return (v_ - 1) / (trace - 1.0); }

  int v_ = 0;
  double scale_ = 0;
  bool valid_ = false;
  Eigen::MatrixXd inverse_;
  double trace_ = 0;
  double candidate_trace_ = 0;
  Eigen::MatrixXd y_;
  Eigen::Matrix2d s_inv_;
  long updates_ = 0;
};

StageResult anneal_within_columns(const Layout& start, const SearchConfig& cfg, Rng& rng) {
  Working w(start);
  RowcolTracker tracker(start);
  double current = tracker.valid() ? tracker.value() : average_rowcol_efficiency(start);
  StageResult out{start, current, {}};
  const long moves = cfg.stage2_moves.value_or(auto_stage2_moves(start.params().v()));
  const double decay = resolved_decay(cfg.stage2_schedule, moves);
  double temperature = cfg.stage2_schedule.initial_temperature;
  const auto& target = cfg.stage2_target;
  std::vector<Swap> log;
  std::vector<int> cols;
  for (long t = 0; t < moves; ++t) {
    if (target && out.value >= *target) break;
    log.clear();
    propose_within_column(w, rng, log);
    const Swap& m = log.front();
    double value;
    if (tracker.valid()) {
      // propose() reads the pre-swap layout
      w.undo(log);
      cols.clear();
      for (const auto& sw : log) cols.push_back(sw.col_a);
      value = tracker.propose(w.layout(), m.rep, m.row_a, m.row_b, cols);
      for (const auto& sw : log) w.apply(sw);
    } else {
      value = average_rowcol_efficiency(w.layout());
    }
    const double delta = value - current;
    // Once connected, a disconnecting swap is never taken.
    const bool allowed = !tracker.valid() || value > 0.0;
    if (allowed && (delta >= -kTie || rng.uniform() < std::exp(delta / temperature))) {
      ++out.moves.accepted;
      current = value;
      if (tracker.valid()) {
        tracker.accept(w.layout());
#ifndef NDEBUG
        if (std::abs(tracker.value() - average_rowcol_efficiency(w.layout())) > 1e-8)
          throw Error("incremental row-column objective drifted");
#endif
      } else if (value > 0.0) {
        tracker.reset(w.layout());
      }
      if (value > out.value + kTie) {
        out.value = value;
        out.best = w.layout();
      }
    } else {
      ++out.moves.rejected;
      w.undo(log);
    }
    temperature *= decay;
  }
  out.value = average_rowcol_efficiency(out.best);
  return out;
}

void require_square_replication(const DesignParams& p) {
  if (p.r != p.s) throw DomainError("the search constructs designs with r = s replicates");
  if (p.k < 2 || p.s < 2) throw DomainError("the search needs k >= 2 and s >= 2");
  if (p.k * p.s > 400) throw DomainError("design too large for dense evaluation");
}

struct RestartResult {
  StageResult first;
  std::optional<StageResult> second;
};

}  // namespace

int auto_stage2_moves(int v) {
  const long cube = 320L * v * v * v;
  return static_cast<int>(std::min(cube, 8'000'000L));
}

double resolved_decay(const Schedule& schedule, long moves) {
  if (schedule.decay) return *schedule.decay;
  return std::exp(-4.0 / static_cast<double>(std::max(moves, 1L)));
}

void validate(const SearchConfig& c) {
  for (const auto* s : {&c.stage1_schedule, &c.stage2_schedule}) {
    if (s->decay && !(*s->decay > 0.0 && *s->decay < 1.0)) {
      throw DomainError("temperature decay must lie in (0, 1)");
    }
    if (!(s->initial_temperature > 0.0)) throw DomainError("initial temperature must be positive");
  }
  if (c.stage1_moves < 0 || c.stage2_moves.value_or(0) < 0) throw DomainError("move budgets must be non-negative");
  if (c.restarts < 1) throw DomainError("at least one restart is required");
}

StageResult stage1_search(const DesignParams& params, const SearchConfig& config, int restart) {
  validate(config);
  require_square_replication(params);
  Rng rng = Rng::for_stream(config.seed, 2 * static_cast<std::uint64_t>(restart));
  return anneal(cyclic_start_layout(params), config.stage1_moves, config.stage1_schedule, config.stage1_target, rng,
                average_col_efficiency,
                [](Working& w, Rng& g, std::vector<Swap>& log) { return propose_column_exchange(w, g, log); });
}

StageResult stage2_search(const Layout& start, const SearchConfig& config, int restart) {
  validate(config);
  const auto& p = start.params();
  if (p.k < 2) throw DomainError("no within-column moves exist for k = 1");
  if (!is_latinized(start)) throw ValidationError("stage 2 needs a latinized starting layout");
  Rng rng = Rng::for_stream(config.seed, 2 * static_cast<std::uint64_t>(restart) + 1);
  return anneal_within_columns(start, config, rng);
}

StageResult simultaneous_search(const DesignParams& params, const SearchConfig& config, int restart) {
  validate(config);
  require_square_replication(params);
  Rng rng = Rng::for_stream(config.seed, 2 * static_cast<std::uint64_t>(restart));
  // Every move is evaluated in full here, so an unset stage-2 budget
  // defaults to the stage-1 one.
  const long moves = static_cast<long>(config.stage1_moves) + config.stage2_moves.value_or(config.stage1_moves);
  return anneal(cyclic_start_layout(params), moves, config.stage2_schedule, config.stage2_target, rng,
                average_rowcol_efficiency,
                [](Working& w, Rng& g, std::vector<Swap>& log) {
                  if (g.below(2) == 0) return propose_column_exchange(w, g, log);
                  propose_within_column(w, g, log);
                  return true;
                });
}

SearchReport search(const DesignParams& params, const SearchConfig& config_in) {
  validate(config_in);
  require_square_replication(params);
  SearchConfig config = config_in;
  if (config.mode == SearchMode::two_stage && (config.stage1_moves < 1 || config.stage2_moves.value_or(1) < 1)) {
    throw DomainError("two-stage search needs at least one move per stage");
  }
  const auto reference = find_table1(params.s, params.k);
  if (!config.stage1_target) {
    std::optional<double> bound;
    if (reference) bound = reference->u_col - kReferenceRounding;
    if (params.k == params.s && params.s >= 3) {
      const double eq1 = u_col_latinized_square(params.s) - kTie;
      bound = bound ? std::min(*bound, eq1) : eq1;
    }
    config.stage1_target = bound;
  }
  if (!config.stage2_target && reference) config.stage2_target = reference->u_rowcol - kReferenceRounding;

  std::vector<std::optional<RestartResult>> results(config.restarts);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int i = next++; i < config.restarts; i = next++) {
      try {
        if (config.mode == SearchMode::two_stage) {
          auto first = stage1_search(params, config, i);
          auto second = stage2_search(first.best, config, i);
          results[i] = RestartResult{std::move(first), std::move(second)};
        } else {
          results[i] = RestartResult{simultaneous_search(params, config, i), std::nullopt};
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  int threads = config.threads > 0 ? config.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, config.restarts);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  // Merge in restart order; a later restart wins only by a strict margin.
  int best = 0;
  auto key = [&](const RestartResult& r) -> std::pair<double, double> {
    if (r.second) return {r.first.value, r.second->value};
    return {r.first.value, 0.0};
  };
  for (int i = 1; i < config.restarts; ++i) {
    const auto [c_new, rc_new] = key(*results[i]);
    const auto [c_best, rc_best] = key(*results[best]);
    if (c_new > c_best + 1e-9 || (std::abs(c_new - c_best) <= 1e-9 && rc_new > rc_best + kTie)) best = i;
  }

  const auto& winner = *results[best];
  Layout layout = winner.second ? winner.second->best : winner.first.best;
  const auto eval = evaluate(layout);
  SearchReport rep{.best = layout,
                   .e_col = eval.col.average,
                   .e_row = eval.row.average,
                   .e_rowcol = eval.rowcol.average,
                   .bound_gap_col = std::nullopt,
                   .bound_gap_rowcol = std::nullopt,
                   .semi_latin = false,
                   .in_dual_class = false,
                   .seed = config.seed,
                   .rng = std::string(Rng::kName),
                   .mode = config.mode,
                   .restarts = config.restarts,
                   .best_restart = best,
                   .stage1 = {},
                   .stage2 = {}};
  if (reference) {
    rep.bound_gap_col = reference->u_col - rep.e_col;
    rep.bound_gap_rowcol = reference->u_rowcol - rep.e_rowcol;
  }
  rep.semi_latin = classify(layout).semi_latin;
  rep.in_dual_class = in_dual_class(layout);
  for (const auto& r : results) {
    rep.stage1 += r->first.moves;
    if (r->second) rep.stage2 += r->second->moves;
  }
  return rep;
}

std::string to_string(SearchMode mode) { return mode == SearchMode::two_stage ? "two-stage" : "simultaneous"; }

SearchMode parse_search_mode(const std::string& text) {
  if (text == "two-stage" || text == "two_stage") return SearchMode::two_stage;
  if (text == "simultaneous") return SearchMode::simultaneous;
  throw DomainError("unknown search mode '" + text + "' (expected two-stage or simultaneous)");
}

}  // namespace slsq

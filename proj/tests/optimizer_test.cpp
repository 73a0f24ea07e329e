#include <doctest.h>

#include <set>
#include <vector>

#include "oracles.hpp"
#include "slsq/bounds.hpp"
#include "slsq/constructors.hpp"
#include "slsq/design.hpp"
#include "slsq/efficiency.hpp"
#include "slsq/error.hpp"
#include "slsq/optimizer.hpp"
#include "slsq/rng.hpp"

using namespace slsq;

namespace {

SearchConfig small_config() {
  SearchConfig c;
  c.restarts = 3;
  c.stage1_moves = 2000;
  c.stage2_moves = 20000;
  return c;
}

std::multiset<std::multiset<int>> column_contents(const Layout& l) {
  const auto& p = l.params();
  std::multiset<std::multiset<int>> out;
  for (int rep = 0; rep < p.r; ++rep)
    for (int col = 0; col < p.s; ++col) {
      std::multiset<int> c;
      for (int row = 0; row < p.k; ++row) c.insert(l.at(rep, row, col));
      // keep the replicate and column position
      c.insert(1000 * (rep + 1) + col);
      out.insert(c);
    }
  return out;
}

}  // namespace

TEST_SUITE("optimizer") {
  TEST_CASE("rng streams") {
    Rng a = Rng::for_stream(42, 0);
    Rng b = Rng::for_stream(42, 0);
    Rng c = Rng::for_stream(42, 1);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
      const auto x = a.next();
      CHECK(x == b.next());
      differs = differs || x != c.next();
    }
    CHECK(differs);
    Rng d = Rng::for_stream(7, 3);
    for (int i = 0; i < 1000; ++i) {
      const int x = d.below(7);
      CHECK(x >= 0);
      CHECK(x < 7);
      const double u = d.uniform();
      CHECK(u >= 0.0);
      CHECK(u < 1.0);
    }
  }

  TEST_CASE("documented defaults") {
    const SearchConfig c;
    CHECK(c.seed == 42);
    CHECK(c.restarts == 20);
    CHECK(c.stage1_moves == 50000);
    CHECK_FALSE(c.stage2_moves.has_value());
    CHECK(c.mode == SearchMode::two_stage);
    CHECK(auto_stage2_moves(25) == 5'000'000);
    CHECK(auto_stage2_moves(49) == 8'000'000);
    CHECK(std::abs(std::pow(resolved_decay(c.stage2_schedule, 1000), 1000) - std::exp(-4.0)) < 1e-12);
    CHECK(resolved_decay(c.stage1_schedule, 1000) == 0.999);
  }

  TEST_CASE("config validation") {
    SearchConfig c = small_config();
    c.stage1_schedule.decay = 1.0;
    CHECK_THROWS_AS(validate(c), DomainError);
    c = small_config();
    c.stage2_schedule.initial_temperature = 0;
    CHECK_THROWS_AS(validate(c), DomainError);
    c = small_config();
    c.restarts = 0;
    CHECK_THROWS_AS(validate(c), DomainError);
    c = small_config();
    c.stage2_moves = -1;
    CHECK_THROWS_AS(validate(c), DomainError);
    CHECK_THROWS_AS((void)search({4, 2, 3}, small_config()), DomainError);
    CHECK_THROWS_AS((void)search({4, 1, 4}, small_config()), DomainError);
    CHECK_THROWS_AS((void)parse_search_mode("sideways"), Error);
    CHECK(parse_search_mode("two-stage") == SearchMode::two_stage);
    CHECK(parse_search_mode(to_string(SearchMode::simultaneous)) == SearchMode::simultaneous);
  }

  TEST_CASE("same seed, same result") {
    const auto a = search({4, 3, 4}, small_config());
    const auto b = search({4, 3, 4}, small_config());
    CHECK(a.best == b.best);
    CHECK(a.e_col == b.e_col);
    CHECK(a.e_rowcol == b.e_rowcol);
    CHECK(a.best_restart == b.best_restart);
    CHECK(a.stage1.accepted == b.stage1.accepted);
    CHECK(a.stage2.accepted == b.stage2.accepted);
    SearchConfig other = small_config();
    other.seed = 43;
    CHECK(search({4, 3, 4}, other).stage1.accepted != a.stage1.accepted);
  }

  TEST_CASE("thread count does not change the result") {
    SearchConfig one = small_config();
    one.threads = 1;
    SearchConfig many = small_config();
    many.threads = 3;
    const auto a = search({5, 3, 5}, one);
    const auto b = search({5, 3, 5}, many);
    CHECK(a.best == b.best);
    CHECK(a.e_rowcol == b.e_rowcol);
  }

  TEST_CASE("stage 2 keeps column contents and E_col") {
    const SearchConfig c = small_config();
    for (const char* name : {"fig2a", "fig2b", "fig1c"}) {
      const Layout start = figure_layout(name);
      const auto r = stage2_search(start, c, 0);
      CHECK(is_latinized(r.best));
      CHECK(column_contents(r.best) == column_contents(start));
      CHECK(std::abs(oracle::e_col(r.best) - oracle::e_col(start)) < 1e-12);
      CHECK(r.value >= oracle::e_rowcol(start) - 1e-12);
      CHECK(std::abs(r.value - oracle::e_rowcol(r.best)) < 1e-9);
    }
  }

  TEST_CASE("stage 2 from the Trojan square improves on rotation") {
    SearchConfig c = small_config();
    c.stage2_moves = 200000;
    const auto r = stage2_search(figure_layout("fig2a"), c, 0);
    CHECK(r.value >= 0.5645 - 5e-5);
    CHECK(r.value <= find_table1(5, 3)->u_rowcol + 5e-7);
  }

  TEST_CASE("zero budget returns the input") {
    SearchConfig c = small_config();
    c.stage2_moves = 0;
    const Layout start = figure_layout("fig2b");
    const auto r = stage2_search(start, c, 0);
    CHECK(r.best == start);
    CHECK(r.moves.accepted == 0);
    c.stage1_moves = 0;
    CHECK(stage1_search({4, 2, 4}, c, 0).best == cyclic_start_layout({4, 2, 4}));
  }

  TEST_CASE("stage 2 rejects non-latinized starts") {
    Layout l = figure_layout("fig2a");
    l.swap_cells(0, 0, 0, 0, 1);
    CHECK_THROWS_AS((void)stage2_search(l, small_config(), 0), ValidationError);
  }

  TEST_CASE("stage 1 output is latinized and within bounds") {
    for (auto [s, k] : {std::pair{3, 3}, std::pair{4, 2}, std::pair{4, 4}, std::pair{5, 3}}) {
      const auto r = stage1_search({s, k, s}, small_config(), 1);
      CHECK(oracle::latinized(r.best));
      CHECK(std::abs(r.value - oracle::e_col(r.best)) < 1e-9);
      CHECK(r.value <= find_table1(s, k)->u_col + 5e-7);
      if (k == s) CHECK(r.value <= u_col_latinized_square(s) + 1e-9);
    }
  }

  TEST_CASE("small searches reach the tabulated values") {
    SearchConfig c;
    c.restarts = 4;
    for (auto [s, k] : {std::pair{3, 2}, std::pair{3, 3}, std::pair{4, 2}}) {
      CAPTURE(s);
      CAPTURE(k);
      const auto rep = search({s, k, s}, c);
      const auto ref = *find_table1(s, k);
      CHECK(std::abs(rep.e_col - oracle::e_col(rep.best)) < 1e-9);
      CHECK(std::abs(rep.e_rowcol - oracle::e_rowcol(rep.best)) < 1e-9);
      CHECK(rep.e_col >= ref.e_col - 5e-5);
      CHECK(rep.e_rowcol >= ref.e_rowcol - 5e-7);
      CHECK(rep.semi_latin);
      CHECK(rep.bound_gap_col.has_value());
      CHECK(*rep.bound_gap_rowcol >= -5e-7);
      CHECK(rep.rng == Rng::kName);
    }
  }

  TEST_CASE("simultaneous mode") {
    SearchConfig c = small_config();
    c.mode = SearchMode::simultaneous;
    const auto rep = search({4, 3, 4}, c);
    CHECK(rep.mode == SearchMode::simultaneous);
    CHECK(oracle::latinized(rep.best));
    CHECK(rep.e_rowcol > 0.0);
    CHECK(std::abs(rep.e_rowcol - oracle::e_rowcol(rep.best)) < 1e-9);
    CHECK(rep.stage2.accepted == 0);
    const auto again = search({4, 3, 4}, c);
    CHECK(again.best == rep.best);
  }
}

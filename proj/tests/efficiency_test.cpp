#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "slsq/constructors.hpp"
#include "slsq/design.hpp"
#include "slsq/efficiency.hpp"
#include "slsq/error.hpp"

using namespace slsq;

namespace {

Layout relabel(const Layout& l, const std::vector<int>& perm) {
  std::vector<int> cells(l.cells().begin(), l.cells().end());
  for (int& c : cells) c = perm[c - 1] + 1;
  return Layout(l.params(), cells);
}

// Permutes replicates, rows inside each replicate and long columns.
Layout shuffle_structure(const Layout& l, std::mt19937& gen) {
  const auto& p = l.params();
  std::vector<int> reps(p.r), cols(p.s);
  std::iota(reps.begin(), reps.end(), 0);
  std::iota(cols.begin(), cols.end(), 0);
  std::shuffle(reps.begin(), reps.end(), gen);
  std::shuffle(cols.begin(), cols.end(), gen);
  std::vector<int> cells;
  for (int rep = 0; rep < p.r; ++rep) {
    std::vector<int> rows(p.k);
    std::iota(rows.begin(), rows.end(), 0);
    std::shuffle(rows.begin(), rows.end(), gen);
    for (int row = 0; row < p.k; ++row)
      for (int col = 0; col < p.s; ++col) cells.push_back(l.at(reps[rep], rows[row], cols[col]));
  }
  return Layout(p, cells);
}

struct Stated {
  const char* name;
  double e_col;
  double e_rowcol;  // negative: not stated
};

}  // namespace

TEST_SUITE("efficiency") {
  TEST_CASE("stated figure efficiencies") {
    const Stated stated[] = {{"fig1a", 0.0, -1},    {"fig1b", 0.4636, -1},  {"fig1c", 0.5385, -1},
                             {"fig2a", 0.7, 0.0},   {"fig2b", -1, 0.5034},  {"fig2c", 0.7, 0.5645},
                             {"fig2d", -1, 0.5645}};
    for (const auto& st : stated) {
      const std::string name = st.name;
      CAPTURE(name);
      const auto ev = evaluate(figure_layout(st.name));
      if (st.e_rowcol >= 0) CHECK(std::abs(ev.rowcol.average - st.e_rowcol) <= 5e-5);
      if (st.e_col >= 0) CHECK(std::abs(ev.col.average - st.e_col) <= 5e-5);
    }
    CHECK_FALSE(evaluate(figure_layout("fig1a")).col.connected);
    CHECK_FALSE(evaluate(figure_layout("fig2a")).rowcol.connected);
    CHECK(evaluate(figure_layout("fig2a")).col.connected);
  }

  TEST_CASE("library agrees with the Jacobi oracle") {
    for (const auto& name : figure_names()) {
      CAPTURE(name);
      const Layout l = figure_layout(name);
      const auto ev = evaluate(l);
      CHECK(std::abs(ev.col.average - oracle::e_col(l)) < 1e-9);
      CHECK(std::abs(ev.row.average - oracle::e_row(l)) < 1e-9);
      CHECK(std::abs(ev.rowcol.average - oracle::e_rowcol(l)) < 1e-9);
      const auto ref = oracle::contrast_eigenvalues(oracle::rowcol_info(l));
      REQUIRE(ref.size() == ev.rowcol.factors.size());
      for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(ref[i] - ev.rowcol.factors[i]) < 1e-9);
    }
  }

  TEST_CASE("fast objective matches the eigenvalue route") {
    for (const auto& name : figure_names()) {
      const Layout l = figure_layout(name);
      const auto ev = evaluate(l);
      CHECK(std::abs(average_col_efficiency(l) - ev.col.average) < 1e-10);
      CHECK(std::abs(average_rowcol_efficiency(l) - ev.rowcol.average) < 1e-10);
      CHECK(std::abs(average_efficiency(block_information(l, Blocking::rows)) - ev.row.average) < 1e-10);
    }
  }

  TEST_CASE("spectrum of fig2d") {
    const auto f = evaluate(figure_layout("fig2d")).rowcol;
    REQUIRE(f.factors.size() == 14);
    std::vector<double> expect;
    for (int i = 0; i < 2; ++i) expect.push_back(12.0 / 25.0);
    for (int i = 0; i < 8; ++i) expect.push_back(41.0 / 75.0);
    for (int i = 0; i < 4; ++i) expect.push_back(2.0 / 3.0);
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(std::abs(f.factors[i] - expect[i]) < 1e-10);
    const auto m = f.multiplicities();
    REQUIRE(m.size() == 3);
    CHECK(m[0].second == 2);
    CHECK(m[1].second == 8);
    CHECK(m[2].second == 4);
  }

  TEST_CASE("incidence margins") {
    for (const auto& name : figure_names()) {
      const Layout l = figure_layout(name);
      const auto& p = l.params();
      const auto nc = column_incidence(l);
      const auto nr = row_incidence(l);
      CHECK(nc.treatments() == p.v());
      CHECK(nc.blocks() == p.r * p.s);
      CHECK(nr.blocks() == p.r * p.k);
      CHECK(nc.block_size == p.k);
      CHECK(nr.block_size == p.s);
      CHECK((nc.counts.rowwise().sum().array() == p.r).all());
      CHECK((nc.counts.colwise().sum().array() == p.k).all());
      CHECK((nr.counts.rowwise().sum().array() == p.r).all());
      CHECK((nr.counts.colwise().sum().array() == p.s).all());
    }
  }

  TEST_CASE("factor sums equal the information traces") {
    for (const auto& name : figure_names()) {
      const Layout l = figure_layout(name);
      const auto& p = l.params();
      const double v = p.v(), k = p.k, s = p.s;
      const auto ev = evaluate(l);
      auto sum = [](const std::vector<double>& x) { return std::accumulate(x.begin(), x.end(), 0.0); };
      CHECK(std::abs(sum(ev.col.factors) - v * (k - 1) / k) < 1e-10);
      CHECK(std::abs(sum(ev.row.factors) - v * (s - 1) / s) < 1e-10);
      CHECK(std::abs(sum(ev.rowcol.factors) - (v - v / s - v / k + 1)) < 1e-10);
      CHECK(std::abs(block_information(l, Blocking::columns).trace() - v * (k - 1) / k) < 1e-12);
      for (double f : ev.rowcol.factors) {
        CHECK(f > -1e-12);
        CHECK(f < 1 + 1e-12);
      }
    }
  }

  TEST_CASE("relabeling and structural permutations leave averages unchanged") {
    std::mt19937 gen(2024);
    for (const auto& name : figure_names()) {
      CAPTURE(name);
      const Layout l = figure_layout(name);
      const auto base = evaluate(l);
      std::vector<int> perm(l.params().v());
      std::iota(perm.begin(), perm.end(), 0);
      for (int t = 0; t < 10; ++t) {
        std::shuffle(perm.begin(), perm.end(), gen);
        const auto ev = evaluate(relabel(l, perm));
        CHECK(std::abs(ev.col.average - base.col.average) < 1e-12);
        CHECK(std::abs(ev.row.average - base.row.average) < 1e-12);
        CHECK(std::abs(ev.rowcol.average - base.rowcol.average) < 1e-12);
        const auto sv = evaluate(shuffle_structure(l, gen));
        CHECK(std::abs(sv.col.average - base.col.average) < 1e-12);
        CHECK(std::abs(sv.rowcol.average - base.rowcol.average) < 1e-12);
      }
    }
  }

  TEST_CASE("degenerate inputs") {
    const Layout single_row = cyclic_start_layout({3, 1, 3});
    CHECK_THROWS_AS((void)block_information(single_row, Blocking::columns), DomainError);
    CHECK_NOTHROW((void)block_information(single_row, Blocking::rows));
    Eigen::MatrixXd bad(2, 2);
    bad << 1, 0.5, -0.5, 1;
    CHECK_THROWS_AS((void)canonical_efficiency_factors(bad), ValidationError);
    Eigen::MatrixXd no_ones = Eigen::MatrixXd::Identity(3, 3);
    CHECK_THROWS_AS((void)canonical_efficiency_factors(no_ones), ValidationError);
    CHECK(average_efficiency(block_information(figure_layout("fig1a"), Blocking::columns)) == 0.0);
  }

  TEST_CASE("complete blocks give unit efficiency") {
    // k = 1 rows of a replicate are complete blocks of all v = s treatments
    const Layout l = cyclic_start_layout({4, 1, 4});
    const auto f = canonical_efficiency_factors(block_information(l, Blocking::rows));
    for (double x : f.factors) CHECK(std::abs(x - 1.0) < 1e-12);
    CHECK(std::abs(f.average - 1.0) < 1e-12);
  }
}

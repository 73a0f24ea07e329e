#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "oracles.hpp"
#include "slsq/constructors.hpp"
#include "slsq/design.hpp"
#include "slsq/efficiency.hpp"
#include "slsq/error.hpp"

using namespace slsq;

namespace {

// Two replicates: the first in standard order (no loss, by relabeling),
// the second over all v! arrangements.
double brute_force_two_replicates(int s, int k, Objective obj) {
  const int v = s * k;
  std::vector<int> second(v);
  std::iota(second.begin(), second.end(), 1);
  double best = -1;
  do {
    std::vector<int> cells(v);
    std::iota(cells.begin(), cells.end(), 1);
    cells.insert(cells.end(), second.begin(), second.end());
    const Layout l({s, k, 2}, cells);
    if (!oracle::latinized(l)) continue;
    best = std::max(best, obj == Objective::col ? oracle::e_col(l) : oracle::e_rowcol(l));
  } while (std::next_permutation(second.begin(), second.end()));
  return best;
}

}  // namespace

TEST_SUITE("enumerate") {
  TEST_CASE("two-replicate optimum equals brute force") {
    for (auto [s, k] : {std::pair{2, 2}, std::pair{3, 2}, std::pair{4, 2}}) {
      for (auto obj : {Objective::col, Objective::rowcol}) {
        CAPTURE(s);
        CAPTURE(k);
        const auto res = enumerate_optimum({s, k, 2}, obj);
        const double brute = brute_force_two_replicates(s, k, obj);
        CHECK(std::abs(res.best_value - brute) < 1e-9);
        CHECK(is_latinized(res.witness));
        const double witness =
            obj == Objective::col ? oracle::e_col(res.witness) : oracle::e_rowcol(res.witness);
        CHECK(std::abs(witness - res.best_value) < 1e-9);
        CHECK(res.designs_evaluated > 0);
      }
    }
  }

  TEST_CASE("s = 3 semi-Latin optima") {
    const auto col2 = enumerate_optimum({3, 2, 3}, Objective::col);
    CHECK(std::abs(col2.best_value - 5.0 / 9.0) < 1e-9);
    const auto col3 = enumerate_optimum({3, 3, 3}, Objective::col);
    CHECK(std::abs(col3.best_value - 0.615385) < 1e-6);
    CHECK(classify(col3.witness).semi_latin);
  }

  TEST_CASE("space estimates and guards") {
    CHECK(enumeration_space({3, 2, 3}, Objective::col) > 0);
    CHECK(enumeration_space({3, 2, 3}, Objective::col) <= enumeration_space({3, 2, 3}, Objective::rowcol));
    CHECK_THROWS_AS((void)enumerate_optimum({3, 1, 3}, Objective::col), DomainError);
    CHECK_THROWS_AS((void)enumerate_optimum({3, 2, 4}, Objective::col), DomainError);
    CHECK_THROWS_AS((void)enumerate_optimum({7, 7, 7}, Objective::rowcol), DomainError);
    CHECK_THROWS_AS((void)enumerate_optimum({8, 8, 2}, Objective::col), DomainError);
  }
}

#include "slsq/bounds.hpp"

#include <array>
#include <numeric>
#include <string>

#include "slsq/error.hpp"

namespace slsq {

namespace {

void require_s(int s) {
  if (s < 3) throw DomainError("bounds need s >= 3 (s = " + std::to_string(s) + " is degenerate)");
  if (s > 100000) throw DomainError("s too large for exact 64-bit evaluation");
}

Fraction reduced(std::int64_t num, std::int64_t den) {
  const auto g = std::gcd(num, den);
  return {num / g, den / g};
}

constexpr std::array<Table1Row, 20> kTable1{{
    {3, 2, 0.5556, 0.5556, 0.310078, 0.381239},
    {3, 3, 0.615385, 0.64, 0.389355, 0.468361},
    {4, 2, 0.538462, 0.538462, 0.388889, 0.421675},
    {4, 3, 0.709677, 0.709677, 0.53457, 0.537114},
    {4, 4, 0.75, 0.757576, 0.576923, 0.584416},
    {5, 2, 0.529412, 0.529412, 0.427006, 0.441533},
    {5, 3, 0.7, 0.7, 0.564498, 0.568839},
    {5, 4, 0.780822, 0.780822, 0.619706, 0.627006},
    {5, 5, 0.810413, 0.81203, 0.650955, 0.657534},
    {6, 2, 0.513333, 0.52381, 0.442869, 0.450891},
    {6, 3, 0.692155, 0.693878, 0.579481, 0.585568},
    {6, 4, 0.767104, 0.775281, 0.643221, 0.650917},
    {6, 5, 0.814233, 0.822695, 0.67920, 0.686859},
    {6, 6, 0.844221, 0.844828, 0.704421, 0.708502},
    {7, 2, 0.52, 0.52, 0.458019, 0.460243},
    {7, 3, 0.689655, 0.689655, 0.593826, 0.598007},
    {7, 4, 0.771429, 0.771429, 0.659581, 0.665848},
    {7, 5, 0.819277, 0.819277, 0.698402, 0.705191},
    {7, 6, 0.850622, 0.850622, 0.723991, 0.729865},
    {7, 7, 0.866471, 0.867209, 0.739553, 0.746114},
}};

constexpr std::array<Table2Row, 5> kTable2{{
    {3, 0.615385, 0.631579, 0.640000},
    {4, 0.75, 0.754717, 0.757576},
    {5, 0.810413, 0.810811, 0.812030},
    {6, 0.844221, 0.844221, 0.844828},
    {7, 0.866471, 0.866873, 0.867209},
}};

}  // namespace

Fraction u_col_latinized_square_exact(int s) {
  require_s(s);
  const std::int64_t x = s;
  return reduced((x + 1) * (x + 1) * (x - 2), x * x * x + x * x - 3 * x - 2);
}

double u_col_latinized_square(int s) { return u_col_latinized_square_exact(s).value(); }

Fraction w_col_exact(int s) {
  require_s(s);
  const std::int64_t x = s;
  return reduced(x * (x + 1) * (x - 2), x * x * x - 3 * x + 1);
}

double w_col(int s) { return w_col_exact(s).value(); }

std::span<const Table1Row> table1() { return kTable1; }
std::span<const Table2Row> table2() { return kTable2; }

std::optional<Table1Row> find_table1(int s, int k) {
  for (const auto& row : kTable1) {
    if (row.s == s && row.k == k) return row;
  }
  return std::nullopt;
}

Table1Row reference_table1(int s, int k) {
  if (auto row = find_table1(s, k)) return *row;
  throw DomainError("no tabulated values for s=" + std::to_string(s) + ", k=" + std::to_string(k) +
                    " (table covers 3 <= s <= 7, 2 <= k <= s)");
}

BoundSet bound_set(int s, int k) {
  BoundSet b;
  b.u_col_eq1 = u_col_latinized_square(s);
  b.w_col_eq2 = w_col(s);
  b.w_col_proven = s == 6;
  if (auto row = find_table1(s, k)) {
    b.reference_u_col = row->u_col;
    b.reference_u_rowcol = row->u_rowcol;
  }
  return b;
}

}  // namespace slsq

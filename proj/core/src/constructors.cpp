#include "slsq/constructors.hpp"

#include <string>

#include "slsq/error.hpp"

namespace slsq {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int mod(int a, int m) { return ((a % m) + m) % m; }

}  // namespace

bool is_latin_square(const std::vector<int>& square, int order) {
  if (order < 1 || square.size() != static_cast<std::size_t>(order) * order) return false;
  for (int i = 0; i < order; ++i) {
    std::vector<char> in_row(order), in_col(order);
    for (int j = 0; j < order; ++j) {
      const int a = square[i * order + j];
      const int b = square[j * order + i];
      if (a < 0 || a >= order || b < 0 || b >= order || in_row[a]++ || in_col[b]++) return false;
    }
  }
  return true;
}

bool are_orthogonal(const std::vector<int>& a, const std::vector<int>& b, int order) {
  std::vector<char> seen(static_cast<std::size_t>(order) * order);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (seen[a[i] * order + b[i]]++) return false;
  }
  return true;
}

LatinSquareSet cyclic_mols(int s, int k) {
  if (!is_prime(s)) throw DomainError("cyclic MOLS need a prime order (s = " + std::to_string(s) + ")");
  if (k < 1 || k > s - 1) {
    throw DomainError("a prime order s admits at most s-1 cyclic MOLS (k = " + std::to_string(k) + ")");
  }
  LatinSquareSet set{s, {}};
  for (int m = 1; m <= k; ++m) {
    std::vector<int> sq(static_cast<std::size_t>(s) * s);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) sq[i * s + j] = (i + m * j) % s;
    set.squares.push_back(std::move(sq));
  }
  return set;
}

Layout trojan_square(const LatinSquareSet& mols) {
  const int s = mols.order;
  const int k = static_cast<int>(mols.squares.size());
  if (s < 1 || k < 1) throw ValidationError("empty Latin square set");
  for (std::size_t a = 0; a < mols.squares.size(); ++a) {
    if (!is_latin_square(mols.squares[a], s)) {
      throw ValidationError("square " + std::to_string(a + 1) + " is not Latin");
    }
    for (std::size_t b = 0; b < a; ++b) {
      if (!are_orthogonal(mols.squares[a], mols.squares[b], s)) {
        throw ValidationError("squares " + std::to_string(b + 1) + " and " + std::to_string(a + 1) +
                              " are not orthogonal");
      }
    }
  }
  const DesignParams p{s, k, s};
  std::vector<int> cells(static_cast<std::size_t>(p.plots()));
  for (int rep = 0; rep < s; ++rep)
    for (int m = 0; m < k; ++m)
      for (int i = 0; i < s; ++i)
        cells[(static_cast<std::size_t>(rep) * k + m) * s + i] = m * s + mols.at(m, rep, mod(-i, s)) + 1;
  return Layout(p, std::move(cells));
}

Layout rotate_last_column(const Layout& layout) {
  const auto& p = layout.params();
  if (p.k < 2) throw DomainError("rotating a single-row column is the identity");
  std::vector<int> cells(layout.cells().begin(), layout.cells().end());
  const int last = p.s - 1;
  for (int rep = 0; rep < p.r; ++rep)
    for (int m = 0; m < p.k; ++m) cells[layout.index(rep, m, last)] = layout.at(rep, (m + 1) % p.k, last);
  return Layout(p, std::move(cells));
}

Layout cyclic_start_layout(const DesignParams& params) {
  std::vector<int> cells(static_cast<std::size_t>(params.plots()));
  const auto s = params.s;
  for (int rep = 0; rep < params.r; ++rep)
    for (int m = 0; m < params.k; ++m)
      for (int i = 0; i < s; ++i)
        cells[(static_cast<std::size_t>(rep) * params.k + m) * s + (i + rep) % s] = m * s + i + 1;
  return Layout(params, std::move(cells));
}

}  // namespace slsq

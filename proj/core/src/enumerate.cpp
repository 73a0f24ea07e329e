#include "slsq/constructors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "slsq/error.hpp"

namespace slsq {

namespace {

using Grid = std::vector<int>;  // k x s row-major, labels 1..v
using Mask = std::uint64_t;
using State = std::vector<Mask>;  // treatments already in each long column

double factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

struct Shape {
  int k, s;
  [[nodiscard]] int v() const { return k * s; }
  [[nodiscard]] int& at(Grid& g, int row, int col) const { return g[row * s + col]; }
  [[nodiscard]] int at(const Grid& g, int row, int col) const { return g[row * s + col]; }
};

// Canonical representative of a replicate. For the column objective only
// the column sets matter: sort each column, then order columns by their
// smallest label. For the row-column objective the grid matters up to row
// and column order: bring label 1 to the top-left corner, then order the
// other columns by their first-row label and the other rows by their
// first-column label.
Grid canonical(const Grid& g, const Shape& sh, Objective obj) {
  Grid out(g.size());
  if (obj == Objective::col) {
    std::vector<std::vector<int>> cols(sh.s);
    for (int c = 0; c < sh.s; ++c) {
      for (int m = 0; m < sh.k; ++m) cols[c].push_back(sh.at(g, m, c));
      std::sort(cols[c].begin(), cols[c].end());
    }
    std::sort(cols.begin(), cols.end());
    for (int c = 0; c < sh.s; ++c)
      for (int m = 0; m < sh.k; ++m) sh.at(out, m, c) = cols[c][m];
    return out;
  }
  const auto one = std::find(g.begin(), g.end(), 1) - g.begin();
  const int r0 = static_cast<int>(one) / sh.s;
  const int c0 = static_cast<int>(one) % sh.s;
  std::vector<int> col_order(sh.s), row_order(sh.k);
  std::iota(col_order.begin(), col_order.end(), 0);
  std::iota(row_order.begin(), row_order.end(), 0);
  std::sort(col_order.begin(), col_order.end(), [&](int a, int b) {
    if ((a == c0) != (b == c0)) return a == c0;
    return sh.at(g, r0, a) < sh.at(g, r0, b);
  });
  std::sort(row_order.begin(), row_order.end(), [&](int a, int b) {
    if ((a == r0) != (b == r0)) return a == r0;
    return sh.at(g, a, c0) < sh.at(g, b, c0);
  });
  for (int m = 0; m < sh.k; ++m)
    for (int c = 0; c < sh.s; ++c) sh.at(out, m, c) = sh.at(g, row_order[m], col_order[c]);
  return out;
}

// Lexicographic order of this key is the enumeration order.
Grid key_of(const Grid& g, const Shape& sh, Objective obj) {
  if (obj == Objective::rowcol) return g;
  Grid key;
  key.reserve(g.size());
  for (int c = 0; c < sh.s; ++c)
    for (int m = 0; m < sh.k; ++m) key.push_back(sh.at(g, m, c));
  return key;
}

void generate_col(const Shape& sh, Grid& g, Mask used, int col, std::vector<Grid>& out) {
  if (col == sh.s) {
    out.push_back(g);
    return;
  }
  int first = 1;
  while (used & (Mask{1} << first)) ++first;
  sh.at(g, 0, col) = first;
  used |= Mask{1} << first;
  // choose the remaining k-1 labels of this column in increasing order
  auto rec = [&](auto&& self, int row, int min_label, Mask u) -> void {
    if (row == sh.k) {
      generate_col(sh, g, u, col + 1, out);
      return;
    }
    for (int label = min_label; label <= sh.v(); ++label) {
      if (u & (Mask{1} << label)) continue;
      sh.at(g, row, col) = label;
      self(self, row + 1, label + 1, u | (Mask{1} << label));
    }
  };
  rec(rec, 1, first + 1, used);
}

void generate_rowcol(const Shape& sh, Grid& g, Mask used, int cell, std::vector<Grid>& out) {
  if (cell == sh.v()) {
    out.push_back(g);
    return;
  }
  const int row = cell / sh.s;
  const int col = cell % sh.s;
  if (cell == 0) {
    sh.at(g, 0, 0) = 1;
    generate_rowcol(sh, g, used | Mask{1} << 1, 1, out);
    return;
  }
  int lo = 1;
  if (row == 0) lo = sh.at(g, 0, col - 1) + 1;
  if (col == 0) lo = sh.at(g, row - 1, 0) + 1;
  for (int label = lo; label <= sh.v(); ++label) {
    if (used & (Mask{1} << label)) continue;
    sh.at(g, row, col) = label;
    generate_rowcol(sh, g, used | (Mask{1} << label), cell + 1, out);
  }
}

std::vector<Grid> candidates(const Shape& sh, Objective obj) {
  std::vector<Grid> out;
  Grid g(static_cast<std::size_t>(sh.v()));
  if (obj == Objective::col) {
    generate_col(sh, g, 0, 0, out);
  } else {
    generate_rowcol(sh, g, 0, 0, out);
  }
  return out;
}

// Label permutations (indexed by label, entry 0 unused) that map the
// standard first replicate onto an equivalent arrangement.
std::vector<std::vector<int>> stabiliser(const Shape& sh, Objective obj) {
  std::vector<std::vector<int>> out;
  std::vector<int> col_perm(sh.s);
  std::iota(col_perm.begin(), col_perm.end(), 0);
  const auto standard = [&](int m, int c) { return m * sh.s + c + 1; };
  do {
    if (obj == Objective::rowcol) {
      std::vector<int> row_perm(sh.k);
      std::iota(row_perm.begin(), row_perm.end(), 0);
      do {
        std::vector<int> pi(sh.v() + 1);
        for (int m = 0; m < sh.k; ++m)
          for (int c = 0; c < sh.s; ++c) pi[standard(m, c)] = standard(row_perm[m], col_perm[c]);
        out.push_back(std::move(pi));
      } while (std::next_permutation(row_perm.begin(), row_perm.end()));
    } else {
      // independent row permutations inside every column
      std::vector<std::vector<int>> within(sh.s, std::vector<int>(sh.k));
      for (auto& w : within) std::iota(w.begin(), w.end(), 0);
      while (true) {
        std::vector<int> pi(sh.v() + 1);
        for (int m = 0; m < sh.k; ++m)
          for (int c = 0; c < sh.s; ++c) pi[standard(m, c)] = standard(within[c][m], col_perm[c]);
        out.push_back(std::move(pi));
        int c = 0;
        while (c < sh.s && !std::next_permutation(within[c].begin(), within[c].end())) ++c;
        if (c == sh.s) break;
      }
    }
  } while (std::next_permutation(col_perm.begin(), col_perm.end()));
  return out;
}

std::vector<Mask> column_masks(const Grid& g, const Shape& sh) {
  std::vector<Mask> masks(sh.s, 0);
  for (int m = 0; m < sh.k; ++m)
    for (int c = 0; c < sh.s; ++c) masks[c] |= Mask{1} << sh.at(g, m, c);
  return masks;
}

struct Search {
  Shape sh;
  Objective obj;
  int r;
  std::vector<Grid> cands;
  std::vector<std::vector<Mask>> masks;
  std::vector<std::vector<int>> perms;  // placements of candidate columns onto long columns

  std::vector<std::size_t> chosen;
  double best = -1;
  std::vector<int> best_cells;
  std::uint64_t evaluated = 0;

  // States reachable with the replicates chosen so far; each remembers one
  // placement history so a witness can be rebuilt.
  struct Node {
    State state;
    std::vector<int> placements;  // concatenated perm indices, one per replicate after the first
  };

  std::vector<Node> extend(const std::vector<Node>& nodes, std::size_t cand) const {
    std::map<State, std::vector<int>> next;
    const auto& cm = masks[cand];
    for (const auto& node : nodes) {
      for (std::size_t pi = 0; pi < perms.size(); ++pi) {
        const auto& perm = perms[pi];
        bool ok = true;
        for (int c = 0; c < sh.s && ok; ++c) ok = (node.state[perm[c]] & cm[c]) == 0;
        if (!ok) continue;
        State st = node.state;
        for (int c = 0; c < sh.s; ++c) st[perm[c]] |= cm[c];
        if (!next.contains(st)) {
          auto hist = node.placements;
          hist.push_back(static_cast<int>(pi));
          next.emplace(std::move(st), std::move(hist));
        }
      }
    }
    std::vector<Node> out;
    out.reserve(next.size());
    for (auto& [st, hist] : next) out.push_back({st, hist});
    return out;
  }

  void leaf(const Node& node) {
    std::vector<int> cells;
    cells.reserve(static_cast<std::size_t>(r) * sh.v());
    for (int m = 0; m < sh.k; ++m)
      for (int c = 0; c < sh.s; ++c) cells.push_back(m * sh.s + c + 1);
    for (std::size_t rep = 0; rep < chosen.size(); ++rep) {
      const auto& g = cands[chosen[rep]];
      const auto& perm = perms[node.placements[rep]];
      std::vector<int> placed(g.size());
      for (int m = 0; m < sh.k; ++m)
        for (int c = 0; c < sh.s; ++c) placed[m * sh.s + perm[c]] = sh.at(g, m, c);
      cells.insert(cells.end(), placed.begin(), placed.end());
    }
    const Layout layout({sh.s, sh.k, r}, cells);
    const double value =
        obj == Objective::col ? average_col_efficiency(layout) : average_rowcol_efficiency(layout);
    ++evaluated;
    if (value > best + 1e-12) {
      best = value;
      best_cells = std::move(cells);
    }
  }

  void descend(const std::vector<Node>& nodes, std::size_t from) {
    if (static_cast<int>(chosen.size()) == r - 1) {
      leaf(nodes.front());
      return;
    }
    for (std::size_t i = from; i < cands.size(); ++i) {
      auto next = extend(nodes, i);
      if (next.empty()) continue;
      chosen.push_back(i);
      descend(next, i);
      chosen.pop_back();
    }
  }
};

}  // namespace

double enumeration_space(const DesignParams& p, Objective objective) {
  const double per_rep = objective == Objective::col
                             ? factorial(p.v()) / (std::pow(factorial(p.k), p.s) * factorial(p.s))
                             : factorial(p.v()) / (factorial(p.k) * factorial(p.s));
  const double stab = objective == Objective::col ? std::pow(factorial(p.k), p.s) * factorial(p.s)
                                                  : factorial(p.k) * factorial(p.s);
  if (p.r <= 1) return 1;
  return std::pow(per_rep, p.r - 1) / (stab * factorial(p.r - 2));
}

EnumerationResult enumerate_optimum(const DesignParams& p, Objective objective) {
  if (p.k < 2 || p.s < 2) throw DomainError("enumeration needs k >= 2 and s >= 2");
  if (p.r > p.s) throw DomainError("a latinized design needs r <= s");
  if (p.v() > 63) throw DomainError("enumeration supports at most 63 treatments");
  const double space = enumeration_space(p, objective);
  if (space > kMaxEnumerationSpace) {
    throw DomainError("enumeration space of about " + std::to_string(static_cast<long long>(space)) +
                      " designs exceeds the limit of 1e8");
  }
  const Shape sh{p.k, p.s};
  Search search{sh, objective, p.r, candidates(sh, objective), {}, {}, {}, -1, {}, 0};
  for (const auto& g : search.cands) search.masks.push_back(column_masks(g, sh));
  std::vector<int> perm(p.s);
  std::iota(perm.begin(), perm.end(), 0);
  do search.perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  Grid standard(static_cast<std::size_t>(sh.v()));
  std::iota(standard.begin(), standard.end(), 1);
  Search::Node root{column_masks(standard, sh), {}};

  if (p.r == 1) {
    search.leaf(root);
  } else {
    std::map<Grid, std::size_t> index;
    for (std::size_t i = 0; i < search.cands.size(); ++i) index.emplace(key_of(search.cands[i], sh, objective), i);
    const auto stab = stabiliser(sh, objective);
    for (std::size_t i = 0; i < search.cands.size(); ++i) {
      // second replicate: only the first of its orbit under the stabiliser
      bool minimal = true;
      for (const auto& pi : stab) {
        Grid g = search.cands[i];
        for (auto& label : g) label = pi[label];
        if (index.at(key_of(canonical(g, sh, objective), sh, objective)) < i) {
          minimal = false;
          break;
        }
      }
      if (!minimal) continue;
      auto next = search.extend({root}, i);
      if (next.empty()) continue;
      search.chosen.push_back(i);
      search.descend(next, i);
      search.chosen.pop_back();
    }
  }
  if (search.best < 0) throw ValidationError("no latinized design exists for these parameters");
  return {search.best, Layout(p, search.best_cells), search.evaluated};
}

}  // namespace slsq

#include "slsq/design.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "slsq/error.hpp"

namespace slsq {

namespace {

std::string where(int rep) { return "replicate " + std::to_string(rep + 1); }

void check_params(const DesignParams& p) {
  if (p.s < 1 || p.k < 1 || p.r < 1) {
    throw ValidationError("design dimensions must be positive (s=" + std::to_string(p.s) +
                          " k=" + std::to_string(p.k) + " r=" + std::to_string(p.r) + ")");
  }
}

}  // namespace

Layout::Layout(DesignParams params, std::vector<int> cells)
    : params_(params), cells_(std::move(cells)) {
  check_params(params_);
  if (cells_.size() != static_cast<std::size_t>(params_.plots())) {
    throw ValidationError("layout has " + std::to_string(cells_.size()) + " cells, expected " +
                          std::to_string(params_.plots()));
  }
  const int v = params_.v();
  std::vector<int> seen(static_cast<std::size_t>(v) + 1);
  const std::size_t per_rep = static_cast<std::size_t>(v);
  for (int rep = 0; rep < params_.r; ++rep) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t i = 0; i < per_rep; ++i) {
      const int label = cells_[rep * per_rep + i];
      if (label < 1 || label > v) {
        throw ValidationError("label " + std::to_string(label) + " in " + where(rep) +
                              " is outside 1.." + std::to_string(v));
      }
      if (seen[label]++ != 0) {
        throw ValidationError(where(rep) + " is not a complete replicate: treatment " +
                              std::to_string(label) + " appears more than once");
      }
    }
  }
}

void Layout::swap_cells(int rep, int row_a, int col_a, int row_b, int col_b) {
  std::swap(cells_[index(rep, row_a, col_a)], cells_[index(rep, row_b, col_b)]);
}

bool is_latinized(const Layout& layout) {
  const auto& p = layout.params();
  std::vector<char> seen(static_cast<std::size_t>(p.v()) + 1);
  for (int col = 0; col < p.s; ++col) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int rep = 0; rep < p.r; ++rep) {
      for (int row = 0; row < p.k; ++row) {
        if (seen[layout.at(rep, row, col)]++ != 0) return false;
      }
    }
  }
  return true;
}

DesignClass classify(const Layout& layout) {
  const auto& p = layout.params();
  DesignClass c;
  c.resolvable = true;
  c.latinized = is_latinized(layout);
  // A long column has k*r plots; with r = s and no repeats it holds every
  // treatment exactly once.
  c.semi_latin = c.latinized && p.r == p.s;
  c.extended_semi_latin = c.semi_latin;
  return c;
}

namespace {

struct Header {
  int s = 0, k = 0, r = 0;
};

int parse_int(std::string_view token, int line_no) {
  int value = 0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("line " + std::to_string(line_no) + ": '" + std::string(token) +
                     "' is not an integer");
  }
  return value;
}

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

Header parse_header(std::string_view line) {
  // "# s=<int> k=<int> r=<int>"
  auto tokens = tokenize(line.substr(1));
  Header h;
  bool have_s = false, have_k = false, have_r = false;
  for (auto tok : tokens) {
    const auto eq = tok.find('=');
    if (eq == std::string_view::npos) throw ParseError("malformed header token '" + std::string(tok) + "'");
    const auto key = tok.substr(0, eq);
    const int value = parse_int(tok.substr(eq + 1), 1);
    if (key == "s") {
      h.s = value;
      have_s = true;
    } else if (key == "k") {
      h.k = value;
      have_k = true;
    } else if (key == "r") {
      h.r = value;
      have_r = true;
    } else {
      throw ParseError("unknown header key '" + std::string(key) + "'");
    }
  }
  if (!have_s || !have_k || !have_r) throw ParseError("header must define s, k and r");
  if (h.s < 1 || h.k < 1 || h.r < 1) throw ParseError("header dimensions must be positive");
  return h;
}

}  // namespace

Layout parse_layout(std::string_view text, const ShapeHint& hint) {
  std::optional<Header> header;
  std::vector<std::vector<int>> rows;
  std::vector<std::size_t> group_sizes{0};
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto tokens = tokenize(line);
    if (tokens.empty()) {
      if (group_sizes.back() != 0) group_sizes.push_back(0);
      continue;
    }
    if (tokens.front().front() == '#') {
      if (header || !rows.empty()) throw ParseError("line " + std::to_string(line_no) + ": unexpected header");
      header = parse_header(line.substr(line.find('#')));
      continue;
    }
    std::vector<int> row;
    row.reserve(tokens.size());
    for (auto tok : tokens) row.push_back(parse_int(tok, line_no));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("line " + std::to_string(line_no) + " has " + std::to_string(row.size()) +
                       " labels, expected " + std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
    ++group_sizes.back();
  }
  if (group_sizes.back() == 0) group_sizes.pop_back();
  if (rows.empty()) throw ParseError("no design rows");

  DesignParams p;
  p.s = static_cast<int>(rows.front().size());
  const int nrows = static_cast<int>(rows.size());
  if (header) {
    if (header->s != p.s) {
      throw ParseError("header says s=" + std::to_string(header->s) + " but rows have " +
                       std::to_string(p.s) + " labels");
    }
    p.k = header->k;
    p.r = header->r;
  } else if (hint.k || hint.r) {
    p.k = hint.k.value_or(hint.r ? nrows / *hint.r : 0);
    p.r = hint.r.value_or(p.k > 0 ? nrows / p.k : 0);
  } else {
    const bool uniform = std::all_of(group_sizes.begin(), group_sizes.end(),
                                     [&](std::size_t g) { return g == group_sizes.front(); });
    if (!uniform) throw ParseError("missing header and replicates are not separated uniformly");
    p.k = static_cast<int>(group_sizes.front());
    p.r = static_cast<int>(group_sizes.size());
  }
  if (p.k < 1 || p.r < 1 || p.k * p.r != nrows) {
    throw ParseError("expected k*r = " + std::to_string(p.k * p.r) + " rows, found " +
                     std::to_string(nrows));
  }
  std::vector<int> cells;
  cells.reserve(static_cast<std::size_t>(p.plots()));
  for (const auto& row : rows) cells.insert(cells.end(), row.begin(), row.end());
  return Layout(p, std::move(cells));
}

std::string serialize_layout(const Layout& layout) {
  const auto& p = layout.params();
  const int width = static_cast<int>(std::to_string(p.v()).size());
  std::string out = "# s=" + std::to_string(p.s) + " k=" + std::to_string(p.k) +
                    " r=" + std::to_string(p.r) + "\n";
  for (int rep = 0; rep < p.r; ++rep) {
    if (rep > 0) out += '\n';
    for (int row = 0; row < p.k; ++row) {
      for (int col = 0; col < p.s; ++col) {
        auto label = std::to_string(layout.at(rep, row, col));
        if (col > 0) out += ' ';
        out.append(static_cast<std::size_t>(width) - label.size(), ' ');
        out += label;
      }
      out += '\n';
    }
  }
  return out;
}

Layout load_layout(const std::string& path, const ShapeHint& hint) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_layout(buf.str(), hint);
}

namespace {

struct Figure {
  const char* name;
  DesignParams params;
  std::vector<int> cells;
};

const std::vector<Figure>& figures() {
  static const std::vector<Figure> all = {
      {"fig1a", {4, 2, 4}, {1, 7, 2, 8, 5, 3, 6, 4, 6, 4, 5, 3, 2, 8, 1, 7,
                            3, 5, 4, 6, 7, 1, 8, 2, 8, 2, 7, 1, 4, 6, 3, 5}},
      {"fig1b", {4, 2, 4}, {1, 3, 5, 7, 2, 4, 6, 8, 3, 6, 1, 2, 4, 8, 7, 5,
                            5, 2, 8, 1, 6, 7, 4, 3, 7, 1, 2, 4, 8, 5, 3, 6}},
      {"fig1c", {4, 2, 4}, {4, 8, 3, 5, 2, 1, 7, 6, 8, 4, 5, 3, 6, 7, 1, 2,
                            3, 2, 6, 8, 1, 5, 4, 7, 5, 3, 2, 1, 7, 6, 8, 4}},
      {"fig2a", {5, 3, 5}, {1,  5,  4,  3,  2,  6,  9,  7,  10, 8,  11, 13, 15, 12, 14,
                            2,  1,  5,  4,  3,  7,  10, 8,  6,  9,  12, 14, 11, 13, 15,
                            3,  2,  1,  5,  4,  8,  6,  9,  7,  10, 13, 15, 12, 14, 11,
                            4,  3,  2,  1,  5,  9,  7,  10, 8,  6,  14, 11, 13, 15, 12,
                            5,  4,  3,  2,  1,  10, 8,  6,  9,  7,  15, 12, 14, 11, 13}},
      {"fig2b", {5, 3, 5}, {2,  3,  13, 11, 4,  8,  12, 9,  1,  7,  14, 10, 5,  6,  15,
                            12, 15, 7,  4,  13, 6,  1,  3,  9,  2,  5,  8,  11, 14, 10,
                            13, 9,  4,  15, 3,  7,  2,  8,  10, 6,  1,  11, 12, 5,  14,
                            3,  6,  14, 2,  8,  9,  4,  10, 12, 11, 15, 13, 1,  7,  5,
                            11, 7,  2,  3,  12, 10, 14, 15, 8,  1,  4,  5,  6,  13, 9}},
      {"fig2c", {5, 3, 5}, {5,  1,  3,  14, 10, 9,  8,  15, 12, 13, 7,  2,  4,  11, 6,
                            6,  5,  11, 2,  8,  3,  10, 1,  9,  4,  12, 15, 7,  13, 14,
                            1,  14, 2,  3,  9,  4,  6,  12, 5,  11, 13, 7,  10, 8,  15,
                            14, 11, 9,  10, 1,  2,  13, 6,  4,  5,  15, 3,  8,  7,  12,
                            8,  12, 13, 1,  7,  10, 9,  14, 6,  3,  11, 4,  5,  15, 2}},
      {"fig2d", {5, 3, 5}, {1,  5,  4,  3,  8,  6,  9,  7,  10, 14, 11, 13, 15, 12, 2,
                            2,  1,  5,  4,  9,  7,  10, 8,  6,  15, 12, 14, 11, 13, 3,
                            3,  2,  1,  5,  10, 8,  6,  9,  7,  11, 13, 15, 12, 14, 4,
                            4,  3,  2,  1,  6,  9,  7,  10, 8,  12, 14, 11, 13, 15, 5,
                            5,  4,  3,  2,  7,  10, 8,  6,  9,  13, 15, 12, 14, 11, 1}},
  };
  return all;
}

}  // namespace

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& f : figures()) out.emplace_back(f.name);
    return out;
  }();
  return names;
}

Layout figure_layout(std::string_view name) {
  for (const auto& f : figures()) {
    if (name == f.name) return Layout(f.params, f.cells);
  }
  throw DomainError("unknown figure '" + std::string(name) + "'");
}

}  // namespace slsq

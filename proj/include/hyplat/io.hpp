#pragma once

// Text formats for the command line tools: symmetric integer matrices in the
// count-prefixed or bracketed form, and simple undirected graphs as edge
// lists. Parsers track line and column for error messages and accept the
// typographic minus sign that survives copying from typeset tables.

#include "hyplat/matrix.hpp"

#include <string>
#include <utility>
#include <vector>

namespace hyplat {

namespace detail {

// U+2212 to ASCII '-'; keeps byte positions aligned well enough for errors
inline std::string normalize_minus(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (i + 2 < s.size() && static_cast<unsigned char>(s[i]) == 0xE2 &&
        static_cast<unsigned char>(s[i + 1]) == 0x88 &&
        static_cast<unsigned char>(s[i + 2]) == 0x92) {
      out.push_back('-');
      i += 2;
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

struct TextScanner {
  std::string s;
  size_t i = 0;
  int line = 1, col = 1;

  explicit TextScanner(const std::string& text) : s(normalize_minus(text)) {}

  void bump(char c) {
    if (c == '\n') {
      line++;
      col = 1;
    } else {
      col++;
    }
  }
  void skip_space() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r' || s[i] == '\n' ||
                            s[i] == ','))
      bump(s[i++]);
  }
  bool at_end() {
    skip_space();
    return i >= s.size();
  }
  char peek() {
    skip_space();
    return i < s.size() ? s[i] : '\0';
  }
  void expect(char c, const char* what) {
    if (peek() != c) throw ParseError(std::string("expected ") + what, line, col);
    bump(s[i++]);
  }
  Int integer() {
    skip_space();
    int l = line, c = col;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
      neg = s[i] == '-';
      bump(s[i++]);
    }
    size_t digits = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') bump(s[i++]);
    if (i == digits) throw ParseError("expected an integer", l, c);
    Int v(s.substr(digits, i - digits));  // gmp rejects an explicit plus sign
    return neg ? Int(-v) : v;
  }
  long bounded(long lo, long hi, const char* what) {
    int l = line, c = col;
    Int v = integer();
    if (v < lo || v > hi)
      throw ParseError(std::string(what) + " out of range", l, c);
    return v.get_si();
  }
};

}  // namespace detail

// Symmetric integer matrix from either "n a11 a12 ... ann" or a bracketed
// array of rows "[[a,b],[c,d]]". Symmetry is required, not symmetrized.
inline IntMatrix parse_matrix(const std::string& text) {
  detail::TextScanner sc(text);
  IntMatrix m;
  if (sc.peek() == '[') {
    std::vector<std::vector<Int>> rows;
    sc.expect('[', "'['");
    while (true) {
      sc.expect('[', "'['");
      std::vector<Int> row;
      while (sc.peek() != ']') row.push_back(sc.integer());
      sc.expect(']', "']'");
      if (!rows.empty() && row.size() != rows[0].size())
        throw ParseError("rows of different lengths", sc.line, sc.col);
      rows.push_back(std::move(row));
      if (sc.peek() == ']') break;
    }
    sc.expect(']', "']'");
    if (rows.empty() || rows.size() != rows[0].size())
      throw ParseError("matrix must be square", sc.line, sc.col);
    const int n = static_cast<int>(rows.size());
    m = IntMatrix(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
  } else {
    const int n = static_cast<int>(sc.bounded(1, 64, "matrix size"));
    m = IntMatrix(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = sc.integer();
  }
  if (!sc.at_end()) throw ParseError("trailing input after the matrix", sc.line, sc.col);
  for (int i = 0; i < m.rows; ++i)
    for (int j = i + 1; j < m.cols; ++j)
      if (m(i, j) != m(j, i))
        throw ParseError("matrix not symmetric at row " + std::to_string(i + 1) + ", column " +
                             std::to_string(j + 1),
                         0, 0);
  return m;
}

struct GraphInput {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // 1-based vertex pairs
};

// "n  i j  i j ..." with vertices 1..n, no self loops.
inline GraphInput parse_graph(const std::string& text) {
  detail::TextScanner sc(text);
  GraphInput g;
  g.n = static_cast<int>(sc.bounded(1, 4096, "vertex count"));
  while (!sc.at_end()) {
    int l = sc.line, c = sc.col;
    long a = sc.bounded(1, g.n, "vertex");
    if (sc.at_end()) throw ParseError("edge list ends mid-pair", sc.line, sc.col);
    long b = sc.bounded(1, g.n, "vertex");
    if (a == b) throw ParseError("self loop", l, c);
    g.edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
  }
  return g;
}

// 2 on the diagonal, -1 where two vertices are adjacent.
inline IntMatrix graph_to_gram(const std::vector<std::pair<int, int>>& edges, int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 2;
  for (const auto& [a, b] : edges) {
    if (a < 1 || a > n || b < 1 || b > n) throw ParseError("vertex out of range", 0, 0);
    if (a == b) throw ParseError("self loop", 0, 0);
    m(a - 1, b - 1) = -1;
    m(b - 1, a - 1) = -1;
  }
  return m;
}

}  // namespace hyplat

#pragma once

// Latin squares of 3-nets, group Cayley tables and an isotopy test.

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "crpencil/arrangement.hpp"

namespace crpencil {

class NotANet : public ArrangementError {
 public:
  using ArrangementError::ArrangementError;
};

struct LatinSquare {
  int order = 0;
  std::vector<std::vector<int>> cells;  // cells[row][col] = symbol in [0, order)

  bool is_latin() const {
    if (static_cast<int>(cells.size()) != order) return false;
    for (int i = 0; i < order; ++i) {
      if (static_cast<int>(cells[i].size()) != order) return false;
      std::vector<bool> row(order, false), col(order, false);
      for (int j = 0; j < order; ++j) {
        const int a = cells[i][j], b = cells[j][i];
        if (a < 0 || a >= order || b < 0 || b >= order || row[a] || col[b]) return false;
        row[a] = col[b] = true;
      }
    }
    return true;
  }

  bool is_commutative() const {
    for (int i = 0; i < order; ++i)
      for (int j = 0; j < i; ++j)
        if (cells[i][j] != cells[j][i]) return false;
    return true;
  }

  std::string to_text() const {
    const int width = static_cast<int>(std::to_string(std::max(order - 1, 0)).size());
    std::ostringstream os;
    for (const auto& row : cells) {
      for (std::size_t j = 0; j < row.size(); ++j) {
        std::string s = std::to_string(row[j]);
        os << std::string(width - s.size() + (j ? 1 : 0), ' ') << s;
      }
      os << '\n';
    }
    return os.str();
  }

  friend bool operator==(const LatinSquare& a, const LatinSquare& b) { return a.cells == b.cells; }
};

// Rows follow class 0, columns class 1, symbols class 2, each in arrangement order.
inline LatinSquare latin_square(const Arrangement& arr) {
  auto rep = multinet_check(arr);
  if (rep.k != 3) throw NotANet("Latin squares need exactly three classes");
  if (!rep.is_net) throw NotANet("arrangement is not a 3-net");
  const auto a = arr.class_members(0), b = arr.class_members(1), c = arr.class_members(2);
  if (a.size() != b.size() || b.size() != c.size()) throw NotANet("classes have different sizes");
  LatinSquare sq{static_cast<int>(a.size()), {}};
  sq.cells.assign(sq.order, std::vector<int>(sq.order, -1));
  for (int i = 0; i < sq.order; ++i) {
    for (int j = 0; j < sq.order; ++j) {
      const Flat f = flat_of(arr, {a[i], b[j]});
      int hit = -1;
      for (int s = 0; s < sq.order; ++s) {
        if (!f.has_member(c[s])) continue;
        if (hit != -1) throw NotANet("two class-2 hyperplanes through one intersection");
        hit = s;
      }
      if (hit == -1) throw NotANet("no class-2 hyperplane through an intersection");
      sq.cells[i][j] = hit;
    }
  }
  if (!sq.is_latin()) throw NotANet("incidence table is not a Latin square");
  return sq;
}

inline LatinSquare cyclic_table(int q) {
  if (q < 1) throw ArrangementError("group order must be positive");
  LatinSquare sq{q, std::vector<std::vector<int>>(q, std::vector<int>(q))};
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) sq.cells[i][j] = (i + j) % q;
  return sq;
}

// D_d of order 2d; element r^i s^e has index i + d e, and s r s = r^{-1}.
inline LatinSquare dihedral_table(int d) {
  if (d < 1) throw ArrangementError("dihedral parameter must be positive");
  const int q = 2 * d;
  LatinSquare sq{q, std::vector<std::vector<int>>(q, std::vector<int>(q))};
  for (int x = 0; x < q; ++x) {
    for (int y = 0; y < q; ++y) {
      const int i = x % d, a = x / d, j = y % d, b = y / d;
      const int rot = ((a ? i - j : i + j) % d + d) % d;
      sq.cells[x][y] = rot + d * ((a + b) % 2);
    }
  }
  return sq;
}

namespace detail {

// Isotopic copy with first row and first column equal to 0, 1, ..., q-1.
inline LatinSquare reduce_latin(const LatinSquare& sq) {
  const int q = sq.order;
  std::vector<int> sym(q);
  for (int j = 0; j < q; ++j) sym[sq.cells[0][j]] = j;
  LatinSquare r{q, std::vector<std::vector<int>>(q, std::vector<int>(q))};
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) r.cells[i][j] = sym[sq.cells[i][j]];
  std::vector<std::vector<int>> rows(q);
  for (int i = 0; i < q; ++i) rows[r.cells[i][0]] = r.cells[i];
  r.cells = std::move(rows);
  return r;
}

class IsotopySearch {
 public:
  IsotopySearch(const LatinSquare& l, const LatinSquare& m) : l_(l), m_(m), q_(l.order) {
    col_of_.assign(q_, std::vector<int>(q_));
    row_of_.assign(q_, std::vector<int>(q_));
    for (int i = 0; i < q_; ++i)
      for (int j = 0; j < q_; ++j) {
        col_of_[i][m_.cells[i][j]] = j;
        row_of_[j][m_.cells[i][j]] = i;
      }
  }

  bool run() {
    State s;
    for (auto* v : {&s.map[0], &s.map[1], &s.map[2]}) v->assign(q_, -1);
    for (auto* v : {&s.used[0], &s.used[1], &s.used[2]}) v->assign(q_, false);
    return search(s);
  }

 private:
  struct State {
    std::vector<int> map[3];   // row, column, symbol images
    std::vector<bool> used[3];
  };

  static bool assign(State& s, int axis, int from, int to) {
    if (s.map[axis][from] == to) return true;
    if (s.map[axis][from] != -1 || s.used[axis][to]) return false;
    s.map[axis][from] = to;
    s.used[axis][to] = true;
    return true;
  }

  // Every cell with two of its three images known forces the third.
  bool propagate(State& s) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int r = 0; r < q_; ++r) {
        for (int c = 0; c < q_; ++c) {
          const int sym = l_.cells[r][c];
          const int a = s.map[0][r], b = s.map[1][c], g = s.map[2][sym];
          const int known = (a != -1) + (b != -1) + (g != -1);
          if (known < 2) continue;
          if (known == 3) {
            if (m_.cells[a][b] != g) return false;
            continue;
          }
          bool ok;
          if (g == -1) ok = assign(s, 2, sym, m_.cells[a][b]);
          else if (b == -1) ok = assign(s, 1, c, col_of_[a][g]);
          else ok = assign(s, 0, r, row_of_[b][g]);
          if (!ok) return false;
          changed = true;
        }
      }
    }
    return true;
  }

  bool search(State s) const {
    if (!propagate(s)) return false;
    for (int axis = 0; axis < 3; ++axis) {
      for (int from = 0; from < q_; ++from) {
        if (s.map[axis][from] != -1) continue;
        for (int to = 0; to < q_; ++to) {
          if (s.used[axis][to]) continue;
          State t = s;
          assign(t, axis, from, to);
          if (search(std::move(t))) return true;
        }
        return false;
      }
    }
    return true;  // fully assigned and consistent after propagation
  }

  const LatinSquare& l_;
  const LatinSquare& m_;
  int q_;
  std::vector<std::vector<int>> col_of_, row_of_;
};

}  // namespace detail

// True iff row, column and symbol bijections carry a onto b.
inline bool is_isotopic(const LatinSquare& a, const LatinSquare& b) {
  if (a.order != b.order) throw ArrangementError("Latin squares of different orders");
  if (!a.is_latin() || !b.is_latin()) throw ArrangementError("isotopy test needs Latin squares");
  if (a.order == 0) return true;
  return detail::IsotopySearch(detail::reduce_latin(a), detail::reduce_latin(b)).run();
}

struct GroupSpec {
  enum Kind { Dihedral, Cyclic } kind;
  int param;  // d for D_d, q for Z_q

  int order() const { return kind == Dihedral ? 2 * param : param; }
  LatinSquare table() const { return kind == Dihedral ? dihedral_table(param) : cyclic_table(param); }
  std::string name() const { return (kind == Dihedral ? "D" : "Z") + std::to_string(param); }
};

inline bool isotopy_to_group_table(const LatinSquare& sq, const GroupSpec& g) {
  if (sq.order != g.order()) throw ArrangementError("square order does not match group order");
  return is_isotopic(sq, g.table());
}

}  // namespace crpencil

#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "lcg/interval.hpp"

namespace lcg {

// Lattice point (n h, m h) of the chart (u, b) = (log a, b) of the ax+b group.
// The group law in the chart is (u, b)(u', b') = (u + u', b + e^u b').
struct GridPoint {
  std::int64_t n = 0;
  std::int64_t m = 0;

  friend bool operator==(const GridPoint&, const GridPoint&) = default;
  friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

// Half-open range [lo, hi) of b-cell indices inside one u-column.
struct CellRun {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  friend bool operator==(const CellRun&, const CellRun&) = default;
};

// Union of closed cells [n h, (n+1) h] x [m h, (m+1) h], stored per u-column as
// sorted, disjoint, non-adjacent runs. Empty columns are never stored.
struct CellSet {
  std::map<std::int64_t, std::vector<CellRun>> columns;

  bool empty() const { return columns.empty(); }
  std::int64_t cell_count() const;
  std::vector<std::pair<std::int64_t, std::int64_t>> cells() const;
  friend bool operator==(const CellSet&, const CellSet&) = default;
};

// inner is contained in the true set, which is contained in outer.
struct CellBracket {
  CellSet inner;
  CellSet outer;
};

// Window-bounded lattice discretization of the ax+b group. Right Haar measure
// is the flat area du db; left Haar measure has density e^{-u}; the modular
// function is (u, b) -> e^{-u}. Elements are lattice corners; products of
// elements are snapped to the lattice, sets are cell unions and every set
// operation that does not preserve cells returns a sound bracket.
class AffineGrid {
 public:
  AffineGrid(double u_lo, double u_hi, double b_lo, double b_hi, double h);

  double h() const { return h_; }
  std::int64_t n_lo() const { return n_lo_; }
  std::int64_t n_hi() const { return n_hi_; }
  std::int64_t m_lo() const { return m_lo_; }
  std::int64_t m_hi() const { return m_hi_; }

  GridPoint identity() const { return {0, 0}; }
  GridPoint snap(double u, double b) const;
  GridPoint make_point(std::int64_t n, std::int64_t m) const;
  double u_of(const GridPoint& x) const { return static_cast<double>(x.n) * h_; }
  double b_of(const GridPoint& x) const { return static_cast<double>(x.m) * h_; }

  GridPoint mul(const GridPoint& x, const GridPoint& y) const;
  GridPoint inv(const GridPoint& x) const;
  Interval modular(const GridPoint& x) const;
  // -1 below (Delta < 1), 0 on, +1 above; the band |u| < h counts as on.
  int region(const GridPoint& x) const;

  // Cells with indices [round(lo/h), round(hi/h)) in each direction.
  CellSet box(double u_lo, double u_hi, double b_lo, double b_hi) const;
  CellSet from_cells(const std::vector<std::pair<std::int64_t, std::int64_t>>& cells) const;
  bool contains(const CellSet& s, const GridPoint& x) const;

  Interval left_measure(const CellSet& s) const;
  Interval right_measure(const CellSet& s) const;
  // Left Haar mass of one cell in column n.
  Interval column_weight(std::int64_t n) const;

  CellBracket product(const CellSet& s, const CellSet& t) const;
  CellBracket left_translate(const GridPoint& g, const CellSet& s) const;
  CellBracket right_translate(const CellSet& s, const GridPoint& g) const;
  CellBracket inverse(const CellSet& s) const;

  CellSet unite(const CellSet& a, const CellSet& b) const;
  CellSet intersect(const CellSet& a, const CellSet& b) const;
  CellSet subtract(const CellSet& a, const CellSet& b) const;
  bool subset(const CellSet& a, const CellSet& b) const { return subtract(a, b).empty(); }

  // Sup and inf of Delta over the closed cells, with lattice witnesses.
  struct DeltaExtrema {
    Interval sup;
    Interval inf;
    GridPoint argmax;
    GridPoint argmin;
  };
  DeltaExtrema delta_extrema(const CellSet& s) const;

 private:
  struct ColumnIntervals {
    std::map<std::int64_t, std::vector<Interval>> outer;
    std::map<std::int64_t, std::vector<Interval>> inner;
  };
  CellBracket rasterize(const ColumnIntervals& pieces) const;
  void check_column(std::int64_t n) const;
  Interval coord(std::int64_t index) const;

  double h_;
  std::int64_t n_lo_, n_hi_, m_lo_, m_hi_;
};

}  // namespace lcg

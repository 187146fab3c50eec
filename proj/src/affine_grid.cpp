#include "lcg/affine_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lcg/errors.hpp"
#include "lcg/kernels.hpp"

namespace lcg {
namespace {

constexpr double kSnapSlack = 1e-9;

std::vector<CellRun> normalize_runs(std::vector<CellRun> runs) {
  std::sort(runs.begin(), runs.end(), [](const CellRun& a, const CellRun& b) { return a.lo < b.lo; });
  std::vector<CellRun> out;
  for (const auto& r : runs) {
    if (r.lo >= r.hi) continue;
    if (!out.empty() && r.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, r.hi);
    } else {
      out.push_back(r);
    }
  }
  return out;
}

std::vector<CellRun> intersect_runs(const std::vector<CellRun>& a, const std::vector<CellRun>& b) {
  std::vector<CellRun> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    std::int64_t lo = std::max(a[i].lo, b[j].lo);
    std::int64_t hi = std::min(a[i].hi, b[j].hi);
    if (lo < hi) out.push_back({lo, hi});
    if (a[i].hi < b[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

std::vector<CellRun> subtract_runs(const std::vector<CellRun>& a, const std::vector<CellRun>& b) {
  std::vector<CellRun> out;
  std::size_t j = 0;
  for (const auto& r : a) {
    std::int64_t cur = r.lo;
    while (j < b.size() && b[j].hi <= cur) ++j;
    std::size_t k = j;
    while (k < b.size() && b[k].lo < r.hi) {
      if (b[k].lo > cur) out.push_back({cur, b[k].lo});
      cur = std::max(cur, b[k].hi);
      ++k;
    }
    if (cur < r.hi) out.push_back({cur, r.hi});
  }
  return out;
}

// Lower endpoint of { e v : e in E } (outward) and the matching upper endpoint.
Interval scaled(const Interval& e, double v) { return e * Interval(v); }

}  // namespace

std::int64_t CellSet::cell_count() const {
  std::int64_t c = 0;
  for (const auto& [n, runs] : columns) {
    for (const auto& r : runs) c += r.hi - r.lo;
  }
  return c;
}

std::vector<std::pair<std::int64_t, std::int64_t>> CellSet::cells() const {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (const auto& [n, runs] : columns) {
    for (const auto& r : runs) {
      for (std::int64_t m = r.lo; m < r.hi; ++m) out.emplace_back(n, m);
    }
  }
  return out;
}

AffineGrid::AffineGrid(double u_lo, double u_hi, double b_lo, double b_hi, double h) : h_(h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw InputError("grid pitch h must be positive");
  if (!(u_lo < u_hi) || !(b_lo < b_hi)) throw InputError("grid windows must be nonempty");
  n_lo_ = static_cast<std::int64_t>(std::floor(u_lo / h + kSnapSlack));
  n_hi_ = static_cast<std::int64_t>(std::ceil(u_hi / h - kSnapSlack));
  m_lo_ = static_cast<std::int64_t>(std::floor(b_lo / h + kSnapSlack));
  m_hi_ = static_cast<std::int64_t>(std::ceil(b_hi / h - kSnapSlack));
  if (n_lo_ > 0 || n_hi_ <= 0 || m_lo_ > 0 || m_hi_ <= 0) throw InputError("grid window must contain the identity");
  if (n_hi_ - n_lo_ > 100000000 || m_hi_ - m_lo_ > 100000000) throw InputError("grid window too fine");
}

void AffineGrid::check_column(std::int64_t n) const {
  if (n < n_lo_ || n >= n_hi_) {
    throw WindowError("u-column " + std::to_string(n) + " (u=" + format_real(static_cast<double>(n) * h_) +
                      ") outside grid window");
  }
}

GridPoint AffineGrid::make_point(std::int64_t n, std::int64_t m) const {
  check_column(n);
  if (m < m_lo_ || m >= m_hi_) {
    throw WindowError("b-row " + std::to_string(m) + " (b=" + format_real(static_cast<double>(m) * h_) +
                      ") outside grid window");
  }
  return {n, m};
}

GridPoint AffineGrid::snap(double u, double b) const {
  return make_point(static_cast<std::int64_t>(std::floor(u / h_ + kSnapSlack)),
                    static_cast<std::int64_t>(std::floor(b / h_ + kSnapSlack)));
}

GridPoint AffineGrid::mul(const GridPoint& x, const GridPoint& y) const {
  double m = static_cast<double>(x.m) + std::exp(u_of(x)) * static_cast<double>(y.m);
  return make_point(x.n + y.n, static_cast<std::int64_t>(std::floor(m + kSnapSlack)));
}

GridPoint AffineGrid::inv(const GridPoint& x) const {
  double m = -std::exp(-u_of(x)) * static_cast<double>(x.m);
  return make_point(-x.n, static_cast<std::int64_t>(std::floor(m + kSnapSlack)));
}

Interval AffineGrid::modular(const GridPoint& x) const { return exp(-(Interval(static_cast<double>(x.n)) * Interval(h_))); }

int AffineGrid::region(const GridPoint& x) const {
  double u = u_of(x);
  if (std::abs(u) < h_) return 0;
  return u > 0 ? -1 : 1;
}

Interval AffineGrid::coord(std::int64_t index) const { return Interval(static_cast<double>(index)) * Interval(h_); }

CellSet AffineGrid::box(double u_lo, double u_hi, double b_lo, double b_hi) const {
  std::int64_t n0 = std::llround(u_lo / h_), n1 = std::llround(u_hi / h_);
  std::int64_t m0 = std::llround(b_lo / h_), m1 = std::llround(b_hi / h_);
  if (n0 >= n1 || m0 >= m1) throw InputError("box is empty at pitch h=" + format_real(h_));
  check_column(n0);
  check_column(n1 - 1);
  if (m0 < m_lo_ || m1 > m_hi_) throw WindowError("box leaves the b-window");
  CellSet s;
  for (std::int64_t n = n0; n < n1; ++n) s.columns[n] = {CellRun{m0, m1}};
  return s;
}

CellSet AffineGrid::from_cells(const std::vector<std::pair<std::int64_t, std::int64_t>>& cells) const {
  std::map<std::int64_t, std::vector<CellRun>> cols;
  for (auto [n, m] : cells) {
    make_point(n, m);
    cols[n].push_back({m, m + 1});
  }
  CellSet s;
  for (auto& [n, runs] : cols) s.columns[n] = normalize_runs(std::move(runs));
  return s;
}

bool AffineGrid::contains(const CellSet& s, const GridPoint& x) const {
  auto it = s.columns.find(x.n);
  if (it == s.columns.end()) return false;
  return std::any_of(it->second.begin(), it->second.end(), [&](const CellRun& r) { return r.lo <= x.m && x.m < r.hi; });
}

Interval AffineGrid::column_weight(std::int64_t n) const {
  // h * e^{-n h} * (1 - e^{-h})
  Interval one_minus = widen(Interval(-std::expm1(-h_)), 2);
  return exp(-coord(n)) * one_minus * Interval(h_);
}

Interval AffineGrid::left_measure(const CellSet& s) const {
  std::vector<double> counts, w_lo, w_hi;
  counts.reserve(s.columns.size());
  for (const auto& [n, runs] : s.columns) {
    std::int64_t c = 0;
    for (const auto& r : runs) c += r.hi - r.lo;
    Interval w = column_weight(n);
    counts.push_back(static_cast<double>(c));
    w_lo.push_back(w.lo);
    w_hi.push_back(w.hi);
  }
  double lo = kernels::dot(counts, w_lo);
  double hi = kernels::dot(counts, w_hi);
  // Positive terms: summation error is at most (N + 1) eps times the sum.
  const double rel = (static_cast<double>(counts.size()) + 2.0) * std::numeric_limits<double>::epsilon();
  return Interval(round_down(lo * (1.0 - rel)), round_up(hi * (1.0 + rel)));
}

Interval AffineGrid::right_measure(const CellSet& s) const {
  Interval h(h_);
  return Interval(static_cast<double>(s.cell_count())) * h * h;
}

CellBracket AffineGrid::rasterize(const ColumnIntervals& pieces) const {
  CellBracket out;
  const Interval h(h_);
  for (const auto& [n, ivs] : pieces.outer) {
    check_column(n);
    std::vector<CellRun> runs;
    runs.reserve(ivs.size());
    for (const auto& iv : ivs) {
      double x_lo = (Interval(iv.lo) / h).lo;
      double x_hi = (Interval(iv.hi) / h).hi;
      std::int64_t m0 = static_cast<std::int64_t>(std::floor(x_lo));
      std::int64_t m1 = static_cast<std::int64_t>(std::ceil(x_hi));
      if (m1 == m0) m1 = m0 + 1;
      if (m0 < m_lo_ || m1 > m_hi_) {
        throw WindowError("product leaves the b-window in column " + std::to_string(n) + " (b in [" +
                          format_real(iv.lo) + ", " + format_real(iv.hi) + "])");
      }
      runs.push_back({m0, m1});
    }
    auto merged = normalize_runs(std::move(runs));
    if (!merged.empty()) out.outer.columns[n] = std::move(merged);
  }
  for (const auto& [n, ivs_in] : pieces.inner) {
    auto ivs = ivs_in;
    std::sort(ivs.begin(), ivs.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    for (const auto& iv : ivs) {
      if (!merged.empty() && iv.lo <= merged.back().hi) {
        merged.back().hi = std::max(merged.back().hi, iv.hi);
      } else {
        merged.push_back(iv);
      }
    }
    std::vector<CellRun> runs;
    for (const auto& iv : merged) {
      double x_lo = (Interval(iv.lo) / h).hi;
      double x_hi = (Interval(iv.hi) / h).lo;
      std::int64_t m0 = static_cast<std::int64_t>(std::ceil(x_lo));
      std::int64_t m1 = static_cast<std::int64_t>(std::floor(x_hi));
      if (m0 < m1) runs.push_back({m0, m1});
    }
    auto cleaned = normalize_runs(std::move(runs));
    // The inner set must sit inside the outer one; clip against it.
    auto it = out.outer.columns.find(n);
    if (it == out.outer.columns.end()) continue;
    cleaned = intersect_runs(cleaned, it->second);
    if (!cleaned.empty()) out.inner.columns[n] = std::move(cleaned);
  }
  return out;
}

CellBracket AffineGrid::product(const CellSet& s, const CellSet& t) const {
  ColumnIntervals pieces;
  for (const auto& [nx, rx] : s.columns) {
    // u1 ranges over [nx h, (nx+1) h]; the two fixed choices u1 = nx h and
    // u1 = (nx+1) h give sure regions in target columns nx+ny and nx+ny+1.
    const Interval e_left = exp(coord(nx));
    const Interval e_right = exp(coord(nx + 1));
    const Interval e_all = hull(e_left, e_right);
    for (const auto& [ny, ry] : t.columns) {
      auto& out0 = pieces.outer[nx + ny];
      auto& out1 = pieces.outer[nx + ny + 1];
      auto& in0 = pieces.inner[nx + ny];
      auto& in1 = pieces.inner[nx + ny + 1];
      for (const auto& a : rx) {
        const Interval a_lo = coord(a.lo), a_hi = coord(a.hi);
        for (const auto& b : ry) {
          const double b_lo = coord(b.lo).lo, b_hi = coord(b.hi).hi;
          const double b_lo_in = coord(b.lo).hi, b_hi_in = coord(b.hi).lo;
          Interval outer((a_lo + scaled(e_all, b_lo)).lo, (a_hi + scaled(e_all, b_hi)).hi);
          out0.push_back(outer);
          out1.push_back(outer);
          double l0 = (a_lo + scaled(e_left, b_lo_in)).hi, h0 = (a_hi + scaled(e_left, b_hi_in)).lo;
          double l1 = (a_lo + scaled(e_right, b_lo_in)).hi, h1 = (a_hi + scaled(e_right, b_hi_in)).lo;
          if (l0 < h0) in0.push_back(Interval(l0, h0));
          if (l1 < h1) in1.push_back(Interval(l1, h1));
        }
      }
    }
  }
  return rasterize(pieces);
}

CellBracket AffineGrid::left_translate(const GridPoint& g, const CellSet& s) const {
  // g (u, b) = (u0 + u, b0 + e^{u0} b): columns shift, b scales uniformly.
  ColumnIntervals pieces;
  const Interval e = exp(coord(g.n));
  const Interval b0 = coord(g.m);
  for (const auto& [n, runs] : s.columns) {
    for (const auto& r : runs) {
      Interval lo = b0 + e * coord(r.lo);
      Interval hi = b0 + e * coord(r.hi);
      pieces.outer[n + g.n].push_back(Interval(lo.lo, hi.hi));
      if (lo.hi < hi.lo) pieces.inner[n + g.n].push_back(Interval(lo.hi, hi.lo));
    }
  }
  return rasterize(pieces);
}

CellBracket AffineGrid::right_translate(const CellSet& s, const GridPoint& g) const {
  // (u, b) g = (u + u0, b + e^u b0): a shear inside each column.
  ColumnIntervals pieces;
  const double b0_lo = coord(g.m).lo, b0_hi = coord(g.m).hi;
  for (const auto& [n, runs] : s.columns) {
    const Interval e = hull(exp(coord(n)), exp(coord(n + 1)));
    const Interval shift_outer = hull(scaled(e, b0_lo), scaled(e, b0_hi));
    // Sure shift range: [max_u e^u b0, min_u e^u b0] is empty unless b0 = 0.
    for (const auto& r : runs) {
      Interval lo = coord(r.lo), hi = coord(r.hi);
      pieces.outer[n + g.n].push_back(Interval((lo + shift_outer).lo, (hi + shift_outer).hi));
      double in_lo = (lo + Interval(shift_outer.hi)).hi;
      double in_hi = (hi + Interval(shift_outer.lo)).lo;
      if (in_lo < in_hi) pieces.inner[n + g.n].push_back(Interval(in_lo, in_hi));
    }
  }
  return rasterize(pieces);
}

CellBracket AffineGrid::inverse(const CellSet& s) const {
  // (u, b)^{-1} = (-u, -e^{-u} b); column n maps to column -n-1.
  ColumnIntervals pieces;
  for (const auto& [n, runs] : s.columns) {
    const Interval e = hull(exp(-coord(n)), exp(-coord(n + 1)));
    for (const auto& r : runs) {
      Interval lo = coord(r.lo), hi = coord(r.hi);
      // Image of [lo, hi] under b -> -e b for e in E: outer hull and sure core.
      Interval a = -(e * hi);  // candidates for the lower end
      Interval b = -(e * lo);  // candidates for the upper end
      pieces.outer[-n - 1].push_back(Interval(a.lo, b.hi));
      if (a.hi < b.lo) pieces.inner[-n - 1].push_back(Interval(a.hi, b.lo));
    }
  }
  return rasterize(pieces);
}

CellSet AffineGrid::unite(const CellSet& a, const CellSet& b) const {
  CellSet out = a;
  for (const auto& [n, runs] : b.columns) {
    auto& dst = out.columns[n];
    dst.insert(dst.end(), runs.begin(), runs.end());
    dst = normalize_runs(std::move(dst));
  }
  return out;
}

CellSet AffineGrid::intersect(const CellSet& a, const CellSet& b) const {
  CellSet out;
  for (const auto& [n, runs] : a.columns) {
    auto it = b.columns.find(n);
    if (it == b.columns.end()) continue;
    auto r = intersect_runs(runs, it->second);
    if (!r.empty()) out.columns[n] = std::move(r);
  }
  return out;
}

CellSet AffineGrid::subtract(const CellSet& a, const CellSet& b) const {
  CellSet out;
  for (const auto& [n, runs] : a.columns) {
    auto it = b.columns.find(n);
    if (it == b.columns.end()) {
      out.columns[n] = runs;
      continue;
    }
    auto r = subtract_runs(runs, it->second);
    if (!r.empty()) out.columns[n] = std::move(r);
  }
  return out;
}

AffineGrid::DeltaExtrema AffineGrid::delta_extrema(const CellSet& s) const {
  if (s.empty()) throw ModelError("delta extrema of an empty set");
  const auto& [n_first, runs_first] = *s.columns.begin();
  const auto& [n_last, runs_last] = *s.columns.rbegin();
  DeltaExtrema d;
  d.sup = exp(-coord(n_first));
  d.inf = exp(-coord(n_last + 1));
  d.argmax = {n_first, runs_first.front().lo};
  d.argmin = {n_last, runs_last.front().lo};
  return d;
}

}  // namespace lcg

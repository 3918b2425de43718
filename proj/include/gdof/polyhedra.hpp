#pragma once

// Exact rational polyhedra: systems A x <= b (with optional x_j >= 0),
// simplex LP, Fourier-Motzkin elimination, redundancy removal, vertex
// enumeration and set comparisons.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gdof/errors.hpp"
#include "gdof/rational.hpp"

namespace gdof {

struct LinRow {
  std::vector<Rational> c;
  Rational b;

  friend bool operator==(const LinRow&, const LinRow&) = default;
};

/// Rows encode c . x <= b. Variables flagged in `nonneg` additionally satisfy
/// x_j >= 0; these bounds are kept implicit and never appear as rows.
struct LinSystem {
  std::vector<std::string> vars;
  std::vector<LinRow> rows;
  std::vector<bool> nonneg;

  LinSystem() = default;
  explicit LinSystem(std::vector<std::string> names, bool all_nonneg = true)
      : vars(std::move(names)), nonneg(vars.size(), all_nonneg) {}

  int dim() const { return static_cast<int>(vars.size()); }

  int index_of(const std::string& name) const {
    for (int j = 0; j < dim(); ++j)
      if (vars[j] == name) return j;
    return -1;
  }

  void add_row(std::vector<Rational> c, Rational b) {
    if (static_cast<int>(c.size()) != dim())
      throw DimensionError("row length does not match the variable count");
    rows.push_back({std::move(c), std::move(b)});
  }

  bool contains(const std::vector<Rational>& x) const {
    if (static_cast<int>(x.size()) != dim()) throw DimensionError("point has wrong dimension");
    for (int j = 0; j < dim(); ++j)
      if (nonneg[j] && x[j] < 0) return false;
    for (const auto& r : rows)
      if (dot(r.c, x) > r.b) return false;
    return true;
  }

  friend bool operator==(const LinSystem&, const LinSystem&) = default;
};

enum class LpStatus { OPTIMAL, UNBOUNDED, INFEASIBLE };

struct LpResult {
  LpStatus status = LpStatus::INFEASIBLE;
  Rational value;
  std::vector<Rational> argmax;
};

namespace detail {

/// Condensed simplex tableau for  max c.y  s.t.  T y <= b, y >= 0.
/// Row r reads  basic_r = b_r - sum_j T[r][j] * nonbasic_j ; the objective is
/// z = z0 + sum_j c_j * nonbasic_j. Labels 0..n-1 are structural variables,
/// n..n+m-1 slacks, n+m the phase-one auxiliary. Bland's rule throughout.
class Tableau {
 public:
  Tableau(std::vector<std::vector<Rational>> T, std::vector<Rational> b, std::vector<Rational> c)
      : T_(std::move(T)), b_(std::move(b)), c_(std::move(c)) {
    m_ = static_cast<int>(b_.size());
    n_ = static_cast<int>(c_.size());
    nonbasic_.resize(n_);
    basic_.resize(m_);
    for (int j = 0; j < n_; ++j) nonbasic_[j] = j;
    for (int r = 0; r < m_; ++r) basic_[r] = n_ + r;
  }

  LpResult solve() {
    int worst = -1;
    for (int r = 0; r < m_; ++r)
      if (b_[r] < 0 && (worst < 0 || b_[r] < b_[worst])) worst = r;
    if (worst >= 0 && !phase_one(worst)) return {LpStatus::INFEASIBLE, {}, {}};
    if (!optimize()) return {LpStatus::UNBOUNDED, {}, {}};
    LpResult res;
    res.status = LpStatus::OPTIMAL;
    res.value = z_;
    res.argmax.assign(n_, Rational(0));
    for (int r = 0; r < m_; ++r)
      if (basic_[r] < n_) res.argmax[basic_[r]] = b_[r];
    return res;
  }

 private:
  void pivot(int r, int e) {
    const Rational p = T_[r][e];
    const int cols = static_cast<int>(c_.size());
    for (int j = 0; j < cols; ++j)
      if (j != e) T_[r][j] /= p;
    b_[r] /= p;
    T_[r][e] = 1 / p;
    for (int i = 0; i < m_; ++i) {
      if (i == r || sgn(T_[i][e]) == 0) continue;
      const Rational f = T_[i][e];
      for (int j = 0; j < cols; ++j)
        if (j != e && sgn(T_[r][j]) != 0) T_[i][j] -= f * T_[r][j];
      b_[i] -= f * b_[r];
      T_[i][e] = -f / p;
    }
    if (sgn(c_[e]) != 0) {
      const Rational f = c_[e];
      for (int j = 0; j < cols; ++j)
        if (j != e && sgn(T_[r][j]) != 0) c_[j] -= f * T_[r][j];
      z_ += f * b_[r];
      c_[e] = -f / p;
    }
    std::swap(basic_[r], nonbasic_[e]);
  }

  /// Returns false when the objective is unbounded.
  bool optimize() {
    const int cols = static_cast<int>(c_.size());
    while (true) {
      int e = -1;
      for (int j = 0; j < cols; ++j)
        if (sgn(c_[j]) > 0 && (e < 0 || nonbasic_[j] < nonbasic_[e])) e = j;
      if (e < 0) return true;
      int r = -1;
      Rational best;
      for (int i = 0; i < m_; ++i) {
        if (sgn(T_[i][e]) <= 0) continue;
        Rational ratio = b_[i] / T_[i][e];
        if (r < 0 || ratio < best || (ratio == best && basic_[i] < basic_[r])) {
          r = i;
          best = ratio;
        }
      }
      if (r < 0) return false;
      pivot(r, e);
    }
  }

  bool phase_one(int worst) {
    const int aux = n_ + m_;
    std::vector<Rational> original = c_;
    for (int r = 0; r < m_; ++r) T_[r].push_back(Rational(-1));
    nonbasic_.push_back(aux);
    c_.assign(n_ + 1, Rational(0));
    c_[n_] = -1;
    z_ = 0;
    pivot(worst, n_);
    optimize();
    if (sgn(z_) < 0) return false;

    // Drive the auxiliary out of the basis if it is still there (at level 0).
    for (int r = 0; r < m_; ++r) {
      if (basic_[r] != aux) continue;
      int e = -1;
      for (int j = 0; j < static_cast<int>(nonbasic_.size()); ++j)
        if (sgn(T_[r][j]) != 0 && (e < 0 || nonbasic_[j] < nonbasic_[e])) e = j;
      if (e >= 0) {
        pivot(r, e);
      } else {
        // The row reads aux = 0 identically and constrains nothing.
        T_.erase(T_.begin() + r);
        b_.erase(b_.begin() + r);
        basic_.erase(basic_.begin() + r);
        --m_;
      }
      break;
    }
    auto it = std::find(nonbasic_.begin(), nonbasic_.end(), aux);
    if (it != nonbasic_.end()) {
      const long col = it - nonbasic_.begin();
      for (int r = 0; r < m_; ++r) T_[r].erase(T_[r].begin() + col);
      nonbasic_.erase(it);
    }

    // Re-express the original objective over the current nonbasic set.
    const int cols = static_cast<int>(nonbasic_.size());
    c_.assign(cols, Rational(0));
    z_ = 0;
    for (int j = 0; j < cols; ++j)
      if (nonbasic_[j] < n_) c_[j] += original[nonbasic_[j]];
    for (int r = 0; r < m_; ++r) {
      if (basic_[r] >= n_) continue;
      const Rational& w = original[basic_[r]];
      if (sgn(w) == 0) continue;
      z_ += w * b_[r];
      for (int j = 0; j < cols; ++j) c_[j] -= w * T_[r][j];
    }
    return true;
  }

  std::vector<std::vector<Rational>> T_;
  std::vector<Rational> b_;
  std::vector<Rational> c_;
  Rational z_ = 0;
  int m_ = 0, n_ = 0;
  std::vector<int> basic_, nonbasic_;
};

}  // namespace detail

/// Maximizes objective . x over the system. Free variables are split into a
/// difference of two nonnegative parts.
inline LpResult lp_max(const LinSystem& sys, const std::vector<Rational>& objective) {
  const int n = sys.dim();
  if (static_cast<int>(objective.size()) != n) throw DimensionError("objective has wrong length");
  // Column layout: one column per variable, plus a negative-part column per free variable.
  std::vector<int> neg_col(n, -1);
  int cols = n;
  for (int j = 0; j < n; ++j)
    if (!sys.nonneg[j]) neg_col[j] = cols++;

  std::vector<std::vector<Rational>> T;
  std::vector<Rational> b;
  T.reserve(sys.rows.size());
  for (const auto& row : sys.rows) {
    std::vector<Rational> t(cols);
    for (int j = 0; j < n; ++j) {
      t[j] = row.c[j];
      if (neg_col[j] >= 0) t[neg_col[j]] = -row.c[j];
    }
    T.push_back(std::move(t));
    b.push_back(row.b);
  }
  std::vector<Rational> c(cols);
  for (int j = 0; j < n; ++j) {
    c[j] = objective[j];
    if (neg_col[j] >= 0) c[neg_col[j]] = -objective[j];
  }
  LpResult res = detail::Tableau(std::move(T), std::move(b), std::move(c)).solve();
  if (res.status == LpStatus::OPTIMAL) {
    std::vector<Rational> x(n);
    for (int j = 0; j < n; ++j) {
      x[j] = res.argmax[j];
      if (neg_col[j] >= 0) x[j] -= res.argmax[neg_col[j]];
    }
    res.argmax = std::move(x);
  }
  return res;
}

inline bool is_feasible(const LinSystem& sys) {
  return lp_max(sys, std::vector<Rational>(sys.dim())).status != LpStatus::INFEASIBLE;
}

/// Scales a row by a positive factor so that its first nonzero coefficient
/// has absolute value 1.
inline LinRow normalize_row(LinRow row) {
  for (const auto& v : row.c) {
    if (sgn(v) == 0) continue;
    Rational s = abs(v);
    for (auto& w : row.c) w /= s;
    row.b /= s;
    break;
  }
  return row;
}

/// Merges rows whose normalized left-hand sides coincide, keeping the
/// smallest right-hand side. Order of first appearance is preserved.
inline LinSystem merge_parallel_rows(const LinSystem& sys) {
  LinSystem out = sys;
  out.rows.clear();
  std::map<std::vector<Rational>, size_t> seen;
  for (const auto& raw : sys.rows) {
    LinRow row = normalize_row(raw);
    auto [it, inserted] = seen.emplace(row.c, out.rows.size());
    if (inserted) {
      out.rows.push_back(std::move(row));
    } else if (row.b < out.rows[it->second].b) {
      out.rows[it->second].b = row.b;
    }
  }
  return out;
}

inline bool is_zero_row(const LinRow& r) {
  return std::all_of(r.c.begin(), r.c.end(), [](const Rational& v) { return sgn(v) == 0; });
}

/// Projects out variable `var`: pairs every row with a positive coefficient
/// on it against every row with a negative one (the bound x >= 0 counts as
/// such a row when the variable is nonnegative) and keeps rows free of it.
inline LinSystem fm_eliminate(const LinSystem& sys, const std::string& var) {
  const int v = sys.index_of(var);
  if (v < 0) throw PreconditionError("fm_eliminate: unknown variable '" + var + "'");
  std::vector<LinRow> pos, neg, rest;
  for (const auto& r : sys.rows) {
    int s = sgn(r.c[v]);
    (s > 0 ? pos : s < 0 ? neg : rest).push_back(r);
  }
  if (sys.nonneg[v]) {
    LinRow bound{std::vector<Rational>(sys.dim()), Rational(0)};
    bound.c[v] = -1;
    neg.push_back(std::move(bound));
  }

  LinSystem out;
  for (int j = 0; j < sys.dim(); ++j)
    if (j != v) {
      out.vars.push_back(sys.vars[j]);
      out.nonneg.push_back(sys.nonneg[j]);
    }
  auto drop = [&](const std::vector<Rational>& c) {
    std::vector<Rational> d;
    d.reserve(c.size() - 1);
    for (int j = 0; j < sys.dim(); ++j)
      if (j != v) d.push_back(c[j]);
    return d;
  };

  std::vector<LinRow> rows;
  for (const auto& r : rest) rows.push_back({drop(r.c), r.b});
  if (!pos.empty())
    for (const auto& p : pos) {
      const Rational cp = p.c[v];
      for (const auto& q : neg) {
        const Rational cq = -q.c[v];
        LinRow comb{std::vector<Rational>(sys.dim()), p.b / cp + q.b / cq};
        for (int j = 0; j < sys.dim(); ++j) comb.c[j] = p.c[j] / cp + q.c[j] / cq;
        rows.push_back({drop(comb.c), comb.b});
      }
    }

  // Drop tautologies 0 <= b (b >= 0); keep contradictions so infeasibility survives.
  std::vector<LinRow> kept;
  for (auto& r : rows) {
    if (is_zero_row(r) && r.b >= 0) continue;
    kept.push_back(std::move(r));
  }
  out.rows = std::move(kept);
  out = merge_parallel_rows(out);
  return out;
}

/// Removes implied rows one at a time: a row is dropped when maximizing its
/// left-hand side over the remaining rows stays within its right-hand side.
inline LinSystem remove_redundant(const LinSystem& sys) {
  LinSystem cur = merge_parallel_rows(sys);
  cur.rows.erase(std::remove_if(cur.rows.begin(), cur.rows.end(),
                                [](const LinRow& r) { return is_zero_row(r) && r.b >= 0; }),
                 cur.rows.end());
  size_t i = 0;
  while (i < cur.rows.size()) {
    LinSystem others = cur;
    others.rows.erase(others.rows.begin() + static_cast<long>(i));
    LpResult res = lp_max(others, cur.rows[i].c);
    bool implied = res.status == LpStatus::INFEASIBLE ||
                   (res.status == LpStatus::OPTIMAL && res.value <= cur.rows[i].b);
    if (implied) {
      cur.rows.erase(cur.rows.begin() + static_cast<long>(i));
    } else {
      ++i;
    }
  }
  return cur;
}

struct EqualsResult {
  bool equal = true;
  /// A point in one system but not the other.
  std::optional<std::vector<Rational>> witness;
  /// 1: witness lies in the first system only; 2: in the second only.
  int witness_in = 0;
};

namespace detail {

/// Finds a point of `a` violating `b`, if any.
inline std::optional<std::vector<Rational>> escape_point(const LinSystem& a, const LinSystem& b) {
  std::vector<LinRow> checks = b.rows;
  for (int j = 0; j < b.dim(); ++j)
    if (b.nonneg[j] && !a.nonneg[j]) {
      LinRow r{std::vector<Rational>(b.dim()), Rational(0)};
      r.c[j] = -1;
      checks.push_back(std::move(r));
    }
  for (const auto& row : checks) {
    LpResult res = lp_max(a, row.c);
    if (res.status == LpStatus::INFEASIBLE) return std::nullopt;
    if (res.status == LpStatus::OPTIMAL) {
      if (res.value > row.b) return res.argmax;
      continue;
    }
    LinSystem capped = a;
    capped.add_row(row.c, row.b + 1);
    return lp_max(capped, row.c).argmax;
  }
  return std::nullopt;
}

}  // namespace detail

/// Set equality by mutual inclusion.
inline EqualsResult equals(const LinSystem& s1, const LinSystem& s2) {
  if (s1.vars != s2.vars) throw DimensionError("equals: systems use different variables");
  if (auto w = detail::escape_point(s1, s2)) return {false, std::move(w), 1};
  if (auto w = detail::escape_point(s2, s1)) return {false, std::move(w), 2};
  return {};
}

inline bool includes(const LinSystem& outer, const LinSystem& inner) {
  return !detail::escape_point(inner, outer).has_value();
}

/// Decides point in s1 + s2 with one feasibility LP over p1 (p2 = point - p1).
inline bool minkowski_sum_membership(const LinSystem& s1, const LinSystem& s2,
                                     const std::vector<Rational>& point) {
  if (s1.vars != s2.vars) throw DimensionError("minkowski: systems use different variables");
  const int n = s1.dim();
  if (static_cast<int>(point.size()) != n) throw DimensionError("point has wrong dimension");
  LinSystem lp;
  lp.vars = s1.vars;
  lp.nonneg = s1.nonneg;
  for (const auto& r : s1.rows) lp.add_row(r.c, r.b);
  for (const auto& r : s2.rows) {
    std::vector<Rational> c(n);
    for (int j = 0; j < n; ++j) c[j] = -r.c[j];
    lp.add_row(std::move(c), r.b - dot(r.c, point));
  }
  for (int j = 0; j < n; ++j)
    if (s2.nonneg[j]) {
      std::vector<Rational> c(n);
      c[j] = 1;
      lp.add_row(std::move(c), point[j]);
    }
  return is_feasible(lp);
}

/// Default dimension limit for vertex enumeration; GDOF_MAX_DIM overrides it.
inline int vertex_dim_limit() {
  if (const char* env = std::getenv("GDOF_MAX_DIM")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return v;
    } catch (...) {
    }
  }
  return 8;
}

namespace detail {

/// Solves the square system M x = rhs exactly; nullopt when singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> M,
                                                         std::vector<Rational> rhs) {
  const int n = static_cast<int>(rhs.size());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (sgn(M[r][col]) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(M[piv], M[col]);
    std::swap(rhs[piv], rhs[col]);
    for (int r = 0; r < n; ++r) {
      if (r == col || sgn(M[r][col]) == 0) continue;
      Rational f = M[r][col] / M[col][col];
      for (int j = col; j < n; ++j) M[r][j] -= f * M[col][j];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<Rational> x(n);
  for (int j = 0; j < n; ++j) x[j] = rhs[j] / M[j][j];
  return x;
}

}  // namespace detail

namespace detail {

using Bits = std::vector<std::uint64_t>;

inline bool bit(const Bits& b, int k) { return b[k >> 6] >> (k & 63) & 1; }
inline void set_bit(Bits& b, int k) { b[k >> 6] |= std::uint64_t(1) << (k & 63); }

inline Bits bits_and(const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (size_t w = 0; w < a.size(); ++w) out[w] = a[w] & b[w];
  return out;
}

inline bool bits_subset(const Bits& a, const Bits& b) {
  for (size_t w = 0; w < a.size(); ++w)
    if (a[w] & ~b[w]) return false;
  return true;
}

inline int bits_count(const Bits& a) {
  int c = 0;
  for (auto w : a) c += __builtin_popcountll(w);
  return c;
}

inline void scale_ray(std::vector<Rational>& y) {
  for (const auto& x : y)
    if (sgn(x) != 0) {
      Rational f = abs(x);
      for (auto& z : y) z /= f;
      return;
    }
}

}  // namespace detail

/// Extreme points, sorted lexicographically. Double description on the
/// homogenized cone {(x, t) : A x - b t <= 0, t >= 0}; the vertices are the
/// extreme rays with t > 0.
inline std::vector<std::vector<Rational>> vertices(const LinSystem& sys) {
  const int n = sys.dim();
  if (n > vertex_dim_limit())
    throw CapabilityError("vertex enumeration limited to dimension " +
                          std::to_string(vertex_dim_limit()) + " (set GDOF_MAX_DIM to raise it)");
  if (!is_feasible(sys)) return {};
  for (int j = 0; j < n; ++j)
    for (int s : {1, -1}) {
      std::vector<Rational> obj(n);
      obj[j] = s;
      if (lp_max(sys, obj).status == LpStatus::UNBOUNDED)
        throw PreconditionError("vertices: system is unbounded");
    }
  if (n == 0) return {std::vector<Rational>{}};

  const LinSystem irr = remove_redundant(sys);
  const int d = n + 1;
  std::vector<std::vector<Rational>> G;
  {
    std::vector<Rational> t(d);
    t[n] = -1;
    G.push_back(std::move(t));
  }
  for (const auto& r : irr.rows) {
    std::vector<Rational> g(r.c);
    g.push_back(-r.b);
    G.push_back(std::move(g));
  }
  for (int j = 0; j < n; ++j)
    if (irr.nonneg[j]) {
      std::vector<Rational> g(d);
      g[j] = -1;
      G.push_back(std::move(g));
    }
  const int m = static_cast<int>(G.size());
  const size_t words = static_cast<size_t>((m + 63) / 64);

  // Greedy choice of d independent rows for the initial simplicial cone.
  std::vector<int> init;
  std::vector<std::pair<int, std::vector<Rational>>> basis;
  for (int k = 0; k < m && static_cast<int>(init.size()) < d; ++k) {
    std::vector<Rational> v = G[k];
    for (const auto& [col, row] : basis) {
      if (sgn(v[col]) == 0) continue;
      Rational f = v[col] / row[col];
      for (int j = 0; j < d; ++j) v[j] -= f * row[j];
    }
    int col = -1;
    for (int j = 0; j < d; ++j)
      if (sgn(v[j]) != 0) {
        col = j;
        break;
      }
    if (col < 0) continue;
    init.push_back(k);
    basis.emplace_back(col, std::move(v));
  }
  if (static_cast<int>(init.size()) < d) throw PreconditionError("vertices: system is unbounded");

  struct Ray {
    std::vector<Rational> y;
    detail::Bits tight;
  };
  std::vector<Ray> rays;
  std::vector<bool> done(m, false);
  std::vector<std::vector<Rational>> B;
  for (int k : init) {
    B.push_back(G[k]);
    done[k] = true;
  }
  for (int c = 0; c < d; ++c) {
    std::vector<Rational> rhs(d);
    rhs[c] = -1;
    Ray r{*detail::solve_square(B, rhs), detail::Bits(words)};
    for (int c2 = 0; c2 < d; ++c2)
      if (c2 != c) detail::set_bit(r.tight, init[c2]);
    detail::scale_ray(r.y);
    rays.push_back(std::move(r));
  }

  for (int k = 0; k < m; ++k) {
    if (done[k]) continue;
    std::vector<Rational> val(rays.size());
    std::vector<int> pos, neg;
    for (size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(G[k], rays[i].y);
      int s = sgn(val[i]);
      if (s == 0) detail::set_bit(rays[i].tight, k);
      if (s > 0) pos.push_back(static_cast<int>(i));
      if (s < 0) neg.push_back(static_cast<int>(i));
    }
    done[k] = true;
    if (pos.empty()) continue;
    std::vector<Ray> next;
    for (size_t i = 0; i < rays.size(); ++i)
      if (sgn(val[i]) <= 0) next.push_back(rays[i]);
    for (int p : pos)
      for (int q : neg) {
        detail::Bits common = detail::bits_and(rays[p].tight, rays[q].tight);
        if (detail::bits_count(common) < d - 2) continue;
        bool adjacent = true;
        for (size_t r = 0; r < rays.size() && adjacent; ++r)
          if (static_cast<int>(r) != p && static_cast<int>(r) != q &&
              detail::bits_subset(common, rays[r].tight))
            adjacent = false;
        if (!adjacent) continue;
        Ray nr{std::vector<Rational>(d), common};
        for (int j = 0; j < d; ++j) nr.y[j] = val[p] * rays[q].y[j] - val[q] * rays[p].y[j];
        detail::set_bit(nr.tight, k);
        detail::scale_ray(nr.y);
        next.push_back(std::move(nr));
      }
    rays = std::move(next);
  }

  std::vector<std::vector<Rational>> out;
  for (const auto& r : rays) {
    if (sgn(r.y[n]) <= 0) continue;
    std::vector<Rational> x(r.y.begin(), r.y.begin() + n);
    for (auto& v : x) v /= r.y[n];
    out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace gdof

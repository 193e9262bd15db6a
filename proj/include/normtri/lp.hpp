#ifndef NORMTRI_LP_HPP
#define NORMTRI_LP_HPP

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace normtri {

using Rational = boost::multiprecision::cpp_rational;

enum class LpStatus { Optimal, Infeasible, Unbounded };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

/// Result of max c.x subject to A x = b, x >= 0. For Optimal, `dual` is y
/// with A^T y >= c and b.y = value. For Infeasible, `dual` is a Farkas
/// vector: A^T y >= 0 and b.y < 0.
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value = 0;
  std::vector<Rational> x;
  std::vector<Rational> dual;
};

namespace lp_detail {

/// Dense tableau over [x | artificials | rhs], one artificial per row.
class Tableau {
 public:
  Tableau(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b)
      : m_(a.size()), n_(a.empty() ? 0 : a.front().size()), t_(m_, std::vector<Rational>(n_ + m_ + 1)), basis_(m_) {
    for (std::size_t i = 0; i < m_; ++i) {
      if (a[i].size() != n_) throw Error(ErrorCode::InvalidParameter, "ragged constraint matrix");
      Rational s = b[i] < 0 ? -1 : 1;
      for (std::size_t j = 0; j < n_; ++j) t_[i][j] = s * a[i][j];
      t_[i][n_ + i] = 1;
      t_[i][n_ + m_] = s * b[i];
      sign_.push_back(s);
      basis_[i] = n_ + i;
    }
  }

  /// Maximises cost over columns < `allowed` by Bland's rule. Returns false
  /// if unbounded. `red` receives the final reduced costs of every column.
  bool maximise(const std::vector<Rational>& cost, std::size_t allowed, std::vector<Rational>& red) {
    while (true) {
      red.assign(n_ + m_, 0);
      for (std::size_t j = 0; j < n_ + m_; ++j) {
        Rational r = -cost[j];
        for (std::size_t i = 0; i < m_; ++i)
          if (t_[i][j] != 0) r += cost[basis_[i]] * t_[i][j];
        red[j] = r;
      }
      std::size_t enter = n_ + m_;
      for (std::size_t j = 0; j < allowed; ++j)
        if (red[j] < 0) {
          enter = j;
          break;
        }
      if (enter == n_ + m_) return true;
      std::size_t leave = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (t_[i][enter] <= 0) continue;
        Rational ratio = t_[i][n_ + m_] / t_[i][enter];
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  /// Moves artificials out of the basis where a real column can replace them.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j)
        if (t_[i][j] != 0) {
          pivot(i, j);
          break;
        }
    }
  }

  Rational rhs(std::size_t i) const { return t_[i][n_ + m_]; }
  std::size_t basic(std::size_t i) const { return basis_[i]; }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  const Rational& row_sign(std::size_t i) const { return sign_[i]; }

 private:
  void pivot(std::size_t r, std::size_t c) {
    Rational p = t_[r][c];
    for (auto& x : t_[r]) x /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || t_[i][c] == 0) continue;
      Rational f = t_[i][c];
      for (std::size_t j = 0; j <= n_ + m_; ++j)
        if (t_[r][j] != 0) t_[i][j] -= f * t_[r][j];
    }
    basis_[r] = c;
  }

  std::size_t m_, n_;
  std::vector<std::vector<Rational>> t_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> sign_;
};

}  // namespace lp_detail

/// Exact two-phase simplex.
inline LpResult lp_maximise(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                            const std::vector<Rational>& c) {
  lp_detail::Tableau tab(a, b);
  const std::size_t m = tab.rows(), n = tab.cols();
  if (c.size() != n) throw Error(ErrorCode::InvalidParameter, "objective length mismatch");
  LpResult res;
  // Row prices pi_i are the reduced costs of the artificial columns minus
  // their cost; undoing the row sign flips gives y.
  auto duals = [&](const std::vector<Rational>& red, const Rational& art_cost) {
    std::vector<Rational> y(m);
    for (std::size_t i = 0; i < m; ++i) y[i] = (red[n + i] + art_cost) * tab.row_sign(i);
    return y;
  };
  std::vector<Rational> phase1(n + m, 0), red;
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = -1;
  tab.maximise(phase1, n, red);
  Rational infeas = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (tab.basic(i) >= n) infeas += tab.rhs(i);
  if (infeas > 0) {
    res.status = LpStatus::Infeasible;
    res.dual = duals(red, -1);
    return res;
  }
  tab.drive_out_artificials();
  std::vector<Rational> cost(n + m, 0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = c[j];
  if (!tab.maximise(cost, n, red)) {
    res.status = LpStatus::Unbounded;
    return res;
  }
  res.status = LpStatus::Optimal;
  res.x.assign(n, 0);
  for (std::size_t i = 0; i < m; ++i)
    if (tab.basic(i) < n) res.x[tab.basic(i)] = tab.rhs(i);
  for (std::size_t j = 0; j < n; ++j) res.value += c[j] * res.x[j];
  res.dual = duals(red, 0);
  return res;
}

}  // namespace normtri

#endif  // NORMTRI_LP_HPP

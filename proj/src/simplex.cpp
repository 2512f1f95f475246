#include "sdnadmit/simplex.hpp"

#include <algorithm>
#include <cmath>

#include "sdnadmit/errors.hpp"

namespace sdnadmit {

namespace {
constexpr double kReducedCostEps = 1e-9;
constexpr double kPivotEps = 1e-9;
}  // namespace

LpResult solve_packing_lp(const std::vector<double>& rhs, const std::vector<LpColumn>& columns,
                          std::size_t iteration_cap) {
  const int m = static_cast<int>(rhs.size());
  const int n = static_cast<int>(columns.size());
  const int total = n + m;  // structural columns then slacks

  for (double b : rhs)
    if (b < 0.0) throw Error(Errc::solver_failure, "packing LP needs a nonnegative rhs");

  // full tableau, row-major: m rows of `total` coefficients plus rhs
  std::vector<double> tab(static_cast<std::size_t>(m) * static_cast<std::size_t>(total), 0.0);
  auto at = [&](int r, int c) -> double& {
    return tab[static_cast<std::size_t>(r) * static_cast<std::size_t>(total) +
               static_cast<std::size_t>(c)];
  };
  std::vector<double> row_rhs(rhs);
  std::vector<double> obj_row(static_cast<std::size_t>(total), 0.0);
  std::vector<int> basis(static_cast<std::size_t>(m));

  for (int j = 0; j < n; ++j) {
    for (const auto& [r, coef] : columns[static_cast<std::size_t>(j)].entries) {
      if (r < 0 || r >= m) throw Error(Errc::solver_failure, "LP column entry row out of range");
      at(r, j) += coef;
    }
    obj_row[static_cast<std::size_t>(j)] = columns[static_cast<std::size_t>(j)].objective;
  }
  for (int i = 0; i < m; ++i) {
    at(i, n + i) = 1.0;
    basis[static_cast<std::size_t>(i)] = n + i;
  }

  LpResult result;
  double best_objective = 0.0;
  std::size_t stalled = 0;
  bool use_bland = false;

  for (std::size_t iter = 0; iter < iteration_cap; ++iter) {
    // entering column
    int enter = -1;
    if (use_bland) {
      for (int j = 0; j < total; ++j)
        if (obj_row[static_cast<std::size_t>(j)] > kReducedCostEps) {
          enter = j;
          break;
        }
    } else {
      double best = kReducedCostEps;
      for (int j = 0; j < total; ++j)
        if (obj_row[static_cast<std::size_t>(j)] > best) {
          best = obj_row[static_cast<std::size_t>(j)];
          enter = j;
        }
    }
    if (enter < 0) break;  // optimal

    // ratio test; smallest ratio, ties to the smallest basis column
    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < m; ++i) {
      const double a = at(i, enter);
      if (a <= kPivotEps) continue;
      const double ratio = row_rhs[static_cast<std::size_t>(i)] / a;
      if (leave < 0 || ratio < best_ratio - 1e-12 ||
          (std::abs(ratio - best_ratio) <= 1e-12 &&
           basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) {
      result.status = LpResult::Status::unbounded;
      return result;
    }

    // pivot on (leave, enter)
    const double pivot = at(leave, enter);
    for (int j = 0; j < total; ++j) at(leave, j) /= pivot;
    row_rhs[static_cast<std::size_t>(leave)] /= pivot;
    for (int i = 0; i < m; ++i) {
      if (i == leave) continue;
      const double f = at(i, enter);
      if (f == 0.0) continue;
      for (int j = 0; j < total; ++j) at(i, j) -= f * at(leave, j);
      row_rhs[static_cast<std::size_t>(i)] -= f * row_rhs[static_cast<std::size_t>(leave)];
      if (row_rhs[static_cast<std::size_t>(i)] < 0.0 && row_rhs[static_cast<std::size_t>(i)] > -1e-11)
        row_rhs[static_cast<std::size_t>(i)] = 0.0;
    }
    const double objf = obj_row[static_cast<std::size_t>(enter)];
    for (int j = 0; j < total; ++j) obj_row[static_cast<std::size_t>(j)] -= objf * at(leave, j);
    basis[static_cast<std::size_t>(leave)] = enter;

    // stall detection drives the Bland switch
    double objective = 0.0;
    for (int i = 0; i < m; ++i) {
      const int b = basis[static_cast<std::size_t>(i)];
      if (b < n)
        objective += columns[static_cast<std::size_t>(b)].objective *
                     row_rhs[static_cast<std::size_t>(i)];
    }
    if (objective > best_objective + 1e-12) {
      best_objective = objective;
      stalled = 0;
    } else if (++stalled > static_cast<std::size_t>(2 * (m + n) + 16)) {
      use_bland = true;
    }
    if (iter + 1 == iteration_cap) {
      result.status = LpResult::Status::iteration_limit;
      return result;
    }
  }

  result.status = LpResult::Status::optimal;
  result.x.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < m; ++i) {
    const int b = basis[static_cast<std::size_t>(i)];
    if (b < n) result.x[static_cast<std::size_t>(b)] = row_rhs[static_cast<std::size_t>(i)];
  }
  result.objective = 0.0;
  for (int j = 0; j < n; ++j)
    result.objective += columns[static_cast<std::size_t>(j)].objective *
                        result.x[static_cast<std::size_t>(j)];
  // duals read off the slack columns of the objective row
  result.duals.assign(static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < m; ++i)
    result.duals[static_cast<std::size_t>(i)] = std::max(0.0, -obj_row[static_cast<std::size_t>(n + i)]);
  return result;
}

}  // namespace sdnadmit

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace sdnadmit {

/*
  Small dense simplex for packing LPs:

      maximize c.x   subject to   A x <= b,  x >= 0,  b >= 0.

  The all-slack basis is feasible, so no phase one. Dantzig pricing with a
  switch to Bland's rule when progress stalls. Sized for a few hundred rows
  and columns; everything here is desk scale.
*/
struct LpColumn {
  double objective = 0.0;
  std::vector<std::pair<int, double>> entries;  // (row, coefficient)
};

struct LpResult {
  enum class Status { optimal, unbounded, iteration_limit };
  Status status = Status::optimal;
  double objective = 0.0;
  std::vector<double> x;      // one per column
  std::vector<double> duals;  // one per row, >= 0 at optimality
};

LpResult solve_packing_lp(const std::vector<double>& rhs, const std::vector<LpColumn>& columns,
                          std::size_t iteration_cap = 100000);

}  // namespace sdnadmit

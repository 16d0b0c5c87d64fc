#include "admctl/simplex.hpp"

#include <stdexcept>

namespace admctl {

namespace {

// Dense tableau with an extra objective row; basis[i] is the variable basic
// in row i. Bland's rule on both the entering and leaving choice prevents
// cycling, which matters because these covering LPs are highly degenerate.
class Tableau {
 public:
  Tableau(int rows, int cols) : rows_(rows), cols_(cols), cells_((rows + 1) * (cols + 1)) {}

  Rat& at(int r, int c) { return cells_[r * (cols_ + 1) + c]; }
  Rat& rhs(int r) { return at(r, cols_); }
  Rat& obj(int c) { return at(rows_, c); }
  Rat& obj_rhs() { return at(rows_, cols_); }

  void pivot(int pr, int pc) {
    Rat inv = 1 / at(pr, pc);
    for (int c = 0; c <= cols_; ++c) at(pr, c) *= inv;
    for (int r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      Rat factor = at(r, pc);
      if (factor == 0) continue;
      for (int c = 0; c <= cols_; ++c) at(r, c) -= factor * at(pr, c);
    }
    basis[pr] = pc;
  }

  // Runs simplex iterations until no eligible entering column remains.
  void optimize(const std::vector<char>& banned) {
    for (;;) {
      int enter = -1;
      for (int c = 0; c < cols_; ++c) {
        if (banned[c]) continue;
        if (obj(c) < 0) {
          enter = c;
          break;
        }
      }
      if (enter < 0) return;
      int leave = -1;
      Rat best_ratio;
      for (int r = 0; r < rows_; ++r) {
        if (at(r, enter) <= 0) continue;
        Rat ratio = rhs(r) / at(r, enter);
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis[r] < basis[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave < 0) throw std::logic_error("covering LP unbounded");
      pivot(leave, enter);
    }
  }

  int rows_, cols_;
  std::vector<int> basis;

 private:
  std::vector<Rat> cells_;
};

}  // namespace

LpSolution solve_covering_lp(const CoveringLp& lp) {
  const int n = static_cast<int>(lp.objective.size());
  const int n_cov = static_cast<int>(lp.rows.size());
  const int rows = n_cov + n;  // covering rows + upper bounds
  // columns: structural | surplus (covering) | slack (upper) | artificial (covering)
  const int col_surplus = n;
  const int col_slack = n + n_cov;
  const int col_art = n + n_cov + n;
  const int cols = col_art + n_cov;

  Tableau t(rows, cols);
  t.basis.assign(rows, -1);
  std::vector<char> banned(cols, 0);

  for (int i = 0; i < n_cov; ++i) {
    if (lp.rows[i].rhs < 0) throw std::invalid_argument("covering row with negative rhs");
    for (const auto& [var, coeff] : lp.rows[i].terms) t.at(i, var) += coeff;
    t.at(i, col_surplus + i) = -1;
    t.at(i, col_art + i) = 1;
    t.rhs(i) = lp.rows[i].rhs;
    t.basis[i] = col_art + i;
  }
  for (int v = 0; v < n; ++v) {
    int r = n_cov + v;
    t.at(r, v) = 1;
    t.at(r, col_slack + v) = 1;
    t.rhs(r) = lp.upper[v];
    t.basis[r] = col_slack + v;
  }

  // Phase 1: minimize the artificial total. Reduced costs of the artificial
  // basis are obtained by subtracting each covering row from the cost row.
  for (int i = 0; i < n_cov; ++i)
    for (int c = 0; c <= cols; ++c) t.at(rows, c) -= t.at(i, c);
  for (int i = 0; i < n_cov; ++i) t.obj(col_art + i) += 1;
  t.optimize(banned);
  if (t.obj_rhs() != 0) throw std::logic_error("covering LP infeasible");

  // Drive leftover degenerate artificials out of the basis; otherwise a
  // phase-2 pivot could revive them and fake feasibility. A row with no
  // real nonzero entry is redundant and can keep its artificial: every
  // later pivot leaves that zero row untouched.
  for (int r = 0; r < rows; ++r) {
    if (t.basis[r] < col_art) continue;
    for (int c = 0; c < col_art; ++c) {
      if (t.at(r, c) != 0) {
        t.pivot(r, c);
        break;
      }
    }
  }

  // Phase 2: rebuild the objective row from the true costs and ban the
  // artificial columns from entering again.
  for (int c = 0; c <= cols; ++c) t.at(rows, c) = 0;
  for (int v = 0; v < n; ++v) t.obj(v) = lp.objective[v];
  for (int i = 0; i < n_cov; ++i) banned[col_art + i] = 1;
  for (int r = 0; r < rows; ++r) {
    int b = t.basis[r];
    if (b < n && lp.objective[b] != 0) {
      Rat cb = lp.objective[b];
      for (int c = 0; c <= cols; ++c) t.at(rows, c) -= cb * t.at(r, c);
    }
  }
  t.optimize(banned);

  LpSolution result;
  result.values.assign(n, Rat(0));
  for (int r = 0; r < rows; ++r)
    if (t.basis[r] < n) result.values[t.basis[r]] = t.rhs(r);
  result.objective = 0;
  for (int v = 0; v < n; ++v) result.objective += lp.objective[v] * result.values[v];
  return result;
}

}  // namespace admctl

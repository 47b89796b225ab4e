#pragma once

#include <cstdint>
#include <vector>

namespace lambdadl::detail {

/// DIMACS-style literal: +v or -v for variable v >= 1.
using Lit = int;

/// Small CDCL solver: two watched literals, first-UIP learning, activity
/// based branching and geometric restarts. Sized for the ground encodings of
/// the countermodel search (a few thousand variables at most).
class SatSolver {
 public:
  int new_var();
  int num_vars() const { return static_cast<int>(assign_.size()) - 1; }

  /// Adds a clause. An empty clause makes the instance unsatisfiable.
  void add_clause(std::vector<Lit> clause);

  bool solve();

  /// Value of `v` in the last model found by solve().
  bool value(int v) const { return model_[v] > 0; }

 private:
  static int var(Lit l) { return l < 0 ? -l : l; }
  int lit_index(Lit l) const { return l > 0 ? 2 * l : 2 * -l + 1; }
  int8_t lit_value(Lit l) const {
    int8_t a = assign_[var(l)];
    return l > 0 ? a : static_cast<int8_t>(-a);
  }

  void enqueue(Lit l, int reason);
  int propagate();
  void analyze(int conflict, std::vector<Lit>& learnt, int& backtrack_level);
  void backtrack(int level);
  Lit pick_branch();
  void bump(int v);
  int attach(std::vector<Lit> clause);

  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<int>> watches_;  // literal index -> clause ids
  std::vector<int8_t> assign_{0};          // per variable: 1 true, -1 false, 0 unset
  std::vector<int> level_{0};
  std::vector<int> reason_{-1};
  std::vector<double> activity_{0.0};
  std::vector<int8_t> phase_{0};
  std::vector<int8_t> model_{0};
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::vector<Lit> units_;
  std::size_t qhead_ = 0;
  double bump_ = 1.0;
  bool inconsistent_ = false;
};

}  // namespace lambdadl::detail

#include "sat.hpp"

#include <algorithm>

namespace lambdadl::detail {

int SatSolver::new_var() {
  assign_.push_back(0);
  level_.push_back(0);
  reason_.push_back(-1);
  activity_.push_back(0.0);
  phase_.push_back(-1);
  model_.push_back(0);
  watches_.resize(2 * assign_.size() + 2);
  return num_vars();
}

void SatSolver::add_clause(std::vector<Lit> clause) {
  std::sort(clause.begin(), clause.end());
  clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
  for (std::size_t i = 0; i + 1 < clause.size(); ++i)
    for (std::size_t j = i + 1; j < clause.size(); ++j)
      if (clause[i] == -clause[j]) return;  // tautology
  if (clause.empty()) {
    inconsistent_ = true;
    return;
  }
  if (clause.size() == 1) {
    units_.push_back(clause[0]);
    return;
  }
  attach(std::move(clause));
}

int SatSolver::attach(std::vector<Lit> clause) {
  int id = static_cast<int>(clauses_.size());
  watches_[lit_index(-clause[0])].push_back(id);
  watches_[lit_index(-clause[1])].push_back(id);
  clauses_.push_back(std::move(clause));
  return id;
}

void SatSolver::enqueue(Lit l, int reason) {
  int v = var(l);
  assign_[v] = l > 0 ? 1 : -1;
  level_[v] = static_cast<int>(trail_lim_.size());
  reason_[v] = reason;
  trail_.push_back(l);
}

// Watches are keyed by the negation of the watched literal: when a literal
// becomes true, clauses watching its negation are visited.
int SatSolver::propagate() {
  while (qhead_ < trail_.size()) {
    Lit p = trail_[qhead_++];
    auto& ws = watches_[lit_index(p)];
    std::size_t keep = 0;
    for (std::size_t i = 0; i < ws.size(); ++i) {
      int cid = ws[i];
      auto& c = clauses_[cid];
      if (c[0] == -p) std::swap(c[0], c[1]);
      if (lit_value(c[0]) > 0) {
        ws[keep++] = cid;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (lit_value(c[k]) >= 0) {
          std::swap(c[1], c[k]);
          watches_[lit_index(-c[1])].push_back(cid);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[keep++] = cid;
      if (lit_value(c[0]) < 0) {
        for (std::size_t j = i + 1; j < ws.size(); ++j) ws[keep++] = ws[j];
        ws.resize(keep);
        return cid;
      }
      enqueue(c[0], cid);
    }
    ws.resize(keep);
  }
  return -1;
}

void SatSolver::bump(int v) {
  activity_[v] += bump_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    bump_ *= 1e-100;
  }
}

void SatSolver::analyze(int conflict, std::vector<Lit>& learnt, int& backtrack_level) {
  const int current = static_cast<int>(trail_lim_.size());
  std::vector<char> seen(assign_.size(), 0);
  learnt.assign(1, 0);
  int pending = 0;
  Lit p = 0;
  std::size_t idx = trail_.size();
  int cid = conflict;
  for (;;) {
    for (Lit q : clauses_[cid]) {
      if (q == p) continue;
      int v = var(q);
      if (seen[v] || level_[v] == 0) continue;
      seen[v] = 1;
      bump(v);
      if (level_[v] == current)
        ++pending;
      else
        learnt.push_back(q);
    }
    do {
      p = trail_[--idx];
    } while (!seen[var(p)]);
    seen[var(p)] = 0;
    if (--pending == 0) break;
    cid = reason_[var(p)];
  }
  learnt[0] = -p;
  backtrack_level = 0;
  std::size_t max_i = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i) {
    if (level_[var(learnt[i])] > backtrack_level) {
      backtrack_level = level_[var(learnt[i])];
      max_i = i;
    }
  }
  if (learnt.size() > 1) std::swap(learnt[1], learnt[max_i]);
  bump_ *= 1.05;
}

void SatSolver::backtrack(int level) {
  if (static_cast<int>(trail_lim_.size()) <= level) return;
  for (std::size_t i = trail_.size(); i-- > static_cast<std::size_t>(trail_lim_[level]);) {
    int v = var(trail_[i]);
    phase_[v] = assign_[v];
    assign_[v] = 0;
    reason_[v] = -1;
  }
  trail_.resize(trail_lim_[level]);
  trail_lim_.resize(level);
  qhead_ = trail_.size();
}

Lit SatSolver::pick_branch() {
  int best = 0;
  for (int v = 1; v <= num_vars(); ++v)
    if (assign_[v] == 0 && (best == 0 || activity_[v] > activity_[best])) best = v;
  if (best == 0) return 0;
  return phase_[best] > 0 ? best : -best;
}

bool SatSolver::solve() {
  if (inconsistent_) return false;
  backtrack(0);
  for (Lit u : units_) {
    int8_t val = lit_value(u);
    if (val < 0) return false;
    if (val == 0) enqueue(u, -1);
  }
  std::size_t conflicts = 0, restart_at = 100;
  for (;;) {
    int conflict = propagate();
    if (conflict >= 0) {
      ++conflicts;
      if (trail_lim_.empty()) return false;
      std::vector<Lit> learnt;
      int level = 0;
      analyze(conflict, learnt, level);
      backtrack(level);
      if (learnt.size() == 1) {
        units_.push_back(learnt[0]);
        enqueue(learnt[0], -1);
      } else {
        Lit first = learnt[0];
        int id = attach(std::move(learnt));
        enqueue(first, id);
      }
      continue;
    }
    if (conflicts >= restart_at) {
      restart_at += restart_at / 2;
      backtrack(0);
      continue;
    }
    Lit next = pick_branch();
    if (next == 0) {
      model_ = assign_;
      backtrack(0);
      return true;
    }
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    enqueue(next, -1);
  }
}

}  // namespace lambdadl::detail

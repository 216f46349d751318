#ifndef CLSCND_LP_HPP
#define CLSCND_LP_HPP

// Dense two-phase simplex and best-first branch-and-bound.
//
//   minimize    c'x
//   subject to  a_i'x  (<= | = | >=)  b_i
//               l <= x <= u           (l finite, u may be +inf)
//
// Sizes here are tens of columns, so a full tableau is fine.

#include <clscnd/errors.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

namespace clscnd {

enum class Relation { less_equal, equal, greater_equal };

struct Row {
  std::vector<double> coefficients;
  Relation relation = Relation::less_equal;
  double rhs = 0.0;
  std::string name;
};

struct LinearProgram {
  std::vector<double> objective;
  std::vector<Row> rows;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<char> integer;
  std::vector<std::string> names;

  std::size_t num_variables() const noexcept { return objective.size(); }
  std::size_t num_rows() const noexcept { return rows.size(); }

  std::size_t add_variable(std::string name, double cost, double lo = 0.0,
                           double hi = std::numeric_limits<double>::infinity(), bool is_integer = false) {
    objective.push_back(cost);
    lower.push_back(lo);
    upper.push_back(hi);
    integer.push_back(is_integer ? 1 : 0);
    names.push_back(std::move(name));
    for (auto& r : rows) r.coefficients.push_back(0.0);
    return objective.size() - 1;
  }

  void add_row(Row row) {
    row.coefficients.resize(num_variables(), 0.0);
    rows.push_back(std::move(row));
  }

  bool has_integers() const noexcept {
    return std::any_of(integer.begin(), integer.end(), [](char c) { return c != 0; });
  }

  void validate() const {
    const std::size_t n = num_variables();
    if (lower.size() != n || upper.size() != n || integer.size() != n || names.size() != n)
      throw DimensionError("linear program: per-variable vectors disagree in length");
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(objective[j])) throw InvalidParameter("objective coefficient not finite: " + names[j]);
      if (!std::isfinite(lower[j])) throw InvalidParameter("lower bound must be finite: " + names[j]);
      if (std::isnan(upper[j]) || lower[j] > upper[j])
        throw InvalidParameter("bounds inverted: " + names[j]);
      if (integer[j] && !std::isfinite(upper[j]))
        throw InvalidParameter("integer variable must be bounded: " + names[j]);
    }
    for (const auto& r : rows) {
      if (r.coefficients.size() != n) throw DimensionError("row length mismatch: " + r.name);
      if (!std::isfinite(r.rhs)) throw InvalidParameter("rhs not finite: " + r.name);
      for (double a : r.coefficients)
        if (!std::isfinite(a)) throw InvalidParameter("coefficient not finite: " + r.name);
    }
  }
};

enum class SolveStatus { optimal, infeasible, unbounded, iteration_limit };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    case SolveStatus::iteration_limit: return "iteration-limit";
  }
  return "?";
}

struct LpSolution {
  SolveStatus status = SolveStatus::infeasible;
  std::vector<double> x;
  double objective = std::numeric_limits<double>::infinity();
  // Row multipliers (sign convention: <= rows nonpositive, >= rows
  // nonnegative) and reduced costs c - A'y. Filled for LP solves only.
  std::vector<double> duals;
  std::vector<double> reduced_costs;
  std::size_t iterations = 0;
  std::size_t nodes = 0;

  bool optimal() const noexcept { return status == SolveStatus::optimal; }
  bool has_point() const noexcept { return !x.empty(); }
};

enum class BranchingRule { most_fractional, first_fractional };

struct SolverConfig {
  double feasibility_tol = 1e-6;
  double optimality_tol = 1e-9;
  double integrality_tol = 1e-6;
  std::size_t max_iterations = 50000;
  std::size_t max_nodes = 100000;
  BranchingRule branching = BranchingRule::most_fractional;

  void validate() const {
    if (!(feasibility_tol > 0.0) || !(optimality_tol > 0.0) || !(integrality_tol > 0.0))
      throw InvalidParameter("solver tolerances must be > 0");
  }
};

namespace detail {

class Tableau {
 public:
  Tableau(const LinearProgram& lp, const SolverConfig& cfg) : lp_(lp), cfg_(cfg) { build(); }

  LpSolution solve() {
    LpSolution out;
    const auto phase1 = run_phase(true);
    out.iterations = iterations_;
    if (phase1 == SolveStatus::iteration_limit) {
      out.status = phase1;
      fill_point(out);
      return out;
    }
    if (!phase_one_feasible()) {
      out.status = SolveStatus::infeasible;
      return out;
    }
    drive_out_artificials();
    const auto phase2 = run_phase(false);
    out.iterations = iterations_;
    out.status = phase2;
    if (phase2 == SolveStatus::unbounded) return out;
    fill_point(out);
    if (phase2 == SolveStatus::optimal) fill_duals(out);
    return out;
  }

 private:
  double& at(std::size_t r, std::size_t c) { return t_[r * width_ + c]; }
  double at(std::size_t r, std::size_t c) const { return t_[r * width_ + c]; }
  std::size_t rhs_col() const { return width_ - 1; }
  std::size_t obj_row() const { return m_; }

  void build() {
    const std::size_t n = lp_.num_variables();
    n_ = n;
    // Upper-bound rows x'_j <= u_j - l_j follow the model rows.
    std::vector<std::size_t> bounded;
    for (std::size_t j = 0; j < n; ++j)
      if (std::isfinite(lp_.upper[j])) bounded.push_back(j);
    m_model_ = lp_.num_rows();
    m_ = m_model_ + bounded.size();

    struct StdRow {
      std::vector<std::pair<std::size_t, double>> coeffs;
      Relation rel;
      double rhs;
    };
    std::vector<StdRow> rows;
    rows.reserve(m_);
    for (const auto& r : lp_.rows) {
      StdRow s{{}, r.relation, r.rhs};
      for (std::size_t j = 0; j < n; ++j) {
        const double a = r.coefficients[j];
        if (a != 0.0) {
          s.coeffs.emplace_back(j, a);
          s.rhs -= a * lp_.lower[j];
        }
      }
      rows.push_back(std::move(s));
    }
    for (std::size_t j : bounded)
      rows.push_back(StdRow{{{j, 1.0}}, Relation::less_equal, lp_.upper[j] - lp_.lower[j]});

    std::size_t slacks = 0;
    for (const auto& r : rows)
      if (r.rel != Relation::equal) ++slacks;
    slack_begin_ = n;
    art_begin_ = n + slacks;
    width_ = art_begin_ + m_ + 1;  // one artificial column reserved per row
    t_.assign((m_ + 1) * width_, 0.0);
    basis_.assign(m_, 0);
    identity_col_.assign(m_, 0);
    sign_.assign(m_, 1.0);
    row_scale_.assign(m_, 0.0);

    std::size_t next_slack = slack_begin_;
    for (std::size_t r = 0; r < m_; ++r) {
      auto& row = rows[r];
      const double sigma = row.rhs < 0.0 ? -1.0 : 1.0;
      sign_[r] = sigma;
      for (auto [j, a] : row.coeffs) at(r, j) = sigma * a;
      at(r, rhs_col()) = sigma * row.rhs;
      row_scale_[r] = std::abs(row.rhs);

      std::optional<std::size_t> slack_col;
      double slack_coef = 0.0;
      if (row.rel != Relation::equal) {
        slack_col = next_slack++;
        slack_coef = sigma * (row.rel == Relation::less_equal ? 1.0 : -1.0);
        at(r, *slack_col) = slack_coef;
      }
      const std::size_t art = art_begin_ + r;
      at(r, art) = 1.0;
      if (slack_col && slack_coef > 0.0) {
        basis_[r] = *slack_col;
        identity_col_[r] = *slack_col;
        at(r, art) = 0.0;  // unused artificial
        art_used_.push_back(false);
      } else {
        basis_[r] = art;
        identity_col_[r] = art;
        art_used_.push_back(true);
      }
    }
    cost_scale_ = 1.0;
    for (double c : lp_.objective) cost_scale_ = std::max(cost_scale_, std::abs(c));
  }

  bool is_artificial(std::size_t col) const { return col >= art_begin_ && col < art_begin_ + m_; }

  // Each artificial left basic must be negligible relative to its own row.
  bool phase_one_feasible() const {
    for (std::size_t r = 0; r < m_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      const std::size_t row = basis_[r] - art_begin_;
      if (at(r, rhs_col()) > cfg_.feasibility_tol * std::max(1.0, row_scale_[row])) return false;
    }
    return true;
  }

  void price(const std::vector<double>& cost) {
    for (std::size_t c = 0; c < width_; ++c) {
      double z = 0.0;
      for (std::size_t r = 0; r < m_; ++r) z += cost[basis_[r]] * at(r, c);
      at(obj_row(), c) = (c == rhs_col() ? 0.0 : cost[c]) - z;
    }
  }

  void pivot(std::size_t pr, std::size_t pc) {
    const double p = at(pr, pc);
    for (std::size_t c = 0; c < width_; ++c) at(pr, c) /= p;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r <= m_; ++r) {
      if (r == pr) continue;
      const double factor = at(r, pc);
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c < width_; ++c) at(r, c) -= factor * at(pr, c);
      at(r, pc) = 0.0;
    }
    basis_[pr] = pc;
  }

  SolveStatus run_phase(bool phase_one) {
    std::vector<double> cost(width_ - 1, 0.0);
    if (phase_one) {
      for (std::size_t r = 0; r < m_; ++r)
        if (art_used_[r]) cost[art_begin_ + r] = 1.0;
    } else {
      for (std::size_t j = 0; j < n_; ++j) cost[j] = lp_.objective[j];
    }
    price(cost);
    const double opt_tol = cfg_.optimality_tol * (phase_one ? 1.0 : cost_scale_);
    constexpr double pivot_tol = 1e-9;
    constexpr std::size_t degenerate_limit = 50;
    bool bland = false;
    std::size_t degenerate_run = 0;

    while (true) {
      if (iterations_ >= cfg_.max_iterations) return SolveStatus::iteration_limit;

      std::optional<std::size_t> enter;
      double best = -opt_tol;
      for (std::size_t c = 0; c < width_ - 1; ++c) {
        if (is_artificial(c)) continue;  // artificials never re-enter
        const double d = at(obj_row(), c);
        if (d < best) {
          enter = c;
          if (bland) break;
          best = d;
        }
      }
      if (!enter) return SolveStatus::optimal;

      std::optional<std::size_t> leave;
      double min_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < m_; ++r) {
        const double a = at(r, *enter);
        if (a <= pivot_tol) continue;
        const double ratio = std::max(0.0, at(r, rhs_col())) / a;
        if (!leave) {
          leave = r;
          min_ratio = ratio;
          continue;
        }
        const double tie = 1e-12 * std::max(1.0, min_ratio);
        if (ratio < min_ratio - tie) {
          leave = r;
          min_ratio = ratio;
        } else if (ratio <= min_ratio + tie && basis_[r] < basis_[*leave]) {
          leave = r;  // Bland tie-break on the leaving variable
        }
      }
      if (!leave) return SolveStatus::unbounded;

      degenerate_run = (min_ratio <= 1e-12) ? degenerate_run + 1 : 0;
      if (degenerate_run > degenerate_limit) bland = true;
      pivot(*leave, *enter);
      ++iterations_;
    }
  }

  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      std::optional<std::size_t> col;
      double best = 1e-9;
      for (std::size_t c = 0; c < art_begin_; ++c) {
        if (std::abs(at(r, c)) > best) {
          best = std::abs(at(r, c));
          col = c;
        }
      }
      // A row with no usable column is redundant; its artificial stays basic at zero.
      if (col) pivot(r, *col);
    }
  }

  void fill_point(LpSolution& out) const {
    std::vector<double> shifted(n_, 0.0);
    for (std::size_t r = 0; r < m_; ++r)
      if (basis_[r] < n_) shifted[basis_[r]] = std::max(0.0, at(r, rhs_col()));
    out.x.resize(n_);
    double obj = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      out.x[j] = lp_.lower[j] + shifted[j];
      if (std::isfinite(lp_.upper[j])) out.x[j] = std::min(out.x[j], lp_.upper[j]);
      obj += lp_.objective[j] * out.x[j];
    }
    out.objective = obj;
  }

  // y_r = c_B' B^{-1} e_r, read from the column that started as e_r.
  void fill_duals(LpSolution& out) const {
    out.duals.assign(m_model_, 0.0);
    for (std::size_t r = 0; r < m_model_; ++r) {
      const std::size_t col = identity_col_[r];
      double y = 0.0;
      for (std::size_t k = 0; k < m_; ++k) {
        const std::size_t b = basis_[k];
        if (b < n_) y += lp_.objective[b] * at(k, col);
      }
      out.duals[r] = sign_[r] * y;
    }
    out.reduced_costs.assign(n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
      double d = lp_.objective[j];
      for (std::size_t r = 0; r < m_model_; ++r) d -= lp_.rows[r].coefficients[j] * out.duals[r];
      if (std::abs(d) <= cfg_.optimality_tol * cost_scale_) d = 0.0;  // round-off
      out.reduced_costs[j] = d;
    }
  }

  const LinearProgram& lp_;
  const SolverConfig& cfg_;
  std::size_t n_ = 0, m_ = 0, m_model_ = 0;
  std::size_t slack_begin_ = 0, art_begin_ = 0, width_ = 0;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> identity_col_;
  std::vector<double> sign_;
  std::vector<bool> art_used_;
  std::vector<double> row_scale_;
  double cost_scale_ = 1.0;
  std::size_t iterations_ = 0;
};

}  // namespace detail

/// Solves the continuous relaxation (integrality flags are ignored).
inline LpSolution solve_lp(const LinearProgram& lp, const SolverConfig& config = {}) {
  config.validate();
  lp.validate();
  return detail::Tableau(lp, config).solve();
}

/// Dual objective b'y + sum_j (d_j > 0 ? d_j l_j : d_j u_j) for an optimal LpSolution.
inline double dual_objective(const LinearProgram& lp, const LpSolution& sol) {
  double v = 0.0;
  for (std::size_t r = 0; r < lp.num_rows(); ++r) v += lp.rows[r].rhs * sol.duals[r];
  for (std::size_t j = 0; j < lp.num_variables(); ++j) {
    const double d = sol.reduced_costs[j];
    if (d > 0.0) v += d * lp.lower[j];
    else if (d < 0.0) v += d * lp.upper[j];
  }
  return v;
}

// ---------------------------------------------------------------------------
// Branch and bound

namespace detail {

inline std::optional<std::size_t> branching_variable(const LinearProgram& lp, const std::vector<double>& x,
                                                     const SolverConfig& cfg) {
  std::optional<std::size_t> pick;
  double best = -1.0;
  for (std::size_t j = 0; j < lp.num_variables(); ++j) {
    if (!lp.integer[j]) continue;
    const double frac = x[j] - std::floor(x[j]);
    const double dist = std::min(frac, 1.0 - frac);
    if (dist <= cfg.integrality_tol) continue;
    if (cfg.branching == BranchingRule::first_fractional) return j;
    if (dist > best + 1e-12) {  // strict: ties keep the lower index
      best = dist;
      pick = j;
    }
  }
  return pick;
}

// Fix integers at their rounded values and re-solve for clean continuous values.
inline LpSolution polish_integer_point(LinearProgram lp, const std::vector<double>& x, const SolverConfig& cfg) {
  for (std::size_t j = 0; j < lp.num_variables(); ++j) {
    if (!lp.integer[j]) continue;
    const double v = std::round(x[j]);
    lp.lower[j] = v;
    lp.upper[j] = v;
  }
  auto sol = detail::Tableau(lp, cfg).solve();
  sol.duals.clear();
  sol.reduced_costs.clear();
  return sol;
}

}  // namespace detail

inline LpSolution solve_milp(const LinearProgram& lp, const SolverConfig& config = {}) {
  config.validate();
  lp.validate();
  if (!lp.has_integers()) return detail::Tableau(lp, config).solve();

  struct Node {
    double bound;
    std::size_t id;
    std::vector<double> lower, upper;
    std::vector<double> x;
  };
  struct Worse {
    bool operator()(const Node& a, const Node& b) const {
      if (a.bound != b.bound) return a.bound > b.bound;
      return a.id > b.id;
    }
  };

  LpSolution result;
  result.status = SolveStatus::infeasible;
  std::size_t iterations = 0, nodes = 0, next_id = 0;
  std::optional<LpSolution> incumbent;
  auto gap = [](double v) { return 1e-9 * std::max(1.0, std::abs(v)); };

  LinearProgram work = lp;
  std::priority_queue<Node, std::vector<Node>, Worse> open;

  auto evaluate = [&](std::vector<double> lower, std::vector<double> upper) -> std::optional<SolveStatus> {
    work.lower = lower;
    work.upper = upper;
    auto sol = detail::Tableau(work, config).solve();
    iterations += sol.iterations;
    ++nodes;
    if (sol.status == SolveStatus::unbounded || sol.status == SolveStatus::iteration_limit) return sol.status;
    if (sol.status != SolveStatus::optimal) return std::nullopt;
    if (incumbent && sol.objective >= incumbent->objective - gap(incumbent->objective)) return std::nullopt;
    open.push(Node{sol.objective, next_id++, std::move(lower), std::move(upper), std::move(sol.x)});
    return std::nullopt;
  };

  if (auto st = evaluate(lp.lower, lp.upper)) {
    result.status = *st;
    result.iterations = iterations;
    result.nodes = nodes;
    return result;
  }

  bool limited = false;
  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (incumbent && node.bound >= incumbent->objective - gap(incumbent->objective)) continue;
    if (nodes >= config.max_nodes) {
      limited = true;
      break;
    }

    const auto j = detail::branching_variable(lp, node.x, config);
    if (!j) {
      work.lower = node.lower;
      work.upper = node.upper;
      auto polished = detail::polish_integer_point(work, node.x, config);
      iterations += polished.iterations;
      if (polished.optimal() && (!incumbent || polished.objective < incumbent->objective)) incumbent = polished;
      continue;
    }
    const double v = node.x[*j];
    auto down_upper = node.upper;
    down_upper[*j] = std::floor(v);
    auto up_lower = node.lower;
    up_lower[*j] = std::ceil(v);
    if (auto st = evaluate(node.lower, std::move(down_upper)); st && *st == SolveStatus::iteration_limit) limited = true;
    if (auto st = evaluate(std::move(up_lower), node.upper); st && *st == SolveStatus::iteration_limit) limited = true;
  }

  if (incumbent) {
    result = *incumbent;
    result.status = limited ? SolveStatus::iteration_limit : SolveStatus::optimal;
  } else {
    result.status = limited ? SolveStatus::iteration_limit : SolveStatus::infeasible;
  }
  result.iterations = iterations;
  result.nodes = nodes;
  return result;
}

// ---------------------------------------------------------------------------
// Plain-text dump, one row per line:
//   clscnd-lp 1 <variables> <rows>
//   var <name> <lower> <upper> <int 0|1> <cost>
//   row <name> <c_1> ... <c_n> <= | = | >= <rhs>

inline std::string dump_lp(const LinearProgram& lp) {
  std::ostringstream os;
  char buf[40];
  auto num = [&](double v) -> const char* {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  };
  os << "clscnd-lp 1 " << lp.num_variables() << ' ' << lp.num_rows() << '\n';
  for (std::size_t j = 0; j < lp.num_variables(); ++j) {
    os << "var " << lp.names[j] << ' ' << num(lp.lower[j]);
    os << ' ' << num(lp.upper[j]);
    os << ' ' << int(lp.integer[j] != 0);
    os << ' ' << num(lp.objective[j]) << '\n';
  }
  for (const auto& r : lp.rows) {
    os << "row " << (r.name.empty() ? "-" : r.name);
    for (double a : r.coefficients) os << ' ' << num(a);
    os << ' ' << (r.relation == Relation::less_equal ? "<=" : r.relation == Relation::equal ? "=" : ">=");
    os << ' ' << num(r.rhs) << '\n';
  }
  return os.str();
}

}  // namespace clscnd

#endif  // CLSCND_LP_HPP

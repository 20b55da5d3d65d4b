#include "qdecomp/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>

namespace qdecomp::lp {

int LinearModel::add_variable(double lower, double upper, bool integral, std::string name) {
    if (lower > upper) throw std::invalid_argument("linear model: lower bound above upper bound");
    vars_.push_back({lower, upper, integral, std::move(name)});
    obj_.push_back(0.0);
    return static_cast<int>(vars_.size()) - 1;
}

void LinearModel::add_constraint(std::vector<Term> terms, Relation rel, double rhs) {
    for (const auto& t : terms)
        if (t.var < 0 || t.var >= n_vars())
            throw std::invalid_argument("linear model: constraint references unknown variable");
    rows_.push_back({std::move(terms), rel, rhs});
}

void LinearModel::set_objective(Sense sense, std::vector<double> coeffs) {
    if (coeffs.size() != vars_.size())
        throw std::invalid_argument("linear model: objective size mismatch");
    sense_ = sense;
    obj_ = std::move(coeffs);
}

namespace {

constexpr double kPivotEps = 1e-9;
constexpr double kDualTol = 1e-9;

enum class ColState : unsigned char { Basic, AtLower, AtUpper, FreeZero };

// Dense-tableau bounded-variable primal simplex. Column order: structural
// variables, then one slack per row, then any phase-1 artificials. The
// tableau always stores B^{-1}A for all columns; basic variable values are
// maintained directly in `beta`.
class Simplex {
public:
    Simplex(const LinearModel& model, const std::vector<double>& lower,
            const std::vector<double>& upper)
        : n_struct_(model.n_vars()), m_(model.n_constraints()) {
        n_total_ = n_struct_ + m_;
        lo_ = lower;
        up_ = upper;
        lo_.resize(n_total_);
        up_.resize(n_total_);
        tab_.assign(static_cast<std::size_t>(m_) * n_total_, 0.0);
        rhs_.resize(m_);

        for (int i = 0; i < m_; ++i) {
            const auto& row = model.constraints()[i];
            double* t = tab_row(i);
            for (const auto& term : row.terms) t[term.var] += term.coeff;
            int s = n_struct_ + i;
            t[s] = 1.0;
            switch (row.rel) {
                case Relation::LessEqual:
                    lo_[s] = 0.0;
                    up_[s] = kInf;
                    break;
                case Relation::GreaterEqual:
                    lo_[s] = -kInf;
                    up_[s] = 0.0;
                    break;
                case Relation::Equal:
                    lo_[s] = 0.0;
                    up_[s] = 0.0;
                    break;
            }
            rhs_[i] = row.rhs;
        }

        // Internal sense is always maximize.
        cost_.assign(n_total_, 0.0);
        double sign = model.sense() == Sense::Maximize ? 1.0 : -1.0;
        for (int j = 0; j < n_struct_; ++j) cost_[j] = sign * model.objective()[j];
    }

    SolveStatus solve() {
        place_nonbasics();
        if (!start_basis()) {
            if (!phase_one()) return SolveStatus::Infeasible;
        }
        return phase_two();
    }

    // Structural variable values after an Optimal solve.
    std::vector<double> structural_values() const {
        std::vector<double> x(n_struct_);
        for (int j = 0; j < n_struct_; ++j) x[j] = value_of(j);
        return x;
    }

    // Appends rows after a successful solve; the new slacks become basic and
    // may start outside their bounds, which dual_repair fixes.
    void append_rows(const std::vector<Constraint>& rows) {
        const int old_m = m_;
        const int old_total = n_total_;
        const int n_new = static_cast<int>(rows.size());
        m_ += n_new;
        n_total_ += n_new;

        std::vector<double> wide(static_cast<std::size_t>(m_) * n_total_, 0.0);
        for (int i = 0; i < old_m; ++i)
            std::copy_n(&tab_[static_cast<std::size_t>(i) * old_total], old_total,
                        &wide[static_cast<std::size_t>(i) * n_total_]);
        tab_ = std::move(wide);
        lo_.resize(n_total_);
        up_.resize(n_total_);
        state_.resize(n_total_, ColState::AtLower);
        row_of_.resize(n_total_, -1);
        rhs_.resize(m_);
        beta_.resize(m_);
        basis_.resize(m_);

        for (int k = 0; k < n_new; ++k) {
            const int i = old_m + k;
            const int s = old_total + k;
            const auto& row = rows[k];
            double* t = tab_row(i);
            for (const auto& term : row.terms) t[term.var] += term.coeff;
            switch (row.rel) {
                case Relation::LessEqual: lo_[s] = 0.0; up_[s] = kInf; break;
                case Relation::GreaterEqual: lo_[s] = -kInf; up_[s] = 0.0; break;
                case Relation::Equal: lo_[s] = 0.0; up_[s] = 0.0; break;
            }
            rhs_[i] = row.rhs;

            // Slack value straight from the raw activity at the current point.
            double activity = 0.0;
            for (const auto& term : row.terms) activity += term.coeff * value_of(term.var);
            beta_[i] = row.rhs - activity;

            // Eliminate the old basic columns so the row joins the tableau.
            for (int r = 0; r < old_m; ++r) {
                double f = t[basis_[r]];
                if (f == 0.0) continue;
                const double* tr = tab_row(r);
                for (int j = 0; j < n_total_; ++j) t[j] -= f * tr[j];
            }
            t[s] = 1.0;
            basis_[i] = s;
            state_[s] = ColState::Basic;
            row_of_[s] = i;
        }
    }

    // Dual simplex: the current basis is dual feasible (reduced costs pass
    // the optimality test) but some basics violate their bounds. Returns
    // NodeLimit when the iteration cap trips so the caller can re-solve from
    // scratch instead.
    SolveStatus dual_repair() {
        std::vector<double> cost = cost_;
        cost.resize(n_total_, 0.0);
        std::vector<double> red(n_total_);
        for (int j = 0; j < n_total_; ++j) red[j] = cost[j];
        for (int i = 0; i < m_; ++i) {
            double cb = cost[basis_[i]];
            if (cb == 0.0) continue;
            const double* t = tab_row(i);
            for (int j = 0; j < n_total_; ++j) red[j] -= cb * t[j];
        }

        const long cap = 50L * (m_ + n_total_) + 1000;
        for (long iter = 0; iter < cap; ++iter) {
            int r = -1;
            bool below = false;
            double worst = kFeasTol;
            for (int i = 0; i < m_; ++i) {
                int bv = basis_[i];
                if (std::isfinite(lo_[bv]) && lo_[bv] - beta_[i] > worst) {
                    worst = lo_[bv] - beta_[i];
                    r = i;
                    below = true;
                }
                if (std::isfinite(up_[bv]) && beta_[i] - up_[bv] > worst) {
                    worst = beta_[i] - up_[bv];
                    r = i;
                    below = false;
                }
            }
            if (r < 0) return SolveStatus::Optimal;

            const int leave_var = basis_[r];
            const double* tr = tab_row(r);
            int enter = -1;
            double best_ratio = kInf;
            for (int j = 0; j < n_total_; ++j) {
                if (state_[j] == ColState::Basic) continue;
                if (lo_[j] == up_[j] && state_[j] != ColState::FreeZero) continue;
                double a = tr[j];
                if (std::abs(a) <= kPivotEps) continue;
                bool ok;
                if (state_[j] == ColState::FreeZero)
                    ok = true;
                else if (below)
                    ok = (state_[j] == ColState::AtLower && a < 0.0) ||
                         (state_[j] == ColState::AtUpper && a > 0.0);
                else
                    ok = (state_[j] == ColState::AtLower && a > 0.0) ||
                         (state_[j] == ColState::AtUpper && a < 0.0);
                if (!ok) continue;
                double ratio = std::abs(red[j] / a);
                if (ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 && (enter < 0 || j < enter))) {
                    best_ratio = ratio;
                    enter = j;
                }
            }
            if (enter < 0) return SolveStatus::Infeasible;

            const double target = below ? lo_[leave_var] : up_[leave_var];
            const double dj = (beta_[r] - target) / tr[enter];
            for (int i = 0; i < m_; ++i) {
                if (i == r) continue;
                double a = tab_row(i)[enter];
                if (a != 0.0) beta_[i] -= a * dj;
            }
            double enter_val = bound_value(enter) + dj;
            state_[leave_var] = below ? ColState::AtLower : ColState::AtUpper;
            row_of_[leave_var] = -1;
            basis_[r] = enter;
            state_[enter] = ColState::Basic;
            row_of_[enter] = r;
            beta_[r] = enter_val;

            double* pr = tab_row(r);
            double inv = 1.0 / pr[enter];
            for (int j = 0; j < n_total_; ++j) pr[j] *= inv;
            for (int i = 0; i < m_; ++i) {
                if (i == r) continue;
                double f = tab_row(i)[enter];
                if (f == 0.0) continue;
                double* ri = tab_row(i);
                for (int j = 0; j < n_total_; ++j) ri[j] -= f * pr[j];
            }
            double re = red[enter];
            if (re != 0.0)
                for (int j = 0; j < n_total_; ++j) red[j] -= re * pr[j];
        }
        return SolveStatus::NodeLimit;  // give up; caller re-solves fresh
    }

private:
    double* tab_row(int i) { return &tab_[static_cast<std::size_t>(i) * n_total_]; }
    const double* tab_row(int i) const { return &tab_[static_cast<std::size_t>(i) * n_total_]; }

    double bound_value(int j) const {
        switch (state_[j]) {
            case ColState::AtLower: return lo_[j];
            case ColState::AtUpper: return up_[j];
            default: return 0.0;
        }
    }

    double value_of(int j) const {
        if (state_[j] == ColState::Basic) return beta_[row_of_[j]];
        return bound_value(j);
    }

    void place_nonbasics() {
        state_.assign(n_total_, ColState::AtLower);
        for (int j = 0; j < n_total_; ++j) {
            if (std::isfinite(lo_[j]))
                state_[j] = ColState::AtLower;
            else if (std::isfinite(up_[j]))
                state_[j] = ColState::AtUpper;
            else
                state_[j] = ColState::FreeZero;
        }
    }

    // Slack basis. Returns false if any basic slack violates its bounds, in
    // which case phase 1 must repair the start.
    bool start_basis() {
        basis_.resize(m_);
        row_of_.assign(n_total_, -1);
        beta_.resize(m_);
        bool feasible = true;
        for (int i = 0; i < m_; ++i) {
            int s = n_struct_ + i;
            basis_[i] = s;
            state_[s] = ColState::Basic;
            row_of_[s] = i;
            double activity = 0.0;
            const double* t = tab_row(i);
            for (int j = 0; j < n_struct_; ++j)
                if (state_[j] != ColState::Basic && t[j] != 0.0) activity += t[j] * bound_value(j);
            beta_[i] = rhs_[i] - activity;
            if (beta_[i] < lo_[s] - kFeasTol || beta_[i] > up_[s] + kFeasTol) feasible = false;
        }
        return feasible;
    }

    // Adds one artificial column per infeasible row and minimizes their sum.
    bool phase_one() {
        std::vector<int> art_rows;
        for (int i = 0; i < m_; ++i) {
            int s = basis_[i];
            if (beta_[i] >= lo_[s] - kFeasTol && beta_[i] <= up_[s] + kFeasTol) continue;
            art_rows.push_back(i);
        }

        int n_before = n_total_;
        int n_art = static_cast<int>(art_rows.size());
        n_total_ += n_art;
        grow_columns(n_before);

        for (int k = 0; k < n_art; ++k) {
            int i = art_rows[k];
            int s = basis_[i];
            int a = n_before + k;
            // Park the slack at the bound nearest its current value; the
            // artificial absorbs the residual with a positive sign.
            double parked = std::clamp(beta_[i], lo_[s], up_[s]);
            double resid = beta_[i] - parked;
            state_[s] = parked == lo_[s] ? ColState::AtLower : ColState::AtUpper;
            row_of_[s] = -1;
            double sigma = resid >= 0.0 ? 1.0 : -1.0;
            if (sigma < 0.0) {
                double* t = tab_row(i);
                for (int j = 0; j < n_before; ++j) t[j] = -t[j];
            }
            tab_row(i)[a] = 1.0;
            lo_[a] = 0.0;
            up_[a] = kInf;
            basis_[i] = a;
            state_[a] = ColState::Basic;
            row_of_[a] = i;
            beta_[i] = std::abs(resid);
        }

        std::vector<double> phase_cost(n_total_, 0.0);
        for (int k = 0; k < n_art; ++k) phase_cost[n_before + k] = -1.0;
        if (run(phase_cost) == SolveStatus::Unbounded)
            throw std::logic_error("simplex: phase 1 reported unbounded");

        double infeas = 0.0;
        for (int k = 0; k < n_art; ++k) infeas += value_of(n_before + k);
        if (infeas > kFeasTol) return false;

        // Freeze artificials at zero for phase 2.
        for (int k = 0; k < n_art; ++k) {
            int a = n_before + k;
            up_[a] = 0.0;
            if (state_[a] != ColState::Basic) state_[a] = ColState::AtLower;
        }
        return true;
    }

    SolveStatus phase_two() {
        std::vector<double> cost = cost_;
        cost.resize(n_total_, 0.0);
        return run(cost);
    }

    void grow_columns(int n_before) {
        lo_.resize(n_total_, 0.0);
        up_.resize(n_total_, 0.0);
        state_.resize(n_total_, ColState::AtLower);
        row_of_.resize(n_total_, -1);
        std::vector<double> wide(static_cast<std::size_t>(m_) * n_total_, 0.0);
        for (int i = 0; i < m_; ++i)
            std::copy_n(&tab_[static_cast<std::size_t>(i) * n_before], n_before,
                        &wide[static_cast<std::size_t>(i) * n_total_]);
        tab_ = std::move(wide);
    }

    // Primal iterations for max c'x under the current basis. Pricing is
    // Dantzig (most violating reduced cost) with an automatic switch to
    // Bland's least-index rule during degenerate streaks, which keeps the
    // iteration count low while still guaranteeing termination. The reduced
    // cost row is maintained incrementally and refreshed periodically.
    SolveStatus run(const std::vector<double>& cost) {
        std::vector<double> red(n_total_);
        auto refresh = [&]() {
            for (int j = 0; j < n_total_; ++j) red[j] = cost[j];
            for (int i = 0; i < m_; ++i) {
                double cb = cost[basis_[i]];
                if (cb == 0.0) continue;
                const double* t = tab_row(i);
                for (int j = 0; j < n_total_; ++j) red[j] -= cb * t[j];
            }
        };
        refresh();

        int degen_streak = 0;
        long since_refresh = 0;
        while (true) {
            if (++since_refresh >= 256) {
                refresh();
                since_refresh = 0;
            }
            const bool bland = degen_streak > 40;

            int enter = -1;
            int dir = +1;
            double best_score = kDualTol;
            for (int j = 0; j < n_total_; ++j) {
                if (state_[j] == ColState::Basic) continue;
                if (lo_[j] == up_[j] && state_[j] != ColState::FreeZero) continue;  // fixed
                double score = 0.0;
                int d = +1;
                if (state_[j] == ColState::AtLower && red[j] > kDualTol) {
                    score = red[j];
                } else if (state_[j] == ColState::AtUpper && red[j] < -kDualTol) {
                    score = -red[j];
                    d = -1;
                } else if (state_[j] == ColState::FreeZero && std::abs(red[j]) > kDualTol) {
                    score = std::abs(red[j]);
                    d = red[j] > 0.0 ? +1 : -1;
                } else {
                    continue;
                }
                if (bland) {  // least index, any violation
                    enter = j;
                    dir = d;
                    break;
                }
                if (score > best_score) {
                    best_score = score;
                    enter = j;
                    dir = d;
                }
            }
            if (enter < 0) {
                // Confirm optimality against drift before declaring victory.
                if (since_refresh > 1) {
                    refresh();
                    since_refresh = 0;
                    bool violated = false;
                    for (int j = 0; j < n_total_ && !violated; ++j) {
                        if (state_[j] == ColState::Basic) continue;
                        if (lo_[j] == up_[j] && state_[j] != ColState::FreeZero) continue;
                        violated = (state_[j] == ColState::AtLower && red[j] > kDualTol) ||
                                   (state_[j] == ColState::AtUpper && red[j] < -kDualTol) ||
                                   (state_[j] == ColState::FreeZero && std::abs(red[j]) > kDualTol);
                    }
                    if (violated) continue;
                }
                return SolveStatus::Optimal;
            }

            // Ratio test: smallest step at which a basic variable or the
            // entering variable itself hits a bound.
            double best_t = kInf;
            int leave_row = -1;
            int leave_var = -1;
            bool leave_at_lower = false;
            if (std::isfinite(lo_[enter]) && std::isfinite(up_[enter])) {
                best_t = up_[enter] - lo_[enter];
                leave_var = enter;
            }
            for (int i = 0; i < m_; ++i) {
                double a = tab_row(i)[enter] * dir;
                if (std::abs(a) <= kPivotEps) continue;
                int bv = basis_[i];
                double t, hits_lower;
                if (a > 0.0) {  // basic value decreases
                    if (!std::isfinite(lo_[bv])) continue;
                    t = (beta_[i] - lo_[bv]) / a;
                    hits_lower = true;
                } else {  // basic value increases
                    if (!std::isfinite(up_[bv])) continue;
                    t = (up_[bv] - beta_[i]) / (-a);
                    hits_lower = false;
                }
                if (t < 0.0) t = 0.0;  // degenerate, clip numerical noise
                // Bland tie-break: smallest variable index among blockers.
                if (t < best_t - kPivotEps || (t < best_t + kPivotEps && bv < leave_var)) {
                    best_t = t;
                    leave_row = i;
                    leave_var = bv;
                    leave_at_lower = hits_lower;
                }
            }

            if (!std::isfinite(best_t)) return SolveStatus::Unbounded;
            degen_streak = best_t < 1e-12 ? degen_streak + 1 : 0;

            if (leave_row < 0) {
                // Bound flip of the entering variable.
                for (int i = 0; i < m_; ++i) {
                    double a = tab_row(i)[enter];
                    if (a != 0.0) beta_[i] -= dir * best_t * a;
                }
                state_[enter] = state_[enter] == ColState::AtLower ? ColState::AtUpper
                                                                   : ColState::AtLower;
                continue;
            }

            // Update basic values, then exchange enter/leave in the basis.
            double enter_val = bound_value(enter) + dir * best_t;
            for (int i = 0; i < m_; ++i) {
                double a = tab_row(i)[enter];
                if (a != 0.0) beta_[i] -= dir * best_t * a;
            }
            state_[leave_var] = leave_at_lower ? ColState::AtLower : ColState::AtUpper;
            row_of_[leave_var] = -1;
            basis_[leave_row] = enter;
            state_[enter] = ColState::Basic;
            row_of_[enter] = leave_row;
            beta_[leave_row] = enter_val;

            double piv = tab_row(leave_row)[enter];
            double* pr = tab_row(leave_row);
            double inv = 1.0 / piv;
            for (int j = 0; j < n_total_; ++j) pr[j] *= inv;
            for (int i = 0; i < m_; ++i) {
                if (i == leave_row) continue;
                double f = tab_row(i)[enter];
                if (f == 0.0) continue;
                double* ri = tab_row(i);
                for (int j = 0; j < n_total_; ++j) ri[j] -= f * pr[j];
            }
            double re = red[enter];
            if (re != 0.0)
                for (int j = 0; j < n_total_; ++j) red[j] -= re * pr[j];
        }
    }

    int n_struct_;
    int m_;
    int n_total_;
    std::vector<double> tab_;
    std::vector<double> rhs_;
    std::vector<double> lo_, up_;
    std::vector<double> cost_;
    std::vector<ColState> state_;
    std::vector<int> basis_;
    std::vector<int> row_of_;
    std::vector<double> beta_;
};

double objective_value(const LinearModel& model, const std::vector<double>& x) {
    double v = 0.0;
    for (int j = 0; j < model.n_vars(); ++j) v += model.objective()[j] * x[j];
    return v;
}

}  // namespace

LpSolution solve_lp(const LinearModel& model, const std::vector<double>& lower,
                    const std::vector<double>& upper) {
    for (int j = 0; j < model.n_vars(); ++j)
        if (lower[j] > upper[j] + 1e-12) return {SolveStatus::Infeasible, {}, 0.0, 0};

    Simplex solver(model, lower, upper);
    SolveStatus status = solver.solve();
    LpSolution sol;
    sol.status = status;
    if (status == SolveStatus::Optimal) {
        sol.values = solver.structural_values();
        sol.objective = objective_value(model, sol.values);
    }
    return sol;
}

LpSolution solve_lp(const LinearModel& model) {
    std::vector<double> lower(model.n_vars()), upper(model.n_vars());
    for (int j = 0; j < model.n_vars(); ++j) {
        lower[j] = model.variables()[j].lower;
        upper[j] = model.variables()[j].upper;
    }
    return solve_lp(model, lower, upper);
}

namespace {

// One round of interval (activity) propagation; tightens integer bounds to
// integral values. Returns false on a detected contradiction.
bool propagate_bounds(const LinearModel& model, std::vector<double>& lo, std::vector<double>& up) {
    const auto& vars = model.variables();
    for (int round = 0; round < 10; ++round) {
        bool changed = false;
        for (const auto& row : model.constraints()) {
            // Treat the row as lo_act <= a'x <= up_act limits implied by rhs.
            double row_min = row.rel == Relation::GreaterEqual ? row.rhs : -kInf;
            double row_max = row.rel == Relation::LessEqual || row.rel == Relation::Equal
                                 ? row.rhs
                                 : kInf;
            if (row.rel == Relation::Equal) row_min = row.rhs;

            double act_min = 0.0, act_max = 0.0;
            int inf_min = 0, inf_max = 0;
            for (const auto& t : row.terms) {
                double l = t.coeff > 0 ? lo[t.var] : up[t.var];
                double u = t.coeff > 0 ? up[t.var] : lo[t.var];
                if (std::isfinite(l)) act_min += t.coeff * l; else ++inf_min;
                if (std::isfinite(u)) act_max += t.coeff * u; else ++inf_max;
            }
            for (const auto& t : row.terms) {
                if (t.coeff == 0.0) continue;
                double l = t.coeff > 0 ? lo[t.var] : up[t.var];
                double u = t.coeff > 0 ? up[t.var] : lo[t.var];
                // Residual activity of the other terms.
                double others_min = act_min, others_max = act_max;
                bool min_ok = false, max_ok = false;
                if (std::isfinite(l)) {
                    if (inf_min == 0) { others_min -= t.coeff * l; min_ok = true; }
                } else if (inf_min == 1) {
                    min_ok = true;
                }
                if (std::isfinite(u)) {
                    if (inf_max == 0) { others_max -= t.coeff * u; max_ok = true; }
                } else if (inf_max == 1) {
                    max_ok = true;
                }

                if (std::isfinite(row_max) && min_ok) {
                    double limit = (row_max - others_min) / t.coeff;
                    if (t.coeff > 0) {
                        if (vars[t.var].integral) limit = std::floor(limit + kIntTol);
                        if (limit < up[t.var] - 1e-12) { up[t.var] = limit; changed = true; }
                    } else {
                        if (vars[t.var].integral) limit = std::ceil(limit - kIntTol);
                        if (limit > lo[t.var] + 1e-12) { lo[t.var] = limit; changed = true; }
                    }
                }
                if (std::isfinite(row_min) && max_ok) {
                    double limit = (row_min - others_max) / t.coeff;
                    if (t.coeff > 0) {
                        if (vars[t.var].integral) limit = std::ceil(limit - kIntTol);
                        if (limit > lo[t.var] + 1e-12) { lo[t.var] = limit; changed = true; }
                    } else {
                        if (vars[t.var].integral) limit = std::floor(limit + kIntTol);
                        if (limit < up[t.var] - 1e-12) { up[t.var] = limit; changed = true; }
                    }
                }
                if (lo[t.var] > up[t.var] + 1e-9) return false;
            }
        }
        if (!changed) break;
    }
    return true;
}

// Node LP with fixed variables substituted out and redundant rows dropped;
// equivalent to solving the full model under the node bounds, but the dense
// tableau shrinks with the branching depth.
LpSolution solve_reduced_lp(const LinearModel& model, const std::vector<double>& lo,
                            const std::vector<double>& up) {
    const int n = model.n_vars();
    std::vector<int> compact(n, -1);
    std::vector<double> fixed_value(n, 0.0);
    LinearModel sub;
    double fixed_obj = 0.0;
    for (int j = 0; j < n; ++j) {
        if (up[j] - lo[j] < 1e-12) {
            fixed_value[j] = lo[j];
            fixed_obj += model.objective()[j] * lo[j];
        } else {
            compact[j] = sub.add_variable(lo[j], up[j]);
        }
    }
    if (sub.n_vars() == n) return solve_lp(model, lo, up);  // nothing fixed

    std::vector<double> sub_obj(sub.n_vars());
    for (int j = 0; j < n; ++j)
        if (compact[j] >= 0) sub_obj[compact[j]] = model.objective()[j];
    sub.set_objective(model.sense(), std::move(sub_obj));

    for (const auto& row : model.constraints()) {
        double shift = 0.0;
        std::vector<Term> terms;
        double act_min = 0.0, act_max = 0.0;
        bool unbounded_act = false;
        for (const auto& t : row.terms) {
            if (compact[t.var] < 0) {
                shift += t.coeff * fixed_value[t.var];
                continue;
            }
            terms.push_back({compact[t.var], t.coeff});
            double l = t.coeff > 0 ? lo[t.var] : up[t.var];
            double u = t.coeff > 0 ? up[t.var] : lo[t.var];
            if (!std::isfinite(l) || !std::isfinite(u)) unbounded_act = true;
            act_min += t.coeff * l;
            act_max += t.coeff * u;
        }
        double rhs = row.rhs - shift;
        if (terms.empty()) {
            bool ok = true;
            switch (row.rel) {
                case Relation::LessEqual: ok = 0.0 <= rhs + kFeasTol; break;
                case Relation::GreaterEqual: ok = 0.0 >= rhs - kFeasTol; break;
                case Relation::Equal: ok = std::abs(rhs) <= kFeasTol; break;
            }
            if (!ok) return {SolveStatus::Infeasible, {}, 0.0, 0};
            continue;
        }
        if (!unbounded_act) {  // skip rows the bounds already enforce
            if (row.rel == Relation::LessEqual && act_max <= rhs + 1e-12) continue;
            if (row.rel == Relation::GreaterEqual && act_min >= rhs - 1e-12) continue;
        }
        sub.add_constraint(std::move(terms), row.rel, rhs);
    }

    LpSolution inner = solve_lp(sub);
    if (inner.status != SolveStatus::Optimal) return inner;
    LpSolution out;
    out.status = SolveStatus::Optimal;
    out.values.resize(n);
    for (int j = 0; j < n; ++j)
        out.values[j] = compact[j] >= 0 ? inner.values[compact[j]] : fixed_value[j];
    out.objective = inner.objective + fixed_obj;
    return out;
}

double constraint_residual(const LinearModel& model, const std::vector<double>& x) {
    double worst = 0.0;
    for (const auto& row : model.constraints()) {
        double act = 0.0;
        for (const auto& t : row.terms) act += t.coeff * x[t.var];
        switch (row.rel) {
            case Relation::LessEqual: worst = std::max(worst, act - row.rhs); break;
            case Relation::GreaterEqual: worst = std::max(worst, row.rhs - act); break;
            case Relation::Equal: worst = std::max(worst, std::abs(act - row.rhs)); break;
        }
    }
    return worst;
}

}  // namespace

LpSolution solve_milp(const LinearModel& model, const MilpOptions& opts) {
    const bool maximize = model.sense() == Sense::Maximize;
    const double flip = maximize ? 1.0 : -1.0;  // internal comparisons are max-sense
    const auto& vars = model.variables();
    for (int j = 0; j < model.n_vars(); ++j)
        if (vars[j].integral && !(std::isfinite(vars[j].lower) && std::isfinite(vars[j].upper)))
            throw std::invalid_argument("solve_milp: integral variables need finite bounds");

    struct Node {
        double bound;  // max-sense bound inherited from the parent LP
        long id;
        std::vector<double> lo, up;
    };
    auto cmp = [](const Node& a, const Node& b) {
        if (a.bound != b.bound) return a.bound > b.bound;  // best bound first
        return a.id < b.id;
    };
    std::multiset<Node, decltype(cmp)> frontier(cmp);

    std::vector<double> lo0(model.n_vars()), up0(model.n_vars());
    for (int j = 0; j < model.n_vars(); ++j) {
        lo0[j] = vars[j].lower;
        up0[j] = vars[j].upper;
    }
    frontier.insert({kInf, 0, std::move(lo0), std::move(up0)});

    bool have_incumbent = false;
    std::vector<double> best_x;
    double best_obj = -kInf;  // max-sense
    long next_id = 1;
    long nodes = 0;
    bool hit_limit = false;

    auto try_incumbent = [&](const std::vector<double>& x_in) {
        std::vector<double> x = x_in;
        for (int j = 0; j < model.n_vars(); ++j)
            if (vars[j].integral) x[j] = std::round(x[j]);
        for (int j = 0; j < model.n_vars(); ++j)
            if (x[j] < vars[j].lower - kIntTol || x[j] > vars[j].upper + kIntTol) return;
        if (constraint_residual(model, x) > kIntTol) return;
        double obj = 0.0;
        for (int j = 0; j < model.n_vars(); ++j) obj += model.objective()[j] * x[j];
        double v = flip * obj;
        if (!have_incumbent || v > best_obj + kObjTol) {
            have_incumbent = true;
            best_obj = v;
            best_x = std::move(x);
        }
    };

    while (!frontier.empty()) {
        if (nodes >= opts.node_limit) {
            hit_limit = true;
            break;
        }
        Node node = std::move(frontier.extract(frontier.begin()).value());
        ++nodes;
        if (have_incumbent && node.bound <= best_obj + kObjTol) continue;

        if (!propagate_bounds(model, node.lo, node.up)) continue;

        LpSolution rel = solve_reduced_lp(model, node.lo, node.up);
        if (rel.status == SolveStatus::Infeasible) continue;
        if (rel.status == SolveStatus::Unbounded) return {SolveStatus::Unbounded, {}, 0.0, nodes};

        double bound = flip * rel.objective;
        if (have_incumbent && bound <= best_obj + kObjTol) continue;

        // Most-fractional branching variable, lowest index on ties.
        int branch = -1;
        double best_frac = kIntTol;
        for (int j = 0; j < model.n_vars(); ++j) {
            if (!vars[j].integral) continue;
            double f = rel.values[j] - std::floor(rel.values[j]);
            double dist = std::min(f, 1.0 - f);
            if (dist > best_frac + 1e-12) {
                best_frac = dist;
                branch = j;
            }
        }

        if (branch < 0) {
            try_incumbent(rel.values);
            continue;
        }
        try_incumbent(rel.values);  // cheap rounding heuristic

        // The up child propagates harder on 0/1 models, so it gets the
        // earlier id and is explored first among equal bounds.
        Node upn{bound, next_id++, node.lo, node.up};
        upn.lo[branch] = std::ceil(rel.values[branch]);
        Node down{bound, next_id++, std::move(node.lo), std::move(node.up)};
        down.up[branch] = std::floor(rel.values[branch]);
        frontier.insert(std::move(upn));
        frontier.insert(std::move(down));
    }

    LpSolution out;
    out.nodes_explored = nodes;
    if (hit_limit) {
        out.status = SolveStatus::NodeLimit;
        if (have_incumbent) {
            out.values = best_x;
            out.objective = flip * best_obj;
        }
        return out;
    }
    if (!have_incumbent) {
        out.status = SolveStatus::Infeasible;
        return out;
    }
    out.status = SolveStatus::Optimal;
    out.values = best_x;
    out.objective = flip * best_obj;
    return out;
}

struct IncrementalLp::Impl {
    LinearModel model;
    std::unique_ptr<Simplex> sx;
    std::vector<Constraint> pending;
    bool ready = false;
};

IncrementalLp::IncrementalLp(const LinearModel& base) : impl_(new Impl{base, nullptr, {}, false}) {}
IncrementalLp::~IncrementalLp() = default;
IncrementalLp::IncrementalLp(IncrementalLp&&) noexcept = default;
IncrementalLp& IncrementalLp::operator=(IncrementalLp&&) noexcept = default;

void IncrementalLp::add_constraint(std::vector<Term> terms, Relation rel, double rhs) {
    impl_->pending.push_back({terms, rel, rhs});
    impl_->model.add_constraint(std::move(terms), rel, rhs);
}

LpSolution IncrementalLp::solve() {
    auto fresh = [&]() -> SolveStatus {
        std::vector<double> lower(impl_->model.n_vars()), upper(impl_->model.n_vars());
        for (int j = 0; j < impl_->model.n_vars(); ++j) {
            lower[j] = impl_->model.variables()[j].lower;
            upper[j] = impl_->model.variables()[j].upper;
        }
        impl_->sx = std::make_unique<Simplex>(impl_->model, lower, upper);
        return impl_->sx->solve();
    };

    SolveStatus status;
    if (!impl_->ready) {
        status = fresh();
    } else if (!impl_->pending.empty()) {
        impl_->sx->append_rows(impl_->pending);
        status = impl_->sx->dual_repair();
        if (status == SolveStatus::NodeLimit) status = fresh();
    } else {
        status = SolveStatus::Optimal;
    }
    impl_->pending.clear();

    LpSolution sol;
    sol.status = status;
    if (status != SolveStatus::Optimal) {
        impl_->ready = false;
        return sol;
    }
    sol.values = impl_->sx->structural_values();
    sol.objective = objective_value(impl_->model, sol.values);

    // Drift guard: a repaired basis must still satisfy the full row set.
    double worst = constraint_residual(impl_->model, sol.values);
    if (worst > kFeasTol) {
        status = fresh();
        sol.status = status;
        if (status != SolveStatus::Optimal) {
            impl_->ready = false;
            return sol;
        }
        sol.values = impl_->sx->structural_values();
        sol.objective = objective_value(impl_->model, sol.values);
    }
    impl_->ready = true;
    return sol;
}

void write_lp_format(const LinearModel& model, std::ostream& os) {
    auto var_name = [&](int j) {
        const auto& n = model.variables()[j].name;
        return n.empty() ? "x" + std::to_string(j) : n;
    };
    os << (model.sense() == Sense::Maximize ? "Maximize" : "Minimize") << "\n obj:";
    for (int j = 0; j < model.n_vars(); ++j) {
        double c = model.objective()[j];
        if (c == 0.0) continue;
        os << (c >= 0 ? " + " : " - ") << std::abs(c) << " " << var_name(j);
    }
    os << "\nSubject To\n";
    int r = 0;
    for (const auto& row : model.constraints()) {
        os << " c" << r++ << ":";
        for (const auto& t : row.terms)
            os << (t.coeff >= 0 ? " + " : " - ") << std::abs(t.coeff) << " " << var_name(t.var);
        switch (row.rel) {
            case Relation::LessEqual: os << " <= "; break;
            case Relation::GreaterEqual: os << " >= "; break;
            case Relation::Equal: os << " = "; break;
        }
        os << row.rhs << "\n";
    }
    os << "Bounds\n";
    for (int j = 0; j < model.n_vars(); ++j) {
        const auto& v = model.variables()[j];
        os << " " << v.lower << " <= " << var_name(j) << " <= " << v.upper << "\n";
    }
    bool any_int = false;
    for (const auto& v : model.variables()) any_int |= v.integral;
    if (any_int) {
        os << "Generals\n";
        for (int j = 0; j < model.n_vars(); ++j)
            if (model.variables()[j].integral) os << " " << var_name(j) << "\n";
    }
    os << "End\n";
}

}  // namespace qdecomp::lp

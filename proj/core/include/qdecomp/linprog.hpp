#pragma once

#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace qdecomp::lp {

// Project-wide solver tolerances.
inline constexpr double kFeasTol = 1e-7;  // constraint feasibility
inline constexpr double kIntTol = 1e-6;   // integrality rounding
inline constexpr double kObjTol = 1e-9;   // objective comparisons

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { Minimize, Maximize };
enum class Relation { LessEqual, Equal, GreaterEqual };
enum class SolveStatus { Optimal, Infeasible, Unbounded, NodeLimit };

struct Term {
    int var = 0;
    double coeff = 0.0;
};

struct Constraint {
    std::vector<Term> terms;
    Relation rel = Relation::LessEqual;
    double rhs = 0.0;
};

struct Variable {
    double lower = 0.0;
    double upper = kInf;
    bool integral = false;
    std::string name;
};

class LinearModel {
public:
    int add_variable(double lower, double upper, bool integral = false, std::string name = {});
    void add_constraint(std::vector<Term> terms, Relation rel, double rhs);
    void set_objective(Sense sense, std::vector<double> coeffs);

    int n_vars() const { return static_cast<int>(vars_.size()); }
    int n_constraints() const { return static_cast<int>(rows_.size()); }
    const std::vector<Variable>& variables() const { return vars_; }
    const std::vector<Constraint>& constraints() const { return rows_; }
    Sense sense() const { return sense_; }
    const std::vector<double>& objective() const { return obj_; }

private:
    std::vector<Variable> vars_;
    std::vector<Constraint> rows_;
    Sense sense_ = Sense::Maximize;
    std::vector<double> obj_;
};

struct LpSolution {
    SolveStatus status = SolveStatus::Infeasible;
    std::vector<double> values;
    double objective = 0.0;
    long nodes_explored = 0;  // set by solve_milp
};

/// Solve the LP relaxation (integrality flags ignored). Two-phase primal
/// simplex on a dense tableau with bounded variables and Bland's rule, so the
/// pivot sequence is deterministic and finite.
LpSolution solve_lp(const LinearModel& model);

/// Variant with per-variable bound overrides; used by branch and bound.
LpSolution solve_lp(const LinearModel& model, const std::vector<double>& lower,
                    const std::vector<double>& upper);

struct MilpOptions {
    long node_limit = 2'000'000;
};

/// Branch and bound with LP bounds: best-bound node selection,
/// most-fractional branching with lowest-index tie-breaks, bound propagation
/// at every node. Returns NodeLimit with the best incumbent attached when the
/// node budget is exhausted.
LpSolution solve_milp(const LinearModel& model, const MilpOptions& opts = {});

/// Human-readable dump in LP text format for external cross-checking.
void write_lp_format(const LinearModel& model, std::ostream& os);

/// Cutting-plane workhorse: keeps the simplex tableau alive between rounds so
/// rows added after a solve are repaired with dual simplex steps instead of
/// from-scratch re-solves. Semantically equivalent to rebuilding the model
/// and calling solve_lp.
class IncrementalLp {
public:
    explicit IncrementalLp(const LinearModel& base);
    ~IncrementalLp();
    IncrementalLp(IncrementalLp&&) noexcept;
    IncrementalLp& operator=(IncrementalLp&&) noexcept;

    void add_constraint(std::vector<Term> terms, Relation rel, double rhs);
    LpSolution solve();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace qdecomp::lp

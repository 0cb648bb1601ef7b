#pragma once

#include <vector>

namespace interdep {

// Standard-form linear program: maximize c'x subject to sparse rows
// A_i x <= b_i or A_i x == b_i, with box bounds on every variable.
// Structural variables in the game LPs live in [0,1].
struct LinearProgram {
    enum class Relation { LessEqual, Equal };

    struct Row {
        std::vector<std::pair<int, double>> coeffs;  // (variable, coefficient)
        Relation relation = Relation::LessEqual;
        double rhs = 0.0;
    };

    int num_vars = 0;
    std::vector<double> objective;  // maximize
    std::vector<double> lower;      // default 0
    std::vector<double> upper;      // default 1
    std::vector<Row> rows;

    int add_variable(double obj, double lo = 0.0, double hi = 1.0);
    void add_row(Row row);
};

struct LpSolution {
    enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };
    Status status = Status::Optimal;
    double objective = 0.0;
    std::vector<double> x;

    bool optimal() const { return status == Status::Optimal; }
};

// Dense bounded-variable two-phase primal simplex. Deterministic:
// Dantzig pivoting with index tie-breaks, falling back to Bland's rule
// when stalling. Tolerances: feasibility 1e-9, reduced cost 1e-9.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace interdep

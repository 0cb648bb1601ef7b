#include "interdep/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace interdep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kFeasTol = 1e-8;

// Dense tableau simplex with explicit variable bounds. Nonbasic
// variables rest at one of their bounds; an entering move is limited by
// the entering variable's own range, by basic variables falling to
// their lower bounds, and by basic variables climbing to their upper
// bounds. When the entering variable's own range binds first the step
// is a bound flip without a basis change.
class BoundedSimplex {
public:
    explicit BoundedSimplex(const LinearProgram& lp) : m_(static_cast<int>(lp.rows.size())) {
        n_struct_ = lp.num_vars;
        lower_ = lp.lower;
        upper_ = lp.upper;
        obj_ = lp.objective;

        // Structural coefficients and row signs first: rows whose basic
        // start value would be negative are negated so phase 1 starts
        // from a nonnegative basis.
        std::vector<std::vector<double>> dense_rows(
            static_cast<std::size_t>(m_), std::vector<double>(static_cast<std::size_t>(n_struct_), 0.0));
        std::vector<double> rhs(static_cast<std::size_t>(m_), 0.0);
        std::vector<char> flipped(static_cast<std::size_t>(m_), 0);
        std::vector<double> start_val(static_cast<std::size_t>(m_), 0.0);
        for (int i = 0; i < m_; ++i) {
            const auto& row = lp.rows[static_cast<std::size_t>(i)];
            auto& coeffs = dense_rows[static_cast<std::size_t>(i)];
            for (const auto& [j, a] : row.coeffs) {
                if (j < 0 || j >= n_struct_)
                    throw std::invalid_argument("LP row references unknown variable");
                coeffs[static_cast<std::size_t>(j)] += a;
            }
            rhs[static_cast<std::size_t>(i)] = row.rhs;
            double v = row.rhs;
            for (int j = 0; j < n_struct_; ++j)
                v -= coeffs[static_cast<std::size_t>(j)] * lower_[static_cast<std::size_t>(j)];
            if (v < 0.0) {
                flipped[static_cast<std::size_t>(i)] = 1;
                for (auto& a : coeffs) a = -a;
                rhs[static_cast<std::size_t>(i)] = -row.rhs;
                v = -v;
            }
            start_val[static_cast<std::size_t>(i)] = v;
        }

        // Column layout: structurals, then slacks for <= rows, then
        // artificials for == rows and flipped <= rows.
        int num_slack = 0, num_art = 0;
        for (int i = 0; i < m_; ++i) {
            const bool le =
                lp.rows[static_cast<std::size_t>(i)].relation == LinearProgram::Relation::LessEqual;
            if (le) ++num_slack;
            if (!le || flipped[static_cast<std::size_t>(i)]) ++num_art;
        }
        art_begin_ = n_struct_ + num_slack;
        total_ = art_begin_ + num_art;
        lower_.resize(static_cast<std::size_t>(total_), 0.0);
        upper_.resize(static_cast<std::size_t>(total_), kInf);
        obj_.resize(static_cast<std::size_t>(total_), 0.0);

        tableau_.assign(static_cast<std::size_t>(m_) * total_, 0.0);
        basis_.assign(static_cast<std::size_t>(m_), -1);
        at_upper_.assign(static_cast<std::size_t>(total_), 0);
        val_ = start_val;

        int next_slack = n_struct_;
        int next_art = art_begin_;
        for (int i = 0; i < m_; ++i) {
            for (int j = 0; j < n_struct_; ++j)
                at(i, j) = dense_rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            const bool le =
                lp.rows[static_cast<std::size_t>(i)].relation == LinearProgram::Relation::LessEqual;
            if (le) {
                at(i, next_slack) = flipped[static_cast<std::size_t>(i)] ? -1.0 : 1.0;
                if (!flipped[static_cast<std::size_t>(i)]) basis_[static_cast<std::size_t>(i)] = next_slack;
                ++next_slack;
            }
            if (!le || flipped[static_cast<std::size_t>(i)]) {
                at(i, next_art) = 1.0;
                basis_[static_cast<std::size_t>(i)] = next_art;
                ++next_art;
            }
        }
    }

    LpSolution solve() {
        bool need_phase1 = false;
        for (int i = 0; i < m_; ++i)
            if (basis_[static_cast<std::size_t>(i)] >= art_begin_) need_phase1 = true;
        if (need_phase1) {
            std::vector<double> phase1(static_cast<std::size_t>(total_), 0.0);
            for (int j = art_begin_; j < total_; ++j) phase1[static_cast<std::size_t>(j)] = -1.0;
            const auto status = optimize(phase1);
            if (status == LpSolution::Status::IterationLimit)
                return failed(LpSolution::Status::IterationLimit);
            double infeasibility = 0.0;
            for (int i = 0; i < m_; ++i)
                if (basis_[static_cast<std::size_t>(i)] >= art_begin_)
                    infeasibility += val_[static_cast<std::size_t>(i)];
            if (infeasibility > kFeasTol) return failed(LpSolution::Status::Infeasible);
            // Snap residual artificials to zero and pin them there.
            for (int i = 0; i < m_; ++i)
                if (basis_[static_cast<std::size_t>(i)] >= art_begin_)
                    val_[static_cast<std::size_t>(i)] = 0.0;
            for (int j = art_begin_; j < total_; ++j) upper_[static_cast<std::size_t>(j)] = 0.0;
        }

        const auto status = optimize(obj_);
        if (status != LpSolution::Status::Optimal) return failed(status);

        LpSolution sol;
        sol.status = LpSolution::Status::Optimal;
        sol.x = extract();
        sol.objective = 0.0;
        for (int j = 0; j < n_struct_; ++j)
            sol.objective += obj_[static_cast<std::size_t>(j)] * sol.x[static_cast<std::size_t>(j)];
        return sol;
    }

private:
    double& at(int row, int col) { return tableau_[static_cast<std::size_t>(row) * total_ + col]; }
    double at(int row, int col) const {
        return tableau_[static_cast<std::size_t>(row) * total_ + col];
    }

    std::vector<double> extract() const {
        std::vector<double> x(static_cast<std::size_t>(n_struct_));
        std::vector<char> basic(static_cast<std::size_t>(total_), 0);
        for (int i = 0; i < m_; ++i) basic[static_cast<std::size_t>(basis_[i])] = 1;
        for (int j = 0; j < n_struct_; ++j)
            if (!basic[static_cast<std::size_t>(j)])
                x[static_cast<std::size_t>(j)] = at_upper_[static_cast<std::size_t>(j)]
                                                     ? upper_[static_cast<std::size_t>(j)]
                                                     : lower_[static_cast<std::size_t>(j)];
        for (int i = 0; i < m_; ++i) {
            const int b = basis_[static_cast<std::size_t>(i)];
            if (b < n_struct_)
                x[static_cast<std::size_t>(b)] =
                    lower_[static_cast<std::size_t>(b)] + val_[static_cast<std::size_t>(i)];
        }
        for (int j = 0; j < n_struct_; ++j)
            x[static_cast<std::size_t>(j)] =
                std::clamp(x[static_cast<std::size_t>(j)], lower_[static_cast<std::size_t>(j)],
                           upper_[static_cast<std::size_t>(j)]);
        return x;
    }

    LpSolution failed(LpSolution::Status status) {
        LpSolution sol;
        sol.status = status;
        sol.x = extract();
        sol.objective = 0.0;
        return sol;
    }

    LpSolution::Status optimize(const std::vector<double>& c) {
        const long max_iters = 2000L + 200L * (static_cast<long>(m_) + total_);
        long degenerate_streak = 0;
        bool bland = false;
        std::vector<char> is_basic(static_cast<std::size_t>(total_), 0);
        std::vector<double> price(static_cast<std::size_t>(total_), 0.0);
        for (long iter = 0; iter < max_iters; ++iter) {
            std::fill(is_basic.begin(), is_basic.end(), 0);
            for (int i = 0; i < m_; ++i) is_basic[static_cast<std::size_t>(basis_[i])] = 1;

            // reduced costs: z = c - c_B' (B^-1 A), computed row by row
            std::copy(c.begin(), c.end(), price.begin());
            for (int i = 0; i < m_; ++i) {
                const double cb = c[static_cast<std::size_t>(basis_[i])];
                if (cb == 0.0) continue;
                for (int j = 0; j < total_; ++j) price[static_cast<std::size_t>(j)] -= cb * at(i, j);
            }

            int enter = -1;
            int direction = +1;
            double best = kCostTol;
            for (int j = 0; j < total_; ++j) {
                if (is_basic[static_cast<std::size_t>(j)]) continue;
                if (upper_[static_cast<std::size_t>(j)] - lower_[static_cast<std::size_t>(j)] <= 0.0)
                    continue;  // pinned
                const double z = price[static_cast<std::size_t>(j)];
                const bool up = at_upper_[static_cast<std::size_t>(j)] != 0;
                double gain = 0.0;
                int dir = 0;
                if (!up && z > kCostTol) {
                    gain = z;
                    dir = +1;
                } else if (up && z < -kCostTol) {
                    gain = -z;
                    dir = -1;
                } else {
                    continue;
                }
                if (bland) {
                    enter = j;
                    direction = dir;
                    break;
                }
                if (gain > best) {
                    best = gain;
                    enter = j;
                    direction = dir;
                }
            }
            if (enter < 0) return LpSolution::Status::Optimal;

            const double own_range =
                upper_[static_cast<std::size_t>(enter)] - lower_[static_cast<std::size_t>(enter)];
            double limit = own_range;
            int leave_row = -1;
            bool leave_at_upper = false;
            auto consider = [&](int i, double step, bool hits_upper) {
                bool take = false;
                if (step < limit - 1e-12) {
                    take = true;
                } else if (step <= limit + 1e-12) {
                    take = leave_row < 0 ||
                           basis_[static_cast<std::size_t>(i)] <
                               basis_[static_cast<std::size_t>(leave_row)];
                }
                if (take) {
                    limit = std::max(std::min(step, limit), 0.0);
                    leave_row = i;
                    leave_at_upper = hits_upper;
                }
            };
            for (int i = 0; i < m_; ++i) {
                const double a = at(i, enter) * direction;
                const int b = basis_[static_cast<std::size_t>(i)];
                if (a > kPivotTol) {
                    consider(i, val_[static_cast<std::size_t>(i)] / a, false);
                } else if (a < -kPivotTol) {
                    const double range =
                        upper_[static_cast<std::size_t>(b)] - lower_[static_cast<std::size_t>(b)];
                    if (range == kInf) continue;
                    consider(i, (range - val_[static_cast<std::size_t>(i)]) / (-a), true);
                }
            }
            if (limit == kInf) return LpSolution::Status::Unbounded;

            if (limit <= 1e-12) {
                if (++degenerate_streak > 64) bland = true;
            } else {
                degenerate_streak = 0;
            }

            if (leave_row < 0) {
                // bound flip
                for (int i = 0; i < m_; ++i)
                    val_[static_cast<std::size_t>(i)] -= at(i, enter) * direction * limit;
                at_upper_[static_cast<std::size_t>(enter)] ^= 1;
                continue;
            }

            for (int i = 0; i < m_; ++i)
                val_[static_cast<std::size_t>(i)] -= at(i, enter) * direction * limit;
            const int leaving = basis_[static_cast<std::size_t>(leave_row)];
            const double pivot = at(leave_row, enter);
            for (int j = 0; j < total_; ++j) at(leave_row, j) /= pivot;
            val_[static_cast<std::size_t>(leave_row)] =
                direction > 0 ? limit : own_range - limit;
            for (int i = 0; i < m_; ++i) {
                if (i == leave_row) continue;
                const double f = at(i, enter);
                if (f == 0.0) continue;
                for (int j = 0; j < total_; ++j) at(i, j) -= f * at(leave_row, j);
            }
            basis_[static_cast<std::size_t>(leave_row)] = enter;
            at_upper_[static_cast<std::size_t>(enter)] = 0;
            at_upper_[static_cast<std::size_t>(leaving)] = leave_at_upper ? 1 : 0;
        }
        return LpSolution::Status::IterationLimit;
    }

    int m_ = 0;
    int n_struct_ = 0;
    int total_ = 0;
    int art_begin_ = 0;
    std::vector<double> tableau_;
    std::vector<double> val_;  // basic displacement above the variable's lower bound
    std::vector<int> basis_;
    std::vector<char> at_upper_;
    std::vector<double> lower_, upper_, obj_;
};

}  // namespace

int LinearProgram::add_variable(double obj, double lo, double hi) {
    objective.push_back(obj);
    lower.push_back(lo);
    upper.push_back(hi);
    return num_vars++;
}

void LinearProgram::add_row(Row row) { rows.push_back(std::move(row)); }

LpSolution solve_lp(const LinearProgram& lp) {
    if (static_cast<int>(lp.objective.size()) != lp.num_vars ||
        static_cast<int>(lp.lower.size()) != lp.num_vars ||
        static_cast<int>(lp.upper.size()) != lp.num_vars)
        throw std::invalid_argument("LP vectors disagree with num_vars");
    BoundedSimplex simplex(lp);
    return simplex.solve();
}

}  // namespace interdep

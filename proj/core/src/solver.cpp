#include "interdep/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "interdep/lp.hpp"
#include "interdep/parallel.hpp"

namespace interdep {

namespace {

constexpr double kTieTol = 1e-9;

// ---------------------------------------------------------------------
// Separable route. Without a budget the fixed-target LP couples targets
// only through the scalar s = attacker utility at the attacked target:
// every other target independently maximizes its objective share
// subject to giving the attacker at most s, and the attacked target
// must give exactly s. Each per-target value function is the upper
// concave envelope of its options, so the LP reduces to maximizing a
// one-dimensional concave piecewise-linear function of s.
// ---------------------------------------------------------------------

// Upper concave envelope of (attacker value, objective coefficient)
// points, one per option.
struct Hull {
    std::vector<double> v;   // ascending
    std::vector<double> d;
    std::vector<int> option;
    int peak = 0;  // leftmost vertex with maximal d

    double vmin() const { return v.front(); }
    double vmax() const { return v.back(); }
};

Hull build_hull(const std::vector<double>& v, const std::vector<double>& d) {
    const int m = static_cast<int>(v.size());
    std::vector<int> idx(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) idx[static_cast<std::size_t>(i)] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (v[static_cast<std::size_t>(a)] != v[static_cast<std::size_t>(b)])
            return v[static_cast<std::size_t>(a)] < v[static_cast<std::size_t>(b)];
        if (d[static_cast<std::size_t>(a)] != d[static_cast<std::size_t>(b)])
            return d[static_cast<std::size_t>(a)] > d[static_cast<std::size_t>(b)];
        return a < b;
    });

    Hull hull;
    for (int i : idx) {
        const double vi = v[static_cast<std::size_t>(i)];
        const double di = d[static_cast<std::size_t>(i)];
        if (!hull.v.empty() && vi == hull.v.back()) continue;  // dominated duplicate
        // keep slopes strictly decreasing
        while (hull.v.size() >= 2) {
            const std::size_t k = hull.v.size();
            const double x1 = hull.v[k - 2], y1 = hull.d[k - 2];
            const double x2 = hull.v[k - 1], y2 = hull.d[k - 1];
            if ((y2 - y1) * (vi - x2) <= (di - y2) * (x2 - x1)) {
                hull.v.pop_back();
                hull.d.pop_back();
                hull.option.pop_back();
            } else {
                break;
            }
        }
        hull.v.push_back(vi);
        hull.d.push_back(di);
        hull.option.push_back(i);
    }
    hull.peak = 0;
    for (std::size_t i = 1; i < hull.d.size(); ++i)
        if (hull.d[i] > hull.d[hull.peak]) hull.peak = static_cast<int>(i);
    return hull;
}

// Mix of up to two options realizing a hull point.
struct Mix {
    int option_a = 0;
    int option_b = -1;
    double weight_a = 1.0;  // weight on option_a; rest on option_b
};

// Envelope value at s, constrained to the segment containing s.
double hull_value(const Hull& h, double s) {
    const auto& v = h.v;
    if (s <= v.front()) return h.d.front();
    if (s >= v.back()) return h.d.back();
    const std::size_t i =
        static_cast<std::size_t>(std::upper_bound(v.begin(), v.end(), s) - v.begin()) - 1;
    if (i + 1 >= v.size()) return h.d.back();
    const double lambda = (s - v[i]) / (v[i + 1] - v[i]);
    return h.d[i] + lambda * (h.d[i + 1] - h.d[i]);
}

Mix hull_mix(const Hull& h, double s) {
    Mix mix;
    const auto& v = h.v;
    if (s <= v.front()) {
        mix.option_a = h.option.front();
        return mix;
    }
    if (s >= v.back()) {
        mix.option_a = h.option.back();
        return mix;
    }
    const std::size_t i =
        static_cast<std::size_t>(std::upper_bound(v.begin(), v.end(), s) - v.begin()) - 1;
    const double lambda = (s - v[i]) / (v[i + 1] - v[i]);
    if (lambda <= 0.0) {
        mix.option_a = h.option[i];
        return mix;
    }
    if (lambda >= 1.0) {
        mix.option_a = h.option[i + 1];
        return mix;
    }
    mix.option_a = h.option[i];
    mix.option_b = h.option[i + 1];
    mix.weight_a = 1.0 - lambda;
    return mix;
}

// Value of the "at most s" relaxation: the envelope is followed up to
// its peak and flat afterwards.
double hull_value_leq(const Hull& h, double s) {
    const double cap = h.v[static_cast<std::size_t>(h.peak)];
    return hull_value(h, std::min(s, cap));
}

Mix hull_mix_leq(const Hull& h, double s) {
    const double cap = h.v[static_cast<std::size_t>(h.peak)];
    if (s >= cap) {
        Mix mix;
        mix.option_a = h.option[static_cast<std::size_t>(h.peak)];
        return mix;
    }
    return hull_mix(h, s);
}

// Sum over all targets of the relaxed per-target value functions,
// stored as a piecewise-linear function queryable in O(log).
struct EnvelopeSum {
    std::vector<double> pos;    // breakpoints ascending
    std::vector<double> slope;  // slope[k] holds on [pos[k], pos[k+1]); ~0 on the last
    std::vector<double> tail;   // tail[k] = integral of the slope from pos[k] to +inf
    double value_at_inf = 0.0;

    // Valid for s >= every target's minimum attacker value, which is
    // >= pos.front() whenever events exist.
    double value(double s) const {
        if (pos.empty() || s >= pos.back()) return value_at_inf;
        if (s < pos.front()) s = pos.front();
        const std::size_t k =
            static_cast<std::size_t>(std::upper_bound(pos.begin(), pos.end(), s) - pos.begin()) - 1;
        return value_at_inf - (slope[k] * (pos[k + 1] - s) + tail[k + 1]);
    }
};

EnvelopeSum build_envelope_sum(const std::vector<Hull>& hulls) {
    EnvelopeSum sum;
    std::vector<std::pair<double, double>> events;  // (position, slope delta)
    for (const auto& h : hulls) {
        sum.value_at_inf += h.d[static_cast<std::size_t>(h.peak)];
        for (int i = 0; i < h.peak; ++i) {
            const double sl = (h.d[static_cast<std::size_t>(i + 1)] - h.d[static_cast<std::size_t>(i)]) /
                              (h.v[static_cast<std::size_t>(i + 1)] - h.v[static_cast<std::size_t>(i)]);
            events.emplace_back(h.v[static_cast<std::size_t>(i)], sl);
            events.emplace_back(h.v[static_cast<std::size_t>(i + 1)], -sl);
        }
    }
    if (events.empty()) return sum;
    std::sort(events.begin(), events.end());
    for (const auto& [p, ds] : events) {
        if (sum.pos.empty() || p != sum.pos.back()) {
            sum.pos.push_back(p);
            sum.slope.push_back(sum.slope.empty() ? ds : sum.slope.back() + ds);
        } else {
            sum.slope.back() += ds;
        }
    }
    const std::size_t m = sum.pos.size();
    sum.tail.assign(m + 1, 0.0);
    for (std::size_t k = m - 1; k-- > 0;)
        sum.tail[k] = sum.tail[k + 1] + sum.slope[k] * (sum.pos[k + 1] - sum.pos[k]);
    return sum;
}

struct ParametricContext {
    std::vector<Hull> relaxed;   // per target, coefficients without the attack term
    std::vector<Hull> attacked;  // per target, coefficients with the attack term
    EnvelopeSum sum;
    double feasibility_floor = 0.0;  // max over targets of min attacker value
};

double objective_coeff(const UtilityMatrices& u, const ConfigurationSet& configs,
                       const GamePriors& priors, int option, TargetId t) {
    return (1.0 - priors.r) * priors.g[static_cast<std::size_t>(t)] * u.u(option, t) -
           configs.cost(option, t);
}

ParametricContext build_parametric(const UtilityMatrices& u, const ConfigurationSet& configs,
                                   const GamePriors& priors) {
    const int n = u.num_targets;
    const int m = u.num_options;
    ParametricContext ctx;
    ctx.relaxed.reserve(static_cast<std::size_t>(n));
    ctx.attacked.reserve(static_cast<std::size_t>(n));
    std::vector<double> v(static_cast<std::size_t>(m)), base(static_cast<std::size_t>(m)),
        att(static_cast<std::size_t>(m));
    ctx.feasibility_floor = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < n; ++t) {
        for (int o = 0; o < m; ++o) {
            v[static_cast<std::size_t>(o)] = u.v(o, t);
            base[static_cast<std::size_t>(o)] = objective_coeff(u, configs, priors, o, t);
            att[static_cast<std::size_t>(o)] =
                base[static_cast<std::size_t>(o)] + priors.r * u.u(o, t);
        }
        ctx.relaxed.push_back(build_hull(v, base));
        ctx.attacked.push_back(build_hull(v, att));
        ctx.feasibility_floor = std::max(ctx.feasibility_floor, ctx.relaxed.back().vmin());
    }
    ctx.sum = build_envelope_sum(ctx.relaxed);
    return ctx;
}

struct ParametricOutcome {
    bool feasible = false;
    double objective = 0.0;
    double s_star = 0.0;
};

ParametricOutcome solve_parametric_target(const ParametricContext& ctx, TargetId t_hat) {
    const Hull& own = ctx.attacked[static_cast<std::size_t>(t_hat)];
    const Hull& own_relaxed = ctx.relaxed[static_cast<std::size_t>(t_hat)];
    ParametricOutcome out;
    const double lo = std::max(ctx.feasibility_floor, own.vmin());
    const double hi = own.vmax();
    if (lo > hi) return out;  // t_hat cannot be made attacker-optimal

    auto objective_at = [&](double s) {
        return ctx.sum.value(s) - hull_value_leq(own_relaxed, s) + hull_value(own, s);
    };

    // candidate breakpoints: global envelope events plus t_hat's own
    std::vector<double> cand;
    const auto& pos = ctx.sum.pos;
    const auto first = std::lower_bound(pos.begin(), pos.end(), lo);
    const auto last = std::upper_bound(pos.begin(), pos.end(), hi);
    cand.assign(first, last);
    for (double vv : own.v)
        if (vv >= lo && vv <= hi) cand.push_back(vv);
    for (double vv : own_relaxed.v)
        if (vv >= lo && vv <= hi) cand.push_back(vv);
    cand.push_back(lo);
    cand.push_back(hi);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    // concave in s: binary search on consecutive differences, then a
    // short local scan to absorb floating-point plateaus
    std::size_t a = 0, b = cand.size() - 1;
    while (b - a > 3) {
        const std::size_t mid = a + (b - a) / 2;
        if (objective_at(cand[mid]) < objective_at(cand[mid + 1]))
            a = mid + 1;
        else
            b = mid;
    }
    double best_s = cand[a];
    double best_val = objective_at(cand[a]);
    for (std::size_t i = a + 1; i <= b; ++i) {
        const double val = objective_at(cand[i]);
        if (val > best_val) {
            best_val = val;
            best_s = cand[i];
        }
    }
    out.feasible = true;
    out.objective = best_val;
    out.s_star = best_s;
    return out;
}

void apply_mix(DefensePolicy& policy, TargetId t, const Mix& mix) {
    policy.prob(mix.option_a, t) = mix.weight_a;
    if (mix.option_b >= 0) policy.prob(mix.option_b, t) += 1.0 - mix.weight_a;
}

DefensePolicy recover_parametric_policy(const ParametricContext& ctx, TargetId t_hat, double s,
                                        int num_options, int num_targets) {
    DefensePolicy policy = DefensePolicy::zeros(num_options, num_targets);
    for (TargetId t = 0; t < num_targets; ++t) {
        if (t == t_hat)
            apply_mix(policy, t, hull_mix(ctx.attacked[static_cast<std::size_t>(t)], s));
        else
            apply_mix(policy, t, hull_mix_leq(ctx.relaxed[static_cast<std::size_t>(t)], s));
    }
    return policy;
}

// ---------------------------------------------------------------------
// Simplex route (needed once a budget couples the targets).
// ---------------------------------------------------------------------

LinearProgram build_fixed_target_lp(const UtilityMatrices& u, const ConfigurationSet& configs,
                                    const GamePriors& priors, TargetId t_hat,
                                    const SolveOptions& options) {
    const int n = u.num_targets;
    const int m = u.num_options;
    LinearProgram lp;
    auto var = [&](TargetId t, int o) { return t * m + o; };
    for (TargetId t = 0; t < n; ++t)
        for (int o = 0; o < m; ++o) {
            double coeff = objective_coeff(u, configs, priors, o, t);
            if (t == t_hat) coeff += priors.r * u.u(o, t);
            lp.add_variable(coeff, 0.0, 1.0);
        }
    for (TargetId t = 0; t < n; ++t) {
        LinearProgram::Row row;
        row.relation = LinearProgram::Relation::Equal;
        row.rhs = 1.0;
        for (int o = 0; o < m; ++o) row.coeffs.emplace_back(var(t, o), 1.0);
        lp.add_row(std::move(row));
    }
    for (TargetId t = 0; t < n; ++t) {
        if (t == t_hat) continue;
        LinearProgram::Row row;
        row.relation = LinearProgram::Relation::LessEqual;
        row.rhs = 0.0;
        for (int o = 0; o < m; ++o) {
            row.coeffs.emplace_back(var(t, o), u.v(o, t));
            row.coeffs.emplace_back(var(t_hat, o), -u.v(o, t_hat));
        }
        lp.add_row(std::move(row));
    }
    if (options.budget) {
        if (options.budget_mode == BudgetMode::Total) {
            LinearProgram::Row row;
            row.relation = LinearProgram::Relation::LessEqual;
            row.rhs = *options.budget;
            for (TargetId t = 0; t < n; ++t)
                for (int o = 0; o < m; ++o)
                    if (configs.cost(o, t) != 0.0)
                        row.coeffs.emplace_back(var(t, o), configs.cost(o, t));
            lp.add_row(std::move(row));
        } else {
            for (TargetId t = 0; t < n; ++t) {
                LinearProgram::Row row;
                row.relation = LinearProgram::Relation::LessEqual;
                row.rhs = *options.budget;
                for (int o = 0; o < m; ++o)
                    if (configs.cost(o, t) != 0.0)
                        row.coeffs.emplace_back(var(t, o), configs.cost(o, t));
                lp.add_row(std::move(row));
            }
        }
    }
    return lp;
}

FixedTargetSolution solve_fixed_target_simplex(const UtilityMatrices& u,
                                               const ConfigurationSet& configs,
                                               const GamePriors& priors, TargetId t_hat,
                                               const SolveOptions& options) {
    const LinearProgram lp = build_fixed_target_lp(u, configs, priors, t_hat, options);
    const LpSolution sol = solve_lp(lp);
    FixedTargetSolution out;
    switch (sol.status) {
        case LpSolution::Status::Optimal:
            break;
        case LpSolution::Status::Infeasible:
            return out;
        case LpSolution::Status::Unbounded:
            throw SolverError("fixed-target LP reported unbounded; the model is malformed");
        case LpSolution::Status::IterationLimit:
            throw SolverError("simplex iteration limit reached on fixed-target LP");
    }
    out.feasible = true;
    out.objective = sol.objective;
    out.policy = DefensePolicy::zeros(u.num_options, u.num_targets);
    for (TargetId t = 0; t < u.num_targets; ++t)
        for (int o = 0; o < u.num_options; ++o)
            out.policy.prob(o, t) = sol.x[static_cast<std::size_t>(t) * u.num_options + o];
    return out;
}

void check_dimensions(const UtilityMatrices& u, const ConfigurationSet& configs,
                      const GamePriors& priors) {
    if (configs.num_targets() != u.num_targets || configs.num_options() != u.num_options)
        throw std::invalid_argument("utility matrices and configuration set disagree");
    priors.validate(u.num_targets);
}

bool use_parametric(const SolveOptions& options) {
    if (options.backend == LpBackend::Parametric) {
        if (options.budget)
            throw std::invalid_argument("parametric backend does not support budget constraints");
        return true;
    }
    if (options.backend == LpBackend::Simplex) return false;
    return !options.budget.has_value();
}

// Unconstrained LP used when r = 0: the attacker-preference rows are
// vacuous for the objective, so each target independently takes its
// best option mix (a pure option).
SolveResult solve_r0_shortcircuit(const UtilityMatrices& u, const ConfigurationSet& configs,
                                  const GamePriors& priors, const SolveOptions& options) {
    SolveResult result;
    result.shortcircuit_r0 = true;
    if (options.budget) {
        // single LP: objective plus budget row, no attacker constraints
        const int n = u.num_targets, m = u.num_options;
        LinearProgram lp;
        for (TargetId t = 0; t < n; ++t)
            for (int o = 0; o < m; ++o)
                lp.add_variable(objective_coeff(u, configs, priors, o, t), 0.0, 1.0);
        for (TargetId t = 0; t < n; ++t) {
            LinearProgram::Row row;
            row.relation = LinearProgram::Relation::Equal;
            row.rhs = 1.0;
            for (int o = 0; o < m; ++o) row.coeffs.emplace_back(t * m + o, 1.0);
            lp.add_row(std::move(row));
        }
        const int rows_per_budget = options.budget_mode == BudgetMode::Total ? 1 : n;
        for (int k = 0; k < rows_per_budget; ++k) {
            LinearProgram::Row row;
            row.relation = LinearProgram::Relation::LessEqual;
            row.rhs = *options.budget;
            for (TargetId t = 0; t < n; ++t) {
                if (options.budget_mode == BudgetMode::PerTarget && t != k) continue;
                for (int o = 0; o < m; ++o)
                    if (configs.cost(o, t) != 0.0)
                        row.coeffs.emplace_back(t * m + o, configs.cost(o, t));
            }
            lp.add_row(std::move(row));
        }
        const LpSolution sol = solve_lp(lp);
        if (sol.status == LpSolution::Status::Infeasible)
            throw NoFeasibleTargetError("budget below the cheapest configuration profile");
        if (sol.status != LpSolution::Status::Optimal)
            throw SolverError("simplex failed on the r=0 LP");
        result.policy = DefensePolicy::zeros(m, u.num_targets);
        for (TargetId t = 0; t < n; ++t)
            for (int o = 0; o < m; ++o)
                result.policy.prob(o, t) = sol.x[static_cast<std::size_t>(t) * m + o];
        result.objective = sol.objective;
    } else {
        result.policy = DefensePolicy::zeros(u.num_options, u.num_targets);
        double total = 0.0;
        for (TargetId t = 0; t < u.num_targets; ++t) {
            int best = 0;
            double best_coeff = objective_coeff(u, configs, priors, 0, t);
            for (int o = 1; o < u.num_options; ++o) {
                const double coeff = objective_coeff(u, configs, priors, o, t);
                if (coeff > best_coeff) {
                    best_coeff = coeff;
                    best = o;
                }
            }
            result.policy.prob(best, t) = 1.0;
            total += best_coeff;
        }
        result.objective = total;
    }
    const PolicyEvaluation eval = evaluate_policy(result.policy, u, configs, priors);
    result.attacked_target = eval.attacker_target;
    return result;
}

}  // namespace

GamePriors GamePriors::uniform(int n, double r) {
    GamePriors priors;
    priors.r = r;
    priors.g.assign(static_cast<std::size_t>(n), 1.0 / n);
    return priors;
}

void GamePriors::validate(int n) const {
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("attack prior r must lie in [0,1]");
    if (static_cast<int>(g.size()) != n)
        throw std::invalid_argument("failure distribution g has wrong length");
    double sum = 0.0;
    for (double x : g) {
        if (!(x >= 0.0)) throw std::invalid_argument("failure probabilities must be nonnegative");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("failure distribution g must sum to 1");
}

DefensePolicy DefensePolicy::zeros(int num_options, int num_targets) {
    DefensePolicy p;
    p.num_options = num_options;
    p.num_targets = num_targets;
    p.q.assign(static_cast<std::size_t>(num_options) * num_targets, 0.0);
    return p;
}

double DefensePolicy::expected_cost(const ConfigurationSet& configs) const {
    double total = 0.0;
    for (int t = 0; t < num_targets; ++t)
        for (int o = 0; o < num_options; ++o) total += configs.cost(o, t) * prob(o, t);
    return total;
}

FixedTargetSolution solve_fixed_target_lp(const UtilityMatrices& utilities,
                                          const ConfigurationSet& configs,
                                          const GamePriors& priors, TargetId t_hat,
                                          const SolveOptions& options) {
    check_dimensions(utilities, configs, priors);
    if (t_hat < 0 || t_hat >= utilities.num_targets)
        throw std::invalid_argument("attacked target out of range");
    if (!use_parametric(options))
        return solve_fixed_target_simplex(utilities, configs, priors, t_hat, options);
    const ParametricContext ctx = build_parametric(utilities, configs, priors);
    const ParametricOutcome outcome = solve_parametric_target(ctx, t_hat);
    FixedTargetSolution out;
    if (!outcome.feasible) return out;
    out.feasible = true;
    out.objective = outcome.objective;
    out.policy = recover_parametric_policy(ctx, t_hat, outcome.s_star, utilities.num_options,
                                           utilities.num_targets);
    return out;
}

SolveResult solve_multiple_lp(const UtilityMatrices& utilities, const ConfigurationSet& configs,
                              const GamePriors& priors, const SolveOptions& options) {
    check_dimensions(utilities, configs, priors);
    const auto start_time = std::chrono::steady_clock::now();
    if (priors.r == 0.0 && !options.disable_r0_shortcircuit) {
        SolveResult result = solve_r0_shortcircuit(utilities, configs, priors, options);
        result.solve_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start_time)
                              .count();
        return result;
    }

    const int n = utilities.num_targets;
    SolveResult result;
    result.per_lp.assign(static_cast<std::size_t>(n), {});

    if (use_parametric(options)) {
        const ParametricContext ctx = build_parametric(utilities, configs, priors);
        std::vector<ParametricOutcome> outcomes(static_cast<std::size_t>(n));
        constexpr int kTargetsPerBlock = 16;
        const std::size_t blocks =
            (static_cast<std::size_t>(n) + kTargetsPerBlock - 1) / kTargetsPerBlock;
        parallel_for_blocks(blocks, [&](std::size_t blk) {
            const int begin = static_cast<int>(blk) * kTargetsPerBlock;
            const int end = std::min(n, begin + kTargetsPerBlock);
            for (int t = begin; t < end; ++t)
                outcomes[static_cast<std::size_t>(t)] = solve_parametric_target(ctx, t);
        });
        int best = -1;
        for (int t = 0; t < n; ++t) {
            const auto& o = outcomes[static_cast<std::size_t>(t)];
            result.per_lp[static_cast<std::size_t>(t)] = {o.feasible, o.feasible ? o.objective : 0.0};
            if (o.feasible && (best < 0 || o.objective > outcomes[static_cast<std::size_t>(best)].objective))
                best = t;
        }
        if (best < 0)
            throw NoFeasibleTargetError("no target can be made attacker-optimal");
        result.attacked_target = best;
        result.objective = outcomes[static_cast<std::size_t>(best)].objective;
        result.policy =
            recover_parametric_policy(ctx, best, outcomes[static_cast<std::size_t>(best)].s_star,
                                      utilities.num_options, n);
    } else {
        std::vector<FixedTargetSolution> solutions(static_cast<std::size_t>(n));
        std::vector<std::string> errors(static_cast<std::size_t>(n));
        parallel_for_blocks(static_cast<std::size_t>(n), [&](std::size_t t) {
            try {
                solutions[t] = solve_fixed_target_simplex(utilities, configs, priors,
                                                          static_cast<TargetId>(t), options);
            } catch (const SolverError& e) {
                errors[t] = e.what();
            }
        });
        for (int t = 0; t < n; ++t)
            if (!errors[static_cast<std::size_t>(t)].empty())
                throw SolverError(errors[static_cast<std::size_t>(t)]);
        int best = -1;
        for (int t = 0; t < n; ++t) {
            const auto& s = solutions[static_cast<std::size_t>(t)];
            result.per_lp[static_cast<std::size_t>(t)] = {s.feasible, s.feasible ? s.objective : 0.0};
            if (s.feasible &&
                (best < 0 || s.objective > solutions[static_cast<std::size_t>(best)].objective))
                best = t;
        }
        if (best < 0)
            throw NoFeasibleTargetError(
                "every fixed-target LP is infeasible; the budget is below the cheapest "
                "configuration profile");
        result.attacked_target = best;
        result.objective = solutions[static_cast<std::size_t>(best)].objective;
        result.policy = std::move(solutions[static_cast<std::size_t>(best)].policy);
    }
    result.solve_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_time)
            .count();
    return result;
}

PolicyEvaluation evaluate_policy(const DefensePolicy& policy, const UtilityMatrices& utilities,
                                 const ConfigurationSet& configs, const GamePriors& priors) {
    check_dimensions(utilities, configs, priors);
    if (policy.num_targets != utilities.num_targets || policy.num_options != utilities.num_options)
        throw std::invalid_argument("policy dimensions disagree with utilities");
    const int n = utilities.num_targets;
    const int m = utilities.num_options;

    double random_term = 0.0;
    double cost = 0.0;
    std::vector<double> attack_value(static_cast<std::size_t>(n), 0.0);
    std::vector<double> defend_value(static_cast<std::size_t>(n), 0.0);
    for (TargetId t = 0; t < n; ++t) {
        double va = 0.0, vd = 0.0;
        for (int o = 0; o < m; ++o) {
            const double q = policy.prob(o, t);
            va += utilities.v(o, t) * q;
            vd += utilities.u(o, t) * q;
            cost += configs.cost(o, t) * q;
        }
        attack_value[static_cast<std::size_t>(t)] = va;
        defend_value[static_cast<std::size_t>(t)] = vd;
        random_term += priors.g[static_cast<std::size_t>(t)] * vd;
    }
    double best_attacker = attack_value[0];
    double best_defender = defend_value[0];
    TargetId best_target = 0;
    for (TargetId t = 1; t < n; ++t) {
        const double va = attack_value[static_cast<std::size_t>(t)];
        const double vd = defend_value[static_cast<std::size_t>(t)];
        const double tie = kTieTol * std::max(1.0, std::abs(best_attacker));
        if (va > best_attacker + tie) {
            best_attacker = va;
            best_defender = vd;
            best_target = t;
        } else if (va > best_attacker - tie && vd > best_defender + kTieTol) {
            // attacker indifferent: break toward the defender
            best_attacker = std::max(best_attacker, va);
            best_defender = vd;
            best_target = t;
        }
    }

    PolicyEvaluation eval;
    eval.attacker_target = best_target;
    eval.expected_cost = cost;
    eval.defender_utility = priors.r * best_defender + (1.0 - priors.r) * random_term - cost;
    eval.expected_loss = -(priors.r * best_defender + (1.0 - priors.r) * random_term);
    return eval;
}

}  // namespace interdep

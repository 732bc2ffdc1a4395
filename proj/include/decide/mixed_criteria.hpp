#pragma once

// Criteria over randomized choice: the planner picks a point of the
// choice-probability simplex instead of a single action. Maximin and
// minimax regret become small LPs in (delta, t); the subjective expected
// welfare objective is linear in delta and so is maximized at a vertex.

#include "decide/pure_criteria.hpp"
#include "decide/simplex.hpp"

namespace decide {

namespace detail {

/// Projects an LP solution onto the simplex, removing round-off.
template <typename Scalar>
ChoiceDistribution<Scalar> clean_delta(const Vector<Scalar>& raw) {
    Vector<Scalar> d = raw.cwiseMax(Scalar(0)).cwiseMin(Scalar(1));
    const Scalar total = d.sum();
    if (!(total > Scalar(0))) throw SolverError("LP returned an empty choice distribution");
    d /= total;
    return ChoiceDistribution<Scalar>(std::move(d));
}

template <typename Scalar>
LpResult<Scalar> solve_or_throw(const LinearProgram<Scalar>& lp, const char* what) {
    auto res = solve_lp(lp);
    if (res.status != LpStatus::Optimal)
        throw SolverError(std::string(what) + ": LP was " + to_string(res.status));
    return res;
}

/// Base LP over (delta_0..delta_{n-1}, t) with delta on the simplex and t free.
template <typename Scalar>
LinearProgram<Scalar> simplex_lp(Index num_actions, Sense sense) {
    LinearProgram<Scalar> lp(num_actions + 1, sense);
    lp.set_free(num_actions);
    Vector<Scalar> ones = Vector<Scalar>::Ones(num_actions + 1);
    ones[num_actions] = Scalar(0);
    lp.add_constraint(ones, Relation::Equal, Scalar(1));
    return lp;
}

// Coordinate spread below which the optimal face is treated as a point.
inline constexpr double face_spread = 1e-6;
// Slack allowed on the optimal value when probing the optimal face.
inline constexpr double face_slack = 1e-10;

/// Whether the set of optimal delta has more than one point. `add_rows`
/// appends the criterion's per-state constraints with t pinned to the
/// optimal value; each coordinate is then pushed to both extremes.
template <typename Scalar, typename AddRows>
bool optimal_face_is_nontrivial(Index num_actions, AddRows&& add_rows) {
    if (num_actions < 2) return false;
    for (Index d = 0; d < num_actions; ++d) {
        Scalar extremes[2];
        for (int k = 0; k < 2; ++k) {
            auto lp = simplex_lp<Scalar>(num_actions, k == 0 ? Sense::Maximize : Sense::Minimize);
            lp.lower[num_actions] = lp.upper[num_actions] = Scalar(0);
            lp.objective[d] = Scalar(1);
            add_rows(lp);
            auto res = solve_lp(lp);
            if (res.status != LpStatus::Optimal) return false;
            extremes[k] = res.value;
        }
        if (extremes[0] - extremes[1] > Scalar(face_spread)) return true;
    }
    return false;
}

} // namespace detail

/// Maximizes posterior expected welfare over the simplex. The optimum is
/// reported at the lowest-index optimal vertex; `tied` marks a nontrivial
/// optimal face.
template <typename Scalar>
CriterionSolution<Scalar> solve_bayes_mixed(const DecisionProblem<Scalar>& problem,
                                            const Prior<Scalar>& prior, const RegionScope& scope) {
    detail::check_prior(problem, prior);
    const Vector<Scalar> post = detail::posterior_weights(prior, scope);
    const Vector<Scalar> scores = detail::scope_welfare(problem, scope) * post;

    const Index n = problem.num_actions();
    LinearProgram<Scalar> lp(n, Sense::Maximize);
    lp.objective = scores;
    lp.add_constraint(Vector<Scalar>::Ones(n), Relation::Equal, Scalar(1));
    const auto res = detail::solve_or_throw(lp, "subjective expected welfare");

    Index chosen = -1;
    int optimal = 0;
    for (Index c = 0; c < n; ++c) {
        if (scores[c] >= res.value - Scalar(tol::welfare)) {
            if (chosen < 0) chosen = c;
            ++optimal;
        }
    }
    if (chosen < 0) throw SolverError("no action attains the LP optimum");
    return CriterionSolution<Scalar>(ChoiceDistribution<Scalar>::vertex(n, chosen), scores[chosen],
                                     optimal > 1);
}

/// max_delta min_{s in scope} sum_d delta_d w(d, s).
template <typename Scalar>
CriterionSolution<Scalar> solve_maximin_mixed(const DecisionProblem<Scalar>& problem,
                                              const RegionScope& scope) {
    const Matrix<Scalar> w = detail::scope_welfare(problem, scope);
    const Index n = problem.num_actions();

    // t - sum_d delta_d w(d, s) <= shift
    auto add_rows = [&](LinearProgram<Scalar>& lp, Scalar shift) {
        for (Index k = 0; k < w.cols(); ++k) {
            Vector<Scalar> row(n + 1);
            row.head(n) = -w.col(k);
            row[n] = Scalar(1);
            lp.add_constraint(row, Relation::LessEqual, shift);
        }
    };

    auto lp = detail::simplex_lp<Scalar>(n, Sense::Maximize);
    lp.objective[n] = Scalar(1);
    add_rows(lp, Scalar(0));
    const auto res = detail::solve_or_throw(lp, "maximin");

    auto delta = detail::clean_delta<Scalar>(res.x.head(n));
    const Scalar value = (delta.probs().transpose() * w).minCoeff();
    const bool tied = detail::optimal_face_is_nontrivial<Scalar>(n, [&](LinearProgram<Scalar>& p) {
        add_rows(p, -(value - Scalar(detail::face_slack)));
    });
    return CriterionSolution<Scalar>(std::move(delta), value, tied);
}

/// min_delta max_{s in scope} [max_d w(d, s) - sum_d delta_d w(d, s)].
template <typename Scalar>
CriterionSolution<Scalar> solve_mmr_mixed(const DecisionProblem<Scalar>& problem,
                                          const RegionScope& scope) {
    const Matrix<Scalar> w = detail::scope_welfare(problem, scope);
    const Vector<Scalar> best = w.colwise().maxCoeff().transpose();
    const Index n = problem.num_actions();

    // -sum_d delta_d w(d, s) - t <= shift - max_d w(d, s)
    auto add_rows = [&](LinearProgram<Scalar>& lp, Scalar shift) {
        for (Index k = 0; k < w.cols(); ++k) {
            Vector<Scalar> row(n + 1);
            row.head(n) = -w.col(k);
            row[n] = Scalar(-1);
            lp.add_constraint(row, Relation::LessEqual, shift - best[k]);
        }
    };

    auto lp = detail::simplex_lp<Scalar>(n, Sense::Minimize);
    lp.objective[n] = Scalar(1);
    add_rows(lp, Scalar(0));
    const auto res = detail::solve_or_throw(lp, "minimax regret");

    auto delta = detail::clean_delta<Scalar>(res.x.head(n));
    const Vector<Scalar> ew = (delta.probs().transpose() * w).transpose();
    const Scalar value = std::max(Scalar(0), (best - ew).maxCoeff());
    const bool tied = detail::optimal_face_is_nontrivial<Scalar>(n, [&](LinearProgram<Scalar>& p) {
        add_rows(p, value + Scalar(detail::face_slack));
    });
    return CriterionSolution<Scalar>(std::move(delta), value, tied);
}

template <typename Scalar>
CriterionSolution<Scalar> solve_mixed(const DecisionProblem<Scalar>& problem, Criterion criterion,
                                      const RegionScope& scope, const Prior<Scalar>* prior = nullptr) {
    switch (criterion) {
    case Criterion::Bayes:
        if (!prior) throw InputError("the Bayes criterion requires a prior");
        return solve_bayes_mixed(problem, *prior, scope);
    case Criterion::Maximin: return solve_maximin_mixed(problem, scope);
    case Criterion::MinimaxRegret: return solve_mmr_mixed(problem, scope);
    }
    throw InputError("unknown criterion");
}

/// Ex-ante randomized rule: a choice distribution for every sampling
/// distribution that may be revealed, solved block by block and aggregated
/// over S.
template <typename Scalar>
ExAnteSolution<Scalar> solve_exante_mixed(const DecisionProblem<Scalar>& problem,
                                          const IdentificationPartition& partition,
                                          Criterion criterion, const Prior<Scalar>* prior = nullptr) {
    return detail::solve_exante(
        problem, partition, criterion, prior,
        [&](const RegionScope& scope) { return solve_mixed(problem, criterion, scope, prior); },
        [&](const RegionScope& scope) { return solve_maximin_mixed(problem, scope); });
}

/// Regret of delta in each state of the scope, in scope order.
template <typename Scalar>
Vector<Scalar> regret_profile(const DecisionProblem<Scalar>& problem,
                              const ChoiceDistribution<Scalar>& delta, const RegionScope& scope) {
    Vector<Scalar> out(scope.size());
    Index k = 0;
    for (Index s : scope) out[k++] = regret(problem, delta, s);
    return out;
}

} // namespace decide

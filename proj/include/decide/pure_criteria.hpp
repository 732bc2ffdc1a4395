#pragma once

// Criteria over single (non-randomized) actions: subjective expected
// welfare, maximin and minimax regret on a region, and the ex-ante
// decision functions that pick one action per identification region.

#include "decide/core.hpp"

#include <optional>

namespace decide {

enum class Criterion { Bayes, Maximin, MinimaxRegret };

inline const char* to_string(Criterion c) {
    switch (c) {
    case Criterion::Bayes: return "bayes";
    case Criterion::Maximin: return "maximin";
    case Criterion::MinimaxRegret: return "mmr";
    }
    return "?";
}

/// Per-block solutions of an ex-ante problem and the aggregated value over S.
template <typename Scalar = double>
struct ExAnteSolution {
    std::vector<CriterionSolution<Scalar>> blocks; // indexed like partition.groups()
    Scalar value;
    std::vector<std::string> diagnostics;

    /// Choice distribution used when the region containing `state` is revealed.
    const ChoiceDistribution<Scalar>& delta_for(const IdentificationPartition& p, Index state) const {
        return blocks.at(static_cast<std::size_t>(p.block_of(state))).delta;
    }
};

namespace detail {

/// Lowest index whose score is within tol::welfare of the best one, and
/// whether another index also is.
template <typename Scalar>
std::pair<Index, bool> select_best(const Vector<Scalar>& scores, bool maximize) {
    const Scalar best = maximize ? scores.maxCoeff() : scores.minCoeff();
    Index chosen = -1;
    int count = 0;
    for (Index i = 0; i < scores.size(); ++i) {
        if (std::abs(scores[i] - best) <= Scalar(tol::welfare)) {
            if (chosen < 0) chosen = i;
            ++count;
        }
    }
    return {chosen, count > 1};
}

template <typename Scalar>
Scalar prior_mass(const Prior<Scalar>& prior, const RegionScope& scope) {
    Scalar m(0);
    for (Index s : scope) m += prior[s];
    return m;
}

/// The prior truncated to the scope and renormalized; entry k belongs to
/// scope.states()[k].
template <typename Scalar>
Vector<Scalar> posterior_weights(const Prior<Scalar>& prior, const RegionScope& scope) {
    const Scalar mass = prior_mass(prior, scope);
    if (!(mass > Scalar(0)))
        throw DegeneratePosteriorError("prior assigns zero mass to the region");
    Vector<Scalar> post(scope.size());
    Index k = 0;
    for (Index s : scope) post[k++] = prior[s] / mass;
    return post;
}

template <typename Scalar>
void check_prior(const DecisionProblem<Scalar>& problem, const Prior<Scalar>& prior) {
    if (prior.size() != problem.num_states())
        throw InputError("prior length does not match the number of states");
}

/// Welfare columns restricted to the scope: |C| x |scope|.
template <typename Scalar>
Matrix<Scalar> scope_welfare(const DecisionProblem<Scalar>& problem, const RegionScope& scope) {
    check_scope(problem, scope);
    Matrix<Scalar> w(problem.num_actions(), scope.size());
    Index k = 0;
    for (Index s : scope) w.col(k++) = problem.welfare().col(s);
    return w;
}

/// Regret table restricted to the scope: max_d w(d, s) - w(c, s).
template <typename Scalar>
Matrix<Scalar> scope_regret(const DecisionProblem<Scalar>& problem, const RegionScope& scope) {
    Matrix<Scalar> w = scope_welfare(problem, scope);
    return (-w).rowwise() + w.colwise().maxCoeff();
}

template <typename Scalar>
CriterionSolution<Scalar> vertex_solution(const DecisionProblem<Scalar>& problem,
                                          const Vector<Scalar>& scores, bool maximize) {
    auto [c, tied] = select_best(scores, maximize);
    return CriterionSolution<Scalar>(ChoiceDistribution<Scalar>::vertex(problem.num_actions(), c),
                                     scores[c], tied);
}

/// Combines per-block values into the ex-ante value over S. Bayes weights
/// by prior mass; maximin takes the worst block; MMR the largest regret.
template <typename Scalar>
Scalar aggregate_blocks(Criterion criterion, const std::vector<Scalar>& values,
                        const std::vector<Scalar>& masses) {
    Scalar out(0);
    switch (criterion) {
    case Criterion::Bayes:
        for (std::size_t b = 0; b < values.size(); ++b) out += masses[b] * values[b];
        return out;
    case Criterion::Maximin:
        return *std::min_element(values.begin(), values.end());
    case Criterion::MinimaxRegret:
        return *std::max_element(values.begin(), values.end());
    }
    return out;
}

} // namespace detail

/// Maximizes posterior expected welfare over single actions; the posterior
/// is the prior truncated to the scope.
template <typename Scalar>
CriterionSolution<Scalar> bayes_pure(const DecisionProblem<Scalar>& problem,
                                     const Prior<Scalar>& prior, const RegionScope& scope) {
    detail::check_prior(problem, prior);
    const Vector<Scalar> post = detail::posterior_weights(prior, scope);
    const Vector<Scalar> scores = detail::scope_welfare(problem, scope) * post;
    return detail::vertex_solution(problem, scores, true);
}

template <typename Scalar>
CriterionSolution<Scalar> maximin_pure(const DecisionProblem<Scalar>& problem,
                                       const RegionScope& scope) {
    const Vector<Scalar> scores = detail::scope_welfare(problem, scope).rowwise().minCoeff();
    return detail::vertex_solution(problem, scores, true);
}

template <typename Scalar>
CriterionSolution<Scalar> mmr_pure(const DecisionProblem<Scalar>& problem,
                                   const RegionScope& scope) {
    const Vector<Scalar> scores = detail::scope_regret(problem, scope).rowwise().maxCoeff();
    return detail::vertex_solution(problem, scores, false);
}

template <typename Scalar>
CriterionSolution<Scalar> solve_pure(const DecisionProblem<Scalar>& problem, Criterion criterion,
                                     const RegionScope& scope, const Prior<Scalar>* prior = nullptr) {
    switch (criterion) {
    case Criterion::Bayes:
        if (!prior) throw InputError("the Bayes criterion requires a prior");
        return bayes_pure(problem, *prior, scope);
    case Criterion::Maximin: return maximin_pure(problem, scope);
    case Criterion::MinimaxRegret: return mmr_pure(problem, scope);
    }
    throw InputError("unknown criterion");
}

namespace detail {

/// Shared ex-ante driver: solves every block with `solve_block` and
/// aggregates. Bayes blocks without prior mass fall back to `fallback`.
template <typename Scalar, typename SolveBlock, typename Fallback>
ExAnteSolution<Scalar> solve_exante(const DecisionProblem<Scalar>& problem,
                                    const IdentificationPartition& partition, Criterion criterion,
                                    const Prior<Scalar>* prior, SolveBlock&& solve_block,
                                    Fallback&& fallback) {
    if (partition.num_states() != problem.num_states())
        throw InputError("partition does not cover the problem's states");
    if (criterion == Criterion::Bayes) {
        if (!prior) throw InputError("the Bayes criterion requires a prior");
        check_prior(problem, *prior);
    }

    std::vector<CriterionSolution<Scalar>> blocks;
    std::vector<Scalar> values, masses;
    std::vector<std::string> diagnostics;
    for (Index b = 0; b < partition.num_blocks(); ++b) {
        const RegionScope scope = RegionScope::block(partition, b);
        Scalar mass(1);
        if (criterion == Criterion::Bayes) {
            mass = prior_mass(*prior, scope);
            if (!(mass > Scalar(0))) {
                auto sol = fallback(scope);
                const std::string note = "block " + std::to_string(b) +
                                         " has zero prior mass; action taken from in-block maximin";
                sol.diagnostics.push_back(note);
                diagnostics.push_back(note);
                values.push_back(Scalar(0));
                masses.push_back(Scalar(0));
                blocks.push_back(std::move(sol));
                continue;
            }
        }
        auto sol = solve_block(scope);
        values.push_back(sol.value);
        masses.push_back(mass);
        blocks.push_back(std::move(sol));
    }
    const Scalar value = aggregate_blocks(criterion, values, masses);
    return ExAnteSolution<Scalar>{std::move(blocks), value, std::move(diagnostics)};
}

} // namespace detail

/// Ex-ante pure decision function: one action per identification region,
/// chosen block by block. Every singleton partition yields the per-state
/// argmax.
template <typename Scalar>
ExAnteSolution<Scalar> exante_pure(const DecisionProblem<Scalar>& problem,
                                   const IdentificationPartition& partition, Criterion criterion,
                                   const Prior<Scalar>* prior = nullptr) {
    return detail::solve_exante(
        problem, partition, criterion, prior,
        [&](const RegionScope& scope) { return solve_pure(problem, criterion, scope, prior); },
        [&](const RegionScope& scope) { return maximin_pure(problem, scope); });
}

} // namespace decide

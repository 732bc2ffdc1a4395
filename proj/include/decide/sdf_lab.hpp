#pragma once

// Explicit statistical decision functions: maps from sample realizations
// to actions. Given the sampling distribution, an SDF's expected welfare
// depends on it only through the choice probabilities it induces; this
// header computes those exactly, estimates welfare by simulation, and
// builds threshold rules that realize any target choice distribution.

#include "decide/counter_rng.hpp"
#include "decide/mixed_criteria.hpp"

#include <thread>

namespace decide {

/// Action for every point of a finite sample space.
struct FiniteTable {
    std::vector<Index> action_of_point;
    Index num_actions;
};

/// Rule on psi in [0, 1): action k is chosen when psi lies in
/// [cuts[k-1], cuts[k]), with cuts[-1] = 0 and cuts[K-1] = 1 implied.
template <typename Scalar = double>
struct Threshold {
    std::vector<Scalar> cuts;
};

template <typename Scalar = double>
class StatisticalDecisionFunction {
  public:
    static StatisticalDecisionFunction table(std::vector<Index> action_of_point, Index num_actions) {
        if (num_actions < 1) throw InputError("decision function needs at least one action");
        if (action_of_point.empty()) throw InputError("decision table is empty");
        for (Index c : action_of_point) {
            if (c < 0 || c >= num_actions) throw InputError("decision table maps to an unknown action");
        }
        StatisticalDecisionFunction f;
        f.rule_ = FiniteTable{std::move(action_of_point), num_actions};
        return f;
    }

    static StatisticalDecisionFunction threshold(std::vector<Scalar> cuts) {
        Scalar prev(0);
        for (Scalar t : cuts) {
            if (!(t >= prev) || t > Scalar(1))
                throw InputError("threshold cut-points must be nondecreasing within [0, 1]");
            prev = t;
        }
        StatisticalDecisionFunction f;
        f.rule_ = Threshold<Scalar>{std::move(cuts)};
        return f;
    }

    /// Always chooses `action`, ignoring the data.
    static StatisticalDecisionFunction constant(Index action, Index num_actions, Index num_points) {
        return table(std::vector<Index>(static_cast<std::size_t>(num_points), action), num_actions);
    }

    bool is_table() const { return std::holds_alternative<FiniteTable>(rule_); }
    const FiniteTable& as_table() const { return std::get<FiniteTable>(rule_); }
    const Threshold<Scalar>& as_threshold() const { return std::get<Threshold<Scalar>>(rule_); }

    Index num_actions() const {
        return is_table() ? as_table().num_actions
                          : static_cast<Index>(as_threshold().cuts.size()) + 1;
    }

    /// Action chosen at sample point `point` (finite tables).
    Index action_at_point(Index point) const {
        return as_table().action_of_point.at(static_cast<std::size_t>(point));
    }

    /// Action chosen at psi in [0, 1) (threshold rules).
    Index action_at(Scalar psi) const {
        const auto& cuts = as_threshold().cuts;
        const auto it = std::upper_bound(cuts.begin(), cuts.end(), psi);
        return static_cast<Index>(std::distance(cuts.begin(), it));
    }

  private:
    StatisticalDecisionFunction() = default;
    std::variant<FiniteTable, Threshold<Scalar>> rule_;
};

template <typename Scalar = double>
struct MonteCarloEstimate {
    Scalar estimate;
    Scalar std_error;
};

template <typename Scalar = double>
struct FamilyScore {
    std::size_t index;            // position in the evaluated family
    Scalar score;                 // criterion value of this SDF
    Vector<Scalar> welfare;       // expected welfare per scope state
};

namespace detail {

template <typename Scalar>
void check_compatible(const StatisticalDecisionFunction<Scalar>& sdf,
                      const SamplingModel<Scalar>& model, Index state) {
    if (state < 0 || state >= model.num_states())
        throw InputError("state index " + std::to_string(state) + " out of range");
    if (sdf.is_table() != model.is_finite())
        throw InputError(sdf.is_table()
                             ? "a decision table needs a finite sample space"
                             : "a threshold rule needs the unit-interval sample space");
    if (sdf.is_table() &&
        static_cast<Index>(sdf.as_table().action_of_point.size()) != model.num_points())
        throw InputError("decision table does not cover the sample space exactly once");
}

template <typename Scalar>
void check_problem(const StatisticalDecisionFunction<Scalar>& sdf,
                   const DecisionProblem<Scalar>& problem) {
    if (sdf.num_actions() != problem.num_actions())
        throw InputError("decision function and problem disagree on the number of actions");
}

} // namespace detail

/// Q_s[c(psi) = d] for every action d, computed exactly: mass summation on a
/// finite space, segment lengths on [0, 1].
template <typename Scalar>
ChoiceDistribution<Scalar> choice_probabilities(const StatisticalDecisionFunction<Scalar>& sdf,
                                                const SamplingModel<Scalar>& model, Index state) {
    detail::check_compatible(sdf, model, state);
    Vector<Scalar> probs = Vector<Scalar>::Zero(sdf.num_actions());
    if (sdf.is_table()) {
        const auto& q = model.distribution(state);
        for (Index p = 0; p < q.size(); ++p) probs[sdf.action_at_point(p)] += q[p];
        // rounding in the accumulated mass can overshoot 1 by an ulp
        probs = probs.cwiseMin(Scalar(1));
    } else {
        Scalar prev(0);
        const auto& cuts = sdf.as_threshold().cuts;
        for (std::size_t k = 0; k < cuts.size(); ++k) {
            probs[static_cast<Index>(k)] = cuts[k] - prev;
            prev = cuts[k];
        }
        probs[probs.size() - 1] = Scalar(1) - prev;
    }
    return ChoiceDistribution<Scalar>(std::move(probs));
}

template <typename Scalar>
Scalar sdf_expected_welfare(const StatisticalDecisionFunction<Scalar>& sdf,
                            const SamplingModel<Scalar>& model,
                            const DecisionProblem<Scalar>& problem, Index state) {
    detail::check_problem(sdf, problem);
    return expected_welfare(problem, choice_probabilities(sdf, model, state), state);
}

/// Simulates `reps` independent samples psi ~ Q_state and averages the
/// realized welfare w[c(psi), state]. Draw i always uses counter i of the
/// seeded stream and partial sums are merged in a fixed chunk order, so the
/// result is bit-identical for any number of workers.
template <typename Scalar>
MonteCarloEstimate<Scalar> monte_carlo_expected_welfare(
    const StatisticalDecisionFunction<Scalar>& sdf, const SamplingModel<Scalar>& model,
    const DecisionProblem<Scalar>& problem, Index state, std::int64_t reps, std::uint64_t seed,
    int workers = 1) {
    if (reps < 1) throw InputError("reps must be positive");
    if (workers < 1) throw InputError("workers must be positive");
    detail::check_problem(sdf, problem);
    detail::check_compatible(sdf, model, state);
    problem.check_state(state);

    const CounterStream stream(seed);
    Vector<Scalar> cdf;
    if (model.is_finite()) {
        const auto& q = model.distribution(state);
        cdf.resize(q.size());
        Scalar acc(0);
        for (Index p = 0; p < q.size(); ++p) cdf[p] = (acc += q[p]);
    }
    Index last_support = cdf.size() - 1;
    while (last_support > 0 && model.distribution(state)[last_support] <= Scalar(0)) --last_support;

    auto draw = [&](std::uint64_t i) -> Scalar {
        const double u = stream.uniform(i);
        Index action;
        if (sdf.is_table()) {
            const auto* first = cdf.data();
            const auto* hit = std::upper_bound(first, first + cdf.size(), Scalar(u));
            Index point = static_cast<Index>(hit - first);
            if (point > last_support) point = last_support;
            action = sdf.action_at_point(point);
        } else {
            action = sdf.action_at(Scalar(u));
        }
        return problem.welfare(action, state);
    };

    // Shifting by the first draw keeps the variance computation stable and
    // makes a constant rule come out exact.
    const Scalar shift = draw(0);
    constexpr std::int64_t chunk = 1 << 14;
    const std::int64_t n_chunks = (reps + chunk - 1) / chunk;
    std::vector<Scalar> sums(static_cast<std::size_t>(n_chunks)), squares(sums.size());

    auto run = [&](int worker) {
        for (std::int64_t k = worker; k < n_chunks; k += workers) {
            Scalar s(0), s2(0);
            const std::int64_t end = std::min(reps, (k + 1) * chunk);
            for (std::int64_t i = k * chunk; i < end; ++i) {
                const Scalar x = draw(static_cast<std::uint64_t>(i)) - shift;
                s += x;
                s2 += x * x;
            }
            sums[static_cast<std::size_t>(k)] = s;
            squares[static_cast<std::size_t>(k)] = s2;
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }

    Scalar s(0), s2(0);
    for (std::size_t k = 0; k < sums.size(); ++k) {
        s += sums[k];
        s2 += squares[k];
    }
    const auto n = static_cast<Scalar>(reps);
    const Scalar mean_dev = s / n;
    Scalar se(0);
    if (reps > 1) {
        const Scalar var = std::max(Scalar(0), (s2 - s * mean_dev) / (n - Scalar(1)));
        se = std::sqrt(var / n);
    }
    return {shift + mean_dev, se};
}

/// Threshold rule on the unit interval whose cut-points are the cumulative
/// sums of the target, so that it chooses each action with exactly the
/// target probability in every state.
template <typename Scalar>
StatisticalDecisionFunction<Scalar> randomization_device(const ChoiceDistribution<Scalar>& target) {
    std::vector<Scalar> cuts;
    Scalar acc(0);
    for (Index k = 0; k + 1 < target.size(); ++k) {
        acc += target[k];
        cuts.push_back(std::min(acc, Scalar(1)));
    }
    return StatisticalDecisionFunction<Scalar>::threshold(std::move(cuts));
}

/// Scores each SDF of a family by its state-dependent expected welfare over
/// the scope: worst-case welfare (maximin), worst-case regret (MMR) or
/// posterior-average welfare (Bayes). Returns the family best first; equal
/// scores keep family order.
template <typename Scalar>
std::vector<FamilyScore<Scalar>> evaluate_sdf_family(
    const std::vector<StatisticalDecisionFunction<Scalar>>& sdfs,
    const SamplingModel<Scalar>& model, const DecisionProblem<Scalar>& problem,
    const RegionScope& scope, Criterion criterion, const Prior<Scalar>* prior = nullptr) {
    if (sdfs.empty()) throw InputError("decision function family is empty");
    check_scope(problem, scope);
    Vector<Scalar> post;
    if (criterion == Criterion::Bayes) {
        if (!prior) throw InputError("the Bayes criterion requires a prior");
        detail::check_prior(problem, *prior);
        post = detail::posterior_weights(*prior, scope);
    }

    std::vector<FamilyScore<Scalar>> out;
    for (std::size_t i = 0; i < sdfs.size(); ++i) {
        Vector<Scalar> ew(scope.size());
        Vector<Scalar> rg(scope.size());
        Index k = 0;
        for (Index s : scope) {
            ew[k] = sdf_expected_welfare(sdfs[i], model, problem, s);
            rg[k] = std::max(Scalar(0), problem.best_welfare(s) - ew[k]);
            ++k;
        }
        Scalar score(0);
        switch (criterion) {
        case Criterion::Bayes: score = ew.dot(post); break;
        case Criterion::Maximin: score = ew.minCoeff(); break;
        case Criterion::MinimaxRegret: score = rg.maxCoeff(); break;
        }
        out.push_back({i, score, std::move(ew)});
    }
    const bool lower_is_better = criterion == Criterion::MinimaxRegret;
    std::stable_sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
        return lower_is_better ? x.score < y.score : x.score > y.score;
    });
    return out;
}

} // namespace decide

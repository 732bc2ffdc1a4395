#pragma once

// Closed forms for two-action problems {a, b}. Following the usual
// convention for this setting, a randomized choice is summarized by a
// single number delta_b = P(choose b), so delta_a = 1 - delta_b.

#include "decide/mixed_criteria.hpp"

#include <optional>

namespace decide {

/// Welfare extremes of both actions over a region and the largest regret
/// each action can suffer there.
template <typename Scalar = double>
struct BinaryRegionSummary {
    Scalar alpha_lower; // min_s w(a, s)
    Scalar alpha_upper; // max_s w(a, s)
    Scalar beta_lower;  // min_s w(b, s)
    Scalar beta_upper;  // max_s w(b, s)
    // max of w(a,s) - w(b,s) over states where a is strictly better; this
    // is the regret of choosing b there. Empty when no such state exists.
    std::optional<Scalar> max_regret_a;
    // Same with the roles of a and b exchanged.
    std::optional<Scalar> max_regret_b;
    bool ambiguous = false;
    // Some single state attains both minima (alpha_lower, beta_lower).
    bool lower_pair_feasible = false;
    // Both corner pairs (alpha_lower, beta_upper) and (alpha_upper,
    // beta_lower) are realized by some state.
    bool rectangular = false;
};

template <typename Scalar = double>
struct BinaryMmr {
    Scalar delta_b;
    Scalar max_regret;
};

template <typename Scalar = double>
struct RectangularMmr {
    Scalar delta_b;
    Scalar max_regret;
    bool premise_holds;
    std::optional<std::string> warning;
};

template <typename Scalar = double>
struct RegretComparison {
    Scalar vertex_best;
    Scalar mixed_best;
    Scalar improvement;
};

namespace detail {

template <typename Scalar>
void check_binary(const DecisionProblem<Scalar>& problem) {
    if (problem.num_actions() != 2)
        throw InputError("binary analysis needs exactly two actions, got " +
                         std::to_string(problem.num_actions()));
}

template <typename Scalar>
bool near(Scalar x, Scalar y) {
    return std::abs(x - y) <= Scalar(tol::welfare);
}

template <typename Scalar>
void check_ambiguous(const BinaryRegionSummary<Scalar>& s) {
    if (!s.ambiguous || !s.max_regret_a || !s.max_regret_b)
        throw PreconditionError("region is not ambiguous: one action weakly dominates");
}

} // namespace detail

template <typename Scalar>
BinaryRegionSummary<Scalar> summarize_binary(const DecisionProblem<Scalar>& problem,
                                             const RegionScope& scope) {
    detail::check_binary(problem);
    const Matrix<Scalar> w = detail::scope_welfare(problem, scope);
    const auto a = w.row(0), b = w.row(1);

    BinaryRegionSummary<Scalar> out{a.minCoeff(), a.maxCoeff(), b.minCoeff(), b.maxCoeff(),
                                    std::nullopt, std::nullopt};
    bool corner_low_high = false, corner_high_low = false;
    for (Index k = 0; k < w.cols(); ++k) {
        const Scalar diff = a[k] - b[k];
        if (diff > Scalar(tol::welfare))
            out.max_regret_a = out.max_regret_a ? std::max(*out.max_regret_a, diff) : diff;
        else if (-diff > Scalar(tol::welfare))
            out.max_regret_b = out.max_regret_b ? std::max(*out.max_regret_b, -diff) : -diff;

        if (detail::near(a[k], out.alpha_lower) && detail::near(b[k], out.beta_lower))
            out.lower_pair_feasible = true;
        if (detail::near(a[k], out.alpha_lower) && detail::near(b[k], out.beta_upper))
            corner_low_high = true;
        if (detail::near(a[k], out.alpha_upper) && detail::near(b[k], out.beta_lower))
            corner_high_low = true;
    }
    out.ambiguous = out.max_regret_a.has_value() && out.max_regret_b.has_value();
    out.rectangular = corner_low_high && corner_high_low;
    return out;
}

/// Minimax-regret probability of b under ambiguity:
/// delta_b = M_b / (M_a + M_b), with maximum regret M_a M_b / (M_a + M_b).
template <typename Scalar>
BinaryMmr<Scalar> mmr_delta_binary(const BinaryRegionSummary<Scalar>& s) {
    detail::check_ambiguous(s);
    const Scalar ma = *s.max_regret_a, mb = *s.max_regret_b;
    return {mb / (ma + mb), ma * mb / (ma + mb)};
}

/// The same solution written with welfare extremes, valid when the two
/// corner pairs are attainable. `premise_holds` reports whether they were
/// found among the region's states.
template <typename Scalar>
RectangularMmr<Scalar> mmr_delta_binary_rectangular(const BinaryRegionSummary<Scalar>& s) {
    detail::check_ambiguous(s);
    const Scalar ma = s.alpha_upper - s.beta_lower;
    const Scalar mb = s.beta_upper - s.alpha_lower;
    if (!(ma + mb > Scalar(0)))
        throw InputError("degenerate welfare ranges: alpha_U - beta_L + beta_U - alpha_L <= 0");
    RectangularMmr<Scalar> out{mb / (ma + mb), ma * mb / (ma + mb), s.rectangular, std::nullopt};
    if (!s.rectangular)
        out.warning = "corner pairs (alpha_L, beta_U) and (alpha_U, beta_L) are not both "
                      "attained in the region; the extreme-value formula may not be minimax regret";
    return out;
}

/// Maximin over delta_b in [0, 1]. When one state attains both minima the
/// answer is the vertex with the larger minimum (every delta ties when the
/// minima are equal); otherwise the LP decides and may randomize.
template <typename Scalar>
CriterionSolution<Scalar> maximin_binary(const DecisionProblem<Scalar>& problem,
                                         const RegionScope& scope) {
    const auto s = summarize_binary(problem, scope);
    if (!s.lower_pair_feasible) {
        auto sol = solve_maximin_mixed(problem, scope);
        sol.diagnostics.push_back("(alpha_L, beta_L) not attained by a single state; solved by LP");
        return sol;
    }
    if (detail::near(s.alpha_lower, s.beta_lower))
        return CriterionSolution<Scalar>(ChoiceDistribution<Scalar>::vertex(2, 0), s.alpha_lower,
                                         true);
    if (s.alpha_lower > s.beta_lower)
        return CriterionSolution<Scalar>(ChoiceDistribution<Scalar>::vertex(2, 0), s.alpha_lower,
                                         false);
    return CriterionSolution<Scalar>(ChoiceDistribution<Scalar>::vertex(2, 1), s.beta_lower, false);
}

/// Best maximum regret using only the vertices (min(M_a, M_b)) against the
/// best using the randomized solution.
template <typename Scalar>
RegretComparison<Scalar> regret_comparison_binary(const BinaryRegionSummary<Scalar>& s) {
    detail::check_ambiguous(s);
    const Scalar vertex = std::min(*s.max_regret_a, *s.max_regret_b);
    const Scalar mixed = mmr_delta_binary(s).max_regret;
    return {vertex, mixed, vertex - mixed};
}

/// Ex-ante maximum regret of the block-wise minimax-regret rule: the
/// largest M_a M_b / (M_a + M_b) over all regions (zero on regions without
/// ambiguity).
template <typename Scalar>
Scalar exante_mmr_binary(const DecisionProblem<Scalar>& problem,
                         const IdentificationPartition& partition) {
    detail::check_binary(problem);
    Scalar worst(0);
    for (Index b = 0; b < partition.num_blocks(); ++b) {
        const auto s = summarize_binary(problem, RegionScope::block(partition, b));
        if (s.ambiguous) worst = std::max(worst, mmr_delta_binary(s).max_regret);
    }
    return worst;
}

} // namespace decide

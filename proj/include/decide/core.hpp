#pragma once

// Shared domain types: the decision problem, prior, sampling model,
// identification partition and choice distributions, plus the two
// elementary evaluations every solver builds on (mixed expected welfare
// and regret).

#include "decide/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

namespace decide {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

namespace tol {
inline constexpr double welfare = 1e-12;          // welfare comparisons and ties
inline constexpr double prior_sum = 1e-12;        // |sum(prior) - 1|
inline constexpr double distribution_sum = 1e-12; // |sum(Q_s) - 1|
inline constexpr double choice_sum = 1e-9;        // |sum(delta) - 1|
inline constexpr double vertex = 1e-9;            // max(delta) >= 1 - vertex
inline constexpr double equivalence = 1e-9;       // default L-inf tolerance on Q_s
} // namespace tol

namespace detail {

inline void check_unique(const std::vector<std::string>& labels, const char* what) {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels) {
        if (!seen.insert(l).second)
            throw InputError(std::string("duplicate ") + what + " label '" + l + "'");
    }
}

template <typename Derived>
bool is_probability_vector(const Eigen::MatrixBase<Derived>& v, double sum_tol) {
    using S = typename Derived::Scalar;
    if (v.size() == 0) return false;
    for (Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(static_cast<double>(v[i])) || v[i] < S(0)) return false;
    }
    return std::abs(static_cast<double>(v.sum()) - 1.0) <= sum_tol;
}

inline Index find_label(const std::vector<std::string>& labels, std::string_view name,
                        const char* what) {
    auto it = std::find(labels.begin(), labels.end(), name);
    if (it == labels.end())
        throw InputError(std::string("unknown ") + what + " '" + std::string(name) + "'");
    return static_cast<Index>(std::distance(labels.begin(), it));
}

} // namespace detail

/// Actions C, states S and the welfare table w(c, s), stored action-major
/// (row = action, column = state).
template <typename Scalar = double>
class DecisionProblem {
  public:
    DecisionProblem(std::vector<std::string> actions, std::vector<std::string> states,
                    Matrix<Scalar> welfare)
        : actions_(std::move(actions)), states_(std::move(states)),
          welfare_(std::move(welfare)) {
        if (actions_.empty() || states_.empty())
            throw InputError("a decision problem needs at least one action and one state");
        if (welfare_.rows() != num_actions() || welfare_.cols() != num_states())
            throw InputError("welfare matrix must be |actions| x |states|");
        if (!welfare_.allFinite()) throw InputError("welfare entries must be finite");
        detail::check_unique(actions_, "action");
        detail::check_unique(states_, "state");
        best_ = welfare_.colwise().maxCoeff().transpose();
    }

    /// Unlabelled problem; actions are named a0, a1, ... and states s0, s1, ...
    explicit DecisionProblem(const Matrix<Scalar>& welfare)
        : DecisionProblem(make_labels("a", welfare.rows()), make_labels("s", welfare.cols()),
                          welfare) {}

    Index num_actions() const { return static_cast<Index>(actions_.size()); }
    Index num_states() const { return static_cast<Index>(states_.size()); }
    const std::vector<std::string>& actions() const { return actions_; }
    const std::vector<std::string>& states() const { return states_; }
    const Matrix<Scalar>& welfare() const { return welfare_; }
    Scalar welfare(Index action, Index state) const { return welfare_(action, state); }

    /// max_d w(d, s) for every state.
    const Vector<Scalar>& best_welfare() const { return best_; }
    Scalar best_welfare(Index state) const { return best_[state]; }

    Index action_index(std::string_view name) const {
        return detail::find_label(actions_, name, "action");
    }
    Index state_index(std::string_view name) const {
        return detail::find_label(states_, name, "state");
    }

    void check_state(Index s) const {
        if (s < 0 || s >= num_states())
            throw InputError("state index " + std::to_string(s) + " out of range");
    }
    void check_action(Index c) const {
        if (c < 0 || c >= num_actions())
            throw InputError("action index " + std::to_string(c) + " out of range");
    }

  private:
    static std::vector<std::string> make_labels(const char* prefix, Index n) {
        if (n < 0) n = 0;
        std::vector<std::string> out;
        for (Index i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
        return out;
    }

    std::vector<std::string> actions_;
    std::vector<std::string> states_;
    Matrix<Scalar> welfare_;
    Vector<Scalar> best_;
};

/// Subjective distribution over states.
template <typename Scalar = double>
class Prior {
  public:
    explicit Prior(Vector<Scalar> weights) : weights_(std::move(weights)) {
        if (!detail::is_probability_vector(weights_, tol::prior_sum))
            throw InputError("prior must be nonnegative and sum to 1");
    }

    static Prior uniform(Index num_states) {
        return Prior(Vector<Scalar>::Constant(num_states, Scalar(1) / Scalar(num_states)));
    }

    const Vector<Scalar>& weights() const { return weights_; }
    Index size() const { return weights_.size(); }
    Scalar operator[](Index s) const { return weights_[s]; }

  private:
    Vector<Scalar> weights_;
};

/// Tag for the continuous sample space [0, 1] with a uniform density in
/// every state. This is the rich sample space that makes every choice
/// probability vector attainable.
struct UnitInterval {};

struct FiniteSampleSpace {
    std::vector<std::string> points;
};

/// Sample space shared across states together with the sampling
/// distribution Q_s of every state.
template <typename Scalar = double>
class SamplingModel {
  public:
    static SamplingModel finite(std::vector<std::string> points,
                                std::vector<Vector<Scalar>> distributions) {
        if (points.empty()) throw InputError("finite sample space must be nonempty");
        if (distributions.empty()) throw InputError("sampling model needs at least one state");
        detail::check_unique(points, "sample point");
        const auto n = static_cast<Index>(points.size());
        for (std::size_t s = 0; s < distributions.size(); ++s) {
            if (distributions[s].size() != n)
                throw InputError("distribution of state " + std::to_string(s) +
                                 " does not match the sample space size");
            if (!detail::is_probability_vector(distributions[s], tol::distribution_sum))
                throw InputError("distribution of state " + std::to_string(s) +
                                 " is not a probability vector");
        }
        SamplingModel m;
        m.space_ = FiniteSampleSpace{std::move(points)};
        m.distributions_ = std::move(distributions);
        m.num_states_ = static_cast<Index>(m.distributions_.size());
        return m;
    }

    static SamplingModel unit_interval(Index num_states) {
        if (num_states < 1) throw InputError("sampling model needs at least one state");
        SamplingModel m;
        m.space_ = UnitInterval{};
        m.num_states_ = num_states;
        return m;
    }

    bool is_finite() const { return std::holds_alternative<FiniteSampleSpace>(space_); }
    Index num_states() const { return num_states_; }

    const std::vector<std::string>& points() const {
        if (!is_finite()) throw UnsupportedOperationError("unit-interval sample space has no points");
        return std::get<FiniteSampleSpace>(space_).points;
    }
    Index num_points() const { return static_cast<Index>(points().size()); }

    const Vector<Scalar>& distribution(Index state) const {
        if (!is_finite())
            throw UnsupportedOperationError("unit-interval states carry a density, not a vector");
        if (state < 0 || state >= num_states_)
            throw InputError("state index " + std::to_string(state) + " out of range");
        return distributions_[static_cast<std::size_t>(state)];
    }

  private:
    SamplingModel() = default;

    std::variant<FiniteSampleSpace, UnitInterval> space_;
    std::vector<Vector<Scalar>> distributions_;
    Index num_states_ = 0;
};

/// Partition of the state indices into observational-equivalence classes.
/// The block containing s is the identification region S(Q_s).
/// Blocks are kept sorted internally and ordered by their smallest state.
class IdentificationPartition {
  public:
    IdentificationPartition(std::vector<std::vector<Index>> groups, Index num_states)
        : groups_(std::move(groups)), group_of_(static_cast<std::size_t>(std::max<Index>(num_states, 0)), -1) {
        if (num_states < 1) throw InputError("partition needs at least one state");
        for (auto& g : groups_) {
            if (g.empty()) throw InputError("partition blocks must be nonempty");
            std::sort(g.begin(), g.end());
        }
        std::sort(groups_.begin(), groups_.end(),
                  [](const auto& x, const auto& y) { return x.front() < y.front(); });
        for (std::size_t b = 0; b < groups_.size(); ++b) {
            for (Index s : groups_[b]) {
                if (s < 0 || s >= num_states)
                    throw InputError("partition refers to state index " + std::to_string(s) +
                                     " out of range");
                auto& slot = group_of_[static_cast<std::size_t>(s)];
                if (slot != -1)
                    throw InputError("state index " + std::to_string(s) +
                                     " appears in more than one block");
                slot = static_cast<Index>(b);
            }
        }
        for (std::size_t s = 0; s < group_of_.size(); ++s) {
            if (group_of_[s] == -1)
                throw InputError("state index " + std::to_string(s) + " is not in any block");
        }
    }

    static IdentificationPartition singletons(Index num_states) {
        std::vector<std::vector<Index>> g;
        for (Index s = 0; s < num_states; ++s) g.push_back({s});
        return IdentificationPartition(std::move(g), num_states);
    }

    static IdentificationPartition single_block(Index num_states) {
        std::vector<Index> all(static_cast<std::size_t>(std::max<Index>(num_states, 0)));
        std::iota(all.begin(), all.end(), Index{0});
        return IdentificationPartition({std::move(all)}, num_states);
    }

    Index num_states() const { return static_cast<Index>(group_of_.size()); }
    Index num_blocks() const { return static_cast<Index>(groups_.size()); }
    const std::vector<std::vector<Index>>& groups() const { return groups_; }
    const std::vector<Index>& block(Index b) const { return groups_.at(static_cast<std::size_t>(b)); }
    Index block_of(Index state) const { return group_of_.at(static_cast<std::size_t>(state)); }

    /// S(Q_s) for the given state.
    const std::vector<Index>& region_of(Index state) const { return block(block_of(state)); }

  private:
    std::vector<std::vector<Index>> groups_;
    std::vector<Index> group_of_;
};

enum class IdentificationClass { UniformPoint, UniformPartial, Mixed };

inline const char* to_string(IdentificationClass c) {
    switch (c) {
    case IdentificationClass::UniformPoint: return "UniformPoint";
    case IdentificationClass::UniformPartial: return "UniformPartial";
    case IdentificationClass::Mixed: return "Mixed";
    }
    return "?";
}

/// A point on the |C|-simplex: the probabilities with which each action is
/// chosen.
template <typename Scalar = double>
class ChoiceDistribution {
  public:
    explicit ChoiceDistribution(Vector<Scalar> probs) : probs_(std::move(probs)) {
        if (probs_.size() == 0) throw InputError("choice distribution must be nonempty");
        for (Index i = 0; i < probs_.size(); ++i) {
            const double p = static_cast<double>(probs_[i]);
            if (!std::isfinite(p) || p < 0.0 || p > 1.0)
                throw InputError("choice probabilities must lie in [0, 1]");
        }
        if (std::abs(static_cast<double>(probs_.sum()) - 1.0) > tol::choice_sum)
            throw InputError("choice probabilities must sum to 1");
    }

    static ChoiceDistribution vertex(Index num_actions, Index action) {
        if (action < 0 || action >= num_actions) throw InputError("vertex action out of range");
        Vector<Scalar> v = Vector<Scalar>::Zero(num_actions);
        v[action] = Scalar(1);
        return ChoiceDistribution(std::move(v));
    }

    /// Two-action distribution from the probability of the second action.
    static ChoiceDistribution binary(Scalar prob_second) {
        Vector<Scalar> v(2);
        v << Scalar(1) - prob_second, prob_second;
        return ChoiceDistribution(std::move(v));
    }

    const Vector<Scalar>& probs() const { return probs_; }
    Index size() const { return probs_.size(); }
    Scalar operator[](Index i) const { return probs_[i]; }

    bool is_vertex() const { return probs_.maxCoeff() >= Scalar(1) - Scalar(tol::vertex); }

  private:
    Vector<Scalar> probs_;
};

/// Result of solving one criterion on one region.
template <typename Scalar = double>
struct CriterionSolution {
    ChoiceDistribution<Scalar> delta;
    Scalar value;
    bool is_pure = false;
    bool tied = false;
    std::vector<std::string> diagnostics;

    CriterionSolution(ChoiceDistribution<Scalar> d, Scalar v, bool tie)
        : delta(std::move(d)), value(v), is_pure(delta.is_vertex()), tied(tie) {}
};

/// Nonempty set of state indices over which a criterion is evaluated:
/// either all of S or one identification region.
class RegionScope {
  public:
    RegionScope(std::vector<Index> states, Index num_states) : states_(std::move(states)) {
        if (states_.empty()) throw InputError("scope must be nonempty");
        std::sort(states_.begin(), states_.end());
        states_.erase(std::unique(states_.begin(), states_.end()), states_.end());
        for (Index s : states_) {
            if (s < 0 || s >= num_states)
                throw InputError("scope refers to state index " + std::to_string(s) +
                                 " out of range");
        }
    }

    static RegionScope all(Index num_states) {
        std::vector<Index> v(static_cast<std::size_t>(std::max<Index>(num_states, 0)));
        std::iota(v.begin(), v.end(), Index{0});
        return RegionScope(std::move(v), num_states);
    }

    static RegionScope region(const IdentificationPartition& p, Index state) {
        return RegionScope(p.region_of(state), p.num_states());
    }

    static RegionScope block(const IdentificationPartition& p, Index b) {
        return RegionScope(p.block(b), p.num_states());
    }

    const std::vector<Index>& states() const { return states_; }
    Index size() const { return static_cast<Index>(states_.size()); }
    auto begin() const { return states_.begin(); }
    auto end() const { return states_.end(); }

  private:
    std::vector<Index> states_;
};

template <typename Scalar>
void check_delta(const DecisionProblem<Scalar>& problem, const ChoiceDistribution<Scalar>& delta) {
    if (delta.size() != problem.num_actions())
        throw InputError("choice distribution length does not match the number of actions");
}

template <typename Scalar>
void check_scope(const DecisionProblem<Scalar>& problem, const RegionScope& scope) {
    for (Index s : scope) problem.check_state(s);
}

/// sum_d delta[d] * w(d, s).
template <typename Scalar>
Scalar expected_welfare(const DecisionProblem<Scalar>& problem,
                        const ChoiceDistribution<Scalar>& delta, Index state) {
    problem.check_state(state);
    check_delta(problem, delta);
    return delta.probs().dot(problem.welfare().col(state));
}

/// max_d w(d, s) - expected_welfare(delta, s). Clamped at zero so rounding
/// never reports a negative shortfall.
template <typename Scalar>
Scalar regret(const DecisionProblem<Scalar>& problem, const ChoiceDistribution<Scalar>& delta,
              Index state) {
    const Scalar r = problem.best_welfare(state) - expected_welfare(problem, delta, state);
    return std::max(r, Scalar(0));
}

/// Groups states whose sampling distributions are within `tolerance` in
/// L-infinity distance, closed transitively (single linkage).
template <typename Scalar>
IdentificationPartition compute_identification_partition(const SamplingModel<Scalar>& model,
                                                         Scalar tolerance = Scalar(tol::equivalence)) {
    if (!model.is_finite())
        throw UnsupportedOperationError(
            "observational equivalence is only computed for finite sample spaces");
    if (!(tolerance >= Scalar(0))) throw InputError("tolerance must be nonnegative");

    const Index n = model.num_states();
    std::vector<Index> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), Index{0});
    auto find = [&](Index x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            auto& px = parent[static_cast<std::size_t>(x)];
            px = parent[static_cast<std::size_t>(px)];
            x = px;
        }
        return x;
    };

    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const Scalar dist =
                (model.distribution(i) - model.distribution(j)).cwiseAbs().maxCoeff();
            if (dist <= tolerance) {
                const Index ri = find(i), rj = find(j);
                if (ri != rj) parent[static_cast<std::size_t>(std::max(ri, rj))] = std::min(ri, rj);
            }
        }
    }

    std::vector<std::vector<Index>> groups;
    std::vector<Index> slot(static_cast<std::size_t>(n), -1);
    for (Index s = 0; s < n; ++s) {
        const Index r = find(s);
        auto& k = slot[static_cast<std::size_t>(r)];
        if (k == -1) {
            k = static_cast<Index>(groups.size());
            groups.emplace_back();
        }
        groups[static_cast<std::size_t>(k)].push_back(s);
    }
    return IdentificationPartition(std::move(groups), n);
}

inline IdentificationClass classify_identification(const IdentificationPartition& partition) {
    const auto n = static_cast<std::size_t>(partition.num_states());
    bool all_singletons = true;
    bool all_proper_nonsingleton = true;
    for (const auto& g : partition.groups()) {
        if (g.size() != 1) all_singletons = false;
        if (g.size() < 2 || g.size() >= n) all_proper_nonsingleton = false;
    }
    if (all_singletons) return IdentificationClass::UniformPoint;
    if (all_proper_nonsingleton) return IdentificationClass::UniformPartial;
    return IdentificationClass::Mixed;
}

/// True when the partition is one block covering every state of a
/// multi-state problem, i.e. the sampling distribution reveals nothing.
inline bool is_unidentified(const IdentificationPartition& partition) {
    return partition.num_blocks() == 1 && partition.num_states() > 1;
}

} // namespace decide

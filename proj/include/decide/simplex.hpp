#pragma once

// Dense two-phase tableau simplex with Bland's rule. Sized for the small
// LPs the mixed criteria produce (a few actions, a few states), where a
// full tableau is cheaper than anything clever.

#include "decide/core.hpp"

#include <limits>

namespace decide {

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class Sense { Maximize, Minimize };
enum class LpStatus { Optimal, Infeasible, Unbounded };

inline const char* to_string(LpStatus s) {
    switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    }
    return "?";
}

/// optimize objective . x  s.t.  constraints.row(i) . x  (relation_i)  rhs_i,
///                               lower <= x <= upper.
/// Bounds may be infinite; the default bounds are x >= 0.
template <typename Scalar = double>
struct LinearProgram {
    Sense sense = Sense::Maximize;
    Vector<Scalar> objective;
    Matrix<Scalar> constraints;
    std::vector<Relation> relations;
    Vector<Scalar> rhs;
    Vector<Scalar> lower;
    Vector<Scalar> upper;

    LinearProgram(Index num_variables, Sense s)
        : sense(s), objective(Vector<Scalar>::Zero(num_variables)),
          constraints(0, num_variables), rhs(0),
          lower(Vector<Scalar>::Zero(num_variables)),
          upper(Vector<Scalar>::Constant(num_variables, std::numeric_limits<Scalar>::infinity())) {}

    Index num_variables() const { return objective.size(); }
    Index num_constraints() const { return constraints.rows(); }

    template <typename Derived>
    void add_constraint(const Eigen::MatrixBase<Derived>& coeffs, Relation rel, Scalar bound) {
        if (coeffs.size() != num_variables())
            throw InputError("constraint length does not match the number of variables");
        constraints.conservativeResize(constraints.rows() + 1, Eigen::NoChange);
        constraints.row(constraints.rows() - 1) = coeffs.transpose();
        rhs.conservativeResize(rhs.size() + 1);
        rhs[rhs.size() - 1] = bound;
        relations.push_back(rel);
    }

    void set_free(Index j) {
        lower[j] = -std::numeric_limits<Scalar>::infinity();
        upper[j] = std::numeric_limits<Scalar>::infinity();
    }
};

template <typename Scalar = double>
struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Vector<Scalar> x;
    Scalar value = Scalar(0);
    int iterations = 0;
};

struct SimplexOptions {
    double pivot_tol = 1e-10;
    double feasibility_tol = 1e-9;
    double optimality_tol = 1e-9;
    int max_iterations = 100000;
};

namespace detail {

template <typename Scalar>
class Tableau {
  public:
    // Rows 0..m-1 hold constraints, row m the reduced costs; the last
    // column holds the right-hand side.
    Tableau(Matrix<Scalar> body, std::vector<Index> basis, const SimplexOptions& opt)
        : t_(std::move(body)), basis_(std::move(basis)), opt_(opt) {}

    Index rows() const { return t_.rows() - 1; }
    Index cols() const { return t_.cols() - 1; }
    Matrix<Scalar>& data() { return t_; }
    std::vector<Index>& basis() { return basis_; }

    /// Rebuilds the reduced-cost row for the cost vector (minimization).
    void price(const Vector<Scalar>& cost) {
        t_.row(rows()).setZero();
        t_.row(rows()).head(cost.size()) = cost.transpose();
        for (Index i = 0; i < rows(); ++i) {
            const Scalar cb = basis_[static_cast<std::size_t>(i)] < cost.size()
                                  ? cost[basis_[static_cast<std::size_t>(i)]]
                                  : Scalar(0);
            if (cb != Scalar(0)) t_.row(rows()) -= cb * t_.row(i);
        }
    }

    /// Current objective value of the minimization.
    Scalar objective() const { return -t_(rows(), cols()); }

    /// Runs Bland-rule pivots over columns [0, allowed). Returns false if
    /// the problem is unbounded in some allowed column.
    bool optimize(Index allowed, int& iterations) {
        for (;;) {
            Index enter = -1;
            for (Index j = 0; j < allowed; ++j) {
                if (t_(rows(), j) < -Scalar(opt_.optimality_tol)) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return true;

            Index leave = -1;
            Scalar best_ratio = std::numeric_limits<Scalar>::infinity();
            for (Index i = 0; i < rows(); ++i) {
                const Scalar a = t_(i, enter);
                if (a <= Scalar(opt_.pivot_tol)) continue;
                const Scalar ratio = std::max(t_(i, cols()), Scalar(0)) / a;
                const Scalar slack = Scalar(1e-12) * std::max(Scalar(1), std::abs(best_ratio));
                if (leave < 0 || ratio < best_ratio - slack) {
                    leave = i;
                    best_ratio = ratio;
                } else if (ratio <= best_ratio + slack &&
                           basis_[static_cast<std::size_t>(i)] <
                               basis_[static_cast<std::size_t>(leave)]) {
                    leave = i;
                    best_ratio = std::min(best_ratio, ratio);
                }
            }
            if (leave < 0) return false;

            pivot(leave, enter);
            if (++iterations > opt_.max_iterations)
                throw SolverError("simplex exceeded the iteration limit");
        }
    }

    void pivot(Index r, Index c) {
        t_.row(r) /= t_(r, c);
        for (Index i = 0; i <= rows(); ++i) {
            if (i == r) continue;
            const Scalar f = t_(i, c);
            if (f != Scalar(0)) t_.row(i) -= f * t_.row(r);
        }
        t_(r, c) = Scalar(1);
        basis_[static_cast<std::size_t>(r)] = c;
    }

    void drop_row(Index r) {
        Matrix<Scalar> next(t_.rows() - 1, t_.cols());
        next.topRows(r) = t_.topRows(r);
        next.bottomRows(t_.rows() - 1 - r) = t_.bottomRows(t_.rows() - 1 - r);
        t_ = std::move(next);
        basis_.erase(basis_.begin() + r);
    }

  private:
    Matrix<Scalar> t_;
    std::vector<Index> basis_;
    SimplexOptions opt_;
};

} // namespace detail

/// Solves the LP with the two-phase simplex method and Bland's anti-cycling
/// rule. Returns an optimal basic solution, or reports infeasibility or
/// unboundedness.
template <typename Scalar>
LpResult<Scalar> solve_lp(const LinearProgram<Scalar>& lp, const SimplexOptions& opt = {}) {
    const Index n = lp.num_variables();
    const Index m = lp.num_constraints();
    if (n < 1) throw InputError("LP needs at least one variable");
    if (lp.constraints.cols() != n || lp.rhs.size() != m ||
        static_cast<Index>(lp.relations.size()) != m || lp.lower.size() != n ||
        lp.upper.size() != n)
        throw InputError("LP dimensions are inconsistent");
    if (!lp.objective.allFinite() || !lp.constraints.allFinite() || !lp.rhs.allFinite())
        throw InputError("LP coefficients must be finite");
    for (Index j = 0; j < n; ++j) {
        if (std::isnan(static_cast<double>(lp.lower[j])) ||
            std::isnan(static_cast<double>(lp.upper[j])) || lp.lower[j] > lp.upper[j] ||
            lp.lower[j] == std::numeric_limits<Scalar>::infinity() ||
            lp.upper[j] == -std::numeric_limits<Scalar>::infinity())
            throw InputError("LP variable bounds are inconsistent");
    }

    // Shift and split variables so that every working variable is >= 0:
    // x_j = offset_j + sum_k map[j][k].second * y_{map[j][k].first}.
    struct Term {
        Index col;
        Scalar coef;
    };
    std::vector<std::vector<Term>> map(static_cast<std::size_t>(n));
    Vector<Scalar> offset = Vector<Scalar>::Zero(n);
    std::vector<std::pair<Index, Scalar>> upper_rows; // y_col <= bound
    Index ny = 0;
    for (Index j = 0; j < n; ++j) {
        const bool lo = std::isfinite(static_cast<double>(lp.lower[j]));
        const bool hi = std::isfinite(static_cast<double>(lp.upper[j]));
        auto& terms = map[static_cast<std::size_t>(j)];
        if (lo) {
            offset[j] = lp.lower[j];
            terms.push_back({ny, Scalar(1)});
            if (hi) upper_rows.emplace_back(ny, lp.upper[j] - lp.lower[j]);
            ++ny;
        } else if (hi) {
            offset[j] = lp.upper[j];
            terms.push_back({ny++, Scalar(-1)});
        } else {
            terms.push_back({ny++, Scalar(1)});
            terms.push_back({ny++, Scalar(-1)});
        }
    }

    const Index rows = m + static_cast<Index>(upper_rows.size());
    Matrix<Scalar> a = Matrix<Scalar>::Zero(rows, ny);
    Vector<Scalar> b(rows);
    std::vector<Relation> rel(static_cast<std::size_t>(rows));
    for (Index i = 0; i < m; ++i) {
        for (Index j = 0; j < n; ++j) {
            for (const auto& t : map[static_cast<std::size_t>(j)])
                a(i, t.col) += lp.constraints(i, j) * t.coef;
        }
        b[i] = lp.rhs[i] - lp.constraints.row(i).dot(offset);
        rel[static_cast<std::size_t>(i)] = lp.relations[static_cast<std::size_t>(i)];
    }
    for (std::size_t k = 0; k < upper_rows.size(); ++k) {
        const Index i = m + static_cast<Index>(k);
        a(i, upper_rows[k].first) = Scalar(1);
        b[i] = upper_rows[k].second;
        rel[static_cast<std::size_t>(i)] = Relation::LessEqual;
    }
    for (Index i = 0; i < rows; ++i) {
        if (b[i] < Scalar(0)) {
            a.row(i) *= Scalar(-1);
            b[i] = -b[i];
            auto& r = rel[static_cast<std::size_t>(i)];
            if (r == Relation::LessEqual) r = Relation::GreaterEqual;
            else if (r == Relation::GreaterEqual) r = Relation::LessEqual;
        }
    }

    // Column layout: structural | slack/surplus | artificial | rhs.
    Index n_slack = 0, n_art = 0;
    for (auto r : rel) {
        if (r != Relation::Equal) ++n_slack;
        if (r != Relation::LessEqual) ++n_art;
    }
    const Index first_art = ny + n_slack;
    const Index total = first_art + n_art;
    Matrix<Scalar> body = Matrix<Scalar>::Zero(rows + 1, total + 1);
    body.topLeftCorner(rows, ny) = a;
    body.block(0, total, rows, 1) = b;
    std::vector<Index> basis(static_cast<std::size_t>(rows));
    Index next_slack = ny, next_art = first_art;
    for (Index i = 0; i < rows; ++i) {
        switch (rel[static_cast<std::size_t>(i)]) {
        case Relation::LessEqual:
            body(i, next_slack) = Scalar(1);
            basis[static_cast<std::size_t>(i)] = next_slack++;
            break;
        case Relation::GreaterEqual:
            body(i, next_slack++) = Scalar(-1);
            body(i, next_art) = Scalar(1);
            basis[static_cast<std::size_t>(i)] = next_art++;
            break;
        case Relation::Equal:
            body(i, next_art) = Scalar(1);
            basis[static_cast<std::size_t>(i)] = next_art++;
            break;
        }
    }

    detail::Tableau<Scalar> tab(std::move(body), std::move(basis), opt);
    LpResult<Scalar> result;

    if (n_art > 0) {
        Vector<Scalar> phase1 = Vector<Scalar>::Zero(total);
        phase1.tail(n_art).setOnes();
        tab.price(phase1);
        tab.optimize(total, result.iterations);
        if (tab.objective() > Scalar(opt.feasibility_tol)) {
            result.status = LpStatus::Infeasible;
            return result;
        }
        // Pivot remaining (zero-level) artificials out of the basis; rows
        // where that is impossible are redundant.
        for (Index i = tab.rows() - 1; i >= 0; --i) {
            if (tab.basis()[static_cast<std::size_t>(i)] < first_art) continue;
            Index col = -1;
            for (Index j = 0; j < first_art; ++j) {
                if (std::abs(tab.data()(i, j)) > Scalar(opt.pivot_tol)) {
                    col = j;
                    break;
                }
            }
            if (col >= 0) tab.pivot(i, col);
            else tab.drop_row(i);
        }
    }

    // Phase 2 minimizes; a maximization is negated.
    Vector<Scalar> cost = Vector<Scalar>::Zero(total);
    const Scalar sign = lp.sense == Sense::Maximize ? Scalar(-1) : Scalar(1);
    for (Index j = 0; j < n; ++j) {
        for (const auto& t : map[static_cast<std::size_t>(j)])
            cost[t.col] += sign * lp.objective[j] * t.coef;
    }
    tab.price(cost);
    if (!tab.optimize(first_art, result.iterations)) {
        result.status = LpStatus::Unbounded;
        return result;
    }

    Vector<Scalar> y = Vector<Scalar>::Zero(ny);
    for (Index i = 0; i < tab.rows(); ++i) {
        const Index c = tab.basis()[static_cast<std::size_t>(i)];
        if (c < ny) y[c] = tab.data()(i, tab.cols());
    }
    result.x = offset;
    for (Index j = 0; j < n; ++j) {
        for (const auto& t : map[static_cast<std::size_t>(j)]) result.x[j] += t.coef * y[t.col];
    }
    result.value = lp.objective.dot(result.x);
    result.status = LpStatus::Optimal;
    return result;
}

} // namespace decide

#pragma once

#include <Eigen/Core>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ppsched {

enum class RowSense { le, ge, eq };

/// maximize c'x subject to A x (sense) b, x >= 0.
template <class Scalar>
struct LpProblem {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    Matrix A;
    Vector b;
    std::vector<RowSense> sense;
    Vector c;

    int rows() const { return static_cast<int>(A.rows()); }
    int cols() const { return static_cast<int>(A.cols()); }
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

template <class Scalar>
struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    Scalar value = 0;
    typename LpProblem<Scalar>::Vector x;
};

struct SimplexOptions {
    double tolerance = 1e-9;
    int max_columns = 20000;
    /// Consecutive non-improving pivots tolerated before switching from
    /// Dantzig pricing to Bland's rule.
    int stall_limit = 50;
    long long max_pivots = 1000000;
};

/// Thrown when a problem exceeds SimplexOptions::max_columns.
class LpSizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

namespace detail {

template <class Scalar>
class Tableau {
public:
    using Matrix = typename LpProblem<Scalar>::Matrix;
    using Vector = typename LpProblem<Scalar>::Vector;

    Tableau(const LpProblem<Scalar>& p, const SimplexOptions& opt) : opt_(opt), n_(p.cols()), m_(p.rows()) {
        int slacks = 0;
        int artificials = 0;
        std::vector<RowSense> sense = p.sense;
        std::vector<Scalar> sign(m_, Scalar(1));
        for (int i = 0; i < m_; ++i) {
            if (p.b(i) < 0) {
                sign[i] = -1;
                if (sense[i] == RowSense::le)
                    sense[i] = RowSense::ge;
                else if (sense[i] == RowSense::ge)
                    sense[i] = RowSense::le;
            }
            if (sense[i] != RowSense::eq) ++slacks;
            if (sense[i] != RowSense::le) ++artificials;
        }
        art_begin_ = n_ + slacks;
        width_ = art_begin_ + artificials;
        if (width_ > opt.max_columns) throw LpSizeError("LP has too many columns for the dense simplex");

        t_ = Matrix::Zero(m_ + 1, width_ + 1);
        basis_.assign(m_, -1);
        int s = n_;
        int a = art_begin_;
        for (int i = 0; i < m_; ++i) {
            t_.row(i).head(n_) = sign[i] * p.A.row(i);
            t_(i, width_) = sign[i] * p.b(i);
            if (sense[i] == RowSense::le) {
                t_(i, s) = 1;
                basis_[i] = s++;
            } else {
                if (sense[i] == RowSense::ge) t_(i, s++) = -1;
                t_(i, a) = 1;
                basis_[i] = a++;
            }
        }
    }

    LpSolution<Scalar> solve(const Vector& c) {
        LpSolution<Scalar> out;
        if (width_ > art_begin_) {
            Vector phase1 = Vector::Zero(width_);
            phase1.tail(width_ - art_begin_).setConstant(-1);
            set_objective(phase1);
            const LpStatus st = iterate(width_);
            if (st == LpStatus::iteration_limit) {
                out.status = st;
                return out;
            }
            if (t_(m_, width_) < -opt_.tolerance * scale()) {
                out.status = LpStatus::infeasible;
                return out;
            }
            drive_out_artificials();
        }
        Vector full = Vector::Zero(width_);
        full.head(n_) = c;
        set_objective(full);
        out.status = iterate(art_begin_);
        if (out.status != LpStatus::optimal) return out;
        out.value = t_(m_, width_);
        out.x = Vector::Zero(n_);
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < n_) out.x(basis_[i]) = t_(i, width_);
        return out;
    }

private:
    Scalar scale() const { return std::max<Scalar>(1, t_.col(width_).head(m_).cwiseAbs().maxCoeff()); }

    void set_objective(const Vector& c) {
        t_.row(m_).setZero();
        t_.row(m_).head(width_) = -c.transpose();
        for (int i = 0; i < m_; ++i)
            if (c(basis_[i]) != 0) t_.row(m_) += c(basis_[i]) * t_.row(i);
    }

    void pivot(int row, int col) {
        t_.row(row) /= t_(row, col);
        for (int i = 0; i <= m_; ++i) {
            if (i == row) continue;
            const Scalar f = t_(i, col);
            if (f != 0) t_.row(i) -= f * t_.row(row);
        }
        basis_[row] = col;
    }

    // Columns >= limit never enter.
    LpStatus iterate(int limit) {
        const Scalar tol = static_cast<Scalar>(opt_.tolerance);
        bool bland = false;
        int stall = 0;
        Scalar last = t_(m_, width_);
        for (long long it = 0; it < opt_.max_pivots; ++it) {
            int col = -1;
            Scalar most = -tol;
            for (int j = 0; j < limit; ++j) {
                const Scalar d = t_(m_, j);
                if (d < most) {
                    col = j;
                    most = d;
                    if (bland) break;
                }
            }
            if (col < 0) return LpStatus::optimal;

            int row = -1;
            Scalar best = std::numeric_limits<Scalar>::infinity();
            for (int i = 0; i < m_; ++i) {
                const Scalar a = t_(i, col);
                if (a <= tol) continue;
                const Scalar ratio = t_(i, width_) / a;
                if (ratio < best - tol || (ratio <= best + tol && row >= 0 && basis_[i] < basis_[row])) {
                    if (ratio < best) best = ratio;
                    row = i;
                }
            }
            if (row < 0) return LpStatus::unbounded;
            pivot(row, col);

            const Scalar now = t_(m_, width_);
            if (now > last + tol) {
                stall = 0;
                last = now;
            } else if (++stall >= opt_.stall_limit) {
                bland = true;
            }
        }
        return LpStatus::iteration_limit;
    }

    void drive_out_artificials() {
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < art_begin_) continue;
            for (int j = 0; j < art_begin_; ++j) {
                if (std::abs(t_(i, j)) > opt_.tolerance) {
                    pivot(i, j);
                    break;
                }
            }
            // A row with no eligible column is redundant; its artificial stays basic at zero.
        }
    }

    SimplexOptions opt_;
    int n_;
    int m_;
    int art_begin_ = 0;
    int width_ = 0;
    Matrix t_;
    std::vector<int> basis_;
};

}  // namespace detail

/// Dense two-phase tableau simplex. Dantzig pricing, falling back to Bland's
/// rule after a run of degenerate pivots.
template <class Scalar>
LpSolution<Scalar> solve_lp(const LpProblem<Scalar>& problem, const SimplexOptions& options = {}) {
    if (problem.rows() == 0) {
        LpSolution<Scalar> out;
        out.x = LpProblem<Scalar>::Vector::Zero(problem.cols());
        for (int j = 0; j < problem.cols(); ++j) {
            if (problem.c(j) > options.tolerance) {
                out.status = LpStatus::unbounded;
                return out;
            }
        }
        out.status = LpStatus::optimal;
        return out;
    }
    detail::Tableau<Scalar> tableau(problem, options);
    return tableau.solve(problem.c);
}

struct MilpOptions {
    SimplexOptions lp;
    double integrality_tolerance = 1e-7;
    long long node_budget = 200000;
    /// When positive, every integer-feasible objective is a multiple of this
    /// step, so a node is cut unless its LP value reaches the next multiple.
    double objective_step = 0.0;
    /// Known achievable objective; only strictly better solutions are returned.
    std::optional<double> cutoff;
    /// Branching preference per variable; higher tiers branch first.
    std::vector<int> priority;
};

template <class Scalar>
struct MilpSolution {
    LpStatus status = LpStatus::infeasible;
    Scalar value = 0;
    typename LpProblem<Scalar>::Vector x;
    long long nodes = 0;
    bool budget_exhausted = false;
};

/// Depth-first branch and bound over the variables flagged in `integer`.
/// Branches on the most fractional variable, down branch first.
template <class Scalar>
MilpSolution<Scalar> solve_milp(const LpProblem<Scalar>& problem, const std::vector<bool>& integer,
                                const MilpOptions& options = {}) {
    struct Bound {
        int var;
        bool upper;
        Scalar value;
    };

    MilpSolution<Scalar> best;
    bool have = false;
    const Scalar tol = static_cast<Scalar>(options.lp.tolerance);
    // Objective a node's LP value must beat to be worth exploring.
    const auto threshold = [&]() -> std::optional<Scalar> {
        if (have) return best.value;
        if (options.cutoff) return static_cast<Scalar>(*options.cutoff);
        return std::nullopt;
    };
    const auto can_improve = [&](Scalar value) {
        const auto bar = threshold();
        if (!bar) return true;
        if (options.objective_step > 0) {
            const Scalar step = static_cast<Scalar>(options.objective_step);
            return std::floor((value + tol) / step) * step > *bar + tol;
        }
        return value > *bar + tol;
    };
    std::vector<std::vector<Bound>> stack{{}};
    while (!stack.empty()) {
        if (best.nodes >= options.node_budget) {
            best.budget_exhausted = true;
            break;
        }
        std::vector<Bound> bounds = std::move(stack.back());
        stack.pop_back();
        ++best.nodes;

        LpProblem<Scalar> node = problem;
        const int base = problem.rows();
        node.A.conservativeResize(base + static_cast<int>(bounds.size()), Eigen::NoChange);
        node.b.conservativeResize(base + static_cast<int>(bounds.size()));
        for (std::size_t k = 0; k < bounds.size(); ++k) {
            node.A.row(base + static_cast<int>(k)).setZero();
            node.A(base + static_cast<int>(k), bounds[k].var) = 1;
            node.b(base + static_cast<int>(k)) = bounds[k].value;
            node.sense.push_back(bounds[k].upper ? RowSense::le : RowSense::ge);
        }
        const LpSolution<Scalar> lp = solve_lp(node, options.lp);
        if (lp.status == LpStatus::unbounded) {
            best.status = LpStatus::unbounded;
            return best;
        }
        if (lp.status != LpStatus::optimal) continue;
        if (!can_improve(lp.value)) continue;

        int branch = -1;
        int tier_best = 0;
        Scalar frac_best = 0;
        for (int j = 0; j < problem.cols(); ++j) {
            if (!integer[j]) continue;
            const Scalar f = lp.x(j) - std::floor(lp.x(j));
            const Scalar dist = std::min(f, 1 - f);
            if (dist <= options.integrality_tolerance) continue;
            const int tier = options.priority.empty() ? 0 : options.priority[j];
            if (branch < 0 || tier > tier_best || (tier == tier_best && dist > frac_best)) {
                tier_best = tier;
                frac_best = dist;
                branch = j;
            }
        }
        if (branch < 0) {
            best.status = LpStatus::optimal;
            best.value = lp.value;
            best.x = lp.x;
            for (int j = 0; j < problem.cols(); ++j)
                if (integer[j]) best.x(j) = std::round(best.x(j));
            have = true;
            continue;
        }
        std::vector<Bound> up = bounds;
        up.push_back({branch, false, std::ceil(lp.x(branch))});
        bounds.push_back({branch, true, std::floor(lp.x(branch))});
        stack.push_back(std::move(up));
        stack.push_back(std::move(bounds));
    }
    if (!have && !best.budget_exhausted) best.status = LpStatus::infeasible;
    if (!have && best.budget_exhausted) best.status = LpStatus::iteration_limit;
    return best;
}

}  // namespace ppsched

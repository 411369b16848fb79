#include "sparsetsp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace sparsetsp {

namespace {

constexpr double kPivotTol = 1e-10;

enum class VarStatus : char { kBasic, kAtLower, kAtUpper };

class Simplex {
public:
    Simplex(const LinearProgram& lp, const SimplexOptions& opts)
        : lp_(lp), opts_(opts), nrows_(lp.rows.size()),
          nstruct_(lp.num_cols), ntotal_(nstruct_ + nrows_) {
        build();
    }

    SimplexResult run();

private:
    const LinearProgram& lp_;
    SimplexOptions opts_;
    std::size_t nrows_, nstruct_, ntotal_;

    // Column-wise constraint matrix over structural + logical columns.
    std::vector<std::vector<std::pair<int, double>>> cols_;
    std::vector<double> lb_, ub_, cost_;  // phase-2 costs
    std::vector<double> rhs_;

    std::vector<VarStatus> status_;
    std::vector<int> basis_;        // basis_[i] = variable in row i
    std::vector<double> xb_;        // values of basic variables
    std::vector<double> xn_;        // values of all variables (nonbasic part valid)
    std::vector<double> binv_;      // dense row-major nrows x nrows
    long long iterations_ = 0;
    int stall_count_ = 0;

    double& binv(std::size_t i, std::size_t j) { return binv_[i * nrows_ + j]; }

    void build();
    void slack_basis();
    bool warm_basis(const std::vector<char>& warm);
    void refactorize();
    void compute_basic_values();
    double infeasibility() const;
    bool phase_loop(bool phase1);
    void phase_costs(std::vector<double>& c, bool phase1) const;
    SimplexResult extract(SolveStatus st);
};

void Simplex::build() {
    cols_.resize(ntotal_);
    lb_.assign(ntotal_, 0.0);
    ub_.assign(ntotal_, 0.0);
    cost_.assign(ntotal_, 0.0);
    rhs_.resize(nrows_);

    for (std::size_t j = 0; j < nstruct_; ++j) {
        lb_[j] = lp_.lower[j];
        ub_[j] = lp_.upper[j];
        cost_[j] = lp_.objective[j];
    }
    for (std::size_t i = 0; i < nrows_; ++i) {
        const auto& row = lp_.rows[i];
        rhs_[i] = row.rhs;
        for (auto [j, a] : row.coeffs)
            cols_[j].emplace_back(static_cast<int>(i), a);
        std::size_t s = nstruct_ + i;
        cols_[s].emplace_back(static_cast<int>(i), 1.0);
        if (row.sense == LinearProgram::Sense::kLe) {
            lb_[s] = 0.0;
            ub_[s] = kInf;
        } else {
            lb_[s] = 0.0;  // artificial: pinned to zero, feasible iff row holds
            ub_[s] = 0.0;
        }
    }

    status_.assign(ntotal_, VarStatus::kAtLower);
    xn_.assign(ntotal_, 0.0);
    for (std::size_t j = 0; j < nstruct_; ++j) {
        if (std::isfinite(lb_[j])) {
            status_[j] = VarStatus::kAtLower;
            xn_[j] = lb_[j];
        } else if (std::isfinite(ub_[j])) {
            status_[j] = VarStatus::kAtUpper;
            xn_[j] = ub_[j];
        } else {
            xn_[j] = 0.0;
        }
    }
    basis_.resize(nrows_);
    binv_.assign(nrows_ * nrows_, 0.0);
    xb_.resize(nrows_);

    if (opts_.warm_basis && nrows_ > 0) {
        if (warm_basis(*opts_.warm_basis)) return;
        // Stale or singular hint: fall through to a cold start.
    }
    slack_basis();
}

void Simplex::slack_basis() {
    for (std::size_t j = 0; j < nstruct_; ++j)
        if (status_[j] == VarStatus::kBasic) {
            status_[j] = VarStatus::kAtLower;
            xn_[j] = lb_[j];
        }
    for (std::size_t i = 0; i < nrows_; ++i) {
        basis_[i] = static_cast<int>(nstruct_ + i);
        status_[nstruct_ + i] = VarStatus::kBasic;
    }
    std::fill(binv_.begin(), binv_.end(), 0.0);
    for (std::size_t i = 0; i < nrows_; ++i) binv(i, i) = 1.0;
    compute_basic_values();
}

// Restore the basis of an earlier solve whose rows are a prefix of the
// current rows: reuse its statuses verbatim and make the logicals of any
// appended rows basic, so the starting basis is block triangular and the
// old optimum only needs repairing on the new rows.
bool Simplex::warm_basis(const std::vector<char>& warm) {
    if (warm.size() < nstruct_ || warm.size() > ntotal_) return false;
    std::vector<int> basics;
    basics.reserve(nrows_);
    for (std::size_t j = 0; j < warm.size(); ++j) {
        if (warm[j] == 0) {
            basics.push_back(static_cast<int>(j));
            status_[j] = VarStatus::kBasic;
        } else if (warm[j] == 2 && std::isfinite(ub_[j])) {
            status_[j] = VarStatus::kAtUpper;
            xn_[j] = ub_[j];
        } else {
            status_[j] = VarStatus::kAtLower;
            xn_[j] = std::isfinite(lb_[j]) ? lb_[j] : 0.0;
        }
    }
    for (std::size_t j = warm.size(); j < ntotal_; ++j) {
        basics.push_back(static_cast<int>(j));
        status_[j] = VarStatus::kBasic;
    }
    if (basics.size() != nrows_) return false;
    for (std::size_t i = 0; i < nrows_; ++i) basis_[i] = basics[i];
    try {
        refactorize();
    } catch (const std::runtime_error&) {
        return false;
    }
    return true;
}

void Simplex::compute_basic_values() {
    // x_B = Binv (b - sum over nonbasic of A_j x_j)
    std::vector<double> r = rhs_;
    for (std::size_t j = 0; j < ntotal_; ++j) {
        if (status_[j] == VarStatus::kBasic || xn_[j] == 0.0) continue;
        for (auto [i, a] : cols_[j]) r[i] -= a * xn_[j];
    }
    for (std::size_t i = 0; i < nrows_; ++i) {
        double s = 0;
        for (std::size_t k = 0; k < nrows_; ++k) s += binv(i, k) * r[k];
        xb_[i] = s;
    }
}

void Simplex::refactorize() {
    // Rebuild Binv from the basis columns by Gauss-Jordan elimination.
    std::size_t r = nrows_;
    std::vector<double> m(r * 2 * r, 0.0);
    auto at = [&](std::size_t i, std::size_t j) -> double& { return m[i * 2 * r + j]; };
    for (std::size_t i = 0; i < r; ++i) {
        for (auto [row, a] : cols_[basis_[i]]) at(row, i) = a;
        at(i, r + i) = 1.0;
    }
    for (std::size_t c = 0; c < r; ++c) {
        std::size_t p = c;
        for (std::size_t i = c + 1; i < r; ++i)
            if (std::fabs(at(i, c)) > std::fabs(at(p, c))) p = i;
        if (std::fabs(at(p, c)) < 1e-12)
            throw std::runtime_error("singular basis during refactorization");
        if (p != c)
            for (std::size_t j = 0; j < 2 * r; ++j) std::swap(at(p, j), at(c, j));
        double piv = at(c, c);
        for (std::size_t j = 0; j < 2 * r; ++j) at(c, j) /= piv;
        for (std::size_t i = 0; i < r; ++i) {
            if (i == c) continue;
            double f = at(i, c);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < 2 * r; ++j) at(i, j) -= f * at(c, j);
        }
    }
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) binv(i, j) = at(i, r + j);
    compute_basic_values();
}

double Simplex::infeasibility() const {
    double s = 0;
    for (std::size_t i = 0; i < nrows_; ++i) {
        int j = basis_[i];
        if (xb_[i] < lb_[j]) s += lb_[j] - xb_[i];
        if (xb_[i] > ub_[j]) s += xb_[i] - ub_[j];
    }
    return s;
}

void Simplex::phase_costs(std::vector<double>& c, bool phase1) const {
    c.assign(ntotal_, 0.0);
    if (phase1) {
        for (std::size_t i = 0; i < nrows_; ++i) {
            int j = basis_[i];
            if (xb_[i] > ub_[j] + opts_.feas_tol) c[j] = 1.0;
            else if (xb_[i] < lb_[j] - opts_.feas_tol) c[j] = -1.0;
        }
    } else {
        for (std::size_t j = 0; j < nstruct_; ++j) c[j] = cost_[j];
    }
}

// Runs pricing/ratio-test/pivot iterations for one phase. Returns false
// when the iteration limit was hit, true when no improving column remains.
bool Simplex::phase_loop(bool phase1) {
    long long limit = opts_.max_iterations > 0
                          ? opts_.max_iterations
                          : 2000 + 50 * static_cast<long long>(ntotal_);
    std::vector<double> c, y, alpha;
    while (iterations_ < limit) {
        if (phase1 && infeasibility() <= opts_.feas_tol) return true;

        phase_costs(c, phase1);
        // y' = c_B' Binv
        y.assign(nrows_, 0.0);
        for (std::size_t i = 0; i < nrows_; ++i) {
            double cb = c[basis_[i]];
            if (cb == 0.0) continue;
            for (std::size_t k = 0; k < nrows_; ++k) y[k] += cb * binv(i, k);
        }

        const bool bland = stall_count_ > 40;
        int enter = -1;
        double best = phase1 ? -opts_.feas_tol : -opts_.opt_tol;
        double enter_d = 0;
        for (std::size_t j = 0; j < ntotal_; ++j) {
            if (status_[j] == VarStatus::kBasic) continue;
            if (ub_[j] - lb_[j] <= kPivotTol) continue;  // fixed variable
            double d = c[j];
            for (auto [i, a] : cols_[j]) d -= y[i] * a;
            double viol = (status_[j] == VarStatus::kAtLower) ? -d : d;
            if (viol > -best) {  // note best starts negative => viol > tol
                enter = static_cast<int>(j);
                enter_d = d;
                if (bland) break;
                best = -viol;
            }
        }
        if (enter < 0) return true;

        double dir = (status_[enter] == VarStatus::kAtLower) ? 1.0 : -1.0;
        // alpha = Binv * A_enter
        alpha.assign(nrows_, 0.0);
        for (auto [i, a] : cols_[enter])
            for (std::size_t k = 0; k < nrows_; ++k) alpha[k] += binv(k, i) * a;

        // Ratio test: first breakpoint along the improving direction.
        double t_max = ub_[enter] - lb_[enter];  // bound flip
        int leave = -1;
        double leave_target = 0;
        for (std::size_t i = 0; i < nrows_; ++i) {
            if (std::fabs(alpha[i]) < kPivotTol) continue;
            int bj = basis_[i];
            double delta = -dir * alpha[i];  // d x_B[i] / dt
            double limit_t = kInf, target = 0;
            bool above = xb_[i] > ub_[bj] + opts_.feas_tol;
            bool below = xb_[i] < lb_[bj] - opts_.feas_tol;
            if (above) {
                if (delta < 0) { limit_t = (xb_[i] - ub_[bj]) / -delta; target = ub_[bj]; }
            } else if (below) {
                if (delta > 0) { limit_t = (lb_[bj] - xb_[i]) / delta; target = lb_[bj]; }
            } else {
                if (delta < 0 && std::isfinite(lb_[bj])) {
                    limit_t = (xb_[i] - lb_[bj]) / -delta;
                    target = lb_[bj];
                } else if (delta > 0 && std::isfinite(ub_[bj])) {
                    limit_t = (ub_[bj] - xb_[i]) / delta;
                    target = ub_[bj];
                }
            }
            if (limit_t < t_max - 1e-12 ||
                (leave >= 0 && limit_t < t_max + 1e-12 &&
                 std::fabs(alpha[i]) > std::fabs(alpha[leave]))) {
                t_max = std::max(limit_t, 0.0);
                leave = static_cast<int>(i);
                leave_target = target;
            }
        }

        if (leave < 0 && !std::isfinite(t_max)) {
            if (phase1)
                throw std::runtime_error("unbounded phase-1 direction");
            return false;  // caller reports unbounded
        }

        ++iterations_;
        stall_count_ = (t_max <= 1e-11) ? stall_count_ + 1 : 0;

        // Apply the step.
        for (std::size_t i = 0; i < nrows_; ++i)
            xb_[i] += t_max * (-dir * alpha[i]);
        double enter_val =
            (status_[enter] == VarStatus::kAtLower ? lb_[enter] + t_max
                                                   : ub_[enter] - t_max);
        if (leave < 0) {
            // Bound flip, basis unchanged.
            status_[enter] = (status_[enter] == VarStatus::kAtLower)
                                 ? VarStatus::kAtUpper
                                 : VarStatus::kAtLower;
            xn_[enter] = enter_val;
            continue;
        }

        int out = basis_[leave];
        status_[out] = (leave_target == ub_[out] && std::isfinite(ub_[out]))
                           ? VarStatus::kAtUpper
                           : VarStatus::kAtLower;
        xn_[out] = leave_target;
        basis_[leave] = enter;
        status_[enter] = VarStatus::kBasic;
        xb_[leave] = enter_val;

        // Binv update: eliminate alpha against pivot row `leave`.
        double piv = alpha[leave];
        for (std::size_t k = 0; k < nrows_; ++k) binv(leave, k) /= piv;
        for (std::size_t i = 0; i < nrows_; ++i) {
            if (static_cast<int>(i) == leave) continue;
            double f = alpha[i];
            if (std::fabs(f) < 1e-14) continue;
            for (std::size_t k = 0; k < nrows_; ++k)
                binv(i, k) -= f * binv(leave, k);
        }
        (void)enter_d;

        if (iterations_ % 128 == 0) refactorize();
    }
    return false;
}

SimplexResult Simplex::extract(SolveStatus st) {
    SimplexResult res;
    res.status = st;
    res.iterations = iterations_;
    res.x.assign(nstruct_, 0.0);
    res.reduced_costs.assign(nstruct_, 0.0);
    res.duals.assign(nrows_, 0.0);
    res.col_status.resize(ntotal_);
    for (std::size_t j = 0; j < ntotal_; ++j)
        res.col_status[j] = status_[j] == VarStatus::kBasic   ? 0
                            : status_[j] == VarStatus::kAtLower ? 1
                                                                : 2;
    if (st == SolveStatus::kInfeasible) return res;

    std::vector<double> full(ntotal_);
    for (std::size_t j = 0; j < ntotal_; ++j) full[j] = xn_[j];
    for (std::size_t i = 0; i < nrows_; ++i) full[basis_[i]] = xb_[i];
    for (std::size_t j = 0; j < nstruct_; ++j) res.x[j] = full[j];

    std::vector<double> y(nrows_, 0.0);
    for (std::size_t i = 0; i < nrows_; ++i) {
        double cb = cost_[basis_[i]];
        if (cb == 0.0) continue;
        for (std::size_t k = 0; k < nrows_; ++k) y[k] += cb * binv(i, k);
    }
    res.duals = y;
    double obj = 0;
    for (std::size_t j = 0; j < nstruct_; ++j) {
        double d = cost_[j];
        for (auto [i, a] : cols_[j]) d -= y[i] * a;
        res.reduced_costs[j] = d;
        obj += cost_[j] * res.x[j];
    }
    res.objective = obj;
    return res;
}

SimplexResult Simplex::run() {
    if (infeasibility() > opts_.feas_tol) {
        if (!phase_loop(true)) return extract(SolveStatus::kIterationLimit);
        if (infeasibility() > 1e-7) return extract(SolveStatus::kInfeasible);
    }
    stall_count_ = 0;
    bool done = phase_loop(false);
    if (!done) {
        long long limit = opts_.max_iterations > 0
                              ? opts_.max_iterations
                              : 2000 + 50 * static_cast<long long>(ntotal_);
        return extract(iterations_ >= limit ? SolveStatus::kIterationLimit
                                            : SolveStatus::kUnbounded);
    }
    return extract(SolveStatus::kOptimal);
}

}  // namespace

SimplexResult solve_simplex(const LinearProgram& lp, const SimplexOptions& opts) {
    if (static_cast<int>(lp.objective.size()) != lp.num_cols ||
        static_cast<int>(lp.lower.size()) != lp.num_cols ||
        static_cast<int>(lp.upper.size()) != lp.num_cols)
        throw std::invalid_argument("inconsistent LP column arrays");
    Simplex s(lp, opts);
    return s.run();
}

}  // namespace sparsetsp

// Copyright 2026 The j1j2vqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "j1j2vqe/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "j1j2vqe/error.hpp"

namespace j1j2 {

std::string_view to_string(LocalStatus s) noexcept {
    return s == LocalStatus::Converged ? "converged" : "budget_exhausted";
}

namespace {

// Simplex acceptability: no vertex farther than kFar * rho from the best one,
// no vertex closer than kFlat * rho to the face spanned by the others.
constexpr double kFlat = 0.25;
constexpr double kFar = 2.1;
// Geometry steps move kGeometryStep * rho from the best vertex.
constexpr double kGeometryStep = 0.5;
constexpr double kSuccessRatio = 0.1;

struct BudgetHit {};

class Cobyla {
  public:
    Cobyla(const Objective &f, std::span<const double> x0, const CobylaOptions &opts)
        : f_(f), opts_(opts), m_(static_cast<Eigen::Index>(x0.size())) {
        if (x0.empty())
            throw Error(ErrorCode::InvalidConfig, "cobyla needs at least one variable");
        if (!(opts.rho_begin > opts.rho_end) || !(opts.rho_end > 0.0))
            throw Error(ErrorCode::InvalidConfig, "need rho_begin > rho_end > 0");
        start_ = Eigen::Map<const Eigen::VectorXd>(x0.data(), m_);
        result_.x_best.assign(x0.begin(), x0.end());
        result_.f_best = std::numeric_limits<double>::infinity();
    }

    LocalResult run() {
        try {
            optimize();
            result_.status = LocalStatus::Converged;
        } catch (const BudgetHit &) {
            result_.status = LocalStatus::BudgetExhausted;
        }
        return result_;
    }

  private:
    double evaluate(const Eigen::VectorXd &x) {
        if (result_.n_evals >= opts_.max_evals)
            throw BudgetHit{};
        const double fx = f_(std::span<const double>(x.data(), static_cast<std::size_t>(m_)));
        ++result_.n_evals;
        if (!std::isfinite(fx))
            throw Error(ErrorCode::NonFiniteObjective,
                        "objective returned a non-finite value at evaluation " +
                            std::to_string(result_.n_evals));
        if (fx < result_.f_best) {
            result_.f_best = fx;
            result_.x_best.assign(x.data(), x.data() + m_);
        }
        return fx;
    }

    void optimize() {
        rho_ = opts_.rho_begin;
        const Eigen::Index np = m_ + 1;
        pts_.resize(m_, np);
        vals_.resize(np);
        pts_.col(0) = start_;
        vals_(0) = evaluate(start_);
        for (Eigen::Index i = 0; i < m_; ++i) {
            pts_.col(i + 1) = start_;
            pts_(i, i + 1) += rho_;
            vals_(i + 1) = evaluate(pts_.col(i + 1));
        }
        rebuild();

        while (true) {
            const Eigen::Index b = best_index();
            const Eigen::VectorXd g = gradient();
            const double gnorm = g.norm();

            bool success = false;
            if (gnorm > 0.0 && std::isfinite(gnorm)) {
                const Eigen::VectorXd trial = pts_.col(b) - (rho_ / gnorm) * g;
                const double f_trial = evaluate(trial);
                ++result_.n_iterations;
                const double predicted = rho_ * gnorm;
                const double ratio = (vals_(b) - f_trial) / predicted;
                absorb(trial, f_trial, b);
                success = ratio > kSuccessRatio;
            }
            if (success)
                continue;

            if (improve_geometry())
                continue;

            if (rho_ <= opts_.rho_end)
                return;
            rho_ *= 0.5;
            if (rho_ <= 1.5 * opts_.rho_end)
                rho_ = opts_.rho_end;
            rebuild();
        }
    }

    [[nodiscard]] Eigen::Index best_index() const {
        Eigen::Index b = 0;
        for (Eigen::Index i = 1; i < vals_.size(); ++i)
            if (vals_(i) < vals_(b))
                b = i;
        return b;
    }

    // Rows of A are [1, (x_i - base) / rho]; the model coefficients are inv * f.
    void rebuild() {
        base_ = pts_.col(best_index());
        const Eigen::Index np = m_ + 1;
        Eigen::MatrixXd a(np, np);
        for (Eigen::Index i = 0; i < np; ++i) {
            a(i, 0) = 1.0;
            a.row(i).tail(m_) = ((pts_.col(i) - base_) / rho_).transpose();
        }
        inv_ = a.partialPivLu().inverse();
        updates_since_rebuild_ = 0;
    }

    [[nodiscard]] Eigen::VectorXd scaled_row(const Eigen::VectorXd &x) const {
        Eigen::VectorXd a(m_ + 1);
        a(0) = 1.0;
        a.tail(m_) = (x - base_) / rho_;
        return a;
    }

    [[nodiscard]] Eigen::VectorXd gradient() const {
        return (inv_.bottomRows(m_) * vals_) / rho_;
    }

    // Values at x of the Lagrange functions of the current simplex.
    [[nodiscard]] Eigen::VectorXd lagrange(const Eigen::VectorXd &x) const {
        return inv_.transpose() * scaled_row(x);
    }

    void replace(Eigen::Index j, const Eigen::VectorXd &x, double fx) {
        const Eigen::VectorXd a_new = scaled_row(x);
        const Eigen::VectorXd row = inv_.transpose() * a_new; // a_new^T inv
        const Eigen::VectorXd col = inv_.col(j);
        // Sherman-Morrison for A with row j replaced by a_new.
        Eigen::RowVectorXd delta = row.transpose();
        delta(j) -= 1.0;
        inv_.noalias() -= (col / row(j)) * delta;
        pts_.col(j) = x;
        vals_(j) = fx;
        if (++updates_since_rebuild_ > static_cast<std::size_t>(m_))
            rebuild();
    }

    // Brings an evaluated trust-region point into the simplex when it lowers
    // the objective or improves the simplex volume.
    void absorb(const Eigen::VectorXd &x, double fx, Eigen::Index b) {
        const Eigen::VectorXd lam = lagrange(x);
        Eigen::Index drop = -1;
        double best_score = fx < vals_(b) ? 0.0 : 1.0;
        for (Eigen::Index j = 0; j < lam.size(); ++j) {
            if (j == b)
                continue;
            const double dist = (pts_.col(j) - pts_.col(b)).norm() / rho_;
            const double score = std::abs(lam(j)) * std::max(1.0, dist * dist);
            if (score > best_score && std::abs(lam(j)) > 1e-8) {
                best_score = score;
                drop = j;
            }
        }
        if (drop >= 0)
            replace(drop, x, fx);
    }

    // Replaces the worst-placed vertex; returns false if the simplex is fine.
    bool improve_geometry() {
        const Eigen::Index b = best_index();
        Eigen::Index drop = -1;
        double worst_far = kFar * rho_;
        for (Eigen::Index j = 0; j <= m_; ++j) {
            if (j == b)
                continue;
            const double dist = (pts_.col(j) - pts_.col(b)).norm();
            if (dist > worst_far) {
                worst_far = dist;
                drop = j;
            }
        }
        if (drop < 0) {
            double worst_flat = kFlat * rho_;
            for (Eigen::Index j = 0; j <= m_; ++j) {
                if (j == b)
                    continue;
                const double face = rho_ / inv_.col(j).tail(m_).norm();
                if (face < worst_flat) {
                    worst_flat = face;
                    drop = j;
                }
            }
        }
        if (drop < 0)
            return false;

        Eigen::VectorXd dir = inv_.col(drop).tail(m_);
        dir.normalize();
        Eigen::VectorXd step = kGeometryStep * rho_ * dir;
        if (gradient().dot(step) > 0.0)
            step = -step;
        const Eigen::VectorXd x = pts_.col(b) + step;
        const double fx = evaluate(x);
        ++result_.n_iterations;
        replace(drop, x, fx);
        return true;
    }

    const Objective &f_;
    CobylaOptions opts_;
    Eigen::Index m_;
    Eigen::VectorXd start_;
    Eigen::MatrixXd pts_;
    Eigen::VectorXd vals_;
    Eigen::VectorXd base_;
    Eigen::MatrixXd inv_;
    double rho_ = 0.0;
    std::size_t updates_since_rebuild_ = 0;
    LocalResult result_;
};

} // namespace

LocalResult cobyla_minimize(const Objective &f, std::span<const double> x0,
                            const CobylaOptions &opts) {
    return Cobyla(f, x0, opts).run();
}

LocalResult basin_hopping(const Objective &f, std::span<const double> x0,
                          const CobylaOptions &local, const HopConfig &hop,
                          const std::function<void(const HopEvent &)> &on_hop) {
    if (!(hop.step_size > 0.0))
        throw Error(ErrorCode::InvalidConfig, "basin-hopping step size must be positive");
    if (!(hop.temperature >= 0.0))
        throw Error(ErrorCode::InvalidConfig, "basin-hopping temperature must be >= 0");

    std::size_t used = 0;
    const auto local_opts = [&]() {
        CobylaOptions o = local;
        if (hop.max_total_evals > 0)
            o.max_evals = std::min(o.max_evals, hop.max_total_evals - used);
        return o;
    };
    const auto budget_left = [&] { return hop.max_total_evals == 0 || used < hop.max_total_evals; };

    LocalResult best = cobyla_minimize(f, x0, local_opts());
    used += best.n_evals;
    std::vector<double> x_acc = best.x_best;
    double f_acc = best.f_best;
    std::size_t iterations = best.n_iterations;
    LocalStatus status = best.status;

    std::mt19937_64 rng(hop.seed);
    std::uniform_real_distribution<double> displacement(-hop.step_size, hop.step_size);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (std::size_t h = 1; h <= hop.n_hops && budget_left(); ++h) {
        std::vector<double> x_try = x_acc;
        for (double &v : x_try)
            v += displacement(rng);
        LocalResult r = cobyla_minimize(f, x_try, local_opts());
        used += r.n_evals;
        iterations += r.n_iterations;
        if (r.status == LocalStatus::BudgetExhausted)
            status = LocalStatus::BudgetExhausted;

        bool accept = r.f_best < f_acc;
        if (!accept && hop.temperature > 0.0)
            accept = unit(rng) < std::exp(-(r.f_best - f_acc) / hop.temperature);
        if (accept) {
            x_acc = r.x_best;
            f_acc = r.f_best;
        }
        if (r.f_best < best.f_best) {
            best.x_best = std::move(r.x_best);
            best.f_best = r.f_best;
        }
        if (on_hop)
            on_hop({h, r.f_best, accept, f_acc});
    }
    best.n_evals = used;
    best.n_iterations = iterations;
    best.status = status;
    return best;
}

} // namespace j1j2

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
#include "j1j2vqe/spectrum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "j1j2vqe/error.hpp"

namespace j1j2 {

std::string_view to_string(SpectrumMethod m) noexcept {
    switch (m) {
    case SpectrumMethod::Auto: return "auto";
    case SpectrumMethod::Dense: return "dense";
    case SpectrumMethod::IterativeKrylov: return "iterative";
    }
    return "?";
}

namespace {

using Vec = std::vector<cplx>;

Eigen::MatrixXcd dense_matrix(const ObservableSum &h) {
    const std::size_t n = h.n_sites();
    const std::uint64_t dim = std::uint64_t{1} << n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
    static constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (const PauliTerm &t : h.terms()) {
        std::uint64_t xmask = 0, zmask = 0;
        int n_y = 0;
        for (const auto &[site, p] : t.string.ops()) {
            const std::uint64_t bit = std::uint64_t{1} << (n - 1 - site);
            if (p != Pauli::Z)
                xmask |= bit;
            if (p != Pauli::X)
                zmask |= bit;
            n_y += p == Pauli::Y;
        }
        const cplx factor = t.coeff * kIPow[n_y % 4];
        for (std::uint64_t x = 0; x < dim; ++x) {
            const double sign = (std::popcount(x & zmask) & 1) ? -1.0 : 1.0;
            m(static_cast<Eigen::Index>(x ^ xmask), static_cast<Eigen::Index>(x)) += sign * factor;
        }
    }
    return m;
}

StateVector to_state(Vec v) {
    StateVector s = StateVector::from_amplitudes(std::move(v));
    s.normalize();
    return s;
}

SpectrumResult solve_dense(const ObservableSum &h, bool want_vectors) {
    const Eigen::MatrixXcd m = dense_matrix(h);
    SpectrumResult out;
    out.method = SpectrumMethod::Dense;
    const auto mode = want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
    Eigen::VectorXcd ground;
    if (m.imag().cwiseAbs().maxCoeff() == 0.0) {
        const Eigen::MatrixXd re = m.real();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(re, mode);
        out.e0 = es.eigenvalues()(0);
        out.e1 = es.eigenvalues()(1);
        if (want_vectors)
            ground = es.eigenvectors().col(0).cast<cplx>();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, mode);
        out.e0 = es.eigenvalues()(0);
        out.e1 = es.eigenvalues()(1);
        if (want_vectors)
            ground = es.eigenvectors().col(0);
    }
    if (want_vectors)
        out.ground_vec = to_state(Vec(ground.data(), ground.data() + ground.size()));
    return out;
}

cplx dot(const Vec &a, const Vec &b) {
    cplx s{};
    for (std::size_t k = 0; k < a.size(); ++k)
        s += std::conj(a[k]) * b[k];
    return s;
}

double norm2(const Vec &a) {
    double s = 0.0;
    for (const cplx &x : a)
        s += std::norm(x);
    return std::sqrt(s);
}

void axpy(cplx alpha, const Vec &x, Vec &y) {
    for (std::size_t k = 0; k < y.size(); ++k)
        y[k] += alpha * x[k];
}

void scale(Vec &v, double s) {
    for (cplx &x : v)
        x *= s;
}

// Classical Gram-Schmidt, applied twice.
void orthogonalize(Vec &w, const std::vector<Vec> &basis) {
    for (int pass = 0; pass < 2; ++pass)
        for (const Vec &b : basis)
            axpy(-dot(b, w), b, w);
}

struct Eigenpair {
    double value;
    Vec vector;
};

class Lanczos {
  public:
    Lanczos(const CompiledObservable &op, std::size_t dim, const SpectrumOptions &opts)
        : op_(op), dim_(dim), opts_(opts) {
        const std::size_t per_vec = dim * sizeof(cplx);
        basis_cap_ = std::clamp<std::size_t>(opts.basis_memory_bytes / per_vec, 8, 120);
    }

    [[nodiscard]] std::size_t matvecs() const noexcept { return matvecs_; }

    /// Lowest eigenpair of H restricted to the orthogonal complement of `deflate`.
    Eigenpair lowest(const std::vector<Vec> &deflate, std::mt19937_64 &rng) {
        Vec v(dim_);
        std::normal_distribution<double> gauss;
        for (cplx &x : v)
            x = {gauss(rng), gauss(rng)};
        orthogonalize(v, deflate);
        scale(v, 1.0 / norm2(v));

        const std::size_t cap = std::min(basis_cap_, dim_ - deflate.size());
        while (true) {
            std::vector<Vec> basis{v};
            std::vector<double> alpha, beta;
            Vec w(dim_);
            for (std::size_t k = 0;; ++k) {
                matvec(basis[k], w, deflate);
                alpha.push_back(dot(basis[k], w).real());
                orthogonalize(w, basis);
                const double b = norm2(w);
                const bool full = k + 1 >= cap;
                const bool invariant = b <= 1e-10 * std::max(1.0, std::abs(alpha.back()));
                if (full || invariant || (k + 1) % 4 == 0) {
                    const auto [theta, s] = ritz(alpha, beta);
                    const double est = b * std::abs(s(static_cast<Eigen::Index>(k)));
                    if (full || invariant || est < tolerance(theta)) {
                        v.assign(dim_, cplx{});
                        for (std::size_t j = 0; j <= k; ++j)
                            axpy(s(static_cast<Eigen::Index>(j)), basis[j], v);
                        orthogonalize(v, deflate);
                        scale(v, 1.0 / norm2(v));
                        if (auto done = verify(v, deflate))
                            return std::move(*done);
                        break; // restart from the Ritz vector
                    }
                }
                beta.push_back(b);
                scale(w, 1.0 / b);
                basis.push_back(w);
            }
        }
    }

  private:
    [[nodiscard]] double tolerance(double theta) const {
        return opts_.residual_tol * std::max(1.0, std::abs(theta));
    }

    void matvec(const Vec &in, Vec &out, const std::vector<Vec> &deflate) {
        if (matvecs_ >= opts_.max_matvecs)
            throw Error(ErrorCode::NonConvergence,
                        "Lanczos used " + std::to_string(matvecs_) +
                            " matrix-vector products without reaching the residual tolerance");
        op_.apply(in, out);
        ++matvecs_;
        orthogonalize(out, deflate);
    }

    std::optional<Eigenpair> verify(const Vec &x, const std::vector<Vec> &deflate) {
        Vec hx(dim_);
        matvec(x, hx, deflate);
        const double rq = dot(x, hx).real();
        axpy(-rq, x, hx);
        if (norm2(hx) < tolerance(rq))
            return Eigenpair{rq, x};
        return std::nullopt;
    }

    static std::pair<double, Eigen::VectorXd> ritz(const std::vector<double> &alpha,
                                                   const std::vector<double> &beta) {
        const auto m = static_cast<Eigen::Index>(alpha.size());
        if (m == 1)
            return {alpha[0], Eigen::VectorXd::Ones(1)};
        const Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
        const Eigen::VectorXd sub = Eigen::Map<const Eigen::VectorXd>(beta.data(), m - 1);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
        return {es.eigenvalues()(0), es.eigenvectors().col(0)};
    }

    const CompiledObservable &op_;
    std::size_t dim_;
    const SpectrumOptions &opts_;
    std::size_t basis_cap_ = 0;
    std::size_t matvecs_ = 0;
};

SpectrumResult solve_iterative(const ObservableSum &h, bool want_vectors,
                               const SpectrumOptions &opts) {
    const std::size_t dim = std::size_t{1} << h.n_sites();
    const CompiledObservable op(h);
    Lanczos lanczos(op, dim, opts);
    std::mt19937_64 rng(opts.seed);

    Eigenpair ground = lanczos.lowest({}, rng);
    Eigenpair excited = lanczos.lowest({ground.vector}, rng);
    // A start vector with no weight on the true ground state converges to an
    // excited level; the deflated run then exposes it.
    for (int retry = 0; retry < 3 && excited.value < ground.value - 1e-8; ++retry) {
        ground = std::move(excited);
        excited = lanczos.lowest({ground.vector}, rng);
    }
    if (excited.value < ground.value)
        excited.value = ground.value; // degenerate up to the residual tolerance

    SpectrumResult out;
    out.method = SpectrumMethod::IterativeKrylov;
    out.e0 = ground.value;
    out.e1 = excited.value;
    out.matvecs = lanczos.matvecs();
    if (want_vectors)
        out.ground_vec = to_state(std::move(ground.vector));
    return out;
}

} // namespace

SpectrumResult lowest_two(const ObservableSum &h, bool want_vectors, const SpectrumOptions &opts) {
    const std::size_t n = h.n_sites();
    SpectrumMethod method = opts.method;
    if (method == SpectrumMethod::Auto)
        method = n <= opts.dense_max_qubits ? SpectrumMethod::Dense
                                            : SpectrumMethod::IterativeKrylov;

    if (method == SpectrumMethod::Dense) {
        if (n > 12)
            throw Error(ErrorCode::CapExceeded,
                        "dense diagonalization is limited to 12 qubits, got " + std::to_string(n));
        return solve_dense(h, want_vectors);
    }
    if (n > opts.iterative_max_qubits)
        throw Error(ErrorCode::CapExceeded, "iterative diagonalization is limited to " +
                                                std::to_string(opts.iterative_max_qubits) +
                                                " qubits, got " + std::to_string(n));
    if (n < 2)
        return solve_dense(h, want_vectors);
    return solve_iterative(h, want_vectors, opts);
}

double gap_metric(double e_bar, double e0, double e1) {
    if (e1 - e0 < 1e-12)
        throw Error(ErrorCode::ZeroGap, "spectral gap below 1e-12");
    return (e_bar - e0) / (e1 - e0);
}

} // namespace j1j2

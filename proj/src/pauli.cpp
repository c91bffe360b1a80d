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
#include "j1j2vqe/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "j1j2vqe/error.hpp"
#include "bits.hpp"

namespace j1j2 {

char to_char(Pauli p) noexcept {
    switch (p) {
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
    }
    return '?';
}

PauliString::PauliString(std::size_t n_sites, std::vector<std::pair<std::size_t, Pauli>> ops)
    : n_sites_(n_sites), ops_(std::move(ops)) {
    std::sort(ops_.begin(), ops_.end());
    for (std::size_t k = 0; k < ops_.size(); ++k) {
        if (ops_[k].first >= n_sites_)
            throw Error(ErrorCode::IndexOutOfRange,
                        "site " + std::to_string(ops_[k].first) + " outside " +
                            std::to_string(n_sites_) + " sites");
        if (k > 0 && ops_[k].first == ops_[k - 1].first)
            throw Error(ErrorCode::EqualIndices, "site repeated within a Pauli string");
    }
}

std::string PauliString::label() const {
    if (ops_.empty())
        return "I";
    std::string out;
    for (const auto &[site, p] : ops_) {
        if (!out.empty())
            out += ' ';
        out += to_char(p);
        out += std::to_string(site);
    }
    return out;
}

ObservableSum::ObservableSum(std::size_t n_sites) : n_sites_(n_sites) {}

void ObservableSum::add(double coeff, const PauliString &s) {
    if (s.n_sites() != n_sites_)
        throw Error(ErrorCode::DimensionMismatch, "Pauli string register differs from the sum");
    for (PauliTerm &t : terms_) {
        if (t.string == s) {
            t.coeff += coeff;
            return;
        }
    }
    terms_.push_back({coeff, s});
}

void ObservableSum::add(const ObservableSum &other, double scale) {
    for (const PauliTerm &t : other.terms())
        add(scale * t.coeff, t.string);
}

void ObservableSum::prune(double tol) {
    std::erase_if(terms_, [tol](const PauliTerm &t) { return std::abs(t.coeff) <= tol; });
}

ObservableSum heisenberg_bond(std::size_t i, std::size_t j, double coeff, std::size_t n) {
    if (i >= n || j >= n)
        throw Error(ErrorCode::IndexOutOfRange, "bond endpoint outside the lattice");
    if (i == j)
        throw Error(ErrorCode::EqualIndices, "bond endpoints coincide");
    ObservableSum out(n);
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z})
        out.add(coeff, PauliString(n, {{i, p}, {j, p}}));
    return out;
}

ObservableSum build_hamiltonian(const Lattice &lat, double j1, double j2) {
    const std::size_t n = lat.n_sites();
    ObservableSum h(n);
    if (j1 != 0.0)
        for (const auto &[a, b] : lat.nn_edges())
            h.add(heisenberg_bond(a, b, -j1, n));
    if (j2 != 0.0)
        for (const auto &[a, b] : lat.nnn_edges())
            h.add(heisenberg_bond(a, b, -j2, n));
    h.prune();
    return h;
}

namespace {

inline double parity_sign(std::uint64_t x) noexcept {
    return (std::popcount(x) & 1) ? -1.0 : 1.0;
}

} // namespace

CompiledObservable::CompiledObservable(const ObservableSum &obs) : n_sites_(obs.n_sites()) {
    const auto mask = [n = n_sites_](std::size_t q) { return std::uint64_t{1} << (n - 1 - q); };
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_slot;
    for (const PauliTerm &t : obs.terms()) {
        const auto &ops = t.string.ops();
        if (ops.size() == 2 && ops[0].second == ops[1].second) {
            const auto key = std::make_pair(ops[0].first, ops[1].first);
            auto [it, inserted] = pair_slot.try_emplace(key, pairs_.size());
            if (inserted)
                pairs_.push_back({mask(key.first), mask(key.second), 0.0, 0.0, 0.0});
            PairTerm &pt = pairs_[it->second];
            switch (ops[0].second) {
            case Pauli::X: pt.cxx += t.coeff; break;
            case Pauli::Y: pt.cyy += t.coeff; break;
            case Pauli::Z: pt.czz += t.coeff; break;
            }
            continue;
        }
        MaskTerm mt{0, 0, t.coeff};
        int n_y = 0;
        for (const auto &[site, p] : ops) {
            if (p != Pauli::Z)
                mt.xmask |= mask(site);
            if (p != Pauli::X)
                mt.zmask |= mask(site);
            n_y += p == Pauli::Y;
        }
        static constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        mt.factor *= kIPow[n_y % 4];
        masked_.push_back(mt);
    }
}

std::complex<double> CompiledObservable::expectation_raw(const StateVector &psi) const {
    const cplx *a = psi.amplitudes().data();
    const std::uint64_t dim = psi.dim();
    double real_acc = 0.0;
    for (const PairTerm &pt : pairs_) {
        double zz = 0.0, re_0011 = 0.0, re_0110 = 0.0;
        detail::for_each_clear_pair(dim, pt.mi, pt.mj, [&](std::uint64_t x) {
            const cplx a00 = a[x], a01 = a[x | pt.mj], a10 = a[x | pt.mi],
                       a11 = a[x | pt.mi | pt.mj];
            zz += std::norm(a00) - std::norm(a01) - std::norm(a10) + std::norm(a11);
            re_0011 += a00.real() * a11.real() + a00.imag() * a11.imag();
            re_0110 += a01.real() * a10.real() + a01.imag() * a10.imag();
        });
        real_acc += pt.czz * zz + 2.0 * pt.cxx * (re_0011 + re_0110) +
                    2.0 * pt.cyy * (re_0110 - re_0011);
    }
    cplx acc{real_acc, 0.0};
    for (const MaskTerm &mt : masked_) {
        cplx s{};
        for (std::uint64_t x = 0; x < dim; ++x)
            s += std::conj(a[x ^ mt.xmask]) * (parity_sign(x & mt.zmask) * a[x]);
        acc += mt.factor * s;
    }
    return acc;
}

void CompiledObservable::apply(std::span<const cplx> in, std::span<cplx> out) const {
    if (in.size() != out.size() || in.size() != (std::size_t{1} << n_sites_))
        throw Error(ErrorCode::DimensionMismatch, "operator and vector dimensions differ");
    std::fill(out.begin(), out.end(), cplx{});
    const std::uint64_t dim = in.size();
    for (const PairTerm &pt : pairs_) {
        const double flip_same = pt.cxx - pt.cyy; // 00 <-> 11
        const double flip_diff = pt.cxx + pt.cyy; // 01 <-> 10
        detail::for_each_clear_pair(dim, pt.mi, pt.mj, [&](std::uint64_t x) {
            const std::uint64_t x01 = x | pt.mj, x10 = x | pt.mi, x11 = x | pt.mi | pt.mj;
            out[x] += pt.czz * in[x] + flip_same * in[x11];
            out[x11] += pt.czz * in[x11] + flip_same * in[x];
            out[x01] += -pt.czz * in[x01] + flip_diff * in[x10];
            out[x10] += -pt.czz * in[x10] + flip_diff * in[x01];
        });
    }
    for (const MaskTerm &mt : masked_)
        for (std::uint64_t x = 0; x < dim; ++x)
            out[x ^ mt.xmask] += mt.factor * (parity_sign(x & mt.zmask) * in[x]);
}

namespace {

void check_state(const ObservableSum &obs, const StateVector &psi) {
    if (obs.n_sites() != psi.n_qubits())
        throw Error(ErrorCode::DimensionMismatch,
                    "observable on " + std::to_string(obs.n_sites()) + " sites, state on " +
                        std::to_string(psi.n_qubits()) + " qubits");
    double sq = 0.0;
    for (const cplx &a : psi.amplitudes())
        sq += std::norm(a);
    if (std::abs(std::sqrt(sq) - 1.0) > 1e-10)
        throw Error(ErrorCode::NonNormalizedState, "state norm deviates from 1 by more than 1e-10");
}

} // namespace

std::complex<double> expectation_complex(const ObservableSum &obs, const StateVector &psi) {
    check_state(obs, psi);
    return CompiledObservable(obs).expectation_raw(psi);
}

double expectation(const ObservableSum &obs, const StateVector &psi) {
    return expectation_complex(obs, psi).real();
}

} // namespace j1j2

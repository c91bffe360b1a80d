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
#include "j1j2vqe/analysis.hpp"

#include <cmath>
#include <map>
#include <set>
#include <string>

#include "j1j2vqe/ansatz.hpp"
#include "j1j2vqe/error.hpp"

namespace j1j2 {

CorrelationMatrix correlation_matrix(const StateVector &psi, Pauli axis) {
    const std::size_t n = psi.n_qubits();
    CorrelationMatrix out{Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n),
                                                    static_cast<Eigen::Index>(n)),
                          axis};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            ObservableSum pair(n);
            pair.add(1.0, PauliString(n, {{i, axis}, {j, axis}}));
            const double c = expectation(pair, psi);
            out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = c;
            out.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = c;
        }
    }
    return out;
}

ScanResult min_resources_scan(std::span<const VqeRunRecord> records, double threshold) {
    if (records.empty())
        throw Error(ErrorCode::EmptyInput, "no run records to scan");

    // n_qubits -> layers -> best record at that depth
    std::map<std::size_t, std::map<std::size_t, const VqeRunRecord *>> groups;
    for (const VqeRunRecord &r : records) {
        const VqeRunRecord *&slot = groups[r.config.n_qubits()][r.config.n_layers];
        if (!slot || r.metric < slot->metric)
            slot = &r;
    }

    ScanResult out;
    for (const auto &[n, by_layers] : groups) {
        const VqeRunRecord *hit = nullptr;
        for (const auto &[layers, rec] : by_layers) {
            if (rec->metric <= threshold) {
                hit = rec;
                break;
            }
        }
        if (!hit) {
            out.warnings.push_back("no run on " + std::to_string(n) +
                                   " qubits reached metric <= " + std::to_string(threshold));
            continue;
        }
        const ResourceCount rc = predicted_resources(hit->config.ansatz_spec());
        out.rows.push_back({n, hit->config.n_layers, rc.two_qubit_gates, rc.n_params});
    }
    return out;
}

PowerLawFit power_law_fit(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2)
        throw Error(ErrorCode::InsufficientPoints, "power-law fit needs at least two points");
    std::set<double> xs;
    for (const auto &[n, y] : points) {
        if (!(n > 0.0) || !(y > 0.0))
            throw Error(ErrorCode::NonPositiveCoordinate,
                        "power-law fit needs positive coordinates");
        if (!xs.insert(n).second)
            throw Error(ErrorCode::InsufficientPoints, "power-law fit needs distinct n values");
    }

    const double count = static_cast<double>(points.size());
    double mx = 0.0, my = 0.0;
    for (const auto &[n, y] : points) {
        mx += std::log(n);
        my += std::log(y);
    }
    mx /= count;
    my /= count;
    double sxx = 0.0, sxy = 0.0;
    for (const auto &[n, y] : points) {
        const double dx = std::log(n) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(y) - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;

    double ss = 0.0;
    for (const auto &[n, y] : points) {
        const double r = std::log(y) - (intercept + slope * std::log(n));
        ss += r * r;
    }
    return {std::exp(intercept), slope, std::sqrt(ss / count)};
}

double extrapolate(const PowerLawFit &fit, double n) {
    if (!(n > 0.0))
        throw Error(ErrorCode::NonPositiveCoordinate, "extrapolation point must be positive");
    return fit.prefactor * std::pow(n, fit.exponent);
}

} // namespace j1j2

// Copyright 2026 The steerbox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "steerbox/discord.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>
#include <vector>

#include "steerbox/error.hpp"

namespace steerbox {

namespace {

constexpr double kEigenClamp = 1e-10;
constexpr double kGolden = 0.6180339887498949;

double entropy_of_spectrum(const Eigen::VectorXd &values) {
    double s = 0;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        double v = values(i);
        if (v < 0 && v >= -kEigenClamp) {
            v = 0;
        }
        if (v > 0) {
            s -= v * std::log2(v);
        }
    }
    return s;
}

// Tr_measured[(P x I) rho] or Tr_measured[(I x P) rho], unnormalized.
Eigen::Matrix2cd conditional_operator(const Eigen::MatrixXcd &rho, Party measured, const Eigen::Matrix2cd &p) {
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            std::complex<double> s = 0;
            for (int k = 0; k < 2; ++k) {
                for (int l = 0; l < 2; ++l) {
                    // Tr_M[(P x I) rho]_{ij} = sum_{k,l} P_{lk} rho_{(k,i),(l,j)}
                    if (measured == Party::Alice) {
                        s += p(l, k) * rho(k * 2 + i, l * 2 + j);
                    } else {
                        s += p(l, k) * rho(i * 2 + k, j * 2 + l);
                    }
                }
            }
            out(i, j) = s;
        }
    }
    return out;
}

double golden_section(auto f, double lo, double hi, double tol) {
    double c = hi - kGolden * (hi - lo);
    double d = lo + kGolden * (hi - lo);
    double fc = f(c), fd = f(d);
    while (hi - lo > tol) {
        if (fc <= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - kGolden * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + kGolden * (hi - lo);
            fd = f(d);
        }
    }
    return 0.5 * (lo + hi);
}

bool operators_commute(const std::array<Eigen::Matrix2cd, 4> &ops, double tol) {
    for (std::size_t i = 0; i < ops.size(); ++i) {
        for (std::size_t j = i + 1; j < ops.size(); ++j) {
            Eigen::Matrix2cd c = ops[i] * ops[j] - ops[j] * ops[i];
            if (c.cwiseAbs().maxCoeff() > tol) {
                return false;
            }
        }
    }
    return true;
}

void require_two_qubit(const DensityMatrix &state) {
    if (state.dimension() != 4) {
        throw Error(ErrorCode::InvalidState, "a two-qubit state is required");
    }
}

}  // namespace

double von_neumann_entropy(const DensityMatrix &m) { return entropy_of_spectrum(eigensystem(m).values); }

double binary_entropy(double p) {
    double s = 0;
    for (double v : {p, 1 - p}) {
        if (v > 0) {
            s -= v * std::log2(v);
        }
    }
    return s;
}

double measured_conditional_entropy(const DensityMatrix &state, Party measured, const Measurement &m) {
    require_two_qubit(state);
    double total = 0;
    for (int outcome = 0; outcome < 2; ++outcome) {
        Eigen::Matrix2cd cond = conditional_operator(state.matrix(), measured, m.projector(outcome));
        cond = 0.5 * (cond + cond.adjoint());
        double p = cond.trace().real();
        if (p <= 1e-15) {
            continue;
        }
        total += p * entropy_of_spectrum(eigensystem(Eigen::MatrixXcd(cond / p)).values);
    }
    return total;
}

ConditionalEntropyMin conditional_entropy_min(const DensityMatrix &state, Party measured, const SearchConfig &cfg) {
    require_two_qubit(state);
    if (cfg.theta_steps < 2 || cfg.phi_steps < 1 || cfg.refine_starts < 1 || !(cfg.angle_tolerance > 0)) {
        throw Error(ErrorCode::Config, "invalid search configuration");
    }
    auto objective = [&](double theta, double phi) {
        return measured_conditional_entropy(state, measured, Measurement::from_angles(theta, phi));
    };

    const double dtheta = std::numbers::pi / (cfg.theta_steps - 1);
    const double dphi = 2 * std::numbers::pi / cfg.phi_steps;
    struct Cell {
        double value, theta, phi;
    };
    std::vector<Cell> cells;
    cells.reserve(static_cast<std::size_t>(cfg.theta_steps * cfg.phi_steps));
    for (int i = 0; i < cfg.theta_steps; ++i) {
        for (int j = 0; j < cfg.phi_steps; ++j) {
            double theta = i * dtheta, phi = j * dphi;
            cells.push_back({objective(theta, phi), theta, phi});
        }
    }
    std::stable_sort(cells.begin(), cells.end(), [](const Cell &l, const Cell &r) {
        return std::tie(l.value, l.theta, l.phi) < std::tie(r.value, r.theta, r.phi);
    });

    ConditionalEntropyMin best;
    best.grid_best = cells.front().value;
    best.value = cells.front().value;
    best.theta = cells.front().theta;
    best.phi = cells.front().phi;

    int starts = std::min<int>(cfg.refine_starts, static_cast<int>(cells.size()));
    for (int s = 0; s < starts; ++s) {
        double theta = cells[static_cast<std::size_t>(s)].theta;
        double phi = cells[static_cast<std::size_t>(s)].phi;
        double value = cells[static_cast<std::size_t>(s)].value;
        for (int round = 0; round < 60; ++round) {
            double t_new = golden_section([&](double t) { return objective(t, phi); }, theta - dtheta,
                                          theta + dtheta, cfg.angle_tolerance);
            double v_t = objective(t_new, phi);
            double moved = 0;
            if (v_t < value) {
                moved = std::fabs(t_new - theta);
                theta = t_new;
                value = v_t;
            }
            double p_new = golden_section([&](double p) { return objective(theta, p); }, phi - dphi, phi + dphi,
                                          cfg.angle_tolerance);
            double v_p = objective(theta, p_new);
            if (v_p < value) {
                moved = std::max(moved, std::fabs(p_new - phi));
                phi = p_new;
                value = v_p;
            }
            if (moved < cfg.angle_tolerance) {
                break;
            }
        }
        if (value < best.value) {
            best.value = value;
            best.theta = theta;
            best.phi = phi;
        }
    }
    best.argmin = Measurement::from_angles(best.theta, best.phi);
    return best;
}

double mutual_information(const DensityMatrix &state) {
    require_two_qubit(state);
    return von_neumann_entropy(reduced_state(state, Party::Alice)) +
           von_neumann_entropy(reduced_state(state, Party::Bob)) - von_neumann_entropy(state);
}

DiscordResult discord(const DensityMatrix &state, Direction direction, const SearchConfig &cfg) {
    require_two_qubit(state);
    Party measured = steering_party(direction);
    auto cond = conditional_entropy_min(state, measured, cfg);
    double s_unmeasured = von_neumann_entropy(reduced_state(state, other(measured)));
    DiscordResult r;
    r.direction = direction;
    r.mutual_information = mutual_information(state);
    r.conditional_entropy = cond.value;
    r.classical_correlation = s_unmeasured - cond.value;
    r.discord = r.mutual_information - r.classical_correlation;
    r.argmin = cond.argmin;
    return r;
}

namespace {

// Operators Tr_{other}[(sigma_k on `side`) rho] living on the other party.
std::array<Eigen::Matrix2cd, 4> conditional_paulis(const DensityMatrix &state, Party side) {
    std::array<Eigen::Matrix2cd, 4> ops;
    for (int k = 0; k < 4; ++k) {
        ops[static_cast<std::size_t>(k)] = conditional_operator(state.matrix(), side, pauli(k));
    }
    return ops;
}

}  // namespace

bool is_quantum_classical(const DensityMatrix &state, double tol) {
    require_two_qubit(state);
    return operators_commute(conditional_paulis(state, Party::Alice), tol);
}

bool is_classical_quantum(const DensityMatrix &state, double tol) {
    require_two_qubit(state);
    return operators_commute(conditional_paulis(state, Party::Bob), tol);
}

}  // namespace steerbox

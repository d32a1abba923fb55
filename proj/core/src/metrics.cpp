#include "qbatt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qbatt {

namespace {

constexpr double kNegativeClip = 1e-10;   // eigensolver roundoff floor
constexpr double kEnergyFloor = 1e-12;    // degenerate-denominator guard for the ratio

void require_diagonal_hamiltonian(const ComplexMatrix& h) {
    for (int r = 0; r < h.dim(); ++r) {
        if (std::abs(h(r, r).imag()) > 1e-12) {
            throw std::invalid_argument("metrics: Hamiltonian diagonal must be real");
        }
        for (int c = 0; c < h.dim(); ++c) {
            if (r != c && std::abs(h(r, c)) > 1e-12) {
                throw std::invalid_argument("metrics: Hamiltonian must be diagonal");
            }
        }
    }
}

double real_energy(const ComplexMatrix& rho, const ComplexMatrix& h) {
    double e = 0.0;
    for (int i = 0; i < h.dim(); ++i) {
        e += rho(i, i).real() * h(i, i).real();
    }
    return e;
}

}  // namespace

double passive_energy_of_spectrum(std::span<const double> rho_spectrum, const ComplexMatrix& h) {
    std::vector<double> populations(rho_spectrum.begin(), rho_spectrum.end());
    for (double& s : populations) {
        s = std::max(s, 0.0);
    }
    std::sort(populations.begin(), populations.end(), std::greater<>());

    std::vector<double> energies(h.dim());
    for (int i = 0; i < h.dim(); ++i) {
        energies[i] = h(i, i).real();
    }
    std::stable_sort(energies.begin(), energies.end());

    double passive = 0.0;
    for (std::size_t j = 0; j < populations.size(); ++j) {
        passive += populations[j] * energies[j];
    }
    return passive;
}

PassiveState passive_state(const ComplexMatrix& rho, const ComplexMatrix& h) {
    require_diagonal_hamiltonian(h);
    if (rho.dim() != h.dim()) {
        throw std::invalid_argument("passive_state: state and Hamiltonian dimensions differ");
    }
    if (const DensityCheck check = is_density_matrix(rho, 1e-9); !check) {
        throw std::invalid_argument("passive_state: invalid density matrix: " + check.diagnostic);
    }

    PassiveState out;
    out.populations = hermitian_eigenvalues(rho, 1e-9);
    for (double& s : out.populations) {
        s = std::max(s, 0.0);
    }
    std::sort(out.populations.begin(), out.populations.end(), std::greater<>());

    out.energies.resize(h.dim());
    for (int i = 0; i < h.dim(); ++i) {
        out.energies[i] = h(i, i).real();
    }
    std::stable_sort(out.energies.begin(), out.energies.end());

    out.passive_energy = 0.0;
    for (std::size_t j = 0; j < out.populations.size(); ++j) {
        out.passive_energy += out.populations[j] * out.energies[j];
    }
    return out;
}

double ergotropy(const ComplexMatrix& rho, const ComplexMatrix& h) {
    const PassiveState passive = passive_state(rho, h);
    const double w = real_energy(rho, h) - passive.passive_energy;
    if (w < 0.0 && w > -kNegativeClip) {
        return 0.0;
    }
    return w;
}

double ergotropy_variation(const MetricsRecord& record, const MetricsRecord& initial) {
    return record.ergotropy - initial.ergotropy;
}

double ergotropy_ratio(const ComplexMatrix& rho_final, const ComplexMatrix& h) {
    require_diagonal_hamiltonian(h);
    const double energy = real_energy(rho_final, h);
    if (energy <= kEnergyFloor) {
        return 0.0;
    }
    return ergotropy(rho_final, h) / energy;
}

double figure_of_merit(double delta_w, double ratio) {
    return delta_w * ratio;
}

namespace {

void require_alpha_in_range(int alpha, int total_iterations) {
    if (alpha < 1 || alpha > total_iterations) {
        std::ostringstream msg;
        msg << "power: alpha = " << alpha << " outside 1.." << total_iterations
            << " (undefined at zero duration)";
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace

double power_work(int alpha, int total_iterations, double e_alpha, double e_initial) {
    require_alpha_in_range(alpha, total_iterations);
    const double duration = static_cast<double>(alpha) / total_iterations;
    return (e_alpha - e_initial) / duration;
}

double power_ergotropy(int alpha, int total_iterations, double delta_w_alpha) {
    require_alpha_in_range(alpha, total_iterations);
    const double duration = static_cast<double>(alpha) / total_iterations;
    return delta_w_alpha / duration;
}

MetricsRecord make_metrics_record(int alpha, int total_iterations, double energy,
                                  double ergotropy_value, const MetricsRecord* initial) {
    MetricsRecord rec;
    rec.iteration = alpha;
    rec.energy = energy;
    rec.ergotropy = ergotropy_value;
    rec.ergotropy_variation = initial != nullptr ? ergotropy_value - initial->ergotropy : 0.0;
    rec.ergotropy_ratio = energy > kEnergyFloor ? ergotropy_value / energy : 0.0;
    rec.figure_of_merit = rec.ergotropy_variation * rec.ergotropy_ratio;
    if (alpha >= 1 && initial != nullptr) {
        rec.power_work = power_work(alpha, total_iterations, energy, initial->energy);
        rec.power_ergotropy = power_ergotropy(alpha, total_iterations, rec.ergotropy_variation);
    }
    return rec;
}

}  // namespace qbatt

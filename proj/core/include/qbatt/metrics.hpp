#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qbatt/matrix.hpp"

namespace qbatt {

/// Passive counterpart of a state: the state with the same spectrum
/// whose populations decrease with energy. populations are the
/// eigenvalues of rho sorted non-increasing (clamped at 0 against
/// eigensolver roundoff); energies are the diagonal of H sorted
/// non-decreasing; passive_energy = sum_j populations[j] * energies[j].
struct PassiveState {
    std::vector<double> populations;
    std::vector<double> energies;
    double passive_energy = 0.0;
};

/// All per-iteration performance measures of a trajectory point.
/// Powers are undefined at zero duration and absent for iteration 0.
struct MetricsRecord {
    int iteration = 0;
    double energy = 0.0;
    double ergotropy = 0.0;
    double ergotropy_variation = 0.0;
    double ergotropy_ratio = 0.0;
    double figure_of_merit = 0.0;
    std::optional<double> power_work;
    std::optional<double> power_ergotropy;
};

PassiveState passive_state(const ComplexMatrix& rho, const ComplexMatrix& h);

/// Maximum unitarily extractable work, Tr[rho H] - Tr[sigma_rho H];
/// values within 1e-10 below zero are clipped to 0.
double ergotropy(const ComplexMatrix& rho, const ComplexMatrix& h);

/// Signed difference against the start of the trajectory; positive
/// means the battery charged, negative that it discharged.
double ergotropy_variation(const MetricsRecord& record, const MetricsRecord& initial);

/// Extractable fraction of the final internal energy; defined as 0 when
/// the energy denominator is at most 1e-12 (ground state).
double ergotropy_ratio(const ComplexMatrix& rho_final, const ComplexMatrix& h);

double figure_of_merit(double delta_w, double ratio);

/// Average-work charging power (e_alpha - e_initial) / (alpha / M).
/// Throws for alpha outside 1..M.
double power_work(int alpha, int total_iterations, double e_alpha, double e_initial);

/// Ergotropy-generation power delta_w_alpha / (alpha / M).
double power_ergotropy(int alpha, int total_iterations, double delta_w_alpha);

/// Passive energy from a precomputed spectrum of rho (any order) against
/// a diagonal Hamiltonian; shared by passive_state and the protocol loop.
double passive_energy_of_spectrum(std::span<const double> rho_spectrum, const ComplexMatrix& h);

/// Assemble the record for one trajectory point from precomputed energy
/// and ergotropy. `initial` is null for the iteration-0 record.
MetricsRecord make_metrics_record(int alpha, int total_iterations, double energy,
                                  double ergotropy_value, const MetricsRecord* initial);

}  // namespace qbatt

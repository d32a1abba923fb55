#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "qbatt/metrics.hpp"
#include "qbatt/protocol.hpp"

using namespace qbatt;
using qbatt::testing::random_density;
using std::numbers::pi;

namespace {

const ComplexMatrix kSingleH = ComplexMatrix::diagonal(std::vector<double>{0.0, 1.0});
const ComplexMatrix kTwoQubitH = ComplexMatrix::diagonal(std::vector<double>{0.0, 1.0, 1.0, 2.0});

/// Independent oracle: cheapest energy over every assignment of the
/// state's eigenvalues to the energy levels.
double brute_force_passive_energy(const ComplexMatrix& rho, const ComplexMatrix& h) {
    std::vector<double> populations = hermitian_eigenvalues(rho, 1e-9);
    for (double& s : populations) s = std::max(s, 0.0);
    std::vector<double> energies(h.dim());
    for (int i = 0; i < h.dim(); ++i) energies[i] = h(i, i).real();

    std::sort(populations.begin(), populations.end());
    double best = std::numeric_limits<double>::infinity();
    do {
        double assigned = 0.0;
        for (std::size_t j = 0; j < populations.size(); ++j) {
            assigned += populations[j] * energies[j];
        }
        best = std::min(best, assigned);
    } while (std::next_permutation(populations.begin(), populations.end()));
    return best;
}

}  // namespace

TEST_CASE("passive_state of a Gibbs qubit keeps its energy") {
    const ComplexMatrix g = gibbs_state(QubitHamiltonian{}, 4.0);
    const PassiveState ps = passive_state(g, kSingleH);
    CHECK(ps.passive_energy == doctest::Approx(g(1, 1).real()).epsilon(1e-13));
    CHECK(ergotropy(g, kSingleH) == 0.0);
}

TEST_CASE("passive_state of the excited qubit empties it") {
    const ComplexMatrix excited = ComplexMatrix::diagonal(std::vector<double>{0.0, 1.0});
    const PassiveState ps = passive_state(excited, kSingleH);
    CHECK(ps.populations[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(ps.populations[1] == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(ps.passive_energy == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("passive_state of the plus state is the ground state") {
    const PassiveState ps = passive_state(pure_state(pi / 2.0, 0.0), kSingleH);
    CHECK(ps.populations[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ps.passive_energy == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ergotropy(pure_state(pi / 2.0, 0.0), kSingleH) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("passive_state validates its inputs") {
    CHECK_THROWS_AS(passive_state(ComplexMatrix::diagonal(std::vector<double>{1.5, -0.5}), kSingleH),
                    std::invalid_argument);
    ComplexMatrix off(2);
    off(0, 0) = 0.5;
    off(1, 1) = 0.5;
    off(0, 1) = 0.3;
    off(1, 0) = 0.3;
    CHECK_THROWS_AS(passive_state(pure_state(1.0, 0.0), off), std::invalid_argument);
}

TEST_CASE("two-qubit ergotropy with an excited B") {
    const ComplexMatrix rho = kron(gibbs_state(QubitHamiltonian{}, 4.0), pure_state(pi, 0.0));
    CHECK(ergotropy(rho, kTwoQubitH) == doctest::Approx(1.0).epsilon(1e-12));

    const ComplexMatrix ground_b = kron(gibbs_state(QubitHamiltonian{}, 4.0), pure_state(0.0, 0.0));
    CHECK(ergotropy(ground_b, kTwoQubitH) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("brute-force passivity oracle agrees on random 4x4 states") {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 25; ++trial) {
        const ComplexMatrix rho = random_density(4, rng);
        const PassiveState ps = passive_state(rho, kTwoQubitH);
        CHECK(ps.passive_energy ==
              doctest::Approx(brute_force_passive_energy(rho, kTwoQubitH)).epsilon(1e-10));
    }
}

TEST_CASE("tie-breaking within degenerate levels cannot change the passive energy") {
    std::mt19937 rng(103);
    const ComplexMatrix rho = random_density(4, rng);
    // both orderings of the degenerate middle levels
    const ComplexMatrix ha = ComplexMatrix::diagonal(std::vector<double>{0.0, 1.0, 1.0, 2.0});
    const PassiveState ps = passive_state(rho, ha);
    double swapped = 0.0;
    {
        std::vector<double> populations = ps.populations;
        std::vector<double> energies = {0.0, 1.0, 1.0, 2.0};
        std::swap(energies[1], energies[2]);
        for (std::size_t j = 0; j < populations.size(); ++j) {
            swapped += populations[j] * energies[j];
        }
    }
    CHECK(std::abs(ps.passive_energy - swapped) < 1e-12);
}

TEST_CASE("Gibbs qubits carry no ergotropy at any temperature") {
    for (const double kT : {0.1, 0.4, 1.0, 4.0, 100.0}) {
        CHECK(std::abs(ergotropy(gibbs_state(QubitHamiltonian{}, kT), kSingleH)) < 1e-12);
    }
}

TEST_CASE("ergotropy only depends on the spectrum") {
    std::mt19937 rng(107);
    const ComplexMatrix rho = random_density(4, rng);
    const ComplexMatrix u = hermitian_eig(qbatt::testing::random_hermitian(4, rng)).eigenvectors;
    const ComplexMatrix rotated = conjugate_by(u, rho);
    const PassiveState a = passive_state(rho, kTwoQubitH);
    const PassiveState b = passive_state(rotated, kTwoQubitH);
    CHECK(std::abs(a.passive_energy - b.passive_energy) < 1e-10);
}

TEST_CASE("ergotropy is bounded by the energy above the ground level") {
    std::mt19937 rng(109);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix rho = random_density(4, rng);
        const double w = ergotropy(rho, kTwoQubitH);
        double energy = 0.0;
        for (int i = 0; i < 4; ++i) energy += rho(i, i).real() * kTwoQubitH(i, i).real();
        CHECK(w >= 0.0);
        CHECK(w <= energy + 1e-12);  // ground level is 0
    }
}

TEST_CASE("ergotropy_variation signs") {
    MetricsRecord initial;
    initial.ergotropy = 0.75;
    MetricsRecord later;
    later.ergotropy = 0.75;
    CHECK(ergotropy_variation(later, initial) == 0.0);
    later.ergotropy = 0.5;
    CHECK(ergotropy_variation(later, initial) < 0.0);
}

TEST_CASE("ergotropy_ratio extremes") {
    CHECK(ergotropy_ratio(pure_state(pi, 0.0), kSingleH) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ergotropy_ratio(gibbs_state(QubitHamiltonian{}, 4.0), kSingleH) == 0.0);
    // all-ground register: 0/0 resolves to 0
    CHECK(ergotropy_ratio(pure_state(0.0, 0.0), kSingleH) == 0.0);
}

TEST_CASE("figure_of_merit is the plain product") {
    CHECK(figure_of_merit(0.0, 0.9) == 0.0);
    CHECK(figure_of_merit(0.5, 0.8) == doctest::Approx(0.4));
}

TEST_CASE("power definitions") {
    CHECK(power_work(30, 30, 1.4, 0.4) == doctest::Approx(1.0));  // T = 1 at alpha = M
    CHECK(power_work(10, 30, 0.7, 0.7) == 0.0);
    CHECK(power_ergotropy(10, 30, 0.5) == doctest::Approx(2.0 * power_ergotropy(20, 30, 0.5)));
    CHECK(power_ergotropy(5, 30, 0.0) == 0.0);
    CHECK_THROWS_AS(power_work(0, 30, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(power_ergotropy(31, 30, 1.0), std::invalid_argument);
}

TEST_CASE("records omit powers at iteration zero") {
    const MetricsRecord rec = make_metrics_record(0, 30, 1.0, 0.5, nullptr);
    CHECK_FALSE(rec.power_work.has_value());
    CHECK_FALSE(rec.power_ergotropy.has_value());
    CHECK(rec.ergotropy_ratio == doctest::Approx(0.5));

    const MetricsRecord later = make_metrics_record(3, 30, 1.2, 0.9, &rec);
    CHECK(later.power_work.has_value());
    CHECK(*later.power_work == doctest::Approx((1.2 - 1.0) / (3.0 / 30.0)));
    CHECK(*later.power_ergotropy == doctest::Approx((0.9 - 0.5) / (3.0 / 30.0)));
    CHECK(later.figure_of_merit == doctest::Approx((0.9 - 0.5) * (0.9 / 1.2)));
}

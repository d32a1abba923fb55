#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "qbatt/states.hpp"

using namespace qbatt;
using std::numbers::pi;

TEST_CASE("gibbs_state populations at the reference temperatures") {
    const QubitHamiltonian h;

    const ComplexMatrix hot = gibbs_state(h, 4.0);
    CHECK(hot(0, 0).real() == doctest::Approx(0.5621765008857981).epsilon(1e-14));
    CHECK(hot(1, 1).real() == doctest::Approx(0.4378234991142019).epsilon(1e-14));

    const ComplexMatrix cold = gibbs_state(h, 0.4);
    CHECK(cold(0, 0).real() == doctest::Approx(0.9241418199787566).epsilon(1e-14));
    CHECK(cold(1, 1).real() == doctest::Approx(0.0758581800212436).epsilon(1e-12));

    const ComplexMatrix flat = gibbs_state(h, std::numeric_limits<double>::infinity());
    CHECK(flat(0, 0).real() == 0.5);
    CHECK(flat(1, 1).real() == 0.5);

    const ComplexMatrix ground = gibbs_state(h, 0.0);
    CHECK(ground(0, 0).real() == 1.0);
    CHECK(ground(1, 1).real() == 0.0);

    CHECK_THROWS_AS(gibbs_state(h, -1.0), std::invalid_argument);
}

TEST_CASE("gibbs populations never increase with energy") {
    const QubitHamiltonian h;
    for (const double kT : {0.0, 0.1, 0.4, 1.0, 4.0, 100.0}) {
        const ComplexMatrix g = gibbs_state(h, kT);
        CHECK(g(0, 0).real() >= g(1, 1).real());
    }
}

TEST_CASE("pure_state poles and equator") {
    const ComplexMatrix ground = pure_state(0.0, 1.0);
    CHECK(ground(0, 0).real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(ground(1, 1)) < 1e-15);

    const ComplexMatrix excited = pure_state(pi, 2.0);
    CHECK(excited(1, 1).real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(excited(0, 0)) < 1e-30);

    const ComplexMatrix plus_pi = pure_state(pi / 2.0, pi);
    CHECK(plus_pi(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(plus_pi(1, 1).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(plus_pi(0, 1).real() == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(std::abs(plus_pi(0, 1).imag()) < 1e-15);

    CHECK_THROWS_AS(pure_state(4.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(pure_state(1.0, 7.0), std::invalid_argument);
}

TEST_CASE("pure states have unit purity") {
    for (int i = 0; i <= 10; ++i) {
        for (int j = 0; j < 8; ++j) {
            const double theta = pi * i / 10.0;
            const double phi = 2.0 * pi * j / 8.0;
            const ComplexMatrix rho = pure_state(theta, phi);
            CHECK(trace(matmul(rho, rho)).real() == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("phi = 0 and phi = pi states differ only in the off-diagonal sign") {
    for (const double theta : {0.3, 1.2, 2.8}) {
        const ComplexMatrix a = pure_state(theta, 0.0);
        const ComplexMatrix b = pure_state(theta, pi);
        CHECK(a(0, 0) == b(0, 0));
        CHECK(a(1, 1) == b(1, 1));
        CHECK(a(0, 1).real() == doctest::Approx(-b(0, 1).real()).epsilon(1e-14));
    }
}

TEST_CASE("excited_population_state endpoints and thermal match") {
    CHECK(excited_population_state(0.0)(0, 0).real() == 1.0);

    const ComplexMatrix half = excited_population_state(0.5);
    CHECK(half(0, 0).real() == 0.5);
    CHECK(half(1, 1).real() == 0.5);

    // population-matching oracle: the kT = 0.4 Gibbs excited population
    const double p = std::exp(-2.5) / (1.0 + std::exp(-2.5));
    CHECK(excited_population_state(p).max_abs_diff(gibbs_state(QubitHamiltonian{}, 0.4)) < 1e-15);
    CHECK(p == doctest::Approx(0.07586).epsilon(1e-4));

    CHECK_THROWS_AS(excited_population_state(0.6), std::invalid_argument);
    CHECK_THROWS_AS(excited_population_state(-0.1), std::invalid_argument);
}

TEST_CASE("system_state composes the register in order") {
    const SystemSpec two{{{QubitHamiltonian{}, ThermalInit{4.0}},
                          {QubitHamiltonian{}, PureInit{0.0, 0.0}}}};
    const ComplexMatrix rho = system_state(two);
    CHECK(rho.dim() == 4);
    CHECK(rho(0, 0).real() == doctest::Approx(0.5621765008857981).epsilon(1e-14));
    CHECK(std::abs(rho(1, 1)) < 1e-15);
    CHECK(rho(2, 2).real() == doctest::Approx(0.4378234991142019).epsilon(1e-14));
    CHECK(std::abs(rho(3, 3)) < 1e-15);

    const SystemSpec all_ground{{{QubitHamiltonian{}, ThermalInit{0.0}},
                                 {QubitHamiltonian{}, PureInit{0.0, 0.0}},
                                 {QubitHamiltonian{}, ThermalInit{0.0}}}};
    const ComplexMatrix ground = system_state(all_ground);
    CHECK(ground.dim() == 8);
    CHECK(ground(0, 0).real() == 1.0);
    for (int i = 1; i < 8; ++i) {
        CHECK(std::abs(ground(i, i)) == 0.0);
    }
}

TEST_CASE("system states are valid density matrices with unit trace") {
    for (const int n : {2, 3}) {
        const SystemSpec spec = qbatt::testing::reference_system(n, 1.9, 2.5);
        const ComplexMatrix rho = system_state(spec);
        CHECK(std::abs(trace(rho) - Complex{1.0, 0.0}) < 1e-12);
        CHECK(is_density_matrix(rho, 1e-12).ok);
    }
}

TEST_CASE("system_hamiltonian diagonals") {
    const SystemSpec two = qbatt::testing::reference_system(2, 1.0, 0.0);
    const ComplexMatrix h2 = system_hamiltonian(two);
    const double expect2[] = {0.0, 1.0, 1.0, 2.0};
    for (int i = 0; i < 4; ++i) {
        CHECK(h2(i, i).real() == expect2[i]);
    }

    const SystemSpec three = qbatt::testing::reference_system(3, 1.0, 0.0);
    const ComplexMatrix h3 = system_hamiltonian(three);
    const double expect3[] = {0.0, 1.0, 1.0, 2.0, 1.0, 2.0, 2.0, 3.0};
    for (int i = 0; i < 8; ++i) {
        CHECK(h3(i, i).real() == expect3[i]);
    }

    // asymmetric level spacing on qubit B
    SystemSpec skew = two;
    skew.qubits[1].hamiltonian = QubitHamiltonian{0.0, 0.5};
    const ComplexMatrix hskew = system_hamiltonian(skew);
    const double expect_skew[] = {0.0, 0.5, 1.0, 1.5};
    for (int i = 0; i < 4; ++i) {
        CHECK(hskew(i, i).real() == expect_skew[i]);
    }
}

TEST_CASE("system_hamiltonian is exactly diagonal and real") {
    const SystemSpec spec = qbatt::testing::reference_system(3, 0.4, 0.1);
    const ComplexMatrix h = system_hamiltonian(spec);
    for (int r = 0; r < h.dim(); ++r) {
        CHECK(h(r, r).imag() == 0.0);
        for (int c = 0; c < h.dim(); ++c) {
            if (r != c) CHECK(h(r, c) == Complex{0.0, 0.0});
        }
    }
}

TEST_CASE("qubit hamiltonian ordering is validated") {
    CHECK_THROWS_AS(QubitHamiltonian(1.0, 0.0), std::invalid_argument);
    std::vector<QubitSpec> lone;
    lone.push_back({QubitHamiltonian{}, ThermalInit{1.0}});
    CHECK_THROWS_AS(SystemSpec(std::move(lone)), std::invalid_argument);
}

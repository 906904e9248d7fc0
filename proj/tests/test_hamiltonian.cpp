#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "magicwit/hamiltonian.hpp"
#include "test_util.hpp"

using namespace magicwit;
using testutil::oracle_dense;

TEST_CASE("sign folding and merging") {
    auto h = PauliHamiltonian::from_text_terms(2, {{-1.0, "ZZ"}, {-0.5, "XI"}});
    REQUIRE(h.term_count() == 2);
    // H = -ZZ - 0.5 XI stores positive weights on +ZZ and +XI.
    CHECK(h.coefficient(PauliString::parse("+ZZ")) == doctest::Approx(1.0));
    CHECK(h.coefficient(PauliString::parse("+XI")) == doctest::Approx(0.5));
    CHECK((h.dense() - oracle_dense(h)).cwiseAbs().maxCoeff() < 1e-14);

    auto merged = PauliHamiltonian::from_text_terms(1, {{1.0, "X"}, {1.0, "X"}});
    REQUIRE(merged.term_count() == 1);
    CHECK(merged.coefficient(PauliString::parse("-X")) == doctest::Approx(2.0));

    auto cancelled = PauliHamiltonian::from_text_terms(1, {{1.0, "X"}, {-1.0, "X"}});
    CHECK(cancelled.term_count() == 0);

    CHECK_THROWS_AS(PauliHamiltonian::from_text_terms(1, {{0.0, "X"}}), std::invalid_argument);
    CHECK_THROWS_AS(PauliHamiltonian::from_text_terms(1, {{1.0, "Q"}}), std::invalid_argument);
    CHECK_THROWS_AS(PauliHamiltonian::from_text_terms(2, {{1.0, "X"}}), std::invalid_argument);
    CHECK_THROWS_AS(PauliHamiltonian::from_text_terms(1, {{1.0, "I"}}), std::invalid_argument);
}

TEST_CASE("builders") {
    CHECK(PauliHamiltonian::tfim(4, 0.7).term_count() == 8);
    CHECK(PauliHamiltonian::tfim(4, 0.0).term_count() == 4);
    CHECK(PauliHamiltonian::heisenberg(4).term_count() == 12);

    auto bell = PauliHamiltonian::bell_perturbed(1.5);
    CHECK(bell.term_count() == 4);
    CHECK(bell.coefficient(PauliString::parse("-ZI")) == doctest::Approx(1.5));
    CHECK(bell.coefficient(PauliString::parse("+IZ")) == doctest::Approx(1.5));
    // Dense check against the displayed form -XX - ZZ + eps(Z1 - Z2).
    Eigen::MatrixXcd expected = -oracle_dense(PauliString::parse("XX")) -
                                oracle_dense(PauliString::parse("ZZ")) +
                                1.5 * oracle_dense(PauliString::parse("ZI")) -
                                1.5 * oracle_dense(PauliString::parse("IZ"));
    CHECK((bell.dense() - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("stabilizer hamiltonian from generators") {
    auto z = StabilizerGroup::validate({PauliString::parse("+Z")});
    auto hz = PauliHamiltonian::stabilizer_hamiltonian(z);
    auto ground = ground_energy_dense(hz);
    CHECK(ground.value == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(ground.degeneracy == 1);

    auto bell = StabilizerGroup::validate({PauliString::parse("+XX"), PauliString::parse("+ZZ")});
    auto hbell = PauliHamiltonian::stabilizer_hamiltonian(bell);
    CHECK(ground_energy_dense(hbell).value == doctest::Approx(-2.0).epsilon(1e-12));

    // Rank-deficient group: 2-dimensional ground space.
    auto chain = StabilizerGroup::validate({PauliString::parse("+ZZI"), PauliString::parse("+IZZ")});
    auto hchain = PauliHamiltonian::stabilizer_hamiltonian(chain);
    CHECK(ground_energy_dense(hchain).degeneracy == 2);
}

TEST_CASE("energy evaluation") {
    auto hz = PauliHamiltonian::from_text_terms(1, {{-1.0, "Z"}});
    Eigen::VectorXcd zero(2);
    zero << 1, 0;
    CHECK(hz.energy(DensityMatrix::from_state_vector(zero)) == doctest::Approx(-1.0));

    // <Phi+| H(eps) |Phi+> = -2 for any eps.
    Eigen::VectorXcd phi(4);
    phi << 1, 0, 0, 1;
    auto rho = DensityMatrix::from_state_vector(phi);
    for (double eps : {0.0, 0.4, 1.5, 2.0})
        CHECK(PauliHamiltonian::bell_perturbed(eps).energy(rho) == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("character energy equals dense trace on all 60 two-qubit vertices") {
    std::mt19937 rng(41);
    const auto& states = enumerate_pure_states(2);
    for (int trial = 0; trial < 20; ++trial) {
        PauliHamiltonian h = testutil::random_hamiltonian(rng, 2, 4 + int(rng() % 6));
        Eigen::MatrixXcd hd = oracle_dense(h);
        for (const auto& s : states) {
            Eigen::VectorXcd psi = s.state_vector();
            double dense_energy = (psi.adjoint() * hd * psi)(0, 0).real();
            CHECK(h.energy(s) == doctest::Approx(dense_energy).epsilon(1e-10));
        }
    }
}

TEST_CASE("ground energy examples") {
    // Perturbed Bell closed forms.
    for (double eps : {0.0, 0.3, 1.0, 1.4142, 1.5, 2.0}) {
        double expected = std::min(-2.0, 1.0 - std::sqrt(1.0 + 4.0 * eps * eps));
        CHECK(ground_energy_dense(PauliHamiltonian::bell_perturbed(eps)).value ==
              doctest::Approx(expected).epsilon(1e-12));
    }
    // Heisenberg chain reaches -n with a product ground state.
    auto heis = PauliHamiltonian::heisenberg(4);
    auto ground = ground_energy_dense(heis);
    CHECK(ground.value == doctest::Approx(-4.0).epsilon(1e-12));
    Eigen::VectorXcd zeros = Eigen::VectorXcd::Zero(16);
    zeros[0] = 1.0;
    CHECK(heis.energy(DensityMatrix::from_state_vector(zeros)) == doctest::Approx(-4.0));
    // Unit Bloch field.
    double r = 1.0 / std::sqrt(3.0);
    auto field = PauliHamiltonian::local_fields({Eigen::Vector3d(-r, -r, -r)});
    CHECK(ground_energy_dense(field).value == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("ground energy invariant under Clifford conjugation") {
    std::mt19937 rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 2 + int(rng() % 2);
        PauliHamiltonian h = testutil::random_hamiltonian(rng, n, 5);
        double e0 = ground_energy_dense(h).value;

        // Random Clifford as a dense gate string: H, S and CNOT layers.
        Eigen::Index dim = Eigen::Index(1) << n;
        Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
        Eigen::Matrix2cd had;
        had << 1, 1, 1, -1;
        had /= std::sqrt(2.0);
        Eigen::Matrix2cd sgate;
        sgate << 1, 0, 0, std::complex<double>(0, 1);
        for (int layer = 0; layer < 6; ++layer) {
            int q = int(rng() % n);
            Eigen::MatrixXcd one = Eigen::MatrixXcd::Identity(1, 1);
            const Eigen::Matrix2cd& g = (rng() % 2) ? had : sgate;
            for (int site = 0; site < n; ++site)
                one = testutil::kron(one, site == q ? Eigen::MatrixXcd(g)
                                                    : Eigen::MatrixXcd(Eigen::Matrix2cd::Identity()));
            u = one * u;
            int a = int(rng() % n), b = (a + 1) % n;
            Eigen::MatrixXcd cnot = Eigen::MatrixXcd::Zero(dim, dim);
            for (Eigen::Index k = 0; k < dim; ++k) {
                bool control = (k >> (n - 1 - a)) & 1;
                Eigen::Index target = control ? (k ^ (Eigen::Index(1) << (n - 1 - b))) : k;
                cnot(target, k) = 1.0;
            }
            u = cnot * u;
        }
        Eigen::MatrixXcd conjugated = u * h.dense() * u.adjoint();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(conjugated, Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues()[0] == doctest::Approx(e0).epsilon(1e-9));
    }
}

TEST_CASE("tfim free-fermion energy agrees with dense diagonalization") {
    for (int n = 2; n <= 8; ++n) {
        for (double h : {0.0, 0.3, 0.7, 1.0, 1.3, 2.0}) {
            double dense = ground_energy_dense(PauliHamiltonian::tfim(n, h)).value;
            CHECK(tfim_ground_energy(n, h) == doctest::Approx(dense).epsilon(1e-10));
        }
    }
}

TEST_CASE("tfim limits") {
    CHECK(tfim_ground_energy(12, 0.0) == doctest::Approx(-12.0).epsilon(1e-12));
    CHECK(tfim_ground_energy(12, 50.0) / 12.0 == doctest::Approx(-50.0).epsilon(1e-3));
    CHECK(tfim_stabilizer_energy(100, 1.3) == -130.0);
    CHECK(tfim_stabilizer_energy(100, 0.5) == -100.0);
    // Gap nonnegativity: E_gs <= E_STAB.
    for (int n : {4, 7, 10, 50})
        for (double h : {0.0, 0.5, 1.0, 1.7})
            CHECK(tfim_ground_energy(n, h) <= tfim_stabilizer_energy(n, h) + 1e-12);
}

TEST_CASE("locality report") {
    auto tfim = PauliHamiltonian::tfim(6, 0.7);
    auto report = locality_report(tfim, 100, 2);
    CHECK(report.max_support == 2);
    CHECK(report.is_k_local);
    CHECK(report.is_sparse);
    CHECK(locality_report(PauliHamiltonian::heisenberg(5), 100, 2).max_support == 2);
    auto field = PauliHamiltonian::local_fields({Eigen::Vector3d(0.3, 0, 0)});
    CHECK(locality_report(field, 100, 1).max_support == 1);
    CHECK_FALSE(locality_report(tfim, 3, 2).is_sparse);
}

TEST_CASE("scaled and plus") {
    auto a = PauliHamiltonian::from_text_terms(1, {{-1.0, "Z"}});
    auto b = PauliHamiltonian::from_text_terms(1, {{0.5, "Z"}, {-0.25, "X"}});
    auto sum = a.plus(b);
    CHECK(sum.coefficient(PauliString::parse("+Z")) == doctest::Approx(0.5));
    CHECK(sum.coefficient(PauliString::parse("+X")) == doctest::Approx(0.25));
    auto scaled = a.scaled(2.0);
    CHECK(scaled.coefficient(PauliString::parse("+Z")) == doctest::Approx(2.0));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "magicwit/stab_energy.hpp"
#include "test_util.hpp"

using namespace magicwit;

namespace {

// Random sum-of-stabilizers instance: jointly independent groups with
// uniform positive weights per group.
struct SumOfStabilizers {
    PauliHamiltonian h;
    std::vector<StabilizerGroup> groups;
};

// Joint independence is enforced during construction through one global
// symplectic echelon shared by every group.
SumOfStabilizers random_sum_of_stabilizers(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> weight(0.2, 2.0);
    struct Row {
        uint64_t x, z;
    };
    std::vector<Row> global;
    auto independent = [&](const PauliString& p) {
        uint64_t x = p.x_bits(), z = p.z_bits();
        for (const auto& r : global) {
            uint64_t lead = r.x ? (r.x & ~(r.x - 1)) : 0;
            bool hit = r.x ? ((x & lead) != 0) : ((z & (r.z & ~(r.z - 1))) != 0);
            if (hit) {
                x ^= r.x;
                z ^= r.z;
            }
        }
        if (x == 0 && z == 0) return false;
        global.push_back({x, z});
        return true;
    };

    std::vector<StabilizerGroup> groups;
    std::vector<std::pair<double, PauliString>> terms;
    int num_groups = 2 + int(rng() % 2);
    for (int g = 0; g < num_groups; ++g) {
        int size = 1 + int(rng() % 2);
        std::vector<PauliString> gens;
        for (int attempt = 0; attempt < 400 && int(gens.size()) < size; ++attempt) {
            PauliString cand = testutil::random_pauli(rng, n);
            bool commutes = true;
            for (const auto& p : gens)
                if (!cand.commutes_with(p)) { commutes = false; break; }
            if (!commutes) continue;
            if (!independent(cand)) continue;
            gens.push_back(cand);
        }
        if (gens.empty()) continue;
        double w = weight(rng);
        for (const auto& p : gens) terms.emplace_back(-w * double(p.sign()), p.with_sign(+1));
        groups.push_back(StabilizerGroup::validate(gens));
    }
    PauliHamiltonian h = PauliHamiltonian::from_coefficients(n, terms);
    REQUIRE(is_sum_of_stabilizers(h, groups));
    return {h, groups};
}

}  // namespace

TEST_CASE("single-qubit closed forms") {
    // Balanced field: E_STAB = -1/sqrt(3).
    double r = 1.0 / std::sqrt(3.0);
    auto h = PauliHamiltonian::local_fields({Eigen::Vector3d(-r, -r, -r)});
    auto res = stab_energy_enumeration(h);
    CHECK(res.value == doctest::Approx(-r).epsilon(1e-12));
    res.check_certificate(h);

    auto hz = PauliHamiltonian::from_text_terms(1, {{-1.0, "Z"}});
    CHECK(stab_energy_enumeration(hz).value == doctest::Approx(-1.0));

    auto gap = stabilizer_gap(h);
    CHECK(gap.delta == doctest::Approx(1.0 - r).epsilon(1e-12));
}

TEST_CASE("single-qubit gap formula on random unit fields") {
    std::mt19937 rng(67);
    for (int trial = 0; trial < 100; ++trial) {
        Eigen::Vector3d dir = testutil::random_unit_vector(rng);
        auto h = PauliHamiltonian::local_fields({dir});
        auto gap = stabilizer_gap(h);
        double expected = 1.0 - dir.cwiseAbs().maxCoeff();
        CHECK(gap.delta == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("perturbed Bell closed forms") {
    for (double eps : {0.0, 0.5, 1.0, 1.41, 1.5, 2.0}) {
        auto h = PauliHamiltonian::bell_perturbed(eps);
        double expected = std::min(-2.0, 1.0 - 2.0 * eps);
        auto enumeration = stab_energy_enumeration(h);
        auto cmax = stab_energy_cmax(h);
        CHECK(enumeration.value == doctest::Approx(expected).epsilon(1e-12));
        CHECK(cmax.value == doctest::Approx(expected).epsilon(1e-12));
        enumeration.check_certificate(h);
        cmax.check_certificate(h);
    }
    // delta = sqrt(10) - 3 at eps = 1.5.
    auto gap = stabilizer_gap(PauliHamiltonian::bell_perturbed(1.5));
    CHECK(gap.delta == doctest::Approx(std::sqrt(10.0) - 3.0).epsilon(1e-12));
    // Zero gap in the fine-tuned window.
    CHECK(stabilizer_gap(PauliHamiltonian::bell_perturbed(1.0)).delta < 1e-10);
}

TEST_CASE("TFIM stabilizer energy") {
    for (int n : {3, 5}) {
        for (double field : {0.4, 1.0, 1.6}) {
            auto h = PauliHamiltonian::tfim(n, field);
            auto res = stab_energy_cmax(h);
            CHECK(res.value == doctest::Approx(-double(n) * std::max(1.0, field)).epsilon(1e-12));
            res.check_certificate(h);
        }
    }
    // Large n through the bipartite MWIS dispatch.
    auto big = PauliHamiltonian::tfim(40, 1.3);
    auto res = stab_energy(big);
    CHECK(res.method == StabMethod::Mwis);
    CHECK(res.value == doctest::Approx(-52.0).epsilon(1e-10));
}

TEST_CASE("Heisenberg: vanishing gap") {
    for (int n : {3, 4}) {
        auto h = PauliHamiltonian::heisenberg(n);
        auto gap = stabilizer_gap(h);
        CHECK(gap.e_gs == doctest::Approx(-double(n)).epsilon(1e-12));
        CHECK(gap.delta < 1e-9);
    }
}

TEST_CASE("stab_energy_mwis requires the premise") {
    auto heis = PauliHamiltonian::heisenberg(2);
    auto gxx = StabilizerGroup::validate({PauliString::parse("+XX")});
    auto gyy = StabilizerGroup::validate({PauliString::parse("+YY")});
    auto gzz = StabilizerGroup::validate({PauliString::parse("+ZZ")});
    CHECK_THROWS_AS(stab_energy_mwis(heis, {gxx, gyy, gzz}), std::invalid_argument);
}

TEST_CASE("bipartite Hamiltonian example: 3-cycle with w = 0.5") {
    // H = -sum Z_j Z_{j+1} - 0.5 sum X_j on 3 sites; the Z side wins.
    auto h = PauliHamiltonian::tfim(3, 0.5);
    std::vector<PauliString> zz, x;
    for (const auto& t : h.terms()) (t.op.x_bits() ? x : zz).push_back(t.op);
    auto res =
        stab_energy_mwis(h, {StabilizerGroup::validate_family(zz), StabilizerGroup::validate(x)});
    CHECK(res.value == doctest::Approx(-3.0).epsilon(1e-12));
    res.check_certificate(h);
}

TEST_CASE("method triangle on random instances") {
    std::mt19937 rng(71);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 1 + int(rng() % 3);
        PauliHamiltonian h = testutil::random_hamiltonian(rng, n, 3 + int(rng() % 5));
        double a = stab_energy_enumeration(h).value;
        double b = stab_energy_cmax(h).value;
        CHECK(a == doctest::Approx(b).epsilon(1e-10));
    }
    for (int trial = 0; trial < 10; ++trial) {
        auto instance = random_sum_of_stabilizers(rng, 3 + int(rng() % 2));
        double a = stab_energy_cmax(instance.h).value;
        double b = stab_energy_mwis(instance.h, instance.groups).value;
        CHECK(a == doctest::Approx(b).epsilon(1e-10));
    }
}

TEST_CASE("stabilizer Hamiltonians always have zero gap") {
    std::mt19937 rng(73);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + int(rng() % 3);
        // Random stabilizer group of rank 1..n.
        std::vector<PauliString> gens;
        int target = 1 + int(rng() % n);
        for (int attempt = 0; attempt < 300 && int(gens.size()) < target; ++attempt) {
            PauliString cand = testutil::random_pauli(rng, n);
            std::vector<PauliString> trial = gens;
            trial.push_back(cand);
            try {
                StabilizerGroup::validate(trial);
                gens = trial;
            } catch (const std::invalid_argument&) {
            }
        }
        if (gens.empty()) continue;
        std::vector<double> weights;
        std::uniform_real_distribution<double> w(0.2, 2.0);
        for (size_t i = 0; i < gens.size(); ++i) weights.push_back(w(rng));
        auto h = PauliHamiltonian::stabilizer_hamiltonian(StabilizerGroup::validate(gens), weights);
        auto gap = stabilizer_gap(h);
        CHECK(gap.delta < 1e-9);
    }
}

TEST_CASE("gap additivity for non-interacting fields") {
    std::mt19937 rng(79);
    for (int trial = 0; trial < 15; ++trial) {
        int n = 2 + int(rng() % 4);
        std::vector<Eigen::Vector3d> fields;
        std::uniform_real_distribution<double> mag(0.3, 1.5);
        double expected = 0.0, e_gs = 0.0;
        for (int i = 0; i < n; ++i) {
            Eigen::Vector3d f = mag(rng) * testutil::random_unit_vector(rng);
            fields.push_back(f);
            expected += f.norm() - f.cwiseAbs().maxCoeff();
            e_gs -= f.norm();
        }
        auto h = PauliHamiltonian::local_fields(fields);
        auto stab = stab_energy_cmax(h);
        // E_gs = -sum |h_i| for independent sites.
        CHECK(stab.value - e_gs == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("witness verdicts") {
    double r = 1.0 / std::sqrt(3.0);
    auto h = PauliHamiltonian::local_fields({Eigen::Vector3d(-r, -r, -r)});
    auto certified = witness_energy(h, -0.9);
    CHECK(certified.certified);
    auto boundary = witness_energy(h, -r);
    CHECK_FALSE(boundary.certified);
    // Error bars widen the inconclusive band.
    CHECK_FALSE(witness_energy(h, -r - 1e-4, 1e-3).certified);
    CHECK(witness_energy(h, -r - 2e-3, 1e-3).certified);

    // psi(pi/4, 0) under the eps = 1.5 Bell Hamiltonian sits exactly on the
    // boundary E = E_STAB = -2.
    auto bell = PauliHamiltonian::bell_perturbed(1.5);
    CHECK_FALSE(witness_energy(bell, -2.0).certified);
}

TEST_CASE("empty Hamiltonian edge case") {
    auto h = PauliHamiltonian::from_text_terms(1, {{1.0, "X"}, {-1.0, "X"}});
    auto res = stab_energy(h);
    CHECK(res.value == 0.0);
    res.check_certificate(h);
}

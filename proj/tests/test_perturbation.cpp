#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "magicwit/perturbation.hpp"
#include "magicwit/stab_energy.hpp"
#include "test_util.hpp"

using namespace magicwit;

namespace {
StabilizerGroup bell_group() {
    return StabilizerGroup::validate({PauliString::parse("+XX"), PauliString::parse("+ZZ")});
}
}  // namespace

TEST_CASE("coupling condition on the Bell base") {
    // V = Z x 1 - 1 x Z annihilates |Phi+>.
    auto v_tuned = PauliHamiltonian::from_text_terms(2, {{1.0, "ZI"}, {-1.0, "IZ"}});
    CHECK_FALSE(check_coupling(bell_group(), v_tuned));

    // V' = e1 Z x 1 + e2 1 x Z maps |Phi+> to (e1+e2)|Phi->.
    auto v_generic = PauliHamiltonian::from_text_terms(2, {{0.3, "ZI"}, {0.2, "IZ"}});
    CHECK(check_coupling(bell_group(), v_generic));

    // Group members act as the identity on the code.
    auto v_member = PauliHamiltonian::from_text_terms(2, {{0.5, "XX"}});
    CHECK_FALSE(check_coupling(bell_group(), v_member));

    // Degenerate bases are rejected.
    auto partial = StabilizerGroup::validate({PauliString::parse("+ZZ")});
    CHECK_THROWS_AS(check_coupling(partial, v_generic), std::invalid_argument);
}

TEST_CASE("split_perturbation buckets") {
    auto q = StabilizerGroup::validate({PauliString::parse("+ZZI"), PauliString::parse("+IZZ")});
    auto v = PauliHamiltonian::from_text_terms(
        3, {{0.2, "XII"}, {0.1, "ZZI"}, {0.3, "ZII"}, {-0.15, "IZZ"}});
    auto split = split_perturbation(q, v);
    // X1 anticommutes with Z1 Z2.
    REQUIRE(split.perp.size() == 1);
    CHECK(v.terms()[split.perp[0]].op.same_pattern(PauliString::parse("XII")));
    // Z1 Z2 arrives with coefficient +0.1: stored as -Z1Z2, the negated member.
    // Z1 is logical (commutes with the group, outside its span).
    REQUIRE(split.logical.size() == 1);
    CHECK(v.terms()[split.logical[0]].op.same_pattern(PauliString::parse("ZII")));
    REQUIRE(split.group_members.size() == 1);
    CHECK(v.terms()[split.group_members[0]].op == PauliString::parse("+IZZ"));
    REQUIRE(split.negated_members.size() == 1);
    CHECK(v.terms()[split.negated_members[0]].op == PauliString::parse("-ZZI"));
}

TEST_CASE("weak perturbation inequality") {
    auto q = bell_group();
    // Unit-weight generators: Delta_gap = 2.
    auto tiny = PauliHamiltonian::from_text_terms(2, {{0.05, "ZI"}});
    CHECK(weak_perturbation_check(q, {}, tiny));
    auto large = PauliHamiltonian::from_text_terms(2, {{3.0, "ZI"}});
    CHECK_FALSE(weak_perturbation_check(q, {}, large));
    // Boundary: sum outside == Delta_gap fails the strict inequality.
    auto boundary = PauliHamiltonian::from_text_terms(2, {{2.0, "ZI"}});
    CHECK_FALSE(weak_perturbation_check(q, {}, boundary));
    // Members of Q tighten the budget: sum_out < Delta_gap - 2 sum_in.
    // Coefficient -0.6 on XX stores the group member +XX with weight 0.6.
    auto mixed = PauliHamiltonian::from_text_terms(2, {{-0.6, "XX"}, {0.9, "ZI"}});
    CHECK_FALSE(weak_perturbation_check(q, {}, mixed));
    auto mixed_ok = PauliHamiltonian::from_text_terms(2, {{-0.3, "XX"}, {0.9, "ZI"}});
    CHECK(weak_perturbation_check(q, {}, mixed_ok));
}

TEST_CASE("variational report against dense evaluation") {
    auto q = bell_group();
    auto v = PauliHamiltonian::from_text_terms(2, {{0.1, "ZI"}, {-0.02, "IZ"}});
    VariationalReport report = variational_state(q, {}, v);
    CHECK(report.v_perp_sq > 0.0);
    CHECK(report.a > 0.0);
    CHECK(report.lambda_max > 0.0);

    // Delta E(0) = 0 and the rational form matches the dense expectation on a grid.
    CHECK(report.delta_e(0.0) == 0.0);
    auto h = PauliHamiltonian::stabilizer_hamiltonian(q).plus(v);
    Eigen::MatrixXcd hd = h.dense();
    for (int k = 1; k <= 100; ++k) {
        double lambda = report.lambda_max * double(k) / 100.0;
        Eigen::VectorXcd psi = report.state(lambda);
        double dense_energy = (psi.adjoint() * hd * psi)(0, 0).real();
        CHECK(report.energy(lambda) == doctest::Approx(dense_energy).epsilon(1e-10));
        CHECK(report.delta_e(lambda) > 0.0);
    }
    // Monotone on (0, lambda_max): finite differences positive.
    for (int k = 1; k < 100; ++k) {
        double a = report.delta_e(report.lambda_max * double(k) / 100.0);
        double b = report.delta_e(report.lambda_max * double(k + 1) / 100.0);
        CHECK(b > a - 1e-15);
    }
}

TEST_CASE("lambda_max formula") {
    auto q = bell_group();
    auto v = PauliHamiltonian::from_text_terms(2, {{0.08, "ZI"}});
    VariationalReport r = variational_state(q, {}, v);
    double expected = std::min(2.0 * r.v_perp_sq / r.a,
                               (std::sqrt(r.a * r.a + 4.0 * std::pow(r.v_perp_sq, 3)) - r.a) /
                                   (2.0 * r.v_perp_sq * r.v_perp_sq));
    CHECK(r.lambda_max == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("certify_gap_by_perturbation on the Bell family") {
    auto q = bell_group();
    auto v = PauliHamiltonian::from_text_terms(2, {{0.05, "ZI"}, {0.01, "IZ"}});
    auto cert = certify_gap_by_perturbation(q, {}, v);
    REQUIRE(cert.certified);
    CHECK(cert.energy < cert.e_stab);
    // E_STAB(H_Q + V) equals the code-state energy under the Lemma premises
    // (cross-check by vertex enumeration).
    auto h = PauliHamiltonian::stabilizer_hamiltonian(q).plus(v);
    auto enumeration = stab_energy_enumeration(h);
    CHECK(cert.e_stab == doctest::Approx(enumeration.value).epsilon(1e-10));
    CHECK(cert.e_stab == doctest::Approx(cert.report->base_energy).epsilon(1e-10));

    // A pure group member has no perpendicular part.
    auto v_member = PauliHamiltonian::from_text_terms(2, {{-0.1, "XX"}});
    auto cert3 = certify_gap_by_perturbation(q, {}, v_member);
    CHECK_FALSE(cert3.certified);
    REQUIRE(!cert3.failed_premises.empty());
    CHECK(cert3.failed_premises[0] == "V_perp vanishes");

    // Logical terms violate the Lemma-5 side premise.
    auto q_partial = StabilizerGroup::validate({PauliString::parse("+ZZ")});
    auto v_logical = PauliHamiltonian::from_text_terms(2, {{0.1, "ZI"}, {0.1, "XX"}});
    auto cert4 = certify_gap_by_perturbation(q_partial, {}, v_logical);
    CHECK_FALSE(cert4.certified);
}

TEST_CASE("degenerate base: canonical code-state search") {
    // Q = <ZZ> on two qubits, V = 0.1 X1: X1 anticommutes with ZZ, and the
    // canonical code states give <V_perp^2> = 0.01 != 0.
    auto q = StabilizerGroup::validate({PauliString::parse("+ZZ")});
    auto v = PauliHamiltonian::from_text_terms(2, {{0.1, "XI"}});
    VariationalReport r = variational_state(q, {}, v);
    CHECK(r.v_perp_sq == doctest::Approx(0.01).epsilon(1e-12));
    auto cert = certify_gap_by_perturbation(q, {}, v);
    CHECK(cert.certified);
    auto h = PauliHamiltonian::stabilizer_hamiltonian(q).plus(v);
    CHECK(cert.e_stab == doctest::Approx(stab_energy_enumeration(h).value).epsilon(1e-10));
}

TEST_CASE("random premise-satisfying instances certify") {
    std::mt19937 rng(83);
    std::uniform_real_distribution<double> weight(0.02, 0.2);
    int done = 0, attempts = 0;
    while (done < 25 && attempts < 4000) {
        ++attempts;
        int n = 2 + int(rng() % 2);
        // Random stabilizer group of rank n-1 or n.
        std::vector<PauliString> gens;
        int target = n - int(rng() % 2);
        for (int attempt = 0; attempt < 400 && int(gens.size()) < target; ++attempt) {
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
        auto q = StabilizerGroup::validate(gens);
        // Perturbation: a few small terms that anticommute with the group.
        std::vector<std::pair<double, PauliString>> vterms;
        for (int attempt = 0; attempt < 200 && vterms.size() < 2; ++attempt) {
            PauliString cand = testutil::random_pauli(rng, n);
            bool anticommutes = false;
            for (const auto& g : q.generators())
                if (!cand.commutes_with(g)) { anticommutes = true; break; }
            bool fresh = true;
            for (const auto& [w, p] : vterms)
                if (p.same_pattern(cand)) { fresh = false; break; }
            if (anticommutes && fresh) vterms.emplace_back(weight(rng), cand.with_sign(+1));
        }
        if (vterms.size() < 2) continue;
        auto v = PauliHamiltonian::from_coefficients(n, vterms);
        auto cert = certify_gap_by_perturbation(q, {}, v);
        if (!cert.certified) continue;  // <V_perp^2> may vanish on the code
        ++done;
        // The witness energy sits strictly below the enumerated E_STAB.
        auto h = PauliHamiltonian::stabilizer_hamiltonian(q).plus(v);
        auto enumeration = stab_energy_enumeration(h);
        CHECK(cert.energy < enumeration.value);
        CHECK(cert.e_stab == doctest::Approx(enumeration.value).epsilon(1e-10));
        // Positive, increasing gain on the guaranteed interval.
        const auto& r = *cert.report;
        double prev = 0.0;
        for (int k = 1; k <= 40; ++k) {
            double gain = r.delta_e(r.lambda_max * double(k) / 41.0);
            CHECK(gain > 0.0);
            CHECK(gain > prev - 1e-15);
            prev = gain;
        }
    }
    CHECK(done == 25);
}

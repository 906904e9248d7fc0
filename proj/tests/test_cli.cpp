#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "magicwit/cli.hpp"
#include "magicwit/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    json output;
    std::string raw_out;
    std::string raw_err;
};

RunResult run_cli(const std::vector<std::string>& args, bool parse_json = true) {
    std::ostringstream out, err;
    int code = magicwit::cli::run(args, out, err);
    RunResult result{code, json(), out.str(), err.str()};
    if (parse_json && !result.raw_out.empty()) result.output = json::parse(result.raw_out);
    return result;
}

fs::path temp_file(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "magicwit-cli-tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("gap subcommand on the perturbed Bell Hamiltonian") {
    auto res = run_cli({"gap", "--bell-perturbed", "1.5"});
    REQUIRE(res.exit_code == 0);
    CHECK(res.output["delta"].get<double>() ==
          doctest::Approx(std::sqrt(10.0) - 3.0).epsilon(1e-10));
    CHECK(res.output["e_stab"].get<double>() == doctest::Approx(-2.0));
    CHECK(res.output["method"] == "cmax");
    CHECK(res.output.contains("certificate"));
    CHECK(res.output["manifest"]["subcommand"] == "gap");
}

TEST_CASE("gap subcommand on models") {
    auto heis = run_cli({"gap", "--heisenberg", "4"});
    REQUIRE(heis.exit_code == 0);
    CHECK(heis.output["delta"].get<double>() == doctest::Approx(0.0).epsilon(1e-9));

    auto tfim = run_cli({"gap", "--tfim", "100", "--h-field", "1.0"});
    REQUIRE(tfim.exit_code == 0);
    CHECK(tfim.output["e_stab"].get<double>() == doctest::Approx(-100.0));
    CHECK(tfim.output["e_gs_method"] == "free_fermion");
    // Fig. 3 scale: per-site gap near 4/pi - 1 at criticality.
    double delta = tfim.output["delta"].get<double>() / 100.0;
    CHECK(delta == doctest::Approx(4.0 / std::numbers::pi - 1.0).epsilon(1e-3));
}

TEST_CASE("gap with a Hamiltonian file and psi sweep") {
    auto ham_path = temp_file("bell.json");
    magicwit::io::save_hamiltonian(magicwit::PauliHamiltonian::bell_perturbed(1.5),
                                   ham_path.string());
    auto res = run_cli({"gap", "--hamiltonian", ham_path.string()});
    REQUIRE(res.exit_code == 0);
    CHECK(res.output["delta"].get<double>() == doctest::Approx(std::sqrt(10.0) - 3.0).epsilon(1e-10));

    auto sweep_path = temp_file("psi.csv");
    auto sweep = run_cli({"gap", "--bell-perturbed", "1.5", "--psi-sweep", sweep_path.string(),
                          "--grid", "9"});
    REQUIRE(sweep.exit_code == 0);
    std::string csv = slurp(sweep_path);
    CHECK(csv.find("# schema: bell-psi-sweep v1") == 0);
    CHECK(csv.find("# manifest: ") != std::string::npos);
    CHECK(csv.find("theta,phi,energy,verdict") != std::string::npos);
    // theta = pi/4, phi = 0 row sits on the witness boundary: inconclusive.
    CHECK(fs::exists(sweep_path.string() + ".manifest.json"));
}

TEST_CASE("sweep-tfim output on a small preset") {
    auto out_path = temp_file("tfim.csv");
    auto res = run_cli({"sweep-tfim", "--n", "4", "--steps", "3", "--h-max", "2.0", "--out",
                        out_path.string()});
    REQUIRE(res.exit_code == 0);
    std::string csv = slurp(out_path);
    size_t pos = csv.find("h,");
    REQUIRE(pos != std::string::npos);
    std::istringstream rows(csv.substr(pos));
    std::string header;
    std::getline(rows, header);
    CHECK(header == "h,e_gs_per_site,e_stab_per_site,gap_per_site,e_gs_dense_per_site");
    // Frozen expectations from the momentum-sum oracle evaluated in-test:
    // E/n = -sum_l sqrt(1 + h^2 - 2 h cos((2l+1) pi / n)) / n.
    auto momentum_sum = [](int n, double h) {
        double e = 0.0;
        for (int l = 0; l < n; ++l)
            e -= std::sqrt(1 + h * h - 2 * h * std::cos((2.0 * l + 1) * std::numbers::pi / n));
        return e / n;
    };
    for (double h : {0.0, 1.0, 2.0}) {
        std::string line;
        REQUIRE(std::getline(rows, line));
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream cells(line);
        double hv, e_gs, e_stab, gap, e_dense;
        REQUIRE((cells >> hv >> e_gs >> e_stab >> gap >> e_dense));
        CHECK(hv == doctest::Approx(h));
        CHECK(e_gs == doctest::Approx(momentum_sum(4, h)).epsilon(1e-10));
        CHECK(e_stab == doctest::Approx(-std::max(1.0, h)).epsilon(1e-12));
        CHECK(gap == doctest::Approx(e_stab - e_gs).epsilon(1e-10));
        CHECK(e_dense == doctest::Approx(e_gs).epsilon(1e-8));
    }
}

TEST_CASE("heat-window subcommand") {
    auto res = run_cli({"heat-window", "--field", "0.57735026919,0.57735026919,0.57735026919",
                        "--beta", "1.0", "--e0", "0.0"});
    REQUIRE(res.exit_code == 0);
    CHECK(res.output["slice_empty"] == false);
    CHECK(res.output["s_min"].get<double>() > 0.39);
    CHECK(res.output["q_cold_stab"].get<double>() < 0.0);

    // W-state energy slice: pure stabilizer states exist, witness blind.
    auto blind = run_cli({"heat-window", "--zsum", "3", "--beta", "1.0", "--e0", "1.0"});
    REQUIRE(blind.exit_code == 0);
    CHECK(blind.output["s_min"].get<double>() == 0.0);
    CHECK(blind.output.contains("note"));

    // Empty slice.
    auto empty = run_cli({"heat-window", "--zsum", "3", "--beta", "1.0", "--e0", "3.7"});
    REQUIRE(empty.exit_code == 0);
    CHECK(empty.output["slice_empty"] == true);
}

TEST_CASE("detect subcommand exit codes") {
    std::vector<std::string> base{"detect", "--field", "0.57735026919,0.57735026919,0.57735026919",
                                  "--beta", "1.0", "--e0", "0.0"};
    auto inside = base;
    inside.push_back("--q");
    inside.push_back("0.0");
    auto res = run_cli(inside);
    CHECK(res.exit_code == 0);
    CHECK(res.output["certified"] == false);
    CHECK(res.output.contains("inconclusive_margin"));

    auto outside = base;
    outside.push_back("--q");
    outside.push_back("-2.0");
    res = run_cli(outside);
    CHECK(res.exit_code == 10);
    CHECK(res.output["certified"] == true);

    // Error bars overlapping the window make it inconclusive again.
    auto robust = outside;
    robust.push_back("--dq");
    robust.push_back("3.0");
    res = run_cli(robust);
    CHECK(res.exit_code == 0);
}

TEST_CASE("family subcommand") {
    auto out_path = temp_file("family.csv");
    auto res = run_cli({"family", "--preset", "depolarized-H", "--beta", "1.0", "--steps", "21",
                        "--out", out_path.string()});
    REQUIRE(res.exit_code == 0);
    double expected = 1.0 - 1.0 / std::sqrt(2.0);
    CHECK(res.output["lambda_crt"].get<double>() == doctest::Approx(expected).epsilon(1e-6));
    CHECK(res.output["lambda_star"].get<double>() == doctest::Approx(expected).epsilon(1e-6));
    std::string csv = slurp(out_path);
    CHECK(csv.find("lambda,e0,entropy,q_cold,q_hot,q_cold_stab,q_hot_stab,verdict") !=
          std::string::npos);
    CHECK(csv.find("certified") != std::string::npos);
    CHECK(csv.find("inconclusive") != std::string::npos);

    auto bad = run_cli({"family", "--preset", "unknown"}, false);
    CHECK(bad.exit_code == 2);
}

TEST_CASE("tavis-cummings subcommand with a config file") {
    auto cfg_path = temp_file("tc.json");
    {
        std::ofstream out(cfg_path);
        out << R"({"eps":1.0,"g":1.0,"beta":1.5,"n_max":10,"t_end":2.0,"steps":9,"lambda":0.0})";
    }
    auto out_path = temp_file("tc.csv");
    auto res = run_cli({"tavis-cummings", "--config", cfg_path.string(), "--out", out_path.string()});
    REQUIRE(res.exit_code == 0);
    CHECK(res.output["e0"].get<double>() == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-10));
    std::string csv = slurp(out_path);
    CHECK(csv.find("# schema: tavis-cummings-trace v1") == 0);
    CHECK(csv.find("t,q,verdict") != std::string::npos);
    // First row: t = 0, Q = 0.
    CHECK(csv.find("\n0,0,") != std::string::npos);
}

TEST_CASE("input errors exit with code 2") {
    auto res = run_cli({"gap"}, false);
    CHECK(res.exit_code == 2);
    CHECK(res.raw_err.find("error:") == 0);
    auto res2 = run_cli({"gap", "--hamiltonian", "/nonexistent/file.json"}, false);
    CHECK(res2.exit_code == 2);
    auto res3 = run_cli({"nonsense"}, false);
    CHECK(res3.exit_code == 2);
}

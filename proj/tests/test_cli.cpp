#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rossby/cli.hpp"
#include "rossby/csv.hpp"

namespace fs = std::filesystem;
using rossby::cli::dispatch;

namespace {

struct Run {
    int code = 0;
    std::string out, err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    Run r;
    r.code = dispatch(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("rossby_cli_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

nlohmann::json load_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage") {
    const Run none = run({});
    CHECK(none.code == 2);
    CHECK(none.err.find("dispersion") != std::string::npos);

    const Run help = run({"simulate", "--help"});
    CHECK(help.code == 0);
    for (const char* flag : {"--n-modes", "--k-max", "--xi", "--v-r", "--dt", "--t-final", "--seed", "--init",
                             "--output-every", "--convolution", "--snapshots", "--out", "--config", "--set"})
        CHECK_MESSAGE(help.out.find(flag) != std::string::npos, flag);

    const Run eq_help = run({"equilibrium", "--help"});
    for (const char* flag : {"--omega-ratio", "--beta", "--mu", "--n-r"})
        CHECK_MESSAGE(eq_help.out.find(flag) != std::string::npos, flag);

    const Run bad = run({"dispersion", "--bogus"});
    CHECK(bad.code == 2);
    CHECK(bad.err.rfind("ERROR:", 0) == 0);

    const Run unknown = run({"simulate", "--set", "n_mode=8", "-o", scratch("unknown").string()});
    CHECK(unknown.code == 2);
    CHECK(unknown.err.rfind("ERROR:", 0) == 0);
    CHECK(unknown.err.find("n_mode") != std::string::npos);
}

TEST_CASE("dispersion") {
    const fs::path dir = scratch("disp");
    const Run r = run({"dispersion", "--v-r", "0.1", "--xi", "0,0.7,1.3", "--k-max", "5", "-o", dir.string()});
    REQUIRE(r.code == 0);
    const rossby::CsvText t = rossby::read_csv(dir / "dispersion.csv");
    CHECK(t.header == std::vector<std::string>{"xi", "k_r", "k_theta", "omega", "c_ph_zonal", "cg_r", "cg_theta"});
    CHECK(t.rows.size() == 3 * 501);
    for (const auto& row : t.rows) CHECK(std::stod(row[3]) <= 0.0);
    fs::remove_all(dir);
}

TEST_CASE("equilibrium and stationary") {
    const fs::path dir = scratch("eq");
    REQUIRE(run({"equilibrium", "--omega-ratio", "2.4", "--beta", "1.6", "--mu", "0.2", "-o", dir.string()}).code == 0);
    const auto radii = load_json(dir / "radii.json");
    CHECK(radii["r_plus"].get<double>() == doctest::Approx(1.7484).epsilon(1e-4));
    CHECK(radii["r_minus"].is_null());
    const rossby::CsvText prof = rossby::read_csv(dir / "profile.csv");
    CHECK(prof.header == std::vector<std::string>{"r", "n_over_ninf", "dlnn_dr"});
    CHECK(std::stod(prof.rows.front()[1]) == doctest::Approx(0.25));

    REQUIRE(run({"stationary", "--mu", "-0.2", "-o", dir.string()}).code == 0);
    const auto st = load_json(dir / "structure.json");
    CHECK(std::abs(st["determinant"].get<double>()) < 1e-10);
    CHECK(std::abs(st["phi_outer"].get<double>()) < 1e-10);
    CHECK(st["stationarity_residual"].get<double>() < 1e-8);
    const rossby::CsvText sc = rossby::read_csv(dir / "stationary.csv");
    CHECK(sc.header == std::vector<std::string>{"r", "phi", "n_tf_over_peak"});

    const Run zero = run({"stationary", "--mu", "0", "-o", dir.string()});
    CHECK(zero.code == 2);
    const Run none = run({"equilibrium", "--mu", "-5", "-o", dir.string()});
    CHECK(none.code == 1);
    CHECK(none.err.rfind("ERROR:", 0) == 0);
    fs::remove_all(dir);
}

TEST_CASE("simulate is deterministic") {
    const fs::path a = scratch("sim_a"), b = scratch("sim_b");
    const std::vector<std::string> common{"simulate", "--n-modes", "8", "--t-final", "0.5", "--dt", "0.01",
                                          "--output-every", "10", "--snapshots"};
    auto with_out = [&](const fs::path& p) {
        auto v = common;
        v.insert(v.end(), {"-o", p.string()});
        return v;
    };
    REQUIRE(run(with_out(a)).code == 0);
    REQUIRE(run(with_out(b)).code == 0);
    for (const char* f : {"timeseries.csv", "invariants.csv", "zonal_spectrum.csv", "spectrum.csv", "run.json"}) {
        CHECK_MESSAGE(fs::exists(a / f), f);
        CHECK_MESSAGE(slurp(a / f) == slurp(b / f), f);
    }
    const rossby::CsvText ts = rossby::read_csv(a / "timeseries.csv");
    CHECK(ts.header == std::vector<std::string>{"t", "E", "Z", "max_amp"});
    CHECK(ts.rows.size() == 6);
    CHECK(rossby::read_csv(a / "invariants.csv").header == std::vector<std::string>{"t", "E", "Z", "E_xi"});
    CHECK(rossby::read_csv(a / "zonal_spectrum.csv").header == std::vector<std::string>{"k_theta", "power"});
    CHECK(rossby::read_csv(a / "spectrum.csv").header ==
          std::vector<std::string>{"t", "k_r", "k_theta", "re", "im"});
    const auto doc = load_json(a / "run.json");
    CHECK(doc["config"]["seed"].get<int>() == 42);

    const fs::path cfg = scratch("cfg");
    fs::create_directories(cfg);
    std::ofstream(cfg / "run.json") << R"({"n_modes": 8, "t_final": 0.1, "dt": 0.01, "init": "single_mode"})";
    REQUIRE(run({"simulate", "-c", (cfg / "run.json").string(), "-o", (cfg / "out").string()}).code == 0);
    CHECK(load_json(cfg / "out" / "run.json")["config"]["init"] == "single_mode");

    const Run unstable = run({"simulate", "--n-modes", "8", "--dt", "100", "-o", a.string()});
    CHECK(unstable.code == 1);
    CHECK(unstable.err.find("step") != std::string::npos);
    for (const auto& p : {a, b, cfg}) fs::remove_all(p);
}

TEST_CASE("triad") {
    const fs::path dir = scratch("triad");
    REQUIRE(run({"triad", "--n-modes", "16", "--t-final", "5", "--dt", "0.01", "-o", dir.string()}).code == 0);
    const rossby::CsvText list = rossby::read_csv(dir / "triads.csv");
    CHECK(list.header.size() == 10);
    CHECK(!list.rows.empty());
    const rossby::CsvText series = rossby::read_csv(dir / "triad_series.csv");
    CHECK(series.header == std::vector<std::string>{"t", "re1", "im1", "re2", "im2", "re3", "im3", "E"});
    const auto doc = load_json(dir / "triad.json");
    CHECK(doc["pump_growth_rate"].get<double>() > 0.0);
    fs::remove_all(dir);
}

}  // TEST_SUITE

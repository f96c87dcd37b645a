#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nls/io.hpp"
#include "nls/pipeline.hpp"

using namespace nls;
namespace fs = std::filesystem;

namespace {

const char* kSmallConfig = R"({
  "potential": {"example": {"rho": 1.0, "nu": 0.6, "c": 1.0, "alpha_minus": 0.0}},
  "grid": {"x_max": 20.0, "steps": 1200, "z_nodes": 64, "glm_panels": 32,
           "recon_half_width": 10.0, "recon_points": 11},
  "source": {"case": "A", "terms": [{"A": {"const": [0.3, 0.0]}}]},
  "times": [0.0, 0.3],
  "output": {"dir": "out"}
})";

fs::path temp_dir(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("nls_cli_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("config validation errors name the offending field") {
    CHECK_THROWS_WITH_AS(parse_config_text(R"({"potential": {"example":
        {"rho": 0.0, "nu": 0.6, "c": 1.0}}})"),
                         doctest::Contains("rho"), ValidationError);

    CHECK_THROWS_WITH_AS(parse_config_text(R"({"potential": {"example":
        {"rho": 1.0, "nu": 0.6, "c": 1.0}}, "source": {"case": "B",
        "terms": [{"B": {"const": [1.0, 0.5]}}]}})"),
                         doctest::Contains("real"), ValidationError);

    CHECK_THROWS_WITH_AS(parse_config_text(R"({"potential": {"example":
        {"rho": 1.0, "nu": 0.6, "c": 1.0}}, "grid": {"bogus": 1}})"),
                         doctest::Contains("bogus"), ValidationError);

    CHECK_THROWS_AS(parse_config_text("{not json"), ParseError);

    const RunConfig cfg = parse_config_text(kSmallConfig);
    CHECK(cfg.example.has_value());
    CHECK(cfg.boundary.alpha_plus == doctest::Approx(4.9961830895930177));
    CHECK(cfg.times.size() == 2);
    CHECK_FALSE(cfg.config_hash.empty());
}

TEST_CASE("alpha_plus defaults to the matched phase but can be overridden") {
    const RunConfig cfg = parse_config_text(R"({"potential": {"example":
        {"rho": 1.0, "nu": 0.6, "c": 1.0, "alpha_minus": 0.0, "alpha_plus": 1.0}}})");
    CHECK(cfg.boundary.alpha_plus == doctest::Approx(1.0));
}

TEST_CASE("grid refinement halves the step sizes") {
    RunConfig cfg = parse_config_text(kSmallConfig);
    const int steps = cfg.grid.steps;
    const int panels = cfg.grid.glm_panels;
    cfg.refine(2);
    CHECK(cfg.grid.steps == 4 * steps);
    CHECK(cfg.grid.glm_panels == 4 * panels);
}

TEST_CASE("simulate produces deterministic artifacts") {
    const RunConfig cfg = parse_config_text(kSmallConfig);
    const fs::path d1 = temp_dir("sim1");
    const fs::path d2 = temp_dir("sim2");
    run_command(Command::Simulate, cfg, d1.string());
    run_command(Command::Simulate, cfg, d2.string());

    int compared = 0;
    for (const auto& entry : fs::directory_iterator(d1)) {
        const fs::path other = d2 / entry.path().filename();
        REQUIRE(fs::exists(other));
        CHECK(slurp(entry.path()) == slurp(other));
        ++compared;
    }
    CHECK(compared >= 8);  // fields, scattering, discrete, sidecars, plot script, rhs

    // expected artifact names
    CHECK(fs::exists(d1 / "u_t0.csv"));
    CHECK(fs::exists(d1 / "u_t0.3.csv"));
    CHECK(fs::exists(d1 / "scattering_t0.csv"));
    CHECK(fs::exists(d1 / "discrete_t0.json"));
    CHECK(fs::exists(d1 / "u_t0.csv.meta.json"));
    CHECK(fs::exists(d1 / "plot.plt"));
    CHECK(fs::exists(d1 / "source_rhs_t0.3.csv"));

    fs::remove_all(d1);
    fs::remove_all(d2);
}

TEST_CASE("simulate output matches the example command output") {
    const RunConfig cfg = parse_config_text(kSmallConfig);
    const fs::path ds = temp_dir("sim");
    const fs::path de = temp_dir("ex");
    run_command(Command::Simulate, cfg, ds.string());
    run_command(Command::Example, cfg, de.string());

    auto read_field = [](const fs::path& p) {
        std::ifstream in(p);
        std::string line;
        std::getline(in, line);  // header
        std::vector<std::array<double, 4>> rows;
        while (std::getline(in, line)) {
            std::array<double, 4> row{};
            std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &row[0], &row[1], &row[2], &row[3]);
            rows.push_back(row);
        }
        return rows;
    };
    const auto sim = read_field(ds / "u_t0.3.csv");
    const auto exa = read_field(de / "u_t0.3.csv");
    REQUIRE(sim.size() == exa.size());
    double max_dev = 0.0;
    for (std::size_t i = 0; i < sim.size(); ++i) {
        CHECK(sim[i][0] == exa[i][0]);
        max_dev = std::max(max_dev, std::hypot(sim[i][1] - exa[i][1], sim[i][2] - exa[i][2]));
    }
    CHECK(max_dev < 1e-5);
    fs::remove_all(ds);
    fs::remove_all(de);
}

TEST_CASE("simulate with a case-B source runs the full pipeline") {
    const char* cfg_b = R"({
      "potential": {"example": {"rho": 1.0, "nu": 0.6, "c": 1.0, "alpha_minus": 0.0}},
      "grid": {"x_max": 20.0, "steps": 1600, "z_nodes": 32, "glm_panels": 32,
               "recon_half_width": 10.0, "recon_points": 11},
      "source": {"case": "B", "terms": [{"B": {"const": [1.0, 0.0]}, "beta": {"const": [0.0, 1.0]}}]},
      "times": [0.4]
    })";
    const RunConfig cfg = parse_config_text(cfg_b);
    const fs::path dir = temp_dir("caseb");
    run_command(Command::Simulate, cfg, dir.string());
    CHECK(fs::exists(dir / "u_t0.4.csv"));
    CHECK(fs::exists(dir / "source_rhs_t0.4.csv"));
    // the evolved field against the closed form at g = 2t
    const auto example = nlohmann::json::parse(slurp(dir / "discrete_t0.4.json"));
    CHECK(example["eigenvalues"].size() == 1);
    fs::remove_all(dir);
}

TEST_CASE("verify command writes residual reports") {
    const RunConfig cfg = parse_config_text(kSmallConfig);
    const fs::path dir = temp_dir("verify");
    run_command(Command::Verify, cfg, dir.string());
    const auto reports = nlohmann::json::parse(slurp(dir / "reports.json"));
    REQUIRE(reports.is_array());
    CHECK(reports.size() >= 6);
    bool saw_theta = false, saw_roundtrip = false;
    for (const auto& r : reports) {
        if (r["name"] == "theta_relation") saw_theta = true;
        if (r["name"] == "roundtrip_field_error") {
            saw_roundtrip = true;
            CHECK(r["max_residual"].get<double>() < 1e-3);  // coarse grids in this config
        }
    }
    CHECK(saw_theta);
    CHECK(saw_roundtrip);
    fs::remove_all(dir);
}

TEST_CASE("direct on a tabulated plane wave finds no discrete spectrum") {
    const fs::path dir = temp_dir("plane");
    const fs::path table = dir / "plane.csv";
    {
        std::ofstream out(table);
        out << "x,re,im\n";
        const int n = 4001;
        for (int i = 0; i < n; ++i) {
            const double x = -20.0 + 40.0 * i / (n - 1);
            out << format_double(x) << ",1,0\n";
        }
    }
    std::string cfg_text = R"({
      "potential": {"file": ")" + table.string() + R"("},
      "boundary": {"rho": 1.0, "alpha_minus": 0.0, "alpha_plus": 0.0},
      "grid": {"z_nodes": 32},
      "times": [0.0]
    })";
    const RunConfig cfg = parse_config_text(cfg_text);
    run_command(Command::Direct, cfg, dir.string());

    const auto discrete = nlohmann::json::parse(slurp(dir / "discrete_t0.json"));
    CHECK(discrete["eigenvalues"].empty());

    // |b| stays at the noise floor on the whole grid
    std::ifstream in(dir / "scattering_t0.csv");
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        double z, ra, ia, rb, ib, rr, ir;
        std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf", &z, &ra, &ia, &rb, &ib, &rr, &ir);
        CHECK(std::hypot(rb, ib) < 1e-8);
        CHECK(std::hypot(ra - 1.0, ia) < 1e-7);
    }
    fs::remove_all(dir);
}

TEST_CASE("error classification maps to documented exit codes") {
    std::string cls;
    CHECK(classify_error(ValidationError("config: bad"), cls) == 1);
    CHECK(cls == "validation");
    CHECK(classify_error(ParseError("config: bad"), cls) == 1);
    CHECK(classify_error(NoConvergence("root"), cls) == 2);
    CHECK(cls == "numerical");
    CHECK(classify_error(NlsError("io: disk"), cls) == 3);
    CHECK(cls == "io");
}

TEST_CASE("binary smoke test when the executable is reachable") {
    const char* candidates[] = {"./nls-ist", "build/nls-ist"};
    std::string bin;
    for (const char* c : candidates)
        if (fs::exists(c)) bin = c;
    if (bin.empty()) return;  // running outside the build tree

    const fs::path dir = temp_dir("bin");
    const fs::path cfg_path = dir / "cfg.json";
    std::ofstream(cfg_path) << kSmallConfig;

    const std::string cmd = bin + " example --config " + cfg_path.string() + " --out " +
                            (dir / "out").string() + " > /dev/null 2>&1";
    CHECK(std::system(cmd.c_str()) == 0);
    CHECK(fs::exists(dir / "out" / "u_t0.3.csv"));

    const std::string bad = bin + " direct --config " + (dir / "missing.json").string() +
                            " > /dev/null 2> " + (dir / "err.json").string();
    const int rc = std::system(bad.c_str());
    CHECK(WEXITSTATUS(rc) == 1);
    const auto err = nlohmann::json::parse(slurp(dir / "err.json"));
    CHECK(err.contains("message"));
    fs::remove_all(dir);
}

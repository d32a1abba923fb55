#include <numbers>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "json.hpp"
#include "qbatt/config.hpp"
#include "qbatt/output.hpp"

using namespace qbatt;
using std::numbers::pi;

namespace {

int line_count(const std::string& text) {
    int lines = 0;
    for (const char ch : text) {
        if (ch == '\n') ++lines;
    }
    return lines;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, sep)) out.push_back(field);
    return out;
}

}  // namespace

TEST_CASE("default config carries the reference parameters") {
    const FullConfig config = parse_config_text("");
    CHECK(config.n_qubits == 3);
    CHECK(config.circuit_case == 1);
    CHECK(config.root == 15);
    CHECK(config.iterations == 30);
    CHECK(config.kT_a == 4.0);
    CHECK(config.kT_c == 0.4);
    CHECK(config.phi == doctest::Approx(pi));
    CHECK(config.grid.theta_points == 101);
    CHECK(config.grid.phi_points == 101);
    CHECK(config.grid.p_points == 51);
    CHECK_FALSE(config.b_excited_population.has_value());
}

TEST_CASE("unknown keys are rejected and listed") {
    CHECK_THROWS_WITH_AS(parse_config_text("tempo = 3\nqubits = 2\nswing = 1\n"),
                         doctest::Contains("'tempo'"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config_text("swing = 1\n"), doctest::Contains("'swing'"),
                         std::invalid_argument);
}

TEST_CASE("range violations name the field") {
    CHECK_THROWS_WITH_AS(parse_config_text("theta = 4.0\n"), doctest::Contains("theta"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config_text("qubits = 4\n"), doctest::Contains("qubits"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config_text("case = 5\n"), doctest::Contains("case"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config_text("qubit_b.excited_population = 0.7\n"),
                         doctest::Contains("excited_population"), std::invalid_argument);
}

TEST_CASE("parse of an emission is a fixed point") {
    FullConfig config = parse_config_text("qubits = 2\ncase = 3\ntheta = 0.7\nphi = 5.5\n");
    const std::string first = emit_config(config);
    const FullConfig reparsed = parse_config_text(first);
    CHECK(reparsed == config);
    CHECK(emit_config(reparsed) == first);
}

TEST_CASE("comments, spacing and inf values parse") {
    const FullConfig config = parse_config_text(
        "# reference run\n  qubits = 2   # two-qubit register\n\nqubit_a.kT = inf\n");
    CHECK(config.n_qubits == 2);
    CHECK(std::isinf(config.kT_a));
    const FullConfig round = parse_config_text(emit_config(config));
    CHECK(round == config);
}

TEST_CASE("trajectory CSV layout") {
    FullConfig config = parse_config_text("qubits = 2\niterations = 0\n");
    const Trajectory traj = run(protocol_config(config));
    std::ostringstream csv;
    write_trajectory_csv(csv, traj, config.theta, config.phi);
    const std::string text = csv.str();
    CHECK(line_count(text) == 2);  // header + single record

    std::istringstream lines(text);
    std::string header;
    std::getline(lines, header);
    CHECK(header == std::string(kCsvHeader));
    std::string row;
    std::getline(lines, row);
    const auto fields = split(row, ',');
    REQUIRE(fields.size() == 13);
    CHECK(fields[0] == "1");
    CHECK(fields[1] == "2");
    CHECK(fields[2] == "15");
    CHECK(fields[5] == "0");
    CHECK(fields[11].empty());  // powers stay empty at iteration 0
    CHECK(fields[12].empty());
}

TEST_CASE("scan CSV row count matches the grid") {
    FullConfig config = parse_config_text("qubits = 2\n");
    const ScanResult result =
        scan_theta_iterations(protocol_config(config), config.grid, Metric::Ergotropy, 0);
    std::ostringstream csv;
    write_scan_csv(csv, result);
    CHECK(line_count(csv.str()) == 3132);  // header + 101 x 31 cells
}

TEST_CASE("re-emission of the same run is byte-identical") {
    FullConfig config = parse_config_text("qubits = 2\niterations = 7\ntheta = 1.9\n");
    const Trajectory a = run(protocol_config(config));
    const Trajectory b = run(protocol_config(config));
    std::ostringstream csv_a, csv_b;
    write_trajectory_csv(csv_a, a, config.theta, config.phi);
    write_trajectory_csv(csv_b, b, config.theta, config.phi);
    CHECK(csv_a.str() == csv_b.str());
}

TEST_CASE("JSON rows round-trip exactly and embed the manifest") {
    FullConfig config = parse_config_text("qubits = 2\niterations = 5\n");
    const Trajectory traj = run(protocol_config(config));
    const RunManifest manifest = make_manifest("run", config);
    const std::string text = trajectory_json(traj, config.theta, config.phi, manifest);

    const nlohmann::json parsed = nlohmann::json::parse(text);
    CHECK(parsed.at("schema_version").get<int>() == kSchemaVersion);
    CHECK(parsed.at("manifest").at("version").get<std::string>() == std::string(kArtifactVersion));
    CHECK(parsed.at("manifest").at("gate_table").size() == 1);
    REQUIRE(parsed.at("rows").size() == 6);
    for (std::size_t a = 0; a < 6; ++a) {
        const auto& row = parsed.at("rows").at(a);
        CHECK(row.at(6).get<double>() == traj.records[a].energy);      // exact round-trip
        CHECK(row.at(7).get<double>() == traj.records[a].ergotropy);
        if (a == 0) {
            CHECK(row.at(11).is_null());
        } else {
            CHECK(row.at(11).get<double>() == *traj.records[a].power_work);
        }
    }
}

TEST_CASE("manifest survives serialization") {
    FullConfig config = parse_config_text("qubits = 3\ncase = 2\ntheta = 2.2\n");
    RunManifest manifest = make_manifest("scan", config);
    manifest.outputs.push_back("out.csv");
    const RunManifest round = manifest_from_json(manifest_to_json(manifest));
    CHECK(round.version == manifest.version);
    CHECK(round.schema_version == manifest.schema_version);
    CHECK(round.generated_at == manifest.generated_at);
    CHECK(round.mode == manifest.mode);
    CHECK(round.config == manifest.config);
    CHECK(round.outputs == manifest.outputs);
    REQUIRE(round.gate_table.size() == manifest.gate_table.size());
    for (std::size_t i = 0; i < round.gate_table.size(); ++i) {
        CHECK(round.gate_table[i].control == manifest.gate_table[i].control);
        CHECK(round.gate_table[i].target == manifest.gate_table[i].target);
        CHECK(round.gate_table[i].root == manifest.gate_table[i].root);
    }
}

TEST_CASE("heatmap of a constant field uses a single character") {
    FullConfig config = parse_config_text("qubits = 2\niterations = 3\ngrid.theta_points = 6\n");
    ScanResult result =
        scan_theta_iterations(protocol_config(config), config.grid, Metric::Ergotropy, 1);
    for (ScanCell& cell : result.cells) {
        cell.record.ergotropy = 0.25;
    }
    const std::string art = ascii_heatmap(result);
    std::istringstream lines(art);
    std::string line;
    std::getline(lines, line);  // caption
    int body_rows = 0;
    while (std::getline(lines, line)) {
        if (line.size() < 2 || line.front() != '|') continue;
        ++body_rows;
        for (const char ch : line.substr(1, line.size() - 2)) {
            CHECK(ch == ' ');
        }
    }
    CHECK(body_rows == 4);
}

TEST_CASE("exactly one cell reaches the densest character") {
    FullConfig config = parse_config_text("qubits = 2\niterations = 3\ngrid.theta_points = 6\n");
    ScanResult result =
        scan_theta_iterations(protocol_config(config), config.grid, Metric::Ergotropy, 1);
    for (ScanCell& cell : result.cells) {
        cell.record.ergotropy = 0.0;
    }
    result.cells[7].record.ergotropy = 1.0;
    const std::string art = ascii_heatmap(result);
    CHECK(std::count(art.begin(), art.end(), '@') == 1);
}

TEST_CASE("the dense region of the FoM panel sits near the equator") {
    FullConfig config =
        parse_config_text("qubits = 3\ncase = 1\ngrid.theta_points = 41\nmetric = fom\n");
    const ScanResult result =
        scan_theta_iterations(protocol_config(config), config.grid, Metric::FoM, 0);
    double best = -1e300;
    double best_theta = 0.0;
    for (int i = 0; i < result.n_theta(); ++i) {
        for (int j = 0; j < result.n_second(); ++j) {
            if (result.value(i, j) > best) {
                best = result.value(i, j);
                best_theta = result.thetas[static_cast<std::size_t>(i)];
            }
        }
    }
    CHECK(best_theta > 1.0);
    CHECK(best_theta < 2.2);
    const std::string art = ascii_heatmap(result);
    CHECK(art.find('@') != std::string::npos);
}

TEST_CASE("thermal table emission labels variants") {
    FullConfig config = parse_config_text(
        "grid.theta_points = 5\ngrid.phi_points = 4\ngrid.p_points = 3\niterations = 6\n");
    const ThermalComparison table =
        thermal_comparison(protocol_config(config), config.grid, 2);
    std::ostringstream csv;
    write_thermal_csv(csv, table);
    const std::string text = csv.str();
    CHECK(line_count(text) == 1 + 3 * 4 * 4);
    CHECK(text.find("pure") != std::string::npos);
    CHECK(text.find("thermal") != std::string::npos);

    const std::string json_text = thermal_json(table, make_manifest("compare-thermal", config));
    const nlohmann::json parsed = nlohmann::json::parse(json_text);
    CHECK(parsed.at("rows").size() == 48);
}

#include "qbatt/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qbatt {

namespace {

std::string trim(const std::string& s) {
    std::size_t first = s.find_first_not_of(" \t\r");
    std::size_t last = s.find_last_not_of(" \t\r");
    if (first == std::string::npos) return {};
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(const std::string& message) {
    throw std::invalid_argument("config: " + message);
}

double parse_double(const std::string& key, const std::string& value) {
    if (value == "inf" || value == "+inf" || value == "infinity") {
        return std::numeric_limits<double>::infinity();
    }
    try {
        std::size_t consumed = 0;
        const double parsed = std::stod(value, &consumed);
        if (consumed != value.size()) fail(key + ": trailing characters in '" + value + "'");
        return parsed;
    } catch (const std::invalid_argument&) {
        fail(key + ": cannot parse '" + value + "' as a number");
    } catch (const std::out_of_range&) {
        fail(key + ": value '" + value + "' out of range");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    int parsed = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        fail(key + ": cannot parse '" + value + "' as an integer");
    }
    return parsed;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
    std::vector<int> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) fail(key + ": empty entry in list '" + value + "'");
        out.push_back(parse_int(key, item));
    }
    if (out.empty()) fail(key + ": list must not be empty");
    return out;
}

std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void apply_key(FullConfig& c, const std::string& key, const std::string& value) {
    if (key == "qubits") c.n_qubits = parse_int(key, value);
    else if (key == "case") c.circuit_case = parse_int(key, value);
    else if (key == "root") c.root = parse_int(key, value);
    else if (key == "iterations") c.iterations = parse_int(key, value);
    else if (key == "theta") c.theta = parse_double(key, value);
    else if (key == "phi") c.phi = parse_double(key, value);
    else if (key == "metric") c.metric = value;
    else if (key == "format") c.format = value;
    else if (key == "threads") c.threads = parse_int(key, value);
    else if (key == "qubit_a.kT") c.kT_a = parse_double(key, value);
    else if (key == "qubit_a.eps1") c.ham_a.eps1 = parse_double(key, value);
    else if (key == "qubit_a.eps2") c.ham_a.eps2 = parse_double(key, value);
    else if (key == "qubit_b.eps1") c.ham_b.eps1 = parse_double(key, value);
    else if (key == "qubit_b.eps2") c.ham_b.eps2 = parse_double(key, value);
    else if (key == "qubit_b.excited_population") c.b_excited_population = parse_double(key, value);
    else if (key == "qubit_c.kT") c.kT_c = parse_double(key, value);
    else if (key == "qubit_c.eps1") c.ham_c.eps1 = parse_double(key, value);
    else if (key == "qubit_c.eps2") c.ham_c.eps2 = parse_double(key, value);
    else if (key == "grid.theta_points") c.grid.theta_points = parse_int(key, value);
    else if (key == "grid.phi_points") c.grid.phi_points = parse_int(key, value);
    else if (key == "grid.p_points") c.grid.p_points = parse_int(key, value);
    else if (key == "converge.roots") c.convergence_roots = parse_int_list(key, value);
    else fail("unreachable");
}

bool known_key(const std::string& key) {
    static const std::vector<std::string> keys = {
        "qubits", "case", "root", "iterations", "theta", "phi", "metric", "format",
        "threads", "qubit_a.kT", "qubit_a.eps1", "qubit_a.eps2", "qubit_b.eps1",
        "qubit_b.eps2", "qubit_b.excited_population", "qubit_c.kT", "qubit_c.eps1",
        "qubit_c.eps2", "grid.theta_points", "grid.phi_points", "grid.p_points",
        "converge.roots"};
    for (const std::string& k : keys) {
        if (k == key) return true;
    }
    return false;
}

void check(bool ok, const std::string& field, const std::string& requirement) {
    if (!ok) fail(field + ": " + requirement);
}

}  // namespace

void validate_config(const FullConfig& c) {
    check(c.n_qubits == 2 || c.n_qubits == 3, "qubits", "only 2 and 3 supported");
    check(c.circuit_case >= 1 && c.circuit_case <= 3, "case", "must be 1, 2 or 3");
    check(c.root >= 1, "root", "must be a positive integer");
    check(c.iterations >= 0, "iterations", "must be non-negative");
    check(c.theta >= 0.0 && c.theta <= std::numbers::pi, "theta",
          "must lie in [0, pi] (= [0, 3.14159...])");
    check(c.phi >= 0.0 && c.phi < 2.0 * std::numbers::pi, "phi", "must lie in [0, 2*pi)");
    try {
        metric_from_name(c.metric);
    } catch (const std::invalid_argument& e) {
        fail(std::string("metric: ") + e.what());
    }
    check(c.format == "csv" || c.format == "json", "format", "must be csv or json");
    check(c.threads >= 0, "threads", "must be non-negative (0 = hardware parallelism)");
    check(c.kT_a >= 0.0 && !std::isnan(c.kT_a), "qubit_a.kT", "must be non-negative");
    check(c.kT_c >= 0.0 && !std::isnan(c.kT_c), "qubit_c.kT", "must be non-negative");
    check(c.ham_a.eps1 <= c.ham_a.eps2, "qubit_a.eps1", "must not exceed qubit_a.eps2");
    check(c.ham_b.eps1 <= c.ham_b.eps2, "qubit_b.eps1", "must not exceed qubit_b.eps2");
    check(c.ham_c.eps1 <= c.ham_c.eps2, "qubit_c.eps1", "must not exceed qubit_c.eps2");
    if (c.b_excited_population) {
        check(*c.b_excited_population >= 0.0 && *c.b_excited_population <= 0.5,
              "qubit_b.excited_population", "must lie in [0, 1/2]");
    }
    check(c.grid.theta_points >= 2, "grid.theta_points", "needs at least 2 points");
    check(c.grid.phi_points >= 1, "grid.phi_points", "needs at least 1 point");
    check(c.grid.p_points >= 2, "grid.p_points", "needs at least 2 points");
    check(!c.convergence_roots.empty(), "converge.roots", "must not be empty");
    for (const int n : c.convergence_roots) {
        check(n >= 1, "converge.roots", "every root must be a positive integer");
    }
}

FullConfig parse_config_text(const std::string& text) {
    FullConfig config;
    std::vector<std::string> unknown;
    std::istringstream in(text);
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << "line " << line_number << ": expected 'key = value', got '" << line << "'";
            fail(msg.str());
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!known_key(key)) {
            unknown.push_back(key);
            continue;
        }
        apply_key(config, key, value);
    }
    if (!unknown.empty()) {
        std::ostringstream msg;
        msg << "unknown key" << (unknown.size() > 1 ? "s" : "") << ":";
        for (const std::string& k : unknown) msg << " '" << k << "'";
        fail(msg.str());
    }
    validate_config(config);
    return config;
}

FullConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        fail("cannot open file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

std::string emit_config(const FullConfig& c) {
    std::ostringstream out;
    out << "qubits = " << c.n_qubits << "\n";
    out << "case = " << c.circuit_case << "\n";
    out << "root = " << c.root << "\n";
    out << "iterations = " << c.iterations << "\n";
    out << "theta = " << format_number(c.theta) << "\n";
    out << "phi = " << format_number(c.phi) << "\n";
    out << "metric = " << c.metric << "\n";
    out << "format = " << c.format << "\n";
    out << "threads = " << c.threads << "\n";
    out << "qubit_a.kT = " << format_number(c.kT_a) << "\n";
    out << "qubit_a.eps1 = " << format_number(c.ham_a.eps1) << "\n";
    out << "qubit_a.eps2 = " << format_number(c.ham_a.eps2) << "\n";
    out << "qubit_b.eps1 = " << format_number(c.ham_b.eps1) << "\n";
    out << "qubit_b.eps2 = " << format_number(c.ham_b.eps2) << "\n";
    if (c.b_excited_population) {
        out << "qubit_b.excited_population = " << format_number(*c.b_excited_population) << "\n";
    }
    out << "qubit_c.kT = " << format_number(c.kT_c) << "\n";
    out << "qubit_c.eps1 = " << format_number(c.ham_c.eps1) << "\n";
    out << "qubit_c.eps2 = " << format_number(c.ham_c.eps2) << "\n";
    out << "grid.theta_points = " << c.grid.theta_points << "\n";
    out << "grid.phi_points = " << c.grid.phi_points << "\n";
    out << "grid.p_points = " << c.grid.p_points << "\n";
    out << "converge.roots = ";
    for (std::size_t i = 0; i < c.convergence_roots.size(); ++i) {
        if (i > 0) out << ",";
        out << c.convergence_roots[i];
    }
    out << "\n";
    return out.str();
}

ProtocolConfig protocol_config(const FullConfig& c) {
    validate_config(c);
    std::vector<QubitSpec> qubits;
    qubits.push_back({c.ham_a, ThermalInit{c.kT_a}});
    if (c.b_excited_population) {
        qubits.push_back({c.ham_b, ExcitedPopulationInit{*c.b_excited_population}});
    } else {
        qubits.push_back({c.ham_b, PureInit{c.theta, c.phi}});
    }
    if (c.n_qubits == 3) {
        qubits.push_back({c.ham_c, ThermalInit{c.kT_c}});
    }
    ProtocolConfig out;
    out.system = SystemSpec(std::move(qubits));
    out.circuit_case = circuit_case_from_int(c.circuit_case);
    out.root = c.root;
    out.iterations = c.iterations;
    return out;
}

}  // namespace qbatt

#pragma once

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "snk/error.hpp"
#include "snk/kspace.hpp"
#include "snk/objective.hpp"
#include "snk/report.hpp"
#include "snk/transform.hpp"

namespace snk {

/// Parsed problem file: objective description, instance data and
/// solver settings (the latter two overridable from the command line).
struct ProblemConfig {
    Family family = Family::smoothstep;
    Params params;
    int n = 0;
    std::optional<double> M;
    std::optional<double> a, b, M0;
    Algorithm algorithm = Algorithm::constant;
    double tol = 1e-10;
    double step = 1e-3;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline double parse_real(const std::string& text, const std::string& key) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size())
            throw parameter_error("trailing characters after number");
        return v;
    } catch (const parameter_error&) {
        throw parameter_error("value of '" + key + "' is not a number: " + text);
    } catch (const std::exception&) {
        throw parameter_error("value of '" + key + "' is not a number: " + text);
    }
}

inline long parse_int(const std::string& text, const std::string& key) {
    try {
        std::size_t used = 0;
        const long v = std::stol(text, &used);
        if (used != text.size())
            throw parameter_error("trailing characters after integer");
        return v;
    } catch (const parameter_error&) {
        throw parameter_error("value of '" + key + "' is not an integer: " + text);
    } catch (const std::exception&) {
        throw parameter_error("value of '" + key + "' is not an integer: " + text);
    }
}

/// Table syntax: semicolon-separated "x,f" pairs, e.g. "0,0; 0.5,0.5; 1,1".
inline std::vector<std::pair<double, double>> parse_table(const std::string& text) {
    std::vector<std::pair<double, double>> pts;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto comma = item.find(',');
        if (comma == std::string::npos)
            throw parameter_error("table entry '" + item + "' is not an x,f pair");
        pts.emplace_back(parse_real(trim(item.substr(0, comma)), "table"),
                         parse_real(trim(item.substr(comma + 1)), "table"));
    }
    if (pts.empty()) throw parameter_error("table has no points");
    return pts;
}

} // namespace detail

/**
 * Parses the flat sectioned key = value format:
 *
 *   [objective]   family, beta, beta0, scale, center, table
 *   [instance]    n, and either M or the triple a, b, M0
 *   [solver]      algorithm, tol, step        (optional section)
 *
 * Lines starting with '#' or ';' are comments. Unknown sections or
 * keys are rejected so typos never pass silently.
 */
inline ProblemConfig parse_problem_file(const std::string& text) {
    ProblemConfig cfg;
    bool family_seen = false, n_seen = false;

    std::istringstream ss(text);
    std::string raw, section;
    int lineno = 0;
    while (std::getline(ss, raw)) {
        ++lineno;
        const std::string line = detail::trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        const std::string where = " (line " + std::to_string(lineno) + ")";

        if (line.front() == '[') {
            if (line.back() != ']')
                throw parameter_error("malformed section header" + where);
            section = line.substr(1, line.size() - 2);
            if (section != "objective" && section != "instance" && section != "solver")
                throw parameter_error("unknown section [" + section + "]" + where);
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw parameter_error("expected key = value" + where);
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string val = detail::trim(line.substr(eq + 1));
        if (section.empty())
            throw parameter_error("key '" + key + "' outside any section" + where);

        if (section == "objective") {
            if (key == "family") {
                const auto fam = family_from_name(val);
                if (!fam) throw parameter_error("unknown family '" + val + "'" + where);
                cfg.family = *fam;
                family_seen = true;
            } else if (key == "beta") {
                cfg.params.beta = detail::parse_real(val, key);
            } else if (key == "beta0") {
                cfg.params.beta0 = detail::parse_real(val, key);
            } else if (key == "scale") {
                cfg.params.scale = detail::parse_real(val, key);
            } else if (key == "center") {
                cfg.params.center = detail::parse_real(val, key);
            } else if (key == "table") {
                cfg.params.table = detail::parse_table(val);
            } else {
                throw parameter_error("unknown objective key '" + key + "'" + where);
            }
        } else if (section == "instance") {
            if (key == "n") {
                const long n = detail::parse_int(val, key);
                if (n < 1 || n > 100000000)
                    throw parameter_error("n out of range" + where);
                cfg.n = int(n);
                n_seen = true;
            } else if (key == "M") {
                cfg.M = detail::parse_real(val, key);
            } else if (key == "a") {
                cfg.a = detail::parse_real(val, key);
            } else if (key == "b") {
                cfg.b = detail::parse_real(val, key);
            } else if (key == "M0") {
                cfg.M0 = detail::parse_real(val, key);
            } else {
                throw parameter_error("unknown instance key '" + key + "'" + where);
            }
        } else { // solver
            if (key == "algorithm") {
                const auto alg = algorithm_from_name(val);
                if (!alg)
                    throw parameter_error("unknown algorithm '" + val + "'" + where);
                cfg.algorithm = *alg;
            } else if (key == "tol") {
                cfg.tol = detail::parse_real(val, key);
            } else if (key == "step") {
                cfg.step = detail::parse_real(val, key);
            } else {
                throw parameter_error("unknown solver key '" + key + "'" + where);
            }
        }
    }

    if (!family_seen) throw parameter_error("problem file misses objective family");
    if (!n_seen) throw parameter_error("problem file misses instance n");
    const bool bounded = cfg.a || cfg.b || cfg.M0;
    if (bounded) {
        if (!(cfg.a && cfg.b && cfg.M0))
            throw parameter_error("bounded instances need all of a, b, M0");
        if (cfg.M)
            throw parameter_error("give either M or the triple a, b, M0, not both");
    } else if (!cfg.M) {
        throw parameter_error("problem file misses instance mass (M, or a, b, M0)");
    }
    return cfg;
}

inline ProblemConfig load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parameter_error("cannot open problem file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem_file(buf.str());
}

/// Materializes the instance, normalizing through [a, b] when present.
inline ProblemInstance build_instance(const ProblemConfig& cfg) {
    ObjectiveSpec spec = make_objective(cfg.family, cfg.params);
    if (cfg.a)
        return make_bounded_instance(cfg.n, *cfg.M0, *cfg.a, *cfg.b, std::move(spec));
    return ProblemInstance(cfg.n, *cfg.M, std::move(spec));
}

} // namespace snk

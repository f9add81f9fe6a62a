#pragma once

// Case configuration: JSON ingestion of field data, filter rows and
// published generators.

#include "egr/casefilter.hpp"
#include "egr/mordell.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace egr {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Verdict { NonExistence, ConditionalNonExistence, Blocked, ExistenceWitness, Failed };

inline std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::NonExistence: return "NonExistence";
    case Verdict::ConditionalNonExistence: return "ConditionalNonExistence";
    case Verdict::Blocked: return "Blocked";
    case Verdict::ExistenceWitness: return "ExistenceWitness";
    case Verdict::Failed: return "Failed";
    }
    return "?";
}

inline Verdict parse_verdict(const std::string& s)
{
    for (Verdict v : {Verdict::NonExistence, Verdict::ConditionalNonExistence, Verdict::Blocked,
                      Verdict::ExistenceWitness, Verdict::Failed}) {
        if (to_string(v) == s) {
            return v;
        }
    }
    throw ConfigError("unknown verdict '" + s + "'");
}

struct CurveData {
    int sign = 1;
    long n = 0;
    GeneratorData generators;
    // Published integral point set as combinations, e.g. "T+P43A", "-2P43B".
    std::optional<std::vector<std::string>> expected_points;
};

// A curve handed to the pipeline directly instead of through the Mordell
// reduction (positive controls).
struct InjectedCurve {
    std::string name;
    std::array<std::string, 5> a;
};

struct CaseSpec {
    long m = 0;
    std::string name;
    std::optional<std::string> epsilon; // element grammar; canonical unit if absent
    std::string epsilon_provenance;
    FilterSpec filter;
    std::string ray_provenance;
    bool cubic_is_hypothesis = false; // verdict is conditional on a cubic discriminant
    std::vector<CurveData> curves;
    std::vector<InjectedCurve> injected;
    long M = 5;
    long H = 0;
    Verdict expected = Verdict::NonExistence;
};

struct SuiteConfig {
    std::vector<CaseSpec> cases;
};

namespace detail {

template <class T>
T get_or(const nlohmann::json& j, const char* key, T fallback)
{
    return j.contains(key) ? j.at(key).get<T>() : fallback;
}

inline int parse_sign(const nlohmann::json& j)
{
    if (j.is_number_integer()) {
        int s = j.get<int>();
        if (s == 1 || s == -1) {
            return s;
        }
    } else if (j.is_string()) {
        auto s = j.get<std::string>();
        if (s == "+") {
            return 1;
        }
        if (s == "-") {
            return -1;
        }
    }
    throw ConfigError("sign must be \"+\", \"-\", 1 or -1, got " + j.dump());
}

inline NamedPoint parse_named_point(const nlohmann::json& j, const QuadField& K)
{
    return {j.at("name").get<std::string>(), parse_point(j.at("point").get<std::string>(), K)};
}

inline CurveData parse_curve(const nlohmann::json& j, const QuadField& K)
{
    CurveData cd;
    cd.sign = parse_sign(j.at("sign"));
    cd.n = j.at("n").get<long>();
    if (j.contains("torsion") && !j.at("torsion").is_null()) {
        cd.generators.torsion = parse_named_point(j.at("torsion"), K);
    }
    for (const auto& g : j.value("generators", nlohmann::json::array())) {
        cd.generators.free_gens.push_back(parse_named_point(g, K));
    }
    cd.generators.claimed_rank = get_or<int>(j, "claimed_rank", static_cast<int>(cd.generators.free_gens.size()));
    cd.generators.provenance = get_or<std::string>(j, "provenance", "");
    if (j.contains("integral_points")) {
        cd.expected_points = j.at("integral_points").get<std::vector<std::string>>();
    }
    return cd;
}

inline CaseSpec parse_case(const nlohmann::json& j)
{
    CaseSpec c;
    c.m = j.at("m").get<long>();
    QuadField K(c.m);
    c.name = get_or<std::string>(j, "name", "K_" + std::to_string(c.m));
    if (j.contains("epsilon") && !j.at("epsilon").is_null()) {
        c.epsilon = j.at("epsilon").get<std::string>();
        parse_elem(*c.epsilon, K);
    }
    c.epsilon_provenance = get_or<std::string>(j, "epsilon_provenance", "");
    if (j.contains("ray_class_row")) {
        auto row = j.at("ray_class_row").get<std::vector<long>>();
        if (row.size() != 4) {
            throw ConfigError("ray_class_row must have four entries");
        }
        c.filter.ray_row = RayClassRow{c.m, {row[0], row[1], row[2], row[3]}};
    }
    c.ray_provenance = get_or<std::string>(j, "ray_class_provenance", "");
    c.filter.cubic_flag = get_or<bool>(j, "cubic_flag", false);
    c.cubic_is_hypothesis = get_or<bool>(j, "cubic_is_hypothesis", false);
    if (j.contains("external_constraint") && !j.at("external_constraint").is_null()) {
        const auto& e = j.at("external_constraint");
        ExternalConstraint ec;
        ec.sign = parse_sign(e.at("sign"));
        ec.modulus = e.at("modulus").get<long>();
        ec.residue = e.at("residue").get<long>();
        ec.provenance = get_or<std::string>(e, "provenance", "");
        if (ec.modulus < 1) {
            throw ConfigError("external_constraint.modulus must be >= 1");
        }
        c.filter.external = ec;
    }
    for (const auto& cj : j.value("curves", nlohmann::json::array())) {
        c.curves.push_back(parse_curve(cj, K));
    }
    for (const auto& ij : j.value("injected_curves", nlohmann::json::array())) {
        InjectedCurve ic;
        ic.name = ij.at("name").get<std::string>();
        auto a = ij.at("a").get<std::vector<std::string>>();
        if (a.size() != 5) {
            throw ConfigError("injected curve needs five a-invariants");
        }
        for (std::size_t i = 0; i < 5; ++i) {
            parse_elem(a[i], K);
            ic.a[i] = a[i];
        }
        c.injected.push_back(std::move(ic));
    }
    if (j.contains("bounds")) {
        c.M = get_or<long>(j.at("bounds"), "M", c.M);
        c.H = get_or<long>(j.at("bounds"), "H", c.H);
    }
    c.expected = parse_verdict(j.at("expected").get<std::string>());
    return c;
}

} // namespace detail

inline SuiteConfig parse_config(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        throw ConfigError(std::string("malformed JSON: ") + ex.what());
    }
    if (!j.is_object() || !j.contains("cases") || !j.at("cases").is_array() || j.at("cases").empty()) {
        throw ConfigError("config must be an object with a non-empty \"cases\" array");
    }
    SuiteConfig cfg;
    for (const auto& cj : j.at("cases")) {
        try {
            cfg.cases.push_back(detail::parse_case(cj));
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& ex) {
            throw ConfigError("case " + cj.value("name", cj.contains("m") ? cj.at("m").dump() : "?") + ": " + ex.what());
        }
    }
    return cfg;
}

inline SuiteConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

// Evaluates "T+P43A", "-2P43B", "O", "P71A-P71B" against named points.
inline Point eval_combination(const Curve& E, const std::string& expr, const std::map<std::string, Point>& names)
{
    std::string s;
    for (char ch : expr) {
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            s += ch;
        }
    }
    if (s == "O") {
        return Point::at_infinity();
    }
    Point acc = Point::at_infinity();
    std::size_t i = 0;
    if (s.empty()) {
        throw ConfigError("empty point combination");
    }
    while (i < s.size()) {
        long sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            throw ConfigError("bad combination '" + expr + "'");
        }
        long coeff = 0;
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            coeff = coeff * 10 + (s[i] - '0');
            ++i;
        }
        if (start == i) {
            coeff = 1;
        }
        start = i;
        while (i < s.size() && s[i] != '+' && s[i] != '-') {
            ++i;
        }
        auto name = s.substr(start, i - start);
        auto it = names.find(name);
        if (it == names.end()) {
            throw ConfigError("unknown point '" + name + "' in combination '" + expr + "'");
        }
        acc = E.add(acc, E.multiply(sign * coeff, it->second));
    }
    return acc;
}

} // namespace egr

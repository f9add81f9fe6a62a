// egr: proof runner for elliptic curves with everywhere good reduction over
// real quadratic fields.

#include "egr/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>

#ifndef EGR_DATA_DIR
#define EGR_DATA_DIR "data"
#endif

namespace {

using namespace egr;

int cmd_run(const std::string& config, const RunOptions& opt, const std::string& out)
{
    SuiteConfig cfg;
    try {
        cfg = load_config(config);
    } catch (const ConfigError& ex) {
        std::cerr << "egr: config error: " << ex.what() << "\n";
        return exit_config;
    }
    SuiteResult res;
    try {
        res = run_suite(cfg, opt);
    } catch (const ConfigError& ex) {
        std::cerr << "egr: " << ex.what() << "\n";
        return exit_config;
    }
    if (!out.empty()) {
        write_reports(res, out);
    }
    std::cout << summary_table(res.reports);
    for (const auto& r : res.reports) {
        if (r.body.contains("failure")) {
            std::cerr << "egr: " << r.name << " failed at " << r.body["failure"]["stage"].get<std::string>() << ": "
                      << r.body["failure"]["message"].get<std::string>() << "\n";
        }
    }
    return res.exit_code;
}

int cmd_verify(const std::string& config, long m)
{
    SuiteConfig cfg;
    try {
        cfg = load_config(config);
    } catch (const ConfigError& ex) {
        std::cerr << "egr: config error: " << ex.what() << "\n";
        return exit_config;
    }
    auto it = std::find_if(cfg.cases.begin(), cfg.cases.end(), [m](const CaseSpec& c) { return c.m == m; });
    if (it == cfg.cases.end()) {
        std::cerr << "egr: no case with m = " << m << "\n";
        return exit_config;
    }
    QuadField K(m);
    FieldElem eps = it->epsilon ? parse_elem(*it->epsilon, K) : fundamental_unit(K);
    bool all_ok = true;
    for (const auto& cd : it->curves) {
        MordellCurve mc = build_mordell(K, cd.sign, static_cast<int>(cd.n), eps);
        GeneratorReport gr = verify_generators(mc, cd.generators);
        std::cout << mc.label() << ": " << gr.status << " (torsion " << gr.torsion_structure << ", bound "
                  << gr.torsion_bound << ")\n";
        for (const auto& c : gr.checks) {
            std::cout << "  ok   " << c << "\n";
        }
        for (const auto& f : gr.failures) {
            std::cout << "  FAIL " << f << "\n";
        }
        all_ok = all_ok && gr.ok;
    }
    return all_ok ? exit_ok : exit_mismatch;
}

int cmd_search(long m, const std::string& sign, long n, long H, const std::string& epsilon)
{
    QuadField K(m);
    std::optional<FieldElem> eps;
    if (!epsilon.empty()) {
        eps = parse_elem(epsilon, K);
    }
    MordellCurve mc = build_mordell(K, sign == "-" ? -1 : 1, static_cast<int>(n), eps);
    IntegralPointSet S = brute_search_integral(mc, H);
    std::cout << mc.label() << ": y^2 = x^3 + " << to_string(mc.curve.a6()) << "\n";
    std::cout << S.size() << " integral points with |u|, |v| <= " << H << "\n";
    for (const auto& ip : S.points) {
        std::cout << "  " << to_string(ip.point) << "\n";
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Everywhere-good-reduction proof runner"};
    app.require_subcommand(1);
    const std::string default_config = std::string(EGR_DATA_DIR) + "/cases.json";

    std::string config = default_config;
    std::string out;
    RunOptions opt;
    long only_case = 0, bound_m = 0, oracle_h = -1;
    auto* run = app.add_subcommand("run", "run the non-existence proof for every configured case");
    run->add_option("--config", config, "case configuration (JSON)");
    auto* case_opt = run->add_option("--case", only_case, "run only the case with this m");
    auto* m_opt = run->add_option("--bound-M", bound_m, "coefficient bound for generator combinations")->check(CLI::PositiveNumber);
    auto* h_opt = run->add_option("--oracle-H", oracle_h, "brute-force oracle box (0 disables)")->check(CLI::Range(0L, max_search_box));
    run->add_option("--out", out, "directory for per-case reports");

    std::string vconfig = default_config;
    long vcase = 0;
    auto* verify = app.add_subcommand("verify-generators", "check the published generators of one case");
    verify->add_option("--config", vconfig, "case configuration (JSON)");
    verify->add_option("--case", vcase, "m of the case")->required();

    long sm = 0, sn = 0, sH = 0;
    std::string ssign = "+", seps;
    auto* search = app.add_subcommand("search", "brute-force integral points on y^2 = x^3 +- 1728 eps^n");
    search->add_option("--m", sm, "square-free m > 1")->required();
    search->add_option("--sign", ssign, "+ or -")->required()->check(CLI::IsMember({"+", "-"}));
    search->add_option("--n", sn, "exponent 0 <= n < 12")->required()->check(CLI::Range(0L, 11L));
    search->add_option("--H", sH, "coordinate box")->required()->check(CLI::Range(0L, max_search_box));
    search->add_option("--epsilon", seps, "unit to use instead of the fundamental unit > 1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : exit_config;
    }

    try {
        if (*run) {
            if (*case_opt) {
                opt.only_case = only_case;
            }
            if (*m_opt) {
                opt.M = bound_m;
            }
            if (*h_opt) {
                opt.H = oracle_h;
            }
            return cmd_run(config, opt, out);
        }
        if (*verify) {
            return cmd_verify(vconfig, vcase);
        }
        return cmd_search(sm, ssign, sn, sH, seps);
    } catch (const std::exception& ex) {
        std::cerr << "egr: " << ex.what() << "\n";
        return exit_config;
    }
}

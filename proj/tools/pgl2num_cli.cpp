// Command-line front end: verification suites, data ingestion, and ad-hoc
// kernel/transform evaluation with CSV/JSON/SVG reports.
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pgl2num/trilinear.hpp"
#include "pgl2num/verify.hpp"

using namespace pgl2num;
namespace fs = std::filesystem;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerdictFail = 2;
constexpr int kExitAccuracy = 3;
constexpr int kExitInput = 4;

struct CliConfig {
    std::string out_dir = "out";
    std::vector<std::string> formats{"csv"};
    unsigned long long seed = 12345;
    double tol = 1.0;
    int jobs = 2;
};

bool wants(const CliConfig& c, const std::string& f) {
    return std::find(c.formats.begin(), c.formats.end(), f) != c.formats.end();
}

nlohmann::json config_echo(const CliConfig& c, const std::string& cmd) {
    return {{"command", cmd},
            {"out", c.out_dir},
            {"formats", c.formats},
            {"seed", c.seed},
            {"tol", c.tol},
            {"jobs", c.jobs}};
}

void emit(const CliConfig& c, const std::string& stem,
          const std::vector<SuiteResult>& suites, const std::string& cmd) {
    fs::create_directories(c.out_dir);
    std::vector<CheckRow> rows;
    for (const auto& s : suites)
        rows.insert(rows.end(), s.rows.begin(), s.rows.end());
    if (wants(c, "csv"))
        write_file(c.out_dir + "/" + stem + ".csv", rows_to_csv(rows));
    if (wants(c, "json")) {
        nlohmann::json j;
        j["config"] = config_echo(c, cmd);
        j["suites"] = nlohmann::json::array();
        for (const auto& s : suites) {
            nlohmann::json js{{"name", s.name},
                              {"pass", s.pass},
                              {"runtime_seconds", s.runtime_seconds}};
            js["rows"] = nlohmann::json::array();
            for (const auto& r : s.rows)
                js["rows"].push_back({{"check_id", r.check_id},
                                      {"lhs", r.value_lhs},
                                      {"rhs", r.value_rhs},
                                      {"rel_discrepancy", r.rel_discrepancy},
                                      {"verdict", r.verdict}});
            j["suites"].push_back(js);
        }
        write_file(c.out_dir + "/" + stem + ".json", j.dump(1));
    }
    if (wants(c, "svg")) {
        for (const auto& s : suites)
            for (const auto& fit : s.fits) {
                std::vector<double> xs, ys;
                for (const auto& p : fit.points)
                    if (p.ok) {
                        xs.push_back(p.param);
                        ys.push_back(p.value);
                    }
                std::string name = fit.check_id;
                for (auto& ch : name)
                    if (ch == ' ' || ch == '=' || ch == '/') ch = '_';
                write_file(c.out_dir + "/" + stem + "_" + name + ".svg",
                           decay_plot_svg(fit.check_id, xs, ys,
                                          fit.target_exponent));
            }
    }
    for (const auto& s : suites)
        std::cout << (s.pass ? "PASS " : "FAIL ") << s.name << "  ("
                  << s.runtime_seconds << " s)\n";
}

int exit_code(const std::vector<SuiteResult>& suites) {
    for (const auto& s : suites)
        if (!s.pass) return kExitVerdictFail;
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical verification suites for principal-series models, "
                 "trilinear kernels, and Maass-form identities"};
    app.require_subcommand(1);

    CliConfig cfg;
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--out", cfg.out_dir, "output directory");
    app.add_option("--format", cfg.formats, "csv,json,svg")->delimiter(',');
    app.add_option("--seed", cfg.seed, "seed for randomized checks");
    app.add_option("--tol", cfg.tol, "tolerance scale");
    app.add_option("--jobs", cfg.jobs, "worker threads");

    // verify-lemma1
    auto* l1 = app.add_subcommand("verify-lemma1", "window transform bounds");
    std::vector<double> l1N{64, 128, 256};
    l1->add_option("--N", l1N, "window centers");

    // verify-lemma2
    auto* l2 = app.add_subcommand("verify-lemma2", "spherical transform bounds");
    std::vector<int> l2N{64, 128};
    std::vector<double> l2T;
    double l2tau = 2.0;
    l2->add_option("--N", l2N, "window centers");
    l2->add_option("--T", l2T, "window scales (default N^{2/3})");
    l2->add_option("--tau", l2tau, "imaginary part of tau");

    // verify-lemma3
    auto* l3 = app.add_subcommand("verify-lemma3", "bump transform regions");

    // verify-claim
    auto* cl = app.add_subcommand("verify-claim", "kernel asymptotics");
    std::vector<double> cl_tau{2.0};
    cl->add_option("--tau", cl_tau, "imaginary parts of tau");

    // rs-unfold
    auto* un = app.add_subcommand("rs-unfold", "unfolding identity on data");
    std::string un_path = "data/maass_psl2z_even1.json";
    std::vector<double> un_s{2.0, 2.5, 3.0};
    un->add_option("--data", un_path, "Maass data file");
    un->add_option("--s", un_s, "s values (real, > 1.3)");

    // ingest
    auto* in = app.add_subcommand("ingest", "validate a Maass data file");
    std::string in_path;
    in->add_option("path", in_path, "data file")->required();

    // kernel-eval
    auto* ke = app.add_subcommand("kernel-eval", "evaluate k_lambda pointwise");
    double ke_tau = 2.0, ke_lambda = 10.0, ke_c = 0.6;
    ke->add_option("--tau", ke_tau);
    ke->add_option("--lambda", ke_lambda);
    ke->add_option("--c", ke_c);

    // transform
    auto* tr = app.add_subcommand("transform", "evaluate a sharp transform");
    double tr_tau = 2.0, tr_lambda = 10.0, tr_center = 0.6, tr_width = 0.15;
    tr->add_option("--tau", tr_tau);
    tr->add_option("--lambda", tr_lambda);
    tr->add_option("--bump-center", tr_center);
    tr->add_option("--bump-width", tr_width);

    CLI11_PARSE(app, argc, argv);

    if (!config_path.empty()) {
        try {
            nlohmann::json j = nlohmann::json::parse(std::ifstream(config_path));
            if (j.contains("out")) cfg.out_dir = j["out"].get<std::string>();
            if (j.contains("seed")) cfg.seed = j["seed"].get<unsigned long long>();
            if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
            if (j.contains("jobs")) cfg.jobs = j["jobs"].get<int>();
        } catch (const std::exception& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return kExitInput;
        }
    }

    VerifyOptions opt;
    opt.jobs = cfg.jobs;
    opt.seed = cfg.seed;
    opt.tol_scale = cfg.tol;

    try {
        if (l1->parsed()) {
            auto psi = std::make_shared<Bump>(BumpSpec{1.0, 2.2, 1.0});
            std::vector<SuiteResult> suites;
            for (double N : l1N)
                suites.push_back(
                    verify_lemma1(N, std::pow(N, 2.0 / 3.0), psi, opt));
            emit(cfg, "lemma1", suites, "verify-lemma1");
            return exit_code(suites);
        }
        if (l2->parsed()) {
            std::vector<SuiteResult> suites;
            for (std::size_t i = 0; i < l2N.size(); ++i) {
                double T = i < l2T.size() ? l2T[i]
                                          : std::round(std::pow(l2N[i], 2.0 / 3.0));
                suites.push_back(
                    verify_lemma2(l2N[i], T, Complex(0.0, l2tau), opt));
            }
            emit(cfg, "lemma2", suites, "verify-lemma2");
            return exit_code(suites);
        }
        if (l3->parsed()) {
            auto psi = std::make_shared<Bump>(BumpSpec{1.0, 2.2, 1.0});
            std::vector<SuiteResult> suites{verify_lemma3(psi, opt)};
            emit(cfg, "lemma3", suites, "verify-lemma3");
            return exit_code(suites);
        }
        if (cl->parsed()) {
            std::vector<SuiteResult> suites;
            for (double t : cl_tau)
                suites.push_back(verify_claim(Complex(0.0, t), opt));
            emit(cfg, "claim", suites, "verify-claim");
            return exit_code(suites);
        }
        if (un->parsed()) {
            MaassFormData d = ingest_maass(un_path);
            std::vector<SuiteResult> suites{verify_unfold(d, un_s, opt)};
            emit(cfg, "unfold", suites, "rs-unfold");
            return exit_code(suites);
        }
        if (in->parsed()) {
            try {
                MaassFormData d = ingest_maass(in_path);
                std::cout << "PASS ingest R=" << d.R
                          << " N_max=" << d.n_max()
                          << " mean_square_C=" << d.mean_square_constant << "\n";
                return kExitPass;
            } catch (const LoadError& e) {
                std::cout << "FAIL ingest: " << e.what() << "\n";
                return kExitInput;
            }
        }
        if (ke->parsed()) {
            Complex v = k_lambda(Complex(0.0, ke_tau), Complex(0.0, ke_lambda),
                                 ke_c);
            CheckRow r;
            r.check_id = "kernel-eval";
            r.params = {{"tau", format_double(ke_tau)},
                        {"lambda", format_double(ke_lambda)},
                        {"c", format_double(ke_c)}};
            r.value_lhs = v.real();
            r.value_rhs = v.imag();
            r.verdict = true;
            fs::create_directories(cfg.out_dir);
            write_file(cfg.out_dir + "/kernel_eval.csv", rows_to_csv({r}));
            std::cout << "k_lambda = " << v.real() << (v.imag() < 0 ? " - " : " + ")
                      << std::abs(v.imag()) << "i\n";
            return kExitPass;
        }
        if (tr->parsed()) {
            CircleFunction u;
            double c0 = tr_center, wdt = tr_width;
            u.eval = [c0, wdt](double c) {
                return Complex(smooth_bump(c - c0, wdt), 0.0);
            };
            u.support_radius = std::abs(c0) + wdt;
            u.degenerate_support_ack = true;
            Complex v = sharp_transform(u, Complex(0.0, tr_tau),
                                        Complex(0.0, tr_lambda));
            CheckRow r;
            r.check_id = "transform-sharp";
            r.params = {{"tau", format_double(tr_tau)},
                        {"lambda", format_double(tr_lambda)},
                        {"bump_center", format_double(tr_center)},
                        {"bump_width", format_double(tr_width)}};
            r.value_lhs = v.real();
            r.value_rhs = v.imag();
            r.verdict = true;
            fs::create_directories(cfg.out_dir);
            write_file(cfg.out_dir + "/transform.csv", rows_to_csv({r}));
            std::cout << "u_sharp = " << v.real() << (v.imag() < 0 ? " - " : " + ")
                      << std::abs(v.imag()) << "i\n";
            return kExitPass;
        }
    } catch (const AccuracyError& e) {
        std::cerr << "accuracy failure: " << e.what() << "\n";
        return kExitAccuracy;
    } catch (const LoadError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const DomainError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}

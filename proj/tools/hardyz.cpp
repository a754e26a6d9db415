#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <hardyz/hardyz.hpp>

namespace {

using namespace hardyz;

void print_kv(const char* key, const std::string& value) {
    std::printf("%-14s %s\n", key, value.c_str());
}

void cmd_theta(double t, int order, long ovr) {
    const PrecisionContext ctx = context_for(t, std::max(order, 1), ovr);
    const ThetaJet jet = theta_jet(BigReal::of(t, ctx.working_bits), order, ctx);
    if (order == 0) {
        print_kv("theta", to_string(jet[0]));
        return;
    }
    for (int nu = 0; nu <= order; ++nu) {
        char key[24];
        std::snprintf(key, sizeof key, "theta^(%d)", nu);
        print_kv(key, to_string(jet[nu]));
    }
}

void cmd_z(double t, long ovr) {
    const PrecisionContext ctx = context_for(t, 1, ovr);
    const ZValue v = z_deriv_reference(BigReal::of(t, ctx.working_bits), 0, ctx);
    print_kv("Z", to_string(v.value));
    print_kv("imag_leak", to_string(v.imag_leak));
    print_kv("working_bits", std::to_string(v.working_bits));
}

void cmd_zk(double t, int k, long ovr) {
    const PrecisionContext ctx = context_for(t, std::max(k, 1), ovr);
    const ZValue v = z_deriv_reference(BigReal::of(t, ctx.working_bits), k, ctx);
    char key[24];
    std::snprintf(key, sizeof key, "Z^(%d)", k);
    print_kv(key, to_string(v.value));
    print_kv("imag_leak", to_string(v.imag_leak));
    print_kv("working_bits", std::to_string(v.working_bits));
}

void cmd_residual(double t, int k, std::optional<double> c, long ovr) {
    const PrecisionContext ctx = context_for(t, std::max(k, 1), ovr);
    ZWorkspace ws(BigReal::of(t, ctx.working_bits), std::max(k, 1), ctx);
    const BigReal cb = c ? BigReal::of(*c, ctx.working_bits)
                         : exp(BigReal::of(0.5, ctx.working_bits));
    const ResidualRecord rec = residual_record(ws, k, cb);
    print_kv("t", detail::fmt_t(rec.t));
    print_kv("k", std::to_string(rec.k));
    print_kv("main_sum", to_string(rec.main_sum));
    print_kv("reference", to_string(rec.reference));
    print_kv("residual", to_string(rec.residual));
    print_kv("theta_prime", to_string(rec.theta_prime));
    print_kv("normalized", to_string(rec.normalized));
    print_kv("envelope", to_string(rec.envelope) +
                             (rec.envelope_extrapolated ? "  (extrapolated)" : ""));
    print_kv("envelope_ratio", to_string(rec.envelope_ratio));
    print_kv("imag_leak", to_string(rec.imag_leak));
    print_kv("working_bits", std::to_string(rec.working_bits));
}

int cmd_sweep(const SweepConfig& cfg, const std::string& plot_stem) {
    const std::vector<ResidualRecord> recs = run_sweep(cfg);
    long errors = 0;
    for (const ResidualRecord& r : recs)
        if (!r.error.empty()) ++errors;
    if (!plot_stem.empty()) export_plot_data(recs, plot_stem);
    std::printf("wrote %zu records to %s (%ld with error markers)\n", recs.size(),
                cfg.output_path.c_str(), errors);
    return 0;
}

int cmd_verify(const std::string& which, long ovr) {
    std::vector<SuiteName> names;
    if (which == "all")
        names = all_suites();
    else
        names.push_back(parse_suite_name(which));
    bool ok = true;
    for (SuiteName name : names) {
        const SuiteReport rep = verify_suite(name, ovr);
        std::fputs(format_report(rep).c_str(), stdout);
        ok = ok && rep.ok();
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hardy Z-function, derivatives, and AFE residual experiments"};
    app.require_subcommand(1);
    app.fallthrough();

    long precision_exponent = 0;
    app.add_option("--precision-exponent", precision_exponent,
                   "absolute error target 2^-n for summation stages");

    double t = 0.0;
    int k = 0;
    int order = 0;
    std::optional<double> c;

    CLI::App* s_theta = app.add_subcommand("theta", "Riemann-Siegel theta, optionally a derivative jet");
    s_theta->add_option("--t", t)->required();
    s_theta->add_option("--order", order)->check(CLI::NonNegativeNumber);

    CLI::App* s_z = app.add_subcommand("z", "Hardy Z(t)");
    s_z->add_option("--t", t)->required();

    CLI::App* s_zk = app.add_subcommand("zk", "k-th derivative of Z");
    s_zk->add_option("--t", t)->required();
    s_zk->add_option("--k", k)->required()->check(CLI::NonNegativeNumber);

    CLI::App* s_res = app.add_subcommand("residual", "main sum vs reference, with envelopes");
    s_res->add_option("--t", t)->required();
    s_res->add_option("--k", k)->required()->check(CLI::NonNegativeNumber);
    s_res->add_option("--c", c, "envelope constant (> 1, default e^1/2)");

    SweepConfig cfg;
    std::string format = "csv";
    std::string plot_stem;
    CLI::App* s_sweep = app.add_subcommand("sweep", "residual records over a (t, k) grid");
    s_sweep->add_option("--t", cfg.t_values)->required()->delimiter(',');
    s_sweep->add_option("--k-min", cfg.k_min)->required();
    s_sweep->add_option("--k-max", cfg.k_max)->required();
    s_sweep->add_option("--c", c, "envelope constant (> 1, default e^1/2)");
    s_sweep->add_option("--out", cfg.output_path)->required();
    s_sweep->add_option("--format", format)->check(CLI::IsMember({"csv", "jsonl"}));
    s_sweep->add_option("--jobs", cfg.jobs)->check(CLI::PositiveNumber);
    s_sweep->add_option("--plot", plot_stem, "also write <stem>.*.dat plot files");

    std::string suite;
    CLI::App* s_verify = app.add_subcommand("verify", "run a verification suite");
    s_verify->add_option("suite", suite, "suite name or 'all'")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (s_theta->parsed()) {
            cmd_theta(t, order, precision_exponent);
        } else if (s_z->parsed()) {
            cmd_z(t, precision_exponent);
        } else if (s_zk->parsed()) {
            cmd_zk(t, k, precision_exponent);
        } else if (s_res->parsed()) {
            cmd_residual(t, k, c, precision_exponent);
        } else if (s_sweep->parsed()) {
            cfg.c = c;
            cfg.format = parse_format(format);
            cfg.target_abs_error_exponent = precision_exponent;
            return cmd_sweep(cfg, plot_stem);
        } else if (s_verify->parsed()) {
            return cmd_verify(suite, precision_exponent);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "hardyz: %s\n", e.what());
        return 1;
    }
    return 0;
}

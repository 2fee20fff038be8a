// Command-line driver: theory tables, simulated fringe datasets, analysis
// reports and the six-panel reproduction figure.
//
// Exit codes: 0 success, 1 configuration or usage error, 2 I/O error,
// 3 analysis failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "gphase/gphase.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string method;
    std::string purities;
    std::string repeats;
    std::string seed;
    std::string theta1;
    std::string theta2;
    std::string dominant;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "key = value configuration file");
    cmd->add_option("--method", o.method, "decoherer | entangled | coherent-laser");
    cmd->add_option("--purities", o.purities, "comma list of target purities r");
    cmd->add_option("--repeats", o.repeats, "repeats per (r, theta1) setting");
    cmd->add_option("--seed", o.seed, "master seed (64-bit)");
    cmd->add_option("--theta1", o.theta1, "theta1 grid in degrees: list or start:step:stop");
    cmd->add_option("--theta2", o.theta2, "fixed theta2 in degrees");
    cmd->add_option("--dominant", o.dominant, "dominant eigenvector, R or L");
}

gphase::ExperimentConfig build_config(const CommonOpts& o,
                                      gphase::ExperimentConfig cfg = gphase::ExperimentConfig{}) {
    if (!o.config_path.empty()) cfg = gphase::load_config_file(o.config_path, std::move(cfg));
    if (!o.method.empty()) gphase::apply_config_entry(cfg, "method", o.method);
    if (!o.purities.empty()) gphase::apply_config_entry(cfg, "purities", o.purities);
    if (!o.repeats.empty()) gphase::apply_config_entry(cfg, "repeats", o.repeats);
    if (!o.seed.empty()) gphase::apply_config_entry(cfg, "master_seed", o.seed);
    if (!o.theta1.empty()) gphase::apply_config_entry(cfg, "theta1_deg", o.theta1);
    if (!o.theta2.empty()) gphase::apply_config_entry(cfg, "theta2_deg", o.theta2);
    if (!o.dominant.empty()) gphase::apply_config_entry(cfg, "dominant", o.dominant);
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mixed-state geometric phase: theory, simulation and analysis"};
    app.require_subcommand(1);

    CommonOpts theory_opts, sim_opts, ana_opts, rep_opts, fig_opts;
    std::string theory_out, sim_out, ana_out, fig_out = "fig3";
    std::string ana_data, rep_data;

    CLI::App* theory = app.add_subcommand("theory", "write the analytic phase/visibility table");
    add_common(theory, theory_opts);
    theory->add_option("--out", theory_out, "output CSV path (default: stdout)");

    CLI::App* simulate = app.add_subcommand("simulate", "generate a fringe-scan dataset");
    add_common(simulate, sim_opts);
    simulate->add_option("--out", sim_out, "dataset directory")->required();

    CLI::App* analyze = app.add_subcommand("analyze", "fit a dataset and write the sweep report");
    analyze->add_option("data", ana_data, "dataset directory")->required();
    add_common(analyze, ana_opts);
    analyze->add_option("--out", ana_out, "analysis directory (default: <data>/analysis)");

    CLI::App* report = app.add_subcommand("report", "fit a dataset and print the summary");
    report->add_option("data", rep_data, "dataset directory")->required();
    add_common(report, rep_opts);

    CLI::App* fig = app.add_subcommand("reproduce-fig3",
                                       "simulate all three methods and render six panels");
    add_common(fig, fig_opts);
    fig->add_option("--out", fig_out, "output directory");

    theory->callback([&] {
        std::string csv = gphase::theory_csv(build_config(theory_opts));
        if (theory_out.empty())
            std::cout << csv;
        else
            gphase::write_text_file(theory_out, csv);
    });
    simulate->callback([&] {
        gphase::ExperimentConfig cfg = build_config(sim_opts);
        gphase::write_dataset(sim_out, cfg, gphase::run_sweep(cfg));
        std::cout << "dataset written to " << sim_out << "\n";
    });
    analyze->callback([&] {
        gphase::Dataset ds = gphase::read_dataset(ana_data);
        gphase::ExperimentConfig cfg = build_config(ana_opts, std::move(ds.cfg));
        gphase::SweepReport rep = gphase::analyze_sweep(cfg, ds.data);
        std::string out = ana_out.empty()
                              ? (std::filesystem::path(ana_data) / "analysis").string()
                              : ana_out;
        gphase::write_analysis(out, cfg, rep);
        std::cout << "analysis written to " << out << "\n";
    });
    report->callback([&] {
        gphase::Dataset ds = gphase::read_dataset(rep_data);
        gphase::ExperimentConfig cfg = build_config(rep_opts, std::move(ds.cfg));
        std::cout << gphase::report_to_text(gphase::analyze_sweep(cfg, ds.data));
    });
    fig->callback([&] {
        gphase::reproduce_figure(build_config(fig_opts), fig_out);
        std::cout << "figure written to " << fig_out << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const gphase::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const gphase::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const gphase::analysis_error& e) {
        std::cerr << "analysis error: " << e.what() << "\n";
        return 3;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

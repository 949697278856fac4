#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "escreg/scenario_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDiverged = 2;
constexpr int kExitConfig = 3;

int run_command(const std::string& scenario_path, const std::string& out_path,
                bool full_rate) {
    escreg::Scenario sc = escreg::load_scenario(scenario_path);
    sc.full_rate = sc.full_rate || full_rate;
    const escreg::Trajectory traj = escreg::integrate(sc);
    escreg::write_trajectory_csv(traj, out_path);
    std::cout << "wrote " << traj.times.size() << " rows to " << out_path << "\n";
    return kExitOk;
}

int sweep_command(const std::string& scenario_path, const std::string& omegas_csv,
                  const std::string& out_path) {
    const escreg::Scenario sc = escreg::load_scenario(scenario_path);
    const auto omegas = escreg::parse_omega_list(omegas_csv);
    const auto records = escreg::run_sweep(sc, omegas);
    escreg::write_sweep_csv(records, out_path);
    for (const auto& r : records) {
        std::cout << "omega=" << r.omega << " ultimate_bound_e=" << r.ultimate_bound_e
                  << " sup_dev=" << r.sup_dev_vs_averaged
                  << " vartheta_err=" << r.vartheta_err_final << "\n";
    }
    std::cout << "wrote " << out_path << "\n";
    return kExitOk;
}

int verify_averaging_command(const std::string& scenario_path, const std::string& omegas_csv,
                             const std::string& out_path) {
    const escreg::Scenario sc = escreg::load_scenario(scenario_path);
    const auto omegas = escreg::parse_omega_list(omegas_csv);
    const auto dithered = [&sc](double omega) {
        return escreg::make_dithered_field(escreg::with_omega(sc, omega));
    };
    const auto averaged = escreg::make_averaged_closed_loop(sc);
    const auto records = escreg::convergence_test(dithered, averaged, sc.x0, sc.T, omegas);
    escreg::write_deviation_csv(records, out_path);
    for (const auto& r : records) {
        std::cout << "omega=" << r.omega << " sup_deviation=" << r.sup_deviation
                  << " final_deviation=" << r.final_deviation << "\n";
    }
    std::cout << "wrote " << out_path << "\n";
    return kExitOk;
}

int oracle_dump_command(const std::string& scenario_path, const std::string& out_path) {
    const escreg::Scenario sc = escreg::load_scenario(scenario_path);
    const escreg::SteadyState ss = escreg::oracle_for(sc);
    escreg::write_harmonics_csv(ss, out_path);
    std::cout << "persistent_excitation=" << (escreg::assumption3_check(ss) ? "yes" : "no")
              << "\nwrote " << out_path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Extremum-seeking output regulator simulations"};
    app.require_subcommand(1);

    std::string scenario_path, out_path, omegas_csv;
    bool full_rate = false;

    auto* run = app.add_subcommand("run", "Integrate a closed-loop scenario to CSV");
    run->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    run->add_option("--out", out_path, "Output CSV path")->required();
    run->add_flag("--full-rate", full_rate, "Record every step");

    auto* sweep = app.add_subcommand("sweep", "Run an omega sweep");
    sweep->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    sweep->add_option("--omegas", omegas_csv, "Comma-separated omega list")->required();
    sweep->add_option("--out", out_path, "Output CSV path")->required();

    auto* verify = app.add_subcommand("verify-averaging",
                                      "Dithered vs averaged trajectory deviations");
    verify->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    verify->add_option("--omegas", omegas_csv, "Comma-separated omega list")->required();
    verify->add_option("--out", out_path, "Output CSV path")->required();

    auto* oracle = app.add_subcommand("oracle", "Steady-state oracle utilities");
    oracle->require_subcommand(1);
    auto* dump = oracle->add_subcommand("dump", "Write the harmonic table as CSV");
    dump->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    dump->add_option("--out", out_path, "Output CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return run_command(scenario_path, out_path, full_rate);
        if (sweep->parsed()) return sweep_command(scenario_path, omegas_csv, out_path);
        if (verify->parsed()) return verify_averaging_command(scenario_path, omegas_csv, out_path);
        if (oracle->parsed() && dump->parsed()) return oracle_dump_command(scenario_path, out_path);
    } catch (const escreg::IntegrationDiverged& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitDiverged;
    } catch (const escreg::ConfigError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return kExitOk;
}

#include "escreg/scenario_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace escreg {

namespace {

using nlohmann::json;

Vector to_vector(const json& j, const char* key) {
    if (!j.is_array()) throw ConfigError(std::string(key) + " must be an array");
    Vector v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw ConfigError(std::string(key) + " entries must be numbers");
        v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    }
    return v;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& err) {
        throw ConfigError(std::string("scenario JSON: ") + err.what());
    }
    try {
        const std::string plant_name = j.at("plant").get<std::string>();
        if (plant_name != "example_liu2009") {
            throw ConfigError("unknown plant '" + plant_name + "'");
        }
        const Vector w = to_vector(j.at("w"), "w");
        const double b = j.at("b").get<double>();
        const double sigma = j.at("sigma").get<double>();
        const Vector v0 = j.contains("v0") ? to_vector(j["v0"], "v0")
                                           : (Vector(2) << 1.0, 0.0).finished();

        Scenario sc;
        sc.plant = example_plant(w, b);
        sc.exo = make_exosystem(sigma, v0);
        if (!check_exosystem(sc.exo)) throw ConfigError("exosystem violates Assumption 1");
        if (!check_minimum_phase(sc.plant)) throw ConfigError("F(w) is not Hurwitz");
        if (!check_control_gain(sc.plant)) throw ConfigError("b^2(v, w) not positive");

        const Vector m = to_vector(j.at("m"), "m");
        const double Theta = j.at("Theta").get<double>();
        Vector a;
        if (j.contains("a")) {
            a = to_vector(j["a"], "a");
        } else {
            Vector freqs;
            if (j.contains("frequencies")) {
                freqs = to_vector(j["frequencies"], "frequencies");
            } else {
                freqs = (Vector(2) << sigma, 3.0 * sigma).finished();
            }
            a = min_poly_coeffs(freqs);
        }
        if (a.size() != m.size()) throw ConfigError("a and m must have equal length");
        if (j.contains("n") && j["n"].get<Eigen::Index>() != m.size()) {
            throw ConfigError("n inconsistent with m");
        }

        // sat_radius from the steady-state orbit when not pinned in the file.
        double sat_radius = j.value("sat_radius", 0.0);
        if (sat_radius <= 0.0) {
            InternalModel probe = make_internal_model(a, m, Theta, 1.0);
            const SteadyState ss = example_steady_input(sigma, w, b, v0, probe);
            sat_radius = steady_sat_radius(ss, sigma);
        }
        sc.model = make_internal_model(a, m, Theta, sat_radius);

        const std::string controller = j.value("controller", std::string("A"));
        if (controller == "A") {
            sc.variant = ControllerVariant::A;
        } else if (controller == "B") {
            sc.variant = ControllerVariant::B;
        } else {
            throw ConfigError("controller must be \"A\" or \"B\"");
        }
        Vector rho_coeffs = (Vector(3) << 20.0, 0.0, 1.0).finished();
        if (j.contains("rho")) {
            const auto& jr = j["rho"];
            rho_coeffs = to_vector(jr.at("coeffs"), "rho.coeffs");
            const std::string arg = jr.value("arg", std::string("s"));
            if (arg != "e" && arg != "s") throw ConfigError("rho.arg must be \"e\" or \"s\"");
        }
        sc.cfg = make_dither_config(j.value("alpha", 1.0), j.value("omega", 200.0),
                                    j.value("k", 2.0), make_rho(rho_coeffs));

        const StateLayout lay{sc.plant.nz, 2, sc.model.n};
        sc.x0 = Vector::Zero(lay.dim());
        sc.x0.segment(lay.v(), lay.nv) = v0;
        if (j.contains("x0")) {
            const auto& jx = j["x0"];
            if (jx.contains("z")) sc.x0.segment(lay.z(), lay.nz) = to_vector(jx["z"], "x0.z");
            if (jx.contains("y")) sc.x0(lay.y()) = jx["y"].get<double>();
            if (jx.contains("eta")) sc.x0.segment(lay.eta(), lay.n) = to_vector(jx["eta"], "x0.eta");
            if (jx.contains("pi")) sc.x0(lay.pi()) = jx["pi"].get<double>();
            if (jx.contains("vartheta")) {
                sc.x0.segment(lay.vartheta(), lay.n) = to_vector(jx["vartheta"], "x0.vartheta");
            }
        }

        sc.T = j.value("T", 10.0 * 2.0 * M_PI / sigma);
        sc.dt = j.value("dt", 0.0);
        sc.full_rate = j.value("full_rate", false);
        if (sc.dt > 0.0 && sc.dt > 2.0 * M_PI / (40.0 * sc.cfg.omega)) {
            throw ConfigError("dt exceeds 2 pi / (40 omega)");
        }
        return sc;
    } catch (const json::exception& err) {
        throw ConfigError(std::string("scenario JSON: ") + err.what());
    }
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

SteadyState oracle_for(const Scenario& sc) {
    const Vector v0 = sc.x0.segment(sc.layout().v(), sc.layout().nv);
    return example_steady_input(sc.exo.sigma, sc.plant.w, sc.plant.b(v0, sc.plant.w), v0,
                                sc.model);
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file " + path);
    const StateLayout& lay = traj.layout;
    out << "t,e,y";
    for (Eigen::Index i = 0; i < lay.nv; ++i) out << ",v" << i + 1;
    for (Eigen::Index i = 0; i < lay.nz; ++i) out << ",z" << i + 1;
    for (Eigen::Index i = 0; i < lay.n; ++i) out << ",eta" << i + 1;
    out << ",pi";
    for (Eigen::Index i = 0; i < lay.n; ++i) out << ",vt" << i + 1;
    out << ",u\n";
    for (std::size_t r = 0; r < traj.times.size(); ++r) {
        const auto row = static_cast<Eigen::Index>(r);
        out << format_double(traj.times[r]) << ',' << format_double(traj.e(row)) << ','
            << format_double(traj.states(row, lay.y()));
        for (Eigen::Index i = 0; i < lay.nv; ++i) {
            out << ',' << format_double(traj.states(row, lay.v() + i));
        }
        for (Eigen::Index i = 0; i < lay.nz; ++i) {
            out << ',' << format_double(traj.states(row, lay.z() + i));
        }
        for (Eigen::Index i = 0; i < lay.n; ++i) {
            out << ',' << format_double(traj.states(row, lay.eta() + i));
        }
        out << ',' << format_double(traj.states(row, lay.pi()));
        for (Eigen::Index i = 0; i < lay.n; ++i) {
            out << ',' << format_double(traj.states(row, lay.vartheta() + i));
        }
        out << ',' << format_double(traj.u(row)) << '\n';
    }
}

std::vector<SweepRecord> run_sweep(const Scenario& sc, const std::vector<double>& omegas,
                                   double tail_fraction) {
    std::vector<SweepRecord> records;
    records.reserve(omegas.size());
    for (double omega : omegas) {
        const Scenario run = with_omega(sc, omega);
        const Trajectory dithered = integrate(run);
        // The averaged loop is omega-free but is integrated on the same grid
        // with the same recording stride, so deviations compare matching steps.
        const VectorField avg_field = make_averaged_closed_loop(run);
        const double dt = run.step();
        const auto nsteps = static_cast<long>(std::ceil(run.T / dt));
        const long stride =
            run.full_rate ? 1 : std::max<long>(1, (nsteps + 200000 - 2) / (200000 - 1));
        Vector xa = run.x0;
        Vector k1(xa.size()), k2(xa.size()), k3(xa.size()), k4(xa.size()), xs(xa.size());
        double sup_dev = 0.0;
        double t = 0.0;
        Eigen::Index rec_row = 0;
        auto compare = [&](const Vector& xr) {
            if (rec_row < dithered.states.rows()) {
                const Vector xd = dithered.states.row(rec_row).transpose();
                sup_dev = std::max(sup_dev, (xd - xr).norm());
                ++rec_row;
            }
        };
        compare(xa);
        for (long i = 0; i < nsteps; ++i) {
            avg_field.eval_into(xa, t, k1);
            xs = xa + 0.5 * dt * k1;
            avg_field.eval_into(xs, t + 0.5 * dt, k2);
            xs = xa + 0.5 * dt * k2;
            avg_field.eval_into(xs, t + 0.5 * dt, k3);
            xs = xa + dt * k3;
            avg_field.eval_into(xs, t + dt, k4);
            xa += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t += dt;
            if (xa.norm() > 1e6) {
                throw IntegrationDiverged("run_sweep: averaged system diverged");
            }
            if ((i + 1) % stride == 0 || i + 1 == nsteps) {
                compare(xa);
            }
        }
        SweepRecord rec;
        rec.omega = omega;
        rec.ultimate_bound_e = ultimate_bound(dithered, "e", tail_fraction);
        rec.sup_dev_vs_averaged = sup_dev;
        const StateLayout lay = run.layout();
        const Vector vt_final =
            dithered.states.row(dithered.states.rows() - 1)
                .segment(lay.vartheta(), lay.n)
                .transpose();
        rec.vartheta_err_final = (vt_final - run.model.varrho).norm();
        records.push_back(rec);
    }
    return records;
}

void write_sweep_csv(const std::vector<SweepRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file " + path);
    out << "omega,ultimate_bound_e,sup_dev_vs_averaged,vartheta_err_final\n";
    for (const auto& r : records) {
        out << format_double(r.omega) << ',' << format_double(r.ultimate_bound_e) << ','
            << format_double(r.sup_dev_vs_averaged) << ','
            << format_double(r.vartheta_err_final) << '\n';
    }
}

void write_deviation_csv(const std::vector<DeviationRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file " + path);
    out << "omega,sup_deviation,final_deviation\n";
    for (const auto& r : records) {
        out << format_double(r.omega) << ',' << format_double(r.sup_deviation) << ','
            << format_double(r.final_deviation) << '\n';
    }
}

void write_harmonics_csv(const SteadyState& ss, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file " + path);
    out << "signal,component,frequency,cos_coeff,sin_coeff\n";
    auto dump = [&out](const char* name, const HarmonicSignal& sig) {
        for (const auto& term : sig.terms) {
            for (Eigen::Index i = 0; i < sig.dim; ++i) {
                out << name << ',' << i + 1 << ',' << format_double(term.omega) << ','
                    << format_double(term.cos_coeff(i)) << ','
                    << format_double(term.sin_coeff(i)) << '\n';
            }
        }
    };
    dump("u", ss.u_ss);
    dump("z", ss.z_ss);
    dump("xi", ss.xi_ss);
    dump("theta", ss.theta_ss);
    dump("varpi", ss.varpi_ss);
}

std::vector<double> parse_omega_list(const std::string& csv) {
    std::vector<double> omegas;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            omegas.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("invalid omega value '" + item + "'");
        }
    }
    if (omegas.empty()) throw ConfigError("empty omega list");
    return omegas;
}

}  // namespace escreg

#include "superatom/cli.hpp"

#include "superatom/oracle.hpp"
#include "superatom/specfun.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace superatom::cli {

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

std::string format9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

/// Key-value store built from the config text, tracking line numbers and
/// which keys were consumed, so leftovers can be reported precisely.
class KeyStore {
public:
    KeyStore(const std::string& text, std::string name) : name_(std::move(name)) {
        std::istringstream in(text);
        std::string line, section;
        int ln = 0;
        while (std::getline(in, line)) {
            ++ln;
            const size_t hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') fail(ln, "malformed section header '" + line + "'");
                section = trim(line.substr(1, line.size() - 2));
                continue;
            }
            const size_t eq = line.find('=');
            if (eq == std::string::npos) fail(ln, "expected 'key = value', got '" + line + "'");
            const std::string key = section + "." + trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (entries_.count(key)) fail(ln, "duplicate key '" + key + "'");
            entries_[key] = {value, ln};
        }
    }

    [[noreturn]] void fail(int line, const std::string& msg) const {
        throw ConfigError(name_ + ":" + std::to_string(line) + ": " + msg);
    }

    bool has(const std::string& key) const { return entries_.count(key) > 0; }

    std::string get_string(const std::string& key, const std::string& def) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return def;
        it->second.used = true;
        return it->second.value;
    }

    double get_double(const std::string& key, double def) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return def;
        it->second.used = true;
        return parse_double(it->second.value, it->second.line, key);
    }

    /// Frequency key in MHz, stored as rad/us.
    double get_mhz(const std::string& key, double def_rad_us) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return def_rad_us;
        it->second.used = true;
        return kTwoPi * parse_double(it->second.value, it->second.line, key);
    }

    int get_int(const std::string& key, int def) {
        const double v = get_double(key, (double)def);
        if (v != std::floor(v)) fail(line_of(key), "key '" + key + "' must be an integer");
        return (int)v;
    }

    bool get_bool(const std::string& key, bool def) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return def;
        it->second.used = true;
        const std::string& v = it->second.value;
        if (v == "true" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "0" || v == "no") return false;
        fail(it->second.line, "key '" + key + "' must be a boolean, got '" + v + "'");
    }

    std::vector<double> get_list(const std::string& key, double unit) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return {};
        it->second.used = true;
        std::vector<double> out;
        std::istringstream in(it->second.value);
        std::string tok;
        while (std::getline(in, tok, ','))
            out.push_back(unit * parse_double(trim(tok), it->second.line, key));
        return out;
    }

    int line_of(const std::string& key) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? 0 : it->second.line;
    }

    void reject_unknown() const {
        for (const auto& [key, e] : entries_)
            if (!e.used) fail(e.line, "unknown key '" + key + "'");
    }

private:
    struct Entry {
        std::string value;
        int line = 0;
        mutable bool used = false;
    };

    double parse_double(const std::string& v, int line, const std::string& key) const {
        if (v == "inf") return std::numeric_limits<double>::infinity();
        char* end = nullptr;
        const double x = std::strtod(v.c_str(), &end);
        if (end != v.c_str() + v.size() || v.empty())
            fail(line, "key '" + key + "' has a non-numeric value '" + v + "'");
        return x;
    }

    std::string name_;
    std::map<std::string, Entry> entries_;
};

/// CSV file with a provenance preamble; all floats at 9 significant
/// digits so reruns are byte-identical.
class CsvWriter {
public:
    CsvWriter(const ScenarioConfig& cfg, const std::string& file, const std::string& header) {
        std::filesystem::create_directories(cfg.out_dir);
        const std::string path = cfg.out_dir + "/" + file;
        out_.open(path, std::ios::binary);
        if (!out_) throw ConfigError("cannot open output file '" + path + "'");
        out_ << "# superatom-cli " << kToolVersion << "\n";
        out_ << "# config " << cfg.config_hash << "\n";
        out_ << header << "\n";
    }
    void row(std::initializer_list<double> vals) {
        bool first = true;
        for (double v : vals) {
            if (!first) out_ << ',';
            out_ << format9(v);
            first = false;
        }
        out_ << '\n';
    }
    std::ofstream& stream() { return out_; }

private:
    std::ofstream out_;
};

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> g(n);
    for (int k = 0; k < n; ++k) g[k] = a + (b - a) * k / (n - 1.0);
    return g;
}

dynamics::PulseShape build_pulses(const ScenarioConfig& cfg) {
    dynamics::PulseShape p;
    p.omega = cfg.omega_t.empty() ? dynamics::Pulse::constant(cfg.omega)
                                  : dynamics::Pulse::table(cfg.omega_t, cfg.omega_v);
    p.omega_m = cfg.omega_m_t.empty() ? dynamics::Pulse::constant(cfg.omega_m)
                                      : dynamics::Pulse::table(cfg.omega_m_t, cfg.omega_m_v);
    return p;
}

dynamics::Liouvillian build_generator(const ScenarioConfig& cfg, bool with_mapping) {
    const basis::BasisIndex b(cfg.n_max, cfg.symmetry);
    dynamics::StageOptions opt;
    opt.stage = with_mapping ? dynamics::Stage::DriveMapping : dynamics::Stage::Drive;
    opt.mapping_leaks = cfg.mapping_leaks;
    return dynamics::Liouvillian(b, cfg.geometry(), cfg.ze_mode, build_pulses(cfg), cfg.rates,
                                 opt);
}

void write_trajectory(const ScenarioConfig& cfg, const std::string& file,
                      const dynamics::Trajectory& traj) {
    CsvWriter csv(cfg, file, "t_us,P_G,P_R,P_Psi000,P_exc_total,P_C,P_c,n_cav");
    for (size_t k = 0; k < traj.t.size(); ++k) {
        const auto& r = traj.obs[k];
        csv.row({traj.t[k], r.p_g, r.p_r, r.p_psi000, r.p_exc_total, r.p_cont_double,
                 r.p_cont_single, r.n_cav});
    }
}

void run_basis(const ScenarioConfig& cfg, std::ostream& log) {
    const basis::BasisIndex b(cfg.n_max, cfg.symmetry);
    log << b.size() - 1 << " states ("
        << (cfg.symmetry == basis::Symmetry::Spherical ? "spherical" : "elliptic")
        << ", n_max=" << cfg.n_max << "): " << b.single_count() << " singles, "
        << b.double_count() << " doubles, 2 sinks; " << b.size()
        << " including the ground state\n";
    std::filesystem::create_directories(cfg.out_dir);
    std::ofstream out(cfg.out_dir + "/basis.csv", std::ios::binary);
    out << "# superatom-cli " << kToolVersion << "\n# config " << cfg.config_hash << "\n";
    basis::write_basis_csv(out, b);
}

void run_dos(const ScenarioConfig& cfg, std::ostream& log) {
    const double beta = cfg.beta();
    CsvWriter csv(cfg, "dos.csv", "z,p");
    const double la = std::log(cfg.z_min), lb = std::log(cfg.z_max);
    for (int k = 0; k < cfg.z_points; ++k) {
        const double z = std::exp(la + (lb - la) * k / (cfg.z_points - 1.0));
        csv.row({z, interactions::dos(z, beta)});
    }
    log << "beta = " << format9(beta) << ", z_peak = " << format9(interactions::z_peak(beta))
        << "\n";
}

void run_effective(const ScenarioConfig& cfg, std::ostream& log) {
    const basis::BasisIndex b(cfg.n_max, cfg.symmetry);
    const double om = cfg.omega_t.empty() ? cfg.omega : build_pulses(cfg).omega.peak();
    const interactions::EffectivePotential ep =
        interactions::effective_potential(b, cfg.geometry(), cfg.ze_mode, std::abs(om));

    CsvWriter csv(cfg, "effective.csv", "row,col,lambda_rad_us,gamma_rad_us");
    const int nd = b.double_count();
    for (int i = 0; i < nd; ++i)
        for (int j = 0; j < nd; ++j)
            csv.row({(double)i, (double)j, ep.lambda(i, j).real(), ep.gamma(i, j).real()});

    if (!ep.channels.empty()) {
        CsvWriter ch(cfg, "channels.csv", "n_c,l,rate_rad_us");
        for (const auto& c : ep.channels) ch.row({(double)c.n_c, (double)c.l, c.rate});
    }
    log << "z_e = " << format9(ep.z_e) << ", " << nd << " double states, " << ep.channels.size()
        << " decay channels\n";
}

void run_simulate(const ScenarioConfig& cfg, std::ostream& log) {
    const dynamics::Liouvillian gen = build_generator(cfg, cfg.mapping);
    const dynamics::Trajectory traj =
        dynamics::evolve(gen, gen.initial_ground(), linspace(0.0, cfg.t_end, cfg.n_points),
                         cfg.ode_tol);
    write_trajectory(cfg, "trajectory.csv", traj);
    const auto& last = traj.obs.back();
    log << "final: P_G = " << format9(last.p_g)
        << ", not(G) = " << format9(cfg.correction_factor * (1.0 - last.p_g))
        << ", P_R = " << format9(last.p_r);
    if (cfg.mapping)
        log << ", n_phot = "
            << format9(dynamics::photon_emission_number(traj, cfg.rates.kappa0,
                                                        cfg.rates.eta_mm));
    log << "\n";
}

void run_validate(const ScenarioConfig& cfg, std::ostream& log) {
    if (cfg.c6 <= 0.0) throw ConfigError("validate requires a positive C6");

    const dynamics::Liouvillian gen = build_generator(cfg, false);
    const std::vector<double> grid = linspace(0.0, cfg.t_end, cfg.n_points);
    const dynamics::Trajectory traj =
        dynamics::evolve(gen, gen.initial_ground(), grid, cfg.ode_tol);
    write_trajectory(cfg, "trajectory.csv", traj);

    const dynamics::PulseShape pulses = build_pulses(cfg);
    oracle::EnsembleParams params;
    params.n_atoms = cfg.n_atoms;
    params.sigma = cfg.sigma;
    params.sigma_z = cfg.sigma_z;
    params.c6 = cfg.c6;
    params.cutoff_multiple = cfg.cutoff_multiple;
    params.omega_peak = pulses.omega.peak();
    if (!cfg.omega_t.empty())
        params.omega_of_t = [p = pulses.omega](double t) { return p(t); };
    params.tol = cfg.oracle_tol;

    std::vector<std::uint64_t> seeds = cfg.seeds;
    if (seeds.empty())
        for (int k = 0; k < cfg.realizations; ++k) seeds.push_back(cfg.seed0 + k);

    const std::vector<double> grid_pos(grid.begin() + 1, grid.end());
    const oracle::EnsembleResult ens = oracle::ensemble_run(params, grid_pos, seeds);

    CsvWriter ecsv(cfg, "ensemble.csv",
                   "t_us,mean_P_R,std_P_R,mean_P_sym2,std_P_sym2,mean_P_exc,std_P_exc");
    for (size_t j = 0; j < grid_pos.size(); ++j)
        ecsv.row({grid_pos[j], ens.mean_p_r(j), ens.std_p_r(j), ens.mean_p_sym2(j),
                  ens.std_p_sym2(j), ens.mean_p_exc(j), ens.std_p_exc(j)});

    CsvWriter vcsv(cfg, "validate.csv", "t_us,P_R_model,mean_P_R,std_P_R,delta");
    double max_delta = 0.0;
    int covered = 0;
    for (size_t j = 0; j < grid_pos.size(); ++j) {
        const double model = traj.obs[j + 1].p_r;
        const double delta = model - ens.mean_p_r(j);
        max_delta = std::max(max_delta, std::abs(delta));
        if (std::abs(delta) <= 2.0 * ens.std_p_r(j)) ++covered;
        vcsv.row({grid_pos[j], model, ens.mean_p_r(j), ens.std_p_r(j), delta});
    }
    log << "max |delta P_R| = " << format9(max_delta) << ", within 2 std at " << covered << "/"
        << grid_pos.size() << " points (" << (int)seeds.size() << " realizations)\n";
}

void run_sweep(const ScenarioConfig& cfg, std::ostream& log) {
    struct Row {
        double omega1, omega, p_r, not_g, p_exc;
    };
    std::vector<Row> rows(cfg.sweep_points);

    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::string error_msg;
    std::mutex err_mutex;
    auto worker = [&]() {
        for (int k = next.fetch_add(1); k < cfg.sweep_points; k = next.fetch_add(1)) {
            if (failed.load()) return;
            try {
                const double omega1 = cfg.omega1_max * k / (cfg.sweep_points - 1.0);
                const double om = std::abs(
                    dynamics::collective_omega(cfg.n0, omega1, cfg.omega2, cfg.delta));
                Row r{omega1, om, 0.0, 0.0, 0.0};
                if (om > 1e-12) {
                    ScenarioConfig point = cfg;
                    point.omega = om;
                    point.omega_t.clear();
                    point.omega_v.clear();
                    const dynamics::Liouvillian gen = build_generator(point, false);
                    const dynamics::Trajectory traj = dynamics::evolve(
                        gen, gen.initial_ground(), linspace(0.0, cfg.t_end, cfg.n_points),
                        cfg.ode_tol);
                    const auto& last = traj.obs.back();
                    r.p_r = last.p_r;
                    r.not_g = cfg.correction_factor * (1.0 - last.p_g);
                    r.p_exc = last.p_exc_total;
                }
                rows[k] = r;
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(err_mutex);
                failed = true;
                error_msg = e.what();
            }
        }
    };
    const int n_threads =
        std::min<int>(cfg.sweep_points, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (int w = 0; w < n_threads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failed) throw specfun::NumericError("sweep: " + error_msg);

    CsvWriter csv(cfg, "sweep.csv", "omega1_MHz,omega_rad_us,P_R,not_G,P_exc_total");
    for (const Row& r : rows)
        csv.row({r.omega1 / kTwoPi, r.omega, r.p_r, r.not_g, r.p_exc});
    log << cfg.sweep_points << " sweep points, final not(G) = " << format9(rows.back().not_g)
        << "\n";
}

} // namespace

double c6_for_state(const std::string& label) {
    // C6/2pi in MHz um^6 for the nS1/2 states used in the experiments.
    static const std::map<std::string, double> table = {
        {"80S", 4.15098e6}, {"95S", 3.10170e7}, {"109S", 1.52202e8}, {"140S", 2.68030e9}};
    const auto it = table.find(label);
    if (it == table.end())
        throw ConfigError("unsupported Rydberg state '" + label +
                          "' (known: 80S, 95S, 109S, 140S)");
    return kTwoPi * it->second;
}

ScenarioConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str(), path);
}

ScenarioConfig parse_config_text(const std::string& text, const std::string& name) {
    KeyStore ks(text, name);
    ScenarioConfig cfg;
    cfg.config_hash = fnv1a_hex(text);

    // [scenario]
    const std::string kind = ks.get_string("scenario.kind", "simulate");
    if (kind == "basis") cfg.kind = ScenarioKind::Basis;
    else if (kind == "dos") cfg.kind = ScenarioKind::Dos;
    else if (kind == "effective") cfg.kind = ScenarioKind::Effective;
    else if (kind == "simulate") cfg.kind = ScenarioKind::Simulate;
    else if (kind == "validate") cfg.kind = ScenarioKind::Validate;
    else if (kind == "sweep") cfg.kind = ScenarioKind::Sweep;
    else ks.fail(ks.line_of("scenario.kind"), "unknown scenario kind '" + kind + "'");

    const std::string sym = ks.get_string("scenario.symmetry", "spherical");
    if (sym == "spherical") cfg.symmetry = basis::Symmetry::Spherical;
    else if (sym == "elliptic") cfg.symmetry = basis::Symmetry::Elliptic;
    else ks.fail(ks.line_of("scenario.symmetry"), "unknown symmetry '" + sym + "'");

    cfg.n_max = ks.get_int("scenario.n_max", cfg.n_max);
    if (cfg.n_max < 0) ks.fail(ks.line_of("scenario.n_max"), "n_max must be >= 0");
    cfg.rydberg_state = ks.get_string("scenario.rydberg_state", "");
    if (!cfg.rydberg_state.empty()) cfg.c6 = c6_for_state(cfg.rydberg_state);
    cfg.c6 = ks.get_mhz("scenario.c6_MHz_um6", cfg.c6);

    const std::string ze = ks.get_string("scenario.ze_mode", "drive_omega");
    if (ze == "drive_omega") cfg.ze_mode = interactions::ZeMode::DriveOmega;
    else if (ze == "fixed_peak") cfg.ze_mode = interactions::ZeMode::FixedPeak;
    else ks.fail(ks.line_of("scenario.ze_mode"), "unknown ze_mode '" + ze + "'");

    // [geometry]
    cfg.sigma = ks.get_double("geometry.sigma_um", cfg.sigma);
    cfg.sigma_z = ks.get_double("geometry.sigma_z_um", cfg.sigma_z);
    if (cfg.sigma <= 0.0 || cfg.sigma_z <= 0.0)
        throw ConfigError(name + ": cloud widths must be positive");
    cfg.n_atoms = ks.get_int("geometry.n_atoms", cfg.n_atoms);
    cfg.n0 = ks.get_double("geometry.n0", cfg.n0);
    if (cfg.beta() < 0.0)
        cfg.warnings.push_back("prolate cloud (sigma_z > sigma), beta = " +
                               format9(cfg.beta()));

    // [drive]
    cfg.omega = ks.get_mhz("drive.omega_MHz", cfg.omega);
    if (ks.has("drive.omega1_MHz")) {
        const double o1 = ks.get_mhz("drive.omega1_MHz", 0.0);
        const double o2 = ks.get_mhz("drive.omega2_MHz", kTwoPi * 7.8);
        const double dl = ks.get_mhz("drive.delta_MHz", -kTwoPi * 500.0);
        cfg.omega = std::abs(dynamics::collective_omega(cfg.n0, o1, o2, dl));
    }
    cfg.omega_t = ks.get_list("drive.omega_t_us", 1.0);
    cfg.omega_v = ks.get_list("drive.omega_v_MHz", kTwoPi);
    if (cfg.omega_t.size() != cfg.omega_v.size())
        throw ConfigError(name + ": drive.omega_t_us and drive.omega_v_MHz length mismatch");
    cfg.t_end = ks.get_double("drive.t_end_us", cfg.t_end);
    cfg.n_points = ks.get_int("drive.n_points", cfg.n_points);
    if (!(cfg.t_end > 0.0) || cfg.n_points < 2)
        throw ConfigError(name + ": need t_end_us > 0 and n_points >= 2");

    // [mapping]
    cfg.mapping = ks.get_bool("mapping.enabled", cfg.mapping);
    cfg.mapping_leaks = ks.get_bool("mapping.leaks", cfg.mapping_leaks);
    cfg.omega_m = ks.get_mhz("mapping.omega_m_MHz", cfg.omega_m);
    cfg.omega_m_t = ks.get_list("mapping.omega_m_t_us", 1.0);
    cfg.omega_m_v = ks.get_list("mapping.omega_m_v_MHz", kTwoPi);
    if (cfg.omega_m_t.size() != cfg.omega_m_v.size())
        throw ConfigError(name + ": mapping pulse table length mismatch");

    // [rates]
    cfg.rates.gamma_r = ks.get_mhz("rates.gamma_r_MHz", cfg.rates.gamma_r);
    cfg.rates.omega0 = ks.get_mhz("rates.omega0_MHz", cfg.rates.omega0);
    cfg.rates.gamma = ks.get_mhz("rates.gamma_MHz", cfg.rates.gamma);
    cfg.rates.kappa = ks.get_mhz("rates.kappa_MHz", cfg.rates.kappa);
    cfg.rates.kappa0 = ks.get_mhz("rates.kappa0_MHz", cfg.rates.kappa0);
    cfg.rates.g = ks.get_mhz("rates.g_MHz", cfg.rates.g);
    cfg.rates.eta_mm = ks.get_double("rates.eta_mm", cfg.rates.eta_mm);
    cfg.rates.tau_r = ks.get_double("rates.tau_r_us", cfg.rates.tau_r);
    if (cfg.rates.gamma_r < 0 || cfg.rates.omega0 < 0 || cfg.rates.gamma < 0 ||
        cfg.rates.kappa < 0 || cfg.rates.kappa0 < 0 || cfg.rates.g < 0)
        throw ConfigError(name + ": rates must be non-negative");
    if (cfg.rates.kappa0 > cfg.rates.kappa)
        throw ConfigError(name + ": kappa0 must not exceed kappa");
    if (cfg.rates.eta_mm < 0.0 || cfg.rates.eta_mm > 1.0)
        throw ConfigError(name + ": eta_mm must lie in [0, 1]");
    if (!(cfg.rates.tau_r > 0.0)) throw ConfigError(name + ": tau_r_us must be positive");

    // [dos]
    cfg.beta_override = ks.get_double("dos.beta", cfg.beta_override);
    cfg.z_min = ks.get_double("dos.z_min", cfg.z_min);
    cfg.z_max = ks.get_double("dos.z_max", cfg.z_max);
    cfg.z_points = ks.get_int("dos.z_points", cfg.z_points);
    if (!(cfg.z_min > 0.0) || !(cfg.z_max > cfg.z_min) || cfg.z_points < 2)
        throw ConfigError(name + ": need 0 < z_min < z_max and z_points >= 2");

    // [validate]
    cfg.seed0 = (std::uint64_t)ks.get_double("validate.seed0", (double)cfg.seed0);
    for (double s : ks.get_list("validate.seeds", 1.0)) cfg.seeds.push_back((std::uint64_t)s);
    cfg.realizations = ks.get_int("validate.realizations", cfg.realizations);
    cfg.cutoff_multiple = ks.get_double("validate.cutoff_multiple", cfg.cutoff_multiple);
    cfg.oracle_tol = ks.get_double("validate.oracle_tol", cfg.oracle_tol);
    cfg.ode_tol = ks.get_double("validate.ode_tol", cfg.ode_tol);
    if (cfg.realizations < 2) throw ConfigError(name + ": realizations must be >= 2");
    if (!(cfg.cutoff_multiple > 0.0))
        throw ConfigError(name + ": cutoff_multiple must be positive");

    // [sweep]
    cfg.omega1_max = ks.get_mhz("sweep.omega1_max_MHz", cfg.omega1_max);
    cfg.omega2 = ks.get_mhz("sweep.omega2_MHz", cfg.omega2);
    cfg.delta = ks.get_mhz("sweep.delta_MHz", cfg.delta);
    cfg.sweep_points = ks.get_int("sweep.points", cfg.sweep_points);
    cfg.correction_factor = ks.get_double("sweep.correction_factor", cfg.correction_factor);
    if (cfg.sweep_points < 2) throw ConfigError(name + ": sweep points must be >= 2");
    if (!(cfg.correction_factor > 0.0))
        throw ConfigError(name + ": correction_factor must be positive");

    // [output]
    cfg.out_dir = ks.get_string("output.dir", cfg.out_dir);

    ks.reject_unknown();
    return cfg;
}

void run_scenario(const ScenarioConfig& cfg, std::ostream& log) {
    switch (cfg.kind) {
    case ScenarioKind::Basis: run_basis(cfg, log); break;
    case ScenarioKind::Dos: run_dos(cfg, log); break;
    case ScenarioKind::Effective: run_effective(cfg, log); break;
    case ScenarioKind::Simulate: run_simulate(cfg, log); break;
    case ScenarioKind::Validate: run_validate(cfg, log); break;
    case ScenarioKind::Sweep: run_sweep(cfg, log); break;
    }
}

} // namespace superatom::cli

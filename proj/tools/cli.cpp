#include "cli.hpp"

#include "ccsl/bounds.hpp"
#include "ccsl/error.hpp"
#include "ccsl/noise.hpp"
#include "ccsl/predict.hpp"
#include "ccsl/registry.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#ifndef CCSL_VERSION
#define CCSL_VERSION "0.0.0"
#endif

namespace ccsl::cli {

namespace {

using nlohmann::ordered_json;

/// Usage-level failure detected after CLI11 parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.8e", v);
    return buf;
}

std::string omega_c_text(const NoiseSpec& n) { return n.is_white() ? "inf" : num(n.omega_c()); }

ordered_json omega_c_json(const NoiseSpec& n) {
    if (n.is_white())
        return "inf";
    return n.omega_c();
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::QuadratureNotConverged:
    case ErrorKind::WashedOut:
        return kExitNumerical;
    default:
        return kExitUsage;
    }
}

std::string timestamp() {
    std::time_t now = std::time(nullptr);
    if (const char* pinned = std::getenv("SOURCE_DATE_EPOCH"))
        now = static_cast<std::time_t>(std::strtoll(pinned, nullptr, 10));
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Manifest {
    std::string command;
    ordered_json parameters = ordered_json::object();
    std::vector<std::string> experiments;
    ordered_json errors = ordered_json::array();

    ordered_json to_json() const {
        ordered_json j;
        j["tool"] = "ccsl";
        j["version"] = CCSL_VERSION;
        j["command"] = command;
        j["timestamp"] = timestamp();
        j["parameters"] = parameters;
        j["experiments"] = experiments;
        j["errors"] = errors;
        return j;
    }

    void write_comments(std::ostream& os) const {
        os << "# tool: ccsl " << CCSL_VERSION << "\n";
        os << "# command: " << command << "\n";
        os << "# timestamp: " << timestamp() << "\n";
        os << "# parameters: " << parameters.dump() << "\n";
        os << "# experiments: ";
        for (std::size_t i = 0; i < experiments.size(); ++i)
            os << (i ? "," : "") << experiments[i];
        os << "\n";
        for (const auto& e : errors)
            os << "# omitted: " << e.dump() << "\n";
    }
};

ordered_json scan_error_json(const ScanError& e) {
    ordered_json j;
    j["experiment"] = e.experiment_id;
    j["rc_m"] = e.rc;
    j["kind"] = std::string(to_string(e.kind));
    j["message"] = e.message;
    return j;
}

std::vector<ExperimentDescriptor> resolve_experiments(const std::vector<std::string>& names) {
    if (names.empty())
        throw UsageError("--experiment is required");
    std::vector<ExperimentDescriptor> out;
    for (const auto& name : names) {
        if (name == "all") {
            for (auto& d : load_all_bundled())
                out.push_back(std::move(d));
        } else {
            out.push_back(load(name));
        }
    }
    return out;
}

std::vector<std::string> ids_of(const std::vector<ExperimentDescriptor>& ex) {
    std::vector<std::string> ids;
    for (const auto& e : ex)
        ids.push_back(e.id);
    return ids;
}

/// "lo:hi:n", log-spaced.
std::vector<double> parse_rc_grid(const std::string& spec) {
    const auto a = spec.find(':');
    const auto b = a == std::string::npos ? a : spec.find(':', a + 1);
    if (b == std::string::npos)
        throw UsageError("--rc-grid expects lo:hi:n");
    try {
        std::size_t used = 0;
        const double lo = std::stod(spec.substr(0, a), &used);
        const double hi = std::stod(spec.substr(a + 1, b - a - 1));
        const long n = std::stol(spec.substr(b + 1));
        if (n < 1 || !(lo > 0.0) || !(hi >= lo) || (n > 1 && !(hi > lo)))
            throw UsageError("--rc-grid needs 0 < lo < hi and n >= 1");
        return log_grid(lo, hi, static_cast<std::size_t>(n));
    } catch (const std::logic_error&) {
        throw UsageError("--rc-grid expects lo:hi:n with numeric fields");
    }
}

struct Observable {
    std::string name;
    double value;
    std::string unit;
};

std::vector<Observable> observables(const ExperimentDescriptor& e, const CollapseParams& p,
                                    const NoiseSpec& n, std::optional<double> omega) {
    std::vector<Observable> out;
    switch (e.kind) {
    case ExperimentKind::Optomechanical: {
        const double w = omega.value_or(e.ceiling.probe.lo);
        const MassDistribution d = effective_geometry(e);
        out.push_back({"force_psd", dns_ccsl(d, p, n, w), "N^2/Hz"});
        if (e.oscillator)
            out.push_back({"displacement_psd", dns_total(*e.oscillator, d, p, n, w), "m^2/Hz"});
        break;
    }
    case ExperimentKind::XRay: {
        const double w = omega.value_or(e.omega_obs);
        out.push_back({"xray_normalized", xray_normalized(p, n, w), "s^-1 m^-2"});
        out.push_back({"xray_rate", xray_rate(p, n, w), "s^-1/(rad s^-1)"});
        break;
    }
    case ExperimentKind::BulkHeating:
        out.push_back({"heating_power", heating_rate(p, n, *e.phonon), "W/kg"});
        out.push_back({"lambda_eff", lambda_eff(p, n, *e.phonon), "s^-1"});
        break;
    case ExperimentKind::ColdAtom:
        out.push_back({"position_variance", cold_atom_diffusion(p, n, *e.coldatom), "m^2"});
        break;
    }
    return out;
}

struct Options {
    std::vector<std::string> experiments;
    std::string noise = "inf";
    std::string format = "csv";
    double lambda = 0.0;
    double rc = 0.0;
    std::optional<double> omega;
    std::string rc_grid;
    std::string omega_c_list = "inf,1e15,1e4,1e1";
    std::string out_dir = ".";
    unsigned jobs = 0;
};

int cmd_predict(const Options& o, std::ostream& out) {
    const NoiseSpec n = parse_noise(o.noise);
    const CollapseParams p = validate_params({o.lambda, o.rc});
    const auto experiments = resolve_experiments(o.experiments);

    Manifest m;
    m.command = "predict";
    m.parameters["lambda_s^-1"] = p.lambda;
    m.parameters["rc_m"] = p.rc;
    m.parameters["omega_c_rad_s"] = omega_c_json(n);
    if (o.omega)
        m.parameters["omega_rad_s"] = *o.omega;
    m.experiments = ids_of(experiments);

    ordered_json rows = ordered_json::array();
    std::ostringstream csv;
    for (const auto& e : experiments) {
        for (const auto& ob : observables(e, p, n, o.omega)) {
            csv << e.id << ',' << ob.name << ',' << num(ob.value) << ',' << ob.unit << ','
                << num(p.lambda) << ',' << num(p.rc) << ',' << omega_c_text(n) << '\n';
            ordered_json r;
            r["experiment"] = e.id;
            r["observable"] = ob.name;
            r["value"] = ob.value;
            r["unit"] = ob.unit;
            rows.push_back(r);
        }
    }
    if (o.format == "json") {
        ordered_json j;
        j["manifest"] = m.to_json();
        j["results"] = rows;
        out << j.dump(2) << '\n';
    } else {
        m.write_comments(out);
        out << "experiment,observable,value,unit,lambda_s^-1,rc_m,omega_c_rad_s\n" << csv.str();
    }
    return kExitOk;
}

int cmd_bound(const Options& o, std::ostream& out, std::ostream& err) {
    const NoiseSpec n = parse_noise(o.noise);
    std::vector<double> grid;
    if (!o.rc_grid.empty()) {
        grid = parse_rc_grid(o.rc_grid);
    } else {
        validate_rc(o.rc);
        grid = {o.rc};
    }
    const auto experiments = resolve_experiments(o.experiments);
    const ScanResult res = scan(experiments, n, grid, o.jobs);

    Manifest m;
    m.command = "bound";
    m.parameters["omega_c_rad_s"] = omega_c_json(n);
    if (o.rc_grid.empty())
        m.parameters["rc_m"] = o.rc;
    else
        m.parameters["rc_grid"] = o.rc_grid;
    m.experiments = ids_of(experiments);
    for (const auto& e : res.errors)
        m.errors.push_back(scan_error_json(e));

    std::size_t rows_written = 0;
    ordered_json rows = ordered_json::array();
    std::ostringstream csv;
    for (const auto& c : res.curves)
        for (const auto& pt : c.points) {
            csv << c.experiment_id << ',' << num(pt.rc) << ',' << num(pt.lambda_max) << ','
                << omega_c_text(n) << '\n';
            ordered_json r;
            r["experiment"] = c.experiment_id;
            r["rc_m"] = pt.rc;
            r["lambda_max_s^-1"] = pt.lambda_max;
            r["omega_c_rad_s"] = omega_c_json(n);
            rows.push_back(r);
            ++rows_written;
        }
    if (o.format == "json") {
        ordered_json j;
        j["manifest"] = m.to_json();
        j["results"] = rows;
        out << j.dump(2) << '\n';
    } else {
        m.write_comments(out);
        out << "experiment,rc_m,lambda_max_s^-1,omega_c_rad_s\n" << csv.str();
    }
    for (const auto& e : res.errors)
        err << "ccsl: " << e.experiment_id << " at rc=" << num(e.rc) << ": " << e.message << '\n';
    if (rows_written == 0 && !res.errors.empty()) {
        bool numerical = true;
        for (const auto& e : res.errors)
            numerical = numerical && exit_code_for(e.kind) == kExitNumerical;
        return numerical ? kExitNumerical : kExitUsage;
    }
    return kExitOk;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) {
        const auto b = cur.find_first_not_of(" \t");
        const auto e = cur.find_last_not_of(" \t");
        out.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
    }
    return out;
}

std::string file_tag(const std::string& token) {
    std::string out;
    for (char c : token)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '+' || c == '-')
                   ? c
                   : '_';
    return out;
}

int cmd_scan(const Options& o, std::ostream& out, std::ostream& err) {
    const auto tokens = split(o.omega_c_list, ',');
    std::vector<NoiseSpec> noises;
    for (const auto& t : tokens) {
        if (t.empty())
            throw UsageError("--omega-c contains an empty entry");
        noises.push_back(parse_noise(t));
    }
    const std::vector<double> grid =
        o.rc_grid.empty() ? default_rc_grid() : parse_rc_grid(o.rc_grid);
    auto names = o.experiments;
    if (names.empty())
        names = {"all"};
    const auto experiments = resolve_experiments(names);

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(o.out_dir, ec);
    if (ec)
        throw UsageError("cannot create output directory '" + o.out_dir + "'");

    Manifest manifest;
    manifest.command = "scan";
    manifest.parameters["omega_c"] = o.omega_c_list;
    manifest.parameters["rc_grid"] = o.rc_grid.empty() ? "1e-9:1e-3:60" : o.rc_grid;
    manifest.parameters["jobs"] = o.jobs;
    manifest.experiments = ids_of(experiments);
    ordered_json panels = ordered_json::array();

    std::size_t attempted = 0;
    std::size_t failed = 0;
    for (std::size_t k = 0; k < noises.size(); ++k) {
        const NoiseSpec& n = noises[k];
        const ScanResult res = scan(experiments, n, grid, o.jobs);
        attempted += res.attempted;
        failed += res.errors.size();
        const ExclusionCurve env = envelope(res.curves);

        Manifest panel = manifest;
        panel.parameters["omega_c_rad_s"] = omega_c_json(n);
        for (const auto& e : res.errors)
            panel.errors.push_back(scan_error_json(e));

        const fs::path path = fs::path(o.out_dir) / ("scan_omega_c_" + file_tag(tokens[k]) + ".csv");
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw UsageError("cannot write '" + path.string() + "'");
        panel.write_comments(f);
        f << "rc_m";
        for (const auto& c : res.curves)
            f << ',' << c.experiment_id << "_lambda_max_s^-1";
        f << ",envelope_lambda_max_s^-1\n";
        std::vector<std::size_t> cursor(res.curves.size(), 0);
        std::size_t env_cursor = 0;
        for (double rc : grid) {
            f << num(rc);
            for (std::size_t i = 0; i < res.curves.size(); ++i) {
                f << ',';
                const auto& pts = res.curves[i].points;
                if (cursor[i] < pts.size() && pts[cursor[i]].rc == rc)
                    f << num(pts[cursor[i]++].lambda_max);
            }
            f << ',';
            if (env_cursor < env.points.size() && env.points[env_cursor].rc == rc)
                f << num(env.points[env_cursor++].lambda_max);
            f << '\n';
        }

        ordered_json pj;
        pj["omega_c_rad_s"] = omega_c_json(n);
        pj["file"] = path.filename().string();
        pj["errors"] = panel.errors;
        panels.push_back(pj);
        out << path.string() << '\n';
        for (const auto& e : res.errors)
            err << "ccsl: Omega_c=" << omega_c_text(n) << ' ' << e.experiment_id
                << " at rc=" << num(e.rc) << ": " << e.message << '\n';
    }

    ordered_json mj = manifest.to_json();
    mj["panels"] = panels;
    std::ofstream mf(fs::path(o.out_dir) / "manifest.json", std::ios::binary);
    mf << mj.dump(2) << '\n';
    out << (fs::path(o.out_dir) / "manifest.json").string() << '\n';

    return (attempted > 0 && failed == attempted) ? kExitNumerical : kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Colored-noise CSL predictions and parameter bounds", "ccsl"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(CCSL_VERSION));

    Options o;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-e,--experiment", o.experiments,
                        "bundled id, config path, or 'all' (comma-separated)")
            ->delimiter(',');
        sub->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    auto* predict = app.add_subcommand("predict", "predict the observables of an experiment");
    add_common(predict);
    predict->add_option("--lambda", o.lambda, "collapse rate, s^-1")->required();
    predict->add_option("--rc", o.rc, "correlation length, m")->required();
    predict->add_option("--noise", o.noise, "inf | white | exp:<omega_c rad/s>");
    predict->add_option("--omega", o.omega, "probe frequency override, rad/s");

    auto* bound = app.add_subcommand("bound", "upper bound on lambda at given r_C");
    add_common(bound);
    auto* rc_opt = bound->add_option("--rc", o.rc, "correlation length, m");
    auto* grid_opt = bound->add_option("--rc-grid", o.rc_grid, "lo:hi:n, log-spaced, m");
    rc_opt->excludes(grid_opt);
    bound->add_option("--noise", o.noise, "inf | white | exp:<omega_c rad/s>");
    bound->add_option("-j,--jobs", o.jobs, "worker threads (0 = all cores)");

    auto* scan_cmd = app.add_subcommand("scan", "exclusion curves for several cutoffs");
    add_common(scan_cmd);
    scan_cmd->add_option("--omega-c", o.omega_c_list, "comma-separated cutoffs, rad/s; inf = white")
        ->capture_default_str();
    scan_cmd->add_option("--rc-grid", o.rc_grid, "lo:hi:n, log-spaced, m (default 1e-9:1e-3:60)");
    scan_cmd->add_option("-o,--out-dir", o.out_dir, "output directory")->capture_default_str();
    scan_cmd->add_option("-j,--jobs", o.jobs, "worker threads (0 = all cores)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (predict->parsed())
            return cmd_predict(o, out);
        if (bound->parsed()) {
            if (rc_opt->count() == 0 && grid_opt->count() == 0)
                throw UsageError("bound needs --rc or --rc-grid");
            return cmd_bound(o, out, err);
        }
        return cmd_scan(o, out, err);
    } catch (const UsageError& e) {
        err << "ccsl: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    } catch (const Error& e) {
        err << "ccsl: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return exit_code_for(e.kind());
    }
}

}  // namespace ccsl::cli

// abcgf -- command-line front end for the Aharonov-Bohm-Coulomb Green's
// function library: evaluate the assembled propagator, individual radial
// channels, bound-state spectra, perturbation-series tables, and the
// numerical verification batteries.  Reports are deterministic: identical
// invocations produce byte-identical output.

#include <cmath>
#include <complex>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "abcgf/greens.hpp"
#include "abcgf/identities.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitPole = 4;

struct OutputOptions {
    std::string format = "json";
    std::string out;  // empty = stdout
};

void add_output_flags(CLI::App* cmd, OutputOptions& opt) {
    cmd->add_option("--format", opt.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", opt.out, "Write the report to this file instead of stdout");
}

std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

void emit(const OutputOptions& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opt.out, std::ios::binary);
    if (!f) throw abcgf::DomainError("cannot open output file: " + opt.out);
    f << text;
}

// CSV reports open with the resolved configuration as comment lines, then a
// fixed header row; the column set per command is part of the CLI contract.
std::string csv_config_block(const ordered_json& config) {
    std::ostringstream os;
    for (auto it = config.begin(); it != config.end(); ++it) {
        os << "# " << it.key() << "=";
        if (it.value().is_string())
            os << it.value().get<std::string>();
        else
            os << it.value().dump();
        os << "\n";
    }
    return os.str();
}

void emit_report(const OutputOptions& opt, const ordered_json& report,
                 const std::string& csv_body) {
    if (opt.format == "json") {
        emit(opt, report.dump(2) + "\n");
    } else {
        emit(opt, csv_config_block(report.at("config")) + csv_body);
    }
}

void emit_error_record(const OutputOptions& opt, const std::string& type,
                       const std::string& message) {
    ordered_json rec;
    rec["error"]["type"] = type;
    rec["error"]["message"] = message;
    try {
        if (opt.format == "csv")
            emit(opt, "# error\ntype,message\n" + type + ",\"" + message + "\"\n");
        else
            emit(opt, rec.dump(2) + "\n");
    } catch (...) {
        std::cerr << type << ": " << message << "\n";
    }
}

// ---- eval -------------------------------------------------------------------

struct EvalArgs {
    abcgf::PhysicalParams p;
    abcgf::SpacePoint b, a;
    abcgf::TruncationSpec trunc;
    OutputOptions out;
};

int run_eval(const EvalArgs& args) {
    const abcgf::GreensResult r = abcgf::greens_function(args.b, args.a, args.p, args.trunc);

    ordered_json report;
    report["command"] = "eval";
    ordered_json& c = report["config"];
    c["alpha"] = args.p.alpha;
    c["beta0"] = args.p.beta0;
    c["energy"] = args.p.energy;
    c["rb"] = args.b.r;
    c["ra"] = args.a.r;
    c["theta_b"] = args.b.theta;
    c["theta_a"] = args.a.theta;
    c["phi_b"] = args.b.phi;
    c["phi_a"] = args.a.phi;
    c["qmax"] = args.trunc.q_max;
    c["kmax"] = args.trunc.k_max;
    c["tol"] = args.trunc.tail_tol;
    c["format"] = args.out.format;

    ordered_json& res = report["result"];
    res["re"] = r.value.real();
    res["im"] = r.value.imag();
    res["abs"] = std::abs(r.value);
    res["err_estimate"] = r.err_estimate;
    res["converged"] = r.converged;
    res["shells_used"] = r.shells_used;
    res["terms_used"] = r.terms_used;

    std::ostringstream csv;
    csv << "re,im,abs,err_estimate,converged,shells_used,terms_used\n"
        << format_double(r.value.real()) << "," << format_double(r.value.imag()) << ","
        << format_double(std::abs(r.value)) << "," << format_double(r.err_estimate) << ","
        << (r.converged ? 1 : 0) << "," << r.shells_used << "," << r.terms_used << "\n";
    emit_report(args.out, report, csv.str());
    // The truncation flag is soft: the report carries it (and the tail size);
    // exit 3 is reserved for hard numerical failures.
    return kExitOk;
}

// ---- radial -----------------------------------------------------------------

struct RadialArgs {
    abcgf::PhysicalParams p;
    abcgf::ChannelIndex ch;
    double rb = 2.0, ra = 1.0;
    double tol = 1e-10;
    OutputOptions out;
};

int run_radial(const RadialArgs& args) {
    abcgf::QuadSpec spec;
    spec.rel_tol = args.tol;
    const double closed = abcgf::radial_closed(args.ch, args.p, args.rb, args.ra);
    const abcgf::EvalResult integral =
        abcgf::radial_integral(args.ch, args.p, args.rb, args.ra, spec);
    const abcgf::EvalResult g0s =
        abcgf::g0_proper_time(args.ch, args.p, args.rb, args.ra, spec);
    const abcgf::EvalResult g0z = abcgf::g0_z_rep(args.ch, args.p, args.rb, args.ra, spec);

    ordered_json report;
    report["command"] = "radial";
    ordered_json& c = report["config"];
    c["alpha"] = args.p.alpha;
    c["beta0"] = args.p.beta0;
    c["energy"] = args.p.energy;
    c["q"] = args.ch.q;
    c["k"] = args.ch.k;
    c["rb"] = args.rb;
    c["ra"] = args.ra;
    c["tol"] = args.tol;
    c["format"] = args.out.format;

    ordered_json& res = report["result"];
    res["closed"] = closed;
    res["integral"] = integral.value;
    res["integral_err"] = integral.err_estimate;
    res["integral_converged"] = integral.converged;
    res["g0_proper_time"] = g0s.value;
    res["g0_z_rep"] = g0z.value;
    res["closed_vs_integral_rel"] = std::abs(closed - integral.value) / std::abs(closed);

    std::ostringstream csv;
    csv << "closed,integral,integral_err,integral_converged,g0_proper_time,g0_z_rep,"
           "closed_vs_integral_rel\n"
        << format_double(closed) << "," << format_double(integral.value) << ","
        << format_double(integral.err_estimate) << "," << (integral.converged ? 1 : 0) << ","
        << format_double(g0s.value) << "," << format_double(g0z.value) << ","
        << format_double(std::abs(closed - integral.value) / std::abs(closed)) << "\n";
    emit_report(args.out, report, csv.str());
    // Soft convergence flags are carried in the report; see run_eval.
    return kExitOk;
}

// ---- spectrum ---------------------------------------------------------------

struct SpectrumArgs {
    double alpha = 0.0073;
    double beta0 = 0.0;
    abcgf::ChannelIndex ch;
    int nr_max = 3;
    bool scan = false;
    double emin = 0.5, emax = 0.995;
    int npoints = 4000;
    OutputOptions out;
};

int run_spectrum(const SpectrumArgs& args) {
    const std::vector<abcgf::BoundState> states =
        abcgf::bound_energies(args.ch, args.alpha, args.beta0, args.nr_max);

    ordered_json report;
    report["command"] = "spectrum";
    ordered_json& c = report["config"];
    c["alpha"] = args.alpha;
    c["beta0"] = args.beta0;
    c["q"] = args.ch.q;
    c["k"] = args.ch.k;
    c["nr_max"] = args.nr_max;
    c["scan"] = args.scan;
    if (args.scan) {
        c["emin"] = args.emin;
        c["emax"] = args.emax;
        c["npoints"] = args.npoints;
    }
    c["format"] = args.out.format;

    report["states"] = ordered_json::array();
    for (const abcgf::BoundState& s : states) {
        ordered_json j;
        j["n_r"] = s.n_r;
        j["energy"] = s.energy;
        j["lambda"] = s.lambda;
        report["states"].push_back(j);
    }

    std::ostringstream csv;
    csv << "n_r,energy,lambda\n";
    for (const abcgf::BoundState& s : states)
        csv << s.n_r << "," << format_double(s.energy) << "," << format_double(s.lambda)
            << "\n";

    if (args.scan) {
        const abcgf::PoleScanResult scan =
            abcgf::pole_scan(args.ch, args.alpha, args.beta0, args.emin, args.emax,
                             args.npoints);
        double max_diff = 0.0;
        report["scan"]["poles"] = ordered_json::array();
        for (const abcgf::BoundState& s : scan.poles) {
            ordered_json j;
            j["n_r"] = s.n_r;
            j["energy"] = s.energy;
            report["scan"]["poles"].push_back(j);
            if (s.n_r < int(states.size()))
                max_diff = std::max(max_diff, std::abs(s.energy - states[s.n_r].energy));
        }
        report["scan"]["grid_too_coarse"] = scan.grid_too_coarse;
        report["scan"]["max_abs_diff_vs_closed"] = max_diff;
        csv << "# scan\nn_r,energy\n";
        for (const abcgf::BoundState& s : scan.poles)
            csv << s.n_r << "," << format_double(s.energy) << "\n";
    }

    emit_report(args.out, report, csv.str());
    return kExitOk;
}

// ---- verify -----------------------------------------------------------------

struct VerifyArgs {
    std::string suite = "all";
    std::optional<double> tol;
    OutputOptions out;
};

int run_verify(const VerifyArgs& args) {
    std::vector<abcgf::IdentityCheck> checks;
    if (args.suite == "identities")
        checks = abcgf::run_identity_suite(args.tol);
    else if (args.suite == "routes")
        checks = abcgf::run_route_suite(args.tol);
    else if (args.suite == "spectrum")
        checks = abcgf::run_spectrum_suite(args.tol);
    else if (args.suite == "gauge")
        checks = abcgf::run_gauge_suite(args.tol);
    else if (args.suite == "extras")
        checks = abcgf::run_extra_suite(args.tol);
    else
        checks = abcgf::run_all_suites(args.tol);

    bool all_pass = true;
    for (const abcgf::IdentityCheck& c : checks) all_pass = all_pass && c.pass;

    ordered_json report;
    report["command"] = "verify";
    ordered_json& c = report["config"];
    c["suite"] = args.suite;
    if (args.tol) c["tol"] = *args.tol;
    c["format"] = args.out.format;

    report["checks"] = ordered_json::array();
    for (const abcgf::IdentityCheck& chk : checks) {
        ordered_json j;
        j["name"] = chk.name;
        j["cases"] = chk.cases;
        j["max_err"] = chk.max_err;
        j["tol"] = chk.tol;
        j["pass"] = chk.pass;
        report["checks"].push_back(j);
    }
    report["all_pass"] = all_pass;

    std::ostringstream csv;
    csv << "name,cases,max_err,tol,pass\n";
    for (const abcgf::IdentityCheck& chk : checks)
        csv << chk.name << "," << chk.cases << "," << format_double(chk.max_err) << ","
            << format_double(chk.tol) << "," << (chk.pass ? 1 : 0) << "\n";

    emit_report(args.out, report, csv.str());
    return all_pass ? kExitOk : kExitNonConvergence;
}

// ---- series -----------------------------------------------------------------

struct SeriesArgs {
    abcgf::PhysicalParams p;
    abcgf::ChannelIndex ch;
    double rb = 2.0, ra = 1.0;
    int nmax = 12;
    double tol = 1e-10;
    OutputOptions out;
};

int run_series(const SeriesArgs& args) {
    abcgf::QuadSpec spec;
    spec.rel_tol = args.tol;
    const abcgf::SeriesResult s =
        abcgf::radial_series(args.ch, args.p, args.rb, args.ra, args.nmax, spec);
    const double closed = abcgf::radial_closed(args.ch, args.p, args.rb, args.ra);

    ordered_json report;
    report["command"] = "series";
    ordered_json& c = report["config"];
    c["alpha"] = args.p.alpha;
    c["beta0"] = args.p.beta0;
    c["energy"] = args.p.energy;
    c["q"] = args.ch.q;
    c["k"] = args.ch.k;
    c["rb"] = args.rb;
    c["ra"] = args.ra;
    c["nmax"] = args.nmax;
    c["tol"] = args.tol;
    c["format"] = args.out.format;

    report["rows"] = ordered_json::array();
    std::ostringstream csv;
    csv << "n,term,partial_sum,ratio\n";
    for (std::size_t n = 0; n < s.terms.size(); ++n) {
        ordered_json row;
        row["n"] = int(n);
        row["term"] = s.terms[n];
        row["partial_sum"] = s.partial_sums[n];
        csv << n << "," << format_double(s.terms[n]) << ","
            << format_double(s.partial_sums[n]) << ",";
        if (n == 0 || s.terms[n - 1] == 0.0) {
            row["ratio"] = nullptr;
        } else {
            const double ratio = s.terms[n] / s.terms[n - 1];
            row["ratio"] = ratio;
            csv << format_double(ratio);
        }
        csv << "\n";
        report["rows"].push_back(row);
    }
    report["closed_form"] = closed;
    report["remainder_proxy"] = s.remainder_proxy;
    const double rel = std::abs(s.partial_sums.back() - closed) / std::abs(closed);
    report["partial_vs_closed_rel"] = rel;
    csv << "# closed_form=" << format_double(closed) << "\n"
        << "# partial_vs_closed_rel=" << format_double(rel) << "\n";

    emit_report(args.out, report, csv.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Relativistic spinless Aharonov-Bohm-Coulomb Green's function: "
        "partial-wave evaluation, radial channels, bound-state spectra, and "
        "numerical verification batteries"};
    app.require_subcommand(1);

    EvalArgs eval_args;
    CLI::App* eval = app.add_subcommand(
        "eval", "Assembled Green's function between two spatial points");
    eval->add_option("--alpha", eval_args.p.alpha, "Coulomb coupling, in [0, 1/2)")
        ->capture_default_str();
    eval->add_option("--beta0", eval_args.p.beta0, "Flux parameter")->capture_default_str();
    eval->add_option("--energy", eval_args.p.energy, "Energy E in (0,1), units of mc^2")
        ->capture_default_str();
    eval->add_option("--rb", eval_args.b.r, "Radius of endpoint b")->capture_default_str();
    eval->add_option("--ra", eval_args.a.r, "Radius of endpoint a")->capture_default_str();
    eval->add_option("--theta-b", eval_args.b.theta, "Polar angle of b, in (0, pi)")
        ->capture_default_str();
    eval->add_option("--theta-a", eval_args.a.theta, "Polar angle of a, in (0, pi)")
        ->capture_default_str();
    eval->add_option("--phi-b", eval_args.b.phi, "Azimuth of b")->capture_default_str();
    eval->add_option("--phi-a", eval_args.a.phi, "Azimuth of a")->capture_default_str();
    eval->add_option("--qmax", eval_args.trunc.q_max, "Principal-index window")
        ->capture_default_str();
    eval->add_option("--kmax", eval_args.trunc.k_max, "Winding-number window half-width")
        ->capture_default_str();
    eval->add_option("--tol", eval_args.trunc.tail_tol, "Relative tail tolerance")
        ->capture_default_str();
    add_output_flags(eval, eval_args.out);

    RadialArgs radial_args;
    CLI::App* radial = app.add_subcommand(
        "radial", "One channel's radial Green's function by every route");
    radial->add_option("--alpha", radial_args.p.alpha)->capture_default_str();
    radial->add_option("--beta0", radial_args.p.beta0)->capture_default_str();
    radial->add_option("--energy", radial_args.p.energy)->capture_default_str();
    radial->add_option("--q", radial_args.ch.q, "Principal index, >= 0")->capture_default_str();
    radial->add_option("--k", radial_args.ch.k, "Winding number")->capture_default_str();
    radial->add_option("--rb", radial_args.rb)->capture_default_str();
    radial->add_option("--ra", radial_args.ra)->capture_default_str();
    radial->add_option("--tol", radial_args.tol, "Quadrature relative tolerance")
        ->capture_default_str();
    add_output_flags(radial, radial_args.out);

    SpectrumArgs spectrum_args;
    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "Bound-state energies of one channel (closed form, optional scan)");
    spectrum->add_option("--alpha", spectrum_args.alpha, "Coulomb coupling, in (0, 1/2)")
        ->capture_default_str();
    spectrum->add_option("--beta0", spectrum_args.beta0)->capture_default_str();
    spectrum->add_option("--q", spectrum_args.ch.q)->capture_default_str();
    spectrum->add_option("--k", spectrum_args.ch.k)->capture_default_str();
    spectrum->add_option("--nr-max", spectrum_args.nr_max, "Highest radial quantum number")
        ->capture_default_str();
    spectrum->add_flag("--scan", spectrum_args.scan,
                       "Also locate poles numerically by 1/Gamma sign scan");
    spectrum->add_option("--emin", spectrum_args.emin)->capture_default_str();
    spectrum->add_option("--emax", spectrum_args.emax)->capture_default_str();
    spectrum->add_option("--npoints", spectrum_args.npoints)->capture_default_str();
    add_output_flags(spectrum, spectrum_args.out);

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand(
        "verify", "Run a verification battery and report per-identity pass/fail");
    verify->add_option("--suite", verify_args.suite, "Battery to run")
        ->check(CLI::IsMember({"identities", "routes", "spectrum", "gauge", "extras", "all"}))
        ->capture_default_str();
    double verify_tol = 0.0;
    CLI::Option* tol_opt =
        verify->add_option("--tol", verify_tol, "Override every per-check tolerance");
    add_output_flags(verify, verify_args.out);

    SeriesArgs series_args;
    CLI::App* series = app.add_subcommand(
        "series", "Perturbation-series table (term, partial sum, ratio) for one channel");
    series->add_option("--alpha", series_args.p.alpha)->capture_default_str();
    series->add_option("--beta0", series_args.p.beta0)->capture_default_str();
    series->add_option("--energy", series_args.p.energy)->capture_default_str();
    series->add_option("--q", series_args.ch.q)->capture_default_str();
    series->add_option("--k", series_args.ch.k)->capture_default_str();
    series->add_option("--rb", series_args.rb)->capture_default_str();
    series->add_option("--ra", series_args.ra)->capture_default_str();
    series->add_option("--nmax", series_args.nmax, "Highest series order")->capture_default_str();
    series->add_option("--tol", series_args.tol, "Quadrature relative tolerance")
        ->capture_default_str();
    add_output_flags(series, series_args.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    const OutputOptions* active_out = &eval_args.out;
    try {
        if (eval->parsed()) {
            active_out = &eval_args.out;
            return run_eval(eval_args);
        }
        if (radial->parsed()) {
            active_out = &radial_args.out;
            return run_radial(radial_args);
        }
        if (spectrum->parsed()) {
            active_out = &spectrum_args.out;
            return run_spectrum(spectrum_args);
        }
        if (verify->parsed()) {
            active_out = &verify_args.out;
            if (tol_opt->count() > 0) verify_args.tol = verify_tol;
            return run_verify(verify_args);
        }
        if (series->parsed()) {
            active_out = &series_args.out;
            return run_series(series_args);
        }
    } catch (const abcgf::PoleError& e) {
        emit_error_record(*active_out, "pole", e.what());
        return kExitPole;
    } catch (const abcgf::DomainError& e) {
        emit_error_record(*active_out, "validation", e.what());
        return kExitValidation;
    } catch (const abcgf::ConvergenceError& e) {
        emit_error_record(*active_out, "non-convergence", e.what());
        return kExitNonConvergence;
    } catch (const std::exception& e) {
        emit_error_record(*active_out, "internal", e.what());
        return kExitNonConvergence;
    }
    return kExitValidation;
}

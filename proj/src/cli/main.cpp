#include <atomic>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "wunits/cli_util.hpp"
#include "wunits/cmfield.hpp"
#include "wunits/modfunc.hpp"
#include "wunits/selftest.hpp"
#include "wunits/verifier.hpp"

using namespace wunits;
using nlohmann::ordered_json;

namespace {

struct Settings {
    PrecisionPolicy policy;
    std::string format;
    long jobs = 1;
};

std::optional<long> env_long(const char* name) {
    const char* v = std::getenv(name);
    if (!v || !*v) return std::nullopt;
    try {
        size_t used = 0;
        long x = std::stol(v, &used, 10);
        if (used != std::strlen(v)) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw domain_error(std::string("invalid integer in environment variable ") + name);
    }
}

// Flags win over the config file, the config file over WUNITS_PREC /
// WUNITS_GUARD, those over the built-in defaults.
Settings resolve_settings(const CLI::App* sub, long prec_flag, long guard_flag, long jobs_flag,
                          const std::string& format_flag, const std::string& config_flag,
                          const char* default_format) {
    FileConfig cfg;
    if (sub->count("--config"))
        cfg = parse_config_file(config_flag);
    else if (std::filesystem::exists("wunits.conf"))
        cfg = parse_config_file("wunits.conf");

    auto pick = [](bool has_flag, long flag, const std::optional<long>& file,
                   std::optional<long> env, long dflt) {
        if (has_flag) return flag;
        if (file) return *file;
        if (env) return *env;
        return dflt;
    };
    Settings s;
    s.policy.working_bits = pick(sub->count("--prec") > 0, prec_flag, cfg.prec,
                                 env_long("WUNITS_PREC"), 512);
    s.policy.guard_bits = pick(sub->count("--guard") > 0, guard_flag, cfg.guard,
                               env_long("WUNITS_GUARD"), 64);
    s.policy.validate();

    long hw = (long)std::thread::hardware_concurrency();
    s.jobs = pick(sub->count("--jobs") > 0, jobs_flag, cfg.jobs, std::nullopt,
                  hw > 0 ? hw : 1);
    if (s.jobs < 1) throw domain_error("--jobs must be >= 1");

    s.format = sub->count("--format") ? format_flag : cfg.format.value_or(default_format);
    if (s.format != "json" && s.format != "csv" && s.format != "text")
        throw domain_error("unknown format: " + s.format);
    return s;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw domain_error("cannot write output file: " + out_path);
    f << text;
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += "\"\"";
        else q.push_back(c);
    }
    return q + "\"";
}

// ---- eval ----------------------------------------------------------------

struct EvalArgs {
    std::string fn;
    std::string tau_lit;
    long tau_cm = 0;
    std::string vec;
    long m = 0, n = 0;
    long prec = 0, guard = 0, jobs = 0;
    std::string format, config, out;
};

int cmd_eval(const CLI::App* sub, const EvalArgs& a) {
    Settings s = resolve_settings(sub, a.prec, a.guard, a.jobs, a.format, a.config, "text");
    const PrecisionPolicy& pol = s.policy;

    bool has_lit = sub->count("--tau") > 0, has_cm = sub->count("--tau-cm") > 0;
    if (has_lit == has_cm)
        throw domain_error("exactly one of --tau and --tau-cm is required");
    Complex tau = has_cm ? make_field(a.tau_cm).theta(pol)
                         : parse_complex_literal(a.tau_lit, pol.working_bits);

    bool wants_vec = a.fn == "wp" || a.fn == "fricke" || a.fn == "siegel";
    if (wants_vec != (sub->count("--v") > 0))
        throw domain_error(wants_vec ? "--v a,b,N is required for " + a.fn
                                     : "--v only applies to wp, fricke, siegel");
    bool wants_mn = a.fn == "h";
    if (wants_mn != (sub->count("--m") > 0 && sub->count("--n") > 0))
        throw domain_error(wants_mn ? "--m and --n are required for h"
                                    : "--m/--n only apply to h");

    Complex value;
    if (a.fn == "eta") value = eta(tau, pol);
    else if (a.fn == "g2") value = eisenstein_g2g3(tau, pol).first;
    else if (a.fn == "g3") value = eisenstein_g2g3(tau, pol).second;
    else if (a.fn == "delta") value = delta(tau, pol);
    else if (a.fn == "j") value = j_invariant(tau, pol);
    else if (a.fn == "wp") value = wp_char(parse_char_vector(a.vec), tau, pol);
    else if (a.fn == "fricke") value = fricke(parse_char_vector(a.vec), tau, pol);
    else if (a.fn == "siegel") value = siegel(parse_char_vector(a.vec), tau, pol);
    else if (a.fn == "h") value = weierstrass_unit(a.m, a.n, tau, pol);
    else throw domain_error("unknown function: " + a.fn);

    std::string re = value.re().to_dec(), im = value.im().to_dec();
    std::ostringstream os;
    if (s.format == "text") {
        os << (im.size() && im[0] == '-' ? re + " - " + im.substr(1) : re + " + " + im)
           << "i  [base 10, precision " << pol.working_bits << " bits, guard " << pol.guard_bits
           << "]\n";
    } else if (s.format == "json") {
        ordered_json j;
        j["function"] = a.fn;
        j["value_re"] = re;
        j["value_im"] = im;
        j["precision_bits"] = pol.working_bits;
        j["guard_bits"] = pol.guard_bits;
        os << j.dump(2) << "\n";
    } else {
        os << "function,value_re,value_im,precision_bits,guard_bits\n"
           << a.fn << "," << re << "," << im << "," << pol.working_bits << ","
           << pol.guard_bits << "\n";
    }
    emit(os.str(), a.out);
    return 0;
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
    long d = 0, m = 0, n = 0;
    long absolute = 0;
    long prec = 0, guard = 0, jobs = 0;
    std::string format, config, out;
};

int cmd_verify(const CLI::App* sub, const VerifyArgs& a) {
    Settings s = resolve_settings(sub, a.prec, a.guard, a.jobs, a.format, a.config, "json");
    if (s.format != "json") throw domain_error("verify emits JSON certificates; use --format json");

    IQField K = make_field(a.d);
    auto viol = hypothesis_violations(K, a.m, a.n);
    Certificate cert = verify_pib(a.d, a.m, a.n, s.policy, a.absolute);
    emit(cert.to_json() + "\n", a.out);
    if (!viol.empty()) {
        for (const auto& v : viol) std::cerr << "invalid instance: " << v << "\n";
        return 2;
    }
    return cert.verdict == "pass" ? 0 : 1;
}

// ---- scan ------------------------------------------------------------------

struct ScanArgs {
    std::string ds, ms, ns;
    long prec = 0, guard = 0, jobs = 0;
    std::string format, config, out;
};

struct ScanRow {
    long d = 0, m = 0, n = 0;
    std::string status;  // ok | skipped | error
    std::optional<long> ell;
    std::string verdict, max_residual, detail;
};

ScanRow scan_one(long d, long m, long n, const PrecisionPolicy& pol) {
    ScanRow row;
    row.d = d;
    row.m = m;
    row.n = n;
    try {
        IQField K = make_field(d);
        auto viol = hypothesis_violations(K, m, n);
        if (!viol.empty()) {
            row.status = "skipped";
            std::string all;
            for (const auto& v : viol) all += (all.empty() ? "" : "; ") + v;
            row.detail = all;
            return row;
        }
        Certificate cert = verify_pib(d, m, n, pol);
        row.status = "ok";
        row.ell = cert.ell;
        row.verdict = cert.verdict;
        Real worst(128);
        std::string bad;
        for (const auto& c : cert.checks) {
            if (c.name != "conjugate_separation") {
                Real r = Real::from_string(c.residual, 128);
                if (r > worst) worst = r;
            }
            if (c.status != "pass") bad += (bad.empty() ? "" : "; ") + c.name + "=" + c.status;
        }
        row.max_residual = worst.to_sci(3);
        row.detail = bad;
    } catch (const std::exception& e) {
        row.status = "error";
        row.detail = e.what();
    }
    return row;
}

int cmd_scan(const CLI::App* sub, const ScanArgs& a) {
    Settings s = resolve_settings(sub, a.prec, a.guard, a.jobs, a.format, a.config, "csv");

    std::vector<long> ds = parse_long_list(a.ds), ms = parse_long_list(a.ms),
                      ns = parse_long_list(a.ns);
    std::vector<long> good_d;
    for (long d : ds) {
        try {
            make_field(d);
            good_d.push_back(d);
        } catch (const domain_error& e) {
            std::cerr << "warning: dropping d = " << d << ": " << e.what() << "\n";
        }
    }
    std::sort(good_d.begin(), good_d.end(),
              [](long x, long y) { return std::llabs(x) < std::llabs(y); });

    std::vector<std::array<long, 3>> grid;
    for (long d : good_d)
        for (long m : ms)
            for (long n : ns) grid.push_back({d, m, n});
    if (grid.empty()) std::cerr << "warning: no admissible instance in scan ranges\n";

    std::vector<ScanRow> rows(grid.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= grid.size()) return;
            rows[i] = scan_one(grid[i][0], grid[i][1], grid[i][2], s.policy);
        }
    };
    long nw = std::min<long>(s.jobs, (long)grid.size() ? (long)grid.size() : 1);
    std::vector<std::thread> pool;
    for (long k = 1; k < nw; ++k) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::ostringstream os;
    if (s.format == "csv") {
        os << "d,m,n,status,ell,verdict,max_residual,detail\n";
        for (const auto& r : rows)
            os << r.d << "," << r.m << "," << r.n << "," << r.status << ","
               << (r.ell ? std::to_string(*r.ell) : "") << "," << r.verdict << ","
               << r.max_residual << "," << csv_cell(r.detail) << "\n";
    } else if (s.format == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json j;
            j["d"] = r.d;
            j["m"] = r.m;
            j["n"] = r.n;
            j["status"] = r.status;
            if (r.ell) j["ell"] = *r.ell;
            else j["ell"] = nullptr;
            j["verdict"] = r.verdict;
            j["max_residual"] = r.max_residual;
            j["detail"] = r.detail;
            arr.push_back(std::move(j));
        }
        os << arr.dump(2) << "\n";
    } else {
        os << "d\tm\tn\tstatus\tell\tverdict\tmax_residual\tdetail\n";
        for (const auto& r : rows)
            os << r.d << "\t" << r.m << "\t" << r.n << "\t" << r.status << "\t"
               << (r.ell ? std::to_string(*r.ell) : "-") << "\t"
               << (r.verdict.empty() ? "-" : r.verdict) << "\t"
               << (r.max_residual.empty() ? "-" : r.max_residual) << "\t"
               << (r.detail.empty() ? "-" : r.detail) << "\n";
    }
    emit(os.str(), a.out);

    for (const auto& r : rows)
        if (r.status != "skipped" && r.verdict != "pass") return 1;
    return 0;
}

// ---- selftest ----------------------------------------------------------------

struct SelftestArgs {
    std::vector<std::string> suites;
    long prec = 0, guard = 0, jobs = 0;
    std::string format, config, out;
};

int cmd_selftest(const CLI::App* sub, const SelftestArgs& a) {
    Settings s = resolve_settings(sub, a.prec, a.guard, a.jobs, a.format, a.config, "text");
    std::vector<std::string> suites;
    for (const auto& entry : a.suites) {
        std::stringstream ss(entry);
        std::string part;
        while (std::getline(ss, part, ','))
            if (!part.empty()) suites.push_back(part);
    }
    auto results = run_selftests(suites, s.policy);

    bool all = true;
    std::ostringstream os;
    if (s.format == "text") {
        for (const auto& r : results) {
            os << (r.pass ? "PASS" : "FAIL") << " " << r.name << ": " << r.detail << "\n";
            all = all && r.pass;
        }
    } else if (s.format == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& r : results) {
            ordered_json j;
            j["suite"] = r.name;
            j["pass"] = r.pass;
            j["detail"] = r.detail;
            arr.push_back(std::move(j));
            all = all && r.pass;
        }
        os << arr.dump(2) << "\n";
    } else {
        os << "suite,pass,detail\n";
        for (const auto& r : results) {
            os << r.name << "," << (r.pass ? "true" : "false") << "," << csv_cell(r.detail)
               << "\n";
            all = all && r.pass;
        }
    }
    emit(os.str(), a.out);
    return all ? 0 : 1;
}

void add_common(CLI::App* sub, long& prec, long& guard, long& jobs, std::string& format,
                std::string& config, std::string& out) {
    sub->add_option("--prec", prec, "working precision in bits");
    sub->add_option("--guard", guard, "guard bits");
    sub->add_option("--jobs", jobs, "worker threads (scan)");
    sub->add_option("--format", format, "output format: json | csv | text");
    sub->add_option("--config", config, "key=value config file (default: ./wunits.conf)");
    sub->add_option("--out,-o", out, "write output to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"modular-function evaluation and unit certification at CM points"};
    app.name("wunits");
    app.require_subcommand(1);

    EvalArgs ea;
    CLI::App* ev = app.add_subcommand("eval", "evaluate a modular function at a point");
    ev->add_option("function", ea.fn, "eta | g2 | g3 | delta | j | wp | fricke | siegel | h")
        ->required();
    ev->add_option("--tau", ea.tau_lit, "complex literal, e.g. 2i or 0.3+1.25i");
    ev->add_option("--tau-cm", ea.tau_cm, "discriminant d; evaluate at theta_K");
    ev->add_option("--v", ea.vec, "character vector a,b,N for wp/fricke/siegel");
    ev->add_option("--m", ea.m, "index m for h");
    ev->add_option("--n", ea.n, "index n for h");
    add_common(ev, ea.prec, ea.guard, ea.jobs, ea.format, ea.config, ea.out);

    VerifyArgs va;
    CLI::App* vf = app.add_subcommand("verify", "produce a unit/power-basis certificate");
    vf->add_option("-d,--disc", va.d, "field discriminant")->required();
    vf->add_option("-m", va.m, "index m")->required();
    vf->add_option("-n", va.n, "index n")->required();
    vf->add_option("--absolute", va.absolute,
                   "also recognize alpha over Q at this degree bound (expensive)");
    add_common(vf, va.prec, va.guard, va.jobs, va.format, va.config, va.out);

    ScanArgs sa;
    CLI::App* sc = app.add_subcommand("scan", "verify a grid of instances");
    sc->add_option("--d", sa.ds, "discriminants, e.g. -23 or -23,-31")->required();
    sc->add_option("--m", sa.ms, "m values, e.g. 6 or 6,10-12")->required();
    sc->add_option("--n", sa.ns, "n values")->required();
    add_common(sc, sa.prec, sa.guard, sa.jobs, sa.format, sa.config, sa.out);

    SelftestArgs ta;
    CLI::App* st = app.add_subcommand("selftest", "run the built-in identity suites");
    st->add_option("--suite", ta.suites,
                   "suite filter (repeatable): delta_eta, wtog, pm, jseries, wp, wcount, algdep");
    add_common(st, ta.prec, ta.guard, ta.jobs, ta.format, ta.config, ta.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (ev->parsed()) return cmd_eval(ev, ea);
        if (vf->parsed()) return cmd_verify(vf, va);
        if (sc->parsed()) return cmd_scan(sc, sa);
        if (st->parsed()) return cmd_selftest(st, ta);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

// Command-line surface: presentations of BP*(PW_{n,k}), formal-group-law
// series, Adams operations, and equivariant-map obstruction scans. JSON on
// stdout by default; --pretty renders the text grammar.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bpst/acceptance.hpp"
#include "bpst/json_io.hpp"

namespace {

using namespace bpst;

long default_prime()
{
    if (const char* env = std::getenv("BPST_PRIME")) {
        long p = std::atol(env);
        if (p >= 2)
            return p;
    }
    return 2;
}

struct Output {
    std::string path;

    int emit(const std::string& text) const
    {
        if (path.empty()) {
            std::cout << text;
            return 0;
        }
        std::ofstream f(path);
        if (!f) {
            std::cerr << "cannot open " << path << "\n";
            return 1;
        }
        f << text;
        return 0;
    }
};

int run_present(long n, long k, long p, int xmax, const std::string& mode, bool pretty, const Output& out)
{
    SsConfig cfg(n, k, p, xmax);
    Presentation pr = presentation_closed_form(cfg);
    Json j = to_json(pr);
    bool agree = true;
    if (mode == "engine" || mode == "both") {
        Page einf = run_to_einfty(cfg);
        j["einfty"] = einfty_to_json(einf);
        j["window"] = cfg.window();
        if (mode == "both") {
            CrossCheckReport rep = cross_check(cfg);
            agree = rep.agree;
            j["agree"] = rep.agree;
            if (!rep.agree)
                j["discrepancy"] = rep.str();
        }
    }
    std::string text;
    if (pretty) {
        std::ostringstream os;
        os << "BP*(PW_" << n << "," << k << ") at p=" << p << ":\n";
        os << "  ideal: (";
        for (size_t i = 0; i < pr.ideal.size(); ++i)
            os << (i ? ", " : "") << pr.ideal[i].first.str() << "*x^" << pr.ideal[i].second;
        os << ")\n  gamma degrees:";
        for (long d : pr.gamma_degrees)
            os << " " << d;
        os << "\n  staircase:";
        for (long e : pr.staircase)
            os << " " << e;
        os << "\n";
        text = os.str();
    } else {
        text = j.dump() + "\n";
    }
    int rc = out.emit(text);
    return rc != 0 ? rc : (agree ? 0 : 1);
}

int run_series(const std::string& kind, long p, int xmax, int jorder, bool pretty, const Output& out)
{
    TruncationPolicy pol = TruncationPolicy::mod_j(p, jorder, xmax);
    Json j;
    j["kind"] = kind;
    j["p"] = p;
    j["xmax"] = xmax;
    j["jorder"] = jorder;
    std::string text;
    if (kind == "fgl") {
        BiSeries f = fgl_sum(pol);
        text = render(f);
        j["terms"] = series_to_json(f);
    } else {
        Series s(pol);
        if (kind == "log")
            s = log_series(pol);
        else if (kind == "exp")
            s = exp_series(pol);
        else if (kind.rfind("nseries:", 0) == 0)
            s = n_series(PLocal(std::atol(kind.c_str() + 8)), pol);
        else if (kind.rfind("adams:", 0) == 0)
            s = adams_series(PLocal(std::atol(kind.c_str() + 6)), pol);
        else {
            std::cerr << "unknown series kind: " << kind << "\n";
            return 2;
        }
        text = render(s);
        j["terms"] = series_to_json(s);
    }
    j["text"] = text;
    return out.emit(pretty ? text + "\n" : j.dump() + "\n");
}

int run_obstruct(long n, long k, long m, long l, bool with_constraint, bool pretty, const Output& out)
{
    ObstructionReport rep = evaluate(MapQuery(n, k, m, l));
    Json j = to_json(rep);
    if (with_constraint) {
        const CriterionResult* f = rep.first_firing();
        if (f && f->name == "bp_adams" && !f->witness.empty())
            j["constraint"] = to_json(derive_constraint(rep.query, std::get<long>(f->witness[0].second)));
    }
    if (pretty) {
        std::ostringstream os;
        os << "W_" << n << "," << k << " -> W_" << m << "," << l << ": " << to_string(rep.verdict);
        if (const CriterionResult* f = rep.first_firing())
            os << " [" << f->name << "]";
        os << "\n";
        return out.emit(os.str());
    }
    return out.emit(j.dump() + "\n");
}

bool parse_range(const std::string& s, ScanRange& r)
{
    auto colon = s.find(':');
    try {
        if (colon == std::string::npos) {
            r.lo = r.hi = std::stol(s);
        } else {
            r.lo = std::stol(s.substr(0, colon));
            r.hi = std::stol(s.substr(colon + 1));
        }
    } catch (...) {
        return false;
    }
    return r.lo >= 1 && r.lo <= r.hi;
}

int run_scan(const std::string& ns, const std::string& ks, const std::string& ms, const std::string& ls,
             const std::string& format, const Output& out)
{
    ScanRange nr, kr, mr, lr;
    if (!parse_range(ns, nr) || !parse_range(ks, kr) || !parse_range(ms, mr) || !parse_range(ls, lr)) {
        std::cerr << "ranges must be lo:hi with 1 <= lo <= hi\n";
        return 2;
    }
    std::vector<ObstructionReport> reports = scan(nr, kr, mr, lr);
    std::ostringstream os;
    if (format == "csv") {
        os << csv_header() << "\n";
        for (const auto& rep : reports)
            os << csv_row(rep) << "\n";
    } else {
        for (const auto& rep : reports)
            os << to_json(rep).dump() << "\n";
    }
    return out.emit(os.str());
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact BP-cohomology of complex projective Stiefel manifolds"};
    app.require_subcommand(1);
    bool pretty = false;
    Output out;
    app.add_flag("--pretty", pretty, "human-readable output instead of JSON");
    app.add_option("--out", out.path, "write output to a file instead of stdout");

    long p_default = default_prime();

    auto* present = app.add_subcommand("present", "presentation of BP*(PW_{n,k})");
    long pn = 0, pk = 0, pp = p_default;
    int pxmax = -1;
    bool use_engine = false, use_closed = false, use_both = false;
    present->add_option("n", pn, "frame dimension n")->required();
    present->add_option("k", pk, "frame count k")->required();
    present->add_option("p", pp, "prime");
    present->add_option("--xmax", pxmax, "x-degree truncation (default n+8)");
    present->add_flag("--engine", use_engine, "include the page-engine E_infty modules");
    present->add_flag("--closed-form", use_closed, "closed form only (default)");
    present->add_flag("--both", use_both, "run both and cross-check; exit 1 on disagreement");

    auto* series = app.add_subcommand("series", "formal group law series");
    std::string kind;
    long sp = p_default;
    int sxmax = 8, sjorder = 2;
    series->add_option("kind", kind, "log | exp | fgl | nseries:a | adams:a")->required();
    series->add_option("p", sp, "prime");
    series->add_option("xmax", sxmax, "x-degree truncation");
    series->add_option("jorder", sjorder, "J-adic order (2 = mod J^2)");

    auto* obstruct = app.add_subcommand("obstruct", "equivariant-map obstructions for one query");
    long on = 0, ok = 0, om = 0, ol = 0;
    bool with_constraint = false;
    obstruct->add_option("n", on)->required();
    obstruct->add_option("k", ok)->required();
    obstruct->add_option("m", om)->required();
    obstruct->add_option("l", ol)->required();
    obstruct->add_flag("--constraint", with_constraint, "derive the Adams constraint when bp_adams fires");

    auto* scan_cmd = app.add_subcommand("scan", "obstruction reports over rectangular ranges");
    std::string sn, sk, sm, sl, format = "json";
    scan_cmd->add_option("--n", sn, "n range lo:hi")->required();
    scan_cmd->add_option("--k", sk, "k range lo:hi")->required();
    scan_cmd->add_option("--m", sm, "m range lo:hi")->required();
    scan_cmd->add_option("--l", sl, "l range lo:hi")->required();
    scan_cmd->add_option("--format", format, "json (one report per line) or csv");

    auto* selfcheck = app.add_subcommand("selfcheck", "run the acceptance suites");
    bool quick = false;
    selfcheck->add_flag("--quick", quick, "trimmed ranges, finishes in seconds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (present->parsed()) {
            std::string mode = use_both ? "both" : use_engine ? "engine" : "closed-form";
            if (use_closed && use_engine) {
                std::cerr << "choose one of --engine / --closed-form / --both\n";
                return 2;
            }
            return run_present(pn, pk, pp, pxmax, mode, pretty, out);
        }
        if (series->parsed())
            return run_series(kind, sp, sxmax, sjorder, pretty, out);
        if (obstruct->parsed())
            return run_obstruct(on, ok, om, ol, with_constraint, pretty, out);
        if (scan_cmd->parsed())
            return run_scan(sn, sk, sm, sl, format, out);
        if (selfcheck->parsed()) {
            std::ostringstream os;
            bool okall = print_acceptance(os, run_acceptance(quick));
            int rc = out.emit(os.str());
            return rc != 0 ? rc : (okall ? 0 : 1);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

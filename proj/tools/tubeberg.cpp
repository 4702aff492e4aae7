// tubeberg: command-line front end.
//
//   tubeberg verify <suite> [--n --alpha --r --epsilon --samples --seed --workers --out]
//   tubeberg integrate --n --alpha --r --s --t --z --u --samples --seed
//   tubeberg lattice --n --r --epsilon --seed --out lattice.json [--csv centers.csv]
//   tubeberg measure analyze --in m.json --lattice l.json [--grid g.json] --out report.json
//   tubeberg toeplitz --in m.json --grid grid.json --out report.json [--csv eigenvalues.csv]
//
// Exit codes: 0 pass, 1 assertion failure, 2 usage or I/O error.

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tubeberg/tubeberg.hpp"

using namespace tubeberg;
using io::json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

class UsageError : public Error {
public:
    using Error::Error;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("TUBEBERG_SEED")) {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(env, &used);
            if (used != std::string(env).size()) throw std::invalid_argument(env);
            return v;
        } catch (const std::exception&) {
            throw UsageError(std::string("TUBEBERG_SEED is not an unsigned integer: '") + env + "'");
        }
    }
    return 0;
}

/// Accepts plain integers and scientific notation such as 1e6.
std::optional<std::uint64_t> parse_samples(const std::string& text) {
    if (text.empty()) return std::nullopt;
    double v = 0.0;
    try {
        std::size_t used = 0;
        v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
        throw UsageError("--samples must be a number, got '" + text + "'");
    }
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e15) throw UsageError("--samples must be a positive integer");
    return static_cast<std::uint64_t>(v);
}

/// Points on the command line: JSON ("[[0,1]]") or "re,im;re,im".
TubePoint parse_point(const std::string& text, std::size_t n) {
    if (text.empty()) return TubePoint::base(n);
    if (text.front() == '[') {
        try {
            return io::point_from_json(json::parse(text), n);
        } catch (const json::parse_error&) {
            throw UsageError("cannot parse point '" + text + "'");
        }
    }
    CVector v;
    std::stringstream all(text);
    std::string item;
    while (std::getline(all, item, ';')) {
        const auto comma = item.find(',');
        try {
            if (comma == std::string::npos) {
                v.emplace_back(std::stod(item), 0.0);
            } else {
                v.emplace_back(std::stod(item.substr(0, comma)), std::stod(item.substr(comma + 1)));
            }
        } catch (const std::exception&) {
            throw UsageError("cannot parse point '" + text + "'");
        }
    }
    if (v.size() != n) throw UsageError("point '" + text + "' does not have " + std::to_string(n) + " coordinates");
    return TubePoint(std::move(v));
}

void emit(const json& doc, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << doc.dump(2) << '\n';
    } else {
        io::write_json_file(out, doc);
    }
}

struct Common {
    std::optional<std::uint64_t> seed;
    std::string samples;
    unsigned workers = 1;
    std::string out;
};

void add_common(CLI::App* cmd, Common& c, bool with_samples = true) {
    cmd->add_option("--seed", c.seed, "RNG seed (falls back to TUBEBERG_SEED, then 0)");
    if (with_samples) cmd->add_option("--samples", c.samples, "Monte-Carlo sample count (1e6 accepted)");
    cmd->add_option("--workers", c.workers, "worker threads (results do not depend on it)")->check(CLI::Range(1u, 1024u));
    cmd->add_option("--out", c.out, "output file (stdout when omitted)");
}

int run_verify(const std::string& name, std::size_t n, double alpha, double r, double epsilon, const Common& c) {
    const suites::SuiteInfo* suite = suites::find_suite(name);
    if (!suite) {
        std::string known;
        for (const auto& s : suites::registry()) known += " " + s.name + (s.alias.empty() ? "" : "|" + s.alias);
        throw UsageError("unknown suite '" + name + "'; known suites:" + known);
    }
    suites::SuiteParams p;
    p.n = n;
    p.alpha = alpha;
    p.seed = resolve_seed(c.seed);
    p.samples = parse_samples(c.samples);
    p.workers = c.workers;
    p.r = r;
    p.epsilon = epsilon;
    (void)KernelParams(n, alpha);

    io::Stopwatch clock;
    const suites::SuiteResult res = suite->run(p);
    json checks = json::array();
    for (const auto& ch : res.checks) {
        checks.push_back(
            {{"name", ch.name}, {"value", ch.value}, {"bound", ch.bound}, {"passed", ch.passed}, {"margin", ch.margin()}});
        std::cerr << (ch.passed ? "  ok   " : "  FAIL ") << ch.name << ": " << io::fmt(ch.value) << " (bound "
                  << io::fmt(ch.bound) << ")\n";
    }
    io::RunManifest m{"verify",
                      {{"suite", suite->name},
                       {"n", n},
                       {"alpha", alpha},
                       {"r", r},
                       {"epsilon", epsilon},
                       {"samples", p.samples ? json(*p.samples) : json(nullptr)},
                       {"workers", c.workers}},
                      p.seed,
                      clock.seconds()};
    emit(io::with_manifest({{"suite", suite->name}, {"passed", res.passed()}, {"checks", std::move(checks)}},
                           "tubeberg.verify/1", m),
         c.out);
    std::cerr << suite->name << ": " << (res.passed() ? "PASS" : "FAIL") << '\n';
    return res.passed() ? kPass : kFail;
}

int run_integrate(std::size_t n, double alpha, double r, double s, std::optional<double> t, const std::string& z_text,
                  const std::string& u_text, const Common& c) {
    const RFParams rf{r, s, t.value_or(alpha)};
    const TubePoint z = parse_point(z_text, n);
    const TubePoint u = parse_point(u_text, n);
    const SamplerConfig cfg{parse_samples(c.samples).value_or(1'000'000), resolve_seed(c.seed), c.workers};
    io::Stopwatch clock;
    const IntegralEstimate est = rf_mc(n, rf, z, u, cfg);
    const cplx oracle = rf_exact(n, rf, z, u);
    const bool ok = est.consistent_with(oracle);
    json payload = io::estimate_to_json(est);
    payload["oracle"] = io::complex_to_json(oracle);
    payload["sigma_distance"] = est.sigma_distance(oracle);
    payload["relative_stderr"] = est.relative_error();
    payload["consistent"] = ok;
    io::RunManifest m{"integrate",
                      {{"n", n},
                       {"alpha", alpha},
                       {"r", r},
                       {"s", s},
                       {"t", rf.t},
                       {"z", io::point_to_json(z)},
                       {"u", io::point_to_json(u)},
                       {"samples", cfg.samples},
                       {"workers", c.workers}},
                      cfg.seed,
                      clock.seconds()};
    emit(io::with_manifest(std::move(payload), "tubeberg.integrate/1", m), c.out);
    return ok ? kPass : kFail;
}

int run_lattice(std::size_t n, double r, double epsilon, std::uint64_t candidates, std::uint64_t probes,
                const std::string& csv, const Common& c) {
    const std::uint64_t seed = resolve_seed(c.seed);
    LatticeOptions opts;
    opts.candidates = candidates;
    opts.multiplicity_probes = probes;
    opts.workers = c.workers;
    io::Stopwatch clock;
    const Lattice l = build_lattice(n, r, RegionSpec(epsilon), seed, opts);
    const bool separated = verify_separation(l);
    json payload = io::lattice_to_json(l);
    payload["separated"] = separated;
    io::RunManifest m{"lattice",
                      {{"n", n},
                       {"r", r},
                       {"epsilon", epsilon},
                       {"candidates", candidates},
                       {"multiplicity_probes", probes},
                       {"workers", c.workers}},
                      seed,
                      clock.seconds()};
    const std::string schema = payload.at("schema").get<std::string>();
    emit(io::with_manifest(std::move(payload), schema, m), c.out);
    if (!csv.empty()) io::write_text_file(csv, io::centers_csv(l));
    return separated ? kPass : kFail;
}

int run_measure(const std::string& in, const std::string& lattice_path, const std::string& grid_path,
                std::optional<double> p_exp, const Common& c) {
    const io::MeasureDocument md = io::load_measure(io::read_json_file(in));
    const Lattice l = io::load_lattice(io::read_json_file(lattice_path));
    if (l.n != md.kp.n) throw FormatError("lattice dimension does not match the measure");
    std::vector<TubePoint> grid;
    if (grid_path.empty()) {
        grid = l.centers;
        for (const auto& a : md.mu.atoms()) grid.push_back(a.point);
    } else {
        grid = io::load_grid(io::read_json_file(grid_path), md.kp.n);
    }
    if (p_exp) (void)PExponent(*p_exp);
    const SamplerConfig cfg{parse_samples(c.samples).value_or(100'000), resolve_seed(c.seed), c.workers};
    io::Stopwatch clock;
    const CarlesonReport rep = carleson_report(md.mu, l, grid, md.kp, cfg);
    const VanishingProfile prof = vanishing_profile(md.mu, l, md.kp);
    json payload = io::carleson_to_json(rep);
    payload["vanishing"] = io::vanishing_to_json(prof);
    payload["atoms"] = md.mu.size();
    payload["total_mass"] = md.mu.total_mass();
    const bool finite = std::isfinite(rep.sup_berezin) && std::isfinite(rep.sup_averaging) &&
                        std::isfinite(rep.sup_condition2) && std::isfinite(rep.sup_lattice);
    payload["finite"] = finite;
    io::RunManifest m{"measure analyze",
                      {{"in", in},
                       {"lattice", lattice_path},
                       {"grid", grid_path.empty() ? json("lattice centers and atoms") : json(grid_path)},
                       {"n", md.kp.n},
                       {"alpha", md.kp.alpha},
                       {"p", p_exp ? json(*p_exp) : json(nullptr)},
                       {"samples", cfg.samples},
                       {"workers", c.workers}},
                      cfg.seed,
                      clock.seconds()};
    emit(io::with_manifest(std::move(payload), "tubeberg.measure-report/1", m), c.out);
    return finite ? kPass : kFail;
}

int run_toeplitz(const std::string& in, const std::string& grid_path, const std::string& csv, const Common& c) {
    const io::MeasureDocument md = io::load_measure(io::read_json_file(in));
    const std::vector<TubePoint> grid = io::load_grid(io::read_json_file(grid_path), md.kp.n);
    const std::uint64_t seed = resolve_seed(c.seed);
    EigenOptions eo;
    eo.seed = seed;
    io::Stopwatch clock;
    const ToeplitzModel tm = build_model(md.mu, md.kp);
    const EigenPair top = hermitian_top_eig(tm.core, eo);
    const std::vector<double> ev = spectral_profile(tm, eo);
    double sup = 0.0, err = 0.0;
    std::size_t argmax = 0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double direct = berezin(md.mu, grid[g], md.kp);
        const double via = berezin_via_operator(tm, grid[g]);
        if (direct > sup) {
            sup = direct;
            argmax = g;
        }
        if (direct > 0.0) err = std::max(err, std::abs(via - direct) / direct);
    }
    const double norm = md.mu.empty() ? 0.0 : top.value;
    const bool ok = err <= 1e-12 && sup <= norm * (1.0 + 1e-9);
    json payload{{"norm", norm},
                 {"eigenvalues", ev},
                 {"berezin_sup", sup},
                 {"berezin_argmax", argmax},
                 {"consistency_max_err", err},
                 {"residual", top.residual},
                 {"coincident_pairs", tm.coincident},
                 {"passed", ok}};
    io::RunManifest m{"toeplitz",
                      {{"in", in}, {"grid", grid_path}, {"n", md.kp.n}, {"alpha", md.kp.alpha}, {"atoms", md.mu.size()}},
                      seed,
                      clock.seconds()};
    emit(io::with_manifest(std::move(payload), "tubeberg.toeplitz/1", m), c.out);
    if (!csv.empty()) io::write_text_file(csv, io::eigenvalues_csv(ev));
    return ok ? kPass : kFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted Bergman kernels on a tubular domain: integrals, lattices, Carleson diagnostics and "
                 "Toeplitz operators."};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("tubeberg ") + io::kVersion);

    std::size_t n = 1;
    double alpha = 0.0;
    double r = 1.0;
    double epsilon = 0.5;
    Common common;

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    bool list = false;
    verify->add_option("suite", suite, "suite name or alias");
    verify->add_flag("--list", list, "list suites and exit");
    verify->add_option("--n", n, "complex dimension")->check(CLI::Range(1, 16));
    verify->add_option("--alpha", alpha, "weight exponent (> -1)");
    verify->add_option("--r", r, "lattice radius");
    verify->add_option("--epsilon", epsilon, "lattice region parameter");
    add_common(verify, common);

    auto* integ = app.add_subcommand("integrate", "Monte-Carlo reproducing integral against its closed form");
    double rr = 0.0, ss = 0.0;
    std::optional<double> tt;
    std::string z_text, u_text;
    integ->add_option("--n", n, "complex dimension")->check(CLI::Range(1, 16));
    integ->add_option("--alpha", alpha, "weight exponent, used for --t when --t is omitted");
    integ->add_option("--r", rr, "exponent of rho(z,w)")->required();
    integ->add_option("--s", ss, "exponent of rho(w,u)")->required();
    integ->add_option("--t", tt, "weight exponent of dV_t");
    integ->add_option("--z", z_text, "point z as [[re,im],...] or re,im;re,im (default i)");
    integ->add_option("--u", u_text, "point u (default i)");
    add_common(integ, common);

    auto* lat = app.add_subcommand("lattice", "build an r-lattice of the region rho in (eps, 1/eps)");
    std::uint64_t candidates = LatticeOptions{}.candidates;
    std::uint64_t probes = LatticeOptions{}.multiplicity_probes;
    std::string csv;
    lat->add_option("--n", n, "complex dimension")->check(CLI::Range(1, 16));
    lat->add_option("--r", r, "lattice radius in (0, 1]");
    lat->add_option("--epsilon", epsilon, "region parameter in (0, 1)");
    lat->add_option("--candidates", candidates, "greedy candidate count");
    lat->add_option("--probes", probes, "multiplicity probes");
    lat->add_option("--csv", csv, "also write centers as CSV");
    add_common(lat, common, false);

    auto* measure = app.add_subcommand("measure", "measure diagnostics");
    measure->require_subcommand(1);
    auto* analyze = measure->add_subcommand("analyze", "Carleson and vanishing diagnostics of an atomic measure");
    std::string in, lattice_path, grid_path;
    std::optional<double> p_exp;
    analyze->add_option("--in", in, "measure JSON")->required();
    analyze->add_option("--lattice", lattice_path, "lattice JSON")->required();
    analyze->add_option("--grid", grid_path, "grid JSON (default: lattice centers and atoms)");
    analyze->add_option("--p", p_exp, "exponent p > 1, validated and recorded with the report");
    add_common(analyze, common);

    auto* toep = app.add_subcommand("toeplitz", "finite-rank Toeplitz operator report");
    toep->add_option("--in", in, "measure JSON")->required();
    toep->add_option("--grid", grid_path, "grid JSON")->required();
    toep->add_option("--csv", csv, "also write eigenvalues as CSV");
    add_common(toep, common, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (*verify) {
            if (list) {
                for (const auto& s : suites::registry()) {
                    std::cout << s.name << (s.alias.empty() ? "" : " (" + s.alias + ")") << "  " << s.summary << '\n';
                }
                return kPass;
            }
            if (suite.empty()) throw UsageError("verify: missing suite name (see --list)");
            return run_verify(suite, n, alpha, r, epsilon, common);
        }
        if (*integ) return run_integrate(n, alpha, rr, ss, tt, z_text, u_text, common);
        if (*lat) return run_lattice(n, r, epsilon, candidates, probes, csv, common);
        if (*analyze) return run_measure(in, lattice_path, grid_path, p_exp, common);
        if (*toep) return run_toeplitz(in, grid_path, csv, common);
    } catch (const ConsistencyError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFail;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

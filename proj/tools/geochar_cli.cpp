#include <geochar/geochar.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <regex>
#include <sstream>

using namespace geochar;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFail = 2;

struct Global {
    unsigned threads = 1;
    std::string out;
    bool timing = false;
    bool json = false;
    std::optional<double> tol;  ///< overrides the suite tolerance

    double tolerance(double fallback) const { return tol.value_or(fallback); }
};

class UsageError : public Error {
public:
    using Error::Error;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(item);
    return out;
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    for (const auto& item : split_list(s)) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw UsageError("bad number '" + item + "'");
        } catch (const std::logic_error&) {
            throw UsageError("bad number '" + item + "'");
        }
    }
    return out;
}

Rational parse_rational(const std::string& s) {
    static const std::regex re(R"(\s*([+-]?\d+)(?:/(\d+))?\s*)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw UsageError("bad rational '" + s + "'");
    return m[2].matched ? Rational(std::stoll(m[1]), std::stoll(m[2])) : Rational(std::stoll(m[1]));
}

Weight parse_weight(const std::string& s) {
    std::vector<Rational> c;
    for (const auto& item : split_list(s)) c.push_back(parse_rational(item));
    return Weight(std::move(c));
}

double parse_real(const std::string& s, const std::string& whole) {
    if (s.empty() || s == "+") return 1;
    if (s == "-") return -1;
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos == s.size()) return v;
    } catch (const std::logic_error&) {
    }
    throw UsageError("bad complex number '" + whole + "'");
}

/** "0", "0.5i", "-2", "0.3+0.5i", "1-2i", "i". */
Complex parse_complex(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
    const std::string whole = s;
    if (s.empty()) throw UsageError("empty complex number");
    if (s.back() != 'i') {
        if (s == "+" || s == "-") throw UsageError("bad complex number '" + whole + "'");
        return {parse_real(s, whole), 0};
    }
    s.pop_back();
    // the imaginary part starts at the last sign that is not an exponent sign
    std::size_t cut = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;)
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            cut = k;
            break;
        }
    if (cut == std::string::npos) return {0, parse_real(s, whole)};
    const std::string re = s.substr(0, cut);
    if (re.empty() || re == "+" || re == "-") throw UsageError("bad complex number '" + whole + "'");
    return {parse_real(re, whole), parse_real(s.substr(cut), whole)};
}

/** "a..b" or "a". */
std::pair<long long, long long> parse_range(const std::string& s) {
    static const std::regex re(R"((\d+)(?:\.\.(\d+))?)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw UsageError("bad range '" + s + "' (expected a..b)");
    const long long a = std::stoll(m[1]), b = m[2].matched ? std::stoll(m[2]) : a;
    if (b < a) throw UsageError("empty range '" + s + "'");
    return {a, b};
}

OrbitLabel parse_side(const std::string& s) {
    if (s == "upper") return OrbitLabel::UpperHalfPlane;
    if (s == "lower") return OrbitLabel::LowerHalfPlane;
    if (s == "circle") return OrbitLabel::RealCircle;
    throw UsageError("unknown orbit '" + s + "' (upper|lower|circle)");
}

std::string format_number(double v) {
    if (v == 0) v = 0;  // no negative zero
    std::ostringstream os;
    os << std::setprecision(10) << v;
    std::string s = os.str();
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

std::string format_value(Complex z) {
    const double scale = std::max(1.0, std::abs(z));
    const double re = std::abs(z.real()) < 1e-13 * scale ? 0.0 : z.real();
    if (std::abs(z.imag()) <= 1e-12 * scale) return format_number(re);
    return format_number(re) + (z.imag() < 0 ? "-" : "+") + format_number(std::abs(z.imag())) + "i";
}

void emit(const Global& g, const Json& doc) {
    const std::string text = doc.dump(2) + "\n";
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out);
    if (!f) throw UsageError("cannot open '" + g.out + "' for writing");
    f << text;
}

int finish(const Global& g, Json doc, bool pass) {
    doc["pass"] = pass;
    emit(g, doc);
    return pass ? kExitPass : kExitFail;
}

Quad2Options quad_with(Quad2Options q, const Global& g) {
    q.exec.threads = g.threads;
    return q;
}

PairingOptions pairing_options(const Global& g) {
    PairingOptions p;
    p.quad = quad_with(p.quad, g);
    return p;
}

CycleIntegralOptions cycle_options(const Global& g) {
    CycleIntegralOptions c;
    c.quad = quad_with(c.quad, g);
    return c;
}

// ---- char -------------------------------------------------------------------------------

struct CartanArgs {
    std::string cartan = "compact";
    double theta = 0;
    int eps = 1;
    double s = 0;
    std::string zeta;

    CartanElement element() const {
        if (cartan == "compact") return CartanElement::compact(theta);
        if (cartan == "split") {
            if (eps != 1 && eps != -1) throw UsageError("--eps must be +1 or -1");
            return CartanElement::split(eps, s);
        }
        throw UsageError("unknown cartan '" + cartan + "' (compact|split)");
    }
};

void add_cartan_options(CLI::App* app, CartanArgs& a) {
    app->add_option("--cartan", a.cartan, "compact or split")->capture_default_str();
    app->add_option("--theta", a.theta, "compact angle");
    app->add_option("--eps", a.eps, "split component, +1 or -1");
    app->add_option("--s", a.s, "split parameter");
    app->add_option("--zeta", a.zeta, "Lie algebra point x,y,z of [[x,y],[z,-x]]; prints the algebra value instead");
}

int print_value(const Global& g, const std::string& kind, Complex v, Json params) {
    if (g.json) {
        Json doc = report_envelope(kind);
        doc["parameters"] = std::move(params);
        doc["value"] = to_json(v);
        emit(g, doc);
    } else if (g.out.empty()) {
        std::cout << format_value(v) << "\n";
    } else {
        std::ofstream f(g.out);
        f << format_value(v) << "\n";
    }
    return kExitPass;
}

int sl2_value(const Global& g, const std::string& kind, const LocalExpression& e, const CartanArgs& a, Json params) {
    if (!a.zeta.empty()) {
        const auto c = parse_doubles(a.zeta);
        if (c.size() != 3) throw UsageError("--zeta needs three coordinates x,y,z");
        params["zeta"] = c;
        return print_value(g, kind + ".algebra", evaluate_algebra(e, Sl2{c[0], c[1], c[2]}), params);
    }
    const CartanElement t = a.element();
    params["element"] = to_json(t);
    return print_value(g, kind, evaluate_group(e, t), params);
}

// ---- verify -----------------------------------------------------------------------------

double rel_error(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

VerificationRecord record(std::string name, Complex lhs, Complex rhs, double tail, double ms, double tol) {
    const double e = rel_error(lhs, rhs);
    return {std::move(name), lhs, rhs, e, tail, ms, e <= tol};
}

std::vector<double> kirillov_grid(std::size_t n) {
    std::vector<double> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(0.05 + double(i) * (2 * std::numbers::pi - 0.1) / double(n - 1));
    return out;
}

int verify_kirillov(const Global& g, const std::string& range) {
    const auto [lo, hi] = parse_range(range);
    if (hi > 8) throw UsageError("kirillov supports m <= 8");
    Json doc = report_envelope("verify.kirillov");
    const double tol = g.tolerance(1e-6);
    doc["tolerance"] = tol;
    Json per_m = Json::array();
    bool pass = true;
    for (long long m = lo; m <= hi; ++m) {
        const auto rep = kirillov_su2_check(m, kirillov_grid(50), cycle_options(g));
        Json j = to_json(rep);
        j["m"] = m;
        pass = pass && rep.max_deviation <= tol;
        per_m.push_back(std::move(j));
    }
    doc["results"] = per_m;
    return finish(g, doc, pass);
}

template <class Cases>
int verify_records(const Global& g, const std::string& kind, Cases&& run) {
    Json doc = report_envelope(kind);
    doc["tolerance"] = g.tolerance(1e-3);
    Json recs = Json::array();
    bool pass = true;
    for (const auto& r : run()) {
        recs.push_back(to_json(r, g.timing));
        pass = pass && r.pass;
    }
    doc["records"] = recs;
    return finish(g, doc, pass);
}

int verify_rossmann(const Global& g, const std::string& range, std::size_t battery) {
    const auto [lo, hi] = parse_range(range);
    if (lo < 1) throw UsageError("rossmann needs k >= 1");
    return verify_records(g, "verify.rossmann", [&] {
        std::vector<VerificationRecord> out;
        for (long long k = lo; k <= hi; ++k)
            for (const auto& phi : gaussian_battery(battery)) {
                const auto start = std::chrono::steady_clock::now();
                const auto orbit = rossmann_orbit_integral(OrbitLabel::UpperHalfPlane, Complex(-double(k)), phi, cycle_options(g));
                const auto pair = pair_algebra(discrete_series(k), phi, pairing_options(g));
                out.push_back(record("k=" + std::to_string(k) + " " + phi.id(), orbit.value, pair.value, orbit.tail_estimate,
                                     elapsed_ms(start), g.tolerance(1e-3)));
                out.back().pass = out.back().pass && orbit.converged && pair.converged;
            }
        return out;
    });
}

int verify_integral_formula(const Global& g, const std::string& which, std::size_t battery) {
    if (which != "ds" && which != "ps") throw UsageError("--case must be ds or ps");
    return verify_records(g, "verify.integral-formula", [&] {
        std::vector<VerificationRecord> out;
        auto push = [&](std::string name, const Cycle& c, const LocalExpression& e, const TestFunction& phi) {
            const auto start = std::chrono::steady_clock::now();
            const auto cyc = integrate_character_cycle(c, phi, cycle_options(g));
            const auto pair = pair_algebra(e, phi, pairing_options(g));
            out.push_back(record(std::move(name), cyc.value, pair.value, cyc.tail_estimate, elapsed_ms(start), g.tolerance(1e-3)));
            out.back().pass = out.back().pass && cyc.converged && pair.converged;
            return cyc.value;
        };
        for (const auto& phi : gaussian_battery(battery)) {
            if (which == "ds") {
                for (long long k : {1, 2}) {
                    const Complex l(-double(k));
                    const std::string tag = "k=" + std::to_string(k) + " " + phi.id();
                    const Complex a = push("dlogf " + tag, dlogf_graph_cycle(OrbitLabel::UpperHalfPlane, l), discrete_series(k), phi);
                    const Complex b = push("orbit " + tag, omega_orbit_cycle(OrbitLabel::UpperHalfPlane, l), discrete_series(k), phi);
                    out.push_back(record("dlogf vs orbit " + tag, a, b, 0, 0, g.tolerance(1e-3)));
                }
            } else {
                for (Complex nu : {Complex(0), Complex(0, 0.5), Complex(0, 1.0)})
                    push("nu=" + format_value(nu) + " " + phi.id(), conormal_circle_cycle(nu), induced_expression(1, nu), phi);
            }
        }
        return out;
    });
}

int verify_pullback(const Global& g, std::size_t points, std::uint64_t seed) {
    const auto sweep = pullback_sweep(points, seed);
    Json doc = report_envelope("verify.prop33");
    doc["points"] = sweep.points;
    doc["seed"] = seed;
    doc["max_residual"] = sweep.max_residual;
    doc["tolerance"] = g.tolerance(1e-10);
    return finish(g, doc, sweep.max_residual <= g.tolerance(1e-10));
}

int verify_eigen(const Global& g, const std::string& which, std::size_t battery) {
    if (which != "ds" && which != "ps") throw UsageError("--case must be ds or ps");
    Json doc = report_envelope("verify.eigen");
    Json cases = Json::array();
    bool pass = true;
    auto run = [&](const std::string& name, const LocalExpression& e) {
        const auto rep = verify_eigendistribution(e, e.lambda_h, gaussian_battery(battery), g.tolerance(1e-3), pairing_options(g));
        Json j = to_json(rep);
        j["case"] = name;
        pass = pass && rep.pass;
        cases.push_back(std::move(j));
    };
    if (which == "ds") {
        for (long long k = 1; k <= 3; ++k) run("ds k=" + std::to_string(k), discrete_series(k));
    } else {
        for (Complex nu : {Complex(0), Complex(0, 0.5), Complex(0, 1.0)}) run("ps nu=" + format_value(nu), induced_expression(1, nu));
    }
    doc["cases"] = cases;
    return finish(g, doc, pass);
}

int verify_coherent_suite(const Global& g) {
    Json doc = report_envelope("verify.coherent");
    const auto ds = verify_coherence(discrete_series_family(1), {{Weight{1}, Weight{-2}, coherence_samples(Group::SL2R, 50)},
                                                                 {Weight{2}, Weight{-3}, coherence_samples(Group::SL2R, 50)}},
                                    g.tolerance(1e-9));
    const auto su2 = verify_coherence(su2_family(1), {{Weight{1}, Weight{2}, coherence_samples(Group::SU2, 100)},
                                                      {Weight{1}, Weight{4}, coherence_samples(Group::SU2, 100)}},
                                    g.tolerance(1e-9));
    doc["discrete_series_family"] = to_json(ds);
    doc["su2_family"] = to_json(su2);
    return finish(g, doc, ds.pass && su2.pass);
}

// ---- cycles -----------------------------------------------------------------------------

int cycles_dump(const Global& g, const std::string& kind, const std::string& side, const std::string& lambda, double r,
                unsigned na, unsigned nb) {
    if (g.out.empty()) throw UsageError("cycles dump needs --out file.csv");
    const Complex l = parse_complex(lambda);
    Cycle c = [&] {
        if (kind == "conormal") return conormal_circle_cycle(l);
        if (kind == "dlogf") return dlogf_graph_cycle(parse_side(side), l);
        if (kind == "orbit") return omega_orbit_cycle(parse_side(side), l);
        throw UsageError("unknown cycle '" + kind + "' (conormal|dlogf|orbit)");
    }();
    std::ofstream f(g.out);
    if (!f) throw UsageError("cannot open '" + g.out + "' for writing");
    write_cycle_csv(f, sample_cycle(c, r, na, nb, Exec{g.threads}));
    return kExitPass;
}

const char* kFooter = R"(
Exit status: 0 when every requested check passes, 2 on a tolerance failure, 1 on usage errors.
Reports are JSON objects with "schema": "1"; complex numbers are {"re", "im"}.
runtime_ms is null unless --timing is given, so identical flags give identical bytes.

cycles dump CSV columns, one row per sample of the parameter grid:
  a, b            cycle parameters (a: base angle, b: fibre coordinate)
  z_re, z_im      base point in the z chart; z_inf = 1 at infinity (z columns then 0)
  xi_re, xi_im    cotangent fibre coordinate in the z chart
  eta00..eta11    twisted moment value mu_lambda (2x2 complex, _re/_im)
  density_re/_im  (-sigma + tau_lambda) on the oriented parameter frame
)";

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Characters of reductive groups by fixed-point and cycle-integral formulas", "geochar"};
    app.footer(kFooter);
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--threads", g.threads, "worker cap for quadrature")->check(CLI::Range(1u, 256u));
    app.add_option("--out", g.out, "write the report (or CSV) to this file instead of stdout");
    app.add_flag("--timing", g.timing, "fill runtime_ms in verification records");
    app.add_flag("--json", g.json, "char: print a JSON document instead of the bare value");

    std::function<int()> action;

    auto* chr = app.add_subcommand("char", "character values")->require_subcommand(1);
    std::string type, lambda = "0", theta;
    auto* weyl = chr->add_subcommand("weyl", "compact Weyl character at a torus point");
    weyl->add_option("--type", type, "A1, A2, B2, G2, ...")->required();
    weyl->add_option("--lambda", lambda, "dominant weight, fundamental coordinates a,b,...")->required();
    weyl->add_option("--theta", theta, "torus angles, one per rank")->required();
    weyl->callback([&] {
        action = [&] {
            const auto rs = build_root_system(type);
            const auto w = parse_weight(lambda);
            const auto th = parse_doubles(theta);
            Json params{{"type", type}, {"lambda", w.str()}, {"theta", th}};
            return print_value(g, "char.weyl", weyl_character(rs, w, th), params);
        };
    });

    long long k = 1;
    std::string side = "upper";
    CartanArgs ds_args;
    auto* ds = chr->add_subcommand("ds", "SL(2,R) discrete series with lambda = -k omega");
    ds->add_option("--k", k, "k >= 1")->capture_default_str();
    ds->add_option("--side", side, "upper or lower")->capture_default_str();
    add_cartan_options(ds, ds_args);
    ds->callback([&] {
        action = [&] {
            const auto e = discrete_series(k, parse_side(side));
            return sl2_value(g, "char.ds", e, ds_args, Json{{"k", k}, {"side", side}});
        };
    });

    std::string nu = "0";
    int chif = 1;
    CartanArgs ps_args;
    auto* ps = chr->add_subcommand("ps", "SL(2,R) principal series");
    ps->add_option("--nu", nu, "complex parameter, e.g. 0.5i")->capture_default_str();
    ps->add_option("--chif", chif, "+1 or -1")->capture_default_str();
    add_cartan_options(ps, ps_args);
    ps->callback([&] {
        action = [&] {
            const Complex v = parse_complex(nu);
            if (chif != 1 && chif != -1) throw UsageError("--chif must be +1 or -1");
            return sl2_value(g, "char.ps", induced_expression(chif, v), ps_args, Json{{"nu", to_json(v)}, {"chi_F", chif}});
        };
    });

    std::string sheaf, coeff_lambda;
    int coeff_chif = 1;
    auto* coeffs = app.add_subcommand("coeffs", "fixed-point coefficient table of a standard sheaf");
    coeffs->add_option("--sheaf", sheaf, "upper, lower or circle")->required();
    coeffs->add_option("--lambda", coeff_lambda, "lambda(H), complex on the circle")->required();
    coeffs->add_option("--chif", coeff_chif, "circle only: +1 or -1")->capture_default_str();
    coeffs->callback([&] {
        action = [&] {
            const OrbitLabel o = parse_side(sheaf);
            const Complex l = parse_complex(coeff_lambda);
            if (coeff_chif != 1 && coeff_chif != -1) throw UsageError("--chif must be +1 or -1");
            const auto f = o == OrbitLabel::RealCircle ? circle_sheaf(l, coeff_chif) : open_orbit_sheaf(o, l);
            Json doc = report_envelope("coefficients");
            doc["lambda"] = to_json(l);
            doc["rows"] = coefficient_table(sheaf, sheaf_expression(f),
                                            o == OrbitLabel::RealCircle ? std::optional<int>(coeff_chif) : std::nullopt);
            emit(g, doc);
            return kExitPass;
        };
    });

    auto* verify = app.add_subcommand("verify", "verification suites")->require_subcommand(1);
    verify->add_option("--tol", g.tol, "override the suite tolerance")->check(CLI::PositiveNumber);
    std::string mrange = "0..5", krange = "1..3", which = "ds";
    std::size_t battery_if = 5, battery_eigen = 10, battery_ross = 2, points = 1000;
    std::uint64_t seed = 1;
    verify->add_subcommand("kirillov", "SU(2) orbit integrals against j^{1/2} chi_m")
        ->callback([&] { action = [&] { return verify_kirillov(g, mrange); }; })
        ->add_option("--m", mrange, "range a..b, at most 8")->capture_default_str();
    auto* ross = verify->add_subcommand("rossmann", "elliptic orbit integrals against the discrete-series pairing");
    ross->add_option("--k", krange, "range a..b")->capture_default_str();
    ross->add_option("--battery", battery_ross, "number of gaussians")->capture_default_str();
    ross->callback([&] { action = [&] { return verify_rossmann(g, krange, battery_ross); }; });
    auto* integral = verify->add_subcommand("integral-formula", "cycle integrals against the Lie-algebra pairing");
    integral->add_option("--case", which, "ds or ps")->capture_default_str();
    integral->add_option("--battery", battery_if, "number of gaussians")->capture_default_str();
    integral->callback([&] { action = [&] { return verify_integral_formula(g, which, battery_if); }; });
    auto* p33 = verify->add_subcommand("prop33", "pullback of the orbit form by the twisted moment map");
    p33->add_option("--points", points, "random points")->capture_default_str();
    p33->add_option("--seed", seed, "sampler seed")->capture_default_str();
    p33->callback([&] { action = [&] { return verify_pullback(g, points, seed); }; });
    auto* eig = verify->add_subcommand("eigen", "invariant eigendistribution residuals");
    eig->add_option("--case", which, "ds or ps")->capture_default_str();
    eig->add_option("--battery", battery_eigen, "number of gaussians")->capture_default_str();
    eig->callback([&] { action = [&] { return verify_eigen(g, which, battery_eigen); }; });
    verify->add_subcommand("coherent", "coherent continuation and translation")->callback([&] {
        action = [&] { return verify_coherent_suite(g); };
    });

    auto* cycles = app.add_subcommand("cycles", "cycle samples")->require_subcommand(1);
    std::string cycle_kind = "conormal", cycle_lambda = "-1";
    double radius = 8;
    unsigned na = 32, nb = 16;
    auto* dump = cycles->add_subcommand("dump", "write cycle samples as CSV (columns below)");
    dump->add_option("--cycle", cycle_kind, "conormal, dlogf or orbit")->capture_default_str();
    dump->add_option("--side", side, "upper or lower (dlogf, orbit)")->capture_default_str();
    dump->add_option("--lambda", cycle_lambda, "lambda(H)")->capture_default_str();
    dump->add_option("--r", radius, "fibre truncation radius")->capture_default_str();
    dump->add_option("--na", na, "samples along the base")->capture_default_str();
    dump->add_option("--nb", nb, "samples along the fibre")->capture_default_str();
    dump->callback([&] { action = [&] { return cycles_dump(g, cycle_kind, side, cycle_lambda, radius, na, nb); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "geochar: " << e.what() << "\n" << "run 'geochar --help' for usage\n";
        return kExitUsage;
    }
    try {
        return action ? action() : kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "geochar: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "geochar: " << e.what() << "\n";
        return kExitUsage;
    }
}

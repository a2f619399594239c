/**
 * @file eigendist.hpp
 * @brief Invariant eigendistributions in local-expression form.
 *
 * A local expression stores, per (Cartan, component, fixed point), a coefficient d
 * against the reference branch. For a Cartan element t with fixed point x let
 * a_x(t) be the logarithm of the tangent character e^{alpha_x}(t) on the branch
 *   compact: a_{x0} = 2 i theta_b, a_{x1} = -2 i theta_b, theta_b = theta on the
 *            sign + component and theta - 2 pi on the sign - component;
 *   split:   a_0 = 2 s, a_inf = -2 s (both eps components).
 * With l = lambda(H) the group value is
 *   sum_x d_x exp((l - 1) a_x / 2) / (1 - exp(-a_x)),
 * and on the Lie algebra sum_x d_x exp(l a_x / 2) / a_x, a_x = alpha_x(zeta).
 */
#pragma once

#include <geochar/quadrature.hpp>
#include <geochar/real_structure.hpp>
#include <geochar/test_function.hpp>

#include <map>
#include <optional>
#include <tuple>

namespace geochar {

/** Fixed point index 0/1: SL2R compact (i, -i), split (0, inf); SU2 (0, inf). */
struct CoefficientKey {
    CartanKind cartan;
    Component component;
    int fixed_point;
    friend auto operator<=>(const CoefficientKey&, const CoefficientKey&) = default;
};

/** The point of P^1 fixed by the Cartan, nullopt for infinity. */
inline std::optional<Complex> fixed_point_location(Group g, CartanKind k, int index) {
    if (g == Group::SL2R && k == CartanKind::Compact) return index == 0 ? Complex(0, 1) : Complex(0, -1);
    if (index == 0) return Complex(0, 0);
    return std::nullopt;
}

inline std::string fixed_point_name(Group g, CartanKind k, int index) {
    if (g == Group::SL2R && k == CartanKind::Compact) return index == 0 ? "i" : "-i";
    return index == 0 ? "0" : "inf";
}

/** Regular components of each Cartan. */
inline std::vector<Component> components(Group g, CartanKind k) {
    if (k == CartanKind::Compact || g == Group::SU2) return {{1, 1}, {1, -1}};
    return {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
}

inline std::vector<CoefficientKey> all_keys(Group g) {
    std::vector<CoefficientKey> keys;
    for (const auto& c : classify_cartans(g))
        for (const auto& comp : components(g, c.kind))
            for (int x = 0; x < 2; ++x) keys.push_back({c.kind, comp, x});
    return keys;
}

/** @brief Local data of an invariant eigendistribution on every Cartan. */
struct LocalExpression {
    Group group = Group::SL2R;
    Complex lambda_h = 0;  ///< l = lambda(H), infinitesimal character up to sign
    std::map<CoefficientKey, Complex> coefficients;

    static LocalExpression zero(Group g, Complex l) {
        LocalExpression e{g, l, {}};
        for (const auto& k : all_keys(g)) e.coefficients[k] = 0;
        return e;
    }

    Complex& at(CartanKind c, Component comp, int x) { return coefficients.at({c, comp, x}); }
    Complex at(CartanKind c, Component comp, int x) const { return coefficients.at({c, comp, x}); }

    /** Total on all keys of the group. */
    bool is_total() const {
        for (const auto& k : all_keys(group))
            if (!coefficients.count(k)) return false;
        return coefficients.size() == all_keys(group).size();
    }

    friend LocalExpression operator+(LocalExpression a, const LocalExpression& b) {
        if (a.group != b.group || a.lambda_h != b.lambda_h) throw Error("adding local expressions with different data");
        for (auto& [k, v] : a.coefficients) v += b.coefficients.at(k);
        return a;
    }
    friend LocalExpression operator*(Complex s, LocalExpression a) {
        for (auto& [k, v] : a.coefficients) v *= s;
        return a;
    }
};

/** Compact or SU(2) weight-type expression: sin(l theta)/sin(theta) on SU(2) for d = (1, 1). */
inline LocalExpression su2_character(long long m) {
    auto e = LocalExpression::zero(Group::SU2, Complex(double(m + 1), 0));
    for (const auto& comp : components(Group::SU2, CartanKind::Compact))
        for (int x = 0; x < 2; ++x) e.at(CartanKind::Compact, comp, x) = 1;
    return e;
}

/** a_x(t) on the reference branch. */
inline Complex tangent_log(Group g, const CartanElement& t, int x) {
    if (t.kind == CartanKind::Compact) {
        double th = t.theta;
        if (g == Group::SL2R && t.component().sign < 0) th -= 2 * std::numbers::pi;
        const Complex a(0, 2 * th);
        return x == 0 ? a : -a;
    }
    return x == 0 ? Complex(2 * t.s) : Complex(-2 * t.s);
}

inline Complex evaluate_group(const LocalExpression& e, const CartanElement& t) {
    if (!t.regular()) throw NotRegular("Cartan element");
    if (e.group == Group::SU2 && t.kind != CartanKind::Compact) throw Error("SU2 has no split Cartan");
    const Component comp = t.component();
    Complex sum = 0;
    for (int x = 0; x < 2; ++x) {
        const Complex d = e.at(t.kind, comp, x);
        if (d == Complex(0)) continue;
        const Complex a = tangent_log(e.group, t, x);
        sum += d * std::exp((e.lambda_h - 1.0) * a / 2.0) / (1.0 - std::exp(-a));
    }
    return sum;
}

/** Cartan data of a regular Lie algebra element: the key component and alpha_x(zeta). */
struct AlgebraPoint {
    CartanKind kind;
    Component component;
    std::array<Complex, 2> alpha;
};

inline AlgebraPoint algebra_point(const Sl2& zeta) {
    const ElementClass c = classify_element(zeta);
    if (c.kind == CartanKind::Compact) {
        const Complex a(0, 2 * c.component * c.parameter);
        return {CartanKind::Compact, {1, c.component}, {a, -a}};
    }
    return {CartanKind::Split, {1, 1}, {Complex(2 * c.parameter), Complex(-2 * c.parameter)}};
}

inline Complex evaluate_algebra(const LocalExpression& e, const AlgebraPoint& p) {
    Complex sum = 0;
    for (int x = 0; x < 2; ++x) {
        const Complex d = e.at(p.kind, p.component, x);
        if (d == Complex(0)) continue;
        sum += d * std::exp(e.lambda_h * p.alpha[x] / 2.0) / p.alpha[x];
    }
    return sum;
}

inline Complex evaluate_algebra(const LocalExpression& e, const Sl2& zeta) {
    if (e.group != Group::SL2R) throw Error("evaluate_algebra on sl(2,R) needs an SL2R expression");
    return evaluate_algebra(e, algebra_point(zeta));
}

/** SU(2): the element t * iH of the torus of su(2). */
inline Complex evaluate_algebra_su2(const LocalExpression& e, double t) {
    if (std::abs(t) < 1e-12) throw NotRegular("zero");
    const Complex a(0, 2 * t);
    return evaluate_algebra(e, AlgebraPoint{CartanKind::Compact, {1, t > 0 ? 1 : -1}, {a, -a}});
}

/** Denominator prod_{alpha > 0} alpha_x(zeta) of the algebra formula at the first fixed point. */
inline Complex algebra_denominator(const Sl2& zeta) { return algebra_point(zeta).alpha[0]; }

/** The invariant operator (1/4) d_x^2 + d_y d_z has eigenvalue l^2/4 on characters of infinitesimal character l. */
inline constexpr double kEigenNormalization = 0.25;

inline Complex p_norm(Complex lambda_h) { return kEigenNormalization * lambda_h * lambda_h; }

/** Symmetry under the stabiliser of lambda: nontrivial only at l = 0, where d_{x1} = -d_{x0}. */
inline bool check_symmetry(const LocalExpression& e) {
    if (e.lambda_h != Complex(0)) return true;
    for (const auto& c : classify_cartans(e.group))
        for (const auto& comp : components(e.group, c.kind))
            if (e.at(c.kind, comp, 1) != -e.at(c.kind, comp, 0)) return false;
    return true;
}

/** Antisymmetrise over the Weyl group (the only nontrivial stabiliser occurs at l = 0). */
inline LocalExpression symmetrize(LocalExpression e) {
    if (e.lambda_h != Complex(0)) return e;
    for (const auto& c : classify_cartans(e.group))
        for (const auto& comp : components(e.group, c.kind)) {
            const Complex d = (e.at(c.kind, comp, 0) - e.at(c.kind, comp, 1)) / 2.0;
            e.at(c.kind, comp, 0) = d;
            e.at(c.kind, comp, 1) = -d;
        }
    return e;
}

struct PairingOptions {
    double rel_tol = 1e-3;
    std::array<double, 3> deltas{1e-2, 1e-3, 1e-4};
    unsigned psi_points = 64;
    Quad2Options quad{1e-9, 1e-14, 12, 2000, 4, 2, {}};
};

struct PairingResult {
    Complex value;                    ///< integral up to the cone (t >= 0)
    double error;                     ///< distance to the shell extrapolation plus quadrature error
    bool converged;
    std::array<Complex, 3> shells;    ///< values with the cone shells excluded
};

/**
 * @brief int theta(zeta) phi(zeta) dzeta over sl(2,R).
 *
 * Coordinates u = (y+z)/2, v = (y-z)/2, x = rho cos psi, u = rho sin psi,
 * rho = r cos beta, v = r sin beta (dzeta = 2 r^2 cos beta dr dbeta dpsi); then
 * p = r^2 cos 2 beta and theta depends on (r, beta) only. Each quarter of the
 * beta range is written beta = +-(pi/4 +- t^2), which makes the integrand smooth
 * up to the cone t = 0. The shell |p| < delta |zeta|^2 / 2 (that is |cos 2 beta| < delta)
 * is excluded, t >= t_delta, and the three shells are extrapolated as
 * I0 + a t_delta + b t_delta^2. The value is the unexcluded integral over t in [0, t_max];
 * its distance to I0 plus the quadrature error is the reported error.
 */
inline PairingResult pair_algebra(const LocalExpression& e, const TestFunction& phi, const PairingOptions& opt = {}) {
    if (e.group != Group::SL2R) throw Error("pair_algebra needs an SL2R expression");
    const double rmax = phi.support_radius();
    const double tmax = std::sqrt(std::numbers::pi / 4);
    const unsigned npsi = opt.psi_points;

    auto angular = [&](double r, double beta) {
        const double rho = r * std::cos(beta), v = r * std::sin(beta);
        Complex s = 0;
        for (unsigned j = 0; j < npsi; ++j) {
            const double psi = 2 * std::numbers::pi * (j + 0.5) / npsi;
            const double x = rho * std::cos(psi), u = rho * std::sin(psi);
            s += phi(Vec3{x, u + v, u - v});
        }
        return s * (2 * std::numbers::pi / npsi);
    };

    auto cutoff = [](double delta) { return std::sqrt(std::asin(delta) / 2); };

    auto one_range = [&](double tmin) {
        Complex total = 0;
        double err = 0;
        bool ok = true;
        for (int piece = 0; piece < 4; ++piece) {
            const double side = piece < 2 ? 1.0 : -1.0;       // sign of beta
            const double away = piece % 2 == 0 ? 1.0 : -1.0;  // +: elliptic side |beta| > pi/4
            auto integrand = [&](double r, double t) -> Complex {
                const double beta = side * (std::numbers::pi / 4 + away * t * t);
                const double ang = r * std::sqrt(std::abs(std::cos(2 * beta)));
                AlgebraPoint pt;
                if (away > 0) {
                    const int sgn = side > 0 ? 1 : -1;
                    const Complex a(0, 2 * sgn * ang);
                    pt = {CartanKind::Compact, {1, sgn}, {a, -a}};
                } else {
                    pt = {CartanKind::Split, {1, 1}, {Complex(2 * ang), Complex(-2 * ang)}};
                }
                if (ang == 0) return 0.0;
                const Complex th = evaluate_algebra(e, pt);
                if (th == Complex(0)) return 0.0;
                return 2 * r * r * std::cos(beta) * 2 * t * th * angular(r, beta);
            };
            auto q = adaptive_2d<Complex>(integrand, Box{0.0, rmax, tmin, tmax}, opt.quad);
            total += q.value;
            err += q.error;
            ok = ok && q.converged;
        }
        return std::tuple{total, err, ok};
    };

    PairingResult out{};
    double qerr = 0;
    bool qok = true;
    std::array<double, 3> ts{};
    for (int j = 0; j < 3; ++j) {
        ts[j] = cutoff(opt.deltas[j]);
        auto [v, er, ok] = one_range(ts[j]);
        out.shells[j] = v;
        qerr = std::max(qerr, er);
        qok = qok && ok;
    }
    Eigen::Matrix3cd m;
    Eigen::Vector3cd rhs;
    for (int j = 0; j < 3; ++j) {
        m(j, 0) = 1;
        m(j, 1) = ts[j];
        m(j, 2) = ts[j] * ts[j];
        rhs(j) = out.shells[j];
    }
    const Complex extrapolated = m.colPivHouseholderQr().solve(rhs)(0);
    auto [full, ferr, fok] = one_range(0.0);
    out.value = full;
    out.error = std::abs(extrapolated - full) + std::max(qerr, ferr);
    qok = qok && fok;
    const double scale = std::max(std::abs(out.value), std::abs(out.shells[2]));
    out.converged = qok && out.error <= opt.rel_tol * std::max(scale, 1e-300);
    return out;
}

struct ResidualRecord {
    std::string phi_id;
    double residual;
    double scale;
    double tolerance;
    bool pass;
};

struct ResidualReport {
    std::vector<ResidualRecord> records;
    double max_residual = 0;
    bool pass = true;
};

/**
 * |<theta, D phi - p_norm phi>| per test function, against 1e-3 of max(|<theta, D phi>|, |p_norm <theta, phi>|)
 * or the combined pairing error, whichever is larger.
 */
inline ResidualReport verify_eigendistribution(const LocalExpression& e, Complex lambda_h,
                                               const std::vector<TestFunction>& battery, double rel_tol = 1e-3,
                                               const PairingOptions& opt = {}) {
    ResidualReport rep;
    const Complex pn = p_norm(lambda_h);
    for (const auto& phi : battery) {
        const TestFunction dphi = phi.invariant_operator();
        const PairingResult pa = pair_algebra(e, dphi, opt), pb = pair_algebra(e, phi, opt);
        const Complex a = pa.value, b = pb.value;
        const double residual = std::abs(a - pn * b);
        const double scale = std::max(std::abs(a), std::abs(pn * b));
        // at p_norm = 0 both sides are the residual itself; fall back to the pairing uncertainty
        const double tol = std::max(rel_tol * scale, pa.error + std::abs(pn) * pb.error);
        const bool pass = residual <= tol || (scale == 0 && residual == 0);
        rep.records.push_back({phi.id(), residual, scale, tol, pass});
        rep.max_residual = std::max(rep.max_residual, residual);
        rep.pass = rep.pass && pass;
    }
    return rep;
}

}  // namespace geochar

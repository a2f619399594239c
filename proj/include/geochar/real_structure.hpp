/**
 * @file real_structure.hpp
 * @brief Cartan subgroups, flag-variety orbits and local-system data for SL(2,R) and SU(2).
 *
 * Coordinates: zeta = [[x, y], [z, -x]] in sl(2,R); H = diag(1,-1), E, F as usual.
 * Compact Cartan SO(2): k(theta) = [[cos, sin], [-sin, cos]], fixed points +-i on P^1.
 * Split Cartan: eps * a_s, a_s = diag(e^s, e^-s), fixed points 0 and infinity.
 */
#pragma once

#include <geochar/lie_core.hpp>
#include <geochar/sl2.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <vector>

namespace geochar {

enum class Group { SL2R, SU2 };
enum class CartanKind { Compact, Split };

class UnsupportedGroup : public Error {
public:
    explicit UnsupportedGroup(const std::string& g) : Error("unsupported group '" + g + "' (supported: SL2R, SU2)") {}
};

class NotRegular : public Error {
public:
    explicit NotRegular(const std::string& what) : Error("element is not regular: " + what) {}
};

inline Group parse_group(const std::string& g) {
    if (g == "SL2R") return Group::SL2R;
    if (g == "SU2") return Group::SU2;
    throw UnsupportedGroup(g);
}

inline const char* to_string(CartanKind k) { return k == CartanKind::Compact ? "compact" : "split"; }

struct CartanSubgroup {
    CartanKind kind;
    int component_group_order;  ///< |T_R / T_R^0|
    friend bool operator==(const CartanSubgroup&, const CartanSubgroup&) = default;
};

inline std::vector<CartanSubgroup> classify_cartans(Group g) {
    if (g == Group::SU2) return {{CartanKind::Compact, 1}};
    return {{CartanKind::Compact, 1}, {CartanKind::Split, 2}};
}

/**
 * @brief Connected component of the regular set of a Cartan subgroup.
 *
 * Compact: eps = +1, sign = +1 for theta in (0, pi), -1 for (pi, 2 pi).
 * Split: eps = +-1 labels the component of T_R, sign = sign(s).
 */
struct Component {
    int eps = 1;
    int sign = 1;
    friend auto operator<=>(const Component&, const Component&) = default;
};

/** @brief An element of a Cartan subgroup of SL(2,R): k(theta) or eps * a_s. */
struct CartanElement {
    CartanKind kind = CartanKind::Compact;
    double theta = 0;  ///< compact angle, reduced to [0, 2 pi)
    int eps = 1;       ///< split component
    double s = 0;      ///< split parameter

    static CartanElement compact(double theta) {
        double t = std::fmod(theta, 2 * std::numbers::pi);
        if (t < 0) t += 2 * std::numbers::pi;
        return {CartanKind::Compact, t, 1, 0};
    }
    static CartanElement split(int eps, double s) { return {CartanKind::Split, 0, eps, s}; }

    /** No root character equals 1: theta not in {0, pi}, s != 0. */
    bool regular(double tol = 1e-12) const {
        if (kind == CartanKind::Compact) return std::abs(std::sin(theta)) > tol;
        return std::abs(s) > tol;
    }

    Component component() const {
        if (kind == CartanKind::Compact) return {1, theta < std::numbers::pi ? 1 : -1};
        return {eps, s > 0 ? 1 : -1};
    }
};

enum class OrbitLabel { UpperHalfPlane, LowerHalfPlane, RealCircle };

inline const char* to_string(OrbitLabel l) {
    switch (l) {
        case OrbitLabel::UpperHalfPlane: return "upper";
        case OrbitLabel::LowerHalfPlane: return "lower";
        case OrbitLabel::RealCircle: return "circle";
    }
    return "?";
}

/** Positive roots of the attached Cartan with their complex conjugates. */
struct RootConjugation {
    std::vector<Root> positive;
    std::function<Root(const Root&)> conj;
};

/** For every complex positive root, the conjugate is positive. */
inline bool maximally_real(const RootConjugation& rc) {
    for (const Root& a : rc.positive) {
        const Root c = rc.conj(a);
        if (c == a || c == -a) continue;  // real or imaginary
        if (!c.is_positive()) return false;
    }
    return true;
}

struct FlagOrbit {
    OrbitLabel label;
    CartanSubgroup attached_cartan;
    Complex base_point;
    int tau_sign;  ///< +1: the positive root is the tangent character at base_point with e^{2 i theta} (resp. e^{2s})
    bool maximally_real;
    int c_invariant;

    bool is_open() const { return label != OrbitLabel::RealCircle; }
    /** Membership of a point of P^1 (infinity lies on the circle). */
    bool contains(std::optional<Complex> z) const {
        if (!z) return label == OrbitLabel::RealCircle;
        switch (label) {
            case OrbitLabel::UpperHalfPlane: return z->imag() > 0;
            case OrbitLabel::LowerHalfPlane: return z->imag() < 0;
            case OrbitLabel::RealCircle: return z->imag() == 0;
        }
        return false;
    }
};

/** Rank-one root data of an orbit: the root is imaginary on the compact Cartan, real on the split one. */
inline RootConjugation orbit_root_conjugation(const FlagOrbit& o) {
    const bool imaginary = o.attached_cartan.kind == CartanKind::Compact;
    return {{Root{{1}}}, [imaginary](const Root& a) { return imaginary ? -a : a; }};
}

inline std::vector<FlagOrbit> enumerate_orbits(Group g = Group::SL2R) {
    if (g != Group::SL2R) throw UnsupportedGroup("SU2 acts transitively on P^1; no orbit stratification");
    const CartanSubgroup compact{CartanKind::Compact, 1}, split{CartanKind::Split, 2};
    std::vector<FlagOrbit> out{
        {OrbitLabel::UpperHalfPlane, compact, Complex(0, 1), +1, true, 0},
        {OrbitLabel::LowerHalfPlane, compact, Complex(0, -1), -1, true, 0},
        {OrbitLabel::RealCircle, split, Complex(0, 0), +1, true, 0},
    };
    for (auto& o : out) o.maximally_real = maximally_real(orbit_root_conjugation(o));
    return out;
}

inline FlagOrbit orbit(OrbitLabel l) { return enumerate_orbits()[static_cast<std::size_t>(l)]; }

/** @brief Classification of a regular element of sl(2,R). */
struct ElementClass {
    CartanKind kind;
    int component;     ///< compact: sign(y); split: always +1 (exp of the Lie algebra meets eps = +1 only)
    double parameter;  ///< nu = sqrt(-p) or s = sqrt(p)
};

inline ElementClass classify_element(const Sl2& zeta, double tol = 1e-12) {
    if (!std::isfinite(zeta.x) || !std::isfinite(zeta.y) || !std::isfinite(zeta.z)) throw NotRegular("non-finite entry");
    const double p = zeta.invariant();
    if (std::abs(p) <= tol * std::max(1.0, zeta.norm2())) throw NotRegular("nilpotent or zero");
    if (p < 0) return {CartanKind::Compact, zeta.y > 0 ? 1 : -1, std::sqrt(-p)};
    return {CartanKind::Split, 1, std::sqrt(p)};
}

/** @brief A local system on an orbit: continuous part d chi = lambda - rho, discrete part chi_F. */
struct LocalSystemParam {
    Complex twist;  ///< lambda(H)
    Complex dchi;   ///< (lambda - rho)(H)
    int chi_F;      ///< character of the component group at -1 (trivial on open orbits)
};

/** One parameter for an open orbit when lambda - rho is integral, none otherwise; two on the circle. */
inline std::vector<LocalSystemParam> local_system_params(const FlagOrbit& o, Complex lambda_h) {
    const Complex d = lambda_h - 1.0;
    if (o.is_open()) {
        const bool integral = d.imag() == 0 && d.real() == std::round(d.real());
        if (!integral) return {};
        return {{lambda_h, d, 1}};
    }
    return {{lambda_h, d, 1}, {lambda_h, d, -1}};
}

inline std::vector<LocalSystemParam> local_system_params(const FlagOrbit& o, const Weight& lambda) {
    if (lambda.rank() != 1) throw RankMismatch(1, lambda.rank());
    return local_system_params(o, Complex(boost::rational_cast<double>(lambda.coords[0]), 0));
}

struct StandardSheafDescriptor {
    FlagOrbit orbit;
    LocalSystemParam local_system;

    Complex lambda_h() const { return local_system.twist; }
};

/** Standard sheaf on an open orbit; throws if no local system exists for lambda. */
inline StandardSheafDescriptor open_orbit_sheaf(OrbitLabel l, Complex lambda_h) {
    const FlagOrbit o = orbit(l);
    auto params = local_system_params(o, lambda_h);
    if (params.empty()) throw Error("no local system on the open orbit: lambda - rho is not integral");
    return {o, params.front()};
}

inline StandardSheafDescriptor circle_sheaf(Complex lambda_h, int chi_F) {
    const FlagOrbit o = orbit(OrbitLabel::RealCircle);
    return {o, local_system_params(o, lambda_h)[chi_F > 0 ? 0 : 1]};
}

/** The 2x2 matrix of k(theta) or eps a_s. */
inline Mat2 matrix_of(const CartanElement& t) {
    Mat2 m;
    if (t.kind == CartanKind::Compact) {
        m << std::cos(t.theta), -std::sin(t.theta), std::sin(t.theta), std::cos(t.theta);
    } else {
        m << t.eps * std::exp(t.s), 0, 0, t.eps * std::exp(-t.s);
    }
    return m;
}

/** Moebius action on P^1 (nullopt is infinity). */
inline std::optional<Complex> act_on_flag(const Mat2c& g, std::optional<Complex> z) {
    const Complex num = z ? g(0, 0) * *z + g(0, 1) : g(0, 0);
    const Complex den = z ? g(1, 0) * *z + g(1, 1) : g(1, 0);
    if (den == Complex(0)) return std::nullopt;
    return num / den;
}

/** Fixed points of g on P^1, from c z^2 + (d - a) z - b = 0; empty for g = +-1 (everything is fixed). */
inline std::vector<std::optional<Complex>> flag_fixed_points(const Mat2c& g, double tol = 1e-12) {
    const Complex a = g(0, 0), b = g(0, 1), c = g(1, 0), d = g(1, 1);
    const double scale = g.norm();
    std::vector<std::optional<Complex>> out;
    if (std::abs(c) <= tol * scale) {
        if (std::abs(d - a) <= tol * scale) return out;  // scalar or parabolic at infinity
        out.push_back(std::nullopt);
        out.push_back(b / (a - d));
        return out;
    }
    const Complex disc = std::sqrt((d - a) * (d - a) + 4.0 * b * c);
    out.push_back((a - d + disc) / (2.0 * c));
    if (std::abs(disc) > tol * scale) out.push_back((a - d - disc) / (2.0 * c));
    return out;
}

/** An element of N(T) in SL(2,C) acting by the nontrivial Weyl element. */
inline Mat2c weyl_representative(CartanKind k) {
    Mat2c n;
    if (k == CartanKind::Compact) {
        n << Complex(0, 1), 0, 0, Complex(0, -1);
    } else {
        n << 0, 1, -1, 0;
    }
    return n;
}

}  // namespace geochar

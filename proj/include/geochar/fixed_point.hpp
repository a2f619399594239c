/**
 * @file fixed_point.hpp
 * @brief Coefficients of standard sheaves on P^1 from compact-support Euler characteristics.
 *
 * Near a fixed point x the cell N'(t,x) (resp. N''(t,x)) is either {x} or the whole
 * small disc D around x, according to whether the root lies in Psi' (resp. Psi'').
 * The coefficient is
 *   d = chi_c(N' cap D, F)                      (N' recipe)
 *     = chi(F_x) if N'' = D,  chi_c(D, F) if N'' = {x}   (N'' recipe),
 * using stalk Euler characteristics of F on each cell. On the eps = -1 split
 * component the result is multiplied by the trace of -1 on the stalks.
 */
#pragma once

#include <geochar/eigendist.hpp>
#include <geochar/real_structure.hpp>

#include <vector>

namespace geochar {

class InadmissibleChoice : public Error {
public:
    InadmissibleChoice() : Error("contraction choice violates the modulus conditions on Psi', Psi''") {}
};

class NotAntidominant : public Error {
public:
    explicit NotAntidominant(Complex l)
        : Error("lambda(H) = " + std::to_string(l.real()) + " is not regular antidominant with lambda - rho integral") {}
};

/** Membership of the unique positive root in Psi' and Psi''. */
struct ContractionChoice {
    bool in_psi1 = false;
    bool in_psi2 = false;
    friend bool operator==(const ContractionChoice&, const ContractionChoice&) = default;
};

/** |e^{alpha_x}(t)|. */
inline double root_modulus(const CartanElement& t, int x) {
    if (t.kind == CartanKind::Compact) return 1.0;
    return std::exp(x == 0 ? 2 * t.s : -2 * t.s);
}

/** Choices allowed by the modulus conditions; the canonical one comes first. */
inline std::vector<ContractionChoice> admissible_contraction_choices(const CartanElement& t, int x) {
    if (!t.regular()) throw NotRegular("Cartan element");
    const double m = root_modulus(t, x);
    if (m < 1 - 1e-15) return {{true, false}};
    if (m > 1 + 1e-15) return {{false, true}};
    // modulus one: canonical Psi' = all positive roots, then the rest
    return {{true, false}, {false, false}, {true, true}, {false, true}};
}

inline bool is_admissible(const CartanElement& t, int x, const ContractionChoice& c) {
    for (const auto& a : admissible_contraction_choices(t, x))
        if (a == c) return true;
    return false;
}

/** Where a cell near x lies. */
enum class Stratum { Upper, Lower, Circle };

/** Compact-support Euler characteristic of a cell. */
enum class CellShape { Point, OpenInterval, HalfOpenInterval, Open2Cell };

inline int chi_c(CellShape s) {
    switch (s) {
        case CellShape::Point: return 1;
        case CellShape::OpenInterval: return -1;
        case CellShape::HalfOpenInterval: return 0;
        case CellShape::Open2Cell: return 1;
    }
    return 0;
}

struct Cell {
    CellShape shape;
    Stratum stratum;
    int dimension() const { return shape == CellShape::Point ? 0 : shape == CellShape::Open2Cell ? 2 : 1; }
};

/** Germ-level cell decompositions around a fixed point. */
struct StratumTable {
    std::vector<Cell> point;     ///< {x}
    std::vector<Cell> punctured; ///< D minus {x}
    std::vector<Cell> disc;      ///< coarse decomposition of the whole D
};

inline Stratum stratum_of(std::optional<Complex> x) {
    if (!x || x->imag() == 0) return Stratum::Circle;
    return x->imag() > 0 ? Stratum::Upper : Stratum::Lower;
}

inline StratumTable stratum_table(std::optional<Complex> x) {
    const Stratum s = stratum_of(x);
    if (s != Stratum::Circle) return {{{CellShape::Point, s}}, {{CellShape::OpenInterval, s}, {CellShape::Open2Cell, s}},
                                      {{CellShape::Open2Cell, s}}};
    // on the circle: x, two open half-diameters, two open half-discs; coarse: [x, +eps) and (-eps, x)
    return {{{CellShape::Point, Stratum::Circle}},
            {{CellShape::OpenInterval, Stratum::Circle},
             {CellShape::OpenInterval, Stratum::Circle},
             {CellShape::Open2Cell, Stratum::Upper},
             {CellShape::Open2Cell, Stratum::Lower}},
            {{CellShape::HalfOpenInterval, Stratum::Circle},
             {CellShape::OpenInterval, Stratum::Circle},
             {CellShape::Open2Cell, Stratum::Upper},
             {CellShape::Open2Cell, Stratum::Lower}}};
}

/** Euler characteristic of the stalk of the standard sheaf on a stratum. */
inline int stalk_euler(const StandardSheafDescriptor& f, Stratum s) {
    switch (f.orbit.label) {
        case OrbitLabel::UpperHalfPlane: return s == Stratum::Lower ? 0 : 1;
        case OrbitLabel::LowerHalfPlane: return s == Stratum::Upper ? 0 : 1;
        case OrbitLabel::RealCircle: return s == Stratum::Circle ? 1 : 0;
    }
    return 0;
}

/** Trace of the component element on the stalks for eps = -1, relative to the reference branch. */
inline int component_trace(const StandardSheafDescriptor& f, int eps) {
    if (eps > 0) return 1;
    if (!f.orbit.is_open()) return f.local_system.chi_F;
    const long long k = std::llround(f.local_system.dchi.real());
    return (k % 2 == 0) ? 1 : -1;
}

namespace detail {

inline int chi_c_sum(const StandardSheafDescriptor& f, const std::vector<Cell>& cells) {
    int s = 0;
    for (const Cell& c : cells) s += chi_c(c.shape) * stalk_euler(f, c.stratum);
    return s;
}

inline std::optional<Complex> fixed_point_of(const CartanElement& t, int x) {
    return fixed_point_location(Group::SL2R, t.kind, x);
}

}  // namespace detail

/** N' recipe: chi_c(N' cap D, F). */
inline int euler_coefficient_n1(const StandardSheafDescriptor& f, const CartanElement& t, int x,
                                const ContractionChoice& choice) {
    if (!is_admissible(t, x, choice)) throw InadmissibleChoice();
    const StratumTable tab = stratum_table(detail::fixed_point_of(t, x));
    int d = detail::chi_c_sum(f, tab.point);
    if (choice.in_psi1) d += detail::chi_c_sum(f, tab.punctured);
    return d * component_trace(f, t.kind == CartanKind::Split ? t.eps : 1);
}

/** N'' recipe on the coarse table: stalk at x if N'' = D, chi_c(D, F) if N'' = {x}. */
inline int euler_coefficient_n2(const StandardSheafDescriptor& f, const CartanElement& t, int x,
                                const ContractionChoice& choice) {
    if (!is_admissible(t, x, choice)) throw InadmissibleChoice();
    const StratumTable tab = stratum_table(detail::fixed_point_of(t, x));
    const int d = choice.in_psi2 ? stalk_euler(f, stratum_of(detail::fixed_point_of(t, x)))
                                 : detail::chi_c_sum(f, tab.disc);
    return d * component_trace(f, t.kind == CartanKind::Split ? t.eps : 1);
}

/** The coefficient d_{E,x}; throws if the two recipes or two admissible choices disagree. */
inline int euler_coefficient(const StandardSheafDescriptor& f, const CartanElement& t, int x,
                             std::optional<ContractionChoice> choice = std::nullopt) {
    if (!t.regular()) throw NotRegular("Cartan element");
    if (choice) return euler_coefficient_n1(f, t, x, *choice);
    const auto choices = admissible_contraction_choices(t, x);
    const int d = euler_coefficient_n1(f, t, x, choices.front());
    for (const auto& c : choices)
        if (euler_coefficient_n1(f, t, x, c) != d || euler_coefficient_n2(f, t, x, c) != d)
            throw Error("Euler coefficient depends on the contraction choice");
    return d;
}

/** A regular representative of each component. */
inline CartanElement representative(CartanKind k, Component c) {
    if (k == CartanKind::Compact) return CartanElement::compact(c.sign > 0 ? std::numbers::pi / 2 : 3 * std::numbers::pi / 2);
    return CartanElement::split(c.eps, c.sign > 0 ? 1.0 : -1.0);
}

/** Local expression of the character of a standard sheaf, all coefficients from the Euler recipe. */
inline LocalExpression sheaf_expression(const StandardSheafDescriptor& f) {
    auto e = LocalExpression::zero(Group::SL2R, f.lambda_h());
    for (auto& [key, d] : e.coefficients) d = euler_coefficient(f, representative(key.cartan, key.component), key.fixed_point);
    return e;
}

inline bool is_antidominant_integral(Complex l) {
    return l.imag() == 0 && l.real() == std::round(l.real()) && l.real() < 0;
}

/** Discrete series attached to an open orbit, lambda(H) = l a negative integer. */
inline LocalExpression discrete_series_expression(OrbitLabel s, Complex l) {
    if (s == OrbitLabel::RealCircle) throw Error("discrete series live on open orbits");
    if (!is_antidominant_integral(l)) throw NotAntidominant(l);
    return sheaf_expression(open_orbit_sheaf(s, l));
}

/** Discrete series with lambda = -k omega on the upper half plane. */
inline LocalExpression discrete_series(long long k, OrbitLabel s = OrbitLabel::UpperHalfPlane) {
    return discrete_series_expression(s, Complex(-double(k), 0));
}

/** |e^{lambda_x}(t)| on the reference branch. */
inline double lambda_modulus(Complex l, const CartanElement& t, int x) {
    return std::abs(std::exp(l * tangent_log(Group::SL2R, t, x) / 2.0));
}

/**
 * @brief Principal series induced from (trivial, chi_F, nu).
 *
 * Compact coefficients vanish; on the split Cartan d = (-1)^{k_x} chi_F(eps), k_x = 1
 * exactly when 0 < e^{alpha_x}(t) < 1.
 */
inline LocalExpression induced_expression(int chi_F, Complex nu) {
    if (chi_F != 1 && chi_F != -1) throw Error("chi_F must be +1 or -1");
    auto e = LocalExpression::zero(Group::SL2R, nu);
    for (const auto& comp : components(Group::SL2R, CartanKind::Split)) {
        const CartanElement t = representative(CartanKind::Split, comp);
        for (int x = 0; x < 2; ++x) {
            const int kx = root_modulus(t, x) < 1 ? 1 : 0;
            e.at(CartanKind::Split, comp, x) = double((kx ? -1 : 1) * (comp.eps < 0 ? chi_F : 1));
        }
    }
    return e;
}

/** The unitary axis nu in iR. */
inline bool unitary_principal_series(Complex nu) { return nu.real() == 0; }

}  // namespace geochar

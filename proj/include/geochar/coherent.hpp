/**
 * @file coherent.hpp
 * @brief Coherent families of local expressions in rank one, translation by finite-dimensional
 * characters, and the coherence verifier.
 *
 * Parameters are weights lambda = l omega of A1 (l = lambda(H)); the lattice is Z omega.
 * A member keeps the base coefficients up to the branch of e^{mu_x} that the reference
 * logarithm does not see: the central element -1 on the eps = -1 split component.
 */
#pragma once

#include <geochar/compact_char.hpp>
#include <geochar/eigendist.hpp>
#include <geochar/fixed_point.hpp>

#include <concepts>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace geochar {

/** Weights of the finite-dimensional representation with highest weight lambda_f, with multiplicity. */
inline std::map<Weight, long long> weights_of_findim(const RootSystem& rs, const Weight& lambda_f) {
    return weight_multiplicities(rs, lambda_f);
}

namespace detail {

inline long long lattice_offset(const Weight& from, const Weight& to) {
    if (from.rank() != 1 || to.rank() != 1) throw RankMismatch(1, from.rank() == 1 ? to.rank() : from.rank());
    const Rational d = to.coords[0] - from.coords[0];
    if (d.denominator() != 1) throw Error("weight " + to.str() + " is not in the coset " + from.str() + " + Z omega");
    return d.numerator();
}

inline double parameter_value(const Weight& w) { return boost::rational_cast<double>(w.coords.at(0)); }

}  // namespace detail

/** e^{j omega}(g) divided by its value on the reference branch. */
inline int branch_correction(CartanKind kind, Component comp, long long j) {
    if (kind == CartanKind::Split && comp.eps < 0 && (j % 2 != 0)) return -1;
    return 1;
}

/** Applies the coherence rule for the lattice step j omega: l -> l + j, coefficients times the branch correction. */
inline LocalExpression shift(LocalExpression e, long long j) {
    e.lambda_h += double(j);
    for (auto& [key, d] : e.coefficients) d *= double(branch_correction(key.cartan, key.component, j));
    return e;
}

/** e^{mu}(g) for mu = j omega. */
inline Complex weight_value(long long j, const CartanElement& g) {
    if (g.kind == CartanKind::Compact) return std::polar(1.0, double(j) * g.theta);
    const double sign = (g.eps < 0 && j % 2 != 0) ? -1.0 : 1.0;
    return sign * std::exp(double(j) * g.s);
}

/** Finite-dimensional character sum_mu n_mu e^{mu}(g) from its weight multiset. */
inline Complex findim_character(const std::map<Weight, long long>& weights, const CartanElement& g) {
    Complex s = 0;
    for (const auto& [mu, n] : weights) s += double(n) * weight_value(detail::lattice_offset(Weight::zero(1), mu), g);
    return s;
}

/** @brief lambda -> Theta(lambda) on lambda_0 + Z omega. */
class CoherentFamily {
public:
    CoherentFamily(Weight base_parameter, LocalExpression base, std::optional<OrbitLabel> open_orbit = std::nullopt)
        : base_parameter_(std::move(base_parameter)), base_(std::move(base)), open_orbit_(open_orbit) {
        if (base_parameter_.rank() != 1) throw RankMismatch(1, base_parameter_.rank());
        if (base_.lambda_h != Complex(detail::parameter_value(base_parameter_)))
            throw Error("base expression is not at the base parameter");
    }

    const Weight& base_parameter() const { return base_parameter_; }
    const LocalExpression& base() const { return base_; }
    Group group() const { return base_.group; }
    /** Set for families through a discrete series; antidominant members must then be that discrete series. */
    std::optional<OrbitLabel> open_orbit() const { return open_orbit_; }

    /** Theta(lambda); at singular lambda only the symmetrized part. */
    LocalExpression member(const Weight& lambda) const {
        return symmetrize(shift(base_, detail::lattice_offset(base_parameter_, lambda)));
    }

private:
    Weight base_parameter_;
    LocalExpression base_;
    std::optional<OrbitLabel> open_orbit_;
};

/** Family through the discrete series with lambda = -k omega. */
inline CoherentFamily discrete_series_family(long long k, OrbitLabel side = OrbitLabel::UpperHalfPlane) {
    return {Weight{-k}, discrete_series(k, side), side};
}

/** Family of SU(2) characters; member at (m + 1) omega is chi_m. */
inline CoherentFamily su2_family(long long m = 0) { return {Weight{m + 1}, su2_character(m)}; }

/** Family through the principal series with rational nu. */
inline CoherentFamily principal_series_family(int chi_F, Rational nu) {
    return {Weight(std::vector<Rational>{nu}), induced_expression(chi_F, boost::rational_cast<double>(nu))};
}

/** Formal integer combination of family members. */
struct FormalSum {
    std::vector<std::pair<long long, Weight>> terms;  ///< (n_mu, lambda + mu)
};

template <class F>
concept MemberSource = requires(const F& f, const Weight& w) {
    { f.member(w) } -> std::convertible_to<LocalExpression>;
    { f.base_parameter() } -> std::convertible_to<Weight>;
    { f.open_orbit() } -> std::convertible_to<std::optional<OrbitLabel>>;
};

/** phi_f theta(lambda) = sum_mu n_mu(phi_f) Theta(lambda + mu). */
inline FormalSum translate(const std::map<Weight, long long>& findim_weights, const Weight& lambda) {
    FormalSum out;
    for (const auto& [mu, n] : findim_weights) out.terms.emplace_back(n, lambda + mu);
    return out;
}

template <MemberSource F>
Complex evaluate(const F& family, const FormalSum& s, const CartanElement& g) {
    Complex v = 0;
    for (const auto& [n, w] : s.terms) v += double(n) * evaluate_group(family.member(w), g);
    return v;
}

/** One (phi_f, lambda) case with its regular sample points. */
struct CoherenceCase {
    Weight findim_highest;  ///< dominant lambda_f of phi_f
    Weight lambda;
    std::vector<CartanElement> samples;
};

struct CoherenceRow {
    std::string label;
    CartanElement point;
    Complex lhs;  ///< phi_f(g) Theta(lambda)(g)
    Complex rhs;  ///< sum n_mu Theta(lambda + mu)(g)
    double deviation;
    bool pass;
};

struct CoherenceReport {
    std::vector<CoherenceRow> rows;
    std::vector<std::string> chamber_mismatches;  ///< antidominant members differing from the discrete series
    double max_deviation = 0;
    bool pass = true;
    std::optional<CoherenceRow> first_failure;
};

/**
 * Checks the translation identity pointwise on every case, and for discrete-series families
 * that members at antidominant lambda = -k omega, 1 <= k <= chamber_window, are the discrete series.
 */
template <MemberSource F>
CoherenceReport verify_coherence(const F& family, const std::vector<CoherenceCase>& cases, double tol = 1e-9,
                                 long long chamber_window = 4) {
    const RootSystem a1 = build_root_system("A1");
    CoherenceReport rep;
    for (const auto& c : cases) {
        const auto weights = weights_of_findim(a1, c.findim_highest);
        const FormalSum sum = translate(weights, c.lambda);
        const LocalExpression at = family.member(c.lambda);
        const std::string label = "phi_f" + c.findim_highest.str() + " at " + c.lambda.str();
        for (const auto& g : c.samples) {
            const Complex lhs = findim_character(weights, g) * evaluate_group(at, g);
            const Complex rhs = evaluate(family, sum, g);
            const double dev = std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
            CoherenceRow row{label, g, lhs, rhs, dev, dev <= tol};
            rep.max_deviation = std::max(rep.max_deviation, dev);
            if (!row.pass && !rep.first_failure) rep.first_failure = row;
            rep.pass = rep.pass && row.pass;
            rep.rows.push_back(std::move(row));
        }
    }
    if (const auto side = family.open_orbit()) {
        for (long long k = 1; k <= chamber_window; ++k) {
            const Weight w{-k};
            const LocalExpression m = family.member(w), ds = discrete_series_expression(*side, Complex(-double(k)));
            if (m.lambda_h != ds.lambda_h || m.coefficients != ds.coefficients) {
                rep.chamber_mismatches.push_back("member at " + w.str() + " differs from the discrete series");
                rep.pass = false;
            }
        }
    }
    return rep;
}

/** Regular sample points on both Cartans of SL(2,R) (compact only for SU(2)), deterministic. */
inline std::vector<CartanElement> coherence_samples(Group g, std::size_t n) {
    std::vector<CartanElement> out;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = (double(i) + 0.5) / double(n);
        if (g == Group::SU2 || i % 3 == 0) {
            out.push_back(CartanElement::compact(0.113 + u * (2 * std::numbers::pi - 0.2)));
            continue;
        }
        const double s = -2.5 + 5 * u;
        out.push_back(CartanElement::split(i % 2 ? -1 : 1, std::abs(s) < 1e-3 ? 0.1 : s));
    }
    return out;
}

}  // namespace geochar

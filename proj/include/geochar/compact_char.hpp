/**
 * @file compact_char.hpp
 * @brief Characters of compact connected groups.
 *
 * A torus point is an angle vector theta in coroot coordinates: it stands for
 * exp(sum_j theta_j H_j) with H_j the simple coroots, so a weight mu with
 * fundamental coordinates (mu_j) takes the value exp(i sum_j mu_j theta_j).
 */
#pragma once

#include <geochar/lie_core.hpp>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <span>

namespace geochar {

using Complex = std::complex<double>;

class NotDominant : public Error {
public:
    explicit NotDominant(const Weight& w)
        : Error("weight " + w.str() + " is not dominant integral") {}
};

/** Raised when a Weyl denominator factor vanishes at the requested point. */
class SingularPoint : public Error {
public:
    SingularPoint(const std::string& where, const std::string& root)
        : Error("singular point " + where + ": root " + root + " vanishes"), root_(root) {}
    const std::string& root() const { return root_; }

private:
    std::string root_;
};

inline std::string root_label(const Root& a) {
    std::string s = "[";
    for (std::size_t i = 0; i < a.coords.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a.coords[i]);
    }
    return s + "]";
}

/** <mu, theta> for a weight in fundamental coordinates. */
inline double pair_angle(const Weight& mu, std::span<const double> theta) {
    double s = 0;
    for (std::size_t i = 0; i < mu.rank(); ++i) s += boost::rational_cast<double>(mu.coords[i]) * theta[i];
    return s;
}

namespace detail {

inline void require_dominant_integral(const RootSystem& rs, const Weight& lambda) {
    if (lambda.rank() != rs.rank) throw RankMismatch(rs.rank, lambda.rank());
    if (!lambda.is_integral() || !lambda.is_dominant()) throw NotDominant(lambda);
}

// Alternating sums cancel to order theta^{|positive roots|} near the identity, so
// they are accumulated in 50 digits.
using Wide = boost::multiprecision::cpp_bin_float_50;

inline std::pair<Wide, Wide> alternating_sum(const std::vector<WeylElement>& ws, const Weight& mu,
                                             std::span<const double> theta) {
    Wide re = 0, im = 0;
    for (const auto& w : ws) {
        const Weight wm = act(w, mu);
        Wide phase = 0;
        for (std::size_t i = 0; i < wm.rank(); ++i)
            phase += Wide(wm.coords[i].numerator()) / wm.coords[i].denominator() * Wide(theta[i]);
        re += w.sign * cos(phase);
        im += w.sign * sin(phase);
    }
    return {re, im};
}

}  // namespace detail

/**
 * @brief Weyl character formula at a regular torus point.
 *
 * Throws NotDominant, RankMismatch, or SingularPoint naming the first positive
 * root alpha with |sin(<alpha,theta>/2)| < 1e-12.
 */
inline Complex weyl_character(const RootSystem& rs, const Weight& lambda, std::span<const double> theta) {
    detail::require_dominant_integral(rs, lambda);
    if (theta.size() != rs.rank) throw RankMismatch(rs.rank, theta.size());
    for (const Root& a : rs.positive_roots) {
        if (std::abs(std::sin(pair_angle(rs.root_to_weight(a), theta) / 2)) < 1e-12)
            throw SingularPoint("theta", root_label(a));
    }
    const auto ws = enumerate_weyl(rs);
    const Weight r = rho(rs);
    const auto [nr, ni] = detail::alternating_sum(ws, lambda + r, theta);
    const auto [dr, di] = detail::alternating_sum(ws, r, theta);
    const detail::Wide norm = dr * dr + di * di;
    return {static_cast<double>((nr * dr + ni * di) / norm), static_cast<double>((ni * dr - nr * di) / norm)};
}

inline Complex weyl_character(const RootSystem& rs, const Weight& lambda, std::initializer_list<double> theta) {
    return weyl_character(rs, lambda, std::span<const double>(theta.begin(), theta.size()));
}

/** Dominant W-conjugate of mu, by repeated simple reflections. */
inline Weight dominant_conjugate(const RootSystem& rs, Weight mu) {
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < rs.rank; ++i) {
            if (mu.coords[i] < Rational(0)) {
                const Rational c = mu.coords[i];
                Root ai{std::vector<int>(rs.rank, 0)};
                ai.coords[i] = 1;
                mu -= c * rs.root_to_weight(ai);
                changed = true;
            }
        }
    }
    return mu;
}

/** True iff mu is a weight of the irreducible module of highest weight lambda. */
inline bool is_weight_of(const RootSystem& rs, const Weight& lambda, const Weight& mu) {
    if (!mu.is_integral()) return false;
    const Weight diff = lambda - dominant_conjugate(rs, mu);
    RationalMatrix a(rs.rank, std::vector<Rational>(rs.rank));
    for (std::size_t i = 0; i < rs.rank; ++i)
        for (std::size_t j = 0; j < rs.rank; ++j) a[i][j] = rs.cartan[i][j];
    const RationalMatrix ainv = detail::inverse(a);
    for (std::size_t j = 0; j < rs.rank; ++j) {
        Rational c = 0;
        for (std::size_t i = 0; i < rs.rank; ++i) c += ainv[j][i] * diff.coords[i];
        if (c.denominator() != 1 || c < Rational(0)) return false;
    }
    return true;
}

/**
 * @brief Weight multiplicities of the irreducible module by Freudenthal's recursion.
 *
 * Weights are produced level by level below lambda; a level with no weights ends
 * the walk (the weight set is saturated).
 */
inline std::map<Weight, long long> weight_multiplicities(const RootSystem& rs, const Weight& lambda) {
    detail::require_dominant_integral(rs, lambda);
    const Weight r = rho(rs);
    const Rational top = rs.inner(lambda + r, lambda + r);
    std::vector<Weight> pos_w;
    for (const Root& a : rs.positive_roots) pos_w.push_back(rs.root_to_weight(a));
    std::vector<Weight> simple_w;
    for (const Root& a : rs.simple_roots) simple_w.push_back(rs.root_to_weight(a));

    std::map<Weight, long long> mult{{lambda, 1}};
    std::set<Weight> level{lambda};
    while (!level.empty()) {
        std::set<Weight> next;
        for (const Weight& nu : level)
            for (const Weight& a : simple_w) {
                Weight mu = nu - a;
                if (mult.count(mu) || next.count(mu) || !is_weight_of(rs, lambda, mu)) continue;
                Rational num = 0;
                for (const Weight& b : pos_w) {
                    for (Weight up = mu + b; mult.count(up); up += b)
                        num += Rational(mult.at(up)) * rs.inner(up, b);
                }
                const Rational m = Rational(2) * num / (top - rs.inner(mu + r, mu + r));
                if (m.denominator() != 1) throw Error("Freudenthal recursion produced a non-integer");
                mult[mu] = m.numerator();
                next.insert(mu);
            }
        level = std::move(next);
    }
    return mult;
}

/** @brief Weyl dimension formula, exact. */
inline long long dimension(const RootSystem& rs, const Weight& lambda) {
    detail::require_dominant_integral(rs, lambda);
    const Weight r = rho(rs);
    Rational d = 1;
    for (const Root& a : rs.positive_roots) {
        const Weight aw = rs.root_to_weight(a);
        d *= rs.inner(lambda + r, aw) / rs.inner(r, aw);
    }
    return d.numerator();
}

/** Sum of mult(mu) e^{i<mu,theta>}. */
inline Complex weight_sum_character(const std::map<Weight, long long>& mult, std::span<const double> theta) {
    Complex s = 0;
    for (const auto& [mu, m] : mult) s += double(m) * std::polar(1.0, pair_angle(mu, theta));
    return s;
}

}  // namespace geochar

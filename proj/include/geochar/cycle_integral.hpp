/**
 * @file cycle_integral.hpp
 * @brief (2 pi i)^{-1} int_C phi_hat(mu_lambda) omega over truncated cycles, and the orbit-integral checks.
 *
 * The truncation D(r) runs over the schedule r = 4, 8, 16, 32; the contribution of each
 * shell D(r_j) minus D(r_{j-1}) is reported as a tail and must not increase.
 */
#pragma once

#include <geochar/orbit_geom.hpp>
#include <geochar/test_function.hpp>

#include <chrono>
#include <string>
#include <vector>

namespace geochar {

class UnboundedRealPart : public Error {
public:
    explicit UnboundedRealPart(double growth)
        : Error("Re mu is not bounded on the cycle (sampled growth " + std::to_string(growth) + ")") {}
};

struct CycleIntegralOptions {
    std::vector<double> schedule{4, 8, 16, 32};
    Quad2Options quad{1e-9, 1e-15, 12, 4000, 8, 4, {}};
    unsigned probe_points = 24;
};

struct CycleIntegralResult {
    Complex value = 0;
    std::vector<Complex> partial;  ///< value on D(r) for each r of the schedule
    std::vector<double> tails;     ///< |contribution of D(r_j) minus D(r_{j-1})|, j >= 1
    double tail_estimate = 0;
    double quad_error = 0;
    bool tails_decreasing = true;
    bool converged = true;
};

/** Largest Frobenius norm of Re eta over a sample grid of D(r). */
inline double real_part_bound(const Cycle& c, double r, unsigned n) {
    double m = 0;
    for (const auto& s : sample_cycle(c, r, n, n)) m = std::max(m, s.eta.real().norm());
    return m;
}

inline double imag_part_bound(const Cycle& c, double r, unsigned n) {
    double m = 0;
    for (const auto& s : sample_cycle(c, r, n, n)) m = std::max(m, s.eta.norm());
    return m;
}

/** Refuses cycles on which Re mu grows along the schedule. */
inline void check_real_part_bounded(const Cycle& c, const std::vector<double>& schedule, unsigned n) {
    const double first = real_part_bound(c, schedule.front(), n);
    const double last = real_part_bound(c, schedule.back(), n);
    const double slack = 1e-9 * imag_part_bound(c, schedule.back(), n);
    if (last > 2 * first + slack) throw UnboundedRealPart(last - first);
}

/** (2 pi i)^{-1} int_C g(eta) omega, for any g of the coadjoint value. */
template <class G>
CycleIntegralResult integrate_cycle(const Cycle& c, G&& g, const CycleIntegralOptions& opt = {}) {
    if (opt.schedule.empty()) throw Error("empty truncation schedule");
    check_real_part_bounded(c, opt.schedule, opt.probe_points);
    const Complex pref = 1.0 / Complex(0, 2 * std::numbers::pi);
    auto integrand = [&](double a, double b) -> Complex {
        const CycleSample s = c.at(a, b);
        if (s.density == Complex(0)) return 0.0;
        return g(s.eta) * s.density;
    };
    auto region = [&](double b0, double b1, double& err, bool& ok) {
        if (b1 <= b0) return Complex(0);
        auto q = adaptive_2d<Complex>(integrand, Box{c.a_min, c.a_max, b0, b1}, opt.quad);
        err += q.error;
        ok = ok && q.converged;
        return q.value;
    };

    CycleIntegralResult out;
    Complex total = 0;
    double prev_bound = 0;
    for (std::size_t j = 0; j < opt.schedule.size(); ++j) {
        const double bound = c.fiber_bound(opt.schedule[j]);
        Complex shell = region(prev_bound, bound, out.quad_error, out.converged);
        if (c.fiber_symmetric) shell += region(-bound, -prev_bound, out.quad_error, out.converged);
        shell *= pref * double(c.orientation);
        total += shell;
        out.partial.push_back(total);
        if (j > 0) out.tails.push_back(std::abs(shell));
        prev_bound = std::max(prev_bound, bound);
    }
    out.quad_error *= std::abs(pref);
    out.value = total;
    for (std::size_t j = 1; j < out.tails.size(); ++j)
        if (out.tails[j] > out.tails[j - 1]) out.tails_decreasing = false;
    out.tail_estimate = out.tails.empty() ? 0.0 : out.tails.back();
    out.converged = out.converged && out.tails_decreasing;
    return out;
}

/** The character-cycle integral of the integral formula with n = 1. */
inline CycleIntegralResult integrate_character_cycle(const Cycle& c, const TestFunction& phi, const CycleIntegralOptions& opt = {}) {
    return integrate_cycle(c, [&](const Mat2c& eta) { return phi.fourier(eta); }, opt);
}

/** (2 pi i)^{-1} int_{Omega(S, lambda)} phi_hat sigma_lambda over the orbit sheet. */
inline CycleIntegralResult rossmann_orbit_integral(OrbitLabel s, Complex l, const TestFunction& phi,
                                                   const CycleIntegralOptions& opt = {}) {
    return integrate_character_cycle(omega_orbit_cycle(s, l), phi, opt);
}

/** (2 pi)^{-1} int_{S^2} e^{<eta, t iH>} |sigma| over the SU(2) orbit with lambda(H) = m + 1. */
inline Complex su2_orbit_transform(long long m, double t, const CycleIntegralOptions& opt = {}) {
    const Mat2c x = Complex(0, t) * sl2::H();
    return integrate_cycle(su2_orbit_cycle(double(m + 1)), [&](const Mat2c& eta) { return std::exp(sl2::pair(eta, x)); }, opt).value;
}

/** j^{1/2}(x) chi_m(exp x) at x = t iH: sin((m + 1) t) / t. */
inline double su2_weyl_side(long long m, double t) { return std::sin(double(m + 1) * t) / t; }

struct KirillovRow {
    long long m;
    double theta;
    double lhs;
    Complex rhs;
};

struct KirillovReport {
    std::vector<KirillovRow> rows;
    double max_deviation = 0;
};

inline KirillovReport kirillov_su2_check(long long m, const std::vector<double>& thetas, const CycleIntegralOptions& opt = {}) {
    if (m < 0 || m > 8) throw Error("kirillov_su2_check supports 0 <= m <= 8");
    KirillovReport rep;
    for (double t : thetas) {
        if (std::abs(std::sin(t)) < 1e-9) throw NotRegular("theta is a multiple of pi");
        const double lhs = su2_weyl_side(m, t);
        const Complex rhs = su2_orbit_transform(m, t, opt);
        rep.rows.push_back({m, t, lhs, rhs});
        rep.max_deviation = std::max(rep.max_deviation, std::abs(rhs - lhs));
    }
    return rep;
}

/** Symplectic volume (2 pi)^{-1} int |sigma_lambda| of the SU(2) orbit. */
inline double su2_orbit_volume(long long m, const CycleIntegralOptions& opt = {}) {
    return integrate_cycle(su2_orbit_cycle(double(m + 1)), [](const Mat2c&) { return Complex(1); }, opt).value.real();
}

struct HolomorphyProbe {
    Complex base;
    Complex quotient_h;   ///< (I(l + h) - I(l)) / h
    Complex quotient_2h;  ///< (I(l + 2h) - I(l)) / (2h)
    double instability() const { return std::abs(quotient_h - quotient_2h); }
};

/** Finite-difference probe of holomorphic dependence on lambda. */
template <class MakeCycle>
HolomorphyProbe holomorphy_probe(MakeCycle&& make, Complex l, Complex h, const TestFunction& phi, const CycleIntegralOptions& opt = {}) {
    const Complex i0 = integrate_character_cycle(make(l), phi, opt).value;
    const Complex i1 = integrate_character_cycle(make(l + h), phi, opt).value;
    const Complex i2 = integrate_character_cycle(make(l + 2.0 * h), phi, opt).value;
    return {i0, (i1 - i0) / h, (i2 - i0) / (2.0 * h)};
}

/** One line of a verification report. */
struct VerificationRecord {
    std::string name;
    Complex lhs;
    Complex rhs;
    double rel_error;
    double tail_estimate;
    double runtime_ms;
    bool pass;
};

/** Milliseconds since `start`. */
inline double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace geochar

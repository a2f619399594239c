/**
 * @file orbit_geom.hpp
 * @brief Geometry of T*P^1 for SL(2,C): vector fields, moment maps, symplectic forms, f_lambda and cycles.
 *
 * Charts: z on C, w = 1/z near infinity; a covector xi dz reads eta dw with eta = -z^2 xi.
 * Coadjoint vectors are stored through the trace pairing <eta, Y> = tr(eta Y).
 * The twist enters through l = lambda(H); lambda_x = (l/2)(I - 2 P_x), P_x the orthogonal
 * projection onto the line x, is the U(2)-equivariant functional attached to x.
 */
#pragma once

#include <geochar/quadrature.hpp>
#include <geochar/real_structure.hpp>

#include <functional>
#include <optional>
#include <random>
#include <ostream>
#include <string>
#include <vector>

namespace geochar {

enum class Chart { Z, W };

/** @brief A point of T*P^1 in one chart: base coordinate and fiber coordinate of xi d(base). */
struct CotangentPoint {
    Chart chart = Chart::Z;
    Complex base = 0;
    Complex fiber = 0;

    /** The same point in the other chart; throws at the pole of the transition. */
    CotangentPoint in_chart(Chart c) const {
        if (c == chart) return *this;
        if (base == Complex(0)) throw Error("point lies outside the target chart");
        return {c, 1.0 / base, -base * base * fiber};
    }

    /** Coordinate z, nullopt at infinity. */
    std::optional<Complex> z() const {
        if (chart == Chart::Z) return base;
        if (base == Complex(0)) return std::nullopt;
        return 1.0 / base;
    }
};

/** @brief A complex linear functional on sl(2,C), held as its trace-pairing partner. */
struct CoadjointVector {
    Mat2c matrix = Mat2c::Zero();

    Complex pair(const Mat2c& y) const { return sl2::pair(matrix, y); }
    Complex invariant() const { return sl2::invariant(matrix); }
    Mat2 real_part() const { return matrix.real(); }
    Mat2 imag_part() const { return matrix.imag(); }
    double norm() const { return matrix.norm(); }

    friend CoadjointVector operator+(const CoadjointVector& a, const CoadjointVector& b) { return {a.matrix + b.matrix}; }
    friend CoadjointVector operator-(const CoadjointVector& a, const CoadjointVector& b) { return {a.matrix - b.matrix}; }
};

/** Infinitesimal Moebius action of Y = [[a, b], [c, -a]]: d/dt (exp tY).z = b + 2 a z - c z^2. */
inline Complex vector_field(const Mat2c& y, Chart chart, Complex coord) {
    const Complex a = (y(0, 0) - y(1, 1)) / 2.0, b = y(0, 1), c = y(1, 0);
    if (chart == Chart::Z) return b + 2.0 * a * coord - c * coord * coord;
    return c - 2.0 * a * coord - b * coord * coord;
}

inline Complex vector_field(const Mat2c& y, const CotangentPoint& p) { return vector_field(y, p.chart, p.base); }

/** mu(p) with <mu(p), Y> = xi * vector_field(Y, p). */
inline CoadjointVector moment(const CotangentPoint& p) {
    const Complex u = p.base;
    Mat2c n;
    if (p.chart == Chart::Z)
        n << u, -u * u, 1.0, -u;
    else
        n << -u, 1.0, -u * u, u;
    return {p.fiber * n};
}

namespace detail {

/** Orthogonal projection onto the line spanned by v. */
inline Mat2c line_projection(Complex v0, Complex v1) {
    Eigen::Vector2cd v(v0, v1);
    return v * v.adjoint() / v.squaredNorm();
}

inline Mat2c line_projection(Chart chart, Complex coord) {
    return chart == Chart::Z ? line_projection(coord, 1.0) : line_projection(1.0, coord);
}

}  // namespace detail

/** lambda_x for the point with coordinate `coord` in `chart`. */
inline CoadjointVector lambda_x(Chart chart, Complex coord, Complex l) {
    return {(l / 2.0) * (Mat2c::Identity() - 2.0 * detail::line_projection(chart, coord))};
}

/** lambda_x at z (nullopt is infinity). */
inline CoadjointVector lambda_x(std::optional<Complex> z, Complex l) {
    return z ? lambda_x(Chart::Z, *z, l) : lambda_x(Chart::W, 0.0, l);
}

/** Rank-one weight c * omega has lambda(H) = c. */
inline Complex twist_of(const Weight& lambda) {
    if (lambda.rank() != 1) throw RankMismatch(1, lambda.rank());
    return boost::rational_cast<double>(lambda.coords[0]);
}

inline CoadjointVector lambda_x(std::optional<Complex> z, const Weight& lambda) { return lambda_x(z, twist_of(lambda)); }

/** mu_lambda = lambda_x + mu. */
inline CoadjointVector twisted_moment(const CotangentPoint& p, Complex l) {
    return lambda_x(p.chart, p.base, l) + moment(p);
}

/** A real tangent vector of T*P^1 at a point of the z-chart: (dz, dxi). */
struct Tangent {
    Complex dz = 0;
    Complex dxi = 0;
};

/** sigma = d xi ^ dz. */
inline Complex sigma(const Tangent& t1, const Tangent& t2) { return t1.dxi * t2.dz - t2.dxi * t1.dz; }

/** tau_lambda on tangent vectors a, b of P^1 at z: 2 i l Im(conj(a) b) / (1 + |z|^2)^2. */
inline Complex tau_lambda(Complex z, Complex l, Complex a, Complex b) {
    const double q = 1 + std::norm(z);
    return Complex(0, 2) * l * (std::conj(a) * b).imag() / (q * q);
}

/** tau_lambda(u_x, v_x) = lambda_x([u, v]) for u, v in su(2). */
inline Complex tau_lambda_su2(std::optional<Complex> z, Complex l, const Mat2c& u, const Mat2c& v) {
    return lambda_x(z, l).pair(sl2::bracket(u, v));
}

/** d mu_lambda along a real tangent vector at (z, xi) in the z-chart. */
inline Mat2c twisted_moment_differential(Complex z, Complex xi, Complex l, const Tangent& t) {
    const double q = 1 + std::norm(z);
    Eigen::Vector2cd v(z, 1.0), dv(t.dz, 0.0);
    const Mat2c vv = v * v.adjoint();
    const Mat2c dp = (dv * v.adjoint() + v * dv.adjoint()) / q - vv * (2 * (std::conj(z) * t.dz).real() / (q * q));
    Mat2c n, dn;
    n << z, -z * z, 1.0, -z;
    dn << 1.0, -2.0 * z, 0.0, -1.0;
    return -l * dp + t.dxi * n + xi * t.dz * dn;
}

/** Kirillov form tr(eta [Z1, Z2]) with [Z_i, eta] = d eta_i, for regular eta. */
inline Complex kks_form(const Mat2c& eta, const Mat2c& d1, const Mat2c& d2) {
    const Complex q = sl2::invariant(eta);
    if (std::abs(q) < 1e-14) throw NotRegular("coadjoint vector");
    // tr(eta [Z1, Z2]) with [Z_i, eta] = d_i collapses to -tr(eta [d1, d2]) / (4q) in rank one
    return -sl2::pair(eta, sl2::bracket(d1, d2)) / (4.0 * q);
}

/** |mu_lambda^* sigma_lambda - (-sigma + pi^* tau_lambda)| on a pair of tangent vectors. */
inline double pullback_residual(Complex z, Complex xi, Complex l, const Tangent& t1, const Tangent& t2) {
    const Mat2c eta = twisted_moment({Chart::Z, z, xi}, l).matrix;
    const Complex lhs = kks_form(eta, twisted_moment_differential(z, xi, l, t1), twisted_moment_differential(z, xi, l, t2));
    const Complex rhs = -sigma(t1, t2) + tau_lambda(z, l, t1.dz, t2.dz);
    return std::abs(lhs - rhs);
}

struct PullbackSweep {
    std::size_t points = 0;
    double max_residual = 0;
};

/** Seeded sweep of the pullback identity: z, xi standard normal, |l| in [0.5, 3] with uniform phase. */
inline PullbackSweep pullback_sweep(std::size_t n, std::uint64_t seed = 1) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0, 1);
    std::uniform_real_distribution<double> mod(0.5, 3), arg(0, 2 * std::numbers::pi);
    auto c = [&] { return Complex(g(rng), g(rng)); };
    PullbackSweep out{n, 0};
    for (std::size_t i = 0; i < n; ++i) {
        const Complex l = std::polar(mod(rng), arg(rng));
        const Complex z = c(), xi = c();
        const Tangent t1{c(), c()}, t2{c(), c()};
        out.max_residual = std::max(out.max_residual, pullback_residual(z, xi, l, t1, t2));
    }
    return out;
}

// f_lambda on the open orbits, lambda = -k omega

namespace detail {

inline double orbit_side(OrbitLabel s) {
    if (s == OrbitLabel::RealCircle) throw Error("f_lambda lives on an open orbit");
    return s == OrbitLabel::UpperHalfPlane ? 1.0 : -1.0;
}

}  // namespace detail

/** The real algebraic function (2 side Im z / (1 + |z|^2))^k on all of P^1 (0 at infinity). */
inline double f_lambda_extension(OrbitLabel s, std::optional<Complex> z, double k) {
    if (!z) return 0;
    return std::pow(2 * detail::orbit_side(s) * z->imag() / (1 + std::norm(*z)), k);
}

/** f_lambda = (h_nc / h_c)^k on S; positive there. */
inline double f_lambda(OrbitLabel s, Complex z, double k) {
    if (detail::orbit_side(s) * z.imag() <= 0) throw Error("f_lambda: point not in the open orbit");
    return f_lambda_extension(s, z, k);
}

/** Holomorphic part d log f = xi dz (Wirtinger), same formula on both open orbits. */
inline Complex d_log_f(Complex z, double k) {
    if (z.imag() == 0) throw Error("d log f: point on the boundary circle");
    return k * (Complex(0, -1) / (2 * z.imag()) - std::conj(z) / (1 + std::norm(z)));
}

/** Partial derivatives of d_log_f in x and y. */
inline std::pair<Complex, Complex> d_log_f_partials(Complex z, double k) {
    const double x = z.real(), y = z.imag(), a = 1 + std::norm(z);
    const Complex zb = std::conj(z);
    const Complex dx = -(a - zb * 2.0 * x) / (a * a);
    const Complex dy = Complex(0, 1) / (2 * y * y) - (Complex(0, -1) * a - zb * 2.0 * y) / (a * a);
    return {k * dx, k * dy};
}

// Cycles

enum class CycleKind { Conormal, DlogfGraph, OrbitSheet, Su2Orbit };

inline const char* to_string(CycleKind k) {
    switch (k) {
        case CycleKind::Conormal: return "conormal";
        case CycleKind::DlogfGraph: return "dlogf";
        case CycleKind::OrbitSheet: return "orbit";
        case CycleKind::Su2Orbit: return "su2_orbit";
    }
    return "?";
}

/** One point of a parameterized cycle. density = omega(d/da, d/db) before orientation. */
struct CycleSample {
    double a = 0, b = 0;
    std::optional<Complex> z;
    Complex xi = 0;
    Mat2c eta = Mat2c::Zero();
    Complex density = 0;
};

/**
 * @brief An oriented 2-chain parameterized by (a, b) in [a_min, a_max] x fiber range.
 *
 * b is the fiber parameter: b in [-B(r), B(r)] when fiber_symmetric, else [0, B(r)],
 * with B(r) the bound that realizes the truncation D(r). omega is -sigma + pi^* tau_lambda
 * for cycles in T*X and sigma_lambda for orbit sheets.
 */
struct Cycle {
    CycleKind kind;
    Complex l;
    double a_min, a_max;
    bool fiber_symmetric;
    std::function<double(double)> fiber_bound;
    std::function<CycleSample(double, double)> at;
    int orientation = 1;  ///< relative to the parameter order (a, b)

    Cycle flipped() const {
        Cycle c = *this;
        c.orientation = -orientation;
        return c;
    }
};

/** Overall orbit-sheet sign, calibrated once on the k = 1 discrete series against pair_algebra. */
inline constexpr int kOrbitOrientationSign = +1;

namespace detail {

inline Mat2 rotation(double phi) {
    Mat2 k;
    k << std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi);
    return k;
}

inline Complex mobius(const Mat2& g, Complex w) { return (g(0, 0) * w + g(0, 1)) / (g(1, 0) * w + g(1, 1)); }

inline Complex base_point(OrbitLabel s) { return Complex(0, orbit_side(s)); }

/** Sign of the real 2-form dx ^ dy on (u, v). */
inline int area_sign(Complex u, Complex v) { return (u.real() * v.imag() - u.imag() * v.real()) > 0 ? 1 : -1; }

}  // namespace detail

/** -sigma + pi^* tau_lambda on two tangent vectors at z. */
inline Complex cotangent_density(Complex z, Complex l, const Tangent& t1, const Tangent& t2) {
    return -sigma(t1, t2) + tau_lambda(z, l, t1.dz, t2.dz);
}

/**
 * Conormal bundle of the real circle: x = tan a, xi = i t cos^2 a, so that
 * mu = i t [[s c, -s^2], [c^2, -s c]] and ||xi|| = |t|. Oriented by -Im sigma.
 */
inline Cycle conormal_circle_cycle(Complex l) {
    Cycle c{CycleKind::Conormal, l, -std::numbers::pi / 2, std::numbers::pi / 2, true, [](double r) { return r; }, {}, 1};
    c.at = [l](double a, double t) {
        const double s = std::sin(a), co = std::cos(a), x = std::tan(a);
        CycleSample out;
        out.a = a;
        out.b = t;
        out.z = Complex(x);
        out.xi = Complex(0, t * co * co);
        Mat2c n;
        n << s * co, -s * s, co * co, -s * co;
        out.eta = lambda_x(Chart::Z, x, l).matrix + Complex(0, t) * n;
        const Tangent ta{1 / (co * co), Complex(0, -2 * t * s * co)}, tt{0.0, Complex(0, co * co)};
        out.density = -sigma(ta, tt);  // tau_lambda vanishes: both tangents lie over the real line
        return out;
    };
    const CycleSample ref = c.at(0.3, 1.0);
    const Complex sigma_ref = -ref.density;
    c.orientation = -sigma_ref.imag() > 0 ? 1 : -1;
    return c;
}

/**
 * Graph of d log f over the open orbit S, parameterized through g = k(phi) a(s),
 * z = g.x0, phi in [0, pi], s in [0, B(r)]; ||d log f|| = k sinh 2s. Complex orientation of S.
 */
inline Cycle dlogf_graph_cycle(OrbitLabel s, Complex l) {
    const double k = -l.real();
    if (l.imag() != 0 || !(k > 0)) throw Error("d log f graph needs lambda(H) real and negative");
    const Complex x0 = detail::base_point(s);
    Cycle c{CycleKind::DlogfGraph, l, 0, std::numbers::pi, false, [k](double r) { return std::asinh(r / k) / 2; }, {}, 1};
    c.at = [l, k, x0](double phi, double sp) {
        const Mat2 rot = detail::rotation(phi);
        const Complex w = x0 * std::exp(2 * sp);
        const Complex z = detail::mobius(rot, w);
        const Complex den = -std::sin(phi) * w + std::cos(phi);
        const Complex dz_ds = 2.0 * w / (den * den);
        const Complex dz_dphi = 1.0 + z * z;
        const auto [gx, gy] = d_log_f_partials(z, k);
        auto dxi = [&](Complex dz) { return gx * dz.real() + gy * dz.imag(); };
        CycleSample out;
        out.a = phi;
        out.b = sp;
        out.z = z;
        out.xi = d_log_f(z, k);
        out.eta = twisted_moment({Chart::Z, z, out.xi}, l).matrix;
        out.density = cotangent_density(z, l, {dz_dphi, dxi(dz_dphi)}, {dz_ds, dxi(dz_ds)});
        return out;
    };
    const CycleSample ref = c.at(0.3, 0.5);
    const double h = 1e-6;
    const Complex za = *c.at(0.3 + h, 0.5).z - *ref.z, zb = *c.at(0.3, 0.5 + h).z - *ref.z;
    c.orientation = detail::area_sign(za, zb);
    return c;
}

/**
 * Elliptic orbit Omega(S, lambda) = G_R . lambda_{x0}, parameterized by eta = Ad(k(phi) a(s)) lambda_{x0},
 * with sigma_lambda(d/dphi, d/ds) = tr(eta [E - F, Ad(k) H]). Oriented so that -i sigma_lambda > 0,
 * times kOrbitOrientationSign.
 */
inline Cycle omega_orbit_cycle(OrbitLabel s, Complex l) {
    if (s == OrbitLabel::RealCircle) throw Error("the circle carries no elliptic orbit");
    if (std::abs(l) < 1e-12) throw NotRegular("lambda = 0");
    const double k = std::abs(l);
    const Complex x0 = detail::base_point(s);
    const Mat2c base = lambda_x(Chart::Z, x0, l).matrix;
    Cycle c{CycleKind::OrbitSheet, l, 0, std::numbers::pi, false, [k](double r) { return std::asinh(r / k) / 2; }, {}, 1};
    c.at = [base, x0](double phi, double sp) {
        const Mat2 rot = detail::rotation(phi);
        Mat2 g = rot;
        g.col(0) *= std::exp(sp);
        g.col(1) *= std::exp(-sp);
        const Mat2c gc = g.cast<Complex>();
        CycleSample out;
        out.a = phi;
        out.b = sp;
        out.z = detail::mobius(g, x0);
        out.eta = gc * base * gc.inverse();
        const Mat2c zs = (rot.cast<Complex>() * sl2::H() * rot.transpose().cast<Complex>());
        out.density = sl2::pair(out.eta, sl2::bracket(sl2::E() - sl2::F(), zs));
        return out;
    };
    const CycleSample ref = c.at(0.3, 0.5);
    c.orientation = kOrbitOrientationSign * ((Complex(0, -1) * ref.density).real() > 0 ? 1 : -1);
    return c;
}

/**
 * SU(2) orbit {lambda_z} (sphere), z = tan(t/2) e^{i p}, (a, b) = (p, t);
 * sigma_lambda = pi^* tau_lambda on the zero section. Oriented so that -i sigma_lambda > 0.
 */
inline Cycle su2_orbit_cycle(Complex l) {
    if (std::abs(l) < 1e-12) throw NotRegular("lambda = 0");
    Cycle c{CycleKind::Su2Orbit, l, 0, 2 * std::numbers::pi, false, [](double) { return std::numbers::pi; }, {}, 1};
    c.at = [l](double p, double t) {
        const double rho = std::tan(t / 2);
        const Complex e = std::exp(Complex(0, p));
        const Complex z = rho * e;
        const Complex dz_dp = Complex(0, 1) * z, dz_dt = 0.5 / (std::cos(t / 2) * std::cos(t / 2)) * e;
        CycleSample out;
        out.a = p;
        out.b = t;
        out.z = z;
        out.eta = lambda_x(Chart::Z, z, l).matrix;
        out.density = tau_lambda(z, l, dz_dp, dz_dt);
        return out;
    };
    const CycleSample ref = c.at(0.3, 1.0);
    c.orientation = (Complex(0, -1) * ref.density).real() > 0 ? 1 : -1;
    return c;
}

/** Regular na x nb grid of samples of C truncated at radius r (densities include the orientation). */
inline std::vector<CycleSample> sample_cycle(const Cycle& c, double r, unsigned na, unsigned nb, Exec exec = {}) {
    const double bmax = c.fiber_bound(r), bmin = c.fiber_symmetric ? -bmax : 0.0;
    auto rows = parallel_map(
        std::size_t(na) * nb,
        [&](std::size_t idx) {
            const std::size_t i = idx / nb, j = idx % nb;
            const double a = c.a_min + (c.a_max - c.a_min) * (double(i) + 0.5) / na;
            const double b = bmin + (bmax - bmin) * (double(j) + 0.5) / nb;
            CycleSample s = c.at(a, b);
            s.density *= double(c.orientation);
            return s;
        },
        exec);
    return rows;
}

/** CSV columns: a,b,z_re,z_im,z_inf,xi_re,xi_im,eta00_re,eta00_im,eta01_re,eta01_im,eta10_re,eta10_im,density_re,density_im */
inline void write_cycle_csv(std::ostream& os, const std::vector<CycleSample>& samples) {
    os << "a,b,z_re,z_im,z_inf,xi_re,xi_im,eta00_re,eta00_im,eta01_re,eta01_im,eta10_re,eta10_im,density_re,density_im\n";
    const auto old = os.precision(17);
    for (const auto& s : samples) {
        const Complex z = s.z.value_or(0);
        os << s.a << ',' << s.b << ',' << z.real() << ',' << z.imag() << ',' << (s.z ? 0 : 1) << ',' << s.xi.real() << ','
           << s.xi.imag() << ',' << s.eta(0, 0).real() << ',' << s.eta(0, 0).imag() << ',' << s.eta(0, 1).real() << ','
           << s.eta(0, 1).imag() << ',' << s.eta(1, 0).real() << ',' << s.eta(1, 0).imag() << ',' << s.density.real() << ','
           << s.density.imag() << '\n';
    }
    os.precision(old);
}

}  // namespace geochar

/**
 * @file sl2.hpp
 * @brief Coordinates on sl(2): zeta = [[x, y], [z, -x]], the basis H, E, F, and the trace pairing.
 */
#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>

namespace geochar {

using Complex = std::complex<double>;
using Mat2c = Eigen::Matrix2cd;
using Mat2 = Eigen::Matrix2d;

/** A real traceless matrix [[x, y], [z, -x]]. */
struct Sl2 {
    double x = 0, y = 0, z = 0;

    double invariant() const { return x * x + y * z; }  ///< -det
    double norm2() const { return 2 * x * x + y * y + z * z; }
    std::array<double, 3> coords() const { return {x, y, z}; }
    Mat2 matrix() const {
        Mat2 m;
        m << x, y, z, -x;
        return m;
    }
    Mat2c cmatrix() const { return matrix().cast<Complex>(); }
    static Sl2 from(const Mat2& m) { return {(m(0, 0) - m(1, 1)) / 2, m(0, 1), m(1, 0)}; }
    friend Sl2 operator*(double c, Sl2 a) { return {c * a.x, c * a.y, c * a.z}; }
    friend Sl2 operator+(Sl2 a, Sl2 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
};

namespace sl2 {

inline Mat2c H() { Mat2c m; m << 1, 0, 0, -1; return m; }
inline Mat2c E() { Mat2c m; m << 0, 1, 0, 0; return m; }
inline Mat2c F() { Mat2c m; m << 0, 0, 1, 0; return m; }

/** <eta, Y> = tr(eta Y). */
inline Complex pair(const Mat2c& eta, const Mat2c& y) { return (eta * y).trace(); }

/** Quadratic invariant -det, which equals x^2 + yz on traceless matrices. */
inline Complex invariant(const Mat2c& eta) { return -eta.determinant(); }

inline Mat2c bracket(const Mat2c& a, const Mat2c& b) { return a * b - b * a; }

/** Complex 2x2 exponential of a traceless matrix: cosh(w) I + sinh(w)/w X with w^2 = -det X. */
inline Mat2c exp_traceless(const Mat2c& x) {
    const Complex w = std::sqrt(-x.determinant());
    const Complex c = std::cosh(w);
    const Complex s = std::abs(w) < 1e-8 ? Complex(1) + w * w / 6.0 : std::sinh(w) / w;
    return c * Mat2c::Identity() + s * x;
}

}  // namespace sl2
}  // namespace geochar

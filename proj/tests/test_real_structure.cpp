#include <geochar/real_structure.hpp>

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

using namespace geochar;

namespace {

using M2 = Eigen::Matrix2d;

Complex mobius(const M2& g, Complex z) { return (g(0, 0) * z + g(0, 1)) / (g(1, 0) * z + g(1, 1)); }

M2 random_sl2r(std::mt19937& rng) {
    std::normal_distribution<double> n(0, 1);
    for (;;) {
        M2 g;
        g << n(rng), n(rng), n(rng), n(rng);
        const double d = g.determinant();
        if (std::abs(d) < 0.1) continue;
        if (d < 0) g.col(0) *= -1;
        return g / std::sqrt(std::abs(g.determinant()));
    }
}

Sl2 conj(const M2& g, const Sl2& z) {
    M2 m;
    m << z.x, z.y, z.z, -z.x;
    M2 r = g * m * g.inverse();
    return {r(0, 0), r(0, 1), r(1, 0)};
}

}  // namespace

TEST(RealStructure, CartanClasses) {
    EXPECT_EQ(classify_cartans(Group::SL2R).size(), 2u);
    EXPECT_EQ(classify_cartans(Group::SU2).size(), 1u);
    EXPECT_EQ(classify_cartans(Group::SL2R)[1].kind, CartanKind::Split);
    EXPECT_EQ(classify_cartans(Group::SL2R)[1].component_group_order, 2);
    EXPECT_EQ(classify_cartans(Group::SL2R)[0].component_group_order, 1);
    EXPECT_THROW(parse_group("SL3R"), UnsupportedGroup);
    EXPECT_EQ(parse_group("SU2"), Group::SU2);
}

TEST(RealStructure, OrbitsMatchMobiusAction) {
    auto orbits = enumerate_orbits();
    ASSERT_EQ(orbits.size(), 3u);
    EXPECT_EQ(orbits[0].label, OrbitLabel::UpperHalfPlane);
    EXPECT_EQ(orbits[1].label, OrbitLabel::LowerHalfPlane);
    EXPECT_EQ(orbits[2].label, OrbitLabel::RealCircle);

    // invariance of each stratum and transitivity: z = x + iy is b(x,y).i
    std::mt19937 rng(1);
    std::normal_distribution<double> n(0, 2);
    for (int t = 0; t < 200; ++t) {
        const M2 g = random_sl2r(rng);
        const Complex z(n(rng), n(rng));
        const Complex w = mobius(g, z);
        for (const auto& o : orbits) EXPECT_EQ(o.contains(z), o.contains(w));
        const Complex r = mobius(g, Complex(n(rng), 0));
        EXPECT_NEAR(r.imag(), 0.0, 1e-12);
        if (z.imag() > 0) {
            M2 b;
            b << std::sqrt(z.imag()), z.real() / std::sqrt(z.imag()), 0, 1 / std::sqrt(z.imag());
            EXPECT_NEAR(std::abs(mobius(b, Complex(0, 1)) - z), 0.0, 1e-12);
        }
    }
    EXPECT_TRUE(orbits[2].contains(std::nullopt));
    EXPECT_FALSE(orbits[0].contains(std::nullopt));
}

TEST(RealStructure, AttachedCartansAndBasePoints) {
    auto orbits = enumerate_orbits();
    // SO(2) fixes i: stabiliser of the base point is the compact Cartan
    for (double th : {0.3, 1.1, 2.9}) {
        M2 k;
        k << std::cos(th), std::sin(th), -std::sin(th), std::cos(th);
        EXPECT_NEAR(std::abs(mobius(k, orbits[0].base_point) - orbits[0].base_point), 0.0, 1e-14);
        EXPECT_NEAR(std::abs(mobius(k, orbits[1].base_point) - orbits[1].base_point), 0.0, 1e-14);
        M2 a;
        a << std::exp(th), 0, 0, std::exp(-th);
        EXPECT_NEAR(std::abs(mobius(a, orbits[2].base_point)), 0.0, 1e-14);
    }
    EXPECT_EQ(orbits[0].attached_cartan.kind, CartanKind::Compact);
    EXPECT_EQ(orbits[1].attached_cartan.kind, CartanKind::Compact);
    EXPECT_EQ(orbits[2].attached_cartan.kind, CartanKind::Split);
    for (const auto& o : orbits) {
        EXPECT_TRUE(o.maximally_real);
        EXPECT_EQ(o.c_invariant, 0);
        EXPECT_EQ(o.maximally_real, maximally_real(orbit_root_conjugation(o)));
    }
    EXPECT_THROW(enumerate_orbits(Group::SU2), UnsupportedGroup);
}

TEST(RealStructure, MaximalRealityOnComplexRoots) {
    // A1xA1 viewed as sl(2,C): conjugation exchanges the two factors
    const Root a{{1, 0}}, b{{0, 1}};
    RootConjugation swap{{a, b}, [](const Root& r) { return Root{{r.coords[1], r.coords[0]}}; }};
    RootConjugation twisted{{a, b}, [](const Root& r) { return Root{{-r.coords[1], -r.coords[0]}}; }};
    EXPECT_TRUE(maximally_real(swap));
    EXPECT_FALSE(maximally_real(twisted));
}

TEST(RealStructure, ClassifyElementExamples) {
    auto c = classify_element({0, 1, -1});
    EXPECT_EQ(c.kind, CartanKind::Compact);
    EXPECT_EQ(c.component, 1);
    EXPECT_NEAR(c.parameter, 1.0, 1e-15);
    auto h = classify_element({1, 0, 0});
    EXPECT_EQ(h.kind, CartanKind::Split);
    EXPECT_NEAR(h.parameter, 1.0, 1e-15);
    EXPECT_EQ(classify_element({0, -2, 2}).component, -1);
    EXPECT_THROW(classify_element({0, 1, 0}), NotRegular);
    EXPECT_THROW(classify_element({0, 0, 0}), NotRegular);
    EXPECT_THROW(classify_element({1, 1, -1}), NotRegular);
    EXPECT_THROW(classify_element({std::nan(""), 1, 0}), NotRegular);
}

TEST(RealStructure, ClassifyElementIsConjugationInvariantAndGenericallyRegular) {
    std::mt19937 rng(42);
    std::normal_distribution<double> n(0, 1);
    for (int t = 0; t < 1000; ++t) {
        const Sl2 z{n(rng), n(rng), n(rng)};
        const auto a = classify_element(z);  // regular with probability 1
        const auto b = classify_element(conj(random_sl2r(rng), z));
        EXPECT_EQ(a.kind, b.kind);
        EXPECT_EQ(a.component, b.component);
        EXPECT_NEAR(a.parameter, b.parameter, 1e-9 * std::max(1.0, a.parameter));
    }
}

TEST(RealStructure, CartanElementRegularityAndComponents) {
    EXPECT_FALSE(CartanElement::compact(0).regular());
    EXPECT_FALSE(CartanElement::compact(std::numbers::pi).regular());
    EXPECT_TRUE(CartanElement::compact(1.0).regular());
    EXPECT_EQ(CartanElement::compact(1.0).component().sign, 1);
    EXPECT_EQ(CartanElement::compact(4.0).component().sign, -1);
    EXPECT_EQ(CartanElement::compact(-1.0).component().sign, -1);
    EXPECT_FALSE(CartanElement::split(1, 0).regular());
    EXPECT_EQ(CartanElement::split(-1, -0.5).component(), (Component{-1, -1}));
}

TEST(RealStructure, LocalSystemParameters) {
    const auto upper = orbit(OrbitLabel::UpperHalfPlane);
    const auto circle = orbit(OrbitLabel::RealCircle);
    EXPECT_EQ(local_system_params(upper, Weight{-1}).size(), 1u);
    EXPECT_EQ(local_system_params(upper, Weight{-3}).front().dchi, Complex(-4, 0));
    EXPECT_TRUE(local_system_params(upper, Weight({Rational(1, 2)})).empty());
    EXPECT_TRUE(local_system_params(upper, Complex(1, 0.5)).empty());
    auto cs = local_system_params(circle, Complex(0, 0.7));
    ASSERT_EQ(cs.size(), 2u);
    EXPECT_EQ(cs[0].chi_F, 1);
    EXPECT_EQ(cs[1].chi_F, -1);
    EXPECT_EQ(local_system_params(circle, Weight({Rational(1, 3)})).size(), 2u);
    EXPECT_THROW(local_system_params(upper, Weight{1, 1}), RankMismatch);
    EXPECT_THROW(open_orbit_sheaf(OrbitLabel::LowerHalfPlane, Complex(0.5, 0)), Error);
}

TEST(RealStructure, CoveringDegreeAndWeylExchange) {
    auto same = [](std::optional<Complex> a, std::optional<Complex> b) {
        if (!a || !b) return !a && !b;
        return std::abs(*a - *b) < 1e-12;
    };
    for (double th : {0.3, 1.2, 2.0, 3.5, 5.9}) {
        const auto pts = flag_fixed_points(matrix_of(CartanElement::compact(th)).cast<Complex>());
        ASSERT_EQ(pts.size(), 2u);
        for (const auto& p : pts) EXPECT_TRUE(same(p, Complex(0, 1)) || same(p, Complex(0, -1)));
        EXPECT_FALSE(same(pts[0], pts[1]));
    }
    for (int eps : {1, -1})
        for (double s : {-2.0, -0.1, 0.4, 1.5}) {
            const auto pts = flag_fixed_points(matrix_of(CartanElement::split(eps, s)).cast<Complex>());
            ASSERT_EQ(pts.size(), 2u);
            EXPECT_TRUE((same(pts[0], std::nullopt) && same(pts[1], Complex(0))) || (same(pts[1], std::nullopt) && same(pts[0], Complex(0))));
        }
    EXPECT_TRUE(flag_fixed_points(Mat2c::Identity()).empty());
    EXPECT_EQ(flag_fixed_points((Mat2c() << 1, 1, 0, 1).finished()).size(), 0u);  // parabolic: one point at infinity, degenerate
    EXPECT_TRUE(same(act_on_flag(weyl_representative(CartanKind::Compact), Complex(0, 1)), Complex(0, -1)));
    EXPECT_TRUE(same(act_on_flag(weyl_representative(CartanKind::Split), Complex(0)), std::nullopt));
    EXPECT_TRUE(same(act_on_flag(weyl_representative(CartanKind::Split), std::nullopt), Complex(0)));
    // the representatives normalize the Cartans
    const Mat2c g = matrix_of(CartanElement::compact(0.7)).cast<Complex>(), n = weyl_representative(CartanKind::Compact);
    EXPECT_NEAR((n * g * n.inverse() - matrix_of(CartanElement::compact(-0.7)).cast<Complex>()).norm(), 0, 1e-14);
}

#include <geochar/compact_char.hpp>

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace geochar;

namespace {

// sl(3) weights by Gelfand-Tsetlin patterns: top row (a+b, b, 0).
std::map<Weight, long long> gt_multiplicities(long long a, long long b) {
    const long long l1 = a + b, l2 = b, l3 = 0;
    std::map<Weight, long long> out;
    for (long long m1 = l2; m1 <= l1; ++m1)
        for (long long m2 = l3; m2 <= l2; ++m2)
            for (long long p = m2; p <= m1; ++p) {
                const long long w1 = p, w2 = m1 + m2 - p, w3 = l1 + l2 + l3 - m1 - m2;
                out[Weight{w1 - w2, w2 - w3}] += 1;
            }
    return out;
}

// Weyl dimension product over an explicit Euclidean realisation.
double euclidean_dimension(const std::vector<std::vector<double>>& pos_roots, const std::vector<double>& lam_plus_rho,
                           const std::vector<double>& rho) {
    auto dot = [](const std::vector<double>& u, const std::vector<double>& v) {
        double s = 0;
        for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
        return s;
    };
    double d = 1;
    for (const auto& a : pos_roots) d *= dot(lam_plus_rho, a) / dot(rho, a);
    return d;
}

std::vector<double> random_theta(std::mt19937& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::vector<double> t(n);
    for (auto& x : t) x = u(rng);
    return t;
}

}  // namespace

TEST(CompactChar, A1Examples) {
    auto rs = build_root_system("A1");
    EXPECT_NEAR(std::abs(weyl_character(rs, Weight{0}, {0.9}) - 1.0), 0.0, 1e-14);
    // weight sums: 2 cos(pi/3), and 2 cos(pi) + 1
    EXPECT_NEAR(weyl_character(rs, Weight{1}, {std::numbers::pi / 3}).real(), 2 * std::cos(std::numbers::pi / 3), 1e-12);
    EXPECT_NEAR(weyl_character(rs, Weight{2}, {std::numbers::pi / 2}).real(), 2 * std::cos(std::numbers::pi) + 1, 1e-12);
    EXPECT_NEAR(weyl_character(rs, Weight{2}, {std::numbers::pi / 2}).imag(), 0.0, 1e-12);
}

TEST(CompactChar, RejectsNonDominantAndSingular) {
    auto rs = build_root_system("A2");
    EXPECT_THROW(weyl_character(rs, Weight{-1, 0}, {0.3, 0.4}), NotDominant);
    EXPECT_THROW(weyl_character(rs, Weight({Rational(1, 2), Rational(0)}), {0.3, 0.4}), NotDominant);
    EXPECT_THROW(weyl_character(rs, Weight{1, 0}, {0.3}), RankMismatch);
    try {
        weyl_character(rs, Weight{1, 1}, {0.35, 0.7});  // 2 theta_1 - theta_2 = 0
        FAIL() << "expected SingularPoint";
    } catch (const SingularPoint& e) {
        EXPECT_EQ(e.root(), "[1,0]");
    }
    try {
        weyl_character(rs, Weight{1, 1}, {0.5, -0.5});  // alpha_1 + alpha_2 pairs to 0
        FAIL() << "expected SingularPoint";
    } catch (const SingularPoint& e) {
        EXPECT_EQ(e.root(), "[1,1]");
    }
    EXPECT_THROW(weyl_character(build_root_system("A1"), Weight{1}, {2 * std::numbers::pi}), SingularPoint);
}

TEST(CompactChar, A1LadderMultiplicities) {
    auto rs = build_root_system("A1");
    for (long long m = 0; m <= 6; ++m) {
        auto mult = weight_multiplicities(rs, Weight{m});
        ASSERT_EQ(mult.size(), std::size_t(m + 1));
        for (long long j = -m; j <= m; j += 2) EXPECT_EQ(mult.at(Weight{j}), 1);
        EXPECT_EQ(dimension(rs, Weight{m}), m + 1);
    }
    auto two = weight_multiplicities(rs, Weight{2});
    EXPECT_EQ(two, (std::map<Weight, long long>{{Weight{2}, 1}, {Weight{0}, 1}, {Weight{-2}, 1}}));
}

TEST(CompactChar, ZeroWeightGivesTrivialModule) {
    for (std::string t : {"A1", "A2", "B2", "G2", "A1xA1"}) {
        auto rs = build_root_system(t);
        auto mult = weight_multiplicities(rs, Weight::zero(rs.rank));
        EXPECT_EQ(mult.size(), 1u);
        EXPECT_EQ(mult.begin()->second, 1);
        EXPECT_EQ(dimension(rs, Weight::zero(rs.rank)), 1);
    }
}

TEST(CompactChar, A2MatchesGelfandTsetlin) {
    auto rs = build_root_system("A2");
    for (long long a = 0; a <= 4; ++a)
        for (long long b = 0; b <= 4; ++b) {
            EXPECT_EQ(weight_multiplicities(rs, Weight{a, b}), gt_multiplicities(a, b)) << a << "," << b;
        }
    EXPECT_EQ(weight_multiplicities(rs, Weight{1, 1}).at(Weight{0, 0}), 2);
    EXPECT_EQ(dimension(rs, Weight{1, 1}), 8);
}

TEST(CompactChar, DimensionMatchesEuclideanWeylProductAndMultiplicitySum) {
    // B2: e1-e2 (long), e2 (short); omega1 = e1, omega2 = (e1+e2)/2
    const std::vector<std::vector<double>> b2_pos{{1, -1}, {0, 1}, {1, 0}, {1, 1}};
    // G2 in the plane sum = 0 of R^3: alpha1 = e1-e2 (short), alpha2 = -2e1+e2+e3 (long)
    const std::vector<std::vector<double>> g2_pos{{1, -1, 0}, {-2, 1, 1}, {-1, 0, 1}, {0, -1, 1}, {1, -2, 1}, {-1, -1, 2}};
    const std::vector<double> g2_w1{0, -1, 1}, g2_w2{-1, -1, 2};
    auto rs_b2 = build_root_system("B2");
    auto rs_g2 = build_root_system("G2");
    for (long long a = 0; a <= 4; ++a)
        for (long long b = 0; b <= 4; ++b) {
            const std::vector<double> lr{(a + 1) + (b + 1) / 2.0, (b + 1) / 2.0};
            const double dim_b2 = euclidean_dimension(b2_pos, lr, {1.5, 0.5});
            EXPECT_EQ(dimension(rs_b2, Weight{a, b}), std::llround(dim_b2));
            long long total = 0;
            for (const auto& [mu, m] : weight_multiplicities(rs_b2, Weight{a, b})) total += m;
            EXPECT_EQ(total, dimension(rs_b2, Weight{a, b}));
        }
    for (long long a = 0; a <= 2; ++a)
        for (long long b = 0; b <= 2; ++b) {
            std::vector<double> lr(3), r(3);
            for (int i = 0; i < 3; ++i) {
                lr[i] = (a + 1) * g2_w1[i] + (b + 1) * g2_w2[i];
                r[i] = g2_w1[i] + g2_w2[i];
            }
            EXPECT_EQ(dimension(rs_g2, Weight{a, b}), std::llround(euclidean_dimension(g2_pos, lr, r)));
            long long total = 0;
            for (const auto& [mu, m] : weight_multiplicities(rs_g2, Weight{a, b})) total += m;
            EXPECT_EQ(total, dimension(rs_g2, Weight{a, b}));
        }
    EXPECT_EQ(dimension(rs_g2, Weight{1, 0}), 7);
    EXPECT_EQ(dimension(rs_g2, Weight{0, 1}), 14);
}

TEST(CompactChar, MultiplicitiesAreWeylInvariant) {
    for (std::string t : {"A2", "B2", "G2"}) {
        auto rs = build_root_system(t);
        auto ws = enumerate_weyl(rs);
        auto mult = weight_multiplicities(rs, Weight{2, 1});
        for (const auto& [mu, m] : mult)
            for (const auto& w : ws) EXPECT_EQ(mult.at(act(w, mu)), m) << t;
    }
}

TEST(CompactChar, WeylFormulaMatchesWeightSumOnSample) {
    std::mt19937 rng(11);
    for (std::string t : {"A1", "A2", "B2", "G2"}) {
        auto rs = build_root_system(t);
        const long long cap = (t == "G2") ? 2 : 3;
        std::vector<Weight> lams;
        if (rs.rank == 1)
            for (long long a = 0; a <= cap; ++a) lams.push_back(Weight{a});
        else
            for (long long a = 0; a <= cap; ++a)
                for (long long b = 0; b <= cap; ++b) lams.push_back(Weight{a, b});
        for (const auto& lam : lams) {
            auto mult = weight_multiplicities(rs, lam);
            for (int trial = 0; trial < 10; ++trial) {
                auto th = random_theta(rng, rs.rank);
                EXPECT_LE(std::abs(weyl_character(rs, lam, th) - weight_sum_character(mult, th)), 1e-9)
                    << t << " " << lam.str();
            }
        }
    }
}

TEST(CompactChar, ConjugationSymmetry) {
    std::mt19937 rng(5);
    for (std::string t : {"A2", "B2", "G2"}) {
        auto rs = build_root_system(t);
        for (int trial = 0; trial < 20; ++trial) {
            auto th = random_theta(rng, rs.rank);
            std::vector<double> neg(th.size());
            for (std::size_t i = 0; i < th.size(); ++i) neg[i] = -th[i];
            Weight lam{2, 1};
            EXPECT_LE(std::abs(weyl_character(rs, lam, neg) - std::conj(weyl_character(rs, lam, th))), 1e-10);
        }
    }
}

TEST(CompactChar, SelfDualCharactersAreReal) {
    std::mt19937 rng(17);
    for (auto [t, lam] : std::vector<std::pair<std::string, Weight>>{
             {"A1", Weight{3}}, {"B2", Weight{1, 2}}, {"G2", Weight{2, 1}}, {"A2", Weight{2, 2}}}) {
        auto rs = build_root_system(t);
        for (int trial = 0; trial < 20; ++trial)
            EXPECT_LE(std::abs(weyl_character(rs, lam, random_theta(rng, rs.rank)).imag()), 1e-10) << t;
    }
}

TEST(CompactChar, SmallAngleLimitIsDimension) {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.5, 1.5);
    for (std::string t : {"A1", "A2", "B2", "G2"}) {
        auto rs = build_root_system(t);
        Weight lam = rs.rank == 1 ? Weight{3} : Weight{1, 2};
        std::vector<double> th(rs.rank);
        for (std::size_t i = 0; i < rs.rank; ++i) th[i] = 1e-4 * u(rng) * (i + 1.3);
        const double dim = double(dimension(rs, lam));
        EXPECT_LE(std::abs(weyl_character(rs, lam, th) - dim), 1e-4 * dim) << t;
    }
}

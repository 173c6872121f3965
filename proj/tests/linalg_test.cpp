#include "mfobs/linalg.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "mfobs/checks.hpp"
#include "mfobs/errors.hpp"

namespace mfobs {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Skew, MatchesCrossProduct) {
    const Vec3 v(1.0, 2.0, 3.0);
    Mat3 expected;
    expected << 0, -3, 2, 3, 0, -1, -2, 1, 0;
    EXPECT_EQ(skew(v), expected);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 a(u(rng), u(rng), u(rng));
        const Vec3 b(u(rng), u(rng), u(rng));
        EXPECT_LE((skew(a) * b - a.cross(b)).norm(), 1e-12);
    }
}

TEST(Vee, InvertsSkew) {
    Mat3 m;
    m << 0, -3, 2, 3, 0, -1, -2, 1, 0;
    EXPECT_EQ(vee(m), Vec3(1.0, 2.0, 3.0));

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 v(u(rng), u(rng), u(rng));
        EXPECT_EQ(vee(skew(v)), v);
    }
}

TEST(Vee, RejectsNonSkew) {
    EXPECT_THROW(vee(Mat3::Identity()), NotSkew);
    Mat3 almost = skew(Vec3(1, 2, 3));
    almost(0, 0) = 1e-6;
    EXPECT_THROW(vee(almost), NotSkew);
    almost(0, 0) = 1e-12;
    EXPECT_NO_THROW(vee(almost));
}

TEST(AntisymVee, DefinedOnAnyMatrix) {
    Mat3 m;
    m << 1, 2, 3, 4, 5, 6, 7, 8, 10;
    // M - M^T = [[0,-2,-4],[2,0,-2],[4,2,0]]
    EXPECT_EQ(antisym_vee(m), Vec3(2.0, -4.0, 2.0));
}

TEST(Frobenius, MatchesTraceDefinition) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        Mat3 a;
        Mat3 b;
        for (int k = 0; k < 9; ++k) {
            a(k) = u(rng);
            b(k) = u(rng);
        }
        double brute = 0.0;
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                brute += a(r, c) * b(r, c);
            }
        }
        EXPECT_NEAR(frobenius_inner(a, b), brute, 1e-12);
        EXPECT_NEAR(frobenius_inner(a, b), (a.transpose() * b).trace(), 1e-12);
    }
}

TEST(So3Exp, ZeroIsIdentity) {
    EXPECT_EQ(so3_exp(Vec3::Zero()).matrix(), Mat3::Identity());
}

TEST(So3Exp, QuarterTurnAboutZ) {
    Mat3 expected;
    expected << 0, -1, 0, 1, 0, 0, 0, 0, 1;
    EXPECT_LE((so3_exp(Vec3(0, 0, kPi / 2)).matrix() - expected).norm(), 1e-15);
}

TEST(So3Exp, HalfTurnAboutX) {
    const Mat3 expected = Vec3(1, -1, -1).asDiagonal();
    EXPECT_LE((so3_exp(Vec3(kPi, 0, 0)).matrix() - expected).norm(), 1e-15);
}

TEST(So3Exp, SmallAngleBranchIsContinuous) {
    for (double th : {1e-10, 1e-8, 9.99e-9, 1.01e-8, 1e-6}) {
        const Vec3 v = th * Vec3(1, 2, 2) / 3.0;
        const Mat3 series = Mat3::Identity() + skew(v) + 0.5 * skew(v) * skew(v);
        EXPECT_LE((so3_exp(v).matrix() - series).norm(), 1e-15) << th;
    }
}

TEST(So3Exp, StaysOnGroup) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const Mat3 r = so3_exp(Vec3(u(rng), u(rng), u(rng))).matrix();
        EXPECT_LE(orthonormality_error(r), 1e-13);
        EXPECT_NEAR(r.determinant(), 1.0, 1e-13);
    }
}

TEST(RotationMatrix3, ValidatesOnConstruction) {
    EXPECT_NO_THROW(RotationMatrix3(Mat3::Identity()));
    EXPECT_THROW(RotationMatrix3(Mat3(2.0 * Mat3::Identity())), Error);
    EXPECT_THROW(RotationMatrix3(Mat3(Vec3(1, 1, -1).asDiagonal())), Error);  // reflection
}

TEST(Rot2, MatchesDefinitionAndIsPeriodic) {
    Mat2 expected;
    expected << 0, -1, 1, 0;
    EXPECT_LE((rot2(kPi / 2).matrix() - expected).norm(), 1e-16);
    EXPECT_EQ(so2_generator(), expected);
    for (double th : {-3.0, -0.5, 0.0, 0.7, 2.9}) {
        EXPECT_LE((rot2(th).matrix() - rot2(th + 2 * kPi).matrix()).norm(), 1e-14);
        EXPECT_LE(orthonormality_error(rot2(th).matrix()), 1e-15);
    }
}

TEST(Rot2, GeneratorIsDerivativeAtZero) {
    const double h = 1e-6;
    const Mat2 fd = (rot2(h).matrix() - rot2(-h).matrix()) / (2 * h);
    EXPECT_LE((fd - so2_generator()).norm(), 1e-9);
}

// trace([w]_x Theta) == w^T vec(Theta^T - Theta)
TEST(SkewProduct, TraceIdentity) {
    Mat3 theta;
    theta << 1, 2, 3, 4, 5, 6, 7, 8, 9;
    const Vec3 w(1, 0, 0);
    EXPECT_NEAR((skew(w) * theta).trace(), w.dot(antisym_vee(theta.transpose())), 1e-14);
    EXPECT_LE(property1_max_error(11, 10000), 1e-10);
}

TEST(SkewProduct, NonvanishingProduct) {
    const Mat3 zero_product = skew(Vec3::Zero()) * Mat3::Random();
    EXPECT_EQ(zero_product.norm(), 0.0);
    EXPECT_EQ(property2_violations(12, 10000), 0);
}

}  // namespace
}  // namespace mfobs

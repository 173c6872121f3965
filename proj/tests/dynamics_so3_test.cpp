#include "mfobs/dynamics_so3.hpp"

#include <random>

#include <gtest/gtest.h>

#include "mfobs/errors.hpp"

namespace mfobs {
namespace {

Mat3 wu_j0() { return Vec3(5.0, 1.0, 2.0).asDiagonal(); }

TEST(Inertia, RejectsNonSpd) {
    EXPECT_NO_THROW(InertiaSO3{wu_j0()});
    EXPECT_THROW(InertiaSO3(Mat3(Vec3(1, -1, 1).asDiagonal())), ValidationError);
    Mat3 asym = wu_j0();
    asym(0, 1) = 0.5;
    EXPECT_THROW(InertiaSO3{asym}, ValidationError);
    try {
        InertiaSO3{Mat3::Zero()};
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.field(), "inertia.J0");
    }
}

TEST(PlantRhs, SpinAboutBodyX) {
    const InertiaSO3 inertia(wu_j0());
    const auto d = plant_rhs(Mat3::Identity(), Vec3(5, 0, 0), Vec3::Zero(), inertia);
    EXPECT_LE((d.dR - skew(Vec3(1, 0, 0))).norm(), 1e-15);
    EXPECT_EQ(d.dq, Vec3::Zero());
}

TEST(PlantRhs, TorqueDrivesMomentum) {
    const InertiaSO3 inertia(wu_j0());
    const auto d = plant_rhs(Mat3::Identity(), Vec3::Zero(), Vec3(0.1, 0.2, 0.3), inertia);
    EXPECT_EQ(d.dR, Mat3::Zero());
    EXPECT_EQ(d.dq, Vec3(0.1, 0.2, 0.3));
}

TEST(OmegaTrue, InvertsInertia) {
    const InertiaSO3 inertia(wu_j0());
    const PlantStateSO3 s{RotationMatrix3::identity(), Vec3(5, -1.5, 5)};
    EXPECT_LE((omega_true(s, inertia) - Vec3(1, -1.5, 2.5)).norm(), 1e-15);
}

TEST(OmegaTrue, FrameCovariant) {
    const InertiaSO3 inertia(wu_j0());
    const RotationMatrix3 r = so3_exp(Vec3(0.3, -0.2, 1.1));
    const Vec3 w0(1, -1.5, 2.5);
    const Vec3 q = r.matrix() * wu_j0() * r.matrix().transpose() * w0;
    EXPECT_LE((omega_true({r, q}, inertia) - w0).norm(), 1e-13);
}

TEST(Innovation, Examples) {
    EXPECT_EQ(innovation(Mat3::Identity(), Mat3::Identity()), Vec3::Zero());
    const Mat3 rhat = Mat3::Identity() - skew(Vec3(0, 0, 1));
    EXPECT_LE((innovation(Mat3::Identity(), rhat) - Vec3(0, 0, 2)).norm(), 1e-15);
}

TEST(ObserverRhs, ZeroEstimateIsPulledTowardMeasurement) {
    const InertiaSO3 inertia(wu_j0());
    const GainsSO3 gains(100.0 * wu_j0(), CorrectionMap::scalar(20.0));
    const ObserverStateSO3 o{Mat3::Zero(), Vec3::Zero()};
    const auto d = observer_rhs(o, Mat3::Identity(), Vec3::Zero(), gains, inertia);
    EXPECT_LE((d.dRhat - 20.0 * Mat3::Identity()).norm(), 1e-14);
    // Rt = I is symmetric, so the innovation vanishes.
    EXPECT_LE(d.dqhat.norm(), 1e-14);
}

TEST(ObserverRhs, OnAttractorMatchesPlant) {
    const InertiaSO3 inertia(wu_j0());
    const GainsSO3 gains(100.0 * wu_j0(), CorrectionMap::scalar(20.0));
    const RotationMatrix3 r = so3_exp(Vec3(0.7, 0.1, -0.4));
    const Vec3 q(1.0, 2.0, -3.0);
    const Vec3 u(0.5, 0.0, 0.1);
    const auto p = plant_rhs(r.matrix(), q, u, inertia);
    const auto o = observer_rhs({r.matrix(), q}, r.matrix(), u, gains, inertia);
    EXPECT_LE((o.dRhat - p.dR).norm(), 1e-14);
    EXPECT_LE((o.dqhat - p.dq).norm(), 1e-14);
}

TEST(ObserverRhs, DiagonalCorrectionActsOnColumns) {
    const CorrectionMap g = CorrectionMap::diagonal(Vec3(1, 2, 3));
    const Mat3 x = Mat3::Ones();
    Mat3 expected;
    expected << 1, 2, 3, 1, 2, 3, 1, 2, 3;
    EXPECT_EQ(g.apply(x), expected);
    EXPECT_EQ(CorrectionMap::scalar(4.0).apply(x), Mat3::Constant(4.0));
}

TEST(Gains, Validation) {
    EXPECT_THROW(GainsSO3(Mat3::Identity(), CorrectionMap::scalar(0.0)), ValidationError);
    EXPECT_THROW(GainsSO3(Mat3::Identity(), CorrectionMap::diagonal(Vec3(1, 0, 1))), ValidationError);
    EXPECT_THROW(GainsSO3(Mat3(-Mat3::Identity()), CorrectionMap::scalar(1.0)), ValidationError);
}

TEST(Lyapunov, Examples) {
    const GainsSO3 gains(Mat3::Identity(), CorrectionMap::scalar(20.0));
    EXPECT_DOUBLE_EQ(lyapunov_V(Mat3::Identity(), Vec3::Zero(), Mat3::Identity()), 1.5);
    EXPECT_DOUBLE_EQ(lyapunov_V(Mat3::Zero(), Vec3(1, 0, 0), Mat3(2.0 * Mat3::Identity())), 0.25);
    EXPECT_DOUBLE_EQ(lyapunov_Vdot(Mat3::Identity(), gains), -60.0);
    EXPECT_EQ(lyapunov_V(Mat3::Zero(), Vec3::Zero(), Mat3::Identity()), 0.0);
    EXPECT_EQ(distance_to_attractor(Mat3::Zero(), Vec3::Zero()), 0.0);
}

// V is positive definite and Vdot is negative semidefinite for any gains.
TEST(Lyapunov, SignProperties) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_real_distribution<double> pos(0.1, 10.0);
    for (int i = 0; i < 500; ++i) {
        Mat3 rt;
        for (int k = 0; k < 9; ++k) {
            rt(k) = u(rng);
        }
        const Vec3 qt(u(rng), u(rng), u(rng));
        Mat3 a;
        for (int k = 0; k < 9; ++k) {
            a(k) = u(rng);
        }
        const Mat3 k = a * a.transpose() + Mat3::Identity();
        const GainsSO3 g(k, i % 2 ? CorrectionMap::scalar(pos(rng))
                                  : CorrectionMap::diagonal(Vec3(pos(rng), pos(rng), pos(rng))));
        EXPECT_GT(lyapunov_V(rt, qt, k), 0.0);
        EXPECT_LT(lyapunov_Vdot(rt, g), 0.0);
    }
}

TEST(KineticEnergy, Example) {
    const InertiaSO3 inertia(wu_j0());
    const PlantStateSO3 s{RotationMatrix3::identity(), Vec3(5, 0, 0)};
    EXPECT_DOUBLE_EQ(kinetic_energy(s, inertia), 2.5);
}

}  // namespace
}  // namespace mfobs

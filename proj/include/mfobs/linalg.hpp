#pragma once

// Small fixed-size linear algebra and the rotation-group operators used by
// the plant and observer models.

#include <Eigen/Dense>

namespace mfobs {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kTolSkew = 1e-9;
inline constexpr double kTolOrth = 1e-9;
inline constexpr double kRodriguesSmallAngle = 1e-8;

/// ||M^T M - I||_F.
template <typename Derived>
double orthonormality_error(const Eigen::MatrixBase<Derived>& m) {
    using Plain = typename Derived::PlainObject;
    return (m.transpose() * m - Plain::Identity()).norm();
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
    return m.allFinite();
}

/// Rotation matrix in SO(3). Construction validates ||R^T R - I||_F <= tol
/// and det(R) > 0.
class RotationMatrix3 {
public:
    RotationMatrix3() : m_(Mat3::Identity()) {}
    explicit RotationMatrix3(const Mat3& m, double tol_orth = kTolOrth);

    /// Skips validation. For integrators whose update is a product of
    /// exponentials and therefore stays on the group up to roundoff.
    static RotationMatrix3 unchecked(const Mat3& m) {
        RotationMatrix3 r;
        r.m_ = m;
        return r;
    }

    static RotationMatrix3 identity() { return {}; }

    const Mat3& matrix() const noexcept { return m_; }

    RotationMatrix3 transpose() const { return unchecked(m_.transpose()); }
    RotationMatrix3 operator*(const RotationMatrix3& rhs) const { return unchecked(m_ * rhs.m_); }
    Vec3 operator*(const Vec3& v) const { return m_ * v; }

private:
    Mat3 m_;
};

/// Rotation matrix in SO(2).
class RotationMatrix2 {
public:
    RotationMatrix2() : m_(Mat2::Identity()) {}
    explicit RotationMatrix2(const Mat2& m, double tol_orth = kTolOrth);

    static RotationMatrix2 unchecked(const Mat2& m) {
        RotationMatrix2 r;
        r.m_ = m;
        return r;
    }

    const Mat2& matrix() const noexcept { return m_; }

    RotationMatrix2 operator*(const RotationMatrix2& rhs) const { return unchecked(m_ * rhs.m_); }

private:
    Mat2 m_;
};

/// [v]_x, so that skew(v) * w == v.cross(w).
Mat3 skew(const Vec3& v);

/// Inverse of skew(). Throws NotSkew if ||M + M^T||_F > tol_skew.
Vec3 vee(const Mat3& m, double tol_skew = kTolSkew);

/// vee(M - M^T). Defined for any M since M - M^T is always skew.
Vec3 antisym_vee(const Mat3& m);

/// <A, B>_F = trace(A^T B).
template <typename DA, typename DB>
double frobenius_inner(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
    return a.cwiseProduct(b).sum();
}

/// Rodrigues exponential of a rotation vector.
RotationMatrix3 so3_exp(const Vec3& v);

/// [[cos t, -sin t], [sin t, cos t]].
RotationMatrix2 rot2(double theta);

/// The 2x2 generator [[0, -1], [1, 0]].
inline Mat2 so2_generator() {
    Mat2 s;
    s << 0.0, -1.0, 1.0, 0.0;
    return s;
}

}  // namespace mfobs

#include "mfobs/linalg.hpp"

#include <cmath>
#include <sstream>

#include "mfobs/errors.hpp"

namespace mfobs {

RotationMatrix3::RotationMatrix3(const Mat3& m, double tol_orth) : m_(m) {
    if (!m.allFinite()) {
        throw ValidationError("rotation", "non-finite entries");
    }
    const double err = orthonormality_error(m);
    if (err > tol_orth || m.determinant() <= 0.0) {
        std::ostringstream os;
        os << "not in SO(3) (||R^T R - I||_F = " << err << ", det = " << m.determinant() << ")";
        throw ValidationError("rotation", os.str());
    }
}

RotationMatrix2::RotationMatrix2(const Mat2& m, double tol_orth) : m_(m) {
    if (!m.allFinite()) {
        throw ValidationError("rotation", "non-finite entries");
    }
    const double err = orthonormality_error(m);
    if (err > tol_orth || m.determinant() <= 0.0) {
        std::ostringstream os;
        os << "not in SO(2) (||R^T R - I||_F = " << err << ", det = " << m.determinant() << ")";
        throw ValidationError("rotation", os.str());
    }
}

Mat3 skew(const Vec3& v) {
    Mat3 s;
    s << 0.0, -v.z(), v.y(),
         v.z(), 0.0, -v.x(),
        -v.y(), v.x(), 0.0;
    return s;
}

Vec3 vee(const Mat3& m, double tol_skew) {
    const double asym = (m + m.transpose()).norm();
    if (!(asym <= tol_skew)) {
        std::ostringstream os;
        os << "vee: matrix is not skew-symmetric (||M + M^T||_F = " << asym << ")";
        throw NotSkew(os.str());
    }
    return {m(2, 1), m(0, 2), m(1, 0)};
}

Vec3 antisym_vee(const Mat3& m) {
    return {m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1)};
}

RotationMatrix3 so3_exp(const Vec3& v) {
    const double theta2 = v.squaredNorm();
    const double theta = std::sqrt(theta2);
    double a;  // sin(theta) / theta
    double b;  // (1 - cos(theta)) / theta^2
    if (theta < kRodriguesSmallAngle) {
        a = 1.0 - theta2 / 6.0;
        b = 0.5 - theta2 / 24.0;
    } else {
        a = std::sin(theta) / theta;
        const double h = std::sin(0.5 * theta);
        b = 2.0 * h * h / theta2;
    }
    const Mat3 s = skew(v);
    return RotationMatrix3::unchecked(Mat3::Identity() + a * s + b * (s * s));
}

RotationMatrix2 rot2(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Mat2 m;
    m << c, -s, s, c;
    return RotationMatrix2::unchecked(m);
}

}  // namespace mfobs

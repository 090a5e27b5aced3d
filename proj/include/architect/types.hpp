#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace architect {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec2i = Eigen::Vector2i;
using Mat3 = Eigen::Matrix3d;

constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

// Yaw normalized into [0, 2*pi).
double wrap_yaw(double yaw);

// Canonical decimal formatting used by every serialized float: 9 significant
// digits, "%.9g", with -0 folded to 0. canon() maps a double to the nearest
// double representable by its own canonical string, so formatting is a
// bijection on canonicalized values.
std::string format_double(double v);
double canon(double v);
Vec3 canon(const Vec3& v);
Vec2 canon(const Vec2& v);

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GeometryError : Error {
    using Error::Error;
};
struct InsufficientReferenceError : Error {
    using Error::Error;
};
struct DegenerateScaleError : Error {
    using Error::Error;
};
struct NoClusterError : Error {
    using Error::Error;
};
struct EmptyMaskError : Error {
    using Error::Error;
};
struct MisclassifiedError : Error {
    using Error::Error;
};
struct ServiceError : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct ValidationError : Error {
    using Error::Error;
};
struct UsageError : Error {
    using Error::Error;
};

}  // namespace architect

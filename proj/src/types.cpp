#include "architect/types.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace architect {

double wrap_yaw(double yaw) {
    double y = std::fmod(yaw, 2.0 * kPi);
    if (y < 0) y += 2.0 * kPi;
    if (y >= 2.0 * kPi) y = 0.0;
    return y;
}

std::string format_double(double v) {
    if (v == 0.0) v = 0.0;  // fold -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

double canon(double v) {
    return std::strtod(format_double(v).c_str(), nullptr);
}

Vec3 canon(const Vec3& v) { return {canon(v.x()), canon(v.y()), canon(v.z())}; }
Vec2 canon(const Vec2& v) { return {canon(v.x()), canon(v.y())}; }

}  // namespace architect

#pragma once

#include "architect/types.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace architect {

// Per-pixel z-depth in meters with a validity mask. Stored double precision;
// the DPTH file format below is float32.
struct DepthMap {
    int width = 0;
    int height = 0;
    Eigen::ArrayXXd values;                  // (height rows, width cols)
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> valid;

    DepthMap() = default;
    DepthMap(int w, int h)
        : width(w), height(h), values(Eigen::ArrayXXd::Zero(h, w)),
          valid(Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(h, w, false)) {}

    double at(int x, int y) const { return values(y, x); }
    double& at(int x, int y) { return values(y, x); }
    bool is_valid(int x, int y) const { return valid(y, x); }
    void set(int x, int y, double d) {
        values(y, x) = d;
        valid(y, x) = true;
    }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
};

// Per-pixel instance label. Nonnegative values index scene instances;
// negative values are background sentinels.
struct InstanceIdMap {
    static constexpr int kNone = -1;
    static constexpr int kFloor = -2;
    static constexpr int kWall = -3;
    static constexpr int kCeiling = -4;

    int width = 0;
    int height = 0;
    Eigen::ArrayXXi ids;

    InstanceIdMap() = default;
    InstanceIdMap(int w, int h)
        : width(w), height(h), ids(Eigen::ArrayXXi::Constant(h, w, kNone)) {}

    int at(int x, int y) const { return ids(y, x); }
    int& at(int x, int y) { return ids(y, x); }
};

// DPTH raster: 16-byte header (magic "DPTH", u32 width, u32 height,
// u32 reserved, little endian) followed by width*height float32 z-depths in
// row-major order. Invalid pixels are stored as 0; on load any value <= 0 or
// non-finite is marked invalid.
std::vector<std::uint8_t> encode_dpth(const DepthMap& map);
DepthMap decode_dpth(const std::uint8_t* data, std::size_t size);
void write_dpth(const std::string& path, const DepthMap& map);
DepthMap read_dpth(const std::string& path);

}  // namespace architect

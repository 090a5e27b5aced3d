#pragma once

#include <Eigen/Core>

#include <vector>

namespace architect {

// Inpainting mask: weight 1 = inpaint, 0 = keep. Binary until soften_mask
// turns the edge band fractional.
struct InpaintMask {
    enum class Provenance { RoomCentered, CubeFill };

    int width = 0;
    int height = 0;
    Eigen::ArrayXXd weights;  // (height rows, width cols), in [0, 1]
    Provenance provenance = Provenance::RoomCentered;
    std::vector<int> excluded_ids;

    InpaintMask() = default;
    InpaintMask(int w, int h)
        : width(w), height(h), weights(Eigen::ArrayXXd::Zero(h, w)) {}

    double at(int x, int y) const { return weights(y, x); }
    void set(int x, int y, double v) { weights(y, x) = v; }
    bool empty_support() const { return (weights <= 0.0).all(); }
};

// Per-instance binary pixel set (detection masks, sprite silhouettes).
struct BinaryMask {
    int width = 0;
    int height = 0;
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> bits;

    BinaryMask() = default;
    BinaryMask(int w, int h)
        : width(w), height(h),
          bits(Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(h, w, false)) {}

    bool at(int x, int y) const { return bits(y, x); }
    void set(int x, int y, bool v = true) { bits(y, x) = v; }
    long count() const { return bits.count(); }
};

}  // namespace architect

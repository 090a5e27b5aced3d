#pragma once

#include "architect/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace architect {

// Interleaved 8-bit RGB raster.
struct ImageRgb {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // 3 * width * height

    ImageRgb() = default;
    ImageRgb(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3, 0) {}

    std::size_t offset(int x, int y) const { return (static_cast<std::size_t>(y) * width + x) * 3; }
    void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
        auto o = offset(x, y);
        pixels[o] = r;
        pixels[o + 1] = g;
        pixels[o + 2] = b;
    }
    bool operator==(const ImageRgb& o) const {
        return width == o.width && height == o.height && pixels == o.pixels;
    }
};

struct ImageGray {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    ImageGray() = default;
    ImageGray(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, 0) {}

    std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
    void set(int x, int y, std::uint8_t v) { pixels[static_cast<std::size_t>(y) * width + x] = v; }
};

// PNG encode/decode (libpng). Decoding normalizes gray/palette/RGBA inputs to
// the requested channel layout.
std::vector<std::uint8_t> encode_png(const ImageRgb& img);
std::vector<std::uint8_t> encode_png(const ImageGray& img);
ImageRgb decode_png_rgb(const std::uint8_t* data, std::size_t size);
ImageGray decode_png_gray(const std::uint8_t* data, std::size_t size);
void write_png(const std::string& path, const ImageRgb& img);
void write_png(const std::string& path, const ImageGray& img);

}  // namespace architect

#include "architect/depth_map.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

namespace architect {

namespace {
void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
}
std::uint32_t get_u32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}
}  // namespace

std::vector<std::uint8_t> encode_dpth(const DepthMap& map) {
    std::vector<std::uint8_t> out;
    out.reserve(16 + static_cast<std::size_t>(map.width) * map.height * 4);
    out.insert(out.end(), {'D', 'P', 'T', 'H'});
    put_u32(out, static_cast<std::uint32_t>(map.width));
    put_u32(out, static_cast<std::uint32_t>(map.height));
    put_u32(out, 0);
    for (int y = 0; y < map.height; ++y) {
        for (int x = 0; x < map.width; ++x) {
            float f = map.is_valid(x, y) ? static_cast<float>(map.at(x, y)) : 0.0f;
            std::uint8_t b[4];
            std::memcpy(b, &f, 4);
            out.insert(out.end(), b, b + 4);
        }
    }
    return out;
}

DepthMap decode_dpth(const std::uint8_t* data, std::size_t size) {
    if (size < 16 || std::memcmp(data, "DPTH", 4) != 0)
        throw ParseError("DPTH: bad magic or truncated header");
    std::uint32_t w = get_u32(data + 4);
    std::uint32_t h = get_u32(data + 8);
    if (w == 0 || h == 0 || size != 16 + static_cast<std::size_t>(w) * h * 4)
        throw ParseError("DPTH: size mismatch");
    DepthMap map(static_cast<int>(w), static_cast<int>(h));
    const std::uint8_t* p = data + 16;
    for (int y = 0; y < map.height; ++y) {
        for (int x = 0; x < map.width; ++x, p += 4) {
            float f;
            std::memcpy(&f, p, 4);
            if (std::isfinite(f) && f > 0) map.set(x, y, f);
        }
    }
    return map;
}

void write_dpth(const std::string& path, const DepthMap& map) {
    auto bytes = encode_dpth(map);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

DepthMap read_dpth(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return decode_dpth(bytes.data(), bytes.size());
}

}  // namespace architect

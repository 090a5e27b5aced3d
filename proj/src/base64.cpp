#include "architect/base64.hpp"

#include "architect/types.hpp"

#include <array>

namespace architect {

namespace {
constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::array<int, 256> decode_table() {
    std::array<int, 256> t{};
    t.fill(-1);
    for (int i = 0; i < 64; ++i) t[static_cast<unsigned char>(kAlphabet[i])] = i;
    return t;
}
}  // namespace

std::string base64_encode(const std::uint8_t* data, std::size_t size) {
    std::string out;
    out.reserve((size + 2) / 3 * 4);
    for (std::size_t i = 0; i < size; i += 3) {
        std::uint32_t chunk = static_cast<std::uint32_t>(data[i]) << 16;
        std::size_t rem = size - i;
        if (rem > 1) chunk |= static_cast<std::uint32_t>(data[i + 1]) << 8;
        if (rem > 2) chunk |= data[i + 2];
        out.push_back(kAlphabet[(chunk >> 18) & 0x3f]);
        out.push_back(kAlphabet[(chunk >> 12) & 0x3f]);
        out.push_back(rem > 1 ? kAlphabet[(chunk >> 6) & 0x3f] : '=');
        out.push_back(rem > 2 ? kAlphabet[chunk & 0x3f] : '=');
    }
    return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
    static const std::array<int, 256> table = decode_table();
    if (text.size() % 4 != 0) throw ParseError("base64: length not a multiple of 4");
    std::vector<std::uint8_t> out;
    out.reserve(text.size() / 4 * 3);
    for (std::size_t i = 0; i < text.size(); i += 4) {
        int vals[4];
        int pad = 0;
        for (int k = 0; k < 4; ++k) {
            char c = text[i + k];
            if (c == '=') {
                if (k < 2 || (k == 2 && text[i + 3] != '=')) throw ParseError("base64: bad padding");
                if (i + 4 != text.size()) throw ParseError("base64: padding before end");
                vals[k] = 0;
                ++pad;
            } else {
                vals[k] = table[static_cast<unsigned char>(c)];
                if (vals[k] < 0) throw ParseError("base64: invalid character");
                if (pad) throw ParseError("base64: data after padding");
            }
        }
        std::uint32_t chunk = (static_cast<std::uint32_t>(vals[0]) << 18) |
                              (static_cast<std::uint32_t>(vals[1]) << 12) |
                              (static_cast<std::uint32_t>(vals[2]) << 6) |
                              static_cast<std::uint32_t>(vals[3]);
        out.push_back(static_cast<std::uint8_t>((chunk >> 16) & 0xff));
        if (pad < 2) out.push_back(static_cast<std::uint8_t>((chunk >> 8) & 0xff));
        if (pad < 1) out.push_back(static_cast<std::uint8_t>(chunk & 0xff));
    }
    return out;
}

}  // namespace architect

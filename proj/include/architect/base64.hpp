#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace architect {

std::string base64_encode(const std::uint8_t* data, std::size_t size);

inline std::string base64_encode(const std::vector<std::uint8_t>& bytes) {
    return base64_encode(bytes.data(), bytes.size());
}

// Throws ParseError on characters outside the alphabet or bad padding.
std::vector<std::uint8_t> base64_decode(const std::string& text);

}  // namespace architect

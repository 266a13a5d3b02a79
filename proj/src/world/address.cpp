#include "pofuzz/world/address.hpp"

#include <stdexcept>

namespace pofuzz::world {

namespace {

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

Address Address::from_hex(std::string_view hex) {
    if (hex.size() != 42 || hex[0] != '0' || (hex[1] != 'x' && hex[1] != 'X')) {
        throw std::invalid_argument("address must be 0x followed by 40 hex digits: " +
                                    std::string(hex));
    }
    Address a;
    for (std::size_t i = 0; i < 20; ++i) {
        int hi = hex_digit(hex[2 + 2 * i]);
        int lo = hex_digit(hex[3 + 2 * i]);
        if (hi < 0 || lo < 0) {
            throw std::invalid_argument("invalid hex digit in address: " + std::string(hex));
        }
        a.bytes[i] = static_cast<std::uint8_t>(hi * 16 + lo);
    }
    return a;
}

Address Address::from_label(std::string_view label) {
    // FNV-1a seed expanded with splitmix64.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : label) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x100000001b3ULL;
    }
    Address a;
    std::uint64_t state = h;
    for (std::size_t i = 0; i < 20; i += 8) {
        std::uint64_t word = splitmix64(state);
        for (std::size_t j = 0; j < 8 && i + j < 20; ++j) {
            a.bytes[i + j] = static_cast<std::uint8_t>(word >> (8 * j));
        }
    }
    return a;
}

Address Address::burn() {
    Address a;
    a.bytes[18] = 0xde;
    a.bytes[19] = 0xad;
    return a;
}

Address Address::native() {
    Address a;
    a.bytes.fill(0xee);
    return a;
}

std::string Address::hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out = "0x";
    out.reserve(42);
    for (std::uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

bool is_burn_sink(const Address& a) { return a.is_zero() || a == Address::burn(); }

}  // namespace pofuzz::world

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>

namespace pofuzz::world {

/// A 20-byte account identifier. Ordering is byte-lexicographic so every
/// address-keyed container iterates deterministically.
struct Address {
    std::array<std::uint8_t, 20> bytes{};

    // lexicographic byte order, compared as big-endian words (map keys hit this a lot)
    std::strong_ordering operator<=>(const Address& o) const noexcept {
        for (std::size_t i = 0; i < 16; i += 8) {
            const auto a = word64(i), b = o.word64(i);
            if (a != b) return a <=> b;
        }
        return word32() <=> o.word32();
    }
    bool operator==(const Address& o) const noexcept { return bytes == o.bytes; }

    /// Parses "0x" followed by exactly 40 hex digits.
    static Address from_hex(std::string_view hex);

    /// Derives a stable address from a human-readable label. Scenario files
    /// name every participant; this is how names become addresses.
    static Address from_label(std::string_view label);

    static constexpr Address zero() { return Address{}; }

    /// 0x000000000000000000000000000000000000dEaD
    static Address burn();

    /// Sentinel standing in for the native currency in transfer events and
    /// as a pricing asset.
    static Address native();

    bool is_zero() const { return *this == zero(); }

    std::string hex() const;

private:
    std::uint64_t word64(std::size_t at) const noexcept {
        std::uint64_t w;
        std::memcpy(&w, bytes.data() + at, 8);
        return __builtin_bswap64(w);
    }
    std::uint32_t word32() const noexcept {
        std::uint32_t w;
        std::memcpy(&w, bytes.data() + 16, 4);
        return __builtin_bswap32(w);
    }
};

/// True for the zero address and the conventional dead address.
bool is_burn_sink(const Address& a);

}  // namespace pofuzz::world

#pragma once

#include "pofuzz/world/address.hpp"
#include "pofuzz/world/amount.hpp"

#include <cstdint>
#include <string_view>

namespace pofuzz::world {

/// FNV-1a over a stream of fields.
struct Digest {
    std::uint64_t h = 0xcbf29ce484222325ULL;

    void bytes(const void* p, std::size_t n) {
        auto* c = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= c[i];
            h *= 0x100000001b3ULL;
        }
    }
    void add(const Address& a) { bytes(a.bytes.data(), a.bytes.size()); }
    void add(const Amount& v) {
        std::string s = v.str();
        bytes(s.data(), s.size());
        bytes("|", 1);
    }
    void add(std::string_view s) {
        bytes(s.data(), s.size());
        bytes("|", 1);
    }
    void add(std::uint64_t v) { bytes(&v, sizeof v); }
};

}  // namespace pofuzz::world

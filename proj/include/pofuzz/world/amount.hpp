#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace pofuzz {

namespace bmp = boost::multiprecision;

/// Token amount in base units, 0 <= value < 2^256. Arithmetic is checked:
/// overflow throws std::overflow_error, underflow std::range_error. The
/// executor turns both into a transaction revert.
using Amount = bmp::number<
    bmp::cpp_int_backend<256, 256, bmp::unsigned_magnitude, bmp::checked, void>>;

/// Unchecked 512-bit intermediate for products of two amounts.
using Wide = bmp::number<
    bmp::cpp_int_backend<512, 512, bmp::unsigned_magnitude, bmp::unchecked, void>>;

/// Signed 512-bit value: profits, steps, gradient numerators.
using Signed = bmp::number<
    bmp::cpp_int_backend<512, 512, bmp::signed_magnitude, bmp::unchecked, void>>;

const Amount& max_amount();

/// Decimal (or 0x-prefixed hex) text to Amount. Throws std::invalid_argument
/// on malformed input and std::out_of_range above 2^256 - 1.
Amount parse_amount(std::string_view text);

/// Narrowing conversions; throw std::out_of_range when the value does not fit.
Amount to_amount(const Wide& w);
Amount to_amount(const Signed& s);

int sign(const Signed& s);
Signed abs_value(const Signed& s);

/// Floor square root.
Amount isqrt(const Wide& n);

}  // namespace pofuzz

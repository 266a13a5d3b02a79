#pragma once

#include "pofuzz/world/amount.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace pofuzz::actions {

using Rational = boost::multiprecision::cpp_rational;

/// Chance that a uniform 256-bit draw is a transferable amount for a holder
/// of `balance`: balance / (2^256 - 1), or 1 / 2^256 for the lone draw 0
/// when the balance is empty.
Rational probability_of_valid_raw_amount(const Amount& balance);

/// Every percentage in [0, 100] lowers to an amount within the balance.
Rational probability_of_valid_percentage();

}  // namespace pofuzz::actions

#include "pofuzz/actions/probability.hpp"

namespace pofuzz::actions {

namespace {

boost::multiprecision::cpp_int two_256() { return boost::multiprecision::cpp_int(1) << 256; }

}  // namespace

Rational probability_of_valid_raw_amount(const Amount& balance) {
    using boost::multiprecision::cpp_int;
    if (balance == 0) return Rational(cpp_int(1), two_256());
    return Rational(cpp_int(balance), two_256() - 1);
}

Rational probability_of_valid_percentage() { return Rational(1); }

}  // namespace pofuzz::actions

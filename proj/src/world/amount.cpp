#include "pofuzz/world/amount.hpp"

#include <limits>
#include <stdexcept>

namespace pofuzz {

const Amount& max_amount() {
    static const Amount m = std::numeric_limits<Amount>::max();
    return m;
}

Amount parse_amount(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty amount");
    bool hex = text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
    for (std::size_t i = hex ? 2 : 0; i < text.size(); ++i) {
        char c = text[i];
        bool ok = (c >= '0' && c <= '9') ||
                  (hex && ((c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F')));
        if (!ok) throw std::invalid_argument("malformed amount: " + std::string(text));
    }
    Wide w(std::string(text).c_str());
    if (hex ? text.size() > 66 : text.size() > 80) {
        throw std::out_of_range("amount exceeds 2^256 - 1: " + std::string(text));
    }
    return to_amount(w);
}

Amount to_amount(const Wide& w) {
    if (w > Wide(max_amount())) throw std::out_of_range("value exceeds 2^256 - 1");
    return Amount(w);
}

Amount to_amount(const Signed& s) {
    if (s < 0) throw std::out_of_range("negative value");
    if (s > Signed(max_amount())) throw std::out_of_range("value exceeds 2^256 - 1");
    return Amount(s);
}

int sign(const Signed& s) { return s > 0 ? 1 : (s < 0 ? -1 : 0); }

Signed abs_value(const Signed& s) { return s < 0 ? Signed(-s) : s; }

Amount isqrt(const Wide& n) {
    return to_amount(Wide(bmp::sqrt(n)));
}

}  // namespace pofuzz

#include <qhs/ticks.hpp>

#include <qhs/errors.hpp>

namespace qhs {

std::int64_t round_div(std::int64_t num, std::int64_t den) {
    if (den <= 0 || num < 0) {
        throw InternalError("round_div: num must be >= 0 and den > 0");
    }
    return (2 * num + den) / (2 * den);
}

std::int64_t ceil_scale(std::int64_t base, std::int64_t num, std::int64_t den) {
    if (den <= 0 || base < 0 || num < 0) {
        throw InternalError("ceil_scale: negative operand");
    }
    return (base * num + den - 1) / den;
}

std::string format_seconds(Tick ms) {
    const bool neg = ms < 0;
    if (neg) ms = -ms;
    const Tick whole = ms / 1000;
    const Tick frac = ms % 1000;
    std::string out = neg ? "-" : "";
    out += std::to_string(whole);
    out += '.';
    if (frac < 100) out += '0';
    if (frac < 10) out += '0';
    out += std::to_string(frac);
    return out;
}

std::string format_fraction(std::int64_t num, std::int64_t den, int decimals) {
    if (den == 0) return format_fraction(0, 1, decimals);
    std::int64_t scale = 1;
    for (int i = 0; i < decimals; ++i) scale *= 10;
    const std::int64_t scaled = round_div(num * scale, den);
    const std::int64_t whole = scaled / scale;
    std::int64_t frac = scaled % scale;
    std::string out = std::to_string(whole);
    if (decimals == 0) return out;
    out += '.';
    std::string digits = std::to_string(frac);
    out.append(static_cast<std::size_t>(decimals) - digits.size(), '0');
    out += digits;
    return out;
}

} // namespace qhs

#pragma once

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>

namespace relia::detail {

// A double viewed through its shortest round-tripping decimal string,
// value = mant * 10^exp. Sums and differences of such values are computed
// exactly in 128-bit integers, then rounded once. For data that originated
// as decimal text (the usual case for failure logs) this makes running sums
// and adjacent differences mutually inverse at the bit level.
struct Decimal {
    __int128 mant = 0;
    int exp = 0;
};

inline std::optional<Decimal> decimal_from_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) return std::nullopt;
    const char* p = buf;
    bool neg = false;
    if (p < end && (*p == '-' || *p == '+')) {
        neg = (*p == '-');
        ++p;
    }
    __int128 mant = 0;
    int frac_digits = 0;
    bool seen_point = false;
    for (; p < end && *p != 'e' && *p != 'E'; ++p) {
        if (*p == '.') {
            seen_point = true;
            continue;
        }
        if (*p < '0' || *p > '9') return std::nullopt;
        mant = mant * 10 + (*p - '0');
        if (seen_point) ++frac_digits;
    }
    int exp10 = 0;
    if (p < end && (*p == 'e' || *p == 'E')) {
        ++p;
        int esign = 1;
        if (p < end && (*p == '-' || *p == '+')) {
            esign = (*p == '-') ? -1 : 1;
            ++p;
        }
        int e = 0;
        for (; p < end; ++p) {
            if (*p < '0' || *p > '9') return std::nullopt;
            e = e * 10 + (*p - '0');
        }
        exp10 = esign * e;
    }
    return Decimal{neg ? -mant : mant, exp10 - frac_digits};
}

inline constexpr __int128 kInt128Max = static_cast<__int128>(~static_cast<unsigned __int128>(0) >> 1);

// mant * 10^k, or nullopt on overflow.
inline std::optional<__int128> scale_pow10(__int128 mant, int k) {
    __int128 m = mant;
    for (int i = 0; i < k; ++i) {
        if (m > kInt128Max / 10 || m < -(kInt128Max / 10)) return std::nullopt;
        m *= 10;
    }
    return m;
}

inline std::optional<Decimal> decimal_add(const Decimal& x, const Decimal& y) {
    const int e = x.exp < y.exp ? x.exp : y.exp;
    auto mx = scale_pow10(x.mant, x.exp - e);
    auto my = scale_pow10(y.mant, y.exp - e);
    if (!mx || !my) return std::nullopt;
    const __int128 a = *mx;
    const __int128 b = *my;
    if (b > 0 && a > kInt128Max - b) return std::nullopt;
    if (b < 0 && a < -kInt128Max - b) return std::nullopt;
    return Decimal{a + b, e};
}

inline std::optional<Decimal> decimal_sub(const Decimal& x, const Decimal& y) {
    return decimal_add(x, Decimal{-y.mant, y.exp});
}

inline double decimal_to_double(const Decimal& d) {
    __int128 m = d.mant;
    bool neg = false;
    if (m < 0) {
        neg = true;
        m = -m;
    }
    char digits[48];
    int k = 0;
    if (m == 0) digits[k++] = '0';
    while (m > 0) {
        digits[k++] = static_cast<char>('0' + static_cast<int>(m % 10));
        m /= 10;
    }
    std::string text;
    if (neg) text.push_back('-');
    while (k > 0) text.push_back(digits[--k]);
    text.push_back('e');
    text += std::to_string(d.exp);
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc() || ptr != text.data() + text.size()) return strtod(text.c_str(), nullptr);
    return out;
}

}  // namespace relia::detail

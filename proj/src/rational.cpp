#include "twistedbad/rational.hpp"

#include <cctype>
#include <sstream>

namespace tb {

Rat parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Int num(text.substr(0, slash), 10);
        Int den(text.substr(slash + 1), 10);
        if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
        Rat r(num, den);
        r.canonicalize();
        return r;
    }

    // Decimal / scientific form, converted exactly.
    std::string s = text;
    bool neg = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = s[i] == '-';
        ++i;
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_point = false, seen_digit = false;
    long exp10 = 0;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits += c;
            seen_digit = true;
            if (seen_point) ++frac_digits;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else if ((c == 'e' || c == 'E') && seen_digit) {
            exp10 = std::stol(s.substr(i + 1));
            break;
        } else {
            throw std::invalid_argument("bad rational literal '" + text + "'");
        }
    }
    if (!seen_digit) throw std::invalid_argument("bad rational literal '" + text + "'");
    Int mant(digits.empty() ? "0" : digits, 10);  // base 10: no octal surprises
    if (neg) mant = -mant;
    long e = exp10 - frac_digits;
    Rat r(mant);
    if (e > 0)
        r *= Rat(ipow(Int(10), static_cast<unsigned long>(e)));
    else if (e < 0)
        r /= Rat(ipow(Int(10), static_cast<unsigned long>(-e)));
    return r;
}

std::string rat_to_decimal(const Rat& x, int significant_digits) {
    if (significant_digits < 1) significant_digits = 1;
    if (x == 0) return "0";
    Rat a = x < 0 ? Rat(-x) : x;

    // Find d = floor(log10 a) by exact comparison.
    long d = 0;
    if (a >= 1) {
        Rat t = a;
        while (t >= 10) {
            t /= 10;
            ++d;
        }
    } else {
        Rat t = a;
        while (t < 1) {
            t *= 10;
            --d;
        }
    }
    // Mantissa digits: round a / 10^(d - sig + 1) to nearest.
    long shift = d - significant_digits + 1;
    Rat scaled = a / rat_pow(Rat(10), shift);
    Int digits = floor_rat(scaled + Rat(1, 2));
    std::string ds = digits.get_str();
    if (static_cast<int>(ds.size()) > significant_digits) {
        // rounding carried (e.g. 999.9 -> 1000): drop trailing zero, bump exponent
        ds.pop_back();
        ++d;
    }
    // Render without exponent when reasonable, else scientific.
    std::string sign = x < 0 ? "-" : "";
    if (d >= 0 && d < 21) {
        std::string out;
        if (static_cast<long>(ds.size()) <= d) {
            out = ds + std::string(d + 1 - ds.size(), '0');
        } else {
            out = ds.substr(0, d + 1);
            std::string frac = ds.substr(d + 1);
            while (!frac.empty() && frac.back() == '0') frac.pop_back();
            if (!frac.empty()) out += "." + frac;
        }
        return sign + out;
    }
    if (d < 0 && d > -7) {
        std::string frac(-d - 1, '0');
        frac += ds;
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        return sign + "0." + frac;
    }
    std::string mant = ds.substr(0, 1);
    std::string rest = ds.substr(1);
    while (!rest.empty() && rest.back() == '0') rest.pop_back();
    std::ostringstream os;
    os << sign << mant;
    if (!rest.empty()) os << "." << rest;
    os << "e" << d;
    return os.str();
}

}  // namespace tb

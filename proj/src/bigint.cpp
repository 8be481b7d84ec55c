#include "cenormal/bigint.hpp"

#include <cctype>

#include "cenormal/errors.hpp"

namespace cenormal {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    }
    return true;
}

}  // namespace

Rational pow(const Rational& base, unsigned exponent) {
    BigInt num = boost::multiprecision::pow(boost::multiprecision::numerator(base), exponent);
    BigInt den = boost::multiprecision::pow(boost::multiprecision::denominator(base), exponent);
    return Rational(num, den);
}

BigInt floor(const Rational& q) {
    const BigInt& num = boost::multiprecision::numerator(q);
    const BigInt& den = boost::multiprecision::denominator(q);
    BigInt quot = num / den;  // truncates toward zero
    if (num < 0 && quot * den != num) --quot;
    return quot;
}

BigInt floor_pow(const Rational& c, unsigned exponent) {
    return floor(pow(c, exponent));
}

Rational parse_rational(std::string_view text) {
    auto fail = [&] { return ParseError("invalid rational '" + std::string(text) + "'"); };
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = text.substr(0, slash);
        auto den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw fail();
        BigInt d{std::string(den)};
        if (d == 0) throw fail();
        return Rational(BigInt(std::string(num)), d);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        auto whole = text.substr(0, dot);
        auto frac = text.substr(dot + 1);
        if (!all_digits(whole) || !all_digits(frac)) throw fail();
        BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
        BigInt num = BigInt(std::string(whole)) * scale + BigInt(std::string(frac));
        return Rational(num, scale);
    }
    if (!all_digits(text)) throw fail();
    return Rational(BigInt(std::string(text)));
}

std::string to_string(const Rational& q) {
    const BigInt& den = boost::multiprecision::denominator(q);
    std::string out = boost::multiprecision::numerator(q).str();
    if (den != 1) out += "/" + den.str();
    return out;
}

bool is_integral(const Rational& q) {
    return boost::multiprecision::denominator(q) == 1;
}

std::uint64_t to_u64(const BigInt& v, std::string_view what) {
    if (v < 0 || v > BigInt(std::numeric_limits<std::uint64_t>::max())) {
        throw OverflowError(std::string(what) + " does not fit in 64 bits: " + v.str());
    }
    return v.convert_to<std::uint64_t>();
}

double to_double(const Rational& q) {
    return q.convert_to<double>();
}

}  // namespace cenormal

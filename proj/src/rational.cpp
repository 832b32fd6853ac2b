#include "wcsp/rational.hpp"

#include <cctype>
#include <vector>

namespace wcsp {

namespace {

bool allDigits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Rational parseRational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (!s.empty() && s.front() == '-') {
        throw InputError("negative weight '" + std::string(text) + "' (weights must be non-negative)");
    }

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!allDigits(num) || !allDigits(den)) {
            throw InputError("malformed rational '" + std::string(text) + "'");
        }
        BigInt d(std::string(den), 10);
        if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
        Rational r(BigInt(std::string(num), 10), d);
        r.canonicalize();
        return r;
    }

    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto whole = s.substr(0, dot);
        auto frac = s.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !allDigits(whole)) ||
            (!frac.empty() && !allDigits(frac))) {
            throw InputError("malformed rational '" + std::string(text) + "'");
        }
        BigInt scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        std::string digits = std::string(whole.empty() ? "0" : whole) + std::string(frac);
        Rational r(BigInt(digits, 10), scale);
        r.canonicalize();
        return r;
    }

    if (!allDigits(s)) throw InputError("malformed rational '" + std::string(text) + "'");
    return Rational(BigInt(std::string(s), 10));
}

std::string toString(const Rational& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string toDecimal(const Rational& value, int digits) {
    mpf_class f(value, 256);
    std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
    gmp_snprintf(buf.data(), buf.size(), "%.*Fg", digits, f.get_mpf_t());
    return buf.data();
}

Rational power(const Rational& value, unsigned long exponent) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), value.get_num_mpz_t(), exponent);
    mpz_pow_ui(out.get_den_mpz_t(), value.get_den_mpz_t(), exponent);
    return out;
}

bool exactSqrt(const Rational& value, Rational& root) {
    if (value < 0) return false;
    if (!mpz_perfect_square_p(value.get_num_mpz_t()) || !mpz_perfect_square_p(value.get_den_mpz_t())) {
        return false;
    }
    BigInt n, d;
    mpz_sqrt(n.get_mpz_t(), value.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), value.get_den_mpz_t());
    root = Rational(n, d);
    root.canonicalize();
    root.canonicalize();
    return true;
}

}  // namespace wcsp

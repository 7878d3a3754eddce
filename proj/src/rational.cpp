#include "bfc/rational.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace bfc {

bool is_decimal_literal(const std::string& text) {
    return text.find('.') != std::string::npos || text.find('e') != std::string::npos ||
           text.find('E') != std::string::npos;
}

std::optional<Rational> parse_rational(const std::string& text) {
    std::string s;
    for (char c : text) {
        if (!isspace(static_cast<unsigned char>(c))) s.push_back(c);
    }
    if (s.empty()) return std::nullopt;

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rational q;
        if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0) return std::nullopt;
        if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0) return std::nullopt;
        q.canonicalize();
        return q;
    }

    if (is_decimal_literal(s)) {
        char* end = nullptr;
        double v = std::strtod(s.c_str(), &end);
        if (end == nullptr || *end != '\0' || !std::isfinite(v)) return std::nullopt;
        return rational_from_double(v);
    }

    Rational q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0) return std::nullopt;
    q.canonicalize();
    return q;
}

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
    Rational q;
    mpq_set_d(q.get_mpq_t(), x);  // exact: doubles are dyadic rationals
    return q;
}

std::vector<BigInt> scale_to_integers(const std::vector<Rational>& v) {
    BigInt lcm = 1;
    for (const auto& q : v) {
        BigInt den(q.get_den());
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    }
    std::vector<BigInt> out;
    out.reserve(v.size());
    for (const auto& q : v) {
        Rational scaled = q * Rational(lcm);
        out.emplace_back(scaled.get_num());
    }
    return out;
}

std::optional<int64_t> to_int64(const BigInt& z) {
    if (!z.fits_slong_p()) return std::nullopt;
    long v = z.get_si();
    if (v < std::numeric_limits<int64_t>::min() || v > std::numeric_limits<int64_t>::max()) {
        return std::nullopt;
    }
    return int64_t(v);
}

Rational dot(const std::vector<Rational>& w, uint32_t point_mask, int n) {
    Rational s = 0;
    for (int i = 0; i < n; ++i) {
        if ((point_mask >> i) & 1) {
            s += w[i];
        } else {
            s -= w[i];
        }
    }
    return s;
}

Rational norm_sq(const std::vector<Rational>& w) {
    Rational s = 0;
    for (const auto& q : w) s += q * q;
    return s;
}

std::string rational_str(const Rational& q) {
    return q.get_str();
}

}  // namespace bfc

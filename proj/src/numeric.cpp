#include "hgv/numeric.hpp"

#include <cctype>
#include <limits>
#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "hgv/error.hpp"

namespace hgv {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyEdge: return "EmptyEdge";
        case ErrorCode::BadMultiplicity: return "BadMultiplicity";
        case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
        case ErrorCode::BadParams: return "BadParams";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::NotACover: return "NotACover";
        case ErrorCode::NotIndependent: return "NotIndependent";
        case ErrorCode::ZeroStrength: return "ZeroStrength";
        case ErrorCode::InfeasibleColoring: return "InfeasibleColoring";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::BadNu: return "BadNu";
        case ErrorCode::BadGap: return "BadGap";
        case ErrorCode::BadOrder: return "BadOrder";
        case ErrorCode::BadSupport: return "BadSupport";
        case ErrorCode::OrderTooHigh: return "OrderTooHigh";
        case ErrorCode::NotQubit: return "NotQubit";
        case ErrorCode::NumericallyUnstable: return "NumericallyUnstable";
        case ErrorCode::Internal: return "Internal";
    }
    return "Internal";
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

BigInt pow10(long exponent) {
    BigInt result = 1;
    for (long i = 0; i < exponent; ++i) result *= 10;
    return result;
}

Rational parse_decimal(std::string_view text) {
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    long exponent = 0;
    if (auto epos = text.find_first_of("eE"); epos != std::string_view::npos) {
        std::string exp_text(text.substr(epos + 1));
        std::size_t used = 0;
        try {
            exponent = std::stol(exp_text, &used);
        } catch (const std::exception &) {
            fail(ErrorCode::ParseError, "bad exponent in number '" + std::string(text) + "'");
        }
        if (used != exp_text.size()) fail(ErrorCode::ParseError, "bad number '" + std::string(text) + "'");
        text = text.substr(0, epos);
    }
    std::string_view int_part = text;
    std::string_view frac_part;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        int_part = text.substr(0, dot);
        frac_part = text.substr(dot + 1);
    }
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part))) {
        fail(ErrorCode::ParseError, "bad number '" + std::string(text) + "'");
    }
    std::string digits = std::string(int_part) + std::string(frac_part);
    // GMP reads a leading 0 as an octal prefix.
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size()));
    BigInt mantissa(digits.empty() ? std::string("0") : digits);
    exponent -= static_cast<long>(frac_part.size());
    if (exponent > 4000 || exponent < -4000) fail(ErrorCode::ParseError, "exponent out of range");
    Rational value = exponent >= 0 ? Rational(mantissa * pow10(exponent)) : Rational(mantissa, pow10(-exponent));
    return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) fail(ErrorCode::ParseError, "empty number");
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational num = parse_decimal(text.substr(0, slash));
        Rational den = parse_decimal(text.substr(slash + 1));
        if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
        return num / den;
    }
    return parse_decimal(text);
}

std::string to_string(const Rational &value) {
    BigInt num = boost::multiprecision::numerator(value);
    BigInt den = boost::multiprecision::denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string to_string(const BigInt &value) { return value.str(); }

double to_double(const Rational &value) { return value.convert_to<double>(); }

Real to_real(const BigInt &value) { return Real(value.str()); }

Real to_real(const Rational &value) {
    return to_real(BigInt(boost::multiprecision::numerator(value))) /
           to_real(BigInt(boost::multiprecision::denominator(value)));
}

BigInt floor_rational(const Rational &value) {
    BigInt num = boost::multiprecision::numerator(value);
    BigInt den = boost::multiprecision::denominator(value);
    BigInt q = num / den;  // truncates toward zero
    if (num % den != 0 && num < 0) q -= 1;
    return q;
}

BigInt ceil_rational(const Rational &value) { return -floor_rational(Rational(-value)); }

Real euler_e() { return boost::math::constants::e<Real>(); }

bool near_integer(const Real &value, const Real &guard) {
    Real nearest = boost::multiprecision::round(value);
    Real scale = std::max(Real(1), boost::multiprecision::abs(value));
    return boost::multiprecision::abs(value - nearest) <= guard * scale;
}

namespace {

BigInt real_to_bigint(const Real &integral) {
    std::ostringstream os;
    os.precision(std::numeric_limits<Real>::digits10 + 10);
    os << std::fixed << integral;
    std::string s = os.str();
    if (auto dot = s.find('.'); dot != std::string::npos) s.resize(dot);
    return BigInt(s);
}

}  // namespace

BigInt stable_floor(const Real &value, const Real &guard) {
    if (near_integer(value, guard)) {
        std::ostringstream os;
        os << "integer answer unstable: value " << value.str(30) << " is within rounding of an integer";
        fail(ErrorCode::NumericallyUnstable, os.str());
    }
    return real_to_bigint(boost::multiprecision::floor(value));
}

BigInt stable_ceil(const Real &value, const Real &guard) {
    if (near_integer(value, guard)) {
        std::ostringstream os;
        os << "integer answer unstable: value " << value.str(30) << " is within rounding of an integer";
        fail(ErrorCode::NumericallyUnstable, os.str());
    }
    return real_to_bigint(boost::multiprecision::ceil(value));
}

std::string scientific(const Real &value, int digits) {
    std::ostringstream os;
    os.precision(digits - 1);
    os << std::scientific << value;
    return os.str();
}

BigInt nearest_integer(const Real &value) { return real_to_bigint(boost::multiprecision::round(value)); }

std::string decimal_integer(const Real &value) {
    return real_to_bigint(boost::multiprecision::floor(value)).str();
}

std::int64_t to_int64(const BigInt &value) {
    if (value > std::numeric_limits<std::int64_t>::max() || value < std::numeric_limits<std::int64_t>::min()) {
        fail(ErrorCode::Internal, "integer does not fit in 64 bits: " + value.str());
    }
    return value.convert_to<std::int64_t>();
}

}  // namespace hgv

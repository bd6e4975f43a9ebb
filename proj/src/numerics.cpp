#include "timely/numerics.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <ostream>

#include "timely/error.hpp"

namespace timely {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::IndeterminateSum: return "IndeterminateSum";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ModelMismatch: return "ModelMismatch";
        case ErrorKind::UnknownAction: return "UnknownAction";
        case ErrorKind::SelfConstraint: return "SelfConstraint";
        case ErrorKind::DomainMismatch: return "DomainMismatch";
        case ErrorKind::InvalidSchedule: return "InvalidSchedule";
        case ErrorKind::NegInfEntry: return "NegInfEntry";
        case ErrorKind::Unsatisfiable: return "Unsatisfiable";
        case ErrorKind::InfiniteEntry: return "InfiniteEntry";
        case ErrorKind::FiniteEntry: return "FiniteEntry";
        case ErrorKind::TooLarge: return "TooLarge";
    }
    return "Error";
}

std::string_view to_string(TimeModel model) {
    return model == TimeModel::Discrete ? "discrete" : "dense";
}

TimeModel parse_time_model(std::string_view text) {
    if (text == "discrete") return TimeModel::Discrete;
    if (text == "dense") return TimeModel::Dense;
    throw Error(ErrorKind::ParseError, "unknown time model '" + std::string(text) + "'");
}

namespace {

using i128 = __int128;

constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

bool fits(i128 v) { return v >= kMin && v <= kMax; }

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

mpz_class to_mpz(i128 v) {
    const bool negative = v < 0;
    // Magnitude of any value built from two int64 products fits in unsigned 128.
    unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1
                                     : static_cast<unsigned __int128>(v);
    mpz_class hi = static_cast<unsigned long>(static_cast<std::uint64_t>(mag >> 64));
    mpz_class lo = static_cast<unsigned long>(static_cast<std::uint64_t>(mag));
    mpz_class out = (hi << 64) + lo;
    return negative ? mpz_class(-out) : out;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator");
    i128 n = num;
    i128 d = den;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    if (fits(n) && fits(d)) {
        num_ = static_cast<std::int64_t>(n);
        den_ = static_cast<std::int64_t>(d);
    } else {
        *this = from_mpq(mpq_class(to_mpz(n), to_mpz(d)));
    }
}

Rational::Rational(const mpq_class& value) { *this = from_mpq(value); }

Rational Rational::from_mpq(mpq_class value) {
    value.canonicalize();
    Rational out;
    const mpz_class& n = value.get_num();
    const mpz_class& d = value.get_den();
    if (n.fits_slong_p() && d.fits_slong_p()) {
        out.num_ = n.get_si();
        out.den_ = d.get_si();
    } else {
        out.big_ = std::make_shared<const mpq_class>(std::move(value));
    }
    return out;
}

Rational Rational::parse(std::string_view text) {
    auto bad = [&] { return Error(ErrorKind::ParseError, "malformed number '" + std::string(text) + "'"); };
    auto digits_ok = [](std::string_view s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    std::string_view num_part = body;
    std::string_view den_part = "1";
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        num_part = body.substr(0, slash);
        den_part = body.substr(slash + 1);
    }
    if (!digits_ok(num_part) || !digits_ok(den_part)) throw bad();
    mpz_class num(std::string(num_part), 10);
    mpz_class den(std::string(den_part), 10);
    if (den == 0) throw bad();
    if (negative) num = -num;
    return from_mpq(mpq_class(num, den));
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

mpz_class Rational::numerator() const { return big_ ? big_->get_num() : mpz_class(static_cast<long>(num_)); }
mpz_class Rational::denominator() const { return big_ ? big_->get_den() : mpz_class(static_cast<long>(den_)); }

std::string Rational::to_string() const {
    if (big_) return big_->get_str(10);
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
    if (!big_ && num_ != kMin) {
        Rational out;
        out.num_ = -num_;
        out.den_ = den_;
        return out;
    }
    return from_mpq(-to_mpq());
}

Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        if (a.den_ == 1 && b.den_ == 1) {
            std::int64_t sum;
            if (!__builtin_add_overflow(a.num_, b.num_, &sum)) return Rational(sum);
        } else {
            i128 n = static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_;
            i128 d = static_cast<i128>(a.den_) * b.den_;
            i128 g = gcd128(n, d);
            if (g > 1) {
                n /= g;
                d /= g;
            }
            if (fits(n) && fits(d)) {
                Rational out;
                out.num_ = static_cast<std::int64_t>(n);
                out.den_ = static_cast<std::int64_t>(d);
                return out;
            }
        }
    }
    return Rational::from_mpq(a.to_mpq() + b.to_mpq());
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        i128 n = static_cast<i128>(a.num_) * b.num_;
        i128 d = static_cast<i128>(a.den_) * b.den_;
        i128 g = gcd128(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        if (fits(n) && fits(d)) {
            Rational out;
            out.num_ = static_cast<std::int64_t>(n);
            out.den_ = static_cast<std::int64_t>(d);
            return out;
        }
    }
    return Rational::from_mpq(a.to_mpq() * b.to_mpq());
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.sign() == 0) throw Error(ErrorKind::ParseError, "division by zero");
    return Rational::from_mpq(a.to_mpq() / b.to_mpq());
}

bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (!a.big_ || !b.big_) return false;  // unique representation
    return *a.big_ == *b.big_;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        if (a.den_ == b.den_) return a.num_ <=> b.num_;
        i128 lhs = static_cast<i128>(a.num_) * b.den_;
        i128 rhs = static_cast<i128>(b.num_) * a.den_;
        return lhs <=> rhs;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
}

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.to_string(); }

const Rational& Bound::value() const {
    if (kind_ != Kind::Finite) throw std::logic_error("Bound::value() on an infinite bound");
    return value_;
}

std::string Bound::to_string() const {
    switch (kind_) {
        case Kind::NegInf: return "-inf";
        case Kind::PosInf: return "inf";
        case Kind::Finite: break;
    }
    return value_.to_string();
}

Bound Bound::operator-() const {
    switch (kind_) {
        case Kind::NegInf: return pos_inf();
        case Kind::PosInf: return neg_inf();
        case Kind::Finite: break;
    }
    return Bound(-value_);
}

bool operator==(const Bound& a, const Bound& b) {
    if (a.kind_ != b.kind_) return false;
    return a.kind_ != Bound::Kind::Finite || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const Bound& a, const Bound& b) {
    if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
    if (a.kind_ != Bound::Kind::Finite) return std::strong_ordering::equal;
    return a.value_ <=> b.value_;
}

std::ostream& operator<<(std::ostream& os, const Bound& value) { return os << value.to_string(); }

Bound bound_add(const Bound& a, const Bound& b) {
    if (a.is_finite() && b.is_finite()) return Bound(a.value() + b.value());
    if ((a.is_neg_inf() && b.is_pos_inf()) || (a.is_pos_inf() && b.is_neg_inf())) {
        throw Error(ErrorKind::IndeterminateSum, "-inf + inf is undefined");
    }
    return a.is_finite() ? b : a;
}

Bound bound_min(const Bound& a, const Bound& b) { return b < a ? b : a; }

bool fits_model(const Rational& value, TimeModel model) {
    return model == TimeModel::Dense || value.is_integer();
}

Bound bound_parse(std::string_view text, TimeModel model) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "inf" || lower == "+inf") return Bound::pos_inf();
    if (lower == "-inf") return Bound::neg_inf();
    Rational value = Rational::parse(text);
    if (!fits_model(value, model)) {
        throw Error(ErrorKind::ModelMismatch,
                    "non-integer bound '" + std::string(text) + "' under the discrete time model");
    }
    return Bound(std::move(value));
}

}  // namespace timely

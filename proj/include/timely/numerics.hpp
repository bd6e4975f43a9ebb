#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace timely {

enum class TimeModel { Discrete, Dense };

std::string_view to_string(TimeModel model);
TimeModel parse_time_model(std::string_view text);

/// Exact rational number in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator both fit in int64 are stored inline;
/// anything larger is promoted to a shared, immutable GMP rational. A value is
/// inline iff it fits, so the representation of a given rational is unique.
class Rational {
  public:
    Rational() = default;
    Rational(std::int64_t value) : num_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t num, std::int64_t den);
    explicit Rational(const mpq_class& value);

    /// Parses an optionally signed decimal integer or "p/q".
    static Rational parse(std::string_view text);

    [[nodiscard]] bool is_integer() const;
    [[nodiscard]] int sign() const;
    [[nodiscard]] bool is_small() const { return big_ == nullptr; }
    /// The value as int64 when it is an integer that fits.
    [[nodiscard]] std::optional<std::int64_t> as_int64() const {
        if (big_ || den_ != 1) return std::nullopt;
        return num_;
    }

    [[nodiscard]] mpq_class to_mpq() const;
    [[nodiscard]] mpz_class numerator() const;
    [[nodiscard]] mpz_class denominator() const;
    [[nodiscard]] std::string to_string() const;

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& other) { return *this = *this + other; }
    Rational& operator-=(const Rational& other) { return *this = *this - other; }

    friend bool operator==(const Rational& a, const Rational& b);
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  private:
    static Rational from_mpq(mpq_class value);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::shared_ptr<const mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

/// An element of the extended time-difference domain: a finite exact value or
/// one of the two infinities. Totally ordered with -inf < finite < +inf.
class Bound {
  public:
    enum class Kind : std::uint8_t { NegInf, Finite, PosInf };

    Bound() = default;  // Finite(0)
    Bound(Rational value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
    Bound(std::int64_t value) : value_(value) {}          // NOLINT(google-explicit-constructor)

    static Bound neg_inf() { return Bound(Kind::NegInf); }
    static Bound pos_inf() { return Bound(Kind::PosInf); }

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] bool is_finite() const { return kind_ == Kind::Finite; }
    [[nodiscard]] bool is_neg_inf() const { return kind_ == Kind::NegInf; }
    [[nodiscard]] bool is_pos_inf() const { return kind_ == Kind::PosInf; }

    /// The finite value; calling this on an infinity is a logic error.
    [[nodiscard]] const Rational& value() const;

    [[nodiscard]] std::string to_string() const;

    Bound operator-() const;

    friend bool operator==(const Bound& a, const Bound& b);
    friend std::strong_ordering operator<=>(const Bound& a, const Bound& b);

  private:
    explicit Bound(Kind kind) : kind_(kind) {}

    Kind kind_ = Kind::Finite;
    Rational value_;
};

std::ostream& operator<<(std::ostream& os, const Bound& value);

/// Sum in the extended domain. Throws Error(IndeterminateSum) for -inf + +inf.
Bound bound_add(const Bound& a, const Bound& b);
Bound bound_min(const Bound& a, const Bound& b);

/// Accepts "[+-]digits", "[+-]p/q" and "inf"/"+inf"/"-inf" (case-insensitive).
/// Throws Error(ParseError) on malformed text, Error(ModelMismatch) for a
/// non-integer value under the discrete model.
Bound bound_parse(std::string_view text, TimeModel model);

/// True if a finite value is admissible under the model.
bool fits_model(const Rational& value, TimeModel model);

}  // namespace timely

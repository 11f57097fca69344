#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace ainf {

/// Coefficient field: the rationals, or integers mod a prime p.
/// p is validated at construction; all arithmetic is exact.
class Field {
  public:
    enum class Kind { Rationals, PrimeField };

    Field() : kind_(Kind::Rationals), p_(0) {}
    static Field rationals() { return Field(); }
    static Field prime_field(std::int64_t p);

    Kind kind() const { return kind_; }
    bool is_rational() const { return kind_ == Kind::Rationals; }
    std::int64_t characteristic() const { return is_rational() ? 0 : p_; }

    bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

    std::string str() const;

  private:
    Kind kind_;
    std::int64_t p_;
};

bool is_prime(std::int64_t n);

/// Exact field element.  Carries its field so that mixed-field arithmetic
/// is rejected instead of silently coercing.
class Scalar {
  public:
    Scalar() : field_(), q_(0), r_(0) {}
    explicit Scalar(const Field& f) : field_(f), q_(0), r_(0) {}
    Scalar(const Field& f, long num, long den = 1);
    static Scalar from_mpq(const Field& f, const mpq_class& v);

    const Field& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator-() const;
    Scalar operator*(const Scalar& o) const;
    Scalar inverse() const;  // throws on zero
    Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Canonical form: "num/den" in lowest terms with positive denominator,
    /// or just "num" when den == 1.  Mod p the representative lies in [0,p).
    std::string str() const;
    /// Parses the canonical form (also accepts non-canonical fractions and
    /// out-of-range residues, which are normalized).
    static Scalar parse(const Field& f, const std::string& text);

  private:
    void check_same(const Scalar& o) const;

    Field field_;
    mpq_class q_;       // rationals
    std::int64_t r_;    // prime field, normalized to [0, p)
};

inline Scalar operator*(long a, const Scalar& s) { return Scalar(s.field(), a) * s; }

}  // namespace ainf

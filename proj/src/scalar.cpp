#include "ainf/scalar.hpp"

namespace ainf {

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

Field Field::prime_field(std::int64_t p) {
    if (!is_prime(p))
        throw std::invalid_argument("field modulus " + std::to_string(p) + " is not prime");
    if (p > (std::int64_t(1) << 31))
        throw std::invalid_argument("prime modulus too large");
    Field f;
    f.kind_ = Kind::PrimeField;
    f.p_ = p;
    return f;
}

std::string Field::str() const {
    return is_rational() ? std::string("Q") : "Fp " + std::to_string(p_);
}

namespace {
std::int64_t mod_norm(std::int64_t v, std::int64_t p) {
    v %= p;
    if (v < 0) v += p;
    return v;
}

// Extended Euclid; p prime, 0 < a < p.
std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    return mod_norm(t, p);
}
}  // namespace

Scalar::Scalar(const Field& f, long num, long den) : field_(f), q_(0), r_(0) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (f.is_rational()) {
        q_ = mpq_class(num, den);
        q_.canonicalize();
    } else {
        const std::int64_t p = f.characteristic();
        std::int64_t d = mod_norm(den, p);
        if (d == 0) throw std::invalid_argument("denominator divisible by p");
        r_ = mod_norm(num, p) * mod_inverse(d, p) % p;
    }
}

Scalar Scalar::from_mpq(const Field& f, const mpq_class& v) {
    Scalar s(f);
    if (f.is_rational()) {
        s.q_ = v;
        s.q_.canonicalize();
    } else {
        const std::int64_t p = f.characteristic();
        mpz_class num = v.get_num() % p, den = v.get_den() % p;
        std::int64_t n = mod_norm(num.get_si(), p), d = mod_norm(den.get_si(), p);
        if (d == 0) throw std::invalid_argument("denominator divisible by p");
        s.r_ = n * mod_inverse(d, p) % p;
    }
    return s;
}

void Scalar::check_same(const Scalar& o) const {
    if (field_ != o.field_) throw std::invalid_argument("mixed-field arithmetic");
}

bool Scalar::is_zero() const { return field_.is_rational() ? q_ == 0 : r_ == 0; }
bool Scalar::is_one() const { return field_.is_rational() ? q_ == 1 : r_ == 1; }

Scalar Scalar::operator+(const Scalar& o) const {
    check_same(o);
    Scalar s(field_);
    if (field_.is_rational())
        s.q_ = q_ + o.q_;
    else
        s.r_ = (r_ + o.r_) % field_.characteristic();
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
    check_same(o);
    Scalar s(field_);
    if (field_.is_rational())
        s.q_ = q_ - o.q_;
    else
        s.r_ = mod_norm(r_ - o.r_, field_.characteristic());
    return s;
}

Scalar Scalar::operator-() const {
    Scalar s(field_);
    if (field_.is_rational())
        s.q_ = -q_;
    else
        s.r_ = mod_norm(-r_, field_.characteristic());
    return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same(o);
    Scalar s(field_);
    if (field_.is_rational())
        s.q_ = q_ * o.q_;
    else
        s.r_ = r_ * o.r_ % field_.characteristic();
    return s;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    Scalar s(field_);
    if (field_.is_rational())
        s.q_ = 1 / q_;
    else
        s.r_ = mod_inverse(r_, field_.characteristic());
    return s;
}

bool Scalar::operator==(const Scalar& o) const {
    check_same(o);
    return field_.is_rational() ? q_ == o.q_ : r_ == o.r_;
}

std::string Scalar::str() const {
    if (!field_.is_rational()) return std::to_string(r_);
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Scalar Scalar::parse(const Field& f, const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty scalar");
    std::string num = text, den = "1";
    if (auto pos = text.find('/'); pos != std::string::npos) {
        num = text.substr(0, pos);
        den = text.substr(pos + 1);
    }
    mpq_class v;
    try {
        v = mpq_class(mpz_class(num), mpz_class(den));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed scalar '" + text + "'");
    }
    if (v.get_den() == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    v.canonicalize();
    return from_mpq(f, v);
}

}  // namespace ainf

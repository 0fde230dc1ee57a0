#pragma once

#include <compare>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace markoff {

/// Exact element u + v*sqrt(D) of Q(sqrt(D)) for a fixed positive radicand D.
///
/// When D is a perfect square the element is kept collapsed to a rational
/// (v == 0), so equality is structural in both cases. Elements built over
/// different radicands never mix; arithmetic between them throws.
class QuadElem {
public:
    QuadElem() = default;
    explicit QuadElem(const mpz_class& radicand);
    QuadElem(const mpq_class& u, const mpq_class& v, const mpz_class& radicand);

    static QuadElem rational(const mpq_class& u, const mpz_class& radicand);
    static QuadElem sqrt_of(const mpz_class& radicand);

    const mpq_class& u() const { return u_; }
    const mpq_class& v() const { return v_; }
    const mpz_class& radicand() const { return d_; }

    bool is_rational() const { return v_ == 0; }
    bool is_zero() const { return u_ == 0 && v_ == 0; }

    /// -1, 0 or +1, decided without any floating point.
    int sign() const;

    /// u^2 - D v^2 (the field norm).
    mpq_class norm() const;
    QuadElem conjugate() const;
    QuadElem inverse() const;
    QuadElem pow(long exponent) const;
    QuadElem abs() const { return sign() < 0 ? -*this : *this; }

    QuadElem operator-() const;
    QuadElem& operator+=(const QuadElem& o);
    QuadElem& operator-=(const QuadElem& o);
    QuadElem& operator*=(const QuadElem& o);
    QuadElem& operator/=(const QuadElem& o);

    friend QuadElem operator+(QuadElem a, const QuadElem& b) { return a += b; }
    friend QuadElem operator-(QuadElem a, const QuadElem& b) { return a -= b; }
    friend QuadElem operator*(QuadElem a, const QuadElem& b) { return a *= b; }
    friend QuadElem operator/(QuadElem a, const QuadElem& b) { return a /= b; }

    QuadElem operator*(const mpq_class& s) const;

    friend bool operator==(const QuadElem& a, const QuadElem& b);
    friend std::strong_ordering operator<=>(const QuadElem& a, const QuadElem& b);

    /// Decimal value to roughly `bits` bits of precision.
    mpf_class to_mpf(unsigned long bits = 512) const;
    double to_double() const;

    /// Exact rendering, e.g. "3 + 2*sqrt(2)" style "u + v*sqrt(D)".
    std::string to_string() const;

private:
    void normalize();
    void require_same_field(const QuadElem& o) const;

    mpq_class u_{0};
    mpq_class v_{0};
    mpz_class d_{1};
    // square root of d_ when d_ is a perfect square, else 0
    mpz_class root_{1};
};

/// Canonical n/d (gmpxx does not canonicalize two-argument construction).
mpq_class ratio(const mpz_class& n, const mpz_class& d);

/// Returns r with r*r == n when n is a non-negative perfect square, else -1.
mpz_class exact_sqrt(const mpz_class& n);

}  // namespace markoff

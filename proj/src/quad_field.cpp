#include "markoff/quad_field.hpp"

#include <sstream>

namespace markoff {

mpz_class exact_sqrt(const mpz_class& n) {
    if (sgn(n) < 0) return -1;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return -1;
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

mpq_class ratio(const mpz_class& n, const mpz_class& d) {
    mpq_class q(n, d);
    q.canonicalize();
    return q;
}

QuadElem::QuadElem(const mpz_class& radicand) : d_(radicand) {
    if (sgn(d_) <= 0) throw std::invalid_argument("QuadElem: radicand must be positive");
    mpz_class r = exact_sqrt(d_);
    root_ = r > 0 ? r : mpz_class(0);
}

QuadElem::QuadElem(const mpq_class& u, const mpq_class& v, const mpz_class& radicand)
    : QuadElem(radicand) {
    u_ = u;
    v_ = v;
    u_.canonicalize();
    v_.canonicalize();
    normalize();
}

QuadElem QuadElem::rational(const mpq_class& u, const mpz_class& radicand) {
    return QuadElem(u, 0, radicand);
}

QuadElem QuadElem::sqrt_of(const mpz_class& radicand) {
    return QuadElem(0, 1, radicand);
}

void QuadElem::normalize() {
    if (root_ != 0 && v_ != 0) {
        u_ += v_ * mpq_class(root_);
        v_ = 0;
    }
}

void QuadElem::require_same_field(const QuadElem& o) const {
    if (d_ != o.d_) throw std::invalid_argument("QuadElem: mixed radicands");
}

int QuadElem::sign() const {
    const int su = sgn(u_);
    const int sv = sgn(v_);
    if (sv == 0) return su;
    if (su == 0) return sv;
    if (su == sv) return su;
    // opposite signs: the larger of u^2 and v^2 D wins; they cannot be
    // equal because sqrt(D) is irrational whenever v != 0
    const mpq_class lhs = u_ * u_;
    const mpq_class rhs = v_ * v_ * mpq_class(d_);
    return lhs > rhs ? su : sv;
}

mpq_class QuadElem::norm() const {
    return u_ * u_ - v_ * v_ * mpq_class(d_);
}

QuadElem QuadElem::conjugate() const {
    return QuadElem(u_, -v_, d_);
}

QuadElem QuadElem::inverse() const {
    if (is_zero()) throw std::domain_error("QuadElem: inverse of zero");
    const mpq_class n = norm();
    return QuadElem(u_ / n, -v_ / n, d_);
}

QuadElem QuadElem::pow(long exponent) const {
    QuadElem base = exponent < 0 ? inverse() : *this;
    unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent)
                                   : static_cast<unsigned long>(exponent);
    QuadElem result = rational(1, d_);
    while (e != 0) {
        if (e & 1UL) result *= base;
        e >>= 1;
        if (e != 0) base *= base;
    }
    return result;
}

QuadElem QuadElem::operator-() const {
    QuadElem r = *this;
    r.u_ = -r.u_;
    r.v_ = -r.v_;
    return r;
}

QuadElem& QuadElem::operator+=(const QuadElem& o) {
    require_same_field(o);
    u_ += o.u_;
    v_ += o.v_;
    return *this;
}

QuadElem& QuadElem::operator-=(const QuadElem& o) {
    require_same_field(o);
    u_ -= o.u_;
    v_ -= o.v_;
    return *this;
}

QuadElem& QuadElem::operator*=(const QuadElem& o) {
    require_same_field(o);
    const mpq_class nu = u_ * o.u_ + v_ * o.v_ * mpq_class(d_);
    const mpq_class nv = u_ * o.v_ + v_ * o.u_;
    u_ = nu;
    v_ = nv;
    return *this;
}

QuadElem& QuadElem::operator/=(const QuadElem& o) {
    return *this *= o.inverse();
}

QuadElem QuadElem::operator*(const mpq_class& s) const {
    QuadElem r = *this;
    r.u_ *= s;
    r.v_ *= s;
    return r;
}

bool operator==(const QuadElem& a, const QuadElem& b) {
    a.require_same_field(b);
    return a.u_ == b.u_ && a.v_ == b.v_;
}

std::strong_ordering operator<=>(const QuadElem& a, const QuadElem& b) {
    const int s = (a - b).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

mpf_class QuadElem::to_mpf(unsigned long bits) const {
    mpf_class r(0, bits);
    mpf_class v(v_, bits);
    mpf_class s(d_, bits);
    s = sqrt(s);
    r = mpf_class(u_, bits) + v * s;
    return r;
}

double QuadElem::to_double() const {
    return to_mpf().get_d();
}

std::string QuadElem::to_string() const {
    std::ostringstream os;
    if (v_ == 0) {
        os << u_.get_str();
        return os.str();
    }
    if (u_ != 0) {
        os << u_.get_str() << (sgn(v_) < 0 ? " - " : " + ");
        os << mpq_class(sgn(v_) < 0 ? mpq_class(-v_) : v_).get_str();
    } else {
        os << v_.get_str();
    }
    os << "*sqrt(" << d_.get_str() << ")";
    return os.str();
}

}  // namespace markoff

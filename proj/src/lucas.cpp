#include "markoff/lucas.hpp"

#include <unordered_map>

namespace markoff {

const char* kind_name(Kind k) {
    return k == Kind::U ? "U" : "V";
}

Kind parse_kind(const std::string& s) {
    if (s == "U" || s == "u") return Kind::U;
    if (s == "V" || s == "v") return Kind::V;
    throw std::invalid_argument("kind must be U or V, got '" + s + "'");
}

int SequenceParams::unit_beta() const {
    if (!beta.is_rational()) return 0;
    if (beta.u() == 1) return 1;
    if (beta.u() == -1) return -1;
    return 0;
}

SequenceParams validate_params(long P, long Q, Kind kind) {
    if (Q == 0) throw InvalidParams("Q must be nonzero");
    const mpz_class D = mpz_class(P) * P - mpz_class(4) * Q;
    if (sgn(D) <= 0) {
        throw InvalidParams("discriminant D = P^2 - 4Q = " + D.get_str() + " is not positive");
    }
    if (P >= 2) {
        if (Q < -P - 1 || Q > P - 1) {
            throw InvalidParams("Q = " + std::to_string(Q) + " outside [-P-1, P-1]");
        }
    } else if (!(P == 1 && (Q == -1 || Q == -2))) {
        throw InvalidParams("P = 1 admits only Q = -1 or Q = -2; P < 1 is not supported");
    }

    SequenceParams p;
    p.P = P;
    p.Q = Q;
    p.kind = kind;
    p.D = D;
    p.alpha = QuadElem(ratio(P, 2), ratio(1, 2), D);
    p.beta = QuadElem(ratio(P, 2), ratio(-1, 2), D);

    const QuadElem one = QuadElem::rational(1, D);
    if (p.alpha <= one) throw InvalidParams("alpha must exceed 1");
    if (p.beta.abs() > one) throw InvalidParams("|beta| must not exceed 1");
    // alpha/beta is a root of unity only if alpha = -beta, i.e. P = 0
    if (p.alpha == -p.beta) throw InvalidParams("alpha/beta is a root of unity");

    const auto t = raw_terms(P, Q, kind, kMonotoneGuard);
    for (int n = 1; n < kMonotoneGuard; ++n) {
        if (t[n + 1] < t[n]) {
            throw InvalidParams("sequence is not monotone at n = " + std::to_string(n));
        }
    }
    return p;
}

std::vector<mpz_class> raw_terms(long P, long Q, Kind kind, int n) {
    std::vector<mpz_class> t;
    t.reserve(static_cast<size_t>(n) + 2);
    if (kind == Kind::U) {
        t.emplace_back(0);
        t.emplace_back(1);
    } else {
        t.emplace_back(2);
        t.emplace_back(P);
    }
    for (int k = 2; k <= n; ++k) {
        t.push_back(P * t[k - 1] - Q * t[k - 2]);
    }
    t.resize(static_cast<size_t>(n) + 1);
    return t;
}

mpz_class term(const SequenceParams& params, int n) {
    if (n < 0) throw std::invalid_argument("negative index");
    return raw_terms(params.P, params.Q, params.kind, n)[n];
}

std::vector<mpz_class> terms(const SequenceParams& params, int n_max) {
    return raw_terms(params.P, params.Q, params.kind, n_max);
}

mpz_class binet(const SequenceParams& params, int n) {
    const QuadElem an = params.alpha.pow(n);
    const QuadElem bn = params.beta.pow(n);
    const QuadElem value =
        params.kind == Kind::U ? (an - bn) / params.sqrt_d() : an + bn;
    if (!value.is_rational() || value.u().get_den() != 1) {
        throw std::logic_error("closed form did not produce an integer");
    }
    return value.u().get_num();
}

bool fundamental_identity_check(const SequenceParams& params, int n) {
    const auto u = raw_terms(params.P, params.Q, Kind::U, n)[n];
    const auto v = raw_terms(params.P, params.Q, Kind::V, n)[n];
    mpz_class qn;
    mpz_pow_ui(qn.get_mpz_t(), mpz_class(params.Q).get_mpz_t(), static_cast<unsigned long>(n));
    return v * v - params.D * u * u == 4 * qn;
}

ShiftIdentity shift_identity_coeffs(const SequenceParams& params, int gap) {
    const int b = params.unit_beta();
    if (b == 0) throw IdentityUnavailable("shift identity needs beta = +1 or -1");
    if (gap < 0) throw std::invalid_argument("gap must be non-negative");

    // R_{n+1} = alpha R_n + kappa beta^n, kappa = 1 (U) or -sqrt(D) (V)
    const mpz_class a = params.alpha.u().get_num();
    const mpz_class kappa =
        params.kind == Kind::U ? mpz_class(1) : mpz_class(-params.sqrt_d().u().get_num());

    // sum_{t<gap} alpha^{gap-1-t} beta^t
    mpz_class acc = 0;
    mpz_class g = 1;
    for (int t = 0; t < gap; ++t) {
        acc = acc * a + (t % 2 == 0 || b == 1 ? 1 : -1);
        g *= a;
    }

    ShiftIdentity id;
    id.gap = gap;
    id.by_parity[0] = {g, kappa * acc};
    id.by_parity[1] = {g, kappa * acc * b};
    return id;
}

std::vector<int> is_member(const SequenceParams& params, const mpz_class& x) {
    std::vector<int> hits;
    if (sgn(x) <= 0) return hits;
    mpz_class prev = params.kind == Kind::U ? mpz_class(0) : mpz_class(2);
    mpz_class cur = params.kind == Kind::U ? mpz_class(1) : mpz_class(params.P);
    for (int n = 1;; ++n) {
        if (cur == x) hits.push_back(n);
        // terms are non-decreasing from n = 1 (checked up to the guard,
        // eventually strictly increasing since alpha > 1 >= |beta|)
        if (cur > x) break;
        mpz_class next = params.P * cur - params.Q * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return hits;
}

long ModularSequence::at(long n) const {
    if (n < preperiod + period) return residues[static_cast<size_t>(n)];
    return residues[static_cast<size_t>(preperiod + (n - preperiod) % period)];
}

ModularSequence mod_reduce(const SequenceParams& params, long modulus) {
    if (modulus < 2 || modulus > (1L << 31)) throw std::invalid_argument("modulus out of range");
    auto reduce = [modulus](__int128 v) {
        long r = static_cast<long>(v % modulus);
        return r < 0 ? r + modulus : r;
    };

    std::vector<long> r;
    r.push_back(reduce(params.kind == Kind::U ? 0 : 2));
    r.push_back(reduce(params.kind == Kind::U ? 1 : params.P));

    std::unordered_map<unsigned long, long> seen;
    for (long n = 0;; ++n) {
        const unsigned long key =
            static_cast<unsigned long>(r[n]) * static_cast<unsigned long>(modulus) +
            static_cast<unsigned long>(r[n + 1]);
        auto [it, inserted] = seen.emplace(key, n);
        if (!inserted) {
            ModularSequence ms;
            ms.modulus = modulus;
            ms.preperiod = it->second;
            ms.period = n - it->second;
            ms.residues.assign(r.begin(), r.begin() + n);
            return ms;
        }
        r.push_back(reduce(static_cast<__int128>(params.P) * r[n + 1] -
                           static_cast<__int128>(params.Q) * r[n]));
    }
}

TermTable::TermTable(const SequenceParams& params) : params_(params) {
    cache_ = raw_terms(params.P, params.Q, params.kind, 1);
}

const mpz_class& TermTable::operator[](int n) {
    if (n < 0) throw std::invalid_argument("negative index");
    while (static_cast<int>(cache_.size()) <= n) {
        const size_t k = cache_.size();
        cache_.push_back(params_.P * cache_[k - 1] - params_.Q * cache_[k - 2]);
    }
    return cache_[static_cast<size_t>(n)];
}

std::vector<int> TermTable::indices_of(const mpz_class& x) {
    std::vector<int> hits;
    if (sgn(x) <= 0) return hits;
    for (int n = 1;; ++n) {
        const mpz_class& t = (*this)[n];
        if (t == x) hits.push_back(n);
        if (t > x) break;
    }
    return hits;
}

}  // namespace markoff

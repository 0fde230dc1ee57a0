#include "markoff/bounds.hpp"

#include <algorithm>
#include <sstream>

namespace markoff {

std::string format_coeffs(const Coeffs& c, const char* open, const char* close) {
    std::ostringstream os;
    os << open << c[0] << ',' << c[1] << ',' << c[2] << ',' << c[3] << close;
    return os.str();
}

std::string MarkoffTuple::to_string() const {
    return format_coeffs(coeffs());
}

bool is_admissible(const Coeffs& base) {
    return std::find(kAdmissibleTuples.begin(), kAdmissibleTuples.end(), base) !=
           kAdmissibleTuples.end();
}

MarkoffTuple permuted(const Coeffs& base, const std::array<int, 3>& perm) {
    if (!is_admissible(base)) throw TupleNotInA(format_coeffs(base) + " is not admissible");
    MarkoffTuple t;
    t.a = base[perm[0]];
    t.b = base[perm[1]];
    t.c = base[perm[2]];
    t.d = base[3];
    t.base = base;
    t.perm = perm;
    return t;
}

MarkoffTuple tuple_from_coeffs(const Coeffs& abcd) {
    for (const auto& base : kAdmissibleTuples) {
        if (base[3] != abcd[3]) continue;
        std::array<int, 3> perm{0, 1, 2};
        do {
            if (base[perm[0]] == abcd[0] && base[perm[1]] == abcd[1] &&
                base[perm[2]] == abcd[2]) {
                return permuted(base, perm);
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    throw TupleNotInA(format_coeffs(abcd) + " is not a permutation of an admissible tuple");
}

Coeffs parse_coeffs(const std::string& text) {
    Coeffs c{};
    std::string s;
    for (char ch : text) {
        if (ch != '(' && ch != ')' && ch != '[' && ch != ']' && ch != ' ') s.push_back(ch);
    }
    std::istringstream is(s);
    std::string part;
    size_t n = 0;
    while (std::getline(is, part, ',')) {
        if (n >= 4 || part.empty()) throw std::invalid_argument("bad tuple '" + text + "'");
        size_t used = 0;
        c[n++] = std::stol(part, &used);
        if (used != part.size()) throw std::invalid_argument("bad tuple '" + text + "'");
    }
    if (n != 4) throw std::invalid_argument("tuple needs four entries: '" + text + "'");
    return c;
}

GrowthEnvelope envelope_tail(const SequenceParams& params, long horizon) {
    const QuadElem one = QuadElem::rational(1, params.D);
    const QuadElem eps = params.alpha.pow(-horizon);
    GrowthEnvelope env;
    env.lower_coeff = one - eps;
    env.upper_coeff = one + eps;
    if (params.kind == Kind::U) {
        const QuadElem inv_root = params.sqrt_d().inverse();
        env.lower_coeff *= inv_root;
        env.upper_coeff *= inv_root;
    }
    env.name = "default";
    return env;
}

GrowthEnvelope envelope_default(const SequenceParams& params) {
    return envelope_tail(params, 1);
}

GrowthEnvelope envelope_preset(const SequenceParams& params, const std::string& name) {
    if (name == "default") return envelope_default(params);
    if (name == "hand") {
        GrowthEnvelope env;
        env.name = "hand";
        if (params.kind == Kind::U && params.P == 6 && params.Q == 1) {
            // alpha^{n-1} <= B_n <= alpha^n
            env.lower_coeff = QuadElem::rational(1, params.D);
            env.upper_coeff = QuadElem::rational(1, params.D);
            env.lower_shift = 1;
            env.upper_shift = 0;
            return env;
        }
        if (params.kind == Kind::U && params.P == 1 && params.Q == -2) {
            // 2^{n-1}/3 <= J_n <= 2^{n-1}
            env.lower_coeff = QuadElem::rational(ratio(1, 3), params.D);
            env.upper_coeff = QuadElem::rational(1, params.D);
            env.lower_shift = 1;
            env.upper_shift = -1;
            return env;
        }
        throw std::invalid_argument("no hand-derived envelope for this sequence");
    }
    throw std::invalid_argument("unknown envelope preset '" + name + "'");
}

bool envelope_verify(const SequenceParams& params, const GrowthEnvelope& env, long horizon) {
    const auto t = terms(params, static_cast<int>(horizon));
    QuadElem lower = env.lower_coeff * params.alpha.pow(1 - env.lower_shift);
    QuadElem upper = env.upper_coeff * params.alpha.pow(1 + env.upper_shift);
    for (long k = 1; k <= horizon; ++k) {
        const QuadElem rk = QuadElem::rational(mpq_class(t[static_cast<size_t>(k)]), params.D);
        if (lower > rk || rk > upper) return false;
        lower *= params.alpha;
        upper *= params.alpha;
    }
    const GrowthEnvelope tail = envelope_tail(params, horizon + 1);
    return env.lower_coeff * params.alpha.pow(-env.lower_shift) <= tail.lower_coeff &&
           env.upper_coeff * params.alpha.pow(env.upper_shift) >= tail.upper_coeff;
}

QuadElem b_target(const SequenceParams& params, const MarkoffTuple& tuple) {
    const mpq_class e = ratio(tuple.d, tuple.c);
    const QuadElem t = QuadElem::rational(e, params.D);
    if (params.kind == Kind::V) return t;
    return t / params.sqrt_d();
}

namespace {

BoundReport compute_b_impl(const SequenceParams& params, const MarkoffTuple& tuple) {
    BoundReport r;
    r.kind = params.kind;
    r.target = b_target(params, tuple);
    const QuadElem& alpha = params.alpha;
    const QuadElem alpha_inv = alpha.inverse();

    // crossing window: alpha^I <= target < alpha^{I+1}
    long I = 0;
    QuadElem p = QuadElem::rational(1, params.D);
    if (p <= r.target) {
        while (p * alpha <= r.target) {
            p *= alpha;
            ++I;
        }
    } else {
        while (p > r.target) {
            p *= alpha_inv;
            --I;
        }
    }

    struct Candidate {
        long index;
        QuadElem dist;
    };
    std::vector<Candidate> cands;
    const QuadElem below = r.target - p;
    if (below.is_zero()) {
        r.zero_diagonals.push_back(I);
        cands.push_back({I - 1, r.target - p * alpha_inv});
    } else {
        cands.push_back({I, below});
    }
    cands.push_back({I + 1, p * alpha - r.target});

    r.value = std::min(cands[0].dist, cands[1].dist);
    for (const auto& c : cands) {
        if (c.dist == r.value) r.argmin.push_back(c.index);
    }
    r.decimal = r.value.to_double();
    return r;
}

}  // namespace

BoundReport compute_B0(const SequenceParams& params, const MarkoffTuple& tuple) {
    if (params.kind != Kind::U) throw std::invalid_argument("compute_B0 needs kind U");
    return compute_b_impl(params, tuple);
}

BoundReport compute_B1(const SequenceParams& params, const MarkoffTuple& tuple) {
    if (params.kind != Kind::V) throw std::invalid_argument("compute_B1 needs kind V");
    return compute_b_impl(params, tuple);
}

BoundReport compute_B(const SequenceParams& params, const MarkoffTuple& tuple) {
    return compute_b_impl(params, tuple);
}

QuadElem rhs_coefficient(const SequenceParams& params, const MarkoffTuple& tuple,
                         const GrowthEnvelope& env) {
    const QuadElem one = QuadElem::rational(1, params.D);
    const QuadElem growth = env.upper_coeff * env.upper_coeff / env.lower_coeff *
                            params.alpha.pow(2 * env.upper_shift + env.lower_shift) *
                            ratio(tuple.a + tuple.b, tuple.c);
    const mpq_class three_e = ratio(3 * tuple.d, tuple.c);
    if (params.kind == Kind::V) {
        return growth + QuadElem::rational(three_e, params.D) + one;
    }
    const QuadElem root = params.sqrt_d();
    return growth * root + root.inverse() * three_e + one;
}

long compute_C0(const SequenceParams& params, const MarkoffTuple& tuple,
                const GrowthEnvelope& env, const BoundReport& report) {
    if (report.value.sign() <= 0) {
        throw ZeroBound("B is zero for " + tuple.to_string());
    }
    const QuadElem limit = rhs_coefficient(params, tuple, env) / report.value;
    QuadElem p = QuadElem::rational(1, params.D);
    if (p > limit) return 0;
    long i = 0;
    while (p * params.alpha <= limit) {
        p *= params.alpha;
        ++i;
    }
    return i;
}

BoundReport bound_report(const SequenceParams& params, const MarkoffTuple& tuple,
                         const GrowthEnvelope& env) {
    BoundReport r = compute_B(params, tuple);
    r.rhs_coeff = rhs_coefficient(params, tuple, env);
    r.index_bound = compute_C0(params, tuple, env, r);
    return r;
}

std::vector<long> feasible_gaps(const SequenceParams& params, const MarkoffTuple& /*tuple*/,
                                const BoundReport& report, long i) {
    if (i < 1) throw std::invalid_argument("feasible_gaps needs i >= 1");
    std::vector<long> gaps;
    const QuadElem limit = report.rhs_coeff * params.alpha.pow(-i);
    QuadElem p = params.alpha.pow(-i);
    for (long I = -i;; ++I, p *= params.alpha) {
        const QuadElem diff = p - report.target;
        // |alpha^I - target| only grows once alpha^I passes the target
        if (diff.sign() > 0 && diff > limit) break;
        if (std::find(report.zero_diagonals.begin(), report.zero_diagonals.end(), I) !=
            report.zero_diagonals.end()) {
            continue;
        }
        if (diff.abs() <= limit) gaps.push_back(I + i);
    }
    return gaps;
}

std::vector<long> feasible_gaps(const SequenceParams& params, const MarkoffTuple& tuple,
                                const GrowthEnvelope& env, long i) {
    BoundReport r = compute_B(params, tuple);
    r.rhs_coeff = rhs_coefficient(params, tuple, env);
    return feasible_gaps(params, tuple, r, i);
}

std::vector<long> b_zero_cases(const SequenceParams& params, long e_num, long e_den, Kind kind) {
    if (e_num <= 0 || e_den <= 0) throw std::invalid_argument("e must be positive");
    const mpq_class e = ratio(e_num, e_den);
    if (!params.rational_sqrt_d()) {
        // U: alpha^I = e/sqrt(D) forces beta^I = -e/sqrt(D), so V_I = 0, which
        // never happens. V: alpha^I is irrational for I != 0.
        if (kind == Kind::V && e == 1) return {0};
        return {};
    }

    const mpz_class delta = params.sqrt_d().u().get_num();
    // delta = P mod 2, so alpha = (P + delta)/2 is an integer >= 2
    const mpz_class alpha = (params.P + delta) / 2;
    mpq_class target = kind == Kind::U ? e / mpq_class(delta) : e;
    target.canonicalize();
    if (target == 1) return {0};

    auto power_of_alpha = [&alpha](mpz_class n) -> long {
        long k = 0;
        while (n > 1 && n % alpha == 0) {
            n /= alpha;
            ++k;
        }
        return n == 1 ? k : -1;
    };
    if (target.get_den() == 1) {
        const long k = power_of_alpha(target.get_num());
        if (k > 0) return {k};
    } else if (target.get_num() == 1) {
        const long k = power_of_alpha(target.get_den());
        if (k > 0) return {-k};
    }
    return {};
}

}  // namespace markoff

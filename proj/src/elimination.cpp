#include "markoff/elimination.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace markoff {

namespace {

long mod_of(const mpz_class& v, long m) {
    return static_cast<long>(mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(m)));
}

long form_mod(const MarkoffTuple& t, long x, long y, long z, long m) {
    const __int128 v = static_cast<__int128>(t.a) * x * x + static_cast<__int128>(t.b) * y * y +
                       static_cast<__int128>(t.c) * z * z -
                       static_cast<__int128>(t.d) * x % m * y % m * z;
    long r = static_cast<long>(v % m);
    return r < 0 ? r + m : r;
}

// largest s with s^2 | n, n > 0
mpz_class square_part_root(mpz_class n) {
    mpz_class s = 1;
    for (mpz_class p = 2; p * p <= n; ++p) {
        while (n % (p * p) == 0) {
            n /= p * p;
            s *= p;
        }
        while (n % p == 0) n /= p;
    }
    return s;
}

}  // namespace

mpz_class markoff_form(const MarkoffTuple& t, const mpz_class& x, const mpz_class& y,
                       const mpz_class& z) {
    return t.a * x * x + t.b * y * y + t.c * z * z - t.d * x * y * z;
}

mpz_class form_discriminant(const MarkoffTuple& t, const mpz_class& r) {
    return mpz_class(t.d * t.d) * r * r - mpz_class(4 * t.b * t.c);
}

std::vector<mpz_class> positive_integer_roots(const mpz_class& a2, const mpz_class& a1,
                                              const mpz_class& a0) {
    std::vector<mpz_class> roots;
    if (a2 == 0) {
        if (a1 == 0) {
            if (a0 == 0) throw std::domain_error("quadratic vanishes identically");
            return roots;
        }
        const mpz_class num = -a0;
        if (num % a1 == 0 && num / a1 > 0) roots.push_back(num / a1);
        return roots;
    }
    const mpz_class disc = a1 * a1 - 4 * a2 * a0;
    const mpz_class s = exact_sqrt(disc);
    if (s < 0) return roots;
    const mpz_class den = 2 * a2;
    for (const mpz_class& num : {mpz_class(-a1 - s), mpz_class(-a1 + s)}) {
        if (num % den != 0) continue;
        mpz_class x = num / den;
        if (x > 0) roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

std::vector<mpz_class> final_quadratic(const MarkoffTuple& tuple, const mpz_class& r,
                                       const mpz_class& z) {
    return positive_integer_roots(mpz_class(tuple.b), -tuple.d * r * z,
                                  tuple.a * r * r + tuple.c * z * z);
}

// ---- stage (I) --------------------------------------------------------------

namespace {

bool form_has_residue_solution(const MarkoffTuple& t, const mpz_class& r, long m) {
    const long rr = mod_of(r, m);
    for (long y = 0; y < m; ++y) {
        for (long z = 0; z < m; ++z) {
            if (form_mod(t, rr, y, z, m) == 0) return true;
        }
    }
    return false;
}

}  // namespace

QuadSolvability quad_solvable(const MarkoffTuple& tuple, const mpz_class& r,
                              const SearchLimits& limits) {
    QuadSolvability out;
    const mpz_class n = form_discriminant(tuple, r);
    if (n <= 0) {
        out.status = QuadSolvability::Status::Unsolvable;
        out.certificate = DefinitenessCert{r, n};
        return out;
    }
    for (long y = 1; y <= limits.witness_bound; ++y) {
        const mpz_class yy = y;
        const auto zs = positive_integer_roots(mpz_class(tuple.c), -tuple.d * r * yy,
                                               tuple.a * r * r + tuple.b * yy * yy);
        if (!zs.empty()) {
            out.status = QuadSolvability::Status::Solvable;
            out.witness = std::make_pair(yy, zs.front());
            return out;
        }
    }
    for (long m : limits.moduli) {
        if (!form_has_residue_solution(tuple, r, m)) {
            out.status = QuadSolvability::Status::Unsolvable;
            out.certificate = FormModularCert{r, m};
            return out;
        }
    }
    return norm_form_decide(tuple, r, limits);
}

std::optional<std::pair<mpz_class, mpz_class>> pell_unit(const mpz_class& N, long max_steps) {
    if (N <= 0 || exact_sqrt(N) >= 0) return std::nullopt;
    mpz_class a0;
    mpz_sqrt(a0.get_mpz_t(), N.get_mpz_t());
    // sqrt(N) = [a0; a1, ...] with (m + sqrt N) / q as complete quotients
    mpz_class m = 0, q = 1, a = a0;
    mpz_class p_prev = 1, p = a0, q_prev = 0, qq = 1;
    for (long step = 0; step < max_steps; ++step) {
        if (p * p - N * qq * qq == 1) return std::make_pair(p, qq);
        m = a * q - m;
        q = (N - m * m) / q;
        a = (a0 + m) / q;
        mpz_class p_next = a * p + p_prev;
        mpz_class q_next = a * qq + q_prev;
        p_prev = p;
        p = p_next;
        q_prev = qq;
        qq = q_next;
    }
    return std::nullopt;
}

QuadSolvability norm_form_decide(const MarkoffTuple& tuple, const mpz_class& r,
                                 const SearchLimits& limits) {
    QuadSolvability out;
    NormFormCert cert;
    cert.r = r;
    cert.N = form_discriminant(tuple, r);
    cert.M = -4 * mpz_class(tuple.a * tuple.c) * r * r;
    const mpz_class& N = cert.N;
    const mpz_class& M = cert.M;
    const mpz_class dr = tuple.d * r;
    const mpz_class m2c = 2 * tuple.c;
    auto lands = [&](const mpz_class& X, const mpz_class& Y) {
        const mpz_class v = X + dr * Y;
        return mpz_divisible_p(v.get_mpz_t(), m2c.get_mpz_t()) != 0;
    };
    auto solved = [&](mpz_class X, mpz_class Y) {
        if (Y < 0) {
            X = -X;
            Y = -Y;
        }
        // |X| < d r Y because N < (d r)^2 and M < 0, so z > 0
        out.status = QuadSolvability::Status::Solvable;
        out.witness = std::make_pair(Y, mpz_class((X + dr * Y) / m2c));
        return out;
    };

    if (N <= 0) {
        out.status = QuadSolvability::Status::Unsolvable;
        out.certificate = DefinitenessCert{r, N};
        return out;
    }
    const mpz_class s = exact_sqrt(N);
    if (s > 0) {
        // (X - sY)(X + sY) = M over the divisors u of |M|
        const mpz_class absm = -M;
        if (absm > mpz_class(limits.norm_form_scan) * limits.norm_form_scan) return out;
        for (mpz_class u = 1; u * u <= absm; ++u) {
            if (absm % u != 0) continue;
            for (const mpz_class& f : {u, mpz_class(absm / u)}) {
                for (int sg : {1, -1}) {
                    const mpz_class uu = sg * f;
                    const mpz_class vv = M / uu;
                    const mpz_class diff = vv - uu;
                    const mpz_class sum = uu + vv;
                    if (diff == 0 || diff % (2 * s) != 0 || sum % 2 != 0) continue;
                    const mpz_class X = sum / 2;
                    const mpz_class Y = diff / (2 * s);
                    cert.representatives.emplace_back(X, Y);
                    if (lands(X, Y)) return solved(X, Y);
                }
            }
        }
        out.status = QuadSolvability::Status::Unsolvable;
        out.certificate = cert;
        return out;
    }

    const auto unit = pell_unit(N, limits.unit_search_steps);
    if (!unit) return out;
    cert.x1 = unit->first;
    cert.y1 = unit->second;
    // Nagell: some solution in each class has 0 < Y, 2 (x1 - 1) Y^2 <= y1^2 |M|
    const mpz_class lhs_scale = 2 * (cert.x1 - 1);
    const mpz_class rhs = cert.y1 * cert.y1 * (-M);
    for (mpz_class Y = 1; lhs_scale * Y * Y <= rhs; ++Y) {
        if (Y > limits.norm_form_scan) return out;
        const mpz_class X = exact_sqrt(mpz_class(N * Y * Y + M));
        if (X < 0) continue;
        cert.representatives.emplace_back(X, Y);
        if (X != 0) cert.representatives.emplace_back(-X, Y);
    }
    // the unit orbit of each representative, reduced mod 2c, is purely periodic
    const long m = 2 * tuple.c;
    const long ux = mod_of(cert.x1, m);
    const long uy = mod_of(cert.y1, m);
    const long nm = mod_of(N, m);
    const long drm = mod_of(dr, m);
    for (const auto& [X0, Y0] : cert.representatives) {
        const long sx = mod_of(X0, m);
        const long sy = mod_of(Y0, m);
        long x = sx;
        long y = sy;
        long k = 0;
        do {
            if ((x + drm * y) % m == 0) {
                mpz_class X = X0;
                mpz_class Y = Y0;
                for (long n = 0; n < k; ++n) {
                    const mpz_class nx = X * cert.x1 + N * Y * cert.y1;
                    Y = X * cert.y1 + Y * cert.x1;
                    X = nx;
                }
                return solved(X, Y);
            }
            const long nx = (x * ux + nm * y % m * uy) % m;
            y = (x * uy + y * ux) % m;
            x = nx;
            ++k;
        } while (x != sx || y != sy);
    }
    out.status = QuadSolvability::Status::Unsolvable;
    out.certificate = cert;
    return out;
}

// ---- stage (II) -------------------------------------------------------------

bool modular_eliminate(const SequenceParams& params, const MarkoffTuple& tuple, long i,
                       long gap, long modulus) {
    const ModularSequence ms = mod_reduce(params, modulus);
    const long ri = ms.at(i);
    // j < preperiod individually, then one full period
    const long end = std::max(i, ms.preperiod) + ms.period;
    for (long j = i; j < end; ++j) {
        if (form_mod(tuple, ri, ms.at(j), ms.at(j + gap), modulus) == 0) return false;
    }
    return true;
}

// ---- diagonals --------------------------------------------------------------

DiagonalOutcome diagonal_eliminate(const SequenceParams& params, const MarkoffTuple& tuple,
                                   long offset, long modulus, long window) {
    const auto zeros = compute_B(params, tuple).zero_diagonals;
    if (std::find(zeros.begin(), zeros.end(), offset) == zeros.end()) {
        throw DiagonalUnsupported("k - i - j = " + std::to_string(offset) +
                                  " is not a zero diagonal of " + tuple.to_string());
    }
    const ModularSequence ms = mod_reduce(params, modulus);

    DiagonalOutcome out;
    out.offset = offset;
    out.modulus = modulus;
    // indices past the window must sit in the periodic part
    out.window = std::max(window, ms.preperiod - 1);
    const long w = out.window;

    TermTable tt(params);
    for (long i = 1; i <= w; ++i) {
        for (long j = i; j <= w; ++j) {
            const long k = i + j + offset;
            if (k < j) continue;
            const mpz_class ri = tt[static_cast<int>(i)];
            const mpz_class rj = tt[static_cast<int>(j)];
            const mpz_class rk = tt[static_cast<int>(k)];
            if (markoff_form(tuple, ri, rj, rk) == 0) {
                out.solutions.push_back({{i, j, k}, {ri, rj, rk}});
            }
        }
    }

    for (long i = 1; i <= w; ++i) {
        bool alive = false;
        if (i + offset >= 0) {
            const long ri = ms.at(i);
            for (long j = w + 1; j <= w + ms.period && !alive; ++j) {
                alive = form_mod(tuple, ri, ms.at(j), ms.at(i + j + offset), modulus) == 0;
            }
        }
        (alive ? out.rows_open : out.rows_killed).push_back(i);
    }

    const long lo = std::max(w + 1, -offset);
    bool alive = false;
    for (long i = lo; i < lo + ms.period && !alive; ++i) {
        for (long j = lo; j < lo + ms.period && !alive; ++j) {
            alive = form_mod(tuple, ms.at(i), ms.at(j), ms.at(i + j + offset), modulus) == 0;
        }
    }
    out.region_killed = !alive;
    return out;
}

// ---- growth on zero diagonals ---------------------------------------------------

namespace {

// Laurent polynomial in X = alpha^i, Y = alpha^j
using Laurent = std::map<std::pair<int, int>, QuadElem>;

void add_to(Laurent& p, const std::pair<int, int>& e, const QuadElem& c) {
    auto it = p.find(e);
    if (it == p.end()) {
        p.emplace(e, c);
    } else {
        it->second += c;
    }
}

Laurent operator*(const Laurent& p, const Laurent& q) {
    Laurent out;
    for (const auto& [ep, cp] : p) {
        for (const auto& [eq, cq] : q) {
            add_to(out, {ep.first + eq.first, ep.second + eq.second}, cp * cq);
        }
    }
    return out;
}

Laurent scaled(const Laurent& p, const QuadElem& s) {
    Laurent out;
    for (const auto& [e, c] : p) out.emplace(e, c * s);
    return out;
}

Laurent& operator+=(Laurent& p, const Laurent& q) {
    for (const auto& [e, c] : q) add_to(p, e, c);
    return p;
}

int parity_sign(long base, long exponent) {
    return base == -1 && (exponent % 2 + 2) % 2 == 1 ? -1 : 1;
}

}  // namespace

std::vector<int> diagonal_dominance(const SequenceParams& params, const MarkoffTuple& tuple,
                                    long offset, long lo) {
    const bool rational = params.rational_sqrt_d();
    if (!rational && params.Q != 1 && params.Q != -1) return {};
    const mpz_class& D = params.D;
    auto q = [&D](long v) { return QuadElem::rational(v, D); };
    const QuadElem alpha_off = params.alpha.pow(offset);
    // beta = +-1 when sqrt(D) is rational; otherwise beta^n = Q^n alpha^-n
    const long unit = rational ? params.unit_beta() : params.Q;

    std::vector<int> signs;
    for (int cls = 0; cls < 4; ++cls) {
        const long pi = cls / 2;
        const long pj = cls % 2;
        const int sk = parity_sign(unit, offset + pi + pj);
        const std::array<Laurent, 3> alpha_part{
            Laurent{{{1, 0}, q(1)}}, Laurent{{{0, 1}, q(1)}}, Laurent{{{1, 1}, alpha_off}}};
        std::array<Laurent, 3> beta_part;
        if (rational) {
            beta_part = {Laurent{{{0, 0}, q(parity_sign(unit, pi))}},
                         Laurent{{{0, 0}, q(parity_sign(unit, pj))}},
                         Laurent{{{0, 0}, q(sk)}}};
        } else {
            beta_part = {Laurent{{{-1, 0}, q(parity_sign(unit, pi))}},
                         Laurent{{{0, -1}, q(parity_sign(unit, pj))}},
                         Laurent{{{-1, -1}, alpha_off.inverse() * mpq_class(sk)}}};
        }
        std::array<Laurent, 3> R;
        const QuadElem inv_root = params.sqrt_d().inverse();
        for (int n = 0; n < 3; ++n) {
            if (params.kind == Kind::U) {
                R[n] = alpha_part[n];
                R[n] += scaled(beta_part[n], q(-1));
                R[n] = scaled(R[n], inv_root);
            } else {
                R[n] = alpha_part[n];
                R[n] += beta_part[n];
            }
        }
        Laurent F = scaled(R[0] * R[0], q(tuple.a));
        F += scaled(R[1] * R[1], q(tuple.b));
        F += scaled(R[2] * R[2], q(tuple.c));
        F += scaled(R[0] * R[1] * R[2], q(-tuple.d));

        int min_x = 0;
        int min_y = 0;
        for (const auto& [e, c] : F) {
            if (c.is_zero()) continue;
            min_x = std::min(min_x, e.first);
            min_y = std::min(min_y, e.second);
        }
        // multiply by X^-min_x Y^-min_y (positive), then expand at (x0 + s, x0 + t)
        const QuadElem x0 = params.alpha.pow(lo);
        Laurent shifted;
        for (const auto& [e, c] : F) {
            if (c.is_zero()) continue;
            const int ex = e.first - min_x;
            const int ey = e.second - min_y;
            for (int p = 0; p <= ex; ++p) {
                for (int r = 0; r <= ey; ++r) {
                    mpz_class bx, by;
                    mpz_bin_uiui(bx.get_mpz_t(), static_cast<unsigned long>(ex),
                                 static_cast<unsigned long>(p));
                    mpz_bin_uiui(by.get_mpz_t(), static_cast<unsigned long>(ey),
                                 static_cast<unsigned long>(r));
                    add_to(shifted, {p, r},
                           c * x0.pow(ex - p + ey - r) * mpq_class(bx * by));
                }
            }
        }
        const auto constant = shifted.find({0, 0});
        int sign = constant == shifted.end() ? 0 : constant->second.sign();
        for (const auto& [e, c] : shifted) {
            const int cs = c.sign();
            if (cs != 0 && cs != sign) sign = 0;
        }
        signs.push_back(sign);
    }
    return signs;
}

bool DiagonalCert::region_closed() const {
    if (region_modulus != 0) return true;
    return !region_signs.empty() &&
           std::none_of(region_signs.begin(), region_signs.end(), [](int s) { return s == 0; });
}

// ---- stage (III) ------------------------------------------------------------

ShiftOutcome shift_reduce(const SequenceParams& params, const MarkoffTuple& tuple, long i,
                          long gap) {
    const ShiftIdentity id = shift_identity_coeffs(params, static_cast<int>(gap));
    const bool split = params.unit_beta() == -1;
    TermTable tt(params);
    const mpz_class r = tt[static_cast<int>(i)];

    ShiftOutcome out;
    out.certificate.gap = gap;
    for (int parity = 0; parity < (split ? 2 : 1); ++parity) {
        const ShiftForm& f = id.by_parity[static_cast<size_t>(parity)];
        ShiftClass cls;
        cls.parity = split ? parity : -1;
        cls.a2 = tuple.b + tuple.c * f.g * f.g - tuple.d * r * f.g;
        cls.a1 = 2 * tuple.c * f.g * f.h - tuple.d * r * f.h;
        cls.a0 = tuple.a * r * r + tuple.c * f.h * f.h;
        cls.roots = positive_integer_roots(cls.a2, cls.a1, cls.a0);
        for (const auto& x : cls.roots) {
            for (int j : tt.indices_of(x)) {
                if (split && j % 2 != parity) continue;
                const long k = j + gap;
                const mpz_class rk = tt[static_cast<int>(k)];
                if (markoff_form(tuple, r, x, rk) == 0) {
                    out.solutions.push_back({{i, j, k}, {r, x, rk}});
                }
            }
        }
        out.certificate.classes.push_back(std::move(cls));
    }
    return out;
}

// ---- stage (IV) -------------------------------------------------------------

bool QuarticCurve::every_x_is_point() const {
    return singular() && mpz_perfect_square_p(A.get_mpz_t()) != 0;
}

mpz_class QuarticCurve::eval(const mpz_class& x) const {
    const mpz_class x2 = x * x;
    return (A * x2 + B) * x2 + C;
}

std::string QuarticCurve::to_string() const {
    std::ostringstream os;
    auto term = [&os](const mpz_class& c, const char* mono, bool first) {
        if (c == 0) return;
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        const mpz_class m = abs(c);
        if (m != 1 || mono[0] == '\0') os << m.get_str();
        os << mono;
    };
    term(A, "X^4", true);
    term(B, "X^2", A == 0);
    term(C, "", A == 0 && B == 0);
    return os.str();
}

std::vector<QuarticCurve> build_quartic(const SequenceParams& params, const MarkoffTuple& tuple,
                                        long i) {
    if (params.Q != 1 && params.Q != -1) {
        throw std::invalid_argument("quartic construction needs Q = 1 or Q = -1");
    }
    const mpz_class r = term(params, static_cast<int>(i));
    const mpz_class n = form_discriminant(tuple, r);
    if (n == 0) {
        throw DegenerateCurve("d^2 r^2 - 4bc = 0: the second factor is -4ab r^2 < 0");
    }
    const mpz_class g0 = -4 * tuple.a * tuple.b * r * r;

    // V_n^2 - D U_n^2 = 4 Q^n, with X = U_n (resp. X = V_n and Y1 = D U_n)
    struct Factor {
        mpz_class f2, f0;
        std::optional<int> parity;
    };
    std::vector<Factor> factors;
    const mpz_class& D = params.D;
    const mpz_class c0 = params.kind == Kind::U ? mpz_class(4) : mpz_class(-4 * D);
    if (params.Q == 1) {
        factors.push_back({D, c0, std::nullopt});
    } else {
        factors.push_back({D, c0, 0});
        factors.push_back({D, -c0, 1});
    }

    std::vector<QuarticCurve> curves;
    for (auto& f : factors) {
        QuarticCurve q;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), f.f2.get_mpz_t(), f.f0.get_mpz_t());
        const mpz_class s = square_part_root(g);
        q.square_factor = s * s;
        q.f2 = f.f2 / q.square_factor;
        q.f0 = f.f0 / q.square_factor;
        q.g2 = n;
        q.g0 = g0;
        q.A = q.f2 * q.g2;
        q.B = q.f2 * q.g0 + q.f0 * q.g2;
        q.C = q.f0 * q.g0;
        q.parity = f.parity;
        curves.push_back(std::move(q));
    }
    return curves;
}

namespace {

struct ResidueFilter {
    long modulus;
    std::vector<bool> square;

    explicit ResidueFilter(long m) : modulus(m), square(static_cast<size_t>(m), false) {
        for (long x = 0; x < m; ++x) square[static_cast<size_t>(x * x % m)] = true;
    }
};

const std::vector<ResidueFilter>& wheel() {
    static const std::vector<ResidueFilter> filters = {
        ResidueFilter(64), ResidueFilter(63), ResidueFilter(65), ResidueFilter(11)};
    return filters;
}

}  // namespace

std::vector<QuarticPoint> quartic_integral_points(const QuarticCurve& curve, long x_max) {
    if (x_max < 1) throw std::invalid_argument("x_max must be at least 1");
    const auto& filters = wheel();
    struct Reduced {
        long a, b, c, m;
        const std::vector<bool>* sq;
    };
    std::vector<Reduced> red;
    for (const auto& f : filters) {
        red.push_back({mod_of(curve.A, f.modulus), mod_of(curve.B, f.modulus),
                       mod_of(curve.C, f.modulus), f.modulus, &f.square});
    }

    std::vector<QuarticPoint> pts;
    mpz_class x, value, root;
    for (long X = 0; X <= x_max; ++X) {
        bool pass = true;
        for (const auto& r : red) {
            const long x2 = (X % r.m) * (X % r.m) % r.m;
            const long v = ((r.a * x2 + r.b) % r.m * x2 + r.c) % r.m;
            if (!(*r.sq)[static_cast<size_t>(v)]) {
                pass = false;
                break;
            }
        }
        if (!pass) continue;
        x = X;
        value = curve.eval(x);
        if (sgn(value) < 0) continue;
        if (mpz_perfect_square_p(value.get_mpz_t()) == 0) continue;
        mpz_sqrt(root.get_mpz_t(), value.get_mpz_t());
        pts.push_back({x, root});
    }
    return pts;
}

// ---- certificates -------------------------------------------------------------

std::string EliminationCertificate::variant_name() const {
    static const char* names[] = {"definiteness",    "form-modular",  "modular",
                                  "diagonal",        "quartic-search", "shift-reduction",
                                  "norm-form"};
    return names[detail.index()];
}

bool verify_certificate(const EliminationCertificate& cert) {
    const SequenceParams params = validate_params(cert.P, cert.Q, cert.kind);
    const MarkoffTuple& t = cert.tuple;
    return std::visit(
        [&](const auto& c) -> bool {
            using C = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<C, DefinitenessCert>) {
                return c.r == term(params, static_cast<int>(cert.i)) &&
                       c.discriminant == form_discriminant(t, c.r) && c.discriminant <= 0;
            } else if constexpr (std::is_same_v<C, FormModularCert>) {
                return c.r == term(params, static_cast<int>(cert.i)) &&
                       !form_has_residue_solution(t, c.r, c.modulus);
            } else if constexpr (std::is_same_v<C, ModularCert>) {
                return modular_eliminate(params, t, cert.i, c.gap, c.modulus);
            } else if constexpr (std::is_same_v<C, DiagonalCert>) {
                if (c.region_modulus != 0) {
                    if (!diagonal_eliminate(params, t, c.offset, c.region_modulus, c.window)
                             .region_killed) {
                        return false;
                    }
                } else if (!c.region_signs.empty()) {
                    const long lo = std::max(c.window + 1, -c.offset);
                    if (diagonal_dominance(params, t, c.offset, lo) != c.region_signs) {
                        return false;
                    }
                }
                for (const auto& [row, m] : c.rows) {
                    const auto o = diagonal_eliminate(params, t, c.offset, m, c.window);
                    if (o.window != c.window) return false;
                    if (std::find(o.rows_killed.begin(), o.rows_killed.end(), row) ==
                        o.rows_killed.end()) {
                        return false;
                    }
                }
                return true;
            } else if constexpr (std::is_same_v<C, QuarticSearchCert>) {
                const auto curves = build_quartic(params, t, cert.i);
                if (curves.size() != c.curves.size() || c.points.size() != curves.size()) {
                    return false;
                }
                for (size_t n = 0; n < curves.size(); ++n) {
                    if (curves[n].A != c.curves[n].A || curves[n].B != c.curves[n].B ||
                        curves[n].C != c.curves[n].C) {
                        return false;
                    }
                    if (quartic_integral_points(curves[n], c.x_max) != c.points[n]) return false;
                }
                return true;
            } else if constexpr (std::is_same_v<C, NormFormCert>) {
                if (c.r != term(params, static_cast<int>(cert.i))) return false;
                if (c.x1 != 0 && c.x1 * c.x1 - c.N * c.y1 * c.y1 != 1) return false;
                const auto redo = norm_form_decide(t, c.r);
                if (redo.status != QuadSolvability::Status::Unsolvable || !redo.certificate) {
                    return false;
                }
                const auto* nf = std::get_if<NormFormCert>(&*redo.certificate);
                return nf != nullptr && nf->N == c.N && nf->M == c.M && nf->x1 == c.x1 &&
                       nf->y1 == c.y1 && nf->representatives == c.representatives;
            } else {
                const auto redo = shift_reduce(params, t, cert.i, c.gap);
                if (redo.certificate.classes.size() != c.classes.size()) return false;
                for (size_t n = 0; n < c.classes.size(); ++n) {
                    if (redo.certificate.classes[n].roots != c.classes[n].roots) return false;
                }
                return true;
            }
        },
        cert.detail);
}

bool certificate_covers(const EliminationCertificate& cert, long i, long j, long k) {
    return std::visit(
        [&](const auto& c) -> bool {
            using C = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<C, DefinitenessCert> ||
                          std::is_same_v<C, FormModularCert> ||
                          std::is_same_v<C, NormFormCert>) {
                return cert.i == i;
            } else if constexpr (std::is_same_v<C, ModularCert>) {
                return cert.i == i && k - j == c.gap;
            } else if constexpr (std::is_same_v<C, DiagonalCert>) {
                if (k - i - j != c.offset || j <= c.window) return false;
                if (i > c.window) return c.region_closed();
                return std::any_of(c.rows.begin(), c.rows.end(),
                                   [i](const auto& rm) { return rm.first == i; });
            } else {
                return false;
            }
        },
        cert.detail);
}

}  // namespace markoff

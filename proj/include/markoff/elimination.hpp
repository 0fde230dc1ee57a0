#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "markoff/bounds.hpp"
#include "markoff/lucas.hpp"

namespace markoff {

class DegenerateCurve : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class DiagonalUnsupported : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Search radii and modulus list shared by every elimination stage.
struct SearchLimits {
    std::vector<long> moduli{3, 5, 7, 8, 9, 11, 13, 16};
    long x_max = 1'000'000;
    long witness_bound = 64;
    long diagonal_window = 8;
    // singular quartics put no constraint on X; sequence terms up to this index are tried
    long family_index_cap = 40;
    // representatives scanned when deciding X^2 - N Y^2 = M, and continued-fraction steps
    long norm_form_scan = 2'000'000;
    long unit_search_steps = 100'000;
};

/// A solution (R_i, R_j, R_k) of the equation for one coefficient order.
struct Triple {
    std::array<long, 3> index{};
    std::array<mpz_class, 3> value;
};

/// a x^2 + b y^2 + c z^2 - d x y z
mpz_class markoff_form(const MarkoffTuple& t, const mpz_class& x, const mpz_class& y,
                       const mpz_class& z);

/// N = d^2 r^2 - 4bc, the discriminant of the binary form in (y, z) once x = r.
mpz_class form_discriminant(const MarkoffTuple& t, const mpz_class& r);

// ---- certificates ---------------------------------------------------------

/// N <= 0: b y^2 - d r y z + c z^2 is positive semi-definite, so a r^2 + (form) > 0.
struct DefinitenessCert {
    mpz_class r;
    mpz_class discriminant;
};

/// No residue pair (y, z) mod `modulus` solves a r^2 + b y^2 + c z^2 = d r y z.
struct FormModularCert {
    mpz_class r;
    long modulus = 0;
};

/// No index j solves the fixed-(i, gap) equation modulo `modulus`.
struct ModularCert {
    long gap = 0;
    long modulus = 0;
};

/// Zero diagonal k = i + j + offset: (i, j) beyond `window` ruled out either by
/// residues modulo region_modulus or by the sign pattern in region_signs (see
/// diagonal_dominance); rows i <= window ruled out for j > window by the listed moduli.
struct DiagonalCert {
    long offset = 0;
    long window = 0;
    long region_modulus = 0;
    std::vector<int> region_signs;
    std::vector<std::pair<long, long>> rows;  // (i, modulus)

    bool region_closed() const;
};

/// With X = 2cz - d r y: X^2 - N y^2 = M, M = -4ac r^2. (x1, y1) is the fundamental
/// solution of x^2 - N y^2 = 1 (zero when N is a square). Every class representative
/// inside the Nagell bound is listed; none of their unit orbits meets
/// X + d r y = 0 mod 2c.
struct NormFormCert {
    mpz_class r;
    mpz_class N, M;
    mpz_class x1, y1;
    std::vector<std::pair<mpz_class, mpz_class>> representatives;
};

struct QuarticCurve {
    mpz_class A, B, C;  // Y^2 = A X^4 + B X^2 + C
    // first factor Y1^2 = f2 X^2 + f0 after dividing out square_factor
    mpz_class f2, f0;
    // second factor Y2^2 = g2 X^2 + g0 (g2 = N, g0 = -4ab r^2)
    mpz_class g2, g0;
    mpz_class square_factor = 1;
    // parity of the index of X this curve covers; nullopt covers both
    std::optional<int> parity;

    mpz_class eval(const mpz_class& x) const;
    /// The two factors share their roots, so A X^4 + B X^2 + C = (A / f2^2) (f2 X^2 + f0)^2.
    bool singular() const { return f2 * g0 == f0 * g2; }
    /// Singular with A a perfect square: every integer X lies on the curve.
    bool every_x_is_point() const;
    std::string to_string() const;
};

struct QuarticPoint {
    mpz_class x;
    mpz_class y;
    friend bool operator==(const QuarticPoint&, const QuarticPoint&) = default;
};

/// Every point with 0 <= X <= x_max on each curve was enumerated.
struct QuarticSearchCert {
    std::vector<QuarticCurve> curves;
    std::vector<std::vector<QuarticPoint>> points;
    long x_max = 0;
};

/// Quadratic A2 X^2 + A1 X + A0 = 0 in X = R_j for each parity class of j.
struct ShiftClass {
    int parity = 0;
    mpz_class a2, a1, a0;
    std::vector<mpz_class> roots;
};

struct ShiftCert {
    long gap = 0;
    std::vector<ShiftClass> classes;
};

using CertificateDetail = std::variant<DefinitenessCert, FormModularCert, ModularCert,
                                       DiagonalCert, QuarticSearchCert, ShiftCert,
                                       NormFormCert>;

struct EliminationCertificate {
    long P = 0;
    long Q = 0;
    Kind kind = Kind::U;
    MarkoffTuple tuple;
    long i = 0;  // smallest index; 0 for diagonal certificates
    CertificateDetail detail;

    std::string variant_name() const;
};

/// Re-evaluates the certificate's defining condition from scratch.
bool verify_certificate(const EliminationCertificate& cert);

/// True when the certificate asserts that (R_i, R_j, R_k) cannot solve its tuple.
/// Search and reduction certificates never cover: they list what they found.
bool certificate_covers(const EliminationCertificate& cert, long i, long j, long k);

// ---- stage (I): solvability of the binary quadratic --------------------------

struct QuadSolvability {
    enum class Status { Solvable, Unsolvable, Unknown };
    Status status = Status::Unknown;
    std::optional<std::pair<mpz_class, mpz_class>> witness;  // (y, z)
    std::optional<CertificateDetail> certificate;
};

QuadSolvability quad_solvable(const MarkoffTuple& tuple, const mpz_class& r,
                              const SearchLimits& limits = {});

/// Smallest x1 + y1 sqrt(N) > 1 of norm 1 by continued fractions; nullopt past max_steps.
std::optional<std::pair<mpz_class, mpz_class>> pell_unit(const mpz_class& N, long max_steps);

/// Complete decision of a r^2 + b y^2 + c z^2 = d r y z in positive y, z.
/// Unknown only when a scan limit is hit.
QuadSolvability norm_form_decide(const MarkoffTuple& tuple, const mpz_class& r,
                                 const SearchLimits& limits = {});

// ---- stage (II): congruences for fixed (i, gap) ------------------------------

bool modular_eliminate(const SequenceParams& params, const MarkoffTuple& tuple, long i,
                       long gap, long modulus);

// ---- zero diagonals --------------------------------------------------------

struct DiagonalOutcome {
    long offset = 0;
    long modulus = 0;
    long window = 0;
    std::vector<Triple> solutions;  // exact search over i <= j <= window
    bool region_killed = false;     // every (i, j) with i, j > window excluded
    std::vector<long> rows_killed;  // i <= window, all j > window excluded
    std::vector<long> rows_open;
};

DiagonalOutcome diagonal_eliminate(const SequenceParams& params, const MarkoffTuple& tuple,
                                   long offset, long modulus, long window);

/// Growth test for the region i, j >= lo of a zero diagonal. For each parity class
/// (index 2 * (i % 2) + j % 2) the equation is written as a polynomial in X = alpha^i,
/// Y = alpha^j and expanded at X = alpha^lo + s, Y = alpha^lo + t. The class gets the
/// common strict sign of all its coefficients (0 if they disagree), which rules out
/// every s, t >= 0. Empty when R_n is not a Laurent polynomial in alpha^n, i.e. when
/// sqrt(D) is irrational and Q != +-1.
std::vector<int> diagonal_dominance(const SequenceParams& params, const MarkoffTuple& tuple,
                                    long offset, long lo);

// ---- stage (III): shift identities -------------------------------------------

struct ShiftOutcome {
    std::vector<Triple> solutions;
    ShiftCert certificate;
};

ShiftOutcome shift_reduce(const SequenceParams& params, const MarkoffTuple& tuple, long i,
                          long gap);

// ---- stage (IV): quartic curves ------------------------------------------------

std::vector<QuarticCurve> build_quartic(const SequenceParams& params, const MarkoffTuple& tuple,
                                        long i);

std::vector<QuarticPoint> quartic_integral_points(const QuarticCurve& curve, long x_max);

/// Positive integer roots y of b y^2 - d r z y + (a r^2 + c z^2) = 0, ascending.
std::vector<mpz_class> final_quadratic(const MarkoffTuple& tuple, const mpz_class& r,
                                       const mpz_class& z);

/// Positive integer roots of a2 X^2 + a1 X + a0 = 0, ascending.
std::vector<mpz_class> positive_integer_roots(const mpz_class& a2, const mpz_class& a1,
                                              const mpz_class& a0);

}  // namespace markoff

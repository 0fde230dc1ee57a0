#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "markoff/quad_field.hpp"

namespace markoff {

/// U_n (first kind, U_0=0, U_1=1) or V_n (second kind, V_0=2, V_1=P).
enum class Kind { U, V };

const char* kind_name(Kind k);
Kind parse_kind(const std::string& s);

class InvalidParams : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class IdentityUnavailable : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A validated second order sequence R_n = P R_{n-1} - Q R_{n-2}.
///
/// Accepted families: P >= 2 with -P-1 <= Q <= P-1, or (P,Q) in
/// {(1,-1),(1,-2)}; always Q != 0 and D = P^2 - 4Q > 0. These imply
/// alpha > 1 and |beta| <= 1, which every bound downstream relies on.
struct SequenceParams {
    long P = 0;
    long Q = 0;
    Kind kind = Kind::U;
    mpz_class D;
    QuadElem alpha;
    QuadElem beta;

    /// sqrt(D) as a field element; rational iff D is a perfect square.
    QuadElem sqrt_d() const { return QuadElem::sqrt_of(D); }
    bool rational_sqrt_d() const { return alpha.is_rational(); }
    /// +1 or -1 when beta is a rational unit, 0 otherwise.
    int unit_beta() const;
};

/// Index below which monotonicity of R_n (n >= 1) is checked term by term.
inline constexpr int kMonotoneGuard = 64;

SequenceParams validate_params(long P, long Q, Kind kind);

/// Terms R_0..R_n of the recurrence for arbitrary integer P, Q (no validation).
std::vector<mpz_class> raw_terms(long P, long Q, Kind kind, int n);

mpz_class term(const SequenceParams& params, int n);
std::vector<mpz_class> terms(const SequenceParams& params, int n_max);

/// R_n evaluated through the closed form in Q(sqrt(D)).
mpz_class binet(const SequenceParams& params, int n);

/// V_n^2 - D U_n^2 == 4 Q^n, independent of params.kind.
bool fundamental_identity_check(const SequenceParams& params, int n);

/// R_{j+m} = g R_j + h, with h depending on the parity of j when beta = -1.
struct ShiftForm {
    mpz_class g;
    mpz_class h;
};

struct ShiftIdentity {
    int gap = 0;
    // index 0: j even, index 1: j odd
    std::array<ShiftForm, 2> by_parity;
};

ShiftIdentity shift_identity_coeffs(const SequenceParams& params, int gap);

/// All indices n >= 1 with R_n == x (ascending).
std::vector<int> is_member(const SequenceParams& params, const mpz_class& x);

/// R_n mod m: residues[0 .. preperiod+period) then periodic.
struct ModularSequence {
    long modulus = 0;
    long preperiod = 0;
    long period = 0;
    std::vector<long> residues;

    long at(long n) const;
};

ModularSequence mod_reduce(const SequenceParams& params, long modulus);

/// Cached term table for the lifetime of one computation; not thread safe.
class TermTable {
public:
    explicit TermTable(const SequenceParams& params);

    const mpz_class& operator[](int n);
    std::vector<int> indices_of(const mpz_class& x);
    const SequenceParams& params() const { return params_; }

private:
    SequenceParams params_;
    std::vector<mpz_class> cache_;
};

}  // namespace markoff

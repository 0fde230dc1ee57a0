#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "markoff/lucas.hpp"
#include "markoff/quad_field.hpp"

namespace markoff {

using Coeffs = std::array<long, 4>;

/// The coefficient tuples (a,b,c,d) for which ax^2+by^2+cz^2 = dxyz has
/// non-trivial solutions under the pairwise coprime, a,b,c | d conditions.
inline constexpr std::array<Coeffs, 6> kAdmissibleTuples = {{
    {1, 1, 1, 1},
    {1, 1, 1, 3},
    {1, 1, 2, 2},
    {1, 1, 2, 4},
    {1, 2, 3, 6},
    {1, 1, 5, 5},
}};

class TupleNotInA : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ZeroBound : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// (a,b,c,d) as a permutation of the first three entries of an admissible base.
struct MarkoffTuple {
    long a = 1;
    long b = 1;
    long c = 1;
    long d = 1;
    Coeffs base{};
    // (a,b,c) = (base[perm[0]], base[perm[1]], base[perm[2]])
    std::array<int, 3> perm{0, 1, 2};

    Coeffs coeffs() const { return {a, b, c, d}; }
    std::string to_string() const;
};

bool is_admissible(const Coeffs& base);

/// Validates (a,b,c,d) against the admissible set, finding its base and permutation.
MarkoffTuple tuple_from_coeffs(const Coeffs& abcd);

/// Permutes base (a,b,c) by perm; d stays.
MarkoffTuple permuted(const Coeffs& base, const std::array<int, 3>& perm);

Coeffs parse_coeffs(const std::string& text);
std::string format_coeffs(const Coeffs& c, const char* open = "(", const char* close = ")");

/// lower_coeff * alpha^{k - lower_shift} <= R_k <= upper_coeff * alpha^{k + upper_shift}
/// for every k >= 1.
struct GrowthEnvelope {
    QuadElem lower_coeff;
    QuadElem upper_coeff;
    long lower_shift = 0;
    long upper_shift = 0;
    std::string name = "custom";
};

/// Analytic envelope valid for every k >= horizon:
/// (1 -+ alpha^{-horizon}) alpha^k / sqrt(D) for U, without the 1/sqrt(D) for V.
GrowthEnvelope envelope_tail(const SequenceParams& params, long horizon);
GrowthEnvelope envelope_default(const SequenceParams& params);

/// "default", or "hand" for the hand-derived envelopes of the balancing
/// numbers (1, 1, 1, 0) and the Jacobsthal numbers (1/3, 1, 1, -1).
GrowthEnvelope envelope_preset(const SequenceParams& params, const std::string& name);

/// True iff the inequalities hold exactly for k = 1..horizon and the shifted
/// constants are dominated by envelope_tail(params, horizon + 1), which covers k > horizon.
bool envelope_verify(const SequenceParams& params, const GrowthEnvelope& env, long horizon);

struct BoundReport {
    Kind kind = Kind::U;
    QuadElem target;  // d/(c sqrt(D)) for U, d/c for V
    QuadElem value;   // minimum of |alpha^I - target| over I outside zero_diagonals
    double decimal = 0.0;
    std::vector<long> argmin;
    std::vector<long> zero_diagonals;
    QuadElem rhs_coeff;
    long index_bound = 0;  // C0 / C1
};

QuadElem b_target(const SequenceParams& params, const MarkoffTuple& tuple);

BoundReport compute_B0(const SequenceParams& params, const MarkoffTuple& tuple);
BoundReport compute_B1(const SequenceParams& params, const MarkoffTuple& tuple);
/// compute_B0 or compute_B1 according to params.kind.
BoundReport compute_B(const SequenceParams& params, const MarkoffTuple& tuple);

/// Bracketed coefficient of the i-bound: the quantity multiplying alpha^{-i}.
QuadElem rhs_coefficient(const SequenceParams& params, const MarkoffTuple& tuple,
                         const GrowthEnvelope& env);

/// Largest i >= 0 with alpha^i <= rhs_coeff / B (0 when even i = 0 fails).
long compute_C0(const SequenceParams& params, const MarkoffTuple& tuple,
                const GrowthEnvelope& env, const BoundReport& report);

/// B-report with rhs_coeff and index_bound filled in.
BoundReport bound_report(const SequenceParams& params, const MarkoffTuple& tuple,
                         const GrowthEnvelope& env);

/// Gaps m = k - j >= 0 allowed for smallest index i, zero diagonals excluded.
std::vector<long> feasible_gaps(const SequenceParams& params, const MarkoffTuple& tuple,
                                const GrowthEnvelope& env, long i);
std::vector<long> feasible_gaps(const SequenceParams& params, const MarkoffTuple& tuple,
                                const BoundReport& report, long i);

/// Every I with alpha^I equal to e/sqrt(D) (kind U) or e (kind V), e = e_num/e_den.
std::vector<long> b_zero_cases(const SequenceParams& params, long e_num, long e_den, Kind kind);

}  // namespace markoff

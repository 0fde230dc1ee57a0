#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "markoff/bounds.hpp"
#include "markoff/elimination.hpp"
#include "markoff/lucas.hpp"

namespace markoff {

using ValueTriple = std::array<mpz_class, 3>;

struct ResolveConfig {
    // "default", "hand", or explicit "lower,upper,lower_shift,upper_shift"
    std::string envelope = "default";
    SearchLimits limits;
};

/// Builds the envelope named by spec; explicit constants must pass envelope_verify.
GrowthEnvelope resolve_envelope(const SequenceParams& params, const std::string& spec);

struct CaseOutcome {
    enum class Status { Eliminated, Solved, Unresolved };

    long i = 0;  // 0 for a diagonal's exact window / region
    std::optional<long> gap;
    std::optional<long> diagonal;
    std::string stage;  // "I", "II", "III", "IV", "diagonal"
    Status status = Status::Unresolved;
    std::optional<EliminationCertificate> certificate;
    std::vector<Triple> solutions;
    std::string note;
};

const char* status_name(CaseOutcome::Status s);

struct PermutationRecord {
    MarkoffTuple tuple;
    BoundReport bound;
    std::vector<long> surviving;  // i <= bound not eliminated by stage (I)
    std::vector<CaseOutcome> cases;
};

struct UnresolvedCase {
    MarkoffTuple tuple;
    long i = 0;
    std::optional<long> gap;
    std::optional<long> diagonal;
    std::string reason;
};

struct ResolutionReport {
    SequenceParams params;
    Coeffs base{};
    ResolveConfig config;
    GrowthEnvelope envelope;
    std::vector<PermutationRecord> permutations;
    std::vector<ValueTriple> solutions;  // base coefficient order, ascending
    std::vector<UnresolvedCase> unresolved;

    bool complete() const { return unresolved.empty(); }
};

/// Distinct orderings of the base's (a, b, c), d fixed, in ascending order.
std::vector<MarkoffTuple> permutations_of(const Coeffs& base);

ResolutionReport resolve(const SequenceParams& params, const Coeffs& base,
                         const ResolveConfig& config = {});

/// Exhaustive scan over 1 <= i, j, k <= n_max.
std::vector<ValueTriple> brute_force_oracle(const SequenceParams& params, const Coeffs& base,
                                            long n_max);
std::vector<Triple> brute_force_index_triples(const SequenceParams& params,
                                              const MarkoffTuple& tuple, long n_max);

/// Smallest index n >= 1 with R_n == x, or -1.
long first_index(const SequenceParams& params, const mpz_class& x);

std::string format_triple(const ValueTriple& t);
std::string format_solution_set(const std::vector<ValueTriple>& s);

}  // namespace markoff

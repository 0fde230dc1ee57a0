#include "markoff/pipeline.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace markoff {

const char* status_name(CaseOutcome::Status s) {
    switch (s) {
        case CaseOutcome::Status::Eliminated: return "eliminated";
        case CaseOutcome::Status::Solved: return "solved";
        case CaseOutcome::Status::Unresolved: return "unresolved";
    }
    return "?";
}

GrowthEnvelope resolve_envelope(const SequenceParams& params, const std::string& spec) {
    if (spec == "default" || spec == "hand") return envelope_preset(params, spec);

    std::vector<std::string> parts;
    std::istringstream is(spec);
    for (std::string p; std::getline(is, p, ',');) parts.push_back(p);
    if (parts.size() != 4) {
        throw std::invalid_argument("envelope must be default, hand or four comma-separated values");
    }
    GrowthEnvelope env;
    env.name = spec;
    mpq_class lower(parts[0]);
    mpq_class upper(parts[1]);
    lower.canonicalize();
    upper.canonicalize();
    if (sgn(lower) <= 0 || sgn(upper) <= 0) {
        throw std::invalid_argument("envelope coefficients must be positive");
    }
    env.lower_coeff = QuadElem::rational(lower, params.D);
    env.upper_coeff = QuadElem::rational(upper, params.D);
    env.lower_shift = std::stol(parts[2]);
    env.upper_shift = std::stol(parts[3]);
    if (!envelope_verify(params, env, 100)) {
        throw std::invalid_argument("envelope '" + spec + "' does not bound the sequence");
    }
    return env;
}

std::vector<MarkoffTuple> permutations_of(const Coeffs& base) {
    if (!is_admissible(base)) throw TupleNotInA(format_coeffs(base) + " is not admissible");
    std::vector<MarkoffTuple> out;
    std::array<int, 3> perm{0, 1, 2};
    do {
        MarkoffTuple t = permuted(base, perm);
        const bool dup = std::any_of(out.begin(), out.end(), [&t](const MarkoffTuple& o) {
            return o.coeffs() == t.coeffs();
        });
        if (!dup) out.push_back(t);
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(out.begin(), out.end(), [](const MarkoffTuple& x, const MarkoffTuple& y) {
        return x.coeffs() < y.coeffs();
    });
    return out;
}

long first_index(const SequenceParams& params, const mpz_class& x) {
    const auto idx = is_member(params, x);
    return idx.empty() ? -1 : idx.front();
}

std::string format_triple(const ValueTriple& t) {
    return "(" + t[0].get_str() + "," + t[1].get_str() + "," + t[2].get_str() + ")";
}

std::string format_solution_set(const std::vector<ValueTriple>& s) {
    std::string out = "{";
    for (size_t n = 0; n < s.size(); ++n) {
        if (n != 0) out += ",";
        out += format_triple(s[n]);
    }
    return out + "}";
}

namespace {

class Resolver {
public:
    Resolver(const SequenceParams& params, const ResolveConfig& config)
        : params_(params), config_(config), terms_(params) {
        long pre = 0;
        for (long m : config_.limits.moduli) pre = std::max(pre, mod_reduce(params_, m).preperiod);
        window_ = std::max(config_.limits.diagonal_window, pre - 1);
    }

    PermutationRecord run(const MarkoffTuple& t, const GrowthEnvelope& env) {
        rec_ = PermutationRecord{};
        rec_.tuple = t;
        rec_.bound = bound_report(params_, t, env);
        stage_one_.clear();
        quartic_done_.clear();

        for (long i = 1; i <= rec_.bound.index_bound; ++i) {
            if (!stage_one(i)) continue;
            rec_.surviving.push_back(i);
            std::vector<long> pending;
            for (long gap : feasible_gaps(params_, t, rec_.bound, i)) {
                if (!gap_by_congruence_or_shift(i, gap)) pending.push_back(gap);
            }
            if (!pending.empty()) fall_back_to_quartic(i, pending);
        }
        for (long offset : rec_.bound.zero_diagonals) diagonal(offset);
        return std::move(rec_);
    }

private:
    EliminationCertificate cert(long i, CertificateDetail detail) const {
        EliminationCertificate c;
        c.P = params_.P;
        c.Q = params_.Q;
        c.kind = params_.kind;
        c.tuple = rec_.tuple;
        c.i = i;
        c.detail = std::move(detail);
        return c;
    }

    // false when stage (I) eliminates every solution with smallest index i
    bool stage_one(long i) {
        if (auto it = stage_one_.find(i); it != stage_one_.end()) return it->second;
        const auto q = quad_solvable(rec_.tuple, terms_[static_cast<int>(i)], config_.limits);
        const bool survives = q.status != QuadSolvability::Status::Unsolvable;
        if (!survives) {
            CaseOutcome c;
            c.i = i;
            c.stage = "I";
            c.status = CaseOutcome::Status::Eliminated;
            c.certificate = cert(i, *q.certificate);
            rec_.cases.push_back(std::move(c));
        }
        stage_one_[i] = survives;
        return survives;
    }

    bool gap_by_congruence_or_shift(long i, long gap) {
        for (long m : config_.limits.moduli) {
            if (modular_eliminate(params_, rec_.tuple, i, gap, m)) {
                CaseOutcome c;
                c.i = i;
                c.gap = gap;
                c.stage = "II";
                c.status = CaseOutcome::Status::Eliminated;
                c.certificate = cert(i, ModularCert{gap, m});
                rec_.cases.push_back(std::move(c));
                return true;
            }
        }
        if (params_.unit_beta() != 0) {
            auto s = shift_reduce(params_, rec_.tuple, i, gap);
            CaseOutcome c;
            c.i = i;
            c.gap = gap;
            c.stage = "III";
            c.status = s.solutions.empty() ? CaseOutcome::Status::Eliminated
                                           : CaseOutcome::Status::Solved;
            c.solutions = std::move(s.solutions);
            c.certificate = cert(i, std::move(s.certificate));
            rec_.cases.push_back(std::move(c));
            return true;
        }
        return false;
    }

    void fall_back_to_quartic(long i, const std::vector<long>& pending) {
        if (quartic_done_.count(i) != 0) return;
        if (params_.Q != 1 && params_.Q != -1) {
            for (long gap : pending) {
                CaseOutcome c;
                c.i = i;
                c.gap = gap;
                c.stage = "II";
                c.status = CaseOutcome::Status::Unresolved;
                c.note = "no modulus eliminates this gap and no quartic model exists for Q != +-1";
                rec_.cases.push_back(std::move(c));
            }
            return;
        }
        quartic_done_.insert(i);
        const mpz_class r = terms_[static_cast<int>(i)];
        QuarticSearchCert qc;
        qc.x_max = config_.limits.x_max;
        qc.curves = build_quartic(params_, rec_.tuple, i);
        CaseOutcome c;
        c.i = i;
        c.stage = "IV";
        bool family = false;
        for (const auto& curve : qc.curves) {
            if (curve.every_x_is_point()) {
                // no finiteness from the curve: try sequence terms directly
                family = true;
                for (long k = i; k <= config_.limits.family_index_cap; ++k) {
                    if (curve.parity && k % 2 != *curve.parity) continue;
                    const mpz_class z = terms_[static_cast<int>(k)];
                    for (const auto& y : final_quadratic(rec_.tuple, r, z)) {
                        for (int j : terms_.indices_of(y)) {
                            c.solutions.push_back({{i, j, k}, {r, y, z}});
                        }
                    }
                }
                qc.points.emplace_back();
                continue;
            }
            auto pts = quartic_integral_points(curve, qc.x_max);
            for (const auto& p : pts) {
                for (int k : terms_.indices_of(p.x)) {
                    if (curve.parity && k % 2 != *curve.parity) continue;
                    for (const auto& y : final_quadratic(rec_.tuple, r, p.x)) {
                        for (int j : terms_.indices_of(y)) {
                            if (markoff_form(rec_.tuple, r, y, p.x) == 0) {
                                c.solutions.push_back({{i, j, k}, {r, y, p.x}});
                            }
                        }
                    }
                }
            }
            qc.points.push_back(std::move(pts));
        }
        if (family) {
            c.status = CaseOutcome::Status::Unresolved;
            c.note = "singular quartic, every X is a point; R_k tried for k <= " +
                     std::to_string(config_.limits.family_index_cap);
        } else {
            c.status = c.solutions.empty() ? CaseOutcome::Status::Eliminated
                                           : CaseOutcome::Status::Solved;
            c.note = "complete for R_k <= " + std::to_string(qc.x_max);
            c.certificate = cert(i, std::move(qc));
        }
        rec_.cases.push_back(std::move(c));
    }

    void diagonal(long offset) {
        std::vector<DiagonalOutcome> outs;
        for (long m : config_.limits.moduli) {
            outs.push_back(diagonal_eliminate(params_, rec_.tuple, offset, m, window_));
        }
        DiagonalCert dc;
        dc.offset = offset;
        dc.window = window_;
        for (const auto& o : outs) {
            if (o.region_killed) {
                dc.region_modulus = o.modulus;
                break;
            }
        }
        std::vector<long> open_rows;
        for (long i = 1; i <= window_; ++i) {
            long killer = 0;
            for (const auto& o : outs) {
                if (std::find(o.rows_killed.begin(), o.rows_killed.end(), i) !=
                    o.rows_killed.end()) {
                    killer = o.modulus;
                    break;
                }
            }
            if (killer != 0) {
                dc.rows.emplace_back(i, killer);
            } else {
                open_rows.push_back(i);
            }
        }

        if (dc.region_modulus == 0) {
            dc.region_signs =
                diagonal_dominance(params_, rec_.tuple, offset, std::max(window_ + 1, -offset));
        }

        CaseOutcome c;
        c.diagonal = offset;
        c.stage = "diagonal";
        c.solutions = outs.front().solutions;
        const bool region_ok = dc.region_closed();
        c.status = !region_ok ? CaseOutcome::Status::Unresolved
                   : c.solutions.empty() ? CaseOutcome::Status::Eliminated
                                         : CaseOutcome::Status::Solved;
        if (!region_ok) {
            c.note = "no modulus excludes the region i, j > " + std::to_string(window_);
        }
        c.certificate = cert(0, std::move(dc));
        rec_.cases.push_back(std::move(c));

        // a row i with j > window is the fixed gap i + offset
        for (long i : open_rows) {
            const long gap = i + offset;
            if (!stage_one(i)) continue;
            if (quartic_done_.count(i) != 0) continue;
            if (gap_by_congruence_or_shift(i, gap)) continue;
            fall_back_to_quartic(i, {gap});
        }
    }

    const SequenceParams& params_;
    const ResolveConfig& config_;
    TermTable terms_;
    long window_ = 0;
    PermutationRecord rec_;
    std::map<long, bool> stage_one_;
    std::set<long> quartic_done_;
};

}  // namespace

ResolutionReport resolve(const SequenceParams& params, const Coeffs& base,
                         const ResolveConfig& config) {
    ResolutionReport rep;
    rep.params = params;
    rep.base = base;
    rep.config = config;
    rep.envelope = resolve_envelope(params, config.envelope);

    const MarkoffTuple base_tuple = permuted(base, {0, 1, 2});
    std::set<ValueTriple> merged;
    Resolver resolver(params, rep.config);
    for (const auto& t : permutations_of(base)) {
        PermutationRecord rec = resolver.run(t, rep.envelope);
        for (const auto& c : rec.cases) {
            if (c.status == CaseOutcome::Status::Unresolved) {
                rep.unresolved.push_back({t, c.i, c.gap, c.diagonal, c.note});
            }
            for (const auto& s : c.solutions) {
                std::array<int, 3> order{0, 1, 2};
                do {
                    const ValueTriple v{s.value[order[0]], s.value[order[1]], s.value[order[2]]};
                    if (markoff_form(base_tuple, v[0], v[1], v[2]) == 0) merged.insert(v);
                } while (std::next_permutation(order.begin(), order.end()));
            }
        }
        rep.permutations.push_back(std::move(rec));
    }
    rep.solutions.assign(merged.begin(), merged.end());
    return rep;
}

std::vector<Triple> brute_force_index_triples(const SequenceParams& params,
                                              const MarkoffTuple& tuple, long n_max) {
    if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
    const auto t = terms(params, static_cast<int>(n_max));
    std::vector<Triple> out;
    for (long i = 1; i <= n_max; ++i) {
        for (long j = 1; j <= n_max; ++j) {
            for (long k = 1; k <= n_max; ++k) {
                const auto& x = t[static_cast<size_t>(i)];
                const auto& y = t[static_cast<size_t>(j)];
                const auto& z = t[static_cast<size_t>(k)];
                if (tuple.a * x * x + tuple.b * y * y + tuple.c * z * z == tuple.d * x * y * z) {
                    out.push_back({{i, j, k}, {x, y, z}});
                }
            }
        }
    }
    return out;
}

std::vector<ValueTriple> brute_force_oracle(const SequenceParams& params, const Coeffs& base,
                                            long n_max) {
    const MarkoffTuple tuple = permuted(base, {0, 1, 2});
    std::set<ValueTriple> vals;
    for (const auto& s : brute_force_index_triples(params, tuple, n_max)) vals.insert(s.value);
    return {vals.begin(), vals.end()};
}

}  // namespace markoff

#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "markoff/pipeline.hpp"

using namespace markoff;

namespace {

const std::vector<std::pair<long, long>> kGrid = {{6, 1}, {1, -2}, {2, -1},
                                                   {3, 1}, {3, 2}, {4, 3}};

std::vector<ValueTriple> vt(std::initializer_list<std::array<long, 3>> list) {
    std::vector<ValueTriple> out;
    for (const auto& t : list) out.push_back({t[0], t[1], t[2]});
    return out;
}

bool within_index(const SequenceParams& p, const ValueTriple& v, long n_max) {
    return std::all_of(v.begin(), v.end(), [&](const mpz_class& x) {
        const long k = first_index(p, x);
        return k >= 1 && k <= n_max;
    });
}

}  // namespace

TEST_CASE("resolve: worked examples") {
    const auto bal = validate_params(6, 1, Kind::U);
    const auto jac = validate_params(1, -2, Kind::U);

    const auto r1 = resolve(bal, {1, 2, 3, 6});
    CHECK(r1.solutions == vt({{1, 1, 1}}));
    CHECK(r1.complete());
    CHECK(r1.permutations.size() == 6);

    const auto r2 = resolve(jac, {1, 1, 2, 4});
    CHECK(r2.solutions ==
          vt({{1, 1, 1}, {1, 3, 1}, {1, 3, 5}, {3, 1, 1}, {3, 1, 5}, {3, 11, 1}, {11, 3, 1}}));
    CHECK(r2.complete());

    const auto r3 = resolve(bal, {1, 1, 2, 2});
    CHECK(r3.solutions.empty());
    CHECK(r3.complete());

    CHECK_THROWS_AS(resolve(bal, {1, 1, 1, 2}), TupleNotInA);
    CHECK(format_solution_set(r2.solutions) ==
          "{(1,1,1),(1,3,1),(1,3,5),(3,1,1),(3,1,5),(3,11,1),(11,3,1)}");
    CHECK(format_solution_set({}) == "{}");
}

TEST_CASE("resolve: envelopes") {
    const auto bal = validate_params(6, 1, Kind::U);
    ResolveConfig hand;
    hand.envelope = "hand";
    const auto r = resolve(bal, {1, 1, 1, 1}, hand);
    CHECK(r.envelope.name == "hand");
    CHECK(r.permutations[0].bound.index_bound == 5);
    CHECK(r.permutations[0].surviving == std::vector<long>{2});
    CHECK(r.solutions.empty());

    ResolveConfig explicit_env;
    explicit_env.envelope = "1,1,1,0";
    CHECK(resolve(bal, {1, 1, 1, 1}, explicit_env).permutations[0].bound.index_bound == 5);
    explicit_env.envelope = "10,1,0,0";
    CHECK_THROWS_AS(resolve(bal, {1, 1, 1, 1}, explicit_env), std::invalid_argument);
    explicit_env.envelope = "1,1";
    CHECK_THROWS_AS(resolve(bal, {1, 1, 1, 1}, explicit_env), std::invalid_argument);
}

TEST_CASE("oracle") {
    const auto jac = validate_params(1, -2, Kind::U);
    CHECK(brute_force_oracle(jac, {1, 1, 1, 1}, 10) == vt({{3, 3, 3}}));
    CHECK(brute_force_oracle(jac, {1, 2, 3, 6}, 12) == vt({{1, 1, 1}, {5, 1, 1}}));
    CHECK(brute_force_oracle(validate_params(6, 1, Kind::U), {1, 1, 1, 1}, 12).empty());
    CHECK_THROWS_AS(brute_force_oracle(jac, {1, 1, 1, 1}, 0), std::invalid_argument);
    CHECK(first_index(jac, 1) == 1);
    CHECK(first_index(jac, 2) == -1);
}

TEST_CASE("resolve agrees with the oracle and its certificates are sound") {
    for (const auto& [P, Q] : kGrid) {
        for (Kind kind : {Kind::U, Kind::V}) {
            const auto p = validate_params(P, Q, kind);
            for (const auto& base : kAdmissibleTuples) {
                CAPTURE(P);
                CAPTURE(Q);
                CAPTURE(kind_name(kind));
                CAPTURE(format_coeffs(base));
                const auto rep = resolve(p, base);
                const MarkoffTuple bt = permuted(base, {0, 1, 2});

                for (const auto& s : rep.solutions) {
                    CHECK(markoff_form(bt, s[0], s[1], s[2]) == 0);
                    for (const auto& x : s) CHECK(first_index(p, x) >= 1);
                }
                std::vector<ValueTriple> small;
                for (const auto& s : rep.solutions) {
                    if (within_index(p, s, 20)) small.push_back(s);
                }
                CHECK(small == brute_force_oracle(p, base, 20));

                for (const auto& perm : rep.permutations) {
                    const auto oracle = brute_force_index_triples(p, perm.tuple, 20);
                    for (const auto& c : perm.cases) {
                        if (!c.certificate) continue;
                        CHECK(verify_certificate(*c.certificate));
                        for (const auto& s : oracle) {
                            const auto [i, j, k] = s.index;
                            if (!(i <= j && j <= k)) continue;
                            CHECK_FALSE(certificate_covers(*c.certificate, i, j, k));
                        }
                    }
                }
                CHECK(rep.complete() == rep.unresolved.empty());
            }
        }
    }
}

TEST_CASE("infinite families stay unresolved") {
    // Pell numbers: (2, P_{2n-1}, P_{2n+1}) solves x^2 + y^2 + z^2 = 3xyz for every n
    const auto pell = validate_params(2, -1, Kind::U);
    const auto rep = resolve(pell, {1, 1, 1, 3});
    CHECK_FALSE(rep.complete());
    const ValueTriple far{2, 1136689, 6625109};
    CHECK(std::find(rep.solutions.begin(), rep.solutions.end(), far) != rep.solutions.end());
}

TEST_CASE("small search radius is reported, not hidden") {
    const auto bal = validate_params(6, 1, Kind::U);
    ResolveConfig tiny;
    tiny.limits.x_max = 10;
    const auto rep = resolve(bal, {1, 1, 1, 3}, tiny);
    CHECK(rep.solutions == vt({{1, 1, 1}}));
    for (const auto& perm : rep.permutations) {
        for (const auto& c : perm.cases) {
            if (c.stage == "IV") CHECK(c.note.find("10") != std::string::npos);
        }
    }
}

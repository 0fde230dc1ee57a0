#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "markoff/elimination.hpp"
#include "markoff/pipeline.hpp"

using namespace markoff;

namespace {

const std::vector<std::pair<long, long>> kGrid = {{6, 1}, {1, -2}, {2, -1},
                                                   {3, 1}, {3, 2}, {4, 3}};

bool is_square(const mpz_class& v) { return v >= 0 && mpz_perfect_square_p(v.get_mpz_t()) != 0; }

// (a2, a1, a0) proportional to (e2, e1, e0)
bool proportional(const ShiftClass& c, long e2, long e1, long e0) {
    return c.a2 * e1 == c.a1 * e2 && c.a2 * e0 == c.a0 * e2 && c.a1 * e0 == c.a0 * e1;
}

}  // namespace

TEST_CASE("stage I: binary quadratic solvability") {
    const auto t1111 = tuple_from_coeffs({1, 1, 1, 1});
    const auto q1 = quad_solvable(t1111, 1);
    CHECK(q1.status == QuadSolvability::Status::Unsolvable);
    REQUIRE(q1.certificate);
    CHECK(std::get<DefinitenessCert>(*q1.certificate).discriminant == -3);

    const auto q2 = quad_solvable(tuple_from_coeffs({1, 1, 1, 3}), 1);
    CHECK(q2.status == QuadSolvability::Status::Solvable);
    CHECK(q2.witness->first == 1);
    CHECK(q2.witness->second == 1);

    // r = B_2 = 6 survives; the witness found must really solve the form
    const auto q3 = quad_solvable(t1111, 6);
    CHECK(q3.status != QuadSolvability::Status::Unsolvable);
    CHECK(form_discriminant(t1111, 6) == 32);
    if (q3.witness) CHECK(markoff_form(t1111, 6, q3.witness->first, q3.witness->second) == 0);

    // N = 0: 1*1*... with r = 2 gives d^2 r^2 = 4bc
    const auto q4 = quad_solvable(t1111, 2);
    CHECK(q4.status == QuadSolvability::Status::Unsolvable);
}

TEST_CASE("stage I: no false elimination over small r") {
    for (const auto& base : kAdmissibleTuples) {
        for (const auto& t : permutations_of(base)) {
            for (long r = 1; r <= 40; ++r) {
                bool solvable = false;
                for (long y = 1; y <= 200 && !solvable; ++y) {
                    for (long z = 1; z <= 200 && !solvable; ++z) {
                        solvable = markoff_form(t, r, y, z) == 0;
                    }
                }
                if (solvable) {
                    CHECK(quad_solvable(t, r).status != QuadSolvability::Status::Unsolvable);
                }
            }
        }
    }
}

TEST_CASE("stage II: congruences") {
    const auto jac = validate_params(1, -2, Kind::U);
    const auto t = tuple_from_coeffs({1, 1, 1, 1});
    CHECK(modular_eliminate(jac, t, 3, 1, 3));
    CHECK(modular_eliminate(jac, t, 3, 3, 11));
    for (long m : SearchLimits{}.moduli) CHECK_FALSE(modular_eliminate(jac, t, 3, 0, m));
}

TEST_CASE("zero diagonals by residues") {
    const auto jac = validate_params(1, -2, Kind::U);

    const auto d1 = diagonal_eliminate(jac, tuple_from_coeffs({1, 1, 1, 3}), 0, 8, 2);
    CHECK(d1.window == 2);
    REQUIRE(d1.solutions.size() == 1);
    CHECK(d1.solutions[0].index == std::array<long, 3>{1, 1, 2});
    CHECK(d1.solutions[0].value == std::array<mpz_class, 3>{1, 1, 1});
    CHECK(d1.region_killed);

    // the row i = 2 is excluded modulo 7
    const auto d7 = diagonal_eliminate(jac, tuple_from_coeffs({1, 1, 1, 3}), 0, 7, 8);
    CHECK(std::find(d7.rows_killed.begin(), d7.rows_killed.end(), 2) != d7.rows_killed.end());

    const auto d2 = diagonal_eliminate(jac, tuple_from_coeffs({2, 3, 1, 6}), 1, 8, 2);
    CHECK(d2.region_killed);
    REQUIRE(d2.solutions.size() == 1);
    CHECK(d2.solutions[0].index == std::array<long, 3>{1, 2, 4});
    CHECK(d2.solutions[0].value == std::array<mpz_class, 3>{1, 1, 5});
    // all four parity classes of the large region sit at 4 mod 8
    const auto m8 = mod_reduce(jac, 8);
    const auto t2316 = tuple_from_coeffs({2, 3, 1, 6});
    for (long i = 3; i <= 4; ++i) {
        for (long j = 3; j <= 4; ++j) {
            mpz_class v = markoff_form(t2316, m8.at(i), m8.at(j), m8.at(i + j + 1)) % 8;
            if (v < 0) v += 8;
            CHECK(v == 4);
        }
    }

    CHECK_THROWS_AS(diagonal_eliminate(jac, tuple_from_coeffs({1, 1, 1, 3}), 1, 8, 2),
                    DiagonalUnsupported);
    CHECK_THROWS_AS(diagonal_eliminate(validate_params(6, 1, Kind::U), tuple_from_coeffs({1, 1, 1, 1}),
                                       0, 8, 2),
                    DiagonalUnsupported);
}

TEST_CASE("zero diagonals by growth") {
    // every certified sign must agree with the form evaluated on the diagonal
    for (const auto& [P, Q] : kGrid) {
        for (Kind kind : {Kind::U, Kind::V}) {
            const auto p = validate_params(P, Q, kind);
            TermTable tt(p);
            for (const auto& base : kAdmissibleTuples) {
                for (const auto& t : permutations_of(base)) {
                    for (long off : compute_B(p, t).zero_diagonals) {
                        const long lo = std::max(3L, -off);
                        const auto signs = diagonal_dominance(p, t, off, lo);
                        REQUIRE(signs.size() == 4);
                        for (long i = lo; i < lo + 8; ++i) {
                            for (long j = lo; j < lo + 8; ++j) {
                                const int s = signs[static_cast<size_t>(2 * (i % 2) + j % 2)];
                                if (s == 0) continue;
                                const mpz_class v = markoff_form(t, tt[static_cast<int>(i)], tt[static_cast<int>(j)],
                                                                 tt[static_cast<int>(i + j + off)]);
                                CHECK(sgn(v) == s);
                            }
                        }
                    }
                }
            }
        }
    }

    // the (4,3) diagonal that no modulus closes
    const auto p43 = validate_params(4, 3, Kind::U);
    const auto signs = diagonal_dominance(p43, tuple_from_coeffs({1, 2, 3, 6}), 0, 9);
    CHECK(signs == std::vector<int>{1, 1, 1, 1});
    CHECK(diagonal_dominance(validate_params(5, 2, Kind::V), tuple_from_coeffs({1, 1, 1, 1}), 0, 9)
              .empty());
}

TEST_CASE("stage III: shift reduction") {
    const auto jac = validate_params(1, -2, Kind::U);

    const auto s1 = shift_reduce(jac, tuple_from_coeffs({1, 1, 1, 3}), 1, 1);
    REQUIRE(s1.certificate.classes.size() == 2);
    // J_j^2 - (-1)^j J_j - 2 = 0
    CHECK(proportional(s1.certificate.classes[0], 1, -1, -2));
    CHECK(proportional(s1.certificate.classes[1], 1, 1, -2));
    CHECK(s1.certificate.classes[0].roots == std::vector<mpz_class>{2});
    CHECK(s1.certificate.classes[1].roots == std::vector<mpz_class>{1});
    std::set<std::array<mpz_class, 3>> v1;
    for (const auto& s : s1.solutions) v1.insert(s.value);
    CHECK(v1 == std::set<std::array<mpz_class, 3>>{{1, 1, 1}});

    const auto s2 = shift_reduce(jac, tuple_from_coeffs({1, 1, 2, 4}), 1, 1);
    // J_j^2 + 4(-1)^j J_j + 3 = 0
    CHECK(proportional(s2.certificate.classes[0], 1, 4, 3));
    CHECK(proportional(s2.certificate.classes[1], 1, -4, 3));
    CHECK(s2.certificate.classes[1].roots == std::vector<mpz_class>{1, 3});

    const auto s3 = shift_reduce(jac, tuple_from_coeffs({1, 1, 2, 4}), 3, 1);
    // 15 J_j^2 + 4(-1)^j J_j - 11 = 0
    CHECK(proportional(s3.certificate.classes[0], 15, 4, -11));
    CHECK(proportional(s3.certificate.classes[1], 15, -4, -11));
    CHECK(s3.certificate.classes[0].roots.empty());
    CHECK(s3.certificate.classes[1].roots == std::vector<mpz_class>{1});

    CHECK_THROWS_AS(shift_reduce(validate_params(6, 1, Kind::U), tuple_from_coeffs({1, 1, 1, 3}), 1, 1),
                    IdentityUnavailable);
}

TEST_CASE("stage III equals direct search on Jacobsthal") {
    const auto jac = validate_params(1, -2, Kind::U);
    for (const auto& base : kAdmissibleTuples) {
        for (const auto& t : permutations_of(base)) {
            const auto oracle = brute_force_index_triples(jac, t, 20);
            for (long i = 1; i <= 3; ++i) {
                for (long m = 0; m <= 3; ++m) {
                    std::set<std::array<long, 3>> want, got;
                    for (const auto& s : oracle) {
                        if (s.index[0] == i && s.index[2] - s.index[1] == m) want.insert(s.index);
                    }
                    for (const auto& s : shift_reduce(jac, t, i, m).solutions) {
                        if (s.index[2] <= 20) got.insert(s.index);
                    }
                    CAPTURE(t.to_string());
                    CAPTURE(i);
                    CAPTURE(m);
                    CHECK(got == want);
                }
            }
        }
    }
}

TEST_CASE("stage IV: quartic curves") {
    const auto bal = validate_params(6, 1, Kind::U);
    auto one = [&](const Coeffs& c, long i) {
        const auto curves = build_quartic(bal, tuple_from_coeffs(c), i);
        REQUIRE(curves.size() == 1);
        return curves[0];
    };
    const auto c1 = one({1, 1, 1, 3}, 1);
    CHECK(c1.to_string() == "40X^4 - 27X^2 - 4");
    CHECK(c1.f2 == 8);
    CHECK(c1.f0 == 1);
    CHECK(c1.g2 == 5);
    CHECK(c1.g0 == -4);
    CHECK(c1.square_factor == 4);
    CHECK(one({1, 1, 1, 1}, 2).to_string() == "256X^4 - 1120X^2 - 144");
    CHECK(one({1, 2, 3, 6}, 3).to_string() == "352608X^4 - 34324X^2 - 9800");

    CHECK(quartic_integral_points(c1, 10000) == std::vector<QuarticPoint>{{1, 3}});
    CHECK(quartic_integral_points(one({1, 1, 1, 1}, 2), 10000).empty());
    CHECK(quartic_integral_points(one({1, 2, 1, 4}, 1), 10000) == std::vector<QuarticPoint>{{1, 0}});

    // Q = -1: one curve per parity of the index of X
    const auto pell = build_quartic(validate_params(2, -1, Kind::U), tuple_from_coeffs({1, 1, 1, 3}), 1);
    REQUIRE(pell.size() == 2);
    CHECK(*pell[0].parity == 0);
    CHECK(*pell[1].parity == 1);

    CHECK_THROWS_AS(build_quartic(validate_params(2, -1, Kind::U), tuple_from_coeffs({1, 1, 1, 1}), 2),
                    DegenerateCurve);
    CHECK_THROWS_AS(build_quartic(validate_params(1, -2, Kind::U), tuple_from_coeffs({1, 1, 1, 1}), 1),
                    std::invalid_argument);
}

TEST_CASE("stage IV: normalization and consistency") {
    std::mt19937_64 rng(20261015);
    std::uniform_int_distribution<long> pick(-100000, 100000);
    for (const auto& [P, Q] : kGrid) {
        if (Q != 1 && Q != -1) continue;
        for (Kind kind : {Kind::U, Kind::V}) {
            const auto p = validate_params(P, Q, kind);
            const auto t_all = terms(p, 30);
            for (const auto& base : kAdmissibleTuples) {
                for (const auto& t : permutations_of(base)) {
                    for (long i = 1; i <= 4; ++i) {
                        std::vector<QuarticCurve> curves;
                        try {
                            curves = build_quartic(p, t, i);
                        } catch (const DegenerateCurve&) {
                            continue;
                        }
                        const mpz_class r = t_all[static_cast<size_t>(i)];
                        const mpz_class n = form_discriminant(t, r);
                        for (const auto& c : curves) {
                            for (int trial = 0; trial < 100; ++trial) {
                                const mpz_class x = pick(rng);
                                const mpz_class first = c.square_factor * (c.f2 * x * x + c.f0);
                                const mpz_class second = n * x * x - 4 * t.a * t.b * r * r;
                                REQUIRE(c.square_factor * c.eval(x) == first * second);
                            }
                            // the first factor is a square at every sequence term of its parity
                            for (long k = 1; k <= 30; ++k) {
                                if (c.parity && k % 2 != *c.parity) continue;
                                const mpz_class& x = t_all[static_cast<size_t>(k)];
                                CHECK(is_square(c.f2 * x * x + c.f0));
                            }
                        }
                        // an actual solution lands on a curve
                        for (const auto& s : brute_force_index_triples(p, t, 30)) {
                            if (s.index[0] != i) continue;
                            const long k = s.index[2];
                            bool on_curve = false;
                            for (const auto& c : curves) {
                                if (c.parity && k % 2 != *c.parity) continue;
                                on_curve = on_curve || is_square(c.eval(s.value[2]));
                            }
                            CHECK(on_curve);
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("final quadratic") {
    CHECK(final_quadratic(tuple_from_coeffs({1, 2, 3, 6}), 1, 1) == std::vector<mpz_class>{1, 2});
    CHECK(final_quadratic(tuple_from_coeffs({1, 1, 1, 3}), 1, 1) == std::vector<mpz_class>{1, 2});
    CHECK(final_quadratic(tuple_from_coeffs({1, 1, 1, 1}), 3, 3) == std::vector<mpz_class>{3, 6});
    CHECK(positive_integer_roots(1, 0, 1).empty());
    CHECK(positive_integer_roots(0, 2, -6) == std::vector<mpz_class>{3});
    CHECK_THROWS_AS(positive_integer_roots(0, 0, 0), std::domain_error);
}

TEST_CASE("certificates re-verify") {
    const auto jac = validate_params(1, -2, Kind::U);
    const auto t = tuple_from_coeffs({1, 1, 1, 1});
    EliminationCertificate c;
    c.P = 1;
    c.Q = -2;
    c.kind = Kind::U;
    c.tuple = t;
    c.i = 3;
    c.detail = ModularCert{1, 3};
    CHECK(verify_certificate(c));
    CHECK(certificate_covers(c, 3, 5, 6));
    CHECK_FALSE(certificate_covers(c, 3, 5, 5));
    c.detail = ModularCert{0, 3};
    CHECK_FALSE(verify_certificate(c));

    c.i = 1;
    c.detail = DefinitenessCert{1, -3};
    CHECK(verify_certificate(c));
    c.detail = DefinitenessCert{1, 5};
    CHECK_FALSE(verify_certificate(c));
    (void)jac;
}

TEST_CASE("norm form decision against brute force") {
    // smallest y >= 1 with 1 + N y^2 square
    for (long N = 2; N <= 60; ++N) {
        const auto u = pell_unit(N, 1000);
        const long s = std::lround(std::sqrt(static_cast<double>(N)));
        if (s * s == N) {
            CHECK_FALSE(u.has_value());
            continue;
        }
        REQUIRE(u.has_value());
        long y = 1;
        while (exact_sqrt(mpz_class(1 + N * y * y)) < 0) ++y;
        CHECK(u->second == y);
        CHECK(u->first == exact_sqrt(mpz_class(1 + N * y * y)));
    }
    CHECK(pell_unit(61, 1000)->first == mpz_class("1766319049"));

    for (const auto& base : kAdmissibleTuples) {
        for (const auto& perm : std::vector<std::array<int, 3>>{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}) {
            const MarkoffTuple t = permuted(base, perm);
            for (long r = 1; r <= 40; ++r) {
                CAPTURE(format_coeffs(base));
                CAPTURE(r);
                const auto q = norm_form_decide(t, r);
                REQUIRE(q.status != QuadSolvability::Status::Unknown);
                bool brute = false;
                for (long y = 1; y <= 400 && !brute; ++y) {
                    for (long z = 1; z <= 400 && !brute; ++z) {
                        brute = markoff_form(t, r, y, z) == 0;
                    }
                }
                if (brute) CHECK(q.status == QuadSolvability::Status::Solvable);
                if (q.status == QuadSolvability::Status::Solvable) {
                    REQUIRE(q.witness);
                    CHECK(q.witness->first > 0);
                    CHECK(q.witness->second > 0);
                    CHECK(markoff_form(t, r, q.witness->first, q.witness->second) == 0);
                }
                // quad_solvable only adds shortcuts in front of the same decision
                const auto fast = quad_solvable(t, r);
                CHECK((fast.status == QuadSolvability::Status::Solvable) ==
                      (q.status == QuadSolvability::Status::Solvable));
            }
        }
    }

    // x = 204 = U_4 for P = 6, Q = 1 in 1 + y^2 + z^2 = yz x
    const auto q = norm_form_decide(permuted({1, 1, 1, 1}, {0, 1, 2}), 204);
    CHECK(q.status == QuadSolvability::Status::Unsolvable);
}

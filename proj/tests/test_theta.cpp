#include <doctest.h>

#include <random>
#include <stdexcept>

#include "floorform/coset.hpp"
#include "floorform/form.hpp"
#include "floorform/planner.hpp"
#include "floorform/theta.hpp"

using namespace floorform;

namespace {

Int md(Int a, Int m) { return ((a % m) + m) % m; }

// Count (X, Y, Z) with X = alpha (mod a) etc. and weighted squares summing to l.
Int naive_constrained_count(const std::array<Int, 3>& w, const std::array<Int, 3>& d, const std::array<Int, 3>& r, Int l)
{
    Int count = 0;
    for (Int X = -200; X <= 200; ++X) {
        if (md(X - r[0], d[0]) != 0 || w[0] * X * X > l) continue;
        for (Int Y = -200; Y <= 200; ++Y) {
            if (md(Y - r[1], d[1]) != 0 || w[0] * X * X + w[1] * Y * Y > l) continue;
            for (Int Z = -200; Z <= 200; ++Z) {
                if (md(Z - r[2], d[2]) == 0 && w[0] * X * X + w[1] * Y * Y + w[2] * Z * Z == l) ++count;
            }
        }
    }
    return count;
}

std::vector<Int> sqfree_divisors(Int n)
{
    std::vector<Int> out;
    for (Int t = 1; t <= n; ++t) {
        if (n % t != 0) continue;
        bool sf = true;
        for (Int p = 2; p * p <= t; ++p) {
            if (t % (p * p) == 0) sf = false;
        }
        if (sf) out.push_back(t);
    }
    return out;
}

}  // namespace

TEST_CASE("coset_theta_coefficients examples")
{
    CHECK(theta::coset_theta_coefficients(coset::diagonal_lattice({1, 1, 1}), 1).coefficients == std::vector<Int>{1, 6});

    const FloorForm m3(3, 3, 3);
    const auto r = coset::make_residues(m3, 2, 2, 0);
    const auto c = coset::build_coset(m3, r, CosetScale::half_integral);
    const auto series = theta::coset_theta_coefficients(c, 8);
    CHECK(series.coefficients[8] == naive_constrained_count({1, 1, 1}, {3, 3, 3}, {2, 2, 0}, 8));
    CHECK(series.coefficients[8] > 0);

    CHECK(theta::coset_theta_coefficients(c, 0).coefficients == std::vector<Int>{0});
    CHECK(theta::coset_theta_coefficients(coset::diagonal_lattice({2, 3, 5}), 0).coefficients == std::vector<Int>{1});
    CHECK(theta::coset_theta_coefficients(coset::build_coset(m3, coset::make_residues(m3, 0, 0, 0)), 0)
              .coefficients == std::vector<Int>{1});
    CHECK_THROWS_AS(theta::coset_theta_coefficients(c, -1), std::invalid_argument);
}

TEST_CASE("coset theta is r_3 for the unit lattice")
{
    const auto s = theta::coset_theta_coefficients(coset::diagonal_lattice({1, 1, 1}), 200);
    for (Int n = 0; n <= 200; ++n) {
        REQUIRE(s.coefficients[static_cast<std::size_t>(n)] ==
                naive_constrained_count({1, 1, 1}, {1, 1, 1}, {0, 0, 0}, n));
        REQUIRE(s.coefficients[static_cast<std::size_t>(n)] >= 0);
    }
}

TEST_CASE("theta/count duality on 50 random witnesses")
{
    std::mt19937_64 rng(1729);
    const std::vector<std::array<Int, 3>> forms{{3, 3, 3}, {5, 7, 9}, {6, 5, 7}, {4, 4, 4}, {2, 3, 5}};
    int done = 0;
    while (done < 50) {
        const auto& d = forms[rng() % forms.size()];
        const FloorForm f(d[0], d[1], d[2]);
        const Int n = static_cast<Int>(rng() % 60);
        const auto w = form::search_representation(f, n);
        if (!w) continue;
        const auto t = coset::floor_to_coset(f, n, *w);
        if (t.l > 2000) continue;
        for (const auto scale : {CosetScale::half_integral, CosetScale::delta}) {
            const auto c = coset::build_coset(f, t.residues, scale);
            const auto series = theta::coset_theta_coefficients(c, t.l);
            INFO(f.to_string(), " n=", n, " l=", t.l);
            REQUIRE(series.coefficients[static_cast<std::size_t>(t.l)] ==
                    naive_constrained_count(c.weight, c.modulus, c.residue, t.l));
        }
        ++done;
    }
}

TEST_CASE("unary_theta_coefficients examples and errors")
{
    const auto u = theta::unary_theta_coefficients(6, 1, 1, 25);
    CHECK(u.coefficients[25] == -5);
    CHECK(u.coefficients[1] == 1);
    CHECK(u.coefficients[2] == 0);
    CHECK_THROWS_AS(theta::unary_theta_coefficients(6, 4, 0, 10), std::invalid_argument);
    CHECK_THROWS_AS(theta::unary_theta_coefficients(12, 4, 0, 10), std::invalid_argument);
    CHECK_THROWS_AS(theta::unary_theta_coefficients(6, 5, 0, 10), std::invalid_argument);
    CHECK_THROWS_AS(theta::unary_theta_coefficients(6, 2, 3, 10), std::invalid_argument);
}

TEST_CASE("unary theta support and values, N in {6, 10, 30}")
{
    for (const Int N : {6, 10, 30}) {
        for (const Int t : sqfree_divisors(N)) {
            for (Int h = 0; h < N / t; ++h) {
                const auto u = theta::unary_theta_coefficients(N, t, h, 1000);
                std::vector<Int> expected(1001, 0);
                for (Int r = -40; r <= 40; ++r) {
                    if (md(r - h, N / t) == 0 && t * r * r <= 1000) expected[static_cast<std::size_t>(t * r * r)] += r;
                }
                REQUIRE(u.coefficients == expected);
                for (Int e = 0; e <= 1000; ++e) {
                    if (u.coefficients[static_cast<std::size_t>(e)] == 0) continue;
                    Int q = e / t, s = 0;
                    while (s * s < q) ++s;
                    REQUIRE(e % t == 0);
                    REQUIRE(s * s == q);
                }
            }
        }
    }
}

TEST_CASE("squarefree divisors and square classes")
{
    CHECK(theta::squarefree_divisors(20) == std::vector<Int>{1, 2, 5, 10});
    CHECK(theta::squarefree_divisors(1) == std::vector<Int>{1});
    CHECK(theta::square_class_divisors(18, 6) == std::vector<Int>{2});
    CHECK(theta::square_class_divisors(41, 10).empty());
    CHECK(theta::obstruction_base(FloorForm(10, 10, 10)) == 10);
    CHECK(theta::obstruction_base(FloorForm(5, 5, 5)) == 10);
    CHECK(theta::obstruction_base(FloorForm(5, 13, 21)) == 2 * 5 * 13 * 21);
}

TEST_CASE("obstruction_sets examples")
{
    const FloorForm m5(5, 5, 5);
    CHECK(theta::obstruction_sets(m5, 1, planner::plan_residues_m(5, 1).residues) == std::vector<Int>{1});
    const FloorForm m10(10, 10, 10);
    CHECK(theta::obstruction_sets(m10, 4, planner::plan_residues_m(10, 4).residues).empty());
    const FloorForm f(5, 13, 21);
    CHECK(theta::obstruction_sets(f, 5, planner::plan_residues_abc(5, 13, 21, 5).residues).empty());
}

TEST_CASE("obstruction_scan examples")
{
    // Every m = 10 entry is a square l = mn + 1 and is resolved by the escape.
    const auto r10 = theta::obstruction_scan(FloorForm(10, 10, 10), 0, 500, PlannerMode::m_form);
    CHECK(r10.unresolved == 0);
    for (const auto& e : r10.entries) {
        CHECK(e.ts == std::vector<Int>{1});
        CHECK(e.escape);
    }

    const auto r5 = theta::obstruction_scan(FloorForm(5, 5, 5), 0, 500, PlannerMode::m_form);
    CHECK_FALSE(r5.entries.empty());
    CHECK(r5.unresolved == 0);
    for (const auto& e : r5.entries) {
        CHECK(e.ts == std::vector<Int>{1});
        CHECK(e.escape);
    }

    const auto r657 = theta::obstruction_scan(FloorForm(6, 5, 7), 0, 500, PlannerMode::abc_form);
    CHECK(r657.entries.empty());
    CHECK(r657.mode == PlannerMode::abc_form);

    CHECK_THROWS_AS(theta::obstruction_scan(FloorForm(5, 7, 9), 0, 10, PlannerMode::m_form), std::invalid_argument);
    CHECK_THROWS_AS(theta::obstruction_scan(FloorForm(5, 10, 9), 0, 10, PlannerMode::abc_form), std::invalid_argument);
    CHECK_THROWS_AS(theta::obstruction_scan(FloorForm(5, 5, 5), 10, 0, PlannerMode::m_form), std::invalid_argument);
}

TEST_CASE("empty obstruction sets mean vanishing unary coefficients")
{
    struct Case {
        FloorForm form;
        Int n_hi;
    };
    for (const auto& [f, n_hi] : {Case{FloorForm(10, 10, 10), 500}, Case{FloorForm(6, 5, 7), 200}}) {
        std::vector<std::pair<Int, std::vector<Int>>> rows;  // (l, ts)
        Int l_max = 0;
        Int N = 0;
        for (Int n = 0; n <= n_hi; ++n) {
            const auto plan = planner::plan(f, n);
            const auto ts = theta::obstruction_sets(plan.plan_form, n, plan.residues);
            N = coset::build_coset(plan.plan_form, plan.residues).N;
            rows.emplace_back(plan.l, ts);
            l_max = std::max(l_max, plan.l);
        }
        for (const Int t : theta::squarefree_divisors(N)) {
            for (Int h = 0; h < N / t; ++h) {
                const auto u = theta::unary_theta_coefficients(N, t, h, l_max);
                for (const auto& [l, ts] : rows) {
                    if (!ts.empty()) continue;
                    REQUIRE(u.coefficients[static_cast<std::size_t>(l)] == 0);
                }
            }
        }
    }
}

#include <doctest.h>

#include <random>
#include <stdexcept>

#include "floorform/coset.hpp"
#include "floorform/form.hpp"

using namespace floorform;

namespace {

Int md(Int a, Int m) { return ((a % m) + m) % m; }

// Independent enumeration of X = alpha (mod a), Y, Z with sum of weighted squares l.
bool naive_coset(const std::array<Int, 3>& w, const std::array<Int, 3>& d, const std::array<Int, 3>& r, Int l)
{
    for (Int X = -1000; X <= 1000; ++X) {
        if (md(X - r[0], d[0]) != 0 || w[0] * X * X > l) continue;
        for (Int Y = -1000; Y <= 1000; ++Y) {
            if (md(Y - r[1], d[1]) != 0 || w[0] * X * X + w[1] * Y * Y > l) continue;
            for (Int Z = -1000; Z <= 1000; ++Z) {
                if (md(Z - r[2], d[2]) != 0) continue;
                if (w[0] * X * X + w[1] * Y * Y + w[2] * Z * Z == l) return true;
            }
        }
    }
    return false;
}

}  // namespace

TEST_CASE("delta_of examples")
{
    CHECK(coset::delta_of(FloorForm(5, 7, 9)) == 1);
    CHECK(coset::delta_of(FloorForm(10, 10, 10)) == 0);
    CHECK(coset::delta_of(FloorForm(6, 10, 14)) == 0);
    CHECK(coset::delta_of(FloorForm(6, 10, 15)) == 1);
}

TEST_CASE("residue_square examples")
{
    CHECK(coset::residue_square(7, 10) == 9);
    CHECK(coset::residue_square(5, 10) == 5);
    CHECK(coset::residue_square(2, 5) == 4);
    CHECK(coset::residue_square(-3, 5) == 4);
    CHECK_THROWS_AS(coset::residue_square(1, 0), std::invalid_argument);
}

TEST_CASE("l_value examples")
{
    const FloorForm m10(10, 10, 10);
    CHECK(coset::l_value(m10, 4, coset::make_residues(m10, 1, 0, 0)) == 41);
    const auto r = coset::make_residues(m10, 1, 0, 4);
    CHECK(r.c0 == 6);
    CHECK(coset::l_value(m10, 1, r) == 17);
    const FloorForm f(6, 5, 7);
    CHECK(coset::l_value(f, 0, coset::make_residues(f, 1, 1, 1)) == 107);
    CHECK(coset::convention_of(m10) == LConvention::m_form);
    CHECK(coset::convention_of(f) == LConvention::general);
    // the general convention on a uniform form carries the m^2 factor
    const auto g = coset::l_value(m10, 4, coset::make_residues(m10, 1, 0, 0), LConvention::general);
    CHECK(g == 100 * 41);
    CHECK_THROWS_AS(coset::l_value(f, 0, ResidueTriple{1, 1, 1, 0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(coset::l_value(f, 0, coset::make_residues(f, 0, 0, 0), LConvention::m_form), std::invalid_argument);
    CHECK_THROWS_AS(coset::l_value(f, -1, coset::make_residues(f, 0, 0, 0)), std::invalid_argument);
}

TEST_CASE("build_coset examples")
{
    const FloorForm f(5, 7, 9);
    const auto c = coset::build_coset(f, coset::make_residues(f, 1, 1, 1));
    CHECK(c.delta == 1);
    CHECK(c.N == 630);
    CHECK(c.A == std::array<Int, 3>{10, 14, 18});
    CHECK(c.h == std::array<Int, 3>{63, 45, 35});
    CHECK(c.modulus == std::array<Int, 3>{10, 14, 18});

    const FloorForm m10(10, 10, 10);
    const auto cm = coset::build_coset(m10, coset::make_residues(m10, 3, 1, 4));
    CHECK(cm.delta == 0);
    CHECK(cm.N == 10);
    CHECK(cm.A == std::array<Int, 3>{10, 10, 10});
    CHECK(cm.h == std::array<Int, 3>{3, 1, 4});

    const FloorForm one(1, 1, 1);
    const auto unit = coset::build_coset(one, coset::make_residues(one, 0, 0, 0), CosetScale::half_integral);
    CHECK(unit.gram_diagonal == std::array<Int, 3>{1, 1, 1});
    for (const auto& s : unit.shift) CHECK(s == Rational{0, 1});

    const auto half = coset::build_coset(f, coset::make_residues(f, 1, 1, 1), CosetScale::half_integral);
    CHECK(half.modulus == std::array<Int, 3>{5, 7, 9});
    CHECK(half.N == 630);
}

TEST_CASE("build_coset: A h = 0 mod N on random inputs")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Int> den(1, 40);
    for (int i = 0; i < 100; ++i) {
        const Int a = den(rng);
        const bool uniform = i % 4 == 0;
        const FloorForm f = uniform ? FloorForm(a, a, a) : FloorForm(a, den(rng), den(rng));
        std::uniform_int_distribution<Int> res(0, 200);
        const auto r = coset::make_residues(f, res(rng) % f.a(), res(rng) % f.b(), res(rng) % f.c());
        const auto c = coset::build_coset(f, r);
        for (std::size_t k = 0; k < 3; ++k) REQUIRE(md(c.A[k] * c.h[k], c.N) == 0);
        REQUIRE(c.N == (coset::delta_of(f) == 1 ? 2 : 1) * (uniform ? a : f.a() * f.b() * f.c()));
    }
}

TEST_CASE("floor_to_coset examples")
{
    const FloorForm m3(3, 3, 3);
    const auto t = coset::floor_to_coset(m3, 2, {2, 2, 0});
    CHECK(t.residues == ResidueTriple{2, 2, 0, 1, 1, 0});
    CHECK(t.l == 8);
    CHECK(4 + 4 + 0 == t.l);

    const FloorForm one(1, 1, 1);
    CHECK(coset::floor_to_coset(one, 3, {1, 1, 1}).l == 3);

    const FloorForm f(5, 7, 9);
    const auto u = coset::floor_to_coset(f, 1, {3, 0, 0});
    CHECK(u.residues.alpha == 3);
    CHECK(u.residues.a0 == 4);
    CHECK(u.l == 567);
    CHECK(63 * 9 == u.l);
    CHECK_THROWS_AS(coset::floor_to_coset(f, 2, {3, 0, 0}), std::invalid_argument);
}

TEST_CASE("floor_to_coset identity bc x^2 + ca y^2 + ab z^2 = l")
{
    for (const auto& d : std::vector<std::array<Int, 3>>{{5, 7, 9}, {6, 5, 7}, {2, 3, 11}, {4, 4, 4}}) {
        const FloorForm f(d[0], d[1], d[2]);
        for (Int n = 0; n <= 300; ++n) {
            const auto w = form::search_representation(f, n);
            if (!w) continue;
            const auto t = coset::floor_to_coset(f, n, *w);
            if (f.is_uniform()) {
                REQUIRE(w->x * w->x + w->y * w->y + w->z * w->z == t.l);
            } else {
                REQUIRE(d[1] * d[2] * w->x * w->x + d[2] * d[0] * w->y * w->y + d[0] * d[1] * w->z * w->z == t.l);
            }
            const auto half = coset::build_coset(f, t.residues, CosetScale::half_integral);
            REQUIRE(half.evaluate({(w->x - t.residues.alpha) / d[0], (w->y - t.residues.beta) / d[1],
                                   (w->z - t.residues.gamma) / d[2]}) == t.l);
        }
    }
}

TEST_CASE("coset_represents_global examples")
{
    CHECK_FALSE(coset::coset_represents_global(coset::diagonal_lattice({1, 1, 1}), 7).has_value());
    CHECK_FALSE(coset::coset_represents_global(coset::diagonal_lattice({2, 3, 3}), 1).has_value());
    const FloorForm m3(3, 3, 3);
    const auto t = coset::floor_to_coset(m3, 2, {2, 2, 0});
    const auto c = coset::build_coset(m3, t.residues, CosetScale::half_integral);
    const auto w = coset::coset_represents_global(c, 8);
    REQUIRE(w.has_value());
    CHECK(c.evaluate(w->lattice) == 8);
    CHECK_THROWS_AS(coset::coset_represents_global(c, 8, 0), std::invalid_argument);
}

TEST_CASE("coset_represents_global agrees with a naive enumeration")
{
    std::mt19937_64 rng(11);
    for (const auto& d : std::vector<std::array<Int, 3>>{{3, 3, 3}, {5, 7, 9}, {6, 5, 7}}) {
        const FloorForm f(d[0], d[1], d[2]);
        for (int i = 0; i < 40; ++i) {
            const auto r = coset::make_residues(f, static_cast<Int>(rng() % 9) % d[0], static_cast<Int>(rng() % 9) % d[1],
                                                static_cast<Int>(rng() % 9) % d[2]);
            for (const auto scale : {CosetScale::delta, CosetScale::half_integral}) {
                const auto c = coset::build_coset(f, r, scale);
                const Int l = static_cast<Int>(rng() % 3000);
                const auto w = coset::coset_represents_global(c, l);
                REQUIRE(w.has_value() == naive_coset(c.weight, c.modulus, c.residue, l));
                if (w) REQUIRE(c.evaluate(w->lattice) == l);
            }
        }
    }
}

TEST_CASE("round trip: floor representability matches coset representability")
{
    for (const auto& d : std::vector<std::array<Int, 3>>{{3, 3, 3}, {5, 7, 9}, {6, 5, 7}, {10, 10, 10}, {1, 1, 1}, {2, 2, 2}, {2, 3, 3}}) {
        const FloorForm f(d[0], d[1], d[2]);
        for (Int n = 0; n <= 200; ++n) {
            bool coset_side = false;
            for (Int al = 0; al < d[0] && !coset_side; ++al) {
                for (Int be = 0; be < d[1] && !coset_side; ++be) {
                    for (Int ga = 0; ga < d[2] && !coset_side; ++ga) {
                        const auto r = coset::make_residues(f, al, be, ga);
                        const auto c = coset::build_coset(f, r, CosetScale::half_integral);
                        coset_side = coset::coset_represents_global(c, coset::l_value(f, n, r)).has_value();
                    }
                }
            }
            INFO(f.to_string(), " n=", n);
            REQUIRE(coset_side == form::search_representation(f, n).has_value());
        }
    }
}

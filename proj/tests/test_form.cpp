#include <doctest.h>

#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "floorform/form.hpp"
#include "floorform/version.hpp"

using namespace floorform;

namespace {

Int fl(Int x, Int a) { return x * x / a; }

// Naive triple loop; witness minimal in (z, y, x) order.
std::optional<Representation> naive_search(Int a, Int b, Int c, Int n)
{
    for (Int z = 0; z * z < c * (n + 1); ++z) {
        for (Int y = 0; y * y < b * (n + 1); ++y) {
            for (Int x = 0; x * x < a * (n + 1); ++x) {
                if (fl(x, a) + fl(y, b) + fl(z, c) == n) return Representation{x, y, z};
            }
        }
    }
    return std::nullopt;
}

Int naive_count(Int a, Int b, Int c, Int n)
{
    Int count = 0;
    auto bound = [n](Int d) {
        Int r = 0;
        while ((r + 1) * (r + 1) < d * (n + 1)) ++r;
        return r;
    };
    for (Int x = -bound(a); x <= bound(a); ++x) {
        for (Int y = -bound(b); y <= bound(b); ++y) {
            for (Int z = -bound(c); z <= bound(c); ++z) {
                if (fl(x, a) + fl(y, b) + fl(z, c) == n) ++count;
            }
        }
    }
    return count;
}

bool legendre_excluded(Int n)
{
    if (n == 0) return false;
    while (n % 4 == 0) n /= 4;
    return n % 8 == 7;
}

}  // namespace

TEST_CASE("FloorForm construction")
{
    CHECK_THROWS_AS(FloorForm(0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(FloorForm(1, -2, 1), std::invalid_argument);
    const FloorForm f(5, 7, 9);
    CHECK(f.to_string() == "5,7,9");
    CHECK_FALSE(f.is_uniform());
    CHECK(FloorForm(4, 4, 4).is_uniform());
}

TEST_CASE("eval_form examples")
{
    CHECK(form::eval_form(FloorForm(3, 3, 3), 2, 2, 0) == 2);
    CHECK(form::eval_form(FloorForm(1, 1, 1), 1, 1, 1) == 3);
    CHECK(form::eval_form(FloorForm(5, 7, 9), 3, 0, 0) == 1);
    CHECK(form::eval_form(FloorForm(5, 7, 9), -3, 0, 0) == 1);
}

TEST_CASE("search_representation examples")
{
    CHECK_FALSE(form::search_representation(FloorForm(1, 1, 1), 7).has_value());
    CHECK(form::search_representation(FloorForm(3, 3, 3), 0) == Representation{0, 0, 0});
    CHECK_FALSE(form::search_representation(FloorForm(2, 2, 2), 1).has_value());
    CHECK(form::search_representation(FloorForm(3, 3, 3), 2) == Representation{2, 2, 0});
    CHECK_FALSE(form::search_representation(FloorForm(1, 1, 1), -1).has_value());
}

TEST_CASE("search_representation matches the naive search")
{
    const std::vector<std::array<Int, 3>> forms{{1, 1, 1}, {2, 2, 2}, {3, 3, 3}, {5, 7, 9}, {6, 5, 7}, {2, 3, 3}, {10, 1, 4}};
    for (const auto& d : forms) {
        const FloorForm f(d[0], d[1], d[2]);
        const form::Searcher searcher(f, 150);
        for (Int n = 0; n <= 150; ++n) {
            const auto expected = naive_search(d[0], d[1], d[2], n);
            INFO(f.to_string(), " n=", n);
            REQUIRE(form::search_representation(f, n) == expected);
            REQUIRE(searcher.find(n) == expected);
        }
        CHECK_THROWS_AS(searcher.find(151), std::out_of_range);
    }
}

TEST_CASE("representation_count")
{
    CHECK(form::representation_count(FloorForm(1, 1, 1), 0) == 1);
    CHECK(form::representation_count(FloorForm(1, 1, 1), 1) == 6);
    // (3,3,3), n = 2: two coordinates at +-2, the third in {-1, 0, 1}.
    CHECK(form::representation_count(FloorForm(3, 3, 3), 2) == naive_count(3, 3, 3, 2));
    CHECK(form::representation_count(FloorForm(3, 3, 3), 2) == 36);
    for (const auto& d : std::vector<std::array<Int, 3>>{{1, 1, 1}, {3, 3, 3}, {5, 7, 9}, {2, 2, 2}}) {
        const FloorForm f(d[0], d[1], d[2]);
        for (Int n = 0; n <= 40; ++n) {
            const Int count = form::representation_count(f, n);
            REQUIRE(count == naive_count(d[0], d[1], d[2], n));
            if (!form::search_representation(f, n)) REQUIRE(count == 0);
        }
    }
}

TEST_CASE("scan_range examples")
{
    CHECK(form::scan_range(FloorForm(3, 3, 3), 0, 1000).exceptions.empty());
    CHECK(form::scan_range(FloorForm(2, 2, 2), 0, 20).exceptions ==
          std::vector<Int>{1, 3, 5, 7, 9, 11, 13, 15, 17, 19});
    const auto r = form::scan_range(FloorForm(1, 1, 1), 0, 30);
    CHECK(r.exceptions == std::vector<Int>{7, 15, 23, 28});
    CHECK(r.tool_version == kToolVersion);
    CHECK(r.n_lo == 0);
    CHECK(r.n_hi == 30);
}

TEST_CASE("scan_range errors")
{
    CHECK_THROWS_AS(form::scan_range(FloorForm(1, 1, 1), 5, 4), std::invalid_argument);
    CHECK_THROWS_AS(form::scan_range(FloorForm(1, 1, 1), -1, 4), std::invalid_argument);
    ScanOptions small;
    small.cap = 100;
    CHECK_THROWS_AS(form::scan_range(FloorForm(1, 1, 1), 0, 101, small), std::invalid_argument);
    CHECK_NOTHROW(form::scan_range(FloorForm(1, 1, 1), 0, 100, small));
}

TEST_CASE("three-square oracle on [0, 10^4]")
{
    std::vector<Int> expected;
    for (Int n = 0; n <= 10000; ++n) {
        if (legendre_excluded(n)) expected.push_back(n);
    }
    CHECK(form::scan_range(FloorForm(1, 1, 1), 0, 10000).exceptions == expected);
}

TEST_CASE("scan determinism across workers and chunk sizes")
{
    const std::vector<std::array<Int, 3>> forms{{1, 1, 1}, {2, 2, 2}, {5, 7, 9}, {1, 2, 5}};
    for (const auto& d : forms) {
        const FloorForm f(d[0], d[1], d[2]);
        const auto base = form::scan_range(f, 17, 3000).exceptions;
        for (const unsigned w : {2u, 3u, 8u}) {
            for (const Int chunk : {Int{1}, Int{37}, Int{4096}}) {
                ScanOptions opts;
                opts.workers = w;
                opts.chunk = chunk;
                REQUIRE(form::scan_range(f, 17, 3000, opts).exceptions == base);
            }
        }
    }
}

TEST_CASE("squarefree_reduce examples and floor scaling")
{
    const auto r1 = form::squarefree_reduce(FloorForm(12, 27, 75));
    CHECK(r1.reduced == FloorForm(3, 3, 3));
    CHECK(r1.multipliers == std::array<Int, 3>{2, 3, 5});
    const auto r2 = form::squarefree_reduce(FloorForm(1, 1, 1));
    CHECK(r2.reduced == FloorForm(1, 1, 1));
    CHECK(r2.multipliers == std::array<Int, 3>{1, 1, 1});
    const auto r3 = form::squarefree_reduce(FloorForm(8, 18, 50));
    CHECK(r3.reduced == FloorForm(2, 2, 2));
    CHECK(r3.multipliers == std::array<Int, 3>{2, 3, 5});

    for (Int a = 1; a <= 200; ++a) {
        Int s = a, t = 1;
        for (Int d = 2; d * d <= s; ++d) {
            while (s % (d * d) == 0) s /= d * d, t *= d;
        }
        const auto red = form::squarefree_reduce(FloorForm(a, 1, 1));
        REQUIRE(red.reduced.a() == s);
        REQUIRE(red.multipliers[0] == t);
        for (Int x = -50; x <= 50; ++x) REQUIRE(fl(t * x, a) == fl(x, s));
    }
}

TEST_CASE("lift_reduced maps reduced witnesses to the original form")
{
    const FloorForm f(12, 27, 75);
    const auto red = form::squarefree_reduce(f);
    for (Int n = 0; n <= 500; ++n) {
        const auto w = form::search_representation(red.reduced, n);
        REQUIRE(w.has_value());
        REQUIRE(form::eval_form(f, form::lift_reduced(red, *w)) == n);
    }
}

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <array>
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "floorform/coset.hpp"
#include "floorform/form.hpp"
#include "floorform/padic.hpp"
#include "floorform/planner.hpp"
#include "floorform/theta.hpp"

using namespace floorform;

namespace {

using Clock = std::chrono::steady_clock;

// Pinned limits.
constexpr double kThreeSquareSeconds = 10.0;
constexpr double kUniversalitySeconds = 60.0;
constexpr double kLocalOracleSeconds = 30.0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Int md(Int a, Int m) { return ((a % m) + m) % m; }

Int ipow(Int b, unsigned e)
{
    Int r = 1;
    while (e-- > 0) r *= b;
    return r;
}

std::string join(const std::vector<Int>& v, std::size_t limit = 20)
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < v.size() && i < limit; ++i) os << (i ? "," : "") << v[i];
    if (v.size() > limit) os << ",...(" << v.size() << " total)";
    os << "]";
    return os.str();
}

Int floor_sq(Int x, Int a) { return x * x / a; }

bool naive_floor_represents(Int a, Int b, Int c, Int n)
{
    for (Int x = 0; floor_sq(x, a) <= n; ++x) {
        for (Int y = 0; floor_sq(x, a) + floor_sq(y, b) <= n; ++y) {
            for (Int z = 0; floor_sq(x, a) + floor_sq(y, b) + floor_sq(z, c) <= n; ++z) {
                if (floor_sq(x, a) + floor_sq(y, b) + floor_sq(z, c) == n) return true;
            }
        }
    }
    return false;
}

// Number of (X, Y, Z) with X = r_i (mod d_i) and sum w_i X_i^2 = l.
Int naive_constrained_count(const std::array<Int, 3>& w, const std::array<Int, 3>& d, const std::array<Int, 3>& r, Int l)
{
    Int count = 0;
    for (Int X = 0; w[0] * X * X <= l; ++X) {
        for (const Int sign_x : {1, -1}) {
            const Int sx = sign_x * X;
            if ((sign_x < 0 && X == 0) || md(sx - r[0], d[0]) != 0) continue;
            const Int rx = l - w[0] * X * X;
            for (Int Y = 0; w[1] * Y * Y <= rx; ++Y) {
                for (const Int sign_y : {1, -1}) {
                    const Int sy = sign_y * Y;
                    if ((sign_y < 0 && Y == 0) || md(sy - r[1], d[1]) != 0) continue;
                    const Int rest = rx - w[1] * Y * Y;
                    if (rest % w[2] != 0) continue;
                    const Int q = rest / w[2];
                    Int Z = 0;
                    while ((Z + 1) * (Z + 1) <= q) ++Z;
                    if (Z * Z != q) continue;
                    for (const Int sign_z : {1, -1}) {
                        const Int sz = sign_z * Z;
                        if ((sign_z < 0 && Z == 0) || md(sz - r[2], d[2]) != 0) continue;
                        ++count;
                    }
                }
            }
        }
    }
    return count;
}

Outcome three_square_oracle()
{
    std::vector<Int> expected;
    for (Int n = 0; n <= 10000; ++n) {
        Int m = n;
        while (m > 0 && m % 4 == 0) m /= 4;
        if (n > 0 && m % 8 == 7) expected.push_back(n);
    }
    const auto t0 = Clock::now();
    ScanOptions opts;
    opts.workers = 1;
    const auto report = form::scan_range(FloorForm(1, 1, 1), 0, 10000, opts);
    const double s = seconds_since(t0);
    std::ostringstream os;
    os << report.exceptions.size() << " exceptions, expected " << expected.size() << ", " << s << " s single-worker";
    return {report.exceptions == expected && s < kThreeSquareSeconds, os.str()};
}

Outcome regular_form_oracle()
{
    std::set<Int> expected;
    for (Int n = 0; n <= 3000; ++n) {
        Int m = n;
        while (m > 0 && m % 9 == 0) m /= 9;
        if (n > 0 && m % 3 == 1) expected.insert(n);
    }
    const auto lattice = coset::diagonal_lattice({2, 3, 3});
    std::vector<Int> misses;
    for (Int n = 0; n <= 3000; ++n) {
        if (!coset::coset_represents_global(lattice, n)) misses.push_back(n);
    }
    const bool ok = misses == std::vector<Int>(expected.begin(), expected.end());
    return {ok, std::to_string(misses.size()) + " misses, expected " + std::to_string(expected.size())};
}

Outcome universality_list()
{
    const auto t0 = Clock::now();
    std::vector<Int> bad;
    for (const Int m : {3, 4, 5, 6, 7, 8, 9, 15, 20, 21, 24, 40, 104, 120}) {
        ScanOptions opts;
        opts.workers = 4;
        if (!form::scan_range(FloorForm(m, m, m), 0, 5000, opts).exceptions.empty()) bad.push_back(m);
    }
    const double s = seconds_since(t0);
    std::ostringstream os;
    os << "forms with exceptions " << join(bad) << ", " << s << " s with 4 workers";
    return {bad.empty() && s < kUniversalitySeconds, os.str()};
}

Outcome parity_obstruction()
{
    std::vector<Int> odd;
    for (Int n = 1; n <= 200; n += 2) odd.push_back(n);
    const auto ex = form::scan_range(FloorForm(2, 2, 2), 0, 200).exceptions;
    return {ex == odd, std::to_string(ex.size()) + " exceptions, all odd: " + (ex == odd ? "yes" : "no")};
}

Outcome uniform_forms()
{
    Int scans_bad = 0, checked = 0, escapes = 0, violated = 0, bad_witness = 0;
    std::string first_problem;
    for (Int m = 10; m <= 40; ++m) {
        const FloorForm f(m, m, m);
        const auto ex = form::scan_range(f, 0, 5000).exceptions;
        if (!ex.empty()) {
            ++scans_bad;
            if (first_problem.empty()) first_problem = "m=" + std::to_string(m) + " exceptions " + join(ex);
        }
        for (Int n = 0; n <= 5000; ++n) {
            const auto plan = planner::plan_residues_m(m, n);
            const auto v = planner::verify_plan(plan);
            ++checked;
            if (v.verdict == Verdict::escape_applies) {
                ++escapes;
                if (!v.escape_witness || form::eval_form(f, *v.escape_witness) != n) ++bad_witness;
            } else if (v.verdict != Verdict::clean) {
                ++violated;
                if (first_problem.empty())
                    first_problem = "m=" + std::to_string(m) + " n=" + std::to_string(n) + " verdict " + to_string(v.verdict);
            }
        }
    }
    std::ostringstream os;
    os << checked << " plans, " << escapes << " escapes, " << violated << " not clean/escape, " << bad_witness
       << " bad witnesses, " << scans_bad << " scans with exceptions";
    if (!first_problem.empty()) os << "; first: " << first_problem;
    return {scans_bad == 0 && violated == 0 && bad_witness == 0, os.str()};
}

Outcome coprime_triples()
{
    const std::vector<std::array<Int, 3>> triples{{5, 7, 11}, {5, 6, 7}, {5, 8, 9}, {7, 9, 11}, {5, 13, 21}};
    Int checked = 0, not_clean = 0, bad_class = 0;
    std::ostringstream os;
    std::string problems;
    for (const auto& t : triples) {
        const FloorForm f(t[0], t[1], t[2]);
        const auto ex = form::scan_range(f, 0, 3000).exceptions;
        if (!ex.empty()) problems += " (" + f.to_string() + ") exceptions " + join(ex, ex.size());
        for (Int n = 0; n <= 3000; ++n) {
            const auto plan = planner::plan_residues_abc(t[0], t[1], t[2], n);
            const auto v = planner::verify_plan(plan);
            ++checked;
            if (v.verdict != Verdict::clean) {
                ++not_clean;
                if (problems.size() < 400)
                    problems += " (" + f.to_string() + ") n=" + std::to_string(n) + " " + to_string(v.verdict);
            }
            const std::string& label = plan.case_label;
            bool in_class = plan.claimed.holds(plan.l);
            if (label.find("ord2_eq_1") != std::string::npos) {
                in_class = in_class && md(plan.l, 4) == 3;
            } else if (label.rfind("abc.odd", 0) == 0) {
                in_class = in_class && md(plan.l, 8) != 1;
            } else {
                const Int r = md(plan.l, 8);
                in_class = in_class && (r == 3 || r == 5 || r == 6);
            }
            if (!in_class) {
                ++bad_class;
                if (problems.size() < 400)
                    problems += " (" + f.to_string() + ") n=" + std::to_string(n) + " l=" + std::to_string(plan.l) + " " + label;
            }
        }
    }
    os << checked << " plans, " << not_clean << " not clean, " << bad_class << " outside claimed classes";
    if (!problems.empty()) os << ";" << problems;
    return {problems.empty(), os.str()};
}

Outcome equation_e()
{
    std::mt19937_64 rng(20241017);
    std::uniform_int_distribution<Int> pick(2, 150);
    int sampled = 0, mismatches = 0;
    std::string first;
    while (sampled < 20) {
        const Int a = 2 * pick(rng) + 1, b = 2 * pick(rng) + 1, c = 2 * pick(rng) + 1;
        if (std::gcd(a, b) != 1 || std::gcd(b, c) != 1 || std::gcd(a, c) != 1) continue;
        if (md(a, 4) != md(b, 4) || md(b, 4) != md(c, 4) || md(b, 8) != md(c, 8)) continue;
        ++sampled;
        std::set<Int> direct;
        for (const Int b0 : {1, 4}) {
            for (const Int c0 : {1, 4}) direct.insert(md(c * a * b0 + a * b * c0, 8));
        }
        const int mu = md(a, 8) != md(b, 8) ? 1 : 0;
        const std::set<Int> expected{0, 2, md(5 - 4 * mu, 8)};
        const auto computed = planner::equation_e_set(a, b, c);
        if (computed != expected || direct != expected || planner::mu_of(a, b) != mu) {
            ++mismatches;
            if (first.empty()) first = "; first mismatch (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
        }
    }
    return {mismatches == 0, std::to_string(sampled) + " triples, " + std::to_string(mismatches) + " mismatches" + first};
}

Outcome local_oracle()
{
    const auto t0 = Clock::now();
    Int cases = 0, failures = 0;
    std::string first;
    auto fail = [&](const std::string& what) {
        ++failures;
        if (first.empty()) first = "; first: " + what;
    };

    for (const Int p : {3, 5, 7}) {
        const Int M = ipow(p, 6);
        for (const unsigned k : {1u, 2u}) {
            const Int pk = ipow(p, k);
            for (Int eps = 1; eps < p * p; ++eps) {
                if (eps % p == 0) continue;
                for (Int eta = 1; eta < p * p; ++eta) {
                    if (eta % p == 0) continue;
                    ++cases;
                    // derivative 2 p^k eps x + eta is a unit, so every hit is Hensel-stable
                    std::vector<char> hit(static_cast<std::size_t>(M), 0);
                    Int value = 0;
                    for (Int x = 0; x < M; ++x) {
                        hit[static_cast<std::size_t>(value)] = 1;
                        value = (value + pk * eps % M * ((2 * x + 1) % M) + eta) % M;
                    }
                    Int missing = 0;
                    for (Int n = 0; n < M; ++n) {
                        if (!hit[static_cast<std::size_t>(n)]) ++missing;
                        if (n % 97 == 0 && !padic::lemma_local(p, k, eps, eta, n)) {
                            fail("lemma_local rejects p=" + std::to_string(p) + " n=" + std::to_string(n));
                        }
                    }
                    if (missing != 0) fail("p=" + std::to_string(p) + " k=" + std::to_string(k) + " not surjective");
                }
            }
        }
    }

    constexpr Int M2 = 256;
    for (Int eps = 1; eps < 16; eps += 2) {
        for (Int eta = 1; eta < 16; eta += 2) {
            for (const unsigned k : {1u, 2u, 3u}) {
                ++cases;
                const Int pk = ipow(2, k);
                std::vector<char> hit(M2, 0);
                for (Int x = 0; x < M2; ++x) {
                    // ord_2 of the derivative is 1; f(x) mod 2^8 determines the class mod 2^3 needed to lift
                    hit[static_cast<std::size_t>(md(pk * eps * x * x + 2 * eta * x, M2))] = 1;
                }
                const Int step = k == 1 ? 4 : 2;
                const auto image = padic::stable_image(2, pk * eps, 2 * eta, 8);
                for (Int n = 0; n < M2; ++n) {
                    const bool covered = n % step == 0;
                    if (covered && !hit[static_cast<std::size_t>(n)]) fail("p=2 k=" + std::to_string(k) + " misses " + std::to_string(n));
                    if (padic::lemma_local(2, k, eps, eta, n) != covered) fail("lemma_local p=2 n=" + std::to_string(n));
                    if (covered && !image[static_cast<std::size_t>(n)]) fail("stable_image p=2 misses " + std::to_string(n));
                }
            }
        }
    }
    const double s = seconds_since(t0);
    std::ostringstream os;
    os << cases << " (p, k, eps, eta) cases, " << failures << " failures, " << s << " s" << first;
    return {failures == 0 && s < kLocalOracleSeconds, os.str()};
}

Outcome round_trip()
{
    Int checked = 0, mismatches = 0;
    std::string first;
    for (const auto& d : std::vector<std::array<Int, 3>>{{3, 3, 3}, {5, 7, 9}, {6, 5, 7}}) {
        const FloorForm f(d[0], d[1], d[2]);
        for (Int n = 0; n <= 200; ++n) {
            ++checked;
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
            if (coset_side != naive_floor_represents(d[0], d[1], d[2], n)) {
                ++mismatches;
                if (first.empty()) first = "; first (" + f.to_string() + ") n=" + std::to_string(n);
            }
        }
    }
    return {mismatches == 0, std::to_string(checked) + " (form, n) pairs, " + std::to_string(mismatches) + " mismatches" + first};
}

Outcome floor_scaling()
{
    std::mt19937_64 rng(1201);
    std::uniform_int_distribution<Int> pa(1, 100000);
    std::uniform_int_distribution<Int> px(-1000000, 1000000);
    int bad = 0;
    for (int i = 0; i < 10000; ++i) {
        const Int a = pa(rng), x = px(rng);
        Int s = a, t = 1;
        for (Int q = 2; q * q <= s; ++q) {
            while (s % (q * q) == 0) s /= q * q, t *= q;
        }
        const auto red = form::squarefree_reduce(FloorForm(a, 1, 1));
        if (red.reduced.a() != s || red.multipliers[0] != t) ++bad;
        if ((t * x) * (t * x) / a != x * x / s) ++bad;
    }
    const FloorForm f(12, 27, 75);
    const auto ex = form::scan_range(f, 0, 2000).exceptions;
    const auto red = form::squarefree_reduce(f);
    int lift_bad = 0;
    for (Int n = 0; n <= 2000; ++n) {
        const auto w = form::search_representation(red.reduced, n);
        if (!w || form::eval_form(f, form::lift_reduced(red, *w)) != n) ++lift_bad;
    }
    const bool ok = bad == 0 && ex.empty() && red.reduced == FloorForm(3, 3, 3) && lift_bad == 0;
    return {ok, "10000 (a, x) pairs, " + std::to_string(bad) + " failures; (12,27,75) exceptions " + join(ex) +
                    ", reduced to (" + red.reduced.to_string() + "), " + std::to_string(lift_bad) + " failed lifts"};
}

Outcome theta_duality()
{
    std::mt19937_64 rng(4711);
    const std::vector<std::array<Int, 3>> forms{{3, 3, 3}, {5, 7, 9}, {6, 5, 7}, {4, 4, 4}, {2, 3, 5}, {10, 10, 10}};
    int done = 0, mismatches = 0, nonzero = 0;
    std::string first;
    while (done < 50) {
        const auto& d = forms[rng() % forms.size()];
        const FloorForm f(d[0], d[1], d[2]);
        const auto r = coset::make_residues(f, static_cast<Int>(rng() % static_cast<std::uint64_t>(d[0])),
                                            static_cast<Int>(rng() % static_cast<std::uint64_t>(d[1])),
                                            static_cast<Int>(rng() % static_cast<std::uint64_t>(d[2])));
        const auto scale = done % 2 == 0 ? CosetScale::half_integral : CosetScale::delta;
        const auto c = coset::build_coset(f, r, scale);
        // half the instances take l from an actual representation so the count is nonzero
        Int l = static_cast<Int>(rng() % 2001);
        if (done % 4 < 2) {
            const Int n = static_cast<Int>(rng() % 40);
            const auto w = form::search_representation(f, n);
            if (!w) continue;
            const auto t = coset::floor_to_coset(f, n, *w);
            if (t.l > 2000) continue;
            const auto ct = coset::build_coset(f, t.residues, scale);
            const auto series = theta::coset_theta_coefficients(ct, t.l);
            const Int want = naive_constrained_count(ct.weight, ct.modulus, ct.residue, t.l);
            if (want > 0) ++nonzero;
            if (series.coefficients[static_cast<std::size_t>(t.l)] != want) {
                ++mismatches;
                if (first.empty()) first = "; first (" + f.to_string() + ") l=" + std::to_string(t.l);
            }
            ++done;
            continue;
        }
        const auto series = theta::coset_theta_coefficients(c, l);
        const Int want = naive_constrained_count(c.weight, c.modulus, c.residue, l);
        if (want > 0) ++nonzero;
        if (series.coefficients[static_cast<std::size_t>(l)] != want) {
            ++mismatches;
            if (first.empty()) first = "; first (" + f.to_string() + ") l=" + std::to_string(l);
        }
        ++done;
    }
    return {mismatches == 0, std::to_string(done) + " instances (" + std::to_string(nonzero) + " nonzero), " +
                                 std::to_string(mismatches) + " mismatches" + first};
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"three_square_oracle", three_square_oracle},
        {"regular_form_oracle", regular_form_oracle},
        {"universality_list", universality_list},
        {"parity_obstruction", parity_obstruction},
        {"uniform_forms_scan_and_plan", uniform_forms},
        {"coprime_triples_scan_and_plan", coprime_triples},
        {"equation_e_identity", equation_e},
        {"local_closed_form_oracle", local_oracle},
        {"coset_round_trip", round_trip},
        {"floor_scaling_identity", floor_scaling},
        {"theta_duality", theta_duality},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}

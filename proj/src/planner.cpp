#include "floorform/planner.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "floorform/theta.hpp"

namespace floorform {

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::clean: return "clean";
    case Verdict::escape_applies: return "escape_applies";
    case Verdict::universality_fallback: return "universality_fallback";
    case Verdict::violated: return "violated";
    }
    return "unknown";
}

namespace planner {

namespace {

Int mod4(Int v) { return arith::mod(v, 4); }
Int mod8(Int v) { return arith::mod(v, 8); }

void fill(ResiduePlan& plan, Int alpha, Int beta, Int gamma)
{
    plan.residues = coset::make_residues(plan.plan_form, alpha, beta, gamma);
    plan.l = coset::l_value(plan.plan_form, plan.n, plan.residues, plan.convention);
}

// (beta, gamma) in the fixed order giving (b0, c0) = (1,1), (1,4), (4,1), (4,4).
constexpr std::array<std::pair<Int, Int>, 4> kPairOrder{{{1, 1}, {1, 2}, {2, 1}, {2, 2}}};

// First (alpha, beta, gamma) with alpha from `alphas` (outer) and (beta,
// gamma) from kPairOrder whose l lands in the claimed classes. Falls back to
// the first candidate so verification can report the miss.
void search_choice(ResiduePlan& plan, const std::vector<Int>& alphas)
{
    for (const Int alpha : alphas) {
        for (const auto& [beta, gamma] : kPairOrder) {
            fill(plan, alpha, beta, gamma);
            if (plan.claimed.holds(plan.l)) return;
        }
    }
    fill(plan, alphas.front(), kPairOrder[0].first, kPairOrder[0].second);
}

bool coprime_odd(const FloorForm& f, Int l)
{
    for (Int d : f.denominators()) {
        while (d % 2 == 0) d /= 2;
        if (std::gcd(l, d) != 1) return false;
    }
    return true;
}

// First residues, scanning alpha, beta, gamma upward from 1, with l in the
// claimed classes, l prime to the odd part of abc and l locally
// represented at 2. Leaves the plan untouched when nothing qualifies.
void repair_search(ResiduePlan& plan)
{
    const FloorForm& f = plan.plan_form;
    const ResidueTriple original = plan.residues;
    const Int l_original = plan.l;
    for (Int alpha = 1; alpha < f.a(); ++alpha) {
        for (Int beta = 1; beta < f.b(); ++beta) {
            for (Int gamma = 1; gamma < f.c(); ++gamma) {
                fill(plan, alpha, beta, gamma);
                if (!plan.claimed.holds(plan.l) || !coprime_odd(f, plan.l)) continue;
                if (!padic::shifted_quadratic_solvable(localize(f, plan.residues, plan.l, 2)).solvable) continue;
                plan.case_label += ".searched";
                return;
            }
        }
    }
    plan.residues = original;
    plan.l = l_original;
}

ClaimedCongruence claim(Int modulus, std::set<Int> classes) { return {modulus, std::move(classes)}; }

// Move position `from` of the working order to the front, keeping the rest.
void move_to_front(std::array<Int, 3>& d, std::array<int, 3>& perm, std::size_t from)
{
    std::rotate(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(from),
                d.begin() + static_cast<std::ptrdiff_t>(from) + 1);
    std::rotate(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(from),
                perm.begin() + static_cast<std::ptrdiff_t>(from) + 1);
}

void exempt_three_if_shared(ResiduePlan& plan)
{
    const Int a = plan.plan_form.a();
    if (a % 3 == 0 && plan.residues.alpha % 3 == 0) plan.coprime_exempt_primes.push_back(3);
}

void plan_even_ord1(ResiduePlan& plan, const std::string& prefix)
{
    const Int b = plan.plan_form.b(), c = plan.plan_form.c(), n = plan.n;
    plan.claimed = claim(4, {3});
    if (mod4(n) == 0) {
        plan.case_label = prefix + ".n_0_mod_4";
        fill(plan, 1, 1, mod4(b) != mod4(c) ? 1 : 2);
    } else if (mod4(n) == 2) {
        plan.case_label = prefix + ".n_2_mod_4";
        // The printed choice is 2-adically sound but always gives l = 1 (mod 4)
        // here, since l = bc + 2[b0 odd] + 2[c0 odd] (mod 4).
        fill(plan, 1, mod4(b) != mod4(c) ? 1 : 2, 2);
        if (!plan.claimed.holds(plan.l)) repair_search(plan);
    } else {
        plan.case_label = prefix + ".n_odd";
        const Int beta = mod4(b) != mod4(n) ? 1 : 2;
        Int gamma = mod4(c) != mod4(b) ? beta - 1 : beta;
        // gamma = 0 puts c | l; gamma = 2 keeps c0 even and l mod 4 unchanged.
        if (gamma == 0) gamma = 2;
        fill(plan, 1, beta, gamma);
    }
}

void plan_even_ord2(ResiduePlan& plan)
{
    const Int b = plan.plan_form.b(), c = plan.plan_form.c();
    const bool bc_one = mod8(b * c) == 1;
    plan.claimed = claim(8, {3, 5, 7});
    if (plan.n % 2 == 0) {
        plan.case_label = "abc.ord2_ge_2.n_even";
        fill(plan, 1, 1, bc_one ? 2 : 1);
    } else {
        plan.case_label = "abc.ord2_ge_2.n_odd";
        fill(plan, 1, 1, bc_one ? 1 : 2);
    }
}

void plan_odd_mixed(ResiduePlan& plan)
{
    const Int a = plan.plan_form.a(), n = plan.n;
    plan.claimed = claim(4, {3});
    if (n % 2 == 0) {
        plan.case_label = "abc.odd.mixed_mod_4.n_even";
        const Int bg = mod4(n) == 0 ? 1 : 2;
        fill(plan, 1, bg, bg);
    } else {
        plan.case_label = "abc.odd.mixed_mod_4.n_odd";
        if (mod4(a) == mod4(n)) fill(plan, 2, 1, 1);
        else fill(plan, 1, 1, 2);
    }
}

void plan_odd_equal(ResiduePlan& plan, std::array<Int, 3>& d)
{
    const int mu = plan.mu.value();
    const Int n8 = mod8(plan.n);
    auto rebuild = [&] { plan.plan_form = FloorForm(d[0], d[1], d[2]); };
    auto label = [&](const std::string& tail) {
        plan.case_label = "abc.odd.equal_mod_4.n_" + std::to_string(n8) + "_mod_8" + tail;
    };

    const Int a8 = mod8(d[0]);
    switch (n8) {
    case 4:
        label("");
        plan.claimed = claim(8, {5});
        fill(plan, 1, 2, 2);
        return;
    case 0:
        label("");
        plan.claimed = claim(8, {3});
        fill(plan, 1, 1, 1);
        return;
    case 5:
    case 3:
        label("");
        plan.claimed = claim(8, {3, 5, 6});
        search_choice(plan, {(a8 == 1 || a8 == 7) ? Int{1} : Int{2}});
        return;
    case 1:
    case 7:
        label("");
        plan.claimed = claim(8, {3, 5, 6});
        search_choice(plan, {(a8 == 3 || a8 == 5) ? Int{1} : Int{2}});
        return;
    case 6:
        if (mu == 1) {
            label(".mu_1");
            plan.claimed = claim(8, {3, 5});
            search_choice(plan, {mod4(d[0]) == 3 ? Int{1} : Int{2}});
            return;
        }
        if (mod4(d[0]) == 3) {
            label(".mu_0.a_3_mod_4");
            plan.claimed = claim(8, {5});
            search_choice(plan, {1});
            return;
        }
        {
            // a = 4l + 1 needs l >= 3; all entries agree mod 8 here, so any
            // entry with l >= 3 may take the first slot.
            if ((d[0] - 1) / 4 < 3) {
                std::size_t pick = 0;
                for (std::size_t i = 1; i < 3 && pick == 0; ++i) {
                    if ((d[i] - 1) / 4 >= 3) pick = i;
                }
                if (pick == 0) throw std::logic_error("no entry with a = 4l+1, l >= 3");
                std::swap(d[0], d[pick]);
                std::swap(plan.permutation[0], plan.permutation[pick]);
                rebuild();
            }
            const Int l = (d[0] - 1) / 4;
            label(".mu_0.a_1_mod_4");
            plan.k_aux = l;
            plan.claimed = l % 2 == 0 ? claim(8, {3, 5}) : claim(8, {5, 6});
            search_choice(plan, {2 * l + 1, 2 * l + 2});
            exempt_three_if_shared(plan);
            return;
        }
    case 2:
        if (mu == 1) {
            label(".mu_1");
            plan.claimed = claim(8, {3});
            search_choice(plan, {mod4(d[0]) == 1 ? Int{1} : Int{2}});
            return;
        }
        if (mod4(d[0]) == 1) {
            label(".mu_0.a_1_mod_4");
            plan.claimed = claim(8, {3});
            search_choice(plan, {1});
            return;
        }
        {
            const Int l = (d[0] - 3) / 4;
            label(".mu_0.a_3_mod_4");
            plan.k_aux = l;
            plan.claimed = claim(8, {3, 5, 6});
            search_choice(plan, {2 * l + 1, 2 * l});
            exempt_three_if_shared(plan);
            return;
        }
    default: break;
    }
    throw std::logic_error("unreachable residue class of n mod 8");
}

std::optional<Representation> brute_force(const FloorForm& form, Int n)
{
    return form::search_representation(form, n);
}

}  // namespace

int mu_of(Int a, Int b) { return mod8(a) != mod8(b) ? 1 : 0; }

std::set<Int> equation_e_set(Int a, Int b, Int c)
{
    std::set<Int> out;
    for (const Int b0 : {1, 4}) {
        for (const Int c0 : {1, 4}) out.insert(mod8(arith::mod(c * a, 8) * b0 + arith::mod(a * b, 8) * c0));
    }
    return out;
}

ResiduePlan plan_residues_m(Int m, Int n)
{
    if (m < 3) throw std::invalid_argument("plan_residues_m requires m >= 3, got " + std::to_string(m));
    if (n < 0) throw std::invalid_argument("plan_residues_m requires n >= 0");
    ResiduePlan plan;
    plan.form = FloorForm(m, m, m);
    plan.plan_form = plan.form;
    plan.convention = LConvention::m_form;
    plan.n = n;
    plan.claimed = claim(4, {1});

    const unsigned ord2 = m % 2 == 0 ? arith::p_adic_ord(2, m) : 0;
    if (ord2 == 1) {
        if (n % 2 == 0) {
            plan.case_label = "m.ord2_eq_1.n_even";
            fill(plan, 1, 0, 0);
        } else if (m % 8 == 6) {
            plan.case_label = "m.ord2_eq_1.n_odd.m_6_mod_8";
            plan.k_aux = (m - 2) / 4;
            fill(plan, 2, 0, m / 2);
        } else {
            plan.case_label = "m.ord2_eq_1.n_odd.m_2_mod_8";
            plan.k_aux = (m - 2) / 4 - 1;
            fill(plan, 1, 0, m / 2 - 1);
        }
        plan.universality_fallback = m < 10;
    } else if (ord2 >= 2) {
        if (n % 2 == 0) {
            plan.case_label = "m.ord2_ge_2.n_even";
            fill(plan, 1, 0, 0);
        } else if (ord2 == 2) {
            plan.case_label = "m.ord2_ge_2.n_odd.ord2_eq_2";
            plan.k_aux = m / 4;
            fill(plan, 1, 0, m / 2);
        } else {
            plan.case_label = "m.ord2_ge_2.n_odd.ord2_ge_3";
            plan.k_aux = m / 4 - 1;
            fill(plan, 0, 0, m / 2 - 1);
        }
    } else {
        if (n % 4 == 0) {
            plan.case_label = "m.odd.n_0_mod_4";
            fill(plan, 1, 0, 0);
        } else if (n % 4 == 2) {
            plan.case_label = "m.odd.n_2_mod_4";
            fill(plan, 1, 1, 1);
            if (m % 3 == 0) plan.coprime_exempt_primes.push_back(3);
        } else if (mod4(m) == mod4(n)) {
            plan.case_label = "m.odd.n_odd.m_eq_n_mod_4";
            fill(plan, 2, 0, 0);
        } else {
            plan.case_label = "m.odd.n_odd.m_ne_n_mod_4";
            fill(plan, 1, 1, 0);
        }
        plan.universality_fallback = m < 5;
    }

    if (plan.universality_fallback) {
        plan.case_label = "m.universality_fallback." + plan.case_label.substr(2);
        plan.claimed = ClaimedCongruence{};
    }
    const Int total = plan.residues.a0 + plan.residues.b0 + plan.residues.c0;
    plan.escape = !plan.universality_fallback && arith::exact_sqrt(plan.l).has_value() && total < m;
    return plan;
}

void check_abc_hypotheses(Int a, Int b, Int c)
{
    for (const Int v : {a, b, c}) {
        if (v < 5) throw std::invalid_argument("hypothesis violated: a, b, c >= 5 (got " + std::to_string(v) + ")");
    }
    const std::array<std::pair<Int, Int>, 3> pairs{{{a, b}, {b, c}, {a, c}}};
    for (const auto& [x, y] : pairs) {
        if (std::gcd(x, y) != 1) {
            throw std::invalid_argument("hypothesis violated: a, b, c pairwise coprime (gcd(" + std::to_string(x) + ", " +
                                        std::to_string(y) + ") = " + std::to_string(std::gcd(x, y)) + ")");
        }
    }
}

ResiduePlan plan_residues_abc(Int a, Int b, Int c, Int n)
{
    check_abc_hypotheses(a, b, c);
    if (n < 0) throw std::invalid_argument("plan_residues_abc requires n >= 0");
    ResiduePlan plan;
    plan.form = FloorForm(a, b, c);
    plan.convention = LConvention::general;
    plan.n = n;

    const std::array<Int, 3> original{a, b, c};
    std::array<int, 3> perm{0, 1, 2};
    std::stable_sort(perm.begin(), perm.end(), [&](int i, int j) {
        return arith::p_adic_ord(2, original[static_cast<std::size_t>(i)]) >
               arith::p_adic_ord(2, original[static_cast<std::size_t>(j)]);
    });
    std::array<Int, 3> d{};
    for (std::size_t i = 0; i < 3; ++i) d[i] = original[static_cast<std::size_t>(perm[i])];
    plan.permutation = perm;

    const unsigned ord2 = arith::p_adic_ord(2, d[0]);
    if (ord2 >= 1) {
        // a = 4^j a' with ord2(a') in {1, 2}.
        const unsigned j = (ord2 - 1) / 2;
        plan.reduction_root = arith::ipow(2, j);
        d[0] /= plan.reduction_root * plan.reduction_root;
        plan.plan_form = FloorForm(d[0], d[1], d[2]);
        if (ord2 % 2 == 1) {
            plan_even_ord1(plan, ord2 == 1 ? "abc.ord2_eq_1" : "abc.ord2_ge_2.reduced_to_ord2_eq_1");
        } else {
            plan_even_ord2(plan);
        }
        return plan;
    }

    const bool all_equal_mod4 = mod4(d[0]) == mod4(d[1]) && mod4(d[1]) == mod4(d[2]);
    if (!all_equal_mod4) {
        std::size_t odd_one = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            if (mod4(d[i]) != mod4(d[(i + 1) % 3]) && mod4(d[i]) != mod4(d[(i + 2) % 3])) odd_one = i;
        }
        move_to_front(d, plan.permutation, odd_one);
        plan.plan_form = FloorForm(d[0], d[1], d[2]);
        plan_odd_mixed(plan);
        return plan;
    }

    int mu = 0;
    if (!(mod8(d[0]) == mod8(d[1]) && mod8(d[1]) == mod8(d[2]))) {
        std::size_t odd_one = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            if (mod8(d[i]) != mod8(d[(i + 1) % 3]) && mod8(d[i]) != mod8(d[(i + 2) % 3])) odd_one = i;
        }
        move_to_front(d, plan.permutation, odd_one);
        mu = 1;
    }
    plan.mu = mu;
    plan.plan_form = FloorForm(d[0], d[1], d[2]);
    plan_odd_equal(plan, d);
    return plan;
}

ResiduePlan plan(const FloorForm& form, Int n)
{
    if (form.is_uniform()) return plan_residues_m(form.a(), n);
    return plan_residues_abc(form.a(), form.b(), form.c(), n);
}

padic::LocalProblem localize(const FloorForm& form, const ResidueTriple& residues, Int l, Int p)
{
    const CosetDescriptor coset = coset::build_coset(form, residues, CosetScale::half_integral);
    padic::LocalProblem problem;
    problem.p = p;
    Int target = l;
    for (std::size_t i = 0; i < 3; ++i) {
        const Int w = coset.weight[i], d = coset.modulus[i], r = coset.residue[i];
        problem.terms.push_back({arith::checked_mul(w, arith::checked_mul(d, d)),
                                 arith::checked_mul(2, arith::checked_mul(w, arith::checked_mul(d, r)))});
        target = arith::checked_sub(target, arith::checked_mul(w, arith::checked_mul(r, r)));
    }
    problem.target = target;
    return problem;
}

padic::LocalProblem localize_n(const FloorForm& form, Int n, const ResidueTriple& residues, Int p)
{
    return localize(form, residues, coset::l_value(form, n, residues), p);
}

std::vector<Int> local_primes(const FloorForm& form)
{
    std::set<Int> primes{2};
    for (const Int d : form.denominators()) {
        for (const Int p : arith::prime_divisors(d)) primes.insert(p);
    }
    return {primes.begin(), primes.end()};
}

std::vector<Int> control_primes(const FloorForm& form, std::size_t count)
{
    std::vector<Int> out;
    for (Int p = 3; out.size() < count; p += 2) {
        if (!arith::is_prime(p)) continue;
        const auto& d = form.denominators();
        if (std::any_of(d.begin(), d.end(), [p](Int v) { return v % p == 0; })) continue;
        out.push_back(p);
    }
    return out;
}

std::optional<Representation> escape_representation(Int m, Int n, const ResiduePlan& plan)
{
    const auto root = arith::exact_sqrt(plan.l);
    if (!root) throw std::invalid_argument("escape_representation: l = " + std::to_string(plan.l) + " is not a square");
    if (plan.residues.a0 + plan.residues.b0 + plan.residues.c0 >= m) return std::nullopt;
    const Representation w{*root, 0, 0};
    if (form::eval_form(FloorForm(m, m, m), w) != n) return std::nullopt;
    return w;
}

PlanVerification verify_plan(const ResiduePlan& plan)
{
    PlanVerification v;
    const FloorForm& f = plan.plan_form;

    v.congruence_ok = plan.claimed.holds(plan.l);

    v.control_primes = control_primes(f);
    std::vector<Int> primes = local_primes(f);
    primes.insert(primes.end(), v.control_primes.begin(), v.control_primes.end());
    bool locals_ok = true;
    for (const Int p : primes) {
        auto status = padic::shifted_quadratic_solvable(localize(f, plan.residues, plan.l, p));
        locals_ok = locals_ok && status.solvable;
        v.local_statuses.push_back(std::move(status));
    }

    v.coprime_to_odd_divisors = true;
    for (const Int p : local_primes(f)) {
        if (p == 2) continue;
        if (std::find(plan.coprime_exempt_primes.begin(), plan.coprime_exempt_primes.end(), p) !=
            plan.coprime_exempt_primes.end()) {
            continue;
        }
        if (plan.l % p == 0) v.coprime_to_odd_divisors = false;
    }

    v.obstruction_ts = theta::square_class_divisors(plan.l, theta::obstruction_base(f));

    const CosetDescriptor coset = coset::build_coset(f, plan.residues, CosetScale::half_integral);
    for (const Int p : local_primes(f)) {
        const auto& g = coset.gram_diagonal;
        if (!padic::ternary_anisotropic(p, g[0], g[1], g[2])) continue;
        AnisotropicReport r{p, plan.l == 0 ? 0u : arith::p_adic_ord(p, plan.l), false};
        r.warning = plan.l != 0 && r.ord_l >= 4;
        if (r.warning) v.notes.push_back("ord_" + std::to_string(p) + "(l) >= 4 at an anisotropic prime");
        v.anisotropic.push_back(r);
    }

    if (plan.universality_fallback) {
        v.fallback_witness = brute_force(plan.form, plan.n);
        v.verdict = v.fallback_witness ? Verdict::universality_fallback : Verdict::violated;
        if (!v.fallback_witness) v.notes.push_back("brute-force search found no representation");
        return v;
    }

    if (!v.congruence_ok) v.notes.push_back("claimed congruence fails");
    if (!locals_ok) v.notes.push_back("some local check is unsolvable");
    if (!v.coprime_to_odd_divisors) v.notes.push_back("l shares an odd prime with the denominators");
    if (!v.congruence_ok || !locals_ok || !v.coprime_to_odd_divisors) {
        v.verdict = Verdict::violated;
        return v;
    }
    if (v.obstruction_ts.empty()) {
        v.verdict = Verdict::clean;
        return v;
    }
    if (v.obstruction_ts == std::vector<Int>{1} && plan.escape && plan.convention == LConvention::m_form) {
        v.escape_witness = escape_representation(f.a(), plan.n, plan);
        if (v.escape_witness) {
            v.verdict = Verdict::escape_applies;
            return v;
        }
    }
    v.notes.push_back("nonempty obstruction set without an escape");
    v.verdict = Verdict::violated;
    return v;
}

}  // namespace planner
}  // namespace floorform

#include "floorform/theta.hpp"

#include <algorithm>
#include <stdexcept>

#include "floorform/planner.hpp"

namespace floorform {

std::string to_string(PlannerMode mode)
{
    return mode == PlannerMode::m_form ? "m_form" : "abc_form";
}

namespace theta {

namespace {

// Sparse series sum over X = d x + r of q^(w X^2), truncated at n_max.
std::vector<std::pair<Int, Int>> coordinate_series(Int w, Int d, Int r, Int n_max)
{
    std::vector<Int> counts(static_cast<std::size_t>(n_max) + 1, 0);
    const Int xmax = arith::isqrt(n_max / w);
    for (Int X = -xmax + arith::mod(r + xmax, d); X <= xmax; X += d) {
        ++counts[static_cast<std::size_t>(w * X * X)];
    }
    std::vector<std::pair<Int, Int>> out;
    for (std::size_t e = 0; e < counts.size(); ++e) {
        if (counts[e] != 0) out.emplace_back(static_cast<Int>(e), counts[e]);
    }
    return out;
}

}  // namespace

ThetaSeries coset_theta_coefficients(const CosetDescriptor& coset, Int n_max)
{
    if (n_max < 0) throw std::invalid_argument("coset_theta_coefficients requires n_max >= 0");
    std::vector<Int> acc(static_cast<std::size_t>(n_max) + 1, 0);
    acc[0] = 1;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto series = coordinate_series(coset.weight[i], coset.modulus[i], coset.residue[i], n_max);
        std::vector<Int> next(acc.size(), 0);
        for (std::size_t e = 0; e < acc.size(); ++e) {
            if (acc[e] == 0) continue;
            for (const auto& [k, c] : series) {
                const std::size_t idx = e + static_cast<std::size_t>(k);
                if (idx >= next.size()) break;
                next[idx] = arith::checked_add(next[idx], arith::checked_mul(acc[e], c));
            }
        }
        acc = std::move(next);
    }
    return {n_max, std::move(acc)};
}

ThetaSeries unary_theta_coefficients(Int N, Int t, Int h, Int n_max)
{
    if (N < 1 || t < 1) throw std::invalid_argument("unary theta requires N, t >= 1");
    if (N % t != 0) throw std::invalid_argument("unary theta requires t | N");
    if (!arith::is_squarefree(t)) throw std::invalid_argument("unary theta requires squarefree t");
    const Int step = N / t;
    if (h < 0 || h >= step) throw std::invalid_argument("unary theta requires 0 <= h < N/t");
    if (n_max < 0) throw std::invalid_argument("unary theta requires n_max >= 0");

    ThetaSeries out{n_max, std::vector<Int>(static_cast<std::size_t>(n_max) + 1, 0)};
    const Int rmax = arith::isqrt(n_max / t);
    for (Int r = -rmax + arith::mod(h + rmax, step); r <= rmax; r += step) {
        out.coefficients[static_cast<std::size_t>(t * r * r)] += r;
    }
    return out;
}

std::vector<Int> squarefree_divisors(Int base)
{
    if (base < 1) throw std::invalid_argument("squarefree_divisors requires base >= 1");
    std::vector<Int> out{1};
    for (const Int p : arith::prime_divisors(base)) {
        const std::size_t size = out.size();
        for (std::size_t i = 0; i < size; ++i) out.push_back(out[i] * p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Int> square_class_divisors(Int l, Int base)
{
    std::vector<Int> out;
    for (const Int t : squarefree_divisors(base)) {
        if (arith::square_class_test(l, t)) out.push_back(t);
    }
    return out;
}

Int obstruction_base(const FloorForm& form)
{
    const Int two_delta = coset::delta_of(form) == 1 ? 2 : 1;
    if (form.is_uniform()) return arith::checked_mul(two_delta, form.a());
    return arith::checked_mul(two_delta, arith::checked_mul(arith::checked_mul(form.a(), form.b()), form.c()));
}

std::vector<Int> obstruction_sets(const FloorForm& form, Int n, const ResidueTriple& residues)
{
    return square_class_divisors(coset::l_value(form, n, residues), obstruction_base(form));
}

ObstructionReport obstruction_scan(const FloorForm& form, Int n_lo, Int n_hi, PlannerMode mode)
{
    if (n_lo < 0 || n_lo > n_hi) throw std::invalid_argument("obstruction_scan requires 0 <= n_lo <= n_hi");
    if (mode == PlannerMode::m_form && !form.is_uniform()) {
        throw std::invalid_argument("m_form planner mode requires a == b == c");
    }
    if (mode == PlannerMode::abc_form) planner::check_abc_hypotheses(form.a(), form.b(), form.c());

    ObstructionReport report{form, n_lo, n_hi, mode, {}, 0};
    for (Int n = n_lo; n <= n_hi; ++n) {
        const ResiduePlan plan = mode == PlannerMode::m_form
                                     ? planner::plan_residues_m(form.a(), n)
                                     : planner::plan_residues_abc(form.a(), form.b(), form.c(), n);
        auto ts = obstruction_sets(plan.plan_form, n, plan.residues);
        if (ts.empty()) continue;
        bool escaped = false;
        if (plan.escape) {
            const auto w = planner::escape_representation(form.a(), n, plan);
            escaped = w.has_value() && form::eval_form(form, *w) == n;
        }
        if (!escaped) ++report.unresolved;
        report.entries.push_back({n, plan.l, plan.case_label, std::move(ts), escaped});
    }
    return report;
}

}  // namespace theta
}  // namespace floorform

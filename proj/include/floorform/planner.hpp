#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "floorform/coset.hpp"
#include "floorform/form.hpp"
#include "floorform/padic.hpp"

namespace floorform {

/// l mod modulus must fall in classes. modulus == 1 means no claim.
struct ClaimedCongruence {
    Int modulus = 1;
    std::set<Int> classes{0};

    bool holds(Int l) const { return classes.count(arith::mod(l, modulus)) > 0; }
};

/// Residue choice for one (form, n) following the case analysis.
///
/// Residues, l and the congruence claim refer to plan_form, which is `form`
/// reordered by `permutation` (plan_form[i] = form[permutation[i]]) and with
/// the even entry possibly reduced by a square factor: form[permutation[0]]
/// == plan_form.a() * reduction_root^2.
struct ResiduePlan {
    FloorForm form{1, 1, 1};
    FloorForm plan_form{1, 1, 1};
    std::array<int, 3> permutation{0, 1, 2};
    Int reduction_root = 1;
    LConvention convention = LConvention::general;
    Int n = 0;
    ResidueTriple residues;
    std::string case_label;
    Int l = 0;
    ClaimedCongruence claimed;
    bool escape = false;
    std::optional<int> mu;
    std::optional<Int> k_aux;
    bool universality_fallback = false;
    std::vector<Int> coprime_exempt_primes;  // odd primes allowed to divide l
};

enum class Verdict { clean, escape_applies, universality_fallback, violated };

std::string to_string(Verdict v);

struct AnisotropicReport {
    Int prime = 0;
    unsigned ord_l = 0;
    bool warning = false;  // ord_p(l) >= 4
};

struct PlanVerification {
    bool congruence_ok = false;
    std::vector<padic::LocalStatus> local_statuses;
    std::vector<Int> control_primes;
    bool coprime_to_odd_divisors = false;
    std::vector<Int> obstruction_ts;  // ascending
    std::vector<AnisotropicReport> anisotropic;
    std::optional<Representation> escape_witness;
    std::optional<Representation> fallback_witness;
    Verdict verdict = Verdict::violated;
    std::vector<std::string> notes;
};

namespace planner {

/// Uniform form a = b = c = m. Rejects m < 3 and n < 0.
ResiduePlan plan_residues_m(Int m, Int n);

/// Pairwise coprime a, b, c >= 5. Rejects violated hypotheses with
/// std::invalid_argument naming the hypothesis.
ResiduePlan plan_residues_abc(Int a, Int b, Int c, Int n);

/// Dispatch on form.is_uniform().
ResiduePlan plan(const FloorForm& form, Int n);

/// Throws std::invalid_argument describing why plan_residues_abc would reject.
void check_abc_hypotheses(Int a, Int b, Int c);

/// Localized problem for the half-integral coset of (form, residues) at l:
/// terms w d^2 x^2 + 2 w d r x, target l - sum w r^2.
padic::LocalProblem localize(const FloorForm& form, const ResidueTriple& residues, Int l, Int p);

/// Same, with the form's l-value for n.
padic::LocalProblem localize_n(const FloorForm& form, Int n, const ResidueTriple& residues, Int p);

/// Primes checked by verify_plan: all p | 2abc (2m for uniform forms).
std::vector<Int> local_primes(const FloorForm& form);

/// The first `count` odd primes not dividing abc.
std::vector<Int> control_primes(const FloorForm& form, std::size_t count = 2);

PlanVerification verify_plan(const ResiduePlan& plan);

/// (sqrt(l), 0, 0) when a0 + b0 + c0 < m. Rejects plans whose l is not a
/// perfect square.
std::optional<Representation> escape_representation(Int m, Int n, const ResiduePlan& plan);

/// { ca b0 + ab c0 mod 8 : b0, c0 in {1, 4} }.
std::set<Int> equation_e_set(Int a, Int b, Int c);

/// 1 when a and b differ mod 8.
int mu_of(Int a, Int b);

}  // namespace planner
}  // namespace floorform

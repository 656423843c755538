#pragma once

#include <string>
#include <vector>

#include "floorform/coset.hpp"
#include "floorform/form.hpp"

namespace floorform {

/// Coefficients indexed 0..n_max of a q-expansion on the l-value scale.
struct ThetaSeries {
    Int n_max = 0;
    std::vector<Int> coefficients;

    bool operator==(const ThetaSeries&) const = default;
};

enum class PlannerMode { m_form, abc_form };

std::string to_string(PlannerMode mode);

struct ObstructionEntry {
    Int n = 0;
    Int l = 0;
    std::string case_label;
    std::vector<Int> ts;  // ascending
    bool escape = false;  // escape witness found and confirmed
};

struct ObstructionReport {
    FloorForm form{1, 1, 1};
    Int n_lo = 0;
    Int n_hi = 0;
    PlannerMode mode = PlannerMode::m_form;
    std::vector<ObstructionEntry> entries;  // only n with a nonempty set
    Int unresolved = 0;                     // entries without an escape
};

namespace theta {

/// r(n) = #{x in Z^3 : Q(x + v) = n} for n = 0..n_max.
ThetaSeries coset_theta_coefficients(const CosetDescriptor& coset, Int n_max);

/// Coefficient at e: sum of r over r = h (mod N/t) with t r^2 = e.
/// Rejects t not dividing N, non-squarefree t, and h outside [0, N/t).
ThetaSeries unary_theta_coefficients(Int N, Int t, Int h, Int n_max);

/// Squarefree divisors of base, ascending.
std::vector<Int> squarefree_divisors(Int base);

/// { squarefree t | base : l = t r^2 }, ascending.
std::vector<Int> square_class_divisors(Int l, Int base);

/// 2^delta abc, or 2^delta m for uniform forms.
Int obstruction_base(const FloorForm& form);

/// square_class_divisors of l_value(form, n, residues) over obstruction_base.
std::vector<Int> obstruction_sets(const FloorForm& form, Int n, const ResidueTriple& residues);

/// Run the planner for each n in [n_lo, n_hi] and collect nonempty sets.
ObstructionReport obstruction_scan(const FloorForm& form, Int n_lo, Int n_hi, PlannerMode mode);

}  // namespace theta
}  // namespace floorform

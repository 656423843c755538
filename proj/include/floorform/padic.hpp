#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "floorform/arith.hpp"

namespace floorform::padic {

/// A place of Q: a rational prime or the real place.
struct Place {
    Int prime = 0;  // 0 encodes the infinite place

    static constexpr Place infinity() { return Place{0}; }
    static constexpr Place at(Int p) { return Place{p}; }
    constexpr bool is_infinite() const { return prime == 0; }
};

/// One coordinate A*x^2 + B*x of a shifted diagonal quadratic.
struct Term {
    Int quadratic;  // A
    Int linear;     // B
};

/// Solve sum_i (A_i x_i^2 + B_i x_i) = target over Z_p.
///
/// `precision` is the working exponent M of the modulus p^M. When unset, a
/// default large enough for the coefficient valuations is chosen.
struct LocalProblem {
    Int p = 2;
    std::vector<Term> terms;
    Int target = 0;
    std::optional<unsigned> precision;
};

enum class LocalMethod { closed_form_lemma, unimodular_split, residue_search };

std::string to_string(LocalMethod m);

struct LocalStatus {
    Int prime = 0;
    bool solvable = false;
    LocalMethod method = LocalMethod::residue_search;
    unsigned precision_used = 0;
    /// Residue witness mod p^precision_used, one entry per term. Present for
    /// residue searches that succeed.
    std::optional<std::vector<Int>> witness;
};

/// Thrown when an explicitly requested precision cannot certify Hensel lifts.
class PrecisionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// u is a square in Z_p^x. Rejects p | u.
bool unit_square_test(Int p, Int u);

/// n = p^(2k) u with u a unit square. Rejects n == 0.
bool zp_square_test(Int p, Int n);

/// Closed-form containment for the single-variable shapes
///   odd p:  p^k eps x^2 + eta x       covers all of Z_p   (k >= 1)
///   p = 2:  2 eps x^2 + 2 eta x       covers 4 Z_2        (k == 1)
///           2^k eps x^2 + 2 eta x     covers 2 Z_2        (k >= 2)
/// Returns whether n lies in the covered set. Rejects non-unit eps, eta.
bool lemma_local(Int p, unsigned k, Int eps, Int eta, Int n);

/// ord_p(4p): 1 for odd p, 3 for p = 2.
unsigned ord_4p(Int p);

/// Lowest precision the problem accepts.
unsigned precision_floor(const LocalProblem& problem);

/// Precision used when the problem leaves it unset.
unsigned default_precision(const LocalProblem& problem);

/// Largest derivative valuation accepted at precision M:
/// (M - ord_p(4p)) / 2 - 1.
int stability_margin(Int p, unsigned precision);

/// Decide local solubility. A residue solution counts only if it is
/// Hensel-stable: some coordinate has ord_p(2 A_i x_i + B_i) within the
/// stability margin.
LocalStatus shifted_quadratic_solvable(const LocalProblem& problem);

/// Values of A x^2 + B x mod p^M attained by some x whose derivative
/// valuation ord_p(2 A x + B) is within the stability margin at M.
/// Entry v is true when v is attained. Used for exhaustive image checks.
std::vector<bool> stable_image(Int p, Int quadratic, Int linear, unsigned precision);

/// Hilbert symbol (a, b)_v in {-1, +1}.
int hilbert_symbol(Int a, Int b, Place v);

/// d1 x^2 + d2 y^2 + d3 z^2 represents zero only trivially over Q_p.
bool ternary_anisotropic(Int p, Int d1, Int d2, Int d3);

}  // namespace floorform::padic

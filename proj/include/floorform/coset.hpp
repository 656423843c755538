#pragma once

#include <array>
#include <optional>
#include <string>

#include "floorform/arith.hpp"
#include "floorform/form.hpp"

namespace floorform {

/// (alpha, beta, gamma) with a0 = alpha^2 mod a, etc.
struct ResidueTriple {
    Int alpha = 0, beta = 0, gamma = 0;
    Int a0 = 0, b0 = 0, c0 = 0;
    bool operator==(const ResidueTriple&) const = default;
};

struct Rational {
    Int num = 0;
    Int den = 1;  // > 0, gcd(num, den) == 1
    bool operator==(const Rational&) const = default;
};

/// Which l-value formula a descriptor or plan uses.
///   general:  l = abc n + bc a0 + ca b0 + ab c0
///   m_form:   l = m n + a0 + b0 + c0           (a == b == c == m)
///   diagonal: plain zero-shift diagonal lattice, no floor form attached
enum class LConvention { general, m_form, diagonal };

/// Lattice scale.
///   delta:          L = 4^delta abc <a,b,c>, shift 2^-delta (alpha/a, ...);
///                   x is constrained mod 2^delta a
///   half_integral:  delta forced to 0 in L and v; x is constrained mod a,
///                   which is exactly the floor-form condition
enum class CosetScale { delta, half_integral };

std::string to_string(LConvention c);
std::string to_string(CosetScale s);

/// Shifted lattice L + v in diagonal form.
///
/// Q(x + v) = sum_i weight_i * (modulus_i * x_i + residue_i)^2 for x in Z^3;
/// gram_diagonal and shift are the same lattice written as <g_i> and v.
/// N, A, h follow the theta normalization with the form's delta regardless
/// of scale.
struct CosetDescriptor {
    int delta = 0;
    LConvention convention = LConvention::general;
    CosetScale scale = CosetScale::delta;
    std::array<Int, 3> gram_diagonal{};
    std::array<Rational, 3> shift{};
    Int N = 1;
    std::array<Int, 3> A{};
    std::array<Int, 3> h{};

    std::array<Int, 3> weight{};
    std::array<Int, 3> modulus{};
    std::array<Int, 3> residue{};

    /// Q(x + v) at lattice point x.
    Int evaluate(const std::array<Int, 3>& x) const;
};

struct CosetWitness {
    std::array<Int, 3> lattice;  // x in Z^3
    std::array<Int, 3> shifted;  // modulus_i * x_i + residue_i
    bool operator==(const CosetWitness&) const = default;
};

namespace coset {

/// 1 when gcd(a, b, c) is odd, else 0.
int delta_of(const FloorForm& form);

/// alpha^2 mod a in [0, a).
Int residue_square(Int alpha, Int a);

/// Fill a0, b0, c0 from alpha, beta, gamma.
ResidueTriple make_residues(const FloorForm& form, Int alpha, Int beta, Int gamma);

/// a0, b0, c0 in range and congruent to the squared residues.
bool residues_valid(const FloorForm& form, const ResidueTriple& r);

/// m_form for uniform forms, general otherwise.
LConvention convention_of(const FloorForm& form);

/// l-value under the form's convention. Rejects invalid residues.
Int l_value(const FloorForm& form, Int n, const ResidueTriple& residues);

/// Same under an explicit convention (m_form requires a uniform form).
Int l_value(const FloorForm& form, Int n, const ResidueTriple& residues, LConvention convention);

CosetDescriptor build_coset(const FloorForm& form, const ResidueTriple& residues,
                            CosetScale scale = CosetScale::delta);

/// Zero-shift diagonal lattice <g1, g2, g3>.
CosetDescriptor diagonal_lattice(const std::array<Int, 3>& gram);

struct FloorToCoset {
    ResidueTriple residues;
    Int l = 0;
};

/// alpha = x mod a etc. and the l-value. Rejects witnesses that do not
/// evaluate to n.
FloorToCoset floor_to_coset(const FloorForm& form, Int n, const Representation& witness);

/// Default enumeration bound: ceil(sqrt(l / min gram)) + 2.
Int default_search_bound(const CosetDescriptor& coset, Int l);

/// A lattice point x with Q(x + v) == l and |x_i| <= search_bound, if any.
/// The first hit in increasing shifted-value order is returned.
std::optional<CosetWitness> coset_represents_global(const CosetDescriptor& coset, Int l,
                                                    std::optional<Int> search_bound = std::nullopt);

}  // namespace coset
}  // namespace floorform

#include "floorform/coset.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace floorform {

std::string to_string(LConvention c)
{
    switch (c) {
    case LConvention::general: return "general";
    case LConvention::m_form: return "m_form";
    case LConvention::diagonal: return "diagonal";
    }
    return "unknown";
}

std::string to_string(CosetScale s)
{
    return s == CosetScale::delta ? "delta" : "half_integral";
}

Int CosetDescriptor::evaluate(const std::array<Int, 3>& x) const
{
    Int total = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        const Int X = arith::checked_add(arith::checked_mul(modulus[i], x[i]), residue[i]);
        total = arith::checked_add(total, arith::checked_mul(weight[i], arith::checked_mul(X, X)));
    }
    return total;
}

namespace coset {

namespace {

Rational reduced(Int num, Int den)
{
    const Int g = std::gcd(num, den);
    return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

// Shifted values X = d x + r with |x| <= bound and w X^2 <= limit, ascending in X.
std::vector<Int> class_values(Int w, Int d, Int r, Int limit, Int bound)
{
    std::vector<Int> out;
    if (limit < 0) return out;
    const Int xmax = arith::isqrt(limit / w);  // |X| <= xmax
    // Smallest X >= -xmax in the class.
    Int X = -xmax + arith::mod(r + xmax, d);
    for (; X <= xmax; X += d) {
        const Int x = (X - r) / d;
        if (x < -bound || x > bound) continue;
        out.push_back(X);
    }
    return out;
}

}  // namespace

int delta_of(const FloorForm& form)
{
    const Int g = std::gcd(std::gcd(form.a(), form.b()), form.c());
    return g % 2 == 1 ? 1 : 0;
}

Int residue_square(Int alpha, Int a)
{
    if (a < 1) throw std::invalid_argument("residue_square requires a >= 1");
    const Int r = arith::mod(alpha, a);
    return static_cast<Int>(static_cast<__int128>(r) * r % a);
}

ResidueTriple make_residues(const FloorForm& form, Int alpha, Int beta, Int gamma)
{
    return {alpha, beta, gamma, residue_square(alpha, form.a()), residue_square(beta, form.b()),
            residue_square(gamma, form.c())};
}

bool residues_valid(const FloorForm& form, const ResidueTriple& r)
{
    return r == make_residues(form, r.alpha, r.beta, r.gamma);
}

LConvention convention_of(const FloorForm& form)
{
    return form.is_uniform() ? LConvention::m_form : LConvention::general;
}

Int l_value(const FloorForm& form, Int n, const ResidueTriple& residues, LConvention convention)
{
    using arith::checked_add;
    using arith::checked_mul;
    if (n < 0) throw std::invalid_argument("l_value requires n >= 0");
    if (!residues_valid(form, residues)) throw std::invalid_argument("l_value: residues inconsistent with form");
    const Int a = form.a(), b = form.b(), c = form.c();
    switch (convention) {
    case LConvention::m_form:
        if (!form.is_uniform()) throw std::invalid_argument("m_form l-value requires a == b == c");
        return checked_add(checked_mul(a, n), residues.a0 + residues.b0 + residues.c0);
    case LConvention::general: {
        Int l = checked_mul(checked_mul(checked_mul(a, b), c), n);
        l = checked_add(l, checked_mul(checked_mul(b, c), residues.a0));
        l = checked_add(l, checked_mul(checked_mul(c, a), residues.b0));
        return checked_add(l, checked_mul(checked_mul(a, b), residues.c0));
    }
    case LConvention::diagonal: break;
    }
    throw std::invalid_argument("l_value: diagonal convention has no l-value");
}

Int l_value(const FloorForm& form, Int n, const ResidueTriple& residues)
{
    return l_value(form, n, residues, convention_of(form));
}

CosetDescriptor build_coset(const FloorForm& form, const ResidueTriple& residues, CosetScale scale)
{
    using arith::checked_mul;
    if (!residues_valid(form, residues)) throw std::invalid_argument("build_coset: residues inconsistent with form");
    const Int a = form.a(), b = form.b(), c = form.c();
    const std::array<Int, 3> d = form.denominators();
    const std::array<Int, 3> res{residues.alpha, residues.beta, residues.gamma};

    CosetDescriptor out;
    out.delta = delta_of(form);
    out.convention = convention_of(form);
    out.scale = scale;
    const Int two_delta = out.delta == 1 ? 2 : 1;
    const Int lattice_two = scale == CosetScale::delta ? two_delta : 1;

    if (out.convention == LConvention::m_form) {
        out.N = checked_mul(two_delta, a);
        for (std::size_t i = 0; i < 3; ++i) {
            out.A[i] = out.N;
            out.h[i] = res[i];
            out.weight[i] = 1;
        }
    } else {
        const Int abc = checked_mul(checked_mul(a, b), c);
        out.N = checked_mul(two_delta, abc);
        const std::array<Int, 3> cofactor{checked_mul(b, c), checked_mul(c, a), checked_mul(a, b)};
        for (std::size_t i = 0; i < 3; ++i) {
            out.A[i] = checked_mul(two_delta, d[i]);
            out.h[i] = checked_mul(cofactor[i], res[i]);
            out.weight[i] = cofactor[i];
        }
    }
    for (std::size_t i = 0; i < 3; ++i) {
        out.modulus[i] = checked_mul(lattice_two, d[i]);
        out.residue[i] = res[i];
        out.gram_diagonal[i] = checked_mul(out.weight[i], checked_mul(out.modulus[i], out.modulus[i]));
        out.shift[i] = reduced(res[i], out.modulus[i]);
    }
    return out;
}

CosetDescriptor diagonal_lattice(const std::array<Int, 3>& gram)
{
    CosetDescriptor out;
    out.convention = LConvention::diagonal;
    out.scale = CosetScale::half_integral;
    out.N = 1;
    for (std::size_t i = 0; i < 3; ++i) {
        if (gram[i] < 1) throw std::invalid_argument("diagonal_lattice requires positive entries");
        out.gram_diagonal[i] = gram[i];
        out.A[i] = gram[i];
        out.weight[i] = gram[i];
        out.modulus[i] = 1;
    }
    return out;
}

FloorToCoset floor_to_coset(const FloorForm& form, Int n, const Representation& witness)
{
    if (form::eval_form(form, witness) != n) throw std::invalid_argument("floor_to_coset: witness does not represent n");
    const auto residues = make_residues(form, arith::mod(witness.x, form.a()), arith::mod(witness.y, form.b()),
                                        arith::mod(witness.z, form.c()));
    return {residues, l_value(form, n, residues)};
}

Int default_search_bound(const CosetDescriptor& coset, Int l)
{
    if (l <= 0) return 2;
    const Int g = *std::min_element(coset.gram_diagonal.begin(), coset.gram_diagonal.end());
    const Int q = (l + g - 1) / g;
    Int r = arith::isqrt(q);
    if (r * r < q) ++r;
    return r + 2;
}

std::optional<CosetWitness> coset_represents_global(const CosetDescriptor& coset, Int l, std::optional<Int> search_bound)
{
    if (l < 0) return std::nullopt;
    const Int bound = search_bound.value_or(default_search_bound(coset, l));
    if (bound < 1) throw std::invalid_argument("coset_represents_global requires search_bound >= 1");
    const auto& w = coset.weight;
    const auto& d = coset.modulus;
    const auto& r = coset.residue;

    const auto xs = class_values(w[0], d[0], r[0], l, bound);
    for (const Int X : xs) {
        const Int after_x = l - w[0] * X * X;
        for (const Int Y : class_values(w[1], d[1], r[1], after_x, bound)) {
            const Int rest = after_x - w[1] * Y * Y;
            if (rest % w[2] != 0) continue;
            const auto s = arith::exact_sqrt(rest / w[2]);
            if (!s) continue;
            for (const Int Z : {-*s, *s}) {
                if (arith::mod(Z - r[2], d[2]) != 0) continue;
                const Int z = (Z - r[2]) / d[2];
                if (z < -bound || z > bound) continue;
                return CosetWitness{{(X - r[0]) / d[0], (Y - r[1]) / d[1], z}, {X, Y, Z}};
            }
        }
    }
    return std::nullopt;
}

}  // namespace coset
}  // namespace floorform

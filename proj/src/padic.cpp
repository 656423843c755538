#include "floorform/padic.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace floorform::padic {

namespace {

using Wide = __int128;

void require_prime(Int p)
{
    if (!arith::is_prime(p)) throw std::invalid_argument("expected a prime, got " + std::to_string(p));
}

// p^e as a modulus; refuses moduli whose squares would not fit in 128 bits.
Int modulus(Int p, unsigned e)
{
    const Int m = arith::ipow(p, e);
    if (m > (Int{1} << 62)) throw std::overflow_error("working modulus p^M too large");
    return m;
}

Int eval_mod(const Term& t, Int x, Int m)
{
    const Wide a = arith::mod(t.quadratic, m);
    const Wide b = arith::mod(t.linear, m);
    const Wide xx = arith::mod(x, m);
    const Wide v = (a * xx % m * xx + b * xx) % m;
    return static_cast<Int>(v);
}

Int derivative_mod(const Term& t, Int x, Int m)
{
    const Wide a = arith::mod(t.quadratic, m);
    const Wide b = arith::mod(t.linear, m);
    const Wide xx = arith::mod(x, m);
    return static_cast<Int>((2 * a % m * xx + b) % m);
}

// ord_p of a residue known modulo p^e; returns e when the residue is zero.
unsigned residue_ord(Int p, Int r, unsigned e)
{
    if (r == 0) return e;
    return std::min(arith::p_adic_ord(p, r), e);
}

Int inverse_mod(Int a, Int m)
{
    Int r0 = m, r1 = arith::mod(a, m);
    Int s0 = 0, s1 = 1;
    while (r1 != 0) {
        const Int q = r0 / r1;
        r0 = std::exchange(r1, r0 - q * r1);
        s0 = std::exchange(s1, s0 - q * s1);
    }
    if (r0 != 1) throw std::invalid_argument("value is not invertible");
    return arith::mod(s0, m);
}

unsigned max_coefficient_ord(const LocalProblem& problem)
{
    unsigned best = 0;
    for (const auto& t : problem.terms) {
        if (t.quadratic != 0) best = std::max(best, arith::p_adic_ord(problem.p, t.quadratic));
        if (t.linear != 0) best = std::max(best, arith::p_adic_ord(problem.p, t.linear));
    }
    return best;
}

// Smallest derivative valuation reachable in one coordinate: x = 0 gives B,
// a unit x gives 2A when B vanishes.
unsigned reachable_derivative_ord(const LocalProblem& problem)
{
    unsigned best = std::numeric_limits<unsigned>::max();
    for (const auto& t : problem.terms) {
        if (t.linear != 0) best = std::min(best, arith::p_adic_ord(problem.p, t.linear));
        if (t.quadratic != 0) best = std::min(best, arith::p_adic_ord(problem.p, 2 * t.quadratic));
    }
    return best == std::numeric_limits<unsigned>::max() ? 0 : best;
}

struct Normalized {
    LocalProblem problem;
    bool content_blocks = false;  // coefficients share more p than the target
};

// Divide out the common p-power of all coefficients when the target allows it.
Normalized normalize(const LocalProblem& in)
{
    Normalized out{in, false};
    unsigned content = std::numeric_limits<unsigned>::max();
    for (const auto& t : in.terms) {
        if (t.quadratic != 0) content = std::min(content, arith::p_adic_ord(in.p, t.quadratic));
        if (t.linear != 0) content = std::min(content, arith::p_adic_ord(in.p, t.linear));
    }
    if (content == std::numeric_limits<unsigned>::max() || content == 0) return out;
    if (in.target != 0 && arith::p_adic_ord(in.p, in.target) < content) {
        out.content_blocks = true;
        return out;
    }
    const Int scale = arith::ipow(in.p, content);
    for (auto& t : out.problem.terms) {
        t.quadratic /= scale;
        t.linear /= scale;
    }
    out.problem.target /= scale;
    return out;
}

std::optional<LocalStatus> lemma_fast_path(const LocalProblem& problem, unsigned precision)
{
    const Int p = problem.p;
    for (const auto& t : problem.terms) {
        if (t.quadratic == 0 || t.linear == 0) continue;
        const unsigned ka = arith::p_adic_ord(p, t.quadratic);
        const unsigned kb = arith::p_adic_ord(p, t.linear);
        bool covered = false;
        if (p != 2 && ka >= 1 && kb == 0) {
            covered = true;
        } else if (p == 2 && ka >= 1 && kb == 1) {
            const Int eps = t.quadratic / arith::ipow(2, ka);
            const Int eta = t.linear / 2;
            covered = lemma_local(2, ka, eps, eta, problem.target);
        }
        if (covered) return LocalStatus{p, true, LocalMethod::closed_form_lemma, precision, std::nullopt};
    }
    return std::nullopt;
}

struct ImageTable {
    // first_preimage[v] = smallest x in [0, m) with q(x) = v mod m, or -1
    std::vector<Int> first_preimage;
    std::vector<Int> values;  // distinct values in order of first appearance
};

ImageTable image_table(const Term& t, Int m)
{
    ImageTable table{std::vector<Int>(static_cast<std::size_t>(m), -1), {}};
    for (Int x = 0; x < m; ++x) {
        const Int v = eval_mod(t, x, m);
        auto& slot = table.first_preimage[static_cast<std::size_t>(v)];
        if (slot < 0) {
            slot = x;
            table.values.push_back(v);
        }
    }
    return table;
}

// Lift x (mod p^(j+1)) to a root of q(x) = rhs modulo p^precision, given
// q(x) = rhs mod p^(2j+1) and ord_p(q'(x)) = j.
Int hensel_lift(const Term& t, Int rhs, Int x, Int p, unsigned j, unsigned precision)
{
    const Int big = modulus(p, precision + 1);
    for (unsigned r = 2 * j + 1; r < precision; ++r) {
        const Int f = arith::mod(eval_mod(t, x, big) - arith::mod(rhs, big), big);
        const Int pr = arith::ipow(p, r);
        if (f % pr != 0) throw std::logic_error("hensel_lift: lost congruence");
        const Int fr = (f / pr) % p;
        if (fr == 0) continue;
        const Int df = derivative_mod(t, x, big);
        const Int dj = (df / arith::ipow(p, j)) % p;
        const Int d = arith::mod(-fr * inverse_mod(dj, p), p);
        x = arith::mod(x + d * arith::ipow(p, r - j), big);
    }
    return arith::mod(x, modulus(p, precision));
}

std::optional<std::vector<Int>> residue_search(const LocalProblem& problem, unsigned precision)
{
    const Int p = problem.p;
    const auto& terms = problem.terms;
    const int margin = stability_margin(p, precision);
    for (int j = 0; j <= margin; ++j) {
        const unsigned uj = static_cast<unsigned>(j);
        const Int m = modulus(p, 2 * uj + 1);
        const Int roots = arith::ipow(p, uj + 1);
        std::vector<ImageTable> images;
        images.reserve(terms.size());
        for (const auto& t : terms) images.push_back(image_table(t, m));

        for (std::size_t i = 0; i < terms.size(); ++i) {
            std::vector<std::size_t> others;
            for (std::size_t k = 0; k < terms.size(); ++k) {
                if (k != i) others.push_back(k);
            }
            for (Int xi = 0; xi < roots; ++xi) {
                const Int d = derivative_mod(terms[i], xi, m);
                if (residue_ord(p, d, 2 * uj + 1) != uj) continue;
                const Int rest = arith::mod(problem.target - eval_mod(terms[i], xi, m), m);

                // Find residues for the other coordinates summing to `rest`.
                std::vector<Int> chosen(terms.size(), 0);
                bool found = false;
                if (others.empty()) {
                    found = rest == 0;
                } else if (others.size() == 1) {
                    const Int pre = images[others[0]].first_preimage[static_cast<std::size_t>(rest)];
                    if (pre >= 0) {
                        chosen[others[0]] = pre;
                        found = true;
                    }
                } else {
                    // Fix all but the last "other" by scanning distinct image values.
                    const std::size_t last = others.back();
                    std::vector<std::size_t> free(others.begin(), others.end() - 1);
                    std::vector<std::size_t> idx(free.size(), 0);
                    for (;;) {
                        Int acc = rest;
                        for (std::size_t f = 0; f < free.size(); ++f) {
                            acc = arith::mod(acc - images[free[f]].values[idx[f]], m);
                        }
                        const Int pre = images[last].first_preimage[static_cast<std::size_t>(acc)];
                        if (pre >= 0) {
                            for (std::size_t f = 0; f < free.size(); ++f) {
                                const Int v = images[free[f]].values[idx[f]];
                                chosen[free[f]] = images[free[f]].first_preimage[static_cast<std::size_t>(v)];
                            }
                            chosen[last] = pre;
                            found = true;
                            break;
                        }
                        // odometer over the free coordinates, last digit fastest
                        std::size_t f = free.size();
                        while (f > 0 && ++idx[f - 1] == images[free[f - 1]].values.size()) {
                            idx[f - 1] = 0;
                            --f;
                        }
                        if (f == 0) break;
                    }
                }
                if (!found) continue;

                Int rhs = problem.target;
                for (std::size_t k : others) {
                    rhs = arith::mod(rhs - eval_mod(terms[k], chosen[k], modulus(p, precision)), modulus(p, precision));
                }
                chosen[i] = hensel_lift(terms[i], rhs, xi, p, uj, precision);
                return chosen;
            }
        }
    }
    return std::nullopt;
}

}  // namespace

std::string to_string(LocalMethod m)
{
    switch (m) {
    case LocalMethod::closed_form_lemma:
        return "closed_form_lemma";
    case LocalMethod::unimodular_split:
        return "unimodular_split";
    case LocalMethod::residue_search:
        return "residue_search";
    }
    return "unknown";
}

unsigned ord_4p(Int p) { return p == 2 ? 3u : 1u; }

bool unit_square_test(Int p, Int u)
{
    require_prime(p);
    if (u % p == 0) throw std::invalid_argument("unit_square_test: u is not a p-adic unit");
    if (p == 2) return arith::mod(u, 8) == 1;
    return arith::legendre_symbol(u, p) == 1;
}

bool zp_square_test(Int p, Int n)
{
    require_prime(p);
    if (n == 0) throw std::invalid_argument("zp_square_test: n must be nonzero");
    const unsigned k = arith::p_adic_ord(p, n);
    if (k % 2 != 0) return false;
    return unit_square_test(p, n / arith::ipow(p, k));
}

bool lemma_local(Int p, unsigned k, Int eps, Int eta, Int n)
{
    require_prime(p);
    if (eps % p == 0 || eta % p == 0) throw std::invalid_argument("lemma_local: eps and eta must be units");
    if (k < 1) throw std::invalid_argument("lemma_local: k must be at least 1");
    if (p != 2) return true;
    return k == 1 ? n % 4 == 0 : n % 2 == 0;
}

unsigned precision_floor(const LocalProblem& problem)
{
    return ord_4p(problem.p) + max_coefficient_ord(problem) + 2;
}

unsigned default_precision(const LocalProblem& problem)
{
    const unsigned o = ord_4p(problem.p);
    const unsigned base = 2 * o + 6;
    const unsigned by_derivative = o + 2 * reachable_derivative_ord(problem) + 4;
    return std::max({base, precision_floor(problem), by_derivative});
}

int stability_margin(Int p, unsigned precision)
{
    return (static_cast<int>(precision) - static_cast<int>(ord_4p(p))) / 2 - 1;
}

LocalStatus shifted_quadratic_solvable(const LocalProblem& problem)
{
    require_prime(problem.p);
    const Int p = problem.p;
    if (problem.precision && *problem.precision < precision_floor(problem)) {
        throw PrecisionError("precision " + std::to_string(*problem.precision) + " below required floor " +
                             std::to_string(precision_floor(problem)) + " at p=" + std::to_string(p));
    }

    const Normalized norm = normalize(problem);
    const LocalProblem& work = norm.problem;
    const unsigned precision = problem.precision.value_or(default_precision(work));
    if (norm.content_blocks) return LocalStatus{p, false, LocalMethod::residue_search, precision, std::nullopt};
    if (work.target == 0) {
        return LocalStatus{p, true, LocalMethod::residue_search, precision, std::vector<Int>(work.terms.size(), 0)};
    }

    if (auto fast = lemma_fast_path(work, precision)) return *fast;

    if (p != 2) {
        const auto units = std::count_if(work.terms.begin(), work.terms.end(),
                                         [p](const Term& t) { return t.quadratic % p != 0; });
        if (units >= 3) return LocalStatus{p, true, LocalMethod::unimodular_split, precision, std::nullopt};
    }

    auto witness = residue_search(work, precision);
    LocalStatus status{p, witness.has_value(), LocalMethod::residue_search, precision, std::move(witness)};
    return status;
}

std::vector<bool> stable_image(Int p, Int quadratic, Int linear, unsigned precision)
{
    require_prime(p);
    const Int m = modulus(p, precision);
    const int margin = stability_margin(p, precision);
    const Term t{quadratic, linear};
    std::vector<bool> seen(static_cast<std::size_t>(m), false);
    for (Int x = 0; x < m; ++x) {
        const Int d = derivative_mod(t, x, m);
        if (static_cast<int>(residue_ord(p, d, precision)) > margin) continue;
        seen[static_cast<std::size_t>(eval_mod(t, x, m))] = true;
    }
    return seen;
}

int hilbert_symbol(Int a, Int b, Place v)
{
    if (a == 0 || b == 0) throw std::invalid_argument("hilbert_symbol: arguments must be nonzero");
    if (v.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;
    const Int p = v.prime;
    require_prime(p);
    const unsigned alpha = arith::p_adic_ord(p, a);
    const unsigned beta = arith::p_adic_ord(p, b);
    const Int u = a / arith::ipow(p, alpha);
    const Int w = b / arith::ipow(p, beta);
    if (p == 2) {
        const Int u8 = arith::mod(u, 8);
        const Int w8 = arith::mod(w, 8);
        const int eps_u = static_cast<int>(((u8 - 1) / 2) % 2);
        const int eps_w = static_cast<int>(((w8 - 1) / 2) % 2);
        const int omega_u = static_cast<int>(((u8 * u8 - 1) / 8) % 2);
        const int omega_w = static_cast<int>(((w8 * w8 - 1) / 8) % 2);
        const int e = eps_u * eps_w + static_cast<int>(alpha) * omega_w + static_cast<int>(beta) * omega_u;
        return e % 2 == 0 ? 1 : -1;
    }
    int sign = 1;
    if ((alpha * beta) % 2 == 1 && ((p - 1) / 2) % 2 == 1) sign = -sign;
    if (beta % 2 == 1) sign *= arith::legendre_symbol(u, p);
    if (alpha % 2 == 1) sign *= arith::legendre_symbol(w, p);
    return sign;
}

bool ternary_anisotropic(Int p, Int d1, Int d2, Int d3)
{
    if (d1 == 0 || d2 == 0 || d3 == 0) throw std::invalid_argument("ternary_anisotropic: coefficients must be nonzero");
    // <d1,d2,d3> is isotropic iff <-d1/d3, -d2/d3> represents 1, i.e. the
    // symbol (-d1 d3, -d2 d3) is trivial.
    const Int x = -arith::checked_mul(d1, d3);
    const Int y = -arith::checked_mul(d2, d3);
    return hilbert_symbol(x, y, Place::at(p)) == -1;
}

}  // namespace floorform::padic

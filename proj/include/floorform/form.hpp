#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "floorform/arith.hpp"

namespace floorform {

/// floor(x^2/a) + floor(y^2/b) + floor(z^2/c) with a, b, c >= 1.
class FloorForm {
public:
    FloorForm(Int a, Int b, Int c);

    Int a() const { return d_[0]; }
    Int b() const { return d_[1]; }
    Int c() const { return d_[2]; }
    const std::array<Int, 3>& denominators() const { return d_; }

    /// a == b == c.
    bool is_uniform() const { return d_[0] == d_[1] && d_[1] == d_[2]; }

    std::string to_string() const;

    bool operator==(const FloorForm&) const = default;

private:
    std::array<Int, 3> d_;
};

struct Representation {
    Int x = 0, y = 0, z = 0;
    bool operator==(const Representation&) const = default;
};

/// Inclusive n-range scan outcome.
struct ScanReport {
    FloorForm form;
    Int n_lo = 0;
    Int n_hi = 0;
    std::vector<Int> exceptions;  // ascending, duplicate-free
    Int wall_time_ms = 0;
    std::string tool_version;
};

inline constexpr Int kDefaultScanCap = 10'000'000;

struct ScanOptions {
    unsigned workers = 1;
    Int cap = kDefaultScanCap;  // largest admissible n_hi
    Int chunk = 4096;           // n-values per work unit
};

namespace form {

Int eval_form(const FloorForm& form, Int x, Int y, Int z);
inline Int eval_form(const FloorForm& form, const Representation& r) { return eval_form(form, r.x, r.y, r.z); }

/// Nonnegative witness with eval_form = n, smallest when ordered by (z, y, x).
std::optional<Representation> search_representation(const FloorForm& form, Int n);

/// Number of signed triples (x, y, z) in Z^3 with eval_form = n.
Int representation_count(const FloorForm& form, Int n);

/// All n in [n_lo, n_hi] without a representation. Result is independent of
/// options.workers and options.chunk.
ScanReport scan_range(const FloorForm& form, Int n_lo, Int n_hi, const ScanOptions& options = {});

struct Reduction {
    FloorForm reduced;
    std::array<Int, 3> multipliers;  // a = s(a) * t_a^2, etc.
};

/// Replace each denominator by its squarefree part; floor((t x)^2 / a) equals
/// floor(x^2 / s(a)) so a witness for the reduced form lifts by x -> t_a x.
Reduction squarefree_reduce(const FloorForm& form);

/// Witness for `reduction.reduced` mapped back to the original form.
Representation lift_reduced(const Reduction& reduction, const Representation& r);

/// Precomputed searcher for repeated queries against one form up to n_max.
/// Holds a sorted table of attainable floor(z^2/c) values; the residual after
/// fixing x and y is located by binary search.
class Searcher {
public:
    Searcher(const FloorForm& form, Int n_max);

    std::optional<Representation> find(Int n) const;
    Int n_max() const { return n_max_; }

private:
    FloorForm form_;
    Int n_max_;
    std::vector<Int> x_values_;
    std::vector<Int> y_values_;
    std::vector<Int> z_values_;
};

}  // namespace form
}  // namespace floorform

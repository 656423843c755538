#include "floorform/form.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "floorform/version.hpp"

namespace floorform {

FloorForm::FloorForm(Int a, Int b, Int c) : d_{a, b, c}
{
    if (a < 1 || b < 1 || c < 1) throw std::invalid_argument("floor form denominators must be >= 1");
}

std::string FloorForm::to_string() const
{
    return std::to_string(d_[0]) + "," + std::to_string(d_[1]) + "," + std::to_string(d_[2]);
}

namespace form {

namespace {

// floor(x^2 / d) for every x >= 0 with floor(x^2 / d) <= n_max; nondecreasing.
std::vector<Int> floor_square_table(Int d, Int n_max)
{
    const Int limit = arith::checked_mul(d, arith::checked_add(n_max, 1));  // x^2 < d (n_max + 1)
    std::vector<Int> out;
    for (Int x = 0; x * x < limit; ++x) out.push_back(x * x / d);
    return out;
}

// Number of z >= 0 with floor(z^2 / d) == r.
Int floor_square_preimages(Int d, Int r)
{
    const Int lo = arith::checked_mul(d, r);                              // z^2 >= d r
    const Int hi = arith::checked_sub(arith::checked_mul(d, r + 1), 1);   // z^2 <= d (r+1) - 1
    Int zlo = arith::isqrt(lo);
    if (zlo * zlo < lo) ++zlo;
    const Int zhi = arith::isqrt(hi);
    return zhi >= zlo ? zhi - zlo + 1 : 0;
}

}  // namespace

Int eval_form(const FloorForm& form, Int x, Int y, Int z)
{
    const auto& d = form.denominators();
    Int total = 0;
    for (int i = 0; i < 3; ++i) {
        const Int v = i == 0 ? x : (i == 1 ? y : z);
        total = arith::checked_add(total, arith::checked_mul(v, v) / d[static_cast<std::size_t>(i)]);
    }
    return total;
}

Searcher::Searcher(const FloorForm& form, Int n_max)
    : form_(form),
      n_max_(n_max),
      x_values_(floor_square_table(form.a(), n_max)),
      y_values_(floor_square_table(form.b(), n_max)),
      z_values_(floor_square_table(form.c(), n_max))
{
    if (n_max < 0) throw std::invalid_argument("Searcher requires n_max >= 0");
}

std::optional<Representation> Searcher::find(Int n) const
{
    if (n < 0) return std::nullopt;
    if (n > n_max_) throw std::out_of_range("Searcher::find: n exceeds table bound");
    // Minimal (z, y, x) in lexicographic order: x is determined last.
    for (std::size_t z = 0; z < z_values_.size() && z_values_[z] <= n; ++z) {
        const Int after_z = n - z_values_[z];
        for (std::size_t y = 0; y < y_values_.size() && y_values_[y] <= after_z; ++y) {
            const Int residual = after_z - y_values_[y];
            const auto it = std::lower_bound(x_values_.begin(), x_values_.end(), residual);
            if (it != x_values_.end() && *it == residual) {
                return Representation{static_cast<Int>(it - x_values_.begin()), static_cast<Int>(y),
                                      static_cast<Int>(z)};
            }
        }
    }
    return std::nullopt;
}

std::optional<Representation> search_representation(const FloorForm& form, Int n)
{
    if (n < 0) return std::nullopt;
    return Searcher(form, n).find(n);
}

Int representation_count(const FloorForm& form, Int n)
{
    if (n < 0) return 0;
    const auto xs = floor_square_table(form.a(), n);
    const auto ys = floor_square_table(form.b(), n);
    Int count = 0;
    for (std::size_t x = 0; x < xs.size() && xs[x] <= n; ++x) {
        const Int wx = x == 0 ? 1 : 2;
        for (std::size_t y = 0; y < ys.size() && xs[x] + ys[y] <= n; ++y) {
            const Int wy = y == 0 ? 1 : 2;
            const Int r = n - xs[x] - ys[y];
            const Int zs = floor_square_preimages(form.c(), r);
            if (zs == 0) continue;
            // z = 0 is among the preimages exactly when r == 0.
            const Int signed_z = r == 0 ? 2 * zs - 1 : 2 * zs;
            count = arith::checked_add(count, wx * wy * signed_z);
        }
    }
    return count;
}

ScanReport scan_range(const FloorForm& form, Int n_lo, Int n_hi, const ScanOptions& options)
{
    if (n_lo < 0 || n_lo > n_hi) throw std::invalid_argument("scan_range requires 0 <= n_lo <= n_hi");
    if (n_hi > options.cap) {
        throw std::invalid_argument("scan_range: n_hi " + std::to_string(n_hi) + " exceeds cap " +
                                    std::to_string(options.cap));
    }
    const auto start = std::chrono::steady_clock::now();
    const Searcher searcher(form, n_hi);

    const Int chunk = std::max<Int>(1, options.chunk);
    const Int chunks = (n_hi - n_lo) / chunk + 1;
    std::vector<std::vector<Int>> per_chunk(static_cast<std::size_t>(chunks));
    std::atomic<Int> next{0};

    auto work = [&] {
        for (Int k = next.fetch_add(1); k < chunks; k = next.fetch_add(1)) {
            const Int lo = n_lo + k * chunk;
            const Int hi = std::min(n_hi, lo + chunk - 1);
            auto& out = per_chunk[static_cast<std::size_t>(k)];
            for (Int n = lo; n <= hi; ++n) {
                if (!searcher.find(n)) out.push_back(n);
            }
        }
    };

    const unsigned workers = std::max(1u, options.workers);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    ScanReport report{form, n_lo, n_hi, {}, 0, std::string(kToolVersion)};
    for (auto& part : per_chunk) report.exceptions.insert(report.exceptions.end(), part.begin(), part.end());
    std::sort(report.exceptions.begin(), report.exceptions.end());
    report.exceptions.erase(std::unique(report.exceptions.begin(), report.exceptions.end()), report.exceptions.end());
    report.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - start)
                              .count();
    return report;
}

Reduction squarefree_reduce(const FloorForm& form)
{
    const auto sa = arith::squarefree_part(form.a());
    const auto sb = arith::squarefree_part(form.b());
    const auto sc = arith::squarefree_part(form.c());
    return {FloorForm(sa.squarefree, sb.squarefree, sc.squarefree), {sa.root, sb.root, sc.root}};
}

Representation lift_reduced(const Reduction& reduction, const Representation& r)
{
    return {arith::checked_mul(r.x, reduction.multipliers[0]), arith::checked_mul(r.y, reduction.multipliers[1]),
            arith::checked_mul(r.z, reduction.multipliers[2])};
}

}  // namespace form
}  // namespace floorform

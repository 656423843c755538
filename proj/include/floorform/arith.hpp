#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace floorform {

/// Exact integer used throughout. Every arithmetic path that can grow goes
/// through the checked helpers below, which throw std::overflow_error instead
/// of wrapping.
using Int = std::int64_t;

namespace arith {

Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);

/// Floor-normalized remainder in [0, m).
Int mod(Int a, Int m);

/// b^e mod m with 128-bit intermediates; m >= 1, e >= 0.
Int pow_mod(Int b, Int e, Int m);

/// p^k, throwing on overflow.
Int ipow(Int p, unsigned k);

bool is_prime(Int n);

/// Primes up to `bound` by an Eratosthenes sieve.
std::vector<Int> primes_up_to(Int bound);

/// Prime factorization as (prime, exponent) pairs in increasing prime order.
/// Trial division against a cached sieve (default bound 10^6); any cofactor
/// left over after the sieve is tested directly.
std::vector<std::pair<Int, unsigned>> factorize(Int n);

/// Distinct prime divisors of |n|, n != 0.
std::vector<Int> prime_divisors(Int n);

struct SquarefreeSplit {
    Int squarefree;  // s
    Int root;        // t, with s * t^2 == a
    bool operator==(const SquarefreeSplit&) const = default;
};

/// a = s * t^2 with s squarefree. Rejects a <= 0.
SquarefreeSplit squarefree_part(Int a);

bool is_squarefree(Int n);

/// Exponent of p in n. Rejects n == 0 and p < 2.
unsigned p_adic_ord(Int p, Int n);

/// floor(sqrt(n)) by integer Newton iteration, n >= 0.
Int isqrt(Int n);

/// r with r*r == n when n is a perfect square.
std::optional<Int> exact_sqrt(Int n);

/// t | n and n / t is a perfect square. Rejects non-squarefree t.
bool square_class_test(Int n, Int t);

/// Legendre symbol (a / p) for an odd prime p, computed by quadratic
/// reciprocity. Rejects p == 2 and non-primes.
int legendre_symbol(Int a, Int p);

/// Jacobi symbol (a / n) for odd n >= 1.
int jacobi_symbol(Int a, Int n);

}  // namespace arith
}  // namespace floorform

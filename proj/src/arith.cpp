#include "floorform/arith.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace floorform::arith {

namespace {

constexpr Int kSieveBound = 1'000'000;

const std::vector<Int>& cached_primes()
{
    static const std::vector<Int> primes = primes_up_to(kSieveBound);
    return primes;
}

}  // namespace

Int checked_add(Int a, Int b)
{
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
    return r;
}

Int checked_sub(Int a, Int b)
{
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in subtraction");
    return r;
}

Int checked_mul(Int a, Int b)
{
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
    return r;
}

Int mod(Int a, Int m)
{
    if (m <= 0) throw std::invalid_argument("modulus must be positive");
    Int r = a % m;
    return r < 0 ? r + m : r;
}

Int pow_mod(Int b, Int e, Int m)
{
    if (m <= 0) throw std::invalid_argument("modulus must be positive");
    if (e < 0) throw std::invalid_argument("negative exponent");
    using Wide = __int128;
    Wide base = mod(b, m);
    Wide result = 1 % m;
    while (e > 0) {
        if (e & 1) result = result * base % m;
        base = base * base % m;
        e >>= 1;
    }
    return static_cast<Int>(result);
}

Int ipow(Int p, unsigned k)
{
    Int r = 1;
    for (unsigned i = 0; i < k; ++i) r = checked_mul(r, p);
    return r;
}

bool is_prime(Int n)
{
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (Int d = 5; d <= n / d; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

std::vector<Int> primes_up_to(Int bound)
{
    std::vector<Int> out;
    if (bound < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
    for (Int i = 2; i <= bound; ++i) {
        if (composite[static_cast<std::size_t>(i)]) continue;
        out.push_back(i);
        for (Int j = i * i; j <= bound; j += i) composite[static_cast<std::size_t>(j)] = true;
    }
    return out;
}

std::vector<std::pair<Int, unsigned>> factorize(Int n)
{
    if (n == 0) throw std::invalid_argument("cannot factor zero");
    if (n == std::numeric_limits<Int>::min()) throw std::overflow_error("cannot factor INT64_MIN");
    n = n < 0 ? -n : n;
    std::vector<std::pair<Int, unsigned>> out;
    for (Int p : cached_primes()) {
        if (p > n / p) break;
        if (n % p != 0) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) {
        // Cofactor beyond the sieve: finish by plain trial division.
        Int d = kSieveBound + 1;
        while (d <= n / d) {
            if (n % d == 0) {
                unsigned e = 0;
                while (n % d == 0) {
                    n /= d;
                    ++e;
                }
                out.emplace_back(d, e);
            }
            ++d;
        }
        if (n > 1) out.emplace_back(n, 1u);
    }
    return out;
}

std::vector<Int> prime_divisors(Int n)
{
    std::vector<Int> out;
    for (const auto& [p, e] : factorize(n)) out.push_back(p);
    return out;
}

SquarefreeSplit squarefree_part(Int a)
{
    if (a <= 0) throw std::invalid_argument("squarefree_part requires a >= 1, got " + std::to_string(a));
    Int s = 1;
    Int t = 1;
    for (const auto& [p, e] : factorize(a)) {
        if (e % 2 == 1) s *= p;
        t *= ipow(p, e / 2);
    }
    return {s, t};
}

bool is_squarefree(Int n)
{
    if (n <= 0) return false;
    for (const auto& [p, e] : factorize(n)) {
        if (e > 1) return false;
    }
    return true;
}

unsigned p_adic_ord(Int p, Int n)
{
    if (p < 2) throw std::invalid_argument("p_adic_ord requires p >= 2");
    if (n == 0) throw std::invalid_argument("p_adic_ord(0) is infinite");
    unsigned k = 0;
    while (n % p == 0) {
        n /= p;
        ++k;
    }
    return k;
}

Int isqrt(Int n)
{
    if (n < 0) throw std::invalid_argument("isqrt of negative number");
    if (n < 2) return n;
    // Newton from above: x_{k+1} = (x_k + n / x_k) / 2 decreases to floor(sqrt(n)).
    Int x = n;
    Int y = x / 2 + x % 2;
    while (y < x) {
        x = y;
        y = (x + n / x) / 2;
    }
    return x;
}

std::optional<Int> exact_sqrt(Int n)
{
    if (n < 0) return std::nullopt;
    Int r = isqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

bool square_class_test(Int n, Int t)
{
    if (!is_squarefree(t)) {
        throw std::invalid_argument("square_class_test requires squarefree t, got " + std::to_string(t));
    }
    if (n % t != 0) return false;
    return exact_sqrt(n / t).has_value();
}

int jacobi_symbol(Int a, Int n)
{
    if (n <= 0 || n % 2 == 0) throw std::invalid_argument("jacobi_symbol requires odd n >= 1");
    a = mod(a, n);
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const Int r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

int legendre_symbol(Int a, Int p)
{
    if (p == 2) throw std::invalid_argument("legendre_symbol is undefined for p = 2");
    if (!is_prime(p)) throw std::invalid_argument("legendre_symbol requires an odd prime, got " + std::to_string(p));
    return jacobi_symbol(a, p);
}

}  // namespace floorform::arith

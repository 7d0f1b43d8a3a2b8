#ifndef BPU_INTEGERS_HPP
#define BPU_INTEGERS_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace bpu {

// All arithmetic in this library is exact: arbitrary-precision integers and
// rationals. Intermediate normal-form computations overflow fixed-width
// integers even for small inputs, so no fixed-width arithmetic appears
// anywhere below this header.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }
inline Int abs(const Int& a) { return boost::multiprecision::abs(a); }

/// Floor division (plain / truncates toward zero).
inline Int floor_div(const Int& a, const Int& b)
{
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

inline Int mod_floor(const Int& a, const Int& b)
{
    return a - floor_div(a, b) * b;
}

/// Binomial coefficient; zero when k < 0 or k > a (a may be any integer >= 0).
inline Int binomial(const Int& a, long k)
{
    if (k < 0 || a < 0 || a < k)
        return 0;
    Int num = 1, den = 1;
    for (long i = 0; i < k; ++i) {
        num *= a - i;
        den *= i + 1;
    }
    return num / den;
}

/// Largest power of p dividing x (x != 0); p_part(12, 2) == 4.
inline Int p_part(Int x, const Int& p)
{
    if (x == 0)
        throw std::invalid_argument("p_part of zero");
    x = abs(x);
    Int r = 1;
    while (x % p == 0) {
        r *= p;
        x /= p;
    }
    return r;
}

inline bool is_prime(const Int& p)
{
    if (p < 2)
        return false;
    for (Int d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

inline std::string to_string(const Int& x) { return x.str(); }

} // namespace bpu

#endif

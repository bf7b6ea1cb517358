#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <random>
#include <string>

namespace scrolls {

/// Exact rational number. mpq_class keeps the value canonical (positive
/// denominator, coprime parts) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Bit size of the larger of numerator and denominator.
inline std::size_t bit_size(const Rational& q) {
    std::size_t a = mpz_sizeinbase(q.get_num_mpz_t(), 2);
    std::size_t b = mpz_sizeinbase(q.get_den_mpz_t(), 2);
    return a > b ? a : b;
}

/// Random rational with numerator in [-bound, bound] and denominator in [1, bound].
template <class Rng>
Rational random_rational(Rng& rng, long bound = 100) {
    std::uniform_int_distribution<long> num(-bound, bound);
    std::uniform_int_distribution<long> den(1, bound);
    return make_rational(num(rng), den(rng));
}

/// Random nonzero integer in [-bound, bound].
template <class Rng>
long random_nonzero_int(Rng& rng, long bound) {
    std::uniform_int_distribution<long> d(-bound, bound - 1);
    long v = d(rng);
    return v >= 0 ? v + 1 : v;
}

} // namespace scrolls

#pragma once

#include "errors.hpp"
#include "multipoly.hpp"
#include "qmatrix.hpp"
#include "rational.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace scrolls {

/// Dense univariate polynomial over Q, coefficient of s^i at index i.
/// The zero polynomial is the empty vector.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    /// Reads a MultiPoly in (at most) one occurring variable.
    static UniPoly from_multi(const MultiPoly& p, std::size_t var) {
        std::vector<Rational> c;
        for (const auto& [m, coef] : p.terms()) {
            for (std::size_t i = 0; i < m.size(); ++i)
                if (i != var && m[i] != 0) throw InvalidInput("UniPoly::from_multi: polynomial is not univariate");
            std::size_t e = m.empty() ? 0 : m[var];
            if (c.size() <= e) c.resize(e + 1, Rational(0));
            c[e] += coef;
        }
        return UniPoly(std::move(c));
    }

    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& leading() const { return c_.back(); }

    bool operator==(const UniPoly&) const = default;

    Rational evaluate(const Rational& s) const {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * s + *it;
        return acc;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Rational> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
        return UniPoly(std::move(d));
    }

    UniPoly monic() const {
        if (is_zero()) return {};
        std::vector<Rational> m = c_;
        Rational lc = m.back();
        for (auto& v : m) v /= lc;
        return UniPoly(std::move(m));
    }

    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return UniPoly(std::move(r));
    }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(r));
    }

    /// Quotient and remainder; throws on division by zero.
    static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
        if (b.is_zero()) throw InvalidInput("UniPoly::divmod: division by zero");
        std::vector<Rational> r = a.c_;
        if (a.degree() < b.degree()) return {UniPoly(), a};
        std::vector<Rational> q(r.size() - b.c_.size() + 1, Rational(0));
        for (std::size_t i = q.size(); i-- > 0;) {
            Rational f = r[i + b.c_.size() - 1] / b.leading();
            q[i] = f;
            if (f == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] -= f * b.c_[j];
        }
        return {UniPoly(std::move(q)), UniPoly(std::move(r))};
    }

    std::string to_string(const std::string& var = "s") const {
        if (is_zero()) return "0";
        VarsPtr vars = make_vars({var});
        MultiPoly p(vars);
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) p += MultiPoly::monomial(vars, {static_cast<std::uint32_t>(i)}, c_[i]);
        return p.to_string();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

/// Monic greatest common divisor (zero if both are zero).
inline UniPoly gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = UniPoly::divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline UniPoly squarefree_part(const UniPoly& p) {
    if (p.degree() <= 0) return p.monic();
    return UniPoly::divmod(p, gcd(p, p.derivative())).first.monic();
}

/// Characteristic polynomial det(s I - A) by Faddeev-LeVerrier.
inline UniPoly characteristic_polynomial(const QMatrix& a) {
    if (a.rows() != a.cols()) throw InvalidInput("characteristic_polynomial: matrix is not square");
    const std::size_t n = a.rows();
    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = 1;
    QMatrix m(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        QMatrix am = a * m;
        for (std::size_t i = 0; i < n; ++i) am(i, i) += c[n - k + 1];
        m = am;
        QMatrix prod = a * m;
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += prod(i, i);
        c[n - k] = -tr / static_cast<long>(k);
    }
    return UniPoly(std::move(c));
}

namespace detail {

/// Complex roots of p by Durand-Kerner in double precision.
inline std::vector<std::complex<double>> approximate_roots(const UniPoly& p) {
    const int n = p.degree();
    std::vector<std::complex<double>> roots;
    if (n <= 0) return roots;
    std::vector<std::complex<double>> c(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) c[static_cast<std::size_t>(i)] = Rational(p.coeffs()[static_cast<std::size_t>(i)] / p.leading()).get_d();
    auto eval = [&](std::complex<double> z) {
        std::complex<double> acc = 0;
        for (int i = n; i >= 0; --i) acc = acc * z + c[static_cast<std::size_t>(i)];
        return acc;
    };
    double radius = 1;
    for (int i = 0; i < n; ++i) radius = std::max(radius, 1 + std::abs(c[static_cast<std::size_t>(i)]));
    const std::complex<double> seed(0.4, 0.9);
    for (int i = 0; i < n; ++i) roots.push_back(radius * std::pow(seed, i));
    for (int iter = 0; iter < 2000; ++iter) {
        double delta = 0;
        for (int i = 0; i < n; ++i) {
            std::complex<double> denom = 1;
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= roots[static_cast<std::size_t>(i)] - roots[static_cast<std::size_t>(j)];
            if (std::abs(denom) == 0) denom = 1e-12;
            std::complex<double> step = eval(roots[static_cast<std::size_t>(i)]) / denom;
            roots[static_cast<std::size_t>(i)] -= step;
            delta = std::max(delta, std::abs(step) / std::max(1.0, std::abs(roots[static_cast<std::size_t>(i)])));
        }
        if (delta < 1e-15) break;
    }
    return roots;
}

/// Newton refinement of a real root of a squarefree p in multiprecision.
inline mpf_class refine_root(const UniPoly& p, double start, unsigned bits) {
    std::vector<mpf_class> c, d;
    for (const auto& v : p.coeffs()) c.emplace_back(v, bits);
    UniPoly dp = p.derivative();
    for (const auto& v : dp.coeffs()) d.emplace_back(v, bits);
    auto eval = [&](const std::vector<mpf_class>& k, const mpf_class& z) {
        mpf_class acc(0, bits);
        for (auto it = k.rbegin(); it != k.rend(); ++it) acc = acc * z + *it;
        return acc;
    };
    mpf_class z(start, bits);
    for (int iter = 0; iter < 200; ++iter) {
        mpf_class dv = eval(d, z);
        if (dv == 0) break;
        mpf_class step = eval(c, z) / dv;
        z -= step;
        if (step == 0) break;
        mpf_class rel = abs(step) / (abs(z) + 1);
        if (rel < mpf_class(std::ldexp(1.0, -static_cast<int>(bits) + 8), bits)) break;
    }
    return z;
}

} // namespace detail

/// Exact rational roots of p (distinct, ascending). A rational root a/b of the
/// primitive integer polynomial has b dividing its leading coefficient, so
/// each numerically located real root is rounded against that denominator and
/// confirmed by exact evaluation.
inline std::vector<Rational> rational_roots(const UniPoly& p) {
    std::vector<Rational> out;
    if (p.degree() <= 0) return out;
    UniPoly sq = squarefree_part(p);
    Integer den = 1;
    for (const auto& v : sq.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    Integer lead = Rational(sq.leading() * den).get_num();
    if (lead < 0) lead = -lead;
    if (sq.evaluate(0) == 0) out.emplace_back(0);
    std::size_t bits = 128;
    for (const auto& v : sq.coeffs()) bits = std::max(bits, 4 * bit_size(v) + 64);
    for (const auto& z : detail::approximate_roots(sq)) {
        if (std::abs(z.imag()) > 1e-6 * std::max(1.0, std::abs(z))) continue;
        mpf_class r = detail::refine_root(sq, z.real(), static_cast<unsigned>(bits));
        mpf_class scaled = r * mpf_class(lead, static_cast<unsigned>(bits));
        mpf_class rounded = floor(scaled + mpf_class(0.5));
        Rational cand(Integer(rounded), lead);
        cand.canonicalize();
        if (sq.evaluate(cand) == 0 && std::find(out.begin(), out.end(), cand) == out.end()) out.push_back(cand);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace scrolls

#pragma once

#include "errors.hpp"
#include "rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace scrolls {

using VarList = std::vector<std::string>;
using VarsPtr = std::shared_ptr<const VarList>;

inline VarsPtr make_vars(VarList names) { return std::make_shared<const VarList>(std::move(names)); }

inline bool same_vars(const VarsPtr& a, const VarsPtr& b) { return a == b || *a == *b; }

/// Exponent vector; length equals the number of ring variables.
using Monomial = std::vector<std::uint32_t>;

inline unsigned total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0u); }

/// Graded lexicographic order: total degree first, then lexicographic with
/// the first variable largest.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        unsigned da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return a < b;
    }
};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// The term map never holds zero coefficients, so two polynomials over the same
/// variable list are equal iff their term maps are equal.
class MultiPoly {
public:
    using Terms = std::map<Monomial, Rational, GrlexLess>;

    MultiPoly() : vars_(make_vars({})) {}
    explicit MultiPoly(VarsPtr vars) : vars_(std::move(vars)) {}

    static MultiPoly constant(VarsPtr vars, const Rational& c) {
        MultiPoly p(std::move(vars));
        if (c != 0) p.terms_.emplace(Monomial(p.nvars(), 0), c);
        return p;
    }

    static MultiPoly variable(VarsPtr vars, const std::string& name) {
        MultiPoly p(std::move(vars));
        Monomial m(p.nvars(), 0);
        m[p.index_of(name)] = 1;
        p.terms_.emplace(std::move(m), Rational(1));
        return p;
    }

    static MultiPoly monomial(VarsPtr vars, Monomial m, const Rational& c) {
        MultiPoly p(std::move(vars));
        if (m.size() != p.nvars()) throw InvalidInput("monomial length does not match variable count");
        if (c != 0) p.terms_.emplace(std::move(m), c);
        return p;
    }

    const VarsPtr& vars() const { return vars_; }
    std::size_t nvars() const { return vars_->size(); }
    const Terms& terms() const { return terms_; }

    std::size_t index_of(const std::string& name) const {
        auto it = std::find(vars_->begin(), vars_->end(), name);
        if (it == vars_->end()) throw InvalidInput("unknown variable '" + name + "'");
        return static_cast<std::size_t>(it - vars_->begin());
    }

    bool has_var(const std::string& name) const {
        return std::find(vars_->begin(), vars_->end(), name) != vars_->end();
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0); }

    Rational constant_value() const {
        if (!is_constant()) throw InvalidInput("polynomial is not constant");
        return terms_.empty() ? Rational(0) : terms_.begin()->second;
    }

    /// Total degree; -1 for the zero polynomial.
    int degree() const { return terms_.empty() ? -1 : static_cast<int>(total_degree(terms_.rbegin()->first)); }

    int degree_in(std::size_t var) const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[var]));
        return d;
    }

    /// Degree in a subset of the variables.
    int degree_in(const std::vector<std::size_t>& vars) const {
        int d = -1;
        for (const auto& [m, c] : terms_) {
            int s = 0;
            for (auto v : vars) s += static_cast<int>(m[v]);
            d = std::max(d, s);
        }
        return d;
    }

    bool depends_on(std::size_t var) const { return degree_in(var) > 0; }

    const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
    const Rational& leading_coefficient() const { return terms_.rbegin()->second; }

    std::size_t max_bits() const {
        std::size_t b = 0;
        for (const auto& [m, c] : terms_) b = std::max(b, bit_size(c));
        return b;
    }

    bool operator==(const MultiPoly& o) const { return same_vars(vars_, o.vars_) && terms_ == o.terms_; }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }

    MultiPoly& operator+=(const MultiPoly& o) { return accumulate(o, Rational(1)); }
    MultiPoly& operator-=(const MultiPoly& o) { return accumulate(o, Rational(-1)); }

    MultiPoly& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
        } else {
            for (auto& [m, c] : terms_) c *= s;
        }
        return *this;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(MultiPoly a, const Rational& s) { return a *= s; }
    friend MultiPoly operator*(const Rational& s, MultiPoly a) { return a *= s; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        check_compatible(a, b);
        MultiPoly r(a.vars_);
        if (a.is_zero() || b.is_zero()) return r;
        const std::size_t n = a.nvars();
        Monomial m(n);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                for (std::size_t i = 0; i < n; ++i) m[i] = ma[i] + mb[i];
                auto [it, fresh] = r.terms_.try_emplace(m, ca * cb);
                if (!fresh) {
                    it->second += ca * cb;
                    if (it->second == 0) r.terms_.erase(it);
                }
            }
        }
        return r;
    }

    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    MultiPoly pow(unsigned e) const {
        MultiPoly result = constant(vars_, 1);
        MultiPoly base = *this;
        while (e > 0) {
            if (e & 1u) result *= base;
            e >>= 1u;
            if (e > 0) base *= base;
        }
        return result;
    }

    /// Formal partial derivative.
    MultiPoly differentiate(std::size_t var) const {
        MultiPoly r(vars_);
        for (const auto& [m, c] : terms_) {
            if (m[var] == 0) continue;
            Monomial d = m;
            d[var] -= 1;
            r.terms_.emplace(std::move(d), c * m[var]);
        }
        return r;
    }

    MultiPoly differentiate(const std::string& var) const { return differentiate(index_of(var)); }

    /// Value at a full assignment, given in variable order.
    Rational evaluate(const std::vector<Rational>& point) const {
        if (point.size() != nvars()) throw InvalidInput("evaluation point has wrong length");
        Rational sum = 0;
        for (const auto& [m, c] : terms_) {
            Rational t = c;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                Rational p;
                mpz_pow_ui(p.get_num_mpz_t(), point[i].get_num_mpz_t(), m[i]);
                mpz_pow_ui(p.get_den_mpz_t(), point[i].get_den_mpz_t(), m[i]);
                t *= p;
            }
            sum += t;
        }
        return sum;
    }

    /// Value at a named assignment. Every variable that occurs must be assigned.
    Rational evaluate(const std::map<std::string, Rational>& point) const {
        std::vector<Rational> values(nvars(), Rational(0));
        std::vector<bool> used(nvars(), false);
        for (const auto& [m, c] : terms_)
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i] > 0) used[i] = true;
        for (std::size_t i = 0; i < nvars(); ++i) {
            auto it = point.find((*vars_)[i]);
            if (it != point.end()) {
                values[i] = it->second;
            } else if (used[i]) {
                throw InvalidInput("no value for variable '" + (*vars_)[i] + "'");
            }
        }
        return evaluate(values);
    }

    /// Substitute polynomials (all over `target`) for the variables listed in
    /// `images`; every other variable must also exist in `target` and is kept.
    MultiPoly substitute(const std::map<std::string, MultiPoly>& images, const VarsPtr& target) const {
        std::vector<std::optional<MultiPoly>> var_images(nvars());
        for (std::size_t i = 0; i < nvars(); ++i) {
            const auto& name = (*vars_)[i];
            if (auto it = images.find(name); it != images.end()) {
                if (!same_vars(it->second.vars(), target)) throw InvalidInput("substitution image over wrong ring");
                var_images[i] = it->second;
            } else if (std::find(target->begin(), target->end(), name) != target->end()) {
                var_images[i] = variable(target, name);
            }
        }
        MultiPoly result(target);
        for (const auto& [m, c] : terms_) {
            MultiPoly term = constant(target, c);
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                if (!var_images[i]) throw InvalidInput("variable '" + (*vars_)[i] + "' has no image in target ring");
                term *= var_images[i]->pow(m[i]);
            }
            result += term;
        }
        return result;
    }

    /// Re-express over another variable list, matching variables by name.
    MultiPoly embed(const VarsPtr& target) const {
        if (same_vars(vars_, target)) {
            MultiPoly r = *this;
            r.vars_ = target;
            return r;
        }
        std::vector<std::size_t> where(nvars());
        for (std::size_t i = 0; i < nvars(); ++i) {
            auto it = std::find(target->begin(), target->end(), (*vars_)[i]);
            where[i] = it == target->end() ? target->size() : static_cast<std::size_t>(it - target->begin());
        }
        MultiPoly r(target);
        for (const auto& [m, c] : terms_) {
            Monomial nm(target->size(), 0);
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                if (where[i] == target->size())
                    throw InvalidInput("variable '" + (*vars_)[i] + "' missing from target ring");
                nm[where[i]] = m[i];
            }
            r.terms_.emplace(std::move(nm), c);
        }
        return r;
    }

    /// Exact quotient by `d`, or nullopt when `d` does not divide.
    std::optional<MultiPoly> divide_exact(const MultiPoly& d) const {
        check_compatible(*this, d);
        if (d.is_zero()) throw InvalidInput("division by zero polynomial");
        MultiPoly q(vars_);
        MultiPoly rem = *this;
        const Monomial& lm = d.leading_monomial();
        const Rational& lc = d.leading_coefficient();
        const std::size_t n = nvars();
        while (!rem.is_zero()) {
            const Monomial& rm = rem.leading_monomial();
            Monomial qm(n);
            for (std::size_t i = 0; i < n; ++i) {
                if (rm[i] < lm[i]) return std::nullopt;
                qm[i] = rm[i] - lm[i];
            }
            MultiPoly step = monomial(vars_, std::move(qm), rem.leading_coefficient() / lc);
            rem -= step * d;
            q += step;
        }
        return q;
    }

    /// Largest monomial dividing every term.
    Monomial monomial_content() const {
        Monomial g(nvars(), 0);
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (first) {
                g = m;
                first = false;
            } else {
                for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::min(g[i], m[i]);
            }
        }
        return g;
    }

    /// Divide every exponent vector by `m` (must divide every term).
    MultiPoly divide_monomial(const Monomial& m) const {
        MultiPoly r(vars_);
        for (const auto& [t, c] : terms_) {
            Monomial nt = t;
            for (std::size_t i = 0; i < nt.size(); ++i) nt[i] -= m[i];
            r.terms_.emplace(std::move(nt), c);
        }
        return r;
    }

    /// Evaluate the variables in `fixed` (index -> value) and keep the rest.
    MultiPoly partial_evaluate(const std::map<std::size_t, Rational>& fixed) const {
        MultiPoly r(vars_);
        for (const auto& [m, c] : terms_) {
            Rational coef = c;
            Monomial nm = m;
            for (const auto& [i, v] : fixed) {
                if (nm[i] == 0) continue;
                Rational p;
                mpz_pow_ui(p.get_num_mpz_t(), v.get_num_mpz_t(), nm[i]);
                mpz_pow_ui(p.get_den_mpz_t(), v.get_den_mpz_t(), nm[i]);
                coef *= p;
                nm[i] = 0;
            }
            if (coef == 0) continue;
            auto [it, fresh] = r.terms_.try_emplace(std::move(nm), coef);
            if (!fresh) {
                it->second += coef;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
        return r;
    }

    /// Canonical text, readable by `parse_poly`.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [m, c] = *it;
            Rational a = abs(c);
            if (first) {
                if (c < 0) os << "-";
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            first = false;
            bool is_one = total_degree(m) == 0;
            bool wrote = false;
            if (a != 1 || is_one) {
                os << a.get_str();
                wrote = true;
            }
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                if (wrote) os << "*";
                os << (*vars_)[i];
                if (m[i] > 1) os << "^" << m[i];
                wrote = true;
            }
        }
        return os.str();
    }

private:
    static void check_compatible(const MultiPoly& a, const MultiPoly& b) {
        if (!same_vars(a.vars_, b.vars_)) throw InvalidInput("polynomials over different variable lists");
    }

    MultiPoly& accumulate(const MultiPoly& o, const Rational& sign) {
        check_compatible(*this, o);
        for (const auto& [m, c] : o.terms_) {
            auto [it, fresh] = terms_.try_emplace(m, sign * c);
            if (!fresh) {
                it->second += sign * c;
                if (it->second == 0) terms_.erase(it);
            }
        }
        return *this;
    }

    VarsPtr vars_;
    Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

/// Scale to a primitive integer polynomial with positive leading coefficient.
/// Returns the zero polynomial unchanged.
inline MultiPoly primitive_part(const MultiPoly& p) {
    if (p.is_zero()) return p;
    Integer den_lcm = 1, num_gcd = 0;
    for (const auto& [m, c] : p.terms()) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    }
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (p.leading_coefficient() < 0) scale = -scale;
    return p * scale;
}

} // namespace scrolls

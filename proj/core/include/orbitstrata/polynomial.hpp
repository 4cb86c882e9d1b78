#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orbitstrata/scalar.hpp"

namespace orbitstrata {

/// Exponent vector, one entry per context variable.
using Monomial = std::vector<std::uint32_t>;

int total_degree(const Monomial& m);

/// Ordered list of variable names shared by a family of polynomials.
/// Contexts compare by value, so independently constructed contexts with the
/// same names are compatible.
class VarContext {
public:
    explicit VarContext(std::vector<std::string> names) : names_(std::move(names)) {}

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<std::size_t> index_of(const std::string& name) const;

    friend bool operator==(const VarContext& a, const VarContext& b) {
        return a.names_ == b.names_;
    }

private:
    std::vector<std::string> names_;
};

using ContextPtr = std::shared_ptr<const VarContext>;

ContextPtr make_context(std::vector<std::string> names);
bool same_context(const ContextPtr& a, const ContextPtr& b);

/// Graded lexicographic comparison: higher total degree first, ties broken
/// lexicographically on the exponent vector. Returns +1 if a > b.
int grlex_cmp(const Monomial& a, const Monomial& b);

/// Map comparator placing the grlex-largest monomial first (descending order).
struct GrlexDesc {
    bool operator()(const Monomial& a, const Monomial& b) const { return grlex_cmp(a, b) > 0; }
};

/// Sparse multivariate polynomial over Q(sqrt(D)) scalars.
///
/// Terms are kept in descending graded lexicographic order with no stored
/// zero coefficients, so equal polynomials have equal term maps and the first
/// term is the leading term.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Scalar, GrlexDesc>;

    /// Zero polynomial over the empty (constant-only) context.
    Polynomial();
    explicit Polynomial(ContextPtr ctx) : ctx_(std::move(ctx)) {}

    static Polynomial zero(ContextPtr ctx) { return Polynomial(std::move(ctx)); }
    static Polynomial constant(ContextPtr ctx, Scalar c);
    static Polynomial variable(const ContextPtr& ctx, std::size_t index);
    static Polynomial term(const ContextPtr& ctx, Monomial m, Scalar c);

    const ContextPtr& context() const { return ctx_; }
    const TermMap& terms() const { return terms_; }
    std::size_t num_terms() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// Leading term under grlex (throws on the zero polynomial).
    const std::pair<const Monomial, Scalar>& leading() const;
    Scalar coeff(const Monomial& m) const;
    bool is_constant() const;
    Scalar constant_value() const; // 0 for the zero polynomial

    int degree() const; // max total degree; -1 for zero

    /// Homogeneity degree if all terms share one total degree.
    std::optional<int> homogeneous_degree() const;
    /// Same with per-variable weights (weighted homogeneity).
    std::optional<long> weighted_homogeneous_degree(const std::vector<int>& weights) const;

    Polynomial operator-() const;
    friend Polynomial operator+(const Polynomial& f, const Polynomial& g);
    friend Polynomial operator-(const Polynomial& f, const Polynomial& g);
    friend Polynomial operator*(const Polynomial& f, const Polynomial& g);
    Polynomial& operator+=(const Polynomial& g) { return *this = *this + g; }
    Polynomial& operator-=(const Polynomial& g) { return *this = *this - g; }
    Polynomial& operator*=(const Polynomial& g) { return *this = *this * g; }

    Polynomial scaled(const Scalar& c) const;
    Polynomial pow(unsigned e) const;
    /// this * (c * x^m), a single-term product.
    Polynomial times_term(const Monomial& m, const Scalar& c) const;

    /// Formal partial derivative with respect to context variable `var`.
    Polynomial derivative(std::size_t var) const;
    Polynomial derivative(const std::string& var_name) const;

    /// Composition: every context variable must be assigned a polynomial in a
    /// shared target context.
    Polynomial substitute(const std::vector<Polynomial>& assignment) const;

    Scalar evaluate(const std::vector<Scalar>& point) const;
    double evaluate_double(const std::vector<double>& point) const;

    friend bool operator==(const Polynomial& f, const Polynomial& g);
    friend bool operator!=(const Polynomial& f, const Polynomial& g) { return !(f == g); }

    void add_term(const Monomial& m, const Scalar& c); // canonicalizing insert

private:
    ContextPtr ctx_;
    TermMap terms_;

    static void require_same_context(const Polynomial& f, const Polynomial& g);
};

/// Exact division test: returns q with f = q*g, or nullopt when g does not
/// divide f. Single-divisor division under grlex; a singleton divisor set is
/// its own Groebner basis, so a zero remainder is equivalent to divisibility.
std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g);

/// Remainder of the division algorithm by an ordered list of divisors.
Polynomial reduce_by(Polynomial f, const std::vector<Polynomial>& divisors);

} // namespace orbitstrata

#include "orbitstrata/polynomial.hpp"

#include <algorithm>

#include "orbitstrata/errors.hpp"

namespace orbitstrata {

int total_degree(const Monomial& m) {
    int d = 0;
    for (auto e : m) d += static_cast<int>(e);
    return d;
}

std::optional<std::size_t> VarContext::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

ContextPtr make_context(std::vector<std::string> names) {
    return std::make_shared<const VarContext>(std::move(names));
}

Polynomial::Polynomial() {
    static const ContextPtr empty = make_context({});
    ctx_ = empty;
}

bool same_context(const ContextPtr& a, const ContextPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

int grlex_cmp(const Monomial& a, const Monomial& b) {
    const int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db ? -1 : 1;
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return 0;
}

Polynomial Polynomial::constant(ContextPtr ctx, Scalar c) {
    Polynomial p(std::move(ctx));
    if (!c.is_zero()) p.terms_.emplace(Monomial(p.ctx_->size(), 0), std::move(c));
    return p;
}

Polynomial Polynomial::variable(const ContextPtr& ctx, std::size_t index) {
    if (index >= ctx->size())
        throw Error(Error::Kind::UnknownVariable, "variable index out of range");
    Monomial m(ctx->size(), 0);
    m[index] = 1;
    return term(ctx, std::move(m), Scalar(1));
}

Polynomial Polynomial::term(const ContextPtr& ctx, Monomial m, Scalar c) {
    if (m.size() != ctx->size())
        throw Error(Error::Kind::Dimension, "monomial arity does not match context");
    Polynomial p(ctx);
    if (!c.is_zero()) p.terms_.emplace(std::move(m), std::move(c));
    return p;
}

const std::pair<const Monomial, Scalar>& Polynomial::leading() const {
    if (terms_.empty()) throw Error(Error::Kind::Internal, "leading term of zero polynomial");
    return *terms_.begin();
}

Scalar Polynomial::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

Scalar Polynomial::constant_value() const {
    if (terms_.empty()) return Scalar(0);
    if (!is_constant()) throw Error(Error::Kind::Internal, "polynomial is not constant");
    return terms_.begin()->second;
}

int Polynomial::degree() const {
    if (terms_.empty()) return -1;
    return total_degree(terms_.begin()->first); // grlex leading term has max degree
}

std::optional<int> Polynomial::homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    const int d = total_degree(terms_.begin()->first);
    for (const auto& [m, c] : terms_)
        if (total_degree(m) != d) return std::nullopt;
    return d;
}

std::optional<long> Polynomial::weighted_homogeneous_degree(const std::vector<int>& weights) const {
    if (weights.size() != ctx_->size())
        throw Error(Error::Kind::Dimension, "weight vector arity mismatch");
    if (terms_.empty()) return std::nullopt;
    auto wdeg = [&](const Monomial& m) {
        long d = 0;
        for (std::size_t i = 0; i < m.size(); ++i) d += static_cast<long>(m[i]) * weights[i];
        return d;
    };
    const long d = wdeg(terms_.begin()->first);
    for (const auto& [m, c] : terms_)
        if (wdeg(m) != d) return std::nullopt;
    return d;
}

void Polynomial::require_same_context(const Polynomial& f, const Polynomial& g) {
    if (!same_context(f.ctx_, g.ctx_))
        throw Error(Error::Kind::ContextMismatch, "polynomials have different variable contexts");
}

void Polynomial::add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial r(ctx_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Polynomial operator+(const Polynomial& f, const Polynomial& g) {
    Polynomial::require_same_context(f, g);
    Polynomial r = f;
    for (const auto& [m, c] : g.terms_) r.add_term(m, c);
    return r;
}

Polynomial operator-(const Polynomial& f, const Polynomial& g) {
    Polynomial::require_same_context(f, g);
    Polynomial r = f;
    for (const auto& [m, c] : g.terms_) r.add_term(m, -c);
    return r;
}

Polynomial operator*(const Polynomial& f, const Polynomial& g) {
    Polynomial::require_same_context(f, g);
    Polynomial r(f.ctx_);
    const std::size_t n = f.ctx_->size();
    Monomial prod(n);
    for (const auto& [mf, cf] : f.terms_) {
        for (const auto& [mg, cg] : g.terms_) {
            for (std::size_t i = 0; i < n; ++i) prod[i] = mf[i] + mg[i];
            r.add_term(prod, cf * cg);
        }
    }
    return r;
}

Polynomial Polynomial::scaled(const Scalar& c) const {
    Polynomial r(ctx_);
    if (c.is_zero()) return r;
    for (const auto& [m, coeff] : terms_) r.terms_.emplace(m, coeff * c);
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial r = Polynomial::constant(ctx_, Scalar(1));
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
}

Polynomial Polynomial::times_term(const Monomial& m, const Scalar& c) const {
    Polynomial r(ctx_);
    if (c.is_zero()) return r;
    const std::size_t n = ctx_->size();
    for (const auto& [mf, cf] : terms_) {
        Monomial prod(n);
        for (std::size_t i = 0; i < n; ++i) prod[i] = mf[i] + m[i];
        r.terms_.emplace(std::move(prod), cf * c);
    }
    return r;
}

Polynomial Polynomial::derivative(std::size_t var) const {
    if (var >= ctx_->size())
        throw Error(Error::Kind::UnknownVariable, "derivative variable index out of range");
    Polynomial r(ctx_);
    for (const auto& [m, c] : terms_) {
        if (m[var] == 0) continue;
        Monomial dm = m;
        dm[var] -= 1;
        r.add_term(dm, c * Scalar(static_cast<long>(m[var])));
    }
    return r;
}

Polynomial Polynomial::derivative(const std::string& var_name) const {
    auto idx = ctx_->index_of(var_name);
    if (!idx) throw Error(Error::Kind::UnknownVariable, "unknown variable: " + var_name);
    return derivative(*idx);
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& assignment) const {
    if (assignment.size() != ctx_->size())
        throw Error(Error::Kind::IncompleteAssignment,
                    "assignment must cover every context variable");
    for (std::size_t i = 1; i < assignment.size(); ++i)
        if (!same_context(assignment[0].context(), assignment[i].context()))
            throw Error(Error::Kind::ContextMismatch,
                        "assigned polynomials live in different contexts");
    const ContextPtr target = assignment.empty() ? ctx_ : assignment[0].context();
    Polynomial result(target);
    // powers cache, one ladder per variable
    std::vector<std::vector<Polynomial>> powers(ctx_->size());
    auto power_of = [&](std::size_t var, std::uint32_t e) -> const Polynomial& {
        auto& ladder = powers[var];
        if (ladder.empty()) ladder.push_back(Polynomial::constant(target, Scalar(1)));
        while (ladder.size() <= e) ladder.push_back(ladder.back() * assignment[var]);
        return ladder[e];
    };
    for (const auto& [m, c] : terms_) {
        Polynomial term_val = Polynomial::constant(target, c);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0) term_val = term_val * power_of(i, m[i]);
        result += term_val;
    }
    return result;
}

Scalar Polynomial::evaluate(const std::vector<Scalar>& point) const {
    if (point.size() != ctx_->size())
        throw Error(Error::Kind::Dimension, "evaluation point arity mismatch");
    Scalar acc(0);
    for (const auto& [m, c] : terms_) {
        Scalar t = c;
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::uint32_t e = 0; e < m[i]; ++e) t *= point[i];
        acc += t;
    }
    return acc;
}

double Polynomial::evaluate_double(const std::vector<double>& point) const {
    if (point.size() != ctx_->size())
        throw Error(Error::Kind::Dimension, "evaluation point arity mismatch");
    double acc = 0.0;
    for (const auto& [m, c] : terms_) {
        double t = c.to_double();
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::uint32_t e = 0; e < m[i]; ++e) t *= point[i];
        acc += t;
    }
    return acc;
}

bool operator==(const Polynomial& f, const Polynomial& g) {
    return same_context(f.ctx_, g.ctx_) && f.terms_ == g.terms_;
}

namespace {

bool monomial_divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Monomial monomial_quotient(const Monomial& num, const Monomial& den) {
    Monomial q(num.size());
    for (std::size_t i = 0; i < num.size(); ++i) q[i] = num[i] - den[i];
    return q;
}

} // namespace

std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g) {
    if (g.is_zero()) throw Error(Error::Kind::ZeroDivisor, "division by zero polynomial");
    if (!same_context(f.context(), g.context()))
        throw Error(Error::Kind::ContextMismatch, "divide_exact: context mismatch");
    Polynomial q(f.context());
    Polynomial r = f;
    const auto& glead = g.leading();
    while (!r.is_zero()) {
        const auto& rlead = r.leading();
        if (!monomial_divides(glead.first, rlead.first)) return std::nullopt;
        const Monomial qm = monomial_quotient(rlead.first, glead.first);
        const Scalar qc = rlead.second / glead.second;
        q.add_term(qm, qc);
        r -= g.times_term(qm, qc);
    }
    return q;
}

Polynomial reduce_by(Polynomial f, const std::vector<Polynomial>& divisors) {
    Polynomial remainder(f.context());
    while (!f.is_zero()) {
        bool reduced = false;
        const auto& [lm, lc] = f.leading();
        for (const auto& g : divisors) {
            if (g.is_zero()) continue;
            const auto& [gm, gc] = g.leading();
            if (monomial_divides(gm, lm)) {
                f -= g.times_term(monomial_quotient(lm, gm), lc / gc);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            remainder.add_term(lm, lc);
            Polynomial rest(f.context());
            bool first = true;
            for (const auto& [m, c] : f.terms()) {
                if (first) { first = false; continue; }
                rest.add_term(m, c);
            }
            f = std::move(rest);
        }
    }
    return remainder;
}

} // namespace orbitstrata

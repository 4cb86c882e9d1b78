#include "orbitstrata/mib.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "orbitstrata/errors.hpp"
#include "orbitstrata/scalar_matrix.hpp"

namespace orbitstrata {

MIB::MIB(ContextPtr vars, std::vector<MibEntry> entries)
    : vars_(std::move(vars)), entries_(std::move(entries)) {
    std::set<std::string> seen;
    std::vector<std::string> names;
    for (const auto& e : entries_) {
        if (!seen.insert(e.name).second)
            throw Error(Error::Kind::Validation, "duplicate basis entry name: " + e.name);
        if (e.degree <= 0)
            throw Error(Error::Kind::Validation, "basis entry " + e.name +
                                                     " must have positive degree");
        if (!same_context(e.poly.context(), vars_))
            throw Error(Error::Kind::ContextMismatch,
                        "basis entry " + e.name + " not in the declared variable context");
        const auto h = e.poly.homogeneous_degree();
        if (!h || *h != e.degree)
            throw Error(Error::Kind::Validation,
                        "basis entry " + e.name + " is not homogeneous of declared degree " +
                            std::to_string(e.degree));
        names.push_back(e.name);
    }
    names_ = make_context(std::move(names));
}

std::vector<int> MIB::degrees() const {
    std::vector<int> d;
    d.reserve(entries_.size());
    for (const auto& e : entries_) d.push_back(e.degree);
    return d;
}

Polynomial MIB::compose(const Polynomial& in_names) const {
    if (!same_context(in_names.context(), names_))
        throw Error(Error::Kind::ContextMismatch, "polynomial is not in the basis-name context");
    std::vector<Polynomial> assignment;
    assignment.reserve(entries_.size());
    for (const auto& e : entries_) assignment.push_back(e.poly);
    return in_names.substitute(assignment);
}

PolyMatrix gradient_gram(const MIB& mib) {
    const std::size_t q = mib.size();
    const std::size_t n = mib.var_context()->size();
    std::vector<std::vector<Polynomial>> grad(q);
    for (std::size_t a = 0; a < q; ++a) {
        grad[a].reserve(n);
        for (std::size_t j = 0; j < n; ++j) grad[a].push_back(mib.entry(a).poly.derivative(j));
    }
    PolyMatrix gram(q, q, mib.var_context(), true);
    for (std::size_t a = 0; a < q; ++a) {
        for (std::size_t b = a; b < q; ++b) {
            Polynomial acc(mib.var_context());
            for (std::size_t j = 0; j < n; ++j) acc += grad[a][j] * grad[b][j];
            gram.set(a, b, std::move(acc));
        }
    }
    return gram;
}

namespace {

void enumerate_weighted(const std::vector<int>& weights, std::size_t idx, long remaining,
                        Monomial& current, std::vector<Monomial>& out,
                        std::map<std::pair<std::size_t, long>, std::vector<Monomial>>& memo) {
    if (idx == weights.size()) {
        if (remaining == 0) out.push_back(current);
        return;
    }
    const auto key = std::make_pair(idx, remaining);
    auto it = memo.find(key);
    if (it != memo.end()) {
        for (const auto& suffix : it->second) {
            Monomial full = current;
            std::copy(suffix.begin(), suffix.end(), full.begin() + static_cast<long>(idx));
            out.push_back(std::move(full));
        }
        return;
    }
    std::vector<Monomial> suffixes;
    for (long e = 0; e * weights[idx] <= remaining; ++e) {
        current[idx] = static_cast<std::uint32_t>(e);
        std::vector<Monomial> sub;
        enumerate_weighted(weights, idx + 1, remaining - e * weights[idx], current, sub, memo);
        for (auto& m : sub) {
            suffixes.push_back(Monomial(m.begin() + static_cast<long>(idx), m.end()));
            out.push_back(std::move(m));
        }
    }
    current[idx] = 0;
    memo.emplace(key, std::move(suffixes));
}

struct DegreeSystem {
    std::vector<Monomial> candidates;         // basis-name monomials, grlex descending
    std::vector<Polynomial> expansions;       // candidate composed with the basis
    std::vector<Monomial> row_monomials;      // source-variable monomials, fixed order
    std::map<Monomial, std::size_t, GrlexDesc> row_index;
};

// Candidate basis monomials of one weighted degree together with the linear
// system mapping their coefficients to source-variable coefficients.
DegreeSystem build_degree_system(const MIB& mib, long wdeg) {
    DegreeSystem sys;
    sys.candidates = weighted_monomials(mib.degrees(), wdeg);
    sys.expansions.reserve(sys.candidates.size());
    std::vector<std::vector<Polynomial>> powers(mib.size());
    auto power_of = [&](std::size_t a, std::uint32_t e) -> const Polynomial& {
        auto& ladder = powers[a];
        if (ladder.empty())
            ladder.push_back(Polynomial::constant(mib.var_context(), Scalar(1)));
        while (ladder.size() <= e) ladder.push_back(ladder.back() * mib.entry(a).poly);
        return ladder[e];
    };
    for (const auto& cand : sys.candidates) {
        Polynomial prod = Polynomial::constant(mib.var_context(), Scalar(1));
        for (std::size_t a = 0; a < cand.size(); ++a)
            if (cand[a] > 0) prod = prod * power_of(a, cand[a]);
        for (const auto& [m, c] : prod.terms()) {
            if (sys.row_index.emplace(m, sys.row_index.size()).second)
                sys.row_monomials.push_back(m);
        }
        sys.expansions.push_back(std::move(prod));
    }
    return sys;
}

} // namespace

std::vector<Monomial> weighted_monomials(const std::vector<int>& weights, long target) {
    std::vector<Monomial> out;
    if (target < 0) return out;
    Monomial current(weights.size(), 0);
    std::map<std::pair<std::size_t, long>, std::vector<Monomial>> memo;
    enumerate_weighted(weights, 0, target, current, out, memo);
    std::sort(out.begin(), out.end(), GrlexDesc{});
    return out;
}

Decomposition decompose_invariant(const Polynomial& q_poly, const MIB& mib) {
    if (!same_context(q_poly.context(), mib.var_context()))
        throw Error(Error::Kind::ContextMismatch,
                    "polynomial to decompose is not in the basis variable context");

    Decomposition result;
    result.expression = Polynomial::zero(mib.name_context());
    if (q_poly.is_zero()) return result;

    // split into homogeneous components
    std::map<int, Polynomial> components;
    for (const auto& [m, c] : q_poly.terms()) {
        auto [it, inserted] =
            components.try_emplace(total_degree(m), Polynomial::zero(mib.var_context()));
        it->second.add_term(m, c);
    }

    for (const auto& [deg, component] : components) {
        DegreeSystem sys = build_degree_system(mib, deg);
        // rows beyond the candidates' span can appear in the target component
        for (const auto& [m, c] : component.terms()) {
            if (sys.row_index.emplace(m, sys.row_index.size()).second)
                sys.row_monomials.push_back(m);
        }
        const std::size_t n_rows = sys.row_monomials.size();
        const std::size_t n_cols = sys.candidates.size();
        if (n_cols == 0) {
            result.status = Decomposition::Status::NotInRing;
            return result;
        }
        ScalarMatrix A(n_rows, n_cols);
        for (std::size_t k = 0; k < n_cols; ++k)
            for (const auto& [m, c] : sys.expansions[k].terms())
                A.at(sys.row_index.at(m), k) = c;
        std::vector<Scalar> rhs(n_rows, Scalar(0));
        for (const auto& [m, c] : component.terms()) rhs[sys.row_index.at(m)] = c;

        const LinearSolution sol = solve_linear(A, rhs);
        if (!sol.consistent) {
            result.status = Decomposition::Status::NotInRing;
            return result;
        }
        for (std::size_t k = 0; k < n_cols; ++k)
            result.expression.add_term(sys.candidates[k], sol.particular[k]);
        if (!sol.nullspace.empty()) {
            result.status = Decomposition::Status::NonUnique;
            for (const auto& v : sol.nullspace) {
                Polynomial syz = Polynomial::zero(mib.name_context());
                for (std::size_t k = 0; k < n_cols; ++k) syz.add_term(sys.candidates[k], v[k]);
                result.syzygies.push_back(std::move(syz));
            }
        }
    }
    return result;
}

PHatMatrix pmatrix(const MIB& mib) {
    const PolyMatrix gram = gradient_gram(mib);
    const std::size_t q = mib.size();
    PHatMatrix out{mib, PolyMatrix(q, q, mib.name_context(), true), {}};
    for (std::size_t a = 0; a < q; ++a) {
        for (std::size_t b = a; b < q; ++b) {
            Decomposition dec = decompose_invariant(gram.at(a, b), mib);
            if (!dec.ok())
                throw Error(Error::Kind::NotAnInvariantBasis,
                            "gradient Gram entry (" + std::to_string(a + 1) + "," +
                                std::to_string(b + 1) +
                                ") is not expressible over the basis; the supplied set is not "
                                "an integrity basis");
            if (dec.status == Decomposition::Status::NonUnique)
                out.nonunique_entries.emplace_back(a, b);
            out.mat.set(a, b, std::move(dec.expression));
        }
    }
    return out;
}

std::vector<Relation> find_relations(const MIB& mib, long max_weighted_degree) {
    std::vector<Relation> relations;
    std::vector<Polynomial> found;
    for (long m = 1; m <= max_weighted_degree; ++m) {
        DegreeSystem sys = build_degree_system(mib, m);
        const std::size_t n_cols = sys.candidates.size();
        if (n_cols < 2) continue;
        const std::size_t n_rows = sys.row_monomials.size();
        ScalarMatrix A(n_rows, n_cols);
        for (std::size_t k = 0; k < n_cols; ++k)
            for (const auto& [mono, c] : sys.expansions[k].terms())
                A.at(sys.row_index.at(mono), k) = c;
        const LinearSolution sol = solve_linear(A, std::vector<Scalar>(n_rows, Scalar(0)));
        for (const auto& v : sol.nullspace) {
            Polynomial rel = Polynomial::zero(mib.name_context());
            for (std::size_t k = 0; k < n_cols; ++k) rel.add_term(sys.candidates[k], v[k]);
            rel = reduce_by(std::move(rel), found);
            if (rel.is_zero()) continue;
            rel = rel.scaled(rel.leading().second.inverse()); // monic in the grlex leading term
            found.push_back(rel);
            relations.push_back(Relation{std::move(rel), m});
        }
    }
    return relations;
}

} // namespace orbitstrata

#include "orbitstrata/groups.hpp"

#include <algorithm>
#include <map>

#include "orbitstrata/errors.hpp"

namespace orbitstrata {

namespace {

struct MatrixLess {
    bool operator()(const ScalarMatrix& a, const ScalarMatrix& b) const {
        return ScalarMatrix::cmp(a, b) < 0;
    }
};

} // namespace

void ensure_orthogonal(const ScalarMatrix& m, const std::string& what) {
    if (!m.is_orthogonal())
        throw Error(Error::Kind::Validation, what + " is not orthogonal (M^T M != I)");
}

bool FiniteGroup::contains(const ScalarMatrix& m) const {
    return std::find(elements.begin(), elements.end(), m) != elements.end();
}

FiniteGroup FiniteGroup::trivial(std::size_t n) {
    FiniteGroup g;
    g.elements.push_back(ScalarMatrix::identity(n));
    return g;
}

FiniteGroup close_group(const std::vector<ScalarMatrix>& generators, std::size_t cap) {
    if (generators.empty()) throw Error(Error::Kind::Validation, "no generators supplied");
    const std::size_t n = generators.front().rows();
    for (const auto& g : generators) {
        if (g.rows() != n || g.cols() != n)
            throw Error(Error::Kind::Dimension, "generators have mismatched sizes");
        ensure_orthogonal(g, "generator");
    }

    FiniteGroup group;
    std::map<ScalarMatrix, std::size_t, MatrixLess> index;
    auto know = [&](const ScalarMatrix& m) { return index.count(m) != 0; };
    auto add = [&](ScalarMatrix m) {
        index.emplace(m, group.elements.size());
        group.elements.push_back(std::move(m));
    };

    add(ScalarMatrix::identity(n));

    std::vector<ScalarMatrix> gens = generators;
    std::sort(gens.begin(), gens.end(), MatrixLess{});
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

    std::vector<ScalarMatrix> frontier;
    for (const auto& g : gens)
        if (!know(g)) {
            add(g);
            frontier.push_back(g);
        }
    for (const auto& g : gens) group.generator_indices.push_back(index.at(g));

    while (!frontier.empty()) {
        std::vector<ScalarMatrix> next;
        for (const auto& w : frontier) {
            for (const auto& g : gens) {
                ScalarMatrix prod = w * g;
                if (!know(prod) &&
                    std::find(next.begin(), next.end(), prod) == next.end())
                    next.push_back(std::move(prod));
            }
        }
        std::sort(next.begin(), next.end(), MatrixLess{});
        for (const auto& m : next) {
            if (group.elements.size() >= cap)
                throw Error(Error::Kind::CapExceeded,
                            "group closure exceeded cap of " + std::to_string(cap) +
                                " elements; the group is continuous or too large");
            add(m);
        }
        frontier = std::move(next);
    }
    return group;
}

SubspaceBasis fix_subspace(const FiniteGroup& h, unsigned field_d) {
    const std::size_t n = h.dim();
    // stacked (h - I) blocks over all non-identity elements
    std::vector<const ScalarMatrix*> blocks;
    for (const auto& m : h.elements)
        if (!m.is_identity()) blocks.push_back(&m);

    std::vector<std::vector<Scalar>> null_basis;
    if (blocks.empty()) {
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Scalar> e(n, Scalar(0));
            e[j] = Scalar(1);
            null_basis.push_back(std::move(e));
        }
    } else {
        ScalarMatrix stacked(blocks.size() * n, n);
        for (std::size_t b = 0; b < blocks.size(); ++b)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    Scalar v = blocks[b]->at(i, j);
                    if (i == j) v -= Scalar(1);
                    stacked.at(b * n + i, j) = std::move(v);
                }
        LinearSolution sol = solve_linear(stacked, std::vector<Scalar>(stacked.rows(), Scalar(0)));
        null_basis = std::move(sol.nullspace);
    }

    // coordinate-aligned nullspace: keep unit coordinate vectors as-is
    bool aligned = true;
    for (const auto& vec : null_basis) {
        std::size_t nonzero = 0;
        for (const auto& c : vec)
            if (!c.is_zero()) ++nonzero;
        if (nonzero != 1) {
            aligned = false;
            break;
        }
    }

    std::vector<std::vector<Scalar>> ortho;
    if (aligned) {
        for (auto& vec : null_basis) {
            for (auto& c : vec)
                if (!c.is_zero()) c = Scalar(1);
            ortho.push_back(std::move(vec));
        }
    } else {
        // Gram-Schmidt over Q(sqrt(D))
        auto dot = [](const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
            Scalar s(0);
            for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
            return s;
        };
        for (auto vec : null_basis) {
            for (const auto& u : ortho) {
                const Scalar coef = dot(vec, u);
                for (std::size_t i = 0; i < n; ++i) vec[i] -= coef * u[i];
            }
            const Scalar norm2 = dot(vec, vec);
            if (norm2.is_zero()) continue;
            const auto norm = field_sqrt(norm2, field_d);
            if (!norm)
                throw Error(Error::Kind::NonRationalBasis,
                            "fixed space has no orthonormal basis over Q(sqrt(" +
                                std::to_string(field_d) + ")); supply a coordinate-aligned "
                                "subspace or an explicit basis");
            const Scalar inv = norm->inverse();
            for (auto& c : vec) c *= inv;
            ortho.push_back(std::move(vec));
        }
    }

    SubspaceBasis v{ScalarMatrix(n, ortho.size()), {}};
    for (std::size_t j = 0; j < ortho.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) v.basis.at(i, j) = ortho[j][i];
    for (std::size_t j = 0; j < ortho.size(); ++j) v.labels.push_back("v" + std::to_string(j + 1));
    return v;
}

FiniteGroup isotropy_at(const FiniteGroup& g, const std::vector<Scalar>& x) {
    if (x.size() != g.dim())
        throw Error(Error::Kind::Dimension, "point dimension does not match the group");
    FiniteGroup iso;
    for (const auto& m : g.elements)
        if (m.apply(x) == x) iso.elements.push_back(m);
    return iso;
}

FiniteGroup stabilizer(const FiniteGroup& g, const FiniteGroup& h) {
    for (const auto& m : h.elements)
        if (!g.contains(m))
            throw Error(Error::Kind::NotASubgroup, "H is not a subgroup of G elementwise");
    FiniteGroup stab;
    for (const auto& s : g.elements) {
        const ScalarMatrix st = s.transpose(); // s^-1 for orthogonal s
        bool keeps = true;
        for (const auto& m : h.elements) {
            if (!h.contains(s * m * st)) {
                keeps = false;
                break;
            }
        }
        if (keeps) stab.elements.push_back(s);
    }
    return stab;
}

FiniteGroup induced_action(const FiniteGroup& stab, const FiniteGroup& h,
                           const SubspaceBasis& v) {
    (void)h; // the quotient by H happens through deduplication below
    const std::size_t n = v.ambient_dim();
    FiniteGroup k;
    for (const auto& s : stab.elements) {
        if (s.rows() != n)
            throw Error(Error::Kind::Dimension, "group and subspace dimensions differ");
        const ScalarMatrix restricted = v.basis.transpose() * s * v.basis;
        if (s * v.basis != v.basis * restricted)
            throw Error(Error::Kind::NotStable,
                        "subspace is not stable under the supplied group");
        if (!k.contains(restricted)) k.elements.push_back(restricted);
    }
    return k;
}

OrbitTypeOrder orbit_type_leq(const FiniteGroup& h, const FiniteGroup& k, const FiniteGroup& g) {
    for (const auto& m : h.elements)
        if (!g.contains(m))
            throw Error(Error::Kind::NotASubgroup, "H is not a subgroup of G elementwise");
    for (const auto& m : k.elements)
        if (!g.contains(m))
            throw Error(Error::Kind::NotASubgroup, "K is not a subgroup of G elementwise");
    OrbitTypeOrder order;
    for (const auto& s : g.elements) {
        const ScalarMatrix st = s.transpose();
        bool inside = true;
        for (const auto& m : h.elements) {
            if (!k.contains(s * m * st)) {
                inside = false;
                break;
            }
        }
        if (inside) {
            order.leq = true;
            break;
        }
    }
    order.strict = order.leq && h.order() < k.order();
    return order;
}

} // namespace orbitstrata

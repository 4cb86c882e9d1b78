#include "orbitstrata/parametrize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "orbitstrata/errors.hpp"
#include "orbitstrata/strata.hpp"

namespace orbitstrata {

SubspaceBasis resolve_subspace(const SubspaceSpec& spec, std::size_t n,
                               const std::vector<std::string>& x_names, unsigned field_d) {
    SubspaceBasis v{ScalarMatrix(n, 0), {}};
    switch (spec.form) {
        case SubspaceSpec::Form::Generators: {
            FiniteGroup h = close_group(spec.generators, 1u << 20);
            v = fix_subspace(h, field_d);
            v.labels.clear();
            break;
        }
        case SubspaceSpec::Form::ZeroCoords: {
            std::vector<bool> zeroed(n, false);
            for (auto idx : spec.zero_coords) {
                if (idx < 1 || idx > n)
                    throw Error(Error::Kind::Validation,
                                "zero-coordinate index out of range: " + std::to_string(idx));
                zeroed[idx - 1] = true;
            }
            std::size_t nu = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (!zeroed[i]) ++nu;
            v.basis = ScalarMatrix(n, nu);
            std::size_t col = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (zeroed[i]) continue;
                v.basis.at(i, col) = Scalar(1);
                ++col;
            }
            break;
        }
        case SubspaceSpec::Form::Basis: {
            if (!spec.basis)
                throw Error(Error::Kind::Validation, "subspace basis form without a basis");
            v = *spec.basis;
            if (v.ambient_dim() != n)
                throw Error(Error::Kind::Dimension, "subspace basis has wrong ambient dimension");
            const ScalarMatrix gram = v.basis.transpose() * v.basis;
            if (!gram.is_identity())
                throw Error(Error::Kind::Validation,
                            "explicit subspace basis is not orthonormal");
            break;
        }
    }

    // user-supplied labels win; otherwise coordinate-aligned columns inherit
    // the ambient variable name
    if (v.labels.size() != v.dim()) {
        v.labels.clear();
        for (std::size_t j = 0; j < v.dim(); ++j) {
            std::size_t nonzero = 0, which = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (!v.basis.at(i, j).is_zero()) {
                    ++nonzero;
                    which = i;
                }
            }
            if (nonzero == 1 && v.basis.at(which, j).is_one() && which < x_names.size())
                v.labels.push_back(x_names[which]);
            else
                v.labels.push_back("v" + std::to_string(j + 1));
        }
    }
    return v;
}

std::vector<Polynomial> restrict_mib(const MIB& mib, const SubspaceBasis& v) {
    const std::size_t n = mib.var_context()->size();
    if (v.ambient_dim() != n)
        throw Error(Error::Kind::Dimension, "subspace ambient dimension mismatch");
    const ContextPtr vctx = make_context(v.labels);
    // x_i = sum_j B(i, j) v_j
    std::vector<Polynomial> assignment;
    assignment.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial xi(vctx);
        for (std::size_t j = 0; j < v.dim(); ++j) {
            const Scalar& c = v.basis.at(i, j);
            if (c.is_zero()) continue;
            Monomial m(v.dim(), 0);
            m[j] = 1;
            xi.add_term(m, c);
        }
        assignment.push_back(std::move(xi));
    }
    std::vector<Polynomial> restricted;
    restricted.reserve(mib.size());
    for (const auto& e : mib.entries()) restricted.push_back(e.poly.substitute(assignment));
    return restricted;
}

PhiResult compute_phi(const std::vector<Polynomial>& p_restricted, const MIB& lambda_mib,
                      const std::vector<std::string>& p_names) {
    PhiResult out;
    out.phi.reserve(p_restricted.size());
    for (std::size_t a = 0; a < p_restricted.size(); ++a) {
        Decomposition dec = decompose_invariant(p_restricted[a], lambda_mib);
        if (!dec.ok()) {
            const std::string name = a < p_names.size() ? p_names[a] : std::to_string(a + 1);
            throw Error(Error::Kind::LambdaNotGenerating,
                        "restricted invariant " + name +
                            " is not expressible over the supplied lambda basis");
        }
        if (dec.status == Decomposition::Status::NonUnique) out.nonunique_entries.push_back(a);
        out.phi.push_back(std::move(dec.expression));
    }
    return out;
}

PolyMatrix jacobian(const std::vector<Polynomial>& phi) {
    if (phi.empty()) throw Error(Error::Kind::Validation, "jacobian of an empty map");
    const ContextPtr lctx = phi.front().context();
    const std::size_t l = lctx->size();
    const std::size_t q = phi.size();
    PolyMatrix j(l, q, lctx, false);
    for (std::size_t alpha = 0; alpha < l; ++alpha)
        for (std::size_t a = 0; a < q; ++a) j.set(alpha, a, phi[a].derivative(alpha));
    return j;
}

FactorizationReport verify_factorization(const PHatMatrix& phat,
                                         const std::vector<Polynomial>& phi,
                                         const PolyMatrix& lambda_hat, const PolyMatrix& jac) {
    const std::size_t q = phat.mat.rows();
    if (phi.size() != q)
        throw Error(Error::Kind::Dimension, "phi length must equal the basis size");
    if (jac.rows() != lambda_hat.rows() || jac.cols() != q)
        throw Error(Error::Kind::Dimension, "Jacobian shape does not match (l x q)");

    const PolyMatrix lhs = phat.mat.substitute(phi);
    const PolyMatrix rhs = jac.transpose() * lambda_hat * jac;
    FactorizationReport rep;
    rep.holds = true;
    for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = 0; b < q; ++b)
            if (lhs.at(a, b) != rhs.at(a, b)) {
                rep.holds = false;
                rep.mismatches.emplace_back(a, b);
            }
    return rep;
}

RelationCheck verify_relations_on_phi(const std::vector<Polynomial>& relations,
                                      const std::vector<Polynomial>& phi) {
    RelationCheck check;
    for (std::size_t i = 0; i < relations.size(); ++i) {
        Polynomial residual = relations[i].substitute(phi);
        if (!residual.is_zero()) {
            check.all_vanish = false;
            check.residuals.emplace_back(i, std::move(residual));
        }
    }
    return check;
}

RegionDescription delta_region(const PolyMatrix& lambda_hat, const PolyMatrix& jac) {
    if (!lambda_hat.check_symmetric())
        throw Error(Error::Kind::Validation, "Lambda-hat must be symmetric");
    RegionDescription region;
    region.dimension = lambda_hat.rows();
    region.leading_minors = leading_principal_minors(lambda_hat);
    region.jacobian_minors = maximal_minors(jac);
    return region;
}

namespace {

int probe_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("ORBITSTRATA_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

} // namespace

ProbeReport connectivity_probe(const RegionDescription& region, const PolyMatrix& jac,
                               const std::vector<std::pair<double, double>>& box, long samples,
                               std::uint64_t seed, double region_tol, double rank_tol,
                               int threads) {
    if (samples <= 0) throw Error(Error::Kind::Validation, "sample count must be positive");
    if (box.size() != region.dimension)
        throw Error(Error::Kind::Dimension, "box dimension must equal the region dimension");

    const std::size_t l = jac.rows();
    const std::size_t q = jac.cols();

    ProbeReport report;
    report.tested = samples;
    report.required_rank = static_cast<int>(l);
    for (const auto& minor : region.jacobian_minors)
        if (minor.is_constant() && !minor.is_zero()) report.exact_shortcut = true;

    const int n_threads = probe_thread_count(threads);
    struct Partial {
        long in_region = 0;
        int min_rank = std::numeric_limits<int>::max();
        std::vector<std::pair<long, std::vector<double>>> deficient;
    };
    std::vector<Partial> partials(n_threads);

    auto worker = [&](int t) {
        Partial& part = partials[t];
        for (long i = t; i < samples; i += n_threads) {
            const std::vector<double> lam = sample_point(box, i, seed);
            bool in = true;
            for (const auto& g : region.leading_minors) {
                if (!(g.evaluate_double(lam) > region_tol)) {
                    in = false;
                    break;
                }
            }
            if (!in) continue;
            ++part.in_region;

            // numeric rank of J via the eigenvalues of J J^T (l x l PSD)
            std::vector<double> jd(l * q);
            for (std::size_t r = 0; r < l; ++r)
                for (std::size_t c = 0; c < q; ++c)
                    jd[r * q + c] = jac.at(r, c).evaluate_double(lam);
            FloatMatrix jjt(l, l, true);
            double frob = 0.0;
            for (std::size_t r = 0; r < l; ++r)
                for (std::size_t c = r; c < l; ++c) {
                    double acc = 0.0;
                    for (std::size_t k = 0; k < q; ++k) acc += jd[r * q + k] * jd[c * q + k];
                    jjt.at(r, c) = acc;
                    jjt.at(c, r) = acc;
                    frob += (r == c ? 1.0 : 2.0) * acc * acc;
                }
            const double eigen_tol = 1e-13 * std::max(1.0, std::sqrt(frob));
            const auto sig =
                signature_from_eigenvalues(sym_eigen(std::move(jjt), eigen_tol), rank_tol);
            part.min_rank = std::min(part.min_rank, sig.rank);
            if (sig.rank < static_cast<int>(l)) part.deficient.emplace_back(i, lam);
        }
    };

    if (n_threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    std::vector<std::pair<long, std::vector<double>>> deficient;
    int min_rank = std::numeric_limits<int>::max();
    for (auto& part : partials) {
        report.in_region += part.in_region;
        min_rank = std::min(min_rank, part.min_rank);
        for (auto& d : part.deficient) deficient.push_back(std::move(d));
    }
    if (report.in_region == 0)
        throw Error(Error::Kind::EmptySample,
                    "no sample passed the region test; the box is misconfigured");
    std::sort(deficient.begin(), deficient.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& d : deficient) report.rank_deficient_points.push_back(std::move(d.second));
    report.min_rank = min_rank == std::numeric_limits<int>::max() ? 0 : min_rank;
    return report;
}

Parametrization parametrize_stratum(const MIB& mib, const PHatMatrix& phat,
                                    const std::vector<Polynomial>& relations,
                                    const SubspaceSpec& subspace, const MIB& lambda_mib,
                                    unsigned field_d, const ParametrizeOptions& opts) {
    auto stage = [](const std::string& name, auto&& fn) {
        try {
            return fn();
        } catch (Error& e) {
            throw Error(e.kind(), "[" + name + "] " + e.what());
        }
    };

    const SubspaceBasis v = stage("resolve_subspace", [&] {
        SubspaceSpec s = subspace; // labels come from the lambda-MIB context when they match
        return resolve_subspace(s, mib.var_context()->size(), mib.var_context()->names(),
                                field_d);
    });

    if (v.dim() != lambda_mib.var_context()->size())
        throw Error(Error::Kind::Validation,
                    "[restrict_mib] lambda basis arity (" +
                        std::to_string(lambda_mib.var_context()->size()) +
                        ") does not match dim V = " + std::to_string(v.dim()));
    if (lambda_mib.var_context()->names() != v.labels)
        throw Error(Error::Kind::Validation,
                    "[restrict_mib] lambda basis variables do not match the V coordinate "
                    "labels");

    std::vector<std::string> p_names = mib.name_context()->names();
    const auto restricted =
        stage("restrict_mib", [&] { return restrict_mib(mib, v); });
    PhiResult phi_res =
        stage("compute_phi", [&] { return compute_phi(restricted, lambda_mib, p_names); });

    PHatMatrix lambda_phat = stage("lambda_pmatrix", [&] { return pmatrix(lambda_mib); });
    PolyMatrix jac_m = stage("jacobian", [&] { return jacobian(phi_res.phi); });

    Parametrization out(lambda_mib, lambda_phat.mat, jac_m);
    out.v = v;
    out.p_restricted = restricted;
    out.phi = phi_res.phi;
    for (auto idx : phi_res.nonunique_entries)
        out.diagnostics.push_back("phi_" + std::to_string(idx + 1) +
                                  " decomposition is non-unique; deterministic representative "
                                  "chosen");
    for (auto [a, b] : lambda_phat.nonunique_entries)
        out.diagnostics.push_back("Lambda-hat entry (" + std::to_string(a + 1) + "," +
                                  std::to_string(b + 1) + ") decomposition is non-unique");

    out.factorization = stage("verify_factorization", [&] {
        return verify_factorization(phat, out.phi, out.lambda_hat, out.jac);
    });
    out.relation_check = stage("verify_relations_on_phi", [&] {
        return verify_relations_on_phi(relations, out.phi);
    });
    out.delta = stage("delta_region", [&] { return delta_region(out.lambda_hat, out.jac); });

    const std::vector<int> lambda_degrees = lambda_mib.degrees();
    const long bound =
        opts.lambda_relation_bound > 0
            ? opts.lambda_relation_bound
            : 2L * *std::max_element(lambda_degrees.begin(), lambda_degrees.end());
    out.lambda_relations =
        stage("lambda_relations", [&] { return find_relations(lambda_mib, bound); });
    out.coregular_k = out.lambda_relations.empty();
    if (!out.coregular_k)
        out.diagnostics.push_back(
            "lambda basis has relations up to weighted degree " + std::to_string(bound) +
            "; K is not coregular and the parametrization is not guaranteed global");
    else
        out.diagnostics.push_back("no lambda relations up to weighted degree " +
                                  std::to_string(bound) + " (coregular up to the bound)");

    return out;
}

} // namespace orbitstrata

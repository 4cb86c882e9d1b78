#include "orbitstrata/strata.hpp"

#include <algorithm>
#include <cmath>

#include "orbitstrata/errors.hpp"

namespace orbitstrata {

std::vector<double> sym_eigen(FloatMatrix s, double tol) {
    if (!s.symmetric || s.rows != s.cols)
        throw Error(Error::Kind::Validation, "sym_eigen requires a symmetric matrix");
    if (!(tol > 0)) throw Error(Error::Kind::Validation, "sym_eigen tolerance must be positive");
    const std::size_t n = s.rows;

    auto off_norm = [&] {
        double acc = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) acc += 2.0 * s.at(p, q) * s.at(p, q);
        return std::sqrt(acc);
    };

    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_norm() < tol) {
            std::vector<double> eig(n);
            for (std::size_t i = 0; i < n; ++i) eig[i] = s.at(i, i);
            std::sort(eig.begin(), eig.end());
            return eig;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = s.at(p, q);
                if (apq == 0.0) continue;
                const double theta = (s.at(q, q) - s.at(p, p)) / (2.0 * apq);
                const double t =
                    (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                const double tau = sn / (1.0 + c);
                const double app = s.at(p, p), aqq = s.at(q, q);
                s.at(p, p) = app - t * apq;
                s.at(q, q) = aqq + t * apq;
                s.at(p, q) = 0.0;
                s.at(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = s.at(r, p), arq = s.at(r, q);
                    s.at(r, p) = arp - sn * (arq + tau * arp);
                    s.at(p, r) = s.at(r, p);
                    s.at(r, q) = arq + sn * (arp - tau * arq);
                    s.at(q, r) = s.at(r, q);
                }
            }
        }
    }
    throw Error(Error::Kind::NoConvergence, "Jacobi eigensolver did not converge in 100 sweeps");
}

StratumSignature signature_from_eigenvalues(std::vector<double> eigenvalues, double tol) {
    StratumSignature sig;
    sig.tolerance = tol;
    std::sort(eigenvalues.begin(), eigenvalues.end());
    double max_abs = 0.0;
    for (double e : eigenvalues) max_abs = std::max(max_abs, std::abs(e));
    const double threshold = tol * std::max(1.0, max_abs);
    sig.rank = 0;
    for (double e : eigenvalues)
        if (e > threshold) ++sig.rank;
    sig.psd = eigenvalues.empty() || eigenvalues.front() > -threshold;
    sig.eigenvalues = std::move(eigenvalues);
    return sig;
}

std::vector<Polynomial> minor_sums(const PolyMatrix& m) {
    if (m.rows() != m.cols())
        throw Error(Error::Kind::NotSquare, "minor sums of a non-square matrix");
    const std::size_t q = m.rows();
    std::vector<Polynomial> sums;
    sums.reserve(q);
    for (std::size_t k = 1; k <= q; ++k) {
        Polynomial acc(m.context());
        std::vector<std::size_t> comb(k);
        for (std::size_t i = 0; i < k; ++i) comb[i] = i;
        while (true) {
            acc += polymat_det(m.submatrix(comb, comb));
            std::size_t i = k;
            bool done = true;
            while (i > 0) {
                --i;
                if (comb[i] != i + q - k) {
                    done = false;
                    break;
                }
            }
            if (done) break;
            ++comb[i];
            for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
        }
        sums.push_back(std::move(acc));
    }
    return sums;
}

PointClassification classify_point_x(const std::vector<Scalar>& x, const MIB& mib, double tol) {
    const std::size_t q = mib.size();
    const std::size_t n = mib.var_context()->size();
    if (x.size() != n)
        throw Error(Error::Kind::Dimension, "point dimension does not match the variable context");

    PointClassification out;
    out.p_values.reserve(q);
    for (std::size_t a = 0; a < q; ++a) out.p_values.push_back(mib.entry(a).poly.evaluate(x));

    // gradient values exactly, then the Gram numerically from exact scalars
    std::vector<std::vector<Scalar>> grad(q, std::vector<Scalar>());
    for (std::size_t a = 0; a < q; ++a) {
        grad[a].reserve(n);
        for (std::size_t j = 0; j < n; ++j)
            grad[a].push_back(mib.entry(a).poly.derivative(j).evaluate(x));
    }
    FloatMatrix gram(q, q, true);
    double frob = 0.0;
    for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = a; b < q; ++b) {
            Scalar acc(0);
            for (std::size_t j = 0; j < n; ++j) acc += grad[a][j] * grad[b][j];
            const double v = acc.to_double();
            gram.at(a, b) = v;
            gram.at(b, a) = v;
            frob += (a == b ? 1.0 : 2.0) * v * v;
        }
    const double eigen_tol = 1e-13 * std::max(1.0, std::sqrt(frob));
    out.signature = signature_from_eigenvalues(sym_eigen(gram, eigen_tol), tol);
    return out;
}

MembershipReport orbit_space_membership(const std::vector<double>& p_point,
                                        const PHatMatrix& phat,
                                        const std::vector<Polynomial>& relations,
                                        double tol_variety, double tol_psd) {
    const std::size_t q = phat.mat.rows();
    if (p_point.size() != q)
        throw Error(Error::Kind::Dimension, "point length must equal the basis size");

    MembershipReport rep;
    bool relations_ok = true;
    for (const auto& rel : relations) {
        const double r = rel.evaluate_double(p_point);
        rep.relation_residuals.push_back(r);
        if (std::abs(r) >= tol_variety) relations_ok = false;
    }

    FloatMatrix m(q, q, true);
    double frob = 0.0;
    for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = a; b < q; ++b) {
            const double v = phat.mat.at(a, b).evaluate_double(p_point);
            m.at(a, b) = v;
            m.at(b, a) = v;
            frob += (a == b ? 1.0 : 2.0) * v * v;
        }
    const double eigen_tol = 1e-13 * std::max(1.0, std::sqrt(frob));
    rep.signature = signature_from_eigenvalues(sym_eigen(m, eigen_tol), tol_psd);
    rep.rank = rep.signature.rank;
    rep.member = relations_ok && rep.signature.psd;
    return rep;
}

namespace {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline double to_unit(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

} // namespace

std::vector<double> sample_point(const std::vector<std::pair<double, double>>& box, long index,
                                 std::uint64_t seed) {
    std::uint64_t state = seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(index + 1);
    std::vector<double> p(box.size());
    for (std::size_t j = 0; j < box.size(); ++j) {
        const double u = to_unit(splitmix64(state));
        p[j] = box[j].first + u * (box[j].second - box[j].first);
    }
    return p;
}

SampleResult sample_region(const std::vector<Polynomial>& strict_positive,
                           const std::vector<std::pair<double, double>>& box, long n,
                           std::uint64_t seed, double tol) {
    if (n <= 0) throw Error(Error::Kind::Validation, "sample count must be positive");
    SampleResult res;
    res.tested = n;
    for (long i = 0; i < n; ++i) {
        std::vector<double> p = sample_point(box, i, seed);
        bool in = true;
        for (const auto& g : strict_positive) {
            if (!(g.evaluate_double(p) > tol)) {
                in = false;
                break;
            }
        }
        if (in) res.points.push_back(std::move(p));
    }
    return res;
}

} // namespace orbitstrata

#include "folijet/realization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace folijet {

namespace {

CVector to_vector(const std::vector<Complex>& v) {
    CVector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
    return out;
}

double singular_ratio(const CMatrix& m) {
    if (m.rows() == 0) return 1.0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    const auto& sv = svd.singularValues();
    const double top = sv(0);
    if (top == 0.0) return 0.0;
    const Eigen::Index rank_needed = std::min(m.rows(), m.cols());
    return sv(rank_needed - 1) / top;
}

std::string lambda_factor_name(int k, std::size_t i) {
    return "(1-" + std::to_string(k) + "*lambda_" + std::to_string(i + 1) + ")";
}

double max_abs(const CVector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace

CMatrix build_V(const FoliationPairData& fp) {
    const std::vector<Complex> pts = fp.points.all();
    CMatrix V(static_cast<Eigen::Index>(pts.size()), 4);
    for (std::size_t r = 0; r < pts.size(); ++r) {
        Complex pw = 1.0;
        for (int c = 0; c < 4; ++c) {
            V(static_cast<Eigen::Index>(r), c) = pw;
            pw *= pts[r];
        }
    }
    return V;
}

CMatrix build_Ak(const FoliationPairData& fp, int k) {
    if (k < 1) throw std::invalid_argument("build_Ak: k must be >= 1");
    const auto& p = fp.points.p;
    const auto& q = fp.points.q;
    const Eigen::Index np = static_cast<Eigen::Index>(p.size()), nq = static_cast<Eigen::Index>(q.size());
    CMatrix A = CMatrix::Zero(np + nq, np + nq);
    for (Eigen::Index i = 0; i < np; ++i) {
        A(i, i) = 1.0 - static_cast<double>(k) * fp.singular[static_cast<std::size_t>(i)].lambda;
        for (Eigen::Index j = 0; j < nq; ++j)
            A(i, np + j) = 1.0 / (p[static_cast<std::size_t>(i)] - q[static_cast<std::size_t>(j)]);
    }
    A.bottomRightCorner(nq, nq) = build_Atilde(fp, k);
    return A;
}

CMatrix build_Atilde(const FoliationPairData& fp, int k) {
    const auto& q = fp.points.q;
    const Eigen::Index nq = static_cast<Eigen::Index>(q.size());
    CMatrix A(nq, nq);
    for (Eigen::Index j = 0; j < nq; ++j)
        for (Eigen::Index l = 0; l < nq; ++l)
            A(j, l) = j == l ? theta(fp.tangency[static_cast<std::size_t>(j)], fp.background, k)
                             : 1.0 / (q[static_cast<std::size_t>(j)] - q[static_cast<std::size_t>(l)]);
    return A;
}

CMatrix build_Lambda(const FoliationPairData& fp) {
    const auto& q = fp.points.q;
    const Eigen::Index nq = static_cast<Eigen::Index>(q.size());
    CMatrix L(nq, nq + 4);
    L.leftCols(nq) = build_Atilde(fp, 1);
    for (Eigen::Index j = 0; j < nq; ++j) {
        Complex pw = 1.0;
        for (int c = 0; c < 4; ++c) {
            L(j, nq + c) = pw;
            pw *= q[static_cast<std::size_t>(j)];
        }
    }
    return L;
}

CMatrix lambda_J(const CMatrix& lambda, const std::vector<int>& J) {
    const Eigen::Index m = lambda.rows();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index c = 0; c < lambda.cols(); ++c) {
        const bool drop = c < m && std::find(J.begin(), J.end(), static_cast<int>(c) + 1) != J.end();
        if (!drop) keep.push_back(c);
    }
    CMatrix out(m, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = lambda.col(keep[i]);
    return out;
}

std::vector<std::vector<int>> lambda_index_families(int m) {
    std::vector<std::vector<int>> out;
    if (m <= 4) return out;
    for (int s = 1; 4 * s <= m; ++s) out.push_back({4 * s - 3, 4 * s - 2, 4 * s - 1, 4 * s});
    out.push_back({m - 3, m - 2, m - 1, m});
    return out;
}

CMatrix build_Lambda_tilde(const std::vector<Complex>& y, const std::vector<Complex>& theta) {
    const std::size_t s = theta.size();
    if (y.size() != s + 4) throw std::invalid_argument("build_Lambda_tilde needs s + 4 points for s thetas");
    const Eigen::Index n = static_cast<Eigen::Index>(s + 4);
    CMatrix L(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const Complex yr = y[static_cast<std::size_t>(r)];
        for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(s); ++c)
            L(r, c) = r == c ? theta[static_cast<std::size_t>(r)] : 1.0 / (yr - y[static_cast<std::size_t>(c)]);
        Complex pw = 1.0;
        for (int c = 0; c < 4; ++c) {
            L(r, static_cast<Eigen::Index>(s) + c) = pw;
            pw *= yr;
        }
    }
    return L;
}

double normalized_det(const CMatrix& m, Complex* det) {
    if (m.rows() != m.cols()) throw std::invalid_argument("normalized_det needs a square matrix");
    if (m.rows() == 0) {
        if (det) *det = 1.0;
        return 1.0;
    }
    const Complex d = m.partialPivLu().determinant();
    if (det) *det = d;
    double norms = 1.0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        norms *= std::max(1.0, m.row(r).norm());
    }
    return std::abs(d) / norms;
}

GenericityCertificate check_genericity(const FoliationPairData& fp, int k0, double threshold,
                                       const std::optional<std::vector<Complex>>& quadratics) {
    GenericityCertificate cert;
    cert.k0 = k0 > 0 ? k0 : fp.k0;
    cert.threshold = threshold;
    const std::size_t np = fp.points.p.size(), nq = fp.points.q.size();
    auto add = [&](std::string name, Complex value, double normalized) {
        cert.entries.push_back({std::move(name), value, normalized, normalized > threshold});
    };
    for (int k = 1; k <= cert.k0; ++k) {
        for (std::size_t i = 0; i < np; ++i) {
            const Complex f = 1.0 - static_cast<double>(k) * fp.singular[i].lambda;
            add(lambda_factor_name(k, i), f, std::abs(f) / (1.0 + std::abs(static_cast<double>(k) * fp.singular[i].lambda)));
        }
        Complex dt, da;
        const double nt = normalized_det(build_Atilde(fp, k), &dt);
        const CMatrix A = build_Ak(fp, k);
        normalized_det(A, &da);
        cert.det_Atilde.push_back(dt);
        cert.det_A.push_back(da);
        const double ratio = singular_ratio(A);
        cert.condition.push_back(ratio > 0.0 ? 1.0 / ratio : INFINITY);
        add("det(A~_" + std::to_string(k) + ")", dt, nt);
    }

    const CMatrix lambda = build_Lambda(fp);
    const auto families = lambda_index_families(static_cast<int>(nq));
    for (std::size_t s = 0; s < families.size(); ++s) {
        Complex d;
        const double n = normalized_det(lambda_J(lambda, families[s]), &d);
        add("det(Lambda_J" + std::to_string(s + 1) + ")", d, n);
        cert.lambda_route = cert.lambda_route && n > threshold;
    }

    const CMatrix A1 = build_Ak(fp, 1);
    const CMatrix V = build_V(fp);
    const Eigen::Index N = A1.rows();
    for (std::size_t j = 0; j < nq; ++j) {
        const Eigen::Index drop = static_cast<Eigen::Index>(np + j);
        CMatrix M(N, N - 1 + 4);
        M.leftCols(drop) = A1.leftCols(drop);
        M.middleCols(drop, N - 1 - drop) = A1.rightCols(N - 1 - drop);
        M.rightCols(4) = V;
        const double r = singular_ratio(M);
        add("rank[A_1|V] without z_" + std::to_string(j + 1), r, r);
        cert.rank_route = cert.rank_route && r > threshold;
    }
    cert.routes_agree = cert.lambda_route == cert.rank_route;

    cert.verdict = true;
    for (const CertificateEntry& e : cert.entries) {
        if (e.ok) continue;
        cert.verdict = false;
        cert.offending = e.name;
        break;
    }

    if (quadratics) {
        if (quadratics->size() != static_cast<std::size_t>(N))
            throw std::invalid_argument("check_genericity: one quadratic coefficient per marked point is required");
        const CVector a = to_vector(*quadratics);
        const CVector y = A1.partialPivLu().solve(a);
        bool ok = true;
        for (std::size_t j = 0; j < nq; ++j)
            ok = ok && std::abs(2.0 * y(static_cast<Eigen::Index>(np + j))) > threshold * std::max(1.0, max_abs(a));
        cert.quadratics_admissible = ok;
    }
    return cert;
}

TangencyCurveJets shift_quadratics(const TangencyCurveJets& curve, const FoliationPairData& fp,
                                   const std::vector<Complex>& w) {
    if (w.size() != 4) throw std::invalid_argument("shift_quadratics: correction needs 4 coefficients");
    if (curve.p.size() != fp.points.p.size() || curve.q.size() != fp.points.q.size())
        throw std::invalid_argument("shift_quadratics: branch count mismatch");
    const CVector shift = build_V(fp) * to_vector(w);
    TangencyCurveJets out = curve;
    for (std::size_t i = 0; i < out.p.size(); ++i) out.p[i].coeffs[1] += shift(static_cast<Eigen::Index>(i));
    for (std::size_t j = 0; j < out.q.size(); ++j)
        out.q[j].coeffs[1] += shift(static_cast<Eigen::Index>(out.p.size() + j));
    return out;
}

RealizationResult realize(const FoliationPairData& tmpl, const TangencyCurveJets& curve, int k0,
                          const RealizationOptions& opt) {
    const int K = k0 > 0 ? k0 : tmpl.k0;
    if (K < 1 || K > kMaxOrder) throw InputError("realization order out of range");
    const std::size_t np = tmpl.points.p.size(), nq = tmpl.points.q.size();
    if (curve.p.size() != np || curve.q.size() != nq)
        throw InputError("the curve needs one branch per marked point");
    for (std::size_t i = 0; i < np; ++i)
        if (curve.p[i].anchor != tmpl.points.p[i] || curve.p[i].order() < K)
            throw InputError("branch " + std::to_string(i + 1) + " at p does not match its point or is too short");
    for (std::size_t j = 0; j < nq; ++j)
        if (curve.q[j].anchor != tmpl.points.q[j] || curve.q[j].order() < K)
            throw InputError("branch " + std::to_string(j + 1) + " at q does not match its point or is too short");

    RealizationResult res;
    TangencyCurveJets target = curve;
    std::vector<Complex> quads;
    for (const auto& b : target.p) quads.push_back(b.c(1));
    for (const auto& b : target.q) quads.push_back(b.c(1));
    res.certificate = check_genericity(tmpl, K, opt.threshold, quads);
    if (!res.certificate.verdict)
        throw DegenerateError("genericity check failed at factor " + res.certificate.offending);
    res.quadratic_shift.assign(4, Complex(0.0));

    FoliationPairData work = tmpl;
    work.k0 = K;
    for (auto& sm : work.singular) sm.s = XJet<Complex>::zero(K);
    for (auto& tm : work.tangency) tm.z = XJet<Complex>::zero(K);
    const CMatrix V = build_V(tmpl);

    for (int k = 1; k <= K; ++k) {
        const TangencyCurveJets off = compute_tangency(work, k, opt.normal_form);
        CVector rhs(static_cast<Eigen::Index>(np + nq));
        for (std::size_t i = 0; i < np; ++i) rhs(static_cast<Eigen::Index>(i)) = target.p[i].c(k) - off.p[i].c(k);
        for (std::size_t j = 0; j < nq; ++j)
            rhs(static_cast<Eigen::Index>(np + j)) = target.q[j].c(k) - off.q[j].c(k);
        const Eigen::PartialPivLU<CMatrix> lu(build_Ak(tmpl, k));
        CVector y = lu.solve(rhs);
        if (k == 1 && nq > 0) {
            auto admissible = [&](const CVector& sol, const CVector& r) {
                for (std::size_t j = 0; j < nq; ++j)
                    if (std::abs(2.0 * sol(static_cast<Eigen::Index>(np + j))) <=
                        tmpl.tol.abs + tmpl.tol.rel * std::max(1.0, max_abs(r)))
                        return false;
                return true;
            };
            if (!admissible(y, rhs)) {
                bool fixed = false;
                if (opt.auto_shift_quadratics) {
                    const double scale = std::max(1.0, max_abs(rhs));
                    const std::vector<std::vector<Complex>> candidates = {
                        {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 1, 1}};
                    for (const auto& cand : candidates) {
                        std::vector<Complex> w = cand;
                        for (Complex& c : w) c *= scale;
                        const CVector r2 = rhs + V * to_vector(w);
                        const CVector y2 = lu.solve(r2);
                        if (!admissible(y2, r2)) continue;
                        target = shift_quadratics(target, tmpl, w);
                        res.quadratic_shift = w;
                        y = y2;
                        fixed = true;
                        break;
                    }
                }
                if (!fixed)
                    throw NonGenericError(
                        "recovered z_{j,1} vanishes: the curve quadratics lie in an excluded subspace");
            }
        }
        for (std::size_t i = 0; i < np; ++i) work.singular[i].s[k] = y(static_cast<Eigen::Index>(i));
        for (std::size_t j = 0; j < nq; ++j) work.tangency[j].z[k] = -2.0 * y(static_cast<Eigen::Index>(np + j));
    }

    res.recomputed = compute_tangency(work, K, opt.normal_form);
    for (std::size_t i = 0; i < np; ++i)
        for (int k = 1; k <= K; ++k)
            res.residual = std::max(res.residual, std::abs(target.p[i].c(k) - res.recomputed.p[i].c(k)));
    for (std::size_t j = 0; j < nq; ++j)
        for (int k = 1; k <= K; ++k)
            res.residual = std::max(res.residual, std::abs(target.q[j].c(k) - res.recomputed.q[j].c(k)));
    res.data = work;
    return res;
}

}  // namespace folijet

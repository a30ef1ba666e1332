#include "fgpe/linalg.hpp"

#include <cmath>

namespace fgpe {

namespace {

void project_out(Vec& v, const Vec* c, double cc) {
    if (!c) return;
    const double a = dot(*c, v) / cc;
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= a * (*c)[k];
}

}  // namespace

double dot(const Vec& a, const Vec& b) {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
    return acc;
}

CgResult pcg(const LinearMap& A, const LinearMap& precond, const Vec& b, Vec& x, double tol,
             int max_iter, const Vec* constraint) {
    CgResult res;
    const double cc = constraint ? dot(*constraint, *constraint) : 1.0;
    Vec rhs = b;
    project_out(rhs, constraint, cc);
    project_out(x, constraint, cc);
    const double bnorm = std::sqrt(dot(rhs, rhs));
    if (bnorm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        res.converged = true;
        return res;
    }
    Vec r(b.size()), z(b.size()), p(b.size()), Ap(b.size());
    A(x, Ap);
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = rhs[k] - Ap[k];
    project_out(r, constraint, cc);
    precond(r, z);
    project_out(z, constraint, cc);
    p = z;
    double rz = dot(r, z);
    for (int it = 0; it < max_iter; ++it) {
        res.relative_residual = std::sqrt(dot(r, r)) / bnorm;
        if (res.relative_residual <= tol) {
            res.converged = true;
            return res;
        }
        A(p, Ap);
        project_out(Ap, constraint, cc);
        const double pAp = dot(p, Ap);
        if (!(pAp > 0.0)) {
            res.negative_curvature = true;
            return res;
        }
        const double alpha = rz / pAp;
        for (std::size_t k = 0; k < x.size(); ++k) {
            x[k] += alpha * p[k];
            r[k] -= alpha * Ap[k];
        }
        precond(r, z);
        project_out(z, constraint, cc);
        const double rz_new = dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t k = 0; k < p.size(); ++k) p[k] = z[k] + beta * p[k];
        res.iterations = it + 1;
    }
    res.relative_residual = std::sqrt(dot(r, r)) / bnorm;
    res.converged = res.relative_residual <= tol;
    return res;
}

}  // namespace fgpe

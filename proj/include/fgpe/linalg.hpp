#pragma once

#include <functional>
#include <vector>

namespace fgpe {

using Vec = std::vector<double>;
using LinearMap = std::function<void(const Vec& in, Vec& out)>;

struct CgResult {
    int iterations = 0;
    double relative_residual = 0.0;
    bool converged = false;
    bool negative_curvature = false;
};

double dot(const Vec& a, const Vec& b);

// Preconditioned conjugate gradients for A x = b with A symmetric positive definite.
// If `constraint` is given, iterates stay orthogonal to it and A only needs to be definite on
// that complement. x holds the initial guess on entry.
CgResult pcg(const LinearMap& A, const LinearMap& precond, const Vec& b, Vec& x, double tol,
             int max_iter, const Vec* constraint = nullptr);

}  // namespace fgpe

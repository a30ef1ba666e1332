#pragma once

#include <cmath>

#include "fgpe/functionals.hpp"
#include "fgpe/linalg.hpp"

namespace fgpe::detail {

// y = ((-Delta)^s + V + diag + shift) x; diag may be empty.
inline void apply_operator(const Discretization& d, const Vec& diag, double shift, const Vec& x,
                           Vec& y) {
    ScalarField f(d.grid, x);
    ScalarField lx = frac_laplacian(f, d.symbol);
    y.resize(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        double a = d.potential.value[k] + shift;
        if (!diag.empty()) a += diag[k];
        y[k] = lx.values[k] + a * x[k];
    }
}

// Symmetric split preconditioner (V + c)^{-1/2} (m + c)^{-1} (V + c)^{-1/2}.
class SplitPreconditioner {
public:
    SplitPreconditioner(const Discretization& d, double c) : d_(d) {
        scale_.resize(d.grid.size());
        for (std::size_t k = 0; k < scale_.size(); ++k)
            scale_[k] = 1.0 / std::sqrt(d.potential.value[k] + c);
        resolvent_ = d.symbol.table();
        for (double& m : resolvent_) m = 1.0 / (m + c);
    }

    void operator()(const Vec& in, Vec& out) const {
        ScalarField f(d_.grid);
        for (std::size_t k = 0; k < in.size(); ++k) f.values[k] = scale_[k] * in[k];
        ScalarField g = apply_multiplier(f, resolvent_);
        out.resize(in.size());
        for (std::size_t k = 0; k < in.size(); ++k) out[k] = scale_[k] * g.values[k];
    }

private:
    const Discretization& d_;
    Vec scale_;
    Vec resolvent_;
};

}  // namespace fgpe::detail

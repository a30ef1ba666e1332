#include "fgpe/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "fgpe/errors.hpp"

namespace fgpe {

namespace {

struct PlanPair {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
    ~PlanPair() {
        if (r2c) fftw_destroy_plan(r2c);
        if (c2r) fftw_destroy_plan(c2r);
    }
};

// FFTW planning is not thread-safe; execution with the new-array interface is.
const PlanPair& plans_for(std::size_t n) {
    static std::mutex mutex;
    static std::map<std::size_t, std::unique_ptr<PlanPair>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;
    const int ni = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    std::vector<double> real(n * n);
    std::vector<std::complex<double>> cplx(n * (n / 2 + 1));
    auto pair = std::make_unique<PlanPair>();
    auto* c = reinterpret_cast<fftw_complex*>(cplx.data());
    pair->r2c = fftw_plan_dft_r2c_2d(ni, ni, real.data(), c, flags);
    pair->c2r = fftw_plan_dft_c2r_2d(ni, ni, c, real.data(), flags);
    if (!pair->r2c || !pair->c2r) throw NumericalError("FFTW planning failed");
    return *cache.emplace(n, std::move(pair)).first->second;
}

void require_symbol_grid(const ScalarField& u, const FractionalSymbol& sym) {
    if (u.grid != sym.grid()) throw NumericalError("symbol built on a different grid than the field");
}

}  // namespace

Spectrum forward(const ScalarField& u) {
    Spectrum out(u.grid);
    // r2c with FFTW_ESTIMATE does not modify its input, but the interface takes a non-const pointer.
    std::vector<double> in = u.values;
    fftw_execute_dft_r2c(plans_for(u.grid.n()).r2c, in.data(),
                         reinterpret_cast<fftw_complex*>(out.coeffs.data()));
    return out;
}

ScalarField inverse(const Spectrum& spec) {
    ScalarField out(spec.grid);
    std::vector<std::complex<double>> tmp = spec.coeffs;  // c2r destroys its input
    fftw_execute_dft_c2r(plans_for(spec.grid.n()).c2r, reinterpret_cast<fftw_complex*>(tmp.data()),
                         out.values.data());
    const double scale = 1.0 / static_cast<double>(spec.grid.size());
    for (double& v : out.values) v *= scale;
    return out;
}

double column_weight(std::size_t l, std::size_t n) noexcept {
    return (l == 0 || l == n / 2) ? 1.0 : 2.0;
}

double spectral_quadratic(const Spectrum& spec, const std::vector<double>* weights) {
    const std::size_t n = spec.grid.n();
    const std::size_t cols = spec.cols();
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < cols; ++l) {
            const std::size_t idx = k * cols + l;
            double w = column_weight(l, n) * std::norm(spec.coeffs[idx]);
            if (weights) w *= (*weights)[idx];
            acc += w;
        }
    // Parseval: sum |u|^2 = n^-2 sum |u_hat|^2, then quadrature weight h^2.
    return acc * spec.grid.cell_area() / static_cast<double>(spec.grid.size());
}

FractionalSymbol::FractionalSymbol(const Grid2D& grid, double s)
    : grid_(grid), s_(s), table_(grid.n() * (grid.n() / 2 + 1)) {
    if (!(s > 0.0 && s <= 1.0)) throw ConfigError("fractional order must lie in (0, 1]");
    const std::size_t n = grid.n();
    const std::size_t cols = n / 2 + 1;
    for (std::size_t k = 0; k < n; ++k) {
        const double a = grid.wavenumber(k);
        for (std::size_t l = 0; l < cols; ++l) {
            const double b = grid.wavenumber(l);
            const double xi2 = a * a + b * b;
            double m = 0.0;
            if (xi2 > 0.0) m = (s == 1.0) ? xi2 : std::pow(xi2, s);
            table_[k * cols + l] = m;
        }
    }
    // Real output of the c2r transform requires m(k, l) = m(-k, -l) on the self-conjugate columns.
    for (std::size_t l : {std::size_t{0}, n / 2})
        for (std::size_t k = 1; k < n; ++k)
            if (table_[k * cols + l] != table_[(n - k) * cols + l])
                throw NumericalError("fractional symbol is not reflection symmetric");
}

ScalarField frac_laplacian(const ScalarField& u, const FractionalSymbol& sym) {
    require_symbol_grid(u, sym);
    require_finite(u, "frac_laplacian");
    Spectrum spec = forward(u);
    const auto& m = sym.table();
    for (std::size_t idx = 0; idx < spec.coeffs.size(); ++idx) spec.coeffs[idx] *= m[idx];
    return inverse(spec);
}

double frac_seminorm_sq(const ScalarField& u, const FractionalSymbol& sym) {
    require_symbol_grid(u, sym);
    require_finite(u, "frac_seminorm_sq");
    return spectral_quadratic(forward(u), &sym.table());
}

ScalarField apply_multiplier(const ScalarField& u, const std::vector<double>& table) {
    Spectrum spec = forward(u);
    if (table.size() != spec.coeffs.size()) throw NumericalError("multiplier table size mismatch");
    for (std::size_t idx = 0; idx < spec.coeffs.size(); ++idx) spec.coeffs[idx] *= table[idx];
    return inverse(spec);
}

ScalarField apply_symbol_function(const ScalarField& u, const FractionalSymbol& sym,
                                  const std::function<double(double)>& g) {
    require_symbol_grid(u, sym);
    Spectrum spec = forward(u);
    const auto& m = sym.table();
    for (std::size_t idx = 0; idx < spec.coeffs.size(); ++idx) spec.coeffs[idx] *= g(m[idx]);
    return inverse(spec);
}

}  // namespace fgpe

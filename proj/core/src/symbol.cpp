#include "relspec/symbol.hpp"

#include <cmath>
#include <functional>

#include <unsupported/Eigen/FFT>

namespace relspec {

cplx AnalyticSymbol::eval(cplx z) const {
    cplx acc = 0.0;
    for (Eigen::Index m = coeffs.size() - 1; m >= 0; --m) acc = acc * z + coeffs(m);
    return acc;
}

double AnalyticSymbol::derivative_bound() const {
    double s = 0.0;
    for (Eigen::Index m = 1; m < coeffs.size(); ++m)
        s += static_cast<double>(m) * std::abs(coeffs(m));
    return s;
}

namespace {

// Taylor coefficients c_0..c_degree of f, read off a circle of radius q < 1.
Vector fft_taylor(const std::function<cplx(cplx)>& f, int degree, double q) {
    const int nfft = 1 << 15;
    std::vector<cplx> vals(nfft), hat(nfft);
    for (int k = 0; k < nfft; ++k)
        vals[k] = f(std::polar(q, 2.0 * M_PI * k / nfft));
    Eigen::FFT<double> fft;
    fft.fwd(hat, vals);
    Vector c(degree + 1);
    double qm = 1.0;
    for (int m = 0; m <= degree; ++m) {
        c(m) = hat[m] / (static_cast<double>(nfft) * qm);
        qm *= q;
    }
    return c;
}

constexpr int kScanGrid = 1 << 17;

struct BoundaryScan {
    double re_min, re_max, im_min, im_max;
};

// boundary values at the kScanGrid roots of unity via FFT
BoundaryScan scan_boundary(const Vector& c) {
    std::vector<cplx> padded(kScanGrid, cplx(0.0, 0.0)), vals;
    for (Eigen::Index m = 0; m < c.size(); ++m) padded[static_cast<std::size_t>(m)] = c(m);
    Eigen::FFT<double> fft;
    fft.inv(vals, padded);
    BoundaryScan s{std::numeric_limits<double>::infinity(),
                   -std::numeric_limits<double>::infinity(),
                   std::numeric_limits<double>::infinity(),
                   -std::numeric_limits<double>::infinity()};
    for (const cplx& raw : vals) {
        const cplx v = static_cast<double>(kScanGrid) * raw;
        s.re_min = std::min(s.re_min, v.real());
        s.re_max = std::max(s.re_max, v.real());
        s.im_min = std::min(s.im_min, v.imag());
        s.im_max = std::max(s.im_max, v.imag());
    }
    return s;
}

double coeff_derivative_bound(const Vector& c) {
    double s = 0.0;
    for (Eigen::Index m = 1; m < c.size(); ++m)
        s += static_cast<double>(m) * std::abs(c(m));
    return s;
}

}  // namespace

AnalyticSymbol build_symbol(double rho, double r, double eps0, int degree) {
    if (!(rho > 0.0) || !(eps0 > 0.0) || degree < 4)
        throw ConstructionError("build_symbol: need rho > 0, eps0 > 0, degree >= 4");
    if (!(std::abs(r) < rho))
        throw ConstructionError("build_symbol: r must lie strictly inside (-rho, rho)");

    Vector c;
    if (eps0 >= 2.05 * rho) {
        // fat regime: disk map rho (z + sigma)/(1 + sigma z) + ic, plain
        // truncation (geometric coefficient decay)
        double center = rho * 1.001;
        if (center + rho > eps0) center = eps0 - rho - 1e-9;
        const double sigma = r / rho;
        auto w = [rho, sigma, center](cplx z) {
            return rho * (z + sigma) / (1.0 + sigma * z) + cplx(0.0, center);
        };
        c = fft_taylor(w, degree, 0.99);
    } else {
        // thin regime: strip-log-sine map, Fejer truncation keeps the
        // boundary values inside the convex hull of the exact image
        const double th = std::min(0.98, 0.9 * eps0 / (2.0 * 0.95 * rho));
        const double s = std::atanh(th);
        const double kappa = 0.95 * rho / std::cosh(s);
        const double center = kappa * std::sinh(s) * 1.05;
        auto w0 = [s, kappa, center](cplx z, double u0) {
            const cplx u = (2.0 * s / M_PI) * std::log((1.0 + z) / (1.0 - z));
            return kappa * std::sin(u + u0) + cplx(0.0, center);
        };
        // phase shift placing Re w(0) = kappa sin(u0) = r; the strip image of
        // the disk is invariant under the shift, so the boundary box is too
        if (!(std::abs(r) < kappa * (1.0 - 1e-9)))
            throw ConstructionError(
                "build_symbol: r too close to the interval edge for the "
                "thin-height sine map (|r| must stay below 0.95 rho)");
        const double u0 = std::asin(r / kappa);
        auto w = [&w0, u0](cplx z) { return w0(z, u0); };
        c = fft_taylor(w, degree, 0.99);
        for (int m = 0; m <= degree; ++m)
            c(m) *= 1.0 - static_cast<double>(m) / (degree + 1.0);
    }

    // post-correction to a fixed point: lift Im above zero, shrink the m >= 1
    // oscillation around the center value until Re fits inside [-rho, rho],
    // both with the between-grid derivative slack folded in
    for (int iter = 0;; ++iter) {
        if (iter == 8)
            throw ConstructionError("build_symbol: post-correction did not converge");
        const BoundaryScan s = scan_boundary(c);
        const double slack = coeff_derivative_bound(c) * (M_PI / kScanGrid);
        bool changed = false;
        if (s.im_min - slack < 1e-13) {
            c(0) += cplx(0.0, 1e-13 + slack - s.im_min);
            changed = true;
        }
        const double rc = c(0).real();
        const double s_hi = (rho - rc) / std::max(s.re_max - rc + slack, 1e-300);
        const double s_lo = (rho + rc) / std::max(rc - s.re_min + slack, 1e-300);
        if (std::min(s_hi, s_lo) < 1.0) {
            const double shrink = std::min(s_hi, s_lo) * (1.0 - 1e-12);
            for (Eigen::Index m = 1; m < c.size(); ++m) c(m) *= shrink;
            changed = true;
        }
        if (!changed) break;
    }
    c(0) = cplx(r, c(0).imag());

    AnalyticSymbol sym;
    sym.coeffs = std::move(c);
    sym.rho = rho;
    sym.r = r;
    sym.eps0 = eps0;
    const BoundaryScan fin = scan_boundary(sym.coeffs);
    sym.re_min = fin.re_min;
    sym.re_max = fin.re_max;
    sym.im_min = fin.im_min;
    sym.im_max = fin.im_max;
    const double slack = sym.derivative_bound() * (M_PI / kScanGrid);
    if (fin.im_min - slack < -1e-12 || fin.im_max + slack > eps0 + 1e-12 ||
        fin.re_min - slack < -rho - 1e-12 || fin.re_max + slack > rho + 1e-12)
        throw ConstructionError("build_symbol: boundary range certificate failed");
    if (!(sym.coeffs(0).imag() > 0.0) || !(sym.coeffs(0).imag() < eps0))
        throw ConstructionError("build_symbol: Im w(0) not in (0, eps0)");
    return sym;
}

Matrix toeplitz(const Vector& coeffs, long min_index, Eigen::Index N) {
    Matrix m = Matrix::Zero(N, N);
    for (Eigen::Index j = 0; j < N; ++j)
        for (Eigen::Index k = 0; k < N; ++k) {
            const long idx = static_cast<long>(j - k) - min_index;
            if (idx >= 0 && idx < coeffs.size()) m(j, k) = coeffs(idx);
        }
    return m;
}

Matrix toeplitz_real_part(const AnalyticSymbol& s, Eigen::Index N) {
    // b = Re w on the boundary; Fourier coefficients b_0 = Re c_0,
    // b_m = c_m / 2 for m > 0, b_{-m} = conj(b_m)
    const long M = s.degree();
    Vector full(2 * M + 1);
    for (long m = 1; m <= M; ++m) {
        full(M + m) = 0.5 * s.coeffs(m);
        full(M - m) = 0.5 * std::conj(s.coeffs(m));
    }
    full(M) = s.coeffs(0).real();
    return toeplitz(full, -M, N);
}

Matrix toeplitz_imag_part(const AnalyticSymbol& s, Eigen::Index N) {
    // a = Im w; a_m = c_m / (2i) for m > 0
    const long M = s.degree();
    Vector full(2 * M + 1);
    const cplx half_over_i(0.0, -0.5);
    for (long m = 1; m <= M; ++m) {
        full(M + m) = half_over_i * s.coeffs(m);
        full(M - m) = std::conj(half_over_i * s.coeffs(m));
    }
    full(M) = s.coeffs(0).imag();
    return toeplitz(full, -M, N);
}

Matrix toeplitz_analytic(const AnalyticSymbol& s, Eigen::Index N) {
    return toeplitz(s.coeffs, 0, N);
}

}  // namespace relspec

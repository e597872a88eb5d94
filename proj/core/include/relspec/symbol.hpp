#pragma once

#include "relspec/types.hpp"

namespace relspec {

/// Degree-M polynomial w on the unit disk whose boundary values satisfy
/// Im w in [0, eps0], Re w in [-rho, rho], Re w(0) = r, Im w(0) in (0, eps0).
/// The boundary bounds are certified on a sampling grid plus the derivative
/// bound sum m |c_m| between grid points.
struct AnalyticSymbol {
    Vector coeffs;  // c_0 .. c_M
    double rho = 0.0;
    double r = 0.0;
    double eps0 = 0.0;
    // certified boundary ranges
    double re_min = 0.0, re_max = 0.0;
    double im_min = 0.0, im_max = 0.0;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    cplx eval(cplx z) const;
    cplx boundary(double t) const { return eval(std::polar(1.0, t)); }
    /// sum m |c_m|, a bound on |w'| over the closed disk.
    double derivative_bound() const;
};

/// Builds the symbol: a disk-to-thin-domain map (strip-log-sine family, or a
/// disk map when eps0 budget allows a fat domain), precomposed with the real
/// disk automorphism placing Re w(0) = r, truncated to a polynomial and
/// post-corrected so the boundary constraints hold with certificates.
/// Throws ConstructionError when the constraints are unattainable at the
/// given degree (notably when |r| sits too close to the interval edge for
/// the thin-height sine map).
AnalyticSymbol build_symbol(double rho, double r, double eps0, int degree);

/// N x N Toeplitz matrix: entry (j, k) = coefficient with index j - k.
/// `coeffs` covers indices [min_index, min_index + coeffs.size()).
/// Indices outside the range contribute zero.
Matrix toeplitz(const Vector& coeffs, long min_index, Eigen::Index N);

/// Toeplitz matrix of the real part of the symbol's boundary values
/// (Hermitian) and of the imaginary part, respectively.
Matrix toeplitz_real_part(const AnalyticSymbol& s, Eigen::Index N);
Matrix toeplitz_imag_part(const AnalyticSymbol& s, Eigen::Index N);
/// Lower-triangular Toeplitz of the full analytic symbol b + ia.
Matrix toeplitz_analytic(const AnalyticSymbol& s, Eigen::Index N);

}  // namespace relspec

#pragma once

#include <complex>
#include <vector>

namespace sec {

using cplx = std::complex<double>;

// 2D complex spectrum in standard (unshifted) index order, row-major:
// entry (u, v) is frequency u along the height axis, v along the width axis.
struct Spectrum2d {
    int rows = 0;
    int cols = 0;
    std::vector<cplx> v;

    cplx& at(int u, int w) { return v[static_cast<size_t>(u) * cols + w]; }
    cplx at(int u, int w) const { return v[static_cast<size_t>(u) * cols + w]; }
};

// Forward 2D DFT of one real-valued channel with 1/(rows*cols) normalization:
// F(u,v) = (1/(N*M)) * sum_{n,m} A[n,m] * exp(-2*pi*i*(u*n/N + v*m/M)).
// Works for arbitrary sizes (radix-2 where possible, Bluestein otherwise).
Spectrum2d dft2d(const double* data, int rows, int cols);

// Unscaled inverse: together with dft2d's normalization this reconstructs the
// original samples exactly (up to roundoff).  Returns row-major complex grid.
std::vector<cplx> idft2d(const Spectrum2d& spec);

}  // namespace sec

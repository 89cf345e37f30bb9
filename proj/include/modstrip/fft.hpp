#pragma once

#include <Eigen/Core>
#include <complex>

namespace modstrip {

using Real = double;
using Complex = std::complex<double>;
using RArray = Eigen::ArrayXd;
using CArray = Eigen::ArrayXcd;

namespace fft {

/// In-place radix-2 transform, power-of-two length only.
/// sign = -1: X[k] = sum_j x[j] e^{-2pi i jk/n}   (unnormalized)
/// sign = +1: X[k] = sum_j x[j] e^{+2pi i jk/n}   (unnormalized)
void transform(CArray& data, int sign);

CArray forward(CArray in);            // sign -1
CArray inverse_unscaled(CArray in);   // sign +1, no 1/n

/// Centered-grid transform pair. Points x_j = (j - n/2) dx, dual
/// k_m = (m - n/2) dk with dk = 2pi/(n dx).
///
///   centered_dft:  g[m] = dx * sum_j f[j] e^{ i sign k_m x_j }
///   centered_idft: f[j] = (1/(n dx)) * sum_m g[m] e^{ -i sign k_m x_j }
///
/// centered_idft(centered_dft(f, dx, s), dx, s) == f up to roundoff.
CArray centered_dft(const CArray& f, double dx, int sign);
CArray centered_idft(const CArray& g, double dx, int sign);

} // namespace fft
} // namespace modstrip

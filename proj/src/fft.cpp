#include "modstrip/fft.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace modstrip::fft {

namespace {

bool is_pow2(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

} // namespace

void transform(CArray& a, int sign)
{
    const Eigen::Index n = a.size();
    if (!is_pow2(n))
        throw std::invalid_argument("fft: length must be a power of two");
    if (n == 1)
        return;

    // twiddle table: w[k] = e^{ sign * 2pi i k / n }, k < n/2
    std::vector<Complex> w(static_cast<std::size_t>(n / 2));
    const double step = sign * 2.0 * M_PI / static_cast<double>(n);
    for (Eigen::Index k = 0; k < n / 2; ++k)
        w[static_cast<std::size_t>(k)] = std::polar(1.0, step * static_cast<double>(k));

    // bit-reversal permutation
    for (Eigen::Index i = 1, j = 0; i < n; ++i) {
        Eigen::Index bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }

    for (Eigen::Index len = 2; len <= n; len <<= 1) {
        const Eigen::Index stride = n / len;
        for (Eigen::Index i = 0; i < n; i += len) {
            for (Eigen::Index j = 0; j < len / 2; ++j) {
                const Complex tw = w[static_cast<std::size_t>(j * stride)];
                const Complex u = a[i + j];
                const Complex v = a[i + j + len / 2] * tw;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
}

CArray forward(CArray in)
{
    transform(in, -1);
    return in;
}

CArray inverse_unscaled(CArray in)
{
    transform(in, +1);
    return in;
}

// Centered transform via the standard (-1)^j pre/post twiddle:
//   (k - n/2)(j - n/2) = kj - (n/2)(j + k) + n^2/4 (mod n phases)
// so e^{ i sign 2pi (k-n/2)(j-n/2)/n }
//    = e^{ i sign 2pi kj/n } (-1)^j (-1)^k (-1)^{n/2}.
CArray centered_dft(const CArray& f, double dx, int sign)
{
    const Eigen::Index n = f.size();
    if (!is_pow2(n))
        throw std::invalid_argument("centered_dft: length must be a power of two");
    CArray work(n);
    for (Eigen::Index j = 0; j < n; ++j)
        work[j] = (j & 1) ? -f[j] : f[j];
    transform(work, sign);
    const double corner = (n / 2) & 1 ? -dx : dx;
    for (Eigen::Index k = 0; k < n; ++k)
        if (k & 1)
            work[k] = -work[k];
    work *= corner;
    return work;
}

CArray centered_idft(const CArray& g, double dx, int sign)
{
    const Eigen::Index n = g.size();
    if (!is_pow2(n))
        throw std::invalid_argument("centered_idft: length must be a power of two");
    CArray work(n);
    for (Eigen::Index k = 0; k < n; ++k)
        work[k] = (k & 1) ? -g[k] : g[k];
    transform(work, -sign);
    const double scale = 1.0 / (static_cast<double>(n) * dx);
    const double corner = (n / 2) & 1 ? -scale : scale;
    for (Eigen::Index j = 0; j < n; ++j)
        if (j & 1)
            work[j] = -work[j];
    work *= corner;
    return work;
}

} // namespace modstrip::fft

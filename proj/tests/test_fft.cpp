#include "modstrip/fft.hpp"
#include "modstrip/rng.hpp"

#include <doctest.h>

using namespace modstrip;

namespace {

// brute-force oracle, O(n^2)
CArray dft_oracle(const CArray& x, int sign)
{
    const Eigen::Index n = x.size();
    CArray out(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        Complex acc{0.0, 0.0};
        for (Eigen::Index j = 0; j < n; ++j)
            acc += x[j] * std::polar(1.0, sign * 2.0 * M_PI * j * k / double(n));
        out[k] = acc;
    }
    return out;
}

CArray random_vec(Eigen::Index n, Rng& rng)
{
    CArray x(n);
    for (Eigen::Index j = 0; j < n; ++j)
        x[j] = Complex{rng.symmetric(), rng.symmetric()};
    return x;
}

} // namespace

TEST_CASE("radix-2 transform matches the direct DFT")
{
    Rng rng(7);
    for (Eigen::Index n : {2, 8, 64, 256}) {
        const CArray x = random_vec(n, rng);
        const CArray fast = fft::forward(x);
        const CArray slow = dft_oracle(x, -1);
        CHECK((fast - slow).abs().maxCoeff() < 1e-11 * slow.abs().maxCoeff());

        const CArray fast_inv = fft::inverse_unscaled(x);
        const CArray slow_inv = dft_oracle(x, +1);
        CHECK((fast_inv - slow_inv).abs().maxCoeff() < 1e-11 * slow_inv.abs().maxCoeff());
    }
}

TEST_CASE("transform rejects non-power-of-two lengths")
{
    CArray x = CArray::Zero(24);
    CHECK_THROWS_AS(fft::transform(x, -1), std::invalid_argument);
}

TEST_CASE("centered transform round trip and Parseval")
{
    Rng rng(11);
    const double dx = 1.0 / 32.0;
    for (Eigen::Index n : {64, 512}) {
        const CArray f = random_vec(n, rng);
        for (int sign : {-1, +1}) {
            const CArray g = fft::centered_dft(f, dx, sign);
            const CArray back = fft::centered_idft(g, dx, sign);
            CHECK((back - f).abs().maxCoeff() < 1e-12);

            // sum |g|^2 ds = 2pi sum |f|^2 dx
            const double ds = 2.0 * M_PI / (n * dx);
            const double lhs = g.abs2().sum() * ds;
            const double rhs = 2.0 * M_PI * f.abs2().sum() * dx;
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("centered transform of a gaussian matches the continuum pair")
{
    // f(q) = e^{-q^2}  ->  dx sum e^{-isq}: sqrt(pi) e^{-s^2/4}
    const int n = 1024;
    const double dx = 1.0 / 32.0;
    CArray f(n);
    for (int j = 0; j < n; ++j) {
        const double q = (j - n / 2) * dx;
        f[j] = std::exp(-q * q);
    }
    const CArray g = fft::centered_dft(f, dx, -1);
    const double ds = 2.0 * M_PI / (n * dx);
    for (int k = n / 2 - 40; k <= n / 2 + 40; ++k) {
        const double s = (k - n / 2) * ds;
        const double expected = std::sqrt(M_PI) * std::exp(-s * s / 4.0);
        CHECK(std::abs(g[k] - expected) < 1e-10);
    }
}

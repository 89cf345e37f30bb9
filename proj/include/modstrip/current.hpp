#pragma once

#include "modstrip/inner.hpp"
#include "modstrip/rng.hpp"

namespace modstrip {

/// Uniform spatial grid x_j = (j - m/2) dx on [-X, X), m a power of two;
/// dual momentum grid p_k = (k - m/2) dp, dp = 2pi/(m dx).
struct SpatialGrid {
    int m = 8192;
    double dx = 1.0 / 320.0;

    double extent() const { return 0.5 * m * dx; }
    double dp() const { return 2.0 * M_PI / (m * dx); }
    double x(int j) const { return (j - m / 2) * dx; }
    double p(int k) const { return (k - m / 2) * dp(); }

    static SpatialGrid with_extent(int m, double X);
};

bool operator==(const SpatialGrid& a, const SpatialGrid& b);

struct Interval {
    double a = 0.0;
    double b = 0.0;
};

/// Real function with declared compact support.
struct TestFunction {
    SpatialGrid grid;
    RArray values;
    Interval support;

    double l2_norm() const;   // sqrt(dx * sum v^2)
};

/// hat f on the dual grid, convention hat f(p) = (2pi)^{-1/2} int f e^{+ipx} dx.
struct MomentumProfile {
    SpatialGrid grid;
    CArray values;
};

MomentumProfile momentum_profile(const TestFunction& f);
RArray spatial_values(const MomentumProfile& profile);   // real part of the inverse

struct OneParticleForm {
    Complex inner{0.0, 0.0};   // int_0^inf p hat f(p) conj hat g(p) dp
    double symplectic = 0.0;   // Im inner
};

OneParticleForm one_particle_form(const TestFunction& f, const TestFunction& g);
double one_particle_norm(const TestFunction& f);

/// How the multiplier extends to negative momenta.
enum class Extension {
    OneParticle,   // conj phi(-p): preserves the reality constraint
    Naive          // phi(p) everywhere: breaks reality unless phi is symmetric
};

/// Multiplier values phi(p_k) over the dual grid; an atom sitting at p = 0
/// maps that bin to 0 (its vertical limit).
CArray momentum_multiplier(const InnerFunctionSpec& phi, const SpatialGrid& g,
                           Extension ext);

struct MultiplierResult {
    TestFunction func;          // real part; support widened to the right
    double reality_residual;    // ||Im|| / || . || of the complex inverse
};

MultiplierResult apply_multiplier_V(const InnerFunctionSpec& phi, const TestFunction& f,
                                    Extension ext = Extension::OneParticle);

/// Smooth compactly supported bump (x-a)^3 (b-x)^3 times a random polynomial.
TestFunction random_bump(const SpatialGrid& g, Interval support, Rng& rng,
                         int poly_degree = 4);

struct LocalityCertificate {
    std::vector<double> residuals;   // |omega(f1, V f2)| / (||f1|| ||f2||) per pair
    double max_residual = 0.0;
    double tol = 0.0;
    bool pass = false;
};

/// Weyl-generator-level commutation of A(I1) and V A(I2) V*: the symplectic
/// form between I1-bumps and V-transported I2-bumps, swept over seeded
/// random pairs. Requires closure(I1) strictly left of I2, both in range.
LocalityCertificate locality_check(const InnerFunctionSpec& phi, Interval i1, Interval i2,
                                   int n_pairs, double tol, std::uint64_t seed = 0xB0F7,
                                   const SpatialGrid& grid = {});

/// Real compactly supported density with its charge and primitive.
struct ChargeDensity {
    TestFunction ell;

    double charge() const;      // (1/2pi) dx sum ell
    RArray primitive() const;   // L(x_j) = dx sum_{i<=j} ell_i
};

/// Plain bump on `support` scaled to the requested charge.
ChargeDensity bump_density(const SpatialGrid& g, Interval support, double charge);

/// BMT extension data: integer spin N, charge g = sqrt(2N).
struct ExtensionParams {
    int spin = 1;
    double charge() const { return std::sqrt(2.0 * spin); }
};

struct TransportOptions {
    double eps_probe = 1e-6;        // |phi(0) - 1| normalization probe
    double sym_tol = 1e-8;
    int holder_levels = 3;
    double holder_growth_flag = 0.20;
    int delta_bins = 10;            // leakage measured left of -delta_bins*dx
};

struct TransportResult {
    ChargeDensity transported;        // ell_1 with hat ell_1 = phi hat ell
    double reality_residual = 0.0;
    double charge_error = 0.0;        // relative
    double left_leakage = 0.0;        // relative L2 mass on (-inf, -delta)
    std::vector<double> holder_values;           // weighted integral per level
    std::vector<double> holder_unweighted_values; // |1-phi|^2/p alone near 0
    bool holder_divergent = false;
    bool holder_unweighted_divergent = false;
    bool reality_ok = false;
    bool charge_ok = false;
    bool support_ok = false;
};

/// BMT charge transport ell -> ell_1. Throws for non-symmetric phi (reality
/// error) and for |phi(0) - 1| beyond tolerance when phi is continuous at 0
/// (an atom at 0 skips the probe; the Hoelder flag reports its divergence).
TransportResult transport_density(const InnerFunctionSpec& phi, const ChargeDensity& rho,
                                  const TransportOptions& opts = {});

/// Weyl-exponent cocycle identity L1 - (L1)_t = V0 (L - L_t), both sides
/// through separate code paths; returns the relative sup-norm residual.
/// t must be an integer number of grid bins and keep the shifted support
/// inside the grid.
double cocycle_check(const InnerFunctionSpec& phi, const ChargeDensity& rho, double t);

} // namespace modstrip

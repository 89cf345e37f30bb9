#include "modstrip/current.hpp"
#include "modstrip/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace modstrip {

namespace {

const double kSqrt2Pi = std::sqrt(2.0 * M_PI);

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

bool singular_at_zero(const InnerFunctionSpec& phi)
{
    for (const auto& atom : phi.singular.atoms) {
        if (phi.data_domain == DomainTag::Disk) {
            // half-plane origin is the disk point -1
            const double m = std::fmod(std::fmod(atom.location - M_PI, 2 * M_PI) + 2 * M_PI, 2 * M_PI);
            if (std::min(m, 2 * M_PI - m) < 1e-12)
                return true;
        } else if (!atom.at_infinity && atom.location == 0.0) {
            return true;
        }
    }
    return false;
}

RArray shift_samples(const RArray& in, long k, double left_fill, double right_fill)
{
    const Eigen::Index m = in.size();
    RArray out(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        const Eigen::Index i = j - k;
        if (i < 0)
            out[j] = left_fill;
        else if (i >= m)
            out[j] = right_fill;
        else
            out[j] = in[i];
    }
    return out;
}

RArray prefix_sum(const RArray& in, double dx)
{
    RArray out(in.size());
    double acc = 0.0;
    for (Eigen::Index j = 0; j < in.size(); ++j) {
        acc += in[j];
        out[j] = acc * dx;
    }
    return out;
}

// hat ell on a given grid for samples embedded at matching dx
CArray profile_on(const SpatialGrid& g, const RArray& values)
{
    CArray c = values.cast<Complex>();
    return fft::centered_dft(c, g.dx, +1) / kSqrt2Pi;
}

} // namespace

SpatialGrid SpatialGrid::with_extent(int m, double X)
{
    if (!is_pow2(m))
        throw std::invalid_argument("grid size must be a power of two");
    if (X <= 0.0)
        throw std::invalid_argument("grid extent must be positive");
    return {m, 2.0 * X / m};
}

bool operator==(const SpatialGrid& a, const SpatialGrid& b)
{
    return a.m == b.m && a.dx == b.dx;
}

double TestFunction::l2_norm() const { return std::sqrt(grid.dx * values.square().sum()); }

MomentumProfile momentum_profile(const TestFunction& f)
{
    return {f.grid, profile_on(f.grid, f.values)};
}

RArray spatial_values(const MomentumProfile& profile)
{
    const CArray back = fft::centered_idft(profile.values, profile.grid.dx, +1) * kSqrt2Pi;
    return back.real();
}

OneParticleForm one_particle_form(const TestFunction& f, const TestFunction& g)
{
    if (!(f.grid == g.grid))
        throw std::invalid_argument("one_particle_form: grid mismatch");
    const MomentumProfile fp = momentum_profile(f);
    const MomentumProfile gp = momentum_profile(g);
    const SpatialGrid& grid = f.grid;

    Complex acc{0.0, 0.0};
    for (int k = grid.m / 2 + 1; k < grid.m; ++k)
        acc += grid.p(k) * (fp.values[k] * std::conj(gp.values[k]));
    acc *= grid.dp();
    return {acc, acc.imag()};
}

double one_particle_norm(const TestFunction& f)
{
    return std::sqrt(std::max(0.0, one_particle_form(f, f).inner.real()));
}

CArray momentum_multiplier(const InnerFunctionSpec& phi, const SpatialGrid& g,
                           Extension ext)
{
    const InnerFunctionSpec hp = in_domain(phi, DomainTag::UpperHalfPlane);
    const bool zero_singular = singular_at_zero(hp);
    CArray m(g.m);
    for (int k = 0; k < g.m; ++k) {
        const double p = g.p(k);
        if (p == 0.0) {
            if (zero_singular)
                m[k] = Complex{0.0, 0.0};
            else if (ext == Extension::Naive)
                m[k] = boundary_value(hp, 0.0);
            else
                // symmetric limit of the conjugate extension at the origin
                m[k] = boundary_value(hp, 0.0).real();
        } else if (p > 0.0 || ext == Extension::Naive) {
            m[k] = boundary_value(hp, p);
        } else {
            m[k] = std::conj(boundary_value(hp, -p));
        }
    }
    return m;
}

MultiplierResult apply_multiplier_V(const InnerFunctionSpec& phi, const TestFunction& f,
                                    Extension ext)
{
    const SpatialGrid& g = f.grid;
    const CArray mult = momentum_multiplier(phi, g, ext);
    const MomentumProfile fp = momentum_profile(f);
    const CArray image = fp.values * mult;
    const CArray back = fft::centered_idft(image, g.dx, +1) * kSqrt2Pi;

    MultiplierResult out;
    const double total = std::sqrt(back.abs2().sum());
    out.reality_residual = total > 0.0 ? std::sqrt(back.imag().square().sum()) / total : 0.0;
    out.func = TestFunction{g, back.real(), Interval{f.support.a, g.extent()}};
    return out;
}

TestFunction random_bump(const SpatialGrid& g, Interval support, Rng& rng, int poly_degree)
{
    if (!(support.a < support.b))
        throw std::invalid_argument("random_bump: empty support interval");
    if (support.a < -g.extent() || support.b > g.extent())
        throw std::invalid_argument("random_bump: support outside the grid");

    for (;;) {
        std::vector<double> coeff(poly_degree + 1);
        for (auto& c : coeff)
            c = rng.symmetric();
        RArray v = RArray::Zero(g.m);
        for (int j = 0; j < g.m; ++j) {
            const double x = g.x(j);
            if (x <= support.a || x >= support.b)
                continue;
            const double u = (x - support.a) / (support.b - support.a);
            const double base = std::pow(4.0 * u * (1.0 - u), 3);
            double poly = 0.0;
            for (int d = poly_degree; d >= 0; --d)
                poly = poly * (2.0 * u - 1.0) + coeff[d];
            v[j] = base * poly;
        }
        TestFunction f{g, v, support};
        if (f.l2_norm() > 0.05 * std::sqrt(support.b - support.a))
            return f;
        // degenerate polynomial draw; try again
    }
}

LocalityCertificate locality_check(const InnerFunctionSpec& phi, Interval i1, Interval i2,
                                   int n_pairs, double tol, std::uint64_t seed,
                                   const SpatialGrid& grid)
{
    if (!(i1.a < i1.b) || !(i2.a < i2.b))
        throw std::invalid_argument("locality_check: empty interval");
    if (!(i1.b < i2.a))
        throw std::invalid_argument("locality_check: I2 must lie strictly to the right of I1");
    if (i1.a <= -grid.extent() || i2.b >= grid.extent())
        throw std::invalid_argument("locality_check: intervals outside the grid");

    const InnerFunctionSpec hp = in_domain(phi, DomainTag::UpperHalfPlane);
    CArray mult(grid.m / 2 - 1);
    for (int k = grid.m / 2 + 1; k < grid.m; ++k)
        mult[k - grid.m / 2 - 1] = boundary_value(hp, grid.p(k));

    Rng rng(seed);
    std::vector<TestFunction> bumps1, bumps2;
    for (int pair = 0; pair < n_pairs; ++pair) {
        bumps1.push_back(random_bump(grid, i1, rng));
        bumps2.push_back(random_bump(grid, i2, rng));
    }

    LocalityCertificate cert;
    cert.tol = tol;
    cert.residuals.assign(n_pairs, 0.0);
    parallel_for(n_pairs, [&](int pair) {
        const CArray p1 = momentum_profile(bumps1[pair]).values;
        const CArray p2 = momentum_profile(bumps2[pair]).values;
        Complex acc{0.0, 0.0};
        for (int k = grid.m / 2 + 1; k < grid.m; ++k)
            acc += grid.p(k) * p1[k] * std::conj(mult[k - grid.m / 2 - 1] * p2[k]);
        acc *= grid.dp();
        cert.residuals[pair] = std::abs(acc.imag()) /
                               (one_particle_norm(bumps1[pair]) * one_particle_norm(bumps2[pair]));
    });
    for (double r : cert.residuals)
        cert.max_residual = std::max(cert.max_residual, r);
    cert.pass = cert.max_residual < tol;
    return cert;
}

double ChargeDensity::charge() const
{
    return ell.grid.dx * ell.values.sum() / (2.0 * M_PI);
}

RArray ChargeDensity::primitive() const
{
    return prefix_sum(ell.values, ell.grid.dx);
}

ChargeDensity bump_density(const SpatialGrid& g, Interval support, double charge)
{
    if (!(0.0 < support.a && support.a < support.b && support.b < g.extent()))
        throw std::invalid_argument("bump_density: support must sit inside (0, X)");
    RArray v = RArray::Zero(g.m);
    for (int j = 0; j < g.m; ++j) {
        const double x = g.x(j);
        if (x <= support.a || x >= support.b)
            continue;
        const double u = (x - support.a) / (support.b - support.a);
        v[j] = std::pow(4.0 * u * (1.0 - u), 3);
    }
    const double total = v.sum() * g.dx;
    if (total <= 0.0)
        throw std::invalid_argument("bump_density: support too narrow for the grid");
    v *= 2.0 * M_PI * charge / total;
    return {TestFunction{g, v, support}};
}

TransportResult transport_density(const InnerFunctionSpec& phi, const ChargeDensity& rho,
                                  const TransportOptions& opts)
{
    const SpatialGrid& g = rho.ell.grid;
    const InnerFunctionSpec hp = in_domain(phi, DomainTag::UpperHalfPlane);
    if (!(rho.ell.support.a > 0.0))
        throw std::invalid_argument("transport_density: density must be supported in (0, inf)");

    {
        std::vector<double> ps;
        for (int i = 1; i <= 32; ++i)
            ps.push_back(0.25 * i);
        if (!symmetry_check(hp, ps, opts.sym_tol).pass)
            throw std::domain_error("transport_density: phi is not symmetric (reality would break)");
    }
    if (!singular_at_zero(hp)) {
        const Complex probe = boundary_value(hp, 0.0);
        if (std::abs(probe - 1.0) > opts.eps_probe)
            throw std::domain_error("transport_density: phi(0) must be normalized to 1");
    }

    TransportResult out;
    const MultiplierResult applied = apply_multiplier_V(hp, rho.ell, Extension::Naive);
    out.reality_residual = applied.reality_residual;
    out.transported = ChargeDensity{applied.func};

    const double q0 = rho.charge();
    out.charge_error = std::abs(out.transported.charge() - q0) / std::max(1e-300, std::abs(q0));

    const double delta = opts.delta_bins * g.dx;
    double leak = 0.0;
    for (int j = 0; j < g.m; ++j)
        if (g.x(j) < -delta)
            leak += applied.func.values[j] * applied.func.values[j];
    out.left_leakage = std::sqrt(g.dx * leak) / std::max(1e-300, applied.func.l2_norm());

    // Hoelder integrals under grid refinement: dx fixed, extent doubled,
    // so the first positive momentum bin halves every level. The weighted
    // form carries |hat ell|^2; the unweighted one probes local
    // integrability of |1 - phi|^2 / p at the origin by itself.
    for (int level = 0; level < opts.holder_levels; ++level) {
        const int m = g.m << level;
        const SpatialGrid fine{m, g.dx};
        RArray values = RArray::Zero(m);
        const int offset = (m - g.m) / 2;
        values.segment(offset, g.m) = rho.ell.values;
        const CArray prof = profile_on(fine, values);
        double acc = 0.0, bare = 0.0;
        for (int k = fine.m / 2 + 1; k < fine.m; ++k) {
            const double p = fine.p(k);
            const Complex v = boundary_value(hp, p);
            acc += std::norm(1.0 - v) / p * std::norm(prof[k]);
            if (p <= 1.0)
                bare += std::norm(1.0 - v) / p;
        }
        out.holder_values.push_back(acc * fine.dp());
        out.holder_unweighted_values.push_back(bare * fine.dp());
    }
    auto diverging = [&](const std::vector<double>& vals) {
        for (std::size_t i = 1; i < vals.size(); ++i) {
            const double growth = (vals[i] - vals[i - 1]) / std::max(1e-300, vals[i - 1]);
            if (growth <= opts.holder_growth_flag)
                return false;
        }
        return true;
    };
    out.holder_divergent = diverging(out.holder_values);
    out.holder_unweighted_divergent = diverging(out.holder_unweighted_values);

    out.reality_ok = out.reality_residual < 1e-8;
    out.charge_ok = out.charge_error < 1e-6;
    out.support_ok = out.left_leakage < 1e-3;
    return out;
}

double cocycle_check(const InnerFunctionSpec& phi, const ChargeDensity& rho, double t)
{
    const SpatialGrid& g = rho.ell.grid;
    const double bins = t / g.dx;
    const long k = std::lround(bins);
    if (std::abs(bins - static_cast<double>(k)) > 1e-9)
        throw std::invalid_argument("cocycle_check: t must be an integer number of grid bins");
    if (rho.ell.support.b + std::max(0.0, t) >= g.extent() - 1.0 ||
        rho.ell.support.a + std::min(0.0, t) <= -g.extent() + 1.0)
        throw std::invalid_argument("cocycle_check: shifted support leaves the grid");

    const InnerFunctionSpec hp = in_domain(phi, DomainTag::UpperHalfPlane);
    const CArray mult = momentum_multiplier(hp, g, Extension::Naive);

    auto transported = [&](const RArray& v) {
        const CArray prof = profile_on(g, v) * mult;
        const CArray back = fft::centered_idft(prof, g.dx, +1) * kSqrt2Pi;
        return RArray(back.real());
    };

    // route A: transport first, then primitives and the shift
    const RArray ell1 = transported(rho.ell.values);
    const RArray L1 = prefix_sum(ell1, g.dx);
    const RArray L1t = shift_samples(L1, k, L1[0], L1[g.m - 1]);
    const RArray lhs = L1 - L1t;

    // route B: difference of densities first, then primitive, then transport
    const RArray ellt = shift_samples(rho.ell.values, k, 0.0, 0.0);
    const RArray Ld = prefix_sum(rho.ell.values - ellt, g.dx);
    const RArray rhs = transported(Ld);

    const double scale = rhs.abs().maxCoeff();
    if (scale == 0.0)
        return (lhs - rhs).abs().maxCoeff() == 0.0 ? 0.0 : 1.0;
    return (lhs - rhs).abs().maxCoeff() / scale;
}

} // namespace modstrip

#include "modstrip/standardpair.hpp"
#include "modstrip/parallel.hpp"
#include "modstrip/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace modstrip {

namespace {

constexpr Complex kI{0.0, 1.0};

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

double l2(const CArray& v) { return std::sqrt(v.abs2().sum()); }

CArray dual_profile(const WaveFunction& f)
{
    return fft::centered_dft(f.values, f.grid.dq, -1);
}

WaveFunction from_dual_profile(const RapidityGrid& g, const CArray& profile)
{
    return {g, fft::centered_idft(profile, g.dq, -1)};
}

// mirror bin of s_k = (k - n/2) ds is n - k; bin 0 has no partner
Eigen::Index mirror_bin(Eigen::Index k, Eigen::Index n) { return n - k; }

CArray premultiplied(const WaveFunction& f, const SubspaceHandle& sub)
{
    switch (sub.kind) {
    case SubspaceHandle::Kind::H:
        return f.values;
    case SubspaceHandle::Kind::VH:
        return f.values * strip_boundary_multiplier(sub.psi, f.grid).conjugate();
    case SubspaceHandle::Kind::Flow:
        return f.values * flow_multiplier(sub.gen, sub.flow_t, f.grid).conjugate();
    }
    throw std::logic_error("bad subspace kind");
}

} // namespace

RapidityGrid RapidityGrid::with_extent(int n, double q_max)
{
    if (!is_pow2(n))
        throw std::invalid_argument("grid size must be a power of two");
    if (q_max <= 0.0)
        throw std::invalid_argument("q_max must be positive");
    return {n, 2.0 * q_max / n};
}

bool operator==(const RapidityGrid& a, const RapidityGrid& b)
{
    return a.n == b.n && a.dq == b.dq;
}

double WaveFunction::norm() const { return std::sqrt(grid.dq) * l2(values); }

WaveFunction gaussian_packet(const RapidityGrid& g, double q_center, double width,
                             double modulation)
{
    CArray v(g.n);
    for (int j = 0; j < g.n; ++j) {
        const double q = g.q(j);
        v[j] = std::exp(Complex{-(q - q_center) * (q - q_center) / (width * width),
                                modulation * q});
    }
    return {g, v};
}

WaveFunction apply_operator(const PairOperator& op, const WaveFunction& f)
{
    const RapidityGrid& g = f.grid;
    WaveFunction out{g, CArray(g.n)};

    if (const auto* qp = std::get_if<QPhase>(&op)) {
        for (int j = 0; j < g.n; ++j)
            out.values[j] = f.values[j] * std::polar(1.0, qp->t * g.q(j));
    } else if (const auto* tr = std::get_if<Translation>(&op)) {
        for (int j = 0; j < g.n; ++j)
            out.values[j] = f.values[j] * std::polar(1.0, tr->t * std::exp(g.q(j)));
    } else if (const auto* mo = std::get_if<Modular>(&op)) {
        const double bins = 2.0 * M_PI * mo->s / g.dq;
        const long k = std::lround(bins);
        if (std::abs(bins - static_cast<double>(k)) > 1e-9)
            throw std::invalid_argument("dilation parameter incommensurate with the grid");
        const long kk = ((k % g.n) + g.n) % g.n;
        if (kk != 0) {
            const long edge = std::min<long>(std::labs(k), g.n);
            double edge_mass = 0.0;
            for (long j = 0; j < edge; ++j)
                edge_mass += std::norm(f.values[j]) + std::norm(f.values[g.n - 1 - j]);
            if (std::sqrt(g.dq * edge_mass) > 1e-8 * f.norm())
                throw std::runtime_error("dilation wrap-around would carry non-negligible mass");
        }
        for (int j = 0; j < g.n; ++j)
            out.values[j] = f.values[(j + kk) % g.n];
    } else if (std::holds_alternative<Conjugation>(op)) {
        out.values = f.values.conjugate();
    } else if (const auto* mu = std::get_if<Multiplier>(&op)) {
        out.values = f.values * strip_boundary_multiplier(mu->psi, g);
    }
    return out;
}

CArray strip_boundary_multiplier(const InnerFunctionSpec& spec, const RapidityGrid& g)
{
    const InnerFunctionSpec strip = in_domain(spec, DomainTag::Strip);
    CArray m(g.n);
    for (int j = 0; j < g.n; ++j)
        m[j] = boundary_value(strip, g.q(j));
    return m;
}

CArray flow_multiplier(const GeneratorSpec& gen, double t, const RapidityGrid& g)
{
    CArray m(g.n);
    for (int j = 0; j < g.n; ++j) {
        const double p = std::exp(g.q(j));
        for (const auto& a : gen.nu_atoms)
            if (std::abs(p - a.lambda) < 1e-12 * std::max(1.0, a.lambda))
                throw std::domain_error("generator pole at a grid point");
        const Complex fp = generator_eval(gen, Complex{p, 0.0});
        m[j] = std::exp(kI * t * fp);
    }
    return m;
}

SubspaceHandle SubspaceHandle::standard() { return {}; }

SubspaceHandle SubspaceHandle::multiplied(InnerFunctionSpec psi)
{
    SubspaceHandle h;
    h.kind = Kind::VH;
    h.psi = std::move(psi);
    return h;
}

SubspaceHandle SubspaceHandle::flowed(GeneratorSpec gen, double t)
{
    SubspaceHandle h;
    h.kind = Kind::Flow;
    h.gen = std::move(gen);
    h.flow_t = t;
    return h;
}

MembershipReport membership_residual(const WaveFunction& f, const SubspaceHandle& sub,
                                     double tol)
{
    if (f.norm() == 0.0)
        throw std::invalid_argument("membership test of the zero vector");

    const RapidityGrid& g = f.grid;
    const CArray w = premultiplied(f, sub);
    const CArray profile = fft::centered_dft(w, g.dq, -1);

    double peak = 0.0, tail = 0.0;
    for (int k = 0; k < g.n; ++k) {
        const double a = std::abs(profile[k]);
        peak = std::max(peak, a);
        if (std::abs(g.s(k)) > sub.s_max)
            tail = std::max(tail, a);
    }

    CArray u = CArray::Zero(g.n);
    const double floor = sub.dual_floor * peak;
    for (int k = 0; k < g.n; ++k) {
        const double s = g.s(k);
        if (std::abs(s) <= sub.s_max && std::abs(profile[k]) >= floor)
            u[k] = std::exp(-0.5 * M_PI * s) * profile[k];
    }
    const CArray v = fft::centered_idft(u, g.dq, -1);

    MembershipReport rep;
    rep.tol = tol;
    rep.tail_ratio = peak > 0.0 ? tail / peak : 0.0;
    rep.admissible = rep.tail_ratio <= sub.tail_tol;
    const double denom = l2(v);
    rep.residual = denom > 0.0 ? std::sqrt(v.imag().square().sum()) / denom : 1.0;
    rep.pass = rep.residual < tol;
    return rep;
}

WaveFunction project_to_H(const WaveFunction& f, const SubspaceHandle& sub)
{
    const RapidityGrid& g = f.grid;
    const CArray profile = dual_profile(f);
    const double floor = sub.dual_floor * profile.abs().maxCoeff();

    CArray sym = CArray::Zero(g.n);
    for (int k = 1; k < g.n; ++k) {
        const double s = g.s(k);
        if (std::abs(s) > sub.s_sym)
            continue;
        const Eigen::Index km = mirror_bin(k, g.n);
        // noise-only pairs stay zero: the e^{pi s} reweighting would
        // otherwise blow the roundoff floor up to signal size
        if (std::abs(profile[k]) < floor && std::abs(profile[km]) < floor)
            continue;
        // Hermitian part of u(s) = e^{-pi s/2} g(s), re-weighted back:
        //   (g(s) + e^{pi s} conj g(-s)) / 2
        sym[k] = 0.5 * (profile[k] + std::exp(M_PI * s) * std::conj(profile[km]));
    }
    WaveFunction out = from_dual_profile(g, sym);
    if (out.norm() < 1e-12 * f.norm())
        throw std::domain_error("projection collapsed (input orthogonal to H)");
    return out;
}

std::vector<WaveFunction> sample_H_vectors(const RapidityGrid& g, int count,
                                           std::uint64_t seed,
                                           const SubspaceHandle& sub,
                                           const SampleParams& params)
{
    Rng rng(seed);
    std::vector<WaveFunction> out;
    out.reserve(count);
    while (static_cast<int>(out.size()) < count) {
        CArray profile = CArray::Zero(g.n);
        std::vector<Complex> coeff(params.poly_degree + 1);
        for (auto& c : coeff)
            c = Complex{rng.symmetric(), rng.symmetric()};
        for (int k = 0; k < g.n; ++k) {
            const double s = g.s(k);
            if (std::abs(s) > params.dual_band)
                continue;
            const double x = s / params.dual_band;
            Complex poly{0.0, 0.0};
            for (int d = params.poly_degree; d >= 0; --d)
                poly = poly * x + coeff[d];
            profile[k] = poly * std::exp(-(s * s) / (params.dual_sigma * params.dual_sigma)) *
                         std::polar(1.0, -s * params.q_center);
        }
        WaveFunction raw = from_dual_profile(g, profile);
        if (raw.norm() < 1e-12)
            continue;
        WaveFunction member = project_to_H(raw, sub);
        const double nrm = member.norm();
        if (nrm < 1e-6 * raw.norm())
            continue;   // nearly anti-symmetric draw; take a fresh one
        member.values /= nrm;
        out.push_back(std::move(member));
    }
    return out;
}

std::vector<WaveFunction> sample_H_members(const RapidityGrid& g, int count,
                                           std::uint64_t seed,
                                           const MemberParams& params)
{
    Rng rng(seed);
    std::vector<WaveFunction> out;
    out.reserve(count);
    const double half_width = 0.5 * params.spatial_sigma;
    while (static_cast<int>(out.size()) < count) {
        std::vector<double> coeff(params.poly_degree + 1);
        for (auto& c : coeff)
            c = rng.symmetric();
        // Hermitian weighted profile u(-s) = conj u(s), so the inverse of
        // g(s) = e^{pi s/2} u(s) lies in H by construction. Real
        // coefficients in powers of (i s w) keep u smooth through s = 0.
        CArray profile = CArray::Zero(g.n);
        for (int k = g.n / 2; k < g.n; ++k) {
            const double s = g.s(k);
            const double log_env = -(s * half_width) * (s * half_width);
            // cut where even the e^{pi s/2}-weighted side has fully decayed,
            // so the profile ends smoothly, not in a hard edge
            if (0.5 * M_PI * s + log_env < std::log(1e-22))
                continue;
            const double envelope = std::exp(log_env);
            Complex poly{0.0, 0.0};
            const Complex isw{0.0, s * half_width};
            for (int d = params.poly_degree; d >= 0; --d)
                poly = poly * isw + coeff[d];
            const Complex u = poly * envelope * std::polar(1.0, -s * params.q_center);
            profile[k] = std::exp(0.5 * M_PI * s) * u;
            if (k > g.n / 2)
                profile[mirror_bin(k, g.n)] = std::exp(-0.5 * M_PI * s) * std::conj(u);
        }
        WaveFunction member = from_dual_profile(g, profile);
        const double nrm = member.norm();
        if (nrm < 1e-12)
            continue;
        member.values /= nrm;
        out.push_back(std::move(member));
    }
    return out;
}

BorchersResidual verify_borchers(const WaveFunction& f, double t, double s)
{
    const double nrm = f.norm();
    if (nrm == 0.0)
        throw std::invalid_argument("verify_borchers: zero vector");

    BorchersResidual r;
    {
        WaveFunction lhs = apply_operator(Modular{s}, f);
        lhs = apply_operator(Translation{t}, lhs);
        lhs = apply_operator(Modular{-s}, lhs);
        const WaveFunction rhs = apply_operator(Translation{std::exp(-2.0 * M_PI * s) * t}, f);
        r.dilation_translation = std::sqrt(f.grid.dq) * l2(lhs.values - rhs.values) / nrm;
    }
    {
        WaveFunction lhs = apply_operator(Conjugation{}, f);
        lhs = apply_operator(Translation{t}, lhs);
        lhs = apply_operator(Conjugation{}, lhs);
        const WaveFunction rhs = apply_operator(Translation{-t}, f);
        r.conjugation = std::sqrt(f.grid.dq) * l2(lhs.values - rhs.values) / nrm;
    }
    return r;
}

EndomorphismReport verify_endomorphism(const InnerFunctionSpec& psi, const RapidityGrid& g,
                                       int n_samples, double tol, std::uint64_t seed,
                                       const SubspaceHandle& sub)
{
    const CArray m = strip_boundary_multiplier(psi, g);
    const double unimodular_dev = (m.abs() - 1.0).abs().maxCoeff();
    if (unimodular_dev > 1e-8)
        throw std::invalid_argument("multiplier is not unimodular on the grid (not inner)");

    EndomorphismReport rep;
    rep.tol = tol;

    std::vector<double> qs;
    for (int i = 0; i <= 48; ++i)
        qs.push_back(-6.0 + 0.25 * i);
    rep.symmetry = symmetry_check(in_domain(psi, DomainTag::Strip), qs, 1e-8);

    MemberParams centered;
    centered.q_center = 0.0;
    centered.spatial_sigma = 2.0;
    const auto samples = sample_H_members(g, n_samples, seed, centered);
    std::vector<double> residuals(samples.size(), 0.0);
    parallel_for(static_cast<int>(samples.size()), [&](int i) {
        WaveFunction image{g, samples[i].values * m};
        residuals[i] = membership_residual(image, sub, tol).residual;
    });
    for (double r : residuals)
        rep.max_residual = std::max(rep.max_residual, r);

    // both are multipliers in q, so they commute bin by bin
    if (!samples.empty()) {
        const WaveFunction& f = samples.front();
        const CArray a = m * apply_operator(Translation{1.0}, f).values;
        const CArray b = apply_operator(Translation{1.0}, WaveFunction{g, m * f.values}).values;
        rep.commutation_residual = l2(a - b) / l2(f.values);
    }

    rep.pass = rep.symmetry.pass && rep.max_residual < tol &&
               rep.commutation_residual < 1e-13;
    return rep;
}

double gamma_check(const InnerFunctionSpec& psi, const WaveFunction& f)
{
    const double nrm = f.norm();
    if (nrm == 0.0)
        throw std::invalid_argument("gamma_check: zero vector");
    const CArray m = strip_boundary_multiplier(psi, f.grid);

    // Gamma f = V J V* J f, right to left
    CArray x = f.values.conjugate();
    x *= m.conjugate();
    x = x.conjugate();
    x *= m;

    const CArray vsq = m * m * f.values;
    return std::sqrt(f.grid.dq) * l2(x - vsq) / nrm;
}

FlowReport flow_invariance(const GeneratorSpec& gen, double t, const RapidityGrid& g,
                           int n_samples, double tol, std::uint64_t seed,
                           const MemberParams& params)
{
    const CArray m = flow_multiplier(gen, t, g);
    const SubspaceHandle sub = SubspaceHandle::standard();
    const auto samples = sample_H_members(g, n_samples, seed, params);

    FlowReport rep;
    rep.t = t;
    rep.tol = tol;
    for (const auto& f : samples) {
        WaveFunction image{g, f.values * m};
        rep.max_residual = std::max(rep.max_residual,
                                    membership_residual(image, sub, tol).residual);
    }
    rep.pass = rep.max_residual < tol;
    return rep;
}

} // namespace modstrip

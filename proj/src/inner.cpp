#include "modstrip/inner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace modstrip {

namespace {

constexpr double kAtomGuard = 1e-9;     // boundary evaluation keep-out around atoms
constexpr Complex kI{0.0, 1.0};

void require(bool cond, const char* msg)
{
    if (!cond)
        throw std::invalid_argument(msg);
}

bool interior(DomainTag d, Complex z)
{
    switch (d) {
    case DomainTag::Disk: return std::abs(z) < 1.0;
    case DomainTag::UpperHalfPlane: return z.imag() > 0.0;
    case DomainTag::Strip: return z.imag() > 0.0 && z.imag() < M_PI;
    }
    return false;
}

// Blaschke factor with a zero at `a`, disk coordinates.
Complex disk_blaschke_factor(Complex zeta, Complex a)
{
    if (a == Complex{0.0, 0.0})
        return zeta;
    return (std::abs(a) / a) * (zeta - a) / (1.0 - std::conj(a) * zeta);
}

// Half-plane factor (p - alpha)/(p - conj alpha); no extra phase.
Complex hp_blaschke_factor(Complex p, Complex alpha)
{
    return (p - alpha) / (p - std::conj(alpha));
}

Complex ipow(Complex b, int m)
{
    Complex r{1.0, 0.0};
    for (int i = 0; i < m; ++i)
        r *= b;
    return r;
}

// Canonical formula in data coordinates; zeta interior or on the boundary
// (each factor is unimodular there, atoms excluded by the callers' guards).
Complex eval_data(const InnerFunctionSpec& spec, Complex zeta)
{
    Complex out = spec.phase;
    if (spec.data_domain == DomainTag::Disk) {
        for (const auto& z : spec.blaschke.zeros)
            out *= ipow(disk_blaschke_factor(zeta, z.location), z.multiplicity);
        Complex expo{0.0, 0.0};
        for (const auto& atom : spec.singular.atoms) {
            const Complex b = std::polar(1.0, atom.location);
            expo -= atom.weight * (b + zeta) / (b - zeta);
        }
        out *= std::exp(expo);
    } else {
        for (const auto& z : spec.blaschke.zeros)
            out *= ipow(hp_blaschke_factor(zeta, z.location), z.multiplicity);
        Complex expo{0.0, 0.0};
        for (const auto& atom : spec.singular.atoms) {
            if (atom.at_infinity)
                expo += kI * atom.weight * zeta;
            else
                expo -= kI * atom.weight * (1.0 + zeta * atom.location) / (zeta - atom.location);
        }
        out *= std::exp(expo);
    }
    return out;
}

// Transport an evaluation point from spec.domain coordinates into
// spec.data_domain coordinates.
Complex to_data_coords(const InnerFunctionSpec& spec, Complex z)
{
    Complex p = z;
    if (spec.domain == DomainTag::Strip)
        p = strip_to_half_plane(z);
    if (spec.domain == DomainTag::Disk) {
        if (spec.data_domain == DomainTag::Disk)
            return z;
        return disk_to_half_plane(z);
    }
    if (spec.data_domain == DomainTag::Disk)
        return half_plane_to_disk(p);
    return p;
}

void guard_atoms(const InnerFunctionSpec& spec, Complex boundary_pt)
{
    if (spec.data_domain == DomainTag::Disk) {
        for (const auto& atom : spec.singular.atoms)
            if (std::abs(boundary_pt - std::polar(1.0, atom.location)) < kAtomGuard)
                throw std::domain_error("evaluation at a singular atom");
    } else {
        for (const auto& atom : spec.singular.atoms) {
            if (atom.at_infinity)
                continue;
            if (std::abs(boundary_pt - atom.location) < kAtomGuard)
                throw std::domain_error("evaluation at a singular atom");
        }
    }
}

} // namespace

std::string to_string(DomainTag d)
{
    switch (d) {
    case DomainTag::Disk: return "disk";
    case DomainTag::UpperHalfPlane: return "half_plane";
    case DomainTag::Strip: return "strip";
    }
    return "?";
}

Complex disk_to_half_plane(Complex z) { return kI * (1.0 + z) / (1.0 - z); }
Complex half_plane_to_disk(Complex p) { return (p - kI) / (p + kI); }
Complex strip_to_half_plane(Complex w) { return std::exp(w); }

InnerFunctionSpec make_spec(DomainTag domain, Complex phase,
                            BlaschkeData blaschke, SingularMeasureSpec singular)
{
    InnerFunctionSpec spec;
    spec.domain = domain;
    spec.data_domain = domain == DomainTag::Disk ? DomainTag::Disk : DomainTag::UpperHalfPlane;
    spec.phase = phase;
    spec.blaschke = std::move(blaschke);
    spec.singular = std::move(singular);
    validate(spec);
    return spec;
}

void validate(const InnerFunctionSpec& spec)
{
    require(spec.data_domain != DomainTag::Strip, "data_domain must be disk or half_plane");
    require(std::abs(std::abs(spec.phase) - 1.0) < 1e-9, "phase must be unimodular");
    for (const auto& z : spec.blaschke.zeros) {
        require(z.multiplicity > 0, "zero multiplicity must be positive");
        if (spec.data_domain == DomainTag::Disk)
            require(std::abs(z.location) < 1.0, "zero outside open disk");
        else
            require(z.location.imag() > 0.0, "zero outside open upper half-plane");
    }
    for (std::size_t i = 0; i < spec.singular.atoms.size(); ++i) {
        const auto& a = spec.singular.atoms[i];
        require(a.weight > 0.0, "atom weight must be positive");
        if (spec.data_domain == DomainTag::Disk)
            require(!a.at_infinity, "disk data has no atom at infinity");
        for (std::size_t j = i + 1; j < spec.singular.atoms.size(); ++j) {
            const auto& b = spec.singular.atoms[j];
            const bool same = a.at_infinity == b.at_infinity &&
                              (a.at_infinity || a.location == b.location);
            require(!same, "atom locations must be pairwise distinct");
        }
    }
}

void validate(const GeneratorSpec& gen)
{
    require(gen.c >= 0.0, "generator constant c must be nonnegative");
    require(gen.c1 >= 0.0 && gen.c2 >= 0.0, "closed-form pair must be nonnegative");
    for (const auto& a : gen.nu_atoms) {
        require(a.lambda >= 0.0, "generator atom lambda must be nonnegative");
        require(a.weight > 0.0, "generator atom weight must be positive");
    }
}

InnerFunctionSpec in_domain(InnerFunctionSpec spec, DomainTag target)
{
    spec.domain = target;
    return spec;
}

Complex eval(const InnerFunctionSpec& spec, Complex z)
{
    if (!interior(spec.domain, z))
        throw std::domain_error("evaluation point not interior to the domain");
    return eval_data(spec, to_data_coords(spec, z));
}

Complex boundary_value(const InnerFunctionSpec& spec, double x)
{
    Complex pt;
    switch (spec.domain) {
    case DomainTag::Disk:
        pt = std::polar(1.0, x);
        break;
    case DomainTag::UpperHalfPlane:
        pt = Complex{x, 0.0};
        if (spec.data_domain == DomainTag::Disk)
            pt = half_plane_to_disk(pt);
        break;
    case DomainTag::Strip:
        pt = Complex{std::exp(x), 0.0};
        if (spec.data_domain == DomainTag::Disk)
            pt = half_plane_to_disk(pt);
        break;
    }
    guard_atoms(spec, pt);
    return eval_data(spec, pt);
}

Complex boundary_value_upper(const InnerFunctionSpec& spec, double q)
{
    if (spec.domain != DomainTag::Strip)
        throw std::domain_error("upper boundary line exists only in strip coordinates");
    Complex pt{-std::exp(q), 0.0};    // e^{q + i pi}
    if (spec.data_domain == DomainTag::Disk)
        pt = half_plane_to_disk(pt);
    guard_atoms(spec, pt);
    return eval_data(spec, pt);
}

Complex approach_value(const InnerFunctionSpec& spec, double x, double eps)
{
    if (eps <= 0.0)
        throw std::invalid_argument("approach inset must be positive");
    switch (spec.domain) {
    case DomainTag::Disk:
        return eval(spec, (1.0 - eps) * std::polar(1.0, x));
    case DomainTag::UpperHalfPlane:
        return eval(spec, Complex{x, eps});
    case DomainTag::Strip:
        return eval(spec, Complex{x, eps});
    }
    throw std::domain_error("bad domain");
}

InnerFunctionSpec product(const InnerFunctionSpec& a, const InnerFunctionSpec& b)
{
    if (a.domain != b.domain || a.data_domain != b.data_domain)
        throw std::domain_error("product requires matching domains");
    InnerFunctionSpec out = a;
    out.phase = a.phase * b.phase;
    for (const auto& z : b.blaschke.zeros) {
        auto it = std::find_if(out.blaschke.zeros.begin(), out.blaschke.zeros.end(),
                               [&](const BlaschkeZero& w) { return w.location == z.location; });
        if (it != out.blaschke.zeros.end())
            it->multiplicity += z.multiplicity;
        else
            out.blaschke.zeros.push_back(z);
    }
    for (const auto& atom : b.singular.atoms) {
        auto it = std::find_if(out.singular.atoms.begin(), out.singular.atoms.end(),
                               [&](const SingularAtom& w) {
                                   return w.at_infinity == atom.at_infinity &&
                                          (w.at_infinity || w.location == atom.location);
                               });
        if (it != out.singular.atoms.end())
            it->weight += atom.weight;
        else
            out.singular.atoms.push_back(atom);
    }
    return out;
}

CheckReport symmetry_check(const InnerFunctionSpec& spec,
                           const std::vector<double>& xs, double tol)
{
    if (xs.empty())
        throw std::invalid_argument("symmetry_check: empty sample grid");
    double worst = 0.0;
    switch (spec.domain) {
    case DomainTag::UpperHalfPlane:
        for (double p : xs)
            worst = std::max(worst, std::abs(boundary_value(spec, -p) -
                                             std::conj(boundary_value(spec, p))));
        break;
    case DomainTag::Strip:
        for (double q : xs)
            worst = std::max(worst, std::abs(boundary_value_upper(spec, q) -
                                             std::conj(boundary_value(spec, q))));
        break;
    case DomainTag::Disk:
        for (double theta : xs) {
            const Complex z = 0.8 * std::polar(1.0, theta);
            worst = std::max(worst, std::abs(eval(spec, z) -
                                             std::conj(eval(spec, std::conj(z)))));
        }
        break;
    }
    return {"symmetry", worst, tol, worst < tol};
}

ScatteringReport scattering_check(const InnerFunctionSpec& spec, double tol)
{
    const InnerFunctionSpec strip = in_domain(spec, DomainTag::Strip);

    std::vector<double> qs;
    for (int i = 0; i <= 40; ++i)
        qs.push_back(-5.0 + 0.25 * i);

    ScatteringReport rep;
    rep.symmetry = symmetry_check(strip, qs, tol);

    // mirror symmetry: the half-turn about the strip center fixes S2,
    // S2(i pi - z) = S2(z); on the boundary this is the unitarity
    // reflection S2(-q) = conj S2(q)
    double worst = 0.0;
    const double heights[] = {M_PI / 6, M_PI / 2, 5 * M_PI / 6};
    for (double q : qs) {
        if (q <= 0.0)
            continue;   // pairs (q, -q) counted once
        for (double y : heights)
            worst = std::max(worst, std::abs(eval(strip, Complex{-q, M_PI - y}) -
                                             eval(strip, Complex{q, y})));
        worst = std::max(worst, std::abs(boundary_value_upper(strip, -q) -
                                         boundary_value(strip, q)));
        worst = std::max(worst, std::abs(boundary_value(strip, -q) -
                                         boundary_value_upper(strip, q)));
    }
    rep.mirror = {"mirror-symmetry", worst, tol, worst < tol};

    // continuity on the closed strip: atoms confined to the two ends,
    // i.e. disk +-1 / half-plane 0 or infinity; a finite Blaschke set
    // never accumulates on the boundary.
    rep.continuous = true;
    for (const auto& atom : spec.singular.atoms) {
        if (spec.data_domain == DomainTag::Disk) {
            const double m = std::fmod(std::fmod(atom.location, M_PI) + M_PI, M_PI);
            if (std::min(m, M_PI - m) > 1e-12)
                rep.continuous = false;
        } else if (!atom.at_infinity && atom.location != 0.0) {
            rep.continuous = false;
        }
    }
    rep.pass = rep.symmetry.pass && rep.mirror.pass && rep.continuous;
    return rep;
}

Complex generator_eval(const GeneratorSpec& gen, Complex z)
{
    if (z.imag() < 0.0)
        throw std::domain_error("generator defined for Im z >= 0");
    const bool on_axis = z.imag() == 0.0;
    const bool pole_at_zero = gen.c2 > 0.0 ||
        std::any_of(gen.nu_atoms.begin(), gen.nu_atoms.end(),
                    [](const GeneratorAtom& a) { return a.lambda == 0.0; });
    if (on_axis) {
        for (const auto& a : gen.nu_atoms)
            if (std::abs(std::abs(z.real()) - a.lambda) < 1e-14 * std::max(1.0, a.lambda))
                throw std::domain_error("generator pole at +-lambda");
        if (pole_at_zero && z.real() == 0.0)
            throw std::domain_error("generator pole at zero");
    }
    Complex f = (gen.c + gen.c1) * z;
    if (gen.c2 > 0.0)
        f -= gen.c2 / z;
    for (const auto& a : gen.nu_atoms)
        f += a.weight * z / (a.lambda * a.lambda - z * z);
    return f;
}

Complex semigroup_eval(const GeneratorSpec& gen, double t, Complex z)
{
    if (t < 0.0)
        throw std::domain_error("semigroup defined for t >= 0");
    return std::exp(kI * t * generator_eval(gen, z));
}

ConvergenceReport identity_convergence_check(const GeneratorSpec& gen, double r,
                                             const std::vector<double>& t_sequence,
                                             double tol)
{
    if (r <= 0.0 || r >= 1.0)
        throw std::invalid_argument("compact radius must lie in (0,1)");
    // compact sample: polar grid in the disk, transported to the half-plane
    std::vector<Complex> sample;
    for (int ir = 1; ir <= 4; ++ir)
        for (int ia = 0; ia < 16; ++ia) {
            const Complex zeta = (r * ir / 4.0) * std::polar(1.0, 2 * M_PI * ia / 16.0);
            sample.push_back(disk_to_half_plane(zeta));
        }
    sample.push_back(disk_to_half_plane(Complex{0.0, 0.0}));

    ConvergenceReport rep;
    rep.t_values = t_sequence;
    rep.tol = tol;
    for (double t : t_sequence) {
        double sup = 0.0;
        for (Complex p : sample)
            sup = std::max(sup, std::abs(semigroup_eval(gen, t, p) - 1.0));
        rep.sup_distance.push_back(sup);
    }
    rep.decreasing = true;
    for (std::size_t i = 1; i < rep.sup_distance.size(); ++i)
        if (rep.sup_distance[i] > rep.sup_distance[i - 1])
            rep.decreasing = false;
    rep.pass = rep.decreasing && !rep.sup_distance.empty() && rep.sup_distance.back() < tol;
    return rep;
}

MatrixInnerSample sample_matrix(const std::vector<std::vector<InnerFunctionSpec>>& specs,
                                const std::vector<double>& momenta)
{
    const int n = static_cast<int>(specs.size());
    MatrixInnerSample m;
    m.n = n;
    m.momenta = momenta;
    m.at_pos.resize(n);
    m.at_neg.resize(n);
    for (int h = 0; h < n; ++h) {
        if (static_cast<int>(specs[h].size()) != n)
            throw std::invalid_argument("sample_matrix: ragged spec matrix");
        m.at_pos[h].resize(n);
        m.at_neg[h].resize(n);
        for (int k = 0; k < n; ++k) {
            CArray pos(momenta.size()), neg(momenta.size());
            for (std::size_t i = 0; i < momenta.size(); ++i) {
                pos[static_cast<Eigen::Index>(i)] = boundary_value(specs[h][k], momenta[i]);
                neg[static_cast<Eigen::Index>(i)] = boundary_value(specs[h][k], -momenta[i]);
            }
            m.at_pos[h][k] = std::move(pos);
            m.at_neg[h][k] = std::move(neg);
        }
    }
    return m;
}

MatrixInnerSample constant_matrix(const Eigen::MatrixXcd& mat,
                                  const std::vector<double>& momenta)
{
    if (mat.rows() != mat.cols())
        throw std::invalid_argument("constant_matrix: square matrix required");
    const int n = static_cast<int>(mat.rows());
    MatrixInnerSample m;
    m.n = n;
    m.momenta = momenta;
    m.at_pos.assign(n, std::vector<CArray>(n));
    m.at_neg.assign(n, std::vector<CArray>(n));
    for (int h = 0; h < n; ++h)
        for (int k = 0; k < n; ++k) {
            m.at_pos[h][k] = CArray::Constant(static_cast<Eigen::Index>(momenta.size()), mat(h, k));
            m.at_neg[h][k] = m.at_pos[h][k];
        }
    return m;
}

MatrixInnerSample matrix_product(const MatrixInnerSample& a, const MatrixInnerSample& b)
{
    if (a.n != b.n || a.momenta != b.momenta)
        throw std::invalid_argument("matrix_product: incompatible samples");
    const Eigen::Index len = static_cast<Eigen::Index>(a.momenta.size());
    MatrixInnerSample out;
    out.n = a.n;
    out.momenta = a.momenta;
    out.at_pos.assign(a.n, std::vector<CArray>(a.n, CArray::Zero(len)));
    out.at_neg.assign(a.n, std::vector<CArray>(a.n, CArray::Zero(len)));
    for (int h = 0; h < a.n; ++h)
        for (int k = 0; k < a.n; ++k)
            for (int j = 0; j < a.n; ++j) {
                out.at_pos[h][k] += a.at_pos[h][j] * b.at_pos[j][k];
                out.at_neg[h][k] += a.at_neg[h][j] * b.at_neg[j][k];
            }
    return out;
}

UnitarityReport matrix_unitarity_check(const MatrixInnerSample& m, double tol)
{
    const Eigen::Index len = static_cast<Eigen::Index>(m.momenta.size());
    for (int h = 0; h < m.n; ++h)
        for (int k = 0; k < m.n; ++k)
            if (m.at_pos[h][k].size() != len || m.at_neg[h][k].size() != len)
                throw std::invalid_argument("matrix_unitarity_check: ragged entry grids");

    UnitarityReport rep;
    rep.tol = tol;
    Eigen::MatrixXcd phi(m.n, m.n);
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(m.n, m.n);
    for (Eigen::Index i = 0; i < len; ++i) {
        for (int h = 0; h < m.n; ++h)
            for (int k = 0; k < m.n; ++k) {
                phi(h, k) = m.at_pos[h][k][i];
                rep.max_symmetry_residual =
                    std::max(rep.max_symmetry_residual,
                             std::abs(m.at_neg[h][k][i] - std::conj(m.at_pos[h][k][i])));
            }
        rep.max_unitarity_residual =
            std::max(rep.max_unitarity_residual, (phi * phi.adjoint() - eye).norm());
    }
    rep.unitary = rep.max_unitarity_residual < tol;
    rep.symmetric = rep.max_symmetry_residual < tol;
    rep.pass = rep.unitary && rep.symmetric;
    return rep;
}

} // namespace modstrip

#pragma once

#include "modstrip/fft.hpp"

#include <optional>
#include <string>
#include <vector>

namespace modstrip {

/// Evaluation domains, connected by the fixed conformal chain
/// disk --h--> upper half-plane --log--> strip {0 < Im < pi},
/// h(z) = i(1+z)/(1-z).
enum class DomainTag { Disk, UpperHalfPlane, Strip };

std::string to_string(DomainTag d);

struct BlaschkeZero {
    Complex location;      // open disk (disk data) or open upper half-plane
    int multiplicity = 1;
};

struct BlaschkeData {
    std::vector<BlaschkeZero> zeros;
};

/// One atom of the singular boundary measure. Disk data: `location` is the
/// angle theta, the atom sits at e^{i theta}. Half-plane data: `location`
/// is a real boundary point, or the point at infinity.
struct SingularAtom {
    double location = 0.0;
    double weight = 0.0;    // > 0
    bool at_infinity = false;
};

struct SingularMeasureSpec {
    std::vector<SingularAtom> atoms;
};

/// Canonical data of an inner function: unimodular phase, finite Blaschke
/// zero set, finite atomic singular measure. `domain` fixes the coordinates
/// evaluation arguments live in; `data_domain` (Disk or UpperHalfPlane) fixes
/// the coordinates the zeros/atoms are stored in. Evaluation transports the
/// argument through the conformal chain, never the data: a Strip spec with
/// half-plane data sends w -> e^w and applies the half-plane formula.
struct InnerFunctionSpec {
    DomainTag domain = DomainTag::UpperHalfPlane;
    DomainTag data_domain = DomainTag::UpperHalfPlane;
    Complex phase{1.0, 0.0};
    BlaschkeData blaschke;
    SingularMeasureSpec singular;
};

/// Spec with data in the domain's own coordinates (half-plane data for Strip).
InnerFunctionSpec make_spec(DomainTag domain, Complex phase = {1.0, 0.0},
                            BlaschkeData blaschke = {}, SingularMeasureSpec singular = {});

/// Generator data of a one-parameter semigroup phi_t = e^{itf}:
///   f(z) = c z + sum_k w_k z/(lambda_k^2 - z^2) + c1 z - c2 / z.
struct GeneratorAtom {
    double lambda = 0.0;   // >= 0
    double weight = 0.0;   // > 0
};

struct GeneratorSpec {
    double c = 0.0;        // >= 0
    std::vector<GeneratorAtom> nu_atoms;
    double c1 = 0.0;       // >= 0, closed-form pair
    double c2 = 0.0;       // >= 0
};

/// Conformal chain utilities.
Complex disk_to_half_plane(Complex z);        // h(z) = i(1+z)/(1-z)
Complex half_plane_to_disk(Complex p);        // (p - i)/(p + i)
Complex strip_to_half_plane(Complex w);       // e^w

/// Validate spec invariants (zero locations interior, weights > 0, |phase| = 1,
/// distinct atoms). Throws std::invalid_argument naming the violation.
void validate(const InnerFunctionSpec& spec);
void validate(const GeneratorSpec& gen);

/// Same canonical data, evaluation coordinates moved to `target`.
InnerFunctionSpec in_domain(InnerFunctionSpec spec, DomainTag target);

/// Evaluate at a strictly interior point of spec.domain's region.
/// Throws std::domain_error for boundary/exterior z.
Complex eval(const InnerFunctionSpec& spec, Complex z);

/// Boundary value at a non-singular boundary point, taken by the closed
/// form (each factor is unimodular there). `x` is the boundary coordinate
/// of spec.domain: angle for the disk, real p for the half-plane, real q
/// for the strip's lower line. Throws std::domain_error within
/// `atom_guard` of a singular atom.
Complex boundary_value(const InnerFunctionSpec& spec, double x);

/// Strip specs only: boundary value on the upper line q + i pi.
Complex boundary_value_upper(const InnerFunctionSpec& spec, double q);

/// Interior point approaching boundary coordinate x at inset eps
/// (disk: (1-eps) e^{i theta}; half-plane: x + i eps; strip lower line).
Complex approach_value(const InnerFunctionSpec& spec, double x, double eps);

/// Pointwise product: zeros concatenated (exact-equal locations merged by
/// adding multiplicities), atomic measures added, phases multiplied.
/// Throws std::domain_error on mismatched domains.
InnerFunctionSpec product(const InnerFunctionSpec& a, const InnerFunctionSpec& b);

struct CheckReport {
    std::string check;
    double max_residual = 0.0;
    double tol = 0.0;
    bool pass = false;
};

/// Reflection symmetry on a sample grid. Half-plane: phi(-p) vs conj phi(p);
/// strip: phi(q + i pi) vs conj phi(q); disk: phi(z) vs conj phi(conj z) at
/// interior points z = 0.8 e^{i theta}. `xs` are boundary coordinates
/// (angles for the disk). Empty grid throws std::invalid_argument.
CheckReport symmetry_check(const InnerFunctionSpec& spec,
                           const std::vector<double>& xs, double tol);

struct ScatteringReport {
    CheckReport symmetry;
    CheckReport mirror;      // S2(-conj z) vs S2(z) on closed-strip samples
    bool continuous = false; // atoms confined to the strip ends
    bool pass = false;
};

/// Scattering-function test in strip coordinates: symmetry, the mirror
/// symmetry S2(-conj z) = S2(z), and continuity up to the boundary
/// (singular atoms only at disk +-1, i.e. half-plane 0/infinity).
ScatteringReport scattering_check(const InnerFunctionSpec& spec, double tol);

/// f(z) for Im z >= 0, z not a real pole (+-lambda_k, or 0 when c2 > 0 or
/// an atom sits at lambda = 0). Throws std::domain_error at poles / below
/// the real axis.
Complex generator_eval(const GeneratorSpec& gen, Complex z);

/// phi_t(z) = e^{it f(z)}, t >= 0. Throws std::domain_error for t < 0.
Complex semigroup_eval(const GeneratorSpec& gen, double t, Complex z);

struct ConvergenceReport {
    std::vector<double> t_values;
    std::vector<double> sup_distance;   // sup |phi_t - 1| on the compact
    double tol = 0.0;
    bool decreasing = false;
    bool pass = false;                  // decreasing and last below tol
};

/// sup |phi_t - 1| over the compact disk |zeta| <= r transported to the
/// half-plane, for each t in a decreasing positive sequence.
ConvergenceReport identity_convergence_check(const GeneratorSpec& gen, double r,
                                             const std::vector<double>& t_sequence,
                                             double tol);

/// Boundary samples of an n x n matrix of H^infty functions on a positive
/// momentum grid, with the values at the mirrored points -p kept alongside.
struct MatrixInnerSample {
    int n = 0;
    std::vector<double> momenta;                  // p_i > 0
    std::vector<std::vector<CArray>> at_pos;      // [h][k][i] = phi_hk(p_i)
    std::vector<std::vector<CArray>> at_neg;      // [h][k][i] = phi_hk(-p_i)
};

MatrixInnerSample sample_matrix(const std::vector<std::vector<InnerFunctionSpec>>& specs,
                                const std::vector<double>& momenta);
MatrixInnerSample constant_matrix(const Eigen::MatrixXcd& m,
                                  const std::vector<double>& momenta);
/// Entrywise product sample of two samples on the same grid (matrix product
/// of the sampled matrices).
MatrixInnerSample matrix_product(const MatrixInnerSample& a, const MatrixInnerSample& b);

struct UnitarityReport {
    double max_unitarity_residual = 0.0;  // max_p ||Phi(p) Phi(p)* - I||_F
    double max_symmetry_residual = 0.0;   // max |phi_hk(-p) - conj phi_hk(p)|
    double tol = 0.0;
    bool unitary = false;
    bool symmetric = false;
    bool pass = false;
};

UnitarityReport matrix_unitarity_check(const MatrixInnerSample& m, double tol);

} // namespace modstrip

#pragma once

#include "modstrip/inner.hpp"

#include <cstdint>
#include <variant>

namespace modstrip {

/// Uniform rapidity grid q_j = (j - n/2) dq on [-q_max, q_max), n a power
/// of two, with the centered dual grid s_k = (k - n/2) ds, ds = 2pi/(n dq).
struct RapidityGrid {
    int n = 4096;
    double dq = 1.0 / 128.0;

    double q_max() const { return 0.5 * n * dq; }
    double ds() const { return 2.0 * M_PI / (n * dq); }
    double s_grid_max() const { return 0.5 * n * ds(); }
    double q(int j) const { return (j - n / 2) * dq; }
    double s(int k) const { return (k - n / 2) * ds(); }

    static RapidityGrid with_extent(int n, double q_max);
};

bool operator==(const RapidityGrid& a, const RapidityGrid& b);

struct WaveFunction {
    RapidityGrid grid;
    CArray values;

    double norm() const;   // sqrt(dq * sum |v|^2)
};

WaveFunction gaussian_packet(const RapidityGrid& g, double q_center, double width,
                             double modulation);   // e^{-(q-q0)^2/w^2 + i m q}

/// Grid actions of the standard pair:
///   QPhase(t):      f -> e^{itq} f
///   Translation(t): f -> e^{it e^q} f           (T(t), P = e^Q)
///   Modular(s):     Delta^{-is}: f(q) -> f(q + 2pi s), a cyclic shift;
///                   2pi s/dq must be an integer and the edge bins carried
///                   across must hold < 1e-8 of the norm
///   Conjugation:    J: pointwise complex conjugation
///   Multiplier:     f -> psi(q) f, boundary values of a strip inner function
struct QPhase { double t = 0.0; };
struct Translation { double t = 0.0; };
struct Modular { double s = 0.0; };
struct Conjugation {};
struct Multiplier { InnerFunctionSpec psi; };

using PairOperator = std::variant<QPhase, Translation, Modular, Conjugation, Multiplier>;

WaveFunction apply_operator(const PairOperator& op, const WaveFunction& f);

/// psi(q_j) on the grid for a spec evaluated in strip coordinates.
CArray strip_boundary_multiplier(const InnerFunctionSpec& spec, const RapidityGrid& g);

/// e^{it f(e^{q_j})} for a semigroup generator (pole at a grid point throws).
CArray flow_multiplier(const GeneratorSpec& gen, double t, const RapidityGrid& g);

/// Membership machinery for the standard subspace H (or K = psi(Q) H, or a
/// flow image). The test works on the weighted dual profile
/// u(s) = e^{-pi s/2} g(s) restricted to |s| <= s_max: f lies in H exactly
/// when u is Hermitian, i.e. the inverse transform of u is real. s_sym is
/// the narrower band the projection symmetrizes over; the e^{pi s}
/// reweighting there caps roundoff amplification at e^{pi s_sym}.
struct SubspaceHandle {
    enum class Kind { H, VH, Flow };
    Kind kind = Kind::H;
    InnerFunctionSpec psi;       // Kind::VH
    GeneratorSpec gen;           // Kind::Flow
    double flow_t = 0.0;

    double s_max = 13.0;
    double s_sym = 6.5;
    double tail_tol = 1e-10;     // admissibility: dual tail bound outside s_max
    double dual_floor = 1e-13;   // bins below this fraction of the dual peak
                                 // carry no signal and are masked

    static SubspaceHandle standard();
    static SubspaceHandle multiplied(InnerFunctionSpec psi);
    static SubspaceHandle flowed(GeneratorSpec gen, double t);
};

struct MembershipReport {
    double residual = 0.0;       // ||Im v|| / ||v||
    double tol = 0.0;
    bool pass = false;
    bool admissible = false;     // dual tail below tail_tol outside the band
    double tail_ratio = 0.0;
};

/// Residual of the reality test. Zero input throws std::invalid_argument;
/// a violated band limit is reported, not thrown.
MembershipReport membership_residual(const WaveFunction& f, const SubspaceHandle& sub,
                                     double tol = 1e-6);

/// Real-linear symmetrization onto H: Hermitian part of the weighted dual
/// profile within |s| <= s_sym, zero outside. Idempotent; input already in
/// H is returned unchanged up to roundoff. Throws std::domain_error when
/// the output norm collapses below 1e-12 of the input norm (i H direction).
WaveFunction project_to_H(const WaveFunction& f, const SubspaceHandle& sub);

/// Deterministic H-samples: random smooth dual profiles, projected and
/// normalized. The Gaussian dual envelope must reach ~1e-13 inside the
/// band so the cut leaves no visible spectral edge.
struct SampleParams {
    double q_center = 0.0;
    double dual_sigma = 0.7;
    double dual_band = 5.0;
    int poly_degree = 4;
};

std::vector<WaveFunction> sample_H_vectors(const RapidityGrid& g, int count,
                                           std::uint64_t seed,
                                           const SubspaceHandle& sub,
                                           const SampleParams& params = {});

/// H-members built directly as Hermitian weighted dual profiles (no
/// projection pass), free of the e^{pi s}-amplified roundoff edge a
/// projection leaves at its band end. Multiplier images of these stay
/// testable down to ~1e-7. Defaults place mass away from the rapidly
/// oscillating region of flow multipliers at negative rapidity.
struct MemberParams {
    double q_center = 4.0;
    double spatial_sigma = 1.4;
    int poly_degree = 4;
};

std::vector<WaveFunction> sample_H_members(const RapidityGrid& g, int count,
                                           std::uint64_t seed,
                                           const MemberParams& params = {});

struct BorchersResidual {
    double dilation_translation = 0.0;  // Delta^{is} T(t) Delta^{-is} vs T(e^{-2pi s} t)
    double conjugation = 0.0;           // J T(t) J vs T(-t)
};

BorchersResidual verify_borchers(const WaveFunction& f, double t, double s);

struct EndomorphismReport {
    CheckReport symmetry;
    double max_residual = 0.0;          // membership residual of psi(Q)-images
    double commutation_residual = 0.0;  // [psi(Q), T(t)] on a sample
    double tol = 0.0;
    bool pass = false;
};

/// Certifies V = psi(Q) maps H into itself: symmetry of psi, membership of
/// n_samples multiplied H-samples, exact commutation with T. Throws
/// std::invalid_argument when psi is not unimodular on the grid.
EndomorphismReport verify_endomorphism(const InnerFunctionSpec& psi, const RapidityGrid& g,
                                       int n_samples, double tol,
                                       std::uint64_t seed = 0xB0F7,
                                       const SubspaceHandle& sub = SubspaceHandle::standard());

/// || V J V* J f - V^2 f || / ||f|| for V = psi(Q).
double gamma_check(const InnerFunctionSpec& psi, const WaveFunction& f);

struct FlowReport {
    double t = 0.0;
    double max_residual = 0.0;
    double tol = 0.0;
    bool pass = false;                  // residuals below tol (t >= 0 expectation)
};

/// Membership residuals of e^{itf(P)}-images of H-members.
FlowReport flow_invariance(const GeneratorSpec& gen, double t, const RapidityGrid& g,
                           int n_samples, double tol, std::uint64_t seed = 0xB0F7,
                           const MemberParams& params = {});

} // namespace modstrip

#include "modstrip/inner.hpp"
#include "modstrip/rng.hpp"

#include <Eigen/QR>
#include <doctest.h>

using namespace modstrip;
using doctest::Approx;

namespace {

InnerFunctionSpec disk_spec()
{
    return make_spec(DomainTag::Disk);
}

InnerFunctionSpec hp_spec()
{
    return make_spec(DomainTag::UpperHalfPlane);
}

InnerFunctionSpec with_zero(InnerFunctionSpec s, Complex a, int mult = 1)
{
    s.blaschke.zeros.push_back({a, mult});
    return s;
}

InnerFunctionSpec with_atom(InnerFunctionSpec s, double loc, double w, bool inf = false)
{
    s.singular.atoms.push_back({loc, w, inf});
    return s;
}

std::vector<double> hp_grid()
{
    std::vector<double> ps;
    for (int i = 1; i <= 32; ++i)
        ps.push_back(0.2 * i);
    return ps;
}

} // namespace

TEST_CASE("disk evaluation closed forms")
{
    // B_0(z) = z
    CHECK(eval(with_zero(disk_spec(), {0.0, 0.0}), {0.5, 0.0}) == Complex{0.5, 0.0});

    // zero at 0.5: (|a|/a)(z-a)/(1-conj(a) z) at z = 0 gives -0.5
    const Complex v = eval(with_zero(disk_spec(), {0.5, 0.0}), {0.0, 0.0});
    CHECK(v.real() == Approx(-0.5).epsilon(1e-15));
    CHECK(v.imag() == Approx(0.0));

    // atom of weight c at the boundary point 1: phi(0) = e^{-c}
    for (double c : {0.25, 1.0, 2.5}) {
        const Complex w = eval(with_atom(disk_spec(), 0.0, c), {0.0, 0.0});
        CHECK(w.real() == Approx(std::exp(-c)).epsilon(1e-14));
        CHECK(w.imag() == Approx(0.0));
    }
}

TEST_CASE("evaluation rejects boundary and exterior points")
{
    const auto spec = with_zero(disk_spec(), {0.5, 0.0});
    CHECK_THROWS_AS(eval(spec, {1.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(eval(spec, {1.2, 0.0}), std::domain_error);
    CHECK_THROWS_AS(eval(hp_spec(), {0.3, -0.1}), std::domain_error);
    CHECK_THROWS_AS(eval(in_domain(hp_spec(), DomainTag::Strip), {0.0, 3.5}), std::domain_error);
}

TEST_CASE("boundary evaluation guards singular atoms")
{
    const auto spec = with_atom(disk_spec(), 0.0, 1.0);
    CHECK_THROWS_AS(boundary_value(spec, 0.0), std::domain_error);
    CHECK(std::abs(std::abs(boundary_value(spec, 0.5)) - 1.0) < 1e-14);
}

TEST_CASE("product merges zeros, atoms and phases")
{
    const auto b0 = with_zero(disk_spec(), {0.0, 0.0});
    const auto sq = product(b0, b0);
    REQUIRE(sq.blaschke.zeros.size() == 1);
    CHECK(sq.blaschke.zeros[0].multiplicity == 2);
    CHECK(eval(sq, {0.5, 0.0}).real() == Approx(0.25).epsilon(1e-15));

    const auto a1 = with_atom(disk_spec(), 0.0, 0.7);
    const auto a2 = with_atom(disk_spec(), 0.0, 0.4);
    const auto sum = product(a1, a2);
    REQUIRE(sum.singular.atoms.size() == 1);
    CHECK(sum.singular.atoms[0].weight == Approx(1.1));

    // zero at 0.5 times atom at -1: phi(0) = -0.5 e^{-1}
    const auto mixed = product(with_zero(disk_spec(), {0.5, 0.0}),
                               with_atom(disk_spec(), M_PI, 1.0));
    CHECK(eval(mixed, {0.0, 0.0}).real() == Approx(-0.5 * std::exp(-1.0)).epsilon(1e-14));

    CHECK_THROWS_AS(product(disk_spec(), hp_spec()), std::domain_error);
}

TEST_CASE("product of specs multiplies boundary evaluations")
{
    Rng rng(41);
    auto s1 = with_atom(with_zero(hp_spec(), {0.4, 1.2}), 0.0, 0.6);
    auto s2 = with_zero(hp_spec(), {-0.4, 1.2});
    const auto prod = product(s1, s2);
    for (int i = 0; i < 24; ++i) {
        const Complex z{4.0 * rng.symmetric(), 3.0 * rng.uniform() + 0.05};
        CHECK(std::abs(eval(prod, z) - eval(s1, z) * eval(s2, z)) < 1e-13);
    }
}

TEST_CASE("product is commutative and associative on the data")
{
    auto a = with_zero(hp_spec(), {0.3, 1.0});
    auto b = with_atom(hp_spec(), 0.5, 0.4);
    auto c = with_zero(with_atom(hp_spec(), 0.0, 0.2, true), {0.3, 1.0});

    const auto ab = product(a, b);
    const auto ba = product(b, a);
    const auto abc1 = product(product(a, b), c);
    const auto abc2 = product(a, product(b, c));

    Rng rng(59);
    for (int i = 0; i < 16; ++i) {
        const Complex z{3.0 * rng.symmetric(), 2.0 * rng.uniform() + 0.05};
        CHECK(std::abs(eval(ab, z) - eval(ba, z)) < 1e-14);
        CHECK(std::abs(eval(abc1, z) - eval(abc2, z)) < 1e-14);
    }
    // the repeated zero collapses to one entry with summed multiplicity
    REQUIRE(abc1.blaschke.zeros.size() == 1);
    CHECK(abc1.blaschke.zeros[0].multiplicity == 2);
    REQUIRE(abc2.blaschke.zeros.size() == 1);
    CHECK(abc2.blaschke.zeros[0].multiplicity == 2);
    CHECK(abc1.singular.atoms.size() == 2);
}

TEST_CASE("modulus bound holds at random interior points")
{
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        auto spec = hp_spec();
        const int nz = static_cast<int>(rng.uniform() * 3);
        for (int i = 0; i < nz; ++i)
            spec = with_zero(spec, {2.0 * rng.symmetric(), 2.0 * rng.uniform() + 0.05});
        if (rng.uniform() < 0.5)
            spec = with_atom(spec, 2.0 * rng.symmetric(), rng.uniform() + 0.1);
        if (rng.uniform() < 0.3)
            spec = with_atom(spec, 0.0, rng.uniform() + 0.1, true);
        for (int i = 0; i < 50; ++i) {
            const Complex z{6.0 * rng.symmetric(), 5.0 * rng.uniform() + 1e-4};
            CHECK(std::abs(eval(spec, z)) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("boundary approach restores unit modulus")
{
    const auto spec = product(with_zero(hp_spec(), {0.0, 1.0}),
                              with_atom(hp_spec(), 1.5, 0.8));
    for (double p : {-3.0, -0.7, 0.2, 0.9, 2.4, 5.0}) {
        // samples stay >= 0.1 away from the atom at 1.5
        if (std::abs(p - 1.5) < 0.1)
            continue;
        CHECK(std::abs(std::abs(approach_value(spec, p, 1e-6)) - 1.0) < 1e-4);
    }
}

TEST_CASE("symmetry check on the half-plane")
{
    // zero at i: (p - i)/(p + i) satisfies phi(-p) = conj phi(p)
    CHECK(symmetry_check(with_zero(hp_spec(), {0.0, 1.0}), hp_grid(), 1e-8).pass);

    // zero at 1 + i fails; direct formula disagreement at p = 1
    const auto bad = with_zero(hp_spec(), {1.0, 1.0});
    const auto rep = symmetry_check(bad, hp_grid(), 1e-8);
    CHECK_FALSE(rep.pass);
    const Complex lhs = boundary_value(bad, -1.0);
    const Complex rhs = std::conj(boundary_value(bad, 1.0));
    CHECK(rep.max_residual >= std::abs(lhs - rhs) - 1e-12);
    CHECK(std::abs(lhs - rhs) > 0.5);

    // a zero paired with its mirror -conj(a) restores the symmetry
    const auto paired = with_zero(with_zero(hp_spec(), {1.0, 1.0}), {-1.0, 1.0});
    CHECK(symmetry_check(paired, hp_grid(), 1e-8).pass);

    CHECK_THROWS_AS(symmetry_check(bad, {}, 1e-8), std::invalid_argument);
}

TEST_CASE("symmetry closure under products")
{
    Rng rng(29);
    for (int trial = 0; trial < 8; ++trial) {
        auto a = with_zero(hp_spec(), {0.0, 0.3 + rng.uniform()});
        const double re = 0.5 + rng.uniform();
        auto b = with_zero(with_zero(hp_spec(), {re, 1.0}), {-re, 1.0});
        if (rng.uniform() < 0.5)
            b = with_atom(b, 0.0, 0.2 + rng.uniform());
        REQUIRE(symmetry_check(a, hp_grid(), 1e-8).pass);
        REQUIRE(symmetry_check(b, hp_grid(), 1e-8).pass);
        CHECK(symmetry_check(product(a, b), hp_grid(), 1e-8).pass);
    }
}

TEST_CASE("scattering classification of the two-atom form")
{
    // atoms at the disk points +1 and -1 with weights c1, c2
    auto two_atom = [](double c1, double c2) {
        auto s = disk_spec();
        if (c1 > 0)
            s = with_atom(s, 0.0, c1);
        if (c2 > 0)
            s = with_atom(s, M_PI, c2);
        return in_domain(s, DomainTag::Strip);
    };

    CHECK(scattering_check(two_atom(1.0, 1.0), 1e-8).pass);
    CHECK(scattering_check(two_atom(0.3, 0.3), 1e-8).pass);

    const auto rep = scattering_check(two_atom(1.0, 0.0), 1e-8);
    CHECK(rep.symmetry.pass);
    CHECK(rep.continuous);
    CHECK_FALSE(rep.mirror.pass);
    CHECK_FALSE(rep.pass);

    // independent route: both sides at z = 1 + i pi/2, i.e. the disk points
    // +-(e-1)/(e+1) on the real diameter
    const double d = (std::exp(1.0) - 1.0) / (std::exp(1.0) + 1.0);
    const double lhs = std::exp(-(1.0 - d) / (1.0 + d));
    const double rhs = std::exp(-(1.0 + d) / (1.0 - d));
    const InnerFunctionSpec strip = two_atom(1.0, 0.0);
    const Complex at_z = eval(strip, {1.0, M_PI / 2});
    const Complex at_mz = eval(strip, {-1.0, M_PI / 2});
    CHECK(at_z.real() == Approx(rhs).epsilon(1e-12));
    CHECK(at_mz.real() == Approx(lhs).epsilon(1e-12));
    CHECK(rep.mirror.max_residual >= std::abs(lhs - rhs) - 1e-12);

    // identity spec is trivially a scattering function
    CHECK(scattering_check(in_domain(disk_spec(), DomainTag::Strip), 1e-8).pass);

    // an atom away from the strip ends breaks continuity on the closure
    const auto off = in_domain(with_atom(disk_spec(), 1.2, 0.5), DomainTag::Strip);
    CHECK_FALSE(scattering_check(off, 1e-8).continuous);
}

TEST_CASE("conformal transport of canonical data")
{
    // disk zero a maps to the half-plane zero h(a) up to a unimodular
    // constant; determine the constant at one point, verify at others
    const Complex a{0.4, 0.3};
    const auto disk = with_zero(disk_spec(), a);
    const Complex alpha = disk_to_half_plane(a);
    const auto hp = with_zero(hp_spec(), alpha);

    const Complex p0{0.7, 1.9};
    const Complex ratio = eval(disk, half_plane_to_disk(p0)) / eval(hp, p0);
    CHECK(std::abs(std::abs(ratio) - 1.0) < 1e-12);

    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        const Complex p{5.0 * rng.symmetric(), 4.0 * rng.uniform() + 0.01};
        CHECK(std::abs(eval(disk, half_plane_to_disk(p)) - ratio * eval(hp, p)) < 1e-12);
    }

    // disk atom at angle theta maps to the half-plane atom at -cot(theta/2)
    // with the same weight and no extra constant
    const double theta = M_PI / 2;
    const auto datom = with_atom(disk_spec(), theta, 0.8);
    const auto hatom = with_atom(hp_spec(), -1.0 / std::tan(theta / 2), 0.8);
    for (int i = 0; i < 20; ++i) {
        const Complex p{5.0 * rng.symmetric(), 4.0 * rng.uniform() + 0.01};
        CHECK(std::abs(eval(datom, half_plane_to_disk(p)) - eval(hatom, p)) < 1e-12);
    }

    // atom at the disk point +1 maps to the point at infinity: e^{iwp}
    const auto dinf = with_atom(disk_spec(), 0.0, 0.6);
    const auto hinf = with_atom(hp_spec(), 0.0, 0.6, true);
    for (int i = 0; i < 20; ++i) {
        const Complex p{5.0 * rng.symmetric(), 4.0 * rng.uniform() + 0.01};
        CHECK(std::abs(eval(dinf, half_plane_to_disk(p)) - eval(hinf, p)) < 1e-12);
    }
}

TEST_CASE("strip coordinates compose the conformal chain")
{
    const auto spec = with_atom(with_zero(disk_spec(), {0.2, -0.1}), M_PI, 0.5);
    const auto strip = in_domain(spec, DomainTag::Strip);
    Rng rng(13);
    for (int i = 0; i < 20; ++i) {
        const Complex w{3.0 * rng.symmetric(), M_PI * (0.05 + 0.9 * rng.uniform())};
        const Complex via_chain = eval(spec, half_plane_to_disk(std::exp(w)));
        CHECK(std::abs(eval(strip, w) - via_chain) < 1e-12);
    }
}

TEST_CASE("spec validation names the violated invariant")
{
    auto bad = disk_spec();
    bad.blaschke.zeros.push_back({{1.2, 0.0}, 1});
    CHECK_THROWS_WITH_AS(validate(bad), "zero outside open disk", std::invalid_argument);

    auto neg = hp_spec();
    neg.singular.atoms.push_back({0.0, -1.0, false});
    CHECK_THROWS_WITH_AS(validate(neg), "atom weight must be positive", std::invalid_argument);

    auto dup = hp_spec();
    dup.singular.atoms.push_back({1.0, 0.5, false});
    dup.singular.atoms.push_back({1.0, 0.7, false});
    CHECK_THROWS_AS(validate(dup), std::invalid_argument);

    auto phase = hp_spec();
    phase.phase = {0.5, 0.0};
    CHECK_THROWS_AS(validate(phase), std::invalid_argument);
}

TEST_CASE("matrix unitarity and symmetry checks")
{
    std::vector<double> momenta;
    for (int i = 1; i <= 16; ++i)
        momenta.push_back(0.3 * i);

    // diagonal sample with symmetric entries (zeros at i and 2i)
    const auto one = hp_spec();
    const auto d1 = with_zero(hp_spec(), {0.0, 1.0});
    const auto d2 = with_zero(hp_spec(), {0.0, 2.0});
    std::vector<std::vector<InnerFunctionSpec>> diag{{d1, one}, {one, d2}};
    // build a genuinely diagonal matrix: off-diagonal entries identically 0
    MatrixInnerSample m = sample_matrix(diag, momenta);
    for (std::size_t i = 0; i < momenta.size(); ++i) {
        m.at_pos[0][1][i] = m.at_neg[0][1][i] = 0.0;
        m.at_pos[1][0][i] = m.at_neg[1][0][i] = 0.0;
    }
    const auto rep = matrix_unitarity_check(m, 1e-10);
    CHECK(rep.pass);

    Eigen::MatrixXcd swap(2, 2);
    swap << Complex{0, 0}, Complex{0, 1}, Complex{0, 1}, Complex{0, 0};
    const auto rep2 = matrix_unitarity_check(constant_matrix(swap, momenta), 1e-10);
    CHECK(rep2.unitary);
    CHECK_FALSE(rep2.symmetric);
    CHECK_FALSE(rep2.pass);

    Eigen::MatrixXcd rot(2, 2);
    rot << 0.0, 1.0, -1.0, 0.0;
    CHECK(matrix_unitarity_check(constant_matrix(rot, momenta), 1e-10).pass);

    MatrixInnerSample ragged = m;
    ragged.at_pos[1][1] = CArray::Zero(3);
    CHECK_THROWS_AS(matrix_unitarity_check(ragged, 1e-10), std::invalid_argument);
}

TEST_CASE("rotation-composed matrix sample stays pointwise unitary")
{
    std::vector<double> momenta;
    for (int i = 1; i <= 12; ++i)
        momenta.push_back(0.4 * i);

    const int n = 4;
    std::vector<std::vector<InnerFunctionSpec>> diag(n, std::vector<InnerFunctionSpec>(n, hp_spec()));
    for (int i = 0; i < n; ++i)
        diag[i][i] = with_zero(hp_spec(), {0.0, 0.5 + 0.5 * i});
    MatrixInnerSample d = sample_matrix(diag, momenta);
    for (int h = 0; h < n; ++h)
        for (int k = 0; k < n; ++k)
            if (h != k) {
                d.at_pos[h][k].setZero();
                d.at_neg[h][k].setZero();
            }

    // random real orthogonal factor via QR of a seeded matrix
    Rng rng(0xB0F7);
    Eigen::MatrixXd raw(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            raw(i, j) = rng.symmetric();
    const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(raw).householderQ();
    const MatrixInnerSample r = constant_matrix(q.cast<Complex>(), momenta);

    const auto composed = matrix_product(matrix_product(d, r), d);
    const auto rep = matrix_unitarity_check(composed, 1e-10);
    CHECK(rep.pass);
    CHECK(rep.max_unitarity_residual < 1e-10);
}

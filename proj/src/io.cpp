#include "modstrip/io.hpp"

#include <fstream>

namespace modstrip {

namespace {

Complex complex_from(const Json& j, const char* what)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(std::string(what) + " must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

double number_from(const Json& j, const char* what)
{
    if (!j.is_number())
        throw ParseError(std::string(what) + " must be a number");
    return j.get<double>();
}

} // namespace

InnerFunctionSpec inner_spec_from_json(const Json& j)
{
    InnerFunctionSpec spec;
    const std::string domain = j.value("domain", "half_plane");
    if (domain == "disk")
        spec.domain = DomainTag::Disk;
    else if (domain == "half_plane")
        spec.domain = DomainTag::UpperHalfPlane;
    else if (domain == "strip")
        spec.domain = DomainTag::Strip;
    else
        throw ParseError("unknown domain tag '" + domain + "'");
    spec.data_domain = spec.domain == DomainTag::Disk ? DomainTag::Disk
                                                      : DomainTag::UpperHalfPlane;

    if (j.contains("phase"))
        spec.phase = complex_from(j.at("phase"), "phase");

    if (j.contains("blaschke")) {
        for (const auto& z : j.at("blaschke")) {
            BlaschkeZero zero;
            zero.location = complex_from(z.at("a"), "blaschke zero");
            zero.multiplicity = z.value("mult", 1);
            spec.blaschke.zeros.push_back(zero);
        }
    }
    if (j.contains("singular")) {
        for (const auto& a : j.at("singular")) {
            SingularAtom atom;
            const auto& loc = a.at("loc");
            if (loc.is_string()) {
                if (loc.get<std::string>() != "inf")
                    throw ParseError("atom location must be a number or \"inf\"");
                atom.at_infinity = true;
            } else {
                atom.location = number_from(loc, "atom location");
            }
            atom.weight = number_from(a.at("weight"), "atom weight");
            spec.singular.atoms.push_back(atom);
        }
    }
    try {
        validate(spec);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return spec;
}

Json to_json(const InnerFunctionSpec& spec)
{
    Json j;
    j["domain"] = to_string(spec.domain);
    j["phase"] = {spec.phase.real(), spec.phase.imag()};
    j["blaschke"] = Json::array();
    for (const auto& z : spec.blaschke.zeros)
        j["blaschke"].push_back({{"a", {z.location.real(), z.location.imag()}},
                                 {"mult", z.multiplicity}});
    j["singular"] = Json::array();
    for (const auto& a : spec.singular.atoms) {
        Json atom;
        if (a.at_infinity)
            atom["loc"] = "inf";
        else
            atom["loc"] = a.location;
        atom["weight"] = a.weight;
        j["singular"].push_back(atom);
    }
    return j;
}

GeneratorSpec generator_from_json(const Json& j)
{
    GeneratorSpec gen;
    gen.c = j.value("c", 0.0);
    gen.c1 = j.value("c1", 0.0);
    gen.c2 = j.value("c2", 0.0);
    if (j.contains("atoms")) {
        for (const auto& a : j.at("atoms")) {
            GeneratorAtom atom;
            atom.lambda = number_from(a.at("lambda"), "generator lambda");
            atom.weight = number_from(a.at("weight"), "generator weight");
            gen.nu_atoms.push_back(atom);
        }
    }
    try {
        validate(gen);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return gen;
}

Json to_json(const GeneratorSpec& gen)
{
    Json j;
    j["c"] = gen.c;
    j["atoms"] = Json::array();
    for (const auto& a : gen.nu_atoms)
        j["atoms"].push_back({{"lambda", a.lambda}, {"weight", a.weight}});
    j["c1"] = gen.c1;
    j["c2"] = gen.c2;
    return j;
}

RapidityGrid rapidity_grid_from_json(const Json& j)
{
    const int n = j.value("n", 4096);
    const double q_max = j.value("q_max", 16.0);
    if (n <= 0 || (n & (n - 1)) != 0)
        throw ParseError("grid size n must be a power of two");
    if (q_max <= 0.0)
        throw ParseError("q_max must be positive");
    return RapidityGrid::with_extent(n, q_max);
}

SubspaceHandle subspace_from_json(const Json& j)
{
    SubspaceHandle h;
    h.s_max = j.value("s_max", h.s_max);
    h.s_sym = j.value("s_sym", h.s_sym);
    if (h.s_max <= 0 || h.s_sym <= 0)
        throw ParseError("band limits must be positive");
    return h;
}

SpatialGrid spatial_grid_from_json(const Json& j)
{
    const int m = j.value("m", 8192);
    const double X = j.value("X", 12.8);
    if (m <= 0 || (m & (m - 1)) != 0)
        throw ParseError("grid size m must be a power of two");
    if (X <= 0.0)
        throw ParseError("grid extent X must be positive");
    return SpatialGrid::with_extent(m, X);
}

Scenario scenario_from_json(const Json& j)
{
    Scenario sc;
    sc.phi = inner_spec_from_json(j.contains("phi") ? j.at("phi") : j);
    if (j.contains("grid"))
        sc.grid = spatial_grid_from_json(j.at("grid"));
    if (j.contains("intervals")) {
        const auto& iv = j.at("intervals");
        const auto& a = iv.at("I1");
        const auto& b = iv.at("I2");
        sc.i1 = {a[0].get<double>(), a[1].get<double>()};
        sc.i2 = {b[0].get<double>(), b[1].get<double>()};
        if (!(sc.i1.a < sc.i1.b) || !(sc.i2.a < sc.i2.b))
            throw ParseError("intervals must be nonempty [a, b] with a < b");
        if (!(sc.i1.b < sc.i2.a))
            throw ParseError("overlapping intervals: I2 must lie strictly right of I1");
        sc.has_intervals = true;
    }
    if (j.contains("ell")) {
        const auto& e = j.at("ell");
        const std::string kind = e.value("kind", "bump");
        if (kind != "bump")
            throw ParseError("unknown density kind '" + kind + "'");
        if (e.contains("support")) {
            const auto& s = e.at("support");
            sc.ell_support = {s[0].get<double>(), s[1].get<double>()};
        }
        if (e.contains("spin")) {
            const int n = e.at("spin").get<int>();
            if (n < 1)
                throw ParseError("spin must be a positive integer");
            sc.charge = ExtensionParams{n}.charge();
        } else {
            sc.charge = e.value("charge", 2.0);
        }
        if (!(sc.ell_support.a > 0.0 && sc.ell_support.a < sc.ell_support.b))
            throw ParseError("density support must sit inside (0, inf)");
        sc.has_ell = true;
    }
    if (j.contains("t_values"))
        for (const auto& t : j.at("t_values"))
            sc.t_values.push_back(number_from(t, "t value"));
    return sc;
}

Json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open spec file '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError("malformed JSON in '" + path + "': " + e.what());
    }
    return j;
}

} // namespace modstrip

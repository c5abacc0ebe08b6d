#pragma once

#include "curlwave/geometry.hpp"
#include "curlwave/kernels.hpp"
#include "curlwave/phase_plane.hpp"
#include "curlwave/synthesis.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace curlwave {

struct GeometrySpec {
    std::string family = "torus";  ///< torus | cone_axial | cone_abs_axial | custom
    double gamma = 1.0;
    double r0 = 0.0;
    std::string g;                 ///< custom only, in x1 x2 x3 r
    std::string G;                 ///< custom only, in zeta
    double tube = 1e-6;
};

struct CoefficientSpec {
    std::string s = "1", q = "1", V = "exp(zeta)";
    std::optional<double> sigma_inf, tau_inf;
    std::optional<double> delta;  ///< decay rate of tau~ (rogue) or of sigma~ - sigma_inf (breathers)
};

struct ToleranceSpec {
    double residual = 1e-6;
    double parallelism = 1e-10;
    double periodicity = 1e-8;
    double curl = 1e-4;
    double fd_step = 1e-3;
    double curl_step = 1e-3;
    double negative_control = 1e-3;
};

struct PeriodMapSpec {
    std::optional<std::pair<double, double>> c_range;
    std::optional<std::pair<double, double>> s_range;
    int samples = 21;
};

struct HolderSpec {
    double T = 5.0;
    int pairs = 50;
};

struct ChecksSpec {
    bool curl = true;
    bool decay = true;
    bool negative_control = true;
    std::optional<double> support_R;  ///< sigma~ = sigma_inf for |zeta| >= R
    std::optional<HolderSpec> holder;
    std::vector<double> shells;       ///< empty: default_shells(decay_radius)
    double decay_radius = 10.0;
};

struct OutputSpec {
    std::string field;
    std::string diagnostics;
    std::string table;
};

/// Validated run description. Every key has a documented default, so `{}` is valid.
struct RunConfig {
    std::string kind = "rogue_wave";
    Variant equation = Variant::Rogue;
    double p = 3.0;
    GeometrySpec geometry;
    CoefficientSpec coefficients;
    std::optional<double> omega, T;
    std::string phase_shift;  ///< expression in zeta; empty for none
    Grid grid{4.0, 9, -2.0, 2.0, 9};
    ToleranceSpec tolerances;
    PeriodMapSpec periodmap;
    std::vector<double> T_list{10.0, 20.0, 40.0};
    ChecksSpec checks;
    OutputSpec output;
    std::uint64_t seed = 1;

    GeometryProfile build_geometry() const;
    CoefficientProfiles build_coefficients() const;
    PhaseShift build_phase_shift() const;
};

/// Parses JSON text. ParseError carries line/column of malformed JSON;
/// ValidationError names the offending key (unknown keys are rejected).
RunConfig parse_config_text(const std::string& text);
/// Reads and parses a file; IoError when it cannot be read.
RunConfig parse_config(const std::string& path);

Variant parse_variant(const std::string& name);
FieldKind parse_kind(const std::string& name);

}  // namespace curlwave

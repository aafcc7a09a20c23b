#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jetvar/connections.hpp"
#include "jetvar/noether.hpp"
#include "jetvar/tangent_forms.hpp"
#include "jetvar/variational.hpp"

namespace jetvar {

struct GeodesicSetup {
    std::vector<double> point, velocity;
    double step = 1e-3;
    int steps = 1000;
};

// A fully validated model description. Gauge parameters, when declared, are
// already part of `model`.
struct ModelFile {
    JetModel model{1, {}};
    std::optional<Lagrangian> lagrangian;
    std::vector<std::pair<std::string, ContactDerivation>> vector_fields;
    std::optional<Metric> metric;
    std::optional<Connection> connection;
    std::optional<SolderingForm> soldering;
    std::optional<WorldConnection> world_connection;
    std::optional<GaugeAlgebra> algebra;
    std::optional<PrincipalConnectionField> gauge_connection;
    std::optional<GeodesicSetup> geodesic;
    std::vector<std::pair<std::string, TangentValuedForm>> tangent_forms;
    std::vector<std::string> gauge_param_names;
    std::optional<GaugeSymmetrySpec> gauge_symmetry;
    std::optional<std::vector<NIGenerator>> ni_generators;

    const ContactDerivation* find_vector_field(const std::string& name) const;
    const TangentValuedForm* find_tangent_form(const std::string& name) const;
};

// ParseError carries line and column; invariant violations are ValidationError
// with the file position in the message.
ModelFile parse_model(const std::string& text, const std::string& origin = "<model>");
ModelFile load_model(const std::string& path);

}  // namespace jetvar

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dgimex/dg_ops.hpp"
#include "dgimex/eqsets.hpp"
#include "dgimex/imex.hpp"
#include "dgimex/implicit.hpp"
#include "dgimex/stabilization.hpp"

namespace dgimex {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Integrator { imex, rk35 };
enum class Formulation { all_direction, column };

/// One experiment, parsed from a sectioned key=value file.
struct RunConfig {
    // [case]
    std::string case_name = "rtb";
    EquationSet set = EquationSet::set3c;
    double mean_flow = 20.0; // igw
    double aspect = 500.0;   // acoustic channel
    // [mesh]
    int nex = 10, nez = 10, order = 4;
    double lx = -1.0, lz = -1.0; // <= 0: case defaults
    // [time]
    Integrator integrator = Integrator::imex;
    std::string tableaux = "ark2";
    Formulation formulation = Formulation::all_direction;
    ImexForm form = ImexForm::no_schur;
    DgForm variational = DgForm::weak;
    FluxConfig flux = FluxConfig::AT;
    double dt = 0.0;  // fixed step when > 0
    double cn = 0.0;  // target Courant number when > 0 (recomputed per step)
    CourantMode cn_mode = CourantMode::total;
    double t_end = -1.0; // < 0: case default
    // [solver]
    std::string krylov = "gmres"; // gmres | cg
    double tol = 1e-4;
    int restart = 40;
    int max_iter = 2000;
    bool warm_start = true;
    // [stabilization]
    std::optional<StabConfig> stab; // unset: case default
    // [output]
    std::string out_dir = "out";
    int every = 100;
    std::vector<double> snapshot_times;
    std::string snapshot_format = "csv"; // csv | vtk

    void validate() const; // throws ConfigError
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);
/// Canonical serialization (fixed section and key order); parse/serialize is
/// idempotent on the canonical form.
std::string serialize_config(const RunConfig& cfg);

std::string equation_set_name(EquationSet s);
EquationSet equation_set_from_name(const std::string& s);

} // namespace dgimex

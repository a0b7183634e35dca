#include "dgimex/config.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "dgimex/cases.hpp"

namespace dgimex {

std::string equation_set_name(EquationSet s) {
    return s == EquationSet::set2c ? "set2c" : "set3c";
}

EquationSet equation_set_from_name(const std::string& s) {
    if (s == "set2c") return EquationSet::set2c;
    if (s == "set3c") return EquationSet::set3c;
    throw ConfigError("unknown equation set: " + s);
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

using KvMap = std::map<std::string, std::string>;

KvMap parse_sections(const std::string& text) {
    KvMap kv;
    std::istringstream in(text);
    std::string line, section;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("malformed config line: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (section.empty())
            throw ConfigError("key outside a section: " + key);
        kv[section + "." + key] = val;
    }
    return kv;
}

double to_double(const std::string& s, const std::string& key) {
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid number for " + key + ": " + s);
    }
}

int to_int(const std::string& s, const std::string& key) {
    const double v = to_double(s, key);
    return (int)v;
}

bool to_bool(const std::string& s, const std::string& key) {
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ConfigError("invalid boolean for " + key + ": " + s);
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
    const KvMap kv = parse_sections(text);
    RunConfig c;
    StabConfig stab;
    bool stab_set = false;

    auto get = [&](const std::string& key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end())
            return std::nullopt;
        return it->second;
    };

    for (const auto& [key, val] : kv) {
        if (key == "case.name") c.case_name = val;
        else if (key == "case.equation_set") c.set = equation_set_from_name(val);
        else if (key == "case.mean_flow") c.mean_flow = to_double(val, key);
        else if (key == "case.aspect") c.aspect = to_double(val, key);
        else if (key == "mesh.nex") c.nex = to_int(val, key);
        else if (key == "mesh.nez") c.nez = to_int(val, key);
        else if (key == "mesh.order") c.order = to_int(val, key);
        else if (key == "mesh.lx") c.lx = to_double(val, key);
        else if (key == "mesh.lz") c.lz = to_double(val, key);
        else if (key == "time.integrator") {
            if (val == "imex") c.integrator = Integrator::imex;
            else if (val == "rk35") c.integrator = Integrator::rk35;
            else throw ConfigError("unknown integrator: " + val);
        } else if (key == "time.tableaux") c.tableaux = val;
        else if (key == "time.formulation") {
            if (val == "all") c.formulation = Formulation::all_direction;
            else if (val == "column") c.formulation = Formulation::column;
            else throw ConfigError("unknown formulation: " + val);
        } else if (key == "time.form") {
            if (val == "no-schur") c.form = ImexForm::no_schur;
            else if (val == "schur") c.form = ImexForm::schur;
            else throw ConfigError("unknown form: " + val);
        } else if (key == "time.variational") {
            if (val == "weak") c.variational = DgForm::weak;
            else if (val == "strong") c.variational = DgForm::strong;
            else throw ConfigError("unknown variational form: " + val);
        } else if (key == "time.flux") c.flux = flux_config_from_name(val);
        else if (key == "time.dt") c.dt = to_double(val, key);
        else if (key == "time.cn") c.cn = to_double(val, key);
        else if (key == "time.cn_mode") c.cn_mode = courant_mode_from_name(val);
        else if (key == "time.t_end") c.t_end = to_double(val, key);
        else if (key == "solver.krylov") c.krylov = val;
        else if (key == "solver.tol") c.tol = to_double(val, key);
        else if (key == "solver.restart") c.restart = to_int(val, key);
        else if (key == "solver.max_iter") c.max_iter = to_int(val, key);
        else if (key == "solver.warm_start") c.warm_start = to_bool(val, key);
        else if (key == "stabilization.mode") {
            stab_set = true;
            if (val == "none") stab.mode = StabMode::none;
            else if (val == "constant") stab.mode = StabMode::constant_nu;
            else if (val == "vreman") stab.mode = StabMode::vreman;
            else throw ConfigError("unknown stabilization mode: " + val);
        } else if (key == "stabilization.nu") { stab_set = true; stab.nu = to_double(val, key); }
        else if (key == "stabilization.cs") { stab_set = true; stab.cs = to_double(val, key); }
        else if (key == "stabilization.targets") {
            stab_set = true;
            stab.on_momentum = val.find("momentum") != std::string::npos;
            stab.on_thermo = val.find("thermo") != std::string::npos;
        } else if (key == "output.dir") c.out_dir = val;
        else if (key == "output.every") c.every = to_int(val, key);
        else if (key == "output.snapshots") {
            std::istringstream ss(val);
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!trim(tok).empty())
                    c.snapshot_times.push_back(to_double(trim(tok), key));
        } else if (key == "output.format") c.snapshot_format = val;
        else throw ConfigError("unknown config key: " + key);
    }
    (void)get;
    if (stab_set)
        c.stab = stab;
    c.validate();
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void RunConfig::validate() const {
    case_spec(case_name); // throws for unknown case
    if (nex < 1 || nez < 1 || order < 1)
        throw ConfigError("mesh: nex/nez/order must be positive");
    if (dt <= 0.0 && cn <= 0.0 && integrator == Integrator::imex)
        throw ConfigError("time: either dt or cn must be positive");
    if (dt > 0.0 && cn > 0.0)
        throw ConfigError("time: dt and cn are mutually exclusive");
    if (form == ImexForm::schur && !is_centered_implicit(flux))
        throw ConfigError("form = schur requires a centered implicit flux (lambda_L = 0, "
                          "e.g. the CA configuration): the Schur complement is only "
                          "block-diagonal-feasible without an implicit jump term");
    if (krylov != "gmres" && krylov != "cg")
        throw ConfigError("solver.krylov must be gmres or cg");
    if (krylov == "cg" && form != ImexForm::schur)
        throw ConfigError("solver.krylov = cg requires the schur form (SPD system)");
    if (tol <= 0.0 || restart < 1 || max_iter < 1)
        throw ConfigError("solver: invalid tolerance/restart/max_iter");
    if (every < 1)
        throw ConfigError("output.every must be >= 1");
    if (snapshot_format != "csv" && snapshot_format != "vtk")
        throw ConfigError("output.format must be csv or vtk");
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream o;
    o.precision(17);
    o << "[case]\n";
    o << "name = " << c.case_name << "\n";
    o << "equation_set = " << equation_set_name(c.set) << "\n";
    o << "mean_flow = " << c.mean_flow << "\n";
    o << "aspect = " << c.aspect << "\n";
    o << "\n[mesh]\n";
    o << "nex = " << c.nex << "\n";
    o << "nez = " << c.nez << "\n";
    o << "order = " << c.order << "\n";
    o << "lx = " << c.lx << "\n";
    o << "lz = " << c.lz << "\n";
    o << "\n[time]\n";
    o << "integrator = " << (c.integrator == Integrator::imex ? "imex" : "rk35") << "\n";
    o << "tableaux = " << c.tableaux << "\n";
    o << "formulation = " << (c.formulation == Formulation::all_direction ? "all" : "column")
      << "\n";
    o << "form = " << (c.form == ImexForm::no_schur ? "no-schur" : "schur") << "\n";
    o << "variational = " << (c.variational == DgForm::weak ? "weak" : "strong") << "\n";
    o << "flux = " << flux_config_name(c.flux) << "\n";
    o << "dt = " << c.dt << "\n";
    o << "cn = " << c.cn << "\n";
    o << "cn_mode = " << courant_mode_name(c.cn_mode) << "\n";
    o << "t_end = " << c.t_end << "\n";
    o << "\n[solver]\n";
    o << "krylov = " << c.krylov << "\n";
    o << "tol = " << c.tol << "\n";
    o << "restart = " << c.restart << "\n";
    o << "max_iter = " << c.max_iter << "\n";
    o << "warm_start = " << (c.warm_start ? "true" : "false") << "\n";
    if (c.stab) {
        o << "\n[stabilization]\n";
        o << "mode = "
          << (c.stab->mode == StabMode::none
                  ? "none"
                  : (c.stab->mode == StabMode::constant_nu ? "constant" : "vreman"))
          << "\n";
        o << "nu = " << c.stab->nu << "\n";
        o << "cs = " << c.stab->cs << "\n";
        o << "targets = ";
        if (c.stab->on_momentum && c.stab->on_thermo) o << "momentum,thermo";
        else if (c.stab->on_momentum) o << "momentum";
        else if (c.stab->on_thermo) o << "thermo";
        o << "\n";
    }
    o << "\n[output]\n";
    o << "dir = " << c.out_dir << "\n";
    o << "every = " << c.every << "\n";
    o << "snapshots = ";
    for (size_t i = 0; i < c.snapshot_times.size(); ++i)
        o << (i ? "," : "") << c.snapshot_times[i];
    o << "\n";
    o << "format = " << c.snapshot_format << "\n";
    return o.str();
}

} // namespace dgimex

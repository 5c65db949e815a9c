#include "casimir/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "casimir/constants.hpp"

namespace casimir::cli {

namespace {

const std::vector<std::string> kKinds = {"DD", "NN", "DN", "ND", "EM"};
const std::vector<std::string> kBoundaries = {"dirichlet", "neumann"};
const std::vector<std::string> kMaterialTypes = {"pec", "vacuum", "plasma", "drude", "const"};
const std::set<std::string> kGlobalKeys = {"subcommand", "tol", "format", "units", "l_max", "nu_max"};

std::vector<SubcommandSpec> build_specs()
{
    using K = ParamKind;
    std::vector<SubcommandSpec> s;
    s.push_back({"plates",
                 "Lifshitz energy (T = 0) or free energy (T > 0) per unit area of two half-spaces",
                 "casimir plates --a 1 --material-1 pec --material-2 pec",
                 {{"a", K::Length, "", false, {}, "plate separation"},
                  {"T", K::NonNegative, "0", false, {}, "temperature (0 selects the frequency integral)"}},
                 2});
    s.push_back({"thermal-sweep",
                 "free energy, entropy and zero-mode share over a grid of separations and temperatures",
                 "casimir thermal-sweep --a 1,2 --T 0.05,0.1 --material-1 drude:100:1e-4 --material-2 drude:100:1e-4 "
                 "--format csv",
                 {{"a", K::LengthList, "", false, {}, "separations, strictly increasing"},
                  {"T", K::LengthList, "", false, {}, "temperatures (> 0), strictly increasing"}},
                 2});
    s.push_back({"pfa",
                 "proximity-force energy of two spheres (closed form) or of two height profiles",
                 "casimir pfa --r1 1 --r2 inf --d 0.01 --kind DD",
                 {{"kind", K::Choice, "EM", false, kKinds, "boundary conditions, upper then lower surface"},
                  {"r1", K::Length, "", true, {}, "first sphere radius (sphere mode)"},
                  {"r2", K::LengthOrInf, "inf", false, {}, "second sphere radius, inf for a plane"},
                  {"d", K::Length, "", true, {}, "closest surface separation (sphere mode)"},
                  {"profile_lower", K::Path, "", true, {}, "CSV height profile of the lower surface"},
                  {"profile_upper", K::Path, "", true, {}, "CSV height profile of the upper surface"}},
                 0});
    s.push_back({"gradient",
                 "derivative-expansion energy of two spheres (closed form) or of two height profiles",
                 "casimir gradient --profile-lower flat.csv --profile-upper bump.csv --kind DD",
                 {{"kind", K::Choice, "EM", false, kKinds, "boundary conditions, upper then lower surface"},
                  {"r1", K::Length, "", true, {}, "first sphere radius (sphere mode)"},
                  {"r2", K::LengthOrInf, "inf", false, {}, "second sphere radius, inf for a plane"},
                  {"d", K::Length, "", true, {}, "closest surface separation (sphere mode)"},
                  {"profile_lower", K::Path, "", true, {}, "CSV height profile of the lower surface"},
                  {"profile_upper", K::Path, "", true, {}, "CSV height profile of the upper surface"}},
                 0});
    s.push_back({"spheres",
                 "scalar scattering (TGTG) energy of two spheres",
                 "casimir spheres --r1 1 --r2 1 --d-cc 3 --bc-1 dirichlet --bc-2 dirichlet",
                 {{"r1", K::Length, "", false, {}, "radius of sphere 1"},
                  {"r2", K::LengthOrInf, "", false, {}, "radius of sphere 2 (inf: plane at distance d_cc)"},
                  {"d_cc", K::Length, "", false, {}, "centre-to-centre distance"},
                  {"bc_1", K::Choice, "dirichlet", false, kBoundaries, "boundary condition of sphere 1"},
                  {"bc_2", K::Choice, "dirichlet", false, kBoundaries, "boundary condition of sphere 2"}},
                 0});
    s.push_back({"sphere-plate",
                 "scalar scattering (TGTG) energy of a sphere above a plane, with the PFA ratio",
                 "casimir sphere-plate --R 1 --d 0.1 --l-max 60",
                 {{"R", K::Length, "", false, {}, "sphere radius"},
                  {"d", K::Length, "", false, {}, "surface gap"},
                  {"bc_sphere", K::Choice, "dirichlet", false, kBoundaries, "boundary condition of the sphere"},
                  {"bc_plate", K::Choice, "dirichlet", false, kBoundaries, "boundary condition of the plane"}},
                 0});
    s.push_back({"casimir-polder",
                 "retarded dipole-dipole energy, closed form and quadrature",
                 "casimir casimir-polder --alpha1 1 --alpha2 1 --d 1",
                 {{"alpha1", K::NonNegative, "", false, {}, "static polarizability (volume) of particle 1"},
                  {"alpha2", K::NonNegative, "", false, {}, "static polarizability (volume) of particle 2"},
                  {"d", K::Length, "", false, {}, "separation"}},
                 0});
    s.push_back({"strip",
                 "energy per length of a strip parallel to a plane",
                 "casimir strip --d 5 --H 1",
                 {{"d", K::Length, "", false, {}, "half-width of the strip"},
                  {"H", K::Length, "", false, {}, "separation from the plane"},
                  {"beta", K::Real, "0.00092", false, {}, "single-edge coefficient"},
                  {"gamma", K::Real, "-0.004", false, {}, "edge-edge coefficient"}},
                 0});
    s.push_back({"half-plane",
                 "energy per length of a half-plane perpendicular to a plane",
                 "casimir half-plane --H 1",
                 {{"H", K::Length, "", false, {}, "edge-to-plane separation"},
                  {"q_min_factor", K::Length, "0.0001", false, {}, "lower cutoff q_min = factor / H"}},
                 0});
    return s;
}

bool parse_double(const std::string& text, double& out)
{
    std::string t = text;
    if (t == "inf" || t == "+inf" || t == "Inf" || t == "infinity") {
        out = std::numeric_limits<double>::infinity();
        return true;
    }
    const char* b = t.data();
    const char* e = t.data() + t.size();
    if (b != e && *b == '+')
        ++b;
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && p == e;
}

bool parse_int(const std::string& text, int& out)
{
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && p == text.data() + text.size();
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

double number_or_throw(const std::string& path, const std::string& text)
{
    double v = 0.0;
    if (!parse_double(trim(text), v) || std::isnan(v))
        throw ConfigError(path + ": expected a number, got '" + text + "'");
    return v;
}

const ParamSpec* find_param(const SubcommandSpec& spec, const std::string& key)
{
    for (const auto& p : spec.params)
        if (p.key == key)
            return &p;
    return nullptr;
}

// material_N.field -> (N, field)
bool material_key(const std::string& key, int& index, std::string& field)
{
    if (key.rfind("material_", 0) != 0)
        return false;
    const auto dot = key.find('.');
    if (dot == std::string::npos || dot <= 9)
        return false;
    if (!parse_int(key.substr(9, dot - 9), index))
        return false;
    field = key.substr(dot + 1);
    return true;
}

void set_global(RunConfig& c, const std::string& key, const std::string& raw)
{
    const std::string v = trim(raw);
    if (key == "subcommand") {
        subcommand_spec(v);
        c.subcommand = v;
    } else if (key == "tol") {
        c.tol = number_or_throw(key, v);
    } else if (key == "format") {
        c.format = v;
    } else if (key == "units") {
        c.units = v;
    } else if (key == "l_max") {
        if (!parse_int(v, c.l_max))
            throw ConfigError("l_max: expected an integer, got '" + v + "'");
    } else if (key == "nu_max") {
        if (!parse_int(v, c.nu_max))
            throw ConfigError("nu_max: expected an integer, got '" + v + "'");
    }
}

}  // namespace

const std::vector<SubcommandSpec>& subcommands()
{
    static const std::vector<SubcommandSpec> specs = build_specs();
    return specs;
}

const SubcommandSpec& subcommand_spec(const std::string& name)
{
    for (const auto& s : subcommands())
        if (s.name == name)
            return s;
    throw ConfigError("subcommand: unknown value '" + name + "'");
}

std::string format_real(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, p);
}

void set_value(RunConfig& c, const std::string& key_path, const std::string& value)
{
    std::string key = trim(key_path);
    if (kGlobalKeys.count(key)) {
        set_global(c, key, value);
        return;
    }
    // strip a subcommand prefix
    for (const auto& s : subcommands()) {
        const std::string prefix = s.name + ".";
        if (key.rfind(prefix, 0) == 0) {
            if (!c.subcommand.empty() && c.subcommand != s.name)
                throw ConfigError(key + ": belongs to subcommand '" + s.name + "' but the run is '" + c.subcommand +
                                  "'");
            if (c.subcommand.empty())
                c.subcommand = s.name;
            key = key.substr(prefix.size());
            break;
        }
    }
    if (c.subcommand.empty())
        throw ConfigError(key + ": unknown key (no subcommand selected)");
    const auto& spec = subcommand_spec(c.subcommand);
    int index = 0;
    std::string field;
    const std::string path = c.subcommand + "." + key;
    if (material_key(key, index, field)) {
        if (index < 1 || index > spec.materials)
            throw ConfigError(path + ": unknown key");
        static const std::set<std::string> fields = {"type", "omega_p", "gamma", "eps", "omega_p_ev", "gamma_ev"};
        if (!fields.count(field))
            throw ConfigError(path + ": unknown material field");
    } else if (!find_param(spec, key)) {
        throw ConfigError(path + ": unknown key");
    }
    c.params[key] = trim(value);
}

void set_material(RunConfig& c, int index, const std::string& text)
{
    const std::string prefix = "material_" + std::to_string(index) + ".";
    const std::string path = c.subcommand + "." + prefix.substr(0, prefix.size() - 1);
    for (auto it = c.params.begin(); it != c.params.end();)
        it = it->first.rfind(prefix, 0) == 0 ? c.params.erase(it) : std::next(it);
    const auto parts = split(text, ':');
    if (parts.empty())
        throw ConfigError(path + ": empty material");
    const std::string& type = parts[0];
    const bool si = c.units == "si";
    const std::string wp = si ? "omega_p_ev" : "omega_p", gm = si ? "gamma_ev" : "gamma";
    auto need = [&](std::size_t n) {
        if (parts.size() != n)
            throw ConfigError(path + ": '" + text + "' should have " + std::to_string(n - 1) + " parameter(s)");
    };
    set_value(c, prefix + "type", type);
    if (type == "pec" || type == "vacuum") {
        need(1);
    } else if (type == "plasma") {
        need(2);
        set_value(c, prefix + wp, parts[1]);
    } else if (type == "drude") {
        need(3);
        set_value(c, prefix + wp, parts[1]);
        set_value(c, prefix + gm, parts[2]);
    } else if (type == "const") {
        need(2);
        set_value(c, prefix + "eps", parts[1]);
    } else {
        throw ConfigError(path + ": unknown material type '" + type + "'");
    }
}

RunConfig parse_config_text(const std::string& text)
{
    RunConfig c;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    std::set<std::string> seen;
    // subcommand may appear after the section keys; collect first
    std::vector<std::pair<std::string, std::string>> entries;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';')
            continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
            section = trim(t.substr(1, t.size() - 2));
            subcommand_spec(section);
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        if (!section.empty())
            key = section + "." + key;
        if (!seen.insert(key).second)
            throw ConfigError(key + ": duplicate key");
        entries.emplace_back(key, trim(t.substr(eq + 1)));
    }
    for (const auto& [k, v] : entries)
        if (k == "subcommand")
            set_value(c, k, v);
    for (const auto& [k, v] : entries)
        if (kGlobalKeys.count(k) && k != "subcommand")
            set_value(c, k, v);
    for (const auto& [k, v] : entries)
        if (!kGlobalKeys.count(k))
            set_value(c, k, v);
    return c;
}

RunConfig parse_config_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

void validate(RunConfig& c)
{
    if (c.subcommand.empty())
        throw ConfigError("subcommand: missing");
    const auto& spec = subcommand_spec(c.subcommand);
    if (!(c.tol > 0.0) || c.tol > 1e-2)
        throw ConfigError("tol: must lie in (0, 1e-2], got " + format_real(c.tol));
    if (c.format != "json" && c.format != "csv")
        throw ConfigError("format: expected json or csv, got '" + c.format + "'");
    if (c.units != "natural" && c.units != "si")
        throw ConfigError("units: expected natural or si, got '" + c.units + "'");
    if (c.l_max < 0)
        throw ConfigError("l_max: must be >= 0 (0 selects the default)");
    if (c.nu_max < 4)
        throw ConfigError("nu_max: must be >= 4");

    for (const auto& p : spec.params) {
        const std::string path = c.subcommand + "." + p.key;
        auto it = c.params.find(p.key);
        if (it == c.params.end()) {
            if (!p.default_value.empty())
                c.params[p.key] = p.default_value;
            else if (!p.optional)
                throw ConfigError(path + ": required");
            it = c.params.find(p.key);
            if (it == c.params.end())
                continue;
        }
        std::string& v = it->second;
        switch (p.kind) {
        case ParamKind::Length:
        case ParamKind::LengthOrInf:
        case ParamKind::NonNegative:
        case ParamKind::Real: {
            const double x = number_or_throw(path, v);
            if (p.kind == ParamKind::Length && !(x > 0.0 && std::isfinite(x)))
                throw ConfigError(path + ": must be positive and finite, got " + v);
            if (p.kind == ParamKind::LengthOrInf && !(x > 0.0))
                throw ConfigError(path + ": must be positive (inf allowed), got " + v);
            if (p.kind == ParamKind::NonNegative && !(x >= 0.0 && std::isfinite(x)))
                throw ConfigError(path + ": must be non-negative and finite, got " + v);
            if (p.kind == ParamKind::Real && !std::isfinite(x))
                throw ConfigError(path + ": must be finite, got " + v);
            v = format_real(x);
            break;
        }
        case ParamKind::LengthList: {
            std::string out;
            for (const auto& item : split(v, ',')) {
                const double x = number_or_throw(path, item);
                if (!(x > 0.0 && std::isfinite(x)))
                    throw ConfigError(path + ": entries must be positive and finite, got " + item);
                out += (out.empty() ? "" : ",") + format_real(x);
            }
            if (out.empty())
                throw ConfigError(path + ": empty list");
            v = out;
            break;
        }
        case ParamKind::Choice: {
            auto match = std::find_if(p.choices.begin(), p.choices.end(), [&](const std::string& ch) {
                if (ch.size() != v.size())
                    return false;
                for (std::size_t i = 0; i < ch.size(); ++i)
                    if (std::tolower(static_cast<unsigned char>(ch[i])) != std::tolower(static_cast<unsigned char>(v[i])))
                        return false;
                return true;
            });
            if (match == p.choices.end()) {
                std::string list;
                for (const auto& ch : p.choices)
                    list += (list.empty() ? "" : ", ") + ch;
                throw ConfigError(path + ": expected one of " + list + ", got '" + v + "'");
            }
            v = *match;
            break;
        }
        case ParamKind::Path:
            if (v.empty())
                throw ConfigError(path + ": empty path");
            break;
        }
    }

    // material groups
    for (int m = 1; m <= spec.materials; ++m) {
        const std::string prefix = "material_" + std::to_string(m) + ".";
        const std::string path = c.subcommand + "." + prefix;
        if (!c.params.count(prefix + "type"))
            c.params[prefix + "type"] = "pec";
        const std::string type = c.params[prefix + "type"];
        if (std::find(kMaterialTypes.begin(), kMaterialTypes.end(), type) == kMaterialTypes.end())
            throw ConfigError(path + "type: unknown material type '" + type + "'");
        const bool si = c.units == "si";
        std::vector<std::string> fields;
        if (type == "plasma")
            fields = {si ? "omega_p_ev" : "omega_p"};
        else if (type == "drude")
            fields = {si ? "omega_p_ev" : "omega_p", si ? "gamma_ev" : "gamma"};
        else if (type == "const")
            fields = {"eps"};
        for (const auto& [k, v] : c.params) {
            if (k.rfind(prefix, 0) != 0 || k == prefix + "type")
                continue;
            const std::string f = k.substr(prefix.size());
            if (std::find(fields.begin(), fields.end(), f) == fields.end())
                throw ConfigError(path + f + ": not a parameter of material type '" + type + "' in " + c.units +
                                  " units");
        }
        for (const auto& f : fields) {
            auto it = c.params.find(prefix + f);
            if (it == c.params.end())
                throw ConfigError(path + f + ": required for material type '" + type + "'");
            const double x = number_or_throw(path + f, it->second);
            const bool ok = f == "eps" ? (x >= 1.0 && std::isfinite(x))
                                       : (f.rfind("gamma", 0) == 0 ? (x >= 0.0 && std::isfinite(x))
                                                                   : (x > 0.0 && std::isfinite(x)));
            if (!ok)
                throw ConfigError(path + f + ": out of range, got " + it->second);
            it->second = format_real(x);
        }
        get_material(c, m);
    }

    if (c.subcommand == "pfa" || c.subcommand == "gradient") {
        const bool profiles = c.params.count("profile_lower") || c.params.count("profile_upper");
        const bool sphere = c.params.count("r1") || c.params.count("d");
        if (profiles && sphere)
            throw ConfigError(c.subcommand + ": give either r1/d (spheres) or profile_lower/profile_upper, not both");
        if (profiles && !(c.params.count("profile_lower") && c.params.count("profile_upper")))
            throw ConfigError(c.subcommand + ".profile_" + (c.params.count("profile_lower") ? "upper" : "lower") +
                              ": required with the other profile");
        if (!profiles && !(c.params.count("r1") && c.params.count("d")))
            throw ConfigError(c.subcommand + "." + (c.params.count("r1") ? "d" : "r1") + ": required in sphere mode");
        if (profiles)
            c.params.erase("r2");
    }
    if (c.subcommand == "thermal-sweep") {
        for (const char* key : {"a", "T"}) {
            const auto v = get_list(c, key);
            for (std::size_t i = 1; i < v.size(); ++i)
                if (!(v[i] > v[i - 1]))
                    throw ConfigError(c.subcommand + "." + key + ": must be strictly increasing");
        }
    }
}

std::string serialize(const RunConfig& c)
{
    std::ostringstream out;
    out << "subcommand = " << c.subcommand << "\n";
    out << "format = " << c.format << "\n";
    out << "l_max = " << c.l_max << "\n";
    out << "nu_max = " << c.nu_max << "\n";
    out << "tol = " << format_real(c.tol) << "\n";
    out << "units = " << c.units << "\n";
    out << "\n[" << c.subcommand << "]\n";
    for (const auto& [k, v] : c.params)
        out << k << " = " << v << "\n";
    return out.str();
}

double get_real(const RunConfig& c, const std::string& key)
{
    auto it = c.params.find(key);
    if (it == c.params.end())
        throw ConfigError(c.subcommand + "." + key + ": missing");
    return number_or_throw(c.subcommand + "." + key, it->second);
}

std::vector<double> get_list(const RunConfig& c, const std::string& key)
{
    auto it = c.params.find(key);
    if (it == c.params.end())
        throw ConfigError(c.subcommand + "." + key + ": missing");
    std::vector<double> out;
    for (const auto& item : split(it->second, ','))
        out.push_back(number_or_throw(c.subcommand + "." + key, item));
    return out;
}

std::string get_text(const RunConfig& c, const std::string& key)
{
    auto it = c.params.find(key);
    if (it == c.params.end())
        throw ConfigError(c.subcommand + "." + key + ": missing");
    return it->second;
}

bool has(const RunConfig& c, const std::string& key)
{
    return c.params.count(key) > 0;
}

materials::DielectricModel get_material(const RunConfig& c, int index)
{
    const std::string prefix = "material_" + std::to_string(index) + ".";
    auto it = c.params.find(prefix + "type");
    const std::string type = it == c.params.end() ? "pec" : it->second;
    const bool si = c.units == "si";
    // eV -> inverse metres
    const double freq = si ? si::eV / si::hbar_c : 1.0;
    auto val = [&](const std::string& f) { return get_real(c, prefix + f); };
    try {
        if (type == "pec")
            return materials::DielectricModel::perfect_conductor();
        if (type == "vacuum")
            return materials::DielectricModel::vacuum();
        if (type == "plasma")
            return materials::DielectricModel::plasma(freq * val(si ? "omega_p_ev" : "omega_p"));
        if (type == "drude")
            return materials::DielectricModel::drude(freq * val(si ? "omega_p_ev" : "omega_p"),
                                                     freq * val(si ? "gamma_ev" : "gamma"));
        if (type == "const")
            return materials::DielectricModel::constant(val("eps"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(c.subcommand + "." + prefix + "type: " + e.what());
    }
    throw ConfigError(c.subcommand + "." + prefix + "type: unknown material type '" + type + "'");
}

}  // namespace casimir::cli

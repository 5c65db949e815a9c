#include "casimir/cli/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "casimir/constants.hpp"
#include "casimir/edges.hpp"
#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/scattering.hpp"
#include "casimir/thermal.hpp"

#ifndef CASIMIR_VERSION
#define CASIMIR_VERSION "0.0.0"
#endif

namespace casimir::cli {

using nlohmann::ordered_json;

namespace {

// Conversion factors from natural units at the boundary. In SI mode lengths
// are metres, temperatures kelvin, energies joules.
struct Units {
    bool si = false;
    double temperature(double t) const { return si ? t * si::k_B / si::hbar_c : t; }
    double energy(double e) const { return si ? e * si::hbar_c : e; }
    double entropy(double s) const { return si ? s * si::k_B : s; }
    std::string energy_unit(int length_power) const
    {
        if (!si)
            return length_power == 0 ? "hbar c / length" : "hbar c / length^" + std::to_string(length_power + 1);
        return length_power == 0 ? "J" : "J/m^" + std::to_string(length_power);
    }
};

ordered_json sanitize(const ordered_json& j)
{
    if (j.is_number_float()) {
        const double v = j.get<double>();
        if (std::isfinite(v))
            return j;
        return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    }
    if (j.is_object()) {
        ordered_json out = ordered_json::object();
        for (auto it = j.begin(); it != j.end(); ++it)
            out[it.key()] = sanitize(it.value());
        return out;
    }
    if (j.is_array()) {
        ordered_json out = ordered_json::array();
        for (const auto& e : j)
            out.push_back(sanitize(e));
        return out;
    }
    return j;
}

std::string csv_cell(const ordered_json& j)
{
    if (j.is_number_float())
        return format_real(j.get<double>());
    if (j.is_number_integer())
        return std::to_string(j.get<long long>());
    if (j.is_boolean())
        return j.get<bool>() ? "true" : "false";
    if (j.is_string())
        return j.get<std::string>();
    return "";
}

// one CSV row from the flat part of the results object
void flat_csv(RunReport& r)
{
    std::vector<std::string> row;
    for (auto it = r.results.begin(); it != r.results.end(); ++it) {
        if (it.value().is_structured())
            continue;
        r.csv_header.push_back(it.key());
        row.push_back(csv_cell(it.value()));
    }
    r.csv_rows.push_back(row);
}

void add_warnings(RunReport& r, const std::vector<std::string>& w)
{
    r.warnings.insert(r.warnings.end(), w.begin(), w.end());
}

ordered_json model_json(const materials::DielectricModel& m)
{
    return m.describe();
}

void run_plates(const RunConfig& c, const Units& u, RunReport& r)
{
    lifshitz::PlateConfig p;
    p.a = get_real(c, "a");
    p.temperature = u.temperature(get_real(c, "T"));
    p.model_1 = get_material(c, 1);
    p.model_2 = get_material(c, 2);
    lifshitz::PlateOptions o;
    o.tol = c.tol;
    const auto e = lifshitz::plate_energy(p, o);
    r.results["quantity"] = p.temperature > 0.0 ? "free energy per area" : "energy per area";
    r.results["unit"] = u.energy_unit(2);
    r.results["total"] = u.energy(e.total);
    r.results["te"] = u.energy(e.te);
    r.results["tm"] = u.energy(e.tm);
    r.results["zero_mode_contribution"] = u.energy(e.zero_mode_contribution);
    r.results["zero_mode_te"] = u.energy(e.zero_mode_te);
    r.results["error_estimate"] = u.energy(e.error_estimate);
    r.convergence["evaluations"] = e.evaluations;
    r.convergence["matsubara_terms"] = e.matsubara_terms;
    r.convergence["converged"] = e.converged;
    if (!e.converged) {
        r.converged = false;
        r.warnings.emplace_back("plate integral or Matsubara sum did not converge to tol");
    }
    flat_csv(r);
}

void run_thermal_sweep(const RunConfig& c, const Units& u, RunReport& r)
{
    thermal::ThermalSweepSpec s;
    s.separations = get_list(c, "a");
    for (double t : get_list(c, "T"))
        s.temperatures.push_back(u.temperature(t));
    s.model_1 = get_material(c, 1);
    s.model_2 = get_material(c, 2);
    s.tol = c.tol;
    const auto points = thermal::thermal_sweep(s);
    const auto temps = get_list(c, "T");
    r.results["unit_F_per_A"] = u.energy_unit(2);
    r.results["unit_S_per_A"] = u.si ? "J/(K m^2)" : "1/length^2";
    ordered_json arr = ordered_json::array();
    r.csv_header = {"a", "T", "F_per_A", "S_per_A", "zero_mode_share", "model_1", "model_2"};
    int failed = 0;
    for (std::size_t k = 0; k < points.size(); ++k) {
        const auto& p = points[k];
        const double t_in = temps[k % temps.size()];
        ordered_json j;
        j["a"] = p.a;
        j["T"] = t_in;
        if (!p.error.empty()) {
            j["error"] = p.error;
            ++failed;
            r.csv_rows.push_back({format_real(p.a), format_real(t_in), "", "", "", s.model_1.describe(),
                                  s.model_2.describe()});
            arr.push_back(j);
            continue;
        }
        j["F_per_A"] = u.energy(p.free_energy);
        j["S_per_A"] = u.entropy(p.entropy);
        j["zero_mode_share"] = p.zero_mode_share;
        j["error_estimate"] = u.energy(p.error_estimate);
        j["converged"] = p.converged;
        if (p.drude_plasma) {
            const auto& d = *p.drude_plasma;
            j["drude_minus_plasma"] = {{"difference", u.energy(d.difference)},
                                       {"expected", u.energy(d.expected)},
                                       {"ideal_deficit", u.energy(d.ideal_deficit)},
                                       {"budget", u.energy(d.budget)},
                                       {"within_budget", d.within_budget}};
        }
        if (!p.converged)
            r.converged = false;
        arr.push_back(j);
        r.csv_rows.push_back({format_real(p.a), format_real(t_in), format_real(u.energy(p.free_energy)),
                              format_real(u.entropy(p.entropy)), format_real(p.zero_mode_share),
                              s.model_1.describe(), s.model_2.describe()});
    }
    r.results["model_1"] = model_json(s.model_1);
    r.results["model_2"] = model_json(s.model_2);
    r.results["points"] = arr;
    r.convergence["points"] = points.size();
    r.convergence["failed_points"] = failed;
    if (failed > 0) {
        r.converged = false;
        r.warnings.push_back(std::to_string(failed) + " sweep point(s) failed; see results.points[].error");
    }
    if (!r.converged && failed == 0)
        r.warnings.emplace_back("some sweep points did not converge to tol");
}

void run_pfa_like(const RunConfig& c, const Units& u, RunReport& r, bool gradient)
{
    const auto kind = pfa::boundary_kind_from_string(get_text(c, "kind"));
    const auto pair = pfa::beta_table(kind);
    if (has(c, "profile_lower")) {
        const auto lower = read_profile_csv(get_text(c, "profile_lower"));
        const auto upper = read_profile_csv(get_text(c, "profile_upper"));
        const auto g = pfa::gradient_expansion_energy(lower, upper, pair);
        r.results["unit"] = u.energy_unit(0);
        r.results["pfa_energy"] = u.energy(g.pfa_energy);
        if (gradient)
            r.results["energy"] = u.energy(g.energy);
        // grid discretization is the only error source
        const double rel = std::isnan(g.coarse_relative_change) ? 0.0 : g.coarse_relative_change;
        r.results["error_estimate"] = u.energy(rel * std::abs(gradient ? g.energy : g.pfa_energy));
        r.results["min_gap"] = g.min_gap;
        r.results["max_slope"] = g.max_slope;
        r.convergence["grid"] = {{"nx", lower.nx}, {"ny", lower.ny}};
        r.convergence["coarse_relative_change"] = g.coarse_relative_change;
        add_warnings(r, g.warnings);
        if (!std::isnan(g.coarse_relative_change) && g.coarse_relative_change > 0.01)
            r.converged = false;
    } else {
        pfa::TwoSphereConfig s;
        s.r1 = get_real(c, "r1");
        s.r2 = get_real(c, "r2");
        s.d = get_real(c, "d");
        s.pair = pair;
        r.results["unit"] = u.energy_unit(0);
        r.results["pfa_energy"] = u.energy(pfa::pfa_two_spheres(s));
        if (gradient)
            r.results["energy"] = u.energy(pfa::gradient_corrected_two_spheres(s));
        r.results["error_estimate"] = 0.0;  // closed forms
        if (pfa::outside_small_gap_regime(s))
            r.warnings.emplace_back("d/R above 0.2: outside the small-gap regime of the expansion");
        if (gradient) {
            const double pfa_e = pfa::pfa_two_spheres(s);
            if (std::abs(pfa::gradient_corrected_two_spheres(s) / pfa_e - 1.0) > 0.5)
                r.warnings.emplace_back("gradient correction exceeds half the PFA term; the expansion is unreliable");
        }
    }
    r.results["alpha"] = pair.alpha;
    r.results["beta_1"] = pair.beta_1;
    r.results["beta_2"] = pair.beta_2;
    r.results["beta_cross"] = pair.beta_cross;
    flat_csv(r);
}

void scattering_results(const scattering::EnergyResult& e, const Units& u, RunReport& r)
{
    r.results["unit"] = u.energy_unit(0);
    r.results["energy"] = u.energy(e.energy);
    r.results["error_estimate"] = u.energy(e.truncation_error + e.quadrature_error);
    r.convergence["l_max"] = e.l_max;
    r.convergence["l_max_runs"] = e.l_max_runs;
    ordered_json by = ordered_json::array();
    for (double v : e.energy_by_l_max)
        by.push_back(u.energy(v));
    r.convergence["energy_by_l_max"] = by;
    r.convergence["extrapolated"] = e.extrapolated;
    r.convergence["truncation_error"] = u.energy(e.truncation_error);
    r.convergence["quadrature_error"] = u.energy(e.quadrature_error);
    r.convergence["max_m_used"] = e.max_m_used;
    r.convergence["evaluations"] = e.evaluations;
    r.convergence["converged"] = e.converged;
    add_warnings(r, e.warnings);
    if (!e.converged)
        r.converged = false;
}

void run_spheres(const RunConfig& c, const Units& u, RunReport& r)
{
    scattering::SpherePairConfig s;
    s.r1 = get_real(c, "r1");
    s.r2 = get_real(c, "r2");
    s.d_cc = get_real(c, "d_cc");
    s.bc_1 = scattering::boundary_from_string(get_text(c, "bc_1"));
    s.bc_2 = scattering::boundary_from_string(get_text(c, "bc_2"));
    scattering::ScatteringOptions o;
    o.l_max = c.l_max;
    o.tol = c.tol;
    scattering_results(scattering::tgtg_energy_scalar(s, o), u, r);
    flat_csv(r);
}

void run_sphere_plate(const RunConfig& c, const Units& u, RunReport& r)
{
    const double radius = get_real(c, "R"), gap = get_real(c, "d");
    const auto bs = scattering::boundary_from_string(get_text(c, "bc_sphere"));
    const auto bp = scattering::boundary_from_string(get_text(c, "bc_plate"));
    scattering::ScatteringOptions o;
    o.l_max = c.l_max;
    o.tol = c.tol;
    const auto e = scattering::tgtg_energy_sphere_plate(radius, gap, bs, bp, o);
    scattering_results(e, u, r);
    const double alpha = bs == bp ? 1.0 : -7.0 / 8.0;
    const double pfa = -alpha * pi * pi * pi * radius / (1440.0 * gap * gap);
    r.results["pfa_energy"] = u.energy(pfa);
    r.results["ratio_to_pfa"] = e.energy / pfa;
    flat_csv(r);
}

void run_casimir_polder(const RunConfig& c, const Units& u, RunReport& r)
{
    scattering::DipolePair p{get_real(c, "alpha1"), get_real(c, "alpha2"), get_real(c, "d")};
    const double closed = scattering::casimir_polder_energy(p);
    const auto q = scattering::casimir_polder_quadrature(p);
    r.results["unit"] = u.energy_unit(0);
    r.results["energy"] = u.energy(closed);
    r.results["energy_quadrature"] = u.energy(q.energy);
    r.results["integral"] = q.integral;
    r.results["error_estimate"] = u.energy(q.error_estimate);
    r.convergence["converged"] = q.converged;
    add_warnings(r, scattering::dipole_warnings(p));
    if (!q.converged)
        r.converged = false;
    flat_csv(r);
}

void run_strip(const RunConfig& c, const Units& u, RunReport& r)
{
    edges::StripConfig s{get_real(c, "d"), get_real(c, "H"), get_real(c, "beta"), get_real(c, "gamma")};
    const auto e = edges::strip_energy_per_length(s);
    r.results["unit"] = u.energy_unit(1);
    r.results["energy_per_length"] = u.energy(e.energy_per_length);
    r.results["plate_term"] = u.energy(e.plate_term);
    r.results["edge_term"] = u.energy(e.edge_term);
    r.results["interaction_term"] = u.energy(e.interaction_term);
    r.results["error_estimate"] = 0.0;  // closed form
    add_warnings(r, e.warnings);
    flat_csv(r);
}

void run_half_plane(const RunConfig& c, const Units& u, RunReport& r)
{
    edges::HalfPlaneConfig h;
    h.separation = get_real(c, "H");
    h.q_min_factor = get_real(c, "q_min_factor");
    h.nu_max = c.nu_max;
    h.tol = std::min(c.tol, 1e-8);
    const auto e = edges::halfplane_perp_energy(h);
    r.results["unit"] = u.energy_unit(1);
    r.results["energy_per_length"] = u.energy(e.energy_per_length);
    r.results["C_perp"] = e.c_perp;
    r.results["error_estimate"] = e.truncation_error + e.quadrature_error + e.cutoff_sensitivity;
    r.convergence["nu_max"] = h.nu_max;
    r.convergence["C_perp_at_nu_max"] = e.c_perp_at_nu_max;
    r.convergence["C_perp_at_nu_max_minus_2"] = e.c_perp_at_nu_max_minus_2;
    r.convergence["truncation_error"] = e.truncation_error;
    r.convergence["cutoff_sensitivity"] = e.cutoff_sensitivity;
    r.convergence["quadrature_error"] = e.quadrature_error;
    r.convergence["evaluations"] = e.evaluations;
    r.convergence["converged"] = e.converged;
    add_warnings(r, e.warnings);
    if (!e.converged)
        r.converged = false;
    flat_csv(r);
}

ordered_json inputs_json(const RunConfig& c)
{
    ordered_json j;
    j["subcommand"] = c.subcommand;
    j["units"] = c.units;
    j["tol"] = c.tol;
    j["l_max"] = c.l_max;
    j["nu_max"] = c.nu_max;
    ordered_json p = ordered_json::object();
    for (const auto& [k, v] : c.params)
        p[k] = v;
    j["parameters"] = p;
    return j;
}

}  // namespace

std::string library_version()
{
    return CASIMIR_VERSION;
}

RunReport run(const RunConfig& c)
{
    const auto start = std::chrono::steady_clock::now();
    RunReport r;
    r.inputs = inputs_json(c);
    r.results = ordered_json::object();
    r.convergence = ordered_json::object();
    Units u;
    u.si = c.units == "si";
    try {
        if (c.subcommand == "plates")
            run_plates(c, u, r);
        else if (c.subcommand == "thermal-sweep")
            run_thermal_sweep(c, u, r);
        else if (c.subcommand == "pfa")
            run_pfa_like(c, u, r, false);
        else if (c.subcommand == "gradient")
            run_pfa_like(c, u, r, true);
        else if (c.subcommand == "spheres")
            run_spheres(c, u, r);
        else if (c.subcommand == "sphere-plate")
            run_sphere_plate(c, u, r);
        else if (c.subcommand == "casimir-polder")
            run_casimir_polder(c, u, r);
        else if (c.subcommand == "strip")
            run_strip(c, u, r);
        else if (c.subcommand == "half-plane")
            run_half_plane(c, u, r);
        else
            throw ConfigError("subcommand: unknown value '" + c.subcommand + "'");
    } catch (const GeometryError& e) {
        throw GeometryError(c.subcommand + ": " + e.what());
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(c.subcommand + ": " + e.what());
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(c.subcommand + ": " + e.what());
    }
    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::string to_json(const RunReport& r)
{
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["library_version"] = library_version();
    j["inputs"] = sanitize(r.inputs);
    j["results"] = sanitize(r.results);
    j["convergence"] = sanitize(r.convergence);
    j["warnings"] = r.warnings;
    j["wall_time_s"] = r.wall_time_s;
    return j.dump(2) + "\n";
}

std::string to_csv(const RunReport& r)
{
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const auto& s = cells[i];
            if (i)
                out << ',';
            if (s.find_first_of(",\"\n") != std::string::npos) {
                out << '"';
                for (char ch : s)
                    out << (ch == '"' ? "\"\"" : std::string(1, ch));
                out << '"';
            } else {
                out << s;
            }
        }
        out << '\n';
    };
    line(r.csv_header);
    for (const auto& row : r.csv_rows)
        line(row);
    return out.str();
}

std::string error_json(const std::string& message)
{
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["library_version"] = library_version();
    j["error"] = message;
    return j.dump(2) + "\n";
}

pfa::SurfaceProfile read_profile_csv(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw std::invalid_argument("cannot open profile '" + path + "'");
    std::string line;
    auto fail = [&](const std::string& why) { throw std::invalid_argument("profile '" + path + "': " + why); };
    auto cells = [](const std::string& s) {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string c;
        while (std::getline(ss, c, ','))
            out.push_back(c);
        return out;
    };
    auto number = [&](std::string s) {
        while (!s.empty() && (s.back() == '\r' || s.back() == ' '))
            s.pop_back();
        while (!s.empty() && s.front() == ' ')
            s.erase(s.begin());
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            fail("not a number: '" + s + "'");
        }
        if (used != s.size() || !std::isfinite(v))
            fail("not a finite number: '" + s + "'");
        return v;
    };
    if (!std::getline(f, line))
        fail("empty file");
    {
        auto h = cells(line);
        if (h.size() != 2 || h[0].find("dx") == std::string::npos || h[1].find("dy") == std::string::npos)
            fail("first line must be 'dx,dy'");
    }
    if (!std::getline(f, line))
        fail("missing dx,dy values");
    const auto spacing = cells(line);
    if (spacing.size() != 2)
        fail("second line must hold dx and dy");
    pfa::SurfaceProfile p;
    p.dx = number(spacing[0]);
    p.dy = number(spacing[1]);
    if (!(p.dx > 0.0) || !(p.dy > 0.0))
        fail("dx and dy must be positive");
    while (std::getline(f, line)) {
        if (line.find_first_not_of(" \r\t") == std::string::npos)
            continue;
        const auto row = cells(line);
        if (p.nx == 0)
            p.nx = static_cast<int>(row.size());
        else if (static_cast<int>(row.size()) != p.nx)
            fail("row " + std::to_string(p.ny + 1) + " has " + std::to_string(row.size()) + " values, expected " +
                 std::to_string(p.nx));
        for (const auto& cell : row)
            p.heights.push_back(number(cell));
        ++p.ny;
    }
    if (p.nx < 2 || p.ny < 2)
        fail("need at least a 2 x 2 grid");
    return p;
}

}  // namespace casimir::cli

#include "casimir/cli/app.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>

#include <unistd.h>

#include "casimir/cli/config.hpp"
#include "casimir/cli/run.hpp"

namespace casimir::cli {

namespace {

std::string flag_name(const std::string& key)
{
    std::string f = key;
    for (char& ch : f)
        if (ch == '_')
            ch = '-';
    return "--" + f;
}

std::string describe_param(const ParamSpec& p)
{
    std::string d = p.help;
    if (!p.choices.empty()) {
        d += " {";
        for (std::size_t i = 0; i < p.choices.size(); ++i)
            d += (i ? "," : "") + p.choices[i];
        d += "}";
    }
    if (!p.default_value.empty())
        d += " [default: " + p.default_value + "]";
    else if (!p.optional)
        d += " [required]";
    return d;
}

void write_atomically(const std::string& path, const std::string& text)
{
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw std::runtime_error("--out: cannot write '" + tmp.string() + "'");
        f << text;
        f.flush();
        if (!f)
            throw std::runtime_error("--out: write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("--out: cannot rename onto '" + path + "': " + ec.message());
    }
}

}  // namespace

int run_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Casimir energies for plates, spheres, profiles and edges"};
    app.set_version_flag("--version", library_version());
    app.require_subcommand(0, 1);

    std::optional<std::string> config_path, out_path, format, units, tol, l_max, nu_max;
    bool dump_config = false;
    app.add_option("--config", config_path, "INI config file; command-line flags override its values");
    app.add_option("--tol", tol, "relative tolerance in (0, 1e-2] [default: 1e-8]");
    app.add_option("--format", format, "output format {json,csv} [default: json]");
    app.add_option("--units", units,
                   "unit system {natural,si} [default: natural]; si: lengths in m, T in K, material frequencies "
                   "in eV, energies in J");
    app.add_option("--out", out_path, "write the report to this file (atomically) instead of stdout");
    app.add_option("--l-max", l_max, "multipole cutoff for scattering runs, 0 = automatic [default: 0]");
    app.add_option("--nu-max", nu_max, "Bessel order cutoff for half-plane runs [default: 10]");
    app.add_flag("--dump-config", dump_config, "print the canonical validated config and exit");

    std::string footer = "Examples:\n";
    // values per subcommand, keyed by parameter name
    std::map<std::string, std::map<std::string, std::optional<std::string>>> values;
    std::map<std::string, std::map<int, std::optional<std::string>>> material_flags;
    std::map<std::string, CLI::App*> apps;
    for (const auto& spec : subcommands()) {
        footer += "  " + spec.example + "\n";
        CLI::App* sub = app.add_subcommand(spec.name, spec.summary);
        sub->fallthrough();
        sub->footer("Example:\n  " + spec.example);
        apps[spec.name] = sub;
        for (const auto& p : spec.params)
            sub->add_option(flag_name(p.key), values[spec.name][p.key], describe_param(p));
        for (int m = 1; m <= spec.materials; ++m)
            sub->add_option("--material-" + std::to_string(m), material_flags[spec.name][m],
                            "pec | vacuum | plasma:omega_p | drude:omega_p:gamma | const:eps [default: pec]");
    }
    footer += "Exit status: 0 success, 1 error, 2 convergence warning.";
    app.footer(footer);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        // --help / --version
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 1;
    }

    const bool json = !format || *format != "csv";
    RunConfig config;
    try {
        if (config_path)
            config = parse_config_file(*config_path);
        std::string chosen;
        for (const auto& [name, sub] : apps)
            if (sub->parsed())
                chosen = name;
        if (!chosen.empty()) {
            if (!config.subcommand.empty() && config.subcommand != chosen)
                throw ConfigError("subcommand: config file selects '" + config.subcommand + "' but the command line '" +
                                  chosen + "'");
            config.subcommand = chosen;
        }
        if (config.subcommand.empty())
            throw ConfigError("subcommand: none given (see --help)");
        if (tol)
            set_value(config, "tol", *tol);
        if (format)
            set_value(config, "format", *format);
        if (units)
            set_value(config, "units", *units);
        if (l_max)
            set_value(config, "l_max", *l_max);
        if (nu_max)
            set_value(config, "nu_max", *nu_max);
        for (const auto& [key, v] : values[config.subcommand])
            if (v)
                set_value(config, key, *v);
        for (const auto& [m, v] : material_flags[config.subcommand])
            if (v)
                set_material(config, m, *v);
        validate(config);
        if (dump_config) {
            out << serialize(config);
            return 0;
        }

        const RunReport report = run(config);
        const std::string text = config.format == "csv" ? to_csv(report) : to_json(report);
        if (out_path)
            write_atomically(*out_path, text);
        else
            out << text;
        for (const auto& w : report.warnings)
            err << "warning: " << w << "\n";
        return exit_code(report);
    } catch (const std::exception& e) {
        const std::string message = e.what();
        err << "error: " << message << "\n";
        if (json && config.format != "csv")
            out << error_json(message);
        return 1;
    }
}

}  // namespace casimir::cli

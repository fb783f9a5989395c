#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <ostream>

#include "eitdicke/commands.hpp"
#include "eitdicke/errors.hpp"

namespace eitdicke::cli {

namespace {

struct Options {
  std::string config_path;
  std::vector<std::string> sets;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::vector<double> theta_list;
  std::optional<double> theta_min;
  std::optional<double> theta_max;
  std::optional<std::size_t> theta_steps;
  std::optional<double> grid_span_hz;
  std::optional<std::size_t> grid_points;
  std::string mode = "divergent";
  bool with_mc = false;
  std::string input;
  std::string value_column = "value";
  std::optional<double> fit_theta;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config_path, "key=value configuration file");
  sub->add_option("--set", o.sets, "override one key (key=value), repeatable")->take_all();
  sub->add_option("--out", o.out_dir, "write <name>.csv into this directory instead of stdout");
  sub->add_option("--seed", o.seed, "Monte-Carlo / noise seed");
}

void add_thetas(CLI::App* sub, Options& o, bool range) {
  sub->add_option("--theta-list", o.theta_list, "comma-separated angles in mrad")->delimiter(',');
  if (range) {
    sub->add_option("--theta-min", o.theta_min, "first angle of the sweep (mrad)");
    sub->add_option("--theta-max", o.theta_max, "last angle of the sweep (mrad)");
    sub->add_option("--theta-steps", o.theta_steps, "number of sweep angles");
  }
}

void add_grid(CLI::App* sub, Options& o) {
  sub->add_option("--grid-span-hz", o.grid_span_hz, "half-span of the detuning grid in Hz (0 = automatic)");
  sub->add_option("--grid-points", o.grid_points, "detuning grid size");
}

template <typename T>
std::string text(const T& v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

RunConfig effective_config(const Options& o) {
  std::vector<std::string> overrides = o.sets;
  if (o.seed) overrides.push_back("run.seed=" + std::to_string(*o.seed));
  if (o.theta_min) overrides.push_back("sweep.theta_min_mrad=" + text(*o.theta_min));
  if (o.theta_max) overrides.push_back("sweep.theta_max_mrad=" + text(*o.theta_max));
  if (o.theta_steps) overrides.push_back("sweep.theta_steps=" + std::to_string(*o.theta_steps));
  if (o.grid_span_hz) overrides.push_back("sweep.grid_span_hz=" + text(*o.grid_span_hz));
  if (o.grid_points) overrides.push_back("sweep.grid_points=" + std::to_string(*o.grid_points));
  return load_config(o.config_path, overrides);
}

void emit(const std::string& name, const std::string& body, const Options& o, const RunConfig& cfg,
          std::ostream& out) {
  const std::string dir = o.out_dir.empty() ? cfg.output_dir : o.out_dir;
  if (dir.empty()) {
    out << body;
    return;
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
  write_text_file(std::filesystem::path(dir) / name, body);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dicke-narrowed EIT lineshape simulator"};
  app.name("eitdicke");
  app.require_subcommand(1);
  Options o;

  auto* kinetics = app.add_subcommand("kinetics", "buffer-gas collision kinetics");
  add_common(kinetics, o);
  auto* lineshape = app.add_subcommand("lineshape", "S2 spectra for a list of angles");
  add_common(lineshape, o);
  add_thetas(lineshape, o, false);
  add_grid(lineshape, o);
  auto* width = app.add_subcommand("width-sweep", "FWHM against angle");
  add_common(width, o);
  add_thetas(width, o, true);
  add_grid(width, o);
  width->add_flag("--with-mc", o.with_mc, "add Monte-Carlo widths");
  auto* amplitude = app.add_subcommand("amplitude-sweep", "peak amplitude ratio against angle");
  add_common(amplitude, o);
  add_thetas(amplitude, o, true);
  auto* validate = app.add_subcommand("mc-validate", "Monte-Carlo check of the narrowed width");
  add_common(validate, o);
  add_thetas(validate, o, false);
  auto* imaging = app.add_subcommand("imaging", "divergent or collimated beam imaging");
  add_common(imaging, o);
  imaging->add_option("--mode", o.mode, "divergent | collimated")->check(CLI::IsMember({"divergent", "collimated"}));
  auto* fit = app.add_subcommand("fit", "Lorentzian fit of a detuning_hz,value CSV");
  add_common(fit, o);
  fit->add_option("input", o.input, "input CSV")->required();
  fit->add_option("--value-column", o.value_column, "column holding the spectrum values");
  fit->add_option("--theta", o.fit_theta, "fit only the block with this theta_mrad");
  auto* dump = app.add_subcommand("dump-config", "print the effective configuration");
  add_common(dump, o);

  std::vector<const char*> argv{"eitdicke"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    const auto cfg = effective_config(o);
    if (dump->parsed()) {
      emit("config.cfg", dump_config(cfg), o, cfg, out);
      return 0;
    }
    const auto thetas_or = [&](const std::vector<double>& fallback) {
      return o.theta_list.empty() ? fallback : o.theta_list;
    };
    CommandResult result;
    std::string name;
    if (kinetics->parsed()) {
      result = cmd_kinetics(cfg);
      name = "kinetics";
    } else if (lineshape->parsed()) {
      result = cmd_lineshape(cfg, thetas_or(cfg.sweep.theta_list_mrad));
      name = "lineshape";
    } else if (width->parsed()) {
      result = cmd_width_sweep(cfg, thetas_or(theta_range(cfg.sweep)), o.with_mc);
      name = "width_sweep";
    } else if (amplitude->parsed()) {
      result = cmd_amplitude_sweep(cfg, thetas_or(theta_range(cfg.sweep)));
      name = "amplitude_sweep";
    } else if (validate->parsed()) {
      result = cmd_mc_validate(cfg, thetas_or(cfg.mc.validate_theta_mrad));
      name = "mc_validate";
    } else if (imaging->parsed()) {
      const auto mode = parse_imaging_mode(o.mode);
      result = cmd_imaging(cfg, mode);
      name = "imaging_" + to_string(mode);
    } else {
      result = cmd_fit(CsvData::read(o.input), o.value_column, o.fit_theta);
      name = "fit";
    }
    for (const auto& w : result.warnings) err << "warning: " << w << "\n";
    emit(name + ".csv", result.table.to_string(), o, cfg, out);
    return result.exit_code;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace eitdicke::cli

#include "yamabe/cli/run.hpp"

#include <string>
#include <vector>

#include <CLI11.hpp>

#include "yamabe/cli/emit.hpp"

namespace yamabe {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curvature, soliton identity and radial profile jobs"};
  app.name(argc > 0 ? argv[0] : "yamabe");
  std::string mode_name;
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_scale;
  std::optional<int> jet_order;
  bool slow = false;
  bool quiet = false;
  std::vector<std::string> formats;

  app.add_option("mode", mode_name, "curvature, verify, profile, classify or report")
      ->required()
      ->check(CLI::IsMember({"curvature", "verify", "profile", "classify", "report"}));
  app.add_option("--config", config_path, "JSON job config")->required();
  app.add_option("--out", out_dir, "output directory (overrides output.dir)");
  app.add_option("--seed", seed, "sampling and battery seed");
  app.add_option("--tol-scale", tol_scale, "multiplies every tolerance")->check(CLI::PositiveNumber);
  app.add_option("--jet-order", jet_order, "metric jet order")->check(CLI::Range(1, 8));
  app.add_flag("--slow", slow, "add the order-6 double-divergence identity");
  app.add_option("--format", formats, "json, csv, markdown, svg (overrides output.formats)")
      ->check(CLI::IsMember({"json", "csv", "markdown", "md", "svg"}));
  app.add_flag("--quiet", quiet, "suppress the summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    const JobConfig config = load_config(config_path);
    const Mode mode = *mode_from(mode_name);
    Overrides o;
    o.seed = seed;
    o.tolerance_scale = tol_scale;
    o.jet_order = jet_order;
    o.slow = slow;
    const JobResult result = run_job(config, mode, o);
    if (result.empty()) {
      err << config_path << ": empty result set, nothing written\n";
      return result.numerical_failure ? 3 : 1;
    }
    std::vector<Format> fs;
    for (const auto& f : formats.empty() ? config.output.formats : formats) fs.push_back(format_from(f));
    std::string dir = out_dir.value_or(config.output.dir);
    if (!out_dir && std::filesystem::path(dir).is_relative()) {
      // relative output paths in a config are taken from the config's directory
      dir = (std::filesystem::path(config_path).parent_path() / dir).lexically_normal().string();
    }
    const auto written = write_outputs(result, dir, config.output.stem, fs);
    if (!quiet) {
      out << summary_text(result);
      for (const auto& w : written) out << "  wrote " << w << "\n";
    }
    return result.exit_code();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 1;
  } catch (const OutputError& e) {
    err << config_path << ": output error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << config_path << ": error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace yamabe

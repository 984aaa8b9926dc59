// twistlab: batch verifier for Jordanian and extended twists of sl(4), so(5).
//
//   twistlab run  [--config FILE] [--algebra A] [--chain C] [--suite S ...]
//                 [--param h] [--samples "(u,v);..."] [--sites N] [--report PATH]
//   twistlab dump twist-matrix|coproduct GEN|rmatrix|density [options] [--output PATH]
//   twistlab list

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twistlab/run.hpp"

#ifndef TWISTLAB_DATA_DIR
#define TWISTLAB_DATA_DIR "data"
#endif

namespace {

struct CommonOptions {
  std::string config_file;
  std::string algebra;
  std::string chain;
  std::vector<std::string> suites;
  std::string param;
  std::string samples;
  std::optional<std::size_t> sites;
  std::optional<std::size_t> max_workspace;
  std::string report;
  std::string data_dir;
  std::optional<std::size_t> jobs;
  std::string negative_roots;
  bool no_timing = false;
  bool no_negative_controls = false;
};

void add_common(CLI::App* app, CommonOptions& o, bool with_suites) {
  app->add_option("--config", o.config_file, "key = value configuration file (command line overrides it)");
  app->add_option("--algebra", o.algebra, "sl4 or so5");
  app->add_option("--chain", o.chain, "preset (EJ, BJEJ, E'EJ, BJE'EJ, or so5:EJ ...), custom or none");
  if (with_suites) app->add_option("--suite", o.suites, "hopf, coproducts, rmatrix, classical, yangian");
  app->add_option("--param", o.param, "h: also verify identities in the deformation parameter");
  app->add_option("--samples", o.samples, "spectral grid \"(u,v);(u,v)\"");
  app->add_option("--sites", o.sites, "transfer-matrix site count");
  app->add_option("--max-workspace", o.max_workspace, "bound on M^(sites+1)");
  app->add_option("--data", o.data_dir, "data root holding coproducts/<chain>/*.txt");
  app->add_option("--jobs", o.jobs, "suites run concurrently");
  app->add_option("--negative-roots", o.negative_roots, "conjugate-transpose or cartan-dual");
  app->add_flag("--no-timing", o.no_timing, "omit wall-clock fields from the report");
  app->add_flag("--no-negative-controls", o.no_negative_controls, "skip corrupted-chain controls");
}

twistlab::RunConfig make_config(const CommonOptions& o) {
  using twistlab::apply_setting;
  twistlab::RunConfig c;
  c.data_dir = TWISTLAB_DATA_DIR;
  if (!o.config_file.empty()) c = twistlab::load_config(o.config_file, c);
  const std::string src = "command line";
  if (!o.algebra.empty()) apply_setting(c, "algebra", o.algebra, src, 0);
  if (!o.chain.empty()) apply_setting(c, "chain", o.chain, src, 0);
  if (!o.suites.empty()) {
    c.suites.clear();
    for (const auto& s : o.suites) apply_setting(c, "suite", s, src, 0);
  }
  if (!o.param.empty()) apply_setting(c, "param", o.param, src, 0);
  if (!o.samples.empty()) apply_setting(c, "samples", o.samples, src, 0);
  if (o.sites) c.sites = *o.sites;
  if (o.max_workspace) c.max_workspace = *o.max_workspace;
  if (!o.report.empty()) c.report = o.report;
  if (!o.data_dir.empty()) c.data_dir = o.data_dir;
  if (o.jobs) c.jobs = std::max<std::size_t>(1, *o.jobs);
  if (!o.negative_roots.empty()) apply_setting(c, "negative-roots", o.negative_roots, src, 0);
  if (o.no_timing) c.timing = false;
  if (o.no_negative_controls) c.negative_controls = false;
  return twistlab::validate_config(c);
}

int write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return twistlab::kExitPass;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "twistlab: cannot write " << path << "\n";
    return twistlab::kExitConfig;
  }
  out << text;
  return twistlab::kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twistlab: exact verification of Jordanian and extended twists"};
  app.set_version_flag("--version", twistlab::kVersion);
  app.require_subcommand(1);

  CommonOptions run_opts;
  CLI::App* run = app.add_subcommand("run", "run verification suites and emit a JSON report");
  add_common(run, run_opts, true);
  run->add_option("--report", run_opts.report, "report path (default: stdout)");

  CommonOptions dump_opts;
  std::string what;
  std::string argument;
  std::string output;
  CLI::App* dump = app.add_subcommand("dump", "write one exact matrix");
  add_common(dump, dump_opts, false);
  dump->add_option("what", what, "twist-matrix, coproduct, rmatrix or density")->required();
  dump->add_option("generator", argument, "generator for coproduct dumps (e.g. E_BO)");
  dump->add_option("--output", output, "output path (default: stdout)");

  CLI::App* list = app.add_subcommand("list", "list presets, suites and transcriptions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return twistlab::kExitConfig;
  }

  try {
    if (list->parsed()) {
      std::cout << "presets:";
      for (const auto& p : twistlab::preset_names()) std::cout << " " << p;
      std::cout << "\nsuites:";
      for (const auto& s : twistlab::suite_names()) std::cout << " " << s;
      std::cout << "\ndata: " << TWISTLAB_DATA_DIR << "\n";
      return twistlab::kExitPass;
    }
    if (run->parsed()) {
      const twistlab::RunConfig config = make_config(run_opts);
      const twistlab::Report report = twistlab::run(config);
      const int wrote = write_text(config.report, twistlab::to_json(report).dump(2) + "\n");
      if (wrote != twistlab::kExitPass) return wrote;
      const int code = report.exit_code();
      if (!config.report.empty()) {
        std::cerr << "twistlab: " << report.entries.size() << " checks, " << report.unexpected()
                  << " unexpected; report written to " << config.report << "\n";
      }
      return code;
    }
    const twistlab::RunConfig config = make_config(dump_opts);
    std::ostringstream text;
    std::string title = what + (argument.empty() ? "" : " " + argument) + " chain=" + config.chain_name();
    twistlab::write_dump(text, twistlab::dump_matrix(config, what, argument), title);
    return write_text(output, text.str());
  } catch (const twistlab::ParseError& e) {
    std::cerr << "twistlab: config error: " << e.what() << "\n";
    return twistlab::kExitConfig;
  } catch (const twistlab::LookupError& e) {
    std::cerr << "twistlab: " << e.what() << "\n";
    return twistlab::kExitConfig;
  } catch (const twistlab::Error& e) {
    std::cerr << "twistlab: " << e.what() << "\n";
    return twistlab::kExitError;
  }
}

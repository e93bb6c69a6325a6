// Benchmark driver: single runs, convergence tables, the flux/degree
// stability matrix and the list of builtin cases.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "staggered/driver.hpp"
#include "staggered/errors.hpp"
#include "staggered/format.hpp"

namespace {

enum ExitCode { kOk = 0, kOther = 1, kConfig = 2, kBlowUp = 3, kPositivity = 4, kIo = 5 };

// Collects `--key value` for every config key so that flags override the file.
struct Overrides {
  std::map<std::string, std::string> values;

  void attach(CLI::App* app) {
    for (const auto& key : staggered::config_keys()) {
      app->add_option("--" + key, values[key], "override '" + key + "'");
    }
  }

  std::vector<std::pair<std::string, std::string>> given(CLI::App* app) const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& key : staggered::config_keys()) {
      if (app->count("--" + key) > 0) out.emplace_back(key, values.at(key));
    }
    return out;
  }
};

staggered::RunConfig load(const std::string& path, CLI::App* app, const Overrides& ov) {
  return path.empty() ? staggered::parse_config("", ov.given(app))
                      : staggered::parse_config_file(path, ov.given(app));
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw staggered::IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw staggered::IoError("write failed for '" + path + "'");
}

std::vector<int> parse_meshes(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(item, &used);
      if (used != item.size() || n < 1) throw std::invalid_argument(item);
      out.push_back(n);
    } catch (const std::exception&) {
      throw staggered::ConfigError("key 'meshes': invalid mesh size '" + item + "'");
    }
  }
  if (out.size() < 2) throw staggered::ConfigError("key 'meshes': need at least two meshes");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Staggered residual-distribution solver for the 1D Euler equations"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides run_ov, conv_ov;

  auto* run = app.add_subcommand("run", "run one case to its final time");
  run->add_option("-c,--config", config_path, "key = value configuration file");
  run_ov.attach(run);

  std::string meshes = "50,100,200,400";
  std::string conv_out;
  auto* conv = app.add_subcommand("converge", "L1 errors and observed orders over a mesh sequence");
  conv->add_option("-c,--config", config_path, "key = value configuration file");
  conv->add_option("--meshes", meshes, "comma-separated cell counts")->capture_default_str();
  conv->add_option("-o,--output", conv_out, "CSV output (default stdout)");
  conv_ov.attach(conv);

  staggered::StabilityOptions stab_opt;
  std::string stab_out;
  auto* stab = app.add_subcommand("stability", "flux choice x degree pairing stability matrix");
  stab->add_option("--n_cells", stab_opt.n_cells, "cells")->capture_default_str();
  stab->add_option("--t_report", stab_opt.t_report, "reporting time")->capture_default_str();
  stab->add_option("--cfl", stab_opt.cfl, "CFL number")->capture_default_str();
  stab->add_option("-o,--output", stab_out, "CSV output (default stdout)");

  auto* cases = app.add_subcommand("cases", "list the builtin cases");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const auto cfg = load(config_path, run, run_ov);
      const auto res = staggered::run_case(cfg);
      if (cfg.summary_path.empty()) {
        std::ostringstream os;
        staggered::write_summary(res.summary, os);
        std::cout << os.str();
      }
    } else if (conv->parsed()) {
      auto cfg = load(config_path, conv, conv_ov);
      if (conv->count("--case") == 0 && config_path.empty()) cfg.case_name = "smooth";
      const auto rows = staggered::convergence_study(cfg, parse_meshes(meshes));
      std::ostringstream os;
      staggered::write_convergence(rows, os);
      emit(conv_out, os.str());
    } else if (stab->parsed()) {
      if (stab_opt.n_cells < 1 || !(stab_opt.t_report > 0.0) || !(stab_opt.cfl > 0.0)) {
        throw staggered::ConfigError("stability: n_cells, t_report and cfl must be positive");
      }
      std::ostringstream os;
      staggered::write_stability(staggered::stability_matrix(stab_opt), os);
      emit(stab_out, os.str());
    } else if (cases->parsed()) {
      using staggered::format_double;
      std::cout << "name,rho_l,u_l,p_l,rho_r,u_r,p_r,x0,a,b,t_final,cfl,gamma,boundary,reference\n";
      for (const auto& c : staggered::builtin_cases()) {
        std::cout << c.name << ',' << format_double(c.left.rho) << ',' << format_double(c.left.u) << ','
                  << format_double(c.left.p) << ',' << format_double(c.right.rho) << ','
                  << format_double(c.right.u) << ',' << format_double(c.right.p) << ','
                  << format_double(c.x0) << ',' << format_double(c.a) << ',' << format_double(c.b) << ','
                  << format_double(c.t_final) << ',' << format_double(c.cfl) << ','
                  << format_double(c.gamma) << ',' << staggered::to_string(c.boundary) << ','
                  << staggered::to_string(c.reference) << '\n';
      }
    }
  } catch (const staggered::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const staggered::PositivityAbort& e) {
    std::cerr << "positivity abort at step " << e.step() << ", t = " << e.time() << ": " << e.what() << '\n';
    return kPositivity;
  } catch (const staggered::BlowUpError& e) {
    std::cerr << "blow-up at step " << e.step() << ", t = " << e.time() << ": " << e.what() << '\n';
    return kBlowUp;
  } catch (const staggered::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
  return kOk;
}

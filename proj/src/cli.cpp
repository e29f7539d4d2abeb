#include "virtlab/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "virtlab/api.hpp"
#include "virtlab/error.hpp"
#include "virtlab/export.hpp"
#include "virtlab/scenarios.hpp"
#include "virtlab/service.hpp"

namespace virtlab {

namespace fs = std::filesystem;

namespace {

struct BuildArgs {
  std::string target;
  std::string out;
  std::string formats = "vrml,json";
  int frames = 0;
  std::string grid;
};

struct SweepArgs {
  double l_min = 0.1;
  double l_max = 3.0;
  int steps = 100;
  std::string out;
};

struct ServeArgs {
  int port = 8080;
  std::string host = "0.0.0.0";
  bool cors = false;
};

Error usage(const std::string& msg) { return Error(ErrorCode::parse_error, msg); }

scenarios::ScenarioSpec load_target(const std::string& target) {
  for (const auto& s : scenarios::catalog())
    if (s.id == target) return s;
  const fs::path path(target);
  if (path.extension() != ".json" && !fs::is_regular_file(path)) return scenarios::find_scenario(target);
  std::ifstream in(path);
  if (!in) throw usage("cannot read config '" + target + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return scenarios::parse_config(buf.str());
}

std::vector<std::string> split_formats(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  for (std::string f; std::getline(ss, f, ',');) {
    if (f != "vrml" && f != "svg" && f != "json" && f != "frames") {
      throw usage("unknown format '" + f + "' (expected vrml, svg, json, frames)");
    }
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  }
  if (out.empty()) throw usage("--formats needs at least one format");
  return out;
}

int cmd_build(const BuildArgs& a, std::ostream& out, std::ostream& err) {
  auto spec = load_target(a.target);
  auto formats = split_formats(a.formats);
  if (a.frames > 0) {
    spec.n_frames = a.frames;
    if (std::find(formats.begin(), formats.end(), "frames") == formats.end()) formats.push_back("frames");
  }
  if (!a.grid.empty()) {
    std::smatch m;
    if (!std::regex_match(a.grid, m, std::regex(R"((\d{1,5})x(\d{1,5}))"))) throw usage("--grid must look like NxM");
    if (!spec.params.contains("grid")) {
      throw usage("scenario kind '" + std::string(scenarios::to_string(spec.kind)) + "' has no grid");
    }
    spec.params["grid"] = nlohmann::json::array({std::stoi(m[1]), std::stoi(m[2])});
  }

  std::string dir = a.out;
  if (dir.empty()) {
    const char* env = std::getenv("VIRTLAB_OUT");
    dir = env && *env ? env : "out";
  }
  const fs::path base(dir);
  const auto built = scenarios::build(spec);

  for (const auto& f : formats) {
    if (f == "vrml") {
      const auto p = base / (spec.id + ".wrl");
      write_text_file(p, write_vrml(built.scene));
      out << p.string() << "\n";
    } else if (f == "svg") {
      if (built.cuts.empty()) {
        err << "note: scenario '" << spec.id << "' has no pattern cuts; svg skipped\n";
        continue;
      }
      const auto p = base / (spec.id + "_cuts.svg");
      write_text_file(p, write_svg_polar(built.cuts));
      out << p.string() << "\n";
    } else if (f == "json") {
      const auto p = base / (spec.id + ".json");
      write_text_file(p, built.products.dump(2) + "\n");
      out << p.string() << "\n";
    } else if (f == "frames") {
      const auto d = base / (spec.id + "_frames");
      fs::remove_all(d);
      if (built.scene.tracks.empty()) {
        const std::string still = write_vrml(built.scene);
        char name[32];
        for (int k = 0; k < built.n_frames; ++k) {
          std::snprintf(name, sizeof name, "frame_%03d.wrl", k);
          write_text_file(d / name, still);
        }
      } else {
        write_frame_sequence(built.scene, built.n_frames, d);
      }
      out << d.string() << " (" << built.n_frames << " frames)\n";
    }
  }
  return 0;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  if (!(a.l_min > 0.0) || !(a.l_min < a.l_max)) throw usage("need 0 < --l-min < --l-max");
  if (a.steps < 2 || a.steps > 10000) throw usage("--steps must lie in [2, 10000]");
  patterns::CharacteristicsOptions opts;
  const auto rows = patterns::characteristics_sweep(a.l_min, a.l_max, a.steps, opts);
  const std::string text = api::characteristics_table(a.l_min, a.l_max, a.steps, rows).dump(2) + "\n";
  if (a.out.empty()) {
    out << text;
  } else {
    write_text_file(a.out, text);
    out << a.out << "\n";
  }
  return 0;
}

int cmd_serve(const ServeArgs& a, std::ostream& err) {
  service::Options o;
  o.host = a.host;
  o.port = a.port;
  o.cors = a.cors;
  service::Server server(o);
  const int port = server.bind();
  err << "listening on http://" << a.host << ":" << port << "/api/v1\n";
  err.flush();
  server.listen();
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Virtual antenna laboratory: scenes, patterns and polarization", "virtlab"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List the built-in scenarios");

  std::string show_id;
  auto* show = app.add_subcommand("show", "Print a scenario spec as JSON");
  show->add_option("id", show_id, "Scenario id or config path")->required();

  BuildArgs b;
  auto* build = app.add_subcommand("build", "Build a scenario and write its artifacts");
  build->add_option("target", b.target, "Scenario id or config path")->required();
  build->add_option("--out", b.out, "Output directory (default $VIRTLAB_OUT or ./out)");
  build->add_option("--formats", b.formats, "Comma list of vrml, svg, json, frames");
  build->add_option("--frames", b.frames, "Override the frame count and write frames")->check(CLI::Range(1, 10000));
  build->add_option("--grid", b.grid, "Pattern grid NxM (theta x phi)");

  SweepArgs s;
  auto* sweep = app.add_subcommand("sweep", "Dipole characteristics versus length");
  sweep->add_option("--l-min", s.l_min, "Shortest length in wavelengths");
  sweep->add_option("--l-max", s.l_max, "Longest length in wavelengths");
  sweep->add_option("--steps", s.steps, "Number of lengths");
  sweep->add_option("--out", s.out, "Output file (default stdout)");

  ServeArgs v;
  auto* serve = app.add_subcommand("serve", "Start the HTTP API");
  serve->add_option("--port", v.port, "TCP port")->check(CLI::Range(0, 65535));
  serve->add_option("--host", v.host, "Bind address");
  serve->add_flag("--cors", v.cors, "Send Access-Control-Allow-Origin: *");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (list->parsed()) {
      for (const auto& sp : scenarios::catalog()) out << sp.id << "\t" << sp.title << "\n";
      return 0;
    }
    if (show->parsed()) {
      out << scenarios::spec_to_json(load_target(show_id)).dump(2) << "\n";
      return 0;
    }
    if (build->parsed()) return cmd_build(b, out, err);
    if (sweep->parsed()) return cmd_sweep(s, out);
    if (serve->parsed()) return cmd_serve(v, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.is_usage() ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace virtlab

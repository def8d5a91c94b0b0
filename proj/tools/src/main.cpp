#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "runner.hpp"
#include "twolayer/errors.hpp"

namespace {

using namespace twolayer;
namespace rn = twolayer::runner;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(n);
    } catch (const std::exception&) {
      throw ConfigError("--N: '" + item + "' is not an integer");
    }
  }
  if (out.empty()) throw ConfigError("--N: empty list");
  return out;
}

struct Axis {
  double lo, hi;
  int count;
};

// "a:b:n"
Axis parse_axis(const std::string& text, const char* name) {
  Axis ax{};
  char c1 = 0, c2 = 0;
  std::stringstream ss(text);
  if (!(ss >> ax.lo >> c1 >> ax.hi >> c2 >> ax.count) || c1 != ':' || c2 != ':' || !ss.eof() || ax.count < 1)
    throw ConfigError(std::string("--grid: bad ") + name + " axis '" + text + "' (expected lo:hi:count)");
  return ax;
}

void print_sweep(const std::vector<rn::SweepRow>& rows) {
  std::cout << std::setprecision(15) << "N,x1,x2,re,im,error,diff\n";
  for (const auto& r : rows) {
    std::cout << r.N << ',' << r.x.x1 << ',' << r.x.x2 << ',' << r.value.real() << ',' << r.value.imag() << ',';
    if (r.error) std::cout << *r.error;
    std::cout << ',';
    if (r.diff) std::cout << *r.diff;
    std::cout << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scattering by a rough surface below a two-layered medium"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int n_override = 0;
  unsigned threads = 0;

  auto* solve = app.add_subcommand("solve", "Solve one configuration and print the report");
  solve->add_option("--config", config_path, "JSON configuration file")->required();
  solve->add_option("--N", n_override, "Override N (h = pi / N)");
  solve->add_option("--out", out_dir, "Output directory");
  solve->add_option("--threads", threads, "Worker threads (0: all cores)");

  std::string n_list_text;
  auto* sweep = app.add_subcommand("sweep", "Run a convergence sweep over several N");
  sweep->add_option("--config", config_path, "JSON configuration file")->required();
  sweep->add_option("--N", n_list_text, "Comma-separated ascending list, e.g. 8,16,32,64")->required();
  sweep->add_option("--out", out_dir, "Output directory for sweep.csv");

  std::string grid_text, source_text, greens_out;
  auto* greens = app.add_subcommand("greens", "Tabulate the Green function on a grid");
  greens->add_option("--config", config_path, "JSON configuration file (media, optional point source)")->required();
  greens->add_option("--grid", grid_text, "x1lo:x1hi:n1,x2lo:x2hi:n2")->required();
  greens->add_option("--source", source_text, "Source point y1,y2 (default: the config's point source)");
  greens->add_option("--out", greens_out, "CSV file (default: stdout)");

  auto* presets = app.add_subcommand("presets", "Bundled example configurations");
  presets->require_subcommand(1);
  presets->add_subcommand("list", "List preset names");
  std::string preset_name;
  bool swap_media = false;
  auto* prun = presets->add_subcommand("run", "Run a preset");
  prun->add_option("name", preset_name, "Preset name")->required();
  prun->add_option("--N", n_override, "Override N");
  prun->add_option("--out", out_dir, "Output directory");
  prun->add_flag("--swap-media", swap_media, "Exchange k_plus and k_minus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*solve) {
      rn::RunConfig c = rn::load_config(config_path);
      if (n_override > 0) c.N = n_override;
      else if (solve->count("--N")) throw ConfigError("--N must be at least 1");
      if (!out_dir.empty()) c.output.dir = out_dir;
      if (solve->count("--threads")) c.threads = threads;
      rn::validate(c);
      std::cout << rn::to_json(rn::run(c)).dump(2) << '\n';
    } else if (*sweep) {
      rn::RunConfig c = rn::load_config(config_path);
      if (!out_dir.empty()) c.output.dir = out_dir;
      print_sweep(rn::convergence_sweep(c, parse_n_list(n_list_text)));
    } else if (*greens) {
      const rn::RunConfig c = rn::load_config(config_path);
      Point2 y = c.incident.y0;
      if (!source_text.empty()) {
        std::stringstream ss(source_text);
        char comma = 0;
        if (!(ss >> y.x1 >> comma >> y.x2) || comma != ',' || !ss.eof())
          throw ConfigError("--source: expected y1,y2");
      } else if (c.incident.plane) {
        throw ConfigError("--source is required unless the config has a point source");
      }
      const auto comma = grid_text.find(',');
      if (comma == std::string::npos) throw ConfigError("--grid: expected x1lo:x1hi:n1,x2lo:x2hi:n2");
      const Axis a1 = parse_axis(grid_text.substr(0, comma), "x1");
      const Axis a2 = parse_axis(grid_text.substr(comma + 1), "x2");
      const MediumPair m(c.k_plus, c.k_minus);
      std::ofstream file;
      if (!greens_out.empty()) {
        file.open(greens_out);
        if (!file) throw ConfigError("cannot write " + greens_out);
      }
      std::ostream& os = greens_out.empty() ? std::cout : file;
      os << rn::csv_header_comment(c) << "x1,x2,re,im,tag\n" << std::setprecision(15);
      auto coord = [](const Axis& a, int i) { return a.count == 1 ? a.lo : a.lo + (a.hi - a.lo) * i / (a.count - 1); };
      for (int i = 0; i < a1.count; ++i)
        for (int k = 0; k < a2.count; ++k) {
          const Point2 x{coord(a1, i), coord(a2, k)};
          os << x.x1 << ',' << x.x2 << ',';
          if (x.x1 == y.x1 && x.x2 == y.x2) {
            os << "nan,nan,singular\n";
            continue;
          }
          const Complex g = green(m, x, y);
          os << g.real() << ',' << g.imag() << ',' << (x.x2 >= 0.0 ? "upper" : "lower") << '\n';
        }
    } else if (*presets) {
      if (presets->got_subcommand("list")) {
        for (const auto& n : rn::preset_names()) std::cout << n << '\n';
      } else {
        rn::RunConfig c = rn::preset(preset_name, swap_media);
        if (n_override > 0) c.N = n_override;
        else if (prun->count("--N")) throw ConfigError("--N must be at least 1");
        if (!out_dir.empty()) c.output.dir = out_dir;
        std::cout << rn::to_json(rn::run(c)).dump(2) << '\n';
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const twolayer::Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}

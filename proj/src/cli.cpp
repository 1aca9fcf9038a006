#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "thermoqi/scan.hpp"

namespace thermoqi::scan {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResourceGuard = 3;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sends output to the named file, or to `fallback` when no file is given.
void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  write(file);
  if (!file) throw IoError("failed writing '" + path + "'");
}

GridSpec make_grid(const std::string& u, const std::string& v) {
  GridSpec g{parse_range(u), parse_range(v)};
  g.validate();
  return g;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thermal entanglement, nonlocality and teleportation fidelity of a dipolar spin pair", "thermoqi"};
  app.require_subcommand(1);

  double point_u = 0.0, point_v = 0.0;
  bool normalized = false;
  auto* point = app.add_subcommand("point", "Evaluate a single (u, v) point");
  point->add_option("--u", point_u, "Delta / k_B T")->required();
  point->add_option("--v", point_v, "eps / k_B T")->required();
  point->add_flag("--normalized-negativity", normalized, "Report negativity doubled, so a Bell state reads 1");

  std::string u_range, v_range, out_path;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  auto* scan = app.add_subcommand("scan", "Sweep a (u, v) grid");
  scan->add_option("--u", u_range, "u axis as min:max:count")->required();
  scan->add_option("--v", v_range, "v axis as min:max:count")->required();
  scan->add_option("--out", out_path, "Output CSV (default stdout)");
  scan->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  scan->add_flag("--normalized-negativity", normalized, "Report negativity doubled, so a Bell state reads 1");

  std::string quantity_name;
  double tol = kDefaultRootTol;
  auto* boundary = app.add_subcommand("boundary", "Trace a critical contour");
  boundary->add_option("--quantity", quantity_name, "chsh, negativity or fidelity")
      ->required()
      ->check(CLI::IsMember({"chsh", "negativity", "fidelity"}));
  boundary->add_option("--u", u_range, "u axis as min:max:count")->required();
  boundary->add_option("--v", v_range, "v axis as min:max:count")->required();
  boundary->add_option("--tol", tol, "Root residual tolerance")->check(CLI::PositiveNumber);
  boundary->add_option("--out", out_path, "Output CSV (default stdout)");

  auto* dominant = app.add_subcommand("dominant", "Map the dominant Bell weight over a grid");
  dominant->add_option("--u", u_range, "u axis as min:max:count")->required();
  dominant->add_option("--v", v_range, "v axis as min:max:count")->required();
  dominant->add_option("--out", out_path, "Output CSV (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (point->parsed()) {
      const ScanRecord r = evaluate_point(dipolar::CouplingParams(point_u, point_v));
      write_scan_csv(out, {r}, normalized);
    } else if (scan->parsed()) {
      const GridSpec g = make_grid(u_range, v_range);
      const auto records = scan_grid(g, workers);
      emit(out_path, out, [&](std::ostream& os) { write_scan_csv(os, records, normalized); });
    } else if (boundary->parsed()) {
      const GridSpec g = make_grid(u_range, v_range);
      const auto contours = trace_boundary(*parse_quantity(quantity_name), g, tol);
      emit(out_path, out, [&](std::ostream& os) { write_boundary_csv(os, contours); });
    } else if (dominant->parsed()) {
      const GridSpec g = make_grid(u_range, v_range);
      const auto entries = dominant_map(g);
      emit(out_path, out, [&](std::ostream& os) { write_dominant_csv(os, entries); });
    }
  } catch (const ResourceGuardError& e) {
    err << "error: " << e.what() << '\n';
    return kExitResourceGuard;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace thermoqi::scan

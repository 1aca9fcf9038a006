#include "thermoqi/scan.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "thermoqi/measures.hpp"
#include "thermoqi/teleport.hpp"

namespace thermoqi::scan {
namespace {

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw std::invalid_argument("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  }
  return value;
}

void validate_axis(const AxisRange& a, std::string_view name) {
  const std::string n(name);
  if (!std::isfinite(a.min) || !std::isfinite(a.max)) throw std::invalid_argument(n + " range must be finite");
  if (!(a.min < a.max)) throw std::invalid_argument(n + " range needs min < max");
  if (a.count < 2) throw std::invalid_argument(n + " range needs at least 2 points");
  if (std::abs(a.min) > dipolar::kCouplingLimit || std::abs(a.max) > dipolar::kCouplingLimit) {
    throw std::invalid_argument(n + " range leaves the supported coupling envelope");
  }
}

// Calls fn(j) for every row j in [0, rows), spread over the given number of
// threads. fn must only touch state owned by row j.
template <typename Fn>
void for_each_row(std::size_t rows, unsigned workers, Fn&& fn) {
  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(rows)));
  if (n == 1) {
    for (std::size_t j = 0; j < rows; ++j) fn(j);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(n);
  for (unsigned t = 0; t < n; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t j = t; j < rows; j += n) fn(j);
    });
  }
}

struct FieldGrid {
  std::size_t nu;
  std::size_t nv;
  std::vector<double> values;  // v outer, u inner

  double at(std::size_t i, std::size_t j) const { return values[j * nu + i]; }
  bool positive(std::size_t i, std::size_t j) const { return at(i, j) > 0.0; }
};

FieldGrid sample_field(ContourQuantity q, const GridSpec& g) {
  FieldGrid f{g.u.count, g.v.count, std::vector<double>(g.size())};
  for (std::size_t j = 0; j < f.nv; ++j) {
    for (std::size_t i = 0; i < f.nu; ++i) {
      f.values[j * f.nu + i] = contour_field(q, dipolar::CouplingParams(g.u.at(i), g.v.at(j)));
    }
  }
  return f;
}

// Bisection along one coordinate until the bracket cannot be split further.
EdgeRoot bisect_edge(ContourQuantity q, const GridSpec& g, const FieldGrid& f, const GridEdge& e, double tol) {
  const double fixed = e.horizontal ? g.v.at(e.j) : g.u.at(e.i);
  double lo = e.horizontal ? g.u.at(e.i) : g.v.at(e.j);
  double hi = e.horizontal ? g.u.at(e.i + 1) : g.v.at(e.j + 1);
  double f_lo = f.at(e.i, e.j);
  double f_hi = e.horizontal ? f.at(e.i + 1, e.j) : f.at(e.i, e.j + 1);
  const bool lo_positive = f_lo > 0.0;

  auto eval = [&](double x) {
    return e.horizontal ? contour_field(q, dipolar::CouplingParams(x, fixed))
                        : contour_field(q, dipolar::CouplingParams(fixed, x));
  };

  for (int iter = 0; iter < 200; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = eval(mid);
    if ((f_mid > 0.0) == lo_positive) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  const bool take_lo = std::abs(f_lo) <= std::abs(f_hi);
  const double x = take_lo ? lo : hi;
  const double residual = take_lo ? f_lo : f_hi;
  if (!(std::abs(residual) < tol)) {
    std::ostringstream msg;
    msg << "bisection on " << to_string(q) << " stalled with residual " << residual;
    throw std::runtime_error(msg.str());
  }
  return e.horizontal ? EdgeRoot{e, x, fixed, residual} : EdgeRoot{e, fixed, x, residual};
}

std::vector<EdgeRoot> find_roots(ContourQuantity q, const GridSpec& g, const FieldGrid& f, double tol) {
  std::vector<EdgeRoot> roots;
  for (std::size_t j = 0; j < f.nv; ++j) {
    for (std::size_t i = 0; i < f.nu; ++i) {
      if (i + 1 < f.nu && f.positive(i, j) != f.positive(i + 1, j)) {
        roots.push_back(bisect_edge(q, g, f, {true, i, j}, tol));
      }
      if (j + 1 < f.nv && f.positive(i, j) != f.positive(i, j + 1)) {
        roots.push_back(bisect_edge(q, g, f, {false, i, j}, tol));
      }
    }
  }
  std::sort(roots.begin(), roots.end(), [](const EdgeRoot& a, const EdgeRoot& b) { return a.edge < b.edge; });
  return roots;
}

void require_positive_tol(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("root tolerance must be positive");
}

}  // namespace

double AxisRange::at(std::size_t i) const {
  if (i + 1 == count) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

AxisRange parse_range(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
    throw std::invalid_argument("range must look like min:max:count, got '" + std::string(text) + "'");
  }
  AxisRange r{};
  r.min = parse_number<double>(text.substr(0, first), "range minimum");
  r.max = parse_number<double>(text.substr(first + 1, second - first - 1), "range maximum");
  r.count = parse_number<std::size_t>(text.substr(second + 1), "point count");
  return r;
}

void GridSpec::validate() const {
  validate_axis(u, "u");
  validate_axis(v, "v");
  if (u.count > kMaxGridPoints / v.count) {
    std::ostringstream msg;
    msg << "grid of " << u.count << " x " << v.count << " points exceeds the limit of " << kMaxGridPoints;
    throw ResourceGuardError(msg.str());
  }
}

std::string_view to_string(Region region) {
  switch (region) {
    case Region::Separable:
      return "separable";
    case Region::EntangledLocal:
      return "entangled_local";
    case Region::Nonlocal:
      return "nonlocal";
  }
  return "?";
}

ScanRecord evaluate_point(const dipolar::CouplingParams& p) {
  const dipolar::SpectralData spec = dipolar::spectrum(p);
  const measures::ChshResult chsh = measures::chsh_max(p);
  const double neg = measures::negativity_bell_diagonal(spec.weights);
  const teleport::FidelityReport fid = teleport::best_fidelity(spec.weights);

  if (neg < 0.0 || neg > 0.5 + 1e-12 || chsh.value < 0.0 || chsh.value > 2.0 * std::numbers::sqrt2 + 1e-12) {
    std::ostringstream msg;
    msg << "measure out of range at (" << p.u() << ", " << p.v() << "): N = " << neg << ", B = " << chsh.value;
    throw std::logic_error(msg.str());
  }

  ScanRecord r{};
  r.u = p.u();
  r.v = p.v();
  r.chsh = chsh.value;
  r.negativity = neg;
  r.fidelity = fid.best;
  r.dominant_label = spec.weights.dominant_label();
  r.dominant_weight = spec.weights.dominant_weight();
  if (neg < kSeparableTol) {
    r.region = Region::Separable;
  } else if (chsh.value > 2.0 + kNonlocalTol) {
    r.region = Region::Nonlocal;
  } else {
    r.region = Region::EntangledLocal;
  }
  return r;
}

std::vector<ScanRecord> scan_grid(const GridSpec& g, unsigned workers) {
  g.validate();
  std::vector<ScanRecord> records(g.size());
  const std::size_t nu = g.u.count;
  for_each_row(g.v.count, workers, [&](std::size_t j) {
    const double v = g.v.at(j);
    for (std::size_t i = 0; i < nu; ++i) records[j * nu + i] = evaluate_point(dipolar::CouplingParams(g.u.at(i), v));
  });
  return records;
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

void write_scan_csv(std::ostream& out, const std::vector<ScanRecord>& records, bool normalized_negativity) {
  out << kScanHeader << '\n';
  for (const ScanRecord& r : records) {
    const double neg = normalized_negativity ? measures::normalized_negativity(r.negativity) : r.negativity;
    out << format_double(r.u) << ',' << format_double(r.v) << ',' << format_double(r.chsh) << ','
        << format_double(neg) << ',' << format_double(r.fidelity) << ',' << format_double(r.dominant_weight) << ','
        << to_string(r.dominant_label) << ',' << to_string(r.region) << '\n';
  }
}

std::string_view to_string(ContourQuantity q) {
  switch (q) {
    case ContourQuantity::ChshMinus2:
      return "chsh";
    case ContourQuantity::Negativity:
      return "negativity";
    case ContourQuantity::FidelityMinusTwoThirds:
      return "fidelity";
  }
  return "?";
}

std::optional<ContourQuantity> parse_quantity(std::string_view text) {
  for (auto q : {ContourQuantity::ChshMinus2, ContourQuantity::Negativity, ContourQuantity::FidelityMinusTwoThirds}) {
    if (to_string(q) == text) return q;
  }
  return std::nullopt;
}

double contour_field(ContourQuantity q, const dipolar::CouplingParams& p) {
  switch (q) {
    case ContourQuantity::ChshMinus2:
      return measures::chsh_max(p).value - 2.0;
    case ContourQuantity::Negativity:
      return dipolar::spectrum(p).weights.dominant_weight() - 0.5;
    case ContourQuantity::FidelityMinusTwoThirds:
      return teleport::best_fidelity(dipolar::spectrum(p).weights).best - teleport::kClassicalFidelity;
  }
  return 0.0;
}

std::vector<EdgeRoot> edge_roots(ContourQuantity q, const GridSpec& g, double tol) {
  g.validate();
  require_positive_tol(tol);
  return find_roots(q, g, sample_field(q, g), tol);
}

std::vector<ContourPolyline> trace_boundary(ContourQuantity q, const GridSpec& g, double tol) {
  g.validate();
  require_positive_tol(tol);
  const FieldGrid f = sample_field(q, g);
  const std::vector<EdgeRoot> roots = find_roots(q, g, f, tol);

  std::map<GridEdge, const EdgeRoot*> root_at;
  for (const EdgeRoot& r : roots) root_at.emplace(r.edge, &r);

  // Each crossing edge links to the crossing edges it shares a cell segment with.
  std::map<GridEdge, std::vector<GridEdge>> links;
  auto connect = [&](const GridEdge& a, const GridEdge& b) {
    links[a].push_back(b);
    links[b].push_back(a);
  };

  for (std::size_t j = 0; j + 1 < f.nv; ++j) {
    for (std::size_t i = 0; i + 1 < f.nu; ++i) {
      const GridEdge bottom{true, i, j}, top{true, i, j + 1};
      const GridEdge left{false, i, j}, right{false, i + 1, j};
      std::vector<GridEdge> crossing;
      for (const GridEdge& e : {bottom, right, top, left}) {
        if (root_at.count(e)) crossing.push_back(e);
      }
      if (crossing.size() == 2) {
        connect(crossing[0], crossing[1]);
      } else if (crossing.size() == 4) {
        const double uc = 0.5 * (g.u.at(i) + g.u.at(i + 1));
        const double vc = 0.5 * (g.v.at(j) + g.v.at(j + 1));
        const bool center_positive = contour_field(q, dipolar::CouplingParams(uc, vc)) > 0.0;
        if (center_positive == f.positive(i, j)) {
          // Lower-left and upper-right corners join through the center.
          connect(bottom, right);
          connect(top, left);
        } else {
          connect(left, bottom);
          connect(right, top);
        }
      }
    }
  }

  std::vector<ContourPolyline> contours;
  std::map<GridEdge, bool> visited;
  auto walk = [&](const GridEdge& start) {
    ContourPolyline line{q, {}, false};
    GridEdge cur = start;
    while (true) {
      visited[cur] = true;
      const EdgeRoot& r = *root_at.at(cur);
      line.points.emplace_back(r.u, r.v);
      const auto& next = links[cur];
      const GridEdge* step = nullptr;
      for (const GridEdge& n : next) {
        if (!visited[n]) {
          step = &n;
          break;
        }
      }
      if (step == nullptr) {
        line.closed = line.points.size() > 2 && std::find(next.begin(), next.end(), start) != next.end();
        break;
      }
      cur = *step;
    }
    contours.push_back(std::move(line));
  };

  // Open lines start at crossings with a single neighbour (the grid border).
  for (const EdgeRoot& r : roots) {
    if (!visited[r.edge] && links[r.edge].size() < 2) walk(r.edge);
  }
  for (const EdgeRoot& r : roots) {
    if (!visited[r.edge]) walk(r.edge);
  }
  return contours;
}

void write_boundary_csv(std::ostream& out, const std::vector<ContourPolyline>& contours) {
  out << "contour_id,u,v\n";
  for (std::size_t id = 0; id < contours.size(); ++id) {
    const ContourPolyline& c = contours[id];
    for (const auto& [u, v] : c.points) out << id << ',' << format_double(u) << ',' << format_double(v) << '\n';
    // Closed contours repeat their first point so plotters close the loop.
    if (c.closed && !c.points.empty()) {
      out << id << ',' << format_double(c.points.front().first) << ',' << format_double(c.points.front().second)
          << '\n';
    }
  }
}

std::vector<DominantEntry> dominant_map(const GridSpec& g) {
  g.validate();
  std::vector<DominantEntry> entries;
  entries.reserve(g.size());
  for (std::size_t j = 0; j < g.v.count; ++j) {
    for (std::size_t i = 0; i < g.u.count; ++i) {
      const dipolar::CouplingParams p(g.u.at(i), g.v.at(j));
      const BellWeights w = dipolar::spectrum(p).weights;
      const BellLabel label = w.dominant_label();
      if (label == BellLabel::PsiMinus) {
        std::ostringstream msg;
        msg << "PsiMinus strictly dominant at (" << p.u() << ", " << p.v() << ")";
        throw std::logic_error(msg.str());
      }
      entries.push_back({p.u(), p.v(), label, w[label]});
    }
  }
  return entries;
}

void write_dominant_csv(std::ostream& out, const std::vector<DominantEntry>& entries) {
  out << "u,v,dominant_label,dominant_weight\n";
  for (const DominantEntry& e : entries) {
    out << format_double(e.u) << ',' << format_double(e.v) << ',' << to_string(e.label) << ','
        << format_double(e.weight) << '\n';
  }
}

}  // namespace thermoqi::scan

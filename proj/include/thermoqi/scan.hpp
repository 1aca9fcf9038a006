#pragma once

// Phase-plane sweeps over (u, v) = (Delta / k_B T, eps / k_B T): per-point
// records, region classification, dominant-weight maps, and tracing of the
// CHSH = 2, N = 0 and F = 2/3 boundaries.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thermoqi/bell.hpp"
#include "thermoqi/dipolar.hpp"

namespace thermoqi::scan {

inline constexpr double kSeparableTol = 1e-12;
inline constexpr double kNonlocalTol = 1e-12;
inline constexpr double kDefaultRootTol = 1e-9;
inline constexpr std::size_t kMaxGridPoints = 100'000'000;

/// Thrown when a grid asks for more than kMaxGridPoints points.
class ResourceGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inclusive axis: count points from min to max.
struct AxisRange {
  double min;
  double max;
  std::size_t count;

  double at(std::size_t i) const;
};

/// Parses "min:max:count". Throws std::invalid_argument on malformed text.
AxisRange parse_range(std::string_view text);

struct GridSpec {
  AxisRange u;
  AxisRange v;

  /// Throws std::invalid_argument for empty or inverted axes, and
  /// ResourceGuardError past kMaxGridPoints.
  void validate() const;
  std::size_t size() const { return u.count * v.count; }
};

enum class Region { Separable, EntangledLocal, Nonlocal };

std::string_view to_string(Region region);

struct ScanRecord {
  double u;
  double v;
  double chsh;
  double negativity;
  double fidelity;
  double dominant_weight;
  BellLabel dominant_label;
  Region region;
};

ScanRecord evaluate_point(const dipolar::CouplingParams& p);

/// Records in row-major order (v outer, u inner). The output does not depend
/// on the worker count.
std::vector<ScanRecord> scan_grid(const GridSpec& g, unsigned workers = 1);

inline constexpr std::string_view kScanHeader =
    "u,v,chsh,negativity,fidelity,dominant_weight,dominant_label,region";

/// Shortest round-trip decimal form of x.
std::string format_double(double x);

void write_scan_csv(std::ostream& out, const std::vector<ScanRecord>& records, bool normalized_negativity);

// --- boundaries -------------------------------------------------------------

enum class ContourQuantity { ChshMinus2, Negativity, FidelityMinusTwoThirds };

std::string_view to_string(ContourQuantity q);
std::optional<ContourQuantity> parse_quantity(std::string_view text);

/// Signed field whose zero set is the boundary: chsh - 2, max p - 1/2, or
/// best fidelity - 2/3. Negativity itself is clamped at zero, so its boundary
/// is traced on the signed excess max p - 1/2.
double contour_field(ContourQuantity q, const dipolar::CouplingParams& p);

/// Grid edge between two adjacent grid nodes. A horizontal edge joins (i, j)
/// and (i + 1, j); a vertical edge joins (i, j) and (i, j + 1). i indexes u,
/// j indexes v.
struct GridEdge {
  bool horizontal;
  std::size_t i;
  std::size_t j;

  friend bool operator==(const GridEdge&, const GridEdge&) = default;
  friend auto operator<=>(const GridEdge&, const GridEdge&) = default;
};

struct EdgeRoot {
  GridEdge edge;
  double u;
  double v;
  double residual;  // field value at (u, v)
};

/// Every grid edge whose endpoint values differ in sign (positive vs
/// non-positive) holds one bisected root. Sorted by edge.
std::vector<EdgeRoot> edge_roots(ContourQuantity q, const GridSpec& g, double tol = kDefaultRootTol);

struct ContourPolyline {
  ContourQuantity quantity;
  std::vector<std::pair<double, double>> points;  // (u, v)
  bool closed;
};

/// Assembles the edge roots into polylines by marching squares. Saddle cells
/// are resolved by the sign of the field at the cell center.
std::vector<ContourPolyline> trace_boundary(ContourQuantity q, const GridSpec& g, double tol = kDefaultRootTol);

void write_boundary_csv(std::ostream& out, const std::vector<ContourPolyline>& contours);

// --- dominant weights -------------------------------------------------------

struct DominantEntry {
  double u;
  double v;
  BellLabel label;
  double weight;
};

/// Dominant Bell weight at every grid point. Throws std::logic_error if
/// PsiMinus is ever strictly dominant, which the model forbids.
std::vector<DominantEntry> dominant_map(const GridSpec& g);

void write_dominant_csv(std::ostream& out, const std::vector<DominantEntry>& entries);

// --- command line -----------------------------------------------------------

/// Runs the command-line interface. args excludes the program name.
/// Returns 0 on success, 2 on argument errors, 3 when the resource guard
/// rejects a grid, 1 on I/O failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thermoqi::scan

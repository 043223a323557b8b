#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "exdr/chart_model.hpp"
#include "exdr/fan.hpp"

namespace exdr {

enum class GluingClass {
  QuadrantClass,  // every polytope has full unbounded span
  PureMonomial,   // constant-coefficient monomial transition maps
  General,        // anything else; refused by the assembly
};

std::string_view to_string(GluingClass g);
std::optional<GluingClass> parse_gluing_class(std::string_view text);

using ChartId = std::string;
using IdSet = std::vector<ChartId>;  // sorted, no duplicates

struct Overlap {
  ChartSignature signature;
  /// For each member chart i: the m_i x m_overlap exponent matrix of the
  /// restriction from chart i to the overlap.
  std::map<ChartId, IntMatrix> maps;
  /// Optional explicit maps from sub-overlaps (|J| >= 2) to this overlap.
  std::map<IdSet, IntMatrix> sub_maps;
};

/// A finite good cover: charts, their nonempty multiple intersections, and
/// monomial gluing data.
struct CoverManifest {
  std::map<ChartId, ChartSignature> charts;
  std::map<IdSet, Overlap> overlaps;
  GluingClass gluing = GluingClass::PureMonomial;
  bool oriented = true;

  /// Total real dimension (taken from the first chart).
  std::size_t dimension() const;
};

struct ManifestIssue {
  ErrorKind kind;
  IdSet subset;
  std::string message;

  std::string describe() const;
};

/// Structural checks; an empty result means the manifest is valid.
std::vector<ManifestIssue> validate_manifest(const CoverManifest& manifest);

/// Throws the first issue as an Error (the message lists all of them).
void require_valid(const CoverManifest& manifest);

/// Exponent matrix of the restriction from the cell `face` (a chart when
/// |face| == 1) to the cell `cell` ⊃ face. Sub-overlap maps are solved from
/// the chart maps when not given explicitly; throws GluingError when the
/// solution is missing, non-integral or not unique.
IntMatrix cell_map(const CoverManifest& manifest, const IdSet& face, const IdSet& cell);

/// Signature of a cell (chart or overlap).
const ChartSignature& cell_signature(const CoverManifest& manifest, const IdSet& cell);

/// All cells (singletons for charts, then overlaps), ordered by size then
/// lexicographically.
std::vector<IdSet> cells(const CoverManifest& manifest);

/// Cover of the toric refinement of T^n by the cones of a complete fan: one
/// chart per maximal cone, one overlap per set of >= 2 maximal cones (the
/// intersection cone), identity exponent matrices. Throws UnsupportedFan
/// for incomplete fans.
CoverManifest refinement_manifest(const Fan& fan, std::size_t base_m);

/// The same manifest with chart ids renamed (used for relabeling tests).
CoverManifest relabel(const CoverManifest& manifest, const std::map<ChartId, ChartId>& renaming);

}  // namespace exdr

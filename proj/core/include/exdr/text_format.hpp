#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "exdr/cover.hpp"
#include "exdr/fan.hpp"
#include "exdr/form.hpp"

namespace exdr {

// Line-oriented text formats. Blank lines and text after '#' are ignored;
// every error is a ParseError carrying source:line:column.

/// Manifest:
///   [meta]            gluing_class = pure-monomial, orientation = oriented
///   [chart a]         n = 0, m = 2, then inequality lines "1 0 >= 0"
///                     ('>' instead of '>=' marks an open face)
///   [overlap a,b]     same keys plus "map a = 1 0; 0 1" per member and
///                     optionally "map a,b = ..." from a sub-overlap
/// Structure is checked separately (validate_manifest).
CoverManifest parse_manifest(std::string_view text, const std::string& source = "<manifest>");
std::string print_manifest(const CoverManifest& manifest);

/// Fan file: one "cone: v1; v2; ..." line per maximal cone.
Fan parse_fan(std::string_view text, const std::string& source = "<fan>");

/// A single chart: the [chart] block of a manifest (the id is optional).
/// `half_space = true` selects the chart {x1 <= 0} × ... used for Stokes.
struct ChartDocument {
  ChartSignature signature;
  bool half_space = false;
};

/// Form file: a [chart] block and a [form] block with "omega = <expr>" and
/// optionally "corner = <vertex index>".
struct FormDocument {
  ChartDocument chart;
  FormExpr omega;
};

ChartDocument parse_chart(std::string_view text, const std::string& source = "<chart>");
FormDocument parse_form_document(std::string_view text, const std::string& source = "<form>");

/// Map file: "df = rows" and "dg = rows" (rows separated by ';'), two linear
/// maps into a common target.
struct MapDocument {
  QMatrix df;
  QMatrix dg;
};

MapDocument parse_maps(std::string_view text, const std::string& source = "<maps>");

/// Reads a whole file; throws ParseError (line 0) when it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace exdr

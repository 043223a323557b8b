#include "exdr/cover.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

#include "exdr/linalg.hpp"

namespace exdr {

std::string_view to_string(GluingClass g) {
  switch (g) {
    case GluingClass::QuadrantClass: return "quadrant-class";
    case GluingClass::PureMonomial: return "pure-monomial";
    case GluingClass::General: return "general";
  }
  return "general";
}

std::optional<GluingClass> parse_gluing_class(std::string_view text) {
  if (text == "quadrant-class") return GluingClass::QuadrantClass;
  if (text == "pure-monomial") return GluingClass::PureMonomial;
  if (text == "general") return GluingClass::General;
  return std::nullopt;
}

std::size_t CoverManifest::dimension() const {
  if (charts.empty()) return 0;
  return charts.begin()->second.total_dim();
}

namespace {

std::string join_ids(const IdSet& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? "," : "") + ids[i];
  return out;
}

// All subsets of `ids` of size >= min_size, except ids itself.
std::vector<IdSet> proper_subsets(const IdSet& ids, std::size_t min_size) {
  std::vector<IdSet> out;
  const std::size_t n = ids.size();
  for (std::size_t size = min_size; size < n; ++size)
    for (const auto& pick : subsets(n, size)) {
      IdSet s;
      for (auto i : pick) s.push_back(ids[i]);
      out.push_back(std::move(s));
    }
  return out;
}

}  // namespace

std::string ManifestIssue::describe() const {
  return std::string(to_string(kind)) + " [" + join_ids(subset) + "]: " + message;
}

const ChartSignature& cell_signature(const CoverManifest& manifest, const IdSet& cell) {
  if (cell.size() == 1) {
    auto it = manifest.charts.find(cell[0]);
    if (it == manifest.charts.end()) throw Error(ErrorKind::InconsistentNerve, "unknown chart '" + cell[0] + "'");
    return it->second;
  }
  auto it = manifest.overlaps.find(cell);
  if (it == manifest.overlaps.end())
    throw Error(ErrorKind::InconsistentNerve, "overlap [" + join_ids(cell) + "] is not listed");
  return it->second.signature;
}

std::vector<IdSet> cells(const CoverManifest& manifest) {
  std::vector<IdSet> out;
  for (const auto& [id, sig] : manifest.charts) out.push_back({id});
  for (const auto& [ids, ov] : manifest.overlaps) out.push_back(ids);
  std::stable_sort(out.begin(), out.end(), [](const IdSet& a, const IdSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

IntMatrix cell_map(const CoverManifest& manifest, const IdSet& face, const IdSet& cell) {
  auto oit = manifest.overlaps.find(cell);
  if (oit == manifest.overlaps.end())
    throw Error(ErrorKind::InconsistentNerve, "overlap [" + join_ids(cell) + "] is not listed");
  const Overlap& ov = oit->second;
  if (face.size() == 1) {
    auto mit = ov.maps.find(face[0]);
    if (mit == ov.maps.end())
      throw Error(ErrorKind::GluingError, "overlap [" + join_ids(cell) + "] has no map for chart '" + face[0] + "'");
    return mit->second;
  }
  if (auto sit = ov.sub_maps.find(face); sit != ov.sub_maps.end()) return sit->second;

  // Solve A_{i,J} X = A_{i,I} for all i in J simultaneously.
  const auto& face_sig = cell_signature(manifest, face);
  QMatrix lhs(0, face_sig.m), rhs(0, ov.signature.m);
  for (const auto& id : face) {
    lhs = vstack(lhs, to_rational(cell_map(manifest, {id}, face)));
    rhs = vstack(rhs, to_rational(cell_map(manifest, {id}, cell)));
  }
  if (rank(lhs) != face_sig.m)
    throw Error(ErrorKind::GluingError, "map from [" + join_ids(face) + "] to [" + join_ids(cell) +
                                            "] is not determined by the chart maps; list it explicitly");
  auto x = solve(lhs, rhs);
  if (!x) throw Error(ErrorKind::GluingError, "chart maps into [" + join_ids(face) + "] and [" + join_ids(cell) +
                                                  "] are not compatible");
  IntMatrix out(x->rows(), x->cols());
  for (std::size_t r = 0; r < x->rows(); ++r)
    for (std::size_t c = 0; c < x->cols(); ++c) {
      if (!is_integer((*x)(r, c)))
        throw Error(ErrorKind::GluingError, "map from [" + join_ids(face) + "] to [" + join_ids(cell) + "] is not integral");
      out(r, c) = numerator((*x)(r, c));
    }
  return out;
}

std::vector<ManifestIssue> validate_manifest(const CoverManifest& manifest) {
  std::vector<ManifestIssue> issues;
  if (manifest.charts.empty()) {
    issues.push_back({ErrorKind::InvalidManifest, {}, "manifest has no charts"});
    return issues;
  }
  const std::size_t big_n = manifest.dimension();
  auto check_signature = [&](const IdSet& cell, const ChartSignature& sig) {
    if (sig.total_dim() != big_n)
      issues.push_back({ErrorKind::DimensionMismatch, cell,
                        "total dimension " + std::to_string(sig.total_dim()) + " differs from " + std::to_string(big_n)});
    if (sig.polytope.is_empty()) issues.push_back({ErrorKind::EmptyPolytope, cell, "polytope is empty"});
    else if (manifest.gluing == GluingClass::QuadrantClass && unbounded_span(sig.polytope).k != sig.m)
      issues.push_back({ErrorKind::UnsupportedGluing, cell,
                        "quadrant-class requires full unbounded span, got k = " +
                            std::to_string(unbounded_span(sig.polytope).k) + " < m = " + std::to_string(sig.m)});
  };
  for (const auto& [id, sig] : manifest.charts) check_signature({id}, sig);

  for (const auto& [ids, ov] : manifest.overlaps) {
    if (ids.size() < 2) {
      issues.push_back({ErrorKind::InconsistentNerve, ids, "overlap needs at least two charts"});
      continue;
    }
    if (!std::is_sorted(ids.begin(), ids.end()) || std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
      issues.push_back({ErrorKind::InconsistentNerve, ids, "overlap ids must be distinct and sorted"});
      continue;
    }
    bool members_ok = true;
    for (const auto& id : ids)
      if (!manifest.charts.count(id)) {
        issues.push_back({ErrorKind::InconsistentNerve, ids, "references unknown chart '" + id + "'"});
        members_ok = false;
      }
    if (!members_ok) continue;
    check_signature(ids, ov.signature);
    for (const auto& sub : proper_subsets(ids, 2))
      if (!manifest.overlaps.count(sub))
        issues.push_back({ErrorKind::InconsistentNerve, ids, "sub-overlap [" + join_ids(sub) + "] is not listed"});
    for (const auto& id : ids) {
      auto mit = ov.maps.find(id);
      if (mit == ov.maps.end()) {
        issues.push_back({ErrorKind::GluingError, ids, "missing map for chart '" + id + "'"});
        continue;
      }
      const auto& chart = manifest.charts.at(id);
      if (mit->second.rows() != chart.m || mit->second.cols() != ov.signature.m)
        issues.push_back({ErrorKind::ShapeError, ids, "map for chart '" + id + "' must be " + std::to_string(chart.m) +
                                                          "x" + std::to_string(ov.signature.m)});
    }
    for (const auto& [id, m] : ov.maps)
      if (!std::binary_search(ids.begin(), ids.end(), id))
        issues.push_back({ErrorKind::GluingError, ids, "map given for non-member chart '" + id + "'"});
  }
  if (!issues.empty()) return issues;

  // Restriction maps along every codimension-one face must be well defined.
  for (const auto& [ids, ov] : manifest.overlaps) {
    for (std::size_t a = 0; a < ids.size(); ++a) {
      IdSet face = ids;
      face.erase(face.begin() + static_cast<long>(a));
      try {
        auto map = cell_map(manifest, face, ids);
        auto src = chart_cohomology(cell_signature(manifest, face));
        auto tgt = chart_cohomology(ov.signature);
        (void)restriction_map(src, tgt, map);
      } catch (const Error& e) {
        issues.push_back({e.kind(), ids, std::string(e.what())});
      }
    }
  }
  return issues;
}

void require_valid(const CoverManifest& manifest) {
  auto issues = validate_manifest(manifest);
  if (issues.empty()) return;
  std::string msg;
  for (const auto& i : issues) msg += "\n  " + i.describe();
  throw Error(issues.front().kind, "invalid manifest:" + msg);
}

CoverManifest refinement_manifest(const Fan& fan, std::size_t base_m) {
  if (base_m != fan.ambient_dim())
    throw Error(ErrorKind::ShapeError, "base_m must equal the fan's ambient dimension");
  if (!fan.is_complete()) throw Error(ErrorKind::UnsupportedFan, "refinement needs a complete fan");
  const auto& maximal = fan.maximal_cones();
  const std::size_t count = maximal.size();
  const std::size_t width = std::to_string(count).size();
  auto id_of = [&](std::size_t i) {
    std::ostringstream os;
    os << "c" << std::setw(static_cast<int>(width)) << std::setfill('0') << i;
    return os.str();
  };
  CoverManifest out;
  out.gluing = GluingClass::PureMonomial;
  const IntMatrix identity = IntMatrix::identity(base_m);
  for (std::size_t i = 0; i < count; ++i) out.charts[id_of(i)] = ChartSignature(0, base_m, fan.cone_polytope(maximal[i]));
  for (std::size_t size = 2; size <= count; ++size)
    for (const auto& pick : subsets(count, size)) {
      std::size_t cone = maximal[pick[0]];
      for (std::size_t t = 1; t < pick.size(); ++t) cone = fan.intersection(cone, maximal[pick[t]]);
      Overlap ov;
      ov.signature = ChartSignature(0, base_m, fan.cone_polytope(cone));
      IdSet ids;
      for (auto i : pick) {
        ids.push_back(id_of(i));
        ov.maps[id_of(i)] = identity;
      }
      out.overlaps[ids] = std::move(ov);
    }
  return out;
}

CoverManifest relabel(const CoverManifest& manifest, const std::map<ChartId, ChartId>& renaming) {
  auto rename = [&](const ChartId& id) {
    auto it = renaming.find(id);
    return it == renaming.end() ? id : it->second;
  };
  CoverManifest out;
  out.gluing = manifest.gluing;
  out.oriented = manifest.oriented;
  for (const auto& [id, sig] : manifest.charts) out.charts[rename(id)] = sig;
  for (const auto& [ids, ov] : manifest.overlaps) {
    IdSet renamed;
    for (const auto& id : ids) renamed.push_back(rename(id));
    std::sort(renamed.begin(), renamed.end());
    Overlap o;
    o.signature = ov.signature;
    for (const auto& [id, m] : ov.maps) o.maps[rename(id)] = m;
    for (const auto& [sub, m] : ov.sub_maps) {
      IdSet s;
      for (const auto& id : sub) s.push_back(rename(id));
      std::sort(s.begin(), s.end());
      o.sub_maps[s] = m;
    }
    out.overlaps[renamed] = std::move(o);
  }
  return out;
}

}  // namespace exdr

#include "exdr/cech.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "exdr/linalg.hpp"

namespace exdr {

namespace {

struct CellData {
  IdSet cell;
  std::size_t p = 0;
  ChartModel model;
};

std::vector<CellData> cell_models(const CoverManifest& manifest) {
  std::vector<CellData> out;
  for (const auto& cell : cells(manifest))
    out.push_back({cell, cell.size() - 1, chart_cohomology(cell_signature(manifest, cell))});
  return out;
}

// Restriction maps along codimension-one faces, keyed by (face index, cell index).
using FaceMaps = std::map<std::pair<std::size_t, std::size_t>, RestrictionMap>;

FaceMaps face_maps(const CoverManifest& manifest, const std::vector<CellData>& data) {
  std::map<IdSet, std::size_t> index;
  for (std::size_t i = 0; i < data.size(); ++i) index[data[i].cell] = i;
  FaceMaps out;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& cell = data[i].cell;
    if (cell.size() < 2) continue;
    for (std::size_t a = 0; a < cell.size(); ++a) {
      IdSet face = cell;
      face.erase(face.begin() + static_cast<long>(a));
      const std::size_t f = index.at(face);
      out.emplace(std::pair{f, i}, restriction_map(data[f].model, data[i].model, cell_map(manifest, face, cell)));
    }
  }
  return out;
}

// Position of the removed chart when `face` = `cell` minus one element.
std::size_t removed_position(const IdSet& face, const IdSet& cell) {
  std::size_t a = 0;
  while (a < face.size() && face[a] == cell[a]) ++a;
  return a;
}

long sign_of(std::size_t exponent) { return exponent % 2 == 0 ? 1 : -1; }

std::vector<long> cohomology_dims(const std::vector<std::size_t>& dims, const std::vector<QMatrix>& diffs) {
  std::vector<std::size_t> ranks(diffs.size());
  for (std::size_t r = 0; r < diffs.size(); ++r) ranks[r] = exact_rank(diffs[r]);
  std::vector<long> out(dims.size());
  for (std::size_t r = 0; r < dims.size(); ++r) {
    long outgoing = r < ranks.size() ? static_cast<long>(ranks[r]) : 0;
    long incoming = r > 0 ? static_cast<long>(ranks[r - 1]) : 0;
    out[r] = static_cast<long>(dims[r]) - outgoing - incoming;
  }
  return out;
}

void require_supported(const CoverManifest& manifest) {
  require_valid(manifest);
  if (manifest.gluing == GluingClass::General)
    throw Error(ErrorKind::UnsupportedGluing, "general gluing is not supported by the constant-form assembly");
}

}  // namespace

long TotalComplex::euler_characteristic() const {
  long chi = 0;
  for (std::size_t r = 0; r < dims.size(); ++r) chi += (r % 2 == 0 ? 1 : -1) * static_cast<long>(dims[r]);
  return chi;
}

std::size_t exact_rank(const QMatrix& m) {
  if (m.empty()) return 0;
  bool integral = true;
  for (std::size_t r = 0; r < m.rows() && integral; ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!is_integer(m(r, c))) {
        integral = false;
        break;
      }
  if (!integral) return rank(m);
  IntMatrix z(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) z(r, c) = numerator(m(r, c));
  return rank(z);
}

TotalComplex build_total_complex(const CoverManifest& manifest) {
  require_supported(manifest);
  const auto data = cell_models(manifest);
  const auto maps = face_maps(manifest, data);

  TotalComplex tc;
  std::size_t top = manifest.dimension();
  for (const auto& d : data) top = std::max(top, d.p + d.model.h1_dim());
  tc.dims.assign(top + 1, 0);
  tc.blocks.assign(top + 1, {});
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> where;  // (cell, q) -> block index in its degree
  for (std::size_t i = 0; i < data.size(); ++i)
    for (std::size_t q = 0; q <= data[i].model.h1_dim(); ++q) {
      const std::size_t r = data[i].p + q;
      const auto size = static_cast<std::size_t>(binomial(static_cast<long>(data[i].model.h1_dim()), static_cast<long>(q)));
      where[{i, q}] = tc.blocks[r].size();
      tc.blocks[r].push_back({data[i].cell, data[i].p, q, tc.dims[r], size});
      tc.dims[r] += size;
    }

  for (std::size_t r = 0; r < top; ++r) tc.differentials.emplace_back(tc.dims[r + 1], tc.dims[r]);
  for (const auto& [key, rho] : maps) {
    const auto [f, c] = key;
    const std::size_t a = removed_position(data[f].cell, data[c].cell);
    for (std::size_t q = 0; q <= std::min(rho.source_h1, rho.target_h1); ++q) {
      const std::size_t r = data[f].p + q;
      const auto& src = tc.blocks[r][where.at({f, q})];
      const auto& dst = tc.blocks[r + 1][where.at({c, q})];
      const QMatrix block = rho.exterior_power(q);
      const Rational s(sign_of(q + a));
      auto& d = tc.differentials[r];
      for (std::size_t i = 0; i < dst.size; ++i)
        for (std::size_t j = 0; j < src.size; ++j) d(dst.offset + i, src.offset + j) = s * block(i, j);
    }
  }
  return tc;
}

CompactComplex build_compact_complex(const CoverManifest& manifest) {
  require_supported(manifest);
  const auto data = cell_models(manifest);
  for (const auto& d : data) (void)chart_compact_cohomology(d.model.signature);
  const auto maps = face_maps(manifest, data);
  const long big_n = static_cast<long>(manifest.dimension());

  // Piece (cell i, exterior degree q) stands for H^{N-q}_c(U_i) in degree N - q - p.
  long lo = big_n, hi = big_n;
  for (const auto& d : data) lo = std::min(lo, big_n - static_cast<long>(d.model.h1_dim() + d.p));
  CompactComplex cc;
  cc.min_degree = static_cast<int>(lo);
  cc.dims.assign(static_cast<std::size_t>(hi - lo + 1), 0);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> offset;
  for (std::size_t i = 0; i < data.size(); ++i)
    for (std::size_t q = 0; q <= data[i].model.h1_dim(); ++q) {
      const auto slot = static_cast<std::size_t>(big_n - static_cast<long>(q + data[i].p) - lo);
      offset[{i, q}] = cc.dims[slot];
      cc.dims[slot] += static_cast<std::size_t>(binomial(static_cast<long>(data[i].model.h1_dim()), static_cast<long>(q)));
    }
  for (std::size_t s = 0; s + 1 < cc.dims.size(); ++s) cc.differentials.emplace_back(cc.dims[s + 1], cc.dims[s]);
  // Extension from the larger cell c to its face f, adjoint to restriction f -> c.
  for (const auto& [key, rho] : maps) {
    const auto [f, c] = key;
    const std::size_t a = removed_position(data[f].cell, data[c].cell);
    for (std::size_t q = 0; q <= std::min(rho.source_h1, rho.target_h1); ++q) {
      const auto slot = static_cast<std::size_t>(big_n - static_cast<long>(q + data[c].p) - lo);
      const QMatrix block = rho.exterior_power(q);  // rows: cell c basis, cols: face f basis
      const Rational s(sign_of(a));
      auto& d = cc.differentials[slot];
      const std::size_t src = offset.at({c, q}), dst = offset.at({f, q});
      for (std::size_t i = 0; i < block.cols(); ++i)
        for (std::size_t j = 0; j < block.rows(); ++j) d(dst + i, src + j) = s * block(j, i);
    }
  }
  return cc;
}

BettiTable total_betti(const CoverManifest& manifest) {
  const auto tc = build_total_complex(manifest);
  const auto all = cohomology_dims(tc.dims, tc.differentials);
  BettiTable t;
  t.dimension = manifest.dimension();
  t.betti.assign(all.begin(), all.begin() + static_cast<long>(t.dimension + 1));
  return t;
}

BettiTable total_compact_betti(const CoverManifest& manifest) {
  const auto cc = build_compact_complex(manifest);
  const auto all = cohomology_dims(cc.dims, cc.differentials);
  BettiTable t;
  t.dimension = manifest.dimension();
  std::vector<long> compact(t.dimension + 1, 0);
  for (std::size_t s = 0; s < all.size(); ++s) {
    const long deg = cc.min_degree + static_cast<long>(s);
    if (deg >= 0) compact[static_cast<std::size_t>(deg)] = all[s];
    else if (all[s] != 0)
      throw Error(ErrorKind::InconsistentNerve, "compact cohomology in negative degree " + std::to_string(deg));
  }
  t.compact = std::move(compact);
  return t;
}

std::string BettiTable::to_text() const {
  std::ostringstream os;
  os << "degree  betti" << (compact ? "  compact" : "") << "\n";
  for (std::size_t j = 0; j < betti.size(); ++j) {
    os << std::string(j < 10 ? 5 : 4, ' ') << j << "  " << std::string(5 - std::min<std::size_t>(5, std::to_string(betti[j]).size()), ' ')
       << betti[j];
    if (compact) os << "  " << std::string(7 - std::min<std::size_t>(7, std::to_string((*compact)[j]).size()), ' ') << (*compact)[j];
    os << "\n";
  }
  return os.str();
}

std::string BettiTable::to_machine() const {
  std::ostringstream os;
  // Zero entries are left out; the dimension line fixes the range.
  os << "dimension " << dimension << "\n";
  for (std::size_t j = 0; j < betti.size(); ++j)
    if (betti[j] != 0) os << "betti " << j << " " << betti[j] << "\n";
  if (compact)
    for (std::size_t j = 0; j < compact->size(); ++j)
      if ((*compact)[j] != 0) os << "cbetti " << j << " " << (*compact)[j] << "\n";
  return os.str();
}

DualityReport pd_symmetry_check(const CoverManifest& manifest) {
  DualityReport report;
  report.table = total_betti(manifest);
  report.table.compact = total_compact_betti(manifest).compact;
  const std::size_t big_n = report.table.dimension;
  for (std::size_t j = 0; j <= big_n; ++j) {
    const long c = (*report.table.compact)[j];
    const long b = report.table.betti[big_n - j];
    if (c != b) {
      report.passed = false;
      report.violations.push_back("c_" + std::to_string(j) + " = " + std::to_string(c) + " but b_" +
                                  std::to_string(big_n - j) + " = " + std::to_string(b));
    }
  }
  return report;
}

std::vector<long> nerve_cohomology(const CoverManifest& manifest) {
  // Simplices: charts and listed overlaps, grouped by dimension.
  std::vector<std::vector<IdSet>> simplices;
  for (const auto& [id, sig] : manifest.charts) {
    if (simplices.empty()) simplices.emplace_back();
    simplices[0].push_back({id});
  }
  for (const auto& [ids, ov] : manifest.overlaps) {
    if (simplices.size() < ids.size()) simplices.resize(ids.size());
    simplices[ids.size() - 1].push_back(ids);
  }
  std::vector<std::size_t> dims;
  for (auto& level : simplices) {
    std::sort(level.begin(), level.end());
    dims.push_back(level.size());
  }
  std::vector<QMatrix> diffs;
  for (std::size_t p = 0; p + 1 < simplices.size(); ++p) {
    QMatrix d(dims[p + 1], dims[p]);
    for (std::size_t row = 0; row < simplices[p + 1].size(); ++row) {
      const auto& sigma = simplices[p + 1][row];
      for (std::size_t a = 0; a < sigma.size(); ++a) {
        IdSet face = sigma;
        face.erase(face.begin() + static_cast<long>(a));
        auto it = std::lower_bound(simplices[p].begin(), simplices[p].end(), face);
        if (it == simplices[p].end() || *it != face)
          throw Error(ErrorKind::InconsistentNerve, "nerve is not closed under faces");
        d(row, static_cast<std::size_t>(it - simplices[p].begin())) = Rational(sign_of(a));
      }
    }
    diffs.push_back(std::move(d));
  }
  return cohomology_dims(dims, diffs);
}

}  // namespace exdr

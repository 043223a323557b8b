// exdr: command line front end.
//
// Exit codes: 0 ran and verified, 1 parse or validation error, 2 the check
// ran and failed.

#include <cmath>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "exdr/cech.hpp"
#include "exdr/integrate.hpp"
#include "exdr/orientation.hpp"
#include "exdr/pairing.hpp"
#include "exdr/text_format.hpp"

namespace {

using namespace exdr;

enum class Format { Text, Machine };

struct Options {
  double tolerance = 1e-6;
  int max_depth = 20;
  Format format = Format::Text;
  std::string path;
  std::size_t degree = 0;
};

QuadratureSpec spec_of(const Options& o) {
  QuadratureSpec s;
  s.tolerance = o.tolerance;
  s.max_depth = o.max_depth;
  return s;
}

std::string number(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string line(const std::string& key, double value, double bound) {
  return key + " " + number(value) + " bound " + number(bound) + "\n";
}

CoverManifest load_manifest(const std::string& path) {
  CoverManifest m = parse_manifest(read_file(path), path);
  require_valid(m);
  return m;
}

int cmd_cohomology(const Options& o) {
  const BettiTable t = total_betti(load_manifest(o.path));
  std::cout << (o.format == Format::Machine ? t.to_machine() : t.to_text());
  return 0;
}

int cmd_pd_check(const Options& o) {
  const DualityReport r = pd_symmetry_check(load_manifest(o.path));
  if (o.format == Format::Machine) {
    std::cout << r.table.to_machine() << "pd " << (r.passed ? "pass" : "fail") << "\n";
  } else {
    std::cout << r.table.to_text() << (r.passed ? "Poincaré duality holds\n" : "Poincaré duality FAILS\n");
    for (const auto& v : r.violations) std::cout << "  " << v << "\n";
  }
  return r.passed ? 0 : 2;
}

int cmd_refine(const Options& o) {
  const Fan fan = parse_fan(read_file(o.path), o.path);
  std::cout << print_manifest(refinement_manifest(fan, fan.ambient_dim()));
  return 0;
}

int cmd_stokes(const Options& o) {
  const FormDocument doc = parse_form_document(read_file(o.path), o.path);
  const StokesReport r = stokes_check(doc.omega, doc.chart.signature, doc.chart.half_space, spec_of(o));
  const bool violated = r.hypothesis_violated();
  if (o.format == Format::Machine) {
    std::cout << line("interior", r.interior.value, r.interior.bound)
              << line("boundary", r.boundary.value, r.boundary.bound)
              << line("value", r.discrepancy, r.interior.bound + r.boundary.bound)
              << "admissible " << (violated ? 0 : 1) << "\n";
    if (violated) std::cout << "hypothesis violated; discrepancy expected\n";
  } else {
    std::cout << r.to_text();
  }
  if (violated) return 0;
  return r.agrees(o.tolerance) ? 0 : 2;
}

int cmd_pair(const Options& o) {
  const ChartDocument doc = parse_chart(read_file(o.path), o.path);
  const PairingMatrix p = pairing_matrix(doc.signature, o.degree, spec_of(o));
  const bool ok = p.nondegenerate(o.tolerance);
  if (o.format == Format::Machine) {
    for (std::size_t i = 0; i < p.entries.size(); ++i)
      for (std::size_t j = 0; j < p.entries[i].size(); ++j)
        std::cout << "entry " << i << " " << j << " " << number(p.entries[i][j].value) << "\n";
    std::cout << "rank " << p.rank << " expected " << p.expected_rank << "\n"
              << "deviation " << number(p.max_deviation) << "\n"
              << "pairing " << (ok ? "nondegenerate" : "degenerate") << "\n";
  } else {
    std::cout << p.to_text() << (ok ? "pairing is nondegenerate\n" : "pairing is DEGENERATE\n");
  }
  return ok ? 0 : 2;
}

int cmd_orient(const Options& o) {
  const MapDocument doc = parse_maps(read_file(o.path), o.path);
  const std::size_t a = doc.df.cols(), b = doc.dg.cols(), c = doc.df.rows();
  if (!transverse(doc.df, doc.dg)) throw Error(ErrorKind::NotTransverse, "df - dg is not onto the common target");
  const OrientedSpace t = fiber_product_orientation(doc.df, doc.dg);
  const int swap = swap_sign(doc.df, doc.dg);
  const int normal = normal_bundle_sign(doc.df, doc.dg);
  const long ab = (static_cast<long>(a) - static_cast<long>(c)) * (static_cast<long>(b) - static_cast<long>(c));
  const int swap_expected = ab % 2 == 0 ? 1 : -1;
  const int normal_expected = (b * c) % 2 == 0 ? 1 : -1;
  const bool ok = swap == swap_expected && normal == normal_expected;
  if (o.format == Format::Machine) {
    std::cout << "dimension " << t.dimension() << "\nsign " << t.sign << "\n";
    for (std::size_t j = 0; j < t.dimension(); ++j) {
      std::cout << "basis " << j;
      for (std::size_t r = 0; r < t.ambient(); ++r) std::cout << " " << t.basis(r, j);
      std::cout << "\n";
    }
    std::cout << "swap " << swap << " expected " << swap_expected << "\n"
              << "normal " << normal << " expected " << normal_expected << "\n";
  } else {
    std::cout << "fiber product of dimension " << t.dimension() << " in TA ⊕ TB (" << a << " + " << b << ")\n";
    if (t.dimension() == 0) std::cout << "point with sign " << (t.sign > 0 ? "+" : "-") << "\n";
    for (std::size_t j = 0; j < t.dimension(); ++j) {
      std::cout << "  v" << j + 1 << " =";
      for (std::size_t r = 0; r < t.ambient(); ++r) std::cout << " " << t.basis(r, j);
      std::cout << "\n";
    }
    std::cout << "swap sign " << swap << " (expected " << swap_expected << ")\n"
              << "normal bundle sign " << normal << " (expected " << normal_expected << ")\n";
  }
  return ok ? 0 : 2;
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::DivergenceSuspected: return 2;
    default: return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohomology, integration and orientation checks for exploded manifolds"};
  app.require_subcommand(1);
  Options opt;
  const std::map<std::string, Format> formats{{"text", Format::Text}, {"machine", Format::Machine}};
  auto common = [&](CLI::App* sub, const std::string& what) {
    sub->add_option("path", opt.path, what)->required();
    sub->add_option("--tolerance", opt.tolerance, "numeric tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-depth", opt.max_depth, "quadrature refinement cap")->check(CLI::Range(1, 60));
    sub->add_option("--format", opt.format, "output format")->transform(CLI::CheckedTransformer(formats));
  };
  int (*command)(const Options&) = nullptr;
  auto add = [&](const std::string& name, const std::string& help, const std::string& what, int (*fn)(const Options&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub, what);
    sub->callback([&command, fn] { command = fn; });
    return sub;
  };
  add("cohomology", "Betti numbers of a manifest", "manifest file", cmd_cohomology);
  add("pd-check", "Poincaré duality between H* and H*_c", "manifest file", cmd_pd_check);
  add("refine", "manifest of the toric refinement of a fan", "fan file", cmd_refine);
  add("stokes", "compare the integrals of dω and ω over the boundary", "form file", cmd_stokes);
  add("pair", "integration pairing matrix of a chart", "chart file", cmd_pair)
      ->add_option("--degree", opt.degree, "cohomological degree j")
      ->required();
  add("orient", "orientation of a transverse fiber product", "map file", cmd_orient);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  try {
    return command(opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

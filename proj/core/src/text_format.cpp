#include "exdr/text_format.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "exdr/form_parser.hpp"
#include "exdr/linalg.hpp"

namespace exdr {

namespace {

// A piece of a line, remembering where it started.
struct Span {
  std::string_view text;
  int line = 0;
  int column = 1;  // in code points
};

int columns_in(std::string_view s) {
  int n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

Span sub(const Span& s, std::size_t pos, std::size_t len = std::string_view::npos) {
  pos = std::min(pos, s.text.size());
  return {s.text.substr(pos, len), s.line, s.column + columns_in(s.text.substr(0, pos))};
}

Span trim(const Span& s) {
  std::size_t b = 0, e = s.text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s.text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s.text[e - 1]))) --e;
  return sub(s, b, e - b);
}

class Reader {
 public:
  Reader(std::string_view text, std::string source) : source_(std::move(source)) {
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      ++number;
      std::string_view raw = text.substr(pos, end - pos);
      if (number == 1 && raw.substr(0, 3) == "\xEF\xBB\xBF") raw.remove_prefix(3);
      if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
      if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
      Span line = trim({raw, number, 1});
      if (!line.text.empty()) lines_.push_back(line);
      if (end == text.size()) break;
      pos = end + 1;
    }
  }

  const std::vector<Span>& lines() const { return lines_; }
  const std::string& source() const { return source_; }

  [[noreturn]] void fail(const Span& at, const std::string& msg) const {
    throw ParseError(source_, at.line, at.column, msg);
  }

  // "[kind rest]" -> (kind, rest)
  std::optional<std::pair<Span, Span>> section(const Span& line) const {
    if (line.text.front() != '[') return std::nullopt;
    if (line.text.back() != ']') fail(line, "unterminated section header");
    const Span inner = trim(sub(line, 1, line.text.size() - 2));
    const std::size_t space = inner.text.find_first_of(" \t");
    if (space == std::string_view::npos) return std::pair{inner, sub(inner, inner.text.size())};
    return std::pair{sub(inner, 0, space), trim(sub(inner, space))};
  }

  // "key = value" -> (key, value); nullopt for lines without a plain '='.
  static std::optional<std::pair<Span, Span>> key_value(const Span& line) {
    const std::size_t eq = line.text.find('=');
    if (eq == std::string_view::npos || (eq > 0 && (line.text[eq - 1] == '>' || line.text[eq - 1] == '<')))
      return std::nullopt;
    return std::pair{trim(sub(line, 0, eq)), trim(sub(line, eq + 1))};
  }

  // Whitespace/comma separated fields, with positions.
  static std::vector<Span> fields(const Span& s) {
    std::vector<Span> out;
    std::size_t i = 0;
    while (i < s.text.size()) {
      while (i < s.text.size() && (std::isspace(static_cast<unsigned char>(s.text[i])) || s.text[i] == ',' ||
                                   s.text[i] == '(' || s.text[i] == ')'))
        ++i;
      std::size_t j = i;
      while (j < s.text.size() && !std::isspace(static_cast<unsigned char>(s.text[j])) && s.text[j] != ',' &&
             s.text[j] != '(' && s.text[j] != ')')
        ++j;
      if (j > i) out.push_back(sub(s, i, j - i));
      i = j;
    }
    return out;
  }

  Rational rational(const Span& s) const {
    try {
      return parse_rational(s.text);
    } catch (const Error&) {
      fail(s, "expected a number, found '" + std::string(s.text) + "'");
    }
  }

  BigInt integer(const Span& s) const {
    const Rational q = rational(s);
    if (!is_integer(q)) fail(s, "expected an integer, found '" + std::string(s.text) + "'");
    return numerator(q);
  }

  std::size_t count(const Span& s) const {
    const BigInt z = integer(s);
    if (z < 0 || z > 64) fail(s, "expected a small nonnegative integer");
    return static_cast<std::size_t>(z.convert_to<long>());
  }

  std::vector<Span> split(const Span& s, char sep) const {
    std::vector<Span> out;
    std::size_t pos = 0;
    for (;;) {
      const std::size_t next = s.text.find(sep, pos);
      out.push_back(sub(s, pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
      if (next == std::string_view::npos) return out;
      pos = next + 1;
    }
  }

  // Rows separated by ';'. An empty value is a matrix with a zero dimension;
  // its shape comes from `shape` when known.
  QMatrix matrix(const Span& s, std::optional<std::pair<std::size_t, std::size_t>> shape) const {
    if (s.text.find_first_not_of(" \t;") == std::string_view::npos) {
      if (shape && (shape->first == 0 || shape->second == 0)) return QMatrix(shape->first, shape->second);
      if (shape) fail(s, "expected a " + std::to_string(shape->first) + "x" + std::to_string(shape->second) + " matrix");
      return QMatrix();
    }
    std::vector<std::vector<Rational>> rows;
    for (const Span& row : split(s, ';')) {
      std::vector<Rational> values;
      for (const Span& f : fields(row)) values.push_back(rational(f));
      if (!rows.empty() && values.size() != rows.front().size()) fail(row, "rows of different lengths");
      rows.push_back(std::move(values));
    }
    QMatrix out(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < rows[r].size(); ++c) out(r, c) = rows[r][c];
    if (shape && (out.rows() != shape->first || out.cols() != shape->second))
      fail(s, "expected a " + std::to_string(shape->first) + "x" + std::to_string(shape->second) + " matrix, found " +
                  std::to_string(out.rows()) + "x" + std::to_string(out.cols()));
    return out;
  }

 private:
  std::string source_;
  std::vector<Span> lines_;
};

// Keys shared by [chart] and [overlap] blocks.
struct Block {
  std::string kind;
  Span header;
  Span id;
  std::optional<std::size_t> n, m;
  Span n_at, m_at;
  std::vector<std::pair<Span, Span>> inequalities;  // (normal part, rhs part) with '>' or '>='
  std::vector<bool> open;
  std::vector<std::pair<Span, Span>> maps;           // (ids, rows)
  std::optional<bool> half_space;
};

bool absorb_chart_line(const Reader& rd, Block& b, const Span& line) {
  if (const std::size_t gt = line.text.find('>'); gt != std::string_view::npos) {
    const bool closed = gt + 1 < line.text.size() && line.text[gt + 1] == '=';
    b.inequalities.push_back({trim(sub(line, 0, gt)), trim(sub(line, gt + (closed ? 2 : 1)))});
    b.open.push_back(!closed);
    return true;
  }
  auto kv = Reader::key_value(line);
  if (!kv) return false;
  const auto& [key, value] = *kv;
  if (key.text == "n") {
    b.n = rd.count(value);
    b.n_at = value;
  } else if (key.text == "m") {
    b.m = rd.count(value);
    b.m_at = value;
  } else if (key.text.substr(0, 4) == "map ") {
    b.maps.push_back({trim(sub(key, 4)), value});
  } else if (key.text == "half_space") {
    if (value.text != "true" && value.text != "false") rd.fail(value, "expected true or false");
    b.half_space = value.text == "true";
  } else {
    return false;
  }
  return true;
}

ChartSignature block_signature(const Reader& rd, const Block& b) {
  if (!b.n) rd.fail(b.header, "missing key 'n'");
  if (!b.m) rd.fail(b.header, "missing key 'm'");
  std::vector<Inequality> ineqs;
  for (std::size_t i = 0; i < b.inequalities.size(); ++i) {
    const auto& [lhs, rhs] = b.inequalities[i];
    Inequality q;
    for (const Span& f : Reader::fields(lhs)) q.normal.push_back(rd.integer(f));
    if (q.normal.size() != *b.m)
      rd.fail(lhs, "inequality has " + std::to_string(q.normal.size()) + " coefficients, expected m = " +
                       std::to_string(*b.m));
    const auto rhs_fields = Reader::fields(rhs);
    if (rhs_fields.size() != 1) rd.fail(rhs, "expected one right-hand side");
    q.rhs = rd.rational(rhs_fields[0]);
    q.open = b.open[i];
    ineqs.push_back(std::move(q));
  }
  return ChartSignature(*b.n, *b.m, Polytope(*b.m, std::move(ineqs)));
}

IdSet parse_ids(const Reader& rd, const Span& s) {
  IdSet ids;
  for (const Span& part : rd.split(s, ',')) {
    const Span id = trim(part);
    if (id.text.empty()) rd.fail(part, "empty chart id");
    if (id.text.find_first_of(" \t[]=") != std::string_view::npos) rd.fail(id, "malformed chart id");
    ids.emplace_back(id.text);
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) rd.fail(s, "repeated chart id");
  return ids;
}

IntMatrix integral(const Reader& rd, const Span& at, const QMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!is_integer(m(r, c))) rd.fail(at, "exponent matrices must be integral");
      out(r, c) = numerator(m(r, c));
    }
  return out;
}

std::string format_rows(const IntMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return "";
  std::ostringstream os;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) os << "; ";
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c);
  }
  return os.str();
}

std::string join(const IdSet& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? "," : "") + ids[i];
  return out;
}

void print_signature(std::ostream& os, const ChartSignature& sig) {
  os << "n = " << sig.n << "\nm = " << sig.m << "\n";
  for (const auto& q : sig.polytope.inequalities()) {
    for (std::size_t i = 0; i < q.normal.size(); ++i) os << (i ? " " : "") << q.normal[i];
    os << (q.normal.empty() ? "" : " ") << (q.open ? "> " : ">= ") << to_string(q.rhs) << "\n";
  }
}

}  // namespace

CoverManifest parse_manifest(std::string_view text, const std::string& source) {
  Reader rd(text, source);
  if (rd.lines().empty()) throw ParseError(source, 1, 1, "empty manifest: no [chart] sections");
  CoverManifest out;
  std::vector<Block> charts, overlaps;
  Block* current = nullptr;
  bool in_meta = false;
  for (const Span& line : rd.lines()) {
    if (auto sec = rd.section(line)) {
      const auto& [kind, rest] = *sec;
      in_meta = false;
      current = nullptr;
      if (kind.text == "meta") {
        in_meta = true;
      } else if (kind.text == "chart" || kind.text == "overlap") {
        if (rest.text.empty()) rd.fail(line, "section [" + std::string(kind.text) + "] needs an id");
        auto& list = kind.text == "chart" ? charts : overlaps;
        list.push_back({});
        current = &list.back();
        current->kind = std::string(kind.text);
        current->header = line;
        current->id = rest;
      } else {
        rd.fail(kind, "unknown section '" + std::string(kind.text) + "'");
      }
      continue;
    }
    if (in_meta) {
      auto kv = Reader::key_value(line);
      if (!kv) rd.fail(line, "expected 'key = value'");
      const auto& [key, value] = *kv;
      if (key.text == "gluing_class") {
        auto g = parse_gluing_class(value.text);
        if (!g) rd.fail(value, "unknown gluing class '" + std::string(value.text) + "'");
        out.gluing = *g;
      } else if (key.text == "orientation") {
        if (value.text != "oriented" && value.text != "unoriented")
          rd.fail(value, "orientation must be 'oriented' or 'unoriented'");
        out.oriented = value.text == "oriented";
      } else {
        rd.fail(key, "unknown key '" + std::string(key.text) + "' in [meta]");
      }
      continue;
    }
    if (!current) rd.fail(line, "text outside of any section");
    if (!absorb_chart_line(rd, *current, line) || current->half_space)
      rd.fail(line, "unrecognized line in [" + current->kind + "]");
  }
  if (charts.empty()) throw ParseError(source, rd.lines().front().line, 1, "manifest has no [chart] sections");

  for (const Block& b : charts) {
    const IdSet ids = parse_ids(rd, b.id);
    if (ids.size() != 1) rd.fail(b.id, "a chart has a single id");
    if (!b.maps.empty()) rd.fail(b.maps.front().first, "maps belong to [overlap] sections");
    if (out.charts.count(ids[0])) rd.fail(b.id, "duplicate chart '" + ids[0] + "'");
    out.charts[ids[0]] = block_signature(rd, b);
  }
  for (const Block& b : overlaps) {
    const IdSet ids = parse_ids(rd, b.id);
    if (ids.size() < 2) rd.fail(b.id, "an overlap lists at least two charts");
    if (out.overlaps.count(ids)) rd.fail(b.id, "duplicate overlap '" + join(ids) + "'");
    Overlap ov;
    ov.signature = block_signature(rd, b);
    for (const auto& [who, rows] : b.maps) {
      const IdSet from = parse_ids(rd, who);
      std::optional<std::pair<std::size_t, std::size_t>> shape;
      if (from.size() == 1) {
        if (auto it = out.charts.find(from[0]); it != out.charts.end()) shape = {{it->second.m, ov.signature.m}};
      } else {
        auto it = std::find_if(overlaps.begin(), overlaps.end(), [&](const Block& o) { return parse_ids(rd, o.id) == from; });
        if (it != overlaps.end() && it->m) shape = {{*it->m, ov.signature.m}};
      }
      const IntMatrix m = integral(rd, rows, rd.matrix(rows, shape));
      if (from.size() == 1) {
        if (!ov.maps.emplace(from[0], m).second) rd.fail(who, "duplicate map for '" + from[0] + "'");
      } else if (!ov.sub_maps.emplace(from, m).second) {
        rd.fail(who, "duplicate map for '" + join(from) + "'");
      }
    }
    out.overlaps[ids] = std::move(ov);
  }
  return out;
}

std::string print_manifest(const CoverManifest& manifest) {
  std::ostringstream os;
  os << "[meta]\ngluing_class = " << to_string(manifest.gluing)
     << "\norientation = " << (manifest.oriented ? "oriented" : "unoriented") << "\n";
  for (const auto& [id, sig] : manifest.charts) {
    os << "\n[chart " << id << "]\n";
    print_signature(os, sig);
  }
  for (const auto& [ids, ov] : manifest.overlaps) {
    os << "\n[overlap " << join(ids) << "]\n";
    print_signature(os, ov.signature);
    for (const auto& [id, m] : ov.maps) os << "map " << id << " = " << format_rows(m) << "\n";
    for (const auto& [sub_ids, m] : ov.sub_maps) os << "map " << join(sub_ids) << " = " << format_rows(m) << "\n";
  }
  return os.str();
}

Fan parse_fan(std::string_view text, const std::string& source) {
  Reader rd(text, source);
  if (rd.lines().empty()) throw ParseError(source, 1, 1, "empty fan file");
  std::vector<std::vector<IntVector>> cones;
  std::optional<std::size_t> dim;
  for (const Span& line : rd.lines()) {
    if (line.text.substr(0, 5) != "cone:") rd.fail(line, "expected 'cone: v1; v2; ...'");
    std::vector<IntVector> gens;
    for (const Span& part : rd.split(sub(line, 5), ';')) {
      const auto fields = Reader::fields(part);
      if (fields.empty()) rd.fail(part, "empty generator");
      IntVector v;
      for (const Span& f : fields) v.push_back(rd.integer(f));
      if (!dim) dim = v.size();
      if (v.size() != *dim)
        rd.fail(part, "generator of length " + std::to_string(v.size()) + ", expected " + std::to_string(*dim));
      gens.push_back(std::move(v));
    }
    cones.push_back(std::move(gens));
  }
  return Fan(*dim, cones);
}

namespace {

ChartDocument chart_from(const Reader& rd, const Block& b) {
  return {block_signature(rd, b), b.half_space.value_or(false)};
}

}  // namespace

ChartDocument parse_chart(std::string_view text, const std::string& source) {
  Reader rd(text, source);
  if (rd.lines().empty()) throw ParseError(source, 1, 1, "empty chart file");
  Block b;
  bool seen = false;
  for (const Span& line : rd.lines()) {
    if (auto sec = rd.section(line)) {
      if (sec->first.text != "chart" || seen) rd.fail(line, "expected a single [chart] section");
      seen = true;
      b.header = line;
      b.id = sec->second;
      continue;
    }
    if (!seen) rd.fail(line, "text outside of any section");
    if (!absorb_chart_line(rd, b, line) || !b.maps.empty()) rd.fail(line, "unrecognized line in [chart]");
  }
  if (!seen) rd.fail(rd.lines().front(), "missing [chart] section");
  return chart_from(rd, b);
}

FormDocument parse_form_document(std::string_view text, const std::string& source) {
  Reader rd(text, source);
  if (rd.lines().empty()) throw ParseError(source, 1, 1, "empty form file");
  Block b;
  bool seen_chart = false;
  std::optional<Span> omega, corner, form_header;
  enum { None, Chart, Form } where = None;
  for (const Span& line : rd.lines()) {
    if (auto sec = rd.section(line)) {
      if (sec->first.text == "chart" && !seen_chart) {
        seen_chart = true;
        where = Chart;
        b.header = line;
        b.id = sec->second;
      } else if (sec->first.text == "form" && !form_header) {
        form_header = line;
        where = Form;
      } else {
        rd.fail(line, "unexpected section");
      }
      continue;
    }
    if (where == None) rd.fail(line, "text outside of any section");
    if (where == Chart) {
      if (!absorb_chart_line(rd, b, line) || !b.maps.empty()) rd.fail(line, "unrecognized line in [chart]");
      continue;
    }
    auto kv = Reader::key_value(line);
    if (!kv) rd.fail(line, "expected 'key = value'");
    if (kv->first.text == "omega") omega = kv->second;
    else if (kv->first.text == "corner") corner = kv->second;
    else rd.fail(kv->first, "unknown key '" + std::string(kv->first.text) + "' in [form]");
  }
  if (!seen_chart) rd.fail(rd.lines().front(), "missing [chart] section");
  if (!omega) rd.fail(form_header.value_or(rd.lines().back()), "missing 'omega = ...'");
  FormDocument doc;
  doc.chart = chart_from(rd, b);
  const ChartCoordinates coords{doc.chart.signature.n, doc.chart.signature.m};
  doc.omega = parse_form(omega->text, coords, source, omega->line, omega->column);
  if (corner) {
    const std::size_t k = rd.count(*corner);
    if (k >= doc.chart.signature.polytope.vertices().size()) rd.fail(*corner, "corner index out of range");
    doc.omega.corner = k;
  }
  return doc;
}

MapDocument parse_maps(std::string_view text, const std::string& source) {
  Reader rd(text, source);
  if (rd.lines().empty()) throw ParseError(source, 1, 1, "empty map file");
  std::optional<Span> df, dg;
  std::optional<std::array<std::size_t, 3>> dims;
  for (const Span& line : rd.lines()) {
    auto kv = Reader::key_value(line);
    if (!kv) rd.fail(line, "expected 'key = value'");
    const auto& [key, value] = *kv;
    if (key.text == "df") df = value;
    else if (key.text == "dg") dg = value;
    else if (key.text == "dims") {
      const auto f = Reader::fields(value);
      if (f.size() != 3) rd.fail(value, "dims = <dim A> <dim B> <dim C>");
      dims = {rd.count(f[0]), rd.count(f[1]), rd.count(f[2])};
    } else {
      rd.fail(key, "unknown key '" + std::string(key.text) + "'");
    }
  }
  if (!df) rd.fail(rd.lines().front(), "missing 'df = ...'");
  if (!dg) rd.fail(rd.lines().front(), "missing 'dg = ...'");
  MapDocument doc;
  using Shape = std::optional<std::pair<std::size_t, std::size_t>>;
  doc.df = rd.matrix(*df, dims ? Shape{{(*dims)[2], (*dims)[0]}} : Shape{});
  doc.dg = rd.matrix(*dg, dims ? Shape{{(*dims)[2], (*dims)[1]}} : Shape{});
  if (doc.df.rows() != doc.dg.rows())
    rd.fail(*dg, "df and dg have different targets (" + std::to_string(doc.df.rows()) + " vs " +
                     std::to_string(doc.dg.rows()) + " rows)");
  return doc;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, 0, "cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace exdr

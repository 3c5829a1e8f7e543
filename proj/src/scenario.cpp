#include "algspray/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

namespace algspray {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ScenarioError("line " + std::to_string(line) + ": " + msg);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_ident(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

enum class Block { None, Algebroid, Spray, Section, Check, Sampling };

struct RawItem {
  int line;
  Block block;
  std::string section_name;            // for Block::Section
  std::string key;                     // identifier part
  std::vector<std::vector<int>> idx;   // bracket groups, 1-based as written
  bool quoted;
  std::string value;
};

long long to_int(const RawItem& it, std::string_view what) {
  const std::string_view s = it.value;
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    fail(it.line, std::string(what) + " must be an integer, got '" + it.value + "'");
  return v;
}

uint64_t to_uint64(const RawItem& it, std::string_view what) {
  const std::string_view s = it.value;
  uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    fail(it.line, std::string(what) + " must be a non-negative integer, got '" + it.value + "'");
  return v;
}

double to_double(const RawItem& it, std::string_view what) {
  const std::string_view s = it.value;
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    fail(it.line, std::string(what) + " must be a number, got '" + it.value + "'");
  return v;
}

void need_bare(const RawItem& it) {
  if (it.quoted) fail(it.line, "key '" + it.key + "' takes a bare number, not a quoted value");
}

void need_quoted(const RawItem& it) {
  if (!it.quoted)
    fail(it.line, "key '" + it.key + "' takes a quoted expression, e.g. " + it.key + " = \"x1\"");
}

void need_idx(const RawItem& it, std::initializer_list<int> shape) {
  bool ok = it.idx.size() == shape.size();
  if (ok) {
    auto s = shape.begin();
    for (const auto& g : it.idx) ok = ok && static_cast<int>(g.size()) == *s++;
  }
  if (!ok) fail(it.line, "malformed index brackets on key '" + it.key + "'");
}

ExprPtr parse_value_expr(const RawItem& it, int n, int m, bool base_only,
                         const std::string& display) {
  need_quoted(it);
  ExprPtr e;
  try {
    e = parse_expr(it.value, n, m);
  } catch (const ParseError& pe) {
    fail(it.line, display + ": " + pe.what());
  }
  if (base_only && e->uses_y())
    fail(it.line, display + " must not depend on fiber variables");
  return e;
}

std::string fmt_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

}  // namespace

uint64_t fnv1a64(std::string_view data) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

Scenario load_scenario_text(const std::string& text) {
  // pass 1: scan into raw items
  std::vector<RawItem> items;
  Block block = Block::None;
  std::string section_name;
  std::set<std::string> seen_sections;
  bool seen_algebroid = false, seen_spray = false, seen_check = false, seen_sampling = false;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    // cut comments outside quotes
    bool quote = false;
    size_t cut = raw.size();
    for (size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '"') quote = !quote;
      else if (raw[i] == '#' && !quote) { cut = i; break; }
    }
    const std::string_view line = trim(std::string_view(raw).substr(0, cut));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(lineno, "unterminated section header");
      const std::string_view head = trim(line.substr(1, line.size() - 2));
      if (head == "algebroid") {
        if (seen_algebroid) fail(lineno, "duplicate [algebroid] section");
        seen_algebroid = true;
        block = Block::Algebroid;
      } else if (head == "spray") {
        if (seen_spray) fail(lineno, "duplicate [spray] section");
        seen_spray = true;
        block = Block::Spray;
      } else if (head == "check") {
        if (seen_check) fail(lineno, "duplicate [check] section");
        seen_check = true;
        block = Block::Check;
      } else if (head == "sampling") {
        if (seen_sampling) fail(lineno, "duplicate [sampling] section");
        seen_sampling = true;
        block = Block::Sampling;
      } else if (head.substr(0, 8) == "section ") {
        const std::string name(trim(head.substr(8)));
        if (!is_ident(name)) fail(lineno, "invalid section name '" + name + "'");
        if (!seen_sections.insert(name).second)
          fail(lineno, "duplicate [section " + name + "]");
        block = Block::Section;
        section_name = name;
      } else {
        fail(lineno, "unknown section header [" + std::string(head) + "]");
      }
      continue;
    }

    const size_t eq = line.find('=');
    if (eq == std::string_view::npos) fail(lineno, "expected 'key = value'");
    if (block == Block::None) fail(lineno, "key outside any [section]");
    std::string_view key_part = trim(line.substr(0, eq));
    std::string_view val_part = trim(line.substr(eq + 1));

    RawItem it;
    it.line = lineno;
    it.block = block;
    it.section_name = section_name;

    // split key into identifier + bracket groups
    size_t kb = key_part.find('[');
    std::string_view ident = kb == std::string_view::npos ? key_part : trim(key_part.substr(0, kb));
    if (!is_ident(ident)) fail(lineno, "invalid key '" + std::string(key_part) + "'");
    it.key = std::string(ident);
    std::string_view rest = kb == std::string_view::npos ? std::string_view{} : key_part.substr(kb);
    while (!rest.empty()) {
      if (rest.front() != '[') fail(lineno, "malformed index brackets on key '" + it.key + "'");
      const size_t close = rest.find(']');
      if (close == std::string_view::npos)
        fail(lineno, "malformed index brackets on key '" + it.key + "'");
      std::string_view group = rest.substr(1, close - 1);
      std::vector<int> nums;
      while (true) {
        const size_t comma = group.find(',');
        const std::string_view tok = trim(comma == std::string_view::npos ? group : group.substr(0, comma));
        int v = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || p != tok.data() + tok.size() || v < 1)
          fail(lineno, "indices must be positive integers on key '" + it.key + "'");
        nums.push_back(v);
        if (comma == std::string_view::npos) break;
        group.remove_prefix(comma + 1);
      }
      it.idx.push_back(std::move(nums));
      rest.remove_prefix(close + 1);
      rest = trim(rest);
    }

    // value: quoted expression or bare token
    if (val_part.empty()) fail(lineno, "missing value for key '" + it.key + "'");
    if (val_part.front() == '"') {
      if (val_part.size() < 2 || val_part.back() != '"')
        fail(lineno, "unterminated quoted value");
      if (val_part.find('"', 1) != val_part.size() - 1)
        fail(lineno, "stray '\"' inside quoted value");
      it.quoted = true;
      it.value = std::string(val_part.substr(1, val_part.size() - 2));
    } else {
      if (val_part.find_first_of(" \t\"") != std::string_view::npos)
        fail(lineno, "bare value must be a single token, got '" + std::string(val_part) + "'");
      it.quoted = false;
      it.value = std::string(val_part);
    }
    items.push_back(std::move(it));
  }

  if (!seen_algebroid) throw ScenarioError("missing [algebroid] section");

  // pass 2a: dimensions first, everything else depends on them
  Scenario sc;
  bool have_n = false, have_m = false;
  for (const auto& it : items) {
    if (it.block != Block::Algebroid) continue;
    if (it.key == "n") {
      if (have_n) fail(it.line, "duplicate key 'n'");
      need_bare(it);
      need_idx(it, {});
      const long long v = to_int(it, "n");
      if (v < 0) fail(it.line, "n must be >= 0");
      sc.n = static_cast<int>(v);
      have_n = true;
    } else if (it.key == "m") {
      if (have_m) fail(it.line, "duplicate key 'm'");
      need_bare(it);
      need_idx(it, {});
      const long long v = to_int(it, "m");
      if (v < 1) fail(it.line, "m must be >= 1");
      sc.m = static_cast<int>(v);
      have_m = true;
    }
  }
  if (!have_n || !have_m) throw ScenarioError("[algebroid] must declare both n and m");

  const ExprPtr zero = parse_expr("0", sc.n, sc.m);
  sc.rho.assign(sc.n, std::vector<ExprPtr>(sc.m, zero));
  sc.spray.assign(sc.m, zero);

  // pass 2b: the rest, in file order
  std::set<std::pair<int, int>> rho_seen;
  std::set<std::tuple<int, int, int>> L_seen;
  std::set<int> S_seen;
  std::map<std::string, std::set<int>> comp_seen;
  std::set<std::pair<int, std::string>> check_seen;
  static const std::set<std::string> tol_keys = {
      "tol",          "structure_tol",    "spray_tol", "bracket_tol",
      "symmetry_tol", "collineation_tol", "dual_tol"};
  std::set<std::string> sampling_seen;

  for (const auto& it : items) {
    switch (it.block) {
      case Block::Algebroid: {
        if (it.key == "n" || it.key == "m") break;  // handled above
        if (it.key == "rho") {
          need_idx(it, {1, 1});
          const int i = it.idx[0][0], a = it.idx[1][0];
          if (i > sc.n || a > sc.m)
            fail(it.line, "rho[" + std::to_string(i) + "][" + std::to_string(a) +
                              "] out of range for n=" + std::to_string(sc.n) +
                              ", m=" + std::to_string(sc.m));
          if (!rho_seen.insert({i, a}).second)
            fail(it.line, "duplicate key 'rho[" + std::to_string(i) + "][" +
                              std::to_string(a) + "]'");
          sc.rho[i - 1][a - 1] = parse_value_expr(
              it, sc.n, sc.m, true,
              "rho[" + std::to_string(i) + "][" + std::to_string(a) + "]");
        } else if (it.key == "L") {
          need_idx(it, {1, 2});
          const int g = it.idx[0][0], a = it.idx[1][0], b = it.idx[1][1];
          const std::string disp = "L[" + std::to_string(g) + "][" + std::to_string(a) +
                                   "," + std::to_string(b) + "]";
          if (g > sc.m || a > sc.m || b > sc.m)
            fail(it.line, disp + " out of range for m=" + std::to_string(sc.m));
          if (a >= b)
            fail(it.line, disp + ": structure entries require alpha < beta; the other " +
                              "order is filled by antisymmetry");
          if (!L_seen.insert({g, a, b}).second) fail(it.line, "duplicate key '" + disp + "'");
          sc.L.push_back({g - 1, a - 1, b - 1, parse_value_expr(it, sc.n, sc.m, true, disp)});
        } else {
          fail(it.line, "unknown key '" + it.key + "' in [algebroid]");
        }
        break;
      }
      case Block::Spray: {
        if (it.key != "S") fail(it.line, "unknown key '" + it.key + "' in [spray]");
        need_idx(it, {1});
        const int a = it.idx[0][0];
        const std::string disp = "S[" + std::to_string(a) + "]";
        if (a > sc.m) fail(it.line, disp + " out of range for m=" + std::to_string(sc.m));
        if (!S_seen.insert(a).second) fail(it.line, "duplicate key '" + disp + "'");
        sc.spray[a - 1] = parse_value_expr(it, sc.n, sc.m, false, disp);
        break;
      }
      case Block::Section: {
        if (it.key != "comp")
          fail(it.line, "unknown key '" + it.key + "' in [section " + it.section_name + "]");
        need_idx(it, {1});
        const int a = it.idx[0][0];
        const std::string disp = "comp[" + std::to_string(a) + "]";
        if (a > sc.m) fail(it.line, disp + " out of range for m=" + std::to_string(sc.m));
        if (!comp_seen[it.section_name].insert(a).second)
          fail(it.line, "duplicate key '" + disp + "' in [section " + it.section_name + "]");
        auto& comps = sc.sections[it.section_name];
        comps.resize(sc.m, zero);
        comps[a - 1] = parse_value_expr(it, sc.n, sc.m, true,
                                        "[section " + it.section_name + "] " + disp);
        break;
      }
      case Block::Check: {
        need_idx(it, {});
        if (it.key == "lie_symmetry" || it.key == "collineation") {
          need_quoted(it);
          if (!is_ident(it.value))
            fail(it.line, "'" + it.value + "' is not a valid section name");
          const auto kind = it.key == "lie_symmetry" ? CheckRequest::Kind::LieSymmetry
                                                     : CheckRequest::Kind::Collineation;
          if (!check_seen.insert({static_cast<int>(kind), it.value}).second)
            fail(it.line, "duplicate check " + it.key + " = \"" + it.value + "\"");
          sc.checks.push_back({kind, it.value});
        } else if (tol_keys.count(it.key)) {
          need_bare(it);
          if (sc.tolerances.count(it.key)) fail(it.line, "duplicate key '" + it.key + "'");
          const double v = to_double(it, it.key);
          if (!(v > 0)) fail(it.line, it.key + " must be positive");
          sc.tolerances[it.key] = v;
        } else {
          fail(it.line, "unknown key '" + it.key + "' in [check]");
        }
        break;
      }
      case Block::Sampling: {
        need_idx(it, {});
        need_bare(it);
        if (!sampling_seen.insert(it.key).second)
          fail(it.line, "duplicate key '" + it.key + "'");
        if (it.key == "points") {
          const long long v = to_int(it, "points");
          if (v < 1) fail(it.line, "points must be >= 1");
          sc.sampling.points = static_cast<int>(v);
        } else if (it.key == "seed") {
          sc.sampling.seed = to_uint64(it, "seed");
        } else if (it.key == "x_range") {
          const double v = to_double(it, "x_range");
          if (!(v > 0)) fail(it.line, "x_range must be positive");
          sc.sampling.x_range = v;
        } else if (it.key == "y_min") {
          const double v = to_double(it, "y_min");
          if (!(v > 0)) fail(it.line, "y_min must be positive");
          sc.sampling.y_abs_min = v;
        } else if (it.key == "y_max") {
          const double v = to_double(it, "y_max");
          if (!(v > 0)) fail(it.line, "y_max must be positive");
          sc.sampling.y_abs_max = v;
        } else {
          fail(it.line, "unknown key '" + it.key + "' in [sampling]");
        }
        break;
      }
      case Block::None: break;  // unreachable, rejected in pass 1
    }
  }

  if (!(sc.sampling.y_abs_min < sc.sampling.y_abs_max))
    throw ScenarioError("[sampling] requires y_min < y_max");
  for (const auto& name : seen_sections) {
    auto& comps = sc.sections[name];  // headers without comp keys mean the zero section
    comps.resize(sc.m, zero);
  }
  for (const auto& c : sc.checks) {
    if (!sc.sections.count(c.section))
      throw ScenarioError("check references undeclared section '" + c.section + "'");
  }

  std::sort(sc.L.begin(), sc.L.end(), [](const Scenario::LEntry& a, const Scenario::LEntry& b) {
    return std::tie(a.gamma, a.alpha, a.beta) < std::tie(b.gamma, b.alpha, b.beta);
  });
  return sc;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ScenarioError("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  try {
    return load_scenario_text(buf.str());
  } catch (const ScenarioError& e) {
    throw ScenarioError(path + ": " + e.what());
  }
}

AlgebroidStructure Scenario::build_algebroid() const {
  std::vector<std::vector<ScalarField>> rho_f;
  rho_f.reserve(rho.size());
  for (const auto& row : rho) {
    std::vector<ScalarField> r;
    r.reserve(row.size());
    for (const auto& e : row) r.push_back(ScalarField::from_expr(n, m, e));
    rho_f.push_back(std::move(r));
  }
  std::vector<AlgebroidStructure::UpperEntry> entries;
  entries.reserve(L.size());
  for (const auto& e : L)
    entries.push_back({e.gamma, e.alpha, e.beta, ScalarField::from_expr(n, m, e.value)});
  return AlgebroidStructure(n, m, std::move(rho_f), entries);
}

Spray Scenario::build_spray() const {
  Spray s;
  s.coeff.reserve(spray.size());
  for (const auto& e : spray) s.coeff.push_back(ScalarField::from_expr(n, m, e));
  return s;
}

BaseSection Scenario::build_section(const std::string& name) const {
  const auto it = sections.find(name);
  if (it == sections.end()) throw ScenarioError("unknown section '" + name + "'");
  BaseSection s;
  s.comp.reserve(it->second.size());
  for (const auto& e : it->second) s.comp.push_back(ScalarField::from_expr(n, m, e));
  return s;
}

std::string Scenario::canonical_text() const {
  std::ostringstream out;
  out << "n=" << n << "\nm=" << m << "\n";
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < m; ++a)
      out << "rho[" << i + 1 << "][" << a + 1 << "]=" << rho[i][a]->print() << "\n";
  for (const auto& e : L)
    out << "L[" << e.gamma + 1 << "][" << e.alpha + 1 << "," << e.beta + 1
        << "]=" << e.value->print() << "\n";
  for (int a = 0; a < m; ++a) out << "S[" << a + 1 << "]=" << spray[a]->print() << "\n";
  for (const auto& [name, comps] : sections) {
    out << "section " << name << "\n";
    for (size_t a = 0; a < comps.size(); ++a)
      out << "comp[" << a + 1 << "]=" << comps[a]->print() << "\n";
  }
  std::vector<CheckRequest> cs = checks;
  std::sort(cs.begin(), cs.end(), [](const CheckRequest& a, const CheckRequest& b) {
    return std::tie(a.kind, a.section) < std::tie(b.kind, b.section);
  });
  for (const auto& c : cs)
    out << "check "
        << (c.kind == CheckRequest::Kind::LieSymmetry ? "lie_symmetry" : "collineation") << " "
        << c.section << "\n";
  for (const auto& [k, v] : tolerances) out << "tol " << k << "=" << fmt_double(v) << "\n";
  out << "sampling points=" << sampling.points << " seed=" << sampling.seed
      << " x_range=" << fmt_double(sampling.x_range) << " y_min=" << fmt_double(sampling.y_abs_min)
      << " y_max=" << fmt_double(sampling.y_abs_max) << "\n";
  return out.str();
}

std::string Scenario::digest() const {
  const uint64_t h = fnv1a64(canonical_text());
  char buf[17];
  for (int i = 0; i < 16; ++i) buf[i] = "0123456789abcdef"[(h >> (60 - 4 * i)) & 0xf];
  buf[16] = '\0';
  return std::string("fnv1a64:") + buf;
}

}  // namespace algspray

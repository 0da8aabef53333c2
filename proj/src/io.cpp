#include "lgh/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace lgh {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

// Non-empty lines with surrounding whitespace removed.
std::vector<std::string> content_lines(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    std::string t = trim(line);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

long long to_integer(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("invalid integer for " + what + ": '" + s + "'");
  }
}

double to_real(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("invalid number for " + what + ": '" + s + "'");
  }
}

GroupKind kind_of(const std::string& label) {
  try {
    return parse_kind(label);
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
}

int default_trunc(GroupKind kind) {
  switch (kind) {
    case GroupKind::Trivial: return 0;
    case GroupKind::Circle: return kDefaultCircleTrunc;
    case GroupKind::SU2: return kDefaultTwoEll;
  }
  return 0;
}

// Local row index of a file eigenvalue index, or -1 when out of range.
int local_index(GroupKind kind, Index rep, long long two_m) {
  if (kind != GroupKind::SU2) return two_m == 0 ? 0 : -1;
  if (std::abs(two_m) > rep || (two_m + rep) % 2 != 0) return -1;
  return static_cast<int>((two_m + rep) / 2);
}

std::string describe_factor_grid(const FactorGrid& g) {
  switch (g.kind()) {
    case GroupKind::Trivial: return "TRIV 1";
    case GroupKind::Circle: return "T1 " + std::to_string(g.n_points());
    case GroupKind::SU2:
      return "SU2 " + std::to_string(g.n_phi()) + " " + std::to_string(g.n_theta()) + " " + std::to_string(g.n_psi());
  }
  return "";
}

FactorGrid parse_factor_grid(const std::vector<std::string>& t, const std::string& tag) {
  if (t.size() < 3 || t[0] != tag) throw ParseError("expected '" + tag + " <kind> <sizes>'");
  const GroupKind kind = kind_of(t[1]);
  auto size_at = [&](std::size_t i) {
    const long long v = to_integer(t.at(i), tag + " size");
    if (v < 1 || v > 100000) throw ParseError(tag + " size out of range");
    return static_cast<int>(v);
  };
  switch (kind) {
    case GroupKind::Trivial:
      if (t.size() != 3 || size_at(2) != 1) throw ParseError(tag + ": trivial grid has one node");
      return FactorGrid::trivial();
    case GroupKind::Circle:
      if (t.size() != 3) throw ParseError(tag + ": circle grid takes one size");
      return FactorGrid::circle(size_at(2));
    case GroupKind::SU2:
      if (t.size() != 5) throw ParseError(tag + ": SU2 grid takes n_phi n_theta n_psi");
      return FactorGrid::su2(size_at(2), size_at(3), size_at(4));
  }
  throw ParseError("unreachable grid kind");
}

ScalarConstant scalar_value(const std::string& v, const std::string& key) {
  try {
    return parse_scalar(v);
  } catch (const std::exception& e) {
    throw ParseError("key '" + key + "': " + e.what());
  }
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string coef_to_string(const FourierTable& table, double drop_below) {
  const ProductGroup& g = table.group();
  std::string out = "LGH-COEF v1\n";
  out += "FACTOR1 " + std::string(kind_label(g.factor1.kind)) + " " + std::to_string(g.factor1.trunc) + "\n";
  out += "FACTOR2 " + std::string(kind_label(g.factor2.kind)) + " " + std::to_string(g.factor2.trunc) + "\n";
  for (const auto& [key, b] : table.blocks())
    for (int m = 0; m < b.d1; ++m)
      for (int n = 0; n < b.d1; ++n)
        for (int r = 0; r < b.d2; ++r)
          for (int s = 0; s < b.d2; ++s) {
            const cplx v = b.at(m, n, r, s);
            if (v == cplx(0.0) || std::abs(v) <= drop_below) continue;
            out += index_to_string(key.xi) + " " + std::to_string(file_two_m(g.factor1.kind, key.xi, m)) + " " +
                   std::to_string(file_two_m(g.factor1.kind, key.xi, n)) + " " + index_to_string(key.eta) + " " +
                   std::to_string(file_two_m(g.factor2.kind, key.eta, r)) + " " +
                   std::to_string(file_two_m(g.factor2.kind, key.eta, s)) + " " + format_double(v.real()) + " " +
                   format_double(v.imag()) + "\n";
          }
  return out;
}

FourierTable parse_coef(std::string_view text) {
  const std::vector<std::string> lines = content_lines(text);
  if (lines.size() < 3 || lines[0] != "LGH-COEF v1") throw ParseError("missing 'LGH-COEF v1' header");
  ProductGroup g;
  for (int f = 1; f <= 2; ++f) {
    const std::vector<std::string> t = tokens(lines[f]);
    const std::string tag = "FACTOR" + std::to_string(f);
    if (t.size() != 3 || t[0] != tag) throw ParseError("expected '" + tag + " <kind> <trunc>'");
    Factor& fac = f == 1 ? g.factor1 : g.factor2;
    fac.kind = kind_of(t[1]);
    const long long trunc = to_integer(t[2], tag + " truncation");
    if (trunc < 0 || trunc > 1000000) throw ParseError(tag + " truncation out of range");
    fac.trunc = static_cast<int>(trunc);
    if (fac.kind == GroupKind::Trivial && fac.trunc != 0) throw ParseError(tag + ": trivial factor has truncation 0");
    if (fac.kind == GroupKind::SU2 && fac.trunc > kMaxTwoEll)
      throw ParseError(tag + ": SU2 truncation exceeds " + std::to_string(kMaxTwoEll));
  }
  FourierTable table(g);
  for (std::size_t i = 3; i < lines.size(); ++i) {
    const std::vector<std::string> t = tokens(lines[i]);
    const std::string where = "coefficient line " + std::to_string(i + 1);
    if (t.size() != 8) throw ParseError(where + ": expected 8 fields");
    const Index xi = to_integer(t[0], where), eta = to_integer(t[3], where);
    for (const auto& [fac, rep] : {std::pair{g.factor1, xi}, std::pair{g.factor2, eta}}) {
      const bool inside = fac.kind == GroupKind::Trivial ? rep == 0
                          : fac.kind == GroupKind::Circle ? std::abs(rep) <= fac.trunc
                                                          : rep >= 0 && rep <= fac.trunc;
      if (!inside) throw ParseError(where + ": representation outside the truncation");
    }
    const int m = local_index(g.factor1.kind, xi, to_integer(t[1], where));
    const int n = local_index(g.factor1.kind, xi, to_integer(t[2], where));
    const int r = local_index(g.factor2.kind, eta, to_integer(t[4], where));
    const int s = local_index(g.factor2.kind, eta, to_integer(t[5], where));
    if (m < 0 || n < 0 || r < 0 || s < 0) throw ParseError(where + ": eigenvalue index out of range");
    table.set({xi, eta}, m, n, r, s, cplx(to_real(t[6], where), to_real(t[7], where)));
  }
  return table;
}

std::string grid_to_string(const GridFunction& f) {
  std::string out = "LGH-GRID v1\n";
  out += "GRID1 " + describe_factor_grid(f.grid.grid1) + "\n";
  out += "GRID2 " + describe_factor_grid(f.grid.grid2) + "\n";
  for (const cplx& v : f.values) out += format_double(v.real()) + " " + format_double(v.imag()) + "\n";
  return out;
}

GridFunction parse_grid(std::string_view text) {
  const std::vector<std::string> lines = content_lines(text);
  if (lines.size() < 3 || lines[0] != "LGH-GRID v1") throw ParseError("missing 'LGH-GRID v1' header");
  const ProductGrid grid{parse_factor_grid(tokens(lines[1]), "GRID1"), parse_factor_grid(tokens(lines[2]), "GRID2")};
  GridFunction f = GridFunction::zeros(grid);
  if (lines.size() - 3 != f.values.size())
    throw ParseError("grid file has " + std::to_string(lines.size() - 3) + " samples, expected " +
                     std::to_string(f.values.size()));
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const std::vector<std::string> t = tokens(lines[i + 3]);
    const std::string where = "sample line " + std::to_string(i + 4);
    if (t.size() != 2) throw ParseError(where + ": expected 're im'");
    f.values[i] = cplx(to_real(t[0], where), to_real(t[1], where));
  }
  return f;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

FourierTable read_coef_file(const std::filesystem::path& path) { return parse_coef(read_text_file(path)); }
GridFunction read_grid_file(const std::filesystem::path& path) { return parse_grid(read_text_file(path)); }

bool has_grid_header(std::string_view text) {
  const std::vector<std::string> lines = content_lines(text.substr(0, 64));
  return !lines.empty() && lines[0] == "LGH-GRID v1";
}

OperatorSpec parse_spec(std::string_view text, const std::filesystem::path& base_dir, const TruncationOverride& over) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError("spec line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(std::string_view(t).substr(0, eq)), value = trim(std::string_view(t).substr(eq + 1));
    static const char* const known[] = {"factor1", "factor2", "trunc1", "trunc2", "a", "q", "q0", "A", "Q"};
    if (std::find(std::begin(known), std::end(known), key) == std::end(known))
      throw ParseError("spec line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (value.empty()) throw ParseError("spec line " + std::to_string(lineno) + ": empty value for '" + key + "'");
    if (!kv.emplace(key, value).second) throw ParseError("duplicate key '" + key + "'");
  }
  for (const char* required : {"factor1", "factor2"})
    if (!kv.count(required)) throw ParseError(std::string("missing key '") + required + "'");

  OperatorSpec spec;
  spec.group.factor1.kind = kind_of(kv["factor1"]);
  spec.group.factor2.kind = kind_of(kv["factor2"]);
  auto trunc_for = [&](const Factor& f, const char* key, const std::optional<int>& flag) {
    if (f.kind == GroupKind::Trivial) return 0;
    if (flag) return *flag;
    if (kv.count(key)) return static_cast<int>(to_integer(kv[key], key));
    return default_trunc(f.kind);
  };
  spec.group.factor1.trunc = trunc_for(spec.group.factor1, "trunc1", over.trunc1);
  spec.group.factor2.trunc = trunc_for(spec.group.factor2, "trunc2", over.trunc2);

  auto grid_field = [&](const std::string& value, const std::string& key) {
    const std::string prefix = "gridfile:";
    if (value.rfind(prefix, 0) != 0) throw ParseError("key '" + key + "' expects gridfile:PATH");
    const std::string rel = value.substr(prefix.size());
    try {
      return FieldFunction::from_samples(read_grid_file(base_dir / rel), spec.group, value);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError("key '" + key + "': " + e.what());
    }
  };

  try {
    if (kv.count("a")) {
      const std::string& a = kv["a"];
      if (a.rfind("trigpoly:", 0) == 0) {
        const TrigPoly p = parse_trigpoly(a);
        if (p.is_constant())
          spec.a = p.mean();
        else
          spec.a_var = p;
      } else {
        spec.a = scalar_value(a, "a");
      }
    }
    if (kv.count("q")) {
      const std::string& q = kv["q"];
      if (q.rfind("gridfile:", 0) == 0)
        spec.q_func = grid_field(q, "q");
      else
        spec.q = scalar_value(q, "q");
    }
    if (kv.count("q0")) spec.q0 = scalar_value(kv["q0"], "q0");
    if (kv.count("A")) spec.A = parse_trigpoly(kv["A"]);
    if (kv.count("Q")) spec.Q = grid_field(kv["Q"], "Q");
    spec.validate();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
  return spec;
}

OperatorSpec read_spec_file(const std::filesystem::path& path, const TruncationOverride& over) {
  return parse_spec(read_text_file(path), path.parent_path(), over);
}

}  // namespace lgh

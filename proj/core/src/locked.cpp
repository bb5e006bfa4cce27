#include "gbs/locked.hpp"

#include <fstream>
#include <sstream>

namespace gbs {

FiniteTable make_table(std::vector<std::vector<int>> mul, std::vector<std::string> names) {
  const int n = static_cast<int>(mul.size());
  if (n == 0) throw Error("empty multiplication table");
  for (const auto& row : mul) {
    if (static_cast<int>(row.size()) != n) throw Error("multiplication table is not square");
    for (const int x : row)
      if (x < 0 || x >= n) throw Error("table entry outside the group");
  }
  if (names.empty())
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  if (static_cast<int>(names.size()) != n) throw Error("element names do not match the table size");

  FiniteTable t{std::move(names), std::move(mul), -1, {}};
  for (int e = 0; e < n && t.identity < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = t(e, x) == x && t(x, e) == x;
    if (ok) t.identity = e;
  }
  if (t.identity < 0) throw Error("table has no identity");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (t(t(x, y), z) != t(x, t(y, z)))
          throw Error("table is not associative at (" + t.names[x] + ", " + t.names[y] + ", " + t.names[z] + ")");
  t.inverse.assign(static_cast<std::size_t>(n), -1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y)
      if (t(x, y) == t.identity && t(y, x) == t.identity) t.inverse[x] = y;
    if (t.inverse[x] < 0) throw Error("element " + t.names[x] + " has no inverse");
  }
  return t;
}

FiniteTable cyclic_product_table(const std::vector<int>& orders) {
  int n = 1;
  for (const int o : orders) {
    if (o < 1) throw Error("cyclic factor order must be positive");
    n *= o;
  }
  auto digits = [&](int x) {
    std::vector<int> d;
    for (const int o : orders) {
      d.push_back(x % o);
      x /= o;
    }
    return d;
  };
  std::vector<std::vector<int>> mul(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const auto dx = digits(x), dy = digits(y);
      int z = 0, scale = 1;
      for (std::size_t k = 0; k < orders.size(); ++k) {
        z += ((dx[k] + dy[k]) % orders[k]) * scale;
        scale *= orders[k];
      }
      mul[x][y] = z;
    }
  return make_table(std::move(mul));
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

}  // namespace

QuotientSpec parse_quotient(std::istream& in) {
  QuotientSpec spec;
  std::vector<std::string> names;
  std::vector<std::vector<int>> rows;
  bool in_table = false, have_phi = false;
  int lineno = 0;
  auto element = [&](const std::string& name, int line) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<int>(i);
    throw ParseError("unknown element '" + name + "'", line);
  };
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      if (!in_table) throw ParseError("expected 'key: value'", lineno);
      std::vector<int> row;
      for (const auto& tok : split_ws(line)) row.push_back(element(tok, lineno));
      if (row.size() != names.size()) throw ParseError("table row has the wrong length", lineno);
      rows.push_back(std::move(row));
      continue;
    }
    in_table = false;
    const std::string key = trim(std::string_view(line).substr(0, colon));
    const std::string value = trim(std::string_view(line).substr(colon + 1));
    if (key == "group") {
      spec.group = value;
    } else if (key == "elements") {
      names = split_ws(value);
      if (names.empty()) throw ParseError("no elements", lineno);
    } else if (key == "table") {
      if (names.empty()) throw ParseError("table before elements", lineno);
      in_table = true;
    } else if (key == "phi") {
      have_phi = true;
      for (const auto& tok : split_ws(value)) {
        const auto eq = tok.find('=');
        if (eq != 1) throw ParseError("expected generator=element, got '" + tok + "'", lineno);
        if (!spec.images.emplace(tok[0], element(tok.substr(2), lineno)).second)
          throw ParseError(std::string("generator ") + tok[0] + " mapped twice", lineno);
      }
    } else if (key == "ngens") {
      spec.n_generators = split_ws(value);
    } else {
      throw ParseError("unknown key '" + key + "'", lineno);
    }
  }
  if (spec.group.empty()) throw ParseError("missing 'group:'");
  if (names.empty()) throw ParseError("missing 'elements:'");
  if (rows.size() != names.size()) throw ParseError("table needs one row per element");
  if (!have_phi) throw ParseError("missing 'phi:'");
  spec.table = make_table(std::move(rows), std::move(names));
  return spec;
}

QuotientSpec parse_quotient_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_quotient(in);
}

QuotientSpec load_quotient(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return parse_quotient(in);
}

}  // namespace gbs

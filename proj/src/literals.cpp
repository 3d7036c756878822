#include "affhur/literals.hpp"

#include <cctype>
#include <charconv>

#include "affhur/error.hpp"

namespace affhur {

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::int64_t parse_int(std::string_view text) {
  const std::string s = trim(text);
  std::int64_t v = 0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  if (!s.empty() && *b == '+') ++b;
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (s.empty() || ec != std::errc() || ptr != e) throw ParseError("not an integer: '" + s + "'");
  return v;
}

IntVector parse_coords(const RootSystem& rs, std::string_view text) {
  IntVector v;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t comma = text.find(',', pos);
    v.push_back(parse_int(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (v.size() != rs.rank())
    throw ParseError("expected " + std::to_string(rs.rank()) + " coordinates in '" + std::string(text) + "'");
  return v;
}

const std::string& as_string(const Json& j) {
  if (!j.is_string()) throw ParseError("expected a string literal, got " + j.dump());
  return j.get_ref<const std::string&>();
}

}  // namespace

GroupSpec parse_group(std::string_view text) {
  GroupSpec g;
  std::string s = trim(text);
  std::string lower;
  for (char c : s) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower.rfind("affine:", 0) == 0) {
    g.affine = true;
    s = s.substr(7);
  }
  g.type = parse_cartan_type(s);
  return g;
}

RootId parse_root(const RootSystem& rs, std::string_view text) {
  const Root r{parse_coords(rs, text)};
  auto id = rs.find(r);
  if (!id) throw ParseError("not a root: '" + std::string(text) + "'");
  return *id;
}

AffineReflection parse_affine_reflection(const RootSystem& rs, std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("affine reflection needs 'root:level': '" + std::string(text) + "'");
  return make_reflection(rs, parse_root(rs, text.substr(0, colon)), parse_int(text.substr(colon + 1)));
}

std::string format_root(const RootSystem& rs, RootId id) {
  std::string s;
  for (auto c : rs.root(id).coords) {
    if (!s.empty()) s += ',';
    s += std::to_string(c);
  }
  return s;
}

std::string format_affine_reflection(const RootSystem& rs, const AffineReflection& r) {
  return format_root(rs, r.root) + ":" + std::to_string(r.level);
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

FiniteTuple finite_tuple_from_json(const RootSystem& rs, const Json& j) {
  if (!j.is_array()) throw ParseError("a tuple must be a JSON list of literals");
  FiniteTuple t;
  for (const auto& e : j) t.push_back(rs.canonical(parse_root(rs, as_string(e))));
  return t;
}

AffineTuple affine_tuple_from_json(const RootSystem& rs, const Json& j) {
  if (!j.is_array()) throw ParseError("a tuple must be a JSON list of literals");
  AffineTuple t;
  for (const auto& e : j) t.push_back(parse_affine_reflection(rs, as_string(e)));
  return t;
}

Json to_json(const RootSystem& rs, const FiniteTuple& t) {
  Json j = Json::array();
  for (auto id : t) j.push_back(format_root(rs, id));
  return j;
}

Json to_json(const RootSystem& rs, const AffineTuple& t) {
  Json j = Json::array();
  for (const auto& r : t) j.push_back(format_affine_reflection(rs, r));
  return j;
}

namespace {

IntMatrix matrix_from_json(const Json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) throw ParseError("finite_matrix must have " + std::to_string(n) + " rows");
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n) throw ParseError("finite_matrix row has the wrong length");
    for (std::size_t k = 0; k < n; ++k) {
      if (!j[i][k].is_number_integer()) throw ParseError("finite_matrix entries must be integers");
      m(i, k) = j[i][k].get<std::int64_t>();
    }
  }
  return m;
}

}  // namespace

FiniteWeylElement finite_element_from_json(const RootSystem& rs, const Json& j) {
  if (j.is_object()) {
    if (!j.contains("finite_matrix")) throw ParseError("element object needs finite_matrix");
    try {
      return FiniteWeylElement::from_matrix(rs, matrix_from_json(j["finite_matrix"], rs.rank()));
    } catch (const DomainError& e) {
      throw ParseError(e.what());
    }
  }
  const FiniteWeylGroup g(rs);
  return g.product(finite_tuple_from_json(rs, j));
}

AffineWeylElement affine_element_from_json(const RootSystem& rs, const Json& j) {
  if (j.is_object()) {
    if (!j.contains("finite_matrix") || !j.contains("translation"))
      throw ParseError("element object needs finite_matrix and translation");
    const auto& t = j["translation"];
    if (!t.is_array() || t.size() != rs.rank()) throw ParseError("translation has the wrong length");
    IntVector lam;
    for (const auto& x : t) {
      if (!x.is_number_integer()) throw ParseError("translation entries must be integers");
      lam.push_back(x.get<std::int64_t>());
    }
    try {
      return {FiniteWeylElement::from_matrix(rs, matrix_from_json(j["finite_matrix"], rs.rank())), lam};
    } catch (const DomainError& e) {
      throw ParseError(e.what());
    }
  }
  return product(rs, affine_tuple_from_json(rs, j));
}

Json to_json(const FiniteWeylElement& w) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < w.rank(); ++i) {
    auto r = w.matrix().row(i);
    rows.push_back(IntVector(r.begin(), r.end()));
  }
  return rows;
}

Json to_json(const AffineWeylElement& w) {
  return Json{{"finite_matrix", to_json(w.finite_part())}, {"translation", w.translation()}};
}

Json to_json(const IntegerLattice& l) {
  Json rows = Json::array();
  for (const auto& r : l.basis()) {
    Json row = Json::array();
    for (const auto& x : r) {
      if (x.fits_slong_p())
        row.push_back(x.get_si());
      else
        row.push_back(x.get_str());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const RationalVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

Json to_json(const RootSystem& rs, const GenerationCertificate& c) {
  Json j;
  j["projected_generates"] = c.projected_generates;
  j["normalizing_braid"] = c.normalizing_braid;
  j["conjugating_coweight"] = to_json(c.conjugating_coweight);
  j["repeated_root"] = c.repeated_root ? Json(format_root(rs, *c.repeated_root)) : Json(nullptr);
  j["repeated_root_long"] = c.repeated_root ? Json(rs.is_long(*c.repeated_root)) : Json(nullptr);
  j["level_gap"] = c.level_gap;
  j["translation_lattice"] = to_json(c.translation_lattice);
  return j;
}

BraidWord braid_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("a braid word must be a JSON list of signed integers");
  BraidWord w;
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<int>() == 0) throw ParseError("braid letters are non-zero integers");
    w.push_back(x.get<int>());
  }
  return w;
}

}  // namespace affhur

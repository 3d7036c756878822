#pragma once

// Text and JSON forms of groups, roots, reflections, tuples and elements.
//   root            "1,1"         coefficients over the simple roots
//   affine reflection "1,1:1"     root, colon, level
//   tuple           ["1,0:0", "0,1:1"]
//   element         a tuple (its product) or {"finite_matrix": [[..]], "translation": [..]}

#include <string>
#include <string_view>

#include <json.hpp>

#include "affhur/hurwitz.hpp"
#include "affhur/quasicox.hpp"
#include "affhur/rootsys.hpp"
#include "affhur/weyl_aff.hpp"
#include "affhur/weyl_fin.hpp"

namespace affhur {

using Json = nlohmann::ordered_json;

struct GroupSpec {
  CartanType type;
  bool affine = false;
  std::string name() const { return (affine ? "affine:" : "") + type.name(); }
};

// "B2" or "affine:B2". Throws ParseError.
GroupSpec parse_group(std::string_view text);

RootId parse_root(const RootSystem& rs, std::string_view text);
AffineReflection parse_affine_reflection(const RootSystem& rs, std::string_view text);
std::string format_root(const RootSystem& rs, RootId id);
std::string format_affine_reflection(const RootSystem& rs, const AffineReflection& r);

// Parse a JSON document; ParseError on malformed input.
Json parse_json(std::string_view text);

FiniteTuple finite_tuple_from_json(const RootSystem& rs, const Json& j);
AffineTuple affine_tuple_from_json(const RootSystem& rs, const Json& j);
Json to_json(const RootSystem& rs, const FiniteTuple& t);
Json to_json(const RootSystem& rs, const AffineTuple& t);

FiniteWeylElement finite_element_from_json(const RootSystem& rs, const Json& j);
AffineWeylElement affine_element_from_json(const RootSystem& rs, const Json& j);
Json to_json(const FiniteWeylElement& w);
Json to_json(const AffineWeylElement& w);

Json to_json(const IntegerLattice& l);
Json to_json(const RationalVector& v);
Json to_json(const RootSystem& rs, const GenerationCertificate& c);

BraidWord braid_from_json(const Json& j);

}  // namespace affhur

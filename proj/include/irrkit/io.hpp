#pragma once

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "irrkit/forms.hpp"
#include "irrkit/projective_points.hpp"
#include "irrkit/rational.hpp"

namespace irrkit {

using json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

/// Hex SHA-256 of a byte string.
inline std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::string out;
  out.reserve(2 * len);
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

/// Integers go out as JSON numbers when they fit in 64 bits, otherwise as decimal strings.
inline json json_integer(const Integer& z) {
  if (fits_int64(z)) return json(to_int64(z));
  return json(z.get_str());
}

/// Rationals go out as "p/q" strings (or plain integers when q = 1).
inline json json_rational(const Rational& q) {
  if (q.get_den() == 1) return json_integer(q.get_num());
  return json(q.get_str());
}

/// Accepts a JSON integer or a decimal string.
inline Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw InputError("expected an integer or a decimal string, got " + j.dump());
}

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InputError("expected an integer or a rational string, got " + j.dump());
}

inline json int_vector_json(const IntVector& v, bool as_strings = false) {
  json a = json::array();
  for (const auto& x : v) a.push_back(as_strings ? json(x.get_str()) : json_integer(x));
  return a;
}

inline IntVector int_vector_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected an array of integers");
  IntVector v;
  v.reserve(j.size());
  for (const auto& x : j) v.push_back(integer_from_json(x));
  return v;
}

/// Point-set file: {"ambient_dim": N, "points": [["1","0","0"], ...]} with coordinates as decimal strings.
inline json point_set_json(const PointSet& g) {
  json pts = json::array();
  for (const auto& p : g) pts.push_back(int_vector_json(p.coords(), true));
  return json{{"ambient_dim", g.ambient_dim()}, {"points", pts}};
}

/// Reads and canonicalizes; rejects duplicate points. Unknown keys are ignored.
inline PointSet point_set_from_json(const json& j) {
  if (!j.is_object() || !j.contains("ambient_dim") || !j.contains("points"))
    throw InputError("point-set JSON needs 'ambient_dim' and 'points'");
  const auto& dim = j.at("ambient_dim");
  if (!dim.is_number_unsigned() && !(dim.is_number_integer() && dim.get<long>() >= 0))
    throw InputError("'ambient_dim' must be a nonnegative integer");
  PointSet g(dim.get<std::size_t>());
  if (!j.at("points").is_array()) throw InputError("'points' must be an array");
  for (const auto& p : j.at("points")) {
    IntVector v = int_vector_from_json(p);
    if (v.size() != g.ambient_dim() + 1)
      throw InputError("point with " + std::to_string(v.size()) + " coordinates in P^" + std::to_string(g.ambient_dim()));
    g.add(ProjPoint(std::move(v)));
  }
  return g;
}

/// Digest of the canonical point-set JSON; stable across a write/read round trip.
inline std::string point_set_digest(const PointSet& g) { return sha256_hex(point_set_json(g).dump()); }

inline json form_json(const Form& f) {
  return json{{"degree", f.degree()},
              {"ambient_dim", f.ambient_dim()},
              {"coefficients", int_vector_json(f.coefficients(), true)},
              {"text", f.to_string()}};
}

/// Comma-separated integer coefficients in graded-lex order; the degree is inferred.
inline Form parse_form(std::size_t ambient_dim, const std::string& csv) {
  IntVector v;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(parse_integer(item));
  if (v.empty()) throw InputError("empty coefficient list");
  return Form::from_coefficients(ambient_dim, std::move(v));
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("invalid JSON in " + what + ": " + e.what());
  }
}

inline PointSet read_point_set(const std::string& path) { return point_set_from_json(parse_json_text(read_file(path), path)); }

}  // namespace irrkit

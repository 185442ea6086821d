#pragma once

#include "cohobs/complex.hpp"

#include <nlohmann/json.hpp>

#include <limits>
#include <string>

namespace cohobs {

/// Parses the complex interchange document:
///   {"dim": 3, "top_simplices": [[0,1,2,3], ...], "orientation": [1, -1, ...]}
/// `orientation` is optional. Lower-dimensional tuples may be listed in
/// `top_simplices` alongside the top ones.
inline SimplicialComplex load_complex(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("complex document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("top_simplices") || !doc["top_simplices"].is_array())
    throw Error(ErrorCode::ParseError, "complex document needs a top_simplices array");
  std::vector<Simplex> tops;
  std::optional<std::vector<int>> orientation;
  try {
    tops = doc["top_simplices"].get<std::vector<Simplex>>();
    if (doc.contains("orientation")) orientation = doc["orientation"].get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("complex document: ") + e.what());
  }
  auto K = SimplicialComplex::from_simplices(tops, orientation);
  if (doc.contains("dim")) {
    if (!doc["dim"].is_number_integer() || doc["dim"].get<int>() != K.dim())
      throw Error(ErrorCode::ParseError, "declared dim does not match the listed simplices");
  }
  return K;
}

/// Serializes maximal simplices in canonical order, plus the stored
/// orientation when there is one. Reloading reproduces the same complex.
inline nlohmann::ordered_json complex_to_json(const SimplicialComplex& K) {
  nlohmann::ordered_json doc;
  doc["dim"] = K.dim();
  std::vector<Simplex> tops;
  for (int k = K.dim(); k >= 0; --k)
    for (const auto& m : K.maximal_simplices())
      if (static_cast<int>(m.size()) == k + 1) tops.push_back(m);
  doc["top_simplices"] = tops;
  if (!K.top_orientation().empty()) doc["orientation"] = K.top_orientation();
  return doc;
}

inline std::string dump_complex(const SimplicialComplex& K) { return complex_to_json(K).dump() + "\n"; }

namespace detail {

inline Integer integer_from_json(const nlohmann::json& v) {
  if (v.is_number_integer()) return Integer(v.get<long long>());
  if (v.is_string()) {
    try {
      return Integer(v.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorCode::ParseError, "integer cochain entry " + v.dump() + " is not an integer");
}

inline nlohmann::ordered_json integer_to_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return x.convert_to<long long>();
  return x.str();
}

inline nlohmann::json parse_cochain_doc(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("cochain document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("degree") || !doc.contains("values") || !doc["values"].is_array() ||
      !doc["degree"].is_number_integer())
    throw Error(ErrorCode::ParseError, "cochain document needs integer degree and a values array");
  return doc;
}

}  // namespace detail

/// Coefficient ring named in a cochain document ("real" when absent).
inline std::string cochain_ring(const std::string& text) {
  auto doc = detail::parse_cochain_doc(text);
  return doc.value("ring", std::string("real"));
}

/// Cochain document: {"degree": k, "ring": "int"|"real", "values": [...]}.
/// Integer entries may be JSON numbers or decimal strings.
inline IntCochain load_int_cochain(const std::string& text) {
  auto doc = detail::parse_cochain_doc(text);
  if (doc.value("ring", std::string("int")) != "int")
    throw Error(ErrorCode::ParseError, "expected an integer cochain (ring \"int\")");
  IntCochain c{doc["degree"].get<int>(), {}};
  for (const auto& v : doc["values"]) c.values.push_back(detail::integer_from_json(v));
  return c;
}

/// Reads either ring; integer entries are converted to reals.
inline RealCochain load_real_cochain(const std::string& text) {
  auto doc = detail::parse_cochain_doc(text);
  RealCochain c{doc["degree"].get<int>(), {}};
  for (const auto& v : doc["values"]) {
    if (v.is_number()) c.values.push_back(v.get<double>());
    else c.values.push_back(to_double(detail::integer_from_json(v)));
  }
  return c;
}

inline nlohmann::ordered_json cochain_to_json(const IntCochain& c) {
  nlohmann::ordered_json doc;
  doc["degree"] = c.degree;
  doc["ring"] = "int";
  auto values = nlohmann::ordered_json::array();
  for (const auto& v : c.values) values.push_back(detail::integer_to_json(v));
  doc["values"] = std::move(values);
  return doc;
}

inline nlohmann::ordered_json cochain_to_json(const RealCochain& c) {
  nlohmann::ordered_json doc;
  doc["degree"] = c.degree;
  doc["ring"] = "real";
  doc["values"] = c.values;
  return doc;
}

template <class T>
std::string dump_cochain(const Cochain<T>& c) {
  return cochain_to_json(c).dump() + "\n";
}

}  // namespace cohobs

#pragma once

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "incidence.hpp"
#include "kl_index.hpp"
#include "polynomial.hpp"

namespace flagalg {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline Json integer_json(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return to_string(v);
}

inline Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  fail(Errc::ParseError, "expected an integer, got " + j.dump());
}

inline void check_schema(const Json& j, const char* type) {
  if (!j.is_object()) fail(Errc::ParseError, "expected a JSON object");
  if (j.contains("schema") && j["schema"] != kSchemaVersion) {
    fail(Errc::ParseError, "unsupported schema " + j["schema"].dump());
  }
  if (type && j.contains("type") && j["type"] != type) {
    fail(Errc::ParseError, std::string("expected type ") + type + ", got " + j["type"].dump());
  }
}

inline Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::ParseError, e.what());
  }
}

}  // namespace detail

/// Canonical form: elements sorted by (rank, label), covers in lexicographic
/// order of the new indices.
inline Json poset_to_json(const Poset& p) {
  std::vector<Element> order(p.size());
  std::iota(order.begin(), order.end(), Element{0});
  std::stable_sort(order.begin(), order.end(), [&](Element a, Element b) {
    if (p.rank(a) != p.rank(b)) return p.rank(a) < p.rank(b);
    return p.label(a) < p.label(b);
  });
  std::vector<Element> position(p.size());
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = static_cast<Element>(i);
  std::vector<Cover> covers;
  for (auto [x, y] : p.covers()) covers.emplace_back(position[x], position[y]);
  std::sort(covers.begin(), covers.end());

  Json j;
  j["schema"] = kSchemaVersion;
  j["type"] = "poset";
  j["name"] = p.name();
  Json elements = Json::array();
  for (Element x : order) elements.push_back(p.label(x));
  j["elements"] = std::move(elements);
  Json cj = Json::array();
  for (auto [x, y] : covers) cj.push_back(Json::array({x, y}));
  j["covers"] = std::move(cj);
  return j;
}

/// Reads {"elements": [...], "covers": [[i, j], ...], "name": optional}.
inline Poset poset_from_json(const Json& j, const Limits& limits = default_limits()) {
  detail::check_schema(j, "poset");
  if (!j.contains("elements") || !j["elements"].is_array()) fail(Errc::ParseError, "missing array field \"elements\"");
  if (!j.contains("covers") || !j["covers"].is_array()) fail(Errc::ParseError, "missing array field \"covers\"");
  std::vector<std::string> labels;
  for (const auto& e : j["elements"]) {
    if (e.is_string())
      labels.push_back(e.get<std::string>());
    else if (e.is_number_integer())
      labels.push_back(std::to_string(e.get<std::int64_t>()));
    else
      fail(Errc::ParseError, "element labels must be strings");
  }
  std::vector<Cover> covers;
  for (const auto& c : j["covers"]) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_number_unsigned() || !c[1].is_number_unsigned()) {
      fail(Errc::ParseError, "cover " + c.dump() + " is not a pair of indices");
    }
    const auto a = c[0].get<std::uint64_t>(), b = c[1].get<std::uint64_t>();
    if (a >= labels.size() || b >= labels.size()) {
      fail(Errc::ElementOutOfRange, "cover " + c.dump() + " refers to a missing element");
    }
    covers.emplace_back(static_cast<Element>(a), static_cast<Element>(b));
  }
  std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "";
  return from_covers(std::move(labels), std::move(covers), limits, std::move(name));
}

inline Poset poset_from_string(const std::string& text, const Limits& limits = default_limits()) {
  return poset_from_json(detail::parse_text(text), limits);
}

inline Poset read_poset_file(const std::string& path, const Limits& limits = default_limits()) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, "cannot open poset file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return poset_from_string(ss.str(), limits);
}

inline Json polynomial_to_json(const Polynomial& p) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["type"] = "polynomial";
  j["text"] = p.to_string();
  Json c = Json::array();
  for (int d = 0; d <= p.degree(); ++d) c.push_back(detail::integer_json(p.coefficient(d)));
  j["coefficients"] = std::move(c);
  return j;
}

inline Polynomial polynomial_from_json(const Json& j) {
  detail::check_schema(j, "polynomial");
  if (!j.contains("coefficients") || !j["coefficients"].is_array()) fail(Errc::ParseError, "missing \"coefficients\"");
  std::vector<Integer> c;
  for (const auto& v : j["coefficients"]) c.push_back(detail::integer_from_json(v));
  return Polynomial::from_coefficients(c);
}

inline Json multipoly_to_json(const MultiPoly& p) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["type"] = "multipoly";
  j["variables"] = p.variables();
  j["text"] = p.to_string();
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json t;
    t["exponents"] = e;
    t["coefficient"] = detail::integer_json(c);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

inline MultiPoly multipoly_from_json(const Json& j) {
  detail::check_schema(j, "multipoly");
  if (!j.contains("variables") || !j["variables"].is_number_unsigned()) fail(Errc::ParseError, "missing \"variables\"");
  MultiPoly p(j["variables"].get<int>());
  if (!j.contains("terms") || !j["terms"].is_array()) fail(Errc::ParseError, "missing \"terms\"");
  for (const auto& t : j["terms"]) {
    if (!t.contains("exponents") || !t.contains("coefficient")) fail(Errc::ParseError, "malformed term " + t.dump());
    std::vector<int> e;
    for (const auto& x : t["exponents"]) {
      if (!x.is_number_unsigned()) fail(Errc::ParseError, "exponents must be natural numbers");
      e.push_back(x.get<int>());
    }
    p.add_term(e, detail::integer_from_json(t["coefficient"]));
  }
  return p;
}

inline std::string flag_string(const Poset& p, std::span<const Element> f) {
  std::string s = "(";
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? ", " : "") + p.label(f[i]);
  return s + ")";
}

/// One line per flag: "(0, a, 1) -> -2".
template <class R>
std::string dump_function(const IncidenceFunction<R>& f) {
  std::ostringstream os;
  const FlagTable& t = *f.table();
  for (std::size_t i = 0; i < t.size(); ++i) os << flag_string(t.poset(), t.flag(i)) << " -> " << f.at(i) << "\n";
  return os.str();
}

template <class R>
Json function_to_json(const IncidenceFunction<R>& f) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["type"] = "incidence_function";
  j["arity"] = f.arity();
  Json values = Json::array();
  const FlagTable& t = *f.table();
  for (std::size_t i = 0; i < t.size(); ++i) {
    Json labels = Json::array();
    for (Element e : t.flag(i)) labels.push_back(t.poset().label(e));
    values.push_back(Json::object({{"flag", std::move(labels)}, {"value", detail::integer_json(to_integer(f.at(i)))}}));
  }
  j["values"] = std::move(values);
  return j;
}

inline Json entries_json(const EntrySet& e) {
  Json a = Json::array();
  for (const auto& x : e) a.push_back(x.to_string());
  return a;
}

inline Json index_family_to_json(int k, const Limits& limits = default_limits()) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["type"] = "index_family";
  j["k"] = k;
  Json terms = Json::array();
  for (const auto& t : index_family(k, limits)) {
    Json tj;
    tj["entries"] = entries_json(t->entries);
    tj["sign"] = t->sign();
    tj["sign_exponent"] = t->sign_exponent;
    tj["top_heavy"] = entries_json(top_heavy(*t));
    Json d;
    if (const auto* a = std::get_if<ATypeDecomposition>(&t->decomposition)) {
      d["type"] = "A";
      d["k"] = a->k;
    } else {
      const auto& td = std::get<TTypeDecomposition>(t->decomposition);
      d["type"] = "T";
      d["k"] = td.k;
      d["s"] = td.s;
      d["i"] = td.i;
      d["alpha"] = td.alpha;
      d["beta"] = entries_json(td.beta->entries);
    }
    tj["decomposition"] = std::move(d);
    terms.push_back(std::move(tj));
  }
  j["terms"] = std::move(terms);
  return j;
}

}  // namespace flagalg

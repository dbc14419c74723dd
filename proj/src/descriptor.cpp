#include "lpaffine/descriptor.hpp"

#include "lpaffine/errors.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdio>

namespace lpaffine {

namespace {

using nlohmann::json;

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidBody(std::string("descriptor: missing field '") + key + "'");
  }
  return j.at(key);
}

double number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) throw InvalidBody(std::string("descriptor: '") + key + "' is not a number");
  return v.get<double>();
}

int integer(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) {
    throw InvalidBody(std::string("descriptor: '") + key + "' is not an integer");
  }
  return v.get<int>();
}

Mat matrix(const json& j) {
  if (!j.is_array() || j.empty()) throw InvalidBody("descriptor: matrix must be a list of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].size() != rows) throw InvalidBody("descriptor: matrix must be square");
  Mat M(rows, rows);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != rows) throw InvalidBody("descriptor: ragged matrix");
    for (std::size_t k = 0; k < rows; ++k) {
      if (!j[i][k].is_number()) throw InvalidBody("descriptor: non-numeric matrix entry");
      M(i, k) = j[i][k].get<double>();
    }
  }
  if (!M.allFinite()) throw InvalidBody("descriptor: non-finite matrix entry");
  return M;
}

ConvexBody build(const json& d, int depth) {
  if (depth > 32) throw InvalidBody("descriptor: nesting too deep");
  const json& kind = field(d, "kind");
  if (!kind.is_string()) throw InvalidBody("descriptor: 'kind' must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "ball") {
    const json& p = field(d, "params");
    return ConvexBody::ball(integer(p, "dim"), number(p, "radius"));
  }
  if (k == "ellipsoid") return ConvexBody::ellipsoid(matrix(field(field(d, "params"), "matrix")));
  if (k == "lr_ball") {
    const json& p = field(d, "params");
    return ConvexBody::lr_ball(integer(p, "dim"), number(p, "r"));
  }
  if (k == "polytope") {
    const json& v = field(field(d, "params"), "vertices");
    if (!v.is_array()) throw InvalidBody("descriptor: 'vertices' must be a list");
    std::vector<Vec> pts;
    for (const json& row : v) {
      if (!row.is_array()) throw InvalidBody("descriptor: vertex must be a list");
      Vec x(row.size());
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (!row[i].is_number()) throw InvalidBody("descriptor: non-numeric vertex");
        x(i) = row[i].get<double>();
      }
      pts.push_back(x);
    }
    return ConvexBody::polytope(pts);
  }
  if (k == "polar") return build(field(d, "body"), depth + 1).polar();
  if (k == "linear_image") {
    return build(field(d, "body"), depth + 1).linear_image(matrix(field(field(d, "params"), "matrix")));
  }
  throw InvalidBody("descriptor: unknown kind '" + k + "'");
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidBody(std::string("descriptor: ") + e.what());
  }
}

}  // namespace

ConvexBody parse_body(const std::string& json_text) {
  const json d = parse(json_text);
  try {
    return build(d, 0);
  } catch (const InvalidArgument& e) {
    throw InvalidBody(e.what());
  } catch (const json::exception& e) {
    throw InvalidBody(std::string("descriptor: ") + e.what());
  }
}

std::string body_digest(const std::string& json_text) {
  // nlohmann::json keeps object keys sorted, so dump() is canonical
  const std::string canon = parse(json_text).dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace lpaffine

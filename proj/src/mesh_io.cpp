#include "evem/mesh_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace evem {

using nlohmann::json;

std::string serialize_mesh(const PolygonalMesh& mesh) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"format\": \"evem-mesh\",\n";
  os << "  \"version\": 1,\n";
  os << "  \"family\": " << json(std::string(to_string(mesh.family))).dump() << ",\n";
  os << "  \"refinement\": " << mesh.refinement << ",\n";
  os << "  \"seed\": " << mesh.seed << ",\n";
  os << "  \"points\": [";
  for (std::size_t i = 0; i < mesh.points.size(); ++i) {
    os << (i ? ",\n    " : "\n    ") << "[" << json(mesh.points[i].x).dump() << ", "
       << json(mesh.points[i].y).dump() << "]";
  }
  os << "\n  ],\n";
  os << "  \"cells\": [";
  for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
    os << (c ? ",\n    " : "\n    ") << json(mesh.cells[c].vertices).dump();
  }
  os << "\n  ],\n";
  os << "  \"boundary_edges\": [";
  for (std::size_t e = 0; e < mesh.boundary_edges.size(); ++e) {
    os << (e ? ",\n    " : "\n    ") << "[" << mesh.boundary_edges[e].cell << ", "
       << mesh.boundary_edges[e].local_edge << "]";
  }
  os << "\n  ]\n}\n";
  return os.str();
}

namespace {

const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw MeshParseError(where, "missing field '" + key + "'");
  return obj.at(key);
}

long long as_integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw MeshParseError(where, "expected an integer");
  return v.get<long long>();
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw MeshParseError(where, "expected a number");
  return v.get<double>();
}

const json& as_array(const json& v, const std::string& where) {
  if (!v.is_array()) throw MeshParseError(where, "expected an array");
  return v;
}

}  // namespace

PolygonalMesh deserialize_mesh(const std::string& document, bool validate) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw MeshParseError("byte " + std::to_string(e.byte), e.what());
  }
  if (!doc.is_object()) throw MeshParseError("/", "document must be an object");
  const auto& format = require(doc, "format", "/");
  if (format != "evem-mesh") throw MeshParseError("/format", "unknown format");
  if (as_integer(require(doc, "version", "/"), "/version") != 1) {
    throw MeshParseError("/version", "unsupported version");
  }

  PolygonalMesh mesh;
  const auto& family = require(doc, "family", "/");
  if (!family.is_string()) throw MeshParseError("/family", "expected a string");
  try {
    mesh.family = parse_mesh_family(family.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw MeshParseError("/family", e.what());
  }
  mesh.refinement = static_cast<int>(as_integer(require(doc, "refinement", "/"), "/refinement"));
  const auto& seed = require(doc, "seed", "/");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
    throw MeshParseError("/seed", "expected a non-negative integer");
  }
  mesh.seed = seed.get<std::uint64_t>();

  const auto& points = as_array(require(doc, "points", "/"), "/points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::string where = "/points/" + std::to_string(i);
    const auto& p = as_array(points[i], where);
    if (p.size() != 2) throw MeshParseError(where, "a point has exactly two coordinates");
    mesh.points.push_back({as_number(p[0], where + "/0"), as_number(p[1], where + "/1")});
  }

  const auto& cells = as_array(require(doc, "cells", "/"), "/cells");
  const auto np = static_cast<long long>(mesh.points.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const std::string where = "/cells/" + std::to_string(c);
    const auto& ids = as_array(cells[c], where);
    Polygon poly;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      const std::string at = where + "/" + std::to_string(k);
      const long long id = as_integer(ids[k], at);
      if (id < 0 || id >= np) {
        throw MeshParseError(at, "vertex index " + std::to_string(id) + " out of range [0, " +
                                     std::to_string(np) + ")");
      }
      poly.vertices.push_back(static_cast<int>(id));
    }
    mesh.cells.push_back(std::move(poly));
  }

  const auto& edges = as_array(require(doc, "boundary_edges", "/"), "/boundary_edges");
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const std::string where = "/boundary_edges/" + std::to_string(e);
    const auto& pair = as_array(edges[e], where);
    if (pair.size() != 2) throw MeshParseError(where, "expected [cell, local_edge]");
    const long long cell = as_integer(pair[0], where + "/0");
    const long long local = as_integer(pair[1], where + "/1");
    if (cell < 0 || cell >= static_cast<long long>(mesh.cells.size())) {
      throw MeshParseError(where + "/0", "cell index out of range");
    }
    if (local < 0 || local >= mesh.cells[cell].size()) {
      throw MeshParseError(where + "/1", "local edge index out of range");
    }
    mesh.boundary_edges.push_back({static_cast<int>(cell), static_cast<int>(local)});
  }

  if (validate) {
    const auto violations = validate_mesh(mesh);
    if (!violations.empty()) {
      std::string msg = "invalid mesh:";
      for (const auto& v : violations) msg += "\n  " + v.message;
      throw MeshValidationError(msg);
    }
  }
  return mesh;
}

void write_mesh(const PolygonalMesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << serialize_mesh(mesh);
}

PolygonalMesh read_mesh(const std::filesystem::path& path, bool validate) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return deserialize_mesh(ss.str(), validate);
}

}  // namespace evem

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "evem/mesh.hpp"

namespace evem {

/// Raised for malformed documents; `location()` is a JSON pointer
/// (e.g. "/cells/3/1") or "byte <offset>" for syntax errors.
class MeshParseError : public std::runtime_error {
 public:
  MeshParseError(std::string location, const std::string& what)
      : std::runtime_error(location + ": " + what), location_(std::move(location)) {}
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

/// Raised when a well-formed document describes an invalid mesh.
class MeshValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mesh document (UTF-8 JSON, LF line endings):
///
///   {
///     "format": "evem-mesh", "version": 1,
///     "family": "QUAD", "refinement": 2, "seed": 20201,
///     "points": [[x, y], ...],
///     "cells": [[v0, v1, ...], ...],
///     "boundary_edges": [[cell, local_edge], ...]
///   }
///
/// Coordinates are written with shortest round-trip precision.
std::string serialize_mesh(const PolygonalMesh& mesh);

/// Parses and, by default, validates. Throws MeshParseError or MeshValidationError.
PolygonalMesh deserialize_mesh(const std::string& document, bool validate = true);

void write_mesh(const PolygonalMesh& mesh, const std::filesystem::path& path);
PolygonalMesh read_mesh(const std::filesystem::path& path, bool validate = true);

}  // namespace evem

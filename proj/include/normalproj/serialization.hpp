#pragma once

// JSON formats.
//
//   MultiDegree  [2, 2, 0]
//   Monomial     exponent array in the kind's variable order
//   Polynomial   {"kind": "tensor", "degree": [1, 1, 0], "coeffs": [...]}
//   Surface      {"kind", "degree": [d] | [d1, d2], "rational": bool, "F": [poly x4]}
//   MatrixRep    see save_matrix_rep(); documented in docs/matrixrep-format.md

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "normalproj/congruence.hpp"
#include "normalproj/syzygy.hpp"

namespace normalproj {

inline constexpr int kMatrixRepFormatVersion = 1;

nlohmann::json to_json(const MultiDegree& d);
MultiDegree multidegree_from_json(const nlohmann::json& j);

nlohmann::json to_json(SpaceKind kind, const Monomial& m);
Monomial monomial_from_json(SpaceKind kind, const nlohmann::json& j);

nlohmann::json to_json(const MultiHomogPoly& p);
MultiHomogPoly poly_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SurfaceParam& s);
/// Parses and validates; malformed structure raises FormatError, invalid
/// geometry raises DomainError.
SurfaceParam surface_from_json(const nlohmann::json& j);

SurfaceParam load_surface(const std::filesystem::path& path);
void save_surface(const SurfaceParam& s, const std::filesystem::path& path);

/// Hex SHA-256 of the compact canonical JSON serialization of `s`.
std::string surface_hash(const SurfaceParam& s);

/// Throws HashMismatch unless `m` was built from `s`.
void check_surface_hash(const MatrixRep& m, const SurfaceParam& s);

nlohmann::json to_json(const CongruenceMap& c);

nlohmann::json to_json(const MatrixRep& m);
MatrixRep matrix_rep_from_json(const nlohmann::json& j);

void save_matrix_rep(const MatrixRep& m, const std::filesystem::path& path);
MatrixRep load_matrix_rep(const std::filesystem::path& path);

}  // namespace normalproj

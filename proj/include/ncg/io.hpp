#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "ncg/fermion.hpp"

namespace ncg {

/// A matrix is serialized as an array of rows, each entry as [re, im].
nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j, const std::string& where);

/// Geometry file schema (version 1):
///   { "version": 1, "algebra": "R"|"H"|"C", "n": int,
///     "signature": {"p": 0, "q": 4}, "L": [4 matrices], "H": [4 matrices] }
/// where a matrix is an array of rows and each entry is [re, im].
/// H is ordered by the triples (1,2,3), (1,2,4), (1,3,4), (2,3,4).
nlohmann::json geometry_to_json(const MatrixGeometry& geom);
MatrixGeometry geometry_from_json(const nlohmann::json& j, Tolerance tol = {});

void write_geometry_file(const std::filesystem::path& path, const MatrixGeometry& geom);
MatrixGeometry read_geometry_file(const std::filesystem::path& path, Tolerance tol = {});

/// One-form file schema (version 1):
///   { "version": 1, "pairs": [ {"a": matrix, "b": matrix}, ... ],
///     "symmetrize": bool }   (symmetrize defaults to true)
nlohmann::json one_form_to_json(const OneFormGenerators& gen);
OneFormGenerators one_form_from_json(const nlohmann::json& j);

void write_one_form_file(const std::filesystem::path& path, const OneFormGenerators& gen);
OneFormGenerators read_one_form_file(const std::filesystem::path& path);

/// Fermion report written by the integrate command.
struct FermionReport {
  double z = 0.0;
  Complex pfaffian;
  double sqrt_det = 0.0;
  double det_identity_residual = 0.0;
  std::vector<double> spectrum;
  bool condition_flag = false;
};

nlohmann::json fermion_report_to_json(const FermionReport& report);

nlohmann::json axiom_report_to_json(const AxiomReport& report);

/// Canonical serialization: sorted keys, shortest round-trip floats,
/// two-space indent, newline-terminated.
std::string canonical_dump(const nlohmann::json& j);

/// Write-to-temp-then-rename so readers never observe partial files.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

nlohmann::json parse_json_file(const std::filesystem::path& path);

}  // namespace ncg

#include "ncg/io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

namespace ncg {

using nlohmann::json;

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(row);
  }
  return rows;
}

CMatrix matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty())
    raise(ErrorCode::ParseError, where + ": matrix must be a nonempty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) raise(ErrorCode::ParseError, where + ": empty matrix row");
  CMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      raise(ErrorCode::ParseError, where + ": ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      const json& e = j[i][c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        raise(ErrorCode::ParseError, where + ": entry must be [re, im]");
      m(i, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  if (!m.all_finite()) raise(ErrorCode::ParseError, where + ": non-finite entry");
  return m;
}

namespace {

std::string algebra_to_string(AlgebraTag tag) {
  switch (tag) {
    case AlgebraTag::RealMat: return "R";
    case AlgebraTag::QuatMat: return "H";
    case AlgebraTag::ComplexMat: return "C";
  }
  return "?";
}

AlgebraTag algebra_from_string(const std::string& s) {
  if (s == "R") return AlgebraTag::RealMat;
  if (s == "H") return AlgebraTag::QuatMat;
  if (s == "C") return AlgebraTag::ComplexMat;
  raise(ErrorCode::ParseError, "algebra must be one of R, H, C (got '" + s + "')");
}

const json& require_field(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) raise(ErrorCode::ParseError, where + ": missing field '" + key + "'");
  return *it;
}

}  // namespace

json geometry_to_json(const MatrixGeometry& geom) {
  json j;
  j["version"] = 1;
  j["algebra"] = algebra_to_string(geom.space.algebra.tag);
  j["n"] = geom.space.algebra.n;
  j["signature"] = {{"p", geom.space.clifford.p}, {"q", geom.space.clifford.q}};
  json ls = json::array(), hs = json::array();
  for (int i = 0; i < 4; ++i) {
    ls.push_back(matrix_to_json(geom.dirac.L[i]));
    hs.push_back(matrix_to_json(geom.dirac.H[i]));
  }
  j["L"] = ls;
  j["H"] = hs;
  return j;
}

MatrixGeometry geometry_from_json(const json& j, Tolerance tol) {
  const std::string where = "geometry";
  if (!j.is_object()) raise(ErrorCode::ParseError, where + ": not a JSON object");
  if (require_field(j, "version", where).get<int>() != 1)
    raise(ErrorCode::ParseError, where + ": unsupported version");
  const auto tag = algebra_from_string(require_field(j, "algebra", where).get<std::string>());
  const auto n = require_field(j, "n", where).get<std::size_t>();
  if (n == 0) raise(ErrorCode::ParseError, where + ": n must be positive");
  const json& sig = require_field(j, "signature", where);
  if (require_field(sig, "p", where).get<int>() != 0 ||
      require_field(sig, "q", where).get<int>() != 4)
    raise(ErrorCode::ParseError, where + ": only signature (0,4) files are supported");
  if (tag == AlgebraTag::QuatMat && n % 2 != 0)
    raise(ErrorCode::ParseError, where + ": quaternionic algebra needs even n");

  const json& ls = require_field(j, "L", where);
  const json& hs = require_field(j, "H", where);
  if (!ls.is_array() || ls.size() != 4 || !hs.is_array() || hs.size() != 4)
    raise(ErrorCode::ParseError, where + ": L and H must hold 4 matrices each");

  std::array<CMatrix, 4> l_mats, h_mats;
  for (int i = 0; i < 4; ++i) {
    l_mats[i] = matrix_from_json(ls[i], where + ".L[" + std::to_string(i) + "]");
    h_mats[i] = matrix_from_json(hs[i], where + ".H[" + std::to_string(i) + "]");
    if (l_mats[i].rows() != n || l_mats[i].cols() != n || h_mats[i].rows() != n ||
        h_mats[i].cols() != n)
      raise(ErrorCode::ParseError, where + ": matrices must be n x n");
  }

  const FermionSpace space = build_fermion_space(AlgebraKind{tag, n});
  // build_dirac_data rejects matrices violating the type invariants.
  const DiracData data = build_dirac_data(l_mats, h_mats, space, tol);
  return MatrixGeometry{space, data};
}

void write_geometry_file(const std::filesystem::path& path, const MatrixGeometry& geom) {
  atomic_write_file(path, canonical_dump(geometry_to_json(geom)));
}

MatrixGeometry read_geometry_file(const std::filesystem::path& path, Tolerance tol) {
  return geometry_from_json(parse_json_file(path), tol);
}

json one_form_to_json(const OneFormGenerators& gen) {
  json j;
  j["version"] = 1;
  j["symmetrize"] = gen.symmetrize;
  json pairs = json::array();
  for (const auto& [a, b] : gen.pairs)
    pairs.push_back(json{{"a", matrix_to_json(a)}, {"b", matrix_to_json(b)}});
  j["pairs"] = pairs;
  return j;
}

OneFormGenerators one_form_from_json(const json& j) {
  const std::string where = "one-form";
  if (!j.is_object()) raise(ErrorCode::ParseError, where + ": not a JSON object");
  if (require_field(j, "version", where).get<int>() != 1)
    raise(ErrorCode::ParseError, where + ": unsupported version");
  OneFormGenerators gen;
  gen.symmetrize = j.value("symmetrize", true);
  const json& pairs = require_field(j, "pairs", where);
  if (!pairs.is_array() || pairs.empty())
    raise(ErrorCode::ParseError, where + ": pairs must be a nonempty array");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string at = where + ".pairs[" + std::to_string(i) + "]";
    gen.pairs.emplace_back(matrix_from_json(require_field(pairs[i], "a", at), at + ".a"),
                           matrix_from_json(require_field(pairs[i], "b", at), at + ".b"));
  }
  return gen;
}

void write_one_form_file(const std::filesystem::path& path, const OneFormGenerators& gen) {
  atomic_write_file(path, canonical_dump(one_form_to_json(gen)));
}

OneFormGenerators read_one_form_file(const std::filesystem::path& path) {
  return one_form_from_json(parse_json_file(path));
}

json fermion_report_to_json(const FermionReport& report) {
  json j;
  j["Z"] = report.z;
  j["pfaffian"] = json::array({report.pfaffian.real(), report.pfaffian.imag()});
  j["sqrt_det"] = report.sqrt_det;
  j["det_identity_residual"] = report.det_identity_residual;
  j["spectrum"] = report.spectrum;
  j["condition_flag"] = report.condition_flag;
  return j;
}

json axiom_report_to_json(const AxiomReport& report) {
  auto check = [](const AxiomCheck& c) {
    return json{{"pass", c.pass}, {"residual", c.residual}};
  };
  json j;
  j["all_pass"] = report.all_pass();
  j["hermitian"] = check(report.hermitian);
  j["reality"] = check(report.reality);
  j["first_order"] = check(report.first_order);
  j["grading"] = check(report.grading);
  return j;
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  const fs::path tmp = dir / (path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) raise(ErrorCode::WriteFailure, "cannot open " + tmp.string());
    out << content;
    if (!out.good()) raise(ErrorCode::WriteFailure, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) raise(ErrorCode::WriteFailure, "cannot rename into " + path.string());
}

json parse_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::ParseError, "cannot open " + path.string());
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) raise(ErrorCode::ParseError, "malformed JSON in " + path.string());
  return j;
}

}  // namespace ncg

// ncg: sample, verify, fluctuate, and integrate finite spectral-triple
// geometries stored as JSON files.

#include <CLI11.hpp>
#include <atomic>
#include <cstdlib>
#include <iostream>
#include <nlohmann/json.hpp>
#include <string>
#include <thread>
#include <vector>

#include "ncg/fermion.hpp"
#include "ncg/io.hpp"
#include "ncg/numerics.hpp"

using namespace ncg;
using nlohmann::json;

namespace {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailure = 1,
  kUsage = 2,
  kNumerical = 3,
};

int log_level() {
  const char* env = std::getenv("NCG_LOG");
  if (!env) return 0;  // error only
  const std::string v(env);
  if (v == "debug") return 2;
  if (v == "info") return 1;
  return 0;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[ncg] " << msg << "\n";
}

struct RunConfig {
  std::vector<std::string> geometry_paths;
  std::string one_form_path;
  std::string out_path;
  std::string algebra = "R";
  std::size_t n = 1;
  std::uint64_t seed = 0;
  double scale = 1.0;
  Tolerance tol{};
  unsigned jobs = 1;
  bool symmetrize = true;
  bool symmetrize_set = false;  // true when --symmetrize was passed explicitly
};

AlgebraKind parse_algebra(const RunConfig& cfg) {
  AlgebraTag tag;
  if (cfg.algebra == "R") {
    tag = AlgebraTag::RealMat;
  } else if (cfg.algebra == "H") {
    tag = AlgebraTag::QuatMat;
  } else if (cfg.algebra == "C") {
    tag = AlgebraTag::ComplexMat;
  } else {
    raise(ErrorCode::InvalidConfig, "algebra must be R, H, or C");
  }
  if (cfg.n == 0) raise(ErrorCode::InvalidConfig, "n must be positive");
  if (tag == AlgebraTag::QuatMat && cfg.n % 2 != 0)
    raise(ErrorCode::InvalidConfig, "quaternionic algebra needs even n");
  return AlgebraKind{tag, cfg.n};
}

// Derive a per-input output path when several geometries are processed.
std::filesystem::path output_path_for(const RunConfig& cfg, std::size_t index) {
  if (cfg.geometry_paths.size() <= 1) return cfg.out_path;
  const std::filesystem::path dir(cfg.out_path);
  const std::filesystem::path stem =
      std::filesystem::path(cfg.geometry_paths[index]).stem();
  return dir / (stem.string() + ".report.json");
}

int run_over_inputs(const RunConfig& cfg,
                    const std::function<int(const std::string&, const std::filesystem::path&)>& fn) {
  if (cfg.geometry_paths.empty()) raise(ErrorCode::InvalidConfig, "missing --geometry");
  if (cfg.geometry_paths.size() > 1 && !cfg.out_path.empty())
    std::filesystem::create_directories(cfg.out_path);

  const unsigned jobs = std::max(1u, cfg.jobs);
  std::atomic<std::size_t> next{0};
  std::atomic<int> status{kOk};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cfg.geometry_paths.size()) return;
      int rc;
      try {
        rc = fn(cfg.geometry_paths[i], output_path_for(cfg, i));
      } catch (const Error& e) {
        std::cerr << "ncg: " << cfg.geometry_paths[i] << ": " << e.what() << "\n";
        switch (e.code()) {
          case ErrorCode::ParseError:
          case ErrorCode::InvalidConfig:
          case ErrorCode::UnsupportedAlgebra:
            rc = kUsage;
            break;
          case ErrorCode::NumericalFailure:
          case ErrorCode::StructureError:
            rc = kNumerical;
            break;
          default:
            rc = kVerifyFailure;
        }
      }
      int expected = status.load();
      while (rc > expected && !status.compare_exchange_weak(expected, rc)) {
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < jobs; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return status.load();
}

ProductTriple load_product(const std::string& path, Tolerance tol) {
  return build_product_triple(read_geometry_file(path, tol));
}

FluctuatedDirac load_fluctuated(const ProductTriple& t, const RunConfig& cfg) {
  if (cfg.one_form_path.empty()) return vacuum_dirac(t);
  OneFormGenerators gen = read_one_form_file(cfg.one_form_path);
  if (cfg.symmetrize_set) gen.symmetrize = cfg.symmetrize;  // flag beats the file
  return total_fluctuation(t, connes_one_form(t, gen, cfg.tol));
}

int cmd_sample(const RunConfig& cfg) {
  if (cfg.out_path.empty()) raise(ErrorCode::InvalidConfig, "missing --out");
  const AlgebraKind kind = parse_algebra(cfg);
  if (cfg.scale < 0.0) raise(ErrorCode::InvalidConfig, "scale must be nonnegative");
  const MatrixGeometry geom = sample_random_geometry(kind, cfg.scale, cfg.seed);
  write_geometry_file(cfg.out_path, geom);
  // Round-trip self-check: the written file must read back and pass axioms.
  const MatrixGeometry back = read_geometry_file(cfg.out_path, cfg.tol);
  const AxiomReport report = verify_axioms(back, cfg.tol);
  if (!report.all_pass()) raise(ErrorCode::NumericalFailure, "sampled geometry fails axioms");
  log_info("sampled geometry written to " + cfg.out_path);
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  return run_over_inputs(cfg, [&](const std::string& in, const std::filesystem::path& out) {
    json report_json;
    bool pass = false;
    try {
      const MatrixGeometry geom = read_geometry_file(in, cfg.tol);
      const AxiomReport report = verify_axioms(geom, cfg.tol);
      report_json = axiom_report_to_json(report);
      pass = report.all_pass();
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ParseError) throw;
      // Invariant violations are verification failures, reported not thrown.
      report_json = {{"all_pass", false}, {"error", e.what()}};
      pass = false;
    }
    if (!out.empty()) atomic_write_file(out, canonical_dump(report_json));
    if (!pass && out.empty()) std::cerr << "ncg: " << in << ": " << report_json.dump() << "\n";
    log_info(std::string("verify ") + in + (pass ? ": pass" : ": fail"));
    return pass ? kOk : kVerifyFailure;
  });
}

int cmd_spectrum(const RunConfig& cfg) {
  return run_over_inputs(cfg, [&](const std::string& in, const std::filesystem::path& out) {
    json j;
    if (cfg.one_form_path.empty()) {
      // No fluctuation: any algebra kind works, no product structure needed.
      const MatrixGeometry geom = read_geometry_file(in, cfg.tol);
      j["operator"] = "base";
      j["spectrum"] = eig_hermitian(assemble_dirac(geom), cfg.tol);
    } else {
      const ProductTriple t = load_product(in, cfg.tol);
      const FluctuatedDirac fd = load_fluctuated(t, cfg);
      double charged = 0.0;
      for (int i = 0; i < 4; ++i)
        charged = std::max({charged, fd.theta[i].max_abs(), fd.y[i].max_abs()});
      if (charged <= cfg.tol.abs_eps) {
        j["operator"] = "manifold-fluctuated";
        j["spectrum"] = eig_hermitian(fd.manifold, cfg.tol);
      } else {
        j["operator"] = "product";
        j["spectrum"] = eig_hermitian(fd.assembled, cfg.tol);
      }
    }
    if (out.empty()) raise(ErrorCode::InvalidConfig, "missing --out");
    atomic_write_file(out, canonical_dump(j));
    return kOk;
  });
}

int cmd_fluctuate(const RunConfig& cfg) {
  if (cfg.one_form_path.empty()) raise(ErrorCode::InvalidConfig, "missing --one-form");
  return run_over_inputs(cfg, [&](const std::string& in, const std::filesystem::path& out) {
    const ProductTriple t = load_product(in, cfg.tol);
    const FluctuatedDirac fd = load_fluctuated(t, cfg);

    // The shifted (L', H') pair is itself a geometry; the charged parts ride
    // alongside in the bundle.
    MatrixGeometry shifted = t.base;
    shifted.dirac.L = fd.l_prime;
    shifted.dirac.H = fd.h_prime;
    json j;
    j["version"] = 1;
    j["geometry"] = geometry_to_json(shifted);
    json theta = json::array(), yy = json::array();
    for (int i = 0; i < 4; ++i) {
      theta.push_back(matrix_to_json(fd.theta[i]));
      yy.push_back(matrix_to_json(fd.y[i]));
    }
    j["theta"] = theta;
    j["y"] = yy;
    if (out.empty()) raise(ErrorCode::InvalidConfig, "missing --out");
    atomic_write_file(out, canonical_dump(j));
    return kOk;
  });
}

int cmd_integrate(const RunConfig& cfg) {
  return run_over_inputs(cfg, [&](const std::string& in, const std::filesystem::path& out) {
    const ProductTriple t = load_product(in, cfg.tol);
    const FluctuatedDirac fd = load_fluctuated(t, cfg);
    const FermionIntegral fi = fermion_integral(t, fd.assembled, cfg.tol, cfg.seed);

    FermionReport report;
    report.z = fi.z;
    report.pfaffian = fi.pfaffian;
    report.sqrt_det = fi.sqrt_det;
    report.det_identity_residual = det_identity_residual(t, fd);
    report.spectrum = eig_hermitian(fd.assembled, cfg.tol);
    report.condition_flag = fi.condition_flag;

    if (out.empty()) raise(ErrorCode::InvalidConfig, "missing --out");
    atomic_write_file(out, canonical_dump(fermion_report_to_json(report)));
    log_info("integrate " + in + ": Z = " + std::to_string(report.z));
    return kOk;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite spectral triples with a U(1) internal space"};
  app.require_subcommand(1);

  RunConfig cfg;
  auto add_common = [&](CLI::App* sub, bool with_files) {
    if (with_files) {
      sub->add_option("--geometry", cfg.geometry_paths, "geometry file(s)");
      sub->add_option("--one-form", cfg.one_form_path, "one-form generator file");
    }
    sub->add_option("--out", cfg.out_path, "output path");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--tol-abs", cfg.tol.abs_eps, "absolute tolerance")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--tol-rel", cfg.tol.rel_eps, "relative tolerance")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--jobs", cfg.jobs, "parallel workers for multiple inputs");
    sub->add_option("--symmetrize", cfg.symmetrize, "symmetrize one-form generators")
        ->each([&](const std::string&) { cfg.symmetrize_set = true; });
  };

  CLI::App* sample = app.add_subcommand("sample", "draw a random geometry and write it");
  add_common(sample, false);
  sample->add_option("--algebra", cfg.algebra, "R, H, or C");
  sample->add_option("--n", cfg.n, "matrix size");
  sample->add_option("--scale", cfg.scale, "Gaussian scale");

  CLI::App* verify = app.add_subcommand("verify", "check the spectral-triple axioms");
  add_common(verify, true);
  CLI::App* spectrum = app.add_subcommand("spectrum", "write sorted eigenvalues");
  add_common(spectrum, true);
  CLI::App* fluctuate = app.add_subcommand("fluctuate", "apply a one-form fluctuation");
  add_common(fluctuate, true);
  CLI::App* integrate = app.add_subcommand("integrate", "evaluate the fermion integral");
  add_common(integrate, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (sample->parsed()) return cmd_sample(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (spectrum->parsed()) return cmd_spectrum(cfg);
    if (fluctuate->parsed()) return cmd_fluctuate(cfg);
    if (integrate->parsed()) return cmd_integrate(cfg);
  } catch (const Error& e) {
    std::cerr << "ncg: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::ParseError:
      case ErrorCode::InvalidConfig:
      case ErrorCode::UnsupportedAlgebra:
        return kUsage;
      case ErrorCode::NumericalFailure:
      case ErrorCode::StructureError:
        return kNumerical;
      default:
        return kVerifyFailure;
    }
  } catch (const std::exception& e) {
    std::cerr << "ncg: " << e.what() << "\n";
    return kNumerical;
  }
  return kUsage;
}

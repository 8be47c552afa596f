// evem: convergence studies, p sweeps, pressure maps and mesh export.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "evem/mesh_io.hpp"
#include "evem/study.hpp"

namespace {

struct CommonOptions {
  std::string method = "vem";
  int k = 1;
  std::string p = "auto";
  std::string norm = "auto";
  double tau = 0.5;
  std::string mesh = "QUAD";
  std::vector<int> refinements{4, 8, 16, 32};
  std::string load_case = "A";
  double young = 2.5;
  double nu = 0.25;
  std::string model = "plane_stress";
  std::uint64_t seed = evem::kDefaultMeshSeed;
  int quadrature = 12;
  std::string output;
};

void add_common(CLI::App* app, CommonOptions& o, bool with_p) {
  app->add_option("--method", o.method, "vem, ucp, dfp or hyp")->capture_default_str();
  app->add_option("-k,--k", o.k, "boundary order (1 or 2)")->capture_default_str();
  if (with_p) app->add_option("-p,--p", o.p, "strain degree or 'auto'")->capture_default_str();
  app->add_option("--norm", o.norm, "l2, energy or auto")->capture_default_str();
  app->add_option("--tau", o.tau, "stabilization parameter")->capture_default_str();
  app->add_option("--mesh", o.mesh, "QUAD, RHOM, HEXA, WEBM or DODE")->capture_default_str();
  app->add_option("--refinements", o.refinements, "refinement ladder N")
      ->delimiter(',')
      ->capture_default_str();
  app->add_option("--load-case", o.load_case, "A or B")->capture_default_str();
  app->add_option("--E", o.young, "Young's modulus")->capture_default_str();
  app->add_option("--nu", o.nu, "Poisson ratio")->capture_default_str();
  app->add_option("--model", o.model, "plane_stress or plane_strain")->capture_default_str();
  app->add_option("--seed", o.seed, "mesh seed (WEBM)")->capture_default_str();
  app->add_option("--quadrature", o.quadrature, "error quadrature degree")->capture_default_str();
  app->add_option("-o,--output", o.output, "CSV path (stdout when omitted)");
}

evem::RunConfig to_config(const CommonOptions& o) {
  evem::RunConfig c;
  c.method = evem::parse_method(o.method);
  c.k = o.k;
  if (o.p != "auto") c.p = std::stoi(o.p);
  if (o.norm != "auto") c.norm = evem::parse_projection_norm(o.norm);
  c.tau = o.tau;
  c.family = evem::parse_mesh_family(o.mesh);
  c.refinements = o.refinements;
  c.load_case = evem::parse_load_case(o.load_case);
  c.material = {o.young, o.nu, evem::parse_plane_model(o.model)};
  c.seed = o.seed;
  c.quadrature_degree = o.quadrature;
  c.validate();
  return c;
}

void warn_material(const evem::Material& m) {
  const double cond = evem::condition_number(m.elasticity());
  if (cond > evem::kElasticityConditionWarning) {
    std::cerr << "warning: elasticity matrix condition number " << cond
              << " (nearly incompressible material)\n";
  }
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

void print_table(std::ostream& out, const std::vector<int>& ms) {
  using evem::BasisKind;
  out << "m,k,p,method,n,modes,stabilization\n";
  for (int m : ms) {
    for (int k : {1, 2}) {
      std::vector<BasisKind> kinds{BasisKind::Ucp, BasisKind::Dfp};
      if (k == 2) kinds.push_back(BasisKind::Hyp);
      for (auto kind : kinds) {
        const auto choice = evem::choose_p(m, k, kind);
        const auto layout = evem::dof_layout(m, k, kind, choice.p);
        out << m << "," << k << "," << choice.p << "," << evem::to_string(kind) << ","
            << layout.n() << "," << evem::mode_count(kind, choice.p) << ","
            << (choice.s ? "s=" + std::to_string(*choice.s) : std::string("NO")) << "\n";
      }
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enhanced virtual element solver for plane elasticity"};
  app.require_subcommand(1);

  CommonOptions conv;
  auto* c_conv = app.add_subcommand("convergence", "energy error over a refinement ladder");
  add_common(c_conv, conv, true);

  CommonOptions sweep;
  std::vector<int> p_values{2, 3, 4};
  auto* c_sweep = app.add_subcommand("p-sweep", "convergence series for several p");
  add_common(c_sweep, sweep, false);
  c_sweep->add_option("--p-values", p_values, "p values")->delimiter(',')->capture_default_str();

  evem::PressureMapConfig pm;
  std::string pm_mesh = "QUAD";
  std::string pm_dir = "pressure_maps";
  auto* c_pm = app.add_subcommand("pressure-maps", "load case B pressure panels (k = 1)");
  c_pm->add_option("-N,--refinement", pm.refinement, "mesh refinement")->capture_default_str();
  c_pm->add_option("--grid", pm.grid, "samples per direction")->capture_default_str();
  c_pm->add_option("--mesh", pm_mesh, "mesh family")->capture_default_str();
  c_pm->add_option("--E", pm.material.young, "Young's modulus")->capture_default_str();
  c_pm->add_option("--nu", pm.material.poisson, "Poisson ratio")->capture_default_str();
  c_pm->add_option("--seed", pm.seed, "mesh seed")->capture_default_str();
  c_pm->add_option("-d,--output-dir", pm_dir, "output directory")->capture_default_str();

  std::string mesh_family = "QUAD";
  int mesh_n = 4;
  std::uint64_t mesh_seed = evem::kDefaultMeshSeed;
  std::string mesh_out;
  auto* c_mesh = app.add_subcommand("mesh", "write a generated mesh document");
  c_mesh->add_option("--family", mesh_family, "mesh family")->capture_default_str();
  c_mesh->add_option("-N,--refinement", mesh_n, "refinement")->capture_default_str();
  c_mesh->add_option("--seed", mesh_seed, "seed")->capture_default_str();
  c_mesh->add_option("-o,--output", mesh_out, "path (stdout when omitted)");

  std::vector<int> table_m{4, 5, 6, 7, 8, 9, 10, 12};
  auto* c_table = app.add_subcommand("table", "p, n, modes and stabilization per element type");
  c_table->add_option("--m", table_m, "vertex counts")->delimiter(',')->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_conv->parsed()) {
      const auto config = to_config(conv);
      warn_material(config.material);
      const auto series = evem::run_convergence(config);
      std::ostringstream os;
      evem::write_convergence_csv(os, series);
      emit(conv.output, os.str());
    } else if (c_sweep->parsed()) {
      const auto config = to_config(sweep);
      warn_material(config.material);
      const auto series = evem::run_p_sweep(config, p_values, &std::cerr);
      std::ostringstream os;
      evem::write_p_sweep_csv(os, series);
      emit(sweep.output, os.str());
    } else if (c_pm->parsed()) {
      pm.family = evem::parse_mesh_family(pm_mesh);
      pm.material.model = evem::PlaneModel::PlaneStrain;
      pm.material.validate();
      warn_material(pm.material);
      for (const auto& p : evem::export_pressure_maps(pm, pm_dir)) std::cout << p.string() << "\n";
    } else if (c_mesh->parsed()) {
      const auto mesh =
          evem::generate_mesh(evem::parse_mesh_family(mesh_family), mesh_n, mesh_seed);
      emit(mesh_out, evem::serialize_mesh(mesh));
    } else if (c_table->parsed()) {
      print_table(std::cout, table_m);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

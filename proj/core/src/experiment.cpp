#include "trefftz/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <Eigen/Core>

#include "trefftz/error.hpp"
#include "trefftz/svg_plot.hpp"

namespace trefftz {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

namespace fs = std::filesystem;

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

struct Writer {
  fs::path dir;
  std::vector<std::string>* artifacts;

  std::ofstream open(const std::string& name) const {
    const auto path = dir / name;
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::ConfigParse, "cannot write '" + path.string() + "'");
    artifacts->push_back(path.string());
    return out;
  }
};

ErrorReportRow make_row(const ExperimentConfig& cfg, const std::string& id, const RunMetrics& m) {
  ErrorReportRow r;
  r.experiment = id;
  r.h_x = cfg.hx;
  r.h_t = cfg.ht;
  r.p = cfg.degree;
  r.family = to_string(cfg.family);
  r.alpha = cfg.flux.alpha;
  r.beta = cfg.flux.beta;
  r.eps_q = m.eps_q;
  r.dg_error = m.dg_error;
  r.energy_t = m.energy_t;
  r.rate = kNaN;
  return r;
}

void write_svg(const Writer& w, const ExperimentConfig& cfg, const PlotAxes& axes,
               const std::vector<PlotSeries>& series) {
  if (cfg.output_svg.empty()) return;
  auto out = w.open(cfg.output_svg);
  write_svg_chart(out, axes, series);
}

void log_line(std::ostream* log, const std::string& s) {
  if (log) *log << s << std::endl;
}

}  // namespace

std::optional<CharacteristicProfile> reference_for(const ExperimentConfig& cfg, const Mesh& mesh,
                                                   const ProblemData& data) {
  if (!mesh.materials().is_homogeneous()) return std::nullopt;
  if (cfg.reference == "free-space") {
    return CharacteristicProfile(mesh.domain(), mesh.materials(), data.initial, Extension::FreeSpace);
  }
  if (data.bc.kind == BoundaryKind::DirichletData || data.source) return std::nullopt;
  return CharacteristicProfile::for_problem(mesh, data);
}

RunMetrics run_once(const ExperimentConfig& cfg) {
  auto mesh = std::make_shared<const Mesh>(build_mesh(cfg));
  auto disc = std::make_shared<const Discretization>(mesh, build_basis(cfg));
  const auto data = build_problem(cfg);
  MarchOptions opts;
  opts.assembly = build_assembly_options(cfg);
  const auto sol = march(disc, data, opts);

  RunMetrics m;
  m.dofs = disc->num_dofs();
  m.interface_energies = slab_interface_energies(sol, data.initial);
  m.energy_t = m.interface_energies.back();
  if (auto ref = reference_for(cfg, *mesh, data)) {
    m.eps_q = l2_relative_error(sol, *ref);
    m.dg_error = dg_error(sol, *ref, data.flux, data.bc.kind);
  } else {
    m.eps_q = kNaN;
    m.dg_error = kNaN;
  }
  return m;
}

SpectrumRow spectrum_for(const ExperimentConfig& cfg, int p, SpectrumOptions options) {
  // Two slabs carry all the information U needs.
  ExperimentConfig two = cfg;
  two.degree = p;
  two.degrees.clear();
  two.domain.t_final = 2.0 * cfg.ht;
  two.slab_heights.clear();
  auto mesh = std::make_shared<const Mesh>(build_mesh(two));
  auto disc = std::make_shared<const Discretization>(mesh, build_basis(two));
  const auto data = build_problem(two);
  const auto U = update_matrix(disc, data, build_assembly_options(two));
  const auto sp = spectrum(U, options);

  SpectrumRow row;
  row.p = p;
  row.dofs = static_cast<std::size_t>(U.rows());
  row.spectral_radius = sp.spectral_radius;
  row.condition_u = options.condition ? sp.condition : kNaN;
  row.eigenvalues = sp.eigenvalues;
  if (options.condition) {
    const SlabAssembler assembler(disc, data, build_assembly_options(two));
    row.condition_a = condition_number(assembler.self_matrix(1));
  } else {
    row.condition_a = kNaN;
  }
  return row;
}

std::string output_directory(const ExperimentConfig& cfg) {
  if (const char* env = std::getenv("TREFFTZ_OUTPUT_DIR"); env && *env) return env;
  return cfg.output_dir;
}

ExperimentOutcome run_experiment(const ExperimentConfig& cfg, std::ostream* log) {
  if (auto diag = validate(cfg); !diag.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& d : diag) msg += "\n  " + d;
    throw Error(ErrorCode::ConfigParse, msg);
  }

  ExperimentOutcome out;
  const fs::path dir = output_directory(cfg);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::ConfigParse, "cannot create output directory '" + dir.string() + "'");
  const Writer w{dir, &out.artifacts};

  if (cfg.flux.penalty_free()) {
    log_line(log, "warning: alpha = 0 or beta = 0 is outside the coercivity analysis");
  }

  const auto& kind = cfg.experiment;
  if (kind == "run") {
    const auto m = run_once(cfg);
    out.report.rows.push_back(make_row(cfg, kind, m));
    out.report.slab_energies = m.interface_energies;
    out.summary.push_back("dofs " + std::to_string(m.dofs) + ", eps_Q " + num(m.eps_q) + ", dg_error " +
                          num(m.dg_error) + ", energy(T) " + num(m.energy_t));

    // coefficients for post-processing
    auto mesh = std::make_shared<const Mesh>(build_mesh(cfg));
    auto disc = std::make_shared<const Discretization>(mesh, build_basis(cfg));
    MarchOptions opts;
    opts.assembly = build_assembly_options(cfg);
    const auto sol = march(disc, build_problem(cfg), opts);
    auto coeffs = w.open("coefficients.csv");
    sol.write_csv(coeffs);

    auto plot = w.open(cfg.output_plot);
    plot << "t\tenergy\n";
    PlotSeries s{"energy", {}, {}};
    for (std::size_t j = 0; j < m.interface_energies.size(); ++j) {
      plot << num(mesh->slab_times()[j]) << '\t' << num(m.interface_energies[j]) << '\n';
      s.x.push_back(mesh->slab_times()[j]);
      s.y.push_back(m.interface_energies[j]);
    }
    write_svg(w, cfg, {"Discrete energy at slab interfaces", "t", "energy"}, {s});
  } else if (kind == "sweep_h") {
    std::vector<double> hs, errs;
    for (double h : cfg.sweep_h) {
      auto c = cfg;
      c.hx = c.ht = h;
      c.slab_heights.clear();
      c.partitions.clear();
      const auto m = run_once(c);
      log_line(log, "h = " + num(h) + ": eps_Q = " + num(m.eps_q));
      out.report.rows.push_back(make_row(c, kind, m));
      hs.push_back(h);
      errs.push_back(m.eps_q);
    }
    if (hs.size() >= 3 && std::all_of(errs.begin(), errs.end(), [](double e) { return std::isfinite(e); })) {
      out.report.fit = fit_rates(hs, errs, RateModel::Algebraic);
      for (auto& r : out.report.rows) r.rate = out.report.fit.slope;
      out.summary.push_back("fitted order " + num(out.report.fit.slope) +
                            (out.report.fit.dropped_coarsest ? " (coarsest sample excluded)" : ""));
    }
    auto plot = w.open(cfg.output_plot);
    plot << "h\teps_Q\n";
    for (std::size_t i = 0; i < hs.size(); ++i) plot << num(hs[i]) << '\t' << num(errs[i]) << '\n';
    write_svg(w, cfg, {"h-convergence", "h", "eps_Q", true, true}, {{to_string(cfg.family), hs, errs}});
  } else if (kind == "sweep_p") {
    std::vector<double> ps, errs;
    for (int p : cfg.sweep_p) {
      auto c = cfg;
      c.degree = p;
      c.degrees.clear();
      const auto m = run_once(c);
      log_line(log, "p = " + std::to_string(p) + ": eps_Q = " + num(m.eps_q));
      out.report.rows.push_back(make_row(c, kind, m));
      ps.push_back(p);
      errs.push_back(m.eps_q);
    }
    if (ps.size() >= 3 && std::all_of(errs.begin(), errs.end(), [](double e) { return std::isfinite(e) && e > 0; })) {
      out.report.fit = fit_rates(ps, errs, RateModel::Exponential);
      for (auto& r : out.report.rows) r.rate = out.report.fit.slope;
      out.summary.push_back("semilog slope " + num(out.report.fit.slope) + ", fit residual rms " +
                            num(out.report.fit.rms_residual));
    }
    auto plot = w.open(cfg.output_plot);
    plot << "p\teps_Q\n";
    for (std::size_t i = 0; i < ps.size(); ++i) plot << ps[i] << '\t' << num(errs[i]) << '\n';
    write_svg(w, cfg, {"p-convergence", "p", "eps_Q", false, true}, {{to_string(cfg.family), ps, errs}});
  } else if (kind == "sweep_flux") {
    const auto alphas = flux_grid(cfg.sweep_alpha);
    const auto betas = flux_grid(cfg.sweep_beta);
    auto plot = w.open(cfg.output_plot);
    plot << "alpha\tbeta\teps_Q\n";
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    std::vector<PlotSeries> series;
    for (double a : alphas) {
      PlotSeries s{"alpha=" + num(a), {}, {}};
      for (double b : betas) {
        auto c = cfg;
        c.flux.alpha = a;
        c.flux.beta = b;
        const auto m = run_once(c);
        out.report.rows.push_back(make_row(c, kind, m));
        plot << num(a) << '\t' << num(b) << '\t' << num(m.eps_q) << '\n';
        lo = std::min(lo, m.eps_q);
        hi = std::max(hi, m.eps_q);
        s.x.push_back(b);
        s.y.push_back(m.eps_q);
      }
      log_line(log, "alpha = " + num(a) + " done");
      series.push_back(std::move(s));
    }
    out.summary.push_back("eps_Q range [" + num(lo) + ", " + num(hi) + "], max/min " + num(hi / lo));
    write_svg(w, cfg, {"Flux parameter sweep", "beta", "eps_Q", false, true}, series);
  } else if (kind == "spectrum") {
    auto summary = w.open(cfg.output_csv);
    summary << "p,family,dofs,spectral_radius,condition_U,condition_A\n";
    PlotSeries cond{"cond(U)", {}, {}};
    for (int p : cfg.sweep_p) {
      auto row = spectrum_for(cfg, p);
      log_line(log, "p = " + std::to_string(p) + ": max |lambda| = " + num(row.spectral_radius));
      summary << p << ',' << to_string(cfg.family) << ',' << row.dofs << ',' << num(row.spectral_radius) << ','
              << num(row.condition_u) << ',' << num(row.condition_a) << '\n';
      auto eig = w.open("eigenvalues_p" + std::to_string(p) + ".csv");
      eig << "re,im,modulus\n";
      for (Eigen::Index i = 0; i < row.eigenvalues.size(); ++i) {
        const auto z = row.eigenvalues[i];
        eig << num(z.real()) << ',' << num(z.imag()) << ',' << num(std::abs(z)) << '\n';
      }
      cond.x.push_back(p);
      cond.y.push_back(row.condition_u);
      row.eigenvalues.resize(0);
      out.spectra.push_back(std::move(row));
    }
    double rmax = 0.0;
    for (const auto& r : out.spectra) rmax = std::max(rmax, r.spectral_radius);
    out.summary.push_back("max eigenvalue modulus " + num(rmax));
    write_svg(w, cfg, {"Update-matrix conditioning", "p", "cond(U)", false, true}, {cond});
  } else if (kind == "energy") {
    auto mesh = std::make_shared<const Mesh>(build_mesh(cfg));
    auto disc = std::make_shared<const Discretization>(mesh, build_basis(cfg));
    const auto data = build_problem(cfg);
    MarchOptions opts;
    opts.assembly = build_assembly_options(cfg);
    const auto sol = march(disc, data, opts);
    const auto budget = energy_budget(sol, data, opts.assembly);
    const auto energies = slab_interface_energies(sol, data.initial);
    RunMetrics m;
    m.energy_t = budget.final_energy;
    m.eps_q = m.dg_error = kNaN;
    if (auto ref = reference_for(cfg, *mesh, data)) {
      m.eps_q = l2_relative_error(sol, *ref);
      m.dg_error = dg_error(sol, *ref, data.flux, data.bc.kind);
    }
    out.report.rows.push_back(make_row(cfg, kind, m));
    out.report.slab_energies = energies;
    out.budget = budget;

    bool monotone = true;
    for (std::size_t j = 1; j < energies.size(); ++j) {
      if (energies[j] > energies[j - 1] + 1e-12 * energies.front()) monotone = false;
    }
    out.summary.push_back("energy identity residual " + num(budget.residual) + " (relative to E(0))");
    out.summary.push_back(std::string("interface energies ") + (monotone ? "non-increasing" : "INCREASE detected"));

    auto b = w.open("energy_budget.csv");
    b << "term,value\n"
      << "initial," << num(budget.initial) << '\n'
      << "final," << num(budget.final_energy) << '\n'
      << "initial_mismatch," << num(budget.initial_mismatch) << '\n'
      << "horizontal_jumps," << num(budget.horizontal_jumps) << '\n'
      << "vertical_jumps," << num(budget.vertical_jumps) << '\n'
      << "lateral," << num(budget.lateral) << '\n'
      << "boundary_work," << num(budget.boundary_work) << '\n'
      << "residual," << num(budget.residual) << '\n';
    auto plot = w.open(cfg.output_plot);
    plot << "t\tenergy\n";
    PlotSeries s{"energy", {}, {}};
    for (std::size_t j = 0; j < energies.size(); ++j) {
      plot << num(mesh->slab_times()[j]) << '\t' << num(energies[j]) << '\n';
      s.x.push_back(mesh->slab_times()[j]);
      s.y.push_back(energies[j]);
    }
    write_svg(w, cfg, {"Discrete energy at slab interfaces", "t", "energy"}, {s});
  }

  if (kind != "spectrum") {
    auto csv = w.open(cfg.output_csv);
    out.report.write_csv(csv);
  }
  auto manifest = w.open("manifest.cfg");
  manifest << to_manifest(cfg);
  manifest << "# eigen " << EIGEN_WORLD_VERSION << '.' << EIGEN_MAJOR_VERSION << '.' << EIGEN_MINOR_VERSION << '\n';
  return out;
}

}  // namespace trefftz

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "graphlike/correspondence.hpp"
#include "graphlike/csv.hpp"
#include "graphlike/generators.hpp"
#include "graphlike/graph_io.hpp"
#include "graphlike/random_pairs.hpp"
#include "graphlike/sweep.hpp"

namespace fs = std::filesystem;
using namespace graphlike;

namespace {

struct RunConfig {
  std::string graph_file;
  std::vector<double> eps{0.3, 0.15, 0.075};
  double mesh_h = 1e-3;
  int mesh_across = 6;
  int num_eigs = 6;
  double lambda_max = 30.0;
  double lead_length = 10.0;
  std::string out_dir = ".";
  unsigned seed = 2024;
  int generations = 3;
  int levels = 2;
  int trials = 100;
};

std::ofstream open_out(const RunConfig& c, const std::string& name) {
  fs::create_directories(c.out_dir);
  const fs::path p = fs::path(c.out_dir) / name;
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  return os;
}

MetricGraph finite_graph(const GraphFile& gf, double lead_length) {
  return gf.graph.has_leads() ? truncate_leads(gf.graph, lead_length) : gf.graph;
}

int cmd_spectrum(const RunConfig& c) {
  const GraphFile gf = load_graph_file(c.graph_file);
  const MetricGraph g = finite_graph(gf, c.lead_length);
  const FemSystem sys = assemble_kirchhoff(g, c.mesh_h);
  const std::vector<MetricEigenpair> modes = eigenpairs(sys, c.num_eigs);
  std::vector<double> vals;
  for (const auto& m : modes) vals.push_back(m.lambda);
  const std::vector<int> mult = cluster_multiplicities(vals);

  std::ofstream os = open_out(c, "spectrum.csv");
  csv_row(os, {"index", "eigenvalue", "est_multiplicity"});
  for (std::size_t i = 0; i < vals.size(); ++i) {
    csv_row(os, {std::to_string(i), fmt12(vals[i]), std::to_string(mult[i])});
    std::cout << i << ' ' << fmt12(vals[i]) << " x" << mult[i] << '\n';
  }
  std::ofstream ef = open_out(c, "eigenfunctions.csv");
  csv_row(ef, {"mode", "edge_id", "x", "value"});
  constexpr int kSamples = 100;
  for (std::size_t k = 0; k < modes.size(); ++k)
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      const double l = g.edges()[e].length;
      for (int i = 0; i <= kSamples; ++i) {
        const double x = l * i / kSamples;
        csv_row(ef, {std::to_string(k), std::to_string(g.edges()[e].id), fmt12(x), fmt12(modes[k].eval(e, x))});
      }
    }
  return 0;
}

std::string delta_text(const SweepPoint& p) {
  std::ostringstream os;
  const DeltaReport& d = p.delta;
  os << "eps " << fmt12(p.eps) << "\n"
     << "graph_dofs " << p.graph_dofs << "\nmanifold_dofs " << p.manifold_dofs << "\n"
     << "delta_scale " << fmt12(d.scale) << "\ndelta_scale_prime " << fmt12(d.scale_prime) << "\n"
     << "delta_adj " << fmt12(d.adj) << "\ndelta_comm " << fmt12(d.comm) << "\n"
     << "delta_inv " << fmt12(d.inv) << "\ndelta_inv_prime " << fmt12(d.inv_prime) << "\n"
     << "norm_J " << fmt12(d.norm_J) << "\nnorm_Jp " << fmt12(d.norm_Jp) << "\nbounded " << (d.bounded() ? "yes" : "no") << "\n"
     << "delta " << fmt12(d.delta) << "\n";
  for (std::size_t j = 0; j < p.resolvent.size(); ++j)
    os << "resolvent_power_" << j + 1 << ' ' << fmt12(p.resolvent[j].measured) << " bound " << fmt12(p.resolvent[j].bound)
       << (p.resolvent[j].pass() ? " pass" : " FAIL") << "\n";
  if (p.eigvec)
    os << "eigvec_lambda " << fmt12(p.eigvec->lambda) << "\neigvec_distance " << fmt12(p.eigvec->distance) << " bound "
       << fmt12(p.eigvec->eta1) << "\neigvec_distance_back " << fmt12(p.eigvec->distance_back) << " bound "
       << fmt12(p.eigvec->eta2) << "\neigvec_overlap " << fmt12(p.eigvec->overlap) << "\n";
  os << "dbar_spectra " << fmt12(p.dbar) << "\n";
  return os.str();
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

int cmd_sweep(const RunConfig& c) {
  if (c.eps.empty()) throw std::runtime_error("--eps: at least one value required");
  for (std::size_t i = 0; i < c.eps.size(); ++i) {
    if (!(c.eps[i] > 0.0)) throw std::runtime_error("--eps: values must be positive");
    if (i && !(c.eps[i] < c.eps[i - 1])) throw std::runtime_error("--eps: values must be strictly decreasing");
  }
  const GraphFile gf = load_graph_file(c.graph_file);
  if (!gf.embedding) throw GraphFileError("embedding", "missing (sweep needs an embedded graph)");
  const EmbeddedGraph& eg = *gf.embedding;
  const std::vector<double> reference = to_std(lowest_eigenvalues(assemble_kirchhoff(eg.weighted_graph(), c.mesh_h), c.num_eigs));

  std::vector<SweepPoint> rows;
  for (double eps : c.eps) {
    ThinMesh mesh;
    rows.push_back(run_sweep_point(eg, eps, c.mesh_across, reference, c.lambda_max, &mesh));
    std::ofstream mo = open_out(c, "mesh_eps_" + fmt12(eps) + ".txt");
    write_mesh(mo, mesh, eg.graph());
    open_out(c, "delta_eps_" + fmt12(eps) + ".txt") << delta_text(rows.back());
  }

  std::ofstream os = open_out(c, "sweep.csv");
  std::vector<std::string> head{"eps", "delta_scale", "delta_scale_prime", "delta_adj", "delta_comm", "delta_inv",
                                "delta_inv_prime", "delta", "resolvent_defect", "bound_4delta", "dbar_spectra",
                                "norm_J", "norm_Jp", "eigvec_lambda", "eigvec_distance", "eigvec_eta1"};
  for (int k = 0; k < c.num_eigs; ++k)
    for (const char* s : {"lambda_mfd_", "lambda_graph_", "err_"}) head.push_back(s + std::to_string(k));
  csv_row(os, head);
  for (const SweepPoint& p : rows) {
    const DeltaReport& d = p.delta;
    std::vector<std::string> r{fmt12(p.eps), fmt12(d.scale), fmt12(d.scale_prime), fmt12(d.adj), fmt12(d.comm),
                               fmt12(d.inv), fmt12(d.inv_prime), fmt12(d.delta), fmt12(p.resolvent[0].measured),
                               fmt12(p.resolvent[0].bound), fmt12(p.dbar), fmt12(d.norm_J), fmt12(d.norm_Jp)};
    for (double v : p.eigvec ? std::vector<double>{p.eigvec->lambda, p.eigvec->distance, p.eigvec->eta1}
                             : std::vector<double>(3, std::nan("")))
      r.push_back(fmt12(v));
    for (int k = 0; k < c.num_eigs; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      if (kk < p.errors.size())
        r.insert(r.end(), {fmt12(p.manifold_eigs[kk]), fmt12(p.graph_eigs[kk]), fmt12(p.errors[kk])});
      else
        r.insert(r.end(), {"nan", "nan", "nan"});
    }
    csv_row(os, r);
  }

  std::vector<double> delta, dbar, err2, ev;
  bool res_ok = true;
  for (const SweepPoint& p : rows) {
    delta.push_back(p.delta.delta);
    dbar.push_back(p.dbar);
    if (p.errors.size() > 1) err2.push_back(p.errors[1]);
    if (p.eigvec) ev.push_back(p.eigvec->distance);
    res_ok = res_ok && p.resolvent[0].pass();
  }
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  std::cout << "delta strictly decreasing: " << yn(strictly_decreasing(delta)) << "\n"
            << "resolvent_defect <= 4 delta on every row: " << yn(res_ok) << "\n"
            << "lambda_1 error strictly decreasing: " << yn(strictly_decreasing(err2)) << "\n"
            << "eigenvector distance strictly decreasing: " << yn(strictly_decreasing(ev)) << "\n"
            << "dbar strictly decreasing: " << yn(strictly_decreasing(dbar)) << "\n";
  return 0;
}

int cmd_sierpinski(const RunConfig& c) {
  std::ofstream os = open_out(c, "sierpinski.csv");
  csv_row(os, {"kind", "level", "lo", "hi", "multiplicity"});
  const std::vector<SierpinskiValue> D = sierpinski_levels_tagged(c.levels);
  for (const auto& v : D) {
    csv_row(os, {"decimation", std::to_string(v.level), fmt12(v.z), fmt12(v.z), "1"});
    std::cout << "D " << fmt12(v.z) << " level " << v.level << '\n';
  }
  const MetricGraph g = generate_graph(kind::SierpinskiMetric{c.generations, 1.0});
  for (const SpectrumEntry& s : discrete_spectrum(discrete_laplacian(to_discrete(g))))
    csv_row(os, {"finite", std::to_string(c.generations), fmt12(s.value), fmt12(s.value), std::to_string(s.multiplicity)});

  // metric spectrum of the unit-length graph built from D_n: g-preimages plus the Dirichlet set
  std::vector<double> pts;
  for (const auto& v : D) {
    if (v.z <= 0.0 || v.z >= 2.0) continue;
    for (double l : mu_preimages(v.z, 1.0, c.lambda_max)) {
      csv_row(os, {"metric", std::to_string(v.level), fmt12(l), fmt12(l), "1"});
      pts.push_back(l);
    }
  }
  for (double l : dirichlet_spectrum(1.0, c.lambda_max)) pts.push_back(l);
  pts.push_back(0.0);
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i] - pts[i - 1] > 1e-12) csv_row(os, {"gap", std::to_string(c.levels), fmt12(pts[i - 1]), fmt12(pts[i]), "0"});
  return 0;
}

int cmd_closeness_random(const RunConfig& c) {
  if (c.trials < 0) throw std::runtime_error("--trials must be non-negative");
  const PropertySuiteReport rep = run_property_suite(c.trials, c.seed);
  open_out(c, "closeness_random.csv") << rep.text;
  std::cout << "trials " << rep.trials << ", violations " << rep.violations.total() << '\n';
  return rep.violations.total() == 0 ? 0 : 2;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graphlike: quantum graphs, thin neighbourhoods and their closeness"};
  app.require_subcommand(1);
  RunConfig c;
  std::string eps_list;
  auto common = [&](CLI::App* s) {
    s->add_option("--out-dir", c.out_dir, "output directory")->capture_default_str();
    s->add_option("--num-eigs", c.num_eigs, "number of eigenvalues")->capture_default_str()->check(CLI::PositiveNumber);
    s->add_option("--mesh-h", c.mesh_h, "1D mesh width")->capture_default_str()->check(CLI::PositiveNumber);
    s->add_option("--lambda-max", c.lambda_max, "spectral window")->capture_default_str();
  };
  CLI::App* spectrum = app.add_subcommand("spectrum", "Kirchhoff spectrum of a metric graph");
  spectrum->add_option("graph", c.graph_file, "graph file")->required();
  spectrum->add_option("--lead-length", c.lead_length, "truncation length for infinite leads")->capture_default_str();
  common(spectrum);

  CLI::App* sweep = app.add_subcommand("sweep", "graph vs thin neighbourhood over a list of eps");
  sweep->add_option("graph", c.graph_file, "graph file with embedding")->required();
  sweep->add_option("--eps", eps_list, "comma separated, strictly decreasing")->default_str("0.3,0.15,0.075");
  sweep->add_option("--mesh-across", c.mesh_across, "cells across each tube (h_rel)")->capture_default_str()->check(CLI::PositiveNumber);
  common(sweep);

  CLI::App* sier = app.add_subcommand("sierpinski", "spectral decimation of the Sierpinski graph");
  sier->add_option("--generations", c.generations, "graph generation (<= 8)")->capture_default_str();
  sier->add_option("--levels", c.levels, "decimation depth")->capture_default_str();
  common(sier);

  CLI::App* rnd = app.add_subcommand("closeness-random", "property suite over random delta-close pairs");
  rnd->add_option("--trials", c.trials, "number of pairs")->capture_default_str();
  rnd->add_option("--seed", c.seed, "random seed")->capture_default_str();
  common(rnd);

  CLI11_PARSE(app, argc, argv);
  try {
    if (!eps_list.empty()) c.eps = parse_list(eps_list);
    if (*spectrum) return cmd_spectrum(c);
    if (*sweep) return cmd_sweep(c);
    if (*sier) return cmd_sierpinski(c);
    if (*rnd) return cmd_closeness_random(c);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

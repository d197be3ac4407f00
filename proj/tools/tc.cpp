// tc: command-line front end for the twisted-curve root engine.

#include <cstdint>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twspin/enumerate.hpp"
#include "twspin/errors.hpp"
#include "twspin/graph.hpp"
#include "twspin/io.hpp"
#include "twspin/orbits.hpp"
#include "twspin/picard.hpp"
#include "twspin/sweep.hpp"

using namespace twspin;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "json";
  std::uint64_t seed = 1;
  std::int64_t max_domain = 1'000'000;
  int max_vertices = kDefaultMaxVertices;
  int jobs = 0;

  std::string graph_path;
  std::int64_t r = 0;
  std::string bundle;
  std::string bundle_file;
  std::int64_t g = 2;
  int n = 0;
  std::int64_t k = 1;
  std::vector<std::int64_t> stabilizers;
  std::vector<std::int64_t> l;
  int samples = 10;
  bool involution = false;
  bool nontrivial = false;
};

Json big_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return Json(static_cast<std::int64_t>(v));
  }
  return Json(to_string(v));
}

std::string tsv_cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void emit(const Options& o, const Json& summary, const std::vector<Json>& records = {}) {
  if (o.format == "json") {
    std::cout << summary.dump() << '\n';
    for (const auto& rec : records) std::cout << rec.dump() << '\n';
    return;
  }
  auto row = [](const Json& obj, bool keys) {
    std::string line;
    for (const auto& [key, val] : obj.items()) {
      if (!line.empty()) line += '\t';
      line += keys ? key : tsv_cell(val);
    }
    std::cout << line << '\n';
  };
  row(summary, true);
  row(summary, false);
  if (!records.empty()) {
    std::cout << '\n';
    row(records.front(), true);
    for (const auto& rec : records) row(rec, false);
  }
}

GraphPtr load_graph(const Options& o) {
  if (o.graph_path.empty()) throw UsageError("a graph file (or '-') is required");
  return share(parse_graph(read_input(o.graph_path)));
}

void require_r(const Options& o) {
  if (o.r < 1) throw UsageError("-r must be a positive integer");
}

LineBundleData load_bundle(const Options& o, const GraphPtr& graph, bool required) {
  if (!o.bundle.empty() && !o.bundle_file.empty()) throw UsageError("--bundle and --bundle-file are exclusive");
  if (!o.bundle_file.empty()) return parse_bundle(graph, read_input(o.bundle_file));
  if (!o.bundle.empty()) return bundle_from_spec(graph, o.bundle);
  if (required) throw UsageError("--bundle or --bundle-file is required");
  return LineBundleData::trivial(graph);
}

RootOptions root_options(const Options& o) { return RootOptions{.max_domain = o.max_domain}; }

EnumerationLimits limits(const Options& o) {
  EnumerationLimits lim;
  lim.max_vertices = o.max_vertices;
  return lim;
}

Json roots_class_json(const RootClass& c) {
  Json j;
  j["mult"] = c.mult;
  j["gluing"] = c.gluing;
  return j;
}

int run_genus(const Options& o) {
  const auto g = load_graph(o);
  Json out;
  out["genus"] = genus(*g);
  out["b1"] = betti_number(*g);
  out["vertex_genus_sum"] = vertex_genus_sum(*g);
  emit(o, out);
  return 0;
}

int run_classify(const Options& o) {
  const auto g = load_graph(o);
  Json out;
  out["genus"] = genus(*g);
  out["stable"] = is_stable(*g);
  if (!o.l.empty()) out["l_stable"] = is_l_stable(*g, MultiIndex{o.l});
  std::vector<Json> records;
  for (int e = 0; e < g->num_edges(); ++e) {
    const auto t = classify_node(*g, e);
    Json rec;
    rec["edge"] = e;
    rec["separating"] = t.separating;
    rec["type"] = t.index;
    rec["stabilizer"] = g->edge(e).stabilizer;
    records.push_back(std::move(rec));
  }
  emit(o, out, records);
  return 0;
}

int run_torsion(const Options& o) {
  require_r(o);
  const auto g = load_graph(o);
  Json out;
  out["torsion_count"] = big_json(torsion_count(*g, o.r));
  emit(o, out);
  return 0;
}

int run_roots(const Options& o) {
  require_r(o);
  const auto g = load_graph(o);
  const auto F = load_bundle(o, g, true);
  Json out;
  out["count"] = big_json(count_roots(F, o.r, root_options(o)));
  emit(o, out);
  return 0;
}

int run_criterion(const Options& o) {
  require_r(o);
  const auto g = load_graph(o);
  const auto F = load_bundle(o, g, true);
  const auto rep = rootsnum_criterion(F, o.r);
  Json out;
  out["holds"] = rep.holds;
  out["failures"] = rep.failures.size();
  std::vector<Json> records;
  for (const auto& f : rep.failures) {
    Json rec;
    rec["edge"] = f.edge;
    rec["separating"] = f.separating;
    rec["reason"] = f.reason;
    records.push_back(std::move(rec));
  }
  emit(o, out, records);
  return 0;
}

int run_lift(const Options& o) {
  require_r(o);
  const auto g = load_graph(o);
  const auto F = load_bundle(o, g, true);
  const auto R = construct_root(F, o.r, root_options(o));
  Json out;
  out["found"] = R.has_value();
  if (R) {
    if (!(rth_power(*R, o.r) == F)) throw Error(ErrorKind::Internal, "constructed root does not power to F");
    out["root"] = bundle_to_json(*R);
  } else {
    out["root"] = nullptr;
  }
  emit(o, out);
  return 0;
}

int run_orbits(const Options& o) {
  require_r(o);
  const auto g = load_graph(o);
  const auto F = load_bundle(o, g, false);
  const auto res = orbit_count(F, o.r, OrbitOptions{.with_involution = o.involution, .exclude_trivial = o.nontrivial},
                               root_options(o));
  Json out;
  out["classes"] = res.classes.size();
  out["orbits"] = res.num_orbits;
  out["group_order"] = big_json(res.group_order);
  out["burnside"] = big_json(res.burnside_count);
  std::vector<Json> records;
  for (std::size_t i = 0; i < res.orbits.size(); ++i) {
    Json rec;
    rec["orbit"] = i;
    rec["size"] = res.orbits[i].size();
    Json members = Json::array();
    for (auto idx : res.orbits[i]) members.push_back(roots_class_json(res.classes[idx]));
    rec["members"] = std::move(members);
    records.push_back(std::move(rec));
  }
  emit(o, out, records);
  return 0;
}

int run_enumerate(const Options& o) {
  std::vector<DualGraph> graphs;
  if (!o.l.empty()) {
    graphs = enumerate_l_stable_graphs(o.g, o.n, MultiIndex{o.l}, limits(o));
  } else {
    const auto choices = o.stabilizers.empty() ? std::vector<std::int64_t>{1} : o.stabilizers;
    graphs = enumerate_stable_graphs(o.g, o.n, choices, limits(o));
  }
  Json out;
  out["count"] = graphs.size();
  std::vector<Json> records;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    Json rec;
    rec["index"] = i;
    rec["label"] = canonical_form(graphs[i], o.max_vertices);
    rec["graph"] = graph_to_json(graphs[i]);
    records.push_back(std::move(rec));
  }
  emit(o, out, records);
  return 0;
}

int run_verify_rootsnum(const Options& o) {
  require_r(o);
  const auto choices = o.stabilizers.empty() ? std::vector<std::int64_t>{1, 2} : o.stabilizers;
  const auto graphs = enumerate_stable_graphs(o.g, o.n, choices, limits(o));
  std::mt19937_64 rng(o.seed);
  std::vector<RootsnumCase> cases;
  std::vector<std::size_t> graph_of;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const auto G = share(graphs[i]);
    for (std::int64_t k : {1, 2, 0}) {
      cases.push_back({omega_twisted(G, k), o.r});
      graph_of.push_back(i);
    }
    for (int s = 0; s < o.samples; ++s) {
      cases.push_back({random_bundle(G, o.r, rng), o.r});
      graph_of.push_back(i);
    }
  }
  const auto outcomes = rootsnum_sweep(cases, root_options(o), Exec::parallel);
  std::size_t applicable = 0;
  std::vector<Json> records;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].applicable) ++applicable;
    if (outcomes[i].agrees()) continue;
    Json rec;
    rec["graph"] = graph_to_json(graphs[graph_of[i]]);
    rec["bundle"] = bundle_to_json(cases[i].bundle);
    rec["criterion"] = outcomes[i].criterion;
    rec["count"] = big_json(outcomes[i].count);
    records.push_back(std::move(rec));
  }
  Json out;
  out["graphs"] = graphs.size();
  out["cases"] = cases.size();
  out["applicable"] = applicable;
  out["discrepancies"] = records.size();
  emit(o, out, records);
  return 0;
}

int run_verify_cond(const Options& o) {
  require_r(o);
  if (o.l.empty()) throw UsageError("--l is required");
  const auto rep = verify_cond(o.g, o.r, MultiIndex{o.l}, o.k, root_options(o));
  Json out;
  out["equivalent"] = rep.equivalent;
  out["hypothesis"] = rep.hypothesis;
  out["predicted"] = rep.predicted;
  out["all_full"] = rep.all_full;
  out["graphs"] = rep.graphs_checked;
  out["expected"] = big_json(rep.expected);
  out["witnesses"] = rep.witnesses.size();
  std::vector<Json> records;
  for (const auto& w : rep.witnesses) {
    Json rec;
    rec["label"] = canonical_form(w.graph, o.max_vertices);
    rec["count"] = big_json(w.count);
    rec["graph"] = graph_to_json(w.graph);
    records.push_back(std::move(rec));
  }
  emit(o, out, records);
  return 0;
}

int run_nr(const Options& o) {
  require_r(o);
  const auto rep = nr_report(o.r);
  Json out;
  out["degree"] = rep.degree;
  out["j1728"] = rep.n_j1728;
  out["j0"] = rep.n_j0;
  out["cusp"] = rep.n_cusp;
  out["chi"] = rep.euler;
  out["genus"] = rep.genus_nr;
  emit(o, out);
  return 0;
}

int run_ratio(const Options& o) {
  require_r(o);
  const auto q = aj_aut_ratio(o.r, o.stabilizers);
  Json out;
  out["numerator"] = big_json(numerator(q));
  out["denominator"] = big_json(denominator(q));
  emit(o, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact root counts and orbit statistics on twisted nodal curves"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "tsv"}));
  app.add_option("--seed", o.seed, "Seed for randomized suites");
  app.add_option("--max-domain", o.max_domain, "Cap on root-search domains")
      ->envname("TC_MAX_DOMAIN")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-vertices", o.max_vertices, "Vertex bound for enumeration")->check(CLI::Range(1, 12));
  app.add_option("--jobs", o.jobs, "Worker threads for verify-* commands")->check(CLI::PositiveNumber);

  auto add_graph = [&](CLI::App* sub) { sub->add_option("graph", o.graph_path, "Graph JSON file, '-' for stdin"); };
  auto add_r = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("-r", o.r, "Root order")->check(CLI::PositiveNumber);
    if (required) opt->required();
  };
  auto add_bundle = [&](CLI::App* sub) {
    sub->add_option("--bundle", o.bundle, "omega:k=K[,h=ID:VAL,...] or trivial");
    sub->add_option("--bundle-file", o.bundle_file, "Bundle JSON file");
  };

  auto* genus_cmd = app.add_subcommand("genus", "Genus and first Betti number");
  add_graph(genus_cmd);
  auto* classify_cmd = app.add_subcommand("classify", "Node types and stability");
  add_graph(classify_cmd);
  classify_cmd->add_option("--l", o.l, "Multi-index l_0,...,l_[g/2]")->delimiter(',');
  auto* torsion_cmd = app.add_subcommand("torsion", "Number of r-torsion line bundles");
  add_graph(torsion_cmd);
  add_r(torsion_cmd, true);
  auto* roots_cmd = app.add_subcommand("roots", "Number of r-th roots of a bundle");
  add_graph(roots_cmd);
  add_r(roots_cmd, true);
  add_bundle(roots_cmd);
  auto* criterion_cmd = app.add_subcommand("criterion", "Numerical criterion for r^(2g) roots");
  add_graph(criterion_cmd);
  add_r(criterion_cmd, true);
  add_bundle(criterion_cmd);
  auto* lift_cmd = app.add_subcommand("lift", "Construct one r-th root");
  add_graph(lift_cmd);
  add_r(lift_cmd, true);
  add_bundle(lift_cmd);
  auto* orbits_cmd = app.add_subcommand("orbits", "Ghost orbits on root classes of a rational graph");
  add_graph(orbits_cmd);
  add_r(orbits_cmd, true);
  add_bundle(orbits_cmd);
  orbits_cmd->add_flag("--involution", o.involution, "Also quotient by (mult, gluing) -> (-mult, -gluing)");
  orbits_cmd->add_flag("--nontrivial", o.nontrivial, "Drop the trivial class");
  auto* enumerate_cmd = app.add_subcommand("enumerate", "Stable decorated graphs up to isomorphism");
  enumerate_cmd->add_option("-g", o.g, "Genus")->required();
  enumerate_cmd->add_option("-n", o.n, "Number of legs")->check(CLI::NonNegativeNumber);
  enumerate_cmd->add_option("--stabilizers", o.stabilizers, "Stabilizer choices")->delimiter(',');
  enumerate_cmd->add_option("--l", o.l, "Force l-stability with this multi-index")->delimiter(',');
  auto* vr_cmd = app.add_subcommand("verify-rootsnum", "Criterion versus count over enumerated graphs");
  vr_cmd->add_option("-g", o.g, "Genus")->required();
  vr_cmd->add_option("-n", o.n, "Number of legs")->check(CLI::NonNegativeNumber);
  add_r(vr_cmd, true);
  vr_cmd->add_option("--stabilizers", o.stabilizers, "Stabilizer choices")->delimiter(',');
  vr_cmd->add_option("--samples", o.samples, "Random bundles per graph")->check(CLI::NonNegativeNumber);
  auto* vc_cmd = app.add_subcommand("verify-cond", "Torsor condition versus exhaustive root counts");
  vc_cmd->add_option("-g", o.g, "Genus")->required();
  add_r(vc_cmd, true);
  vc_cmd->add_option("--l", o.l, "Multi-index l_0,...,l_[g/2]")->delimiter(',')->required();
  vc_cmd->add_option("-k", o.k, "Power of the dualizing sheaf");
  auto* nr_cmd = app.add_subcommand("nr", "Fibre data and genus of the spin curve over M_1,1");
  add_r(nr_cmd, true);
  auto* ratio_cmd = app.add_subcommand("ratio", "Automorphism ratio r^m / prod d_i");
  add_r(ratio_cmd, true);
  ratio_cmd->add_option("--stabilizers", o.stabilizers, "Node stabilizers d_1,...,d_m")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (o.jobs > 0) set_worker_count(o.jobs);
    const auto* sub = app.get_subcommands().front();
    const auto& name = sub->get_name();
    if (name == "genus") return run_genus(o);
    if (name == "classify") return run_classify(o);
    if (name == "torsion") return run_torsion(o);
    if (name == "roots") return run_roots(o);
    if (name == "criterion") return run_criterion(o);
    if (name == "lift") return run_lift(o);
    if (name == "orbits") return run_orbits(o);
    if (name == "enumerate") return run_enumerate(o);
    if (name == "verify-rootsnum") return run_verify_rootsnum(o);
    if (name == "verify-cond") return run_verify_cond(o);
    if (name == "nr") return run_nr(o);
    if (name == "ratio") return run_ratio(o);
    throw UsageError("unknown command " + name);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    Json err;
    err["error"] = std::string(error_kind_name(e.kind()));
    err["message"] = e.what();
    std::cerr << err.dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    Json err;
    err["error"] = "Internal";
    err["message"] = e.what();
    std::cerr << err.dump() << '\n';
    return 1;
  }
}

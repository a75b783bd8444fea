#include "obslab_cli/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "obslab/detectors.hpp"
#include "obslab/error.hpp"
#include "obslab/extractors.hpp"
#include "obslab/generators.hpp"
#include "obslab/graph_io.hpp"
#include "obslab/structures.hpp"
#include "obslab/treewidth.hpp"
#include "obslab_cli/suites.hpp"

namespace obslab::cli {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

constexpr int kViolation = 2;

std::string slurp(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InvalidInput("malformed JSON");
  if (!j.is_object()) throw InvalidInput("expected a JSON object");
  return j;
}

const json& field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw InvalidInput(std::string("document lacks \"") + key + "\"");
  return doc.at(key);
}

// A bare graph, or any document carrying one under "graph".
Graph graph_of(const json& doc) { return graph_from_json(doc.contains("graph") ? doc.at("graph") : doc).graph; }

Graph read_graph_input(std::istream& in) {
  const std::string text = slurp(in);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return graph_of(parse_json(text));
  return graph_from_edgelist(text);
}

std::vector<int> int_list(const json& j, const char* what) {
  if (!j.is_array()) throw InvalidInput(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw InvalidInput(std::string(what) + " must hold integers");
    out.push_back(v.get<int>());
  }
  return out;
}

CrystallizedCertificate certificate_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("certificate must be an object");
  CrystallizedCertificate c;
  c.z = field(j, "z").get<int>();
  c.z1 = field(j, "z1").get<int>();
  c.z2 = field(j, "z2").get<int>();
  c.s1 = int_list(field(j, "s1"), "s1");
  c.s2 = int_list(field(j, "s2"), "s2");
  return c;
}

Witness witness_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("witness must be an object");
  Witness w;
  w.kind = field(j, "kind").get<std::string>();
  w.vertices = int_list(field(j, "vertices"), "vertices");
  if (j.contains("roles"))
    for (auto it = j.at("roles").begin(); it != j.at("roles").end(); ++it) w.roles[it.key()] = int_list(it.value(), "roles");
  return w;
}

int int_param(const std::vector<std::string>& params, std::size_t i, const std::string& family) {
  if (i >= params.size()) throw InvalidInput("gen " + family + " needs more parameters");
  try {
    std::size_t used = 0;
    const int v = std::stoi(params[i], &used);
    if (used != params[i].size()) throw InvalidInput("");
    return v;
  } catch (const std::exception&) {
    throw InvalidInput("gen " + family + ": \"" + params[i] + "\" is not an integer");
  }
}

struct GenOptions {
  std::string family;
  std::vector<std::string> params;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  double p = 0.5;
  std::string density = "minimal";
  int noise = 0;
};

std::uint64_t seed_for(const GenOptions& o) {
  if (!o.seed) throw InvalidInput("gen " + o.family + " is randomized and needs --seed");
  return *o.seed;
}

const std::map<std::string, int>& family_arity() {
  // -1: any even number of parameters.
  static const std::map<std::string, int> arity{
      {"complete", 1},     {"biclique", 2},     {"path", 1},   {"cycle", 1},          {"wall", 1},
      {"brick-wall", 2},   {"cone-path", 1},    {"tree", 2},   {"double-star", 2},    {"crystal", -1},
      {"obstruction", 2},  {"line-of-wall", 1}, {"k-tree", 2}, {"random", 1},         {"even-hole-free", 1},
      {"phantom", 3},      {"planted-crystal", 2}};
  return arity;
}

// Returns the graph, plus the document to print when the family carries
// more than a graph.
std::pair<Graph, std::optional<ojson>> generate(const GenOptions& o) {
  const auto& f = o.family;
  const auto& ps = o.params;
  const auto known = family_arity().find(f);
  if (known == family_arity().end()) throw InvalidInput("unknown family \"" + f + "\"");
  if (known->second >= 0 && ps.size() != static_cast<std::size_t>(known->second))
    throw InvalidInput("gen " + f + " takes " + std::to_string(known->second) + " parameter(s)");
  auto arg = [&](std::size_t i) { return int_param(ps, i, f); };
  auto plain = [](Graph g) { return std::pair<Graph, std::optional<ojson>>{std::move(g), std::nullopt}; };
  if (f == "complete") return plain(complete(arg(0)));
  if (f == "biclique") return plain(complete_bipartite(arg(0), arg(1)));
  if (f == "path") return plain(path_graph(arg(0)));
  if (f == "cycle") return plain(cycle(arg(0)));
  if (f == "wall") return plain(wall(WallSpec{arg(0)}));
  if (f == "brick-wall") return plain(brick_wall(arg(0), arg(1)));
  // k counts the edges of the path.
  if (f == "cone-path") return plain(cone(path_graph(arg(0) + 1)));
  if (f == "tree") return plain(tree_T(arg(0), arg(1)).graph);
  if (f == "double-star") return plain(double_star(arg(0), arg(1)).graph);
  if (f == "crystal") {
    if (ps.empty() || ps.size() % 2 != 0) throw InvalidInput("gen crystal takes pairs a b");
    CrystalSpec spec;
    for (std::size_t i = 0; i < ps.size(); i += 2) spec.arms.emplace_back(arg(i), arg(i + 1));
    return plain(crystal_graph(spec));
  }
  if (f == "obstruction") {
    const auto kind = obstruction_kind_from_string(ps[0]);
    const bool subdivided = kind == ObstructionKind::wall || kind == ObstructionKind::line_of_wall;
    return plain(basic_obstruction(arg(1), kind, subdivided ? seed_for(o) : 0));
  }
  if (f == "line-of-wall") return plain(basic_obstruction(arg(0), ObstructionKind::line_of_wall, seed_for(o)));
  if (f == "k-tree") return plain(k_tree_random(arg(0), arg(1), seed_for(o)));
  if (f == "random") return plain(grow_random_graph(arg(0), o.p, seed_for(o), [](const Graph&) { return true; }));
  if (f == "even-hole-free") {
    auto keep = [](const Graph& g) { return !find_even_hole(g, DetectorOptions{256}); };
    return plain(grow_random_graph(arg(0), o.p, seed_for(o), keep));
  }
  if (f == "phantom") {
    if (o.density != "minimal" && o.density != "coned") throw InvalidInput("--density is minimal or coned");
    const auto density = o.density == "coned" ? PhantomDensity::coned : PhantomDensity::minimal;
    auto pp = plant_phantom(complete(arg(0)), arg(1), arg(2), seed_for(o), density);
    return {pp.graph, ojson{{"graph", graph_to_json(pp.graph)}, {"phantom", to_json(pp.phantom)}}};
  }
  // planted-crystal
  std::optional<std::uint64_t> noise_seed;
  if (o.noise > 0) noise_seed = seed_for(o);
  auto pc = plant_crystal(arg(0), arg(1), noise_seed, std::max(o.noise, 1));
  return {pc.graph, ojson{{"graph", graph_to_json(pc.graph)}, {"crystal", to_json(pc.crystal)}}};
}

int cmd_gen(const GenOptions& o, std::ostream& out) {
  if (o.p < 0.0 || o.p > 1.0) throw InvalidInput("--p must lie in [0, 1]");
  auto [g, doc] = generate(o);
  if (o.format == "edgelist") {
    if (doc) throw InvalidInput("gen " + o.family + " carries a structure and prints JSON only");
    out << graph_to_edgelist(g);
  } else {
    out << (doc ? *doc : graph_to_json(g)).dump() << '\n';
  }
  return 0;
}

struct DetectOptions {
  std::string structure;
  std::optional<int> c;
  std::optional<int> s;
  std::optional<int> t;
  std::optional<int> k;
  int guard = 64;
};

int need(const std::optional<int>& v, const char* flag, const std::string& structure) {
  if (!v) throw InvalidInput("detect " + structure + " needs " + flag);
  return *v;
}

int cmd_detect(const DetectOptions& o, std::istream& in, std::ostream& out) {
  const Graph g = read_graph_input(in);
  const DetectorOptions opts{o.guard};
  const auto& s = o.structure;
  ojson report;
  if (s == "hole") report = to_json(find_hole(g));
  else if (s == "even-hole") report = to_json(find_even_hole(g, opts));
  else if (s == "theta") report = to_json(find_theta(g, opts));
  else if (s == "prism") report = to_json(find_prism(g, opts));
  else if (s == "even-wheel") report = to_json(find_even_wheel(g, opts));
  else if (s == "clique") report = to_json(find_clique(g, need(o.c, "--c", s), opts));
  else if (s == "stable") report = to_json(find_stable_set(g, need(o.s, "--s", s), opts));
  else if (s == "biclique") {
    const int side = need(o.s, "--s", s);
    report = to_json(find_induced_biclique(g, side, side, opts));
  } else if (s == "member") {
    const auto m = membership_E_t(g, o.t, opts);
    report = to_json(m.witness);
    report["member"] = m.member;
  } else if (s == "chordal") {
    const auto r = is_chordal(g);
    report = to_json(r.hole);
    report["chordal"] = r.chordal;
    report["elimination_order"] = r.elimination_order;
  } else if (s == "k-tree") {
    const int k = need(o.k, "--k", s);
    report = {{"k", k}, {"k_tree", is_k_tree(g, k)}, {"k_forest", is_k_forest(g, k)}};
  } else if (s == "ramsey") {
    const auto r = find_clique_or_stable(g, need(o.c, "--c", s), need(o.s, "--s", s), opts);
    report = to_json(r.witness);
    report["outcome"] = r.outcome == RamseyOutcome::clique   ? "clique"
                        : r.outcome == RamseyOutcome::stable ? "stable"
                                                             : "neither";
  } else {
    throw InvalidInput("unknown structure \"" + s + "\"");
  }
  ojson line{{"structure", s}};
  for (auto it = report.begin(); it != report.end(); ++it) line[it.key()] = it.value();
  out << line.dump() << '\n';
  return 0;
}

struct TwOptions {
  bool exact = false;
  bool bounds = false;
  bool pace = false;
  int guard = 22;
};

int cmd_tw(const TwOptions& o, std::istream& in, std::ostream& out) {
  const Graph g = read_graph_input(in);
  ojson report;
  TreeDecomposition td;
  if (o.bounds) {
    auto upper = tw_upper(g);
    td = upper.decomposition;
    report = {{"mode", "bounds"}, {"n", g.order()}, {"lower", tw_lower(g)}, {"upper", upper.width}};
  } else {
    auto exact = treewidth_exact(g, ExactOptions{o.guard});
    td = exact.decomposition;
    report = {{"mode", "exact"}, {"n", g.order()}, {"width", exact.width}};
  }
  if (o.pace) {
    out << to_pace(td, g.order());
    return 0;
  }
  report["decomposition"] = to_pace(td, g.order());
  out << report.dump() << '\n';
  return 0;
}

int cmd_validate(const std::string& kind, std::istream& in, std::ostream& out) {
  const json doc = parse_json(slurp(in));
  const Graph g = graph_of(doc);
  Validation v;
  if (kind == "phantom") {
    v = validate_phantom(g, phantom_from_json(g, field(doc, "phantom")));
  } else if (kind == "crystal" || kind == "clear-crystal") {
    const Crystal c = crystal_from_json(field(doc, "crystal"));
    v = validate_crystal(g, c);
    if (!v && kind == "clear-crystal" && !is_clear_crystal(g, c))
      v = Violation{"clear", "side sets are not stable and pairwise anticomplete"};
  } else if (kind == "kaleidoscope") {
    v = validate_kaleidoscope(g, kaleidoscope_from_json(field(doc, "kaleidoscope")));
  } else if (kind == "mirrored") {
    v = check_mirrored(g, kaleidoscope_from_json(field(doc, "kaleidoscope")), vertex_set_from_json(g, field(doc, "z")),
                       field(doc, "d").get<int>());
  } else if (kind == "crystallized") {
    v = validate_crystallized(g, certificate_from_json(field(doc, "certificate")));
  } else if (kind == "decomposition") {
    std::istringstream pace(field(doc, "decomposition").get<std::string>());
    auto [td, n] = from_pace(pace);
    if (n != g.order()) v = Violation{"order", "decomposition is for " + std::to_string(n) + " vertices"};
    else v = verify_decomposition(g, td);
  } else if (kind == "witness") {
    const Witness w = witness_from_json(field(doc, "witness"));
    for (int x : w.vertices)
      if (!g.valid_vertex(x)) throw InvalidInput("witness vertex out of range");
    if (!witness_is_valid(g, w)) v = Violation{"witness", "not an induced " + w.kind};
  } else {
    throw InvalidInput("unknown kind \"" + kind + "\"");
  }
  ojson report{{"kind", kind}, {"valid", !v}, {"violation", v ? to_json(*v) : ojson(nullptr)}};
  out << report.dump() << '\n';
  return v ? kViolation : 0;
}

struct ExtractOptions {
  std::string theorem;
  int f = 1;
  int g = 1;
  int d = 1;
  std::optional<int> h;
  int t = 3;
  int depth = 1;
  int guard = 40;
};

int cmd_extract(const ExtractOptions& o, std::istream& in, std::ostream& out) {
  const json doc = parse_json(slurp(in));
  const Graph g = graph_of(doc);
  std::optional<Trace> replay;
  if (doc.contains("trace")) replay = trace_from_json(doc.at("trace"));
  const Trace* trace = replay ? &*replay : nullptr;
  const auto& th = o.theorem;
  ExtractionOutcome outcome;
  if (th == "crystallized-vertex") {
    const auto found = find_crystallized_vertex(g);
    ojson t = ojson::array();
    for (const auto& s : found.trace) t.push_back(to_json(s));
    out << ojson{{"variant", "crystallized-vertex"}, {"payload", to_json(found.certificate)}, {"trace", t}}.dump()
        << '\n';
    return 0;
  } else if (th == "brute-force-crystal") {
    const auto c = brute_force_crystal(g, o.f, o.g, BruteForceOptions{o.guard});
    out << ojson{{"variant", c ? "crystal" : "none"}, {"payload", c ? to_json(*c) : ojson(nullptr)}}.dump() << '\n';
    return 0;
  } else if (th == "clear-crystal") {
    outcome = clear_crystal(g, crystal_from_json(field(doc, "crystal")), o.f, o.g, trace);
  } else if (th == "phantom-to-crystal") {
    outcome = phantom_to_crystal(g, phantom_from_json(g, field(doc, "phantom")), o.f, o.g, trace);
  } else if (th == "phantom-to-cone-tree") {
    const Phantom p = phantom_from_json(g, field(doc, "phantom"));
    if (p.layers.empty()) throw InvalidInput("phantom has no layers");
    ConeTreeInput cin;
    cin.z_set = doc.contains("z") ? vertex_set_from_json(g, doc.at("z")) : p.z(0);
    const auto anchors = doc.contains("anchors") ? int_list(doc.at("anchors"), "anchors") : p.z(0).to_vector();
    if (anchors.size() != 3) throw InvalidInput("anchors must list z1, z2, z");
    cin.z1 = anchors[0];
    cin.z2 = anchors[1];
    cin.z = anchors[2];
    cin.d = o.d;
    cin.g = o.g;
    cin.h = o.h.value_or(cin.z_set.size());
    cin.t = o.t;
    outcome = phantom_to_cone_tree(g, p, cin, trace);
  } else if (th == "grow-2-tree") {
    const Graph nabla = graph_from_json(field(doc, "nabla")).graph;
    const auto image = int_list(field(doc, "image"), "image");
    const Phantom p = phantom_from_json(g, field(doc, "phantom"));
    outcome = grow_2_tree(g, nabla, image, p, GrowParams{o.depth, o.d, o.t}, trace);
  } else {
    throw InvalidInput("unknown theorem \"" + th + "\"");
  }
  out << to_json(outcome).dump() << '\n';
  return outcome.violated() ? kViolation : 0;
}

std::vector<std::string> tail(const std::vector<std::string>& args) {
  return args.size() > 1 ? std::vector<std::string>(args.begin() + 1, args.end()) : std::vector<std::string>{};
}

template <class F>
int timed_report(std::ostream& out, const std::string& command, const std::vector<std::string>& args,
                 std::optional<std::uint64_t> seed, F run) {
  const auto start = std::chrono::steady_clock::now();
  SuiteResult result = run();
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  write_report(out, command, tail(args), seed, result, ms);
  return result.failed() > 0 ? kViolation : 0;
}

template <class T>
void optional_option(CLI::App* app, const std::string& name, std::optional<T>& target, const std::string& help) {
  app->add_option_function<T>(name, [&target](const T& v) { target = v; }, help);
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Even-hole-free graphs and treewidth toolkit", "obslab"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a graph family");
  gen_cmd->add_option("family", gen.family, "complete, biclique, path, cycle, wall, brick-wall, cone-path, tree, "
                                            "double-star, crystal, obstruction, line-of-wall, k-tree, random, "
                                            "even-hole-free, phantom, planted-crystal")
      ->required();
  gen_cmd->add_option("params", gen.params, "Integer parameters of the family");
  optional_option(gen_cmd, "--seed", gen.seed, "Seed for randomized families");
  gen_cmd->add_option("--format", gen.format)->check(CLI::IsMember({"json", "edgelist"}));
  gen_cmd->add_option("--p", gen.p, "Edge probability for random families");
  gen_cmd->add_option("--density", gen.density, "Phantom density: minimal or coned");
  gen_cmd->add_option("--noise", gen.noise, "Noise edges for planted-crystal")->check(CLI::NonNegativeNumber);

  DetectOptions det;
  auto* det_cmd = app.add_subcommand("detect", "Search a graph read from stdin for a structure");
  det_cmd->add_option("structure", det.structure, "hole, even-hole, theta, prism, even-wheel, clique, stable, "
                                                  "biclique, member, chordal, k-tree, ramsey")
      ->required();
  optional_option(det_cmd, "--c", det.c, "Clique size");
  optional_option(det_cmd, "--s", det.s, "Stable set or biclique side size");
  optional_option(det_cmd, "--t", det.t, "Clique bound for membership in E_t");
  optional_option(det_cmd, "--k", det.k, "k for k-tree and k-forest tests");
  det_cmd->add_option("--guard", det.guard, "Detector vertex guard")->check(CLI::PositiveNumber);

  TwOptions tw;
  auto* tw_cmd = app.add_subcommand("tw", "Treewidth of a graph read from stdin");
  auto* exact_flag = tw_cmd->add_flag("--exact", tw.exact, "Exact treewidth (default)");
  tw_cmd->add_flag("--bounds", tw.bounds, "Lower and upper bounds")->excludes(exact_flag);
  tw_cmd->add_flag("--pace", tw.pace, "Print only the decomposition in PACE format");
  tw_cmd->add_option("--exact-guard", tw.guard, "Vertex guard of the exact solver")->check(CLI::PositiveNumber);

  std::string validate_kind;
  auto* val_cmd = app.add_subcommand("validate", "Check a structure against its definition");
  val_cmd->add_option("kind", validate_kind, "phantom, crystal, clear-crystal, kaleidoscope, mirrored, "
                                             "crystallized, decomposition, witness")
      ->required();

  ExtractOptions ext;
  auto* ext_cmd = app.add_subcommand("extract", "Run a constructive extractor");
  ext_cmd->add_option("theorem", ext.theorem, "crystallized-vertex, clear-crystal, phantom-to-crystal, "
                                              "phantom-to-cone-tree, grow-2-tree, brute-force-crystal")
      ->required();
  ext_cmd->add_option("--f", ext.f)->check(CLI::PositiveNumber);
  ext_cmd->add_option("--g", ext.g)->check(CLI::PositiveNumber);
  ext_cmd->add_option("--d", ext.d)->check(CLI::PositiveNumber);
  optional_option(ext_cmd, "--h", ext.h, "Size bound on Z (defaults to |Z|)");
  ext_cmd->add_option("--t", ext.t)->check(CLI::PositiveNumber);
  ext_cmd->add_option("--depth", ext.depth)->check(CLI::PositiveNumber);
  ext_cmd->add_option("--guard", ext.guard, "Brute-force vertex guard")->check(CLI::PositiveNumber);

  std::string suite;
  SuiteOptions verify;
  auto* ver_cmd = app.add_subcommand("verify", "Run a property suite and print a JSON-lines report");
  ver_cmd->add_option("suite", suite, "obstructions, class-containment, contraption, crystallized, extractors, ramsey")
      ->required();
  optional_option(ver_cmd, "--seed", verify.seed, "Base seed");
  optional_option(ver_cmd, "--n", verify.n, "Maximum number of vertices");
  optional_option(ver_cmd, "--samples", verify.samples, "Number of sampled instances");
  optional_option(ver_cmd, "--t", verify.t, "Obstruction order");
  optional_option(ver_cmd, "--c", verify.c, "Ramsey clique size");
  optional_option(ver_cmd, "--s", verify.s, "Ramsey stable set size");
  ver_cmd->add_option("--exact-guard", verify.exact_guard);

  std::string h_file;
  int scan_t = 4;
  SuiteOptions scan;
  auto* scan_cmd = app.add_subcommand("scan", "Probe treewidth of (even hole, H, K_t)-free graphs");
  scan_cmd->add_option("h", h_file, "Graph file holding H (JSON or edge list)")->required();
  scan_cmd->add_option("--t", scan_t, "Forbidden clique size");
  optional_option(scan_cmd, "--n", scan.n, "Number of vertices (default 6)");
  optional_option(scan_cmd, "--seed", scan.seed, "Seed for capped levels");
  optional_option(scan_cmd, "--samples", scan.samples, "Cap per enumeration level");
  scan_cmd->add_option("--exact-guard", scan.exact_guard);

  // CLI11 takes the arguments reversed and without the program name.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*det_cmd) return cmd_detect(det, in, out);
    if (*tw_cmd) return cmd_tw(tw, in, out);
    if (*val_cmd) return cmd_validate(validate_kind, in, out);
    if (*ext_cmd) return cmd_extract(ext, in, out);
    if (*ver_cmd) return timed_report(out, "verify", args, verify.seed, [&] { return run_verify(suite, verify); });
    if (*scan_cmd) {
      std::ifstream file(h_file);
      if (!file) throw InvalidInput("cannot open " + h_file);
      const Graph h = read_graph_input(file);
      return timed_report(out, "scan", args, scan.seed,
                          [&] { return run_scan(h, scan_t, scan.n.value_or(6), scan); });
    }
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const ScaleLimit& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const json::exception& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace obslab::cli

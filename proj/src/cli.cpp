#include "ugkit/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "ugkit/algebra.hpp"
#include "ugkit/approx.hpp"
#include "ugkit/core.hpp"
#include "ugkit/desing.hpp"
#include "ugkit/document.hpp"
#include "ugkit/lattice.hpp"
#include "ugkit/repr.hpp"

namespace ugkit {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Outcome {
  int code = kExitOk;
  std::string text;
  json result = json::object();
};

struct Options {
  std::string command;
  std::string file;
  bool json_out = false;
  bool all = false;
  std::string set;
  std::string f_edges;
  std::uint64_t depth = 0;
  bool check = false;
  std::string x_edges, y_edges;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Usage, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<EdgeId> edge_list(const Ultragraph& g, const std::string& text) {
  std::vector<EdgeId> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    item = item.substr(b, item.find_last_not_of(" \t") - b + 1);
    auto e = g.find_edge(item);
    if (!e) throw Error(ErrorCode::UnknownEdge, "unknown edge '" + item + "'");
    out.push_back(*e);
  }
  return out;
}

json edge_names(const Ultragraph& g, const std::vector<EdgeId>& es) {
  json out = json::array();
  for (auto e : es) out.push_back(g.edge_name(e));
  return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string witness_text(const Ultragraph& g, const LatticeWitness& w) {
  std::vector<std::string> parts;
  for (const auto& meet : w.intersections) {
    std::vector<std::string> rs;
    for (auto e : meet) rs.push_back("r(" + g.edge_name(e) + ")");
    parts.push_back(join(rs, " & "));
  }
  if (!w.finite_part.is_empty() || parts.empty()) {
    parts.push_back(format_set(g.universe(), w.finite_part));
  }
  return join(parts, " + ");
}

json witness_json(const Ultragraph& g, const LatticeWitness& w) {
  json meets = json::array();
  for (const auto& meet : w.intersections) meets.push_back(edge_names(g, meet));
  return {{"intersections", meets},
          {"finite_part", format_set(g.universe(), w.finite_part)},
          {"text", witness_text(g, w)}};
}

Outcome cmd_info(const Ultragraph& g) {
  Outcome o;
  const Universe& u = g.universe();
  const auto singular = singular_vertices(g);
  std::vector<std::string> emitters;
  for (auto v : singular.infinite_emitters) emitters.push_back(g.vertex_name(v));
  std::vector<std::string> named, families;
  for (const auto& e : g.named_edges()) named.push_back(e.name);
  for (const auto& f : g.families()) families.push_back(f.name);
  const auto unital = is_unital(g);
  const auto loop = condition_l(g);

  std::string singular_text = "none";
  if (!singular.none()) {
    std::vector<std::string> parts;
    if (!singular.sinks.is_empty()) {
      parts.push_back("sinks " + format_set(u, singular.sinks));
    }
    if (!emitters.empty()) parts.push_back("infinite emitters " + join(emitters, " "));
    singular_text = join(parts, "; ");
  }
  o.text = "ultragraph: " + g.name() + "\n";
  o.text += "core vertices: " + std::to_string(u.core_size()) + "\n";
  o.text += "rays: " + (u.ray_count() ? join(u.ray_names(), " ") : "none") + "\n";
  o.text += "named edges: " + std::to_string(named.size()) + "\n";
  o.text += "families: " + (families.empty() ? "none" : join(families, " ")) + "\n";
  o.text += "singular: " + singular_text + "\n";
  o.text += "unital: " +
            (unital ? "yes (witness: " + witness_text(g, *unital) + ")" : std::string("no")) +
            "\n";
  o.text += "condition (L): " +
            (loop.holds ? std::string("holds")
                        : "fails (loop without exit: " + path_name(g, loop.witness) + ")") +
            "\n";

  o.result = {{"name", g.name()},
              {"core_vertices", u.core_names()},
              {"rays", u.ray_names()},
              {"named_edges", named},
              {"families", families},
              {"sinks", format_set(u, singular.sinks)},
              {"infinite_emitters", emitters},
              {"unital", unital.has_value()},
              {"unital_witness", unital ? witness_json(g, *unital) : json(nullptr)},
              {"condition_l",
               {{"holds", loop.holds}, {"witness", edge_names(g, loop.witness)}}}};
  return o;
}

Outcome cmd_edge_matrix(const Ultragraph& g) {
  Outcome o;
  const Matrix01 a = edge_matrix(g);
  o.text = print_matrix(a);
  json rows = json::array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.size(); ++j) row.push_back(a.at(i, j));
    rows.push_back(row);
  }
  o.result = {{"labels", a.labels()}, {"rows", rows}};
  return o;
}

Outcome document_outcome(const Ultragraph& g) {
  Outcome o;
  o.text = print_document(g);
  o.result = {{"document", o.text}};
  return o;
}

std::string stem_name(const std::string& path, const std::string& fallback) {
  std::string stem = fs::path(path).stem().string();
  return is_identifier(stem) ? stem : fallback;
}

Outcome cmd_condition_l(const Ultragraph& g) {
  Outcome o;
  const auto v = condition_l(g);
  if (v.holds) {
    o.text = "condition (L): holds\n";
  } else {
    o.code = kExitFails;
    o.text = "condition (L): fails\nloop without exit: " + path_name(g, v.witness) + "\n";
  }
  o.result = {{"holds", v.holds}, {"witness", edge_names(g, v.witness)}};
  return o;
}

Outcome cmd_member(const Ultragraph& g, const std::string& set_text) {
  Outcome o;
  const VertexSet s = parse_set(g.universe(), set_text);
  const auto w = lattice_member(g, s);
  const std::string canonical = format_set(g.universe(), s);
  if (w) {
    o.text = "set: " + canonical + "\nmember: yes\nwitness: " + witness_text(g, *w) + "\n";
  } else {
    o.code = kExitFails;
    o.text = "set: " + canonical + "\nmember: no\n";
  }
  o.result = {{"set", canonical},
              {"member", w.has_value()},
              {"witness", w ? witness_json(g, *w) : json(nullptr)}};
  return o;
}

json instances_json(const std::vector<CkInstance>& xs) {
  json out = json::array();
  for (const auto& i : xs) {
    out.push_back({{"axiom", i.axiom}, {"instance", i.instance}, {"verdict", to_string(i.verdict)}});
  }
  return out;
}

Outcome cmd_approx(const Ultragraph& g, const std::string& f_text) {
  Outcome o;
  const auto f = edge_list(g, f_text);
  const ApproxFamily af = approx_family(g, f);
  const Ultragraph& t = af.target;
  std::vector<CkInstance> checks = verify_ck_assignment(t, af.assignment, g, 1).instances;
  for (auto& c : approx_identity_checks(g, af, 1)) checks.push_back(std::move(c));

  std::size_t equal = 0, not_equal = 0, unknown = 0;
  for (const auto& c : checks) {
    if (c.verdict == Verdict::Equal) ++equal;
    else if (c.verdict == Verdict::NotEqual) ++not_equal;
    else ++unknown;
  }
  o.code = equal == checks.size() ? kExitOk : kExitFails;

  o.text = print_document(t);
  o.text += "# F = { " + (f.empty() ? std::string() : path_name(g, af.graph.f) + " ") + "}\n";
  json assignment = json::object();
  for (const auto& [v, a] : af.assignment.p) {
    const std::string lhs = "p_" + t.vertex_name(v);
    o.text += "# " + lhs + " = " + format_element(g, a) + "\n";
    assignment[lhs] = format_element(g, a);
  }
  for (const auto& [e, a] : af.assignment.s) {
    const std::string lhs = "s_" + t.edge_name(e);
    o.text += "# " + lhs + " = " + format_element(g, a) + "\n";
    assignment[lhs] = format_element(g, a);
  }
  o.text += "# relations: " + std::to_string(checks.size()) + ", equal " +
            std::to_string(equal) + ", not equal " + std::to_string(not_equal) +
            ", unknown " + std::to_string(unknown) + "\n";
  for (const auto& c : checks) {
    if (c.verdict != Verdict::Equal) {
      o.text += "# " + std::string(to_string(c.verdict)) + ": " + c.axiom + " " + c.instance + "\n";
    }
  }
  o.result = {{"F", edge_names(g, af.graph.f)},
              {"document", print_document(t)},
              {"assignment", assignment},
              {"instances", instances_json(checks)},
              {"summary", {{"equal", equal}, {"not_equal", not_equal}, {"unknown", unknown}}}};
  return o;
}

Outcome cmd_desingularize(const Ultragraph& g, std::uint64_t depth) {
  if (depth == 0) throw Error(ErrorCode::Usage, "--depth must be at least 1");
  const DesingMap m = desingularize(g);
  const Truncation t = truncate(m.result, depth);
  Outcome o = document_outcome(t.graph);
  json tails = json::array();
  for (const auto& tail : m.tails) {
    tails.push_back({{"base", g.vertex_name(tail.base)},
                     {"kind", tail.emitter ? "infinite emitter" : "sink"},
                     {"ray", m.result.universe().ray_names()[tail.ray]}});
  }
  const std::string note = "truncation at depth " + std::to_string(depth) +
                           ": a finite ultragraph whose last tail vertices are sinks, not "
                           "itself a desingularization";
  o.text += "# " + note + "\n";
  for (const auto& tail : tails) {
    o.text += "# tail " + tail["ray"].get<std::string>() + " at " +
              tail["base"].get<std::string>() + " (" + tail["kind"].get<std::string>() + ")\n";
  }
  o.result["depth"] = depth;
  o.result["tails"] = tails;
  o.result["note"] = note;
  return o;
}

json matrix_json(const RationalMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational* v = m.find(i, j);
      row.push_back(v ? v->get_str() : "0");
    }
    rows.push_back(row);
  }
  return rows;
}

Outcome cmd_rep(const Ultragraph& g, bool check) {
  Outcome o;
  const MatrixCKFamily fam = path_space_rep(g);
  o.text = "dimension: " + std::to_string(fam.dim()) + "\nbasis:\n";
  json basis = json::array();
  for (std::size_t i = 0; i < fam.dim(); ++i) {
    const std::string anchor = fam.anchors[i] ? g.vertex_name(*fam.anchors[i]) : "";
    o.text += "  " + std::to_string(i) + " " + fam.labels[i] + " at " + anchor +
              " degree " + std::to_string(fam.degrees[i]) + "\n";
    basis.push_back({{"label", fam.labels[i]}, {"anchor", anchor}, {"degree", fam.degrees[i]}});
  }
  json ops = json::object();
  for (const auto& [e, m] : fam.s) {
    o.text += "s_" + g.edge_name(e) + ":\n";
    std::stringstream rows(format_matrix(m));
    for (std::string line; std::getline(rows, line);) o.text += "  " + line + "\n";
    ops[g.edge_name(e)] = matrix_json(m);
  }
  o.result = {{"dimension", fam.dim()}, {"basis", basis}, {"operators", ops}};
  if (check) {
    const CkCheckReport rep = ck_check(g, fam);
    o.text += "relations checked: " + std::to_string(rep.instances) + "\ndefects: " +
              std::to_string(rep.defects.size()) + "\n";
    json defects = json::array();
    for (const auto& d : rep.defects) {
      o.text += "  " + d.axiom + ": " + d.instance + "\n";
      defects.push_back({{"axiom", d.axiom}, {"instance", d.instance}});
    }
    for (const auto& n : rep.notices) o.text += "note: " + n + "\n";
    o.result["check"] = {{"instances", rep.instances},
                         {"defects", defects},
                         {"notices", rep.notices},
                         {"passed", rep.passed()}};
    if (!rep.passed()) o.code = kExitFails;
  }
  return o;
}

Outcome cmd_el_check(const Ultragraph& g, const std::string& xs_text,
                     const std::string& ys_text) {
  Outcome o;
  const auto xs = edge_list(g, xs_text);
  const auto ys = edge_list(g, ys_text);
  const ElResult r = el_check(g, xs, ys);
  std::string verdict;
  switch (r.kind) {
    case ElResult::Kind::Holds: verdict = "holds"; break;
    case ElResult::Kind::NotApplicable: verdict = "not applicable"; break;
    case ElResult::Kind::Fails: verdict = "fails"; break;
  }
  o.text = "X: { " + (xs.empty() ? "" : path_name(g, xs) + " ") + "}\nY: { " +
           (ys.empty() ? "" : path_name(g, ys) + " ") + "}\nrelation: " + verdict + "\n";
  if (r.kind != ElResult::Kind::NotApplicable) {
    o.text += "support: { " + (r.support.empty() ? "" : path_name(g, r.support) + " ") + "}\n";
  } else {
    o.text += "support: infinite\n";
  }
  if (r.kind == ElResult::Kind::Fails) {
    o.code = kExitFails;
    o.text += "residual: " + format_element(g, r.residual) + "\n";
  }
  o.result = {{"X", edge_names(g, xs)},
              {"Y", edge_names(g, ys)},
              {"verdict", verdict},
              {"support", r.kind == ElResult::Kind::NotApplicable ? json(nullptr)
                                                                  : edge_names(g, r.support)},
              {"residual", r.kind == ElResult::Kind::Fails ? json(format_element(g, r.residual))
                                                           : json(nullptr)}};
  return o;
}

Outcome dispatch(const Options& opt, const std::string& file) {
  const std::string& c = opt.command;
  if (c == "from-matrix") {
    Matrix01 a = parse_matrix(read_file(file));
    return document_outcome(ultragraph_from_matrix(a, stem_name(file, "from_matrix")));
  }
  if (c == "from-graph") {
    DirectedGraph h = parse_graph(read_file(file));
    return document_outcome(ultragraph_from_graph(h));
  }
  const Ultragraph g = parse_document(read_file(file));
  if (c == "info") return cmd_info(g);
  if (c == "edge-matrix") return cmd_edge_matrix(g);
  if (c == "condition-l") return cmd_condition_l(g);
  if (c == "member") return cmd_member(g, opt.set);
  if (c == "approx") return cmd_approx(g, opt.f_edges);
  if (c == "desingularize") return cmd_desingularize(g, opt.depth);
  if (c == "rep") return cmd_rep(g, opt.check);
  if (c == "el-check") return cmd_el_check(g, opt.x_edges, opt.y_edges);
  if (c == "dot") {
    Outcome o;
    o.text = to_dot(g);
    o.result = {{"dot", o.text}};
    return o;
  }
  throw Error(ErrorCode::Usage, "unknown command '" + c + "'");
}

struct Report {
  int code = kExitOk;
  std::string text;     // stdout in text mode
  std::string message;  // stderr in text mode
  json body;
};

Report run_file(const Options& opt, const std::string& file) {
  Report r;
  r.body = {{"schema", kReportSchema}, {"command", opt.command}, {"file", file}};
  try {
    Outcome o = dispatch(opt, file);
    r.code = o.code;
    r.text = std::move(o.text);
    r.body["exit_code"] = o.code;
    r.body["result"] = std::move(o.result);
    return r;
  } catch (const ValidationError& e) {
    r.code = kExitUsage;
    json issues = json::array();
    for (const auto& i : e.issues()) {
      r.message += file + ":" + i.format() + "\n";
      issues.push_back({{"code", to_string(i.code)},
                        {"message", i.message},
                        {"line", i.line},
                        {"column", i.column}});
    }
    r.body["exit_code"] = r.code;
    r.body["error"] = {{"code", to_string(e.issues().front().code)},
                       {"message", e.issues().front().message},
                       {"issues", issues}};
  } catch (const Error& e) {
    r.code = is_capability_error(e.code()) ? kExitCapability : kExitUsage;
    r.message = file + ": " + to_string(e.code()) + ": " + e.what() + "\n";
    r.body["exit_code"] = r.code;
    r.body["error"] = {{"code", to_string(e.code())},
                       {"message", e.what()},
                       {"issues", json::array()}};
  }
  return r;
}

std::string batch_extension(const std::string& command) {
  if (command == "from-matrix") return ".mat";
  if (command == "from-graph") return ".graph";
  return ".ug";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Ultragraph toolkit", "ugkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", opt.json_out, "Print a JSON report");
  app.add_flag("--all", opt.all, "Treat FILE as a directory and run on every document in it");

  auto add = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("FILE", opt.file, "Input file")->required();
    return sub;
  };
  add("info", "Census, singular vertices, unitality and Condition (L)");
  add("edge-matrix", "Edge matrix as a .mat file");
  add("from-matrix", "Ultragraph of a .mat matrix");
  add("from-graph", "Ultragraph of a directed graph file");
  add("condition-l", "Decide Condition (L)");
  add("member", "Lattice membership of a vertex set")
      ->add_option("--set", opt.set, "Set in document syntax")
      ->required();
  add("approx", "Approximation graph for a finite edge set and its family")
      ->add_option("-F", opt.f_edges, "Comma separated edges")
      ->required();
  add("desingularize", "Desingularize and truncate the tails")
      ->add_option("--depth", opt.depth, "Tail vertices kept per tail")
      ->required();
  add("rep", "Path-space representation")->add_flag("--check", opt.check, "Check the relations");
  CLI::App* el = add("el-check", "Exel-Laca relation for edge sets X and Y");
  el->add_option("-X", opt.x_edges, "Comma separated edges");
  el->add_option("-Y", opt.y_edges, "Comma separated edges");
  add("dot", "Graphviz drawing");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  opt.command = app.get_subcommands().front()->get_name();

  if (!opt.all) {
    Report r = run_file(opt, opt.file);
    if (opt.json_out) {
      out << r.body.dump(2) << "\n";
    } else {
      out << r.text;
      err << r.message;
    }
    return r.code;
  }

  std::vector<std::string> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(opt.file, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == batch_extension(opt.command)) {
      files.push_back(entry.path().string());
    }
  }
  if (ec) {
    err << opt.file << ": Usage: cannot list directory\n";
    return kExitUsage;
  }
  std::sort(files.begin(), files.end());
  int worst = kExitOk;
  json reports = json::array();
  for (const auto& f : files) {
    Report r = run_file(opt, f);
    worst = std::max(worst, r.code);
    if (opt.json_out) {
      reports.push_back(std::move(r.body));
    } else {
      out << "== " << f << " ==\n" << r.text;
      err << r.message;
    }
  }
  if (opt.json_out) {
    json batch = {{"schema", kReportSchema},
                  {"command", opt.command},
                  {"directory", opt.file},
                  {"exit_code", worst},
                  {"reports", reports}};
    out << batch.dump(2) << "\n";
  }
  return worst;
}

}  // namespace ugkit

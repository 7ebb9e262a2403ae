#include "kanno/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "kanno/documents.hpp"
#include "kanno/joinexpr.hpp"
#include "kanno/theoremlab.hpp"
#include "kanno/weak_cycle.hpp"
#include "text_util.hpp"

namespace kanno {
namespace {

using ordered_json = nlohmann::ordered_json;

struct InputError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DocFormat sniff(const std::string& text) {
  const auto t = trim(text);
  return !t.empty() && t.front() == '{' ? DocFormat::json : DocFormat::text;
}

std::string with_path(const std::string& path, const ParseError& e) { return path + ":" + e.what(); }

struct Loaded {
  Schema schema;
  std::vector<std::pair<std::size_t, KRelation>> relations;
};

// A builtin alias or a document declaring attributes and edges (and
// possibly relations).
Loaded load_schema(const std::string& path) {
  if (auto s = builtin_schema(path)) return {*s, {}};
  const auto text = read_file(path);
  Document doc;
  try {
    doc = parse_document(text, sniff(text));
  } catch (const ParseError& e) {
    throw InputError(with_path(path, e));
  }
  if (!doc.schema) throw InputError(path + ": no attributes or edges declared");
  doc.schema->name = path;
  return {std::move(*doc.schema), std::move(doc.relations)};
}

void load_relations(Loaded& in, const std::vector<std::string>& paths) {
  for (const auto& path : paths) {
    const auto text = read_file(path);
    try {
      auto doc = parse_document(text, sniff(text), &in.schema);
      for (auto& r : doc.relations) in.relations.push_back(std::move(r));
    } catch (const ParseError& e) {
      throw InputError(with_path(path, e));
    }
  }
  std::vector<KRelation> rs;
  for (const auto& [i, r] : in.relations) rs.push_back(r);
  if (!rs.empty()) require_same_monoid(rs);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

struct Emitter {
  std::ostream& out;
  std::string path;
  void emit(const std::string& text) const {
    if (path.empty()) {
      out << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write " + path);
    f << text;
  }
};

struct Common {
  std::string format = "text";
  std::uint64_t seed = 1;
  std::size_t trials = 200;
  std::size_t budget = kDefaultBudget;
  std::string out;
  bool json() const { return format == "json"; }
};

// ---- classify ----

int classify(const Common& c, const std::string& schema_path, const Emitter& em) {
  const auto s = load_schema(schema_path).schema;
  const auto& h = s.graph;
  bool undecided = false;

  const auto g = gyo(h);
  const bool conformal = is_conformal(h), chordal = is_chordal(h);
  auto search = [&](CycleKind kind) {
    auto r = find_weak_cycle(h, kind, c.budget);
    if (r.undecided()) undecided = true;
    return r;
  };
  const auto beta = search(CycleKind::beta);
  const auto gamma = search(CycleKind::gamma);
  auto verdict = [](const SearchResult<WeakCycle>& r) {
    return r.undecided() ? "undecided" : r.found() ? "cyclic" : "acyclic";
  };
  auto stuck_text = [&] {
    return join(g.stuck, " ", [&](NodeSet n) { return h.format_nodes(n); });
  };

  if (c.json()) {
    ordered_json j;
    j["schema"] = s.name;
    j["edges"] = h.format();
    j["alpha"] = g.acyclic ? "acyclic" : "cyclic";
    j["conformal"] = conformal;
    j["chordal"] = chordal;
    if (!g.acyclic) j["gyo_stuck"] = stuck_text();
    j["beta"] = verdict(beta);
    if (beta.found()) j["weak_beta_cycle"] = format_weak_cycle(h, *beta.value);
    j["gamma"] = verdict(gamma);
    if (gamma.found()) j["weak_gamma_cycle"] = format_weak_cycle(h, *gamma.value);
    em.emit(j.dump(2) + "\n");
  } else {
    std::string t;
    t += "schema: " + s.name + "\n";
    t += "edges: " + h.format() + "\n";
    t += std::string("alpha: ") + (g.acyclic ? "acyclic" : "cyclic") + "\n";
    t += "conformal: " + yes_no(conformal) + "; chordal: " + yes_no(chordal) + "\n";
    if (!g.acyclic) t += "gyo stuck at: " + stuck_text() + "\n";
    t += std::string("beta: ") + verdict(beta) + "\n";
    if (beta.found()) t += "weak beta-cycle: " + format_weak_cycle(h, *beta.value) + "\n";
    t += std::string("gamma: ") + verdict(gamma) + "\n";
    if (gamma.found()) t += "weak gamma-cycle: " + format_weak_cycle(h, *gamma.value) + "\n";
    em.emit(t);
  }
  return undecided ? kExitUndecided : kExitOk;
}

// ---- check ----

int check(const Common& c, const std::string& schema_path, const std::vector<std::string>& rel_paths, bool global,
          const Emitter& em) {
  auto in = load_schema(schema_path);
  load_relations(in, rel_paths);
  if (in.relations.empty()) throw InputError("no relations given");
  const auto& s = in.schema;
  bool undecided = false;

  std::vector<KRelation> rs;
  std::vector<std::string> labels;
  for (const auto& [i, r] : in.relations) {
    rs.push_back(r);
    labels.push_back(s.graph.edge_label(i));
  }

  ordered_json j;
  std::string t;
  j["schema"] = s.name;
  j["monoid"] = rs.front().monoid().name();
  t += "schema: " + s.name + "\nmonoid: " + rs.front().monoid().name() + "\n";
  bool all = true;
  auto pairs = ordered_json::array();
  for (std::size_t a = 0; a < rs.size(); ++a) {
    for (std::size_t b = a + 1; b < rs.size(); ++b) {
      const bool inner = inner_consistent(rs[a], rs[b]);
      const auto res = consistent(rs[a], rs[b], c.budget);
      const char* v = res.found() ? "yes" : res.absent() ? "no" : "undecided";
      if (!res.found()) all = false;
      if (res.undecided()) undecided = true;
      t += labels[a] + " " + labels[b] + ": inner consistent: " + yes_no(inner) + "; consistent: " + v + "\n";
      pairs.push_back({{"left", labels[a]}, {"right", labels[b]}, {"inner_consistent", inner}, {"consistent", v}});
    }
  }
  j["pairs"] = pairs;
  const char* pw = all ? "yes" : undecided ? "undecided" : "no";
  t += std::string("pairwise consistent: ") + pw + "\n";
  j["pairwise_consistent"] = pw;

  if (global) {
    const auto res = globally_consistent(rs, GlobalOptions{c.budget, true});
    if (res.found()) {
      t += "global: consistent\nwitness " + res.value->attrs().format() + ":\n" + format_relation(*res.value);
      j["global"] = "consistent";
      j["witness"] = format_relation(*res.value);
    } else {
      const char* g = res.absent() ? "inconsistent" : "undecided";
      if (res.undecided()) undecided = true;
      t += std::string("global: ") + g + "\n";
      j["global"] = g;
    }
  }
  em.emit(c.json() ? j.dump(2) + "\n" : t);
  return undecided ? kExitUndecided : kExitOk;
}

// ---- eval ----

int eval(const Common& c, const std::string& schema_path, const std::vector<std::string>& rel_paths,
         const std::string& expr_text, const std::string& witness, const Emitter& em) {
  auto in = load_schema(schema_path);
  load_relations(in, rel_paths);
  const auto& s = in.schema;
  JoinExpr e = JoinExpr::leaf(0);
  try {
    e = parse_join_expr(expr_text, s.graph);
  } catch (const ParseError& pe) {
    throw InputError(std::string("--expr:") + pe.what());
  }
  if (in.relations.empty()) throw InputError("no relations given");
  const auto monoid = in.relations.front().second.monoid();

  std::vector<std::optional<KRelation>> slots(s.graph.edge_count());
  for (const auto& [i, r] : in.relations) {
    if (slots[i]) throw InputError("two relations given for edge " + s.graph.edge_label(i));
    slots[i] = r;
  }
  std::vector<KRelation> rs;
  for (std::size_t i = 0; i < slots.size(); ++i) rs.push_back(slots[i].value_or(KRelation(s.edge_attrs(i), monoid)));
  for (auto leaf : e.leaves())
    if (!slots[leaf]) throw InputError("no relation for edge " + s.graph.edge_label(leaf));

  std::optional<WitnessFunction> w;
  if (witness == "standard-join") {
    if (monoid.kind() != MonoidKind::boolean) throw InputError("standard-join needs the boolean monoid");
    w = standard_join();
  } else if (witness == "generic") {
    w = monoid.has_closed_form_transport() ? generic_witness(monoid) : search_witness(monoid, c.budget);
  } else {
    throw InputError("unknown witness function " + witness);
  }

  ordered_json j;
  std::string t;
  j["expr"] = format(e, s.graph);
  j["witness"] = w->name();
  t += "expr: " + format(e, s.graph) + "\nwitness: " + w->name() + "\n";
  int code = kExitOk;
  try {
    const auto result = evaluate(e, s.graph, *w, rs);
    t += "result " + result.attrs().format() + ":\n" + format_relation(result);
    if (result.empty()) t += "(empty)\n";
    j["result"] = format_relation(result);
    const auto mono = check_monotone(e, s.graph, *w, rs, c.budget);
    auto trace = ordered_json::array();
    for (const auto& n : mono.trace) {
      t += "node " + n.expr + ": children consistent: " + to_string(n.consistent) + "\n";
      trace.push_back({{"node", n.expr}, {"consistent", to_string(n.consistent)}});
    }
    t += std::string("monotone: ") + to_string(mono.monotone);
    if (mono.failing) t += " (fails at " + format(*mono.failing, s.graph) + ")";
    t += "\n";
    j["trace"] = trace;
    j["monotone"] = to_string(mono.monotone);
    if (mono.failing) j["failing"] = format(*mono.failing, s.graph);
    if (mono.monotone == Verdict::undecided) code = kExitUndecided;
  } catch (const ContractViolation& cv) {
    t += std::string("contract violation: ") + cv.what() + "\n";
    j["contract_violation"] = cv.what();
    code = kExitMismatch;
  } catch (const BudgetExhausted& be) {
    t += std::string("undecided: ") + be.what() + "\n";
    j["undecided"] = be.what();
    code = kExitUndecided;
  }
  em.emit(c.json() ? j.dump(2) + "\n" : t);
  return code;
}

// ---- verify ----

struct VerifyArgs {
  std::string suite;
  std::string schema = "p3";
  std::string monoid = "boolean";
  std::string caps = "4,4";
  std::size_t max_len = 3;
  bool serial = false;
};

std::pair<std::size_t, std::size_t> parse_caps(const std::string& text) {
  const auto parts = split(text, ',');
  auto num = [&](std::string_view p) {
    p = trim(p);
    std::size_t v = 0;
    if (p.empty() || !std::all_of(p.begin(), p.end(), [](char ch) { return ch >= '0' && ch <= '9'; }) ||
        p.size() > 3)
      throw InputError("--caps expects m,n");
    for (char ch : p) v = v * 10 + static_cast<std::size_t>(ch - '0');
    return v;
  };
  if (parts.size() != 2) throw InputError("--caps expects m,n");
  const auto m = num(parts[0]), n = num(parts[1]);
  if (m < 1 || m > 6 || n < 1 || n > 6) throw InputError("--caps values must be between 1 and 6");
  return {m, n};
}

int verify(const Common& c, const VerifyArgs& v, const Emitter& em) {
  SuiteOptions opt;
  opt.trials = c.trials;
  opt.seed = c.seed;
  opt.budget = c.budget;
  opt.max_len = v.max_len;
  opt.exec = v.serial ? Execution::serial : Execution::parallel;

  VerificationReport r;
  if (v.suite == "structural") {
    const auto [m, n] = parse_caps(v.caps);
    r = verify_structural_equivalences(m, n, opt.exec);
  } else {
    const auto monoid = Monoid::parse(v.monoid);
    if (v.suite == "tp") {
      r = verify_tp_characterization(monoid, opt);
    } else {
      const auto schema = load_schema(v.schema).schema;
      if (v.suite == "local-global")
        r = verify_local_to_global(schema, monoid, opt);
      else if (v.suite == "gamma-monotone")
        r = verify_gamma_monotonicity(schema, monoid, opt);
      else
        throw InputError("unknown suite " + v.suite + " (structural, local-global, gamma-monotone, tp)");
    }
  }
  em.emit(c.json() ? to_json(r) : to_text(r));
  switch (r.outcome()) {
    case Outcome::ok: return kExitOk;
    case Outcome::mismatch: return kExitMismatch;
    case Outcome::undecided: return kExitUndecided;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Annotated relations and hypergraph acyclicity", "kanno"};
  app.require_subcommand(1);
  app.fallthrough();

  Common c;
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", c.seed, "Random seed");
  app.add_option("--trials", c.trials, "Trials per suite");
  app.add_option("--budget", c.budget, "Search node budget");
  app.add_option("--out", c.out, "Write the report to this file");

  std::string schema_path, expr, witness = "generic";
  std::vector<std::string> rel_paths;
  bool global = false;
  VerifyArgs v;

  auto* cl = app.add_subcommand("classify", "Alpha, beta and gamma acyclicity of a schema");
  cl->add_option("schema", schema_path, "Schema file or builtin alias")->required();

  auto* ck = app.add_subcommand("check", "Pairwise (and global) consistency of relations");
  ck->add_option("schema", schema_path, "Schema file or builtin alias")->required();
  ck->add_option("relations", rel_paths, "Relation files");
  ck->add_flag("--global", global, "Also search for a global witness");

  auto* ev = app.add_subcommand("eval", "Evaluate a join expression under a witness function");
  ev->add_option("schema", schema_path, "Schema file or builtin alias")->required();
  ev->add_option("relations", rel_paths, "Relation files");
  ev->add_option("--expr", expr, "Join expression, e.g. ((X1 * X2) * X3)")->required();
  ev->add_option("--witness", witness, "generic or standard-join")
      ->check(CLI::IsMember({"generic", "standard-join"}));

  auto* vf = app.add_subcommand("verify", "Run a verification suite");
  vf->add_option("suite", v.suite, "structural, local-global, gamma-monotone or tp")
      ->required()
      ->check(CLI::IsMember({"structural", "local-global", "gamma-monotone", "tp"}));
  vf->add_option("--schema", v.schema, "Schema file or builtin alias");
  vf->add_option("--monoid", v.monoid, "Monoid spec");
  vf->add_option("--caps", v.caps, "Structural caps: max nodes, max edges");
  vf->add_option("--max-len", v.max_len, "Longest join expression");
  vf->add_flag("--serial", v.serial, "Run trials on one thread");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  const Emitter em{out, c.out};
  try {
    if (cl->parsed()) return classify(c, schema_path, em);
    if (ck->parsed()) return check(c, schema_path, rel_paths, global, em);
    if (ev->parsed()) return eval(c, schema_path, rel_paths, expr, witness, em);
    return verify(c, v, em);
  } catch (const BudgetExhausted& e) {
    err << "undecided: " << e.what() << "\n";
    return kExitUndecided;
  } catch (const ContractViolation& e) {
    err << "contract violation: " << e.what() << "\n";
    return kExitMismatch;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace kanno

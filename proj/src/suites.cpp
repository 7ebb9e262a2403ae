#include <algorithm>
#include <sstream>

#include "kanno/documents.hpp"
#include "kanno/samplers.hpp"
#include "kanno/theoremlab.hpp"
#include "kanno/weak_cycle.hpp"
#include "text_util.hpp"

namespace kanno {
namespace {

constexpr std::size_t kStoredFailures = 25;

// Failures beyond the cap are only counted.
struct FailureLog {
  std::vector<Failure> kept;
  std::size_t total = 0;

  void add(Failure f) {
    ++total;
    if (kept.size() < kStoredFailures) kept.push_back(std::move(f));
  }
  void merge(const FailureLog& other) {
    for (const auto& f : other.kept) add(f);
    total += other.total - other.kept.size();
  }
};

void finish(VerificationReport& r, FailureLog log) {
  r.failures = std::move(log.kept);
  r.counts.emplace_back("failing_checks", log.total);
}

std::string format_transport(const Monoid& k, const TransportInstance& inst) {
  auto fmt = [&](MonoidValue v) { return k.format(v); };
  return "rows=(" + join(inst.rows, ",", fmt) + ") cols=(" + join(inst.cols, ",", fmt) + ")";
}

std::string bundle(const Schema& s, std::span<const KRelation> rs) {
  return format_relations(s, rs, true);
}

std::vector<WitnessFunction> witnesses_for(const Monoid& monoid, std::size_t budget) {
  std::vector<WitnessFunction> ws;
  if (monoid.has_closed_form_transport()) {
    ws.push_back(generic_witness(monoid));
    if (monoid.kind() == MonoidKind::boolean) ws.push_back(standard_join());
  } else {
    ws.push_back(search_witness(monoid, budget));
  }
  return ws;
}

struct StructuralTrial {
  bool alpha = false, beta = false, gamma = false;
  std::vector<std::string> problems;
};

StructuralTrial check_structure(const Hypergraph& h) {
  StructuralTrial t;
  auto problem = [&](std::string s) { t.problems.push_back(std::move(s)); };
  auto yn = [](bool b) { return b ? "acyclic" : "cyclic"; };

  const auto g = gyo(h);
  t.alpha = g.acyclic;
  const bool cc = is_conformal(h) && is_chordal(h);
  const bool defn = is_alpha_acyclic_definitional(h);
  const auto rip = has_running_intersection(h);
  if (cc != t.alpha) problem(std::string("GYO ") + yn(t.alpha) + " but conformal+chordal says " + yn(cc));
  if (defn != t.alpha) problem(std::string("GYO ") + yn(t.alpha) + " but articulation-set test says " + yn(defn));
  if (rip.has_value() != t.alpha)
    problem(std::string("GYO ") + yn(t.alpha) + " but running intersection " + (rip ? "exists" : "does not exist"));
  if (t.alpha && !satisfies_running_intersection(h, g.rip_order)) problem("GYO order lacks running intersection");

  t.beta = is_beta_acyclic(h);
  const bool beta_bf = is_beta_acyclic_bruteforce(h);
  if (beta_bf != t.beta)
    problem(std::string("weak beta-cycle search says ") + yn(t.beta) + " but subset test says " + yn(beta_bf));

  t.gamma = is_gamma_acyclic(h);
  const bool bb = is_gamma_acyclic_brault_baron(h);
  if (bb != t.gamma)
    problem(std::string("weak gamma-cycle search says ") + yn(t.gamma) + " but beta+hub test says " + yn(bb));

  if (t.gamma && !t.beta) problem("gamma-acyclic but beta-cyclic");
  if (t.beta && !t.alpha) problem("beta-acyclic but alpha-cyclic");

  if (t.beta || t.gamma) {
    const auto m = h.edge_count();
    for (std::uint64_t sub = 1; sub + 1 < (std::uint64_t{1} << m); ++sub) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < m; ++i)
        if ((sub >> i) & 1U) idx.push_back(i);
      const auto part = h.with_edges(idx);
      if (t.beta && !is_beta_acyclic(part)) problem("beta-acyclicity not inherited by " + part.format());
      if (t.gamma && !is_gamma_acyclic(part)) problem("gamma-acyclicity not inherited by " + part.format());
    }
  }
  return t;
}

struct SampleTrial {
  bool sampled = false;
  std::size_t checks = 0;
  std::size_t undecided = 0;
  FailureLog failures;
};

std::string trial_tag(std::size_t t, std::uint64_t seed) {
  return "trial " + std::to_string(t) + " (seed " + std::to_string(seed) + ")";
}

// Checks every expression against every witness function; failures name the
// expression, the witness function and the failing subexpression.
void check_expressions(const Instance& inst, const std::vector<JoinExpr>& exprs,
                       const std::vector<WitnessFunction>& ws, std::size_t budget, const std::string& tag,
                       SampleTrial& out) {
  const auto& g = inst.schema.graph;
  for (const auto& w : ws) {
    for (const auto& e : exprs) {
      ++out.checks;
      try {
        const auto res = check_monotone(e, g, w, inst.relations, budget);
        if (res.monotone == Verdict::undecided) {
          ++out.undecided;
        } else if (res.monotone == Verdict::no) {
          out.failures.add({tag + ": " + format(e, g) + " not monotone under " + w.name() + " at " +
                                format(*res.failing, g),
                            bundle(inst.schema, inst.relations)});
        }
      } catch (const BudgetExhausted&) {
        ++out.undecided;
      } catch (const ContractViolation& ex) {
        out.failures.add({tag + ": " + w.name() + " broke its contract: " + ex.what(),
                          bundle(inst.schema, inst.relations)});
      }
    }
  }
}

std::vector<std::size_t> distinct_edges(const Hypergraph& h) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < h.edge_count(); ++i)
    if (h.edge_by_nodes(h.edge(i).nodes) == i) out.push_back(i);
  return out;
}

// Sequential order of all distinct edges where each edge meets an earlier
// one, if the hypergraph is connected.
std::optional<std::vector<std::size_t>> covering_order(const Hypergraph& h) {
  auto rest = distinct_edges(h);
  if (rest.empty()) return std::nullopt;
  std::vector<std::size_t> order{rest.front()};
  NodeSet seen = h.edge(rest.front()).nodes;
  rest.erase(rest.begin());
  while (!rest.empty()) {
    auto it = std::find_if(rest.begin(), rest.end(), [&](std::size_t e) { return (h.edge(e).nodes & seen) != 0; });
    if (it == rest.end()) return std::nullopt;
    order.push_back(*it);
    seen |= h.edge(*it).nodes;
    rest.erase(it);
  }
  return order;
}

bool is_path_shape(const Hypergraph& h, std::size_t len) {
  const auto d = distinct_edges(h);
  if (d.size() != len || !is_connected(h)) return false;
  NodeSet all = 0;
  for (auto e : d) {
    if (std::popcount(h.edge(e).nodes) != 2) return false;
    all |= h.edge(e).nodes;
  }
  return static_cast<std::size_t>(std::popcount(all)) == len + 1;
}

}  // namespace

VerificationReport verify_structural_equivalences(std::size_t max_nodes, std::size_t max_edges, Execution exec) {
  VerificationReport r;
  r.suite = "structural";
  r.subject = "nodes<=" + std::to_string(max_nodes) + " edges<=" + std::to_string(max_edges);
  r.expectation = Expectation::no_failure;
  const auto hs = enumerate_hypergraphs(max_nodes, max_edges);
  const auto results = ordered_map(hs.size(), [&](std::size_t i) { return check_structure(hs[i]); }, exec);
  FailureLog log;
  std::size_t alpha = 0, beta = 0, gamma = 0;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const auto& t = results[i];
    alpha += t.alpha;
    beta += t.beta;
    gamma += t.gamma;
    for (const auto& p : t.problems) log.add({p, hs[i].format()});
  }
  r.trials = hs.size();
  r.checks = hs.size();
  r.counts = {{"hypergraphs", hs.size()}, {"alpha_acyclic", alpha}, {"beta_acyclic", beta}, {"gamma_acyclic", gamma}};
  finish(r, std::move(log));
  return r;
}

VerificationReport verify_local_to_global(const Schema& schema, const Monoid& monoid, const SuiteOptions& opt) {
  VerificationReport r;
  r.suite = "local-global";
  r.subject = "schema=" + schema.name + " monoid=" + monoid.name();
  r.seed = opt.seed;
  r.trials = opt.trials;
  const GlobalOptions g{opt.budget, true};

  const auto results = ordered_map(
      opt.trials,
      [&](std::size_t t) {
        SampleTrial out;
        const auto seed = trial_seed(opt.seed, t);
        const auto rs = sample_pairwise_consistent(schema, monoid, seed, opt.attempts, opt.budget);
        if (!rs) return out;
        out.sampled = true;
        ++out.checks;
        const auto res = globally_consistent(*rs, g);
        if (res.undecided()) ++out.undecided;
        if (res.absent())
          out.failures.add({trial_tag(t, seed) + ": pairwise consistent but not globally consistent",
                            bundle(schema, *rs)});
        return out;
      },
      opt.exec);

  FailureLog log;
  std::size_t sampled = 0;
  for (const auto& t : results) {
    sampled += t.sampled;
    r.checks += t.checks;
    r.undecided += t.undecided;
    log.merge(t.failures);
  }

  const auto known = known_local_global_counterexample(schema, monoid, opt.budget);
  std::size_t forced = 0;
  if (known) {
    ++forced;
    ++r.checks;
    const auto pw = pairwise_consistent(known->relations, opt.budget);
    const auto gc = globally_consistent(known->relations, g);
    if (pw == Verdict::undecided || gc.undecided()) {
      ++r.undecided;
    } else if (pw == Verdict::yes && gc.absent()) {
      log.add({"forced instance: pairwise consistent but not globally consistent",
               bundle(known->schema, known->relations)});
    } else {
      r.notes.push_back("forced instance did not behave as constructed");
    }
  }

  r.counts = {{"collections", sampled}, {"unsampled", opt.trials - sampled}, {"forced", forced}};
  const bool alpha = is_alpha_acyclic_gyo(schema.graph);
  const bool tp = monoid.has_closed_form_transport();
  if (alpha && tp)
    r.expectation = Expectation::no_failure;
  else if (known)
    r.expectation = Expectation::failure;
  else
    r.expectation = Expectation::none;
  finish(r, std::move(log));
  return r;
}

VerificationReport verify_gamma_monotonicity(const Schema& schema, const Monoid& monoid, const SuiteOptions& opt) {
  VerificationReport r;
  r.suite = "gamma-monotone";
  r.subject = "schema=" + schema.name + " monoid=" + monoid.name() + " max-len=" + std::to_string(opt.max_len);
  r.seed = opt.seed;
  r.trials = opt.trials;

  const auto ws = witnesses_for(monoid, opt.budget);
  const auto exprs = enumerate_connected_sequential(schema.graph, opt.max_len);

  const auto results = ordered_map(
      opt.trials,
      [&](std::size_t t) {
        SampleTrial out;
        const auto seed = trial_seed(opt.seed, t);
        auto rs = sample_pairwise_consistent(schema, monoid, seed, opt.attempts, opt.budget);
        if (!rs) return out;
        out.sampled = true;
        check_expressions(Instance{schema, std::move(*rs)}, exprs, ws, opt.budget, trial_tag(t, seed), out);
        return out;
      },
      opt.exec);

  FailureLog log;
  std::size_t sampled = 0;
  for (const auto& t : results) {
    sampled += t.sampled;
    r.checks += t.checks;
    r.undecided += t.undecided;
    log.merge(t.failures);
  }

  SampleTrial forced;
  std::size_t forced_count = 0;
  bool forced_failure_expected = false;

  const bool gamma = is_gamma_acyclic(schema.graph, opt.budget);
  const bool tp = monoid.has_closed_form_transport();

  // Gamma-cyclic but beta-acyclic: an adversary tailored to each W.
  if (!gamma && is_beta_acyclic(schema.graph, opt.budget)) {
    if (const auto roles = find_gamma_roles(schema.graph)) {
      for (const auto& w : ws) {
        try {
          const auto adv = gamma_adversarial(w, schema, *roles, monoid, unit_element(monoid));
          ++forced_count;
          if (!verify_adversary(adv, opt.budget).ok()) {
            forced.failures.add({"adversary for " + w.name() + " failed its self-check",
                                 bundle(adv.instance.schema, adv.instance.relations)});
            continue;
          }
          forced_failure_expected = true;
          check_expressions(adv.instance, {adv.expr}, {w}, opt.budget,
                            "adversary (sub-case " + std::to_string(adv.subcase) + ")", forced);
        } catch (const AttributeError& ex) {
          r.notes.push_back(std::string("adversary skipped: ") + ex.what());
        }
      }
    }
  }

  // Pairwise but not globally consistent relations: some covering expression
  // must fail.
  if (const auto known = known_local_global_counterexample(schema, monoid, opt.budget)) {
    const auto& g = known->schema.graph;
    if (const auto order = covering_order(g)) {
      ++forced_count;
      forced_failure_expected = true;
      auto es = enumerate_connected_sequential(g, opt.max_len);
      const auto cover = sequential_expr(*order);
      if (std::find(es.begin(), es.end(), cover) == es.end()) es.push_back(cover);
      check_expressions(*known, es, ws, opt.budget, "forced instance", forced);
    }
  } else if (tp && monoid.is_numeric() && is_path_shape(schema.graph, 3) && schema.name == "p3") {
    // Consistent under bag; exercises the transport blocks of the generic W.
    ++forced_count;
    const TransportInstance inst{{MonoidValue(5), MonoidValue(5), MonoidValue(5)},
                                 {MonoidValue(3), MonoidValue(3), MonoidValue(9)}};
    const auto p3 = p3_counterexample(monoid, inst);
    check_expressions(p3, enumerate_connected_sequential(p3.schema.graph, std::max<std::size_t>(opt.max_len, 3)), ws,
                      opt.budget, "forced instance", forced);
  }

  r.checks += forced.checks;
  r.undecided += forced.undecided;
  log.merge(forced.failures);

  r.counts = {{"collections", sampled},
              {"unsampled", opt.trials - sampled},
              {"expressions", exprs.size()},
              {"forced", forced_count}};
  if (gamma && tp)
    r.expectation = Expectation::no_failure;
  else if (forced_failure_expected)
    r.expectation = Expectation::failure;
  else
    r.expectation = Expectation::none;
  finish(r, std::move(log));
  return r;
}

VerificationReport verify_tp_characterization(const Monoid& monoid, const SuiteOptions& opt) {
  const bool tp = monoid.has_closed_form_transport();

  VerificationReport probe;
  probe.suite = "tp-probe";
  probe.subject = "monoid=" + monoid.name() + " m,n<=3";
  const auto pool = default_probe_pool(monoid);
  const auto pr = probe_transportation_property(monoid, 3, 3, pool, opt.budget, opt.exec);
  probe.trials = pr.instances;
  probe.checks = pr.instances;
  probe.undecided = pr.undecided;
  if (pr.counterexample)
    probe.failures.push_back({"no transport solution", format_transport(monoid, *pr.counterexample)});
  probe.expectation = tp ? Expectation::no_failure : Expectation::failure;

  const auto p3 = *builtin_schema("p3");
  auto gm_opt = opt;
  gm_opt.max_len = std::max<std::size_t>(opt.max_len, 3);
  auto lg = verify_local_to_global(p3, monoid, opt);
  auto gm = verify_gamma_monotonicity(p3, monoid, gm_opt);

  VerificationReport r;
  r.suite = "tp";
  r.subject = "monoid=" + monoid.name();
  r.seed = opt.seed;
  r.trials = opt.trials;
  r.checks = 3;
  r.expectation = Expectation::no_failure;
  const bool a = probe.failure_found(), b = lg.failure_found(), c = gm.failure_found();
  auto word = [](bool f) { return f ? "failure found" : "no failure"; };
  const std::string summary = std::string("probe: ") + word(a) + ", local-global on p3: " + word(b) +
                              ", gamma-monotone on p3: " + word(c);
  const bool undecided = probe.undecided + lg.undecided + gm.undecided > 0;
  if (!(a == b && b == c)) {
    if (undecided)
      ++r.undecided;
    else
      r.failures.push_back({"routes disagree", summary});
  } else if (a == tp) {
    r.failures.push_back({std::string("routes agree but the monoid ") + (tp ? "has" : "lacks") +
                              " a closed-form transport solver",
                          summary});
  }
  r.notes.push_back(summary);
  if (pr.counterexample) r.notes.push_back("TP counterexample found: " + format_transport(monoid, *pr.counterexample));
  r.parts = {std::move(probe), std::move(lg), std::move(gm)};
  return r;
}

}  // namespace kanno

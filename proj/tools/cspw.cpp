// cspw: command-line front end for the counting-CSP toolkit.
//
// Every verb prints a `key: value` report. Exit codes: 0 ok, 2 violation,
// 3 unsupported, 1 error.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "cspw/errors.hpp"
#include "cspw/io.hpp"
#include "cspw/pipeline.hpp"
#include "cspw/reductions.hpp"
#include "cspw/selftest.hpp"

namespace {

using namespace cspw;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kViolation = 2;
constexpr int kUnsupported = 3;

struct Options {
  std::string instance;
  std::string phi_file;
  bool search_phi = false;
  std::string mode = "auto";
  std::uint64_t budget = std::uint64_t{1} << 24;
  std::string value;
  std::string graph_file;
  std::string kind = "ar";
  std::string fn;
  int r = 1;
  int ell = 1;
  std::uint64_t seed = 1;
};

Budget budget_of(const Options& o) {
  Budget b;
  b.assignments = o.budget;
  return b;
}

std::string levels_summary(const std::vector<LevelData>& levels) {
  std::ostringstream out;
  for (std::size_t i = 0; i < levels.size(); ++i) out << (i ? " " : "") << "s" << levels[i].t << "=" << levels[i].s();
  return out.str();
}

/// The Mal'tsev map from --phi, or from search; nullopt when search finds none.
std::optional<MaltsevMap> resolve_phi(const Options& o, const Instance& inst, Report& rep) {
  if (!o.phi_file.empty()) {
    rep.add("phi", "file");
    return load_phi(o.phi_file, inst.domain());
  }
  auto phi = search_phi_for_instance(inst, budget_of(o));
  rep.add("phi", phi ? "search" : "none");
  return phi;
}

int cmd_solve(const Options& o, Report& rep) {
  Instance inst = load_instance(o.instance);
  Mode mode = o.mode == "verified" ? Mode::Verified : o.mode == "optimistic" ? Mode::Optimistic : Mode::Auto;
  auto phi = resolve_phi(o, inst, rep);
  if (!phi) {
    rep.status = "violation";
    rep.add("condition", "Maltsev");
    rep.add("certificate", "no Mal'tsev polymorphism preserves the instance relations");
    return kViolation;
  }
  CheckOptions opts;
  opts.budget = budget_of(o);
  opts.seed = o.seed;
  PipelineResult res = solve(inst, *phi, mode, opts);
  rep.add("mode", to_string(res.mode));
  if (res.violation) {
    rep.status = "violation";
    rep.add("condition", res.violation->kind);
    if (res.violation->level) rep.add("level", std::to_string(res.violation->level));
    rep.add("certificate", res.violation->certificate);
    return kViolation;
  }
  rep.add("Z", res.Z->to_string());
  rep.add("levels", levels_summary(res.levels));
  rep.add("queries", std::to_string(res.queries));
  return kOk;
}

int cmd_oracle(const Options& o, Report& rep) {
  Instance inst = load_instance(o.instance);
  rep.add("Z", brute_force_Z(inst, budget_of(o)).to_string());
  return kOk;
}

void add_status(Report& rep, const std::string& key, const ConditionStatus& st) {
  rep.add(key, st.ok ? "pass" : "fail");
  if (!st.ok) {
    rep.add(key + "_level", std::to_string(st.level));
    rep.add(key + "_certificate", st.certificate);
  }
}

int cmd_check(const Options& o, Report& rep) {
  Instance inst = load_instance(o.instance);
  auto phi = resolve_phi(o, inst, rep);
  if (!phi) {
    rep.status = "violation";
    rep.add("Maltsev", "fail");
    rep.add("Maltsev_certificate", "no Mal'tsev polymorphism preserves the instance relations");
    return kViolation;
  }
  CheckOptions opts;
  opts.budget = budget_of(o);
  opts.seed = o.seed;
  ConditionReport cr = check_instance_conditions(inst, *phi, opts);
  add_status(rep, "BlockOrthogonality", cr.block_orthogonality);
  add_status(rep, "TypePartition", cr.type_partition);
  add_status(rep, "Maltsev", cr.maltsev);
  if (!cr.ok()) {
    rep.status = "violation";
    return kViolation;
  }
  return kOk;
}

int cmd_count(const Options& o, Report& rep) {
  Instance inst = load_instance(o.instance);
  Budget b = budget_of(o);
  ValueHistogram h = count_via_vandermonde(inst, [&](const Instance& i) { return brute_force_Z(i, b); }, b);
  if (!o.value.empty()) {
    CycloValue v = CycloValue::parse(o.value, inst.order());
    auto it = h.find(v.promoted(inst.order()));
    rep.add("value", v.to_string());
    rep.add("count", std::to_string(it == h.end() ? 0 : it->second));
  } else {
    rep.add("histogram", format_histogram(h));
  }
  return kOk;
}

int cmd_search(const Options& o, Report& rep) {
  Instance inst = load_instance(o.instance);
  auto phi = search_phi_for_instance(inst, budget_of(o));
  if (!phi) {
    rep.status = "unsupported";
    rep.add("result", "no Mal'tsev polymorphism");
    return kUnsupported;
  }
  std::string table;
  for (int v : phi->table()) table += std::to_string(v);
  rep.add("phi", table);
  rep.add("is_xor3", *phi == MaltsevMap::xor3() ? "yes" : "no");
  return kOk;
}

int cmd_purify(const Options& o, Report& rep) {
  Instance inst = load_instance(o.instance);
  std::vector<TableFunction> fns = purify(inst.library());
  Instance out(inst.domain(), inst.order(), inst.num_vars());
  for (auto& f : fns) out.add_function(std::move(f));
  for (const auto& c : inst.constraints()) out.apply(c.fn, c.vars);
  for (const auto& f : out.library()) {
    std::string vals;
    for (const auto& [code, v] : f.entries()) {
      vals += (vals.empty() ? "" : " ") + format_tuple(decode_tuple(code, f.domain(), f.arity())) + "=" + v.to_string();
    }
    rep.add("fn " + f.name(), vals);
  }
  return kOk;
}

const TableFunction& pick_function(const Instance& inst, const std::string& name) {
  if (inst.library().empty()) throw InvalidArgument("instance has no functions");
  return name.empty() ? inst.library().front() : inst.function(name);
}

int cmd_gadget(const Options& o, Report& rep) {
  Instance inst = load_instance(o.instance);
  const TableFunction& f = pick_function(inst, o.fn);
  std::optional<Graph> g;
  if (!o.graph_file.empty()) g = load_graph(o.graph_file);
  rep.add("kind", o.kind);
  rep.add("function", f.name());
  Budget b = budget_of(o);
  if (o.kind == "ar" || o.kind == "typepartition") {
    Gadget ga = o.kind == "ar" ? gadget_A_r(f, o.r) : gadget_A_typepartition(f, o.ell);
    rep.add("K", std::to_string(ga.K));
    rep.add("matrix", format_matrix(ga.matrix));
    auto v = abs_block_rank1_violation(ga.matrix);
    rep.add("abs_block_rank1", v ? "fail rows " + format_tuple(ga.matrix.labels[v->first]) + " " +
                                       format_tuple(ga.matrix.labels[v->second])
                                 : "pass");
    if (g) {
      CycloValue za = eval_graph_hom(ga.matrix, *g, b);
      CycloValue zi = eliminate_Z(ga.realize(*g), b);
      rep.add("Z_A(G)", za.to_string());
      rep.add("Z(F_I)", zi.to_string());
      if (za != zi) {
        rep.status = "error";
        return kError;
      }
    }
    return kOk;
  }
  if (o.kind == "h") {
    TableFunction h = gadget_H(f);
    rep.add("K", std::to_string(order_of(f)));
    std::string vals;
    for (const auto& [code, v] : h.entries()) {
      vals += (vals.empty() ? "" : " ") + format_tuple(decode_tuple(code, h.domain(), h.arity())) + "=" + v.to_string();
    }
    rep.add("H", vals);
    return kOk;
  }
  if (o.kind == "b") {
    Gadget ga = gadget_A_r(f, o.r);
    GadgetB gb = gadget_B(ga.matrix);
    rep.add("matrix", format_matrix(gb.matrix));
    auto v = abs_block_rank1_violation(gb.matrix);
    rep.add("block_rank1", v ? "fail" : "pass");
    if (g) {
      CycloValue zb = eval_graph_hom(gb.matrix, *g, b);
      CycloValue za = eval_graph_hom(gb.abs, gb.transform(*g), b);
      rep.add("Z_B(G)", zb.to_string());
      rep.add("Z_|A|(G')", za.to_string());
      if (zb != za) {
        rep.status = "error";
        return kError;
      }
    }
    return kOk;
  }
  throw InvalidArgument("unknown gadget kind '" + o.kind + "'");
}

int cmd_selftest(const Options& o, Report& rep) {
  rep.add("seed", std::to_string(o.seed));
  bool ok = true;
  for (const SuiteResult& s : run_selftest(o.seed)) {
    std::string line = std::to_string(s.cases - s.failures) + "/" + std::to_string(s.cases);
    if (s.failures) line += " " + s.detail;
    rep.add(s.name, line);
    ok &= s.failures == 0;
  }
  if (!ok) rep.status = "error";
  return ok ? kOk : kError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact counting-CSP partition functions over cyclotomic fields"};
  app.require_subcommand(1);
  Options o;

  auto add_instance = [&](CLI::App* sub) {
    sub->add_option("instance", o.instance, "Instance file")->required()->check(CLI::ExistingFile);
    sub->add_option("--budget", o.budget, "Enumeration budget (assignments)");
  };
  auto add_phi = [&](CLI::App* sub) {
    sub->add_option("--phi", o.phi_file, "Mal'tsev map file")->check(CLI::ExistingFile);
    sub->add_flag("--search-phi", o.search_phi, "Search for a shared Mal'tsev polymorphism");
    sub->add_option("--seed", o.seed, "Seed for permutation sampling");
  };

  CLI::App* solve_cmd = app.add_subcommand("solve", "Compute Z with the level pipeline");
  add_instance(solve_cmd);
  add_phi(solve_cmd);
  solve_cmd->add_option("--mode", o.mode, "verified | optimistic | auto")
      ->check(CLI::IsMember({"verified", "optimistic", "auto"}));

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Compute Z by enumeration");
  add_instance(oracle_cmd);

  CLI::App* check_cmd = app.add_subcommand("check", "Check the three conditions at instance level");
  add_instance(check_cmd);
  add_phi(check_cmd);

  CLI::App* count_cmd = app.add_subcommand("count", "Value counts via the Vandermonde system");
  add_instance(count_cmd);
  count_cmd->add_option("--value", o.value, "Report only this value's count");

  CLI::App* search_cmd = app.add_subcommand("search-phi", "Search for a shared Mal'tsev polymorphism");
  add_instance(search_cmd);

  CLI::App* purify_cmd = app.add_subcommand("purify", "Purify the function library");
  add_instance(purify_cmd);

  CLI::App* gadget_cmd = app.add_subcommand("gadget", "Build a reduction gadget");
  add_instance(gadget_cmd);
  gadget_cmd->add_option("--kind", o.kind, "ar | typepartition | h | b")
      ->check(CLI::IsMember({"ar", "typepartition", "h", "b"}));
  gadget_cmd->add_option("--fn", o.fn, "Function name (default: first)");
  gadget_cmd->add_option("--graph", o.graph_file, "Graph file")->check(CLI::ExistingFile);
  gadget_cmd->add_option("--r", o.r, "r for A_r");
  gadget_cmd->add_option("--ell", o.ell, "Prefix length for the type-partition gadget");

  CLI::App* selftest_cmd = app.add_subcommand("selftest", "Run the invariant suites");
  selftest_cmd->add_option("--seed", o.seed, "Seed");

  CLI11_PARSE(app, argc, argv);

  CLI::App* sub = app.get_subcommands().front();
  Report rep;
  rep.verb = sub->get_name();
  int code = kOk;
  try {
    if (sub == solve_cmd) code = cmd_solve(o, rep);
    else if (sub == oracle_cmd) code = cmd_oracle(o, rep);
    else if (sub == check_cmd) code = cmd_check(o, rep);
    else if (sub == count_cmd) code = cmd_count(o, rep);
    else if (sub == search_cmd) code = cmd_search(o, rep);
    else if (sub == purify_cmd) code = cmd_purify(o, rep);
    else if (sub == gadget_cmd) code = cmd_gadget(o, rep);
    else code = cmd_selftest(o, rep);
  } catch (const Unsupported& e) {
    rep.status = "unsupported";
    rep.add("error", e.what());
    code = kUnsupported;
  } catch (const std::exception& e) {
    rep.status = "error";
    rep.add("error", e.what());
    code = kError;
  }
  std::cout << rep.str();
  return code;
}

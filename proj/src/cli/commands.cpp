#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cgvv/cli.hpp"
#include "cgvv/fol.hpp"
#include "cgvv/frontio.hpp"

namespace cgvv::cli {

namespace {

struct InputError : Error {
  using Error::Error;
};

Bundle load(const RunConfig& c, std::ostream& err) {
  Bundle b = parse_bundle(std::span<const std::string>(c.inputs));
  for (const auto& d : b.diagnostics) err << render(d) << '\n';
  if (!b.ok()) throw InputError("input-errors", "input has errors");
  return b;
}

// The graph under verification: a named graph, the model, the only graph,
// or all graphs side by side.
ConceptualGraph subject(const Bundle& b, const RunConfig& c) {
  if (c.graph) {
    if (const GraphDecl* g = b.find_graph(*c.graph)) return g->graph;
    throw InputError("unknown-graph", "no graph named '" + *c.graph + "'");
  }
  if (b.model) return model_to_cg(*b.model, b.ontology);
  ConceptualGraph g(b.ontology);
  for (const auto& d : b.graphs) g = g.empty() ? d.graph : disjoint_union(g, d.graph);
  return g;
}

std::string witnesses(const Verdict& v, const ConceptualGraph& target, const RunConfig& c,
                      const char* sep) {
  std::string out;
  std::size_t shown = 0;
  for (const auto& w : v.witnesses) {
    if (c.limit && shown == *c.limit) break;
    if (shown++) out += sep;
    out += summarize(*v.witness_pattern, target, w);
  }
  return out;
}

void print_verdict(std::ostream& out, const RunConfig& c, const std::string& label,
                   const std::string& name, const Verdict& v, const ConceptualGraph& target) {
  if (c.format == Format::Report) {
    out << "VERDICT " << name << ' ' << to_string(v.status);
    if (!v.witnesses.empty()) out << " witness=" << witnesses(v, target, c, ";");
    out << '\n';
    return;
  }
  out << label << ": " << to_string(v.status) << '\n';
  if (!v.witnesses.empty()) {
    std::size_t shown = 0;
    for (const auto& w : v.witnesses) {
      if (c.limit && shown == *c.limit) {
        out << "  ... " << v.witnesses.size() - shown << " more\n";
        break;
      }
      ++shown;
      out << "  witness: " << summarize(*v.witness_pattern, target, w) << '\n';
    }
  }
  for (const auto& n : v.notes) out << "  note: " << n << '\n';
}

int cmd_check(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Bundle b = load(c, err);
  const ConceptualGraph g = subject(b, c);
  const SaturationResult sat = saturate(g, b.rules, c.bound);
  if (!sat.report.reached_fixpoint && c.format == Format::Human)
    out << "warning: saturation stopped after " << c.bound << " passes without a fixpoint\n";

  const VerificationReport constraints = verify_all(sat.graph, b.constraints);
  VerificationContext ctx;
  ctx.graph = &g;
  ctx.saturated = &sat.graph;
  ctx.store = &b.facts;
  ctx.rules = b.rules;
  ctx.bound = c.bound;
  const PropertyReport properties = check_property_graph(b.property_graph(), ctx);

  for (const auto& e : constraints.entries)
    print_verdict(out, c, std::string(e.positive ? "positive " : "negative ") + e.name, e.name,
                  e.verdict, sat.graph);
  for (const auto& e : properties.entries)
    print_verdict(out, c, "property " + e.name + " [" + to_string(e.coords) + "]", e.name,
                  e.verdict, sat.graph);
  const bool ok = constraints.overall == Status::Satisfied && properties.overall == Status::Satisfied;
  if (c.format == Format::Human)
    out << "overall: " << to_string(ok ? Status::Satisfied : Status::Violated) << '\n';
  return ok ? kOk : kViolated;
}

int cmd_prove(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Bundle b = load(c, err);
  const ConceptualGraph g = subject(b, c);
  std::vector<NegativeConstraint> negatives;
  for (const auto& k : b.constraints)
    if (const auto* nc = std::get_if<NegativeConstraint>(&k)) negatives.push_back(*nc);
  const ProofResult r = prove_refutation(g, b.rules, negatives, c.bound);

  auto rule_named = [&](const std::string& name) -> const GraphRule& {
    for (const auto& rule : b.rules)
      if (rule.name == name) return rule;
    throw Error("internal", "trace names unknown rule " + name);
  };
  std::size_t n = 0;
  for (const auto& step : r.trace) {
    const std::string binding = summarize(rule_named(step.rule).hypothesis, *r.final_graph, step.binding);
    ++n;
    if (c.format == Format::Report)
      out << "STEP " << n << ' ' << step.rule << " binding=" << binding << " added="
          << step.fragment.text << '\n';
    else
      out << "step " << n << ": " << step.rule << " at " << binding << " adds "
          << step.fragment.text << '\n';
  }
  if (c.format == Format::Report) {
    out << "OUTCOME " << to_string(r.outcome);
    if (r.violated_constraint) out << " violated=" << *r.violated_constraint;
    out << '\n';
  } else {
    out << "outcome: " << to_string(r.outcome) << '\n';
  }
  if (r.violated_constraint && r.violation)
    print_verdict(out, c, "violated negative " + *r.violated_constraint, *r.violated_constraint,
                  *r.violation, *r.final_graph);
  switch (r.outcome) {
    case ProofOutcome::ContradictionEstablished:
      return kOk;
    case ProofOutcome::NoContradiction:
      return kViolated;
    case ProofOutcome::BoundReached:
      return kBoundReached;
  }
  return kInputError;
}

int cmd_saturate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Bundle b = load(c, err);
  const SaturationResult sat = saturate(subject(b, c), b.rules, c.bound);
  for (const auto& f : sat.report.added)
    out << (c.format == Format::Report ? "ADDED " : "# added by ") << f.rule << ": " << f.text
        << '\n';
  out << (c.format == Format::Report ? "PASSES " : "# passes: ") << sat.report.iterations
      << (sat.report.reached_fixpoint ? " fixpoint" : " bound-reached") << '\n';
  out << serialize_graph("saturated", sat.graph);
  return sat.report.reached_fixpoint ? kOk : kBoundReached;
}

int cmd_export_fol(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Bundle b = load(c, err);
  std::vector<std::pair<std::string, ConceptualGraph>> graphs;
  if (b.model) graphs.emplace_back("model", model_to_cg(*b.model, b.ontology));
  for (const auto& g : b.graphs)
    if (!c.graph || g.name == *c.graph) graphs.emplace_back(g.name, g.graph);
  if (graphs.empty()) {
    out << render(phi_translate(ConceptualGraph(b.ontology))) << '\n';
    return kOk;
  }
  for (const auto& [name, g] : graphs) {
    if (c.format == Format::Report) out << "FOL " << name << ' ';
    out << render(phi_translate(g)) << '\n';
  }
  return kOk;
}

int cmd_translate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Bundle b = load(c, err);
  if (!b.model) throw InputError("no-model", "translate needs a .model input");
  out << serialize_graph("model", model_to_cg(*b.model, b.ontology));
  return kOk;
}

std::vector<GenericProperty> matrix_of(const RunConfig& c, std::optional<EnterpriseModel>& model, std::ostream& err) {
  if (c.inputs.empty()) return reference_matrix();
  Bundle b = load(c, err);
  model = b.model;
  if (b.generics.empty()) return reference_matrix();
  return std::move(b.generics);
}

int cmd_matrix_list(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::optional<EnterpriseModel> model;
  const auto matrix = matrix_of(c, model, err);
  std::optional<Typology> typology;
  if (c.typology) {
    for (Typology t : {Typology::System, Typology::ModelingLanguage, Typology::Axiomatic})
      if (to_string(t) == *c.typology) typology = t;
    if (!typology)
      throw InputError("unknown-typology", "unknown typology '" + *c.typology +
                                               "' (system, language, axiomatic)");
  }
  for (const GenericProperty* gp : filter_matrix(matrix, c.perspective, typology)) {
    out << gp->name << "  typology=" << to_string(gp->typology) << "  perspective=";
    for (std::size_t i = 0; i < gp->perspectives.size(); ++i)
      out << (i ? "," : "") << gp->perspectives[i];
    out << "  params=";
    for (std::size_t i = 0; i < gp->placeholders.size(); ++i)
      out << (i ? "," : "") << gp->placeholders[i].name << ':' << gp->placeholders[i].type;
    out << '\n';
  }
  return kOk;
}

int cmd_matrix_instantiate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::optional<EnterpriseModel> model;
  const auto matrix = matrix_of(c, model, err);
  const GenericProperty* gp = nullptr;
  for (const auto& g : matrix)
    if (g.name == c.template_name) gp = &g;
  if (!gp) throw InputError("unknown-template", "no generic property named '" + c.template_name + "'");

  PlaceholderBindings bindings;
  for (const auto& b : c.bindings) {
    const auto eq = b.find('=');
    if (eq == std::string::npos || eq == 0)
      throw InputError("invalid-binding", "expected placeholder=value, got '" + b + "'");
    bindings[b.substr(0, eq)] = b.substr(eq + 1);
  }
  TypeOracle type_of = [&](std::string_view value) -> std::optional<std::string> {
    if (model)
      if (const Entity* e = model->find(value)) return e->type;
    return std::nullopt;
  };
  const Property p = instantiate(*gp, bindings, type_of, reference_ontology()->concepts);
  const std::string text = serialize(p);
  if (c.output) {
    std::ofstream f(*c.output);
    if (!(f << text)) throw IoError("unwritable-file", "cannot write '" + *c.output + "'");
  } else {
    out << text;
  }
  return kOk;
}

}  // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.bound < 1) {
    err << "error: --bound must be at least 1\n";
    return kInputError;
  }
  try {
    if (c.command == "check") return cmd_check(c, out, err);
    if (c.command == "prove") return cmd_prove(c, out, err);
    if (c.command == "saturate") return cmd_saturate(c, out, err);
    if (c.command == "export-fol") return cmd_export_fol(c, out, err);
    if (c.command == "translate") return cmd_translate(c, out, err);
    if (c.command == "matrix-list") return cmd_matrix_list(c, out, err);
    if (c.command == "matrix-instantiate") return cmd_matrix_instantiate(c, out, err);
    err << "error: unknown command '" << c.command << "'\n";
  } catch (const InputError& e) {
    if (e.code() != "input-errors") err << "error[" << e.code() << "]: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error[" << e.code() << "]: " << e.what() << '\n';
  }
  return kInputError;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conceptual-graph verification and validation of enterprise models"};
  app.require_subcommand(1);
  RunConfig c;
  std::string format = "human";
  long long bound = 100;
  app.add_option("--bound", bound, "Maximum saturation passes (>= 1)")->capture_default_str();
  app.add_option("--limit", c.limit, "Witnesses shown per verdict");
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"human", "report"}))
      ->capture_default_str();
  app.add_option("--graph", c.graph, "Name of the graph to work on");

  auto inputs = [&](CLI::App* sub, bool required) {
    sub->fallthrough();
    auto* opt = sub->add_option("inputs", c.inputs, "Ontology, model, facts and knowledge files");
    if (required) opt->required();
  };
  CLI::App* check = app.add_subcommand("check", "Verify constraints and properties; 0 ok, 1 violated");
  inputs(check, true);
  CLI::App* prove = app.add_subcommand("prove", "Refutation proof; 0 contradiction, 1 none, 3 bound");
  inputs(prove, true);
  CLI::App* saturate = app.add_subcommand("saturate", "Apply rules to a fixpoint and print the graph");
  inputs(saturate, true);
  CLI::App* fol = app.add_subcommand("export-fol", "Print the first-order formula of each graph");
  inputs(fol, true);
  CLI::App* translate = app.add_subcommand("translate", "Print the conceptual graph of a model");
  inputs(translate, true);

  CLI::App* matrix = app.add_subcommand("matrix", "Reference matrix of generic properties");
  matrix->require_subcommand(1);
  matrix->fallthrough();
  CLI::App* list = matrix->add_subcommand("list", "List generic properties");
  inputs(list, false);
  list->add_option("--perspective", c.perspective, "stability, reliability or integrity");
  list->add_option("--typology", c.typology, "system, language or axiomatic");
  CLI::App* inst = matrix->add_subcommand("instantiate", "Fill in a generic property");
  inst->add_option("template", c.template_name, "Generic property name")->required();
  inputs(inst, false);
  inst->add_option("--bind,-b", c.bindings, "placeholder=value[:Type]");
  inst->add_option("--output,-o", c.output, "Write the property here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  if (bound < 1) {
    err << "error: --bound must be at least 1\n";
    return kInputError;
  }
  c.bound = static_cast<std::size_t>(bound);
  c.format = format == "report" ? Format::Report : Format::Human;
  if (check->parsed()) c.command = "check";
  if (prove->parsed()) c.command = "prove";
  if (saturate->parsed()) c.command = "saturate";
  if (fol->parsed()) c.command = "export-fol";
  if (translate->parsed()) c.command = "translate";
  if (list->parsed()) c.command = "matrix-list";
  if (inst->parsed()) c.command = "matrix-instantiate";
  return run(c, out, err);
}

}  // namespace cgvv::cli

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "cgvv/frontio.hpp"

namespace cgvv {

std::string render(const Diagnostic& d) {
  std::ostringstream os;
  os << d.loc.file << ':' << d.loc.line << ':' << d.loc.column << ": "
     << (d.severity == Diagnostic::Severity::Error ? "error" : "warning") << '[' << d.code
     << "]: " << d.message;
  return os.str();
}

bool has_errors(std::span<const Diagnostic> diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::Error; });
}

const GraphDecl* Bundle::find_graph(std::string_view name) const {
  for (const auto& g : graphs)
    if (g.name == name) return &g;
  return nullptr;
}

PropertyGraph Bundle::property_graph() const {
  PropertyGraph pg;
  for (const auto& p : properties) {
    Coordinates coords;
    for (const auto& pd : placements)
      if (pd.property == p.name) coords = pd.coords;
    pg.place(p, coords);
  }
  return pg;
}

namespace {

std::string extension(const std::string& path) {
  return std::filesystem::path(path).extension().string();
}

class Validator {
 public:
  Validator(Bundle& b, const std::map<std::string, SourceLoc>& locs) : b_(b), locs_(locs) {}

  void run() {
    for (const auto& g : b_.graphs) {
      named(g.name, g.loc);
      graph(g);
    }
    for (const auto& r : b_.rules) {
      const SourceLoc loc = at(r.name);
      named(r.name, loc);
      guarded(loc, [&] { validate(r); });
      shape(r.hypothesis, loc, "rule '" + r.name + "' hypothesis");
      shape(r.conclusion, loc, "rule '" + r.name + "' conclusion");
    }
    for (const auto& c : b_.constraints) {
      const SourceLoc loc = at(name_of(c));
      named(name_of(c), loc);
      std::visit(
          [&](const auto& x) {
            guarded(loc, [&] { validate(x); });
            shape(x.condition, loc, "constraint '" + x.name + "' condition");
          },
          c);
    }
    std::set<std::string> placed;
    for (const auto& pd : b_.placements) {
      const bool known = std::any_of(b_.properties.begin(), b_.properties.end(),
                                     [&](const Property& p) { return p.name == pd.property; });
      if (!known)
        error(pd.loc, "unknown-property", "placement of undeclared property '" + pd.property + "'");
      if (!placed.insert(pd.property).second)
        error(pd.loc, "duplicate-placement", "property '" + pd.property + "' is placed twice");
    }
    for (const auto& p : b_.properties) {
      const SourceLoc loc = at(p.name);
      named(p.name, loc);
      guarded(loc, [&] { validate(p); });
      if (!b_.granularity.contains(p.degree.level))
        error(loc, "unknown-degree", "property '" + p.name + "' uses degree '" + p.degree.level +
                                         "', which granularity '" + b_.granularity.name +
                                         "' does not declare");
      auto facts = p.causes;
      facts.insert(facts.end(), p.effects.begin(), p.effects.end());
      for (const auto& f : facts)
        if (!p.pattern_for(f) && !b_.facts.find(f))
          error(loc, "unresolved-fact", "property '" + p.name + "' refers to '" + f +
                                            "', which is neither a fact nor a bound pattern");
      for (const auto& bnd : p.bindings) shape(bnd.pattern, loc, "pattern for '" + bnd.fact + "'");
    }
    for (const auto& gp : b_.generics) {
      const SourceLoc loc = at(gp.name);
      guarded(loc, [&] { validate(gp); });
    }
  }

 private:
  SourceLoc at(const std::string& name) const {
    auto it = locs_.find(name);
    return it == locs_.end() ? SourceLoc{} : it->second;
  }

  void error(SourceLoc loc, std::string code, std::string message) {
    b_.diagnostics.push_back({Diagnostic::Severity::Error, std::move(loc), std::move(code),
                              std::move(message)});
  }

  void named(const std::string& name, const SourceLoc& loc) {
    if (!names_.insert(name).second)
      error(loc, "duplicate-name", "'" + name + "' is declared more than once");
  }

  template <class F>
  void guarded(const SourceLoc& loc, F&& f) {
    try {
      f();
    } catch (const Error& e) {
      error(loc, e.code(), e.what());
    }
  }

  void shape(const ConceptualGraph& g, const SourceLoc& loc, const std::string& what) {
    for (const auto& issue : well_formed(g).errors) error(loc, issue.code, what + ": " + issue.message);
  }

  void graph(const GraphDecl& g) {
    auto where = [&](const GraphIssue& i) {
      if (i.node)
        if (auto it = g.node_locs.find(*i.node); it != g.node_locs.end()) return it->second;
      if (i.edge)
        if (auto it = g.edge_locs.find(*i.edge); it != g.edge_locs.end()) return it->second;
      return g.loc;
    };
    const auto report = well_formed(g.graph);
    for (const auto& i : report.errors) error(where(i), i.code, i.message);
    for (const auto& i : report.warnings)
      b_.diagnostics.push_back({Diagnostic::Severity::Warning, where(i), i.code,
                                "graph '" + g.name + "': " + i.message});
  }

  Bundle& b_;
  const std::map<std::string, SourceLoc>& locs_;
  std::set<std::string> names_;
};

}  // namespace

Bundle parse_bundle(std::span<const SourceFile> sources) {
  Bundle b;
  auto& diags = b.diagnostics;
  auto error = [&](SourceLoc loc, std::string code, std::string message) {
    diags.push_back({Diagnostic::Severity::Error, std::move(loc), std::move(code), std::move(message)});
  };

  const SourceFile* onto_file = nullptr;
  for (const auto& f : sources) {
    if (extension(f.path) != ".onto") continue;
    if (onto_file) {
      error({f.path, 1, 1}, "duplicate-ontology", "only one ontology file may be given (already have " +
                                                      onto_file->path + ")");
      continue;
    }
    onto_file = &f;
  }
  b.ontology = onto_file ? load_ontology(onto_file->text, onto_file->path, diags) : reference_ontology();
  if (!b.ontology) return b;

  // The model comes first so that its extracted facts can be extended by
  // facts files.
  for (const auto& f : sources) {
    if (extension(f.path) != ".model") continue;
    if (b.model) {
      error({f.path, 1, 1}, "duplicate-model", "only one enterprise model may be given");
      continue;
    }
    try {
      b.model = parse_model(f.text, f.path);
      b.facts = extract_facts(*b.model, HandleFunctionRegistry::builtins());
      model_to_cg(*b.model, b.ontology);
    } catch (const ParseError& e) {
      error(e.location(), e.code(), e.what());
    } catch (const Error& e) {
      error({f.path, 1, 1}, e.code(), e.what());
    }
  }

  std::map<std::string, SourceLoc> locations;
  std::vector<Granularity> granularities;
  for (const auto& f : sources) {
    const std::string ext = extension(f.path);
    if (ext == ".onto" || ext == ".model") continue;
    if (ext == ".facts") {
      parse_facts(f.text, f.path, b.facts, diags);
      continue;
    }
    Knowledge k = parse_knowledge(f.text, f.path, b.ontology, diags);
    auto move_all = [](auto& to, auto& from) {
      std::move(from.begin(), from.end(), std::back_inserter(to));
    };
    move_all(b.graphs, k.graphs);
    move_all(b.rules, k.rules);
    move_all(b.constraints, k.constraints);
    move_all(b.properties, k.properties);
    move_all(b.generics, k.generics);
    move_all(b.placements, k.placements);
    move_all(granularities, k.granularities);
    for (auto& [name, loc] : k.locations) locations.emplace(name, loc);
  }
  auto located = [&](const std::string& name) {
    auto it = locations.find(name);
    return it == locations.end() ? SourceLoc{} : it->second;
  };
  for (const auto& g : granularities) {
    try {
      g.validate();
    } catch (const Error& e) {
      error(located(g.name), e.code(), e.what());
    }
  }
  if (granularities.size() > 1)
    error(located(granularities.back().name), "duplicate-granularity",
          "at most one granularity may be declared");
  if (!granularities.empty()) b.granularity = granularities.back();

  Validator(b, locations).run();
  std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& x, const Diagnostic& y) {
    return std::tie(x.loc.file, x.loc.line, x.loc.column) <
           std::tie(y.loc.file, y.loc.line, y.loc.column);
  });
  return b;
}

Bundle parse_bundle(std::span<const std::string> paths) {
  std::vector<SourceFile> sources;
  for (const auto& p : paths) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("unreadable-file", "cannot read '" + p + "'");
    std::ostringstream os;
    os << in.rdbuf();
    sources.push_back({p, os.str()});
  }
  return parse_bundle(std::span<const SourceFile>(sources));
}

}  // namespace cgvv

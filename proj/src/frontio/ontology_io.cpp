#include <sstream>

#include "cgvv/frontio.hpp"
#include "cgvv/frontio/lexer.hpp"

namespace cgvv {

namespace detail {
extern const std::string_view kReferenceOntology;
extern const std::string_view kReferenceMatrix;
}

using frontio::TokenStream;

OntologyDecls parse_ontology_decls(std::string_view text, const std::string& file) {
  TokenStream ts(frontio::tokenize(text, file));
  OntologyDecls out;
  auto parents = [&] {
    std::vector<std::string> ps;
    if (ts.accept_punct("<")) {
      do ps.push_back(ts.expect_name("a parent name"));
      while (ts.accept_punct(","));
    }
    return ps;
  };
  while (!ts.at_end()) {
    const SourceLoc loc = ts.peek().loc;
    if (ts.accept_keyword("concept")) {
      ConceptDecl d;
      d.loc = loc;
      d.name = ts.expect_name("a concept type name");
      d.parents = parents();
      out.concepts.push_back(std::move(d));
    } else if (ts.accept_keyword("relation")) {
      RelationDecl d;
      d.loc = loc;
      d.name = ts.expect_name("a relation name");
      ts.expect_punct("(");
      if (!ts.is_punct(")")) {
        do d.signature.push_back(ts.expect_name("a concept type"));
        while (ts.accept_punct(","));
      }
      ts.expect_punct(")");
      d.parents = parents();
      out.relations.push_back(std::move(d));
    } else {
      ts.fail("syntax", "expected 'concept' or 'relation' but found " + describe(ts.peek()));
    }
  }
  return out;
}

namespace {

OntologyPtr build(const OntologyDecls& decls) {
  auto onto = std::make_shared<Ontology>();
  onto->concepts = ConceptLattice::build(decls.concepts);
  onto->relations = RelationLattice::build(decls.relations, onto->concepts);
  return onto;
}

SourceLoc locate(const OntologyDecls& decls, const std::string& subject, const std::string& file) {
  for (const auto& d : decls.concepts)
    if (d.name == subject) return d.loc;
  for (const auto& d : decls.relations)
    if (d.name == subject) return d.loc;
  return {file, 1, 1};
}

}  // namespace

OntologyPtr load_lattices(std::string_view text, const std::string& file) {
  return build(parse_ontology_decls(text, file));
}

OntologyPtr load_ontology(std::string_view text, const std::string& file,
                          std::vector<Diagnostic>& diags) {
  try {
    const OntologyDecls decls = parse_ontology_decls(text, file);
    try {
      return build(decls);
    } catch (const OntologyError& e) {
      diags.push_back({Diagnostic::Severity::Error, locate(decls, e.subject(), file), e.code(),
                       e.what()});
    }
  } catch (const ParseError& e) {
    diags.push_back({Diagnostic::Severity::Error, e.location(), e.code(), e.what()});
  }
  return nullptr;
}

std::string_view reference_ontology_text() { return detail::kReferenceOntology; }

OntologyPtr reference_ontology() {
  static const OntologyPtr onto = load_lattices(reference_ontology_text(), "reference.onto");
  return onto;
}

std::string_view reference_matrix_text() { return detail::kReferenceMatrix; }

std::vector<GenericProperty> reference_matrix() {
  std::vector<Diagnostic> diags;
  Knowledge k = parse_knowledge(reference_matrix_text(), "reference.matrix", reference_ontology(), diags);
  if (has_errors(diags)) throw IoError("invalid-matrix", render(diags.front()));
  return std::move(k.generics);
}

std::string serialize(const Ontology& onto) {
  std::ostringstream os;
  const auto& c = onto.concepts;
  for (const auto& t : c.types()) {
    os << "concept " << t;
    auto ps = c.parents(t);
    const bool plain = ps.empty() || (ps.size() == 1 && ps.front() == c.top());
    if (!plain)
      for (std::size_t i = 0; i < ps.size(); ++i) os << (i ? ", " : " < ") << ps[i];
    os << '\n';
  }
  const auto& r = onto.relations;
  for (const auto& name : r.relations()) {
    os << "relation " << name << '(';
    const auto& sig = r.signature(name);
    for (std::size_t i = 0; i < sig.size(); ++i) os << (i ? ", " : "") << sig[i];
    os << ')';
    auto ps = r.parents(name);
    for (std::size_t i = 0; i < ps.size(); ++i) os << (i ? ", " : " < ") << ps[i];
    os << '\n';
  }
  return os.str();
}

}  // namespace cgvv

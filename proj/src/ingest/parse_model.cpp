#include <set>

#include "cgvv/frontio/syntax.hpp"
#include "cgvv/ingest.hpp"

namespace cgvv {

namespace {

using frontio::Token;
using frontio::TokenKind;
using frontio::TokenStream;

const std::set<std::string, std::less<>> kLinkKinds = {
    "composed_of", "has_input",  "has_output", "uses_resource",
    "performed_by", "precedes", "located_at"};

class ModelParser {
 public:
  ModelParser(std::string_view text, const std::string& file)
      : ts_(frontio::tokenize(text, file)) {}

  EnterpriseModel run() {
    while (!ts_.at_end()) statement(nullptr);
    // Locations named only in `at` clauses are declared implicitly.
    for (const auto& [id, loc] : implicit_locations_)
      if (!model_.find(id)) model_.entities.push_back({id, EntityKind::Location, "Location", {}, {}, loc});
    validate(model_);
    return std::move(model_);
  }

 private:
  void link(std::string kind, std::string src, std::string dst, SourceLoc loc) {
    model_.links.push_back({std::move(kind), std::move(src), std::move(dst), std::move(loc)});
  }

  std::vector<std::string> id_list() {
    std::vector<std::string> out;
    do out.push_back(ts_.expect_atom("an entity name"));
    while (ts_.accept_punct(","));
    return out;
  }

  Entity& declare(EntityKind kind, std::string id, SourceLoc loc) {
    std::string type(kind == EntityKind::Process    ? "Process"
                     : kind == EntityKind::Activity ? "Activity"
                     : kind == EntityKind::Resource ? "Resource"
                     : kind == EntityKind::Actor    ? "Actor"
                     : kind == EntityKind::Flow     ? "Flow"
                                                    : "Location");
    model_.entities.push_back({std::move(id), kind, std::move(type), {}, {}, std::move(loc)});
    return model_.entities.back();
  }

  // Attribute and variable lines shared by every entity block.
  bool member(std::size_t owner) {
    if (ts_.accept_keyword("attr")) {
      std::string key = ts_.expect_name("an attribute name");
      ts_.expect_punct("=");
      Value v = frontio::parse_value(ts_);
      model_.entities[owner].attributes.emplace_back(std::move(key), std::move(v));
      ts_.expect_punct(";");
      return true;
    }
    if (ts_.accept_keyword("var")) {
      model_.entities[owner].variables.push_back(frontio::parse_variable(ts_));
      ts_.expect_punct(";");
      return true;
    }
    return false;
  }

  // `parent` is the index of the enclosing process, if any.
  void statement(const std::size_t* parent) {
    const Token& tok = ts_.peek();
    const SourceLoc loc = tok.loc;
    auto kind = tok.kind == TokenKind::Identifier ? entity_kind_from(tok.text) : std::nullopt;
    // `<id> <link> <id>;` when the second token is a link keyword.
    if (!kind || (ts_.peek(1).kind == TokenKind::Identifier && kLinkKinds.count(ts_.peek(1).text) &&
                  ts_.peek(2).kind != TokenKind::Punct)) {
      std::string src = ts_.expect_atom("a declaration or link");
      const Token& rel = ts_.peek();
      if (rel.kind != TokenKind::Identifier || !kLinkKinds.count(rel.text))
        ts_.fail("syntax", "expected a link kind after '" + src + "' but found " + describe(rel));
      std::string kind_name = ts_.next().text;
      std::string dst = ts_.expect_atom("an entity name");
      link(std::move(kind_name), std::move(src), std::move(dst), loc);
      ts_.expect_punct(";");
      return;
    }
    ts_.next();
    std::string id = ts_.expect_atom("an entity name");
    if (parent && *kind != EntityKind::Process && *kind != EntityKind::Activity)
      ts_.fail_at(tok, "syntax", "only processes and activities can be nested in a process");
    if (parent) link("composed_of", model_.entities[*parent].id, id, loc);
    const std::size_t self = model_.entities.size();
    declare(*kind, id, loc);

    switch (*kind) {
      case EntityKind::Flow:
        if (ts_.accept_punct(":"))
          model_.entities[self].attributes.emplace_back(
              std::string(kOperationalDomain), Value::of_symbol(ts_.expect_name("an operational domain")));
        break;
      case EntityKind::Resource:
        if (ts_.accept_punct(":")) model_.entities[self].type = ts_.expect_name("a resource type");
        if (ts_.accept_keyword("at")) {
          for (auto& l : id_list()) {
            link("located_at", id, l, loc);
            implicit_locations_.emplace_back(std::move(l), loc);
          }
        }
        break;
      default:
        if (ts_.accept_punct(":")) model_.entities[self].type = ts_.expect_name("a type");
        break;
    }

    if (ts_.accept_punct(";")) return;
    if (!ts_.accept_punct("{")) ts_.fail("syntax", "expected ';' or '{' but found " + describe(ts_.peek()));
    while (!ts_.accept_punct("}")) {
      if (ts_.at_end()) ts_.fail("syntax", "unterminated block for '" + id + "'");
      if (member(self)) continue;
      if (*kind == EntityKind::Process) {
        statement(&self);
        continue;
      }
      if (*kind == EntityKind::Activity && activity_line(id)) continue;
      ts_.fail("syntax", "unexpected " + describe(ts_.peek()) + " in " +
                             std::string(to_string(*kind)) + " '" + id + "'");
    }
    ts_.accept_punct(";");
  }

  bool activity_line(const std::string& id) {
    static const std::pair<const char*, const char*> kLines[] = {
        {"input", "has_input"},
        {"output", "has_output"},
        {"uses", "uses_resource"},
        {"performed_by", "performed_by"},
        {"precedes", "precedes"},
    };
    for (const auto& [keyword, link_kind] : kLines) {
      if (!ts_.is_keyword(keyword)) continue;
      const SourceLoc loc = ts_.next().loc;
      for (auto& target : id_list()) link(link_kind, id, std::move(target), loc);
      ts_.expect_punct(";");
      return true;
    }
    return false;
  }

  TokenStream ts_;
  EnterpriseModel model_;
  std::vector<std::pair<std::string, SourceLoc>> implicit_locations_;
};

}  // namespace

EnterpriseModel parse_model(std::string_view text, const std::string& file) {
  return ModelParser(text, file).run();
}

}  // namespace cgvv

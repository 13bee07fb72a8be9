#include "fof.hpp"

#include <algorithm>
#include <memory>

namespace gddp::detail {

namespace {

struct Node {
  enum class Kind { quant, implies, conj, literal } kind = Kind::literal;
  std::vector<std::unique_ptr<Node>> kids;
  FofLiteral lit;
  Token where;
};

class FormulaParser {
 public:
  FormulaParser(TokenStream& ts, std::vector<std::string>& symbols)
      : ts_(ts), symbols_(symbols) {}

  std::unique_ptr<Node> formula() {
    auto lhs = conjunction();
    if (ts_.at(Tok::implies)) {
      auto node = std::make_unique<Node>();
      node->kind = Node::Kind::implies;
      node->where = ts_.next();
      node->kids.push_back(std::move(lhs));
      node->kids.push_back(conjunction());
      if (ts_.at(Tok::implies)) ts_.fail(ts_.peek(), "nested implication is not supported");
      return node;
    }
    return lhs;
  }

 private:
  std::unique_ptr<Node> conjunction() {
    auto first = unit();
    if (!ts_.at(Tok::amp)) return first;
    auto node = std::make_unique<Node>();
    node->kind = Node::Kind::conj;
    node->where = first->where;
    node->kids.push_back(std::move(first));
    while (ts_.accept(Tok::amp)) node->kids.push_back(unit());
    return node;
  }

  std::unique_ptr<Node> unit() {
    const Token& t = ts_.peek();
    if (t.kind == Tok::lparen) {
      ts_.next();
      auto inner = formula();
      ts_.expect(Tok::rparen, "closing parenthesis");
      return inner;
    }
    if (t.kind == Tok::bang) {
      auto node = std::make_unique<Node>();
      node->kind = Node::Kind::quant;
      node->where = ts_.next();
      ts_.expect(Tok::lbracket, "variable list");
      do {
        const Token& v = ts_.expect(Tok::ident, "variable");
        note(v.text);
      } while (ts_.accept(Tok::comma));
      ts_.expect(Tok::rbracket, "end of variable list");
      ts_.expect(Tok::colon, "':' after quantifier");
      node->kids.push_back(unit());
      return node;
    }
    if (t.kind == Tok::ident) return literal();
    ts_.fail(t, "expected an atom, '(' or '!', found " + std::string(describe(t.kind)));
  }

  std::unique_ptr<Node> literal() {
    auto node = std::make_unique<Node>();
    node->kind = Node::Kind::literal;
    const Token head = ts_.next();
    node->where = head;
    node->lit.where = head;
    if (ts_.at(Tok::neq)) {
      ts_.next();
      const Token& rhs = ts_.expect(Tok::ident, "point after '!='");
      node->lit.is_neq = true;
      node->lit.pred = Pred::neq;
      node->lit.args = {head.text, rhs.text};
      note(head.text);
      note(rhs.text);
      return node;
    }
    auto pred = pred_from_name(head.text);
    if (!pred) ts_.fail(head, "unknown predicate '" + head.text + "'");
    node->lit.pred = *pred;
    ts_.expect(Tok::lparen, "argument list");
    do {
      const Token& a = ts_.expect(Tok::ident, "point argument");
      node->lit.args.push_back(a.text);
      note(a.text);
    } while (ts_.accept(Tok::comma));
    ts_.expect(Tok::rparen, "end of argument list");
    if (node->lit.args.size() != arity(*pred))
      ts_.fail(head, std::string(pred_name(*pred)) + "/" + std::to_string(arity(*pred)) +
                         " expects " + std::to_string(arity(*pred)) + " arguments, got " +
                         std::to_string(node->lit.args.size()));
    return node;
  }

  void note(const std::string& s) {
    if (std::find(symbols_.begin(), symbols_.end(), s) == symbols_.end()) symbols_.push_back(s);
  }

  TokenStream& ts_;
  std::vector<std::string>& symbols_;
};

const Node* strip_quantifiers(const Node* n) {
  while (n->kind == Node::Kind::quant) n = n->kids.front().get();
  return n;
}

void collect_conjuncts(const TokenStream& ts, const Node* n, std::vector<FofLiteral>& out) {
  n = strip_quantifiers(n);
  switch (n->kind) {
    case Node::Kind::literal:
      out.push_back(n->lit);
      return;
    case Node::Kind::conj:
      for (const auto& k : n->kids) collect_conjuncts(ts, k.get(), out);
      return;
    default:
      ts.fail(n->where, "implication is only allowed at the top of a formula");
  }
}

}  // namespace

FofFile parse_fof(std::string_view text) {
  TokenStream ts(tokenize(text, '%'));
  FofFile file;
  while (!ts.at(Tok::end)) {
    const Token& head = ts.expect(Tok::ident, "'fof' or 'include'");
    if (head.text == "include") {
      ts.expect(Tok::lparen, "'(' after include");
      file.includes.push_back(ts.expect(Tok::quoted, "quoted file name").text);
      ts.expect(Tok::rparen, "')' after include");
      ts.expect(Tok::dot, "'.' ending the include");
      continue;
    }
    if (head.text != "fof") ts.fail(head, "expected 'fof' or 'include'");
    FofStatement st;
    st.where = head;
    ts.expect(Tok::lparen, "'(' after fof");
    const Token& name = ts.at(Tok::quoted) ? ts.next() : ts.expect(Tok::ident, "formula name");
    st.name = name.text;
    ts.expect(Tok::comma, "',' after formula name");
    const Token& role = ts.expect(Tok::ident, "formula role");
    if (role.text != "axiom" && role.text != "conjecture")
      ts.fail(role, "unsupported role '" + role.text + "' (expected axiom or conjecture)");
    st.role = role.text;
    ts.expect(Tok::comma, "',' after role");

    FormulaParser fp(ts, st.symbols);
    auto root = fp.formula();
    const Node* body = strip_quantifiers(root.get());
    if (body->kind == Node::Kind::implies) {
      st.has_implication = true;
      collect_conjuncts(ts, body->kids[0].get(), st.antecedent);
      collect_conjuncts(ts, body->kids[1].get(), st.consequent);
    } else {
      collect_conjuncts(ts, body, st.consequent);
    }
    if (ts.accept(Tok::comma)) st.annotation = ts.expect(Tok::quoted, "quoted annotation").text;
    ts.expect(Tok::rparen, "')' closing fof");
    ts.expect(Tok::dot, "'.' ending the statement");
    file.statements.push_back(std::move(st));
  }
  return file;
}

}  // namespace gddp::detail

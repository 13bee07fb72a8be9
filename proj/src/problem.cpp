#include <algorithm>
#include <map>
#include <sstream>

#include "fof.hpp"
#include "gddp/problem.hpp"
#include "lexer.hpp"

namespace gddp {

using detail::FofLiteral;
using detail::Tok;
using detail::Token;
using detail::TokenStream;

std::string_view ctor_name(CtorKind k) {
  switch (k) {
    case CtorKind::free: return "free";
    case CtorKind::midpoint: return "midpoint";
    case CtorKind::on_line: return "on_line";
    case CtorKind::intersect: return "intersect";
    case CtorKind::parallel_point: return "parallel_point";
    case CtorKind::foot: return "foot";
  }
  return "?";
}

std::size_t ctor_arity(CtorKind k) {
  switch (k) {
    case CtorKind::free: return 0;
    case CtorKind::midpoint:
    case CtorKind::on_line: return 2;
    case CtorKind::parallel_point:
    case CtorKind::foot: return 3;
    case CtorKind::intersect: return 4;
  }
  return 0;
}

namespace {

std::optional<CtorKind> ctor_from_name(std::string_view s) {
  for (auto k : {CtorKind::free, CtorKind::midpoint, CtorKind::on_line, CtorKind::intersect,
                 CtorKind::parallel_point, CtorKind::foot})
    if (ctor_name(k) == s) return k;
  return std::nullopt;
}

}  // namespace

std::vector<Fact> emitted_facts(PointId self, const Constructor& c) {
  const auto& a = c.args;
  switch (c.kind) {
    case CtorKind::free:
      return {};
    case CtorKind::midpoint:
      return {Fact(Pred::midp, {self, a[0], a[1]}), Fact(Pred::coll, {self, a[0], a[1]})};
    case CtorKind::on_line:
      return {Fact(Pred::coll, {self, a[0], a[1]})};
    case CtorKind::intersect:
      return {Fact(Pred::coll, {self, a[0], a[1]}), Fact(Pred::coll, {self, a[2], a[3]})};
    case CtorKind::parallel_point:
      return {Fact(Pred::para, {a[0], self, a[1], a[2]}),
              Fact(Pred::cong, {a[0], self, a[1], a[2]})};
    case CtorKind::foot:
      return {Fact(Pred::coll, {self, a[1], a[2]}), Fact(Pred::perp, {self, a[0], a[1], a[2]})};
  }
  return {};
}

std::vector<std::string> Problem::point_names() const {
  std::vector<std::string> names;
  names.reserve(points.size());
  for (const auto& p : points) names.push_back(p.name);
  return names;
}

std::optional<PointId> Problem::find_point(std::string_view name) const {
  for (std::size_t i = 0; i < points.size(); ++i)
    if (points[i].name == name) return PointId{static_cast<std::uint32_t>(i)};
  return std::nullopt;
}

std::vector<Fact> constructor_facts(const Problem& p) {
  std::vector<Fact> out;
  for (std::size_t i = 0; i < p.points.size(); ++i) {
    if (!p.points[i].ctor) continue;
    auto f = emitted_facts(PointId{static_cast<std::uint32_t>(i)}, *p.points[i].ctor);
    out.insert(out.end(), f.begin(), f.end());
  }
  return out;
}

std::vector<Fact> distinctness_facts(const Problem& p) {
  std::vector<Fact> out;
  if (p.format != Format::construct) return out;
  std::vector<PointId> free_points;
  for (std::size_t i = 0; i < p.points.size(); ++i) {
    const auto& c = p.points[i].ctor;
    if (c && c->kind == CtorKind::free) free_points.push_back({static_cast<std::uint32_t>(i)});
  }
  for (std::size_t i = 0; i < free_points.size(); ++i)
    for (std::size_t j = i + 1; j < free_points.size(); ++j)
      out.push_back(Fact(Pred::neq, {free_points[i], free_points[j]}));
  return out;
}

std::vector<Fact> initial_facts(const Problem& p) {
  auto out = constructor_facts(p);
  out.insert(out.end(), p.hypotheses.begin(), p.hypotheses.end());
  auto d = distinctness_facts(p);
  out.insert(out.end(), d.begin(), d.end());
  return out;
}

std::optional<Format> format_for_path(std::string_view path) {
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() && path.substr(path.size() - suffix.size()) == suffix;
  };
  if (ends_with(".p")) return Format::fof;
  if (ends_with(".gdd")) return Format::construct;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// FOF problems

namespace {

Fact fact_from_literal(const FofLiteral& lit, const Problem& p) {
  std::vector<PointId> ids;
  for (const auto& a : lit.args) ids.push_back(*p.find_point(a));
  return Fact(lit.pred, ids);
}

Problem parse_fof_problem(std::string_view text) {
  auto file = detail::parse_fof(text);
  Problem p;
  p.format = Format::fof;
  p.includes = file.includes;

  const detail::FofStatement* conjecture = nullptr;
  for (const auto& st : file.statements) {
    for (const auto& s : st.symbols)
      if (!p.find_point(s)) p.points.push_back({s, std::nullopt});
    if (st.role == "conjecture") {
      if (conjecture)
        throw ParseError("a problem has exactly one conjecture", st.where.line, st.where.column,
                         st.where.text);
      conjecture = &st;
    }
  }
  if (!conjecture) {
    throw ParseError("missing conjecture", 1, 1, "");
  }
  for (const auto& st : file.statements) {
    if (st.role != "axiom") continue;
    if (st.has_implication)
      throw ParseError("rules belong in a rule file; problem axioms must be ground facts",
                       st.where.line, st.where.column, st.where.text);
    for (const auto& lit : st.consequent) p.hypotheses.push_back(fact_from_literal(lit, p));
  }
  for (const auto& lit : conjecture->antecedent) p.hypotheses.push_back(fact_from_literal(lit, p));
  if (conjecture->consequent.size() != 1) {
    const Token& at = conjecture->consequent.size() > 1 ? conjecture->consequent[1].where
                                                        : conjecture->where;
    throw ParseError("the conjecture must conclude a single atom", at.line, at.column, at.text);
  }
  p.goal = fact_from_literal(conjecture->consequent.front(), p);
  p.name = conjecture->name;
  return p;
}

// ---------------------------------------------------------------------------
// Construct format

class ConstructParser {
 public:
  Problem parse(std::string_view text) {
    p_.format = Format::construct;
    std::size_t line_no = 0, start = 0;
    Token last_token{Tok::end, "", 1, 1};
    while (start <= text.size()) {
      ++line_no;
      std::size_t stop = text.find('\n', start);
      if (stop == std::string_view::npos) stop = text.size();
      TokenStream ts(detail::tokenize(text.substr(start, stop - start), '#', line_no));
      last_token = ts.peek();
      if (!ts.at(Tok::end)) statement(ts);
      if (stop == text.size()) break;
      start = stop + 1;
    }
    if (!goal_seen_) throw ParseError("missing goal", line_no, 1, "");
    return std::move(p_);
  }

  Fact parse_atom(std::string_view text, const Problem& p) {
    p_ = p;
    TokenStream ts(detail::tokenize(text, '#', 1));
    Fact f = atom(ts);
    if (!ts.at(Tok::end)) ts.fail(ts.peek(), "unexpected trailing input");
    return f;
  }

 private:
  void statement(TokenStream& ts) {
    const Token& kw = ts.expect(Tok::ident, "statement keyword");
    if (kw.text == "problem") {
      const Token& n = ts.at(Tok::quoted) ? ts.next() : ts.expect(Tok::ident, "problem name");
      p_.name = n.text;
    } else if (kw.text == "include") {
      p_.includes.push_back(ts.expect(Tok::quoted, "quoted file name").text);
    } else if (kw.text == "point") {
      point(ts);
    } else if (kw.text == "hypothesis") {
      p_.hypotheses.push_back(atom(ts));
    } else if (kw.text == "goal") {
      if (goal_seen_) ts.fail(kw, "duplicate goal");
      p_.goal = atom(ts);
      goal_seen_ = true;
    } else {
      ts.fail(kw, "unknown statement '" + kw.text +
                      "' (expected problem, include, point, hypothesis or goal)");
    }
    if (!ts.at(Tok::end)) ts.fail(ts.peek(), "unexpected trailing input");
  }

  void point(TokenStream& ts) {
    const Token& name = ts.expect(Tok::ident, "point name");
    if (p_.find_point(name.text)) ts.fail(name, "point '" + name.text + "' declared twice");
    Constructor c;
    if (ts.accept(Tok::equals)) {
      const Token& kind = ts.expect(Tok::ident, "constructor");
      auto k = ctor_from_name(kind.text);
      if (!k) ts.fail(kind, "unknown constructor '" + kind.text + "'");
      c.kind = *k;
      if (c.kind != CtorKind::free) {
        ts.expect(Tok::lparen, "constructor arguments");
        do {
          c.args.push_back(declared(ts.expect(Tok::ident, "point argument")));
        } while (ts.accept(Tok::comma) || ts.accept(Tok::semicolon));
        ts.expect(Tok::rparen, "end of constructor arguments");
        if (c.args.size() != ctor_arity(c.kind))
          ts.fail(kind, std::string(ctor_name(c.kind)) + " expects " +
                            std::to_string(ctor_arity(c.kind)) + " points, got " +
                            std::to_string(c.args.size()));
      }
    }
    p_.points.push_back({name.text, c});
  }

  Fact atom(TokenStream& ts) {
    const Token head = ts.expect(Tok::ident, "predicate");
    if (ts.accept(Tok::neq)) {
      const Token& rhs = ts.expect(Tok::ident, "point after '!='");
      return Fact(Pred::neq, {declared(head), declared(rhs)});
    }
    auto pred = pred_from_name(head.text);
    if (!pred) ts.fail(head, "unknown predicate '" + head.text + "'");
    ts.expect(Tok::lparen, "argument list");
    std::vector<PointId> args;
    do {
      args.push_back(declared(ts.expect(Tok::ident, "point argument")));
    } while (ts.accept(Tok::comma));
    ts.expect(Tok::rparen, "end of argument list");
    if (args.size() != arity(*pred))
      ts.fail(head, std::string(pred_name(*pred)) + "/" + std::to_string(arity(*pred)) +
                        " expects " + std::to_string(arity(*pred)) + " arguments, got " +
                        std::to_string(args.size()));
    return Fact(*pred, args);
  }

  PointId declared(const Token& t) {
    auto id = p_.find_point(t.text);
    if (!id) throw ParseError("undeclared point '" + t.text + "'", t.line, t.column, t.text);
    return *id;
  }

  Problem p_;
  bool goal_seen_ = false;
};

std::string render_fact(const Fact& f, const std::vector<std::string>& names, bool fof) {
  if (fof && f.pred == Pred::neq) return names[f.args[0].index] + "!=" + names[f.args[1].index];
  return to_string(f, names);
}

}  // namespace

Problem parse_problem(std::string_view text, Format format) {
  return format == Format::fof ? parse_fof_problem(text) : ConstructParser().parse(text);
}

Fact parse_fact(std::string_view text, const Problem& p) {
  return ConstructParser().parse_atom(text, p);
}

std::string render_problem(const Problem& p) {
  const auto names = p.point_names();
  std::ostringstream out;
  if (p.format == Format::fof) {
    for (const auto& inc : p.includes) out << "include('" << inc << "').\n";
    if (!p.includes.empty()) out << "\n";
    out << "fof(" << (p.name.empty() ? "goal" : p.name) << ",conjecture,( ! [";
    for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
    out << "] :\n   ( ";
    if (!p.hypotheses.empty()) {
      out << "( ";
      for (std::size_t i = 0; i < p.hypotheses.size(); ++i)
        out << (i ? " & " : "") << render_fact(p.hypotheses[i], names, true);
      out << " )\n   =>\n   ";
    }
    out << "( " << render_fact(p.goal, names, true) << " ) ) ) ).\n";
    return out.str();
  }
  if (!p.name.empty()) out << "problem " << p.name << "\n";
  for (const auto& inc : p.includes) out << "include '" << inc << "'\n";
  for (const auto& pt : p.points) {
    out << "point " << pt.name << " = ";
    if (!pt.ctor || pt.ctor->kind == CtorKind::free) {
      out << "free\n";
      continue;
    }
    out << ctor_name(pt.ctor->kind) << "(";
    for (std::size_t i = 0; i < pt.ctor->args.size(); ++i)
      out << (i ? "," : "") << names[pt.ctor->args[i].index];
    out << ")\n";
  }
  for (const auto& h : p.hypotheses) out << "hypothesis " << render_fact(h, names, false) << "\n";
  out << "goal " << render_fact(p.goal, names, false) << "\n";
  return out.str();
}

}  // namespace gddp

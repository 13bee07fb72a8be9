// Reader for the FOF subset: `include('file').` and
// `fof(name, role, formula[, annotation]).` where a formula is a universally
// quantified implication between conjunctions of atoms and disequalities.

#ifndef GDDP_FOF_HPP_
#define GDDP_FOF_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexer.hpp"

namespace gddp::detail {

struct FofLiteral {
  bool is_neq = false;
  Pred pred = Pred::neq;
  std::vector<std::string> args;
  Token where;
};

struct FofStatement {
  std::string name;
  std::string role;
  std::vector<FofLiteral> antecedent;   // empty when there is no implication
  std::vector<FofLiteral> consequent;
  bool has_implication = false;
  std::vector<std::string> symbols;     // quantified and free, first appearance order
  std::optional<std::string> annotation;
  Token where;
};

struct FofFile {
  std::vector<std::string> includes;
  std::vector<FofStatement> statements;
};

FofFile parse_fof(std::string_view text);

}  // namespace gddp::detail

#endif  // GDDP_FOF_HPP_

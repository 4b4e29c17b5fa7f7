#ifndef GTV_PARSER_HPP
#define GTV_PARSER_HPP

#include <string>

#include "gtv/model.hpp"

namespace gtv {

/*
  Deterministic recursive-descent parser for the model DSL (grammar shipped
  in docs/dsl-grammar.ebnf). Throws ParseError carrying the 1-based line /
  column of the offending token and a description of what was expected.
  parse_model performs no name resolution; pair it with compile_model.
*/
ModelFile parse_model(const std::string& text);

// Canonical rendering of a model file: parse_model(print_model(m)) == m.
std::string print_model(const ModelFile& m);

} // namespace gtv

#endif

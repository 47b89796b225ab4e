#pragma once

#include "lambdadl/concept.hpp"
#include "lexer.hpp"

namespace lambdadl::detail {

/// Words that cannot name concepts, roles or objects.
bool is_reserved(std::string_view word);

/// concept := conj ('|' conj)* ; conj := unary ('&' unary)* ;
/// unary := '!' unary | ('exists'|'forall') role '.' unary | primary.
/// Stops at the first token that cannot continue a concept, so callers can
/// embed concepts in larger phrases. A '|' followed by `type` or `default`
/// is left alone (it separates typecase arms).
Concept parse_concept(TokenStream& ts);
RoleExpr parse_role(TokenStream& ts);
std::string parse_name(TokenStream& ts, const char* what);

}  // namespace lambdadl::detail

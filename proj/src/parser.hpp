#pragma once

#include "ast.hpp"
#include "hovpc.hpp"

#include <string>

namespace vpc {

// Text to Program per the surface grammar. Identifiers n{k}/x{k} take index k;
// anything else is interned at the smallest unclaimed index in first-occurrence
// order (recorded in the program's symbol tables). Errors carry line/column.
Program parse_source(const std::string& text);

// A single higher-order term. Capitalized identifiers are abstraction
// variables; abstraction literals are written '\g1,g2. body' and a variable's
// type rides its binder: a(X:<i,j>).T.
HoPtr parse_ho_source(const std::string& text);

}  // namespace vpc

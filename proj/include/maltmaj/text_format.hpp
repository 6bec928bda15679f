#pragma once

#include <string>
#include <string_view>

#include "maltmaj/algebra.hpp"
#include "maltmaj/instance.hpp"
#include "maltmaj/relations.hpp"

// Plain-text file formats. All parsers throw ParseError with 1-based line and
// column; `#` starts a comment line and blank lines are ignored.
//
// Operation:
//   domain <n>
//   op <name>
//   x y z v        (n^3 lines, flattened index order)
//
// Language:
//   domain <n>
//   conservative   (optional)
//   rel <name> unary { v1 v2 ... }
//   rel <name> binary { (a,b) (c,d) ... }
//
// Instance:
//   vars <m>
//   constraint <relname> <i> [<j>]
namespace maltmaj {

struct NamedOperation {
    std::string name;
    TernaryOperation op;
};

NamedOperation parse_operation(std::string_view text);
std::string serialize_operation(const NamedOperation& named);

Language parse_language(std::string_view text);
std::string serialize_language(const Language& lang);

// Relation names are resolved against lang while parsing.
Instance parse_instance(std::string_view text, const Language& lang);
std::string serialize_instance(const Instance& inst);

}  // namespace maltmaj

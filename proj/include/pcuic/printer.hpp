#pragma once

#include <string>

#include "pcuic/context.hpp"
#include "pcuic/term.hpp"

namespace pcuic {

std::string print(Sort sort);

/*
 * Renders `t` in the concrete syntax accepted by the parser. With a context,
 * block members that resolve back to the same block print unqualified.
 */
std::string print(const Term& t, const Context* ctx = nullptr);
std::string print(const InductiveBlock& block, const std::string& name,
                  const Context* ctx = nullptr);
/// One declaration per line (axiom / def / inductive).
std::string print(const Context& ctx);

}  // namespace pcuic

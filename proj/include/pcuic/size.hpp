#pragma once

#include <cstdint>

#include "pcuic/context.hpp"
#include "pcuic/term.hpp"

namespace pcuic {

// All sizes are on the doubled scale so the half-units stay integral.

/// Block references are measured by the size of the referenced block, looked up
/// in `ctx`; without a context (or for an unknown block) they count as a variable.
std::uint64_t size(const Term& t, const Context* ctx = nullptr);
std::uint64_t size(const InductiveBlock& block, const Context* ctx = nullptr);
std::uint64_t size(const Context& ctx);
/// Size of the judgement `ctx |- t`.
std::uint64_t size(const Context& ctx, const Term& t);
std::uint64_t size(const Context& ctx, const InductiveBlock& block);

}  // namespace pcuic

#pragma once

#include <optional>

#include "pcuic/context.hpp"
#include "pcuic/env.hpp"
#include "pcuic/error.hpp"
#include "pcuic/term.hpp"

namespace pcuic {

/// The sort of a product whose domain lives in `s1` and codomain in `s2`.
Sort prod_rule(Sort s1, Sort s2);

/// Principal (least) type of `t`. Throws TypeError.
Term infer(Env& env, const Term& t);
Term infer(const Context& ctx, const Term& t, KernelOptions options = {});

/// Succeeds iff the inferred type of `t` is a subtype of `type`. Throws TypeError.
void check(Env& env, const Term& t, const Term& type);
void check(const Context& ctx, const Term& t, const Term& type, KernelOptions options = {});

/// Infers the type of `type` and reduces it to a sort; throws not_a_sort otherwise.
Sort infer_sort(Env& env, const Term& type);

/// Checks the context entry by entry; the error names the offending entry.
std::optional<TypeError> wf_ctx(const Context& ctx, KernelOptions options = {});

/// Validates one entry against `ctx` (assumed well-formed) and appends it.
/// Throws TypeError and leaves `ctx` unchanged on failure.
void extend_checked(Context& ctx, ContextEntry entry, KernelOptions options = {});

}  // namespace pcuic

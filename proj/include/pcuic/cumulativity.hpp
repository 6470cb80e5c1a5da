#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pcuic/context.hpp"
#include "pcuic/env.hpp"
#include "pcuic/term.hpp"

namespace pcuic {

enum class SubtypeFailure {
    none,
    mismatch,
    not_fully_applied,
    blocks_unrelated,
};

struct SubtypeVerdict {
    bool holds = false;
    /// Names of the rules applied, outermost first; empty when the check fails.
    std::vector<std::string> trace;
    SubtypeFailure failure = SubtypeFailure::none;
};

SubtypeVerdict subtype(Env& env, const Term& t, const Term& u);
SubtypeVerdict subtype(const Context& ctx, const Term& t, const Term& u,
                       KernelOptions options = {});

/// Block inclusion: every arity and constructor argument of `left` is a
/// subtype of the corresponding one in `right` (parameters excluded).
bool ind_leq(Env& env, const InductiveBlock& left, const InductiveBlock& right);
bool ind_leq(const Context& ctx, const InductiveBlock& left, const InductiveBlock& right,
             KernelOptions options = {});
/// Same, for blocks bound in the context under these names.
bool ind_leq(Env& env, std::string_view left, std::string_view right);

/// Subtyping between applied inductive types `B.d vs` and `B'.d vs'`.
SubtypeVerdict applied_ind_subtype(Env& env, const Term& t, const Term& u);

std::string_view to_string(SubtypeFailure failure);

}  // namespace pcuic

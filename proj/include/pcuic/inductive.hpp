#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcuic/context.hpp"
#include "pcuic/env.hpp"
#include "pcuic/error.hpp"
#include "pcuic/term.hpp"

namespace pcuic {

struct TelescopeBinder {
    std::string hint;
    /// May refer to earlier binders of the telescope through loose indices.
    Term domain;
};

/// The first `binders.size()` products of a type and what remains.
struct TelescopeView {
    std::vector<TelescopeBinder> binders;
    Term tail;
};

/// Peels at most `max` leading products (all of them by default).
TelescopeView split_telescope(const Term& t, std::size_t max = static_cast<std::size_t>(-1));
Term rebuild(const TelescopeView& view);

/// Constructors whose conclusion head is the inductive `d`, in declaration order.
std::vector<std::string> constrs_of(const InductiveBlock& block, std::string_view d);

bool strict_pos(const std::set<std::string>& s, const Term& t);
bool strict_pos_arg(const std::set<std::string>& s, const Term& t);

/// Replaces the block's raw inductive names in `t` by references to the named block.
Term qualify(const std::string& block_name, const InductiveBlock& block, const Term& t);

/// Renames the block's raw inductive names to opaque atoms ("#d") that cannot
/// clash with context entries.
Term mark_inductives(const InductiveBlock& block, const Term& t);
std::string marked_name(std::string_view d);

/// Runs the well-formedness side conditions and typing premises of a block
/// about to be appended to the context held by `env`.
std::optional<BlockError> check_block_wf(Env& env, const InductiveBlock& block);
std::optional<BlockError> check_block_wf(const Context& ctx, const InductiveBlock& block);

/// The type `forall xs : Ts, (B.d xs) -> sort` a motive for `d` must have.
Term motive_type(const std::string& block_name, const InductiveBlock& block, std::string_view d,
                 const Term& sort);

/*
 * Type of the case-eliminator for a constructor whose (raw) declared type is
 * `ctype`, when eliminating into `motives` (one per inductive, in block order)
 * and with `head` the constructor being applied.
 */
Term elim_type(const std::string& block_name, const InductiveBlock& block,
               std::span<const Term> motives, const Term& head, const Term& ctype);

/// The recursor: applies `f` to `args`, inserting eliminations of recursive arguments.
Term rec_unfold(const std::string& block_name, const InductiveBlock& block,
                std::span<const Term> motives, std::span<const Term> cases, const Term& f,
                std::span<const Term> args, const Term& ctype);

/// Number of products in `t` before its conclusion (syntactically).
std::size_t count_binders(const Term& t);

}  // namespace pcuic

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "pcuic/term.hpp"

namespace pcuic {

/// `name : type` inside an inductive block.
struct Signature {
    std::string name;
    Term type;
};

/*
 * A block of mutual inductive definitions with `param_count` shared
 * parameters. Inside member types, the block's own inductive types are
 * referenced as free variables named after them.
 */
struct InductiveBlock {
    std::size_t param_count = 0;
    std::vector<Signature> inds;
    std::vector<Signature> constrs;

    std::optional<std::size_t> ind_index(std::string_view name) const;
    std::optional<std::size_t> constr_index(std::string_view name) const;
    const Term* ind_type(std::string_view name) const;
    const Term* constr_type(std::string_view name) const;
    bool has_member(std::string_view name) const;
    std::set<std::string> ind_names() const;
};

/// Free variables of the member types, excluding the block's own inductive names.
std::set<std::string> free_vars(const InductiveBlock& block);

struct Hyp {
    std::string name;
    Term type;
};

struct Def {
    std::string name;
    Term body;
    Term type;
};

struct BlockEntry {
    std::string name;
    std::shared_ptr<const InductiveBlock> block;
};

using ContextEntry = std::variant<Hyp, Def, BlockEntry>;

const std::string& entry_name(const ContextEntry& entry);

/*
 * Ordered telescope of hypotheses, definitions and named blocks. Appending
 * does not validate; `wf_ctx` in the type checker does.
 */
class Context {
public:
    Context() = default;

    void push_hyp(std::string name, Term type);
    void push_def(std::string name, Term body, Term type);
    void push_block(std::string name, InductiveBlock block);
    void push(ContextEntry entry);
    void pop();

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::vector<ContextEntry>& entries() const { return entries_; }

    /// Latest hypothesis or definition with this name.
    const ContextEntry* lookup(std::string_view name) const;
    bool binds(std::string_view name) const { return lookup(name) != nullptr; }
    const InductiveBlock* find_block(std::string_view name) const;

    /// Latest block declaring `member`, as seen by unqualified references.
    const BlockEntry* block_with_member(std::string_view member) const;

    /// Resolution of an unqualified identifier: the latest entry that binds it,
    /// either as a hypothesis/definition or as a block member.
    const ContextEntry* resolve(std::string_view name) const;

    /// Prefix of the first `n` entries.
    Context prefix(std::size_t n) const;

private:
    std::vector<ContextEntry> entries_;
    std::unordered_map<std::string, std::vector<std::size_t>> names_;
    std::unordered_map<std::string, std::vector<std::size_t>> blocks_;
    std::unordered_map<std::string, std::vector<std::size_t>> members_;
};

}  // namespace pcuic

#include "pcuic/context.hpp"

#include <stdexcept>

namespace pcuic {

std::optional<std::size_t> InductiveBlock::ind_index(std::string_view name) const {
    for (std::size_t i = 0; i < inds.size(); ++i)
        if (inds[i].name == name) return i;
    return std::nullopt;
}

std::optional<std::size_t> InductiveBlock::constr_index(std::string_view name) const {
    for (std::size_t i = 0; i < constrs.size(); ++i)
        if (constrs[i].name == name) return i;
    return std::nullopt;
}

const Term* InductiveBlock::ind_type(std::string_view name) const {
    auto i = ind_index(name);
    return i ? &inds[*i].type : nullptr;
}

const Term* InductiveBlock::constr_type(std::string_view name) const {
    auto i = constr_index(name);
    return i ? &constrs[*i].type : nullptr;
}

bool InductiveBlock::has_member(std::string_view name) const {
    return ind_index(name) || constr_index(name);
}

std::set<std::string> InductiveBlock::ind_names() const {
    std::set<std::string> out;
    for (const auto& s : inds) out.insert(s.name);
    return out;
}

std::set<std::string> free_vars(const InductiveBlock& block) {
    std::set<std::string> out;
    for (const auto& s : block.inds) out.merge(free_vars(s.type));
    for (const auto& s : block.constrs) out.merge(free_vars(s.type));
    for (const auto& s : block.inds) out.erase(s.name);
    return out;
}

const std::string& entry_name(const ContextEntry& entry) {
    return std::visit([](const auto& e) -> const std::string& { return e.name; }, entry);
}

void Context::push_hyp(std::string name, Term type) {
    push(Hyp{std::move(name), std::move(type)});
}

void Context::push_def(std::string name, Term body, Term type) {
    push(Def{std::move(name), std::move(body), std::move(type)});
}

void Context::push_block(std::string name, InductiveBlock block) {
    push(BlockEntry{std::move(name), std::make_shared<const InductiveBlock>(std::move(block))});
}

void Context::push(ContextEntry entry) {
    const std::size_t index = entries_.size();
    if (const auto* b = std::get_if<BlockEntry>(&entry)) {
        blocks_[b->name].push_back(index);
        for (const auto& s : b->block->inds) members_[s.name].push_back(index);
        for (const auto& s : b->block->constrs) members_[s.name].push_back(index);
    } else {
        names_[entry_name(entry)].push_back(index);
    }
    entries_.push_back(std::move(entry));
}

void Context::pop() {
    if (entries_.empty()) throw std::logic_error("Context::pop on empty context");
    const auto& entry = entries_.back();
    auto drop = [](auto& map, const std::string& key) {
        auto it = map.find(key);
        it->second.pop_back();
        if (it->second.empty()) map.erase(it);
    };
    if (const auto* b = std::get_if<BlockEntry>(&entry)) {
        drop(blocks_, b->name);
        for (const auto& s : b->block->inds) drop(members_, s.name);
        for (const auto& s : b->block->constrs) drop(members_, s.name);
    } else {
        drop(names_, entry_name(entry));
    }
    entries_.pop_back();
}

const ContextEntry* Context::lookup(std::string_view name) const {
    auto it = names_.find(std::string(name));
    if (it == names_.end()) return nullptr;
    return &entries_[it->second.back()];
}

const InductiveBlock* Context::find_block(std::string_view name) const {
    auto it = blocks_.find(std::string(name));
    if (it == blocks_.end()) return nullptr;
    return std::get<BlockEntry>(entries_[it->second.back()]).block.get();
}

const BlockEntry* Context::block_with_member(std::string_view member) const {
    auto it = members_.find(std::string(member));
    if (it == members_.end()) return nullptr;
    return &std::get<BlockEntry>(entries_[it->second.back()]);
}

const ContextEntry* Context::resolve(std::string_view name) const {
    std::optional<std::size_t> best;
    if (auto it = names_.find(std::string(name)); it != names_.end()) best = it->second.back();
    if (auto it = members_.find(std::string(name)); it != members_.end())
        if (!best || it->second.back() > *best) best = it->second.back();
    return best ? &entries_[*best] : nullptr;
}

Context Context::prefix(std::size_t n) const {
    Context out;
    for (std::size_t i = 0; i < n && i < entries_.size(); ++i) out.push(entries_[i]);
    return out;
}

}  // namespace pcuic

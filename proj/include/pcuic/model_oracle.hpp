#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pcuic/context.hpp"
#include "pcuic/term.hpp"

namespace pcuic {

/*
 * Hereditarily finite values: finite sets, tuples, constructor tags
 * <k; payload> and explicit function graphs. Values are immutable and
 * totally ordered, so sets of values are canonical.
 */
class SetValue {
public:
    enum class Kind { fin, tup, tag, graph };
    using Pair = std::pair<SetValue, SetValue>;

    static SetValue fin(std::vector<SetValue> elems);
    static SetValue fin(const std::set<SetValue>& elems);
    static SetValue tup(std::vector<SetValue> items);
    static SetValue tag(std::uint32_t k, std::vector<SetValue> payload = {});
    /// Throws std::invalid_argument when two pairs share a key with different values.
    static SetValue graph(std::vector<Pair> pairs);
    static SetValue empty() { return fin(std::vector<SetValue>{}); }

    Kind kind() const;
    /// Members (fin), components (tup) or payload (tag).
    const std::vector<SetValue>& items() const;
    std::uint32_t tag_index() const;
    /// Sorted by key (graph only).
    const std::vector<Pair>& pairs() const;

    bool contains(const SetValue& x) const;
    std::size_t size() const { return items().size(); }

    std::strong_ordering operator<=>(const SetValue& other) const;
    bool operator==(const SetValue& other) const;

private:
    struct Node;
    explicit SetValue(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Von Neumann natural number n as nested finite sets.
SetValue von_neumann(std::uint32_t n);
/// The two-element set {0, 1} interpreting Prop.
SetValue prop_value();

/// Trace encoding of a function graph whose values are finite sets:
/// the union of {x} x f(x).
SetValue encode(const std::vector<SetValue::Pair>& graph);
/// Trace decoding: { y | (x, y) in f }.
SetValue decode(const SetValue& f, const SetValue& x);
/// Iterated decode; the empty argument list is the identity.
SetValue decode_star(const SetValue& f, const std::vector<SetValue>& args);

/// Application of a function value: graph lookup, or decode for an encoded set.
std::optional<SetValue> apply_value(const SetValue& f, const SetValue& x);

/// { encode(f) | f in prod x in domain. codomain(x) }; explicit graphs when some
/// codomain member is not itself a finite set.
SetValue pi_space(const std::vector<SetValue>& domain,
                  const std::function<SetValue(const SetValue&)>& codomain,
                  std::size_t limit = 100000);

struct Rule {
    std::vector<SetValue> premises;
    SetValue conclusion;

    auto operator<=>(const Rule&) const = default;
    bool operator==(const Rule&) const = default;
};

using RuleSet = std::set<Rule>;

struct Stages {
    std::vector<std::set<SetValue>> stages;
    /// True when a fixpoint was reached within the stage budget.
    bool closed = false;

    const std::set<SetValue>& last() const { return stages.back(); }
};

/// One application of the conclusion-collecting operator.
std::set<SetValue> phi(const RuleSet& rules, const std::set<SetValue>& current);

/// Kleene iteration from the empty set, truncated at the first repeated stage.
Stages lfp_stages(const RuleSet& rules, std::size_t max_stage);

class OracleError : public std::runtime_error {
public:
    enum class Kind { unsupported_fragment, depth_exhausted, invariant_violation };

    OracleError(Kind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}
    Kind kind() const { return kind_; }
    std::string label() const;

private:
    Kind kind_;
};

struct BlockInterp {
    Stages stages;
    RuleSet rules;
    /// The last stage: tuples <i; params; indices; <k; params ++ args>>.
    const std::set<SetValue>& elements() const { return stages.last(); }
};

using Valuation = std::map<std::string, SetValue>;

/*
 * The part of a context the oracle can evaluate: blocks whose constructor
 * arguments range over finite sets, definitions, and values for chosen
 * variables. Block interpretations are cached per parameter instantiation.
 */
class Fragment {
public:
    Fragment(const Context& ctx, std::size_t depth) : ctx_(ctx), depth_(depth) {}

    const Context& ctx() const { return ctx_; }
    std::size_t depth() const { return depth_; }

    const BlockInterp& block(const std::string& name, const std::vector<SetValue>& params);

    /// Interpretation of a term. Throws OracleError outside the fragment.
    SetValue denote(const Term& t, const Valuation& env = {});

private:
    const Context& ctx_;
    std::size_t depth_;
    std::map<std::pair<std::string, std::vector<SetValue>>, BlockInterp> cache_;
};

BlockInterp interp_block(Fragment& fragment, const std::string& block_name,
                         const std::vector<SetValue>& params, std::size_t depth);

/// The constructor tuples of inductive `i` at the given parameters and indices.
SetValue inductive_members(const BlockInterp& interp, std::uint32_t i,
                           const std::vector<SetValue>& params,
                           const std::vector<SetValue>& indices);

/*
 * Eliminator interpretation: builds the recursor rule set over the elements of
 * the scrutinee's block and returns the unique result paired with `scrutinee`.
 * Motives, when given, restrict the recursive results to their value sets.
 * With `params_applied`, motives and cases already received the parameters.
 */
SetValue interp_elim(Fragment& fragment, const std::string& block_name,
                     const std::vector<std::optional<SetValue>>& motives,
                     const std::vector<SetValue>& cases, const SetValue& scrutinee,
                     std::size_t depth, bool params_applied = false);

/// Case application on demand: constructor index and the case's arguments.
using CaseFn = std::function<std::optional<SetValue>(std::uint32_t, const std::vector<SetValue>&)>;

SetValue interp_elim(Fragment& fragment, const std::string& block_name,
                     const std::vector<std::optional<SetValue>>& motives, const CaseFn& cases,
                     const SetValue& scrutinee, std::size_t depth, bool params_applied = false);

/// Compact rendering; tag chains shaped like unary numerals print as numbers.
std::string render(const SetValue& v);

}  // namespace pcuic
